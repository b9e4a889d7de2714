"""Finite hypergroup data model: axiom validation, Haar measure, convolution.

A finite hypergroup on elements ``{x_0, ..., x_{n-1}}`` is stored through its
structure constants ``c[x][y][z]``, the coefficient of ``delta_z`` in the
product measure ``delta_x * delta_y``.  Two arithmetic modes are supported:

* exact mode -- every coefficient is a :class:`fractions.Fraction`; all axiom
  checks are exact and the Haar weights are exact rationals;
* float mode -- coefficients are doubles and axiom checks use an absolute
  tolerance of ``FLOAT_ATOL``.

Exact mode is selected automatically whenever every input coefficient is an
``int`` or ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidHypergroupError, StructuralError

FLOAT_ATOL = 1e-10

SparseMeasure = tuple[tuple[int, object], ...]  # ((z, coeff), ...) sorted by z


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"not an exact scalar: {v!r}")


def _normalise_rows(constants, n: int):
    """Coerce tensor-like input to sparse rows; decide the arithmetic mode.

    Accepts a dense (n, n, n) array-like or a dict {(x, y, z): coeff}.
    Returns (rows, exact) where rows[x][y] is a sorted tuple of (z, coeff).
    """
    entries: dict[tuple[int, int], dict[int, object]] = {}
    exact = True

    def put(x, y, z, v):
        nonlocal exact
        if isinstance(v, (np.floating, float)):
            v = float(v)
            exact = False
        elif isinstance(v, (np.integer, int, Fraction)):
            v = _as_fraction(int(v) if not isinstance(v, Fraction) else v)
        else:
            raise StructuralError(f"unsupported coefficient type at {(x, y, z)}: {type(v)}")
        if isinstance(v, float) and not math.isfinite(v):
            raise StructuralError(f"non-finite coefficient at {(x, y, z)}")
        if v == 0:
            return
        entries.setdefault((x, y), {})[z] = v

    if isinstance(constants, dict):
        for (x, y, z), v in constants.items():
            if not (0 <= x < n and 0 <= y < n and 0 <= z < n):
                raise StructuralError(f"index out of range in constants: {(x, y, z)}")
            put(int(x), int(y), int(z), v)
    else:
        if isinstance(constants, np.ndarray):
            if constants.shape != (n, n, n):
                raise StructuralError(
                    f"constants tensor has shape {constants.shape}, expected {(n, n, n)}"
                )
            seq = constants
        else:
            seq = constants
            if len(seq) != n:
                raise StructuralError("constants tensor is not n x n x n")
        for x in range(n):
            row_x = seq[x]
            if len(row_x) != n:
                raise StructuralError("constants tensor is not n x n x n")
            for y in range(n):
                row = row_x[y]
                if len(row) != n:
                    raise StructuralError("constants tensor is not n x n x n")
                for z in range(n):
                    put(x, y, z, row[z])

    if not exact:
        # re-coerce everything to float so a row never mixes scalar types
        rows = tuple(
            tuple(
                tuple(sorted((z, float(v)) for z, v in entries.get((x, y), {}).items()))
                for y in range(n)
            )
            for x in range(n)
        )
    else:
        rows = tuple(
            tuple(
                tuple(sorted(entries.get((x, y), {}).items()))
                for y in range(n)
            )
            for x in range(n)
        )
    return rows, exact


def _convolve_sparse(rows, mu: Iterable[tuple[int, object]], y: int):
    """Convolve a sparse measure with delta_y on the right."""
    acc: dict[int, object] = {}
    for w, cw in mu:
        for z, cz in rows[w][y]:
            acc[z] = acc.get(z, 0) + cw * cz
    return acc


@dataclass(frozen=True)
class Violation:
    axiom: str
    where: tuple
    residual: float

    def __str__(self):
        return f"{self.axiom} at {self.where}: residual {self.residual:.3e}"


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    violations: tuple[Violation, ...]

    def summary(self, limit: int = 8) -> str:
        if self.passed:
            return "all axioms hold"
        head = "; ".join(str(v) for v in self.violations[:limit])
        extra = len(self.violations) - limit
        return head + (f"; ... and {extra} more" if extra > 0 else "")


def validate(constants, identity: int, involution: Sequence[int], *, mode: str = "auto") -> ValidationReport:
    """Check candidate structure constants against the hypergroup axioms.

    ``mode`` is "auto" (exact iff all inputs are rational), "exact", or
    "float".  Structural defects (wrong dimensions, non-finite entries,
    involution not a permutation) raise :class:`StructuralError`; axiom
    failures are collected in the returned report.
    """
    if isinstance(constants, np.ndarray):
        n = constants.shape[0]
        if constants.ndim != 3:
            raise StructuralError("constants tensor must have three axes")
    elif isinstance(constants, dict):
        if len(involution) == 0:
            raise StructuralError("empty involution")
        n = len(involution)
    else:
        n = len(constants)
    if n < 1:
        raise StructuralError("a hypergroup needs at least one element")

    rows, inferred_exact = _normalise_rows(constants, n)
    if mode == "exact":
        if not inferred_exact:
            raise StructuralError("exact mode requested but constants contain floats")
        exact = True
    elif mode == "float":
        if inferred_exact:
            rows = tuple(
                tuple(tuple((z, float(v)) for z, v in row) for row in row_x)
                for row_x in rows
            )
        exact = False
    elif mode == "auto":
        exact = inferred_exact
    else:
        raise StructuralError(f"unknown mode {mode!r}")

    inv = [int(i) for i in involution]
    if len(inv) != n or sorted(inv) != list(range(n)):
        raise StructuralError("involution is not a permutation of the element indices")
    if not (0 <= identity < n):
        raise StructuralError("identity index out of range")

    tol = 0.0 if exact else FLOAT_ATOL
    viols: list[Violation] = []

    def residual(v) -> float:
        return abs(float(v))

    def bad(v) -> bool:
        return abs(v) > tol if not exact else v != 0

    e = identity

    # involution axioms
    for x in range(n):
        if inv[inv[x]] != x:
            viols.append(Violation("Involution", (x,), 1.0))
    if inv[e] != e:
        viols.append(Violation("Involution", (e,), 1.0))

    # nonnegativity and stochasticity
    for x in range(n):
        for y in range(n):
            s = 0
            for z, v in rows[x][y]:
                s = s + v
                if (v < 0 and exact) or (not exact and v < -tol):
                    viols.append(Violation("NonNegative", (x, y, z), residual(v)))
            d = s - 1
            if bad(d):
                viols.append(Violation("NonStochastic", (x, y), residual(d)))

    # identity row/column
    for y in range(n):
        for label, row in (("Identity", rows[e][y]), ("Identity", rows[y][e])):
            got = dict(row)
            for z in range(n):
                want = 1 if z == y else 0
                d = got.get(z, 0) - want
                if bad(d):
                    viols.append(Violation(label, (y, z), residual(d)))

    # involution anti-automorphism: c[x~][y~][z~] == c[y][x][z]
    for x in range(n):
        for y in range(n):
            lhs = {inv[z]: v for z, v in rows[inv[x]][inv[y]]}
            rhs = dict(rows[y][x])
            for z in set(lhs) | set(rhs):
                d = lhs.get(z, 0) - rhs.get(z, 0)
                if bad(d):
                    viols.append(Violation("AntiAutomorphism", (x, y, z), residual(d)))

    # support axiom: c[x][y][e] > 0 iff y == x~
    support_ok = True
    for x in range(n):
        for y in range(n):
            v = dict(rows[x][y]).get(e, 0)
            if y == inv[x]:
                if not (v > tol):
                    viols.append(Violation("Support", (x, y), residual(v)))
                    support_ok = False
            elif bad(v):
                viols.append(Violation("Support", (x, y), residual(v)))

    # associativity: (dx * dy) * dz == dx * (dy * dz)
    for x in range(n):
        for y in range(n):
            left_base = rows[x][y]
            for z in range(n):
                left = _convolve_sparse(rows, left_base, z)
                right: dict[int, object] = {}
                for w, cw in rows[y][z]:
                    for v_, cv in rows[x][w]:
                        right[v_] = right.get(v_, 0) + cw * cv
                worst = 0.0
                ok = True
                for k in set(left) | set(right):
                    d = left.get(k, 0) - right.get(k, 0)
                    if bad(d):
                        ok = False
                        worst = max(worst, residual(d))
                if not ok:
                    viols.append(Violation("Associativity", (x, y, z), worst))

    # Haar invariance, with lambda(x) = 1 / c[x~][x][e]
    if support_ok:
        lam = []
        for x in range(n):
            v = dict(rows[inv[x]][x]).get(e, 0)
            lam.append((1 / v) if exact and isinstance(v, Fraction) else 1.0 / float(v))
        for x in range(n):
            for z in range(n):
                s = 0
                for y in range(n):
                    v = dict(rows[x][y]).get(z, 0)
                    if v:
                        s = s + lam[y] * v
                d = s - lam[z]
                scale = max(1.0, abs(float(lam[z])))
                if (exact and d != 0) or (not exact and abs(float(d)) > tol * scale):
                    viols.append(Violation("HaarInvariance", (x, z), residual(d)))

    return ValidationReport(passed=not viols, violations=tuple(viols))


class FiniteHypergroup:
    """Immutable finite hypergroup.

    Every derived quantity (Haar weights, commutativity flag, dense float
    tensor) is computed at construction or cached on first use; instances are
    safe to share across threads.
    """

    __slots__ = (
        "elements", "identity", "involution", "exact",
        "_rows", "_haar", "_haar_total", "_commutative", "_dense", "_haar_f",
    )

    def __init__(self, elements: Sequence[str], identity: int, involution: Sequence[int],
                 constants, *, mode: str = "auto", check: bool = True):
        elements = tuple(str(s) for s in elements)
        n = len(elements)
        if len(set(elements)) != n:
            raise StructuralError("element labels must be unique")
        if check:
            report = validate(constants, identity, involution, mode=mode)
            if not report.passed:
                raise InvalidHypergroupError(report)
        rows, exact = _normalise_rows(constants, n)
        if mode == "float" and exact:
            rows = tuple(
                tuple(tuple((z, float(v)) for z, v in row) for row in row_x)
                for row_x in rows
            )
            exact = False
        if mode == "exact" and not exact:
            raise StructuralError("exact mode requested but constants contain floats")

        self.elements = elements
        self.identity = int(identity)
        self.involution = tuple(int(i) for i in involution)
        self.exact = exact
        self._rows = rows

        e = self.identity
        haar = []
        for x in range(n):
            v = dict(rows[self.involution[x]][x]).get(e, 0)
            if not (v > 0):
                raise StructuralError("support axiom fails; cannot define Haar weights")
            haar.append(1 / v if exact else 1.0 / float(v))
        self._haar = tuple(haar)
        self._haar_total = sum(haar)

        comm = True
        for x in range(n):
            for y in range(x + 1, n):
                a, b = dict(rows[x][y]), dict(rows[y][x])
                for z in set(a) | set(b):
                    d = a.get(z, 0) - b.get(z, 0)
                    if (exact and d != 0) or (not exact and abs(float(d)) > FLOAT_ATOL):
                        comm = False
                        break
                if not comm:
                    break
            if not comm:
                break
        self._commutative = comm
        self._dense = None
        self._haar_f = None

    # ---------------------------------------------------------------- basics

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def haar(self) -> tuple:
        """Haar weights lambda(x) = 1/c[x~][x][e]; lambda(e) = 1."""
        return self._haar

    @property
    def haar_total(self):
        """lambda(H), the total Haar mass."""
        return self._haar_total

    @property
    def commutative(self) -> bool:
        return self._commutative

    @property
    def haar_float(self) -> np.ndarray:
        if self._haar_f is None:
            arr = np.array([float(v) for v in self._haar])
            arr.flags.writeable = False
            self._haar_f = arr
        return self._haar_f

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise StructuralError(f"unknown element label {label!r}") from None

    def product(self, x: int, y: int) -> SparseMeasure:
        """The measure delta_x * delta_y as a sparse tuple of (z, coeff)."""
        return self._rows[x][y]

    def constant(self, x: int, y: int, z: int):
        """Single structure constant c[x][y][z]."""
        return dict(self._rows[x][y]).get(z, Fraction(0) if self.exact else 0.0)

    def dense_constants(self) -> np.ndarray:
        """Dense float64 (n, n, n) copy of the structure tensor (cached)."""
        if self._dense is None:
            n = self.n
            c = np.zeros((n, n, n))
            for x in range(n):
                for y in range(n):
                    for z, v in self._rows[x][y]:
                        c[x, y, z] = float(v)
            c.flags.writeable = False
            self._dense = c
        return self._dense

    def validate(self) -> ValidationReport:
        """Re-run the axiom checks on this instance's tensor."""
        tensor = {
            (x, y, z): v
            for x in range(self.n)
            for y in range(self.n)
            for z, v in self._rows[x][y]
        }
        return validate(tensor, self.identity, self.involution,
                        mode="exact" if self.exact else "float")

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return (f"FiniteHypergroup(n={self.n}, elements={list(self.elements)!r}, "
                f"mode={kind}, commutative={self.commutative})")


def haar(h: FiniteHypergroup) -> tuple:
    """Per-element Haar weights of ``h`` (exact rationals in exact mode)."""
    return h.haar


def is_group(h: FiniteHypergroup) -> bool:
    """True iff every element is invertible, i.e. lambda identically 1."""
    if h.exact:
        return all(v == 1 for v in h.haar)
    return all(abs(v - 1.0) <= FLOAT_ATOL for v in h.haar)


@dataclass(frozen=True)
class HFunction:
    """A complex-valued function on the element set of a hypergroup."""

    host: FiniteHypergroup
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.host.n,):
            raise StructuralError(
                f"function has {vals.shape} values, host has {self.host.n} elements"
            )
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def point_mass(cls, host: FiniteHypergroup, x: int) -> "HFunction":
        v = np.zeros(host.n)
        v[x] = 1.0
        return cls(host, v)

    @classmethod
    def constant(cls, host: FiniteHypergroup, value=1.0) -> "HFunction":
        return cls(host, np.full(host.n, value, dtype=complex))


def convolve(h: FiniteHypergroup, f: HFunction, g: HFunction, *,
             normalized: bool = True) -> HFunction:
    """Convolution of functions on ``h``.

    With ``normalized=True`` (default) the Haar measure is normalised to total
    mass one, so compact-hypergroup identities such as
    ``(k_chi * chi) * (k_chi * chi) = k_chi * chi`` hold verbatim.  With
    ``normalized=False`` this is the product of the Banach algebra
    ``l^1(H, lambda)``, whose identity is the point mass at ``e``.
    """
    if f.host is not h or g.host is not h:
        raise StructuralError("convolve: functions live on different hypergroups")
    c = h.dense_constants()
    inv = np.array(h.involution)
    trans = c[inv]                       # trans[y, x, z] = c[y~][x][z]
    m = trans @ g.values                 # m[y, x] = sum_z c[y~][x][z] g(z)
    out = (f.values * h.haar_float) @ m
    if normalized:
        out = out / float(h.haar_total)
    return HFunction(h, out)


def direct_product(a: FiniteHypergroup, b: FiniteHypergroup) -> FiniteHypergroup:
    """The product hypergroup on A x B with the tensor-product constants."""
    na, nb = a.n, b.n
    labels = tuple(f"({la},{lb})" for la in a.elements for lb in b.elements)
    identity = a.identity * nb + b.identity
    involution = [a.involution[x] * nb + b.involution[y]
                  for x in range(na) for y in range(nb)]
    exact = a.exact and b.exact
    constants: dict[tuple[int, int, int], object] = {}
    for x1 in range(na):
        for y1 in range(na):
            row1 = a._rows[x1][y1]
            for x2 in range(nb):
                for y2 in range(nb):
                    row2 = b._rows[x2][y2]
                    x = x1 * nb + x2
                    y = y1 * nb + y2
                    for z1, v1 in row1:
                        for z2, v2 in row2:
                            v = v1 * v2 if exact else float(v1) * float(v2)
                            constants[(x, y, z1 * nb + z2)] = v
    # products of valid hypergroups are valid; skip the O(n^5) recheck
    return FiniteHypergroup(labels, identity, involution, constants,
                            mode="exact" if exact else "float", check=False)
