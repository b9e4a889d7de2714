"""Characters, hyperdimensions, Fourier analysis, and dual hypergroups of
commutative finite hypergroups.

Characters are the common eigenvectors of the commuting family of translation
matrices ``(L_x)[y, z] = c[x][y][z]`` (acting on the value vector), found by
eigendecomposing a random linear combination drawn from a fixed-seed
generator.  On exact-mode hypergroups with a real character table the float
eigenvectors are lifted back to exact rationals and re-verified exactly, so
closed-form families (H_p, class algebras with rational tables) come out
exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .builders import join as build_join
from .builders import quotient as build_quotient
from .core import FiniteHypergroup, HFunction
from .errors import (ConsistencyError, NumericalDegeneracyError, StructuralError,
                     UnsupportedOperationError)

DEFAULT_SEED = 0x48594745
MULT_TOL = 1e-8          # acceptance threshold for multiplicativity residuals
EIG_GAP = 1e-6           # relative eigenvalue separation required per draw
MAX_REDRAWS = 8
NEG_CLAMP = 1e-9         # dual coefficients in [-NEG_CLAMP, 0) are float noise
LIFT_DENOMINATOR = 10**6


@dataclass(frozen=True)
class CharacterTable:
    """All characters of a commutative finite hypergroup.

    ``chars[i, x]`` is the value of the i-th character at element x; rows are
    ordered with the trivial character first, then by descending
    hyperdimension, ties broken lexicographically by value.  ``dim`` is
    identically 1 here and is carried so the counting identities read as
    usual; ``plancherel`` equals ``hyperdim``.
    """

    host: FiniteHypergroup
    chars: np.ndarray            # (n, n) complex
    hyperdim: np.ndarray         # (n,) float
    dim: np.ndarray              # (n,) int, all ones
    plancherel: np.ndarray       # alias of hyperdim
    trivial_index: int
    exact_chars: tuple | None = None      # rows of Fractions when exactly lifted
    exact_hyperdim: tuple | None = None

    @property
    def n(self) -> int:
        return self.chars.shape[1]

    @property
    def exact(self) -> bool:
        return self.exact_chars is not None

    def character(self, i: int) -> HFunction:
        return HFunction(self.host, self.chars[i])


def _cluster(values: np.ndarray, threshold: float) -> list[list[int]]:
    """Group indices whose values are within ``threshold`` (transitively)."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) < threshold:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _refine_subspace(tensor: np.ndarray, basis: np.ndarray, rng, depth: int) -> list[np.ndarray]:
    """Split a degenerate common eigenspace with further random combinations."""
    if basis.shape[1] == 1:
        return [basis[:, 0]]
    if depth > MAX_REDRAWS:
        raise NumericalDegeneracyError(
            "could not separate common eigenvectors after repeated refinements")
    n = tensor.shape[0]
    m2 = np.tensordot(rng.standard_normal(n), tensor, axes=1)
    b = basis.conj().T @ m2 @ basis
    w, u = np.linalg.eig(b)
    out = []
    scale = max(np.linalg.norm(m2), 1.0)
    for group in _cluster(w, EIG_GAP * scale):
        sub = basis @ u[:, group]
        if len(group) == 1:
            out.append(sub[:, 0])
        else:
            q, _ = np.linalg.qr(sub)
            out.extend(_refine_subspace(tensor, q, rng, depth + 1))
    return out


def _common_eigenvectors(tensor: np.ndarray, seed: int) -> np.ndarray:
    """Columns spanning the n common eigenlines of the translation family."""
    n = tensor.shape[0]
    rng = np.random.default_rng(seed)
    last = None
    for _ in range(MAX_REDRAWS):
        r = rng.standard_normal(n)
        m = np.tensordot(r, tensor, axes=1)
        w, v = np.linalg.eig(m)
        last = (m, w, v)
        scale = max(np.linalg.norm(m), 1.0)
        gap = np.abs(w[:, None] - w[None, :])
        np.fill_diagonal(gap, np.inf)
        if gap.min() >= EIG_GAP * scale:
            return v
    m, w, v = last
    scale = max(np.linalg.norm(m), 1.0)
    cols = []
    for group in _cluster(w, EIG_GAP * scale):
        if len(group) == 1:
            cols.append(v[:, group[0]])
        else:
            q, _ = np.linalg.qr(v[:, group])
            cols.extend(_refine_subspace(tensor, q, rng, 0))
    if len(cols) != n:
        raise NumericalDegeneracyError("eigenline count mismatch after refinement")
    return np.stack(cols, axis=1)


def _try_exact_lift(h: FiniteHypergroup, chars: np.ndarray):
    """Lift a real float character table to exact rationals, verified exactly."""
    if np.abs(chars.imag).max() > 1e-9:
        return None
    n = h.n
    rows = []
    for i in range(n):
        frac = [Fraction(float(v)).limit_denominator(LIFT_DENOMINATOR)
                for v in chars[i].real]
        if any(abs(float(fr) - v) > 1e-6 for fr, v in zip(frac, chars[i].real)):
            return None
        rows.append(tuple(frac))
    for row in rows:
        if row[h.identity] != 1:
            return None
        for x in range(n):
            if row[h.involution[x]] != row[x]:
                return None
            for y in range(n):
                s = Fraction(0)
                for z, c in h.product(x, y):
                    s += c * row[z]
                if s != row[x] * row[y]:
                    return None
    return tuple(rows)


def characters(h: FiniteHypergroup, *, seed: int = DEFAULT_SEED) -> CharacterTable:
    """Compute the full character table of a commutative finite hypergroup.

    Raises :class:`UnsupportedOperationError` on noncommutative input and
    :class:`NumericalDegeneracyError` if the eigenstructure cannot be resolved
    to a multiplicativity residual of ``MULT_TOL``.
    """
    if not h.commutative:
        raise UnsupportedOperationError(
            "character tables are only computed for commutative hypergroups")
    n = h.n
    c = h.dense_constants()
    if n == 1:
        vecs = np.ones((1, 1), dtype=complex)
    else:
        vecs = _common_eigenvectors(c, seed)

    e = h.identity
    at_e = vecs[e, :]
    if np.abs(at_e).min() < 1e-12:
        raise NumericalDegeneracyError("eigenvector vanishes at the identity")
    table = (vecs / at_e[None, :]).T      # rows are candidate characters

    # multiplicativity residual over all (i, x, y)
    lhs = np.einsum("xyz,iz->ixy", c, table)
    rhs = table[:, :, None] * table[:, None, :]
    residual = np.abs(lhs - rhs).max()
    if residual > MULT_TOL:
        raise NumericalDegeneracyError(
            f"character multiplicativity residual {residual:.3e} exceeds {MULT_TOL}")
    inv = list(h.involution)
    herm = np.abs(table[:, inv] - table.conj()).max()
    if herm > MULT_TOL:
        raise NumericalDegeneracyError(
            f"character involution symmetry residual {herm:.3e} exceeds {MULT_TOL}")

    if np.abs(table.imag).max() < 1e-10:
        table = table.real.astype(complex)

    lam = h.haar_float
    lam_total = float(h.haar_total)
    k = lam_total / ((np.abs(table) ** 2) @ lam)

    trivial = int(np.argmin(np.abs(table - 1.0).max(axis=1)))
    if np.abs(table[trivial] - 1.0).max() > MULT_TOL:
        raise NumericalDegeneracyError("no trivial character found")

    def sort_key(i):
        vals = tuple((round(float(v.real), 9), round(float(v.imag), 9))
                     for v in table[i])
        return (0 if i == trivial else 1, -round(float(k[i]), 9), vals)

    order = sorted(range(n), key=sort_key)
    table = table[order]
    k = k[order]

    exact_chars = exact_k = None
    if h.exact:
        lifted = _try_exact_lift(h, table)
        if lifted is not None:
            exact_chars = lifted
            lam_exact = h.haar
            total = h.haar_total
            exact_k = tuple(total / sum(row[x] * row[x] * lam_exact[x] for x in range(n))
                            for row in lifted)
            table = np.array([[float(v) for v in row] for row in lifted], dtype=complex)
            k = np.array([float(v) for v in exact_k])

    table = table.copy()
    table.flags.writeable = False
    k.flags.writeable = False
    dim = np.ones(n, dtype=int)
    dim.flags.writeable = False
    return CharacterTable(host=h, chars=table, hyperdim=k, dim=dim, plancherel=k,
                          trivial_index=0, exact_chars=exact_chars,
                          exact_hyperdim=exact_k)


# ----------------------------------------------------------------- transform

def fourier(table: CharacterTable, f: HFunction) -> np.ndarray:
    """Fourier coefficients f^(chi_i) = (1/lambda(H)) sum_x f(x) conj(chi_i(x)) lambda(x)."""
    h = table.host
    if f.host is not h:
        raise StructuralError("fourier: function lives on a different hypergroup")
    lam = h.haar_float
    return (table.chars.conj() @ (f.values * lam)) / float(h.haar_total)


def inverse_fourier(table: CharacterTable, coefficients) -> HFunction:
    """Reconstruct f(x) = sum_i k_i f^_i chi_i(x)."""
    coeff = np.asarray(coefficients, dtype=complex)
    if coeff.shape != (table.n,):
        raise StructuralError(
            f"expected {table.n} coefficients, got {coeff.shape}")
    values = (table.hyperdim * coeff) @ table.chars
    return HFunction(table.host, values)


def minimal_idempotents(table: CharacterTable) -> list[HFunction]:
    """The minimal idempotents (k_i / lambda(H)) chi_i of l^1(H, lambda).

    They satisfy ``p_i * p_j = delta_ij p_i`` under the unnormalised algebra
    convolution (``convolve(..., normalized=False)``) and sum to the point
    mass at the identity, the algebra unit.
    """
    lam_total = float(table.host.haar_total)
    return [HFunction(table.host, (float(table.hyperdim[i]) / lam_total) * table.chars[i])
            for i in range(table.n)]


# ------------------------------------------------------------------- duality

@dataclass(frozen=True)
class DualResult:
    """Either the dual hypergroup on the character set, or the first
    obstruction triple (i, j, k, coefficient) with a genuinely negative (or
    non-real) expansion coefficient."""

    dual: FiniteHypergroup | None
    obstruction: tuple | None

    @property
    def is_hypergroup(self) -> bool:
        return self.dual is not None


def _conjugation_pairing(table: CharacterTable) -> list[int]:
    n = table.n
    pairing = [-1] * n
    for i in range(n):
        diffs = np.abs(table.chars - table.chars[i].conj()[None, :]).max(axis=1)
        j = int(np.argmin(diffs))
        if diffs[j] > MULT_TOL:
            raise NumericalDegeneracyError("no conjugate partner for a character")
        pairing[i] = j
    if sorted(pairing) != list(range(n)):
        raise NumericalDegeneracyError("character conjugation is not a pairing")
    return pairing


def dual_hypergroup(table: CharacterTable) -> DualResult:
    """Expand pointwise products chi_i chi_j in the character basis.

    If every coefficient is nonnegative (after clamping float noise in
    [-1e-9, 0)), the character set becomes a hypergroup whose Haar measure is
    checked to equal the hyperdimensions (the strong-hypergroup certificate);
    otherwise the first offending triple is reported.
    """
    h = table.host
    n = table.n
    labels = tuple(f"chi{i}" for i in range(n))

    if table.exact:
        lam = h.haar
        total = h.haar_total
        rows = table.exact_chars
        k = table.exact_hyperdim
        constants: dict[tuple[int, int, int], Fraction] = {}
        for i in range(n):
            for j in range(n):
                for m in range(n):
                    a = k[m] / total * sum(
                        rows[i][x] * rows[j][x] * rows[m][x] * lam[x] for x in range(n))
                    if a < 0:
                        return DualResult(None, (i, j, m, a))
                    if a != 0:
                        constants[(i, j, m)] = a
        pairing = list(range(n))  # exact tables are real: conjugation fixes rows
        dual = FiniteHypergroup(labels, 0, pairing, constants)
    else:
        lam = h.haar_float
        total = float(h.haar_total)
        a = np.einsum("ix,jx,mx,x->ijm", table.chars, table.chars,
                      table.chars.conj(), lam) / total * table.hyperdim[None, None, :]
        bad_imag = np.abs(a.imag) > NEG_CLAMP
        if bad_imag.any():
            i, j, m = map(int, np.argwhere(bad_imag)[0])
            return DualResult(None, (i, j, m, complex(a[i, j, m])))
        a = a.real
        bad_neg = a < -NEG_CLAMP
        if bad_neg.any():
            i, j, m = map(int, np.argwhere(bad_neg)[0])
            return DualResult(None, (i, j, m, float(a[i, j, m])))
        a = np.where(a < 0, 0.0, a)
        pairing = _conjugation_pairing(table)
        dual = FiniteHypergroup(labels, 0, pairing, a)

    # strong-hypergroup certificate: canonical Haar of the dual == hyperdim
    dual_haar = np.array([float(v) for v in dual.haar])
    if np.abs(dual_haar - table.hyperdim).max() > MULT_TOL:
        raise ConsistencyError("dual Haar measure does not match the hyperdimensions")
    return DualResult(dual, None)


# ----------------------------------------------- join / quotient verification

@dataclass(frozen=True)
class CharacterMatch:
    h_index: int
    source: str            # "K", "J", or "H/K"
    source_index: int
    k_expected: float
    k_actual: float
    residual: float


@dataclass(frozen=True)
class DualityReport:
    passed: bool
    matches: tuple[CharacterMatch, ...]
    unmatched: tuple[int, ...]
    max_residual: float


def verify_join_dual(k_part: FiniteHypergroup, j_part: FiniteHypergroup,
                     h: FiniteHypergroup | None = None, *,
                     seed: int = DEFAULT_SEED, tol: float = MULT_TOL) -> DualityReport:
    """Check the join duality: every character of H = K v J restricts either
    to a nontrivial character of K (vanishing off K, hyperdimension scaled by
    lambda_J(J)) or to a character of J (constant 1 on K, hyperdimension
    unchanged)."""
    if h is None:
        h = build_join(k_part, j_part)
    for part in (k_part, j_part, h):
        if not part.commutative:
            raise UnsupportedOperationError("verify_join_dual requires commutative inputs")
    nk, nj = k_part.n, j_part.n
    if h.n != nk + nj - 1:
        raise StructuralError("H does not have the join element layout")
    tk = characters(k_part, seed=seed)
    tj = characters(j_part, seed=seed)
    th = characters(h, seed=seed)
    lam_jj = float(j_part.haar_total)

    ej = j_part.identity
    j_rest = [j for j in range(nj) if j != ej]

    used_k = set()
    used_j = set()
    matches = []
    unmatched = []
    for i in range(h.n):
        row = th.chars[i]
        vals_k = row[:nk]
        vals_j_rest = row[nk:]
        if np.abs(vals_k - 1.0).max() <= tol:
            jvals = np.empty(nj, dtype=complex)
            jvals[ej] = 1.0
            for pos, j in enumerate(j_rest):
                jvals[j] = vals_j_rest[pos]
            diffs = np.abs(tj.chars - jvals[None, :]).max(axis=1)
            t = int(np.argmin(diffs))
            if diffs[t] > tol or t in used_j:
                unmatched.append(i)
                continue
            used_j.add(t)
            expected = float(tj.hyperdim[t])
            matches.append(CharacterMatch(i, "J", t, expected, float(th.hyperdim[i]),
                                          abs(float(th.hyperdim[i]) - expected)))
        elif vals_j_rest.size == 0 or np.abs(vals_j_rest).max() <= tol:
            diffs = np.abs(tk.chars - vals_k[None, :]).max(axis=1)
            t = int(np.argmin(diffs))
            if diffs[t] > tol or t == tk.trivial_index or t in used_k:
                unmatched.append(i)
                continue
            used_k.add(t)
            expected = float(tk.hyperdim[t]) * lam_jj
            matches.append(CharacterMatch(i, "K", t, expected, float(th.hyperdim[i]),
                                          abs(float(th.hyperdim[i]) - expected)))
        else:
            unmatched.append(i)
    max_res = max((m.residual for m in matches), default=0.0)
    bijective = (len(used_k) == nk - 1 and len(used_j) == nj and not unmatched)
    return DualityReport(passed=bijective and max_res <= tol,
                         matches=tuple(matches), unmatched=tuple(unmatched),
                         max_residual=max_res)


def verify_quotient_dual(h: FiniteHypergroup, subgroup, *,
                         seed: int = DEFAULT_SEED, tol: float = MULT_TOL) -> DualityReport:
    """Check the quotient duality: characters of H that are 1 on K are
    constant on cosets, descend to the characters of H/K bijectively, and
    keep their hyperdimensions."""
    q, proj = build_quotient(h, subgroup)
    th = characters(h, seed=seed)
    tq = characters(q, seed=seed)
    k = sorted(set(int(i) for i in subgroup))

    annihilator = [i for i in range(h.n)
                   if np.abs(th.chars[i, k] - 1.0).max() <= tol]
    cosets: dict[int, list[int]] = {}
    for x, c in enumerate(proj):
        cosets.setdefault(c, []).append(x)

    used = set()
    matches = []
    unmatched = []
    for i in annihilator:
        row = th.chars[i]
        descended = np.empty(q.n, dtype=complex)
        constant = True
        for c, members in cosets.items():
            vals = row[members]
            if np.abs(vals - vals[0]).max() > tol:
                constant = False
                break
            descended[c] = vals[0]
        if not constant:
            unmatched.append(i)
            continue
        diffs = np.abs(tq.chars - descended[None, :]).max(axis=1)
        t = int(np.argmin(diffs))
        if diffs[t] > tol or t in used:
            unmatched.append(i)
            continue
        used.add(t)
        expected = float(tq.hyperdim[t])
        matches.append(CharacterMatch(i, "H/K", t, expected, float(th.hyperdim[i]),
                                      abs(float(th.hyperdim[i]) - expected)))
    max_res = max((m.residual for m in matches), default=0.0)
    bijective = (len(used) == q.n and len(annihilator) == q.n and not unmatched)
    return DualityReport(passed=bijective and max_res <= tol,
                         matches=tuple(matches), unmatched=tuple(unmatched),
                         max_residual=max_res)
