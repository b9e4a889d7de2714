"""Constructors: groups as hypergroups, conjugacy-class hypergroups, the
two-element H_p family, joins, subhypergroups, and quotients."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import FLOAT_ATOL, FiniteHypergroup
from .errors import ConsistencyError, StructuralError, UnsupportedOperationError


# --------------------------------------------------------------------- groups

@dataclass(frozen=True)
class CayleyTable:
    """A finite group given by its multiplication table of indices."""

    n: int
    product: np.ndarray          # (n, n) ints, product[i, j] = index of g_i g_j
    identity: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        p = np.asarray(self.product, dtype=int)
        n = self.n
        if p.shape != (n, n):
            raise StructuralError(f"Cayley table has shape {p.shape}, expected {(n, n)}")
        if p.min() < 0 or p.max() >= n:
            raise StructuralError("Cayley table entries out of range")
        ident = np.arange(n)
        if not (np.sort(p, axis=1) == ident[None, :]).all():
            raise StructuralError("some Cayley row is not a permutation")
        if not (np.sort(p, axis=0) == ident[:, None]).all():
            raise StructuralError("some Cayley column is not a permutation")
        if not (0 <= self.identity < n):
            raise StructuralError("identity index out of range")
        e = self.identity
        if not ((p[e] == ident).all() and (p[:, e] == ident).all()):
            raise StructuralError("identity row/column is not the identity permutation")
        if not (p[p, :] == p[:, p]).all():  # p[p[i,j],k] == p[i,p[j,k]]
            raise StructuralError("Cayley table is not associative")
        p = p.copy()
        p.flags.writeable = False
        object.__setattr__(self, "product", p)
        if self.labels is not None and len(self.labels) != n:
            raise StructuralError("label count does not match the group order")

    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.product == self.identity, axis=1)
        return inv

    def conjugacy_classes(self) -> list[list[int]]:
        """Conjugation orbits, sorted by smallest member; identity class first."""
        p, inv = self.product, self.inverse()
        assigned = [-1] * self.n
        classes: list[list[int]] = []
        for g in range(self.n):
            if assigned[g] >= 0:
                continue
            orbit = sorted({int(p[p[h, g], inv[h]]) for h in range(self.n)})
            for m in orbit:
                assigned[m] = len(classes)
            classes.append(orbit)
        return classes


def cyclic_group(n: int) -> CayleyTable:
    if n < 1:
        raise StructuralError("cyclic group order must be >= 1")
    i = np.arange(n)
    return CayleyTable(n, (i[:, None] + i[None, :]) % n, 0,
                       tuple(str(k) for k in range(n)))


def dihedral_group(n: int) -> CayleyTable:
    """Dihedral group of order 2n (symmetries of the regular n-gon)."""
    if n < 1:
        raise StructuralError("dihedral parameter must be >= 1")
    order = 2 * n

    def mul(a, b):
        f1, k1 = divmod(a, n)
        f2, k2 = divmod(b, n)
        return (f1 ^ f2) * n + ((-k1 if f2 else k1) + k2) % n

    p = np.array([[mul(a, b) for b in range(order)] for a in range(order)])
    labels = tuple([f"r{k}" for k in range(n)] + [f"sr{k}" for k in range(n)])
    return CayleyTable(order, p, 0, labels)


def symmetric_group(n: int) -> CayleyTable:
    """S_n on permutation words in lexicographic order (n <= 5)."""
    if not 1 <= n <= 5:
        raise StructuralError("symmetric_group supports 1 <= n <= 5")
    perms = list(itertools.permutations(range(n)))
    index = {q: i for i, q in enumerate(perms)}
    p = np.array([[index[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms])
    labels = tuple("".join(str(i) for i in q) for q in perms)
    return CayleyTable(len(perms), p, 0, labels)


def quaternion_group() -> CayleyTable:
    """Q8 = {1, -1, i, -i, j, -j, k, -k}."""
    # unit products with signs: table[u][v] = (sign, unit) for u*v
    unit = [[(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)]]
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def mul(a, b):
        ua, sa = divmod(a, 2)
        ub, sb = divmod(b, 2)
        sgn, u = unit[ua][ub]
        s = (1 if sa == 0 else -1) * (1 if sb == 0 else -1) * sgn
        return 2 * u + (0 if s > 0 else 1)

    p = np.array([[mul(a, b) for b in range(8)] for a in range(8)])
    return CayleyTable(8, p, 0, tuple(names))


def group_hypergroup(t: CayleyTable) -> FiniteHypergroup:
    """A group seen as a hypergroup: every product is a point mass."""
    labels = t.labels or tuple(f"g{i}" for i in range(t.n))
    inv = t.inverse()
    constants = {(x, y, int(t.product[x, y])): Fraction(1)
                 for x in range(t.n) for y in range(t.n)}
    return FiniteHypergroup(labels, t.identity, inv, constants, check=False)


def conjugacy_hypergroup(t: CayleyTable) -> FiniteHypergroup:
    """Conjugacy classes of a finite group with the averaged-product
    convolution; Haar weight of a class is its size."""
    classes = t.conjugacy_classes()
    m = len(classes)
    cls_of = {}
    for ci, c in enumerate(classes):
        for g in c:
            cls_of[g] = ci
    inv = t.inverse()
    involution = [cls_of[int(inv[c[0]])] for c in classes]
    p = t.product
    constants: dict[tuple[int, int, int], Fraction] = {}
    for ci in range(m):
        for cj in range(m):
            denom = len(classes[ci]) * len(classes[cj])
            counts: dict[int, int] = {}
            for a in classes[ci]:
                row = p[a]
                for b in classes[cj]:
                    ck = cls_of[int(row[b])]
                    counts[ck] = counts.get(ck, 0) + 1
            for ck, cnt in counts.items():
                constants[(ci, cj, ck)] = Fraction(cnt, denom)
    if t.labels is not None:
        labels = tuple(f"C[{t.labels[c[0]]}]" for c in classes)
    else:
        labels = tuple(f"C{c[0]}" for c in classes)
    identity = cls_of[t.identity]
    return FiniteHypergroup(labels, identity, involution, constants)


# ------------------------------------------------------------------ H_p family

def hp(p) -> FiniteHypergroup:
    """The two-element hypergroup {e, a} with
    delta_a * delta_a = (1/p) delta_e + (1 - 1/p) delta_a; Haar weight of a is p.

    Exact when ``p`` is an int, Fraction, or rational string; float otherwise.
    """
    if isinstance(p, str):
        p = Fraction(p)
    if isinstance(p, (int, Fraction)):
        p = Fraction(p)
        exact = True
    elif isinstance(p, float):
        exact = False
    else:
        raise StructuralError(f"unsupported parameter type for hp: {type(p)}")
    if p < 1:
        raise ValueError("hp requires p >= 1 (p < 1 gives a negative coefficient)")
    one = Fraction(1) if exact else 1.0
    constants = {
        (0, 0, 0): one, (0, 1, 1): one, (1, 0, 1): one,
        (1, 1, 0): one / p,
    }
    if p != 1:
        constants[(1, 1, 1)] = one - one / p
    return FiniteHypergroup(("e", "a"), 0, (0, 1), constants)


# ----------------------------------------------------------------------- joins

def join(k_part: FiniteHypergroup, j_part: FiniteHypergroup) -> FiniteHypergroup:
    """Hypergroup join K v J: K and J glued along a shared identity.

    K-products stay in K; J-products stay in J except that
    delta_s * delta_{s~} spreads its identity mass over all of K according to
    the normalised Haar measure of K.  J's labels are prefixed with "J:" when
    they collide with labels of K.
    """
    nk, nj = k_part.n, j_part.n
    ej = j_part.identity
    j_rest = [j for j in range(nj) if j != ej]
    pos = {j: nk + i for i, j in enumerate(j_rest)}

    used = set(k_part.elements)
    labels = list(k_part.elements)
    for j in j_rest:
        lab = j_part.elements[j]
        if lab in used:
            lab = "J:" + lab
        if lab in used:
            raise StructuralError(f"cannot disjointify join label {lab!r}")
        used.add(lab)
        labels.append(lab)

    exact = k_part.exact and j_part.exact
    e = k_part.identity
    involution = list(k_part.involution) + [pos[j_part.involution[j]] for j in j_rest]

    lam_k = k_part.haar if exact else k_part.haar_float
    lam_k_total = k_part.haar_total if exact else float(k_part.haar_total)

    def cast(v):
        return v if exact else float(v)

    constants: dict[tuple[int, int, int], object] = {}
    # K * K
    for x in range(nk):
        for y in range(nk):
            for z, v in k_part.product(x, y):
                constants[(x, y, z)] = cast(v)
    # K * (J \ e) and (J \ e) * K
    for x in range(nk):
        for j in j_rest:
            constants[(x, pos[j], pos[j])] = cast(1 if exact else 1.0)
            constants[(pos[j], x, pos[j])] = cast(1 if exact else 1.0)
    # (J \ e) * (J \ e)
    for a in j_rest:
        for b in j_rest:
            row = j_part.product(a, b)
            if b == j_part.involution[a]:
                alpha_e = dict(row).get(ej, 0)
                for x in range(nk):
                    constants[(pos[a], pos[b], x)] = cast(alpha_e * lam_k[x] / lam_k_total)
                for z, v in row:
                    if z != ej:
                        constants[(pos[a], pos[b], pos[z])] = cast(v)
            else:
                for z, v in row:
                    if z == ej:
                        constants[(pos[a], pos[b], e)] = cast(v)  # float noise only
                    else:
                        constants[(pos[a], pos[b], pos[z])] = cast(v)
    return FiniteHypergroup(tuple(labels), e, involution, constants)


# -------------------------------------------------------- sub- and quotient

def is_subhypergroup(h: FiniteHypergroup, subset: Sequence[int]) -> bool:
    """True iff the index set contains e, is involution-closed, and is closed
    under convolution supports."""
    s = set(int(i) for i in subset)
    if not s or not all(0 <= i < h.n for i in s):
        return False
    if h.identity not in s:
        return False
    if any(h.involution[x] not in s for x in s):
        return False
    tol = 0 if h.exact else FLOAT_ATOL
    for x in s:
        for y in s:
            for z, v in h.product(x, y):
                if abs(v) > tol and z not in s:
                    return False
    return True


def enumerate_subhypergroups(h: FiniteHypergroup) -> list[tuple[int, ...]]:
    """All subhypergroups, exhaustively over involution-closed subsets.

    Subsets are generated over involution orbits, so the search space is
    2^(number of orbits); intended for small hypergroups (n <= 20).
    """
    if h.n > 20:
        raise UnsupportedOperationError("exhaustive subhypergroup search needs n <= 20")
    orbits = []
    seen = set()
    for x in range(h.n):
        if x in seen or x == h.identity:
            continue
        orb = {x, h.involution[x]}
        seen |= orb
        orbits.append(sorted(orb))
    out = []
    for mask in range(1 << len(orbits)):
        s = {h.identity}
        for i, orb in enumerate(orbits):
            if mask >> i & 1:
                s.update(orb)
        if is_subhypergroup(h, s):
            out.append(tuple(sorted(s)))
    out.sort(key=lambda t: (len(t), t))
    return out


def quotient(h: FiniteHypergroup, subgroup: Sequence[int]):
    """Quotient of a commutative hypergroup by a subhypergroup.

    Returns ``(q, projection)`` where ``projection[x]`` is the coset index of
    element ``x``.  Cosets are the supports of ``delta_x * omega_K`` with
    ``omega_K`` the normalised Haar measure of K; representatives are the
    smallest member indices and cosets are ordered by representative.
    """
    if not h.commutative:
        raise UnsupportedOperationError("quotient requires a commutative hypergroup")
    k = sorted(set(int(i) for i in subgroup))
    if not is_subhypergroup(h, k):
        raise StructuralError("quotient: the given subset is not a subhypergroup")
    exact = h.exact
    tol = 0 if exact else FLOAT_ATOL
    lam = h.haar
    lam_k_total = sum(lam[x] for x in k)
    omega = [(x, lam[x] / lam_k_total if exact else float(lam[x]) / float(lam_k_total))
             for x in k]

    def conv_left(x):
        # delta_x * omega_K as a sparse dict
        acc: dict[int, object] = {}
        for w, cw in omega:
            for z, v in h.product(x, w):
                acc[z] = acc.get(z, 0) + cw * v
        return acc

    def support(measure):
        return frozenset(z for z, v in measure.items() if abs(v) > tol)

    proj = [-1] * h.n
    cosets: list[tuple[int, ...]] = []
    x_measure = {}
    for x in range(h.n):
        x_measure[x] = conv_left(x)
        if proj[x] >= 0:
            continue
        coset = support(x_measure[x])
        if any(proj[m] >= 0 for m in coset) or x not in coset:
            raise ConsistencyError("cosets do not partition the element set")
        ci = len(cosets)
        for m in coset:
            proj[m] = ci
        cosets.append(tuple(sorted(coset)))
    for x in range(h.n):
        if support(x_measure[x]) != frozenset(cosets[proj[x]]):
            raise ConsistencyError("coset supports disagree between representatives")

    m = len(cosets)
    zero = Fraction(0) if exact else 0.0
    constants: dict[tuple[int, int, int], object] = {}
    for ci in range(m):
        for cj in range(m):
            reference = None
            for x in cosets[ci]:
                for y in cosets[cj]:
                    # (delta_x * omega_K) * delta_y, pushed forward to cosets
                    acc: dict[int, object] = {}
                    for w, cw in x_measure[x].items():
                        for z, v in h.product(w, y):
                            acc[z] = acc.get(z, 0) + cw * v
                    pushed = [zero] * m
                    for z, v in acc.items():
                        pushed[proj[z]] += v
                    if reference is None:
                        reference = pushed
                    else:
                        worst = max(abs(a - b) for a, b in zip(reference, pushed))
                        if (exact and worst != 0) or (not exact and float(worst) > 1e-8):
                            raise ConsistencyError(
                                f"quotient constants depend on the representative "
                                f"(cosets {ci}, {cj})")
            for ck, v in enumerate(reference):
                if v != 0:
                    constants[(ci, cj, ck)] = v

    labels = tuple(f"[{h.elements[c[0]]}]" for c in cosets)
    identity = proj[h.identity]
    involution = [proj[h.involution[c[0]]] for c in cosets]
    q = FiniteHypergroup(labels, identity, involution, constants)
    return q, tuple(proj)
