"""The explicit diagonal of l^1(H, lambda) and its amenability constant.

For a commutative finite hypergroup the algebra has a unique diagonal

    Delta(x, y) = (1/lambda(H)^2) sum_i k_i^2 chi_i(x) conj(chi_i(y)),

whose projective (weighted l^1) norm is the amenability constant

    AM = sum_{x,y} |Delta(x, y)| lambda(x) lambda(y).

AM >= 1 always, with equality exactly on groups.  When the character table is
exactly rational the constant is returned as a Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import HFunction, convolve
from .spectra import CharacterTable


@dataclass(frozen=True)
class AMReport:
    am: object                    # Fraction in exact mode, float otherwise
    diagonal: np.ndarray          # (n, n)
    residual_identity: float      # max |m(Delta) * chi - chi| over characters
    residual_commute: float       # max |chi . Delta - Delta . chi|


def diagonal(table: CharacterTable) -> np.ndarray:
    """The diagonal Delta as an (n, n) array over H x H."""
    lam_total = float(table.host.haar_total)
    k2 = table.hyperdim.astype(float) ** 2
    d = np.einsum("i,ix,iy->xy", k2, table.chars, table.chars.conj()) / lam_total**2
    if np.abs(d.imag).max() < 1e-12:
        d = d.real
    d = d.copy()
    d.flags.writeable = False
    return d


def diagonal_exact(table: CharacterTable):
    """Exact rational Delta; requires an exactly lifted character table."""
    if not table.exact:
        raise ValueError("diagonal_exact needs an exact character table")
    n = table.n
    rows = table.exact_chars
    k = table.exact_hyperdim
    total = table.host.haar_total
    return tuple(
        tuple(
            sum(k[i] ** 2 * rows[i][x] * rows[i][y] for i in range(n)) / total**2
            for y in range(n))
        for x in range(n))


def amenability_constant(table: CharacterTable):
    """AM(l^1(H, lambda)); exact Fraction when the table is exact."""
    h = table.host
    if table.exact:
        lam = h.haar
        d = diagonal_exact(table)
        return sum(abs(d[x][y]) * lam[x] * lam[y]
                   for x in range(table.n) for y in range(table.n))
    lam = h.haar_float
    d = diagonal(table)
    return float(np.einsum("xy,x,y->", np.abs(d), lam, lam))


def _module_action_residual(table: CharacterTable, delta: np.ndarray) -> float:
    """max over characters chi of |chi . Delta - Delta . chi| (slotwise
    l^1(lambda) convolution of Delta's columns/rows with chi)."""
    h = table.host
    c = h.dense_constants()
    inv = np.array(h.involution)
    trans = c[inv]                       # trans[u, x, z] = c[u~][x][z]
    lam = h.haar_float
    worst = 0.0
    for i in range(table.n):
        chi = table.chars[i]
        left = np.einsum("u,u,uxz,zy->xy", chi, lam, trans, delta)
        right = np.einsum("xu,u,uyz,z->xy", delta, lam, trans, chi)
        worst = max(worst, float(np.abs(left - right).max()))
    return worst


def _identity_residual(table: CharacterTable, delta: np.ndarray) -> float:
    """max over characters chi of |m(Delta) * chi - chi| with the l^1
    multiplication map m(f (x) g) = f * g."""
    h = table.host
    c = h.dense_constants()
    lam = h.haar_float
    m_delta = np.einsum("xy,x,y,xyz->z", delta, lam, lam, c) / lam
    mfun = HFunction(h, m_delta)
    worst = 0.0
    for i in range(table.n):
        chi = HFunction(h, table.chars[i])
        out = convolve(h, mfun, chi, normalized=False)
        worst = max(worst, float(np.abs(out.values - chi.values).max()))
    return worst


def am_report(table: CharacterTable) -> AMReport:
    """Amenability constant plus the verification residuals of the diagonal."""
    d = diagonal(table)
    return AMReport(
        am=amenability_constant(table),
        diagonal=d,
        residual_identity=_identity_residual(table, d),
        residual_commute=_module_action_residual(table, d),
    )
