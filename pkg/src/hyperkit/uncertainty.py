"""Support uncertainty inequality for finite hypergroups.

For every nonzero f,  lambda(H) <= lambda(supp f) * sum_{chi in supp f^} k_chi d_chi.
Supports are read off with a relative threshold, since exact supports do not
survive floating point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .builders import enumerate_subhypergroups
from .core import HFunction
from .errors import ConsistencyError
from .spectra import DEFAULT_SEED, CharacterTable, fourier

SUPPORT_TOL = 1e-9
SLACK = 1e-12


@dataclass(frozen=True)
class UncertaintyReport:
    support_size: float      # lambda(supp f)
    dual_mass: float         # sum of k_chi d_chi over supp f^
    lhs: float               # lambda(H)
    holds: bool
    ratio: float             # rhs / lhs, >= 1 by the inequality
    supp_tolerance: float


def uncertainty_check(table: CharacterTable, f: HFunction, *,
                      tol: float = SUPPORT_TOL) -> UncertaintyReport:
    """Evaluate the support inequality for one function."""
    h = table.host
    if f.host is not h:
        raise ValueError("uncertainty_check: function lives on a different hypergroup")
    mag = np.abs(f.values)
    peak = mag.max()
    if peak == 0.0:
        raise ValueError("uncertainty_check requires a nonzero function")
    lam = h.haar_float
    support_size = float(lam[mag > tol * peak].sum())

    fhat = fourier(table, f)
    hat_mag = np.abs(fhat)
    hat_peak = hat_mag.max()
    dual_support = hat_mag > tol * hat_peak
    dual_mass = float((table.hyperdim * table.dim)[dual_support].sum())

    lhs = float(h.haar_total)
    rhs = support_size * dual_mass
    return UncertaintyReport(
        support_size=support_size,
        dual_mass=dual_mass,
        lhs=lhs,
        holds=lhs <= rhs * (1.0 + SLACK),
        ratio=rhs / lhs,
        supp_tolerance=tol,
    )


@dataclass(frozen=True)
class ScanResult:
    best_description: str
    best_ratio: float
    evaluated: int


def tightness_scan(table: CharacterTable, *, n_random: int = 200,
                   seed: int = DEFAULT_SEED) -> ScanResult:
    """Search for near-equality witnesses of the support inequality.

    Evaluates the indicator of every subhypergroup, every point mass, every
    character, and ``n_random`` seeded sparse functions; returns the smallest
    ratio seen.  Subhypergroup indicators are required to achieve ratio 1 (a
    consequence of the quotient duality); a deviation signals an internal bug.
    This is a heuristic explorer, not a global optimiser.
    """
    h = table.host
    candidates: list[tuple[str, np.ndarray]] = []
    for sub in enumerate_subhypergroups(h):
        ind = np.zeros(h.n)
        ind[list(sub)] = 1.0
        label = ",".join(h.elements[i] for i in sub)
        candidates.append((f"indicator K={{{label}}}", ind))
    n_subgroups = len(candidates)
    for x in range(h.n):
        v = np.zeros(h.n)
        v[x] = 1.0
        candidates.append((f"delta[{h.elements[x]}]", v))
    for i in range(table.n):
        candidates.append((f"character[{i}]", table.chars[i]))
    rng = np.random.default_rng(seed)
    for i in range(n_random):
        size = int(rng.integers(1, h.n + 1))
        support = rng.choice(h.n, size=size, replace=False)
        v = np.zeros(h.n, dtype=complex)
        v[support] = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        candidates.append((f"random[{i}]", v))

    best_desc, best_ratio = "", np.inf
    for idx, (desc, values) in enumerate(candidates):
        report = uncertainty_check(table, HFunction(h, values))
        if idx < n_subgroups and abs(report.ratio - 1.0) > 1e-10:
            raise ConsistencyError(
                f"subhypergroup indicator {desc} has ratio {report.ratio!r}, expected 1")
        if report.ratio < best_ratio:
            best_desc, best_ratio = desc, report.ratio
    return ScanResult(best_description=best_desc, best_ratio=float(best_ratio),
                      evaluated=len(candidates))
