"""hyperkit: harmonic analysis on finite hypergroups.

Construction and validation of finite hypergroups, Haar measures, character
tables with hyperdimensions, Fourier/Plancherel analysis, dual hypergroups,
joins and quotients, amenability constants of the hypergroup algebra, and the
support uncertainty inequality.
"""

__version__ = "0.1.0"

from .amen import AMReport, am_report, amenability_constant, diagonal
from .builders import (CayleyTable, conjugacy_hypergroup, cyclic_group,
                       dihedral_group, enumerate_subhypergroups,
                       group_hypergroup, hp, is_subhypergroup, join,
                       quaternion_group, quotient, symmetric_group)
from .core import (FiniteHypergroup, HFunction, ValidationReport, convolve,
                   direct_product, haar, is_group, validate)
from .errors import (ConsistencyError, HyperkitError, InvalidHypergroupError,
                     NumericalDegeneracyError, StructuralError,
                     UnsupportedOperationError)
from .files import (builtin_path, read_cayley_file, read_function_file,
                    read_hypergroup_file, write_hypergroup_file)
from .spectra import (DEFAULT_SEED, CharacterTable, DualityReport, DualResult,
                      characters, dual_hypergroup, fourier, inverse_fourier,
                      minimal_idempotents, verify_join_dual,
                      verify_quotient_dual)
from .uncertainty import (ScanResult, UncertaintyReport, tightness_scan,
                          uncertainty_check)

__all__ = [
    "AMReport", "CayleyTable", "CharacterTable", "ConsistencyError",
    "DEFAULT_SEED", "DualResult", "DualityReport", "FiniteHypergroup",
    "HFunction", "HyperkitError", "InvalidHypergroupError",
    "NumericalDegeneracyError", "ScanResult", "StructuralError",
    "UncertaintyReport", "UnsupportedOperationError", "ValidationReport",
    "am_report", "amenability_constant", "builtin_path", "characters",
    "conjugacy_hypergroup", "convolve", "cyclic_group", "diagonal",
    "dihedral_group", "direct_product", "dual_hypergroup",
    "enumerate_subhypergroups", "fourier", "group_hypergroup", "haar", "hp",
    "inverse_fourier", "is_group", "is_subhypergroup", "join",
    "minimal_idempotents", "quaternion_group", "quotient",
    "read_cayley_file", "read_function_file", "read_hypergroup_file",
    "symmetric_group", "tightness_scan", "uncertainty_check", "validate",
    "verify_join_dual", "verify_quotient_dual", "write_hypergroup_file",
]
