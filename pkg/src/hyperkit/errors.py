"""Exception hierarchy shared by all hyperkit modules."""


class HyperkitError(Exception):
    """Base class for all hyperkit errors."""


class StructuralError(HyperkitError):
    """Malformed input: wrong shapes, unknown labels, unparsable files.

    Distinct from an axiom violation, which is reported through a
    ValidationReport instead of raised.
    """


class InvalidHypergroupError(HyperkitError):
    """Construction attempted from data that fails the hypergroup axioms."""

    def __init__(self, report, message="hypergroup axioms violated"):
        super().__init__(f"{message}: {report.summary()}")
        self.report = report


class UnsupportedOperationError(HyperkitError):
    """Operation not defined for this input (e.g. characters of a
    noncommutative hypergroup)."""


class NumericalDegeneracyError(HyperkitError):
    """Floating-point eigenstructure too degenerate to resolve reliably."""


class ConsistencyError(HyperkitError):
    """Internal invariant broke: valid-looking inputs produced contradictory
    results (e.g. coset representatives disagree in a quotient)."""
