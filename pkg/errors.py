"""
PolyBisect Error Module
Exception hierarchy shared by the library and the command line. Each error class
carries the process exit code the CLI reports for it.
"""
from config import EXIT_CODES


class PolyBisectError(Exception):
    """Base class for every error raised by the package."""
    exit_code = EXIT_CODES['domain']


# ----- usage / parse errors -----

class SiteParseError(PolyBisectError):
    """A site or rational literal could not be parsed exactly."""
    exit_code = EXIT_CODES['usage']


class InputFormatError(PolyBisectError):
    """A polytope input file is malformed."""
    exit_code = EXIT_CODES['usage']


# ----- exact arithmetic -----

class ZeroDenominator(PolyBisectError):
    pass


class DimMismatch(PolyBisectError):
    pass


class NoSolution(PolyBisectError):
    """Linear system is inconsistent."""
    pass


class Underdetermined(PolyBisectError):
    """Linear system is consistent but rank deficient."""

    def __init__(self, message: str, rank: int):
        super().__init__(message)
        self.rank = rank


class SingularMap(PolyBisectError):
    pass


# ----- polytopes -----

class NotCentrallySymmetric(PolyBisectError):
    pass


class BadOrientation(PolyBisectError):
    pass


class InvalidPolytope(PolyBisectError):
    pass


class NotInHyperplane(PolyBisectError):
    """Point violates the sum-zero constraint of the root polytope."""
    pass


class ZeroVector(PolyBisectError):
    pass


class BadFacet(PolyBisectError):
    pass


# ----- bisectors and fans -----

class ZeroSite(PolyBisectError):
    pass


class DegeneratePoint(PolyBisectError):
    """Site is not in general position; `witness` names the violated tie."""

    def __init__(self, message: str, witness: str):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


class CapExceeded(PolyBisectError):
    pass


class UnsupportedFamily(PolyBisectError):
    pass


class SamplingExhausted(PolyBisectError):
    pass


# ----- internal -----

class InvariantBreach(PolyBisectError):
    """An exact internal consistency check failed."""
    exit_code = EXIT_CODES['invariant']
