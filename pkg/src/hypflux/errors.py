"""Exception taxonomy shared across the package.

Every error raised by the library derives from HypfluxError so callers
(service layer, CLI) can map failures to exit codes and HTTP statuses
without string matching.
"""


class HypfluxError(Exception):
    """Base class for all library errors."""


class ConfigError(HypfluxError):
    """Malformed or inconsistent configuration input."""


class DomainError(HypfluxError):
    """State outside the admissible domain (rho > 0, theta > 0, unit xi)."""


class ConstitutiveViolation(HypfluxError):
    """A constitutive positivity requirement failed at an evaluation point."""


class UnknownModel(HypfluxError):
    """Unrecognized constitutive model or coefficient-pair preset name."""


class SingularBlock(HypfluxError):
    """Leading block passed to the partitioned determinant is singular."""


class GammaZero(HypfluxError):
    """No flux threshold exists because lambda + nu vanishes."""


class SingularA0(HypfluxError):
    """Temporal coefficient matrix has a nonpositive diagonal entry."""


class WrongLambdaNu(HypfluxError):
    """Operation defined only for a specific (lambda, nu) pair."""


class NotApplicable(HypfluxError):
    """Requested construction does not apply to the given parameters."""
