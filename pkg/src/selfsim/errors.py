"""Exception and warning types shared across the package."""


class SelfSimError(Exception):
    """Base class for all library errors."""


class ConfigError(SelfSimError):
    """Invalid or inconsistent experiment configuration."""


class NonFinite(SelfSimError):
    """A field contains NaN or Inf values."""


class OutOfDomain(SelfSimError):
    """Interpolation query outside the grid extent."""


class ZeroField(SelfSimError):
    """Amplitude normalization requested for an identically-zero field."""


class AsymmetricGrid(SelfSimError):
    """Odd symmetrization requires a grid symmetric about x = 0 with a node at 0."""


class ZeroNorm(SelfSimError):
    """Exponent estimation requires strictly positive norms."""


class DegenerateBase(SelfSimError):
    """Logarithm base of an exponent inversion collapsed to 1."""


class Unstable(SelfSimError):
    """Time integration blew up or violated a hard stability bound."""


class NegativeConcentration(SelfSimError):
    """Concentration field dropped below zero with clipping disabled."""


class SingularSystem(SelfSimError):
    """Tridiagonal solve degenerated (zero pivot)."""


class OutOfRegime(SelfSimError):
    """Theory formula queried outside its range of validity."""


class InvalidExponents(SelfSimError):
    """Reaction exponents violate the constraints of the closed-form constants."""


class DomainError(SelfSimError):
    """Scalar oracle evaluated outside its domain."""


class UnknownOracle(SelfSimError):
    """Comparison requested against an oracle name that does not exist."""


class StabilityWarning(UserWarning):
    """Advisory: a diffusive CFL-type bound is violated; results may be garbage."""
