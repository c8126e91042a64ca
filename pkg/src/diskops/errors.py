"""Exception and warning types raised across the package."""


class DiskopsError(Exception):
    """Base class for all package errors."""


class NotInDisk(DiskopsError, ValueError):
    pass


class DegenerateDenominator(DiskopsError, ZeroDivisionError):
    pass


class GridTooSmall(DiskopsError, ValueError):
    pass


class NotSelfAdjoint(DiskopsError, ValueError):
    pass


class ResidualTooLarge(DiskopsError):
    """A numerical certificate exceeded its threshold.

    Usually means the truncation order is too small for the parameter, or
    the parameter is too close to the unit circle.
    """


class NotASymmetry(DiskopsError, ValueError):
    pass


class RankDeficient(DiskopsError):
    pass


class CertificateInvalid(DiskopsError):
    pass


class UnstableRank(DiskopsError):
    """Intersection counts disagree between truncation orders N and 2N."""


class LogBranchFailure(DiskopsError):
    """-1 lies (numerically) in the spectrum of the unitary whose log is needed."""


class SymbolAliasWarning(UserWarning):
    """Fourier coefficients of a symbol do not decay inside the sampled band."""
