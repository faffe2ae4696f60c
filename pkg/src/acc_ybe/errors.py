"""Exception types raised across the toolkit."""


class AccError(Exception):
    """Base class for every error raised by acc_ybe."""


class DimensionMismatch(AccError, ValueError):
    pass


class SizeOverflow(AccError, ValueError):
    pass


class MinimalPolynomialMismatch(AccError):
    """The candidate spectrum does not annihilate the matrix."""


class NonIntegerMultiplicity(AccError):
    pass


class DomainViolation(AccError, ValueError):
    """A family instance violates one of its domain constraints."""


class DegenerateDomain(DomainViolation):
    pass


class NotHecke(AccError):
    pass


class DegenerateSpectrum(NotHecke):
    pass


class RankMismatch(AccError):
    pass


class NonIntegerTrace(AccError):
    def __init__(self, level, value):
        super().__init__(f"level {level}: normalized symmetrizer trace {value!r} is not an integer")
        self.level = level
        self.value = value


class DimensionIdentityFailure(AccError):
    def __init__(self, level, total, expected):
        super().__init__(f"level {level}: sum m*f = {total}, expected {expected}")
        self.level = level


class CharacterCrosscheckFailure(AccError):
    def __init__(self, level, residual):
        super().__init__(f"level {level}: t1-trace cross-check residual {residual:.3e}")
        self.level = level
        self.residual = residual


class NotTemperleyLieb(AccError):
    """The three-strand q-antisymmetrizer does not vanish."""
