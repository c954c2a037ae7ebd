"""Exception types raised across the package."""


class QuarticLabError(Exception):
    """Base class for all package errors."""


class InvalidInput(QuarticLabError, ValueError):
    """Input rejected before any computation (maps to CLI exit code 2)."""


class NotPrime(InvalidInput):
    pass


class WrongResidue(InvalidInput):
    pass


class BadGenus(InvalidInput):
    pass


class NotMonic(InvalidInput):
    pass


class NotIrreducible(InvalidInput):
    pass


class NotQuarticRoot(QuarticLabError, ValueError):
    pass


class DivisionByZero(QuarticLabError, ZeroDivisionError):
    pass


class NotGaloisStable(QuarticLabError, AssertionError):
    pass


class NotFamilyMember(InvalidInput):
    def __init__(self, reason):
        super().__init__(f"not a family member: {reason}")
        self.reason = reason


class CostCeiling(QuarticLabError, RuntimeError):
    """A brute-force sum would exceed the configured residue budget."""


class Divergent(InvalidInput):
    pass


class PolySyntaxError(InvalidInput):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class CoefficientOutOfRange(InvalidInput):
    pass
