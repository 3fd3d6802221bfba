"""Exception hierarchy shared by all padiclab modules."""


class PadicLabError(Exception):
    """Base class for every error raised by padiclab."""


class NonCauchy(PadicLabError):
    """A sequence fails to show growing p-adic agreement."""


class PrecisionExhausted(PadicLabError):
    pass


class NonUnitLeadingTerm(PadicLabError):
    pass


class NonzeroConstantTerm(PadicLabError):
    pass


class FractionalLeadingExponent(PadicLabError):
    pass


class HeckeInconsistency(PadicLabError):
    pass


class MissingNormalization(PadicLabError):
    pass


class SingularCurve(PadicLabError):
    pass


class BadReduction(PadicLabError):
    pass


class OrdinaryReduction(PadicLabError):
    """The curve has ordinary reduction where a supersingular prime is required."""


class NoUnitDeterminant(PadicLabError):
    """The Dieudonne constraints in range do not pin down (lambda, mu)."""


class MembershipViolation(PadicLabError):
    """No (lambda, mu) makes the second-kind integral p-integral."""


class ArgumentNotPAdicInteger(PadicLabError):
    pass


class BadDiscriminant(PadicLabError):
    pass


class IndexNotIntegral(PadicLabError):
    pass


class DivisionByNonUnit(PadicLabError):
    pass


class SingularSystem(PadicLabError):
    pass


class WitnessDisagreement(PadicLabError):
    """Hasse invariant and point count disagree on supersingularity."""


class BudgetExceeded(PadicLabError):
    pass


class ParseError(PadicLabError):
    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        super().__init__(where + message)
        self.path = path
        self.line = line
