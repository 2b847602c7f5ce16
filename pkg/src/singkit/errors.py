"""Exception hierarchy shared by all singkit modules."""


class SingkitError(Exception):
    """Base class for every error raised by singkit."""


# exact arithmetic

class NotMonic(SingkitError, ValueError):
    pass


class NotSquarefree(SingkitError, ValueError):
    def __init__(self, poly):
        super().__init__(f"defining polynomial is not squarefree: {poly}")
        self.poly = poly


class ZeroDivisor(SingkitError, ZeroDivisionError):
    """Inversion exposed a nontrivial factor of the defining polynomial."""

    def __init__(self, factor, text=None):
        super().__init__(f"zero divisor in extension; modulus has factor {text or factor}")
        self.factor = factor
        self.text = text or str(factor)


# polynomials and parsing

class PolynomialSyntaxError(SingkitError, ValueError):
    def __init__(self, message, position=None, line=None):
        where = ""
        if line is not None:
            where += f"line {line}, "
        if position is not None:
            where += f"column {position}: "
        super().__init__(where + message)
        self.position = position
        self.line = line


class UnknownVariable(PolynomialSyntaxError):
    def __init__(self, name, position=None, line=None):
        super().__init__(f"unknown variable {name!r}", position, line)
        self.name = name


class ZeroPolynomial(SingkitError, ValueError):
    pass


class NonGerm(SingkitError, ValueError):
    pass


class OrderMismatch(SingkitError, ValueError):
    pass


# local algebra / standard bases

class NotArtinian(SingkitError, ValueError):
    pass


class SubstitutionDiverged(SingkitError, ValueError):
    pass


# catalog and modular ideals

class IndexOutOfRange(SingkitError, ValueError):
    pass


class DegenerateLambda(SingkitError, ValueError):
    pass


class BasisWrongSize(SingkitError, ValueError):
    pass


class BasisNotIndependent(SingkitError, ValueError):
    pass


class NotASubseries(SingkitError, ValueError):
    pass


class ParabolicBase(SingkitError, ValueError):
    pass


# isomorphy

class SymmetricException(SingkitError, ValueError):
    pass


class UnsupportedRootDegree(SingkitError):
    pass


class BudgetExhausted(SingkitError):
    pass


class FieldMismatch(SingkitError, ValueError):
    pass


class NotAmbient(SingkitError, ValueError):
    pass


class UnknownCase(SingkitError, KeyError):
    pass
