"""Exception hierarchy shared by all modules."""


class IwasawaError(Exception):
    """Base class for every error raised by this package."""


class SpecMismatch(IwasawaError, ValueError):
    pass


class NonUnit(IwasawaError, ArithmeticError):
    pass


class NotASign(IwasawaError, ValueError):
    pass


class PrecisionExhausted(IwasawaError, ArithmeticError):
    """The working precision cannot support the requested answer."""


class ZeroElement(IwasawaError, ValueError):
    pass


class NotSkewHermitian(IwasawaError, ValueError):
    def __init__(self, i, j, msg=None):
        self.i, self.j = i, j
        super().__init__(msg or f"entry ({i + 1},{j + 1}) violates (H^iota)^T = -H")


class NotInMaximalIdeal(IwasawaError, ValueError):
    def __init__(self, i, j, msg=None):
        self.i, self.j = i, j
        super().__init__(msg or f"entry ({i + 1},{j + 1}) has unit augmentation")


class MultiEigenvariable(IwasawaError, ValueError):
    pass


class NotEigenInitialForm(IwasawaError, ValueError):
    """xi(init L) is not +-init L, so (L) is not xi-stable."""


class DegenerateSymmetrization(IwasawaError, ArithmeticError):
    pass


class EpsilonIotaMismatch(IwasawaError, ArithmeticError):
    pass


class NotOrdinary(IwasawaError, ValueError):
    pass


class ParseError(IwasawaError, ValueError):
    pass
