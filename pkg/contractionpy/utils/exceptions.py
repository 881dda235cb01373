class WrongLength(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class LiteralSyntaxError(ValueError):
    """Raised when a text does not follow the literal grammar [i1,i2,...,in]."""
    pass


class BadParameter(ValueError):
    pass


class NotAMember(ValueError):
    pass


class NotClosed(ValueError):
    """
        Raised when a set of transformations is not closed under composition.

        Attributes
        ----------
        witness : tuple
            (alpha, beta) whose product falls outside the set
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedMethod(ValueError):
    pass


class ScaleRefusal(RuntimeError):
    pass


class CorruptCacheWarning(UserWarning):
    pass
