"""Exception types shared across odograph modules."""


class OdographError(Exception):
    """Base class for all errors raised by odograph."""


class SpecMismatch(OdographError):
    pass


class UnsupportedFlavor(OdographError):
    """Raised when an operation needs the standard-product commutation rule."""


class DegreeOutOfRange(OdographError):
    pass


class NotBijective(OdographError):
    def __init__(self, i, j, collisions):
        self.i, self.j, self.collisions = i, j, collisions
        super().__init__(
            f"theta_({i + 1},{j + 1}) is not a bijection; colliding inputs: {collisions}"
        )


class LetterOutOfRange(OdographError):
    pass


class IncompatibleAction(OdographError):
    pass


class ParseError(OdographError):
    pass
