"""Exception hierarchy shared by every module.

The CLI prints the class name as the first token of its error line, so the
names are part of the external interface.
"""


class LexlatError(Exception):
    """Base class for domain errors."""

    @property
    def name(self):
        return type(self).__name__


class UnknownElement(LexlatError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotAPartialOrder(LexlatError):
    pass


class NotAForest(LexlatError):
    pass


class NotFinite(LexlatError):
    pass


class NotUpperSet(LexlatError):
    pass


class PosetMismatch(LexlatError):
    pass


class PreconditionViolated(LexlatError):
    pass


class TooLarge(LexlatError):
    pass


class EmptyPoset(LexlatError):
    pass


class ZeroElement(LexlatError):
    pass


class CallbackFailure(LexlatError):
    pass


class ExponentNotInS(LexlatError):
    pass


class SignUndecided(LexlatError):
    pass


class NotInM0(LexlatError):
    pass


class UnknownFamily(LexlatError):
    pass


class InconsistentOracle(LexlatError):
    pass


class ParseError(LexlatError):
    pass
