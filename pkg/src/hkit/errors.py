"""Exception hierarchy shared by the library and the CLI."""


class HkitError(Exception):
    """Base class for every error raised by hkit."""


class ParseError(HkitError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ExponentOverflow(HkitError, OverflowError):
    pass


class DimensionMismatch(HkitError, ValueError):
    pass


class PreconditionError(HkitError, ValueError):
    pass


class CapExceeded(HkitError, ValueError):
    pass


class NotSatisfied(HkitError):
    """The combined relation does not vanish at the requested order."""


class NoSplit(HkitError):
    """No witness was found; on exact inputs this means a bug."""


class InternalContradiction(HkitError):
    """An outcome the equivalence theorems rule out on exact input."""


class QNotShiftedNilpotent(InternalContradiction):
    pass


class ModulusViolation(InternalContradiction):
    pass


class ImaginaryViolation(InternalContradiction):
    pass
