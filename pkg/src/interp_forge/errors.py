"""Exception hierarchy shared by every module."""


class InterpForgeError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""

    exit_code = 2


class SyntaxError(InterpForgeError):  # noqa: A001 - mirrors the documented error name
    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at offset {pos})"
        super().__init__(message)


class UndeclaredConnective(InterpForgeError):
    pass


class ArityMismatch(InterpForgeError):
    pass


class MissingBinding(InterpForgeError):
    pass


class DisciplineViolation(InterpForgeError):
    pass


class UnknownCalculus(InterpForgeError):
    pass


class ModalDependencyViolation(InterpForgeError):
    pass


class DisciplineMix(InterpForgeError):
    pass


class CheckFailure(InterpForgeError):
    exit_code = 1

    def __init__(self, path, reason):
        self.path = tuple(path)
        self.reason = reason
        where = "/".join(str(i) for i in self.path) or "root"
        super().__init__(f"at {where}: {reason}")


class NotAnExtension(InterpForgeError):
    pass


class NotFound(InterpForgeError):
    exit_code = 1


class NotAFocusedAxiom(InterpForgeError):
    pass


class BaseTooWeak(InterpForgeError):
    pass


class UnsupportedRule(InterpForgeError):
    pass


class MissingAdmissible(InterpForgeError):
    pass


class SplitMismatch(InterpForgeError):
    pass


class NotStronglyFocusedAxiom(InterpForgeError):
    pass


class NotMPF(InterpForgeError):
    pass


class ModalNotSupported(InterpForgeError):
    pass


class UnboundAtom(InterpForgeError):
    pass


class BudgetExceeded(InterpForgeError):
    pass


class InvalidInput(InterpForgeError):
    pass


class OutOfRange(InterpForgeError):
    pass


class NotTautology(InterpForgeError):
    pass


class VariableClash(InterpForgeError):
    pass


class MissingBaseRule(InterpForgeError):
    """A calculus claims a base tag but lacks one of its rules."""
