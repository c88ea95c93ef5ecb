class GphError(Exception):
    """Base class for library errors."""


class InputError(GphError, ValueError):
    """Malformed or inconsistent input (files, algebras, modules)."""


class NotAdmissibleError(InputError):
    """A presentation whose ideal is not admissible (or not certified so)."""


class CutoffError(GphError):
    """A computation needs more resolution degrees than the cutoff allows."""


class VerificationError(GphError):
    """A certificate or construction failed its own verification."""


class InternalError(GphError, RuntimeError):
    """Two independent computations disagree; indicates a bug."""
