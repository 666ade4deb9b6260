"""Exception hierarchy shared by all qdlab modules."""


class QdError(Exception):
    """Base class for every error raised by qdlab."""


class ConfigError(QdError, ValueError):
    """Invalid parameters (bad b, tolerance out of range, malformed input)."""


class EvaluationError(QdError):
    """Base class for failures that happen while evaluating a quantity."""


class PoleHit(EvaluationError):
    """The argument lies within the pole guard of a pole."""


class AccuracyLoss(EvaluationError):
    """The requested accuracy could not be certified."""

    def __init__(self, msg, achieved_error=None):
        super().__init__(msg)
        self.achieved_error = achieved_error


class NonConvergent(EvaluationError):
    """A series or product was asked for outside its convergence region."""


class PinchedContour(EvaluationError):
    """Ascending and descending pole families collide; no admissible contour."""


class NoDecaySector(EvaluationError):
    """The integrand does not decay in any direction at one end."""


class ToleranceNotMet(EvaluationError):
    """Adaptive quadrature stopped before reaching the requested tolerance."""

    def __init__(self, msg, value=None, error=None):
        super().__init__(msg)
        self.value = value
        self.error = error


class HigherOrderPole(EvaluationError):
    """A requested residue sits at a pole of order greater than one."""


class DegenerateParameter(EvaluationError):
    """A denominator of an exact or truncated expression vanishes."""


class CoefficientPole(EvaluationError):
    """An operator coefficient is singular at the evaluation point."""


class NotLaurent(QdError):
    """A quantum mutation produced a non-terminating (non-Laurent) expansion."""


class FrozenDirection(QdError):
    """Attempt to mutate in a frozen direction."""


class UnsupportedCurve(QdError):
    """No hard-coded loop element exists for the requested curve."""


class Mismatch(QdError):
    """An exact identity failed; ``diff`` holds the normal-form difference."""

    def __init__(self, msg, diff=None):
        super().__init__(msg)
        self.diff = diff
