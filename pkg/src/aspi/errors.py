"""Exception types shared across the package.

Budget trips are modelled as exceptions so callers can treat them as
reportable outcomes (the CLI maps them to exit code 2) without confusing
them with programming errors.
"""


class AspiError(Exception):
    """Base class for all package-specific errors."""


class OverflowBeyondEpsilon0(AspiError):
    """An ordinal operation would produce a result above epsilon_0."""


class NotALimit(AspiError):
    """Fundamental sequence requested for 0 or a successor ordinal."""


class OrdinalSyntaxError(AspiError):
    """Ordinal text failed to parse; carries the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BudgetExceeded(AspiError):
    """An evaluation ran out of its explicit budget.

    ``limit`` is ``"expansions"`` or ``"bits"``; ``expansions`` is the
    number of recursion-rule applications performed before tripping.
    """

    def __init__(self, limit: str, expansions: int, detail: str = ""):
        msg = f"budget exceeded ({limit}) after {expansions} expansions"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.limit = limit
        self.expansions = expansions
        self.detail = detail


class UnknownClosedForm(AspiError):
    """closed-form check requested for an ordinal outside the table."""


class LimitExceeded(AspiError):
    """A machine run did not halt within its step limit.

    ``witness`` is the first offending input (bit tuple), when known.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class WindowTooLarge(AspiError):
    """learned() asked about a window longer than the transcript."""


class OutOfRange(AspiError):
    """Round index outside 1..horizon."""


class PlayTimeout(AspiError):
    """A handle exhausted its step budget during a play."""

    def __init__(self, message: str, round_no: int):
        super().__init__(f"{message} (round {round_no})")
        self.round_no = round_no


class PredictorTimeout(PlayTimeout):
    pass


class EvaderTimeout(PlayTimeout):
    pass


class TargetTimeout(AspiError):
    """An anti-predictor's target predictor exhausted its budget."""


class UnreachableTarget(AspiError):
    """Padded-evader target below the instruction cost floor."""


class GrowthBudgetError(AspiError):
    """A growth-function handle hit its evaluation budget."""


class LadderOrderError(AspiError):
    """A measure ladder was not strictly increasing."""


class SuiteConstructionError(AspiError):
    """An evader suite could not be built as configured."""


class ConfigError(AspiError):
    """Experiment configuration failed validation.

    Carries every violation at once so a user can fix them in one pass.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid config:\n" + "\n".join(f"  - {v}" for v in self.violations))


class SchemaMismatch(AspiError):
    """A persisted run record has an unsupported schema version."""


class IoFailure(AspiError):
    """Run record could not be read or written."""
