"""Package-wide default caps and budgets.

Operations take these as explicit parameters with defaults drawn from
here, so experiments can override any of them without monkeypatching.
"""

from .hierarchy import EvalBudget

# Mini-machine simulation
DEFAULT_PER_RUN_LIMIT = 100_000  # steps per single run
DEFAULT_MAX_TE_N = 16  # exact t_e enumerates 2^n inputs
MAX_STEP_LIMIT = 1 << 62  # kernel-side clamp (int64 arithmetic)

# Lookalike predictor
DEFAULT_POOL_CAP = 512
DEFAULT_LOOKALIKE_RUN_CAP = 1_000_000  # per-run clamp on f(n) step bounds

# Hierarchy / growth-function evaluation
DEFAULT_BUDGET = EvalBudget(max_expansions=1_000_000, max_bits=1_000_000)

# Majorization scanning: a verdict needs a dominated suffix at least
# this fraction of the window before it counts as confirmed.
DEFAULT_CONFIRM_FRACTION = 0.5

# Padded-evader verification window
DEFAULT_VERIFY_WINDOW = range(0, 11)
