"""Growth-rate measures and the intelligence profiles built on them.

Everything here is windowed and explicitly parameterised: the
underlying notions (eventual pointwise dominance, the original
natural-number growth rate, Big-O membership, hierarchy suprema) are
undecidable in general, so each operation reports a verdict over a
stated finite window together with every parameter needed to re-run it.

The primitive-recursive enumeration is the canonical size-then-
constructor-order walk of the term grammar implemented below (scheme id
``pr-size-lex-v1``); reports carry the scheme id because the measure's
numeric values depend on the enumeration, even though its qualitative
structure does not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from .arena import learned, play
from .defaults import (
    DEFAULT_BUDGET,
    DEFAULT_CONFIRM_FRACTION,
    DEFAULT_VERIFY_WINDOW,
)
from .errors import (
    BudgetExceeded,
    LadderOrderError,
    SuiteConstructionError,
    UnreachableTarget,
)
from .growth import GrowthFn, hierarchy_growth
from .hierarchy import EvalBudget, HierarchyKind, _Meter
from .machine import MACHINE_MODEL_ID, CostProfile
from .ordinal import Ordinal, compare, format_ordinal
from .zoo import EvaderSpec, PredictorSpec, make_padded_evader

__all__ = [
    "MajorizationStatus",
    "MajorizationVerdict",
    "majorizes",
    "diagonal_majorizer",
    "PRTerm",
    "Zero",
    "Succ",
    "Proj",
    "Comp",
    "PrimRec",
    "pr_enumerate",
    "pr_index",
    "pr_eval",
    "PR_ENUMERATION_SCHEME",
    "hibbard_f",
    "hibbard_growth_rate",
    "GrowthRateEstimate",
    "BigOVerdict",
    "bigO_member",
    "bigTheta_member",
    "SuiteConfig",
    "build_level_suite",
    "LevelOutcome",
    "AspiProfile",
    "aspi_bigO_estimate",
    "aspi_hierarchy_profile",
    "original_hibbard_measure_empirical",
]


# -- majorization ------------------------------------------------------


class MajorizationStatus(Enum):
    MAJORIZES = "majorizes_on_window"
    FAILS = "fails_on_window"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class MajorizationVerdict:
    status: MajorizationStatus
    witness: int | None  # n0 with f(n) > g(n) for all n0 < n <= window_end
    counterexample: int | None  # latest n with f(n) <= g(n)
    window_end: int

    def __bool__(self):
        return self.status is MajorizationStatus.MAJORIZES


def _confirm_length(window_end: int, min_suffix: int | None) -> int:
    if min_suffix is not None:
        return min_suffix
    return max(1, int(window_end * DEFAULT_CONFIRM_FRACTION))


def majorizes(
    f: Callable[[int], int],
    g: Callable[[int], int],
    window_end: int,
    min_suffix: int | None = None,
) -> MajorizationVerdict:
    """Windowed check of eventual strict pointwise dominance of f over g.

    Scans n = 0..window_end.  With no counterexample the witness is 0;
    with counterexamples, the verdict is positive only when the clean
    suffix after the last one is at least the confirmation length
    (default: half the window).  A counterexample at the window end is
    an outright failure; a shorter clean suffix is inconclusive.
    """
    last_fail = None
    for n in range(window_end + 1):
        if f(n) <= g(n):
            last_fail = n
    if last_fail is None:
        return MajorizationVerdict(MajorizationStatus.MAJORIZES, 0, None, window_end)
    suffix = window_end - last_fail
    if suffix >= _confirm_length(window_end, min_suffix):
        return MajorizationVerdict(
            MajorizationStatus.MAJORIZES, last_fail, last_fail, window_end
        )
    if suffix == 0:
        return MajorizationVerdict(
            MajorizationStatus.FAILS, None, last_fail, window_end
        )
    return MajorizationVerdict(
        MajorizationStatus.INCONCLUSIVE, None, last_fail, window_end
    )


def diagonal_majorizer(fs: Sequence[GrowthFn]) -> GrowthFn:
    """g(n) = f_0(n) + ... + f_min(n, len-1)(n) + 1.

    The +1 keeps domination strict even over lists of zero functions;
    the result majorizes every input on any window extending past the
    list length.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("diagonal majorizer needs at least one function")
    name = "diag[" + ",".join(f.name for f in fs) + "]"

    def fn(n: int) -> int:
        return sum(f(n) for f in fs[: n + 1]) + 1

    return GrowthFn(name, fn)


# -- primitive recursive terms ----------------------------------------

PR_ENUMERATION_SCHEME = "pr-size-lex-v1"


class PRTerm:
    """Base of the primitive-recursive term grammar."""

    def arity(self) -> int:
        raise NotImplementedError

    def size(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Zero(PRTerm):
    """The 0-ary constant 0."""

    def arity(self):
        return 0

    def size(self):
        return 1


@dataclass(frozen=True)
class Succ(PRTerm):
    def arity(self):
        return 1

    def size(self):
        return 1


@dataclass(frozen=True)
class Proj(PRTerm):
    i: int  # 1-based
    k: int

    def __post_init__(self):
        if not 1 <= self.i <= self.k:
            raise ValueError("projection index out of range")

    def arity(self):
        return self.k

    def size(self):
        return 1 + self.k


@dataclass(frozen=True)
class Comp(PRTerm):
    outer: PRTerm
    inners: tuple[PRTerm, ...]

    def __post_init__(self):
        if len(self.inners) != self.outer.arity() or not self.inners:
            raise ValueError("composition arity mismatch")
        k = self.inners[0].arity()
        if any(g.arity() != k for g in self.inners):
            raise ValueError("inner functions must share an arity")

    def arity(self):
        return self.inners[0].arity()

    def size(self):
        return 1 + self.outer.size() + sum(g.size() for g in self.inners)


@dataclass(frozen=True)
class PrimRec(PRTerm):
    base: PRTerm  # k-ary
    step: PRTerm  # (k+2)-ary: (recursion var, previous value, params)

    def __post_init__(self):
        if self.step.arity() != self.base.arity() + 2:
            raise ValueError("recursion arity mismatch")

    def arity(self):
        return self.base.arity() + 1

    def size(self):
        return 1 + self.base.size() + self.step.size()


_SIZE_CACHE: list[list[PRTerm]] = [[]]  # index s -> terms of size s
_ARITY_CACHE: dict[tuple[int, int], list[PRTerm]] = {}
_FLAT: list[PRTerm] = []
_INDEX_OF: dict[PRTerm, int] = {}


def _terms_of_size(s: int) -> list[PRTerm]:
    while len(_SIZE_CACHE) <= s:
        _SIZE_CACHE.append(_generate_size(len(_SIZE_CACHE)))
    return _SIZE_CACHE[s]


def _terms_sa(s: int, k: int) -> list[PRTerm]:
    key = (s, k)
    if key not in _ARITY_CACHE:
        _ARITY_CACHE[key] = [t for t in _terms_of_size(s) if t.arity() == k]
    return _ARITY_CACHE[key]


def _compositions(total: int, parts: int):
    """Ordered compositions of ``total`` into ``parts`` positives, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _generate_size(s: int) -> list[PRTerm]:
    out: list[PRTerm] = []
    if s == 1:
        return [Zero(), Succ()]
    # projections: size 1 + k
    k = s - 1
    out.extend(Proj(i, k) for i in range(1, k + 1))
    # compositions: 1 + size(outer) + sum(sizes of inners)
    for so in range(1, s - 1):
        for outer in _terms_of_size(so):
            m = outer.arity()
            if m < 1:
                continue
            rem = s - 1 - so
            if rem < m:
                continue
            # inner arity is at most the inner size, itself at most rem
            for arity in range(0, rem + 1):
                for sizes in _compositions(rem, m):
                    pools = [_terms_sa(sz, arity) for sz in sizes]
                    if any(not pool for pool in pools):
                        continue
                    for inners in itertools.product(*pools):
                        out.append(Comp(outer, tuple(inners)))
    # primitive recursion: 1 + size(base) + size(step)
    for sb in range(1, s - 1):
        for base in _terms_of_size(sb):
            for step in _terms_sa(s - 1 - sb, base.arity() + 2):
                out.append(PrimRec(base, step))
    return out


def _extend_enumeration(upto_index: int | None = None, upto_size: int | None = None):
    size = len(_SIZE_CACHE)
    while (upto_index is not None and len(_FLAT) < upto_index) or (
        upto_size is not None and size <= upto_size
    ):
        for term in _terms_of_size(size):
            _FLAT.append(term)
            _INDEX_OF[term] = len(_FLAT)
        size += 1
        if size > 64:  # safety valve; sizes this deep are astronomically many terms
            raise RuntimeError("enumeration ran away")


def pr_enumerate(i: int) -> PRTerm:
    """The i-th term (1-based) in the canonical enumeration."""
    if i < 1:
        raise ValueError("enumeration is 1-based")
    _extend_enumeration(upto_index=i)
    return _FLAT[i - 1]


def pr_index(term: PRTerm) -> int:
    if term not in _INDEX_OF:
        _extend_enumeration(upto_size=term.size())
    return _INDEX_OF[term]


def _pr_eval(term: PRTerm, args: tuple[int, ...], meter: _Meter) -> int:
    meter.charge(1)
    if isinstance(term, Zero):
        return 0
    if isinstance(term, Succ):
        value = args[0] + 1
        meter.note(value)
        return value
    if isinstance(term, Proj):
        return args[term.i - 1]
    if isinstance(term, Comp):
        vals = tuple(_pr_eval(g, args, meter) for g in term.inners)
        return _pr_eval(term.outer, vals, meter)
    if isinstance(term, PrimRec):
        y, rest = args[0], args[1:]
        acc = _pr_eval(term.base, rest, meter)
        for i in range(y):
            acc = _pr_eval(term.step, (i, acc) + rest, meter)
            meter.note(acc)
        return acc
    raise TypeError(f"not a PR term: {term!r}")


def pr_eval(term: PRTerm, args: Sequence[int], budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """Standard primitive-recursive semantics over big naturals."""
    args = tuple(int(a) for a in args)
    if len(args) != term.arity():
        raise ValueError(f"term has arity {term.arity()}, got {len(args)} args")
    return _pr_eval(term, args, _Meter(budget))


def pr_growth(i: int, budget: EvalBudget = DEFAULT_BUDGET) -> GrowthFn:
    """Unary view of the i-th PR function: evaluated on (j, ..., j)."""
    term = pr_enumerate(i)
    arity = term.arity()

    def fn(j: int) -> int:
        return pr_eval(term, (j,) * arity, budget)

    return GrowthFn(f"pr:{i}", fn)


def hibbard_f(m: int, k: int, budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """max over the first m PR functions of their values at 0..k (unary view)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    best = 0
    for i in range(1, m + 1):
        term = pr_enumerate(i)
        arity = term.arity()
        for j in range(k + 1):
            try:
                value = pr_eval(term, (j,) * arity, budget)
            except BudgetExceeded as exc:
                raise BudgetExceeded(
                    exc.limit, exc.expansions, f"while evaluating g_{i}({j})"
                ) from exc
            if value > best:
                best = value
    return best


def hibbard_level(m: int, budget: EvalBudget = DEFAULT_BUDGET) -> GrowthFn:
    return GrowthFn(f"hibbard:f{m}", lambda k: hibbard_f(m, k, budget))


@dataclass(frozen=True)
class GrowthRateEstimate:
    """Windowed surrogate for the natural-number growth rate."""

    value: int | None  # least m whose level function majorizes, or None
    m_max: int
    window_end: int

    @property
    def at_least(self) -> bool:
        return self.value is None

    def __str__(self):
        return f"AtLeast({self.m_max})" if self.at_least else str(self.value)


def hibbard_growth_rate(
    f: Callable[[int], int],
    m_max: int,
    window_end: int,
    budget: EvalBudget = DEFAULT_BUDGET,
    min_suffix: int | None = None,
) -> GrowthRateEstimate:
    """Least m <= m_max whose ladder function dominates f on the window."""
    if m_max < 1 or window_end < 0:
        raise ValueError("caps must be positive")
    for m in range(1, m_max + 1):
        level = hibbard_level(m, budget)
        if majorizes(level, f, window_end, min_suffix):
            return GrowthRateEstimate(m, m_max, window_end)
    return GrowthRateEstimate(None, m_max, window_end)


# -- Big-O / Big-Theta -------------------------------------------------


_DEFAULT_C_GRID = tuple(range(1, 11)) + tuple(2**k for k in range(4, 21))
# The lower grid's floor bounds how small a Theta constant the default
# search will entertain: a floor far below 1/window would make any pair
# of positive profiles Theta-equivalent over the window.
_DEFAULT_LOWER_GRID = tuple(Fraction(1, 2**k) for k in range(5, 0, -1)) + tuple(
    Fraction(c) for c in _DEFAULT_C_GRID
)


class BigOStatus(Enum):
    WITNESS = "witness"
    REFUTED = "refuted_on_window"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class BigOVerdict:
    status: BigOStatus
    c: Fraction | None = None
    c_upper: Fraction | None = None  # Big-Theta only
    n0: int | None = None
    refutation: int | None = None
    window_end: int = 0

    def __bool__(self):
        return self.status is BigOStatus.WITNESS


def _le_scaled(t: int, c: Fraction, f: int) -> bool:
    return t * c.denominator <= c.numerator * f


def _ge_scaled(t: int, c: Fraction, f: int) -> bool:
    return t * c.denominator >= c.numerator * f


def bigO_member(
    t: Callable[[int], int],
    f: Callable[[int], int],
    window_end: int,
    c_grid: Sequence = _DEFAULT_C_GRID,
    n0_grid: Sequence[int] | None = None,
    min_suffix: int | None = None,
) -> BigOVerdict:
    """Windowed Big-O membership: least (C, n0) in the grid with
    t(n) <= C f(n) for all n0 <= n <= window_end.

    Refutation evidence is a point past the largest allowed n0 where
    even the largest C fails; sparse custom grids can instead come back
    inconclusive.
    """
    cs = sorted(Fraction(c) for c in c_grid)
    if not cs or cs[0] <= 0:
        raise ValueError("C grid must be positive and non-empty")
    confirm = _confirm_length(window_end, min_suffix)
    if n0_grid is None:
        n0_grid = range(0, max(1, window_end - confirm + 1))
    n0s = sorted(set(int(n) for n in n0_grid))
    tv = [t(n) for n in range(window_end + 1)]
    fv = [f(n) for n in range(window_end + 1)]
    for c in cs:
        last_bad = None
        for n in range(window_end + 1):
            if not _le_scaled(tv[n], c, fv[n]):
                last_bad = n
        if last_bad is None:
            return BigOVerdict(BigOStatus.WITNESS, c=c, n0=n0s[0], window_end=window_end)
        for n0 in n0s:
            if n0 > last_bad:
                return BigOVerdict(BigOStatus.WITNESS, c=c, n0=n0, window_end=window_end)
    if last_bad is not None and last_bad >= n0s[-1]:
        return BigOVerdict(
            BigOStatus.REFUTED, refutation=last_bad, window_end=window_end
        )
    return BigOVerdict(BigOStatus.INCONCLUSIVE, window_end=window_end)


def bigTheta_member(
    t: Callable[[int], int],
    f: Callable[[int], int],
    window_end: int,
    upper_grid: Sequence = _DEFAULT_LOWER_GRID,
    lower_grid: Sequence = _DEFAULT_LOWER_GRID,
    n0_grid: Sequence[int] | None = None,
    min_suffix: int | None = None,
) -> BigOVerdict:
    """Two-sided windowed membership: C f(n) <= t(n) <= C' f(n) on [n0, end]."""
    uppers = sorted(Fraction(c) for c in upper_grid)
    lowers = sorted(Fraction(c) for c in lower_grid)
    confirm = _confirm_length(window_end, min_suffix)
    if n0_grid is None:
        n0_grid = range(0, max(1, window_end - confirm + 1))
    n0s = sorted(set(int(n) for n in n0_grid))
    tv = [t(n) for n in range(window_end + 1)]
    fv = [f(n) for n in range(window_end + 1)]
    for n0 in n0s:
        span = range(n0, window_end + 1)
        c_up = next(
            (c for c in uppers if all(_le_scaled(tv[n], c, fv[n]) for n in span)), None
        )
        c_low = next(
            (c for c in reversed(lowers) if all(_ge_scaled(tv[n], c, fv[n]) for n in span)),
            None,
        )
        if c_up is not None and c_low is not None:
            return BigOVerdict(
                BigOStatus.WITNESS, c=c_low, c_upper=c_up, n0=n0, window_end=window_end
            )
    n0_top = n0s[-1]
    span = range(n0_top, window_end + 1)
    upper_fails = [n for n in span if not _le_scaled(tv[n], uppers[-1], fv[n])]
    lower_fails = [n for n in span if not _ge_scaled(tv[n], lowers[0], fv[n])]
    fails = upper_fails + lower_fails
    if fails:
        return BigOVerdict(BigOStatus.REFUTED, refutation=max(fails), window_end=window_end)
    return BigOVerdict(BigOStatus.INCONCLUSIVE, window_end=window_end)


# -- suites ------------------------------------------------------------

_SCALE_PALETTE = (
    Fraction(1),
    Fraction(3, 4),
    Fraction(1, 2),
    Fraction(5, 8),
    Fraction(7, 8),
    Fraction(3, 8),
)


@dataclass(frozen=True)
class SuiteConfig:
    """How to populate the evader suite at each ladder level.

    Generated members are padded machines fitted under scaled copies of
    the level function over the tail window [fit_start, verify_end]
    (level functions typically vanish at 0, where no program can sit
    below them -- dominance is eventual).  Scales at most 1 keep
    verified cost profiles strictly below the level; Big-O suites may
    pass scales above 1 since membership there absorbs constants.
    ``pinned`` evaders are added to every level unconditionally (no
    cost verification -- e.g. host evaders such as constant:0).
    """

    patterns: tuple[str, ...] = ("0", "1")
    count: int = 6
    seed: int = 0
    verify_end: int = 10
    fit_start: int = 3
    scales: tuple[Fraction, ...] = _SCALE_PALETTE
    pinned: tuple[EvaderSpec, ...] = ()

    def to_json_dict(self):
        return {
            "patterns": list(self.patterns),
            "count": self.count,
            "seed": self.seed,
            "verify_end": self.verify_end,
            "fit_start": self.fit_start,
            "scales": [str(s) for s in self.scales],
            "pinned": [e.name for e in self.pinned],
        }


@dataclass(frozen=True)
class SuiteMember:
    spec: EvaderSpec
    pinned: bool
    verification: MajorizationVerdict | None  # level fn vs cost profile


def build_level_suite(
    level_fn: GrowthFn, cfg: SuiteConfig, require_majorization: bool = True
) -> list[SuiteMember]:
    """Padded evaders for one ladder level.

    Targets are floor(level * scale) - 1 for scales rotated by the
    suite seed.  With ``require_majorization`` (hierarchy and original-
    measure suites) each member's exact profile must be eventually
    dominated by the level function on the verify window or it is
    dropped; a level can end up empty.
    """
    members: list[SuiteMember] = []
    seen: set[str] = set()
    window = range(cfg.fit_start, cfg.verify_end + 1)
    # the seed rotates the tail of the scale palette only: the leading
    # scale always applies first so tight levels still get members
    tail = cfg.scales[1:]
    rotated = tail[cfg.seed % len(tail) :] + tail[: cfg.seed % len(tail)] if tail else ()
    scales = (cfg.scales[0],) + rotated
    for i in range(cfg.count):
        pattern = cfg.patterns[i % len(cfg.patterns)]
        scale = scales[(i // len(cfg.patterns)) % len(scales)]

        def target_fn(n, scale=scale):
            return max(0, int(level_fn(n) * scale.numerator // scale.denominator) - 1)

        target = GrowthFn(f"{level_fn.name}*{scale}-1", target_fn)
        try:
            evader = make_padded_evader(
                pattern, target, window=window, label=f"s{cfg.seed}i{i}"
            )
        except UnreachableTarget:
            continue
        if evader.program.code in seen:
            continue
        seen.add(evader.program.code)
        verdict = majorizes(level_fn, evader.profile, cfg.verify_end)
        if require_majorization and not verdict:
            continue
        members.append(SuiteMember(spec=evader, pinned=False, verification=verdict))
    for spec in cfg.pinned:
        members.append(SuiteMember(spec=spec, pinned=True, verification=None))
    return members


# -- profiles ----------------------------------------------------------


@dataclass(frozen=True)
class LevelOutcome:
    level: str
    status: str  # "all_learned" | "failed" | "skipped"
    failed_on: str | None
    members: tuple[str, ...]
    last_losses: tuple[int | None, ...] = ()

    @property
    def passing(self) -> bool:
        return self.status != "failed"

    def to_json_dict(self):
        return {
            "level": self.level,
            "status": self.status,
            "failed_on": self.failed_on,
            "members": list(self.members),
            "last_losses": list(self.last_losses),
        }


@dataclass(frozen=True)
class AspiProfile:
    """A predictor's measured profile over a ladder of growth levels.

    ``estimate_index`` is the length of the maximal passing prefix
    (vacuously passing levels count, flagged as skipped); 0 means the
    predictor failed the very first level.  ``at_least`` is set when
    the whole ladder passed, the finite surrogate for an unbounded
    measure.
    """

    ladder: tuple[str, ...]
    outcomes: tuple[LevelOutcome, ...]
    estimate_index: int
    params: dict = field(compare=False)

    @property
    def estimate_label(self) -> str | None:
        if self.estimate_index == 0:
            return None
        return self.ladder[self.estimate_index - 1]

    @property
    def at_least(self) -> bool:
        return self.estimate_index == len(self.ladder)

    def to_json_dict(self):
        return {
            "ladder": list(self.ladder),
            "outcomes": [o.to_json_dict() for o in self.outcomes],
            "estimate_index": self.estimate_index,
            "estimate_label": self.estimate_label,
            "at_least": self.at_least,
            "params": self.params,
        }

    def csv_rows(self) -> list[tuple[str, str, str]]:
        return [
            (o.level, o.status, o.failed_on or "") for o in self.outcomes
        ]


def _run_ladder(
    predictor: PredictorSpec,
    levels: list[tuple[str, list[SuiteMember]]],
    horizon: int,
    window: int,
    params: dict,
) -> AspiProfile:
    outcomes = []
    estimate = 0
    prefix_intact = True
    for label, members in levels:
        if not members:
            outcomes.append(LevelOutcome(label, "skipped", None, (), ()))
            if prefix_intact:
                estimate += 1
            continue
        failed_on = None
        losses: list[int | None] = []
        for member in members:
            transcript = play(predictor.build(), member.spec.build(), horizon)
            verdict = learned(transcript, window)
            losses.append(verdict.last_loss_round)
            if not verdict.learned:
                failed_on = member.spec.name
                break
        names = tuple(m.spec.name for m in members)
        if failed_on is None:
            outcomes.append(LevelOutcome(label, "all_learned", None, names, tuple(losses)))
            if prefix_intact:
                estimate += 1
        else:
            outcomes.append(LevelOutcome(label, "failed", failed_on, names, tuple(losses)))
            prefix_intact = False
    return AspiProfile(
        ladder=tuple(label for label, _ in levels),
        outcomes=tuple(outcomes),
        estimate_index=estimate,
        params=params,
    )


def _base_params(predictor, horizon, window, suite: SuiteConfig, extra: dict) -> dict:
    params = {
        "predictor": predictor.name,
        "horizon": horizon,
        "window": window,
        "suite": suite.to_json_dict(),
        "machine_model": MACHINE_MODEL_ID,
    }
    params.update(extra)
    return params


def aspi_bigO_estimate(
    predictor: PredictorSpec,
    ladder: Sequence[GrowthFn],
    suite: SuiteConfig,
    horizon: int,
    window: int,
    c_grid: Sequence = _DEFAULT_C_GRID,
) -> AspiProfile:
    """Pass/fail per Big-O rung: the predictor must learn every suite
    evader whose verified cost profile is O(rung) with a grid witness."""
    levels = []
    for rung in ladder:
        members = build_level_suite(rung, suite, require_majorization=False)
        qualified = []
        for member in members:
            if member.pinned:
                qualified.append(member)
                continue
            verdict = bigO_member(
                member.spec.profile, rung, suite.verify_end, c_grid=c_grid
            )
            if verdict:
                qualified.append(member)
        levels.append((f"O({rung.name})", qualified))
    params = _base_params(
        predictor,
        horizon,
        window,
        suite,
        {"measure": "bigO", "c_grid": [str(c) for c in c_grid]},
    )
    return _run_ladder(predictor, levels, horizon, window, params)


def aspi_hierarchy_profile(
    predictor: PredictorSpec,
    kind: HierarchyKind,
    ladder: Sequence[Ordinal],
    suite: SuiteConfig,
    budget: EvalBudget = DEFAULT_BUDGET,
    horizon: int = 100,
    window: int = 30,
) -> AspiProfile:
    """Ladder of hierarchy levels g_alpha (or h_alpha / H_alpha); each
    level's suite members carry verified majorization by the level
    function.  The estimate is the top of the maximal passing prefix, a
    finite stand-in for the supremum the definition asks for."""
    ladder = list(ladder)
    for a, b in zip(ladder, ladder[1:]):
        if compare(a, b) >= 0:
            raise LadderOrderError(
                f"ladder must be strictly increasing: {format_ordinal(a)} !< {format_ordinal(b)}"
            )
    levels = []
    for alpha in ladder:
        level_fn = hierarchy_growth(kind, alpha, budget)
        members = build_level_suite(level_fn, suite)
        levels.append((format_ordinal(alpha), members))
    params = _base_params(
        predictor,
        horizon,
        window,
        suite,
        {
            "measure": f"hierarchy:{kind.value}",
            "budget": {"max_expansions": budget.max_expansions, "max_bits": budget.max_bits},
            "ladder_ordinals": [format_ordinal(a) for a in ladder],
        },
    )
    return _run_ladder(predictor, levels, horizon, window, params)


def original_hibbard_measure_empirical(
    predictor: PredictorSpec,
    m_max: int,
    suite: SuiteConfig,
    horizon: int = 100,
    window: int = 30,
    budget: EvalBudget = DEFAULT_BUDGET,
) -> AspiProfile:
    """Ladder m = 1..m_max with rung functions from the PR enumeration.

    The unbounded/zero cases of the exact definition map onto the
    windowed estimate: a full pass reports at_least (estimate m_max), a
    level-1 failure reports estimate 0.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    levels = []
    for m in range(1, m_max + 1):
        members = build_level_suite(hibbard_level(m, budget), suite)
        levels.append((f"m={m}", members))
    params = _base_params(
        predictor,
        horizon,
        window,
        suite,
        {
            "measure": "original-hibbard",
            "m_max": m_max,
            "enumeration": PR_ENUMERATION_SCHEME,
            "budget": {"max_expansions": budget.max_expansions, "max_bits": budget.max_bits},
        },
    )
    return _run_ladder(predictor, levels, horizon, window, params)
