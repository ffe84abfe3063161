"""Slow-growing, fast-growing (Wainer) and Hardy hierarchies up to epsilon_0.

Recursion schemes over arbitrary-precision naturals, under mandatory
explicit budgets:

* slow-growing:  g_0(n) = 0,    g_{a+1}(n) = g_a(n) + 1
* fast-growing:  h_0(n) = n+1,  h_{a+1}(n) = n-th iterate of h_a at n
* Hardy:         H_0(n) = n,    H_{a+1}(n) = H_a(n+1)

and, for every kind, value at a limit l equals the value at l[n].
The Hardy base case and limit rule are conventions adopted here (only
the successor rule is forced); they are documented rather than assumed.

The slow-growing evaluator reduces the Cantor normal form directly:
with the standard fundamental sequences, the recursion above is
satisfied by substituting n for w throughout the normal form
(sum of coeff * n^(value of exponent), with 0^0 = 1), so the structural
evaluation is exact, not an approximation.  The test suite cross-checks
it against a literal rule-by-rule evaluator on small ordinals.

Budgets: ``max_expansions`` counts recursion-rule applications (for the
slow kind, normal-form reduction steps); ``max_bits`` caps the
bit-length of every intermediate natural.  Tripping a budget raises
:class:`~aspi.errors.BudgetExceeded`, a reportable outcome rather than
a failure.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass
from enum import Enum

from .errors import BudgetExceeded, UnknownClosedForm
from .ordinal import (
    EPSILON0,
    OMEGA,
    ZERO,
    Ordinal,
    OrdinalKind,
    classify,
    fundamental_sequence,
    parse_ordinal,
    predecessor,
)

__all__ = [
    "EvalBudget",
    "HierarchyKind",
    "eval_hierarchy",
    "closed_form_check",
    "ClosedFormReport",
    "clear_hierarchy_cache",
]


@dataclass(frozen=True)
class EvalBudget:
    """Explicit computation budget; both limits strictly positive."""

    max_expansions: int
    max_bits: int

    def __post_init__(self):
        if self.max_expansions < 1 or self.max_bits < 1:
            raise ValueError("budget limits must be strictly positive")


class HierarchyKind(Enum):
    SLOW_GROWING = "slow"
    FAST_GROWING = "fast"
    HARDY = "hardy"


class _Meter:
    """Tracks expansions and intermediate bit-lengths against a budget.

    Peak bit-lengths are kept per nested frame so cached subtree entries
    can replay their cost exactly; replaying makes outcomes independent
    of cache state (and hence of concurrent interleaving).
    """

    def __init__(self, budget: EvalBudget):
        self.budget = budget
        self.used = 0
        self._peaks = [0]

    def charge(self, k: int = 1):
        self.used += k
        if self.used > self.budget.max_expansions:
            self.used = self.budget.max_expansions
            raise BudgetExceeded("expansions", self.used)

    def note(self, value: int):
        bits = value.bit_length()
        if bits > self._peaks[-1]:
            self._peaks[-1] = bits
        if bits > self.budget.max_bits:
            raise BudgetExceeded("bits", self.used, f"intermediate of {bits} bits")

    def trip_bits(self, bits_hint: int):
        raise BudgetExceeded("bits", self.used, f"intermediate of ~{bits_hint} bits")

    def push_frame(self):
        self._peaks.append(0)

    def pop_frame(self) -> int:
        peak = self._peaks.pop()
        if peak > self._peaks[-1]:
            self._peaks[-1] = peak
        return peak

    def replay(self, ticks: int, peak_bits: int):
        if peak_bits > self._peaks[-1]:
            self._peaks[-1] = peak_bits
        if peak_bits > self.budget.max_bits:
            raise BudgetExceeded("bits", self.used, f"intermediate of {peak_bits} bits")
        self.charge(ticks)


class _LruCache:
    """Bounded, thread-safe (kind, ordinal, n, budget) -> (value, ticks, peak_bits).

    Keys include the budget: a hit therefore means this exact budget
    already succeeded on the subtree, so replaying its cost can never
    produce a different outcome than a cold evaluation would.
    """

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            entry = self._data.get(key)
            if entry is not None:
                self._data.move_to_end(key)
            return entry

    def put(self, key, entry):
        with self._lock:
            self._data[key] = entry
            self._data.move_to_end(key)
            while len(self._data) > self.capacity:
                self._data.popitem(last=False)

    def clear(self):
        with self._lock:
            self._data.clear()


_CACHE = _LruCache(capacity=4096)


def clear_hierarchy_cache():
    _CACHE.clear()


def _checked_pow(base: int, exp: int, meter: _Meter) -> int:
    """base**exp with a bit-length pre-check before materialising."""
    if base == 0:
        return 1 if exp == 0 else 0
    if base == 1:
        return 1
    low_bits = exp * (base.bit_length() - 1)
    if low_bits > meter.budget.max_bits:
        meter.trip_bits(low_bits)
    if base & (base - 1) == 0:
        value = 1 << (exp * (base.bit_length() - 1))
    else:
        value = base**exp
    meter.note(value)
    return value


def _guard_sequence_index(lam: Ordinal, x: int, meter: _Meter):
    # fs(epsilon_0, x) materialises a tower of depth x+1; any evaluation
    # of that tower costs at least x expansions, so trip early instead
    # of exhausting memory.
    if lam.is_epsilon0 and x > meter.budget.max_expansions:
        meter.used = meter.budget.max_expansions
        raise BudgetExceeded("expansions", meter.used, "fundamental-sequence depth")


def _slow(alpha: Ordinal, n: int, meter: _Meter, memo: bool) -> int:
    key = (HierarchyKind.SLOW_GROWING, alpha, n, meter.budget)
    if memo:
        hit = _CACHE.get(key)
        if hit is not None:
            value, ticks, peak = hit
            meter.replay(ticks, peak)
            return value
    meter.push_frame()
    used0 = meter.used
    meter.charge(1)
    if alpha.is_epsilon0:
        _guard_sequence_index(alpha, n, meter)
        value = _slow(fundamental_sequence(alpha, n), n, meter, memo)
    else:
        value = 0
        for exp, coeff in alpha.terms:
            meter.charge(1)
            if exp == ZERO:
                part = coeff
            else:
                e = _slow(exp, n, meter, memo)
                part = coeff * _checked_pow(n, e, meter)
            value += part
            meter.note(value)
    ticks = meter.used - used0
    peak = meter.pop_frame()
    if memo:
        _CACHE.put(key, (value, ticks, peak))
    return value


def _fast(alpha: Ordinal, n: int, meter: _Meter) -> int:
    # Work list of (ordinal, pending application count), applied LIFO to x.
    # Iteration counts are arbitrary-precision, so they live in the count
    # slot rather than being materialised as pushes.
    x = n
    stack: list[tuple[Ordinal, int]] = [(alpha, 1)]
    while stack:
        a, cnt = stack.pop()
        if cnt < 1:
            continue
        if a == ZERO:
            meter.charge(cnt)
            x += cnt
            meter.note(x)
            continue
        if cnt > 1:
            stack.append((a, cnt - 1))
        meter.charge(1)
        if classify(a) is OrdinalKind.SUCCESSOR:
            if x > 0:
                stack.append((predecessor(a), x))
            # x == 0: the 0-th iterate is the identity
        else:
            _guard_sequence_index(a, x, meter)
            stack.append((fundamental_sequence(a, x), 1))
    return x


def _hardy(alpha: Ordinal, n: int, meter: _Meter) -> int:
    a, x = alpha, n
    while a != ZERO:
        meter.charge(1)
        if classify(a) is OrdinalKind.SUCCESSOR:
            a = predecessor(a)
            x += 1
            meter.note(x)
        else:
            _guard_sequence_index(a, x, meter)
            a = fundamental_sequence(a, x)
    return x


def eval_hierarchy(
    kind: HierarchyKind,
    alpha: Ordinal,
    n: int,
    budget: EvalBudget,
    *,
    memo: bool = True,
) -> int:
    """Exact value of the chosen hierarchy at (alpha, n) within budget.

    Raises :class:`BudgetExceeded` when either limit trips; the
    exception carries which limit and the expansion count so far.
    """
    if n < 0:
        raise ValueError("n must be a natural")
    meter = _Meter(budget)
    meter.note(n)
    if kind is HierarchyKind.SLOW_GROWING:
        return _slow(alpha, n, meter, memo)
    key = (kind, alpha, n, budget)
    if memo:
        hit = _CACHE.get(key)
        if hit is not None:
            value, ticks, peak = hit
            meter.replay(ticks, peak)
            return value
    meter.push_frame()
    used0 = meter.used
    if kind is HierarchyKind.FAST_GROWING:
        value = _fast(alpha, n, meter)
    elif kind is HierarchyKind.HARDY:
        value = _hardy(alpha, n, meter)
    else:
        raise ValueError(f"unknown hierarchy kind: {kind!r}")
    ticks = meter.used - used0
    peak = meter.pop_frame()
    if memo:
        _CACHE.put(key, (value, ticks, peak))
    return value


# -- closed forms from the slow-growing table -------------------------


def _tower(n: int, meter: _Meter) -> int:
    value = n
    for _ in range(n):
        value = _checked_pow(n, value, meter)
    return value


_FORM_TABLE: dict[Ordinal, tuple] = {}


def _form_table():
    if not _FORM_TABLE:
        _FORM_TABLE.update(
            {
                parse_ordinal("w"): ("n", lambda n, meter: n),
                parse_ordinal("w*2"): ("n*2", lambda n, meter: n * 2),
                parse_ordinal("w^2"): ("n^2", lambda n, meter: _checked_pow(n, 2, meter)),
                parse_ordinal("w^3"): ("n^3", lambda n, meter: _checked_pow(n, 3, meter)),
                parse_ordinal("w^w"): ("n^n", lambda n, meter: _checked_pow(n, n, meter)),
                parse_ordinal("w^(w*3+1)+w+5"): (
                    "n^(3n+1)+n+5",
                    lambda n, meter: _checked_pow(n, 3 * n + 1, meter) + n + 5,
                ),
                parse_ordinal("w^(w^w)"): (
                    "n^(n^n)",
                    lambda n, meter: _checked_pow(n, _checked_pow(n, n, meter), meter),
                ),
            }
        )
    return _FORM_TABLE


def _closed_form(alpha: Ordinal):
    """Tabulated slow-growing closed form, or None."""
    if alpha.is_epsilon0:
        return "tower of n of height n+1", _tower
    if alpha.is_finite():
        m = alpha.as_int()
        return f"{m}", lambda n, meter: m
    hit = _form_table().get(alpha)
    if hit is not None:
        return hit
    # w + m
    if (
        len(alpha.terms) == 2
        and alpha.terms[0] == OMEGA.terms[0]
        and alpha.terms[1][0] == ZERO
    ):
        m = alpha.terms[1][1]
        return f"n+{m}", lambda n, meter: n + m
    return None


@dataclass(frozen=True)
class ClosedFormEntry:
    n: int
    expected: int | None
    actual: int | None
    status: str  # "match" | "mismatch" | "budget"


@dataclass(frozen=True)
class ClosedFormReport:
    ordinal: Ordinal
    formula: str
    entries: tuple[ClosedFormEntry, ...]

    @property
    def all_match(self) -> bool:
        return all(e.status != "mismatch" for e in self.entries)

    @property
    def mismatches(self) -> tuple[ClosedFormEntry, ...]:
        return tuple(e for e in self.entries if e.status == "mismatch")


def closed_form_check(alpha: Ordinal, window, budget: EvalBudget) -> ClosedFormReport:
    """Compare slow-growing evaluation against the tabulated closed form.

    ``window`` is an iterable of naturals.  Entries where either side
    trips the budget are reported with status ``"budget"`` and do not
    count as mismatches.
    """
    found = _closed_form(alpha)
    if found is None:
        raise UnknownClosedForm(f"no tabulated closed form for {alpha}")
    formula, fn = found
    entries = []
    for n in window:
        try:
            expected = fn(n, _Meter(budget))
        except BudgetExceeded:
            entries.append(ClosedFormEntry(n, None, None, "budget"))
            continue
        try:
            actual = eval_hierarchy(HierarchyKind.SLOW_GROWING, alpha, n, budget)
        except BudgetExceeded:
            entries.append(ClosedFormEntry(n, expected, None, "budget"))
            continue
        status = "match" if expected == actual else "mismatch"
        entries.append(ClosedFormEntry(n, expected, actual, status))
    return ClosedFormReport(alpha, formula, tuple(entries))
