import pytest
from hypothesis import given, settings, strategies as st

from aspi.errors import BudgetExceeded, UnknownClosedForm
from aspi.hierarchy import (
    ClosedFormReport,
    EvalBudget,
    HierarchyKind,
    clear_hierarchy_cache,
    closed_form_check,
    eval_hierarchy,
)
from aspi.ordinal import (
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

po = parse_ordinal
SLOW, FAST, HARDY = (
    HierarchyKind.SLOW_GROWING,
    HierarchyKind.FAST_GROWING,
    HierarchyKind.HARDY,
)
BUDGET = EvalBudget(10**7, 10**7)
# Budget-exceeded fast/Hardy evaluations cost max_expansions loop steps,
# so trip-heavy tests use a small budget; outcome semantics are identical.
FAST_BUDGET = EvalBudget(10**4, 10**6)


# -- independent oracles ----------------------------------------------


def literal_slow(alpha, n):
    """Rule-by-rule transfinite recursion, no structural shortcut."""
    if alpha == ZERO:
        return 0
    kind = classify(alpha)
    if kind is OrdinalKind.SUCCESSOR:
        return literal_slow(predecessor(alpha), n) + 1
    return literal_slow(fundamental_sequence(alpha, n), n)


class Fuel:
    def __init__(self, amount):
        self.left = amount

    def spend(self, k=1):
        self.left -= k
        if self.left < 0:
            raise BudgetExceeded("expansions", 0, "oracle fuel")


def brute_fast(alpha, x, fuel):
    """Literal iterate recursion for the fast hierarchy."""
    fuel.spend()
    if alpha == ZERO:
        return x + 1
    if classify(alpha) is OrdinalKind.SUCCESSOR:
        beta = predecessor(alpha)
        v = x
        for _ in range(x):
            v = brute_fast(beta, v, fuel)
        return v
    return brute_fast(fundamental_sequence(alpha, x), x, fuel)


class TestSlowPaperValues:
    def test_finite_levels(self):
        for m in range(5):
            for n in range(5):
                assert eval_hierarchy(SLOW, Ordinal.from_int(m), n, BUDGET) == m

    def test_omega(self):
        assert eval_hierarchy(SLOW, OMEGA, 7, BUDGET) == 7

    def test_omega_plus_m(self):
        assert eval_hierarchy(SLOW, po("w+3"), 5, BUDGET) == 8

    def test_omega_times_two(self):
        assert eval_hierarchy(SLOW, po("w*2"), 5, BUDGET) == 10

    def test_omega_to_omega(self):
        assert eval_hierarchy(SLOW, po("w^w"), 3, BUDGET) == 27

    def test_big_mixed_ordinal(self):
        assert eval_hierarchy(SLOW, po("w^(w*3+1)+w+5"), 2, BUDGET) == 135

    def test_epsilon0_small(self):
        assert eval_hierarchy(SLOW, EPSILON0, 0, BUDGET) == 0
        assert eval_hierarchy(SLOW, EPSILON0, 1, BUDGET) == 1
        assert eval_hierarchy(SLOW, EPSILON0, 2, BUDGET) == 16

    def test_matches_literal_recursion(self):
        # the structural evaluator agrees with naked rule application
        cases = ["3", "w", "w+2", "w*2", "w*3+1", "w^2", "w^2+w", "w^3", "w^w"]
        for text in cases:
            for n in range(4):
                assert eval_hierarchy(SLOW, po(text), n, BUDGET) == literal_slow(
                    po(text), n
                ), (text, n)

    def test_limit_rule_at_zero(self):
        # value at a limit is the value at lambda[0]; no special-casing
        assert eval_hierarchy(SLOW, OMEGA, 0, BUDGET) == 0
        assert eval_hierarchy(SLOW, po("w^w"), 0, BUDGET) == literal_slow(po("w^w"), 0)
        assert eval_hierarchy(SLOW, po("w^(w+1)"), 0, BUDGET) == literal_slow(
            po("w^(w+1)"), 0
        )


class TestFastAndHardy:
    def test_fast_base(self):
        assert eval_hierarchy(FAST, ZERO, 5, BUDGET) == 6

    def test_fast_one(self):
        assert eval_hierarchy(FAST, po("1"), 3, BUDGET) == 6

    def test_fast_two(self):
        assert eval_hierarchy(FAST, po("2"), 3, BUDGET) == 24

    def test_fast_matches_brute_oracle(self):
        for m in range(4):
            for n in range(5):
                alpha = Ordinal.from_int(m)
                try:
                    expected = brute_fast(alpha, n, Fuel(FAST_BUDGET.max_expansions))
                    got = eval_hierarchy(FAST, alpha, n, FAST_BUDGET)
                    assert got == expected, (m, n)
                except BudgetExceeded:
                    with pytest.raises(BudgetExceeded):
                        eval_hierarchy(FAST, alpha, n, FAST_BUDGET)

    def test_fast_omega_is_diagonal(self):
        # n = 3 already yields an astronomic value; diagonal equality is
        # checked on the cells that fit
        for n in range(3):
            assert eval_hierarchy(FAST, OMEGA, n, FAST_BUDGET) == eval_hierarchy(
                FAST, Ordinal.from_int(n), n, FAST_BUDGET
            )

    def test_hardy_base_convention(self):
        # H_0(n) = n, H_m(n) = n + m, so H_w(n) = 2n
        for m in range(6):
            for n in range(6):
                assert eval_hierarchy(HARDY, Ordinal.from_int(m), n, BUDGET) == n + m
        assert eval_hierarchy(HARDY, OMEGA, 4, BUDGET) == 8

    def test_eventual_dominance_on_fast_ladder(self):
        # adjacent ladder pairs with the n the dominance provably starts
        # from: h_w(n) = h_n(n) only overtakes h_m(n) once n > m
        pairs = [
            ("1", "2", 2),
            ("2", "3", 2),
            ("3", "w", 4),
            ("w", "w+1", 2),
            ("w+1", "w*2", 2),
            ("w*2", "w^2", 2),
            ("w^2", "w^w", 2),
        ]
        compared = 0
        for a_text, b_text, start in pairs:
            for n in range(start, 9):
                try:
                    va = eval_hierarchy(FAST, po(a_text), n, FAST_BUDGET)
                    vb = eval_hierarchy(FAST, po(b_text), n, FAST_BUDGET)
                except BudgetExceeded:
                    continue
                assert vb > va, (a_text, b_text, n)
                compared += 1
        assert compared >= 8  # the small cells really were exercised


class TestBudgets:
    def test_budget_validation(self):
        with pytest.raises(ValueError):
            EvalBudget(0, 10)
        with pytest.raises(ValueError):
            EvalBudget(10, 0)

    def test_expansion_trip_reports_count(self):
        with pytest.raises(BudgetExceeded) as err:
            eval_hierarchy(FAST, po("3"), 4, EvalBudget(1000, 10**6))
        assert err.value.limit == "expansions"
        assert err.value.expansions == 1000

    def test_bits_trip(self):
        with pytest.raises(BudgetExceeded) as err:
            eval_hierarchy(SLOW, po("w^w"), 8, EvalBudget(10**6, 20))
        assert err.value.limit == "bits"

    def test_outcomes_independent_of_cache_state(self):
        clear_hierarchy_cache()
        small = EvalBudget(100, 10**6)

        def attempt():
            try:
                return ("value", eval_hierarchy(SLOW, po("w^(w^w)"), 8, small))
            except BudgetExceeded as exc:
                return ("budget", exc.limit, exc.expansions)

        cold = attempt()
        eval_hierarchy(SLOW, po("w^(w^w)"), 8, EvalBudget(10**7, 10**9))  # warm cache
        assert attempt() == cold

    def test_memo_and_unmemoized_agree(self):
        clear_hierarchy_cache()
        for text in ("w^2", "w*2+3", "w^w"):
            for n in range(5):
                for kind in (SLOW, FAST, HARDY):
                    try:
                        with_memo = eval_hierarchy(kind, po(text), n, BUDGET)
                    except BudgetExceeded:
                        with pytest.raises(BudgetExceeded):
                            eval_hierarchy(kind, po(text), n, BUDGET, memo=False)
                        continue
                    assert with_memo == eval_hierarchy(kind, po(text), n, BUDGET, memo=False)


class TestEpsilon0Tower:
    def test_small_towers_exact(self):
        big = EvalBudget(10**7, 10**9)
        assert eval_hierarchy(SLOW, EPSILON0, 0, big) == 0
        assert eval_hierarchy(SLOW, EPSILON0, 1, big) == 1
        assert eval_hierarchy(SLOW, EPSILON0, 2, big) == 2 ** (2**2)

    def test_three_tower_structure_via_budget(self):
        # 3^(3^27) has ~10^13 bits and can never be materialised.  The
        # evaluator must trip the bits budget, and its pre-computation
        # bit estimate must equal the independently computed tower
        # exponent times floor(log2 3) -- a logarithm-free structural
        # equality that never builds the value.
        import re

        exponent = 3 ** (3**3)  # the tower one level down
        with pytest.raises(BudgetExceeded) as err:
            eval_hierarchy(SLOW, EPSILON0, 3, EvalBudget(10**7, 10**9))
        assert err.value.limit == "bits"
        claimed = int(re.search(r"~(\d+) bits", err.value.detail).group(1))
        assert claimed == exponent * (3 .bit_length() - 1)


class TestClosedFormCheck:
    def test_square(self):
        report = closed_form_check(po("w^2"), range(0, 9), BUDGET)
        assert report.all_match
        assert [e.actual for e in report.entries] == [n * n for n in range(9)]

    def test_tower_of_towers(self):
        report = closed_form_check(po("w^(w^w)"), range(0, 4), BUDGET)
        assert report.all_match
        assert report.entries[3].actual == 3 ** (3**3)

    def test_collapse_at_zero(self):
        report = closed_form_check(po("w^3"), range(0, 1), BUDGET)
        assert report.all_match
        assert report.entries[0].actual == 0

    def test_unknown(self):
        with pytest.raises(UnknownClosedForm):
            closed_form_check(po("w^2+w"), range(3), BUDGET)

    def test_budget_entries_not_mismatches(self):
        report = closed_form_check(po("w^(w^w)"), range(0, 9), EvalBudget(10**6, 10**4))
        assert isinstance(report, ClosedFormReport)
        assert report.all_match  # large entries report budget, not mismatch
        assert any(e.status == "budget" for e in report.entries)
