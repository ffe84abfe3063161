import pytest
from hypothesis import given, settings, strategies as st

from aspi.errors import NotALimit, OrdinalSyntaxError, OverflowBeyondEpsilon0
from aspi.ordinal import (
    EPSILON0,
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalKind,
    add,
    classify,
    compare,
    format_ordinal,
    fundamental_sequence,
    mul,
    omega_pow,
    parse_ordinal,
)

po = parse_ordinal


# Independent comparison oracle: map a normal form to nested tuples whose
# native lexicographic order coincides with ordinal order.
def ord_key(a):
    if a.is_epsilon0:
        return (1,)
    return (0, tuple((ord_key(exp), coeff) for exp, coeff in a.terms))


def oracle_compare(a, b):
    ka, kb = ord_key(a), ord_key(b)
    return (ka > kb) - (ka < kb)


def finite(n):
    return Ordinal.from_int(n)


@st.composite
def cnf(draw, depth=3):
    if depth == 0:
        return finite(draw(st.integers(0, 9)))
    width = draw(st.integers(0, 3))
    if width == 0:
        return finite(draw(st.integers(0, 9)))
    exps = draw(
        st.lists(cnf(depth=depth - 1), min_size=width, max_size=width, unique=True)
    )
    exps.sort(key=ord_key, reverse=True)
    coeffs = draw(st.lists(st.integers(1, 9), min_size=width, max_size=width))
    return Ordinal(tuple(zip(exps, coeffs)))


class TestCompare:
    def test_reflexive(self):
        assert compare(OMEGA, OMEGA) == 0

    def test_successor_exceeds_base(self):
        assert compare(add(OMEGA, ONE), OMEGA) > 0

    def test_paper_cnf_example_coefficient_order(self):
        a = po("w^(w*2)*2+w*3+2")
        b = po("w^(w*2)*2+w*3+1")
        assert compare(a, b) > 0

    def test_epsilon0_is_maximum(self):
        for text in ("0", "5", "w", "w^w", "w^(w^w)*3+w"):
            assert compare(EPSILON0, po(text)) > 0
        assert compare(EPSILON0, EPSILON0) == 0

    @given(cnf(), cnf())
    @settings(max_examples=300)
    def test_matches_oracle(self, a, b):
        assert compare(a, b) == oracle_compare(a, b)

    @given(cnf(), cnf(), cnf())
    @settings(max_examples=200)
    def test_transitive(self, a, b, c):
        if compare(a, b) <= 0 and compare(b, c) <= 0:
            assert compare(a, c) <= 0

    @given(cnf(), cnf())
    def test_antisymmetric(self, a, b):
        if compare(a, b) == 0:
            assert a == b


class TestArithmetic:
    def test_one_plus_omega_absorbed(self):
        assert add(ONE, OMEGA) == OMEGA

    def test_omega_plus_one_is_successor(self):
        assert format_ordinal(add(OMEGA, ONE)) == "w+1"
        assert add(ONE, OMEGA) != add(OMEGA, ONE)

    def test_absorption_with_merge(self):
        assert add(po("w^w+w^5"), po("w^5*2")) == po("w^w+w^5*3")

    @given(cnf(), cnf(), cnf())
    @settings(max_examples=200)
    def test_add_associative(self, a, b, c):
        assert add(add(a, b), c) == add(a, add(b, c))

    def test_mul_examples(self):
        assert mul(OMEGA, finite(2)) == po("w*2")
        assert mul(finite(2), OMEGA) == OMEGA
        assert mul(po("w^w"), OMEGA) == po("w^(w+1)")

    def test_mul_finite_by_limit_matches_iterated_add(self):
        # 2 * w = sup of 2*n, absorbed; check small finite*finite cases
        # against repeated addition as the independent route.
        for a in (finite(2), finite(3), po("w+1")):
            for m in range(4):
                total = ZERO
                for _ in range(m):
                    total = add(total, a)
                assert mul(a, finite(m)) == total

    def test_omega_pow(self):
        assert omega_pow(ZERO) == ONE
        assert omega_pow(ONE) == OMEGA
        assert omega_pow(OMEGA) == po("w^w")

    def test_overflow(self):
        with pytest.raises(OverflowBeyondEpsilon0):
            add(EPSILON0, ONE)
        with pytest.raises(OverflowBeyondEpsilon0):
            mul(EPSILON0, finite(2))
        with pytest.raises(OverflowBeyondEpsilon0):
            omega_pow(EPSILON0)
        assert add(EPSILON0, ZERO) == EPSILON0
        assert add(po("w^3"), EPSILON0) == EPSILON0


class TestClassify:
    def test_examples(self):
        assert classify(ZERO) is OrdinalKind.ZERO
        assert classify(po("w^w+3")) is OrdinalKind.SUCCESSOR
        assert classify(po("w^5")) is OrdinalKind.LIMIT
        assert classify(EPSILON0) is OrdinalKind.LIMIT

    @given(cnf())
    def test_exactly_one_kind(self, a):
        kind = classify(a)
        assert (kind is OrdinalKind.ZERO) == (a == ZERO)


class TestFundamentalSequence:
    def test_omega(self):
        for i in range(6):
            assert fundamental_sequence(OMEGA, i) == finite(i)

    def test_omega_to_fifth(self):
        got = [format_ordinal(fundamental_sequence(po("w^5"), i)) for i in range(4)]
        assert got == ["0", "w^4", "w^4*2", "w^4*3"]

    def test_omega_to_omega(self):
        got = [fundamental_sequence(po("w^w"), i) for i in range(4)]
        assert got == [po("1"), po("w"), po("w^2"), po("w^3")]

    def test_omega_to_omega_plus_omega(self):
        got = [format_ordinal(fundamental_sequence(po("w^w+w"), i)) for i in range(3)]
        assert got == ["w^(w)", "w^(w)+1", "w^(w)+2"]

    def test_epsilon0(self):
        assert fundamental_sequence(EPSILON0, 0) == OMEGA
        assert fundamental_sequence(EPSILON0, 1) == po("w^w")
        assert fundamental_sequence(EPSILON0, 2) == po("w^(w^w)")

    def test_not_a_limit(self):
        with pytest.raises(NotALimit):
            fundamental_sequence(ZERO, 0)
        with pytest.raises(NotALimit):
            fundamental_sequence(po("w+1"), 2)

    @given(cnf(), st.integers(0, 6))
    @settings(max_examples=300)
    def test_below_and_monotone(self, a, i):
        if classify(a) is not OrdinalKind.LIMIT:
            return
        cur = fundamental_sequence(a, i)
        nxt = fundamental_sequence(a, i + 1)
        assert compare(cur, a) < 0
        if i == 0:
            assert compare(cur, nxt) <= 0
        else:
            assert compare(cur, nxt) < 0

    def test_epsilon0_entries_below(self):
        for i in range(4):
            assert compare(fundamental_sequence(EPSILON0, i), EPSILON0) < 0


class TestText:
    def test_paper_example_round_trip(self):
        text = "w^(w*2)*2+w*3+2"
        assert format_ordinal(po(text)) == text

    def test_zero(self):
        assert po("0") == ZERO
        assert format_ordinal(ZERO) == "0"

    def test_epsilon0_round_trip(self):
        assert format_ordinal(po("e0")) == "e0"

    def test_normalizing_parse(self):
        assert po("1+w") == OMEGA
        assert po("2*w") == OMEGA
        assert po(" w ^ ( w ) ") == po("w^w")

    @given(cnf())
    @settings(max_examples=300)
    def test_round_trip(self, a):
        assert po(format_ordinal(a)) == a

    def test_syntax_error_position(self):
        with pytest.raises(OrdinalSyntaxError) as err:
            po("w^(w*2")
        assert err.value.position == 6
        with pytest.raises(OrdinalSyntaxError):
            po("")
        with pytest.raises(OrdinalSyntaxError):
            po("w++1")
        with pytest.raises(OrdinalSyntaxError):
            po("w 3")


class TestUnitExpansionIdentity:
    def test_seven_unit_terms(self):
        compressed = po("w^(w*2)*2+w*3+2")
        expanded = ZERO
        for part in ("w^(w*2)", "w^(w*2)", "w", "w", "w", "1", "1"):
            expanded = add(expanded, po(part))
        assert compare(compressed, expanded) == 0
