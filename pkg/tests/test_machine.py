import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from aspi.errors import LimitExceeded
from aspi.machine import (
    CostProfile,
    OPCODE_NAMES,
    Program,
    code_to_index,
    decode,
    exact_te,
    format_program,
    index_to_code,
    is_input_oblivious,
    machine_index,
    nth_machine,
    parse_program_spec,
    run,
    te_profile,
)

HALT0 = decode("1110")
HALT1 = decode("1111")
# 0: BRANCH_EOF 3 ; 1: BRANCH_IN 4 ; 2: HALT 0 ; 3: HALT 0 ; 4: HALT 1
ECHO_FIRST = decode("001011010100" + "1110" + "1110" + "1111")
# BRANCH_EOF 0 with one instruction: loops forever on empty input
LOOP_ON_EMPTY = decode("0010")


def all_bit_strings(max_len):
    for length in range(max_len + 1):
        for bits in itertools.product("01", repeat=length):
            yield "".join(bits)


class TestDecode:
    def test_empty_program(self):
        p = decode("")
        assert p.instructions == ()
        out = run(p, (), 10)
        assert (out.halted, out.output, out.steps) == (True, 0, 1)

    def test_halt_one(self):
        out = run(HALT1, (), 10)
        assert (out.halted, out.output, out.steps) == (True, 1, 1)

    def test_totality_all_strings_up_to_16(self):
        # every bit string decodes and runs; fixpoint never fails
        count = 0
        for code in all_bit_strings(16):
            p = decode(code)
            assert isinstance(p, Program)
            for op, arg in p.instructions:
                assert 0 <= op < len(OPCODE_NAMES)
                if p.instructions:
                    assert 0 <= arg < max(2, len(p.instructions) + 1)
            count += 1
        assert count == 2**17 - 1

    def test_rejects_non_bits(self):
        with pytest.raises(ValueError):
            decode("10a")


class TestEnumeration:
    def test_base_cases(self):
        assert index_to_code(1) == ""
        assert index_to_code(2) == "0"
        assert index_to_code(3) == "1"
        assert index_to_code(4) == "00"
        assert nth_machine(1).code == ""

    def test_round_trip_10k(self):
        for k in range(1, 10_001):
            assert machine_index(nth_machine(k)) == k

    def test_code_round_trip(self):
        for code in all_bit_strings(8):
            assert index_to_code(code_to_index(code)) == code


class TestRun:
    def test_halt0_ignores_input(self):
        out = run(HALT0, (1, 0, 1), 10)
        assert (out.halted, out.output, out.steps) == (True, 0, 1)

    def test_infinite_loop_hits_limit(self):
        out = run(LOOP_ON_EMPTY, (), 50)
        assert (out.halted, out.steps) == (False, 50)

    def test_echo_first_input_hand_traced(self):
        # path on (1,): BRANCH_EOF (no), BRANCH_IN (yes -> 4), HALT 1
        out = run(ECHO_FIRST, (1,), 10)
        assert (out.halted, out.output, out.steps) == (True, 1, 3)
        out = run(ECHO_FIRST, (0,), 10)
        assert (out.halted, out.output, out.steps) == (True, 0, 3)
        out = run(ECHO_FIRST, (), 10)
        assert (out.halted, out.output, out.steps) == (True, 0, 2)

    @given(st.integers(1, 3000), st.lists(st.integers(0, 1), max_size=6), st.integers(1, 200))
    @settings(max_examples=150)
    def test_determinism_and_step_monotonicity(self, k, bits, limit):
        p = nth_machine(k)
        first = run(p, bits, limit)
        assert run(p, bits, limit) == first
        bigger = run(p, bits, limit + 37)
        if first.halted:
            assert bigger == first
        else:
            assert first.steps == limit


class TestExactTe:
    def test_halt0_constant(self):
        for n in range(9):
            assert exact_te(HALT0, n) == 1

    def test_matches_paper_quartet(self):
        # t_e(2) is the max over the four length-2 inputs
        expected = max(
            run(ECHO_FIRST, bits, 1000).steps
            for bits in itertools.product((0, 1), repeat=2)
        )
        assert exact_te(ECHO_FIRST, 2) == expected

    def test_optimized_equals_brute_force(self):
        rng = random.Random(1234)
        for _ in range(200):
            k = rng.randrange(1, 4000)
            p = nth_machine(k)
            n = rng.randrange(0, 7)
            try:
                fast_path = exact_te(p, n, per_run_limit=500)
            except LimitExceeded:
                assert any(
                    not run(p, bits, 500).halted
                    for bits in itertools.product((0, 1), repeat=n)
                )
                continue
            brute = max(
                run(p, bits, 500).steps for bits in itertools.product((0, 1), repeat=n)
            )
            assert fast_path == brute, (k, n)

    def test_limit_exceeded_names_first_input(self):
        with pytest.raises(LimitExceeded) as err:
            exact_te(LOOP_ON_EMPTY, 0, per_run_limit=40)
        assert err.value.witness == ()

    def test_cap_on_n(self):
        with pytest.raises(ValueError):
            exact_te(ECHO_FIRST, 20, max_n=16)


class TestProfile:
    def test_halt0_profile(self):
        prof = te_profile(HALT0, range(0, 9))
        assert prof.values == (1,) * 9
        assert prof.oblivious and not prof.hint_rejected

    def test_false_hint_rejected(self):
        prof = te_profile(ECHO_FIRST, range(0, 5), oblivious_hint=True)
        assert not prof.oblivious
        assert prof.hint_rejected
        # values still exact despite the bad hint
        for n in prof.window():
            assert prof(n) == exact_te(ECHO_FIRST, n)

    def test_window_bounds(self):
        prof = te_profile(HALT0, range(2, 6))
        assert prof.start == 2 and prof.end == 5
        with pytest.raises(IndexError):
            prof(6)
        with pytest.raises(IndexError):
            prof(1)

    def test_non_contiguous_window_rejected(self):
        with pytest.raises(ValueError):
            te_profile(HALT0, [0, 2, 3])


class TestSerialization:
    def test_spec_format(self):
        assert format_program(decode("")) == "len=0,hex="
        spec = format_program(ECHO_FIRST)
        assert spec.startswith("len=24,hex=")
        assert parse_program_spec(spec).code == ECHO_FIRST.code

    def test_round_trip_all_short(self):
        for code in all_bit_strings(9):
            p = decode(code)
            assert parse_program_spec(format_program(p)).code == code

    def test_index_spec(self):
        assert parse_program_spec("index=31").code == "1111"

    def test_bad_specs(self):
        with pytest.raises(ValueError):
            parse_program_spec("hex=FF")
        with pytest.raises(ValueError):
            parse_program_spec("len=99,hex=AB")
