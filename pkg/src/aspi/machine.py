"""Deterministic mini-machine: total decoding, canonical enumeration,
exact step counting.

Instruction set (3-bit opcodes, in numeric order):

====  ===========  =======================================================
code  name         effect
====  ===========  =======================================================
0     MOVE_IN      advance the input head (no-op past the end)
1     BRANCH_EOF a jump to a if the input is exhausted
2     BRANCH_IN a  jump to a if the current input bit is 1 (past-end: 0)
3     MOVE_WL      work head left (no-op at cell 0)
4     MOVE_WR      work head right (tape unbounded rightward, zero-filled)
5     TOGGLE_W     flip the current work cell
6     BRANCH_W a   jump to a if the current work cell is 1
7     HALT b       halt with the 1-bit output b
====  ===========  =======================================================

Branch targets are fixed-width operands of ceil(log2(count+1)) bits,
interpreted modulo the instruction count.  The width depends on the
count and the count on the width, so decoding iterates the width to a
fixpoint (starting from width 0; the widths involved are tiny, so this
settles in a couple of rounds).  Trailing bits that do not complete an
instruction are discarded.  Every bit string therefore decodes to a
runnable program, which keeps the enumeration T_1, T_2, ... gap-free.

One instruction costs exactly one step; falling off the end of the
program is an implicit HALT 0 costing one step, so the empty program
halts with output 0 in 1 step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._kernels import (
    OP_BRANCH_EOF,
    OP_BRANCH_IN,
    OP_BRANCH_W,
    OP_HALT,
    OP_MOVE_IN,
    OP_MOVE_WL,
    OP_MOVE_WR,
    OP_TOGGLE_W,
)
from .defaults import DEFAULT_MAX_TE_N, DEFAULT_PER_RUN_LIMIT, MAX_STEP_LIMIT
from .errors import LimitExceeded

__all__ = [
    "Program",
    "RunOutcome",
    "CostProfile",
    "decode",
    "nth_machine",
    "machine_index",
    "index_to_code",
    "code_to_index",
    "run",
    "exact_te",
    "te_profile",
    "is_input_oblivious",
    "format_program",
    "parse_program_spec",
    "MACHINE_MODEL_ID",
    "OPCODE_NAMES",
]

# Identifies the cost model; reports carry it so cross-model t_e
# comparisons are never silent.
MACHINE_MODEL_ID = "bitvm8-3bit-v1"

OPCODE_NAMES = (
    "MOVE_IN",
    "BRANCH_EOF",
    "BRANCH_IN",
    "MOVE_WL",
    "MOVE_WR",
    "TOGGLE_W",
    "BRANCH_W",
    "HALT",
)

_BRANCH_OPS = (OP_BRANCH_EOF, OP_BRANCH_IN, OP_BRANCH_W)


@dataclass(frozen=True)
class Program:
    """A decoded program together with the bit string it came from."""

    code: str  # the raw bit string, '0'/'1' characters
    instructions: tuple[tuple[int, int], ...]  # (opcode, operand)
    target_width: int  # branch operand width used by the decoder

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        ops = np.array([op for op, _ in self.instructions], dtype=np.int64)
        args = np.array([arg for _, arg in self.instructions], dtype=np.int64)
        return ops, args

    def listing(self) -> str:
        lines = []
        for pc, (op, arg) in enumerate(self.instructions):
            name = OPCODE_NAMES[op]
            if op in _BRANCH_OPS or op == OP_HALT:
                lines.append(f"{pc}: {name} {arg}")
            else:
                lines.append(f"{pc}: {name}")
        return "\n".join(lines)

    def __repr__(self):
        return f"Program(len={len(self.code)}, instrs={len(self.instructions)})"


@dataclass(frozen=True)
class RunOutcome:
    halted: bool
    output: int  # meaningful only if halted
    steps: int


def _normalize_bits(bits) -> str:
    if isinstance(bits, str):
        if bits and set(bits) - {"0", "1"}:
            raise ValueError("bit string must contain only '0' and '1'")
        return bits
    return "".join("1" if b else "0" for b in bits)


def _parse_with_width(code: str, width: int) -> list[tuple[int, int]]:
    instrs = []
    pos = 0
    n = len(code)
    while pos + 3 <= n:
        op = int(code[pos : pos + 3], 2)
        pos += 3
        if op in _BRANCH_OPS:
            if pos + width > n:
                break
            arg = int(code[pos : pos + width], 2) if width else 0
            pos += width
        elif op == OP_HALT:
            if pos + 1 > n:
                break
            arg = int(code[pos])
            pos += 1
        else:
            arg = 0
        instrs.append((op, arg))
    return instrs


def decode(bits) -> Program:
    """Total decoder: every bit string yields a runnable program."""
    code = _normalize_bits(bits)
    width = 0
    instrs = _parse_with_width(code, width)
    for _ in range(8):
        next_width = len(instrs).bit_length()
        if next_width == width:
            break
        width = next_width
        instrs = _parse_with_width(code, width)
    count = len(instrs)
    if count:
        instrs = [
            (op, arg % count if op in _BRANCH_OPS else arg) for op, arg in instrs
        ]
    return Program(code=code, instructions=tuple(instrs), target_width=width)


# -- enumeration ------------------------------------------------------


def index_to_code(i: int) -> str:
    """Bit string at 1-based position i of the length-then-lex order."""
    if i < 1:
        raise ValueError("machine indices start at 1")
    return bin(i)[3:]  # strip '0b1': the leading 1 marks the length


def code_to_index(code: str) -> int:
    return int("1" + code, 2)


def nth_machine(i: int) -> Program:
    return decode(index_to_code(i))


def machine_index(program: Program) -> int:
    return code_to_index(program.code)


# -- execution --------------------------------------------------------


def _clamp_limit(step_limit: int) -> int:
    if step_limit < 1:
        raise ValueError("step_limit must be >= 1")
    return min(step_limit, MAX_STEP_LIMIT)


def run(program: Program, input_bits: Sequence[int], step_limit: int) -> RunOutcome:
    """Run on one input; deterministic, one instruction per step."""
    limit = _clamp_limit(step_limit)
    ops, args = program.arrays()
    inp = np.asarray(
        [1 if b else 0 for b in input_bits] if not isinstance(input_bits, np.ndarray) else input_bits,
        dtype=np.uint8,
    )
    halted, output, steps = _kernels.run_program(ops, args, inp, limit)
    return RunOutcome(halted=bool(halted), output=int(output), steps=int(steps))


def is_input_oblivious(program: Program) -> bool:
    """True when no instruction reads input content.

    BRANCH_IN is the only content-dependent opcode; MOVE_IN/BRANCH_EOF
    see only the input length, which is fixed for a given n, so a
    program without BRANCH_IN behaves identically on all length-n
    inputs.
    """
    return all(op != OP_BRANCH_IN for op, _ in program.instructions)


def exact_te(
    program: Program,
    n: int,
    per_run_limit: int = DEFAULT_PER_RUN_LIMIT,
    max_n: int = DEFAULT_MAX_TE_N,
) -> int:
    """Worst-case exact step count over every length-n input.

    Input-oblivious programs need a single run; otherwise all 2^n
    inputs are enumerated (n capped by ``max_n``).  Raises
    :class:`LimitExceeded` naming the first non-halting input.
    """
    if n < 0:
        raise ValueError("n must be a natural")
    limit = _clamp_limit(per_run_limit)
    ops, args = program.arrays()
    if is_input_oblivious(program):
        halted, _, steps = _kernels.run_program(
            ops, args, np.zeros(n, dtype=np.uint8), limit
        )
        if not halted:
            raise LimitExceeded(
                f"program did not halt within {limit} steps on length {n}",
                witness=(0,) * n,
            )
        return int(steps)
    if n > max_n:
        raise ValueError(f"exact t_e over 2^{n} inputs exceeds the cap max_n={max_n}")
    max_steps, first_bad = _kernels.te_scan(ops, args, n, limit)
    if first_bad >= 0:
        witness = tuple((first_bad >> (n - 1 - j)) & 1 for j in range(n))
        raise LimitExceeded(
            f"program did not halt within {limit} steps on input {witness}",
            witness=witness,
        )
    return int(max_steps)


@dataclass(frozen=True)
class CostProfile:
    """Exact t_e values of a program over a window of input lengths."""

    program_spec: str
    start: int
    values: tuple[int, ...]
    per_run_limit: int
    oblivious: bool
    hint_rejected: bool = False
    machine_model: str = MACHINE_MODEL_ID
    name: str = ""

    @property
    def end(self) -> int:
        return self.start + len(self.values) - 1

    def __call__(self, n: int) -> int:
        if not self.start <= n <= self.end:
            raise IndexError(f"n={n} outside profile window [{self.start}, {self.end}]")
        return self.values[n - self.start]

    def window(self) -> range:
        return range(self.start, self.end + 1)

    def csv_rows(self) -> list[tuple[int, int]]:
        return [(n, self(n)) for n in self.window()]


def te_profile(
    program: Program,
    window: Iterable[int],
    per_run_limit: int = DEFAULT_PER_RUN_LIMIT,
    oblivious_hint: bool = False,
    max_n: int = DEFAULT_MAX_TE_N,
    name: str = "",
) -> CostProfile:
    """Batch exact_te over a contiguous window.

    The oblivious hint is verified against the instruction listing, not
    trusted; a false hint is rejected and the full enumeration is used.
    """
    ns = sorted(set(int(n) for n in window))
    if not ns:
        raise ValueError("empty profile window")
    if ns != list(range(ns[0], ns[-1] + 1)):
        raise ValueError("profile window must be contiguous")
    actually_oblivious = is_input_oblivious(program)
    hint_rejected = bool(oblivious_hint and not actually_oblivious)
    values = tuple(exact_te(program, n, per_run_limit, max_n=max_n) for n in ns)
    return CostProfile(
        program_spec=format_program(program),
        start=ns[0],
        values=values,
        per_run_limit=per_run_limit,
        oblivious=actually_oblivious,
        hint_rejected=hint_rejected,
        name=name,
    )


# -- serialization ----------------------------------------------------


def format_program(program: Program) -> str:
    """Hex text form with explicit bit length, e.g. ``len=13,hex=1A20``."""
    code = program.code
    if not code:
        return "len=0,hex="
    padded = code + "0" * (-len(code) % 4)
    digits = "".join(f"{int(padded[i:i+4], 2):X}" for i in range(0, len(padded), 4))
    return f"len={len(code)},hex={digits}"


def parse_program_spec(text: str) -> Program:
    """Inverse of :func:`format_program`; also accepts ``index=K``."""
    spec = text.strip()
    if spec.startswith("index="):
        return nth_machine(int(spec[len("index=") :]))
    parts = dict(
        kv.split("=", 1) for kv in (p.strip() for p in spec.split(",")) if "=" in kv
    )
    if "len" not in parts or "hex" not in parts:
        raise ValueError(f"program spec needs len= and hex= fields: {text!r}")
    length = int(parts["len"])
    digits = parts["hex"].strip()
    bits = "".join(f"{int(d, 16):04b}" for d in digits)
    if length > len(bits):
        raise ValueError("declared bit length exceeds hex payload")
    return decode(bits[:length])
