"""Mini-machine inner loops: the only hot numeric kernels in the package.

Two implementations of the same code run here: the default is compiled
with numba's ``@njit``; setting ``ASPI_BACKEND=python`` selects the
uncompiled fallback operating on the same numpy arrays.  Both paths are
bit-for-bit identical in behaviour (the test suite checks this), and
``benchmarks/bench_vm.py`` compares their throughput.

Kernel contract: instruction arrays are int64, the input tape is uint8,
branch targets are already reduced modulo the instruction count, and
``step_limit`` fits in int64.
"""

import os

import numpy as np

OP_MOVE_IN = 0
OP_BRANCH_EOF = 1
OP_BRANCH_IN = 2
OP_MOVE_WL = 3
OP_MOVE_WR = 4
OP_TOGGLE_W = 5
OP_BRANCH_W = 6
OP_HALT = 7


def _run_program_impl(ops, args, inp, step_limit):
    """Execute one program on one input; one instruction costs one step.

    Returns (halted, output, steps).  Falling off the end of the program
    is an implicit HALT 0 and costs one step (so the empty program halts
    with output 0 in exactly 1 step).
    """
    n_instr = ops.shape[0]
    n_in = inp.shape[0]
    tape = np.zeros(64, np.uint8)
    pc = 0
    ii = 0
    wh = 0
    steps = 0
    while True:
        if steps >= step_limit:
            return 0, 0, steps
        steps += 1
        if pc >= n_instr:
            return 1, 0, steps
        op = ops[pc]
        a = args[pc]
        if op == OP_MOVE_IN:
            if ii < n_in:
                ii += 1
            pc += 1
        elif op == OP_BRANCH_EOF:
            if ii >= n_in:
                pc = a
            else:
                pc += 1
        elif op == OP_BRANCH_IN:
            if ii < n_in and inp[ii] == 1:
                pc = a
            else:
                pc += 1
        elif op == OP_MOVE_WL:
            if wh > 0:
                wh -= 1
            pc += 1
        elif op == OP_MOVE_WR:
            wh += 1
            if wh >= tape.shape[0]:
                bigger = np.zeros(tape.shape[0] * 2, np.uint8)
                bigger[: tape.shape[0]] = tape
                tape = bigger
            pc += 1
        elif op == OP_TOGGLE_W:
            tape[wh] ^= 1
            pc += 1
        elif op == OP_BRANCH_W:
            if tape[wh] == 1:
                pc = a
            else:
                pc += 1
        else:  # OP_HALT
            return 1, a, steps


def _make_te_scan(run_fn):
    def te_scan(ops, args, n, per_run_limit):
        """Worst case steps over all 2**n inputs of length n.

        Returns (max_steps, first_bad): first_bad is the index of the
        first (lexicographically smallest) non-halting input, or -1.
        """
        total = 1 << n
        max_steps = 0
        inp = np.zeros(n, np.uint8)
        for idx in range(total):
            for j in range(n):
                inp[j] = (idx >> (n - 1 - j)) & 1
            halted, out, steps = run_fn(ops, args, inp, per_run_limit)
            if halted == 0:
                return max_steps, idx
            if steps > max_steps:
                max_steps = steps
        return max_steps, -1

    return te_scan


def _select_backend() -> str:
    choice = os.environ.get("ASPI_BACKEND", "").strip().lower()
    if choice not in ("", "numba", "python"):
        raise ValueError(f"ASPI_BACKEND must be 'numba' or 'python', got {choice!r}")
    if choice == "python":
        return "python"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise
        return "python"
    return "numba"


BACKEND = _select_backend()

if BACKEND == "numba":
    from numba import njit

    run_program = njit(cache=True)(_run_program_impl)
    te_scan = njit(cache=True)(_make_te_scan(run_program))
else:
    run_program = _run_program_impl
    te_scan = _make_te_scan(run_program)
