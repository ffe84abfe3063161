"""The predictor and evader catalog.

Predictors: constant, copy-last-evasion, and the universal lookalike
predictor (host-implemented: it simulates the machine enumeration
rather than being compiled to it, which the game's definitions permit
for predictors).  Evaders: constant, raw mini-machine programs,
anti-predictors that invert a chosen predictor's next output, and
padded evaders -- synthesized machines whose worst-case runtime tracks
a requested growth target from below, verified by exact measurement.

Catalog names (config/CLI):
    constant:0      constant:1      copylast
    lookalike:f=<growth>[,pool=<cap>][,cap=<steps>]
    vm:index=<k> | vm:len=<bits>,hex=<digits>[,limit=<steps>]
    anti:<predictor name>
    padded:pattern=<0|1|01|10>,target=<growth>[,window=<lo>..<hi>]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .defaults import (
    DEFAULT_LOOKALIKE_RUN_CAP,
    DEFAULT_PER_RUN_LIMIT,
    DEFAULT_POOL_CAP,
    DEFAULT_VERIFY_WINDOW,
    MAX_STEP_LIMIT,
)
from .errors import LimitExceeded, PlayTimeout, TargetTimeout, UnreachableTarget
from .growth import GrowthFn, growth_from_name, scaled
from .machine import (
    CostProfile,
    Program,
    decode,
    format_program,
    nth_machine,
    parse_program_spec,
    te_profile,
)
from ._kernels import (
    OP_BRANCH_EOF,
    OP_BRANCH_W,
    OP_HALT,
    OP_MOVE_IN,
    OP_MOVE_WL,
    OP_MOVE_WR,
    OP_TOGGLE_W,
)

__all__ = [
    "PredictorSpec",
    "EvaderSpec",
    "ConstantPredictor",
    "CopyLastPredictor",
    "LookalikePredictor",
    "ConstantEvader",
    "VmEvader",
    "AntiPredictorEvader",
    "PaddedEvader",
    "scaled_lookalike",
    "lookalike_predict",
    "anti_predictor_next",
    "make_padded_evader",
    "parse_predictor",
    "parse_evader",
    "register_predictor",
    "register_evader",
    "catalog_predictors",
]


# -- predictor specs --------------------------------------------------


class PredictorSpec:
    """Immutable description; ``build()`` yields a fresh per-play handle."""

    @property
    def name(self) -> str:
        raise NotImplementedError

    def build(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


@dataclass(frozen=True, repr=False)
class ConstantPredictor(PredictorSpec):
    bit: int

    @property
    def name(self):
        return f"constant:{self.bit}"

    def build(self):
        return _ConstantPredictorHandle(self.bit)


@dataclass(frozen=True, repr=False)
class CopyLastPredictor(PredictorSpec):
    """Predicts the evader repeats its most recent evasion (0 initially)."""

    @property
    def name(self):
        return "copylast"

    def build(self):
        return _CopyLastHandle()


@dataclass(frozen=True, repr=False)
class LookalikePredictor(PredictorSpec):
    """The machine-hunting predictor of the universal construction.

    On evasion history of length n it scans machines T_1..T_min(n,pool_cap)
    for the first one consistent with every revealed evasion under step
    bounds f(0)..f(n) and plays that machine's next output, defaulting
    to 0.  Per-run simulation is clamped at ``run_cap`` steps; both caps
    are part of the spec name so results always report them.
    """

    growth: GrowthFn
    pool_cap: int = DEFAULT_POOL_CAP
    run_cap: int = DEFAULT_LOOKALIKE_RUN_CAP

    @property
    def name(self):
        return f"lookalike:f={self.growth.name},pool={self.pool_cap}"

    def build(self):
        return _LookalikeHandle(self)


class _ConstantPredictorHandle:
    def __init__(self, bit):
        self._bit = bit

    def predict(self, evasions):
        return self._bit


class _CopyLastHandle:
    def predict(self, evasions):
        return evasions[-1] if evasions else 0


class _PoolMachine:
    __slots__ = ("ops", "args", "alive", "runs", "checked")

    def __init__(self, program: Program):
        self.ops, self.args = program.arrays()
        self.alive = True
        self.runs: list[tuple[bool, int]] = []  # per prefix length j
        self.checked = 0  # history positions validated so far


class _LookalikeHandle:
    def __init__(self, spec: LookalikePredictor):
        self._spec = spec
        self._xs: list[int] = []
        self._ys: list[int] = []
        self._fvals: list[int] = []
        self._y_arrays: list[np.ndarray] = []
        self._pool: list[_PoolMachine] = []

    def _reset(self):
        self._xs = []
        self._ys = []
        self._y_arrays = []
        for pm in self._pool:
            pm.alive = True
            pm.runs = []
            pm.checked = 0

    def predict(self, evasions):
        xs = [1 if b else 0 for b in evasions]
        n = len(xs)
        if n < len(self._xs) or xs[: len(self._xs)] != self._xs:
            # not an extension of the history we cached: recompute from
            # scratch so the handle stays a pure function of its input
            self._reset()
        self._xs = xs
        while len(self._ys) <= n:
            self._ys.append(self._output_for_prefix(len(self._ys)))
        return self._ys[n]

    def _f(self, j: int) -> int:
        while len(self._fvals) <= j:
            self._fvals.append(self._spec.growth(len(self._fvals)))
        return self._fvals[j]

    def _y_array(self, j: int) -> np.ndarray:
        while len(self._y_arrays) <= j:
            k = len(self._y_arrays)
            self._y_arrays.append(np.array(self._ys[:k], dtype=np.uint8))
        return self._y_arrays[j]

    def _output_for_prefix(self, m: int) -> int:
        pool_size = min(m, self._spec.pool_cap)
        while len(self._pool) < pool_size:
            self._pool.append(_PoolMachine(nth_machine(len(self._pool) + 1)))
        for pm in self._pool[:pool_size]:
            if not pm.alive:
                continue
            while len(pm.runs) <= m:
                j = len(pm.runs)
                bound = min(self._f(j), self._spec.run_cap, MAX_STEP_LIMIT)
                if bound < 1:
                    pm.runs.append((False, 0))
                else:
                    halted, out, _ = _kernels.run_program(
                        pm.ops, pm.args, self._y_array(j), bound
                    )
                    pm.runs.append((bool(halted), int(out)))
            while pm.checked < m:
                j = pm.checked
                halted, out = pm.runs[j]
                pm.checked += 1
                if halted and out != self._xs[j]:
                    pm.alive = False
                    break
            if not pm.alive:
                continue
            halted_m, out_m = pm.runs[m]
            if halted_m:
                return out_m
        return 0


def lookalike_predict(
    growth: GrowthFn,
    evasions,
    pool_cap: int = DEFAULT_POOL_CAP,
    run_cap: int = DEFAULT_LOOKALIKE_RUN_CAP,
) -> int:
    """One-shot lookalike output on an evasion history.

    Reconstructs the predictor's own past outputs internally; a pure
    function of its arguments.  Plays should prefer a persistent handle
    (``LookalikePredictor(...).build()``), which memoizes the
    reconstruction so each round costs one pool scan.
    """
    spec = LookalikePredictor(growth=growth, pool_cap=pool_cap, run_cap=run_cap)
    return spec.build().predict(tuple(evasions))


def scaled_lookalike(
    f: GrowthFn,
    pool_cap: int = DEFAULT_POOL_CAP,
    run_cap: int = DEFAULT_LOOKALIKE_RUN_CAP,
) -> LookalikePredictor:
    """Lookalike predictor at growth n*f(n)+1: covers every evader whose
    cost profile is within a constant factor of f."""
    return LookalikePredictor(growth=scaled(f), pool_cap=pool_cap, run_cap=run_cap)


# -- evader specs -----------------------------------------------------


class EvaderSpec:
    @property
    def name(self) -> str:
        raise NotImplementedError

    def build(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


@dataclass(frozen=True, repr=False)
class ConstantEvader(EvaderSpec):
    bit: int

    @property
    def name(self):
        return f"constant:{self.bit}"

    def build(self):
        return _ConstantEvaderHandle(self.bit)


@dataclass(frozen=True, repr=False)
class VmEvader(EvaderSpec):
    program: Program
    step_limit: int = DEFAULT_PER_RUN_LIMIT

    @property
    def name(self):
        return f"vm:{format_program(self.program)}"

    def build(self):
        return _VmHandle(self.program, self.step_limit)


@dataclass(frozen=True, repr=False)
class AntiPredictorEvader(EvaderSpec):
    """Plays 1 minus what the target predictor would play this round.

    The evader's own emission history does not depend on its input, so
    it reconstructs that history deterministically and asks a private
    copy of the target what it would predict from it.  By the game's
    interleaving this forces a mismatch every round.
    """

    target: PredictorSpec

    @property
    def name(self):
        return f"anti:{self.target.name}"

    def build(self):
        return _AntiHandle(self.target)


@dataclass(frozen=True, repr=False)
class PaddedEvader(EvaderSpec):
    """A synthesized machine evader with a verified cost profile."""

    program: Program
    profile: CostProfile = field(compare=False)
    c_low: float
    pattern: str
    shape: str
    label: str = ""
    step_limit: int = DEFAULT_PER_RUN_LIMIT

    @property
    def name(self):
        base = f"padded:pattern={self.pattern},shape={self.shape}"
        return f"{base},{self.label}" if self.label else base

    def build(self):
        return _VmHandle(self.program, self.step_limit)


class _ConstantEvaderHandle:
    def __init__(self, bit):
        self._bit = bit

    def evade(self, predictions):
        return self._bit


class _VmHandle:
    def __init__(self, program: Program, step_limit: int):
        self._ops, self._args = program.arrays()
        self._limit = min(step_limit, MAX_STEP_LIMIT)

    def evade(self, predictions):
        inp = np.asarray([1 if b else 0 for b in predictions], dtype=np.uint8)
        halted, out, _ = _kernels.run_program(self._ops, self._args, inp, self._limit)
        if not halted:
            raise PlayTimeout(
                f"vm evader exceeded {self._limit} steps", round_no=len(predictions) + 1
            )
        return int(out)


class _AntiHandle:
    def __init__(self, target: PredictorSpec):
        self._target = target.build()
        self._xs: list[int] = []

    def evade(self, predictions):
        n = len(predictions)
        while len(self._xs) <= n:
            try:
                y = self._target.predict(tuple(self._xs))
            except PlayTimeout as exc:
                raise TargetTimeout(f"anti-predictor target timed out: {exc}") from exc
            self._xs.append(1 - y)
        return self._xs[n]


def anti_predictor_next(target: PredictorSpec, own_history) -> int:
    """Next evasion of the anti-predictor of ``target``: 1 - target(history)."""
    try:
        y = target.build().predict(tuple(own_history))
    except PlayTimeout as exc:
        raise TargetTimeout(f"anti-predictor target timed out: {exc}") from exc
    return 1 - y


# -- padded evader synthesis ------------------------------------------

_PATTERNS = {
    "0": (0, 0),
    "1": (1, 1),
    "01": (0, 1),
    "10": (1, 0),
}


def _assemble(instrs: list[tuple[int, int]]) -> Program | None:
    """Encode instructions to bits and confirm the total decoder agrees.

    The decoder's operand width is a fixpoint of the instruction count,
    so a program is only usable if re-decoding its own encoding yields
    the same listing (optionally plus unreachable trailing padding).
    Returns None when no encoding variant round-trips.
    """
    base = list(instrs)
    for extra in range(0, 9):
        candidate = base + [(OP_MOVE_WL, 0)] * extra
        m = len(candidate)
        width = m.bit_length()
        bits = []
        for op, arg in candidate:
            bits.append(f"{op:03b}")
            if op in (OP_BRANCH_EOF, OP_BRANCH_W):
                bits.append(f"{arg:0{width}b}" if width else "")
            elif op == OP_HALT:
                bits.append(str(arg))
        program = decode("".join(bits))
        if list(program.instructions) == candidate:
            return program
    return None


def _shape_flat(q: int, out0: int, out1: int) -> list[tuple[int, int]] | None:
    if out0 != out1:
        return None  # constant output only
    return [(OP_MOVE_WL, 0)] * q + [(OP_HALT, out0)]


def _eof_ladder(start: int, stride: int, halt_even: int, halt_odd: int):
    # One EOF check per consumed cell; each exit knows the parity of the
    # total consumed, so period-2 patterns fall out of the exit choice.
    out = []
    for j in range(stride):
        out.append((OP_BRANCH_EOF, halt_even if j % 2 == 0 else halt_odd))
        out.append((OP_MOVE_IN, 0))
    return out


def _shape_scan(stride: int):
    def build(q: int, out0: int, out1: int) -> list[tuple[int, int]]:
        # TOGGLE sets a flag at work cell 0 (the head never leaves it),
        # so BRANCH_W serves as an unconditional backward jump; MOVE_WL
        # at cell 0 is a pure one-step delay.
        he = 2 * stride + q + 2
        ho = he + 1
        return (
            [(OP_TOGGLE_W, 0)]
            + _eof_ladder(1, stride, he, ho)
            + [(OP_MOVE_WL, 0)] * q
            + [(OP_BRANCH_W, 1), (OP_HALT, out0), (OP_HALT, out1)]
        )

    return build


def _shape_tri(stride: int):
    def build(p: int, out0: int, out1: int) -> list[tuple[int, int]]:
        # Unary ruler on work cells 1.. grows by one per outer iteration
        # and is walked there and back each time, so cost is quadratic
        # in the iteration count (= input length / stride).  Cell 0
        # stays 0 and stops the left walk; cell 1 stays 1 and makes
        # BRANCH_W an unconditional jump from the parked position.
        he = 2 * stride + 9 + 2 * p
        ho = he + 1
        walk = 2 * stride + 2
        return (
            [(OP_MOVE_WR, 0), (OP_TOGGLE_W, 0)]  # seed ruler, park at cell 1
            + _eof_ladder(2, stride, he, ho)
            + [
                (OP_MOVE_WR, 0),
                (OP_BRANCH_W, walk),  # right walk to first 0
                (OP_TOGGLE_W, 0),  # extend ruler
                (OP_MOVE_WL, 0),
                (OP_BRANCH_W, walk + 3),  # left walk back to cell 0
                (OP_MOVE_WR, 0),  # park at cell 1
            ]
            + [(OP_MOVE_WL, 0), (OP_MOVE_WR, 0)] * p
            + [(OP_BRANCH_W, 2), (OP_HALT, out0), (OP_HALT, out1)]
        )

    return build


_SHAPE_CLASSES: dict[str, list[tuple[str, Callable]]] = {
    "flat": [("flat", _shape_flat)],
    "scan": [("scan2", _shape_scan(2)), ("scan4", _shape_scan(4)), ("scan8", _shape_scan(8))],
    "tri": [("tri2", _shape_tri(2)), ("tri4", _shape_tri(4)), ("tri8", _shape_tri(8))],
}


def _classify_target(targets: dict[int, int], window: list[int]) -> str:
    """Rough growth class of the target on the window: const/lin/quad."""
    end = window[-1]
    mid = window[len(window) // 2]
    if end == mid or targets[mid] == 0:
        return "quad"
    ratio = targets[end] / targets[mid]
    if ratio >= 3.0:
        return "quad"
    if ratio >= 1.5:
        return "lin"
    return "const"


def _allowed_classes(target_class: str, pattern_period: int) -> list[str]:
    # Never pick a shape class that outgrows the target beyond the
    # verification window; period-2 patterns must scan the input, so
    # their floor is the scan class.
    if target_class == "quad":
        classes = ["tri", "scan", "flat"]
    elif target_class == "lin":
        classes = ["scan", "flat"]
    else:
        classes = ["flat", "scan"] if pattern_period > 1 else ["flat"]
    if pattern_period > 1:
        classes = [c for c in classes if c != "flat"]
    return classes


def _fit_shape(shape_fn, out0, out1, targets, window, measure_window, per_run_limit):
    """Largest knob whose measured profile stays under target pointwise.

    Profiles are measured from 0 so downstream (eventual-dominance)
    checks can scan the whole prefix; the fit itself is judged on the
    requested window only.
    """

    def profile_for(knob):
        instrs = shape_fn(knob, out0, out1)
        if instrs is None:
            return None, None
        program = _assemble(instrs)
        if program is None:
            return None, None
        try:
            prof = te_profile(program, measure_window, per_run_limit)
        except LimitExceeded:
            return None, None
        return program, prof

    def fits(prof):
        return prof is not None and all(prof(n) <= targets[n] for n in window)

    program, prof = profile_for(0)
    if program is None or not fits(prof):
        return None
    # cost is pointwise monotone in the knob: binary search the largest fit
    lo, hi = 0, 1
    cap = max(targets.values()) + 8
    while hi <= cap:
        program_hi, prof_hi = profile_for(hi)
        if program_hi is None or not fits(prof_hi):
            break
        lo, program, prof = hi, program_hi, prof_hi
        hi *= 2
    low, high = lo, min(hi, cap + 1)
    while low + 1 < high:
        mid = (low + high) // 2
        program_mid, prof_mid = profile_for(mid)
        if program_mid is not None and fits(prof_mid):
            low, program, prof = mid, program_mid, prof_mid
        else:
            high = mid
    return low, program, prof


def make_padded_evader(
    pattern: str,
    target: GrowthFn,
    window=DEFAULT_VERIFY_WINDOW,
    per_run_limit: int = DEFAULT_PER_RUN_LIMIT,
    label: str = "",
) -> PaddedEvader:
    """Synthesize a machine evader whose exact cost tracks ``target``.

    The output follows ``pattern`` (indexed by input length, period 1
    or 2) and ignores input content.  The returned evader's measured
    profile t satisfies c_low * target(n) <= t(n) <= target(n) on the
    window, with c_low emitted from the measurement itself; the profile
    comes from machine-level exact counting, never from the cost model
    on paper.  The window may start above 0 (targets that vanish near 0
    cannot sit above any program's cost there); the measured profile
    always covers input lengths from 0 so eventual-dominance scans have
    the full prefix.  Raises UnreachableTarget when even the cheapest
    program shape exceeds the target somewhere on the window.
    """
    if pattern not in _PATTERNS:
        raise ValueError(f"unsupported pattern {pattern!r}; use one of {sorted(_PATTERNS)}")
    out0, out1 = _PATTERNS[pattern]
    window = list(window)
    measure_window = range(0, window[-1] + 1)
    targets = {n: target(n) for n in window}
    period = 1 if out0 == out1 else 2
    best = None
    for cls in _allowed_classes(_classify_target(targets, window), period):
        for shape_name, shape_fn in _SHAPE_CLASSES[cls]:
            fit = _fit_shape(shape_fn, out0, out1, targets, window, measure_window, per_run_limit)
            if fit is None:
                continue
            knob, program, prof = fit
            end = window[-1]
            ratio = prof(end) / targets[end] if targets[end] else 0.0
            if best is None or ratio > best[0]:
                best = (ratio, shape_name, knob, program, prof)
        if best is not None:
            break  # stay in the heaviest shape class that fits
    if best is None:
        raise UnreachableTarget(
            f"target {target.name} is below the cost floor for pattern {pattern!r} "
            f"on window [{window[0]}, {window[-1]}]"
        )
    _, shape_name, knob, program, prof = best
    c_low = min(prof(n) / targets[n] for n in window if targets[n] > 0)
    return PaddedEvader(
        program=program,
        profile=prof,
        c_low=c_low,
        pattern=pattern,
        shape=f"{shape_name}[{knob}]",
        label=label or f"target={target.name}",
        step_limit=per_run_limit,
    )


# -- catalog name parsing ---------------------------------------------

_PREDICTOR_REGISTRY: dict[str, Callable[[str], PredictorSpec]] = {}
_EVADER_REGISTRY: dict[str, Callable[[str], EvaderSpec]] = {}


def register_predictor(prefix: str, parser: Callable[[str], PredictorSpec]):
    """Register an invented predictor variant under a catalog prefix."""
    _PREDICTOR_REGISTRY[prefix] = parser


def register_evader(prefix: str, parser: Callable[[str], EvaderSpec]):
    _EVADER_REGISTRY[prefix] = parser


def _parse_kv(text: str) -> dict[str, str]:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_predictor(name: str) -> PredictorSpec:
    text = name.strip()
    if text == "copylast":
        return CopyLastPredictor()
    if text.startswith("constant:"):
        return ConstantPredictor(int(text[len("constant:") :]))
    if text.startswith("lookalike:"):
        kv = _parse_kv(text[len("lookalike:") :])
        if "f" not in kv:
            raise ValueError("lookalike needs f=<growth name>")
        return LookalikePredictor(
            growth=growth_from_name(kv["f"]),
            pool_cap=int(kv.get("pool", DEFAULT_POOL_CAP)),
            run_cap=int(kv.get("cap", DEFAULT_LOOKALIKE_RUN_CAP)),
        )
    for prefix, parser in _PREDICTOR_REGISTRY.items():
        if text.startswith(prefix):
            return parser(text)
    raise ValueError(f"unknown predictor name: {name!r}")


def parse_evader(name: str) -> EvaderSpec:
    text = name.strip()
    if text.startswith("constant:"):
        return ConstantEvader(int(text[len("constant:") :]))
    if text.startswith("anti:"):
        return AntiPredictorEvader(parse_predictor(text[len("anti:") :]))
    if text.startswith("vm:"):
        body = text[len("vm:") :]
        kv = _parse_kv(body)
        limit = int(kv.pop("limit", DEFAULT_PER_RUN_LIMIT))
        spec_text = ",".join(f"{k}={v}" for k, v in kv.items())
        return VmEvader(parse_program_spec(spec_text), step_limit=limit)
    if text.startswith("padded:"):
        kv = _parse_kv(text[len("padded:") :])
        window = DEFAULT_VERIFY_WINDOW
        if "window" in kv:
            lo, hi = kv["window"].split("..")
            window = range(int(lo), int(hi) + 1)
        return make_padded_evader(
            pattern=kv.get("pattern", "0"),
            target=growth_from_name(kv["target"]),
            window=window,
        )
    for prefix, parser in _EVADER_REGISTRY.items():
        if text.startswith(prefix):
            return parser(text)
    raise ValueError(f"unknown evader name: {name!r}")


def catalog_predictors() -> list[PredictorSpec]:
    """The standing desk-scale predictor catalog."""
    return [
        ConstantPredictor(0),
        ConstantPredictor(1),
        CopyLastPredictor(),
        LookalikePredictor(growth=growth_from_name("poly2"), pool_cap=256),
    ]
