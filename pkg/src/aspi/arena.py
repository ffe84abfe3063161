"""The adversarial sequence prediction game.

Both sides move simultaneously each round: the evader's n+1-th bit is a
function of the predictor's first n outputs and vice versa, so each
round is computed from the previous round's revealed history only.

"Learns" in the eventual-always-wins sense is undecidable from any
finite transcript, so verdicts here are explicitly windowed: a play of
horizon H is judged learned iff the predictor wins every round in the
final W rounds, and both H and W are carried in the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    EvaderTimeout,
    OutOfRange,
    PlayTimeout,
    PredictorTimeout,
    WindowTooLarge,
)

__all__ = ["Winner", "Transcript", "LearnVerdict", "play", "learned", "round_winner"]


class Winner(Enum):
    PREDICTOR = "predictor"
    EVADER = "evader"


@dataclass(frozen=True)
class Transcript:
    """Interleaved result of one play: x = evasions, y = predictions."""

    xs: tuple[int, ...]
    ys: tuple[int, ...]

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ValueError("evasion and prediction sequences must align")

    @property
    def horizon(self) -> int:
        return len(self.xs)

    def winner(self, n: int) -> Winner:
        """Winner of round n (1-based): the predictor iff x_n = y_n."""
        if not 1 <= n <= self.horizon:
            raise OutOfRange(f"round {n} outside 1..{self.horizon}")
        return Winner.PREDICTOR if self.xs[n - 1] == self.ys[n - 1] else Winner.EVADER

    def winners(self) -> tuple[Winner, ...]:
        return tuple(self.winner(n) for n in range(1, self.horizon + 1))

    def predictor_wins(self) -> int:
        return sum(1 for x, y in zip(self.xs, self.ys) if x == y)

    def last_loss_round(self) -> int | None:
        for n in range(self.horizon, 0, -1):
            if self.xs[n - 1] != self.ys[n - 1]:
                return n
        return None

    def to_csv(self) -> str:
        lines = ["round,x,y,winner"]
        for n in range(1, self.horizon + 1):
            lines.append(
                f"{n},{self.xs[n-1]},{self.ys[n-1]},{self.winner(n).value}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LearnVerdict:
    learned: bool
    last_loss_round: int | None
    horizon: int
    window: int

    def to_json_dict(self) -> dict:
        return {
            "learned": self.learned,
            "last_loss_round": self.last_loss_round,
            "horizon": self.horizon,
            "window": self.window,
        }


def play(predictor, evader, horizon: int) -> Transcript:
    """Play ``horizon`` rounds; deterministic given the two handles.

    ``predictor`` exposes ``predict(evasions) -> bit`` and ``evader``
    ``evade(predictions) -> bit``; both must be pure functions of the
    opposing history they are shown.  A handle that exhausts its step
    budget aborts the play with a timeout error naming the round --
    timeouts are errors, not losses.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    xs: list[int] = []
    ys: list[int] = []
    for n in range(horizon):
        try:
            x = evader.evade(tuple(ys))
        except (PredictorTimeout, EvaderTimeout):
            raise
        except PlayTimeout as exc:
            raise EvaderTimeout(str(exc), round_no=n + 1) from exc
        try:
            y = predictor.predict(tuple(xs))
        except (PredictorTimeout, EvaderTimeout):
            raise
        except PlayTimeout as exc:
            raise PredictorTimeout(str(exc), round_no=n + 1) from exc
        if x not in (0, 1) or y not in (0, 1):
            raise ValueError("handles must emit bits")
        xs.append(x)
        ys.append(y)
    return Transcript(xs=tuple(xs), ys=tuple(ys))


def learned(transcript: Transcript, window: int) -> LearnVerdict:
    """Windowed learning verdict: all of the final ``window`` rounds won."""
    horizon = transcript.horizon
    if window < 1:
        raise ValueError("window must be >= 1")
    if window > horizon:
        raise WindowTooLarge(f"window {window} exceeds horizon {horizon}")
    last_loss = transcript.last_loss_round()
    ok = last_loss is None or last_loss <= horizon - window
    return LearnVerdict(
        learned=ok, last_loss_round=last_loss, horizon=horizon, window=window
    )


def round_winner(transcript: Transcript, n: int) -> Winner:
    return transcript.winner(n)
