import pytest

from aspi.arena import LearnVerdict, Transcript, Winner, learned, play, round_winner
from aspi.errors import EvaderTimeout, OutOfRange, WindowTooLarge
from aspi.machine import decode
from aspi.zoo import (
    AntiPredictorEvader,
    ConstantEvader,
    ConstantPredictor,
    CopyLastPredictor,
    VmEvader,
    catalog_predictors,
)


class TestPlay:
    def test_constant_mismatch_never_wins(self):
        t = play(ConstantPredictor(1).build(), ConstantEvader(0).build(), 10)
        assert t.predictor_wins() == 0
        assert all(w is Winner.EVADER for w in t.winners())

    def test_constant_match_always_wins(self):
        t = play(ConstantPredictor(0).build(), ConstantEvader(0).build(), 10)
        assert t.predictor_wins() == 10

    def test_interleaving_definition(self):
        # copy-last predictor vs constant-1 evader: y_1 = 0 (no history),
        # y_n = x_{n-1} = 1 afterwards
        t = play(CopyLastPredictor().build(), ConstantEvader(1).build(), 6)
        assert t.xs == (1,) * 6
        assert t.ys == (0, 1, 1, 1, 1, 1)

    def test_replay_determinism(self):
        def once():
            return play(CopyLastPredictor().build(), ConstantEvader(1).build(), 25)

        assert once() == once()

    def test_prefix_coherence(self):
        pred = ConstantPredictor(0)
        ev = AntiPredictorEvader(CopyLastPredictor())
        full = play(pred.build(), ev.build(), 40)
        for h in (1, 7, 39):
            part = play(pred.build(), ev.build(), h)
            assert part.xs == full.xs[:h]
            assert part.ys == full.ys[:h]

    def test_evader_timeout_names_round(self):
        looper = VmEvader(decode("0010"), step_limit=50)  # loops on empty input
        with pytest.raises(EvaderTimeout) as err:
            play(ConstantPredictor(0).build(), looper.build(), 5)
        assert err.value.round_no == 1

    def test_horizon_validation(self):
        with pytest.raises(ValueError):
            play(ConstantPredictor(0).build(), ConstantEvader(0).build(), 0)


class TestLearned:
    def test_all_wins(self):
        t = Transcript(xs=(0,) * 10, ys=(0,) * 10)
        for w in (1, 5, 10):
            assert learned(t, w).learned

    def test_loss_on_final_round(self):
        t = Transcript(xs=(0,) * 9 + (1,), ys=(0,) * 10)
        v = learned(t, 1)
        assert not v.learned
        assert v.last_loss_round == 10

    def test_window_boundary(self):
        # last loss at round 40 of 100: windows reaching back past round
        # 40 fail, shorter ones succeed
        xs = tuple(1 if n == 39 else 0 for n in range(100))
        t = Transcript(xs=xs, ys=(0,) * 100)
        assert not learned(t, 61).learned
        assert not learned(t, 60).learned
        assert learned(t, 59).learned

    def test_window_too_large(self):
        t = Transcript(xs=(0,), ys=(0,))
        with pytest.raises(WindowTooLarge):
            learned(t, 2)
        with pytest.raises(ValueError):
            learned(t, 0)

    def test_verdict_carries_parameters(self):
        t = Transcript(xs=(0, 1), ys=(0, 0))
        v = learned(t, 1)
        assert v == LearnVerdict(learned=False, last_loss_round=2, horizon=2, window=1)


class TestRoundWinner:
    def test_examples(self):
        t = Transcript(xs=(1, 0), ys=(1, 1))
        assert round_winner(t, 1) is Winner.PREDICTOR
        assert round_winner(t, 2) is Winner.EVADER

    def test_out_of_range(self):
        t = Transcript(xs=(1,), ys=(1,))
        with pytest.raises(OutOfRange):
            round_winner(t, 0)
        with pytest.raises(OutOfRange):
            round_winner(t, 2)

    def test_winner_counts_partition(self):
        t = play(CopyLastPredictor().build(), ConstantEvader(1).build(), 17)
        wins = sum(1 for w in t.winners() if w is Winner.PREDICTOR)
        losses = sum(1 for w in t.winners() if w is Winner.EVADER)
        assert wins + losses == 17


class TestAntiPredictorProperty:
    def test_every_catalog_predictor_fully_defeated(self):
        for spec in catalog_predictors():
            t = play(spec.build(), AntiPredictorEvader(spec).build(), 100)
            assert t.predictor_wins() == 0, spec.name


class TestExports:
    def test_csv(self):
        t = Transcript(xs=(1, 0), ys=(1, 1))
        lines = t.to_csv().strip().splitlines()
        assert lines[0] == "round,x,y,winner"
        assert lines[1] == "1,1,1,predictor"
        assert lines[2] == "2,0,1,evader"

    def test_json_summary(self):
        t = Transcript(xs=(1, 0), ys=(1, 1))
        d = learned(t, 1).to_json_dict()
        assert d == {
            "learned": False,
            "last_loss_round": 2,
            "horizon": 2,
            "window": 1,
        }
