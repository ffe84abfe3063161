"""Adversarial sequence prediction laboratory.

Plays and scores the prediction game between bit-emitting predictors
and evaders, with exact-cost mini-machine simulation, ordinals up to
epsilon_0, majorization hierarchies, and the growth-rate intelligence
measures built on them.
"""

__version__ = "0.1.0"
