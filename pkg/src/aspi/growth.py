"""Total growth-function handles used as step bounds and measure rungs.

A GrowthFn wraps a total function on naturals.  Evaluation either
returns a natural or raises (budget trips propagate as errors, never as
values).  The closed-form catalog is addressable by name so predictors
and suites can be specified from config/CLI, e.g. ``poly2`` for n^2 or
``slow:w^2`` for the slow-growing hierarchy at w^2.

Name grammar:
    const<c>   n -> c
    aff<c>     n -> n + c
    lin<c>     n -> c * n
    poly<c>    n -> n ** c
    exp<c>     n -> c ** n
    scaled:<name>          n -> n * f(n) + 1
    slow:<ordinal> / fast:<ordinal> / hardy:<ordinal>   hierarchy levels
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .defaults import DEFAULT_BUDGET
from .errors import BudgetExceeded, GrowthBudgetError
from .hierarchy import EvalBudget, HierarchyKind, eval_hierarchy
from .ordinal import Ordinal, format_ordinal, parse_ordinal

__all__ = ["GrowthFn", "growth_from_name", "hierarchy_growth", "scaled"]


@dataclass(frozen=True)
class GrowthFn:
    """A named total function handle n -> natural."""

    name: str
    fn: Callable[[int], int] = field(compare=False)

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError("growth functions are defined on naturals")
        value = self.fn(n)
        if not isinstance(value, int) or value < 0:
            raise ValueError(f"{self.name}({n}) produced a non-natural: {value!r}")
        return value

    def __repr__(self):
        return f"GrowthFn({self.name})"


def constant(c: int) -> GrowthFn:
    return GrowthFn(f"const{c}", lambda n: c)


def affine(c: int) -> GrowthFn:
    return GrowthFn(f"aff{c}", lambda n: n + c)


def linear(c: int) -> GrowthFn:
    return GrowthFn(f"lin{c}", lambda n: c * n)


def poly(c: int) -> GrowthFn:
    return GrowthFn(f"poly{c}", lambda n: n**c)


def exponential(c: int) -> GrowthFn:
    return GrowthFn(f"exp{c}", lambda n: c**n)


def scaled(f: GrowthFn) -> GrowthFn:
    """n -> n*f(n) + 1, the growth bound that upgrades a lookalike
    predictor to cover every constant multiple of f."""
    return GrowthFn(f"scaled:{f.name}", lambda n: n * f(n) + 1)


def hierarchy_growth(
    kind: HierarchyKind, alpha: Ordinal, budget: EvalBudget = DEFAULT_BUDGET
) -> GrowthFn:
    name = f"{kind.value}:{format_ordinal(alpha)}"

    def fn(n: int) -> int:
        try:
            return eval_hierarchy(kind, alpha, n, budget)
        except BudgetExceeded as exc:
            raise GrowthBudgetError(f"{name}({n}): {exc}") from exc

    return GrowthFn(name, fn)


_KINDS = {k.value: k for k in HierarchyKind}


def offset(f: GrowthFn, c: int) -> GrowthFn:
    return GrowthFn(f"{f.name}+{c}", lambda n: f(n) + c)


def growth_from_name(name: str, budget: EvalBudget = DEFAULT_BUDGET) -> GrowthFn:
    """Resolve a catalog name to a GrowthFn; raises ValueError on junk."""
    text = name.strip()
    if text.startswith("scaled:"):
        return scaled(growth_from_name(text[len("scaled:") :], budget))
    for prefix, kind in _KINDS.items():
        tag = prefix + ":"
        if text.startswith(tag):
            return hierarchy_growth(kind, parse_ordinal(text[len(tag) :]), budget)
    head, plus, tail = text.rpartition("+")
    if plus and tail.isdigit():
        return offset(growth_from_name(head, budget), int(tail))
    for prefix, make in (
        ("const", constant),
        ("aff", affine),
        ("lin", linear),
        ("poly", poly),
        ("exp", exponential),
    ):
        if text.startswith(prefix) and text[len(prefix) :].isdigit():
            return make(int(text[len(prefix) :]))
    raise ValueError(f"unknown growth function name: {name!r}")
