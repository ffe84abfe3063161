"""Ordinals up to and including epsilon_0 in Cantor normal form.

An ordinal below epsilon_0 is represented as a tuple of
(exponent, coefficient) terms with strictly decreasing exponents and
coefficients >= 1, standing for  w^a1*c1 + w^a2*c2 + ... + w^ak*ck.
The empty tuple is 0.  epsilon_0 itself is a distinguished atom (it has
no finite normal form), flagged by ``is_epsilon0``; every operation
special-cases it.

Coefficients are kept compressed (w^a*c) and expanded into unit terms
only where a definition demands it -- the fundamental sequence of a
multi-term normal form treats w^a*c as c unit summands.

Text grammar (ASCII): ``0``, decimal naturals, ``w``, ``e0``, binary
``+`` and ``*``, ``^`` applied to ``w`` only, parentheses; whitespace
is insignificant.  ``format_ordinal`` emits the canonical descending
normal form, e.g. ``w^(w*2)*2+w*3+2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import NotALimit, OrdinalSyntaxError, OverflowBeyondEpsilon0

__all__ = [
    "Ordinal",
    "OrdinalKind",
    "ZERO",
    "ONE",
    "OMEGA",
    "EPSILON0",
    "compare",
    "add",
    "mul",
    "omega_pow",
    "classify",
    "fundamental_sequence",
    "parse_ordinal",
    "format_ordinal",
]


class OrdinalKind(Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


@dataclass(frozen=True)
class Ordinal:
    """An ordinal <= epsilon_0 in Cantor normal form (value semantics)."""

    terms: tuple[tuple["Ordinal", int], ...] = ()
    is_epsilon0: bool = False

    def __post_init__(self):
        if self.is_epsilon0:
            if self.terms:
                raise ValueError("epsilon_0 atom must carry no terms")
            return
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal):
                raise TypeError("exponents must be Ordinal")
            if exp.is_epsilon0:
                raise ValueError("term exponent must be below epsilon_0")
            if not isinstance(coeff, int) or coeff < 1:
                raise ValueError("coefficients must be naturals >= 1")
            if prev is not None and compare(prev, exp) <= 0:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp

    # -- conversions -------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        if n == 0:
            return ZERO
        return Ordinal(((ZERO, n),))

    def as_int(self) -> int:
        """The natural this ordinal denotes, or raise if infinite."""
        if self.is_epsilon0:
            raise ValueError("epsilon_0 is not finite")
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.terms[0][0] == ZERO:
            return self.terms[0][1]
        raise ValueError(f"{self} is not finite")

    def is_finite(self) -> bool:
        return not self.is_epsilon0 and (
            not self.terms or (len(self.terms) == 1 and self.terms[0][0] == ZERO)
        )

    # -- ordering ----------------------------------------------------

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __repr__(self):
        return f"Ordinal[{format_ordinal(self)}]"

    def __str__(self):
        return format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))
EPSILON0 = Ordinal(is_epsilon0=True)


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on normal forms: -1, 0 or 1.

    Structural exponent-then-coefficient lexicographic comparison;
    epsilon_0 is the maximum.  Total: never raises on valid operands.
    """
    if a.is_epsilon0 or b.is_epsilon0:
        if a.is_epsilon0 and b.is_epsilon0:
            return 0
        return 1 if a.is_epsilon0 else -1
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return 1 if ca > cb else -1
    if len(a.terms) != len(b.terms):
        return 1 if len(a.terms) > len(b.terms) else -1
    return 0


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Cantor-normal-form addition (left terms below b's lead are absorbed)."""
    if a.is_epsilon0:
        if b == ZERO:
            return a
        raise OverflowBeyondEpsilon0("epsilon_0 + nonzero exceeds epsilon_0")
    if b.is_epsilon0:
        return EPSILON0  # a < epsilon_0, so a + epsilon_0 = epsilon_0
    if not b.terms:
        return a
    lead = b.terms[0][0]
    kept = [t for t in a.terms if compare(t[0], lead) > 0]
    merged = list(b.terms)
    for exp, coeff in a.terms:
        if compare(exp, lead) == 0:
            merged[0] = (lead, coeff + merged[0][1])
            break
    return Ordinal(tuple(kept) + tuple(merged))


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Cantor-normal-form multiplication (left-distributes over b)."""
    if a == ZERO or b == ZERO:
        return ZERO
    if a.is_epsilon0:
        if b == ONE:
            return a
        raise OverflowBeyondEpsilon0("epsilon_0 * b exceeds epsilon_0 for b > 1")
    if b.is_epsilon0:
        return EPSILON0  # 1 <= a < epsilon_0, so a * epsilon_0 = epsilon_0
    lead_exp, lead_coeff = a.terms[0]
    out: list[tuple[Ordinal, int]] = []
    for exp, coeff in b.terms:
        if exp == ZERO:
            # a * finite part: multiplies the leading coefficient only
            out.append((lead_exp, lead_coeff * coeff))
            out.extend(a.terms[1:])
        else:
            out.append((add(lead_exp, exp), coeff))
    return Ordinal(tuple(out))


def omega_pow(a: Ordinal) -> Ordinal:
    """The single-term normal form w^a (coefficient 1)."""
    if a.is_epsilon0:
        raise OverflowBeyondEpsilon0("w^epsilon_0 is not below-or-at epsilon_0 here")
    return Ordinal(((a, 1),))


def classify(a: Ordinal) -> OrdinalKind:
    """Zero, successor, or limit; epsilon_0 is a limit."""
    if a.is_epsilon0:
        return OrdinalKind.LIMIT
    if not a.terms:
        return OrdinalKind.ZERO
    if a.terms[-1][0] == ZERO:
        return OrdinalKind.SUCCESSOR
    return OrdinalKind.LIMIT


def predecessor(a: Ordinal) -> Ordinal:
    """a - 1 for a successor ordinal."""
    if classify(a) is not OrdinalKind.SUCCESSOR:
        raise ValueError(f"{a} is not a successor")
    exp, coeff = a.terms[-1]
    if coeff > 1:
        return Ordinal(a.terms[:-1] + ((exp, coeff - 1),))
    return Ordinal(a.terms[:-1])


def fundamental_sequence(lam: Ordinal, i: int) -> Ordinal:
    """The i-th entry of the standard fundamental sequence of a limit.

    Clauses, with the normal form read as a sum of unit terms
    (w^a*c counts as c summands):

    * epsilon_0[i] is the tower w, w^w, w^(w^w), ...
    * a multi-unit sum keeps its prefix and descends in the last unit;
    * w^(a+1)[i] = w^a * i;
    * w^l[i] = w^(l[i]) for limit l.
    """
    if i < 0:
        raise ValueError("sequence index must be a natural")
    if classify(lam) is not OrdinalKind.LIMIT:
        raise NotALimit(f"{lam} has no fundamental sequence")
    if lam.is_epsilon0:
        out = OMEGA
        for _ in range(i):
            out = omega_pow(out)
        return out
    exp, coeff = lam.terms[-1]
    if len(lam.terms) > 1 or coeff > 1:
        if coeff > 1:
            prefix = Ordinal(lam.terms[:-1] + ((exp, coeff - 1),))
        else:
            prefix = Ordinal(lam.terms[:-1])
        return add(prefix, fundamental_sequence(omega_pow(exp), i))
    # single unit term w^exp with exp > 0
    kind = classify(exp)
    if kind is OrdinalKind.SUCCESSOR:
        return mul(omega_pow(predecessor(exp)), Ordinal.from_int(i))
    return omega_pow(fundamental_sequence(exp, i))


# -- text form -------------------------------------------------------

_TOKEN = re.compile(r"\s*(e0|w|\d+|[+*^()])")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise OrdinalSyntaxError(f"unexpected character {stripped[0]!r}", pos)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k][0] if self.k < len(self.tokens) else None

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def fail(self, message):
        pos = self.tokens[self.k][1] if self.k < len(self.tokens) else len(self.text)
        raise OrdinalSyntaxError(message, pos)

    def expr(self) -> Ordinal:
        out = self.term()
        while self.peek() == "+":
            self.next()
            out = add(out, self.term())
        return out

    def term(self) -> Ordinal:
        out = self.atom()
        while self.peek() == "*":
            self.next()
            out = mul(out, self.atom())
        return out

    def atom(self) -> Ordinal:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        if tok == "(":
            self.next()
            out = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.next()
            return out
        if tok == "e0":
            self.next()
            return EPSILON0
        if tok == "w":
            self.next()
            if self.peek() == "^":
                self.next()
                return omega_pow(self.atom())
            return OMEGA
        if tok.isdigit():
            self.next()
            return Ordinal.from_int(int(tok))
        self.fail(f"unexpected token {tok!r}")


def parse_ordinal(text: str) -> Ordinal:
    """Parse the ASCII ordinal grammar; raises OrdinalSyntaxError with position."""
    p = _Parser(text)
    if p.peek() is None:
        raise OrdinalSyntaxError("empty ordinal expression", 0)
    out = p.expr()
    if p.peek() is not None:
        p.fail("trailing input after ordinal")
    return out


def format_ordinal(a: Ordinal) -> str:
    """Canonical descending normal form with '*' coefficients."""
    if a.is_epsilon0:
        return "e0"
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp == ZERO:
            parts.append(str(coeff))
            continue
        if exp == ONE:
            base = "w"
        elif exp.is_finite():
            base = f"w^{exp.as_int()}"
        else:
            base = f"w^({format_ordinal(exp)})"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return "+".join(parts)
