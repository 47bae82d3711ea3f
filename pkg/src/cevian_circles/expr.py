"""Tiny expression trees for identity sides.

Variables are either indexed (``r1`` .. ``r6``, ``R3``, ``s2``, ``K4``,
``seg5``) or plain (``cos_alpha``).  Trees can be evaluated against an
environment, printed, and re-indexed under a permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

RADIUS_NAMES = frozenset({"r", "R"})


class Expr:
    def __add__(self, other):
        return BinOp("+", self, _lift(other))

    def __radd__(self, other):
        return BinOp("+", _lift(other), self)

    def __sub__(self, other):
        return BinOp("-", self, _lift(other))

    def __mul__(self, other):
        return BinOp("*", self, _lift(other))

    def __rmul__(self, other):
        return BinOp("*", _lift(other), self)

    def __truediv__(self, other):
        return BinOp("/", self, _lift(other))

    def __rtruediv__(self, other):
        return BinOp("/", _lift(other), self)

    def evaluate(self, env: Mapping):
        raise NotImplementedError

    def reindex(self, perm: Sequence[int], names=RADIUS_NAMES) -> Expr:
        raise NotImplementedError

    def variables(self) -> set:
        raise NotImplementedError


def _lift(x) -> Expr:
    return x if isinstance(x, Expr) else Const(x)


@dataclass(frozen=True)
class Const(Expr):
    value: int

    def evaluate(self, env):
        return self.value

    def reindex(self, perm, names=RADIUS_NAMES):
        return self

    def variables(self):
        return set()

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Var(Expr):
    name: str
    index: int | None = None

    def evaluate(self, env):
        value = env[self.name]
        return value if self.index is None else value[self.index - 1]

    def reindex(self, perm, names=RADIUS_NAMES):
        if self.index is None or self.name not in names:
            return self
        return Var(self.name, perm[self.index - 1])

    def variables(self):
        return {self.name}

    def __str__(self):
        return self.name if self.index is None else f"{self.name}{self.index}"


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def evaluate(self, env):
        x, y = self.left.evaluate(env), self.right.evaluate(env)
        if self.op == "+":
            return x + y
        if self.op == "-":
            return x - y
        if self.op == "*":
            return x * y
        return x / y

    def reindex(self, perm, names=RADIUS_NAMES):
        return BinOp(self.op, self.left.reindex(perm, names), self.right.reindex(perm, names))

    def variables(self):
        return self.left.variables() | self.right.variables()

    def __str__(self):
        mine = _PRECEDENCE[self.op]

        def wrap(node, right_side):
            text = str(node)
            if isinstance(node, BinOp):
                theirs = _PRECEDENCE[node.op]
                if theirs < mine or (right_side and theirs == mine and self.op in "-/"):
                    return f"({text})"
            return text

        spaced = f" {self.op} " if mine == 1 else self.op
        return f"{wrap(self.left, False)}{spaced}{wrap(self.right, True)}"


def indexed(name: str):
    """Factory: ``r = indexed("r"); r(3)`` is the variable r3."""
    return lambda i: Var(name, i)


def product(terms) -> Expr:
    terms = list(terms)
    out = terms[0]
    for t in terms[1:]:
        out = out * t
    return out


def total(terms) -> Expr:
    terms = list(terms)
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out
