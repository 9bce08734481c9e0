"""Small program-building combinators shared by the set and class layers.

Everything here builds trees; nothing evaluates.  The guard idiom is
central: computations signal "yes" by converging (usually to 0) and "no"
by running forever, so partial characteristic functions compose.
"""

from __future__ import annotations

from typing import Mapping

from rlab.ips.ast import (
    DIVERGE,
    Comp,
    Const,
    Eq,
    IfZ,
    Mu,
    Mul,
    Node,
    PrimRec,
    Proj,
    Um,
    decode,
    max_args,
)

__all__ = [
    "never",
    "apply",
    "guard_zero",
    "guard_eq",
    "if_zero",
    "passthrough",
    "call_index",
    "call_passthrough",
    "case_table",
    "POW2",
]


def never() -> Node:
    """An expression that always diverges."""
    return Comp(DIVERGE, ())


def apply(h: Node, *gs: Node) -> Node:
    """h evaluated on the child values (rebinds the argument view)."""
    return Comp(h, gs)


def guard_zero(expr: Node) -> Node:
    """Converges to 0 iff expr evaluates to 0, diverges otherwise.

    Built on minimization: the body ignores the counter and re-delivers the
    guarded value, so a nonzero value can never be accepted.
    """
    return Comp(Mu(Proj(2, 2)), (expr,))


def guard_eq(a: Node, b: Node) -> Node:
    """Converges to 0 iff the two child values are equal."""
    return guard_zero(Eq(a, b))


def if_zero(cond: Node, then: Node) -> Node:
    """Value of `then` when cond is 0, divergence otherwise; cond is strict,
    `then` is only entered on the zero branch."""
    return IfZ(cond, then, never())


def passthrough(k: int) -> tuple[Node, ...]:
    """Projections forwarding the first k arguments."""
    return tuple(Proj(k, j) for j in range(1, k + 1))


def call_index(e: int, *arg_exprs: Node) -> Node:
    """Run the fixed index e on the child values."""
    return Um((Const(e),) + arg_exprs)


def call_passthrough(e: int) -> Node:
    """Run the fixed index e on this program's own arguments."""
    return call_index(e, *passthrough(max_args(decode(e))))


def case_table(mapping: Mapping[int, int], arg: Node | None = None) -> Node:
    """Finite lookup: maps each key to its value, diverges off the table."""
    x = Proj(1, 1) if arg is None else arg
    body = never()
    for key in sorted(mapping, reverse=True):
        body = IfZ(Eq(x, Const(key)), Const(mapping[key]), body)
    return body


# 2^n in linearly many steps; the step only reads the accumulator.
POW2 = PrimRec(Const(1), Mul(Const(2), Proj(3, 2)))
