"""Step-counted evaluation of program indices.

Charging rules, fixed so outcomes are reproducible and monotone in fuel:

* entering any node costs 1 step;
* an oracle query costs 1 further step;
* each minimization attempt costs 1 step before its body runs;
* a bounded interpretation charges its own entry plus every step the
  sub-run actually consumed, converged or cut.

A run converges at fuel s iff its total charge is at most s, and then the
reported value, step count and oracle use are identical at every larger
fuel.  Evaluations are resumable: `advance` grants fuel in installments
without changing what any total budget would observe.  The priority
constructions lean on this to push many computations forward one step at a
time and to restart those whose oracle answers went stale.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

from rlab.coding import pair_decode, pair_encode
from rlab.ips.ast import (
    Node,
    T_ADD,
    T_CLOSURE,
    T_COMP,
    T_CONST,
    T_DIV,
    T_EQ,
    T_FREEZE,
    T_FST,
    T_IFZ,
    T_LE,
    T_MOD,
    T_MONUS,
    T_MU,
    T_MUL,
    T_ORACLE,
    T_PAIR,
    T_PRIMREC,
    T_PROJ,
    T_SND,
    T_SUCC,
    T_UM,
    T_UMB,
    T_ZERO,
    decode,
    smn,
)

__all__ = [
    "Converged",
    "OutOfFuel",
    "OUT_OF_FUEL",
    "Outcome",
    "Oracle",
    "Evaluation",
    "evaluate",
    "fuel_cap",
]

Oracle = Optional[Callable[[int], object]]


@dataclass(frozen=True)
class Converged:
    """Value together with exact step charge and oracle use.

    `use` is 1 + the largest queried number (0 when nothing was queried),
    so answers are stable under any oracle agreeing below `use`.
    """

    value: int
    steps: int
    use: int


@dataclass(frozen=True)
class OutOfFuel:
    def __bool__(self) -> bool:  # allows `if outcome:` for convergence
        return False


OUT_OF_FUEL = OutOfFuel()
Outcome = Union[Converged, OutOfFuel]


def fuel_cap() -> Optional[int]:
    """Global safety cap from the RLAB_FUEL_CAP environment variable."""
    raw = os.environ.get("RLAB_FUEL_CAP")
    if raw is None or raw == "":
        return None
    return int(raw)


# Work-stack opcodes.  W_EVAL and W_MU_ITER are the only charging entries.
W_EVAL = 0
W_MU_ITER = 1
W_COMP = 2
W_PR = 3
W_MU_CHECK = 4
W_IFZ = 5
W_UM = 6
W_UMB_CALL = 7
W_UMB_END = 8
W_FREEZE = 9
W_OP2 = 10
W_OP1 = 11

_HUGE = float("inf")


@lru_cache(maxsize=8192)
def _decode_for_run(code: int) -> Node:
    return decode(code)


class Evaluation:
    """A single resumable run of one program on fixed arguments."""

    __slots__ = ("steps", "use", "queried", "_oracle", "_work", "_vals",
                 "_limits", "_result")

    def __init__(self, prog: Union[int, Node], args=(), oracle: Oracle = None):
        node = decode(prog) if isinstance(prog, int) else prog
        self.steps = 0
        self.use = 0
        self.queried: set[int] = set()
        self._oracle = oracle
        self._work: list[tuple] = [(W_EVAL, node, tuple(args))]
        self._vals: list[int] = []
        # active bounded sub-runs: (effective deadline, work mark, vals mark)
        self._limits: list[tuple] = []
        self._result: Optional[Converged] = None

    @property
    def result(self) -> Optional[Converged]:
        return self._result

    def _cut(self) -> None:
        # The binding deadline was crossed: deliver 0 at the shallowest
        # bounded-run marker holding it, discarding nested sub-runs whole.
        limits = self._limits
        deadline = limits[-1][0]
        idx = 0
        while limits[idx][0] != deadline:
            idx += 1
        _, wmark, vmark = limits[idx]
        del self._work[wmark - 1:]
        del self._vals[vmark:]
        del limits[idx:]
        self._vals.append(0)

    def advance(self, budget: int) -> Optional[Converged]:
        """Grant up to `budget` further steps; the result once finished."""
        if self._result is not None:
            return self._result
        work = self._work
        vals = self._vals
        limits = self._limits
        allowance = self.steps + budget
        while work:
            top = work[-1]
            op = top[0]
            if op == W_EVAL:
                node = top[1]
                kind = node.kind
                after = self.steps + (2 if kind == T_ORACLE else 1)
                if after > allowance:
                    return None
                if limits and after > limits[-1][0]:
                    self._cut()
                    continue
                self.steps = after
                work.pop()
                args = top[2]
                if kind == T_ZERO:
                    vals.append(0)
                elif kind == T_SUCC:
                    vals.append((args[0] if args else 0) + 1)
                elif kind == T_PROJ:
                    i = node.i - 1
                    vals.append(args[i] if i < len(args) else 0)
                elif kind == T_CONST:
                    vals.append(node.value)
                elif kind == T_ORACLE:
                    q = args[0] if args else 0
                    ans = 1 if (self._oracle is not None and self._oracle(q)) else 0
                    self.queried.add(q)
                    if q + 1 > self.use:
                        self.use = q + 1
                    vals.append(ans)
                elif kind == T_COMP:
                    gs = node.gs
                    if gs:
                        work.append((W_COMP, node.h, len(gs)))
                        for g in reversed(gs):
                            work.append((W_EVAL, g, args))
                    else:
                        work.append((W_EVAL, node.h, ()))
                elif kind == T_PRIMREC:
                    rest = args[1:]
                    work.append((W_PR, node.step, args[0] if args else 0, rest, 0))
                    work.append((W_EVAL, node.base, rest))
                elif kind == T_MU:
                    work.append((W_MU_ITER, node.g, args, 0))
                elif kind == T_IFZ:
                    work.append((W_IFZ, node.then, node.other, args))
                    work.append((W_EVAL, node.cond, args))
                elif kind == T_UM:
                    gs = node.gs
                    work.append((W_UM, len(gs)))
                    for g in reversed(gs):
                        work.append((W_EVAL, g, args))
                elif kind == T_UMB:
                    gs = node.gs
                    work.append((W_UMB_CALL, len(gs)))
                    for g in reversed(gs):
                        work.append((W_EVAL, g, args))
                elif kind == T_FREEZE:
                    gs = node.gs
                    work.append((W_FREEZE, len(gs)))
                    for g in reversed(gs):
                        work.append((W_EVAL, g, args))
                elif kind == T_CLOSURE:
                    work.append(
                        (W_EVAL, _decode_for_run(node.code), node.ys + args)
                    )
                elif kind == T_FST or kind == T_SND:
                    work.append((W_OP1, kind))
                    work.append((W_EVAL, node.a, args))
                else:
                    work.append((W_OP2, kind))
                    work.append((W_EVAL, node.b, args))
                    work.append((W_EVAL, node.a, args))
            elif op == W_MU_ITER:
                after = self.steps + 1
                if after > allowance:
                    return None
                if limits and after > limits[-1][0]:
                    self._cut()
                    continue
                self.steps = after
                g, args, z = top[1], top[2], top[3]
                work[-1] = (W_MU_CHECK, g, args, z)
                work.append((W_EVAL, g, (z,) + args))
            elif op == W_MU_CHECK:
                if vals.pop() == 0:
                    work.pop()
                    vals.append(top[3])
                else:
                    work[-1] = (W_MU_ITER, top[1], top[2], top[3] + 1)
            elif op == W_COMP:
                work.pop()
                n = top[2]
                newargs = tuple(vals[-n:])
                del vals[-n:]
                work.append((W_EVAL, top[1], newargs))
            elif op == W_PR:
                step, n, rest, k = top[1], top[2], top[3], top[4]
                if k == n:
                    work.pop()  # accumulated value on vals is the result
                else:
                    acc = vals.pop()
                    work[-1] = (W_PR, step, n, rest, k + 1)
                    work.append((W_EVAL, step, (k, acc) + rest))
            elif op == W_IFZ:
                work.pop()
                branch = top[1] if vals.pop() == 0 else top[2]
                work.append((W_EVAL, branch, top[3]))
            elif op == W_UM:
                work.pop()
                n = top[1]
                vs = vals[-n:]
                del vals[-n:]
                work.append((W_EVAL, _decode_for_run(vs[0]), tuple(vs[1:])))
            elif op == W_UMB_CALL:
                work.pop()
                n = top[1]
                vs = vals[-n:]
                del vals[-n:]
                own = self.steps + vs[1]
                eff = own if not limits or own < limits[-1][0] else limits[-1][0]
                work.append((W_UMB_END,))
                limits.append((eff, len(work), len(vals)))
                work.append((W_EVAL, _decode_for_run(vs[0]), tuple(vs[2:])))
            elif op == W_UMB_END:
                work.pop()
                limits.pop()
                vals[-1] += 1
            elif op == W_FREEZE:
                work.pop()
                n = top[1]
                vs = vals[-n:]
                del vals[-n:]
                vals.append(smn(vs[0], vs[1:]))
            elif op == W_OP1:
                work.pop()
                v = vals.pop()
                x, y = pair_decode(v)
                vals.append(x if top[1] == T_FST else y)
            else:  # W_OP2
                work.pop()
                b = vals.pop()
                a = vals.pop()
                kind = top[1]
                if kind == T_PAIR:
                    vals.append(pair_encode(a, b))
                elif kind == T_ADD:
                    vals.append(a + b)
                elif kind == T_MONUS:
                    vals.append(a - b if a >= b else 0)
                elif kind == T_MUL:
                    vals.append(a * b)
                elif kind == T_DIV:
                    vals.append(a // b if b else 0)
                elif kind == T_MOD:
                    vals.append(a % b if b else 0)
                elif kind == T_EQ:
                    vals.append(0 if a == b else 1)
                else:  # T_LE
                    vals.append(0 if a <= b else 1)
        self._result = Converged(vals[0], self.steps, self.use)
        return self._result


def evaluate(prog: Union[int, Node], args=(), oracle: Oracle = None,
             fuel: int = 10_000) -> Outcome:
    """Run an index (or tree) on arguments under a fuel bound.

    Missing arguments read as 0, extras are ignored.  The RLAB_FUEL_CAP
    environment variable, when set, caps every fuel bound globally.
    """
    cap = fuel_cap()
    if cap is not None and cap < fuel:
        fuel = cap
    ev = Evaluation(prog, args, oracle)
    out = ev.advance(fuel)
    return out if out is not None else OUT_OF_FUEL
