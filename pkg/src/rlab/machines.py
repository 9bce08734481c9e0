"""Turing-machine demonstrations and the Ackermann reference function.

Standalone model: no compilation to or from the indexed programming
system.  The machine is the classical single-tape, binary-alphabet one;
a program maps (state, read bit) to either Write(bit, move, next) or
Stop, and input n is laid out as n ones strictly right of the head.

Output convention: after stopping, the output is the maximal contiguous
run of 1s starting immediately right of the head.  If any 1 remains
further right beyond that run, the output is declared malformed (a
distinct outcome) rather than guessed at; the tape at or left of the
head does not matter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from rlab.ips.machine import OUT_OF_FUEL, OutOfFuel

__all__ = [
    "Write",
    "STOP",
    "Stop",
    "TmProgram",
    "TmConfiguration",
    "TmHalted",
    "TmMalformedOutput",
    "TmOutcome",
    "tm_run",
    "tm_step",
    "initial_configuration",
    "parse_tm",
    "format_tm",
    "TmSyntaxProblem",
    "ackermann",
    "RangeExceeded",
    "is_primitive_recursive",
]

LEFT = "L"
RIGHT = "R"


@dataclass(frozen=True)
class Write:
    """Write a bit, move one block, enter the next state."""

    bit: int
    move: str
    state: int

    def __post_init__(self):
        if self.bit not in (0, 1):
            raise ValueError("tape alphabet is {0, 1}")
        if self.move not in (LEFT, RIGHT):
            raise ValueError("move is 'L' or 'R'")
        if self.state < 0:
            raise ValueError("states are naturals")


@dataclass(frozen=True)
class Stop:
    pass


STOP = Stop()

Action = Union[Write, Stop]


@dataclass(frozen=True)
class TmProgram:
    """Transition table, indexed [state][read bit]."""

    transitions: tuple[tuple[Action, Action], ...]

    def __post_init__(self):
        for row in self.transitions:
            for act in row:
                if isinstance(act, Write) and act.state >= self.states:
                    raise ValueError("next state out of range")

    @property
    def states(self) -> int:
        return len(self.transitions)


@dataclass(frozen=True)
class TmConfiguration:
    """A machine snapshot; `ones` is the sparse set of 1-positions."""

    ones: frozenset[int]
    head: int
    state: int
    halted: bool


@dataclass(frozen=True)
class TmHalted:
    output: int
    steps: int


@dataclass(frozen=True)
class TmMalformedOutput:
    """Halted, but some 1 sits right of the head beyond the output run."""

    steps: int

    def __bool__(self) -> bool:
        return False


TmOutcome = Union[TmHalted, TmMalformedOutput, OutOfFuel]


def initial_configuration(n: int) -> TmConfiguration:
    """Input n: ones at positions 1..n, head at 0, state 0."""
    return TmConfiguration(frozenset(range(1, n + 1)), 0, 0, False)


def tm_step(p: TmProgram, c: TmConfiguration) -> TmConfiguration:
    """One action; halted configurations are fixed points."""
    if c.halted:
        return c
    bit = 1 if c.head in c.ones else 0
    act = p.transitions[c.state][bit]
    if isinstance(act, Stop):
        return TmConfiguration(c.ones, c.head, c.state, True)
    if act.bit and not bit:
        ones = c.ones | {c.head}
    elif bit and not act.bit:
        ones = c.ones - {c.head}
    else:
        ones = c.ones
    head = c.head + (1 if act.move == RIGHT else -1)
    return TmConfiguration(ones, head, act.state, False)


def _read_output(ones: set[int], head: int, steps: int) -> TmOutcome:
    m = 0
    while head + m + 1 in ones:
        m += 1
    if any(q > head + m for q in ones):
        return TmMalformedOutput(steps)
    return TmHalted(m, steps)


def tm_run(p: TmProgram, n: int, fuel: int = 10_000) -> TmOutcome:
    """Run on input n for at most fuel steps."""
    ones = set(range(1, n + 1))
    head = 0
    state = 0
    trans = p.transitions
    for step in range(fuel + 1):
        act = trans[state][1 if head in ones else 0]
        if isinstance(act, Stop):
            return _read_output(ones, head, step)
        if step == fuel:
            break
        if act.bit:
            ones.add(head)
        else:
            ones.discard(head)
        head += 1 if act.move == RIGHT else -1
        state = act.state
    return OUT_OF_FUEL


class TmSyntaxProblem(ValueError):
    pass


def parse_tm(text: str) -> TmProgram:
    """One line per (state, bit): `s b -> w m s'` or `s b -> STOP`."""
    seen: dict[tuple[int, int], Action] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        try:
            lhs, rhs = line.split("->")
            s, b = lhs.split()
            key = (int(s), int(b))
            parts = rhs.split()
            if parts == ["STOP"]:
                act: Action = STOP
            else:
                w, m, nxt = parts
                act = Write(int(w), m, int(nxt))
        except (ValueError, TypeError) as exc:
            raise TmSyntaxProblem(f"bad line {line!r}") from exc
        if key in seen:
            raise TmSyntaxProblem(f"duplicate rule for {key}")
        if key[1] not in (0, 1):
            raise TmSyntaxProblem(f"read bit must be 0 or 1 in {line!r}")
        seen[key] = act
    if not seen:
        raise TmSyntaxProblem("empty program")
    states = 1 + max(s for s, _ in seen)
    rows = []
    for s in range(states):
        for b in (0, 1):
            if (s, b) not in seen:
                raise TmSyntaxProblem(f"missing rule for state {s} bit {b}")
        rows.append((seen[(s, 0)], seen[(s, 1)]))
    return TmProgram(tuple(rows))


def format_tm(p: TmProgram) -> str:
    lines = []
    for s, row in enumerate(p.transitions):
        for b, act in enumerate(row):
            if isinstance(act, Stop):
                lines.append(f"{s} {b} -> STOP")
            else:
                lines.append(f"{s} {b} -> {act.bit} {act.move} {act.state}")
    return "\n".join(lines)


class RangeExceeded(ValueError):
    pass


def ackermann(m: int, n: int) -> int:
    """The classical three-case recursion, guarded to m <= 3, n <= 10.

    Evaluated with an explicit memo table; the plain recursion makes tens
    of millions of calls already at (3, 10).
    """
    if not (0 <= m <= 3 and 0 <= n <= 10):
        raise RangeExceeded(f"ackermann guarded to m <= 3, n <= 10, got {(m, n)}")
    memo: dict[tuple[int, int], int] = {}
    stack = [(m, n)]
    while stack:
        mm, nn = stack[-1]
        if (mm, nn) in memo:
            stack.pop()
            continue
        if mm == 0:
            memo[mm, nn] = nn + 1
            stack.pop()
        elif nn == 0:
            if (mm - 1, 1) in memo:
                memo[mm, nn] = memo[mm - 1, 1]
                stack.pop()
            else:
                stack.append((mm - 1, 1))
        elif (mm, nn - 1) not in memo:
            stack.append((mm, nn - 1))
        else:
            inner = memo[mm, nn - 1]
            if (mm - 1, inner) in memo:
                memo[mm, nn] = memo[mm - 1, inner]
                stack.pop()
            else:
                stack.append((mm - 1, inner))
    return memo[m, n]


# Node kinds built from the five classical rules plus the kernel's
# arithmetic sugar, all primitive recursive as functions.  Minimization,
# oracle queries and anything that can run a stored index are excluded.
_PR_SAFE = frozenset((0, 1, 2, 3, 4, 7, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21))


def is_primitive_recursive(p) -> bool:
    """True iff the tree uses no minimization, oracle, or stored-index node."""
    from rlab.ips.ast import (
        T_COMP, T_IFZ, T_PRIMREC, _BIN, _UNARY,
    )

    k = p.kind
    if k not in _PR_SAFE:
        return False
    if k == T_COMP:
        return is_primitive_recursive(p.h) and all(
            is_primitive_recursive(g) for g in p.gs
        )
    if k == T_PRIMREC:
        return is_primitive_recursive(p.base) and is_primitive_recursive(p.step)
    if k == T_IFZ:
        return all(
            is_primitive_recursive(q) for q in (p.cond, p.then, p.other)
        )
    if k in _UNARY:
        return is_primitive_recursive(p.a)
    if k in _BIN:
        return is_primitive_recursive(p.a) and is_primitive_recursive(p.b)
    return True
