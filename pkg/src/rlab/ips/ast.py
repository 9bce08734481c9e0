"""Program trees for the indexed programming system.

Every natural number is an index: `decode` never fails, it maps numbers that
flunk structural validation to one fixed divergent program, so "run index e"
is meaningful for all e.  `encode` and `decode` are exact inverses on
well-formed trees.

The first seven node kinds are the classical repertoire (zero, successor,
projection, composition, primitive recursion, minimization) plus an oracle
query for relativized computation.  The remaining kinds form a small
engineering kernel: constants, universal application, step-bounded
interpretation, runtime freezing of arguments, the diagonal pairing, basic
arithmetic, comparisons and a lazy zero-test.  They are ordinary one-step
instructions of the same machine; without them, self-referential indices and
set transformations could not produce or inspect realistic index values
inside any workable step budget, because the bare repertoire constructs
values in unary time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar, Iterable

from rlab.coding import (
    MalformedCodeError,
    list_decode,
    list_encode,
    pair_decode,
    pair_encode,
)

__all__ = [
    "Node",
    "Zero",
    "Succ",
    "Proj",
    "Comp",
    "PrimRec",
    "Mu",
    "OracleQuery",
    "Const",
    "Um",
    "UmBounded",
    "Freeze",
    "IfZ",
    "Pair",
    "Fst",
    "Snd",
    "Add",
    "Monus",
    "Mul",
    "Div",
    "Mod",
    "Eq",
    "Le",
    "Closure",
    "DIVERGE",
    "encode",
    "decode",
    "max_args",
    "smn",
    "pad",
]

# Tags double as interpreter dispatch kinds.  0..6 are fixed so indices of
# classical programs are stable; the kernel extensions follow.
T_ZERO = 0
T_SUCC = 1
T_PROJ = 2
T_COMP = 3
T_PRIMREC = 4
T_MU = 5
T_ORACLE = 6
T_CONST = 7
T_UM = 8
T_UMB = 9
T_FREEZE = 10
T_IFZ = 11
T_PAIR = 12
T_FST = 13
T_SND = 14
T_ADD = 15
T_MONUS = 16
T_MUL = 17
T_DIV = 18
T_MOD = 19
T_EQ = 20
T_LE = 21
T_CLOSURE = 22
T_CLOSURE1 = 23  # single-value closure; leaner payload, same node class

_MAX_TAG = 23


class Node:
    """Base class for program tree nodes."""

    kind: ClassVar[int]

    __slots__ = ()


@dataclass(frozen=True)
class Zero(Node):
    """Constant zero, ignores its arguments."""

    kind: ClassVar[int] = T_ZERO


@dataclass(frozen=True)
class Succ(Node):
    """First argument plus one."""

    kind: ClassVar[int] = T_SUCC


@dataclass(frozen=True)
class Proj(Node):
    """i-th of k arguments, 1-based; missing arguments read as 0."""

    kind: ClassVar[int] = T_PROJ
    k: int
    i: int

    def __post_init__(self) -> None:
        if self.k < 1 or not 1 <= self.i <= self.k:
            raise ValueError(f"bad projection ({self.k}, {self.i})")


@dataclass(frozen=True)
class Comp(Node):
    """h(g1(xs), ..., gm(xs)); strict in every child."""

    kind: ClassVar[int] = T_COMP
    h: Node
    gs: tuple[Node, ...]


@dataclass(frozen=True)
class PrimRec(Node):
    """Iteration on the first argument.

    f(0, xs) = base(xs); f(n+1, xs) = step(n, f(n, xs), xs).
    """

    kind: ClassVar[int] = T_PRIMREC
    base: Node
    step: Node


@dataclass(frozen=True)
class Mu(Node):
    """Least z with g(z, xs) = 0, all smaller values converging nonzero."""

    kind: ClassVar[int] = T_MU
    g: Node


@dataclass(frozen=True)
class OracleQuery(Node):
    """Characteristic value of the oracle at the first argument."""

    kind: ClassVar[int] = T_ORACLE


@dataclass(frozen=True)
class Const(Node):
    """A literal natural, delivered in one step."""

    kind: ClassVar[int] = T_CONST
    value: int


@dataclass(frozen=True)
class Um(Node):
    """Universal application: run the first child's value as an index.

    Children evaluate on the current arguments; the program denoted by the
    first value then runs on the remaining values, on the same step budget.
    """

    kind: ClassVar[int] = T_UM
    gs: tuple[Node, ...]


@dataclass(frozen=True)
class UmBounded(Node):
    """Step-bounded interpretation: (program, budget, args...) children.

    Delivers 1 + value when the indexed program converges within the budget,
    0 otherwise.  The attempted steps are charged to the caller either way.
    """

    kind: ClassVar[int] = T_UMB
    gs: tuple[Node, ...]


@dataclass(frozen=True)
class Freeze(Node):
    """Runtime argument freezing: (program, values...) children.

    Delivers the index of the first value's program with the remaining values
    prepended as constant arguments, exactly as the `smn` transformation
    computes it.
    """

    kind: ClassVar[int] = T_FREEZE
    gs: tuple[Node, ...]


@dataclass(frozen=True)
class IfZ(Node):
    """Lazy zero-test: evaluate `then` if cond is 0, else `other`."""

    kind: ClassVar[int] = T_IFZ
    cond: Node
    then: Node
    other: Node


@dataclass(frozen=True)
class Pair(Node):
    """Diagonal pairing of the two child values."""

    kind: ClassVar[int] = T_PAIR
    a: Node
    b: Node


@dataclass(frozen=True)
class Fst(Node):
    kind: ClassVar[int] = T_FST
    a: Node


@dataclass(frozen=True)
class Snd(Node):
    kind: ClassVar[int] = T_SND
    a: Node


@dataclass(frozen=True)
class Add(Node):
    kind: ClassVar[int] = T_ADD
    a: Node
    b: Node


@dataclass(frozen=True)
class Monus(Node):
    """Truncated subtraction."""

    kind: ClassVar[int] = T_MONUS
    a: Node
    b: Node


@dataclass(frozen=True)
class Mul(Node):
    kind: ClassVar[int] = T_MUL
    a: Node
    b: Node


@dataclass(frozen=True)
class Div(Node):
    """Floor division; division by zero delivers 0."""

    kind: ClassVar[int] = T_DIV
    a: Node
    b: Node


@dataclass(frozen=True)
class Mod(Node):
    """Remainder; modulus zero delivers 0."""

    kind: ClassVar[int] = T_MOD
    a: Node
    b: Node


@dataclass(frozen=True)
class Eq(Node):
    """0 when the child values are equal, 1 otherwise (zero means yes)."""

    kind: ClassVar[int] = T_EQ
    a: Node
    b: Node


@dataclass(frozen=True)
class Le(Node):
    """0 when a <= b, 1 otherwise (zero means yes)."""

    kind: ClassVar[int] = T_LE
    a: Node
    b: Node


@dataclass(frozen=True)
class Closure(Node):
    """A stored partial application: an index plus frozen argument values.

    Running it on xs runs the stored index on ys + xs.  This is the index
    `smn` returns; keeping the payload this shallow matters because the
    diagonal pairing doubles code size per nesting level, and the
    self-reference constructions stack several freezing levels.
    """

    kind: ClassVar[int] = T_CLOSURE
    code: int
    ys: tuple[int, ...]


# The canonical divergent program: mu z . succ(z), which never hits zero.
# Structurally malformed indices decode to this tree.
DIVERGE = Mu(Comp(Succ(), (Proj(2, 1),)))

_BIN = {T_PAIR: Pair, T_ADD: Add, T_MONUS: Monus, T_MUL: Mul, T_DIV: Div,
        T_MOD: Mod, T_EQ: Eq, T_LE: Le}
_UNARY = {T_FST: Fst, T_SND: Snd}
_VARIADIC = {T_UM: Um, T_UMB: UmBounded, T_FREEZE: Freeze}
_VARIADIC_MIN = {T_UM: 1, T_UMB: 2, T_FREEZE: 1}


def encode(p: Node) -> int:
    """Index of a program tree; inverse of `decode` on well-formed trees."""
    k = p.kind
    if k == T_ZERO or k == T_SUCC or k == T_ORACLE:
        return pair_encode(k, 0)
    if k == T_PROJ:
        return pair_encode(k, pair_encode(p.k, p.i))
    if k == T_COMP:
        return pair_encode(
            k, pair_encode(encode(p.h), list_encode([encode(g) for g in p.gs]))
        )
    if k == T_PRIMREC:
        return pair_encode(k, pair_encode(encode(p.base), encode(p.step)))
    if k == T_MU:
        return pair_encode(k, encode(p.g))
    if k == T_CONST:
        return pair_encode(k, p.value)
    if k in _VARIADIC:
        return pair_encode(k, list_encode([encode(g) for g in p.gs]))
    if k == T_IFZ:
        return pair_encode(
            k, pair_encode(encode(p.cond), pair_encode(encode(p.then), encode(p.other)))
        )
    if k in _UNARY:
        return pair_encode(k, encode(p.a))
    if k in _BIN:
        return pair_encode(k, pair_encode(encode(p.a), encode(p.b)))
    if k == T_CLOSURE:
        # Singletons get their own tag so the frozen value sits only two
        # pairing levels deep (4x growth instead of 16x); the self-reference
        # constructions freeze one large value per level, so this is the
        # difference between kilobit and megabit fixed-point indices.
        if len(p.ys) == 1:
            return pair_encode(T_CLOSURE1, pair_encode(p.code, p.ys[0]))
        return pair_encode(k, pair_encode(p.code, list_encode(p.ys)))
    raise ValueError(f"unknown node kind {k}")


class _Malformed(Exception):
    pass


def _strict_decode(n: int) -> Node:
    tag, payload = pair_decode(n)
    if tag > _MAX_TAG:
        raise _Malformed
    if tag == T_ZERO:
        if payload:
            raise _Malformed
        return Zero()
    if tag == T_SUCC:
        if payload:
            raise _Malformed
        return Succ()
    if tag == T_ORACLE:
        if payload:
            raise _Malformed
        return OracleQuery()
    if tag == T_PROJ:
        k, i = pair_decode(payload)
        if k < 1 or not 1 <= i <= k:
            raise _Malformed
        return Proj(k, i)
    if tag == T_COMP:
        hc, gsc = pair_decode(payload)
        try:
            codes = list_decode(gsc)
        except MalformedCodeError:
            raise _Malformed from None
        return Comp(_strict_decode(hc), tuple(_strict_decode(c) for c in codes))
    if tag == T_PRIMREC:
        bc, sc = pair_decode(payload)
        return PrimRec(_strict_decode(bc), _strict_decode(sc))
    if tag == T_MU:
        return Mu(_strict_decode(payload))
    if tag == T_CONST:
        return Const(payload)
    if tag in _VARIADIC:
        try:
            codes = list_decode(payload)
        except MalformedCodeError:
            raise _Malformed from None
        if len(codes) < _VARIADIC_MIN[tag]:
            raise _Malformed
        return _VARIADIC[tag](tuple(_strict_decode(c) for c in codes))
    if tag == T_IFZ:
        cc, rest = pair_decode(payload)
        tc, oc = pair_decode(rest)
        return IfZ(_strict_decode(cc), _strict_decode(tc), _strict_decode(oc))
    if tag == T_CLOSURE:
        cc, lc = pair_decode(payload)
        try:
            ys = list_decode(lc)
        except MalformedCodeError:
            raise _Malformed from None
        if len(ys) == 1:
            raise _Malformed  # canonical form is the singleton tag
        return Closure(cc, tuple(ys))
    if tag == T_CLOSURE1:
        cc, y = pair_decode(payload)
        return Closure(cc, (y,))
    if tag in _UNARY:
        return _UNARY[tag](_strict_decode(payload))
    ac, bc = pair_decode(payload)
    return _BIN[tag](_strict_decode(ac), _strict_decode(bc))


@lru_cache(maxsize=8192)
def decode(n: int) -> Node:
    """Total: structurally malformed indices map to the divergent program."""
    if n < 0:
        raise ValueError("indices are naturals")
    try:
        return _strict_decode(n)
    except _Malformed:
        return DIVERGE


@lru_cache(maxsize=8192)
def max_args(p: Node) -> int:
    """Upper bound on argument positions a program can inspect.

    Evaluation pads missing arguments with zeros, so behavior depends only
    on the first `max_args(p)` arguments.
    """
    k = p.kind
    if k == T_ZERO or k == T_CONST:
        return 0
    if k == T_SUCC or k == T_ORACLE:
        return 1
    if k == T_PROJ:
        return p.i
    if k == T_COMP:
        return max((max_args(g) for g in p.gs), default=0)
    if k == T_PRIMREC:
        return max(1, max_args(p.base) + 1, max_args(p.step) - 1)
    if k == T_MU:
        return max(0, max_args(p.g) - 1)
    if k == T_IFZ:
        return max(max_args(p.cond), max_args(p.then), max_args(p.other))
    if k == T_CLOSURE:
        return max(0, max_args(decode(p.code)) - len(p.ys))
    if k in _VARIADIC:
        return max((max_args(g) for g in p.gs), default=0)
    if k in _UNARY:
        return max_args(p.a)
    return max(max_args(p.a), max_args(p.b))


def smn(e: int, frozen: Iterable[int]) -> int:
    """Index of e with the given values prepended as constant arguments.

    The remaining argument positions pass through, so running the result on
    ys behaves like running e on frozen + ys.
    """
    return _smn_cached(e, tuple(frozen))


@lru_cache(maxsize=512)
def _smn_cached(e: int, xs: tuple[int, ...]) -> int:
    # A Closure node keeps the payload shallow; wrapping in Comp-with-Consts
    # instead would double the bit length five more times per application.
    if not xs:
        return e
    return encode(Closure(e, xs))


def pad(e: int, lower: int) -> int:
    """A behaviorally identical index that is at least `lower`.

    Wraps in identity compositions; each wrap strictly increases the index.
    """
    p = decode(e)
    k = max_args(p)
    passthrough = tuple(Proj(k, j) for j in range(1, k + 1))
    code = encode(p)
    while code < lower:
        p = Comp(p, passthrough)
        code = encode(p)
    return code
