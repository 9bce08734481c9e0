"""Completeness, creativity, and effective undecidability as executable data.

Every notion in this module is carried by a `Witness`: the kind names the
property, and the certificate is present at up to two levels.  `body` is an
index of the indexed programming system computing the certifying function,
for the transforms whose object-level programs stay affordable; `fn` is a
Python mirror of the same arithmetic, for the ones whose inputs or outputs
(indices, interval blocks) are numerically astronomical while remaining
cheap to *describe*.  Where both levels exist they agree bit for bit,
because the mirrors perform the very `smn` freezing the object-level
`Freeze` node performs.

Finite sets travel in three shapes, chosen by the size of their members:

- canonical bitmask codes (bit x set iff x is a member), fine for members
  up to a few thousand -- the interval-block constructions and the wtt
  arrows use these;
- length-prefixed list codes from `rlab.coding`, used inside the
  d-completeness triangle, whose set members are themselves indices and
  would need 2^index bits as a bitmask;
- symbolic `Block` descriptors (lo, size), for sets whose members cannot
  be tabulated at all.

The module also houses the two enumeration engines (a round-robin simple
set and its interval-block d-undecidable variant), deficiency sets and
retraceability, the fixed-point-free arrows into completeness criteria,
and the checkers behind the command line `verify` subcommand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Union

from .coding import block as partition_block
from .ips.ast import (
    Add,
    Comp,
    Const,
    Div,
    Eq,
    Freeze,
    Fst,
    IfZ,
    Le,
    Mod,
    Monus,
    Mu,
    Mul,
    Node,
    OracleQuery,
    Pair,
    PrimRec,
    Proj,
    Snd,
    T_ORACLE,
    Um,
    UmBounded,
    Zero,
    decode,
    encode,
    max_args,
)
from .ips.gadgets import POW2, guard_zero, never
from .ips.machine import Evaluation, evaluate
from .ips.transforms import rec_fm, smn, strong_fp
from .re_sets import (
    combiner_template,
    dom_to_image,
    image_to_enum,
    k_mem,
    post_combiner,
    self_halting_index,
    w_mem,
)

__all__ = [
    "Block",
    "as_blocks",
    "blocks_disjoint",
    "blocks_minus",
    "blocks_union",
    "WITNESS_KINDS",
    "Witness",
    "SetHandle",
    "ContractReport",
    "ReductionReport",
    "EnumEvent",
    "ExtractResult",
    "k_handle",
    "subst_oracle_stage",
    "subst_oracle_program",
    "k_creative_witness",
    "creative_complement_enum",
    "myhill_forward",
    "myhill_backward",
    "mcomplete_to_weu",
    "weu_to_creative",
    "post_simple",
    "post_simple_trace",
    "post_simple_handle",
    "eff_simple_bound",
    "deficiency",
    "retrace_predecessor",
    "retraceable_decide",
    "dweu_deficiency_bound",
    "k_dcomplete_witness",
    "dseu_to_quasicreative",
    "quasicreative_to_dcomplete",
    "dcomplete_to_dseu",
    "simple_dweu",
    "simple_dweu_trace",
    "simple_dweu_handle",
    "strong_array_extract",
    "effsimple_to_fpf",
    "arslanov_reduction",
    "dweu_to_wtt_fpf",
    "wtt_to_dweu",
    "wqc_to_wtt_fpf",
    "wtt_to_wqc",
    "check_m_reduction",
    "check_nd_reduction",
    "contract_check",
]


# ---------------------------------------------------------------------------
# Interval blocks: finite sets too large to tabulate.

@dataclass(frozen=True)
class Block:
    """A nonempty run of consecutive naturals [lo, lo + size).

    The d-undecidability witnesses hand out sets whose members sit beyond
    indices thousands of bits long, so finite sets of this shape stay as
    (lo, size) descriptors with interval arithmetic instead of member
    lists or bitmask codes.
    """

    lo: int
    size: int

    def __post_init__(self) -> None:
        if self.lo < 0 or self.size < 1:
            raise ValueError("blocks are nonempty runs of naturals")

    @property
    def hi(self) -> int:
        return self.lo + self.size - 1

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: "Block") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def members(self, cap: int = 1 << 16) -> range:
        if self.size > cap:
            raise ValueError("block too large to tabulate")
        return range(self.lo, self.lo + self.size)

    def minus(self, other: "Block") -> tuple["Block", ...]:
        if not self.intersects(other):
            return (self,)
        parts = []
        if self.lo < other.lo:
            parts.append(Block(self.lo, other.lo - self.lo))
        if other.hi < self.hi:
            parts.append(Block(other.hi + 1, self.hi - other.hi))
        return tuple(parts)


Blocks = tuple[Block, ...]


def as_blocks(v: Union[Block, Iterable]) -> Blocks:
    """Normalize a finite set to sorted disjoint blocks.

    Accepts a single Block, an iterable of Blocks, or an iterable of
    naturals (consecutive runs are merged)."""
    if isinstance(v, Block):
        return (v,)
    items = list(v)
    if not items:
        return ()
    if all(isinstance(b, Block) for b in items):
        return blocks_union(tuple(items), ())
    xs = sorted(set(items))
    out = []
    lo = prev = xs[0]
    for x in xs[1:]:
        if x == prev + 1:
            prev = x
        else:
            out.append(Block(lo, prev - lo + 1))
            lo = prev = x
    out.append(Block(lo, prev - lo + 1))
    return tuple(out)


def blocks_union(a: Blocks, b: Blocks) -> Blocks:
    runs = sorted([*a, *b], key=lambda blk: blk.lo)
    out: list[Block] = []
    for blk in runs:
        if out and blk.lo <= out[-1].hi + 1:
            last = out[-1]
            hi = max(last.hi, blk.hi)
            out[-1] = Block(last.lo, hi - last.lo + 1)
        else:
            out.append(blk)
    return tuple(out)


def blocks_minus(a: Blocks, b: Blocks) -> Blocks:
    out = list(a)
    for cut in b:
        nxt: list[Block] = []
        for blk in out:
            nxt.extend(blk.minus(cut))
        out = nxt
    return tuple(out)


def blocks_disjoint(a: Blocks, b: Blocks) -> bool:
    return not any(x.intersects(y) for x in a for y in b)


# ---------------------------------------------------------------------------
# Witnesses, set handles, reports.

WITNESS_KINDS = frozenset({
    "creative",
    "quasicreative",
    "weakly-quasicreative",
    "weu",
    "d-weu",
    "d-seu",
    "m-reduction",
    "d-reduction",
    "eff-simple-bound",
    "strong-array",
    "retrace",
    "fpf",
})


@dataclass(frozen=True, eq=False)
class SetHandle:
    """An r.e. set as the constructions consume it.

    `membership` is the stagewise approximation (x, s) -> bool, monotone
    in s.  `re_index` presents the same set as the domain of an index;
    `enumeration` as the image of a total repetition-free one.  Either
    index may be absent when the set only exists construction-side.
    """

    name: str
    membership: Callable[[int, int], bool]
    re_index: Optional[int] = None
    enumeration: Optional[int] = None
    enum_fuel: int = 10_000


@dataclass(frozen=True, eq=False)
class Witness:
    """A property certificate.

    `body`, when present, is an index computing the certifying function
    (for finite-set-valued kinds it returns a set code: canonical bitmask
    by default, the length-prefixed list code inside the d-completeness
    triangle).  `fn`, when present, is the Python mirror of the same map
    and may return ints, frozensets, or Blocks.  `use` carries the query
    bound of wtt-flavored certificates, `arity` the size bound of
    d-reductions, and `handle` the set the property speaks about.
    """

    kind: str
    body: Optional[int] = None
    fn: Optional[Callable] = None
    handle: Optional[SetHandle] = None
    use: Optional[Callable[[int], int]] = None
    arity: Optional[int] = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.kind not in WITNESS_KINDS:
            raise ValueError(f"unknown witness kind {self.kind!r}")
        if self.body is None and self.fn is None:
            raise ValueError("a witness needs a body or a mirror")

    def apply(self, *args: int, fuel: int = 100_000):
        """The certificate's value at args, preferring the mirror."""
        if self.fn is not None:
            return self.fn(*args)
        out = evaluate(self.body, args, fuel=fuel)
        if not out:
            raise RuntimeError("witness body did not settle at this fuel")
        return out.value


@dataclass(frozen=True)
class ContractReport:
    contract: str
    instance: str
    stage: int
    verdict: bool
    detail: str = ""


@dataclass(frozen=True)
class ReductionReport:
    samples: tuple[tuple[int, bool, bool], ...]
    agree: bool
    size_violations: tuple[int, ...] = ()


@lru_cache(maxsize=1)
def k_handle() -> SetHandle:
    """The self-halting set with both presentations attached."""
    om = self_halting_index()
    return SetHandle(
        name="self-halting",
        membership=k_mem,
        re_index=om,
        enumeration=image_to_enum(dom_to_image(om)),
        enum_fuel=100_000,
    )


def _expect(w: Witness, *kinds: str) -> None:
    if w.kind not in kinds:
        raise ValueError(f"expected a {' / '.join(kinds)} witness, got {w.kind}")


def _handle_index(w: Witness) -> int:
    if w.handle is None or w.handle.re_index is None:
        raise ValueError("witness carries no r.e. presentation of its set")
    return w.handle.re_index


def _run_value(e: int, args: tuple[int, ...], fuel: int = 200_000) -> int:
    out = evaluate(e, args, fuel=fuel)
    if not out:
        raise RuntimeError("auxiliary index did not settle at this fuel")
    return out.value


# ---------------------------------------------------------------------------
# Object-level plumbing: chained freezing and oracle substitution.

def _chain_smn(template: int, ys: tuple[int, ...]) -> int:
    # One singleton layer per parameter, first parameter innermost; each
    # layer costs a flat factor of the larger side, so big values go last.
    e = template
    for y in ys:
        e = smn(e, (y,))
    return e


def _mentions_oracle(n: Node) -> bool:
    if n.kind == T_ORACLE:
        return True
    for slot in getattr(n, "__dataclass_fields__", ()):
        v = getattr(n, slot)
        if isinstance(v, Node) and _mentions_oracle(v):
            return True
        if isinstance(v, tuple) and any(
                isinstance(g, Node) and _mentions_oracle(g) for g in v):
            return True
    return False


def _substituted(e: int, answer: Callable[[Node, Node], Node]) -> Node:
    """Rewrite oracle program e into a plain program with one extra leading
    argument, every query Comp(OracleQuery(), (q,)) replaced by
    answer(shifted q, reference to the new argument).

    Only the top context is rewritten: queries under Comp heads, Mu, or
    PrimRec see rebound argument lists this shift cannot reach, and
    positional leaves (Succ, bare OracleQuery) read the argument that the
    shift repurposes.  Those shapes are rejected.
    """
    tree = decode(e)
    width = max(1, max_args(tree)) + 1
    param = Proj(width, 1)

    def walk(n: Node) -> Node:
        if isinstance(n, Comp):
            if isinstance(n.h, OracleQuery):
                if len(n.gs) != 1:
                    raise ValueError("oracle query with unexpected arity")
                return answer(walk(n.gs[0]), param)
            if _mentions_oracle(n.h):
                raise ValueError("oracle use inside a rebound context")
            return Comp(n.h, tuple(walk(g) for g in n.gs))
        if isinstance(n, Proj):
            return Proj(n.k + 1, n.i + 1)
        if isinstance(n, (Const, Zero)):
            return n
        if isinstance(n, IfZ):
            return IfZ(walk(n.cond), walk(n.then), walk(n.other))
        if isinstance(n, Pair):
            return Pair(walk(n.a), walk(n.b))
        if isinstance(n, (Fst, Snd)):
            return type(n)(walk(n.a))
        if isinstance(n, (Add, Monus, Mul, Div, Mod, Eq, Le)):
            return type(n)(walk(n.a), walk(n.b))
        if isinstance(n, (Um, UmBounded, Freeze)):
            return type(n)(tuple(walk(g) for g in n.gs))
        raise ValueError(
            f"cannot substitute queries under a {type(n).__name__} node")

    return walk(tree)


def subst_oracle_stage(e: int, a_index: int) -> int:
    """Plain index r with r(s, xs) = e's run on xs, queries q answered by
    the stage-s approximation of the domain of a_index."""
    a = Const(a_index)

    def answer(q: Node, stage: Node) -> Node:
        return IfZ(UmBounded((a, stage, q)), Const(0), Const(1))

    return encode(_substituted(e, answer))


def subst_oracle_program(e: int) -> int:
    """Plain index r with r(d, xs) = e's run on xs, queries q answered by
    the truth value of the program d at q (divergence of d blocks)."""

    def answer(q: Node, d: Node) -> Node:
        return IfZ(Um((d, q)), Const(0), Const(1))

    return encode(_substituted(e, answer))


# ---------------------------------------------------------------------------
# Shared run/freeze templates.

# (f, g, x) -> run f at the value g yields on x.
_APPLY_FG_T = encode(Um((Proj(3, 1), Um((Proj(3, 2), Proj(3, 3))))))

# (f, e, z) -> run e at the value f yields on z.
_APPLY_GF_T = encode(Um((Proj(3, 2), Um((Proj(3, 1), Proj(3, 3))))))

# (t, f, e) -> run f at smn(t, (f, e)).
_CALL_ON_FROZEN_T = encode(
    Um((Proj(3, 2), Freeze((Proj(3, 1), Proj(3, 2), Proj(3, 3))))))

# (t, y1, y2, y3) -> smn(t, (y1, y2, y3)); total.
_SMN3_T = encode(Freeze((Proj(4, 1), Proj(4, 2), Proj(4, 3), Proj(4, 4))))

# (al, pc, f, e) -> run f at smn(pc, (al, e)): feed the candidate decider
# raced between W_al and W_e into the witness f.
_RACE_BODY_T = encode(
    Um((Proj(4, 3), Freeze((Proj(4, 2), Proj(4, 1), Proj(4, 4))))))

_IDENTITY = encode(Proj(1, 1))


# ---------------------------------------------------------------------------
# Creative sets.

def k_creative_witness() -> Witness:
    """The self-halting set is creative with the identity as the witness:
    the diagonal argument pins every disjoint W_e's counterexample to e
    itself."""
    return Witness(
        "creative",
        body=_IDENTITY,
        fn=lambda e: e,
        handle=k_handle(),
        note="identity witness for the self-halting set",
    )


# (d, z): the domain grows by the index d itself: z is accepted when it
# equals d or when d's own run at z converges.
_CHAIN1_T = encode(Mu(Mul(
    Eq(Proj(3, 3), Proj(3, 2)),
    IfZ(UmBounded((Proj(3, 2), Proj(3, 1), Proj(3, 3))), Const(1), Const(0)),
)))

# (d, v, z): same with a detached new element v.
_CHAIN2_T = encode(Mu(Mul(
    Eq(Proj(4, 4), Proj(4, 3)),
    IfZ(UmBounded((Proj(4, 2), Proj(4, 1), Proj(4, 4))), Const(1), Const(0)),
)))

_EMPTY_DOMAIN = encode(never())


def creative_complement_enum(w: Witness, n: int) -> frozenset[int]:
    """n distinct members of the complement, grown from the empty set by
    feeding each round's witness value back in.

    Index growth is one flat freezing layer per round when the witness
    value is the fed index itself (the identity witness), two otherwise;
    this is what keeps eight rounds affordable where a general
    finite-union construction would square the code each time."""
    _expect(w, "creative")
    d = _EMPTY_DOMAIN
    out = []
    for _ in range(n):
        x = w.apply(d)
        out.append(x)
        if x == d:
            d = smn(_CHAIN1_T, (d,))
        else:
            d = _chain_smn(_CHAIN2_T, (d, x))
    return frozenset(out)


# ---------------------------------------------------------------------------
# The Myhill equivalence: m-completeness versus creativity.

def myhill_forward(m: Witness) -> Witness:
    """From an m-reduction of the self-halting set to A, a creative
    witness for A: pull a disjoint W_e back through the reduction, let the
    diagonal find the pulled-back counterexample, push it forward."""
    _expect(m, "m-reduction")
    if m.body is None:
        raise ValueError("the reduction must be present as an index")
    body = _chain_smn(_CALL_ON_FROZEN_T, (_APPLY_GF_T, m.body))
    fidx = m.body

    def fn(e: int) -> int:
        return m.apply(smn(_APPLY_GF_T, (fidx, e)))

    return Witness("creative", body=body, fn=fn, handle=m.handle,
                   note="pulled back through the m-reduction")


# (f, P, z, x): accepted iff z self-halts and x equals f's value at P.
_MB_IN_T = encode(guard_zero(Add(
    Mul(Um((Proj(4, 3), Proj(4, 3))), Const(0)),
    Eq(Proj(4, 4), Um((Proj(4, 1), Proj(4, 2)))),
)))


def myhill_backward(c: Witness, fuel_hint: int = 10_000) -> Witness:
    """From a creative witness for A, an m-reduction of the self-halting
    set to A: the strong fixed point P_z has domain {f(P_z)} when z
    self-halts and empty domain otherwise, so z maps to f(P_z)."""
    _expect(c, "creative")
    if c.body is None:
        raise ValueError("the creative witness must be present as an index")
    fidx = c.body
    master = _chain_smn(_SMN3_T, (_MB_IN_T, fidx))
    fp = strong_fp(master, 1, fuel_hint=fuel_hint)
    body = _chain_smn(_APPLY_FG_T, (fidx, fp.index))

    def fn(z: int) -> int:
        return c.apply(_run_value(fp.index, (z,)))

    note = "singleton-domain fixed point"
    if not fp.certified:
        note += "; fixed point not certified at the given fuel hint"
    return Witness("m-reduction", body=body, fn=fn, handle=c.handle, note=note)


# ---------------------------------------------------------------------------
# Plain effective undecidability.

# (f, e, x): accepted iff the candidate decider e claims f(x) is out.
_WEU_IN_T = encode(guard_zero(Um((Proj(3, 2), Um((Proj(3, 1), Proj(3, 3)))))))


def mcomplete_to_weu(m: Witness) -> Witness:
    """From an m-reduction of the self-halting set to A, a single-spot
    undecidability witness: any candidate decider e errs at f(h_e), where
    h_e accepts exactly the points e claims map outside A."""
    _expect(m, "m-reduction")
    if m.body is None:
        raise ValueError("the reduction must be present as an index")
    body = _chain_smn(_CALL_ON_FROZEN_T, (_WEU_IN_T, m.body))
    fidx = m.body

    def fn(e: int) -> int:
        return m.apply(smn(_WEU_IN_T, (fidx, e)))

    return Witness("weu", body=body, fn=fn, handle=m.handle,
                   note="diagonal against candidate deciders")


def weu_to_creative(w: Witness) -> Witness:
    """From a single-spot undecidability witness for A, a creative one:
    race A against the disjoint W_e into a partial 0/1 decider and aim the
    witness at it."""
    _expect(w, "weu")
    alpha = _handle_index(w)
    pc = combiner_template()
    body = None
    if w.body is not None:
        body = _chain_smn(_RACE_BODY_T, (alpha, pc, w.body))

    def fn(e: int) -> int:
        return w.apply(post_combiner(alpha, e))

    return Witness("creative", body=body, fn=fn, handle=w.handle,
                   note="witness against the two-set race")


# ---------------------------------------------------------------------------
# The round-robin simple set.

@dataclass(frozen=True)
class EnumEvent:
    """One element entering a constructed set: x on behalf of row e."""

    x: int
    row: int
    rule: str
    round: int


@lru_cache(maxsize=64)
def _post_run(budget: int, window: int) -> tuple[EnumEvent, ...]:
    # Round-robin dovetail: row e is born at round e and watches the
    # window of points just above 2e; every open cell gets one step per
    # round, and the whole construction spends exactly `budget` steps.
    cells: dict[tuple[int, int], Evaluation] = {}
    closed: set[int] = set()
    claimed: set[int] = set()
    events: list[EnumEvent] = []
    rnd = 0
    left = budget
    while left > 0:
        for x in range(2 * rnd + 1, 2 * rnd + 1 + window):
            cells[(rnd, x)] = Evaluation(rnd, (x,))
        fired = []
        for (e, x), ev in cells.items():
            if e in closed:
                continue
            if left <= 0:
                break
            left -= 1
            if ev.advance(1):
                fired.append((e, x))
        for e, x in sorted(fired):
            if e in closed:
                del cells[(e, x)]
                continue
            if x in claimed:
                del cells[(e, x)]
                continue
            closed.add(e)
            claimed.add(x)
            events.append(EnumEvent(x=x, row=e, rule="fresh", round=rnd))
        if closed:
            cells = {k: v for k, v in cells.items() if k[0] not in closed}
        rnd += 1
    return tuple(events)


def post_simple_trace(s: int, window: int = 16) -> tuple[EnumEvent, ...]:
    """The enumeration events behind post_simple(s), in entry order."""
    return _post_run(s, window)


def post_simple(s: int, window: int = 16) -> frozenset[int]:
    """Stage-s approximation of the dovetailed simple set.

    Row e contributes at most one element, the first point x > 2e at
    which e's run is seen to converge, least (discovery round, x) first;
    each point is claimed by at most one row.  The search window above 2e
    and the round budget s bound the desk-scale approximation.
    """
    return frozenset(ev.x for ev in _post_run(s, window))


def post_simple_handle() -> SetHandle:
    return SetHandle(name="post-simple",
                     membership=lambda x, s: x in post_simple(s))


def eff_simple_bound() -> Witness:
    """The effective simplicity bound for the round-robin simple set:
    a row whose domain avoids the set has at most 2e + 1 members below
    the window's reach, because the set claims one point in every length-2
    stretch above 2e."""
    return Witness(
        "eff-simple-bound",
        body=encode(Add(Mul(Proj(1, 1), Const(2)), Const(1))),
        fn=lambda e: 2 * e + 1,
        handle=post_simple_handle(),
    )


# ---------------------------------------------------------------------------
# Deficiency sets and retraceability.

def _enum_values(h: SetHandle, upto: int) -> list[int]:
    if h.enumeration is None:
        raise ValueError("handle has no enumeration index")
    vals = []
    for i in range(upto + 1):
        out = evaluate(h.enumeration, (i,), fuel=h.enum_fuel)
        if not out:
            raise RuntimeError(f"enumeration did not settle at {i}")
        vals.append(out.value)
    return vals


def deficiency(h: SetHandle, s: int) -> frozenset[int]:
    """Stage-s view of the non-true stages of h's enumeration: positions
    i <= s followed, within the view, by a smaller value."""
    vals = _enum_values(h, s)
    if len(set(vals)) != len(vals):
        raise ValueError("enumeration repeats on the probed range")
    return frozenset(
        i for i in range(s + 1)
        if any(vals[t] < vals[i] for t in range(i + 1, s + 1)))


def retrace_predecessor(h: SetHandle, s: int, horizon: int) -> Optional[int]:
    """The previous true stage below s, judged at the horizon view.

    Largest t < s whose enumerated prefix is exactly the part of the
    stage-s prefix lying at or below the value at t; absent when no such
    t exists.  Raises when s is not a true stage within the horizon."""
    if horizon < s:
        raise ValueError("horizon must reach the probed stage")
    vals = _enum_values(h, horizon)
    if any(vals[t] < vals[s] for t in range(s + 1, horizon + 1)):
        raise ValueError("not a true stage at this horizon")
    prefix = set(vals[: s + 1])
    for t in range(s - 1, -1, -1):
        if {v for v in prefix if v <= vals[t]} == set(vals[: t + 1]):
            return t
    return None


def retraceable_decide(retrace: Callable[[int], int], b: int, x: int) -> bool:
    """Decide x against the retraced set through a known member b > x:
    iterate the predecessor map b times and watch for x."""
    if x >= b:
        raise ValueError("only points below the known member are decided")
    cur = b
    for _ in range(b):
        cur = retrace(cur)
        if cur == x:
            return True
    return False


# ---------------------------------------------------------------------------
# From batch undecidability to an effectively simple deficiency set.

# Mu body over pairs k = (s, y), context (k, a, e, z): stop when y lands in
# W_e within s, the enumeration's value at y exceeds z, and z is not among
# the first y + 1 enumerated values.
_DEFG_G0 = IfZ(
    UmBounded((Proj(4, 3), Fst(Proj(4, 1)), Snd(Proj(4, 1)))),
    Const(1),
    IfZ(
        Le(Add(Proj(4, 4), Const(1)), Um((Proj(4, 2), Snd(Proj(4, 1))))),
        Comp(
            PrimRec(Const(0),
                    IfZ(Eq(Um((Proj(4, 4), Proj(4, 1))), Proj(4, 3)),
                        Const(1), Proj(4, 2))),
            (Add(Snd(Proj(4, 1)), Const(1)), Proj(4, 4), Proj(4, 2))),
        Const(1)))

# (a, e, z): z is below some enumerated value whose stage is in W_e while
# not yet enumerated itself.
_DEFG_IN_T = encode(Mu(_DEFG_G0))


def dweu_deficiency_bound(dw: Witness, alpha: int, h: SetHandle) -> Callable[[int], int]:
    """The effective simplicity bound for the deficiency set of h's
    enumeration, derived from a batch undecidability witness for the
    enumerated set W_alpha.

    For a row e inside the deficiency set's complement, every stage in
    W_e is true, so the trap domain W_{g(e)} sits inside the enumerated
    set's complement; racing it against W_alpha gives a candidate decider
    the witness must refute, and the refutation caps |W_e| by the largest
    point of the witness batch."""
    _expect(dw, "d-weu")
    if h.enumeration is None:
        raise ValueError("handle has no enumeration index")
    a = h.enumeration

    def bound(e: int) -> int:
        ge = _chain_smn(_DEFG_IN_T, (a, e))
        xi = post_combiner(alpha, ge)
        batch = as_blocks(dw.apply(xi))
        return max(b.hi for b in batch)

    return bound


# ---------------------------------------------------------------------------
# The d-completeness triangle.  Finite sets inside these object-level
# programs travel as length-prefixed list codes (rlab.coding.list_encode):
# their members are indices, far too large for bitmask codes.

def _list_tail(k: Node, lst: Node) -> Node:
    # Spine pointer after k steps: PrimRec drops into the length-prefixed
    # pair chain, so position j holds element j at its Fst.
    return Comp(PrimRec(Snd(Proj(1, 1)), Snd(Proj(3, 2))), (k, lst))


# Scan g over (k, L, e): 0 once k reaches the list length, provided the
# program e returned 0 on every element so far; diverges at the first
# element where e is nonzero or hangs.
_SEU_ALL_ZERO_G = IfZ(
    Eq(Proj(3, 1), Fst(Proj(3, 2))),
    Const(0),
    IfZ(Um((Proj(3, 3), Fst(_list_tail(Proj(3, 1), Proj(3, 2))))),
        Const(1),
        never()))

# (f, e, x): converges to 0 exactly when e returns 0 on every member of
# the list f yields at x.
_DSEU_IN_T = encode(Mul(
    Comp(Mu(_SEU_ALL_ZERO_G), (Um((Proj(3, 1), Proj(3, 3))), Proj(3, 2))),
    Const(0)))

# Membership search g over (k, L, x): 0 at the first position holding x,
# divergence when the list runs out.
_SEU_MEMBER_G = IfZ(
    Eq(Proj(3, 1), Fst(Proj(3, 2))),
    never(),
    IfZ(Eq(Fst(_list_tail(Proj(3, 1), Proj(3, 2))), Proj(3, 3)),
        Const(0),
        Const(1)))

# (f, P, e, x): accepted iff e self-halts and x is in the list f yields
# at P -- the strong fixed point P then has domain f(P) or empty.
_QCDC_IN_T = encode(guard_zero(Add(
    Mul(Um((Proj(4, 3), Proj(4, 3))), Const(0)),
    Mul(Comp(Mu(_SEU_MEMBER_G), (Um((Proj(4, 1), Proj(4, 2))), Proj(4, 4))),
        Const(0)))))

# x -> list code of {x}.
_LIST_SINGLETON_T = encode(Pair(Const(1), Pair(Proj(1, 1), Const(0))))


def k_dcomplete_witness() -> Witness:
    """The self-halting set is d-complete through identity singletons."""
    return Witness(
        "d-reduction",
        body=_LIST_SINGLETON_T,
        fn=lambda e: frozenset({e}),
        handle=k_handle(),
        arity=1,
        note="identity singletons; list-coded body",
    )


def dseu_to_quasicreative(w: Witness) -> Witness:
    """From a batch-inside-the-complement witness, a quasicreative one:
    race the set against the disjoint W_e and hand the candidate decider
    to the batch witness."""
    _expect(w, "d-seu")
    alpha = _handle_index(w)
    pc = combiner_template()
    body = None
    if w.body is not None:
        body = _chain_smn(_RACE_BODY_T, (alpha, pc, w.body))

    def fn(e: int):
        return w.apply(post_combiner(alpha, e))

    return Witness("quasicreative", body=body, fn=fn, handle=w.handle,
                   note="batch witness against the two-set race")


def quasicreative_to_dcomplete(w: Witness, fuel_hint: int = 10_000) -> Witness:
    """From a quasicreative witness, a disjunctive reduction of the
    self-halting set: the strong fixed point P_e has domain f(P_e) when e
    self-halts and empty domain otherwise, and then f(P_e) must meet the
    set exactly when e self-halts."""
    _expect(w, "quasicreative")
    if w.body is None:
        raise ValueError("the quasicreative witness must be present as an index")
    fidx = w.body
    master = _chain_smn(_SMN3_T, (_QCDC_IN_T, fidx))
    fp = strong_fp(master, 1, fuel_hint=fuel_hint)
    body = _chain_smn(_APPLY_FG_T, (fidx, fp.index))

    def fn(e: int):
        return w.apply(_run_value(fp.index, (e,)))

    note = "batch at the singleton-style fixed point"
    if not fp.certified:
        note += "; fixed point not certified at the given fuel hint"
    return Witness("d-reduction", body=body, fn=fn, handle=w.handle,
                   arity=w.arity, note=note)


def dcomplete_to_dseu(w: Witness) -> Witness:
    """From a disjunctive reduction of the self-halting set, a batch
    undecidability witness: h_e self-halts exactly when the candidate
    decider e clears h_e's own batch, so the batch f(h_e) must hold a
    point where e errs."""
    _expect(w, "d-reduction")
    if w.body is None:
        raise ValueError("the reduction must be present as an index")
    body = _chain_smn(_CALL_ON_FROZEN_T, (_DSEU_IN_T, w.body))
    fidx = w.body

    def fn(e: int):
        return w.apply(smn(_DSEU_IN_T, (fidx, e)))

    return Witness("d-seu", body=body, fn=fn, handle=w.handle,
                   arity=w.arity, note="diagonal batch against deciders")


# ---------------------------------------------------------------------------
# A simple set with batch undecidability: interval blocks.

def _block_lo(e: int) -> int:
    return e * (e + 3) // 2


# e -> bitmask code of the e-th partition block (size e + 2).
_SDW_BODY_T = encode(Mul(
    Monus(Comp(POW2, (Add(Proj(1, 1), Const(2)),)), Const(1)),
    Comp(POW2, (Div(Mul(Proj(1, 1), Add(Proj(1, 1), Const(3))), Const(2)),))))


@lru_cache(maxsize=32)
def _sdw_run(budget: int, window: int) -> tuple[EnumEvent, ...]:
    # Same round-robin engine as the simple set, two rules per row: catch
    # the first point of row e's domain beyond its own block, and the
    # first point of the block itself on which row e returns 0.
    cells: dict[tuple[int, int, int], Evaluation] = {}
    done: dict[tuple[int, int], bool] = {}
    claimed: set[int] = set()
    events: list[EnumEvent] = []
    rnd = 0
    left = budget
    while left > 0:
        blk = partition_block(rnd)
        for x in blk:
            cells[(rnd, x, 2)] = Evaluation(rnd, (x,))
        for x in range(blk.stop, blk.stop + window):
            cells[(rnd, x, 1)] = Evaluation(rnd, (x,))
        done[(rnd, 1)] = False
        done[(rnd, 2)] = False
        fired = []
        for (e, x, rule), ev in cells.items():
            if done[(e, rule)]:
                continue
            if left <= 0:
                break
            left -= 1
            out = ev.advance(1)
            if out and (rule == 1 or out.value == 0):
                fired.append((e, x, rule))
        for e, x, rule in sorted(fired):
            if done[(e, rule)]:
                del cells[(e, x, rule)]
                continue
            if x in claimed:
                del cells[(e, x, rule)]
                continue
            done[(e, rule)] = True
            claimed.add(x)
            name = "fresh-beyond-blocks" if rule == 1 else "zero-on-block"
            events.append(EnumEvent(x=x, row=e, rule=name, round=rnd))
        cells = {k: v for k, v in cells.items() if not done[(k[0], k[2])]}
        rnd += 1
    return tuple(events)


def simple_dweu_trace(s: int, window: int = 8) -> tuple[EnumEvent, ...]:
    return _sdw_run(s, window)


def simple_dweu(s: int, window: int = 8) -> tuple[frozenset[int], Witness]:
    """Stage-s approximation of the blockwise simple set, with its batch
    undecidability witness e -> block e.

    Rule "fresh-beyond-blocks" keeps the set simple; rule "zero-on-block"
    plants a disagreement with any row that returns 0 somewhere on its
    own block.  Every block keeps at least one point out of the set: the
    block of row e has e + 2 points, and at most e + 1 enter (one per
    earlier row's first rule, one for e's own second rule)."""
    events = _sdw_run(s, window)
    wit = Witness(
        "d-weu",
        body=_SDW_BODY_T,
        fn=lambda e: Block(_block_lo(e), e + 2),
        handle=simple_dweu_handle(s, window),
        note="whole-block batches",
    )
    return frozenset(ev.x for ev in events), wit


def simple_dweu_handle(s: int, window: int = 8) -> SetHandle:
    def member(x: int, t: int) -> bool:
        return any(ev.x == x for ev in _sdw_run(min(t, s), window))

    return SetHandle(name="simple-dweu", membership=member)


# ---------------------------------------------------------------------------
# Disjoint strong arrays from batch witnesses.

def _interval_char_index(blocks: Blocks) -> int:
    # Total 0/1 program: 0 on the blocks, 1 elsewhere.  Folded with the
    # largest bounds outermost so the pairing growth stays one doubling
    # per block instead of compounding.
    x = Proj(1, 1)
    body: Node = Const(1)
    for b in sorted(blocks, key=lambda blk: blk.lo):
        body = IfZ(Add(Le(Const(b.lo), x), Le(x, Const(b.hi))), Const(0), body)
    return encode(body)


@dataclass(frozen=True)
class ExtractResult:
    sets: tuple[Blocks, ...]
    exhausted: bool
    probes: int


def strong_array_extract(w: Witness, count: int, fuel: int = 1_000_000) -> ExtractResult:
    """Up to count pairwise disjoint batches meeting the set's complement.

    Feeds the witness the characteristic index of the current guess G,
    yields the returned batch when it avoids everything yielded so far,
    and otherwise deletes it from the guess.  Fuel is charged per probe by
    the bit length of the characteristic index, since that is what grows
    as the guess accumulates astronomical blocks."""
    _expect(w, "d-weu", "d-seu")
    guess: Blocks = ()
    yielded: Blocks = ()
    out: list[Blocks] = []
    spent = 0
    probes = 0
    while len(out) < count:
        ci = _interval_char_index(guess)
        spent += max(1, ci.bit_length())
        probes += 1
        if spent > fuel:
            return ExtractResult(tuple(out), True, probes)
        batch = as_blocks(w.apply(ci))
        if not batch:
            return ExtractResult(tuple(out), True, probes)
        if blocks_disjoint(batch, yielded):
            out.append(batch)
            yielded = blocks_union(yielded, batch)
            guess = blocks_union(guess, batch)
        else:
            guess = blocks_minus(guess, batch)
    return ExtractResult(tuple(out), False, probes)


# ---------------------------------------------------------------------------
# Fixed-point-free functions and the completeness criterion.

# (b, x): accepted iff the oracle rejects x and at most b oracle-rejected
# points lie below x -- the first b + 1 points of the complement.
_FPF_CORE_T = encode(guard_zero(Add(
    Comp(OracleQuery(), (Proj(2, 2),)),
    Monus(
        Comp(
            PrimRec(Const(0),
                    Add(Proj(2, 2),
                        Monus(Const(1), Comp(OracleQuery(), (Proj(2, 1),))))),
            (Proj(2, 2),)),
        Proj(2, 1)))))


def effsimple_to_fpf(bound: Callable[[int], int], a: SetHandle) -> Callable[[int], int]:
    """From an effective simplicity bound for a, a fixed-point-free map:
    g(e)'s domain holds the first bound(e) + 1 points of a's complement,
    one more than any row avoiding a may have."""
    del a  # the oracle is supplied at run time; the bound is what matters

    def g(e: int) -> int:
        return smn(_FPF_CORE_T, (bound(e),))

    return g


# (self, z, R, x): wait for x's self-halting stage, ask the substituted
# oracle program R at that stage for a replacement index, run it on z.
_ARS_SX = Mu(IfZ(UmBounded((Proj(5, 5), Proj(5, 1), Proj(5, 5))),
                 Const(1), Const(0)))
_ARS_T = encode(Um((Um((Proj(4, 3), _ARS_SX, Proj(4, 1))), Proj(4, 2))))


def arslanov_reduction(e_fpf: int, a: SetHandle, x: int,
                       fuel: int = 1_000_000) -> Optional[bool]:
    """Best-effort run of the completeness criterion's reduction: decide
    x's self-halting through a fixed-point-free a-oracle program.

    The knot g_x runs e_fpf against the stage-s_x view of a (s_x being
    x's own settling stage) and defers to the returned index, so e_fpf's
    convergence stage on g_x bounds s_x.  The stage search doubles the
    joint fuel-and-oracle stage until e_fpf settles; the verdict is x's
    self-halting approximation there.  Absent when the fuel runs out;
    with a genuinely fixed-point-free e_fpf and a settled instance the
    definite verdict is correct."""
    if a.re_index is None:
        raise ValueError("handle needs a domain index for stage substitution")
    r = subst_oracle_stage(e_fpf, a.re_index)
    gx = rec_fm(_ARS_T, (r, x))
    t = 8
    while t <= fuel:
        out = evaluate(e_fpf, (gx,),
                       oracle=lambda q, s=t: a.membership(q, s), fuel=t)
        if out:
            return k_mem(x, t)
        t *= 2
    return None


# ---------------------------------------------------------------------------
# wtt-flavored arrows.  Finite sets here are bitmask codes: members are
# small naturals (interval blocks near the origin), not indices.

def _bit_of(code: Node, pos: Node) -> Node:
    return Mod(Div(code, Comp(POW2, (pos,))), Const(2))


# (f, e, x): on the batch f(e), answer the oracle's verdict at x; off it,
# diverge.
_WTT_FPF_IN_T = encode(IfZ(
    _bit_of(Um((Proj(3, 1), Proj(3, 2))), Proj(3, 3)),
    never(),
    Comp(OracleQuery(), (Proj(3, 3),))))

# (f, e, x): accepted iff x is on the batch f(e) and the oracle rejects x.
_WQC_FPF_IN_T = encode(guard_zero(Add(
    Monus(Const(1), _bit_of(Um((Proj(3, 1), Proj(3, 2))), Proj(3, 3))),
    Comp(OracleQuery(), (Proj(3, 3),)))))

# (e, x): accepted iff the program e returns 0 at x -- the diagonal that
# disagrees with e somewhere on every total 0/1 claim about self-halting.
_KN_T = encode(guard_zero(Um((Proj(2, 1), Proj(2, 2)))))


def _max_hi(v: Union[Block, Iterable]) -> int:
    return max(b.hi for b in as_blocks(v))


def dweu_to_wtt_fpf(w: Witness, a: SetHandle) -> Witness:
    """From a batch undecidability witness, a fixed-point-free map with
    bounded oracle use: g(e) copies the oracle's verdicts on the batch
    f(e), so a fixed point would make e decide the set on its own batch."""
    _expect(w, "d-weu")
    if w.body is None:
        raise ValueError("the witness must be present as an index")
    del a  # the oracle is supplied at run time
    fidx = w.body
    sets = w.fn if w.fn is not None else (
        lambda e: as_blocks(  # bitmask decode through the body
            _decode_mask(_run_value(fidx, (e,)))))

    def fn(e: int) -> int:
        return _chain_smn(_WTT_FPF_IN_T, (fidx, e))

    def use(e: int) -> int:
        return _max_hi(sets(e)) + 1

    return Witness("fpf", fn=fn, use=use, handle=w.handle,
                   note="oracle copy on the witness batches; bitmask flavor")


def _decode_mask(n: int) -> frozenset[int]:
    out = set()
    i = 0
    while n:
        if n & 1:
            out.add(i)
        n >>= 1
        i += 1
    return frozenset(out)


def wtt_to_dweu(a_index: int, usebound: Callable[[int], int]) -> Witness:
    """From a use-bounded oracle decision of self-halting, a batch
    undecidability witness: run the oracle program against the candidate
    decider's own claims, diagonalize, and blame the disagreement on the
    queried initial segment."""
    sub = subst_oracle_program(a_index)

    def g(e: int) -> int:
        return smn(sub, (e,))

    def fn(x: int) -> Block:
        return Block(0, usebound(smn(_KN_T, (g(x),))) + 1)

    return Witness("d-weu", fn=fn, handle=k_handle(),
                   note="initial-segment batches from the use bound")


def wqc_to_wtt_fpf(w: Witness, a: SetHandle) -> Witness:
    """From a weakly quasicreative witness, a fixed-point-free map with
    bounded use: g(e)'s domain is the batch minus the set, so a fixed
    point would put some batch point inside the complement yet outside
    its own domain."""
    _expect(w, "weakly-quasicreative", "quasicreative")
    if w.body is None:
        raise ValueError("the witness must be present as an index")
    del a
    fidx = w.body
    sets = w.fn if w.fn is not None else (
        lambda e: _decode_mask(_run_value(fidx, (e,))))

    def fn(e: int) -> int:
        return _chain_smn(_WQC_FPF_IN_T, (fidx, e))

    def use(e: int) -> int:
        return _max_hi(sets(e)) + 1

    return Witness("fpf", fn=fn, use=use, handle=w.handle,
                   note="batch-minus-set domains; bitmask flavor")


def wtt_to_wqc(w: Witness) -> Witness:
    """From a batch undecidability witness, a weakly quasicreative one:
    the batch aimed at the two-set race meets the complement beyond the
    disjoint W_e."""
    _expect(w, "d-weu")
    alpha = _handle_index(w)
    pc = combiner_template()
    body = None
    if w.body is not None:
        body = _chain_smn(_RACE_BODY_T, (alpha, pc, w.body))

    def fn(e: int):
        return w.apply(post_combiner(alpha, e))

    return Witness("weakly-quasicreative", body=body, fn=fn, handle=w.handle,
                   note="batch witness against the two-set race")


# ---------------------------------------------------------------------------
# Reduction checkers and the contract dispatch.

def check_m_reduction(f: Callable[[int], int],
                      a_mem: Callable[[int, int], bool],
                      b_mem: Callable[[int, int], bool],
                      samples: Iterable[int], s: int) -> ReductionReport:
    """Stage-s agreement of x in A versus f(x) in B over the samples."""
    rows = tuple((x, bool(a_mem(x, s)), bool(b_mem(f(x), s))) for x in samples)
    return ReductionReport(rows, all(a == b for _, a, b in rows))


def check_nd_reduction(n: int, f: Callable[[int], Iterable[int]],
                       a_mem: Callable[[int, int], bool],
                       b_mem: Callable[[int, int], bool],
                       samples: Iterable[int], s: int) -> ReductionReport:
    """Stage-s agreement of x in A versus B meeting f(x), with the size
    bound |f(x)| <= n flagged per violating sample."""
    rows = []
    bad = []
    for x in samples:
        targets = list(f(x))
        if len(targets) > n:
            bad.append(x)
        rows.append((x, bool(a_mem(x, s)),
                     any(b_mem(z, s) for z in targets)))
    rows = tuple(rows)
    return ReductionReport(rows, all(a == b for _, a, b in rows), tuple(bad))


def _probe_members(v: Union[Block, Iterable], cap: int = 64) -> Optional[list[int]]:
    blocks = as_blocks(v)
    if sum(b.size for b in blocks) > cap:
        return None
    out: list[int] = []
    for b in blocks:
        out.extend(b.members(cap))
    return out


def contract_check(w: Witness, handle: SetHandle, e: int, stage: int,
                   fuel: Optional[int] = None) -> ContractReport:
    """One stage-bounded check of a witness's defining clause at e.

    Supports the kinds the command line exercises; the clause is checked
    against the handle's stage-`stage` approximation, with `fuel` (default
    10 * stage) bounding any candidate runs involved."""
    fuel = 10 * stage if fuel is None else fuel
    inst = f"e={e}"
    if w.kind == "creative":
        y = w.apply(e)
        ok = not handle.membership(y, stage) and not w_mem(e, y, stage)
        return ContractReport("creative", inst, stage, ok,
                              f"value {y} against the set and W_e")
    if w.kind == "m-reduction":
        y = w.apply(e)
        left = k_mem(e, stage)
        right = bool(handle.membership(y, stage))
        return ContractReport("m-reduction", inst, stage, left == right,
                              f"self-halting {left} vs image {right}")
    if w.kind == "weu":
        y = w.apply(e)
        out = evaluate(e, (y,), fuel=fuel)
        if not out:
            return ContractReport("weu", inst, stage, True,
                                  "candidate diverged at the witness spot")
        claim = bool(out.value)
        actual = bool(handle.membership(y, stage))
        return ContractReport("weu", inst, stage, claim != actual,
                              f"claim {claim} vs approximation {actual}")
    if w.kind in ("d-weu", "d-seu"):
        members = _probe_members(w.apply(e))
        if members is None:
            return ContractReport(w.kind, inst, stage, True,
                                  "batch too large to scan; vacuous")
        claims = []
        for z in members:
            out = evaluate(e, (z,), fuel=fuel)
            if not out:
                return ContractReport(w.kind, inst, stage, True,
                                      f"candidate diverged at {z}; vacuous")
            claims.append((z, bool(out.value)))
        ok = any(c != bool(handle.membership(z, stage)) for z, c in claims)
        detail = f"scanned {len(claims)} batch points"
        if w.kind == "d-seu":
            inside = [z for z, _ in claims if handle.membership(z, stage)]
            if inside:
                ok = False
                detail += f"; batch meets the set at {inside[:3]}"
        return ContractReport(w.kind, inst, stage, ok, detail)
    if w.kind == "eff-simple-bound":
        limit = w.apply(e)
        seen = [x for x in range(stage + 1) if w_mem(e, x, stage)]
        inside = [x for x in seen if handle.membership(x, stage)]
        if inside:
            return ContractReport("eff-simple-bound", inst, stage, True,
                                  "row meets the set; premise fails, vacuous")
        return ContractReport("eff-simple-bound", inst, stage,
                              len(seen) <= limit,
                              f"{len(seen)} enumerated <= bound {limit}")
    raise ValueError(f"no contract checker for kind {w.kind!r}")
