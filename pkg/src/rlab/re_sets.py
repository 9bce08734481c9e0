"""Recursively enumerable sets as stage-indexed approximations.

The e-th r.e. set is the domain of the e-th unary program; its stage-s
approximation runs each candidate with fuel s.  The three classical
presentations (domain, image, computable enumeration) are connected by
index transformations that build actual programs, so every equivalence
here is witnessed by something the interpreter can run.  Exact
extensional statements are undecidable, so the tests phrase them as
fuel-translated membership agreements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Union

from rlab.ips.ast import (
    Add,
    Comp,
    Const,
    Eq,
    Fst,
    IfZ,
    Mod,
    Monus,
    Mu,
    Mul,
    Pair,
    PrimRec,
    Proj,
    Snd,
    Um,
    UmBounded,
    encode,
    smn,
)
from rlab.ips.machine import evaluate
from rlab.ips.transforms import prog_case_table, prog_const

__all__ = [
    "w_mem",
    "k_mem",
    "StageSet",
    "dom_to_image",
    "image_to_enum",
    "enum_to_dom",
    "post_combiner",
    "combiner_template",
    "finset_to_windex",
    "self_halting_index",
    "prog_domain_evens",
    "prog_domain_odds",
    "CorpusEntry",
    "TestCorpus",
    "standard_corpus",
]


def w_mem(e: int, x: int, s: int) -> bool:
    """x is in the stage-s approximation of the e-th r.e. set."""
    return bool(evaluate(e, (x,), fuel=s))


def k_mem(e: int, s: int) -> bool:
    """e is in the stage-s approximation of the self-halting set."""
    return w_mem(e, e, s)


def self_halting_index() -> int:
    """An index whose r.e. set is exactly the self-halting set."""
    return encode(Um((Proj(1, 1), Proj(1, 1))))


class StageSet:
    """Monotone stage-indexed approximation of an r.e. set.

    Three generator modes: `domain` collects arguments on which an index
    converges, `image` collects its values, `construction` delegates to a
    callable stage -> iterable (used by the priority constructions).  Each
    stage is computed deterministically and cached; readers may share an
    instance as long as only one thread populates new stages, and the pure
    recompute path makes even that restriction droppable.
    """

    def __init__(self, mode: str,
                 generator: Union[int, Callable[[int], Iterable[int]]]):
        if mode not in ("domain", "image", "construction"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.generator = generator
        self._cache: dict[int, frozenset[int]] = {}

    @classmethod
    def domain(cls, e: int) -> "StageSet":
        return cls("domain", e)

    @classmethod
    def image(cls, e: int) -> "StageSet":
        return cls("image", e)

    @classmethod
    def construction(cls, fn: Callable[[int], Iterable[int]]) -> "StageSet":
        return cls("construction", fn)

    def at(self, s: int) -> frozenset[int]:
        got = self._cache.get(s)
        if got is None:
            got = frozenset(self._compute(s))
            self._cache[s] = got
        return got

    def _compute(self, s: int) -> Iterable[int]:
        # candidates are capped by the stage, so stages stay finite
        if self.mode == "domain":
            e = self.generator
            return (x for x in range(s + 1) if evaluate(e, (x,), fuel=s))
        if self.mode == "image":
            e = self.generator
            outs = (evaluate(e, (m,), fuel=s) for m in range(s + 1))
            return (out.value for out in outs if out)
        return self.generator(s)

    def member(self, x: int, s: int) -> bool:
        return x in self.at(s)


# The transformations below follow one packaging rule: user indices are
# bound onto fixed templates with smn, never embedded as deep constants.
# A constant buried under d pairing levels multiplies the user index's
# size by 2^d; a frozen leading value costs a flat factor of about 4, so
# chained transformations stay linear-size and decodable.

# dom_to_image template, args (e, x): deliver x itself, but only after a
# run of e on x comes back (the pair is strict in both children).
_D2I_T = encode(Fst(Pair(Proj(2, 2), Um((Proj(2, 1), Proj(2, 2))))))


def dom_to_image(e: int) -> int:
    """Index whose image is the domain of e."""
    return smn(_D2I_T, (e,))


# Dovetail components.  A cell k codes a (stage, argument) pair in the
# coding layer's pairing order; both coordinates are read with the
# interpreter's own pairing primitives.  Components receive the indices
# of the programs they call as plain arguments: a projection costs a
# dozen bits where an embedded constant would double the callee's size
# once per surrounding pairing level.

# cell(e, k): coded outcome of running e on the cell's argument with the
# cell's stage as fuel (0 = cut, 1+v = value v).
_CELL_T = encode(UmBounded((Proj(2, 1), Fst(Proj(2, 2)), Snd(Proj(2, 2)))))

# dead(k, v, ci): 1 unless cell k converged to the coded outcome v and no
# cell j < k already delivered the same outcome.  Alive cells are exactly
# the first achievers of each image value.
_DEAD = encode(PrimRec(
    IfZ(Proj(2, 1), Const(1), Const(0)),
    IfZ(Eq(Um((Proj(4, 4), Proj(4, 1))), Proj(4, 3)), Const(1), Proj(4, 2))))

# dead2(dx, k, ci): dead at k with the cell outcome computed in place.
_DEAD2 = encode(Um((Proj(3, 1), Proj(3, 2),
                    Um((Proj(3, 3), Proj(3, 2))), Proj(3, 3))))

# next(b, ci, d2, dx): least alive cell at or beyond b.
_NEXT = encode(Add(Proj(4, 1), Mu(
    Um((Proj(5, 4), Proj(5, 5), Add(Proj(5, 2), Proj(5, 1)), Proj(5, 3))))))

# kix(nx, dx, d2, ci, n): position of the n-th alive cell, found by one
# incremental sweep (each step resumes just past the previous hit).
# Frozen indices are ordered largest first: trailing list slots sit under
# more pairing levels and double the stored value once per level.
_KIX_BASE = Um((Proj(4, 1), Const(0), Proj(4, 4), Proj(4, 2), Proj(4, 3)))
_KIX_STEP = Um((Proj(6, 3), Add(Proj(6, 2), Const(1)),
                Proj(6, 6), Proj(6, 4), Proj(6, 5)))
_KIX_T = encode(Comp(PrimRec(_KIX_BASE, _KIX_STEP),
                     (Proj(5, 5), Proj(5, 1), Proj(5, 3), Proj(5, 2),
                      Proj(5, 4))))

# Sweep with the helper indices pre-bound; runtime arguments (ci, n).
# Shared by every enumerator, so its one-time decode is amortised and the
# user program never multiplies through the helper list.
_KIX_CORE = smn(_KIX_T, (_NEXT, _DEAD, _DEAD2))

# value extraction, args (ci, kp, n): run the cell at the n-th hit.
_X_T = encode(Monus(Um((Proj(3, 1), Um((Proj(3, 2), Proj(3, 1),
                                        Proj(3, 3))))),
                    Const(1)))


def image_to_enum(e: int) -> int:
    """Index enumerating the image of e injectively by dovetailing.

    Sweep cells coding (stage, argument) pairs; a cell emits when its
    bounded run converges and no earlier cell produced the same value, so
    each image element is listed exactly once, at its first appearance.
    The n-th call returns the n-th emitted value and diverges when the
    image holds no more than n values.  Cells follow the pairing order of
    the coding layer rather than a stage-major sweep; both visit every
    (stage, argument) pair once, and the pairing decode is a primitive of
    the interpreter instead of an arithmetic search.
    """
    ci = smn(_CELL_T, (e,))
    return smn(smn(_X_T, (ci,)), (_KIX_CORE,))


# enum_to_dom template, args (e, n): least position where e delivers n.
_E2D_T = encode(Mu(Eq(Um((Proj(3, 2), Proj(3, 1))), Proj(3, 3))))


def enum_to_dom(e: int) -> int:
    """Index converging exactly on the values e enumerates."""
    return smn(_E2D_T, (e,))


# post_combiner template, args (e1, e2, x): stage sweep, then re-check
# the first set at the winning stage to pick the answer bit.
_PC_STAGE = Mu(Monus(
    Const(1),
    Add(UmBounded((Proj(4, 2), Proj(4, 1), Proj(4, 4))),
        UmBounded((Proj(4, 3), Proj(4, 1), Proj(4, 4))))))
_PC_ANSWER = Eq(UmBounded((Proj(3, 2), Proj(3, 1), Proj(3, 3))), Const(0))
_PC_T = encode(Comp(_PC_ANSWER, (_PC_STAGE, Proj(3, 1), Proj(3, 3))))


def post_combiner(e1: int, e2: int) -> int:
    """Index deciding between two r.e. sets by a stage sweep.

    The result maps x to 1 once x enters the first set's approximation
    and to 0 once it enters the second's, scanning stages upward; it
    diverges when x is in neither.  Intended for disjoint sets; on an
    overlap the earliest stage wins, with the first set checked first at
    a tie, and nothing stronger is promised.
    """
    return smn(_PC_T, (e1, e2))


def combiner_template() -> int:
    """The two-parameter template behind `post_combiner`.

    Freezing (e1, e2) onto it, in that order, is exactly what
    `post_combiner` does; exposed so object-level constructions can
    perform the same freezing with `Freeze` at runtime and land on
    bit-identical indices.
    """
    return _PC_T


def finset_to_windex(d: Iterable[int]) -> int:
    """Index whose r.e. set is exactly the given finite set.

    The body minimizes over a membership indicator that ignores the
    counter: members converge to 0 at once, everything else searches
    forever.  The empty set yields the everywhere-divergent program.
    """
    ind = Const(1)
    for a in sorted(set(d)):
        ind = Mul(ind, Eq(Proj(2, 2), Const(a)))
    return encode(Mu(ind))


def prog_domain_evens() -> int:
    """Index converging exactly on even arguments."""
    return encode(Mu(Mod(Proj(2, 2), Const(2))))


def prog_domain_odds() -> int:
    """Index converging exactly on odd arguments."""
    return encode(Mu(Eq(Mod(Proj(2, 2), Const(2)), Const(1))))


@dataclass(frozen=True)
class CorpusEntry:
    """An index with behavior known by construction, never by solving
    halting: convergence facts come with a settle fuel observed by
    running, divergence facts come from the program's shape."""

    index: int
    behavior: str  # halts-on-self | diverges-on-self | total | enumerates
    prefix: tuple[int, ...] = ()
    settle: int = 0


@dataclass(frozen=True)
class TestCorpus:
    entries: tuple[CorpusEntry, ...]

    def by_behavior(self, behavior: str) -> tuple[CorpusEntry, ...]:
        return tuple(e for e in self.entries if e.behavior == behavior)


def _settle_on_self(e: int, bound: int = 10_000) -> int:
    out = evaluate(e, (e,), fuel=bound)
    if not out:
        raise ValueError("corpus program failed to halt on itself")
    return out.steps


def standard_corpus() -> TestCorpus:
    from rlab.ips.ast import DIVERGE, Succ

    identity = encode(Proj(1, 1))
    succ = encode(Succ())
    double = encode(Mul(Proj(1, 1), Const(2)))
    const7 = prog_const(7)
    diverge = encode(DIVERGE)
    table = prog_case_table({0: 5, 1: 1})
    entries = [
        CorpusEntry(identity, "halts-on-self", settle=_settle_on_self(identity)),
        CorpusEntry(const7, "halts-on-self", settle=_settle_on_self(const7)),
        CorpusEntry(succ, "halts-on-self", settle=_settle_on_self(succ)),
        CorpusEntry(diverge, "diverges-on-self"),
        CorpusEntry(identity, "total"),
        CorpusEntry(succ, "total"),
        CorpusEntry(double, "total"),
        CorpusEntry(const7, "total"),
        CorpusEntry(table, "enumerates", prefix=(5, 1)),
    ]
    return TestCorpus(tuple(entries))
