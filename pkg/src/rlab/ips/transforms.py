"""Index transformations: program builders and the self-reference suite.

The self-reference constructions all follow one scheme.  Build a tree G
whose first argument will hold G's own index; inside G that index is
turned back into a self-reference by freezing it onto itself (the runtime
counterpart of `smn(g, [g])`).  Because the freeze instruction computes
bit-for-bit the same index arithmetic as the meta-level `smn`, the index
an expression manufactures at run time equals the index the transformation
returned, so fixed points hold exactly rather than merely extensionally.
"""

from __future__ import annotations

from dataclasses import dataclass

from rlab.ips.ast import (
    Add,
    Comp,
    Const,
    Eq,
    Freeze,
    Fst,
    Mu,
    Node,
    Proj,
    Snd,
    Um,
    UmBounded,
    decode,
    encode,
    max_args,
    pad,
    smn,
)
from rlab.ips.gadgets import (
    call_passthrough,
    case_table,
    guard_zero,
    passthrough,
)
from rlab.ips.machine import Converged, evaluate

__all__ = [
    "prog_const",
    "prog_guard_eq",
    "prog_dovetail_search",
    "prog_case_table",
    "self_index_expr",
    "tie_knot",
    "rec_f",
    "rec_fm",
    "FixedPointResult",
    "kleene_fp",
    "strong_fp",
    "smn",
    "pad",
]


def prog_const(c: int) -> int:
    """Index of the everywhere-c function."""
    return encode(Const(c))


def prog_guard_eq(e: int, target: int) -> int:
    """Index converging to 0 on xs iff running e on xs yields `target`."""
    return encode(guard_zero(Eq(call_passthrough(e), Const(target))))


def prog_dovetail_search(e: int) -> int:
    """Index mapping n to the least code (m, s) with e converging to n on m
    within s steps; diverges when n is outside the range of e."""
    t = Proj(2, 1)
    attempt = UmBounded((Const(e), Snd(t), Fst(t)))
    return encode(Mu(Eq(attempt, Add(Const(1), Proj(2, 2)))))


def prog_case_table(mapping: dict[int, int]) -> int:
    """Index of the finite partial function given by the table."""
    return encode(case_table(mapping))


def self_index_expr(arity: int) -> Node:
    """Expression recovering this program's own index, assuming the scheme
    where argument 1 carries the index of the surrounding tree."""
    return Freeze((Proj(arity, 1), Proj(arity, 1)))


def tie_knot(g: Node) -> int:
    """Close the self-reference: freeze G's index as its own first argument."""
    gc = encode(g)
    return smn(gc, (gc,))


def rec_f(e: int) -> int:
    """An index q with: running q on xs = running e on (q, xs).

    Exactly the classical shape: with S the freezing of one argument, take
    g with g-applied-to (z, xs) = e-applied-to (S(z,z), xs), and return
    S(g, g).  Both S applications are the machine's own freeze arithmetic,
    so the self-index e receives is literally the returned number.
    """
    width = 2 + max(0, max_args(decode(e)) - 1)
    template = Um((Proj(width, 1), Freeze((Proj(width, 2), Proj(width, 2))))
                  + tuple(Proj(width, j) for j in range(3, width + 1)))
    g = smn(encode(template), (e,))
    return smn(g, (g,))


def rec_fm(e: int, frozen: tuple[int, ...] | list[int]) -> int:
    """Parametrized self-reference: running the result on xs = running e on
    (result, xs, frozen).

    Uses the flattest index layout (parameters frozen as constants beside
    the self-reference) rather than a packed-tuple detour; the contract is
    the parametrized recursion theorem's, verbatim.
    """
    ys = tuple(frozen)
    rest = max(0, max_args(decode(e)) - 1 - len(ys))
    width = rest + 1
    g = Um((Const(e), self_index_expr(width))
           + tuple(Proj(width, j) for j in range(2, width + 1))
           + tuple(Const(y) for y in ys))
    return tie_knot(g)


@dataclass(frozen=True)
class FixedPointResult:
    """A fixed-point index plus whether the totality probe certified it."""

    index: int
    certified: bool


# Self-application: run the argument on itself.  Its domain is exactly the
# diagonal halting set.
_SELF_APPLY = Um((Proj(1, 1), Proj(1, 1)))


# Composition template, on (x, y, z, a1, a2, a3): run the program x computes
# at (the program y computes at z), on the forwarded arguments.  Factored so
# the inner application sits beside the projections rather than under them;
# flatter trees mean fewer doublings under the diagonal pairing.
_COMPOSE_STEP = Um((Um((Proj(5, 2), Proj(5, 1))),
                    Proj(5, 3), Proj(5, 4), Proj(5, 5)))
_COMPOSE_BODY = Comp(_COMPOSE_STEP,
                     (Um((Proj(6, 2), Proj(6, 3))),
                      Proj(6, 1), Proj(6, 4), Proj(6, 5), Proj(6, 6)))
_COMPOSE_T = encode(_COMPOSE_BODY)

# On (v, z): the index freezing z into v.  Gives composition results the
# shape "fixed code, one stored value", the cheapest self-referential form.
_FREEZE1 = encode(Freeze((Proj(2, 1), Proj(2, 2))))


def compose_indices(x: int, y: int) -> int:
    """An index of a total function: z maps to an index of the function
    "run what x computes at (what y computes at z)"; three argument
    positions forward."""
    return smn(_FREEZE1, (smn(_COMPOSE_T, (x, y)),))


def kleene_fp(e: int, fuel_hint: int = 10_000) -> FixedPointResult:
    """An index n with: running n = running the program whose index e
    computes at n; built by self-applying the composition of e with the
    self-application index.

    The fixed point is the value the self-application actually computes, so
    the construction works for any e; certification reports whether the
    totality probe of e at n converged within fuel_hint.  Results forward
    three argument positions.
    """
    omega = encode(_SELF_APPLY)
    cp = compose_indices(e, omega)
    self_applied = evaluate(omega, (cp,), fuel=max(fuel_hint, 1000))
    assert isinstance(self_applied, Converged)
    n = self_applied.value
    assert n == smn(smn(_COMPOSE_T, (e, omega)), (cp,))
    probe = evaluate(e, (n,), fuel=fuel_hint)
    return FixedPointResult(n, isinstance(probe, Converged))


def strong_fp(e: int, n: int, fuel_hint: int = 10_000) -> FixedPointResult:
    """An index F with: for all z1..zn, the index P that F computes on zs
    satisfies: running P = running the index that e computes on (P, zs).

    The returned index computes, at run time, exactly the parametrized
    self-reference arithmetic of rec_fm applied to the helper "run the
    index e computes at (P, zs)".  Three argument positions forward.
    Probed at zs = all zeros for certification of e's convergence there.
    """
    # Helper a, on (P, x1, x2, x3, e, z1..zn): run what e computes at
    # (P, zs), on the forwarded arguments.
    aw = n + 5
    inner = Um((Proj(aw, 5), Proj(aw, 1))
               + tuple(Proj(aw, j) for j in range(6, aw + 1)))
    a_code = encode(Um((inner, Proj(aw, 2), Proj(aw, 3), Proj(aw, 4))))

    # Knot template t, on (e, a, z1..zn, w, x1, x2, x3) where w is the index
    # freezing (e, a, zs) into t itself: P is recovered as smn(w, (w,)).
    # e leads every stored-value list because it is the one payload of
    # unbounded size, and leading positions double the least.
    tw = n + 6
    t_body = Um((Proj(tw, 2),
                 Freeze((Proj(tw, n + 3), Proj(tw, n + 3))),
                 Proj(tw, n + 4),
                 Proj(tw, n + 5),
                 Proj(tw, n + 6),
                 Proj(tw, 1))
                + tuple(Proj(tw, j) for j in range(3, n + 3)))
    t_code = encode(t_body)

    # F itself: freeze (e, t, a) into a master that computes w then ties the
    # knot.  Building F as one smn keeps it a few stored values deep.
    fw = n + 3
    w_expr = Freeze((Proj(fw, 2), Proj(fw, 1), Proj(fw, 3))
                    + tuple(Proj(fw, j) for j in range(4, fw + 1)))
    master = Comp(Freeze((Proj(1, 1), Proj(1, 1))), (w_expr,))
    f_code = smn(encode(master), (e, t_code, a_code))

    zeros = (0,) * n
    probe_p = evaluate(f_code, zeros, fuel=fuel_hint)
    assert isinstance(probe_p, Converged)
    probe = evaluate(e, (probe_p.value,) + zeros, fuel=fuel_hint)
    return FixedPointResult(f_code, isinstance(probe, Converged))
