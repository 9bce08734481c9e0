"""Core tests: index coding of program trees and the step-counted machine.

Expected step counts are derived by hand from the charging rules (1 per
node entry, +1 per oracle query, +1 per minimization attempt) and frozen
here; they must never drift.
"""

import random

import pytest

from rlab.ips.ast import (
    DIVERGE,
    Add,
    Closure,
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
    Succ,
    Um,
    UmBounded,
    Zero,
    decode,
    encode,
    max_args,
    pad,
    smn,
)
from rlab.ips.machine import (
    OUT_OF_FUEL,
    Converged,
    Evaluation,
    evaluate,
)

FUEL = 10_000

PRED = PrimRec(Zero(), Proj(3, 1))  # f(0)=0, f(n+1)=n
ADD = PrimRec(Proj(1, 1), Comp(Succ(), (Proj(3, 2),)))  # iterated successor


def test_known_encodings():
    assert encode(Zero()) == 0
    assert encode(Succ()) == 1
    assert encode(Proj(2, 1)) == 52
    assert decode(0) == Zero()
    assert decode(1) == Succ()


def test_proj_validation():
    with pytest.raises(ValueError):
        Proj(0, 1)
    with pytest.raises(ValueError):
        Proj(2, 3)
    with pytest.raises(ValueError):
        Proj(2, 0)


def _random_tree(rng, depth):
    if depth == 0:
        leaf = rng.randrange(4)
        if leaf == 0:
            return Zero()
        if leaf == 1:
            return Succ()
        if leaf == 2:
            k = rng.randint(1, 4)
            return Proj(k, rng.randint(1, k))
        return Const(rng.randrange(50))
    sub = lambda: _random_tree(rng, depth - 1)
    pick = rng.randrange(13)
    if pick == 0:
        return Comp(sub(), tuple(sub() for _ in range(rng.randrange(3))))
    if pick == 1:
        return PrimRec(sub(), sub())
    if pick == 2:
        return Mu(sub())
    if pick == 3:
        return OracleQuery()
    if pick == 4:
        return Um(tuple(sub() for _ in range(rng.randint(1, 3))))
    if pick == 5:
        return UmBounded(tuple(sub() for _ in range(rng.randint(2, 4))))
    if pick == 6:
        return Freeze(tuple(sub() for _ in range(rng.randint(1, 3))))
    if pick == 7:
        return IfZ(sub(), sub(), sub())
    if pick == 8:
        ys = tuple(rng.randrange(9) for _ in range(rng.randrange(3)))
        return Closure(rng.randrange(60), ys)
    ctor = rng.choice([Pair, Add, Monus, Mul, Div, Mod, Eq, Le])
    return ctor(sub(), sub())


def test_encode_decode_roundtrip_random():
    rng = random.Random(20_240_131)
    for _ in range(400):
        tree = _random_tree(rng, rng.randint(1, 4))
        assert decode(encode(tree)) == tree


def test_decode_total_and_inverse_on_small_indices():
    diverge_code = encode(DIVERGE)
    for n in range(20_000):
        tree = decode(n)
        assert isinstance(tree, Node)
        back = encode(tree)
        # Well-formed indices reencode to themselves; the rest collapse to
        # the canonical divergent program.
        assert back == n or (tree == DIVERGE and back == diverge_code)


def test_malformed_indices_diverge():
    # pair(0, 1) = 2 claims to be a zero node with junk payload.
    assert decode(2) == DIVERGE
    assert evaluate(2, (), fuel=500) is OUT_OF_FUEL


# --- machine semantics, frozen step counts -------------------------------

def test_leaf_steps():
    assert evaluate(Zero(), (), fuel=FUEL) == Converged(0, 1, 0)
    assert evaluate(Succ(), (4,), fuel=FUEL) == Converged(5, 1, 0)
    assert evaluate(Proj(3, 2), (7, 8, 9), fuel=FUEL) == Converged(8, 1, 0)
    assert evaluate(Const(41), (), fuel=FUEL) == Converged(41, 1, 0)


def test_argument_padding_and_excess():
    assert evaluate(Succ(), (), fuel=FUEL).value == 1
    assert evaluate(Proj(5, 5), (1, 2), fuel=FUEL).value == 0
    assert evaluate(Zero(), (9, 9, 9, 9), fuel=FUEL).value == 0


def test_primrec_pred_add():
    for n in (0, 1, 2, 7, 100):
        assert evaluate(PRED, (n,), fuel=FUEL).value == max(0, n - 1)
    # 1 entry + 1 base + 3 iterations x (Comp + Succ + Proj) = 11
    assert evaluate(ADD, (3, 4), fuel=FUEL) == Converged(7, 11, 0)
    assert evaluate(ADD, (0, 9), fuel=FUEL).value == 9


def test_mu_search_steps():
    find = Mu(Eq(Proj(2, 1), Proj(2, 2)))
    # 1 entry + 10 attempts x (1 + Eq&projs 3) = 41
    assert evaluate(find, (9,), fuel=FUEL) == Converged(9, 41, 0)


def test_fuel_boundary_exact():
    assert evaluate(ADD, (3, 4), fuel=10) is OUT_OF_FUEL
    assert evaluate(ADD, (3, 4), fuel=11) == Converged(7, 11, 0)


def test_fuel_monotone_random():
    rng = random.Random(97)
    for _ in range(150):
        tree = _random_tree(rng, rng.randint(1, 3))
        args = tuple(rng.randrange(6) for _ in range(rng.randrange(3)))
        out = evaluate(tree, args, fuel=300)
        if isinstance(out, Converged):
            assert out.steps <= 300
            assert evaluate(tree, args, fuel=300 + rng.randint(1, 500)) == out


def test_resume_matches_single_shot():
    rng = random.Random(5)
    one = evaluate(ADD, (30, 4), fuel=FUEL)
    ev = Evaluation(ADD, (30, 4))
    out = None
    while out is None:
        out = ev.advance(rng.randint(1, 9))
    assert out == one


def test_divergence_burns_all_fuel():
    assert evaluate(DIVERGE, (3,), fuel=777) is OUT_OF_FUEL


def test_ifz_is_lazy():
    guarded = IfZ(Proj(1, 1), Const(5), Comp(DIVERGE, ()))
    assert evaluate(guarded, (0,), fuel=FUEL).value == 5
    assert evaluate(guarded, (1,), fuel=FUEL) is OUT_OF_FUEL


def test_arith_nodes():
    x, y = Proj(2, 1), Proj(2, 2)
    cases = [
        (Add(x, y), (3, 4), 7),
        (Monus(x, y), (3, 4), 0),
        (Monus(x, y), (9, 4), 5),
        (Mul(x, y), (6, 7), 42),
        (Div(x, y), (17, 5), 3),
        (Div(x, y), (17, 0), 0),
        (Mod(x, y), (17, 5), 2),
        (Mod(x, y), (17, 0), 0),
        (Eq(x, y), (4, 4), 0),
        (Eq(x, y), (4, 5), 1),
        (Le(x, y), (4, 5), 0),
        (Le(x, y), (5, 4), 1),
    ]
    for tree, args, want in cases:
        assert evaluate(tree, args, fuel=FUEL).value == want


def test_pair_nodes_match_meta_coding():
    from rlab.coding import pair_encode

    tree = Pair(Proj(2, 1), Proj(2, 2))
    for a, b in [(0, 0), (3, 5), (12, 0)]:
        assert evaluate(tree, (a, b), fuel=FUEL).value == pair_encode(a, b)
    back = Comp(Add(Fst(Proj(1, 1)), Mul(Const(100), Snd(Proj(1, 1)))), ())
    code = pair_encode(7, 9)
    got = evaluate(Add(Fst(Proj(1, 1)), Mul(Const(100), Snd(Proj(1, 1)))),
                   (code,), fuel=FUEL)
    assert got.value == 7 + 900
    assert isinstance(back, Node)


def test_um_runs_index():
    e = encode(ADD)
    out = evaluate(Um((Const(e), Const(5), Const(6))), (), fuel=FUEL)
    assert out.value == 11
    # charge: ambient nodes (um + 3 consts = 4) + inner add(5,6) = 17
    assert out.steps == 4 + evaluate(ADD, (5, 6), fuel=FUEL).steps


def test_um_bounded_exact_cut():
    pe = encode(PRED)
    # pred(9) alone costs 11 steps: budget 11 admits it, 10 cuts it.
    assert evaluate(PRED, (9,), fuel=FUEL).steps == 11
    win = UmBounded((Const(pe), Const(11), Const(9)))
    lose = UmBounded((Const(pe), Const(10), Const(9)))
    assert evaluate(win, (), fuel=FUEL) == Converged(1 + 8, 15, 0)
    assert evaluate(lose, (), fuel=FUEL) == Converged(0, 14, 0)
    # cut sub-runs still charge what they consumed
    probe = UmBounded((Const(encode(DIVERGE)), Const(50), Const(0)))
    assert evaluate(probe, (), fuel=FUEL) == Converged(0, 54, 0)


def test_um_bounded_nested_outer_cut_wins():
    diverge_code = encode(DIVERGE)
    inner = UmBounded((Const(diverge_code), Const(500), Const(0)))
    outer_prog = encode(inner)
    outer = UmBounded((Const(outer_prog), Const(20), Const(0)))
    out = evaluate(outer, (), fuel=FUEL)
    assert out.value == 0
    assert out.steps == 1 + 3 + 20


def test_oracle_query_semantics():
    odds = lambda x: x % 2 == 1
    prog = Add(OracleQuery(), Const(10))
    out = evaluate(prog, (3,), oracle=odds, fuel=FUEL)
    assert out == Converged(11, 4, 4)  # query costs an extra step; use = 3+1
    out = evaluate(prog, (4,), oracle=odds, fuel=FUEL)
    assert out.value == 10 and out.use == 5
    # no oracle supplied: membership is everywhere false
    assert evaluate(OracleQuery(), (7,), fuel=FUEL).value == 0
    assert evaluate(ADD, (3, 4), fuel=FUEL).use == 0


def test_queried_set_is_tracked():
    prog = Add(OracleQuery(), Comp(OracleQuery(), (Const(12),)))
    ev = Evaluation(prog, (3,), oracle=lambda x: False)
    ev.advance(FUEL)
    assert ev.queried == {3, 12}


def test_freeze_agrees_with_meta_smn():
    e = encode(ADD)
    out = evaluate(Freeze((Const(e), Const(5))), (), fuel=FUEL)
    assert out.value == smn(e, (5,))
    assert evaluate(out.value, (6,), fuel=FUEL).value == 11


def test_closure_prepends_stored_values():
    e = encode(ADD)
    # add(5, 6): 1 entry + 1 base + 5 iterations x 3 = 17; closure adds 1.
    assert evaluate(ADD, (5, 6), fuel=FUEL) == Converged(11, 17, 0)
    assert evaluate(Closure(e, (5,)), (6,), fuel=FUEL) == Converged(11, 18, 0)
    assert evaluate(Closure(e, (5, 6)), (), fuel=FUEL).value == 11
    assert evaluate(Closure(e, ()), (5, 6), fuel=FUEL).value == 11


def test_closure_roundtrip_and_max_args():
    e = encode(ADD)
    cl = Closure(e, (5,))
    assert decode(encode(cl)) == cl
    assert max_args(cl) == 1
    assert max_args(Closure(e, (5, 6))) == 0
    assert max_args(Closure(e, (5, 6, 7))) == 0
    # The stored code decodes lazily, so junk codes still round-trip.
    junk = Closure(2, (1, 2))
    assert decode(encode(junk)) == junk
    assert evaluate(junk, (), fuel=200) is OUT_OF_FUEL


# --- smn and pad ----------------------------------------------------------

def test_smn_behavior():
    e = encode(ADD)
    add5 = smn(e, (5,))
    for y in (0, 1, 9):
        assert evaluate(add5, (y,), fuel=FUEL).value == 5 + y
    pick = smn(encode(Proj(3, 2)), (77,))
    assert evaluate(pick, (4, 5), fuel=FUEL).value == 4
    frozen_all = smn(e, (2, 3))
    assert evaluate(frozen_all, (), fuel=FUEL).value == 5
    assert evaluate(frozen_all, (9, 9, 9), fuel=FUEL).value == 5


def test_pad_changes_index_not_behavior():
    e = encode(ADD)
    e2 = pad(e, e + 1)
    assert e2 > e
    assert evaluate(e2, (3, 4), fuel=FUEL).value == 7
    e3 = pad(e, 10**6)
    assert e3 >= 10**6
    assert evaluate(e3, (3, 4), fuel=FUEL).value == 7


def test_max_args():
    assert max_args(PRED) == 1
    assert max_args(ADD) == 2
    assert max_args(Zero()) == 0
    assert max_args(Mu(Eq(Proj(2, 1), Proj(2, 2)))) == 1
    assert max_args(Comp(Proj(9, 9), ())) == 0
    assert max_args(Um((Proj(4, 4), Proj(2, 1)))) == 4
