"""Stage-indexed r.e. sets and the presentation transformations.

Expected values were computed by running the interpreter directly and
are frozen here; divergence claims are always fuel-bounded and follow
from program shape, never from solving halting.
"""

import pytest

from rlab.ips.ast import DIVERGE, Const, Mul, Proj, encode
from rlab.ips.machine import OUT_OF_FUEL, evaluate
from rlab.ips.transforms import prog_case_table, prog_const
from rlab.re_sets import (
    StageSet,
    dom_to_image,
    enum_to_dom,
    finset_to_windex,
    image_to_enum,
    k_mem,
    post_combiner,
    prog_domain_evens,
    prog_domain_odds,
    self_halting_index,
    standard_corpus,
    w_mem,
)

IDENT = encode(Proj(1, 1))
NEVER = encode(DIVERGE)
TABLE2 = prog_case_table({2: 0})


def test_w_mem_is_fuel_bounded_convergence():
    # membership ignores argument magnitude; only fuel is stage-indexed
    assert w_mem(IDENT, 0, 5)
    assert w_mem(IDENT, 5, 5)
    assert w_mem(IDENT, 77, 5)
    assert not w_mem(NEVER, 0, 1000)
    assert not w_mem(NEVER, 3, 1000)


def test_w_mem_case_table_settles():
    assert not w_mem(TABLE2, 2, 1)
    assert w_mem(TABLE2, 2, 10)
    assert w_mem(TABLE2, 2, 100)
    assert not w_mem(TABLE2, 3, 100_000)


def test_corpus_indices_and_settles():
    corpus = standard_corpus()
    settles = {c.index: c.settle for c in corpus.by_behavior("halts-on-self")}
    # identity, const7, succ all converge on themselves in one step
    assert settles == {25: 1, 112: 1, 1: 1}
    (table,) = corpus.by_behavior("enumerates")
    assert table.prefix == (5, 1)


def test_k_mem_settle_boundary():
    assert k_mem(25, 1)
    assert not k_mem(25, 0)
    assert not k_mem(NEVER, 1_000_000)


def test_k_mem_monotone_sweep():
    ladder = (0, 1, 2, 4, 8, 16, 64, 256, 1000)
    for e in range(200):
        seen = False
        for s in ladder:
            now = k_mem(e, s)
            assert not (seen and not now), (e, s)
            seen = now


def test_self_halting_index_tracks_k():
    omega = self_halting_index()
    assert w_mem(omega, 25, 10_000) == k_mem(25, 10_000)
    assert w_mem(omega, 25, 10_000)
    assert not w_mem(omega, NEVER, 10_000)


@pytest.mark.parametrize("e", [prog_domain_evens(), TABLE2, IDENT])
def test_dom_to_image_membership_agreement(e):
    d2i = dom_to_image(e)
    direct = {x for x in range(21) if evaluate(e, (x,), fuel=10_000)}
    for y in range(21):
        assert w_mem(d2i, y, 10_000) == (y in direct), y


def test_image_enumerator_singleton():
    f = image_to_enum(prog_const(7))
    out = evaluate(f, (0,), fuel=100_000)
    assert out and out.value == 7 and out.steps == 102
    # image has one element: later calls never converge
    assert evaluate(f, (1,), fuel=100_000) is OUT_OF_FUEL
    assert evaluate(f, (2,), fuel=100_000) is OUT_OF_FUEL


def test_image_enumerator_orders_by_first_appearance():
    f = image_to_enum(prog_case_table({0: 5, 1: 1}))
    out0 = evaluate(f, (0,), fuel=100_000)
    out1 = evaluate(f, (1,), fuel=100_000)
    assert (out0.value, out0.steps) == (5, 2299)
    assert (out1.value, out1.steps) == (1, 27852)
    assert evaluate(f, (2,), fuel=100_000) is OUT_OF_FUEL


def test_image_enumerator_injective_on_doubling():
    f = image_to_enum(encode(Mul(Proj(1, 1), Const(2))))
    got = [evaluate(f, (n,), fuel=100_000) for n in range(6)]
    assert [o.value for o in got] == [0, 2, 4, 6, 8, 10]
    assert [o.steps for o in got] == [533, 1362, 2878, 5375, 9198, 14743]


def test_presentation_roundtrip_case_table():
    dd = enum_to_dom(image_to_enum(dom_to_image(TABLE2)))
    out = evaluate(dd, (2,), fuel=200_000)
    assert out and out.steps == 104_946
    assert evaluate(dd, (3,), fuel=200_000) is OUT_OF_FUEL


def test_presentation_roundtrip_total_program():
    dd = enum_to_dom(image_to_enum(dom_to_image(prog_const(7))))
    out0 = evaluate(dd, (0,), fuel=20_000)
    assert out0 and out0.steps == 11_730
    out5 = evaluate(dd, (5,), fuel=300_000)
    assert out5 and out5.steps == 246_351


def test_post_combiner_decides_disjoint_union():
    pc = post_combiner(prog_domain_evens(), prog_domain_odds())
    worst = 0
    for x in range(101):
        out = evaluate(pc, (x,), fuel=100_000)
        assert out, x
        assert out.value == (1 if x % 2 == 0 else 0), x
        worst = max(worst, out.steps)
    assert worst == 170


def test_post_combiner_outside_both_sets_diverges():
    pc = post_combiner(TABLE2, prog_case_table({5: 0}))
    assert evaluate(pc, (7,), fuel=100_000) is OUT_OF_FUEL
    first = evaluate(pc, (2,), fuel=10_000)
    second = evaluate(pc, (5,), fuel=10_000)
    assert (first.value, first.steps) == (1, 118)
    assert (second.value, second.steps) == (0, 118)


def test_finset_to_windex():
    empty = finset_to_windex(())
    assert all(not w_mem(empty, x, 1000) for x in range(6))
    two = finset_to_windex((1, 5))
    assert [w_mem(two, x, 1000) for x in range(7)] == [
        False, True, False, False, False, True, False]
    three = finset_to_windex((0, 2, 9))
    assert {x for x in range(12) if w_mem(three, x, 1000)} == {0, 2, 9}


def test_stage_sets_monotone():
    ladder = (0, 1, 2, 4, 8, 16)
    for ss, final in [
        (StageSet.domain(IDENT), set(range(17))),
        (StageSet.domain(prog_domain_evens()), set(range(0, 17, 2))),
        (StageSet.domain(TABLE2), {2}),
    ]:
        prev: frozenset[int] = frozenset()
        for s in ladder:
            cur = ss.at(s)
            assert prev <= cur
            prev = cur
        assert ss.at(16) == frozenset(final)

    img = StageSet.image(encode(Mul(Proj(1, 1), Const(2))))
    assert img.at(3) <= img.at(7)
    assert img.at(7) == frozenset(range(0, 15, 2))
    assert img.member(14, 7) and not img.member(13, 7)


def test_stage_set_construction_mode():
    ss = StageSet.construction(lambda s: range(0, s, 3))
    assert ss.at(10) == frozenset({0, 3, 6, 9})
