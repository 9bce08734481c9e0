"""Surface syntax round-trips."""

import random

import pytest

from rlab.ips.ast import (
    Closure,
    Comp,
    Mu,
    OracleQuery,
    PrimRec,
    Proj,
    Succ,
    Zero,
    encode,
)
from rlab.ips.sexpr import SyntaxProblem, format_program, parse_program


def test_base_heads_parse():
    text = "(comp (succ) (primrec (zero) (proj 3 2)) (mu (oracle)))"
    p = parse_program(text)
    assert p == Comp(Succ(), (PrimRec(Zero(), Proj(3, 2)), Mu(OracleQuery())))
    assert format_program(p) == text


def test_bare_naturals_are_constants():
    p = parse_program("(add 3 (mul 2 (proj 1 1)))")
    assert format_program(p) == "(add (const 3) (mul (const 2) (proj 1 1)))"


def test_closure_head():
    cl = Closure(5, (1, 2))
    assert parse_program("(closure 5 1 2)") == cl
    assert format_program(cl) == "(closure 5 1 2)"
    assert parse_program(format_program(Closure(7, ()))) == Closure(7, ())


def test_roundtrip_random_trees():
    from test_ips_core import _random_tree

    rng = random.Random(424242)
    for _ in range(200):
        tree = _random_tree(rng, rng.randint(1, 4))
        assert parse_program(format_program(tree)) == tree


def test_syntax_errors():
    for bad in ["", "(", ")", "(zero", "(frobnicate)", "(proj 0 1)",
                "(primrec (zero))", "(zero) (zero)", "(mu x)"]:
        with pytest.raises(SyntaxProblem):
            parse_program(bad)
