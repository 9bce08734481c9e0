import random

import pytest

from rlab.lam import (
    Abstraction, Application, EQUAL, LambdaSyntaxProblem, UNKNOWN, Variable,
    alpha_eq, beta_eq, beta_step, church, format_lambda, free_variables,
    normalize, parse_lambda, plus_term, substitute, times_term, unchurch,
    y_term,
)

P = parse_lambda


def test_alpha_examples():
    assert alpha_eq(P(r"\x y. y (x x)"), P(r"\y x. x (y y)"))
    assert not alpha_eq(P(r"\x y. y (x x)"), P(r"\y x. y (x x)"))
    t = P(r"\x. x (\y. y x)")
    assert alpha_eq(t, t)
    assert t == P(r"\q. q (\r. r q)")
    assert hash(t) == hash(P(r"\q. q (\r. r q)"))


def test_free_variables():
    assert free_variables(P(r"\x. x y")) == {"y"}
    assert free_variables(P(r"x (\x. x)")) == {"x"}


def test_substitution_direct_and_bound():
    assert substitute(P("x y"), "x", P(r"\z. z")) == P(r"(\z. z) y")
    assert substitute(P(r"\x. x"), "x", P("y")) == P(r"\x. x")


def test_substitution_avoids_capture():
    out = substitute(P(r"\y. x"), "x", P("y"))
    assert isinstance(out, Abstraction)
    assert out.binder != "y"
    assert out == P(r"\w. y")
    # naive replacement would give the constant identity \y. y
    assert out != P(r"\y. y")


def test_beta_step_contracts_leftmost_outermost():
    assert beta_step(P(r"(\x. x x) (\z. z)")) == P(r"(\z. z) (\z. z)")
    assert beta_step(P(r"\s o. o")) is None
    # inner redex waits for the outer one
    both = P(r"(\x. x) ((\y. y) z)")
    assert beta_step(both) == P(r"(\y. y) z")


LINE1 = P(r"(\x. x x) ((\x y z. x (y z)) x (\x. x x))")
LINE2 = P(r"(\x y z. x (y z)) x (\x. x x) ((\x y z. x (y z)) x (\x. x x))")
LINE3 = P(r"x ((\x. x x) ((\x y z. x (y z)) x (\x. x x)))")
LINE4 = P(r"x ((\x y z. x (y z)) x (\x. x x) ((\x y z. x (y z)) x (\x. x x)))")


def test_self_application_chain():
    # the displayed chain; the ternary binder unfolds in single steps, so
    # the third displayed term arrives after 4 contractions, the fourth
    # after 5, and the final display repeats the third (a backward step,
    # read as symmetric closure, not replayed)
    assert beta_step(LINE1) == LINE2
    assert normalize(LINE1, 4).final == LINE3
    assert normalize(LINE1, 5).final == LINE4
    assert beta_eq(LINE4, LINE3, 10) is EQUAL
    assert normalize(LINE1, 60).exhausted


def test_normalize_traces():
    tr = normalize(P(r"(\x. x) (\x. x)"), 10)
    assert tr.step_count == 1
    assert tr.final == P(r"\x. x")
    assert not tr.exhausted

    omega = P(r"(\x. x x) (\x. x x)")
    tr = normalize(omega, 10)
    assert tr.exhausted
    assert tr.step_count == 10
    for u, v in zip(tr.steps, tr.steps[1:]):
        assert beta_step(u) == v


def test_church_numerals():
    assert church(0) == P(r"\s o. o")
    tr = normalize(church(3), 100)
    assert tr.final == P(r"\s o. s (s (s o))")
    assert unchurch(tr.final) == 3
    assert unchurch(church(0)) == 0
    assert unchurch(P(r"\x. x")) is None
    assert unchurch(P(r"\s o. s (o o)")) is None
    assert unchurch(P(r"\s o. o s")) is None
    # only the normal shape is recognized
    assert unchurch(church(3)) is None
    # shadowed binders still read correctly through the canonical form
    assert unchurch(P(r"\x. \x. x")) == 0


def test_plus_times_examples():
    plus, times = plus_term(), times_term()
    two, three = church(2), church(3)
    assert beta_eq(Application(Application(plus, two), three), church(5),
                   100_000) is EQUAL
    assert beta_eq(Application(Application(times, two), three), church(6),
                   100_000) is EQUAL
    assert beta_eq(Application(Application(times, church(0)), church(5)),
                   church(0), 1000) is EQUAL


def test_arithmetic_spot_grid():
    plus, times = plus_term(), times_term()
    for n, m in ((0, 0), (1, 4), (4, 1), (3, 3), (5, 2)):
        lhs = Application(Application(plus, church(n)), church(m))
        assert beta_eq(lhs, church(n + m), 100_000) is EQUAL
        lhs = Application(Application(times, church(n)), church(m))
        assert beta_eq(lhs, church(n * m), 100_000) is EQUAL


def test_distinct_numerals_never_equal():
    for n in range(5):
        for m in range(5):
            if n != m:
                assert beta_eq(church(n), church(m), 3000) is UNKNOWN


def test_beta_eq_is_falsy_only_on_unknown():
    assert beta_eq(P("x"), P("x"), 1)
    assert not beta_eq(P("x"), P("y"), 100)


def test_y_combinator_fixed_point():
    Y = y_term()
    A = P(r"\x. c")
    ya = Application(Y, A)
    assert beta_eq(ya, Application(A, ya), 100) is EQUAL
    assert normalize(ya, 100).final == P("c")


def test_y_proof_chain_stepwise():
    # each adjacent display pair meets, with the head variable left free
    a = Variable("a")
    half = Application(Application(P(r"\x y z. x (y z)"), a), P(r"\x. x x"))
    l1 = Application(y_term(), a)
    l2 = Application(half, half)
    l3 = Application(a, Application(P(r"\x. x x"), half))
    l4 = Application(a, Application(half, half))
    l5 = Application(a, Application(y_term(), a))
    for u, v in ((l1, l2), (l2, l3), (l3, l4), (l4, l5)):
        assert beta_eq(u, v, 50) is EQUAL


def _redexes(t, path=()):
    out = []
    if isinstance(t, Application):
        if isinstance(t.function, Abstraction):
            out.append(path)
        out += _redexes(t.function, path + ("f",))
        out += _redexes(t.argument, path + ("a",))
    elif isinstance(t, Abstraction):
        out += _redexes(t.body, path + ("b",))
    return out


def _contract(t, path):
    if not path:
        return substitute(t.function.body, t.function.binder, t.argument)
    d = path[0]
    if d == "f":
        return Application(_contract(t.function, path[1:]), t.argument)
    if d == "a":
        return Application(t.function, _contract(t.argument, path[1:]))
    return Abstraction(t.binder, _contract(t.body, path[1:]))


def _random_term(rng, depth):
    names = "abc"
    if depth == 0 or rng.random() < 0.3:
        return Variable(rng.choice(names))
    if rng.random() < 0.5:
        return Abstraction(rng.choice(names), _random_term(rng, depth - 1))
    return Application(_random_term(rng, depth - 1), _random_term(rng, depth - 1))


def test_confluence_spot_check():
    # whenever a random-order reduction also terminates, it must land on
    # the same normal form as the leftmost-outermost one
    rng = random.Random(90125)
    compared = 0
    for _ in range(200):
        t = _random_term(rng, 5)
        left = normalize(t, 300)
        if left.exhausted:
            continue
        cur = t
        for _ in range(400):
            rs = _redexes(cur)
            if not rs:
                break
            cur = _contract(cur, rng.choice(rs))
        else:
            continue
        compared += 1
        assert cur == left.final
    assert compared > 100


def test_parse_format_round_trip():
    rng = random.Random(777)
    for _ in range(300):
        t = _random_term(rng, 5)
        assert parse_lambda(format_lambda(t)) == t
    assert format_lambda(P(r"\x  y . x (y x)")) == r"\x y. x (y x)"
    assert P("a b c") == Application(Application(Variable("a"), Variable("b")),
                                     Variable("c"))
    assert P(r"a \b. b") == Application(Variable("a"), P(r"\b. b"))


def test_parse_rejects_bad_text():
    for bad in ("", "(", "(x", "x)", r"\.x", r"\x", "X", r"\x (y). x", "x . y"):
        with pytest.raises(LambdaSyntaxProblem):
            P(bad)
