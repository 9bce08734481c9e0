import random

import pytest

from rlab.ips.ast import (
    Add, Closure, Comp, Const, Freeze, IfZ, Mu, Mul, OracleQuery, Pair,
    PrimRec, Proj, Snd, Succ, Um, UmBounded, Zero,
)
from rlab.ips.machine import OUT_OF_FUEL
from rlab.machines import (
    STOP, RangeExceeded, TmHalted, TmMalformedOutput, TmProgram,
    TmSyntaxProblem, Write, ackermann, format_tm, initial_configuration,
    is_primitive_recursive, parse_tm, tm_run, tm_step,
)

IMMEDIATE_STOP = TmProgram(((STOP, STOP),))

# Steps right off the input's left edge, then stops on the first 1.
SKIP_ONE = TmProgram((
    (Write(0, "R", 1), Write(1, "R", 1)),
    (STOP, STOP),
))

RUNAWAY = TmProgram(((Write(0, "R", 0), Write(1, "R", 0)),))

# On input 2: erases the 1 at position 1, backs up, and stops with the
# 1 at position 2 stranded past a 0.
STRANDER = TmProgram((
    (Write(0, "R", 1), Write(1, "R", 1)),
    (STOP, Write(0, "L", 2)),
    (STOP, STOP),
))


def test_immediate_stop_is_identity():
    for n in range(6):
        assert tm_run(IMMEDIATE_STOP, n) == TmHalted(n, 0)


def test_skip_one_discards_leading_one():
    # Head ends at 1; the 1 still sitting there is left of the output.
    assert tm_run(SKIP_ONE, 3) == TmHalted(2, 1)
    assert tm_run(SKIP_ONE, 0) == TmHalted(0, 1)


def test_runaway_exhausts_fuel():
    assert tm_run(RUNAWAY, 1, fuel=100) is OUT_OF_FUEL
    assert tm_run(RUNAWAY, 1, fuel=0) is OUT_OF_FUEL


def test_stranded_one_is_malformed():
    out = tm_run(STRANDER, 2)
    assert out == TmMalformedOutput(2)
    assert not out
    # Input 1 erases the only 1, so the tape is clean: output 0.
    assert tm_run(STRANDER, 1) == TmHalted(0, 2)


def test_fuel_monotone_and_deterministic():
    for p, n in ((IMMEDIATE_STOP, 4), (SKIP_ONE, 3), (STRANDER, 2)):
        settled = tm_run(p, n, fuel=10)
        for fuel in range(3, 30):
            out = tm_run(p, n, fuel=fuel)
            assert out == settled
            assert tm_run(p, n, fuel=fuel) == out


def test_step_changes_one_count_by_at_most_one():
    for p, n in ((SKIP_ONE, 3), (STRANDER, 2), (RUNAWAY, 2)):
        c = initial_configuration(n)
        for _ in range(20):
            d = tm_step(p, c)
            assert abs(len(d.ones) - len(c.ones)) <= 1
            if d == c:
                break
            c = d


def test_step_fixes_halted_configurations():
    c = initial_configuration(2)
    c = tm_step(IMMEDIATE_STOP, c)
    assert c.halted
    assert tm_step(IMMEDIATE_STOP, c) == c


def test_program_rejects_dangling_state():
    with pytest.raises(ValueError):
        TmProgram(((Write(0, "R", 1), STOP),))
    with pytest.raises(ValueError):
        Write(2, "R", 0)
    with pytest.raises(ValueError):
        Write(0, "U", 0)


TM_TEXT = """\
0 0 -> 0 R 1
0 1 -> 1 R 1
1 0 -> STOP
1 1 -> STOP
"""


def test_parse_format_round_trip():
    p = parse_tm(TM_TEXT)
    assert p == SKIP_ONE
    assert format_tm(p) == TM_TEXT.rstrip("\n")
    assert parse_tm(format_tm(STRANDER)) == STRANDER


def test_parse_rejects_bad_text():
    for bad in (
        "",
        "0 0 -> STOP",                      # missing (0, 1)
        "0 0 -> STOP\n0 0 -> STOP\n0 1 -> STOP",
        "0 0 -> 0 X 0\n0 1 -> STOP",
        "0 2 -> STOP\n0 0 -> STOP\n0 1 -> STOP",
        "0 0 -> 0 R\n0 1 -> STOP",
        "0 0 => STOP",
    ):
        with pytest.raises(TmSyntaxProblem):
            parse_tm(bad)


def _ack_plain(m, n):
    if m == 0:
        return n + 1
    if n == 0:
        return _ack_plain(m - 1, 1)
    return _ack_plain(m - 1, _ack_plain(m, n - 1))


def test_ackermann_known_values():
    assert ackermann(0, 5) == 6
    assert ackermann(1, 1) == 3
    assert ackermann(2, 2) == 7
    assert ackermann(3, 3) == 61
    assert ackermann(3, 10) == 8189


def test_ackermann_matches_plain_recursion():
    for m in range(4):
        for n in range(6):
            assert ackermann(m, n) == _ack_plain(m, n)


def test_ackermann_guard():
    for m, n in ((4, 0), (3, 11), (-1, 0), (0, -1)):
        with pytest.raises(RangeExceeded):
            ackermann(m, n)


ADD = PrimRec(Proj(1, 1), Comp(Succ(), (Proj(3, 2),)))


def test_primitive_recursive_classification():
    assert is_primitive_recursive(Succ())
    assert is_primitive_recursive(ADD)
    assert is_primitive_recursive(Comp(ADD, (Proj(2, 2), Proj(2, 1))))
    assert is_primitive_recursive(IfZ(Proj(1, 1), Const(3), Mul(Proj(1, 1), Proj(1, 1))))
    assert is_primitive_recursive(Pair(Zero(), Snd(Proj(2, 2))))

    assert not is_primitive_recursive(Mu(Proj(2, 1)))
    assert not is_primitive_recursive(OracleQuery())
    assert not is_primitive_recursive(Um((Proj(1, 1), Proj(1, 1))))
    assert not is_primitive_recursive(UmBounded((Const(0), Const(9), Proj(1, 1))))
    assert not is_primitive_recursive(Freeze((Proj(2, 1), Proj(2, 2))))
    assert not is_primitive_recursive(Closure(0, (5,)))
    # One buried minimization poisons the whole tree.
    assert not is_primitive_recursive(Comp(ADD, (Mu(Proj(2, 1)), Const(2))))
    assert not is_primitive_recursive(PrimRec(Mu(Proj(2, 1)), Proj(3, 2)))
    assert not is_primitive_recursive(Add(Const(1), Mu(Proj(2, 1))))


def test_random_programs_never_crash():
    rng = random.Random(7171)
    for _ in range(60):
        states = rng.randrange(1, 4)
        rows = []
        for _s in range(states):
            row = []
            for _b in (0, 1):
                if rng.random() < 0.2:
                    row.append(STOP)
                else:
                    row.append(Write(
                        rng.randrange(2),
                        "LR"[rng.randrange(2)],
                        rng.randrange(states),
                    ))
            rows.append(tuple(row))
        p = TmProgram(tuple(rows))
        out = tm_run(p, rng.randrange(4), fuel=200)
        assert out is OUT_OF_FUEL or isinstance(out, (TmHalted, TmMalformedOutput))
