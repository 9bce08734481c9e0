"""S-expression syntax for program trees.

Grammar, one head per node kind; bare naturals abbreviate constants:

    (zero) (succ) (oracle) (proj k i) (comp h g...) (primrec base step)
    (mu g) (const c) (um p a...) (umb p s a...) (freeze p y...)
    (ifz c a b) (pair a b) (fst a) (snd a) (add a b) (monus a b)
    (mul a b) (div a b) (mod a b) (eq a b) (le a b) (closure e y...)

`closure` children are plain naturals: a stored index and frozen values.

`parse_program` and `format_program` round-trip.
"""

from __future__ import annotations

import re

from rlab.ips.ast import (
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
)

__all__ = ["parse_program", "format_program", "SyntaxProblem"]


class SyntaxProblem(ValueError):
    pass


_TOKEN = re.compile(r"\(|\)|[^\s()]+")

_FIXED = {"zero": (Zero, 0), "succ": (Succ, 0), "oracle": (OracleQuery, 0)}
_BINARY = {"pair": Pair, "add": Add, "monus": Monus, "mul": Mul,
           "div": Div, "mod": Mod, "eq": Eq, "le": Le}
_UNARY = {"fst": Fst, "snd": Snd}
_VARIADIC = {"um": (Um, 1), "umb": (UmBounded, 2), "freeze": (Freeze, 1)}


def _tokens(text: str) -> list[str]:
    toks = _TOKEN.findall(text)
    if "".join(toks).strip() == "":
        raise SyntaxProblem("empty program text")
    return toks


def parse_program(text: str) -> Node:
    toks = _tokens(text)
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(toks):
            raise SyntaxProblem("unexpected end of input")
        tok = toks[pos]
        pos += 1
        return tok

    def nat(tok: str) -> int:
        if not tok.isdigit():
            raise SyntaxProblem(f"expected a natural, got {tok!r}")
        return int(tok)

    def tree() -> Node:
        tok = take()
        if tok == ")":
            raise SyntaxProblem("unexpected ')'")
        if tok != "(":
            return Const(nat(tok))
        head = take()
        if head in _FIXED:
            ctor, _ = _FIXED[head]
            close()
            return ctor()
        if head == "proj":
            k = nat(take())
            i = nat(take())
            close()
            try:
                return Proj(k, i)
            except ValueError as exc:
                raise SyntaxProblem(str(exc)) from None
        if head == "const":
            c = nat(take())
            close()
            return Const(c)
        if head == "comp":
            kids = trees_until_close()
            if not kids:
                raise SyntaxProblem("comp needs a head program")
            return Comp(kids[0], tuple(kids[1:]))
        if head == "primrec":
            kids = trees_until_close()
            if len(kids) != 2:
                raise SyntaxProblem("primrec takes base and step")
            return PrimRec(kids[0], kids[1])
        if head == "mu":
            kids = trees_until_close()
            if len(kids) != 1:
                raise SyntaxProblem("mu takes one body")
            return Mu(kids[0])
        if head == "ifz":
            kids = trees_until_close()
            if len(kids) != 3:
                raise SyntaxProblem("ifz takes condition and two branches")
            return IfZ(*kids)
        if head in _UNARY:
            kids = trees_until_close()
            if len(kids) != 1:
                raise SyntaxProblem(f"{head} takes one child")
            return _UNARY[head](kids[0])
        if head in _BINARY:
            kids = trees_until_close()
            if len(kids) != 2:
                raise SyntaxProblem(f"{head} takes two children")
            return _BINARY[head](kids[0], kids[1])
        if head in _VARIADIC:
            ctor, least = _VARIADIC[head]
            kids = trees_until_close()
            if len(kids) < least:
                raise SyntaxProblem(f"{head} needs at least {least} children")
            return ctor(tuple(kids))
        if head == "closure":
            nats = []
            while True:
                tok = take()
                if tok == ")":
                    break
                nats.append(nat(tok))
            if not nats:
                raise SyntaxProblem("closure needs a stored index")
            return Closure(nats[0], tuple(nats[1:]))
        raise SyntaxProblem(f"unknown head {head!r}")

    def trees_until_close() -> list[Node]:
        nonlocal pos
        kids = []
        while True:
            if pos >= len(toks):
                raise SyntaxProblem("missing ')'")
            if toks[pos] == ")":
                pos += 1
                return kids
            kids.append(tree())

    def close() -> None:
        if take() != ")":
            raise SyntaxProblem("expected ')'")

    result = tree()
    if pos != len(toks):
        raise SyntaxProblem("trailing tokens after program")
    return result


def format_program(p: Node) -> str:
    from rlab.ips.ast import (
        T_CLOSURE, T_COMP, T_CONST, T_FREEZE, T_FST, T_IFZ, T_MU, T_ORACLE,
        T_PAIR, T_PRIMREC, T_PROJ, T_SND, T_SUCC, T_UM, T_UMB, T_ZERO,
        T_ADD, T_MONUS, T_MUL, T_DIV, T_MOD, T_EQ, T_LE,
    )

    names2 = {T_PAIR: "pair", T_ADD: "add", T_MONUS: "monus", T_MUL: "mul",
              T_DIV: "div", T_MOD: "mod", T_EQ: "eq", T_LE: "le"}
    k = p.kind
    if k == T_ZERO:
        return "(zero)"
    if k == T_SUCC:
        return "(succ)"
    if k == T_ORACLE:
        return "(oracle)"
    if k == T_PROJ:
        return f"(proj {p.k} {p.i})"
    if k == T_CONST:
        return f"(const {p.value})"
    if k == T_COMP:
        inner = " ".join(format_program(g) for g in (p.h,) + p.gs)
        return f"(comp {inner})"
    if k == T_PRIMREC:
        return f"(primrec {format_program(p.base)} {format_program(p.step)})"
    if k == T_MU:
        return f"(mu {format_program(p.g)})"
    if k == T_IFZ:
        parts = (p.cond, p.then, p.other)
        return "(ifz " + " ".join(format_program(q) for q in parts) + ")"
    if k == T_UM or k == T_UMB or k == T_FREEZE:
        head = {T_UM: "um", T_UMB: "umb", T_FREEZE: "freeze"}[k]
        return f"({head} " + " ".join(format_program(g) for g in p.gs) + ")"
    if k == T_CLOSURE:
        return "(closure " + " ".join(str(v) for v in (p.code,) + p.ys) + ")"
    if k == T_FST:
        return f"(fst {format_program(p.a)})"
    if k == T_SND:
        return f"(snd {format_program(p.a)})"
    return f"({names2[k]} {format_program(p.a)} {format_program(p.b)})"
