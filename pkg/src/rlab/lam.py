"""Lambda-calculus kernel: terms, alpha-equality, beta-reduction, Church
numerals, and the fixed-point combinator.

Term equality IS alpha-equality: `==` compares canonical nameless forms,
so dictionaries and sets treat renamed terms as one value.  The surface
names are kept for printing only.

Reduction strategy is leftmost-outermost (normal order) throughout; it
reaches a normal form whenever one exists.  Beta-equality is semi-decided
with fuel and never answers "equal" without an exhibited common reduct.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

__all__ = [
    "LambdaTerm",
    "Variable",
    "Application",
    "Abstraction",
    "ReductionTrace",
    "alpha_eq",
    "free_variables",
    "substitute",
    "beta_step",
    "normalize",
    "beta_eq",
    "EQUAL",
    "UNKNOWN",
    "church",
    "unchurch",
    "plus_term",
    "times_term",
    "y_term",
    "parse_lambda",
    "format_lambda",
    "LambdaSyntaxProblem",
]


class LambdaTerm:
    """Base class; subclasses are the three term shapes."""

    __slots__ = ()

    def __eq__(self, other):
        if not isinstance(other, LambdaTerm):
            return NotImplemented
        return _canon(self) == _canon(other)

    def __hash__(self):
        return hash(_canon(self))

    def __str__(self):
        return format_lambda(self)


@dataclass(frozen=True, eq=False)
class Variable(LambdaTerm):
    name: str


@dataclass(frozen=True, eq=False)
class Application(LambdaTerm):
    function: LambdaTerm
    argument: LambdaTerm


@dataclass(frozen=True, eq=False)
class Abstraction(LambdaTerm):
    binder: str
    body: LambdaTerm


def _canon(t: LambdaTerm, env: tuple[str, ...] = ()):
    """Nameless canonical form; bound variables become binder distances."""
    if isinstance(t, Variable):
        for d in range(len(env) - 1, -1, -1):
            if env[d] == t.name:
                return (0, len(env) - 1 - d)
        return (1, t.name)
    if isinstance(t, Application):
        return (2, _canon(t.function, env), _canon(t.argument, env))
    return (3, _canon(t.body, env + (t.binder,)))


def alpha_eq(a: LambdaTerm, b: LambdaTerm) -> bool:
    return _canon(a) == _canon(b)


def free_variables(t: LambdaTerm) -> frozenset[str]:
    if isinstance(t, Variable):
        return frozenset((t.name,))
    if isinstance(t, Application):
        return free_variables(t.function) | free_variables(t.argument)
    return free_variables(t.body) - {t.binder}


def _fresh(base: str, avoid: frozenset[str]) -> str:
    letter = base[0]
    i = 1
    while f"{letter}{i}" in avoid:
        i += 1
    return f"{letter}{i}"


def substitute(m: LambdaTerm, v: str, n: LambdaTerm) -> LambdaTerm:
    """m with every free occurrence of v replaced by n, renaming binders
    that would capture a free variable of n."""
    if isinstance(m, Variable):
        return n if m.name == v else m
    if isinstance(m, Application):
        return Application(substitute(m.function, v, n),
                           substitute(m.argument, v, n))
    if m.binder == v or v not in free_variables(m.body):
        return m
    if m.binder in free_variables(n):
        fresh = _fresh(m.binder,
                       free_variables(n) | free_variables(m.body) | {v})
        body = substitute(m.body, m.binder, Variable(fresh))
        return Abstraction(fresh, substitute(body, v, n))
    return Abstraction(m.binder, substitute(m.body, v, n))


def beta_step(t: LambdaTerm) -> Optional[LambdaTerm]:
    """Contract the leftmost-outermost redex; None iff t is normal."""
    if isinstance(t, Application):
        if isinstance(t.function, Abstraction):
            return substitute(t.function.body, t.function.binder, t.argument)
        f = beta_step(t.function)
        if f is not None:
            return Application(f, t.argument)
        a = beta_step(t.argument)
        if a is not None:
            return Application(t.function, a)
        return None
    if isinstance(t, Abstraction):
        b = beta_step(t.body)
        return None if b is None else Abstraction(t.binder, b)
    return None


@dataclass(frozen=True)
class ReductionTrace:
    """Consecutive entries differ by one beta-step; exhausted means the
    last entry still has a redex."""

    steps: tuple[LambdaTerm, ...]
    exhausted: bool

    @property
    def final(self) -> LambdaTerm:
        return self.steps[-1]

    @property
    def step_count(self) -> int:
        return len(self.steps) - 1


def normalize(t: LambdaTerm, fuel: int = 10_000) -> ReductionTrace:
    steps = [t]
    for _ in range(fuel):
        nxt = beta_step(steps[-1])
        if nxt is None:
            return ReductionTrace(tuple(steps), False)
        steps.append(nxt)
    return ReductionTrace(tuple(steps), beta_step(steps[-1]) is not None)


@dataclass(frozen=True)
class BetaEqual:
    pass


@dataclass(frozen=True)
class BetaUnknown:
    def __bool__(self) -> bool:
        return False


EQUAL = BetaEqual()
UNKNOWN = BetaUnknown()

BetaAnswer = Union[BetaEqual, BetaUnknown]


def beta_eq(a: LambdaTerm, b: LambdaTerm, fuel: int = 10_000) -> BetaAnswer:
    """EQUAL iff the leftmost reduction chains of a and b meet within fuel
    steps per side; UNKNOWN on exhaustion.  Never a false EQUAL."""
    seen_a = {_canon(a)}
    seen_b = {_canon(b)}
    ta: Optional[LambdaTerm] = a
    tb: Optional[LambdaTerm] = b
    for _ in range(fuel):
        if seen_a & seen_b:
            return EQUAL
        if ta is None and tb is None:
            break
        if ta is not None:
            ta = beta_step(ta)
            if ta is not None:
                seen_a.add(_canon(ta))
        if tb is not None:
            tb = beta_step(tb)
            if tb is not None:
                seen_b.add(_canon(tb))
    return EQUAL if seen_a & seen_b else UNKNOWN


def church(n: int) -> LambdaTerm:
    """Numeral by the iterated recipe: 0 is \\s o. o and n+1 wraps the
    previous numeral, so only the 0 case is in normal form."""
    t: LambdaTerm = Variable("o")
    if n > 0:
        t = Application(church(n - 1), Variable("s"))
        t = Application(t, Application(Variable("s"), Variable("o")))
    return Abstraction("s", Abstraction("o", t))


def unchurch(t: LambdaTerm) -> Optional[int]:
    """Read a beta-normal numeral; None on any other shape."""
    c = _canon(t)
    if c[0] != 3 or c[1][0] != 3:
        return None
    body = c[1][1]
    n = 0
    while body[0] == 2:
        if body[1] != (0, 1):
            return None
        body = body[2]
        n += 1
    return n if body == (0, 0) else None


def plus_term() -> LambdaTerm:
    return parse_lambda(r"\n m s o. n s (m s o)")


def times_term() -> LambdaTerm:
    return parse_lambda(r"\n m s o. n (\c. m s c) o")


def y_term() -> LambdaTerm:
    """Fixed-point combinator built from self-application and composition."""
    return parse_lambda(r"\x. ((\x y z. x (y z)) x (\x. x x)) "
                        r"((\x y z. x (y z)) x (\x. x x))")


class LambdaSyntaxProblem(ValueError):
    pass


_TOKEN = re.compile(r"\\|λ|\.|\(|\)|[a-z][0-9]*")


def _tokenize(text: str) -> list[str]:
    toks = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise LambdaSyntaxProblem(f"stray {text[i]!r} at column {i}")
        toks.append(m.group())
        i = m.end()
    return toks


def _parse_abstraction(toks: list[str], i: int) -> tuple[LambdaTerm, int]:
    i += 1
    names = []
    while i < len(toks) and toks[i] not in (".", "\\", "λ", "(", ")"):
        names.append(toks[i])
        i += 1
    if not names or i >= len(toks) or toks[i] != ".":
        raise LambdaSyntaxProblem("abstraction needs binders then a dot")
    body, i = _parse_term(toks, i + 1)
    for name in reversed(names):
        body = Abstraction(name, body)
    return body, i


def _parse_term(toks: list[str], i: int) -> tuple[LambdaTerm, int]:
    atoms = []
    while i < len(toks):
        t = toks[i]
        if t in ("\\", "λ"):
            # the body of a trailing abstraction extends maximally
            lam, i = _parse_abstraction(toks, i)
            atoms.append(lam)
            break
        if t == "(":
            inner, i = _parse_term(toks, i + 1)
            if i >= len(toks) or toks[i] != ")":
                raise LambdaSyntaxProblem("unclosed parenthesis")
            atoms.append(inner)
            i += 1
        elif t in (")", "."):
            break
        else:
            atoms.append(Variable(t))
            i += 1
    if not atoms:
        raise LambdaSyntaxProblem("empty term")
    term = atoms[0]
    for a in atoms[1:]:
        term = Application(term, a)
    return term, i


def parse_lambda(text: str) -> LambdaTerm:
    toks = _tokenize(text)
    term, i = _parse_term(toks, 0)
    if i != len(toks):
        raise LambdaSyntaxProblem(f"unexpected {toks[i]!r}")
    return term


def format_lambda(t: LambdaTerm) -> str:
    if isinstance(t, Variable):
        return t.name
    if isinstance(t, Abstraction):
        names = []
        while isinstance(t, Abstraction):
            names.append(t.binder)
            t = t.body
        return "\\" + " ".join(names) + ". " + format_lambda(t)
    f = format_lambda(t.function)
    if isinstance(t.function, Abstraction):
        f = f"({f})"
    a = format_lambda(t.argument)
    if isinstance(t.argument, (Application, Abstraction)):
        a = f"({a})"
    return f"{f} {a}"
