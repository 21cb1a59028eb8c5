"""LTL without next over lasso words.

Formulas are immutable AST nodes.  The surface syntax::

    phi ::= atom | true | false | ( phi ) | ! phi | G phi | F phi
          | phi U phi | phi & phi | phi | phi | phi -> phi

Unary operators bind tightest, then ``U`` (right-associative), ``&``, ``|``
and finally ``->`` (right-associative).  ``#`` starts a line comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "Formula",
    "Atom",
    "Not",
    "And",
    "Or",
    "Implies",
    "Until",
    "Eventually",
    "Always",
    "Const",
    "TRUE",
    "FALSE",
    "FormulaSyntaxError",
    "UnknownAtomError",
    "Verdict",
    "parse_formula",
    "lasso_check",
    "atoms",
    "depth",
]


class Formula:
    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Atom(Formula):
    id: str

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def __str__(self) -> str:
        return f"!{_wrap(self.arg)}"


@dataclass(frozen=True)
class Eventually(Formula):
    arg: Formula

    def __str__(self) -> str:
        return f"F {_wrap(self.arg)}"


@dataclass(frozen=True)
class Always(Formula):
    arg: Formula

    def __str__(self) -> str:
        return f"G {_wrap(self.arg)}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} -> {self.right})"


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} U {self.right})"


def _wrap(f: Formula) -> str:
    s = str(f)
    return s if isinstance(f, (Atom, Const)) or s.startswith("(") else f"({s})"


def atoms(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset([f.id])
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, (Not, Eventually, Always)):
        return atoms(f.arg)
    return atoms(f.left) | atoms(f.right)


def depth(f: Formula) -> int:
    if isinstance(f, (Atom, Const)):
        return 0
    if isinstance(f, (Not, Eventually, Always)):
        return 1 + depth(f.arg)
    return 1 + max(depth(f.left), depth(f.right))


# -- parser -------------------------------------------------------------------


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, expected: str | None = None):
        self.pos = pos
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {pos}{detail}")


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<arrow>->)
  | (?P<op>[!&|()])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"U", "G", "F", "true", "false"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        val = m.group()
        if kind == "arrow":
            out.append(("->", val, pos))
        elif kind == "op":
            out.append((val, val, pos))
        elif kind == "ident":
            out.append((val if val in _KEYWORDS else "atom", val, pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: str, expected: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            raise FormulaSyntaxError(f"unexpected {_describe(tok)}", tok[2], expected)
        self.i += 1
        return tok

    def formula(self) -> Formula:
        f = self.implication()
        tok = self.peek()
        if tok[0] != "eof":
            if tok[0] == "atom" and self.i > 0 and self.toks[self.i - 1][0] in ("atom", ")"):
                raise FormulaSyntaxError(f"unknown operator {tok[1]!r}", tok[2], "an operator")
            raise FormulaSyntaxError(f"unexpected {_describe(tok)}", tok[2], "end of input")
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek()[0] == "|":
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.until()
        while self.peek()[0] == "&":
            self.i += 1
            f = And(f, self.until())
        return f

    def until(self) -> Formula:
        left = self.unary()
        if self.peek()[0] == "U":
            self.i += 1
            return Until(left, self.until())
        return left

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "!":
            self.i += 1
            return Not(self.unary())
        if kind == "G":
            self.i += 1
            return Always(self.unary())
        if kind == "F":
            self.i += 1
            return Eventually(self.unary())
        if kind == "(":
            self.i += 1
            f = self.implication()
            self.take(")", "')'")
            return f
        if kind == "atom":
            self.i += 1
            return Atom(val)
        if kind == "true":
            self.i += 1
            return TRUE
        if kind == "false":
            self.i += 1
            return FALSE
        raise FormulaSyntaxError(f"unexpected {_describe((kind, val, pos))}", pos, "a formula")


def _describe(tok) -> str:
    return "end of input" if tok[0] == "eof" else f"{tok[1]!r}"


def parse_formula(text: str) -> Formula:
    """Parse formula text.

    >>> parse_formula("G (g2 -> g3)")
    Always(arg=Implies(left=Atom(id='g2'), right=Atom(id='g3')))
    """
    return _Parser(text).formula()


# -- checking -----------------------------------------------------------------


class UnknownAtomError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    satisfied: bool
    per_position: tuple

    def __bool__(self) -> bool:
        return self.satisfied


def _until(left: list, right: list, n_prefix: int) -> list:
    n = len(left)
    res = [False] * n
    # loop positions: the successor of the last one is the loop start
    nxt = False
    for _ in range(2):
        for i in range(n - 1, n_prefix - 1, -1):
            cont = nxt if i == n - 1 else res[i + 1]
            res[i] = right[i] or (left[i] and cont)
        nxt = res[n_prefix]
    for i in range(n_prefix - 1, -1, -1):
        res[i] = right[i] or (left[i] and res[i + 1])
    return res


def _eval(f: Formula, word: list, n_prefix: int, memo: dict) -> list:
    got = memo.get(f)
    if got is not None:
        return got
    n = len(word)
    if isinstance(f, Const):
        res = [f.value] * n
    elif isinstance(f, Atom):
        res = [f.id in a for a in word]
    elif isinstance(f, Not):
        res = [not x for x in _eval(f.arg, word, n_prefix, memo)]
    elif isinstance(f, And):
        a, b = _eval(f.left, word, n_prefix, memo), _eval(f.right, word, n_prefix, memo)
        res = [x and y for x, y in zip(a, b)]
    elif isinstance(f, Or):
        a, b = _eval(f.left, word, n_prefix, memo), _eval(f.right, word, n_prefix, memo)
        res = [x or y for x, y in zip(a, b)]
    elif isinstance(f, Implies):
        a, b = _eval(f.left, word, n_prefix, memo), _eval(f.right, word, n_prefix, memo)
        res = [(not x) or y for x, y in zip(a, b)]
    elif isinstance(f, Until):
        res = _until(_eval(f.left, word, n_prefix, memo), _eval(f.right, word, n_prefix, memo), n_prefix)
    elif isinstance(f, Eventually):
        res = _until([True] * n, _eval(f.arg, word, n_prefix, memo), n_prefix)
    elif isinstance(f, Always):
        inner = _eval(f.arg, word, n_prefix, memo)
        res = [not x for x in _until([True] * n, [not x for x in inner], n_prefix)]
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[f] = res
    return res


def lasso_check(word, formula: Formula, alphabet: Iterable[str] | None = None) -> Verdict:
    """Decide ``prefix . loop^omega |= formula`` at position 0.

    ``word`` is a :class:`~polytrace.trace_gen.LassoWord` or a
    ``(prefix, loop)`` pair.  When ``alphabet`` is given, atoms outside it
    are rejected.  ``per_position`` lists the verdict at each prefix and loop
    position.
    """
    prefix, loop = (word.prefix, word.loop) if hasattr(word, "loop") else word
    prefix = [frozenset(a) for a in prefix]
    loop = [frozenset(a) for a in loop]
    if not loop:
        raise ValueError("lasso loop must be nonempty")
    if alphabet is not None:
        unknown = atoms(formula) - frozenset(alphabet)
        if unknown:
            raise UnknownAtomError(f"unknown atoms: {', '.join(sorted(unknown))}")
    res = _eval(formula, prefix + loop, len(prefix), {})
    return Verdict(res[0], tuple(res))
