"""Terms and formulas: abstract syntax, parsing, printing and structural helpers.

Three term dialects are supported:

* ``STAR``: constants, variables, ``cstar``, ``+`` and ``!``
* ``APP``: constants, variables, ``.`` (application), ``+`` and ``!``
* ``PROB``: the ``STAR`` constructors plus ``0``, ``1`` and ``\\/`` (union)

Formulas are built from atoms ``p<n>``, ``_|_``, ``->`` and ``t : F``.  The
connectives ``~``, ``&``, ``|``, ``<->`` and ``_T_`` are accepted by the parser
and expanded into the core syntax immediately, so every other module only sees
``Atom``, ``Bottom``, ``Implies`` and ``Justified``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union as _U


class Dialect(enum.Enum):
    STAR = "star"
    APP = "app"
    PROB = "prob"

    @classmethod
    def from_name(cls, name: "str | Dialect") -> "Dialect":
        if isinstance(name, Dialect):
            return name
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown dialect {name!r} (expected star, app or prob)") from None


class ParseError(ValueError):
    """Malformed surface syntax; ``position`` is a character offset."""

    def __init__(self, message: str, position: int | None = None):
        self.message = message
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class DialectError(ValueError):
    """A constructor was used outside the dialect that permits it."""

    def __init__(self, message: str, position: int | None = None):
        self.message = message
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class _Node:
    # Structural equality with a cached hash; the trees are hashed constantly
    # (universes, valuations, axiom caches) so recomputing is not an option.
    __slots__ = ()

    def _key(self) -> tuple:
        return tuple(getattr(self, name) for name in self.__match_args__)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        return self._key() == other._key()  # type: ignore[attr-defined]

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        d = self.__dict__
        h = d.get("_h")
        if h is None:
            h = hash((type(self).__name__,) + self._key())
            d["_h"] = h
        return h


def _node(cls):
    return dataclass(frozen=True, eq=False)(cls)


# --------------------------------------------------------------------- terms


class Term(_Node):
    def __str__(self) -> str:
        return print_term(self)


@_node
class Constant(Term):
    index: int


@_node
class Variable(Term):
    index: int


@_node
class CStar(Term):
    pass


@_node
class Zero(Term):
    pass


@_node
class One(Term):
    pass


@_node
class Sum(Term):
    left: Term
    right: Term


@_node
class Union(Term):
    left: Term
    right: Term


@_node
class App(Term):
    left: Term
    right: Term


@_node
class Bang(Term):
    body: Term


CSTAR = CStar()
ZERO = Zero()
ONE = One()

_ALLOWED: dict[Dialect, frozenset[type]] = {
    Dialect.STAR: frozenset({Constant, Variable, CStar, Sum, Bang}),
    Dialect.APP: frozenset({Constant, Variable, App, Sum, Bang}),
    Dialect.PROB: frozenset({Constant, Variable, CStar, Zero, One, Sum, Union, Bang}),
}

_CONSTRUCTOR_NAMES = {
    CStar: "cstar",
    Zero: "0",
    One: "1",
    Union: "union (\\/)",
    App: "application (.)",
    Sum: "sum (+)",
    Bang: "proof checker (!)",
    Constant: "constant",
    Variable: "variable",
}


# ------------------------------------------------------------------ formulas


class Formula(_Node):
    def __str__(self) -> str:
        return print_formula(self)


@_node
class Atom(Formula):
    index: int


@_node
class Bottom(Formula):
    pass


@_node
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@_node
class Justified(Formula):
    term: Term
    body: Formula


BOTTOM = Bottom()

AnyNode = _U[Term, Formula]


# -------------------------------------------------------------- abbreviations


def neg(a: Formula) -> Formula:
    return Implies(a, BOTTOM)


TOP = Implies(BOTTOM, BOTTOM)


def disj(a: Formula, b: Formula) -> Formula:
    return Implies(Implies(a, BOTTOM), b)


def conj(a: Formula, b: Formula) -> Formula:
    return Implies(Implies(a, Implies(b, BOTTOM)), BOTTOM)


def iff(a: Formula, b: Formula) -> Formula:
    return conj(Implies(a, b), Implies(b, a))


def as_neg(f: Formula) -> Formula | None:
    if isinstance(f, Implies) and f.consequent == BOTTOM:
        return f.antecedent
    return None


def as_disj(f: Formula) -> tuple[Formula, Formula] | None:
    if isinstance(f, Implies):
        left = as_neg(f.antecedent)
        if left is not None:
            return left, f.consequent
    return None


def as_conj(f: Formula) -> tuple[Formula, Formula] | None:
    inner = as_neg(f)
    if isinstance(inner, Implies):
        right = as_neg(inner.consequent)
        if right is not None:
            return inner.antecedent, right
    return None


# --------------------------------------------------------- dialect checking


def term_dialect_error(t: Term, dialect: Dialect) -> str | None:
    allowed = _ALLOWED[dialect]
    stack = [t]
    while stack:
        node = stack.pop()
        if type(node) not in allowed:
            return f"{_CONSTRUCTOR_NAMES[type(node)]} is not part of the {dialect.value} dialect"
        if isinstance(node, (Sum, Union, App)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Bang):
            stack.append(node.body)
    return None


def check_term(t: Term, dialect: Dialect) -> Term:
    err = term_dialect_error(t, dialect)
    if err:
        raise DialectError(err)
    return t


def check_formula(f: Formula, dialect: Dialect) -> Formula:
    for t in terms_in(f):
        check_term(t, dialect)
    return f


def formula_in_dialect(f: Formula, dialect: Dialect) -> bool:
    return all(term_dialect_error(t, dialect) is None for t in terms_in(f))


# ---------------------------------------------------------------- structure


def subterms(t: Term) -> Iterator[Term]:
    """All subterms of ``t`` including ``t`` itself (pre-order)."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Sum, Union, App)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Bang):
            stack.append(node.body)


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Implies):
            stack.append(node.consequent)
            stack.append(node.antecedent)
        elif isinstance(node, Justified):
            stack.append(node.body)


def terms_in(f: Formula) -> Iterator[Term]:
    """Top-level terms of every ``Justified`` node in ``f``."""
    for g in subformulas(f):
        if isinstance(g, Justified):
            yield g.term


def atoms_in(f: Formula) -> set[int]:
    return {g.index for g in subformulas(f) if isinstance(g, Atom)}


def is_propositional(f: Formula) -> bool:
    return not any(isinstance(g, Justified) for g in subformulas(f))


def term_size(t: Term) -> int:
    return sum(1 for _ in subterms(t))


def term_depth(t: Term) -> int:
    if isinstance(t, (Sum, Union, App)):
        return 1 + max(term_depth(t.left), term_depth(t.right))
    if isinstance(t, Bang):
        return 1 + term_depth(t.body)
    return 0


def formula_size(f: Formula) -> int:
    if isinstance(f, Implies):
        return 1 + formula_size(f.antecedent) + formula_size(f.consequent)
    if isinstance(f, Justified):
        return term_size(f.term) + formula_size(f.body)
    return 1


def formula_depth(f: Formula) -> int:
    if isinstance(f, Implies):
        return 1 + max(formula_depth(f.antecedent), formula_depth(f.consequent))
    if isinstance(f, Justified):
        return 1 + formula_depth(f.body)
    return 0


def is_cstar_term(t: Term) -> bool:
    """``cstar`` itself, or a sum with a c*-term among its arguments."""
    if isinstance(t, CStar):
        return True
    if isinstance(t, Sum):
        return is_cstar_term(t.left) or is_cstar_term(t.right)
    return False


def is_atomic_term(t: Term) -> bool:
    return isinstance(t, (Constant, Variable, CStar, Zero, One))


def bang_depth(t: Term) -> tuple[int, Term]:
    """Split ``!...!s`` into the number of bangs and ``s``."""
    n = 0
    while isinstance(t, Bang):
        n += 1
        t = t.body
    return n, t


def bangs(n: int, t: Term) -> Term:
    for _ in range(n):
        t = Bang(t)
    return t


def mk_application(s: Term, t: Term, dialect: Dialect = Dialect.STAR) -> Term:
    """Defined application ``s.t`` as ``s + t + cstar``."""
    if dialect is Dialect.APP:
        raise DialectError("defined application needs cstar; use the native App constructor in the app dialect")
    for u in (s, t):
        err = term_dialect_error(u, dialect)
        if err:
            raise DialectError(err)
    return Sum(Sum(s, t), CSTAR)


def forget_translation(f: Formula) -> Formula:
    """Erase every justification prefix: ``t:A`` becomes the translation of ``A``."""
    if isinstance(f, Implies):
        a = forget_translation(f.antecedent)
        b = forget_translation(f.consequent)
        if a is f.antecedent and b is f.consequent:
            return f
        return Implies(a, b)
    if isinstance(f, Justified):
        return forget_translation(f.body)
    return f


# ----------------------------------------------------------------- universes


def _formula_key(f: Formula) -> tuple[int, str]:
    return formula_size(f), print_formula(f)


def _term_key(t: Term) -> tuple[int, str]:
    return term_size(t), print_term(t)


class FormulaUniverse:
    """A finite, subformula-closed set of formulas and the terms occurring in it.

    Formulas are ordered by size and then by printed text, so every formula
    appears after all of its subformulas.  Terms are closed under subterms and
    always include ``cstar`` outside the app dialect.
    """

    __slots__ = ("dialect", "formulas", "terms", "_findex", "_tindex")

    def __init__(self, formulas: Iterable[Formula], dialect: Dialect = Dialect.STAR):
        self.dialect = Dialect.from_name(dialect)
        fs = set(formulas)
        for f in fs:
            check_formula(f, self.dialect)
            if isinstance(f, Implies):
                missing = [g for g in (f.antecedent, f.consequent) if g not in fs]
            elif isinstance(f, Justified):
                missing = [] if f.body in fs else [f.body]
            else:
                missing = []
            if missing:
                raise ValueError(
                    f"universe is not subformula-closed: {print_formula(missing[0])} "
                    f"missing (needed by {print_formula(f)})"
                )
        self.formulas: tuple[Formula, ...] = tuple(sorted(fs, key=_formula_key))
        ts: set[Term] = set()
        for f in self.formulas:
            if isinstance(f, Justified):
                ts.update(subterms(f.term))
        if self.dialect is not Dialect.APP:
            ts.add(CSTAR)
        self.terms: tuple[Term, ...] = tuple(sorted(ts, key=_term_key))
        self._findex = {f: i for i, f in enumerate(self.formulas)}
        self._tindex = {t: i for i, t in enumerate(self.terms)}

    def __contains__(self, f: object) -> bool:
        return f in self._findex

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.formulas)

    def __len__(self) -> int:
        return len(self.formulas)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FormulaUniverse)
            and self.dialect is other.dialect
            and self.formulas == other.formulas
        )

    def __hash__(self) -> int:
        return hash((self.dialect, self.formulas))

    def __repr__(self) -> str:
        return f"FormulaUniverse({len(self.formulas)} formulas, {len(self.terms)} terms, {self.dialect.value})"

    def has_term(self, t: Term) -> bool:
        return t in self._tindex

    def index(self, f: Formula) -> int:
        return self._findex[f]


def subformula_closure(seeds: Iterable[Formula], dialect: Dialect = Dialect.STAR) -> FormulaUniverse:
    closed: set[Formula] = set()
    for f in seeds:
        closed.update(subformulas(f))
    return FormulaUniverse(closed, dialect)


# ------------------------------------------------------------------ printing

_T_APP, _T_SUM, _T_PREFIX = 1, 2, 3


def _term_level(t: Term) -> int:
    if isinstance(t, App):
        return _T_APP
    if isinstance(t, (Sum, Union)):
        return _T_SUM
    return _T_PREFIX


def print_term(t: Term, var_prefix: str = "x") -> str:
    """Render ``t`` with as few parentheses as the grammar allows."""

    def go(t: Term) -> str:
        if isinstance(t, Constant):
            return f"c{t.index}"
        if isinstance(t, Variable):
            return f"{var_prefix}{t.index}"
        if isinstance(t, CStar):
            return "cstar"
        if isinstance(t, Zero):
            return "0"
        if isinstance(t, One):
            return "1"
        if isinstance(t, Bang):
            inner = go(t.body)
            return "!" + (inner if _term_level(t.body) == _T_PREFIX else f"({inner})")
        if isinstance(t, App):
            left = go(t.left)
            right = go(t.right)
            if _term_level(t.right) == _T_APP:
                right = f"({right})"
            return f"{left} . {right}"
        if isinstance(t, (Sum, Union)):
            op = "+" if isinstance(t, Sum) else "\\/"
            left = go(t.left)
            if not (_term_level(t.left) == _T_PREFIX or type(t.left) is type(t)):
                left = f"({left})"
            right = go(t.right)
            if _term_level(t.right) != _T_PREFIX:
                right = f"({right})"
            return f"{left} {op} {right}"
        raise TypeError(f"not a term: {t!r}")

    return go(t)


def print_formula(f: Formula, var_prefix: str = "x") -> str:
    def go(f: Formula) -> str:
        if isinstance(f, Atom):
            return f"p{f.index}"
        if isinstance(f, Bottom):
            return "_|_"
        if isinstance(f, Implies):
            left = go(f.antecedent)
            if isinstance(f.antecedent, Implies):
                left = f"({left})"
            return f"{left} -> {go(f.consequent)}"
        if isinstance(f, Justified):
            body = go(f.body)
            if isinstance(f.body, Implies):
                body = f"({body})"
            return f"{print_term(f.term, var_prefix)} : {body}"
        raise TypeError(f"not a formula: {f!r}")

    return go(f)


# ------------------------------------------------------------------- parsing

_TOKEN_PATTERNS = [
    ("WS", r"\s+"),
    ("CSTAR", r"cstar(?![A-Za-z0-9_])|c\*|c⋆"),
    ("CONST", r"c(\d+)"),
    ("VAR", r"[xu](\d+)"),
    ("ATOM", r"p(\d+)"),
    ("BOT", r"_\|_|⊥"),
    ("TOP", r"_T_|⊤"),
    ("IFF", r"<->|↔"),
    ("IMP", r"->|→"),
    ("COLON", r":"),
    ("PLUS", r"\+"),
    ("UNION", r"\\/|∪"),
    ("BANG", r"!"),
    ("DOT", r"\.|·"),
    ("NUM", r"\d+"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("NOT", r"~|¬"),
    ("AND", r"&|∧"),
    ("OR", r"\||∨"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKEN_PATTERNS))
_TERM_START = frozenset({"CSTAR", "CONST", "VAR", "BANG", "NUM"})


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "WS":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dialect: Dialect):
        self.tokens = _tokenize(text)
        self.i = 0
        self.dialect = dialect

    @property
    def kind(self) -> str:
        return self.tokens[self.i][0]

    @property
    def pos(self) -> int:
        return self.tokens[self.i][2]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> tuple[str, str, int]:
        if self.kind != kind:
            raise ParseError(f"expected {what}, found {self._describe()}", self.pos)
        return self.advance()

    def _describe(self) -> str:
        kind, text, _ = self.tokens[self.i]
        return "end of input" if kind == "EOF" else repr(text)

    def _need(self, allowed: bool, what: str, pos: int) -> None:
        if not allowed:
            raise DialectError(f"{what} is not part of the {self.dialect.value} dialect", pos)

    # terms ------------------------------------------------------------

    def term(self) -> Term:
        left = self.sumlike()
        while self.kind == "DOT":
            self._need(self.dialect is Dialect.APP, "application (.)", self.pos)
            self.advance()
            left = App(left, self.sumlike())
        return left

    def sumlike(self) -> Term:
        left = self.prefix()
        op = None
        while self.kind in ("PLUS", "UNION"):
            kind, _, pos = self.tokens[self.i]
            if kind == "UNION":
                self._need(self.dialect is Dialect.PROB, "union (\\/)", pos)
            if op is not None and op != kind:
                raise ParseError("mixing + and \\/ requires parentheses", pos)
            op = kind
            self.advance()
            right = self.prefix()
            left = Sum(left, right) if kind == "PLUS" else Union(left, right)
        return left

    def prefix(self) -> Term:
        if self.kind == "BANG":
            self.advance()
            return Bang(self.prefix())
        return self.atomic_term()

    def atomic_term(self) -> Term:
        kind, text, pos = self.tokens[self.i]
        if kind == "CSTAR":
            self._need(self.dialect is not Dialect.APP, "cstar", pos)
            self.advance()
            return CSTAR
        if kind == "CONST":
            self.advance()
            return Constant(int(text[1:]))
        if kind == "VAR":
            self.advance()
            return Variable(int(text[1:]))
        if kind == "NUM":
            if text not in ("0", "1"):
                raise ParseError(f"unexpected number {text!r}", pos)
            self._need(self.dialect is Dialect.PROB, f"the constant {text}", pos)
            self.advance()
            return ZERO if text == "0" else ONE
        if kind == "LP":
            self.advance()
            t = self.term()
            self.expect("RP", "')'")
            return t
        raise ParseError(f"expected a term, found {self._describe()}", pos)

    # formulas ---------------------------------------------------------

    def formula(self) -> Formula:
        left = self.implication()
        if self.kind == "IFF":
            self.advance()
            return iff(left, self.formula())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.kind == "IMP":
            self.advance()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.kind == "OR":
            self.advance()
            left = disj(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.kind == "AND":
            self.advance()
            left = conj(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, text, pos = self.tokens[self.i]
        if kind == "NOT":
            self.advance()
            return neg(self.unary())
        if kind == "ATOM":
            self.advance()
            return Atom(int(text[1:]))
        if kind == "BOT":
            self.advance()
            return BOTTOM
        if kind == "TOP":
            self.advance()
            return TOP
        if kind in _TERM_START:
            return self.justified()
        if kind == "LP":
            # "(" opens either a parenthesised term before ':' or a formula
            save = self.i
            try:
                self.term()
                is_term = self.kind == "COLON"
            except (ParseError, DialectError):
                is_term = False
            self.i = save
            if is_term:
                return self.justified()
            self.advance()
            f = self.formula()
            self.expect("RP", "')'")
            return f
        raise ParseError(f"expected a formula, found {self._describe()}", pos)

    def justified(self) -> Formula:
        t = self.term()
        self.expect("COLON", "':' after a term")
        return Justified(t, self.unary())


def parse_term(text: str, dialect: Dialect | str = Dialect.STAR) -> Term:
    p = _Parser(text, Dialect.from_name(dialect))
    t = p.term()
    p.expect("EOF", "end of input")
    return t


def parse_formula(text: str, dialect: Dialect | str = Dialect.STAR) -> Formula:
    p = _Parser(text, Dialect.from_name(dialect))
    f = p.formula()
    p.expect("EOF", "end of input")
    return f
