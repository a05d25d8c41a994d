"""Axiom schemes, logic configurations and constant specifications."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .lattice import lattice_leq
from .syntax import (
    BOTTOM,
    CSTAR,
    App,
    Bang,
    Bottom,
    Constant,
    Dialect,
    Formula,
    Implies,
    Justified,
    One,
    Sum,
    Term,
    Union,
    Zero,
    as_conj,
    as_disj,
    conj,
    disj,
    formula_in_dialect,
    is_cstar_term,
    is_propositional,
    mk_application,
    parse_formula,
    print_formula,
)
from .truthtable import is_tautology


class SchemeId(enum.Enum):
    CL1 = "CL1"
    CL2 = "CL2"
    CL3 = "CL3"
    JPlus = "JPlus"
    JCStar = "JCStar"
    J = "J"
    J4 = "J4"
    JD = "JD"
    JT = "JT"
    PE_UnionIntro = "PE_UnionIntro"
    PE_One = "PE_One"
    PE_Zero = "PE_Zero"
    PE_Monotone = "PE_Monotone"

    @classmethod
    def from_name(cls, name: "str | SchemeId") -> "SchemeId":
        if isinstance(name, SchemeId):
            return name
        key = name.strip()
        try:
            return _SCHEME_ALIASES[key.lower()]
        except KeyError:
            raise ValueError(f"unknown axiom scheme {name!r}") from None

    @property
    def label(self) -> str:
        """Conventional short label (``j+``, ``jc*``, ``jt`` ...)."""
        return _LABELS.get(self, self.value)


_LABELS = {
    SchemeId.CL1: "cl",
    SchemeId.CL2: "cl",
    SchemeId.CL3: "cl",
    SchemeId.JPlus: "j+",
    SchemeId.JCStar: "jc*",
    SchemeId.J: "j",
    SchemeId.J4: "j4",
    SchemeId.JD: "jd",
    SchemeId.JT: "jt",
}

_SCHEME_ALIASES: dict[str, SchemeId] = {s.value.lower(): s for s in SchemeId}
_SCHEME_ALIASES.update({"j+": SchemeId.JPlus, "jc*": SchemeId.JCStar, "jcstar": SchemeId.JCStar,
                        "pe2": SchemeId.J, "pe3": SchemeId.PE_UnionIntro,
                        "pe4a": SchemeId.PE_One, "pe4b": SchemeId.PE_Zero, "pe5": SchemeId.PE_Monotone})

BETA_SCHEMES = frozenset({SchemeId.J4, SchemeId.JD, SchemeId.JT})
PE_SCHEMES = frozenset({SchemeId.PE_UnionIntro, SchemeId.PE_One, SchemeId.PE_Zero, SchemeId.PE_Monotone})


def parse_scheme_list(text: str) -> frozenset[SchemeId]:
    text = text.strip()
    if not text or text.lower() in ("none", "-"):
        return frozenset()
    return frozenset(SchemeId.from_name(part) for part in text.split(",") if part.strip())


@dataclass(frozen=True)
class LogicConfig:
    """Which logic of the family is in force.

    ``beta`` picks any subset of ``{J4, JD, JT}``; ``pe_mode`` (prob dialect
    only) adds the probabilistic-evidence postulates.
    """

    dialect: Dialect = Dialect.STAR
    beta: frozenset = frozenset()
    pe_mode: bool = False

    def __post_init__(self):
        object.__setattr__(self, "dialect", Dialect.from_name(self.dialect))
        beta = frozenset(SchemeId.from_name(b) for b in self.beta)
        if not beta <= BETA_SCHEMES:
            bad = ", ".join(sorted(s.value for s in beta - BETA_SCHEMES))
            raise ValueError(f"beta may only contain J4, JD, JT (got {bad})")
        object.__setattr__(self, "beta", beta)
        if self.pe_mode and self.dialect is not Dialect.PROB:
            raise ValueError("pe_mode requires the prob dialect")

    @classmethod
    def parse(cls, logic: str = "star", beta: str = "", pe_mode: bool | None = None) -> "LogicConfig":
        dialect = Dialect.from_name(logic)
        if pe_mode is None:
            pe_mode = dialect is Dialect.PROB
        return cls(dialect, parse_scheme_list(beta), pe_mode)

    def active_schemes(self) -> tuple[SchemeId, ...]:
        return _active(self)

    def is_active(self, scheme: SchemeId) -> bool:
        return scheme in _active_set(self)

    def describe(self) -> str:
        beta = ",".join(s.value for s in SchemeId if s in self.beta) or "none"
        pe = " +PE" if self.pe_mode else ""
        return f"{self.dialect.value} beta={beta}{pe}"


@lru_cache(maxsize=None)
def _active(config: LogicConfig) -> tuple[SchemeId, ...]:
    on = {SchemeId.CL1, SchemeId.CL2, SchemeId.CL3, SchemeId.JPlus}
    if config.dialect is Dialect.APP:
        on.add(SchemeId.J)
    else:
        on.add(SchemeId.JCStar)
    if config.pe_mode:
        on.add(SchemeId.J)
        on |= PE_SCHEMES
    on |= config.beta
    return tuple(s for s in SchemeId if s in on)


@lru_cache(maxsize=None)
def _active_set(config: LogicConfig) -> frozenset[SchemeId]:
    return frozenset(_active(config))


# ------------------------------------------------------------- instantiation


def _application(s: Term, t: Term, dialect: Dialect) -> Term:
    return App(s, t) if dialect is Dialect.APP else mk_application(s, t, dialect)


def instantiate(scheme: SchemeId | str, dialect: Dialect = Dialect.STAR, **parts) -> Formula:
    """Build the instance of ``scheme`` for the given metavariables.

    Formula metavariables are ``A``, ``B``, ``C`` (``X`` for monotonicity),
    term metavariables ``s``, ``t`` and ``c``.  Side conditions are enforced.
    """
    scheme = SchemeId.from_name(scheme)
    p = parts
    if scheme is SchemeId.CL1:
        return Implies(p["A"], Implies(p["B"], p["A"]))
    if scheme is SchemeId.CL2:
        a, b, c = p["A"], p["B"], p["C"]
        return Implies(Implies(a, Implies(b, c)), Implies(Implies(a, b), Implies(a, c)))
    if scheme is SchemeId.CL3:
        a = p["A"]
        return Implies(Implies(Implies(a, BOTTOM), BOTTOM), a)
    if scheme is SchemeId.JPlus:
        s, t, a = p["s"], p["t"], p["A"]
        return Implies(disj(Justified(s, a), Justified(t, a)), Justified(Sum(s, t), a))
    if scheme is SchemeId.JCStar:
        c, a, b = p["c"], p["A"], p["B"]
        if not is_cstar_term(c):
            raise ValueError(f"JCStar needs a c*-term, got {c}")
        return Implies(conj(Justified(c, a), Justified(c, Implies(a, b))), Justified(c, b))
    if scheme is SchemeId.J:
        s, t, a, b = p["s"], p["t"], p["A"], p["B"]
        st = _application(s, t, dialect)
        return Implies(Justified(s, Implies(a, b)), Implies(Justified(t, a), Justified(st, b)))
    if scheme is SchemeId.J4:
        t, a = p["t"], p["A"]
        return Implies(Justified(t, a), Justified(Bang(t), Justified(t, a)))
    if scheme is SchemeId.JD:
        return Implies(Justified(p["t"], BOTTOM), BOTTOM)
    if scheme is SchemeId.JT:
        t, a = p["t"], p["A"]
        return Implies(Justified(t, a), a)
    if scheme is SchemeId.PE_UnionIntro:
        s, t, a = p["s"], p["t"], p["A"]
        return Implies(conj(Justified(s, a), Justified(t, a)), Justified(Union(s, t), a))
    if scheme is SchemeId.PE_One:
        a = p["A"]
        if not (is_propositional(a) and is_tautology(a)):
            raise ValueError("PE_One needs a propositional tautology")
        return Justified(One(), a)
    if scheme is SchemeId.PE_Zero:
        a = p["A"]
        if not is_propositional(a):
            raise ValueError("PE_Zero needs a propositional formula")
        return Justified(Zero(), a)
    if scheme is SchemeId.PE_Monotone:
        s, t, x = p["s"], p["t"], p["X"]
        if not lattice_leq(s, t):
            raise ValueError(f"PE_Monotone needs {s} below {t} in the evidence lattice")
        return Implies(Justified(t, x), Justified(s, x))
    raise AssertionError(scheme)


# ------------------------------------------------------------------ matching


def _j(f: Formula) -> tuple[Term, Formula] | None:
    return (f.term, f.body) if isinstance(f, Justified) else None


def _imp(f: Formula) -> tuple[Formula, Formula] | None:
    return (f.antecedent, f.consequent) if isinstance(f, Implies) else None


def _match_cl1(f, config):
    top = _imp(f)
    if top:
        a, rest = top
        inner = _imp(rest)
        if inner and inner[1] == a:
            return {"A": a, "B": inner[0]}
    return None


def _match_cl2(f, config):
    top = _imp(f)
    if not top:
        return None
    left, right = top
    l1 = _imp(left)
    if not l1:
        return None
    a, bc = l1
    l2 = _imp(bc)
    r1 = _imp(right)
    if not (l2 and r1):
        return None
    b, c = l2
    ab, ac = r1
    if ab == Implies(a, b) and ac == Implies(a, c):
        return {"A": a, "B": b, "C": c}
    return None


def _match_cl3(f, config):
    top = _imp(f)
    if top:
        nn, a = top
        if nn == Implies(Implies(a, BOTTOM), BOTTOM):
            return {"A": a}
    return None


def _match_jplus(f, config):
    top = _imp(f)
    if not top:
        return None
    d = as_disj(top[0])
    concl = _j(top[1])
    if not (d and concl):
        return None
    left, right = _j(d[0]), _j(d[1])
    if not (left and right) or not isinstance(concl[0], Sum):
        return None
    s, a = left
    t, a2 = right
    if a == a2 == concl[1] and concl[0] == Sum(s, t):
        return {"s": s, "t": t, "A": a}
    return None


def _match_jcstar(f, config):
    top = _imp(f)
    if not top:
        return None
    c_ = as_conj(top[0])
    concl = _j(top[1])
    if not (c_ and concl):
        return None
    first, second = _j(c_[0]), _j(c_[1])
    if not (first and second):
        return None
    c, a = first
    c2, ab = second
    c3, b = concl
    if c == c2 == c3 and ab == Implies(a, b) and is_cstar_term(c):
        return {"c": c, "A": a, "B": b}
    return None


def _match_j(f, config):
    top = _imp(f)
    if not top:
        return None
    first = _j(top[0])
    rest = _imp(top[1])
    if not (first and rest):
        return None
    s, ab = first
    second, concl = _j(rest[0]), _j(rest[1])
    if not (second and concl) or not isinstance(ab, Implies):
        return None
    t, a = second
    st, b = concl
    if ab.antecedent != a or ab.consequent != b:
        return None
    expected = App(s, t) if config.dialect is Dialect.APP else Sum(Sum(s, t), CSTAR)
    if st == expected:
        return {"s": s, "t": t, "A": a, "B": b}
    return None


def _match_j4(f, config):
    top = _imp(f)
    if not top:
        return None
    first, concl = _j(top[0]), _j(top[1])
    if first and concl and concl[0] == Bang(first[0]) and concl[1] == top[0]:
        return {"t": first[0], "A": first[1]}
    return None


def _match_jd(f, config):
    top = _imp(f)
    if top and isinstance(top[1], Bottom):
        first = _j(top[0])
        if first and isinstance(first[1], Bottom):
            return {"t": first[0]}
    return None


def _match_jt(f, config):
    top = _imp(f)
    if top:
        first = _j(top[0])
        if first and first[1] == top[1]:
            return {"t": first[0], "A": first[1]}
    return None


def _match_union(f, config):
    top = _imp(f)
    if not top:
        return None
    c_ = as_conj(top[0])
    concl = _j(top[1])
    if not (c_ and concl):
        return None
    left, right = _j(c_[0]), _j(c_[1])
    if not (left and right):
        return None
    s, a = left
    t, a2 = right
    if a == a2 == concl[1] and concl[0] == Union(s, t):
        return {"s": s, "t": t, "A": a}
    return None


def _match_one(f, config):
    j = _j(f)
    if j and isinstance(j[0], One) and is_propositional(j[1]) and is_tautology(j[1]):
        return {"A": j[1]}
    return None


def _match_zero(f, config):
    j = _j(f)
    if j and isinstance(j[0], Zero) and is_propositional(j[1]):
        return {"A": j[1]}
    return None


def _match_monotone(f, config):
    top = _imp(f)
    if not top:
        return None
    first, concl = _j(top[0]), _j(top[1])
    if first and concl and first[1] == concl[1] and lattice_leq(concl[0], first[0]):
        return {"s": concl[0], "t": first[0], "X": first[1]}
    return None


_MATCHERS = {
    SchemeId.CL1: _match_cl1,
    SchemeId.CL2: _match_cl2,
    SchemeId.CL3: _match_cl3,
    SchemeId.JPlus: _match_jplus,
    SchemeId.JCStar: _match_jcstar,
    SchemeId.J: _match_j,
    SchemeId.J4: _match_j4,
    SchemeId.JD: _match_jd,
    SchemeId.JT: _match_jt,
    SchemeId.PE_UnionIntro: _match_union,
    SchemeId.PE_One: _match_one,
    SchemeId.PE_Zero: _match_zero,
    SchemeId.PE_Monotone: _match_monotone,
}


@lru_cache(maxsize=1 << 18)
def match_scheme(f: Formula, scheme: SchemeId, config: LogicConfig) -> dict | None:
    """Substitution witnessing ``f`` as an instance of ``scheme`` under ``config``.

    Returns ``None`` when the scheme is inactive, the formula leaves the
    dialect, or the shape/side condition does not fit.
    """
    if not config.is_active(scheme) or not formula_in_dialect(f, config.dialect):
        return None
    return _MATCHERS[scheme](f, config)


def match_axiom(f: Formula, config: LogicConfig) -> tuple[SchemeId, dict] | None:
    """First active scheme (in ``SchemeId`` order) that ``f`` instantiates."""
    for scheme in config.active_schemes():
        sub = match_scheme(f, scheme, config)
        if sub is not None:
            return scheme, sub
    return None


def is_axiom(f: Formula, config: LogicConfig) -> bool:
    return match_axiom(f, config) is not None


# ---------------------------------------------------- constant specifications


class ConstantSpecification:
    """Which constants justify which axioms.

    ``schematic`` grants a constant every instance of the listed schemes;
    ``universal`` grants schemes to every constant (the total CS grants all of
    them); ``explicit`` lists single (constant, axiom) pairs.
    """

    __slots__ = ("_schematic", "explicit", "universal")

    def __init__(
        self,
        schematic: Mapping[int, Iterable[SchemeId | str]] | None = None,
        explicit: Iterable[tuple[int, Formula]] = (),
        universal: Iterable[SchemeId | str] = (),
    ):
        sch = {}
        for c, schemes in (schematic or {}).items():
            sch[int(c)] = frozenset(SchemeId.from_name(s) for s in schemes)
        self._schematic = tuple(sorted((c, s) for c, s in sch.items() if s))
        self.explicit = frozenset((int(c), a) for c, a in explicit)
        self.universal = frozenset(SchemeId.from_name(s) for s in universal)

    @classmethod
    def total(cls) -> "ConstantSpecification":
        return cls(universal=tuple(SchemeId))

    @classmethod
    def empty(cls) -> "ConstantSpecification":
        return cls()

    @property
    def schematic(self) -> dict[int, frozenset[SchemeId]]:
        return dict(self._schematic)

    @property
    def is_total(self) -> bool:
        return self.universal == frozenset(SchemeId)

    def grants(self, c: int) -> frozenset[SchemeId]:
        return self.universal | dict(self._schematic).get(c, frozenset())

    def check(self, config: LogicConfig) -> "ConstantSpecification":
        """Raise unless every explicit pair holds an axiom instance of ``config``."""
        for c, a in sorted(self.explicit, key=lambda p: (p[0], print_formula(p[1]))):
            if not is_axiom(a, config):
                raise ValueError(f"c{c} |- {print_formula(a)}: not an axiom of {config.describe()}")
        return self

    def _key(self):
        return (self._schematic, self.explicit, self.universal)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConstantSpecification) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.is_total and not self._schematic and not self.explicit:
            return "ConstantSpecification.total()"
        return (f"ConstantSpecification(schematic={self.schematic!r}, "
                f"explicit={len(self.explicit)} pairs, universal={sorted(s.value for s in self.universal)})")


@lru_cache(maxsize=1 << 16)
def _cs_contains(cs: ConstantSpecification, c: int, a: Formula, config: LogicConfig) -> bool:
    if (c, a) in cs.explicit:
        return True
    return any(match_scheme(a, s, config) is not None for s in cs.grants(c))


def cs_contains(cs: ConstantSpecification, c: int | Constant, a: Formula, config: LogicConfig) -> bool:
    if isinstance(c, Constant):
        c = c.index
    return _cs_contains(cs, c, a, config)


def is_axiomatically_appropriate(cs: ConstantSpecification, config: LogicConfig) -> bool:
    """Every active scheme is granted schematically to some constant."""
    covered = set(cs.universal)
    for _, schemes in cs._schematic:
        covered |= schemes
    return all(s in covered for s in config.active_schemes())


def config_warnings(config: LogicConfig, cs: ConstantSpecification) -> list[str]:
    out = []
    if SchemeId.JD in config.beta and SchemeId.JT not in config.beta:
        if not is_axiomatically_appropriate(cs, config):
            out.append("JD without JT needs an axiomatically appropriate constant specification "
                       "for the completeness argument")
    return out


# ----------------------------------------------------------------- CS files

_SCHEMATIC_LINE = re.compile(r"^(c(\d+)|\*)\s*:\s*(.+)$")
_EXPLICIT_LINE = re.compile(r"^c(\d+)\s*\|-\s*(.+)$")


def parse_cs(text: str, config: LogicConfig) -> ConstantSpecification:
    """Read ``c<n>: SCHEME,...`` and ``c<n> |- <formula>`` lines.

    ``*: ...`` grants schemes to every constant and ``ALL`` stands for every
    scheme.  Blank lines and ``#`` comments are ignored.
    """
    schematic: dict[int, set[SchemeId]] = {}
    universal: set[SchemeId] = set()
    explicit = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _EXPLICIT_LINE.match(line)
        if m:
            explicit.append((int(m.group(1)), parse_formula(m.group(2), config.dialect)))
            continue
        m = _SCHEMATIC_LINE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot read constant specification entry {raw!r}")
        body = m.group(3).strip()
        schemes = set(SchemeId) if body.upper() == "ALL" else set(parse_scheme_list(body))
        if m.group(1) == "*":
            universal |= schemes
        else:
            schematic.setdefault(int(m.group(2)), set()).update(schemes)
    return ConstantSpecification(schematic, explicit, universal).check(config)


def format_cs(cs: ConstantSpecification) -> str:
    lines = []

    def names(schemes):
        if schemes == frozenset(SchemeId):
            return "ALL"
        return ",".join(s.value for s in SchemeId if s in schemes)

    if cs.universal:
        lines.append(f"*: {names(cs.universal)}")
    for c, schemes in cs._schematic:
        lines.append(f"c{c}: {names(schemes)}")
    for c, a in sorted(cs.explicit, key=lambda p: (p[0], print_formula(p[1]))):
        lines.append(f"c{c} |- {print_formula(a)}")
    return "\n".join(lines) + ("\n" if lines else "")
