"""Text syntax for maps and tame words, and the matching serializers.

Maps::

    map    := "(" poly { "," poly } ")"
    poly   := [ "+" | "-" ] term { ( "+" | "-" ) term }
    term   := factor { "*" factor }
    factor := atom [ "^" nat ]
    atom   := integer | "t" | "X" nat | "(" poly ")"

Integers are elements of the prime field and must lie in [0, p); ``t`` is the
extension generator.  Tame words are ``;``-separated factors::

    A[(row),(row),... | (b)]   J[(diag) | (tails)]   E[i | poly]
    T(i,j)   D(i,c)   R(i,j,c)   id

Whitespace is insignificant; error offsets count non-whitespace characters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..automorphism import (
    AffineAut,
    ElementaryAut,
    PolyMap,
    RowAdd,
    Scale,
    Swap,
    TameWord,
    TriangularAut,
)
from ..errors import (
    ArityMismatch,
    CoefficientOutOfField,
    ParseError,
    SingularMatrix,
    UnknownVariable,
)
from ..gf import FieldElement, FiniteField
from ..linalg import determinant
from ..mvpoly import MultivariatePolynomial as Poly

_TOKEN = re.compile(r"\s*(?:(X\d+)|(\d+)|([A-Za-z]+)|(\S))")


@dataclass
class _Tok:
    kind: str  # "var", "int", "name", "sym", "end"
    text: str
    column: int
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    nonws = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.lastindex is None:
            break
        start = m.start(m.lastindex)
        nonws += sum(1 for ch in text[pos:start] if not ch.isspace())
        kind = ("var", "int", "name", "sym")[m.lastindex - 1]
        toks.append(_Tok(kind, m.group(m.lastindex), start, nonws))
        nonws += len(m.group(m.lastindex))
        pos = m.end()
    toks.append(_Tok("end", "", len(text), nonws))
    return toks


class _Parser:
    def __init__(self, text: str, field: FiniteField, n: int):
        self.field = field
        self.n = n
        self.toks = _tokenize(text)
        self.k = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        return cls(f"{msg}, found {found}", tok.offset, tok.column)

    def accept(self, text) -> bool:
        if self.tok.text == text and self.tok.kind in ("sym", "name"):
            self.k += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            raise self.error(f"expected {text!r}")

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        v = int(self.tok.text)
        self.k += 1
        return v

    def expect_end(self):
        if self.tok.kind != "end":
            raise self.error("unexpected trailing input")

    # -- polynomials --------------------------------------------------------

    def poly(self) -> Poly:
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        total = self.term()
        if negate:
            total = -total
        while True:
            if self.accept("+"):
                total = total + self.term()
            elif self.accept("-"):
                total = total - self.term()
            else:
                return total

    def term(self) -> Poly:
        value = self.factor()
        while self.accept("*"):
            value = value * self.factor()
        return value

    def factor(self) -> Poly:
        base = self.atom()
        if self.accept("^"):
            base = base ** self.expect_int()
        return base

    def atom(self) -> Poly:
        tok = self.tok
        f, n = self.field, self.n
        if tok.kind == "int":
            v = int(tok.text)
            if v >= f.p:
                raise self.error(f"integer coefficient outside [0, {f.p})", cls=CoefficientOutOfField)
            self.k += 1
            return Poly.constant(f, n, v)
        if tok.kind == "var":
            i = int(tok.text[1:])
            if not 1 <= i <= n:
                raise self.error(f"variable outside X1..X{n}", cls=UnknownVariable)
            self.k += 1
            return Poly.var(f, n, i)
        if tok.kind == "name" and tok.text == "t":
            if f.m == 1:
                raise self.error("'t' used over a prime field", cls=CoefficientOutOfField)
            self.k += 1
            return Poly.constant(f, n, f.t)
        if self.accept("("):
            inner = self.poly()
            self.expect(")")
            return inner
        if tok.kind == "name":
            raise self.error("unknown name", cls=UnknownVariable)
        raise self.error("expected a term")

    def constant(self) -> FieldElement:
        tok = self.tok
        p = self.poly()
        if not p.is_constant():
            raise self.error("expected a field constant", tok=tok)
        return p.constant_term()

    def tuple_of(self, item):
        self.expect("(")
        out = [item()]
        while self.accept(","):
            out.append(item())
        self.expect(")")
        return out

    def polymap(self) -> PolyMap:
        start = self.tok
        comps = self.tuple_of(self.poly)
        if len(comps) != self.n:
            raise ParseError(f"map has {len(comps)} components, expected {self.n}",
                             start.offset, start.column)
        return PolyMap(self.field, self.n, tuple(comps))

    # -- words --------------------------------------------------------------

    def word(self) -> TameWord:
        factors = []
        if self.tok.kind == "end" or self.accept("id"):
            self.expect_end()
            return TameWord(self.field, self.n, ())
        factors.append(self.word_factor())
        while self.accept(";"):
            factors.append(self.word_factor())
        self.expect_end()
        return TameWord(self.field, self.n, tuple(factors))

    def word_factor(self):
        tok = self.tok
        f, n = self.field, self.n
        if tok.kind != "name":
            raise self.error("expected a factor A, J, E, T, D or R")
        name = tok.text
        self.k += 1
        if name == "A":
            self.expect("[")
            rows = [self.tuple_of(self.constant)]
            while self.accept(","):
                rows.append(self.tuple_of(self.constant))
            b = self.tuple_of(self.constant) if self.accept("|") else [f.zero] * n
            self.expect("]")
            if len(rows) != n or any(len(r) != n for r in rows) or len(b) != n:
                raise ParseError(f"affine factor must be {n}x{n} with a length-{n} shift",
                                 tok.offset, tok.column)
            m = tuple(tuple(r) for r in rows)
            return AffineAut(f, n, m, tuple(b))
        if name == "J":
            self.expect("[")
            diag = self.tuple_of(self.constant)
            self.expect("|")
            tails = self.tuple_of(self.poly)
            self.expect("]")
            if len(diag) != n or len(tails) != n:
                raise ParseError(f"triangular factor needs {n} diagonal entries and tails",
                                 tok.offset, tok.column)
            return TriangularAut(f, n, tuple(diag), tuple(tails))
        if name == "E":
            self.expect("[")
            i = self.expect_int()
            self.expect("|")
            a = self.poly()
            self.expect("]")
            return ElementaryAut(f, n, i, a)
        if name in ("T", "D", "R"):
            self.expect("(")
            i = self.expect_int()
            self.expect(",")
            if name == "D":
                c = self.constant()
                self.expect(")")
                g = Scale(i, c)
            else:
                j = self.expect_int()
                if name == "T":
                    self.expect(")")
                    g = Swap(i, j)
                else:
                    self.expect(",")
                    c = self.constant()
                    self.expect(")")
                    g = RowAdd(i, j, c)
            g.check(f, n)
            return g
        raise self.error("unknown factor", tok=tok)


def parse_poly(text: str, field: FiniteField, n: int) -> Poly:
    p = _Parser(text, field, n)
    out = p.poly()
    p.expect_end()
    return out


def parse_polymap(text: str, field: FiniteField, n: int) -> PolyMap:
    p = _Parser(text, field, n)
    out = p.polymap()
    p.expect_end()
    return out


def parse_map(text: str, field: FiniteField, n: int):
    """Parse and classify: elementary, affine, triangular, or a plain PolyMap."""
    return classify(parse_polymap(text, field, n))


def parse_word(text: str, field: FiniteField, n: int) -> TameWord:
    return _Parser(text, field, n).word()


def parse_constant(text: str, field: FiniteField) -> FieldElement:
    p = _Parser(text, field, 1)
    c = p.constant()
    p.expect_end()
    return c


# -- classification -----------------------------------------------------------


def classify(F: PolyMap):
    for attempt in (_as_elementary, _as_affine, _as_triangular):
        typed = attempt(F)
        if typed is not None:
            return typed
    return F


def _as_elementary(F: PolyMap):
    field, n = F.field, F.n
    xs = [Poly.var(field, n, k) for k in range(1, n + 1)]
    moved = [k for k in range(n) if F.components[k] != xs[k]]
    if not moved:
        return ElementaryAut(field, n, 1, Poly.zero(field, n))
    if len(moved) > 1:
        return None
    i = moved[0] + 1
    a = F.components[i - 1] - xs[i - 1]
    if a.uses_var(i):
        return None
    return ElementaryAut(field, n, i, a)


def _as_affine(F: PolyMap):
    field, n = F.field, F.n
    if F.degree > 1:
        return None
    rows, b = [], []
    for comp in F.components:
        row = []
        for k in range(n):
            e = [0] * n
            e[k] = 1
            row.append(comp.coefficient(e))
        rows.append(tuple(row))
        b.append(comp.constant_term())
    m = tuple(rows)
    if determinant(m).is_zero:
        return None
    return AffineAut(field, n, m, tuple(b))


def _as_triangular(F: PolyMap):
    field, n = F.field, F.n
    diag, tails = [], []
    for k, comp in enumerate(F.components, start=1):
        e = [0] * n
        e[k - 1] = 1
        a = comp.coefficient(e)
        tail = comp - Poly.var(field, n, k).scalar_mul(a)
        if a.is_zero or any(tail.uses_var(v) for v in range(1, k + 1)):
            return None
        diag.append(a)
        tails.append(tail)
    return TriangularAut(field, n, tuple(diag), tuple(tails))


# -- serialization --------------------------------------------------------------


def format_coeff(c: FieldElement, bare: bool = False) -> str:
    s = str(c)
    if bare or c.field.m == 1 or (" " not in s):
        return s
    return f"({s})"


def format_monomial(exps) -> str:
    parts = []
    for j, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"X{j}")
        elif e > 1:
            parts.append(f"X{j}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for exps, c in f.terms:
        mono = format_monomial(exps)
        if not mono:
            parts.append(format_coeff(c))
        elif c == f.field.one:
            parts.append(mono)
        else:
            parts.append(f"{format_coeff(c)}*{mono}")
    return " + ".join(parts)


def format_map(F: PolyMap) -> str:
    return "(" + ", ".join(format_poly(f) for f in F.components) + ")"


def _vec(xs) -> str:
    return "(" + ", ".join(format_coeff(x, bare=True) for x in xs) + ")"


def format_factor(g) -> str:
    if isinstance(g, AffineAut):
        rows = ", ".join(_vec(r) for r in g.matrix)
        return f"A[{rows} | {_vec(g.translation)}]"
    if isinstance(g, TriangularAut):
        tails = "(" + ", ".join(format_poly(t) for t in g.tails) + ")"
        return f"J[{_vec(g.diag)} | {tails}]"
    if isinstance(g, ElementaryAut):
        return f"E[{g.i} | {format_poly(g.a)}]"
    if isinstance(g, Swap):
        return f"T({g.i},{g.j})"
    if isinstance(g, Scale):
        return f"D({g.i},{format_coeff(g.c, bare=True)})"
    if isinstance(g, RowAdd):
        return f"R({g.i},{g.j},{format_coeff(g.c, bare=True)})"
    raise TypeError(f"cannot serialize {type(g).__name__}")


def format_word(w: TameWord) -> str:
    if not w.factors:
        return "id"
    return "; ".join(format_factor(g) for g in w.factors)
