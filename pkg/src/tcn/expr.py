"""Space expressions such as ``S(2)``, ``T(2)*S(3)`` or ``load(my.json)``.

Grammar (whitespace-insensitive, names case-sensitive)::

    expr := term ('*' term)*
    term := NAME '(' INT ')' | 'load(' PATH ')'
    NAME := 'S' | 'T' | 'RP' | 'CP'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .algebra import (AlgebraError, SpaceDescriptor, load_space, mk_cp, mk_rp, mk_sphere,
                      mk_torus, product)
from .scalar import FieldSpec, Q


class SpaceSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__("%s at column %d" % (message, column))
        self.column = column


@dataclass(frozen=True)
class Sphere:
    k: int


@dataclass(frozen=True)
class Torus:
    m: int


@dataclass(frozen=True)
class RP:
    m: int


@dataclass(frozen=True)
class CP:
    m: int


@dataclass(frozen=True)
class Load:
    path: str


@dataclass(frozen=True)
class Product:
    left: "SpaceExpr"
    right: "SpaceExpr"


SpaceExpr = Union[Sphere, Torus, RP, CP, Load, Product]

_NAMES = {"S": Sphere, "T": Torus, "RP": RP, "CP": CP}
_IDENT = re.compile(r"[A-Za-z_]\w*")
_INT = re.compile(r"[+-]?\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _col(self) -> int:
        return self.pos + 1

    def _expect(self, ch: str):
        self._skip()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            found = "end of input" if self.pos >= len(self.text) else repr(self.text[self.pos])
            raise SpaceSyntaxError("expected %r, found %s" % (ch, found), self._col())
        self.pos += 1

    def expr(self) -> SpaceExpr:
        node = self.term()
        while True:
            self._skip()
            if self.pos < len(self.text) and self.text[self.pos] == "*":
                self.pos += 1
                node = Product(node, self.term())
            else:
                return node

    def term(self) -> SpaceExpr:
        self._skip()
        col = self._col()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            found = "end of input" if self.pos >= len(self.text) else repr(self.text[self.pos])
            raise SpaceSyntaxError("expected a space name, found %s" % found, col)
        name = m.group()
        self.pos = m.end()
        if name == "load":
            self._expect("(")
            end = self.text.find(")", self.pos)
            if end < 0:
                raise SpaceSyntaxError("unterminated load(", col)
            path = self.text[self.pos:end].strip()
            if not path:
                raise SpaceSyntaxError("empty path in load()", col)
            self.pos = end + 1
            return Load(path)
        if name not in _NAMES:
            raise SpaceSyntaxError("unknown space name %r" % name, col)
        self._expect("(")
        self._skip()
        icol = self._col()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise SpaceSyntaxError("expected an integer argument", icol)
        value = int(m.group())
        if value < 1:
            raise SpaceSyntaxError("argument must be positive, got %d" % value, icol)
        self.pos = m.end()
        self._expect(")")
        return _NAMES[name](value)


def parse_space(text: str) -> SpaceExpr:
    p = _Parser(text)
    node = p.expr()
    p._skip()
    if p.pos != len(text):
        raise SpaceSyntaxError("unexpected %r" % text[p.pos], p.pos + 1)
    return node


def pretty_print(e: SpaceExpr) -> str:
    if isinstance(e, Product):
        # no parentheses in the grammar: right-nested products print flat
        return "%s*%s" % (pretty_print(e.left), pretty_print(e.right))
    if isinstance(e, Load):
        return "load(%s)" % e.path
    name = {Sphere: "S", Torus: "T", RP: "RP", CP: "CP"}[type(e)]
    return "%s(%d)" % (name, e.k if isinstance(e, Sphere) else e.m)


def build_space(e: SpaceExpr, field: Optional[FieldSpec] = None) -> SpaceDescriptor:
    """Evaluate an expression to a :class:`SpaceDescriptor`.

    ``field=None`` picks F_2 if the expression mentions RP, else the field
    of the first loaded file, else the rationals.
    """
    if field is None:
        field = _implied_field(e)
    if isinstance(e, Product):
        return product(build_space(e.left, field), build_space(e.right, field))
    if isinstance(e, Load):
        desc = load_space(e.path)
        if desc.field != field:
            raise AlgebraError("%s is over %s, but %s was requested" % (e.path, desc.field, field))
        return desc
    f = field
    if isinstance(e, Sphere):
        return mk_sphere(e.k, f)
    if isinstance(e, Torus):
        return mk_torus(e.m, f)
    if isinstance(e, CP):
        return mk_cp(e.m, f)
    if isinstance(e, RP):
        if field != FieldSpec(2):
            raise AlgebraError("RP(m) is only modelled over Fp:2")
        return mk_rp(e.m)
    raise TypeError("not a space expression: %r" % (e,))


def _leaves(e: SpaceExpr):
    if isinstance(e, Product):
        yield from _leaves(e.left)
        yield from _leaves(e.right)
    else:
        yield e


def _implied_field(e: SpaceExpr) -> FieldSpec:
    leaves = list(_leaves(e))
    if any(isinstance(x, RP) for x in leaves):
        return FieldSpec(2)
    for x in leaves:
        if isinstance(x, Load):
            return load_space(x.path, check=False).field
    return Q
