"""Expressions over named pp-sets, and workspaces binding the names.

Grammar, loosest binding first::

    expr  := diff (("|" | "+") diff)*       union, checked disjoint union
    diff  := inter ("\\" inter)*            set difference
    inter := prod ("&" prod)*               intersection
    prod  := atom ("*" atom)*               cartesian product
    atom  := NAME | "(" expr ")" | "{" point ("," point)* "}"
    point := NUMBER | "(" NUMBER ("," NUMBER)* ")"

Numbers are integers or fractions such as -3/4.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from .backend import PPError
from .sets import DefinableSet


class ExprError(PPError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<num>-?\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_.']*)|(?P<op>[&|\\+*(){},]))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ExprError(f"unexpected character {text[bad]!r} at column {bad + 1}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


@dataclass(frozen=True)
class Expr:
    op: str
    args: tuple = ()
    name: str = ""
    points: tuple = ()

    def names(self) -> set[str]:
        if self.op == "name":
            return {self.name}
        return set().union(*[a.names() for a in self.args]) if self.args else set()

    def __str__(self):
        if self.op == "name":
            return self.name
        if self.op == "points":
            return "{" + ", ".join("(" + ", ".join(map(str, p)) + ")" if len(p) > 1 else str(p[0])
                                   for p in self.points) + "}"
        return f"({self.args[0]} {self.op} {self.args[1]})"


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ExprError(f"expected {value!r} at column {tok[2]}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def binary(self, ops, sub):
        left = sub()
        while self.peek()[0] == "op" and self.peek()[1] in ops:
            op = self.take()[1]
            left = Expr(op, (left, sub()))
        return left

    def expr(self):
        return self.binary(("|", "+"), self.diff)

    def diff(self):
        return self.binary(("\\",), self.inter)

    def inter(self):
        return self.binary(("&",), self.prod)

    def prod(self):
        return self.binary(("*",), self.atom)

    def number(self):
        kind, val, col = self.take()
        if kind != "num":
            raise ExprError(f"expected a number at column {col}, found {val or 'end of input'!r}")
        return val

    def point(self):
        if self.peek()[1] == "(":
            self.take("(")
            coords = [self.number()]
            while self.peek()[1] == ",":
                self.take(",")
                coords.append(self.number())
            self.take(")")
            return tuple(coords)
        return (self.number(),)

    def atom(self):
        kind, val, col = self.peek()
        if kind == "name":
            self.take()
            return Expr("name", name=val)
        if val == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        if val == "{":
            self.take("{")
            pts = [self.point()]
            while self.peek()[1] == ",":
                self.take(",")
                pts.append(self.point())
            self.take("}")
            if len({len(p) for p in pts}) > 1:
                raise ExprError(f"points of different dimensions in the literal at column {col}")
            return Expr("points", points=tuple(pts))
        raise ExprError(f"unexpected {val or 'end of input'!r} at column {col}")

    def parse(self):
        e = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ExprError(f"unexpected {val!r} at column {col}")
        return e


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


@dataclass
class Workspace:
    """A backend with named pp-sets and named expressions over them."""

    backend: object
    sets: dict = field(default_factory=dict)
    exprs: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @staticmethod
    def from_json(data: dict | str, backend=None) -> "Workspace":
        from ..backends import get_backend
        if isinstance(data, str):
            data = json.loads(data)
        be = backend or get_backend(data.get("backend", "affine-q"))
        ws = Workspace(be)
        for name, desc in data.get("sets", {}).items():
            ws.sets[name] = be.from_descriptor(desc)
        for name, text in data.get("exprs", {}).items():
            if name in ws.sets:
                raise ExprError(f"name {name!r} is bound twice")
            try:
                ws.exprs[name] = parse_expr(text)
            except ExprError as exc:
                raise ExprError(f"in expression {name!r}: {exc}") from None
        for name, e in ws.exprs.items():
            missing = e.names() - set(ws.sets) - set(ws.exprs)
            if missing:
                raise ExprError(f"in expression {name!r}: unknown name {sorted(missing)[0]!r}")
        ws.config = dict(data.get("suite", {}))
        return ws

    def names(self) -> list[str]:
        return sorted(set(self.sets) | set(self.exprs))

    def resolve(self, name: str, _stack: tuple = ()) -> DefinableSet:
        if name in self._cache:
            return self._cache[name]
        if name in _stack:
            raise ExprError(f"cyclic definition through {name!r}")
        if name in self.sets:
            out = DefinableSet.from_pp(self.backend, self.sets[name])
        elif name in self.exprs:
            out = self.evaluate(self.exprs[name], _stack + (name,))
        else:
            raise ExprError(f"unknown name {name!r}")
        self._cache[name] = out
        return out

    def evaluate(self, e: Expr | str, _stack: tuple = ()) -> DefinableSet:
        if isinstance(e, str):
            e = parse_expr(e)
        be = self.backend
        if e.op == "name":
            return self.resolve(e.name, _stack)
        if e.op == "points":
            return DefinableSet.from_points(be, e.points)
        a = self.evaluate(e.args[0], _stack)
        b = self.evaluate(e.args[1], _stack)
        if e.op == "*":
            return a.product(b)
        if a.n != b.n:
            raise ExprError(f"ambient dimensions differ in {e}")
        if e.op == "|":
            return a.union(b)
        if e.op == "+":
            return a.disjoint_union(b)
        if e.op == "&":
            return a.intersection(b)
        if e.op == "\\":
            return a.difference(b)
        raise ExprError(f"unknown operator {e.op!r}")

    def contains(self, e: Expr | str, x: Sequence) -> bool:
        """Point membership straight from the expression tree (no nests involved)."""
        if isinstance(e, str):
            e = parse_expr(e)
        be = self.backend
        x = tuple(x)
        if e.op == "name":
            if e.name in self.sets:
                p = self.sets[e.name]
                return len(x) == p.n and be.contains_point(p, x)
            return self.contains(self.exprs[e.name], x)
        if e.op == "points":
            return x in {be.parse_point(p) for p in e.points}
        if e.op == "*":
            k = self.dimension(e.args[0])
            return self.contains(e.args[0], x[:k]) and self.contains(e.args[1], x[k:])
        l, r = self.contains(e.args[0], x), self.contains(e.args[1], x)
        return {"|": l or r, "+": l or r, "&": l and r, "\\": l and not r}[e.op]

    def dimension(self, e: Expr) -> int:
        if e.op == "name":
            if e.name in self.sets:
                return self.sets[e.name].n
            return self.dimension(self.exprs[e.name])
        if e.op == "points":
            return len(e.points[0])
        if e.op == "*":
            return self.dimension(e.args[0]) + self.dimension(e.args[1])
        return self.dimension(e.args[0])
