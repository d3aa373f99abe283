"""Immutable query syntax tree.

IRIs are stored fully expanded; prefixes are kept only so a printed
query can reuse them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..terms import IRI, BlankNode, Literal, TriplePattern, Variable


@dataclass(frozen=True)
class TermExpr:
    term: IRI | BlankNode | Literal


@dataclass(frozen=True)
class BinaryExpr:
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class UnaryExpr:
    op: str
    operand: Expr


@dataclass(frozen=True)
class FunctionCall:
    iri: str
    args: tuple


@dataclass(frozen=True)
class BuiltinCall:
    name: str
    args: tuple


@dataclass(frozen=True)
class Aggregate:
    name: str  # upper-case builtin name or an extension aggregate IRI
    arg: Expr | None  # None for COUNT(*)
    distinct: bool = False


Expr = Union[TermExpr, Variable, BinaryExpr, UnaryExpr, FunctionCall, BuiltinCall, Aggregate]


@dataclass(frozen=True)
class PathAlternative:
    """``subject (p1|p2|...) object``: union of one triple pattern per predicate."""

    subject: object
    predicates: tuple
    object: object


@dataclass(frozen=True)
class Bind:
    expr: Expr
    var: Variable


@dataclass(frozen=True)
class Filter:
    expr: Expr


@dataclass(frozen=True)
class OptionalPattern:
    group: GroupPattern


@dataclass(frozen=True)
class GroupPattern:
    elements: tuple


@dataclass(frozen=True)
class Projection:
    var: Variable
    expr: Expr | None = None


@dataclass(frozen=True)
class GroupCondition:
    expr: Expr
    var: Variable | None = None


@dataclass(frozen=True)
class OrderCondition:
    expr: Expr
    descending: bool = False


@dataclass(frozen=True)
class SelectQuery:
    where: GroupPattern
    projection: tuple | None = None  # None means SELECT *
    distinct: bool = False
    group_by: tuple = ()
    having: tuple = ()
    order_by: tuple = ()
    limit: int | None = None
    offset: int = 0
    prefixes: tuple = ()

    @property
    def is_grouped(self) -> bool:
        if self.group_by or self.having:
            return True
        return any(p.expr is not None and contains_aggregate(p.expr) for p in self.projection or ())

    @property
    def aggregates(self) -> list[tuple[str, Expr | None, Variable]]:
        """(aggregate name, argument, output variable) for every projected aggregate."""
        out = []
        for p in self.projection or ():
            if p.expr is not None:
                for agg in iter_aggregates(p.expr):
                    out.append((agg.name, agg.arg, p.var))
        return out

    def variables(self) -> list[str]:
        """Names of the result columns in order."""
        if self.projection is not None:
            return [p.var.name for p in self.projection]
        return pattern_variables(self.where)


def expr_children(e) -> tuple:
    if isinstance(e, BinaryExpr):
        return (e.left, e.right)
    if isinstance(e, UnaryExpr):
        return (e.operand,)
    if isinstance(e, (FunctionCall, BuiltinCall)):
        return e.args
    if isinstance(e, Aggregate):
        return () if e.arg is None else (e.arg,)
    return ()


def iter_aggregates(e):
    if isinstance(e, Aggregate):
        yield e
        return
    for c in expr_children(e):
        yield from iter_aggregates(c)


def contains_aggregate(e) -> bool:
    return next(iter_aggregates(e), None) is not None


def expr_variables(e, *, skip_aggregates: bool = False) -> list[str]:
    out: list[str] = []

    def walk(x):
        if isinstance(x, Variable):
            if x.name not in out:
                out.append(x.name)
        elif isinstance(x, Aggregate) and skip_aggregates:
            return
        else:
            for c in expr_children(x):
                walk(c)

    walk(e)
    return out


def _is_hidden(v: Variable) -> bool:
    # Blank nodes in query patterns become non-projectable variables.
    return v.name.startswith("_:")


def pattern_variables(group: GroupPattern) -> list[str]:
    """In-scope variables of a group pattern, in order of first appearance."""
    out: list[str] = []

    def add(v):
        if isinstance(v, Variable) and not _is_hidden(v) and v.name not in out:
            out.append(v.name)

    def walk(g):
        for el in g.elements:
            if isinstance(el, (TriplePattern, PathAlternative)):
                add(el.subject)
                if isinstance(el, TriplePattern):
                    add(el.predicate)
                add(el.object)
            elif isinstance(el, Bind):
                add(el.var)
            elif isinstance(el, OptionalPattern):
                walk(el.group)
            elif isinstance(el, GroupPattern):
                walk(el)

    walk(group)
    return out
