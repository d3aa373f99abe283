"""Query evaluation over a :class:`~datatensor.graph.Graph`.

Solutions are plain dicts from variable name to term; unbound variables
are absent. Expression errors are confined: BIND leaves the variable
unbound, FILTER drops the row, an aggregate whose group contains an error
is unbound. Only unknown functions or aggregates abort evaluation.
"""

from __future__ import annotations

from collections.abc import Iterable

from ..graph import Graph
from ..terms import IRI, BlankNode, Literal, TriplePattern, Variable
from . import values as V
from .ast import (
    Aggregate,
    BinaryExpr,
    Bind,
    BuiltinCall,
    Filter,
    FunctionCall,
    GroupPattern,
    OptionalPattern,
    PathAlternative,
    SelectQuery,
    TermExpr,
    UnaryExpr,
    iter_aggregates,
)
from .registry import FunctionRegistry
from .values import ExprError

Solution = dict


class QueryEvaluationError(Exception):
    """Aborts the whole query, unlike :class:`ExprError`."""


# -- expressions --------------------------------------------------------------

def evaluate_expression(expr, solution: Solution, registry: FunctionRegistry, aggregates=None):
    """Evaluate ``expr`` against one solution; raises :class:`ExprError` on failure."""
    if isinstance(expr, Variable):
        try:
            return solution[expr.name]
        except KeyError:
            raise ExprError(f"?{expr.name} is unbound") from None
    if isinstance(expr, TermExpr):
        return expr.term
    if isinstance(expr, BinaryExpr):
        op = expr.op
        if op == "||":
            return _logical_or(expr, solution, registry, aggregates)
        if op == "&&":
            return _logical_and(expr, solution, registry, aggregates)
        a = evaluate_expression(expr.left, solution, registry, aggregates)
        b = evaluate_expression(expr.right, solution, registry, aggregates)
        if op in ("+", "-", "*", "/"):
            return V.arithmetic(op, a, b)
        if op == "=":
            return V.boolean(V.equals(a, b))
        if op == "!=":
            return V.boolean(not V.equals(a, b))
        c = V.compare(a, b)
        return V.boolean({"<": c < 0, ">": c > 0, "<=": c <= 0, ">=": c >= 0}[op])
    if isinstance(expr, UnaryExpr):
        v = evaluate_expression(expr.operand, solution, registry, aggregates)
        if expr.op == "!":
            return V.boolean(not V.ebv(v))
        x, dt = V.numeric_value(v)
        return V.numeric_literal(-x if expr.op == "-" else x, dt)
    if isinstance(expr, FunctionCall):
        spec = registry.function(expr.iri)
        if spec is None:
            raise QueryEvaluationError(f"unknown function <{expr.iri}>")
        if len(expr.args) != spec.arity:
            raise ExprError(f"<{expr.iri}> takes {spec.arity} arguments, got {len(expr.args)}")
        args = [evaluate_expression(a, solution, registry, aggregates) for a in expr.args]
        try:
            return spec.impl(*args)
        except ExprError:
            raise
        except (ValueError, TypeError, ArithmeticError, IndexError) as exc:
            raise ExprError(str(exc)) from None
    if isinstance(expr, BuiltinCall):
        return _builtin(expr, solution, registry, aggregates)
    if isinstance(expr, Aggregate):
        if aggregates is None or expr not in aggregates:
            raise ExprError("aggregate outside of a grouped context")
        value = aggregates[expr]
        if value is None:
            raise ExprError("aggregate evaluation failed")
        return value
    raise ExprError(f"cannot evaluate {expr!r}")


def _logical_or(expr, solution, registry, aggregates):
    err = None
    for side in (expr.left, expr.right):
        try:
            if V.ebv(evaluate_expression(side, solution, registry, aggregates)):
                return V.TRUE
        except ExprError as exc:
            err = exc
    if err is not None:
        raise err
    return V.FALSE


def _logical_and(expr, solution, registry, aggregates):
    err = None
    for side in (expr.left, expr.right):
        try:
            if not V.ebv(evaluate_expression(side, solution, registry, aggregates)):
                return V.FALSE
        except ExprError as exc:
            err = exc
    if err is not None:
        raise err
    return V.TRUE


def _builtin(expr: BuiltinCall, solution, registry, aggregates):
    name = expr.name
    if name == "BOUND":
        return V.boolean(expr.args[0].name in solution)
    if name == "IF":
        cond = V.ebv(evaluate_expression(expr.args[0], solution, registry, aggregates))
        return evaluate_expression(expr.args[1 if cond else 2], solution, registry, aggregates)
    if name == "COALESCE":
        for a in expr.args:
            try:
                return evaluate_expression(a, solution, registry, aggregates)
            except ExprError:
                continue
        raise ExprError("COALESCE: no argument evaluated without error")
    args = [evaluate_expression(a, solution, registry, aggregates) for a in expr.args]
    x = args[0]
    if name == "SAMETERM":
        return V.boolean(args[0] == args[1])
    if name == "STR":
        if isinstance(x, Literal):
            return Literal(x.lexical)
        if isinstance(x, IRI):
            return Literal(x.value)
        raise ExprError("STR of a blank node")
    if name == "LANG":
        if not isinstance(x, Literal):
            raise ExprError("LANG of a non-literal")
        return Literal(x.language or "")
    if name == "DATATYPE":
        if not isinstance(x, Literal):
            raise ExprError("DATATYPE of a non-literal")
        return IRI(x.datatype)
    if name == "ISIRI":
        return V.boolean(isinstance(x, IRI))
    if name == "ISBLANK":
        return V.boolean(isinstance(x, BlankNode))
    if name == "ISLITERAL":
        return V.boolean(isinstance(x, Literal))
    if name == "ISNUMERIC":
        if not V.is_numeric(x):
            return V.FALSE
        try:
            V.numeric_value(x)
        except ExprError:
            return V.FALSE
        return V.TRUE
    if name == "ABS":
        v, dt = V.numeric_value(x)
        return V.numeric_literal(abs(v), dt)
    raise ExprError(f"unsupported builtin {name}")


# -- built-in aggregates ------------------------------------------------------

class _Count:
    def __init__(self):
        self.n = 0

    def step(self, term):
        self.n += 1

    def finalize(self):
        return V.numeric_literal(self.n, V.XSD_INTEGER)


class _Sum:
    def __init__(self):
        self.acc = Literal("0", V.XSD_INTEGER)
        self.n = 0

    def step(self, term):
        self.acc = V.arithmetic("+", self.acc, term)
        self.n += 1

    def finalize(self):
        return self.acc


class _Avg(_Sum):
    def finalize(self):
        if self.n == 0:
            return Literal("0", V.XSD_INTEGER)
        return V.arithmetic("/", self.acc, Literal(str(self.n), V.XSD_INTEGER))


class _Extreme:
    def __init__(self, pick_max: bool):
        self.best = None
        self.pick_max = pick_max

    def step(self, term):
        if self.best is None:
            self.best = term
            return
        kb, kt = V.order_key(self.best), V.order_key(term)
        if (kt > kb) if self.pick_max else (kt < kb):
            self.best = term

    def finalize(self):
        if self.best is None:
            raise ExprError("MIN/MAX of an empty group")
        return self.best


class _Sample:
    def __init__(self):
        self.value = None

    def step(self, term):
        if self.value is None:
            self.value = term

    def finalize(self):
        if self.value is None:
            raise ExprError("SAMPLE of an empty group")
        return self.value


_BUILTIN_AGGREGATES = {
    "COUNT": _Count,
    "SUM": _Sum,
    "AVG": _Avg,
    "MIN": lambda: _Extreme(False),
    "MAX": lambda: _Extreme(True),
    "SAMPLE": _Sample,
}


# -- algebra ------------------------------------------------------------------

def _compatible(a: Solution, b: Solution, names) -> bool:
    for n in names:
        if n in a and n in b and a[n] != b[n]:
            return False
    return True


def join(left: list[Solution], right: list[Solution]) -> list[Solution]:
    """Hash join on the variables bound in every solution of both sides."""
    if not left or not right:
        return []
    lvars = set().union(*left)
    rvars = set().union(*right)
    common = lvars & rvars
    if not common:
        return [{**a, **b} for a in left for b in right]
    keys = [n for n in sorted(common) if all(n in s for s in left) and all(n in s for s in right)]
    loose = [n for n in common if n not in keys]
    table: dict = {}
    for b in right:
        table.setdefault(tuple(b[n] for n in keys), []).append(b)
    out = []
    for a in left:
        for b in table.get(tuple(a[n] for n in keys), ()):
            if not loose or _compatible(a, b, loose):
                out.append({**a, **b})
    return out


class _Evaluator:
    def __init__(self, graph: Graph, registry: FunctionRegistry):
        self.graph = graph
        self.registry = registry

    def expr(self, e, solution, aggregates=None):
        return evaluate_expression(e, solution, self.registry, aggregates)

    def test(self, e, solution, aggregates=None) -> bool:
        try:
            return V.ebv(self.expr(e, solution, aggregates))
        except ExprError:
            return False

    def match(self, pattern: TriplePattern) -> list[Solution]:
        positions = [(i, x.name) for i, x in enumerate(pattern) if isinstance(x, Variable)]
        out = []
        for t in self.graph.match(pattern):
            terms = (t.subject, t.predicate, t.object)
            sol: Solution = {}
            ok = True
            for i, name in positions:
                term = terms[i]
                prev = sol.get(name)
                if prev is not None and prev != term:
                    ok = False
                    break
                sol[name] = term
            if ok:
                out.append(sol)
        return out

    def group(self, g: GroupPattern) -> tuple[list[Solution], list]:
        sols: list[Solution] = [{}]
        filters = []
        for el in g.elements:
            if isinstance(el, TriplePattern):
                sols = join(sols, self.match(el))
            elif isinstance(el, PathAlternative):
                alt = []
                for p in el.predicates:
                    alt.extend(self.match(TriplePattern(el.subject, p, el.object)))
                sols = join(sols, alt)
            elif isinstance(el, GroupPattern):
                sols = join(sols, self.pattern(el))
            elif isinstance(el, OptionalPattern):
                inner, inner_filters = self.group(el.group)
                sols = self.left_join(sols, inner, inner_filters)
            elif isinstance(el, Bind):
                sols = [self.extend(s, el.var.name, el.expr) for s in sols]
            elif isinstance(el, Filter):
                filters.append(el.expr)
            else:
                raise QueryEvaluationError(f"unsupported pattern element {el!r}")
        return sols, filters

    def pattern(self, g: GroupPattern) -> list[Solution]:
        sols, filters = self.group(g)
        for f in filters:
            sols = [s for s in sols if self.test(f, s)]
        return sols

    def extend(self, s: Solution, name: str, e, aggregates=None) -> Solution:
        try:
            value = self.expr(e, s, aggregates)
        except ExprError:
            return s
        out = dict(s)
        out[name] = value
        return out

    def left_join(self, left, right, filters) -> list[Solution]:
        if not right:
            return list(left)
        out = []
        names = set().union(*right)
        for a in left:
            matched = False
            for b in right:
                if not _compatible(a, b, names):
                    continue
                merged = {**a, **b}
                if all(self.test(f, merged) for f in filters):
                    out.append(merged)
                    matched = True
            if not matched:
                out.append(a)
        return out

    def aggregate(self, agg: Aggregate, members: list[Solution]):
        if agg.name in _BUILTIN_AGGREGATES:
            acc = _BUILTIN_AGGREGATES[agg.name]()
        else:
            spec = self.registry.aggregate(agg.name)
            if spec is None:
                raise QueryEvaluationError(f"unknown aggregate <{agg.name}>")
            acc = spec.factory()
        seen = set()
        try:
            for s in members:
                if agg.arg is None:
                    acc.step(None)
                    continue
                try:
                    term = self.expr(agg.arg, s)
                except ExprError:
                    if agg.name == "COUNT":
                        continue
                    raise
                if agg.distinct:
                    key = V.canonical_key(term)
                    if key in seen:
                        continue
                    seen.add(key)
                acc.step(term)
            return acc.finalize()
        except (ExprError, ValueError, TypeError, ArithmeticError, IndexError):
            return None

    def grouped(self, q: SelectQuery, sols: list[Solution]):
        groups: dict = {}
        if not q.group_by:
            groups[()] = (sols, {})
        else:
            for s in sols:
                bindings = {}
                key = []
                for c in q.group_by:
                    try:
                        v = self.expr(c.expr, s)
                    except ExprError:
                        v = None
                    key.append(None if v is None else V.canonical_key(v))
                    name = c.var.name if c.var is not None else (
                        c.expr.name if isinstance(c.expr, Variable) else None)
                    if name is not None and v is not None:
                        bindings[name] = v
                entry = groups.setdefault(tuple(key), ([], bindings))
                entry[0].append(s)
        aggs = []
        exprs = [p.expr for p in q.projection if p.expr is not None]
        exprs += list(q.having) + [c.expr for c in q.order_by]
        for e in exprs:
            for a in iter_aggregates(e):
                if a not in aggs:
                    aggs.append(a)
        out = []
        for members, bindings in groups.values():
            values = {a: self.aggregate(a, members) for a in aggs}
            row = dict(bindings)
            if not all(self.test(h, row, values) for h in q.having):
                continue
            for p in q.projection:
                if p.expr is not None:
                    row = self.extend(row, p.var.name, p.expr, values)
            out.append((row, values))
        return out

    def run(self, q: SelectQuery) -> list[Solution]:
        sols = self.pattern(q.where)
        if q.is_grouped:
            rows = self.grouped(q, sols)
        else:
            rows = []
            for s in sols:
                for p in q.projection or ():
                    if p.expr is not None:
                        s = self.extend(s, p.var.name, p.expr)
                rows.append((s, None))
        if q.order_by:
            for cond in reversed(q.order_by):
                def key(row, cond=cond):
                    try:
                        return V.order_key(self.expr(cond.expr, row[0], row[1]))
                    except ExprError:
                        return V.order_key(None)
                rows.sort(key=key, reverse=cond.descending)
        names = q.variables()
        result = [{n: row[0][n] for n in names if n in row[0]} for row in rows]
        if q.distinct:
            seen = set()
            unique = []
            for s in result:
                k = frozenset((n, V.canonical_key(t)) for n, t in s.items())
                if k not in seen:
                    seen.add(k)
                    unique.append(s)
            result = unique
        end = None if q.limit is None else q.offset + q.limit
        return result[q.offset:end]


def evaluate(query: SelectQuery, graph: Graph, registry: FunctionRegistry) -> list[Solution]:
    """Evaluate a parsed query; returns solutions in result order."""
    return _Evaluator(graph, registry).run(query)


def result_variables(query: SelectQuery) -> list[str]:
    return query.variables()


