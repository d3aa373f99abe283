"""Recursive-descent parser for the supported SELECT subset.

Constructs outside the subset are rejected with
:class:`UnsupportedFeatureError` naming the construct.
"""

from __future__ import annotations

import re
from urllib.parse import urljoin

from ..terms import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    IRI,
    Literal,
    TriplePattern,
    Variable,
)
from ..turtle import unescape_string
from .ast import (
    Aggregate,
    BinaryExpr,
    Bind,
    BuiltinCall,
    Filter,
    FunctionCall,
    GroupCondition,
    GroupPattern,
    OptionalPattern,
    OrderCondition,
    PathAlternative,
    Projection,
    SelectQuery,
    TermExpr,
    UnaryExpr,
    expr_variables,
    pattern_variables,
)

DTA_NS = "https://w3id.org/rdf-tensor/aggregates#"


class QuerySyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, token: str | None = None):
        where = f"line {line}, column {column}"
        if token is not None:
            where += f", near {token!r}"
        super().__init__(f"{message} ({where})")
        self.message = message
        self.line = line
        self.column = column
        self.token = token


class UnsupportedFeatureError(QuerySyntaxError):
    pass


_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"#[^\n]*"),
    ("IRIREF", r"<[^<>\"{}|^`\\\x00-\x20]*>"),
    ("STRING_LONG2", r'"""(?:[^"\\]|\\.|"(?!""))*"""'),
    ("STRING_LONG1", r"'''(?:[^'\\]|\\.|'(?!''))*'''"),
    ("STRING2", r'"(?:[^"\\\n\r]|\\.)*"'),
    ("STRING1", r"'(?:[^'\\\n\r]|\\.)*'"),
    ("VAR", r"[?$][A-Za-z0-9_À-￿]+"),
    ("LANGTAG", r"@[A-Za-z]+(?:-[A-Za-z0-9]+)*"),
    ("DOUBLE", r"(?:\d+\.\d*[eE][+-]?\d+|\.\d+[eE][+-]?\d+|\d+[eE][+-]?\d+)"),
    ("DECIMAL", r"\d*\.\d+"),
    ("INTEGER", r"\d+"),
    ("DTYPE", r"\^\^"),
    ("BNODE", r"_:[A-Za-z0-9_]+(?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?"),
    ("PNAME", r"(?:[A-Za-z](?:[A-Za-z0-9_\-.]*[A-Za-z0-9_\-])?)?:"
              r"(?:[A-Za-z0-9_:%](?:[A-Za-z0-9_\-:%.]*[A-Za-z0-9_\-:%])?)?"),
    ("KEYWORD", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"&&|\|\||!=|<=|>=|[=<>!+\-*/^|?]"),
    ("PUNCT", r"[{}().,;\[\]]"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{n}>{rx})" for n, rx in _TOKEN_SPEC))


class _Tok:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def is_kw(self, *words) -> bool:
        return self.kind == "KEYWORD" and self.text.upper() in words

    def is_(self, text) -> bool:
        return self.kind in ("OP", "PUNCT") and self.text == text


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QuerySyntaxError("unexpected character", line, pos - line_start + 1, text[pos:pos + 10])
        kind = m.lastgroup
        s = m.group()
        if kind not in ("WS", "COMMENT"):
            out.append(_Tok(kind, s, line, pos - line_start + 1))
        nl = s.count("\n")
        if nl:
            line += nl
            line_start = pos + s.rfind("\n") + 1
        pos = m.end()
    out.append(_Tok("EOF", "", line, pos - line_start + 1))
    return out


BUILTINS = {
    # name: (min args, max args)
    "BOUND": (1, 1),
    "SAMETERM": (2, 2),
    "STR": (1, 1),
    "LANG": (1, 1),
    "DATATYPE": (1, 1),
    "ISIRI": (1, 1),
    "ISURI": (1, 1),
    "ISBLANK": (1, 1),
    "ISLITERAL": (1, 1),
    "ISNUMERIC": (1, 1),
    "IF": (3, 3),
    "COALESCE": (0, None),
    "ABS": (1, 1),
}

AGGREGATES = ("COUNT", "SUM", "AVG", "MIN", "MAX", "SAMPLE")

_UNSUPPORTED_KEYWORDS = {
    "UNION", "MINUS", "GRAPH", "SERVICE", "VALUES", "EXISTS", "CONSTRUCT",
    "ASK", "DESCRIBE", "INSERT", "DELETE", "LOAD", "CLEAR", "DROP", "CREATE",
    "FROM", "REDUCED", "IN", "NOT", "REGEX", "CONCAT", "SUBSTR", "STRLEN",
    "UCASE", "LCASE", "CONTAINS", "STRSTARTS", "STRENDS", "REPLACE", "GROUP_CONCAT",
    "NOW", "RAND", "ROUND", "CEIL", "FLOOR", "IRI", "URI", "BNODE", "STRDT",
    "STRLANG", "LANGMATCHES", "ENCODE_FOR_URI", "MD5", "SHA1", "SHA256",
    "YEAR", "MONTH", "DAY", "HOURS", "MINUTES", "SECONDS", "TIMEZONE", "TZ",
    "UUID", "STRUUID", "STRBEFORE", "STRAFTER", "SELECT_SUBQUERY",
}


class _Parser:
    def __init__(self, text: str, aggregate_iris):
        self.toks = _tokenize(text)
        self.i = 0
        self.prefixes: dict[str, str] = {}
        self.base = ""
        self.aggregate_iris = aggregate_iris

    # -- token helpers ------------------------------------------------------
    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def error(self, message, tok=None, cls=QuerySyntaxError):
        tok = tok or self.peek()
        if tok.kind == "EOF":
            return cls(message + " at end of query", tok.line, tok.column)
        return cls(message, tok.line, tok.column, tok.text)

    def expect(self, text):
        t = self.next()
        if not t.is_(text):
            raise self.error(f"expected {text!r}", t)
        return t

    def expect_kw(self, word):
        t = self.next()
        if not t.is_kw(word):
            raise self.error(f"expected {word}", t)
        return t

    def accept(self, text) -> bool:
        if self.peek().is_(text):
            self.next()
            return True
        return False

    def accept_kw(self, *words) -> bool:
        if self.peek().is_kw(*words):
            self.next()
            return True
        return False

    # -- IRIs and terms -----------------------------------------------------
    def resolve(self, raw: str) -> str:
        if self.base and not re.match(r"[A-Za-z][A-Za-z0-9+.\-]*:", raw):
            return urljoin(self.base, raw)
        return raw

    def iri_of(self, tok) -> str:
        if tok.kind == "IRIREF":
            return self.resolve(tok.text[1:-1])
        prefix, _, local = tok.text.partition(":")
        if prefix not in self.prefixes:
            raise self.error(f"unknown prefix {prefix + ':'!r}", tok)
        return self.prefixes[prefix] + local

    def literal_from(self, tok) -> Literal:
        kind = tok.kind
        if kind.startswith("STRING"):
            q = 3 if "LONG" in kind else 1
            try:
                lexical = unescape_string(tok.text[q:-q])
            except ValueError as exc:
                raise self.error(str(exc), tok) from None
            nxt = self.peek()
            if nxt.kind == "LANGTAG":
                self.next()
                return Literal(lexical, language=nxt.text[1:])
            if nxt.kind == "DTYPE":
                self.next()
                dt = self.next()
                if dt.kind not in ("IRIREF", "PNAME"):
                    raise self.error("expected a datatype IRI", dt)
                return Literal(lexical, self.iri_of(dt))
            return Literal(lexical, XSD_STRING)
        if kind == "INTEGER":
            return Literal(tok.text, XSD_INTEGER)
        if kind == "DECIMAL":
            return Literal(tok.text, XSD_DECIMAL)
        if kind == "DOUBLE":
            return Literal(tok.text, XSD_DOUBLE)
        if tok.is_kw("TRUE", "FALSE"):
            return Literal(tok.text.lower(), XSD_BOOLEAN)
        raise self.error("expected a literal", tok)

    def _signed_number(self, sign_tok) -> Literal:
        num = self.next()
        if num.kind not in ("INTEGER", "DECIMAL", "DOUBLE"):
            raise self.error("expected a number", num)
        lit = self.literal_from(num)
        return Literal(sign_tok.text + lit.lexical, lit.datatype)

    # -- query --------------------------------------------------------------
    def parse(self) -> SelectQuery:
        self.prologue()
        t = self.peek()
        if t.is_kw("ASK", "CONSTRUCT", "DESCRIBE", "INSERT", "DELETE", "LOAD", "CLEAR", "DROP", "CREATE"):
            raise self.error(f"{t.text.upper()} queries are not supported", t, UnsupportedFeatureError)
        self.expect_kw("SELECT")
        distinct = False
        if self.accept_kw("DISTINCT"):
            distinct = True
        elif self.peek().is_kw("REDUCED"):
            raise self.error("REDUCED is not supported", cls=UnsupportedFeatureError)
        projection = self.select_clause()
        if self.peek().is_kw("FROM"):
            raise self.error("FROM clauses are not supported", cls=UnsupportedFeatureError)
        self.accept_kw("WHERE")
        where = self.group_pattern()
        group_by, having, order_by, limit, offset = self.solution_modifiers()
        if self.peek().kind != "EOF":
            t = self.peek()
            if t.is_kw("VALUES"):
                raise self.error("VALUES is not supported", t, UnsupportedFeatureError)
            raise self.error("unexpected trailing input", t)
        q = SelectQuery(
            where=where,
            projection=projection,
            distinct=distinct,
            group_by=group_by,
            having=having,
            order_by=order_by,
            limit=limit,
            offset=offset,
            prefixes=tuple(self.prefixes.items()),
        )
        self.check_grouping(q)
        return q

    def prologue(self):
        while True:
            if self.accept_kw("PREFIX"):
                t = self.next()
                if t.kind != "PNAME" or not t.text.endswith(":") or t.text.count(":") != 1:
                    raise self.error("expected a prefix name such as 'ex:'", t)
                iri = self.next()
                if iri.kind != "IRIREF":
                    raise self.error("expected an IRI", iri)
                self.prefixes[t.text[:-1]] = self.resolve(iri.text[1:-1])
            elif self.accept_kw("BASE"):
                iri = self.next()
                if iri.kind != "IRIREF":
                    raise self.error("expected an IRI", iri)
                self.base = self.resolve(iri.text[1:-1])
            else:
                return

    def select_clause(self):
        if self.accept("*"):
            return None
        items = []
        seen = set()
        while True:
            t = self.peek()
            if t.kind == "VAR":
                self.next()
                v = Variable(t.text[1:])
                items.append(Projection(v))
            elif t.is_("("):
                self.next()
                e = self.expression()
                self.expect_kw("AS")
                vt = self.next()
                if vt.kind != "VAR":
                    raise self.error("expected a variable after AS", vt)
                self.expect(")")
                v = Variable(vt.text[1:])
                items.append(Projection(v, e))
            else:
                break
            if v.name in seen:
                raise self.error(f"variable ?{v.name} projected twice", t)
            seen.add(v.name)
        if not items:
            raise self.error("expected '*', a variable or (expression AS ?var)")
        return tuple(items)

    def solution_modifiers(self):
        group_by: list = []
        having: list = []
        order_by: list = []
        limit = None
        offset = 0
        if self.accept_kw("GROUP"):
            self.expect_kw("BY")
            while True:
                c = self.group_condition()
                if c is None:
                    break
                group_by.append(c)
            if not group_by:
                raise self.error("expected a GROUP BY condition")
        if self.accept_kw("HAVING"):
            while self._starts_constraint(self.peek()):
                having.append(self.constraint())
            if not having:
                raise self.error("expected a HAVING condition")
        if self.accept_kw("ORDER"):
            self.expect_kw("BY")
            while True:
                c = self.order_condition()
                if c is None:
                    break
                order_by.append(c)
            if not order_by:
                raise self.error("expected an ORDER BY condition")
        for _ in range(2):
            if self.accept_kw("LIMIT"):
                t = self.next()
                if t.kind != "INTEGER":
                    raise self.error("LIMIT requires an integer", t)
                limit = int(t.text)
            elif self.accept_kw("OFFSET"):
                t = self.next()
                if t.kind != "INTEGER":
                    raise self.error("OFFSET requires an integer", t)
                offset = int(t.text)
        return tuple(group_by), tuple(having), tuple(order_by), limit, offset

    @staticmethod
    def _starts_constraint(t) -> bool:
        if t.is_("(") or t.kind in ("IRIREF", "PNAME"):
            return True
        return t.kind == "KEYWORD" and t.text.upper() in BUILTINS

    def group_condition(self):
        t = self.peek()
        if t.kind == "VAR":
            self.next()
            return GroupCondition(Variable(t.text[1:]))
        if t.is_("("):
            self.next()
            e = self.expression()
            var = None
            if self.accept_kw("AS"):
                vt = self.next()
                if vt.kind != "VAR":
                    raise self.error("expected a variable after AS", vt)
                var = Variable(vt.text[1:])
            self.expect(")")
            return GroupCondition(e, var)
        if t.kind in ("IRIREF", "PNAME") or (t.kind == "KEYWORD" and t.text.upper() in BUILTINS):
            return GroupCondition(self.primary())
        return None

    def order_condition(self):
        t = self.peek()
        if t.is_kw("ASC", "DESC"):
            self.next()
            self.expect("(")
            e = self.expression()
            self.expect(")")
            return OrderCondition(e, t.text.upper() == "DESC")
        if t.kind == "VAR":
            self.next()
            return OrderCondition(Variable(t.text[1:]))
        if t.is_("("):
            self.next()
            e = self.expression()
            self.expect(")")
            return OrderCondition(e)
        if t.kind in ("IRIREF", "PNAME") or (t.kind == "KEYWORD" and t.text.upper() in BUILTINS):
            return OrderCondition(self.primary())
        return None

    def check_grouping(self, q: SelectQuery):
        if not q.is_grouped:
            return
        if q.projection is None:
            raise QuerySyntaxError("SELECT * cannot be combined with GROUP BY or aggregates")
        grouped = set()
        for c in q.group_by:
            if c.var is not None:
                grouped.add(c.var.name)
            elif isinstance(c.expr, Variable):
                grouped.add(c.expr.name)
        for p in q.projection:
            if p.expr is None:
                names = [p.var.name]
            else:
                names = expr_variables(p.expr, skip_aggregates=True)
            for n in names:
                if n not in grouped:
                    raise QuerySyntaxError(f"?{n} is projected but neither grouped nor aggregated")

    # -- graph patterns -----------------------------------------------------
    def group_pattern(self) -> GroupPattern:
        self.expect("{")
        elements: list = []
        in_scope: set = set()
        while True:
            t = self.peek()
            if t.is_("}"):
                self.next()
                break
            if t.kind == "EOF":
                raise self.error("expected '}'")
            if t.is_kw("OPTIONAL"):
                self.next()
                g = self.group_pattern()
                elements.append(OptionalPattern(g))
                in_scope.update(pattern_variables(g))
            elif t.is_kw("FILTER"):
                self.next()
                elements.append(Filter(self.constraint()))
            elif t.is_kw("BIND"):
                self.next()
                self.expect("(")
                e = self.expression()
                self.expect_kw("AS")
                vt = self.next()
                if vt.kind != "VAR":
                    raise self.error("expected a variable after AS", vt)
                self.expect(")")
                name = vt.text[1:]
                if name in in_scope:
                    raise self.error(f"BIND target ?{name} is already in scope", vt)
                elements.append(Bind(e, Variable(name)))
                in_scope.add(name)
            elif t.is_("{"):
                if self.peek(1).is_kw("SELECT"):
                    raise self.error("subqueries are not supported", t, UnsupportedFeatureError)
                g = self.group_pattern()
                if self.peek().is_kw("UNION"):
                    raise self.error("UNION is not supported", cls=UnsupportedFeatureError)
                elements.append(g)
                in_scope.update(pattern_variables(g))
            elif t.kind == "KEYWORD" and t.text.upper() in _UNSUPPORTED_KEYWORDS:
                raise self.error(f"{t.text.upper()} is not supported", t, UnsupportedFeatureError)
            else:
                for tp in self.triples_same_subject():
                    elements.append(tp)
                    for pos in (tp.subject, getattr(tp, "predicate", None), tp.object):
                        if isinstance(pos, Variable) and not pos.name.startswith("_:"):
                            in_scope.add(pos.name)
                if not self.accept("."):
                    nxt = self.peek()
                    if not (nxt.is_("}") or nxt.is_kw("OPTIONAL", "FILTER", "BIND") or nxt.is_("{")
                            or nxt.kind == "KEYWORD" and nxt.text.upper() in _UNSUPPORTED_KEYWORDS):
                        raise self.error("expected '.' between triple patterns", nxt)
                continue
            self.accept(".")
        return GroupPattern(tuple(elements))

    def var_or_term(self, position: str):
        t = self.next()
        if t.kind == "VAR":
            return Variable(t.text[1:])
        if t.kind in ("IRIREF", "PNAME"):
            return IRI(self.iri_of(t))
        if t.kind == "BNODE":
            return Variable("_:" + t.text[2:])
        if t.is_("[") or t.is_("("):
            raise self.error("blank node property lists and collections are not supported", t,
                             UnsupportedFeatureError)
        if position == "object":
            if t.is_("+") or t.is_("-"):
                return self._signed_number(t)
            if t.kind in ("STRING2", "STRING1", "STRING_LONG2", "STRING_LONG1", "INTEGER",
                          "DECIMAL", "DOUBLE") or t.is_kw("TRUE", "FALSE"):
                return self.literal_from(t)
        raise self.error(f"expected a {position}", t)

    def predicate_path(self):
        t = self.peek()
        if t.kind == "VAR":
            self.next()
            return Variable(t.text[1:])
        preds = [self.path_primary()]
        while self.accept("|"):
            preds.append(self.path_primary())
        nxt = self.peek()
        if nxt.is_("/") or nxt.is_("*") or nxt.is_("+") or nxt.is_("?"):
            raise self.error(f"property path operator {nxt.text!r} is not supported", nxt,
                             UnsupportedFeatureError)
        if len(preds) == 1:
            return preds[0]
        return tuple(preds)

    def path_primary(self) -> IRI:
        t = self.next()
        if t.kind in ("IRIREF", "PNAME"):
            iri = IRI(self.iri_of(t))
        elif t.kind == "KEYWORD" and t.text == "a":
            iri = IRI(RDF_TYPE)
        elif t.is_("^") or t.is_("!") or t.is_("("):
            raise self.error(f"property path operator {t.text!r} is not supported", t,
                             UnsupportedFeatureError)
        else:
            raise self.error("expected a predicate", t)
        nxt = self.peek()
        if nxt.is_("*") or nxt.is_("+") or nxt.is_("?") or nxt.is_("/"):
            raise self.error(f"property path operator {nxt.text!r} is not supported", nxt,
                             UnsupportedFeatureError)
        return iri

    def triples_same_subject(self) -> list:
        subject = self.var_or_term("subject")
        out = []
        while True:
            pred = self.predicate_path()
            while True:
                obj = self.var_or_term("object")
                if isinstance(pred, tuple):
                    out.append(PathAlternative(subject, pred, obj))
                else:
                    out.append(TriplePattern(subject, pred, obj))
                if not self.accept(","):
                    break
            if self.accept(";"):
                while self.accept(";"):
                    pass
                nxt = self.peek()
                if nxt.is_(".") or nxt.is_("}"):
                    break
                continue
            break
        return out

    # -- expressions --------------------------------------------------------
    def constraint(self):
        t = self.peek()
        if t.is_("("):
            self.next()
            e = self.expression()
            self.expect(")")
            return e
        return self.primary()

    def expression(self):
        left = self.and_expr()
        while self.accept("||"):
            left = BinaryExpr("||", left, self.and_expr())
        return left

    def and_expr(self):
        left = self.relational()
        while self.accept("&&"):
            left = BinaryExpr("&&", left, self.relational())
        return left

    def relational(self):
        left = self.additive()
        t = self.peek()
        if t.kind == "OP" and t.text in ("=", "!=", "<", ">", "<=", ">="):
            self.next()
            return BinaryExpr(t.text, left, self.additive())
        if t.is_kw("IN", "NOT"):
            raise self.error("IN / NOT IN are not supported", t, UnsupportedFeatureError)
        return left

    def additive(self):
        left = self.multiplicative()
        while True:
            t = self.peek()
            if t.is_("+") or t.is_("-"):
                self.next()
                left = BinaryExpr(t.text, left, self.multiplicative())
            else:
                return left

    def multiplicative(self):
        left = self.unary()
        while True:
            t = self.peek()
            if t.is_("*") or t.is_("/"):
                self.next()
                left = BinaryExpr(t.text, left, self.unary())
            else:
                return left

    def unary(self):
        t = self.peek()
        if t.is_("!") or t.is_("-") or t.is_("+"):
            self.next()
            return UnaryExpr(t.text, self.unary())
        return self.primary()

    def arg_list(self) -> tuple:
        self.expect("(")
        args = []
        if self.accept(")"):
            return ()
        while True:
            args.append(self.expression())
            if self.accept(")"):
                return tuple(args)
            self.expect(",")

    def primary(self):
        t = self.peek()
        if t.is_("("):
            self.next()
            e = self.expression()
            self.expect(")")
            return e
        if t.kind == "VAR":
            self.next()
            return Variable(t.text[1:])
        if t.kind in ("IRIREF", "PNAME"):
            self.next()
            iri = self.iri_of(t)
            if self.peek().is_("("):
                if iri in self.aggregate_iris:
                    self.expect("(")
                    if self.peek().is_kw("DISTINCT"):
                        raise self.error("DISTINCT in extension aggregates is not supported",
                                         cls=UnsupportedFeatureError)
                    arg = self.expression()
                    self.expect(")")
                    return Aggregate(iri, arg)
                return FunctionCall(iri, self.arg_list())
            return TermExpr(IRI(iri))
        if t.kind == "KEYWORD":
            name = t.text.upper()
            if name in AGGREGATES:
                self.next()
                self.expect("(")
                distinct = self.accept_kw("DISTINCT")
                if name == "COUNT" and self.accept("*"):
                    arg = None
                else:
                    arg = self.expression()
                self.expect(")")
                return Aggregate(name, arg, distinct)
            if name in BUILTINS:
                self.next()
                if name == "BOUND":
                    self.expect("(")
                    vt = self.next()
                    if vt.kind != "VAR":
                        raise self.error("BOUND requires a variable", vt)
                    self.expect(")")
                    return BuiltinCall(name, (Variable(vt.text[1:]),))
                args = self.arg_list()
                lo, hi = BUILTINS[name]
                if len(args) < lo or (hi is not None and len(args) > hi):
                    raise self.error(f"{name} takes {lo if lo == hi else f'{lo}+'} arguments", t)
                return BuiltinCall("ISIRI" if name == "ISURI" else name, args)
            if name in ("TRUE", "FALSE"):
                self.next()
                return TermExpr(self.literal_from(t))
            if name in _UNSUPPORTED_KEYWORDS:
                raise self.error(f"{name} is not supported", t, UnsupportedFeatureError)
            raise self.error("unexpected keyword", t)
        if t.kind.startswith("STRING") or t.kind in ("INTEGER", "DECIMAL", "DOUBLE"):
            self.next()
            return TermExpr(self.literal_from(t))
        raise self.error("expected an expression", t)


def parse_query(text: str, aggregate_iris=None) -> SelectQuery:
    """Parse query text into a :class:`SelectQuery`.

    ``aggregate_iris`` names the extension IRIs parsed as aggregates rather
    than plain function calls; by default every IRI in the tensor aggregate
    namespace.
    """
    if aggregate_iris is None:
        aggregate_iris = _NamespaceSet(DTA_NS)
    return _Parser(text, aggregate_iris).parse()


class _NamespaceSet:
    def __init__(self, ns):
        self.ns = ns

    def __contains__(self, iri):
        return isinstance(iri, str) and iri.startswith(self.ns)

