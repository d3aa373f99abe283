"""A Turtle subset parser and an N-Triples style writer.

Supported: ``@prefix``/``PREFIX``, ``@base``/``BASE``, prefixed names,
IRIs, predicate and object lists, quoted strings (short and long) with
escapes, language tags, ``^^`` datatypes, numeric and boolean shorthand,
``a`` and ``_:`` blank node labels. Collections and ``[ ]`` are rejected.
"""

from __future__ import annotations

import re
from urllib.parse import urljoin

from .terms import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    IRI,
    Literal,
    Triple,
)


class TurtleSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int, token: str | None = None):
        where = f"line {line}, column {column}"
        if token is not None:
            where += f", near {token!r}"
        super().__init__(f"{message} ({where})")
        self.message = message
        self.line = line
        self.column = column
        self.token = token


class UnknownPrefixError(TurtleSyntaxError):
    pass


_PN_CHARS = r"[A-Za-z0-9_\-·-￿]"
_PN_LOCAL = r"(?:[A-Za-z0-9_:%·-￿]|\\[_~.\-!$&'()*+,;=/?#@%]|%[0-9A-Fa-f]{2})" \
    r"(?:(?:[A-Za-z0-9_:%\-·-￿]|\\[_~.\-!$&'()*+,;=/?#@%]|\.(?=[A-Za-z0-9_:%\-\\·-￿]))*)"

_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"#[^\n]*"),
    ("IRIREF", r"<(?:[^<>\"{}|^`\\\x00-\x20]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*>"),
    ("STRING_LONG2", r'"""(?:[^"\\]|\\.|"(?!""))*"""'),
    ("STRING_LONG1", r"'''(?:[^'\\]|\\.|'(?!''))*'''"),
    ("STRING2", r'"(?:[^"\\\n\r]|\\.)*"'),
    ("STRING1", r"'(?:[^'\\\n\r]|\\.)*'"),
    ("DIRECTIVE", r"@(?:prefix|base)\b"),
    ("LANGTAG", r"@[A-Za-z]+(?:-[A-Za-z0-9]+)*"),
    ("DOUBLE", r"[+-]?(?:\d+\.\d*[eE][+-]?\d+|\.\d+[eE][+-]?\d+|\d+[eE][+-]?\d+)"),
    ("DECIMAL", r"[+-]?\d*\.\d+"),
    ("INTEGER", r"[+-]?\d+"),
    ("DTYPE", r"\^\^"),
    ("BNODE", r"_:" + _PN_CHARS + r"(?:(?:" + _PN_CHARS + r"|\.(?=" + _PN_CHARS + r"))*)"),
    ("PNAME", r"(?:[A-Za-zÀ-￿](?:[A-Za-z0-9_\-.·-￿]*[A-Za-z0-9_\-·-￿])?)?:"
              r"(?:" + _PN_LOCAL + r")?"),
    ("KEYWORD", r"[A-Za-z]+"),
    ("PUNCT", r"[.;,\[\]()]"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{rx})" for name, rx in _TOKEN_SPEC))

_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_ESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)", re.S)


def unescape_string(s: str) -> str:
    def repl(m):
        e = m.group(1)
        if e[0] in "uU":
            return chr(int(e[1:], 16))
        if e in _ESCAPES:
            return _ESCAPES[e]
        raise ValueError(f"invalid escape \\{e}")

    return _ESCAPE_RE.sub(repl, s)


def _unescape_iri(s: str) -> str:
    return re.sub(r"\\u([0-9A-Fa-f]{4})|\\U([0-9A-Fa-f]{8})",
                  lambda m: chr(int(m.group(1) or m.group(2), 16)), s)


def _unescape_local(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def tokenize(text: str):
    """Yield Turtle tokens with 1-based line/column positions."""
    pos = 0
    line = 1
    line_start = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise TurtleSyntaxError("unexpected character", line, pos - line_start + 1, text[pos:pos + 10])
        kind = m.lastgroup
        tok_text = m.group()
        if kind not in ("WS", "COMMENT"):
            yield _Token(kind, tok_text, line, pos - line_start + 1)
        newlines = tok_text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + tok_text.rfind("\n") + 1
        pos = m.end()


class TurtleParser:
    """Parses one document; ``positions[i]`` is the (line, column) of triple i's object."""

    def __init__(self, text: str, base: str = ""):
        self.base = base
        self.prefixes: dict[str, str] = {}
        self.triples: list[Triple] = []
        self.positions: list[tuple[int, int]] = []
        self._tokens = list(tokenize(text))
        self._i = 0
        end_line = text.count("\n") + 1
        end_col = len(text) - (text.rfind("\n") + 1) + 1
        self._eof = _Token("EOF", "", end_line, end_col)

    def _peek(self) -> _Token:
        if self._i < len(self._tokens):
            return self._tokens[self._i]
        return self._eof

    def _next(self) -> _Token:
        tok = self._peek()
        self._i += 1
        return tok

    def _error(self, message, tok=None):
        tok = tok or self._peek()
        if tok.kind == "EOF":
            return TurtleSyntaxError(message + " at end of input", tok.line, tok.column)
        return TurtleSyntaxError(message, tok.line, tok.column, tok.text)

    def _expect_punct(self, p):
        tok = self._next()
        if tok.kind != "PUNCT" or tok.text != p:
            raise self._error(f"expected {p!r}", tok)
        return tok

    def parse(self) -> list[Triple]:
        while self._peek().kind != "EOF":
            self._statement()
        return self.triples

    def _statement(self):
        tok = self._peek()
        if tok.kind == "DIRECTIVE":
            self._next()
            if tok.text == "@prefix":
                self._prefix_decl()
            else:
                self._base_decl()
            self._expect_punct(".")
            return
        if tok.kind == "KEYWORD" and tok.text.upper() in ("PREFIX", "BASE"):
            self._next()
            if tok.text.upper() == "PREFIX":
                self._prefix_decl()
            else:
                self._base_decl()
            return
        subject = self._subject()
        self._predicate_object_list(subject)
        self._expect_punct(".")

    def _prefix_decl(self):
        tok = self._next()
        if tok.kind != "PNAME" or not tok.text.endswith(":") or tok.text.count(":") != 1:
            raise self._error("expected a prefix name such as 'ex:'", tok)
        iri_tok = self._next()
        if iri_tok.kind != "IRIREF":
            raise self._error("expected an IRI in prefix declaration", iri_tok)
        self.prefixes[tok.text[:-1]] = self._resolve(iri_tok.text[1:-1])

    def _base_decl(self):
        iri_tok = self._next()
        if iri_tok.kind != "IRIREF":
            raise self._error("expected an IRI in base declaration", iri_tok)
        self.base = self._resolve(iri_tok.text[1:-1])

    def _resolve(self, raw: str) -> str:
        iri = _unescape_iri(raw)
        if self.base and not re.match(r"[A-Za-z][A-Za-z0-9+.\-]*:", iri):
            return urljoin(self.base, iri)
        return iri

    def _pname(self, tok) -> IRI:
        prefix, _, local = tok.text.partition(":")
        if prefix not in self.prefixes:
            raise UnknownPrefixError(f"unknown prefix {prefix + ':'!r}", tok.line, tok.column, tok.text)
        return IRI(self.prefixes[prefix] + _unescape_local(local))

    def _subject(self):
        tok = self._next()
        if tok.kind == "IRIREF":
            return IRI(self._resolve(tok.text[1:-1]))
        if tok.kind == "PNAME":
            return self._pname(tok)
        if tok.kind == "BNODE":
            return BlankNode(tok.text[2:])
        if tok.kind == "PUNCT" and tok.text in "[(":
            raise self._error("blank node property lists and collections are not supported", tok)
        raise self._error("expected a subject", tok)

    def _predicate(self):
        tok = self._next()
        if tok.kind == "IRIREF":
            return IRI(self._resolve(tok.text[1:-1]))
        if tok.kind == "PNAME":
            return self._pname(tok)
        if tok.kind == "KEYWORD" and tok.text == "a":
            return IRI(RDF_TYPE)
        raise self._error("expected a predicate", tok)

    def _predicate_object_list(self, subject):
        while True:
            predicate = self._predicate()
            while True:
                tok = self._peek()
                obj = self._object()
                self.triples.append(Triple(subject, predicate, obj))
                self.positions.append((tok.line, tok.column))
                if self._peek().kind == "PUNCT" and self._peek().text == ",":
                    self._next()
                    continue
                break
            if self._peek().kind == "PUNCT" and self._peek().text == ";":
                while self._peek().kind == "PUNCT" and self._peek().text == ";":
                    self._next()
                nxt = self._peek()
                if nxt.kind == "PUNCT" and nxt.text in ".]":
                    return
                continue
            return

    def _object(self):
        tok = self._next()
        kind = tok.kind
        if kind == "IRIREF":
            return IRI(self._resolve(tok.text[1:-1]))
        if kind == "PNAME":
            return self._pname(tok)
        if kind == "BNODE":
            return BlankNode(tok.text[2:])
        if kind in ("STRING2", "STRING1", "STRING_LONG2", "STRING_LONG1"):
            q = 3 if kind.startswith("STRING_LONG") else 1
            try:
                lexical = unescape_string(tok.text[q:-q])
            except ValueError as exc:
                raise self._error(str(exc), tok) from None
            nxt = self._peek()
            if nxt.kind == "LANGTAG":
                self._next()
                return Literal(lexical, language=nxt.text[1:])
            if nxt.kind == "DTYPE":
                self._next()
                dt_tok = self._next()
                if dt_tok.kind == "IRIREF":
                    dt = self._resolve(dt_tok.text[1:-1])
                elif dt_tok.kind == "PNAME":
                    dt = self._pname(dt_tok).value
                else:
                    raise self._error("expected a datatype IRI", dt_tok)
                return Literal(lexical, dt)
            return Literal(lexical, XSD_STRING)
        if kind == "INTEGER":
            return Literal(tok.text, XSD_INTEGER)
        if kind == "DECIMAL":
            return Literal(tok.text, XSD_DECIMAL)
        if kind == "DOUBLE":
            return Literal(tok.text, XSD_DOUBLE)
        if kind == "KEYWORD" and tok.text in ("true", "false"):
            return Literal(tok.text, XSD_BOOLEAN)
        if kind == "PUNCT" and tok.text in "[(":
            raise self._error("blank node property lists and collections are not supported", tok)
        raise self._error("expected an object", tok)


def parse_turtle(text: str, base: str = "") -> tuple[list[Triple], dict[str, str]]:
    """Parse Turtle text; returns triples in document order and the prefix map."""
    parser = TurtleParser(text, base)
    parser.parse()
    return parser.triples, parser.prefixes


def term_to_ntriples(term) -> str:
    return term.n3()


def write_ntriples(triples) -> str:
    """One ``s p o .`` line per triple, full IRIs, valid as Turtle."""
    return "".join(f"{s.n3()} {p.n3()} {o.n3()} .\n" for s, p, o in triples)


def write_turtle(triples, prefixes: dict[str, str] | None = None) -> str:
    head = "".join(f"@prefix {k}: <{v}> .\n" for k, v in (prefixes or {}).items())
    if head:
        head += "\n"
    return head + write_ntriples(triples)
