"""RDF terms."""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexical import datatype_for, is_tensor_datatype, parse_tensor_literal, serialize_tensor

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
XSD_DOUBLE = XSD + "double"
XSD_FLOAT = XSD + "float"
XSD_BOOLEAN = XSD + "boolean"
RDF_TYPE = RDF + "type"
RDF_LANGSTRING = RDF + "langString"


@dataclass(frozen=True, slots=True)
class IRI:
    value: str

    def n3(self) -> str:
        return "<" + _escape_iri(self.value) + ">"


@dataclass(frozen=True, slots=True)
class BlankNode:
    label: str

    def n3(self) -> str:
        return "_:" + self.label


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: str = XSD_STRING
    language: str | None = None
    # Parsed tensor value, filled lazily; not part of term identity.
    _cache: list = field(default_factory=list, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.language is not None:
            object.__setattr__(self, "language", self.language.lower())
            object.__setattr__(self, "datatype", RDF_LANGSTRING)

    @property
    def is_tensor(self) -> bool:
        return is_tensor_datatype(self.datatype)

    def tensor_value(self):
        """The literal's tensor value, parsed once and cached.

        Raises ``IllTypedLiteralError`` for malformed lexical forms.
        """
        if self._cache:
            value = self._cache[0]
        else:
            try:
                value = parse_tensor_literal(self.lexical, self.datatype)
            except ValueError as exc:
                value = exc
            self._cache.append(value)
        if isinstance(value, Exception):
            raise value
        return value

    @classmethod
    def from_tensor(cls, t) -> Literal:
        lit = cls(serialize_tensor(t), datatype_for(t))
        lit._cache.append(t)
        return lit

    def n3(self) -> str:
        body = '"' + escape_string(self.lexical) + '"'
        if self.language is not None:
            return body + "@" + self.language
        if self.datatype == XSD_STRING:
            return body
        return body + "^^<" + _escape_iri(self.datatype) + ">"


Term = IRI | BlankNode | Literal


@dataclass(frozen=True, slots=True)
class Variable:
    name: str

    def n3(self) -> str:
        return "?" + self.name


@dataclass(frozen=True, slots=True)
class Triple:
    subject: IRI | BlankNode
    predicate: IRI
    object: IRI | BlankNode | Literal

    def __post_init__(self):
        if not isinstance(self.subject, (IRI, BlankNode)):
            raise TypeError(f"triple subject must be an IRI or blank node, got {self.subject!r}")
        if not isinstance(self.predicate, IRI):
            raise TypeError(f"triple predicate must be an IRI, got {self.predicate!r}")
        if not isinstance(self.object, (IRI, BlankNode, Literal)):
            raise TypeError(f"triple object must be an RDF term, got {self.object!r}")

    def __iter__(self):
        return iter((self.subject, self.predicate, self.object))


@dataclass(frozen=True, slots=True)
class TriplePattern:
    subject: IRI | BlankNode | Variable
    predicate: IRI | Variable
    object: IRI | BlankNode | Literal | Variable

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise TypeError("a literal cannot be a triple subject")
        if isinstance(self.predicate, (Literal, BlankNode)):
            raise TypeError("triple predicate must be an IRI or variable")

    def __iter__(self):
        return iter((self.subject, self.predicate, self.object))


_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def escape_string(s: str) -> str:
    return "".join(_STRING_ESCAPES.get(c, c) for c in s)


def _escape_iri(s: str) -> str:
    out = []
    for c in s:
        if c in '<>"{}|^`\\' or ord(c) <= 0x20:
            out.append("\\u%04X" % ord(c))
        else:
            out.append(c)
    return "".join(out)
