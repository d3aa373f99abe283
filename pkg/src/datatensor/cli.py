"""Command-line front end.

::

    datatensor query --data g.ttl --query q.rq --format tsv
    datatensor validate --data g.ttl
    datatensor canonicalize g.ttl
    datatensor generate-fixture --entities 100 --dim 16 --seed 1

Exit codes: 0 success, 1 usage error, 2 data or query error. Results go
to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .functions import default_registry
from .graph import Graph
from .lexical import IllTypedLiteralError, is_tensor_datatype, parse_tensor_literal, validate
from .sparql import QueryEvaluationError, QuerySyntaxError, evaluate, parse_query
from .terms import IRI, BlankNode, Literal, Triple
from .turtle import TurtleParser, TurtleSyntaxError, write_turtle

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except FileNotFoundError:
        raise _DataError(f"{path}: file not found") from None
    except OSError as exc:
        raise _DataError(f"{path}: {exc.strerror}") from None


def _parse_file(path: str) -> TurtleParser:
    text = _read(path)
    base = "file://" + os.path.abspath(path)
    try:
        parser = TurtleParser(text, base)
        parser.parse()
    except TurtleSyntaxError as exc:
        raise _DataError(f"{path}:{exc.line}:{exc.column}: {exc.message}"
                         + (f" near {exc.token!r}" if exc.token else "")) from None
    return parser


def load_graph(paths) -> Graph:
    g = Graph()
    for path in paths:
        g.update(_parse_file(path).triples)
    return g


def _term_json(term) -> dict:
    if isinstance(term, IRI):
        return {"type": "uri", "value": term.value}
    if isinstance(term, BlankNode):
        return {"type": "bnode", "value": term.label}
    out = {"type": "literal", "value": term.lexical}
    if term.language is not None:
        out["xml:lang"] = term.language
    elif term.datatype != "http://www.w3.org/2001/XMLSchema#string":
        out["datatype"] = term.datatype
    return out


def format_json(variables, solutions) -> str:
    doc = {
        "head": {"vars": list(variables)},
        "results": {
            "bindings": [{k: _term_json(v) for k, v in s.items() if k in variables} for s in solutions]
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def format_tsv(variables, solutions) -> str:
    lines = ["\t".join("?" + v for v in variables)]
    for s in solutions:
        lines.append("\t".join(s[v].n3() if v in s else "" for v in variables))
    return "\n".join(lines) + "\n"


def _query_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.exists(arg):
        return _read(arg)
    if "{" in arg:
        return arg
    raise _DataError(f"{arg}: file not found")


def cmd_query(args) -> int:
    graph = load_graph(args.data)
    text = _query_text(args.query)
    try:
        query = parse_query(text)
        solutions = evaluate(query, graph, default_registry())
    except QuerySyntaxError as exc:
        raise _DataError(f"query: {exc}") from None
    except QueryEvaluationError as exc:
        raise _DataError(f"query evaluation aborted: {exc}") from None
    variables = query.variables()
    out = format_json if args.format == "json" else format_tsv
    sys.stdout.write(out(variables, solutions))
    return EXIT_OK


def cmd_validate(args) -> int:
    found = 0
    problems = 0
    for path in args.data:
        parser = _parse_file(path)
        for t, (line, _col) in zip(parser.triples, parser.positions):
            o = t.object
            if not (isinstance(o, Literal) and is_tensor_datatype(o.datatype)):
                continue
            found += 1
            for issue in validate(o.lexical, o.datatype).issues:
                problems += 1
                print(f"{path}:{line}:\t{issue.path}\t{issue.message} [{issue.code}]")
    if found == 0:
        print("0 tensor literals found")
    if problems:
        print(f"{problems} issue(s) in {found} tensor literal(s)", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def cmd_canonicalize(args) -> int:
    parser = _parse_file(args.file)
    out = []
    for t, (line, _col) in zip(parser.triples, parser.positions):
        o = t.object
        if isinstance(o, Literal) and is_tensor_datatype(o.datatype):
            try:
                value = parse_tensor_literal(o.lexical, o.datatype)
            except IllTypedLiteralError as exc:
                raise _DataError(f"{args.file}:{line}: ill-typed tensor literal: {exc}") from None
            t = Triple(t.subject, t.predicate, Literal.from_tensor(value))
        out.append(t)
    sys.stdout.write(write_turtle(out, parser.prefixes))
    return EXIT_OK


def cmd_generate(args) -> int:
    from .fixtures import embedding_graph_turtle

    if args.entities < 0 or args.dim < 1:
        raise _UsageError("--entities must be >= 0 and --dim >= 1")
    text = embedding_graph_turtle(args.entities, args.dim, args.seed)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="datatensor", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    q = sub.add_parser("query", help="run a SELECT query over Turtle data")
    q.add_argument("--data", nargs="+", required=True, metavar="FILE")
    q.add_argument("--query", required=True, metavar="FILE|-", help="query file, '-' for stdin, or inline text")
    q.add_argument("--format", choices=("tsv", "json"), default="tsv")
    q.set_defaults(func=cmd_query)

    v = sub.add_parser("validate", help="check every tensor literal in Turtle files")
    v.add_argument("--data", nargs="+", required=True, metavar="FILE")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("canonicalize", help="rewrite tensor literals in canonical form")
    c.add_argument("file")
    c.set_defaults(func=cmd_canonicalize)

    g = sub.add_parser("generate-fixture", help="write a synthetic embedding graph")
    g.add_argument("--entities", type=int, default=100)
    g.add_argument("--dim", type=int, default=16)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", "-o")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"datatensor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DataError as exc:
        print(f"datatensor: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
