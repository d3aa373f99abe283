import random
from collections import Counter

import pytest

from datatensor.fixtures import read_text
from datatensor.functions import default_registry
from datatensor.graph import Graph
from datatensor.sparql import QueryEvaluationError, QuerySyntaxError, UnsupportedFeatureError, evaluate, parse_query
from datatensor.sparql.ast import Aggregate, Bind, FunctionCall, PathAlternative, SelectQuery, iter_aggregates
from datatensor.sparql.evaluator import evaluate_expression
from datatensor.sparql.values import ExprError
from datatensor.terms import XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER, IRI, Literal, Triple, TriplePattern, Variable
from datatensor.turtle import parse_turtle

from oracles import as_multiset, brute_force_bgp
from sparql_printer import print_query

EX = "http://example.org/"
PFX = "PREFIX : <http://example.org/>\nPREFIX dtf: <https://w3id.org/rdf-tensor/functions#>\n" \
      "PREFIX dta: <https://w3id.org/rdf-tensor/aggregates#>\n"
REG = default_registry()


def ex(n):
    return IRI(EX + n)


def lit(v):
    if isinstance(v, bool):
        return Literal("true" if v else "false", XSD_BOOLEAN)
    if isinstance(v, int):
        return Literal(str(v), XSD_INTEGER)
    return Literal(v)


def run(query, graph):
    return evaluate(parse_query(PFX + query), graph, REG)


@pytest.fixture(scope="module")
def fixture_graph():
    return Graph(parse_turtle(read_text("tensors.ttl"))[0])


@pytest.fixture(scope="module")
def people():
    g = Graph()
    rows = [("alice", 30, "a"), ("bob", 25, "b"), ("carol", 35, "a"), ("dave", 25, None)]
    for name, age, team in rows:
        g.insert(Triple(ex(name), ex("age"), lit(age)))
        if team:
            g.insert(Triple(ex(name), ex("team"), ex(team)))
    g.insert(Triple(ex("alice"), ex("knows"), ex("bob")))
    g.insert(Triple(ex("bob"), ex("likes"), ex("carol")))
    return g


def ages(sols, var="x"):
    return [s[var].lexical if var in s else None for s in sols]


class TestParser:
    def test_bind_query_shape(self):
        q = parse_query(read_text("similarity.rq"))
        pats = [e for e in q.where.elements if isinstance(e, TriplePattern)]
        binds = [e for e in q.where.elements if isinstance(e, Bind)]
        assert len(pats) == 2 and len(binds) == 2 and q.projection is None

        def calls(e):
            n = isinstance(e, FunctionCall)
            return n + sum(calls(a) for a in getattr(e, "args", ()))

        assert sum(calls(b.expr) for b in binds) == 3

    def test_aggregate_query_shape(self):
        q = parse_query(read_text("aggregate.rq"))
        [path] = q.where.elements
        assert isinstance(path, PathAlternative) and path.predicates == (ex("p1"), ex("p2"))
        assert [c.expr for c in q.group_by] == [Variable("s")]
        aggs = [a for p in q.projection if p.expr for a in iter_aggregates(p.expr)]
        assert len(aggs) == 2 and all(isinstance(a, Aggregate) for a in aggs)

    def test_minimal(self):
        q = parse_query("SELECT * WHERE { ?s ?p ?o }")
        assert q == SelectQuery(where=q.where)
        assert q.variables() == ["s", "p", "o"]

    def test_literals_and_keywords(self):
        q = parse_query('select ?x where { ?x <http://e/p> -5, 1.5, 2e1, true, "s"@en } LIMIT 3 OFFSET 1')
        objs = [e.object for e in q.where.elements]
        assert objs[0] == Literal("-5", XSD_INTEGER)
        assert objs[1] == Literal("1.5", XSD_DECIMAL)
        assert objs[2] == Literal("2e1", XSD_DOUBLE)
        assert objs[3] == Literal("true", XSD_BOOLEAN)
        assert objs[4].language == "en"
        assert (q.limit, q.offset) == (3, 1)

    def test_inline_tensor_literal(self):
        q = parse_query(PFX + 'SELECT * WHERE { ?s ?p "{\\"shape\\":[],\\"data\\":[true]}"^^<https://w3id.org/rdf-tensor/datatypes#BooleanDataTensor> }')
        assert q.where.elements[0].object.tensor_value().data == [True]

    @pytest.mark.parametrize("text", [
        "ASK { ?s ?p ?o }",
        "CONSTRUCT { ?s ?p ?o } WHERE { ?s ?p ?o }",
        "SELECT REDUCED ?s WHERE { ?s ?p ?o }",
        "SELECT * WHERE { { ?s ?p ?o } UNION { ?s ?p ?o } }",
        "SELECT * WHERE { ?s <http://e/p>* ?o }",
        "SELECT * WHERE { ?s <http://e/p>/<http://e/q> ?o }",
        "SELECT * WHERE { ?s ^<http://e/p> ?o }",
        "SELECT * WHERE { ?s ?p ?o MINUS { ?s ?p ?o } }",
        "SELECT * WHERE { ?s ?p ?o } VALUES ?s { <http://e/a> }",
        "SELECT * WHERE { ?s ?p [ ?q ?r ] }",
        "SELECT * WHERE { ?s ?p ?o FILTER(?o IN (1, 2)) }",
        "SELECT * WHERE { { SELECT ?s WHERE { ?s ?p ?o } } }",
        "SELECT * FROM <http://e/g> WHERE { ?s ?p ?o }",
        "SELECT * WHERE { SERVICE <http://e/> { ?s ?p ?o } }",
    ])
    def test_unsupported_features_are_named(self, text):
        with pytest.raises(UnsupportedFeatureError):
            parse_query(text)

    @pytest.mark.parametrize("text", [
        "SELECT * WHERE { ?s ?p ?o ",
        "SELECT WHERE { ?s ?p ?o }",
        "SELECT * WHERE { ?s ?p ?o ?s ?p ?o }",
        "SELECT * WHERE { ?s ?p ?o BIND(1 AS ?o) }",
        "SELECT * WHERE { ?s ?p ?o } GROUP BY ?s",
        "SELECT ?o WHERE { ?s ?p ?o } GROUP BY ?s",
        "SELECT * WHERE { ?s ex:p ?o }",
        "SELECT ?x ?x WHERE { ?x ?p ?o }",
        "SELECT * WHERE { ?s ?p ?o } LIMIT ?x",
    ])
    def test_syntax_errors(self, text):
        with pytest.raises(QuerySyntaxError):
            parse_query(text)

    def test_error_has_position(self):
        with pytest.raises(QuerySyntaxError) as info:
            parse_query("SELECT *\nWHERE { ?s ?p ?o ?s ?p ?o }")
        assert info.value.line == 2 and info.value.column > 0


ROUND_TRIP = [
    read_text("similarity.rq"),
    read_text("aggregate.rq"),
    "SELECT * WHERE { ?s ?p ?o }",
    PFX + "SELECT DISTINCT ?s (?a + 1 * -2 AS ?b) WHERE { ?s :age ?a . FILTER(?a >= 3 && !(?a = 4) || ?a != 7) }",
    PFX + "SELECT ?s WHERE { ?s :p1|:p2|:p3 ?o ; :q _:b . _:b a :C OPTIONAL { ?s :r ?r FILTER(BOUND(?r)) } }",
    PFX + "SELECT ?g (COUNT(*) AS ?n) (COUNT(DISTINCT ?x) AS ?m) (SUM(?x) AS ?t) WHERE { ?s :team ?g ; :age ?x } "
          "GROUP BY ?g HAVING (COUNT(*) > 1) ORDER BY DESC(?n) ?g LIMIT 5 OFFSET 2",
    PFX + "SELECT (dta:var(?t) AS ?v) (dta:std(?t) AS ?sd) WHERE { ?s :emb ?t } GROUP BY (STR(?s) AS ?k) (?s)",
    PFX + 'SELECT * WHERE { ?s ?p ?o BIND(IF(ISLITERAL(?o), STR(?o), "x"@en) AS ?w) BIND(COALESCE(?zz, 1.5e0) AS ?c) }',
    PFX + 'SELECT * WHERE { { ?s ?p ?o } ?s :q "tab\\t\\"q\\""^^<http://e/dt> . BIND(dtf:getSubDT(?o, ?o) AS ?z) }',
    PFX + "SELECT * WHERE { ?s ?p ?o } ORDER BY ASC(dtf:norm2(0, ?o)) DATATYPE(?o)",
]


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_print_parse_round_trip(text):
    q = parse_query(text)
    printed = print_query(q)
    q2 = parse_query(printed)
    assert q2 == q
    assert print_query(q2) == printed


class TestEvaluation:
    def test_fixture_bind_query(self, fixture_graph):
        [sol] = evaluate(parse_query(read_text("similarity.rq")), fixture_graph, REG)
        assert sol["cos"].datatype == XSD_DOUBLE and abs(float(sol["cos"].lexical) - 1.0) <= 1e-9
        norm = sol["norm_dt1"].tensor_value()
        assert norm.dtype.tag == "float32" and norm.shape == () and norm.data == [0.0]

    def test_fixture_aggregate_query(self, fixture_graph):
        [sol] = evaluate(parse_query(read_text("aggregate.rq")), fixture_graph, REG)
        assert sol["s"] == ex("s")
        s, a = sol["sum_tensor"].tensor_value(), sol["avg_tensor"].tensor_value()
        assert (s.dtype.tag, s.data) == ("float32", [2.0, 4.0])
        assert (a.dtype.tag, a.data) == ("float32", [1.0, 2.0])

    def test_tensor_value_equality(self, fixture_graph):
        sols = run("SELECT * WHERE { :s :p1 ?a . :s :p2 ?b FILTER(?a = ?b) FILTER(!SAMETERM(?a, ?b)) }", fixture_graph)
        assert len(sols) == 1

    def test_one_plus_one(self):
        assert evaluate_expression(parse_query("SELECT (1 + 1 AS ?x) WHERE {}").projection[0].expr, {}, REG) \
            == Literal("2", XSD_INTEGER)

    def test_unbound_in_filter_drops_row(self, people):
        assert run("SELECT * WHERE { ?s :age ?a FILTER(?nope > 1) }", people) == []

    def test_bind_error_keeps_row(self, fixture_graph):
        sols = run('SELECT * WHERE { :s :p1 ?a BIND(dtf:log("{\\"shape\\":[1],\\"data\\":[true]}"^^'
                   '<https://w3id.org/rdf-tensor/datatypes#BooleanDataTensor>) AS ?x) }', fixture_graph)
        assert len(sols) == 1 and "x" not in sols[0] and "a" in sols[0]

    def test_unknown_function_aborts(self, people):
        with pytest.raises(QueryEvaluationError):
            run("SELECT * WHERE { ?s :age ?a BIND(dtf:nope(?a) AS ?x) }", people)
        with pytest.raises(QueryEvaluationError):
            run("SELECT (dta:nope(?a) AS ?x) WHERE { ?s :age ?a }", people)

    def test_filter_and_order(self, people):
        sols = run("SELECT ?s ?a WHERE { ?s :age ?a FILTER(?a < 35) } ORDER BY DESC(?a) ?s", people)
        assert [s["s"] for s in sols] == [ex("alice"), ex("bob"), ex("dave")]

    def test_limit_offset_distinct(self, people):
        sols = run("SELECT DISTINCT ?a WHERE { ?s :age ?a } ORDER BY ?a", people)
        assert ages(sols, "a") == ["25", "30", "35"]
        sols = run("SELECT ?a WHERE { ?s :age ?a } ORDER BY ?a LIMIT 2 OFFSET 1", people)
        assert ages(sols, "a") == ["25", "30"]

    def test_optional(self, people):
        sols = run("SELECT ?s ?t WHERE { ?s :age ?a OPTIONAL { ?s :team ?t } } ORDER BY ?s", people)
        assert [s.get("t") for s in sols] == [ex("a"), ex("b"), ex("a"), None]

    def test_optional_with_filter(self, people):
        sols = run("SELECT ?s ?t WHERE { ?s :age ?a OPTIONAL { ?s :team ?t FILTER(?a > 26) } } ORDER BY ?s", people)
        assert [s.get("t") for s in sols] == [ex("a"), None, ex("a"), None]

    def test_builtin_aggregates(self, people):
        sols = run("SELECT ?t (COUNT(*) AS ?n) (SUM(?a) AS ?sum) (AVG(?a) AS ?avg) (MIN(?a) AS ?lo) WHERE "
                   "{ ?s :team ?t ; :age ?a } GROUP BY ?t ORDER BY ?t", people)
        assert [(s["t"], s["n"].lexical, s["sum"].lexical, s["lo"].lexical) for s in sols] == [
            (ex("a"), "2", "65", "30"), (ex("b"), "1", "25", "25")]
        assert float(sols[0]["avg"].lexical) == 32.5

    def test_count_without_group(self, people):
        [sol] = run("SELECT (COUNT(?s) AS ?n) WHERE { ?s :age ?a }", people)
        assert sol["n"].lexical == "4"
        [sol] = run("SELECT (COUNT(*) AS ?n) WHERE { ?s :nothing ?a }", people)
        assert sol["n"].lexical == "0"

    def test_having(self, people):
        sols = run("SELECT ?a (COUNT(*) AS ?n) WHERE { ?s :age ?a } GROUP BY ?a HAVING (COUNT(*) > 1)", people)
        assert [(s["a"].lexical, s["n"].lexical) for s in sols] == [("25", "2")]

    def test_aggregate_error_is_unbound(self, people):
        sols = run('SELECT ?t (SUM(?x) AS ?sum) WHERE { ?s :team ?t BIND(IF(?s = :bob, "x", 1) AS ?x) } GROUP BY ?t ORDER BY ?t', people)
        assert sols[0]["sum"].lexical == "2" and "sum" not in sols[1]

    def test_expression_semantics(self):
        def ev(text):
            q = parse_query(PFX + f"SELECT ({text} AS ?x) WHERE {{}}")
            return evaluate_expression(q.projection[0].expr, {}, REG)

        assert ev("7 / 2") == Literal("3.5", XSD_DECIMAL)
        assert ev("1 = 1.0") == lit(True)
        assert ev('"a" < "b"') == lit(True)
        assert ev("true || (1 / 0 = 1)") == lit(True)
        assert ev("ABS(-3)") == lit(3)
        assert ev('DATATYPE("x")') == IRI("http://www.w3.org/2001/XMLSchema#string")
        with pytest.raises(ExprError):
            ev("1 / 0")
        with pytest.raises(ExprError):
            ev('1 + "a"')


# -- oracle properties --------------------------------------------------------

def _random_graph(rng, n):
    nodes = [ex(f"n{i}") for i in range(rng.randint(2, 8))]
    preds = [ex(f"p{i}") for i in range(rng.randint(1, 3))]
    lits = [lit(i) for i in range(2)]
    triples = [Triple(rng.choice(nodes), rng.choice(preds), rng.choice(nodes + lits)) for _ in range(n)]
    return triples, nodes, preds, lits


def random_bgp(rng, nodes, preds, lits):
    names = [Variable(v) for v in "xyz"[: rng.randint(1, 3)]]
    pats = []
    for _ in range(rng.randint(1, 3)):
        s = rng.choice(names + nodes[:2])
        p = rng.choice(preds + names[:1]) if rng.random() < 0.3 else rng.choice(preds)
        o = rng.choice(names + nodes[:2] + lits)
        pats.append(TriplePattern(s, p, o))
    return pats


def bgp_text(pats):
    return "SELECT * WHERE { " + " . ".join(
        " ".join(x.n3() for x in p) for p in pats) + " }"


@pytest.mark.parametrize("seed", range(40))
def test_bgp_matches_brute_force(seed):
    rng = random.Random(seed)
    triples, nodes, preds, lits = _random_graph(rng, rng.randint(0, 60))
    g = Graph(triples)
    for _ in range(5):
        pats = random_bgp(rng, nodes, preds, lits)
        got = evaluate(parse_query(bgp_text(pats)), g, REG)
        assert as_multiset(got) == as_multiset(brute_force_bgp(triples, pats))


@pytest.mark.parametrize("seed", range(10))
def test_erroring_bind_preserves_count(seed):
    rng = random.Random(seed)
    triples, *_ = _random_graph(rng, 50)
    g = Graph(triples)
    base = run("SELECT * WHERE { ?s ?p ?o }", g)
    bound = run('SELECT * WHERE { ?s ?p ?o BIND(1 + "x" AS ?e) BIND(dtf:sum(0, ?o) AS ?f) }', g)
    assert len(bound) == len(base)
    assert all("e" not in s and "f" not in s for s in bound)


@pytest.mark.parametrize("seed", range(10))
def test_group_by_equals_distinct(seed):
    rng = random.Random(seed)
    triples, *_ = _random_graph(rng, 60)
    g = Graph(triples)
    grouped = run("SELECT ?s ?p WHERE { ?s ?p ?o } GROUP BY ?s ?p", g)
    distinct = run("SELECT DISTINCT ?s ?p WHERE { ?s ?p ?o }", g)
    assert as_multiset(grouped) == as_multiset(distinct)
    grouped = run("SELECT ?k WHERE { ?s ?p ?o } GROUP BY (STR(?o) AS ?k)", g)
    distinct = run("SELECT DISTINCT (STR(?o) AS ?k) WHERE { ?s ?p ?o }", g)
    assert as_multiset(grouped) == as_multiset(distinct)


@pytest.mark.parametrize("seed", range(10))
def test_path_alternative_is_union(seed):
    rng = random.Random(seed)
    triples, *_ = _random_graph(rng, 60)
    triples += [Triple(t.subject, ex("p1"), t.object) for t in triples[:10]]
    g = Graph(triples)
    union = run("SELECT * WHERE { ?s :p0|:p1 ?o }", g)
    a = run("SELECT * WHERE { ?s :p0 ?o }", g)
    b = run("SELECT * WHERE { ?s :p1 ?o }", g)
    assert as_multiset(union) == as_multiset(a) + as_multiset(b)
    assert Counter(len(s) for s in union) <= Counter({2: len(union)})
