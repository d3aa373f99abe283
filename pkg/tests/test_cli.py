import json
import subprocess
import sys

import pytest

from datatensor.cli import main
from datatensor.fixtures import read_text
from datatensor.turtle import parse_turtle

BAD_TTL = """@prefix : <http://example.org/> .
@prefix dt: <https://w3id.org/rdf-tensor/datatypes#> .
:a :p "{\\"type\\":\\"int16\\",\\"shape\\":[2],\\"data\\":[1, 99999]}"^^dt:NumericDataTensor .
:a :q "{\\"shape\\":[1],\\"data\\":[1]}"^^dt:BooleanDataTensor .
:a :r "fine" .
"""


@pytest.fixture
def files(tmp_path):
    data = tmp_path / "tensors.ttl"
    data.write_text(read_text("tensors.ttl"))
    sim = tmp_path / "similarity.rq"
    sim.write_text(read_text("similarity.rq"))
    agg = tmp_path / "aggregate.rq"
    agg.write_text(read_text("aggregate.rq"))
    bad = tmp_path / "bad.ttl"
    bad.write_text(BAD_TTL)
    plain = tmp_path / "plain.ttl"
    plain.write_text("<http://e/a> <http://e/p> 1 .\n")
    return {"data": str(data), "sim": str(sim), "agg": str(agg), "bad": str(bad), "plain": str(plain), "dir": tmp_path}


def cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_query_tsv(files, capsys):
    code, out, err = cli(capsys, "query", "--data", files["data"], "--query", files["sim"])
    assert code == 0 and err == ""
    header, row = out.strip("\n").split("\n")
    assert header == "?dt1\t?dt2\t?cos\t?norm_dt1"
    cells = row.split("\t")
    assert cells[2] == '"1.0"^^<http://www.w3.org/2001/XMLSchema#double>'
    assert '{\\"type\\":\\"float32\\",\\"shape\\":[],\\"data\\":[0.0]}' in cells[3]


def test_tsv_and_json_agree(files, capsys):
    _, tsv, _ = cli(capsys, "query", "--data", files["data"], "--query", files["agg"])
    code, js, _ = cli(capsys, "query", "--data", files["data"], "--query", files["agg"], "--format", "json")
    assert code == 0
    doc = json.loads(js)
    assert doc["head"]["vars"] == ["s", "sum_tensor", "avg_tensor"]
    lines = tsv.strip("\n").split("\n")
    assert lines[0].split("\t") == ["?" + v for v in doc["head"]["vars"]]
    assert len(lines) - 1 == len(doc["results"]["bindings"]) == 1
    [b] = doc["results"]["bindings"]
    assert b["s"] == {"type": "uri", "value": "http://example.org/s"}
    assert json.loads(b["sum_tensor"]["value"]) == {"type": "float32", "shape": [2], "data": [2.0, 4.0]}
    # both encodings describe the same terms
    from datatensor.turtle import unescape_string

    tsv_vals = [unescape_string(c.split('"')[1]) if c.startswith('"') else c[1:-1]
                for c in [lines[1].split("\t")[0]]]
    assert tsv_vals == ["http://example.org/s"]
    sum_cell = lines[1].split("\t")[1]
    assert unescape_string(sum_cell[1:sum_cell.rindex('"')]) == b["sum_tensor"]["value"]


def test_inline_and_stdin_query(files, capsys, monkeypatch):
    code, out, _ = cli(capsys, "query", "--data", files["data"], "--query", "SELECT ?o WHERE { ?s ?p ?o }")
    assert code == 0 and len(out.strip().split("\n")) == 3
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("SELECT * WHERE { ?s ?p ?o } LIMIT 1"))
    code, out, _ = cli(capsys, "query", "--data", files["data"], "--query", "-")
    assert code == 0 and len(out.strip().split("\n")) == 2


def test_validate(files, capsys):
    code, out, err = cli(capsys, "validate", "--data", files["data"])
    assert code == 0 and out == "" and err == ""
    code, out, err = cli(capsys, "validate", "--data", files["bad"])
    assert code == 2
    lines = out.strip().split("\n")
    assert len(lines) == 2
    assert lines[0].startswith(files["bad"] + ":3:") and "$.data[1]" in lines[0] and "out-of-range" in lines[0]
    assert ":4:" in lines[1] and "bad-element" in lines[1]
    assert "2 issue(s)" in err
    code, out, err = cli(capsys, "validate", "--data", files["plain"])
    assert code == 0 and out.strip() == "0 tensor literals found" and err == ""


def test_canonicalize_idempotent(files, capsys):
    code, once, err = cli(capsys, "canonicalize", files["data"])
    assert code == 0 and err == ""
    assert '{\\"type\\":\\"float32\\",\\"shape\\":[2],\\"data\\":[1.0,2.0]}' in once
    path = files["dir"] / "once.ttl"
    path.write_text(once)
    _, twice, _ = cli(capsys, "canonicalize", str(path))
    assert set(parse_turtle(once)[0]) == set(parse_turtle(twice)[0])
    assert once == twice


def test_canonicalize_rejects_ill_typed(files, capsys):
    code, out, err = cli(capsys, "canonicalize", files["bad"])
    assert code == 2 and out == "" and "ill-typed" in err


def test_generate_fixture(files, capsys):
    out_path = files["dir"] / "gen.ttl"
    code, out, err = cli(capsys, "generate-fixture", "--entities", "5", "--dim", "4", "--seed", "3", "-o", str(out_path))
    assert code == 0 and err == ""
    triples, _ = parse_turtle(out_path.read_text())
    assert len(triples) == 15
    _, again, _ = cli(capsys, "generate-fixture", "--entities", "5", "--dim", "4", "--seed", "3")
    assert again == out_path.read_text()
    code, _, err = cli(capsys, "validate", "--data", str(out_path))
    assert code == 0 and err == ""


@pytest.mark.parametrize("args, expected", [
    (["query", "--data", "/nonexistent.ttl", "--query", "SELECT * WHERE { ?s ?p ?o }"], 2),
    (["generate-fixture", "--dim", "0"], 1),
])
def test_error_exit_codes(args, expected, capsys):
    code, out, err = cli(capsys, *args)
    assert code == expected and err and out == ""


def test_bad_query_and_data(files, capsys):
    code, _, err = cli(capsys, "query", "--data", files["data"], "--query", "SELECT * WHERE { ?s ?p }")
    assert code == 2 and "query" in err
    code, _, err = cli(capsys, "query", "--data", files["data"], "--query",
                       "PREFIX dtf: <https://w3id.org/rdf-tensor/functions#> SELECT * WHERE { ?s ?p ?o BIND(dtf:nope(?o) AS ?x) }")
    assert code == 2 and "aborted" in err
    broken = files["dir"] / "broken.ttl"
    broken.write_text("<http://e/a> <http://e/p>\n <http://e/o>")
    code, _, err = cli(capsys, "validate", "--data", str(broken))
    assert code == 2 and ":2:" in err


def test_usage_errors_exit_1(capsys):
    for argv in ([], ["bogus"], ["query", "--data", "x.ttl"], ["query", "--data", "x", "--query", "q", "--format", "xml"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 1
        assert capsys.readouterr().err


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "datatensor.cli", "query", "--data", files["data"], "--query", files["agg"]],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stderr == ""
    assert proc.stdout.startswith("?s\t?sum_tensor\t?avg_tensor\n")
