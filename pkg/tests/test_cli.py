import io
import json

import pytest

from skeinlab import cli
from skeinlab.diagram import from_json
from skeinlab.generators import borromean
from skeinlab.laurent import LaurentPoly, parse


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_round_trips(capsys):
    code, out, _ = run(["gen", "--family", "borromean"], capsys)
    assert code == 0
    d = from_json(out)
    assert d.pd == borromean()
    code, out, _ = run(["gen", "--family", "hopf_ring", "--n", "3", "--unoriented", "--format", "json"], capsys)
    assert code == 0 and len(json.loads(out)["crossings"]) == 6


def test_gen_to_homfly_pipeline(capsys, monkeypatch):
    _, pd_json, _ = run(["gen", "--family", "borromean"], capsys)
    code, out, _ = run(["homfly", "-"], capsys, pd_json, monkeypatch)
    assert code == 0
    assert out.strip() == "m^-2l^-2 + 2m^-2 + m^-2l^2 - m^2l^-2 - 2m^2 - m^2l^2 + m^4"
    code, out, _ = run(["jones", "-"], capsys, pd_json, monkeypatch)
    assert out.strip() == "-q^3 + 3q^2 - 2q + 4 - 2q^-1 + 3q^-2 - q^-3"
    code, out, _ = run(["alexander", "--substitution-check", "-"], capsys, pd_json, monkeypatch)
    assert out.strip() == "t^2 - 4t + 6 - 4t^-1 + t^-2"


def test_bracket_json_round_trips(tmp_path, capsys):
    f = tmp_path / "b.json"
    assert cli.run(["gen", "--family", "borromean", "-o", str(f)]) == 0
    code, out, _ = run(["bracket", str(f), "--format", "json"], capsys)
    data = json.loads(out)
    assert LaurentPoly.from_json(data["terms"]) == parse(data["text"])
    assert data["text"] == "-A^12 + 3A^8 - 2A^4 + 4 - 2A^-4 + 3A^-8 - A^-12"


def test_json_output_is_deterministic(tmp_path, capsys):
    f = tmp_path / "r.json"
    cli.run(["gen", "--family", "brunnian_ring", "--n", "2", "-o", str(f)])
    outs = [run(["homfly", str(f), "--format", "json"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_verify_all_pass(capsys):
    code, out, _ = run(["verify", "--family", "hopf_ring", "--max-n", "10"], capsys)
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 10 and all(r.endswith("pass") for r in rows)


def test_verify_threads(capsys):
    code, out, _ = run(["--threads", "2", "verify", "--family", "dbl_hopf_chain", "--max-n", "6",
                        "--format", "json"], capsys)
    assert code == 0
    assert {r["result"] for r in json.loads(out)["rows"]} == {"pass"}


def test_bench_reports_identical_values(capsys):
    code, out, _ = run(["bench", "--family", "dbl_hopf_ring", "--n", "4", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["identical"] and set(data["seconds"]) == {"naive", "gathered"}


def test_bench_refuses_naive_above_cap(capsys):
    code, out, _ = run(["bench", "--family", "dbl_hopf_ring", "--n", "8", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and "naive" in data["refused"] and list(data["seconds"]) == ["gathered"]


def test_graph_command(tmp_path, capsys):
    f = tmp_path / "g.dot"
    f.write_text('graph { a -- v [colour=red]; v -- b [colour=red]; v -- z [colour=blue]; }')
    code, out, _ = run(["graph", str(f), "--report", "--reduce", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["valid"] and data["unlinked"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"edges": [{"u": "a", "v": "b", "colour": 0}, {"u": "b", "v": "c", "colour": 0},
                                         {"u": "c", "v": "a", "colour": 0}]}))
    code, out, _ = run(["graph", str(bad)], capsys)
    assert code == 2 and "tree" in out


def test_exit_codes(tmp_path, capsys, monkeypatch):
    assert run(["--bogus"], capsys)[0] == 2
    assert run(["bracket", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["homfly", "-"], capsys, "{not json", monkeypatch)[0] == 2
    _, pd_json, _ = run(["gen", "--family", "hopf_chain", "--n", "2", "--unoriented", "--format", "json"], capsys)
    assert run(["homfly", "-"], capsys, pd_json, monkeypatch)[0] == 2
    _, pd_json, _ = run(["gen", "--family", "brunnian_ring", "--n", "2"], capsys)
    assert run(["homfly", "--cap", "4", "-"], capsys, pd_json, monkeypatch)[0] == 1
    assert run(["gen", "--family", "dbl_hopf_ring", "--n", "3"], capsys)[0] == 2


def test_threads_env(monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    assert cli._default_threads() == 3
