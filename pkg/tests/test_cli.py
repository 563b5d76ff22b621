import json

import pytest

from helpers import F, random_suite
from hypermatch.cli import discount_table, run
from hypermatch.errors import MalformedFile
from hypermatch.io import (
    instance_from_dict,
    instance_to_dict,
    outcome_from_dict,
    outcome_to_dict,
)
from hypermatch.discounts import Schedule, make_profile
from hypermatch.rational import format_rational, parse_rational, round_decimal
from hypermatch.rounding import find_matching


@pytest.fixture
def fano_file(tmp_path):
    path = tmp_path / "f.json"
    assert run(["gen", "--kind", "fano", "--out", str(path)]) == 0
    return path


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


def test_rational_parsing():
    assert parse_rational("3/7") == F(3, 7)
    assert parse_rational("-2") == -2
    assert format_rational(F(-3, 6)) == "-1/2"
    assert round_decimal(F(1, 3)) == "0.3333"
    assert round_decimal(F(5, 8)) == "0.6250"
    for bad in ("0.5", "1/0", "x", True, 0.5):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_solve_hstar(fano_file, tmp_path):
    out = tmp_path / "o.json"
    assert run(["solve", "--instance", str(fano_file), "--schedule", "hstar", "--out", str(out)]) == 0
    body = json.loads(out.read_text())
    assert body["status"] == "success" and body["guarantee"] == "7/3" and body["wstar"] == "7/3"
    assert _no_floats(body)
    assert run(["verify", "--instance", str(fano_file), "--outcome", str(out)]) == 0


def test_solve_stuck_and_verify(fano_file, tmp_path):
    out, trace = tmp_path / "o.json", tmp_path / "t.json"
    code = run(["solve", "--instance", str(fano_file), "--schedule", "constant:1",
                "--out", str(out), "--trace", str(trace)])
    assert code == 2
    body = json.loads(out.read_text())
    assert body["status"] == "error" and len(body["certificate"]["edges"]) == 7
    assert json.loads(trace.read_text()) == []
    assert run(["verify", "--instance", str(fano_file), "--outcome", str(out)]) == 0
    body["certificate"]["slack"][0] = "5/3"
    out.write_text(json.dumps(body))
    assert run(["verify", "--instance", str(fano_file), "--outcome", str(out)]) == 1


def test_tampered_guarantee(fano_file, tmp_path, capsys):
    out = tmp_path / "o.json"
    run(["solve", "--instance", str(fano_file), "--schedule", "hstar", "--out", str(out)])
    body = json.loads(out.read_text())
    body["guarantee"] = "8/3"
    out.write_text(json.dumps(body))
    assert run(["verify", "--instance", str(fano_file), "--outcome", str(out)]) == 1
    assert json.loads(capsys.readouterr().out.strip().splitlines()[-1]) == {"valid": False}


def test_verify_schedule_mismatch(fano_file, tmp_path):
    out = tmp_path / "o.json"
    run(["solve", "--instance", str(fano_file), "--schedule", "hstar", "--out", str(out)])
    args = ["verify", "--instance", str(fano_file), "--outcome", str(out), "--schedule", "baseline"]
    assert run(args) == 1


def test_search_stuck_cli(fano_file, tmp_path):
    out = tmp_path / "s.json"
    assert run(["search-stuck", "--instance", str(fano_file), "--schedule", "constant:1",
                "--out", str(out)]) == 2
    assert json.loads(out.read_text())["found"]
    assert run(["verify", "--instance", str(fano_file), "--outcome", str(out)]) == 0
    none = tmp_path / "n.json"
    assert run(["search-stuck", "--instance", str(fano_file), "--schedule", "hstar",
                "--out", str(none)]) == 0
    assert json.loads(none.read_text()) == {"schedule": "hstar", "found": False}
    assert run(["verify", "--instance", str(fano_file), "--outcome", str(none)]) == 1


def test_discounts_cli(capsys):
    assert run(["discounts", "--schedule", "all", "--kmax", "10"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split("\t")[0] == "k" and len(lines) == 10
    row3 = dict(zip(lines[0].split("\t"), lines[2].split("\t")))
    assert (row3["baseline_4dp"], row3["hstar_4dp"], row3["hinf_4dp"], row3["htilde_4dp"]) == (
        "0.3333", "0.4286", "0.3679", "0.3667")
    assert row3["hstar"] == "3/7"
    assert discount_table("hr:4", [2, 3, 4]).splitlines()[2] == "3\t9/26\t0.3462"


def test_sample_cli(fano_file, capsys):
    assert run(["sample", "--instance", str(fano_file), "--samples", "20000", "--seed", "1"]) == 0
    rows = [r.split("\t") for r in capsys.readouterr().out.strip().splitlines()]
    assert rows[0][:5] == ["edge", "size", "x", "exact", "bound"]
    assert all(r[3] == "1/7" and r[4] == "1/7" and r[5] == "true" for r in rows[1:])


def test_analyze_cli(capsys):
    assert run(["analyze", "biuniform", "--k", "2", "--l", "3", "--p", "2/3", "--q", "3/7"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["T"] == "21/5" and body["verdict"] is True
    assert run(["analyze", "biuniform", "--k", "2", "--l", "3", "--p", "2/3", "--q", "3/7",
                "--mode", "grid", "--step", "1/100"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] is False
    assert run(["analyze", "biuniform", "--k", "3", "--l", "4", "--p", "3/7", "--maximize-q",
                "--tol", "1/100000"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert abs(float(body["q_decimal"]) - 0.30508) <= 1e-4


def test_usage_errors(tmp_path, capsys):
    out = tmp_path / "never.json"
    assert run([]) == 1
    assert run(["gen", "--kind", "projective_plane", "--order", "4", "--out", str(out)]) == 1
    assert run(["gen", "--kind", "random", "--out", str(out)]) == 1
    assert not out.exists()
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 2, "edges": [[0, 5]]}')
    assert run(["solve", "--instance", str(bad), "--schedule", "hstar", "--out", str(out)]) == 1
    assert run(["solve", "--instance", str(tmp_path / "missing.json"), "--schedule", "hstar"]) == 1
    assert run(["analyze", "biuniform", "--k", "2", "--l", "3", "--p", "0.5", "--q", "1/3"]) == 1
    assert run(["discounts", "--ks", "1,2"]) == 1
    assert not out.exists()
    assert list(tmp_path.iterdir()) == [bad]


def test_gen_random_and_biuniform(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["gen", "--kind", "random", "--n", "7", "--m", "9", "--size-min", "2", "--size-max", "4",
            "--seed", "3"]
    assert run(args + ["--out", str(a)]) == 0 and run(args + ["--out", str(b)]) == 0
    assert a.read_text() == b.read_text()
    c = tmp_path / "c.json"
    assert run(["gen", "--kind", "biuniform", "--n", "8", "--m-k", "5", "--m-l", "5", "--k", "2",
                "--l", "3", "--seed", "7", "--out", str(c)]) == 0
    assert len(json.loads(c.read_text())["edges"]) == 10


def test_json_round_trip():
    for inst in random_suite(15, 71):
        data = json.loads(json.dumps(instance_to_dict(inst)))
        assert instance_from_dict(data) == inst
        assert _no_floats(data)
        g = make_profile(inst.hypergraph, Schedule.htilde())
        out = find_matching(inst, g)
        d = json.loads(json.dumps(outcome_to_dict(out, g, "htilde")))
        assert outcome_from_dict(d) == out


def test_instance_without_weights():
    inst = instance_from_dict({"vertices": 3, "edges": [[0, 1], [1, 2]]})
    assert inst.weights == (1, 1)
    for bad in [{"edges": []}, {"vertices": "3", "edges": []}, {"vertices": 3, "edges": [[0.5]]},
                {"vertices": 3, "edges": [[0, 1]], "weights": ["0.5"]}, {"vertices": 3, "edges": [[0, 1], [1, 0]]}]:
        with pytest.raises(MalformedFile):
            instance_from_dict(bad)
    with pytest.raises(MalformedFile):
        outcome_from_dict({"status": "maybe"})
