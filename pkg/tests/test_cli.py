import json

import pytest

from artinring import cli
from artinring import series as sr


def run(args):
    return cli.main(args)


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.ring", tmp_path / "b.ring"
    assert run(["gen", "--e", "3", "--s", "5", "--c", "1", "--seed", "7",
                "--out", str(a)]) == 0
    assert run(["gen", "--e", "3", "--s", "5", "--c", "1", "--seed", "7",
                "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.startswith("# artinring gen\n")
    assert "seed 7" in text


def test_gen_full_type_is_power_ideal(tmp_path):
    out = tmp_path / "m2.ring"
    assert run(["gen", "--e", "2", "--s", "1", "--c", "2",
                "--out", str(out)]) == 0
    body = [ln for ln in out.read_text().splitlines()
            if ln.startswith("gen ")]
    assert body == ["gen x^2", "gen x*y", "gen y^2"]


def test_gen_invalid_type_usage_error(capsys):
    assert run(["gen", "--e", "2", "--s", "2", "--c", "9"]) == 2
    assert "type must satisfy" in capsys.readouterr().err


def test_analyze_roundtrip(tmp_path):
    ring = tmp_path / "r.ring"
    rep = tmp_path / "rep.json"
    run(["gen", "--e", "2", "--s", "3", "--c", "1", "--seed", "5",
         "--out", str(ring)])
    assert run(["analyze", "--in", str(ring), "--format", "json",
                "--out", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert data["compressed"] and data["level"]
    assert data["hilbert"] == [1, 2, 2, 1]
    assert data["classification"] == "main case (s = 2v-1)"
    assert all(c["ann_power_is_power"] for c in data["colon_checks"])
    assert data["first_step"] is True


def test_analyze_not_artinian(tmp_path, capsys):
    ring = tmp_path / "bad.ring"
    ring.write_text("p 32003\nvars x y\ngen x^2\n")
    assert run(["analyze", "--in", str(ring)]) == 2
    assert "raise --cap" in capsys.readouterr().err


def test_analyze_parse_error(tmp_path, capsys):
    ring = tmp_path / "broken.ring"
    ring.write_text("p 32003\nvars x y\ngen x^2 +\n")
    assert run(["analyze", "--in", str(ring)]) == 2
    assert "error:" in capsys.readouterr().err


def test_verify_small_gorenstein(tmp_path):
    ring = tmp_path / "r.ring"
    rep = tmp_path / "rep.json"
    run(["gen", "--e", "2", "--s", "3", "--c", "1", "--seed", "5",
         "--out", str(ring)])
    assert run(["verify", "--in", str(ring), "--cutoff", "4",
                "--format", "json", "--out", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert data["schema"] == 1
    by_name = {c["name"]: c for c in data["checks"]}
    assert by_name["nu_vanishing"]["pass"] is True
    assert by_name["main_theorem"]["pass"] is None
    assert "below 5" in by_name["main_theorem"]["detail"]
    assert by_name["golod_upper_bound"]["pass"] is True
    assert data["betti_Q"][0] == {"dim": 1, "i": 0, "j": 0}


def test_verify_full_instance(tmp_path):
    ring = tmp_path / "r.ring"
    rep = tmp_path / "rep.json"
    run(["gen", "--e", "3", "--s", "5", "--c", "1", "--seed", "1",
         "--out", str(ring)])
    assert run(["verify", "--in", str(ring), "--cutoff", "4",
                "--format", "json", "--out", str(rep)]) == 0
    data = json.loads(rep.read_text())
    by_name = {c["name"]: c for c in data["checks"]}
    assert by_name["main_theorem"]["pass"] is True
    assert by_name["phi_kernel"]["pass"] is True
    assert by_name["quotient_golod"]["pass"] is True
    assert data["phi_kernel"] == [0, 1, 0, 1]
    assert data["invariants"]["classification"] == "main case (s = 2v-1)"
    assert data["invariants"]["denominator_coincidence"] is False


def test_verify_json_byte_identical(tmp_path):
    ring = tmp_path / "r.ring"
    run(["gen", "--e", "2", "--s", "3", "--c", "1", "--seed", "2",
         "--out", str(ring)])
    reps = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert run(["verify", "--in", str(ring), "--cutoff", "3",
                    "--format", "json", "--out", str(out)]) == 0
        reps.append(out.read_bytes())
    assert reps[0] == reps[1]


def test_verify_failed_check_exit_code(tmp_path, monkeypatch):
    ring = tmp_path / "r.ring"
    run(["gen", "--e", "2", "--s", "3", "--c", "1", "--seed", "5",
         "--out", str(ring)])
    fake = {"pass": False, "complete": True, "truncated": False,
            "betti": [1, 9], "bound": [1, 2],
            "compared": [{"i": 0, "betti": 1, "bound": 1},
                         {"i": 1, "betti": 9, "bound": 2}],
            "denominator": [1], "order": 3, "depth": 1}
    monkeypatch.setattr(sr, "verify_golod_ring", lambda *a, **k: fake)
    assert run(["verify", "--in", str(ring), "--cutoff", "3",
                "--format", "json", "--out", str(tmp_path / "x.json")]) == 1


def test_usage_error_on_missing_subcommand():
    with pytest.raises(SystemExit) as exc:
        run([])
    assert exc.value.code == 2


def test_table_output_runs(tmp_path, capsys):
    ring = tmp_path / "r.ring"
    run(["gen", "--e", "2", "--s", "3", "--c", "1", "--seed", "5",
         "--out", str(ring)])
    assert run(["analyze", "--in", str(ring)]) == 0
    out = capsys.readouterr().out
    assert "compressed     True" in out
    assert run(["verify", "--in", str(ring), "--cutoff", "3"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "SKIP" in out
