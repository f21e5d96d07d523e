import json
import subprocess
import sys

from orbistring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_group_json(capsys):
    code, out, err = run(capsys, "group", "--group", "S3")
    assert code == 0
    blob = json.loads(out)
    assert blob["order"] == 6


def test_unknown_group_is_domain_error(capsys):
    code, out, err = run(capsys, "group", "--group", "nope")
    assert code == 1
    assert json.loads(err)["kind"] == "GroupError"


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2


def test_unreadable_input_is_usage_error(capsys, tmp_path):
    code, out, err = run(capsys, "validate", "--diagram", str(tmp_path / "missing.json"))
    assert code == 2
    assert json.loads(err)["kind"] == "usage"


def test_dw_formats(capsys):
    code, out, _ = run(capsys, "dw", "--group", "Z3", "--format", "table")
    assert code == 0 and "coeff" in out
    code, out, _ = run(capsys, "dw", "--group", "Z3", "--format", "markdown")
    assert code == 0 and out.startswith("###")


def test_torsion_roundtrip(capsys):
    code, out, _ = run(capsys, "torsion", "--group", "Z2xZ2", "--cocycle", "nontrivial")
    assert code == 0
    blob = json.loads(out)
    assert blob["denominator"] == 2
    assert blob["num"][2][1] == 1  # tau((1,0),(0,1)) = -1


def test_twisted_center_cli(capsys):
    code, out, _ = run(capsys, "twisted-center", "--group", "Z2xZ2", "--cocycle", "nontrivial")
    assert code == 0
    assert json.loads(out)["dim"] == 1


def test_validate_compute_serialize_reparse(capsys):
    diagram = json.dumps({"n": 2, "chords": [[1, 4, 3, 4]], "marks": [[1, 2], [0, 1]]})
    code, out, _ = run(capsys, "validate", "--diagram", diagram)
    assert code == 0
    canonical = json.loads(out)
    code, out2, _ = run(capsys, "validate", "--diagram", json.dumps(canonical))
    assert code == 0
    assert json.loads(out2) == canonical


def test_crossing_diagram_domain_error(capsys):
    diagram = json.dumps(
        {"n": 3, "chords": [[1, 10, 4, 10], [2, 10, 6, 10]], "marks": [[0, 1], [15, 100], [3, 10]]}
    )
    code, out, err = run(capsys, "validate", "--diagram", diagram)
    assert code == 1
    blob = json.loads(err)
    assert blob["kind"] == "DiagramError" and "cross" in blob["error"]


def test_compose_and_cactus_cli(capsys, tmp_path):
    base = tmp_path / "base.json"
    base.write_text(json.dumps({"n": 2, "chords": [[1, 4, 3, 4]], "marks": [[1, 2], [0, 1]]}))
    e = tmp_path / "e.json"
    e.write_text(json.dumps({"n": 1, "chords": [], "marks": [[0, 1]]}))
    code, out, _ = run(capsys, "compose", "--base", f"@{base}", "--parts", f"@{e}", f"@{e}")
    assert code == 0
    assert json.loads(out)["chords"] == [[1, 4, 3, 4]]
    code, out, _ = run(capsys, "cactus", "--diagram", f"@{base}")
    assert code == 0
    cac = tmp_path / "cac.json"
    cac.write_text(out)
    code, out2, _ = run(capsys, "uncactus", "--cactus", f"@{cac}")
    assert code == 0
    assert json.loads(out2)["chords"] == [[1, 4, 3, 4]]


def test_gcompose_mismatch_exit_code(capsys, tmp_path):
    w = tmp_path / "w.json"
    w.write_text(
        json.dumps(
            {
                "n": 2,
                "chords": [[1, 4, 3, 4]],
                "marks": [[1, 2], [0, 1]],
                "group": "Z2",
                "outer": 1,
                "delta": [0],
                "lifts": [0, 0],
            }
        )
    )
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps({"n": 1, "chords": [], "marks": [[0, 1]], "group": "Z2", "outer": 0, "delta": [], "lifts": [0]})
    )
    ihc = main(["ih", "--gdiagram", f"@{w}"])
    captured = capsys.readouterr()
    ih = json.loads(captured.out)["inner"]
    parts = []
    for h in ih:
        p = tmp_path / f"p{h}_{len(parts)}.json"
        p.write_text(
            json.dumps({"n": 1, "chords": [], "marks": [[0, 1]], "group": "Z2", "outer": h, "delta": [], "lifts": [0]})
        )
        parts.append(f"@{p}")
    code, out, err = run(capsys, "gcompose", "--base", f"@{w}", "--parts", *parts)
    assert code == 0
    # now break the first slot
    code, out, err = run(capsys, "gcompose", "--base", f"@{w}", "--parts", f"@{bad}", parts[1])
    if ih[0] == 0:
        assert code == 0  # the "bad" part happened to match
    else:
        assert code == 1
        blob = json.loads(err)
        assert blob["slot"] == 1


def test_enumerate_cli(capsys):
    diagram = json.dumps({"n": 1, "chords": [], "marks": [[0, 1]]})
    code, out, _ = run(
        capsys, "enumerate", "--diagram", diagram, "--group", "S3", "--outer", "(1,3,2)", "--inner", "(1,2,3)"
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["count"] == 3  # lifts conjugating (1,3,2) to (1,2,3): one centralizer coset
    code, out, _ = run(
        capsys, "enumerate", "--diagram", diagram, "--group", "S3", "--outer", "(1,3,2)", "--inner", "(1,2)"
    )
    assert json.loads(out)["count"] == 0  # a transposition is not conjugate to a 3-cycle
    code, out, _ = run(
        capsys, "enumerate", "--diagram", diagram, "--group", "S3", "--outer", "(1,3,2)"
    )
    assert json.loads(out)["count"] == 6


def test_ring_and_bvcheck_cli(capsys, tmp_path):
    code, out, _ = run(capsys, "ring", "--name", "lens", "--n", "3", "--p", "2", "--window=-3:3")
    assert code == 0
    blob = json.loads(out)
    assert {"monomial": "v", "degree": 0} in blob["basis"]
    code, out, _ = run(capsys, "bvcheck", "--name", "lens", "--n", "3", "--p", "2", "--window=-3:6")
    assert code == 0 and json.loads(out)["ok"]
    delta = tmp_path / "delta.json"
    basis = [b["monomial"] for b in blob["basis"]]
    delta.write_text(json.dumps({"entries": [[basis.index("a"), basis.index("1"), "1"]]}))
    code, out, _ = run(
        capsys, "bvcheck", "--name", "lens", "--n", "3", "--p", "2", "--window=-3:3", "--delta", f"@{delta}"
    )
    assert code == 0
    assert not json.loads(out)["ok"]


def test_morita_cli(capsys):
    code, out, _ = run(capsys, "morita", "--left", "coset:S3:Z3", "--right", "point:Z3")
    assert code == 0
    assert json.loads(out)["isomorphic"] is True


def test_string_ring_cli_point_vs_dw(capsys):
    code, out1, _ = run(capsys, "string-ring", "--gset", "point:S3")
    code2, out2, _ = run(capsys, "dw", "--group", "S3")
    r1, r2 = json.loads(out1), json.loads(out2)
    assert r1["structure"] == r2["structure"]


def test_entry_point_help():
    proc = subprocess.run(
        [sys.executable, "-m", "orbistring.cli", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "selftest" in proc.stdout


def test_byte_identical_reports_small():
    args = ["dw", "--group", "S4", "--format", "json"]
    p1 = subprocess.run([sys.executable, "-m", "orbistring.cli", *args], capture_output=True)
    p2 = subprocess.run([sys.executable, "-m", "orbistring.cli", *args], capture_output=True)
    assert p1.stdout == p2.stdout
