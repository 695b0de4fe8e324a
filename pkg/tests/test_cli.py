import json

import pytest

from phaseatlas.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_region_3h(capsys):
    code, out, _ = run(
        capsys, "analyze", "--system", "cdk", "--a", "7/10", "--b", "1/2", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["region"] == "3h"
    labels = {p.get("label") for p in doc["equilibria"]}
    assert labels == {"s1", "s2"}
    kinds = [s["kind"] for s in doc["origin_sectors"]["sectors"]]
    assert kinds.count("elliptic") == 2
    assert doc["origin_sectors"]["index"] == 2


def test_index_prints_two(capsys):
    code, out, _ = run(
        capsys,
        "index",
        "--system", "cdk", "--a", "1/2", "--b", "1/2",
        "--center", "0,0", "--radius", "0.1",
    )
    assert code == 0
    assert out.strip() == "2"


def test_missing_parameter_binding_exits_2(capsys):
    code, _, err = run(capsys, "analyze", "--system", "cdk", "--a", "1/2")
    assert code == 2
    assert "--b" in err or "b" in err


def test_index_through_equilibrium_exits_3(capsys):
    code, _, err = run(
        capsys,
        "index",
        "--system", "cdk", "--a", "5/2", "--b", "1/2",
        "--center", "0,0", "--radius", "1.0",
    )
    assert code == 3
    assert "circle" in err


def test_region_subcommand(capsys):
    code, out, _ = run(capsys, "region", "--a", "0.5", "--b", "1.9")
    assert code == 0
    doc = json.loads(out)
    assert doc["region"] == "2b"
    assert doc["almost_attractors"] == ["s3", "s4"]


def test_region_rejects_nonpositive(capsys):
    code, _, err = run(capsys, "region", "--a", "0", "--b", "1")
    assert code == 3


def test_scan_and_region_map(tmp_path, capsys):
    map_path = tmp_path / "map.json"
    code, _, _ = run(
        capsys,
        "scan", "--a-range", "0:3", "--b-range", "0:3",
        "--resolution", "12", "-o", str(map_path),
    )
    assert code == 0
    doc = json.loads(map_path.read_text())
    assert len(doc["cells"]) == 12
    svg_path = tmp_path / "map.svg"
    code, _, _ = run(capsys, "portrait", "--scan-map", str(map_path), "-o", str(svg_path))
    assert code == 0
    assert svg_path.read_text().startswith("<?xml")


def test_portrait_output_file(tmp_path, capsys):
    out_path = tmp_path / "p.svg"
    code, _, _ = run(
        capsys, "portrait", "--system", "cdk", "--a", "1/2", "--b", "1/2", "-o", str(out_path)
    )
    assert code == 0
    data = out_path.read_text()
    assert data.startswith("<?xml") and data.rstrip().endswith("</svg>")


def test_spec_file_system(tmp_path, capsys):
    path = tmp_path / "sys.txt"
    path.write_text(
        "param a = 1/2\nparam b = 1/2\n"
        "x*y/(x^2+y^2) - a*x ; y^2/(x^2+y^2) - b*y + b - 1\n"
    )
    code, out, _ = run(capsys, "stationary", "--system", str(path), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["equilibria"]) == 2  # a = b < 1: only s1 and s2 (unlabeled here)


def test_bad_spec_file_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("ln(x) ; y\n")
    code, _, err = run(capsys, "stationary", "--system", str(path))
    assert code == 2
    assert "ln" in err


def test_missing_file_exits_2(capsys):
    code, _, _ = run(capsys, "stationary", "--system", "/nonexistent/path.txt")
    assert code == 2


def test_omega_with_dump(tmp_path, capsys):
    dump = tmp_path / "traj.csv"
    code, out, _ = run(
        capsys,
        "omega",
        "--system", "cdk", "--a", "5/2", "--b", "19/10",
        "--start", "0.1,0.9", "--dump", str(dump),
    )
    assert code == 0
    assert "equilibrium (0, 1)" in out or "equilibrium (0, 1)" in out.replace(".0", "")
    lines = dump.read_text().strip().splitlines()
    assert all(len(line.split(",")) == 3 for line in lines)


def test_blowup_subcommand(capsys):
    code, out, _ = run(capsys, "blowup", "--system", "cdk", "--a", "3/10", "--b", "1")
    assert code == 0
    assert "weights: (1, 2)" in out
    assert "chart +x" in out
    assert "index: 2" in out


def test_infinity_subcommand(capsys):
    code, out, _ = run(capsys, "infinity", "--system", "cdk", "--a", "1/2", "--b", "19/10")
    assert code == 0
    assert "divisor polynomial" in out
    assert "saddle" in out and "repelling_node" in out


def test_sprott_rejected_for_symbolic_commands(capsys):
    code, _, err = run(capsys, "blowup", "--system", "sprott")
    assert code == 3
    assert "sprott" in err


def test_analyze_deterministic_without_stamp(capsys):
    args = ["analyze", "--system", "cdk", "--a", "7/10", "--b", "1/2", "--format", "json"]
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_sprott_index_around_focus(capsys):
    code, out, _ = run(
        capsys,
        "index", "--system", "sprott",
        "--center", "0.567143,-0.567143", "--radius", "0.1",
    )
    assert code == 0
    assert out.strip() == "1"


def test_analyze_spec_file(tmp_path, capsys):
    path = tmp_path / "sys.txt"
    path.write_text("param c = 2\nx - c*x^3 ; -y\n")
    code, out, _ = run(capsys, "analyze", "--system", str(path), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    # saddle at the origin plus the pair (±1/sqrt(2), 0)
    assert len(doc["equilibria"]) == 3
    assert "region" not in doc
