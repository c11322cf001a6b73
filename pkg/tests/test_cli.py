import json
from pathlib import Path

import pytest

from gradedhom.cli import main

ALG = Path(__file__).resolve().parent.parent / "algebras"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gorenstein_on_the_exterior_polynomial_tensor(capsys, tmp_path):
    code, text, _ = run(capsys, "gorenstein", ALG / "ext2_poly2.alg", "--out", tmp_path / "r.json")
    assert code == 0
    assert text.rstrip().endswith("# exit 0")
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["schema"] == "gradedhom.report/1"
    assert rep["sections"]["gorenstein"]["verdict"] == "Verified"
    assert rep["sections"]["gorenstein"]["n"] == 2


def test_local_duality_on_the_polynomial_ring(capsys, tmp_path):
    code, text, _ = run(capsys, "verify-lcf", ALG / "poly2.alg", "simple(1)", "--out", tmp_path / "r.json")
    assert code == 0
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["verdicts"] == ["match"] * 3


def test_path_algebra_with_tiny_bounds_is_inconclusive(capsys):
    code, text, _ = run(capsys, "gorenstein", ALG / "path_a2.alg", "--dmax", "1")
    assert code == 2
    code, _, _ = run(capsys, "gorenstein", ALG / "path_a2.alg")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["resolve", "ext1.alg", "simple(2)"],
    ["resolve", "missing.alg", "simple(1)"],
    ["ext", "ext1.alg", "simple(1)"],
    ["frobnicate"],
    ["resolve", "ext1.alg", "simple(1)", "--hmax", "-1"],
    ["localcoh", "poly1.alg", "simple(1)", "--kmax", "99"],
])
def test_usage_and_input_errors_exit_three(capsys, argv):
    argv = [str(ALG / a) if a.endswith(".alg") else a for a in argv]
    code, _, _ = run(capsys, *argv)
    assert code == 3


def test_help_exits_zero(capsys):
    code, text, _ = run(capsys, "--help")
    assert code == 0 and "verify-all" in text


def test_check_reports_dimensions(capsys, tmp_path):
    code, text, _ = run(capsys, "check", ALG / "commutative_square.alg", "--out", tmp_path / "r.json")
    assert code == 0
    rep = json.loads((tmp_path / "r.json").read_text())
    dims = [c["value"] for c in rep["sections"]["algebra"]["dims"]]
    assert dims[:3] == [4, 4, 1]
    assert all(c["certified"] for c in rep["sections"]["algebra"]["dims"])


def test_resolve_prints_a_betti_table(capsys):
    code, text, _ = run(capsys, "resolve", ALG / "poly2.alg", "simple(1)", "--hmax", "3")
    assert code == 0
    lines = text.splitlines()
    header = lines.index("s/degree\t0\t1\t2")
    # Koszul complex of k[x, y]: one generator in each of degrees 0 and 2, two in degree 1
    assert lines[header + 1:header + 4] == ["0\t1\t.\t.", "1\t.\t2\t.", "2\t.\t.\t1"]


def test_ext_table_is_tab_delimited(capsys):
    code, text, _ = run(capsys, "ext", ALG / "ext2.alg", "simple(1)", "simple(1)", "--hmax", "2")
    assert code == 0
    rows = [l.split("\t") for l in text.splitlines() if l and not l.startswith("#")]
    assert rows[0][0] == "s/degree"
    assert all(len(r) == len(rows[0]) for r in rows)


def test_localcoh_writes_figures(capsys, tmp_path):
    figs = tmp_path / "figs"
    code, text, _ = run(capsys, "localcoh", ALG / "poly1.alg", "regular", "--kmax", "4", "--figures", figs)
    assert code == 0
    pngs = sorted(figs.glob("*.png"))
    assert pngs and all(p.read_bytes()[:4] == b"\x89PNG" for p in pngs)


def test_reports_and_figures_are_byte_identical(capsys, tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / str(k)
        run(capsys, "gorenstein", ALG / "kronecker_trivext.alg", "--out", d / "r.json", "--figures", d / "f")
        outs.append((d / "r.json").read_bytes())
        outs.append(b"".join(p.read_bytes() for p in sorted((d / "f").glob("*.png"))))
    assert outs[0] == outs[2] and outs[1] == outs[3]


def test_field_override(capsys, tmp_path):
    code, _, _ = run(capsys, "check", ALG / "ext1.alg", "--field", "rationals", "--out", tmp_path / "r.json")
    assert code == 0
    assert json.loads((tmp_path / "r.json").read_text())["sections"]["algebra"]["field"] == "rationals"


def test_verify_all_subset(capsys, tmp_path):
    code, text, _ = run(capsys, "verify-all", "--only", "8", "--out", tmp_path / "r.json")
    assert code == 0
    rep = json.loads((tmp_path / "r.json").read_text())
    assert [c["criterion"] for c in rep["sections"]["criteria"]] == [8]
    assert "seconds" not in rep["sections"]["criteria"][0]
    code, _, _ = run(capsys, "verify-all", "--only", "12")
    assert code == 3
