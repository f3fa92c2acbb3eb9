import json
import subprocess
import sys

import pytest

from plkernel import cli, complexes, families, nerve, suite


def run_cli(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_prism_r_counts(capsys):
    code, out, _ = run_cli(["prism-r", "1", "--counts"], capsys)
    assert code == 0
    assert out.strip() == "vertices=5 edges=7 triangles=3 chi=1"


def test_prism_r_counts_json(capsys):
    code, out, _ = run_cli(["prism-r", "1", "--counts", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["f_vector"] == [5, 7, 3]
    assert data["chi"] == 1


def test_homology_dset(tmp_path, capsys):
    from plkernel import delta

    x = complexes.delta_set_of(suite.torus_7())
    path = tmp_path / "torus.dset"
    delta.dump(x, path)
    code, out, _ = run_cli(["homology", str(path)], capsys)
    assert code == 0
    assert out.strip() == "H_0 = Z, H_1 = Z^2, H_2 = Z"


def test_validate_bad_complex_exit_2(tmp_path, capsys):
    from fractions import Fraction as F

    bad = complexes.EuclideanComplex.build(
        [(0, 1, 2), (1, 2, 3)],
        {0: (F(0), F(0)), 1: (F(2), F(0)), 2: (F(1), F(2)), 3: (F(1), F(-2))},
    )
    path = tmp_path / "bad.cplx"
    complexes.dump(bad, path)
    code, out, _ = run_cli(["validate", str(path)], capsys)
    assert code == 2
    assert "intersection not a common face" in out


def test_validate_good_complex(tmp_path, capsys):
    path = tmp_path / "t.cplx"
    complexes.dump(suite.torus_7(), path)
    code, out, _ = run_cli(["validate", str(path)], capsys)
    assert code == 0


def test_missing_file_exit_1(capsys):
    code, _, err = run_cli(["homology", "/nonexistent.dset"], capsys)
    assert code == 1
    assert "error" in err


def test_unknown_subcommand_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1


def test_bad_rational_rejected(tmp_path, capsys):
    path = tmp_path / "w.fam"
    families.dump(suite.lift_fixtures()[3], path)
    code, _, err = run_cli(["slice", str(path), "0.5"], capsys)
    assert code == 1
    assert "bad rational" in err


def test_subdivide_roundtrip(tmp_path, capsys):
    src = tmp_path / "t.cplx"
    out = tmp_path / "sd.cplx"
    complexes.dump(suite.circle_3(), src)
    code, _, _ = run_cli(["subdivide", str(src), "-o", str(out)], capsys)
    assert code == 0
    sd = complexes.load(out)
    assert sd.f_vector() == (6, 6)


def test_slice_and_pullback(tmp_path, capsys):
    fam = tmp_path / "w.fam"
    families.dump(suite.lift_fixtures()[3], fam)
    code, out, _ = run_cli(["slice", str(fam), "1/3"], capsys)
    assert code == 0
    assert out.startswith("complex")

    src = tmp_path / "seg.cplx"
    seg = families.standard_simplex_complex(1)
    complexes.dump(seg, src)
    amap = tmp_path / "f.amap"
    lines = ["amap f"] + [
        "v %d %s" % (v, " ".join(complexes.format_rational(c) for c in seg.coords[v]))
        for v in sorted(seg.coords)
    ]
    amap.write_text("\n".join(lines) + "\n")
    outp = tmp_path / "pb.fam"
    code, _, _ = run_cli(
        ["pullback", str(fam), str(src), str(amap), "-o", str(outp)], capsys
    )
    assert code == 0
    back = families.load(outp)
    assert families.check_family(back).ok


def test_nerve_requires_allow_partial_for_demo(tmp_path, capsys):
    path = tmp_path / "cob.cat"
    nerve.dump(nerve.demo_cobordism_category(), path)
    code, _, err = run_cli(["nerve", str(path)], capsys)
    assert code == 1
    code, out, _ = run_cli(["nerve", str(path), "--allow-partial", "--max-degree", "2"], capsys)
    assert code == 0
    assert "(2, 23, 169)" in out


def test_export_off(tmp_path, capsys):
    path = tmp_path / "t.cplx"
    complexes.dump(suite.boundary_tetrahedron(), path)
    code, out, _ = run_cli(["export-off", str(path)], capsys)
    assert code == 0
    assert out.splitlines()[0] in ("OFF", "nOFF")


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "plkernel.cli", "prism-k", "2", "--counts"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "chi=1" in proc.stdout
