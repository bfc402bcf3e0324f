import pytest

from hilbchow.cli import main


@pytest.fixture
def commuting(tmp_path):
    p = tmp_path / "commuting.pres"
    p.write_text("field Q\ngens x1 x2\nrel x1*x2 - x2*x1\n")
    return str(p)


@pytest.fixture
def ptfile(tmp_path):
    # the (x^2, y) point: x nilpotent, y zero, marked vector e2
    p = tmp_path / "pt.point"
    p.write_text("point\nfield Q\nn 2\nmat 0 1; 0 0\nmat 0 0; 0 0\nvec 0 1\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rep_ideal_command(capsys, commuting):
    code, out, _ = run(capsys, "rep-ideal", "--presentation", commuting,
                       "--n", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "rep-ideal"
    gens = [ln for ln in lines if ln.startswith("gen ")]
    assert len(gens) == 4
    # printed in a fixed order; each is an entry of the generic commutator
    assert gens == sorted(gens, key=lambda ln: lines.index(ln))


def test_check_rep_command(capsys, commuting):
    code, out, _ = run(capsys, "check-rep", "--presentation", commuting,
                       "--point", "point|field Q|n 2|mat 1 0; 0 2|mat 3 0; 0 4")
    assert code == 0 and out == "is-representation true\n"
    code, out, _ = run(capsys, "check-rep", "--presentation", commuting,
                       "--point", "point|field Q|n 2|mat 0 1; 0 0|mat 0 0; 1 0")
    assert code == 0 and out == "is-representation false\n"


def test_cyclic_command_and_violation(capsys, commuting, ptfile):
    code, out, _ = run(capsys, "cyclic", "--presentation", commuting,
                       "--point", ptfile)
    assert code == 0
    assert out == "cyclic true\nspan-dim 2\n"
    code, _, err = run(capsys, "cyclic", "--presentation", commuting,
                       "--point", "point|field Q|n 2|mat 0 1; 0 0|mat 0 0; 0 0|vec 1 0")
    assert code == 3
    assert "dimension 1" in err


def test_triple_to_ideal_and_back(capsys, commuting, ptfile, tmp_path):
    code, out, _ = run(capsys, "triple-to-ideal", "--presentation", commuting,
                       "--point", ptfile)
    assert code == 0
    assert out.splitlines()[0] == "ideal-presentation"
    ideal_file = tmp_path / "ideal.txt"
    ideal_file.write_text(out)
    code2, out2, _ = run(capsys, "ideal-to-triple", "--presentation", commuting,
                         "--point", str(ideal_file))
    assert code2 == 0
    assert out2.splitlines()[0] == "point"


def test_equiv_command(capsys, commuting, ptfile):
    code, out, _ = run(capsys, "equiv", "--presentation", commuting,
                       "--point", ptfile, "--point", ptfile)
    assert code == 0
    assert out.splitlines()[0] == "equivalent"
    assert out.splitlines()[1] == "g 1 0; 0 1"
    other = "point|field Q|n 2|mat 0 2; 0 0|mat 0 0; 0 0|vec 0 1"
    code, out, _ = run(capsys, "equiv", "--presentation", commuting,
                       "--point", ptfile, "--point", other)
    assert code == 0


def test_stab_command(capsys, commuting, ptfile):
    code, out, _ = run(capsys, "stab", "--presentation", commuting,
                       "--point", ptfile)
    assert code == 0 and out == "stabilizer-trivial true\n"


def test_invariants_command(capsys, commuting, ptfile):
    code, out, _ = run(capsys, "invariants", "--presentation", commuting,
                       "--point", ptfile, "--max-len", "2")
    assert code == 0
    assert out.splitlines()[0] == "invariant-table"
    assert "tr x1 = 0" in out


def test_gamma_command(capsys):
    code, out, _ = run(capsys, "gamma", "--expr", "x1+x2", "--n", "2")
    assert code == 0
    assert out.splitlines()[0] == "symtensor"
    assert "term {x1, x2} = 1" in out


def test_dp_normalize_command(capsys):
    code, out, _ = run(capsys, "dp-normalize", "--expr", "x1^[1]*x1^[1]")
    assert code == 0
    assert "term (x1)^[2] = 2" in out
    code, out, _ = run(capsys, "dp-normalize", "--expr", "x1^[1]*x1^[1]",
                       "--field", "F2")
    assert code == 0
    assert "term" not in out  # 2 x^[2] vanishes over F_2


def test_law_coeffs_command(capsys, commuting, ptfile):
    code, out, _ = run(capsys, "law-coeffs", "--presentation", commuting,
                       "--point", ptfile, "--args", "1; x1")
    assert code == 0
    assert "coeff (2,0) = 1" in out


def test_hc_and_det_point_commands(capsys, commuting, ptfile):
    code, out, _ = run(capsys, "hc", "--presentation", commuting,
                       "--point", ptfile)
    assert code == 0
    assert "charpoly x1 = t^2" in out and "charpoly x2 = t^2" in out
    code2, out2, _ = run(capsys, "det-point", "--presentation", commuting,
                         "--point", ptfile)
    assert code2 == 0 and out2 == out
    # hc on a non-cyclic point: precondition exit
    bad = "point|field Q|n 2|mat 0 1; 0 0|mat 0 0; 0 0|vec 1 0"
    code3, _, err = run(capsys, "hc", "--presentation", commuting,
                        "--point", bad)
    assert code3 == 3


def test_cycle_command(capsys, commuting, ptfile):
    code, out, _ = run(capsys, "cycle", "--presentation", commuting,
                       "--point", ptfile)
    assert code == 0
    assert "point (0, 0) * 2" in out
    # split failure is a first-class result, not an error
    pres = "field Q|gens x1"
    comp = "point|field Q|n 2|mat 0 -1; 1 0"
    code2, out2, _ = run(capsys, "cycle", "--presentation", pres,
                         "--point", comp)
    assert code2 == 0
    assert out2.splitlines()[0] == "split-failure"
    assert "charpoly t^2 + 1" in out2


def test_cycle_rejects_non_commutative_presentation(capsys):
    pres = "field Q|gens x1 x2"
    pt = "point|field Q|n 1|mat 1|mat 2"
    code, _, err = run(capsys, "cycle", "--presentation", pres, "--point", pt)
    assert code == 3
    assert "commutative" in err


def test_enumerate_command(capsys):
    pres = "field F 2|gens x1"
    code, out, err = run(capsys, "enumerate", "--presentation", pres,
                         "--n", "2")
    assert code == 0
    assert "orbit-count 4" in out
    assert "elapsed-ms" not in out  # stdout is byte-stable
    assert "elapsed" in err
    code2, _, err2 = run(capsys, "enumerate", "--presentation", pres,
                         "--n", "2", "--budget", "3")
    assert code2 == 4
    code3, out3, _ = run(capsys, "enumerate", "--presentation", pres,
                         "--n", "2", "--workers", "2")
    assert code3 == 0 and out3 == out


def test_parse_error_exit_code(capsys, commuting):
    code, _, err = run(capsys, "check-rep", "--presentation", commuting,
                       "--point", "point|field Q|n 2|mat 0 1; 0")
    assert code == 2
    code2, _, _ = run(capsys, "rep-ideal", "--presentation", commuting)
    assert code2 == 2  # missing --n


def test_field_mismatch_is_precondition(capsys, commuting):
    code, _, _ = run(capsys, "check-rep", "--presentation", commuting,
                     "--point", "point|field F 2|n 2|mat 0 1; 0 0|mat 0 0; 0 0")
    assert code == 3
