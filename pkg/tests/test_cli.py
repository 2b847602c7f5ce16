import json
import subprocess
import sys

import pytest

from singkit.cases import run_case
from singkit.catalog import load_example
from singkit.cli import main
from singkit.errors import PolynomialSyntaxError, UnknownCase
from singkit.numbers import NumberField, mpq
from singkit.parser import format_ideal_file, format_map_file, read_ideal_text, read_map_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# file formats -------------------------------------------------------------------

def test_ideal_file_with_extension():
    f = read_ideal_text("vars: s1,s2\nminpoly: theta^2 + 1386/6089\ns1^2 - theta*s2\n")
    K = f.ring.field
    assert isinstance(K, NumberField) and K.minpoly == (mpq(1386, 6089), 0, 1)
    assert len(f.ideal.gens) == 1


def test_empty_ideal_file():
    f = read_ideal_text("vars: x,y\n")
    assert len(f.ideal.gens) == 0


def test_undeclared_variable_position():
    with pytest.raises(PolynomialSyntaxError) as err:
        read_ideal_text("vars: x,y\nx^2\nx + w\n")
    assert err.value.line == 3


def test_ideal_and_map_round_trip():
    ex = load_example("w12")
    text = format_ideal_file(ex.stratum)
    again = read_ideal_text(text).ideal
    assert [str(g) for g in again.gens] == [str(g) for g in ex.stratum.gens]
    mf = read_map_text(format_map_file(ex.map))
    assert [str(mf.images[s]) for s in mf.source] == [str(p) for p in ex.map.images]


# commands -----------------------------------------------------------------------

def test_milnor_and_tjurina(capsys):
    code, out, _ = run(capsys, "milnor", "x^4+y^5+x^2*y^3")
    assert code == 0 and "milnor: 12" in out
    code, out, _ = run(capsys, "tjurina", "--json", "x^4+y^5+x^2*y^3")
    assert code == 0 and json.loads(out)["tjurina"] == 11
    code, out, _ = run(capsys, "milnor", "y^3+z^3+x*y*z")
    assert "milnor: inf" in out


def test_tseries_command(capsys):
    code, out, _ = run(capsys, "tseries", "5", "4", "3")
    assert code == 0 and "milnor: 11" in out and "tjurina: 10" in out
    code, _, err = run(capsys, "tseries", "3", "3", "3", "--lambda", "-3")
    assert code == 2 and "degenerate" in err
    code, out, _ = run(capsys, "tseries", "3", "3", "3", "--lambda", "-3", "--allow-degenerate")
    assert code == 0 and "milnor: inf" in out


def test_file_commands(tmp_path, capsys):
    p = tmp_path / "i.txt"
    p.write_text("vars: x,y\n4*x^3+2*x*y^3\n5*y^4+3*x^2*y^2\n")
    code, out, _ = run(capsys, "kbase", str(p))
    assert code == 0 and "dimension: 12" in out
    code, out, _ = run(capsys, "stdbasis", "--json", str(p))
    assert json.loads(out)["order"] == "local"
    code, out, _ = run(capsys, "nf", "x^5", "--ideal", str(p))
    assert code == 0 and out.startswith("normal_form:")
    q = tmp_path / "e.txt"
    q.write_text("vars: s1,s2,s3\ns3 - s1^2\ns1^3\ns2^2\n")
    code, out, _ = run(capsys, "embed", str(q))
    assert out.splitlines()[0] == "vars: s1,s2"


def test_modular_ideal_command(capsys):
    code, out, _ = run(capsys, "modular-ideal", "4", "4", "4", "--reduced")
    assert code == 0
    assert out.splitlines() == ["vars: t1,u1,v1", "order: local", "u1*v1", "t1*v1", "t1*u1"]


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "W12:" in out
    code, out, _ = run(capsys, "catalog", "show", "Z11", "--json")
    assert json.loads(out)["name"] == "Z11"
    code, _, err = run(capsys, "catalog", "show", "X9")
    assert code == 2


def test_iso_commands(tmp_path, capsys):
    ex = load_example("w12")
    src, tgt, mp = tmp_path / "a.txt", tmp_path / "b.txt", tmp_path / "m.txt"
    src.write_text(format_ideal_file(ex.stratum))
    from singkit.polynomial import jacobian_ideal
    tgt.write_text(format_ideal_file(jacobian_ideal(ex.polynomial)))
    mp.write_text(format_map_file(ex.map))
    code, out, _ = run(capsys, "verify-iso", "--map", str(mp), "--source", str(src), "--target", str(tgt))
    assert code == 0 and "verdict: isomorphism" in out
    shape = tmp_path / "shape.json"
    shape.write_text(json.dumps({k: [list(m) for m in v] for k, v in ex.shape.items()}))
    code, out, _ = run(capsys, "find-iso", "--source", str(src), "--target", str(tgt),
                       "--shape", str(shape))
    assert code == 0 and "verdict: isomorphism" in out and "minpoly:" in out


def test_verify_paper_exit_codes(capsys):
    code, out, _ = run(capsys, "verify-paper", "tseries:5,4,3")
    assert code == 0 and out.startswith("case tseries:5,4,3: PASS")
    code, _, err = run(capsys, "verify-paper", "nosuch")
    assert code == 2 and "unknown case" in err
    with pytest.raises(UnknownCase):
        run_case("tseries")


def test_case_report_contents():
    rep = run_case("tseries:5,4,3")
    assert rep.invariants["mu"] == 11 and rep.invariants["tau"] == 10
    assert rep.invariants["dim O/I"] == 11 and rep.passed
    rep = run_case("w12")
    assert rep.invariants["dim O_M"] == 12 == rep.invariants["mu"] and rep.passed


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "singkit.cli", *argv], capture_output=True)


@pytest.mark.parametrize("argv", [("verify-paper", "w12"), ("verify-paper", "z11", "--json"),
                                  ("modular-ideal", "5", "4", "3")])
def test_reports_are_byte_identical(argv):
    a, b = _cli(*argv), _cli(*argv)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
