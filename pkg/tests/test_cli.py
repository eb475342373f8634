import os

import pytest

from latclif.cli import main
from latclif.coeffs import ExactPolynomial
from latclif.formfile import parse_form, write_form
from latclif.forms import Form
from latclif.opexpr import ExprError, parse_expression
from latclif.scalars import Scalar


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def x_squared_file(tmp_path, n=1, h=1):
    x = ExactPolynomial.coordinate(n, h, 1)
    path = tmp_path / "xsq.form"
    write_form(Form.scalar(x.mul(x)), path)
    return str(path)


def test_verify_core(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "core", "--n", "2", "--h", "1/2")
    assert code == 0
    assert "CHECK core.product-rule PASS" in out


def test_verify_rejects_small_torus(capsys):
    code, _, err = run(capsys, "verify", "--suite", "universal", "--n", "1", "--N", "2")
    assert code == 2
    assert "N must be at least 3" in err


def test_verify_rejects_bad_n(capsys):
    code, _, err = run(capsys, "verify", "--suite", "core", "--n", "0")
    assert code == 2


def test_oracle_all_pass(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "1", "--N", "4")
    assert code == 0
    assert "CHECK reduction.adjacency-square-zero PASS" in out
    assert "CHECK reduction.derivative-graded-bracket PASS" in out
    assert "CHECK universal.inner-commutator PASS" in out
    assert "FAIL" not in out


def test_verify_intertwine_lines(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "intertwine", "--n", "1")
    assert code == 0
    assert "RELATION acomm(z,dz)=beta+Ez CONVENTION minus PASS" in out
    assert "RELATION acomm(z,dz)=beta+Ez CONVENTION plus FAIL" in out
    assert "CHECK dirac.convention-unique PASS" in out


def test_verify_dirac_reports_known_failures(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "dirac", "--n", "1")
    assert code == 1
    assert "CHECK dirac.laplacian-hermitian PASS" in out
    assert "CHECK dirac.square-variable-value FAIL" in out
    assert "CHECK dirac.vector-anticommutator-value FAIL" in out


def test_report_independent_of_parallelism(capsys):
    code1, out1, _ = run(capsys, "verify", "--suite", "endo", "--n", "1", "--jobs", "1")
    code2, out2, _ = run(capsys, "verify", "--suite", "endo", "--n", "1", "--jobs", "4")
    assert code1 == code2 == 0
    assert out1 == out2


def test_env_thread_override(capsys, monkeypatch):
    monkeypatch.setenv("LATCLIF_THREADS", "3")
    code, out, _ = run(capsys, "verify", "--suite", "poly", "--n", "1")
    assert code == 0


def test_apply_star_laplacian(capsys, tmp_path):
    path = x_squared_file(tmp_path)
    code, out, _ = run(capsys, "apply", "compose(dX,dX)", path)
    assert code == 0
    assert "VALIDITY unchanged (polynomial coefficients)" in out
    body = out[out.index("latclif-form"):]
    assert parse_form(body) == Form.scalar(
        ExactPolynomial.constant(1, 1, Scalar(-2))
    )


def test_apply_duality_identity(capsys, tmp_path):
    path = x_squared_file(tmp_path)
    code, out, _ = run(capsys, "apply", "acomm(gamma(+,1),vartheta(+,1))", path)
    assert code == 0
    body = out[out.index("latclif-form"):]
    x = ExactPolynomial.coordinate(1, 1, 1)
    assert parse_form(body) == Form.scalar(x.mul(x))


def test_apply_euler_on_rising_factorial(capsys, tmp_path):
    from latclif.polynomials import factorial_power

    fp = factorial_power(1, 1, 1, (2,))
    path = tmp_path / "rising2.form"
    write_form(Form.scalar(fp.poly), path)
    code, out, _ = run(capsys, "apply", "Ez", str(path))
    assert code == 0
    body = out[out.index("latclif-form"):]
    assert parse_form(body) == Form.scalar(fp.poly.scale(Scalar(2)))


def test_apply_parse_error(capsys, tmp_path):
    path = x_squared_file(tmp_path)
    code, _, err = run(capsys, "apply", "nonsense(+,1)", path)
    assert code == 2


def test_apply_box_margin_error(capsys, tmp_path):
    from latclif.coeffs import cube

    x = ExactPolynomial.coordinate(1, 1, 1)
    small = Form.scalar(x.sample(cube(1, 0, 1)))
    path = tmp_path / "small.form"
    write_form(small, path)
    code, _, err = run(capsys, "apply", "compose(D(+,1),D(+,1),D(+,1))", str(path))
    assert code == 3


def test_apply_box_validity_report(capsys, tmp_path):
    from latclif.coeffs import cube

    x = ExactPolynomial.coordinate(1, 1, 1)
    form = Form.scalar(x.mul(x).sample(cube(1, -3, 3)))
    path = tmp_path / "box.form"
    write_form(form, path)
    code, out, _ = run(capsys, "apply", "D(+,1)", str(path))
    assert code == 0
    assert "VALIDITY -3:3 -> -3:2" in out


def test_expression_parser_families():
    op = parse_expression("comm(Ez,beta)", 2)
    assert op is not None
    with pytest.raises(ExprError):
        parse_expression("gamma(+,5)", 2)
    with pytest.raises(ExprError):
        parse_expression("scale(1/2)", 2)


def test_monogenic_command(capsys):
    code, out, _ = run(capsys, "monogenic", "--n", "1", "--p", "0", "--q", "0")
    assert code == 0
    assert "DIM 0 0 4" in out
    assert "CHECK monogenic.certificates PASS" in out
    assert out.count("latclif-form 1") == 4


def test_monogenic_writes_files(capsys, tmp_path):
    prefix = str(tmp_path / "basis")
    code, out, _ = run(
        capsys, "monogenic", "--n", "1", "--p", "0", "--q", "0", "--out", prefix
    )
    assert code == 0
    assert os.path.exists(prefix + "-0.form")
    assert os.path.exists(prefix + "-3.form")


def test_roundtrip_command(capsys, tmp_path):
    path = x_squared_file(tmp_path)
    code, out, _ = run(capsys, "roundtrip", path)
    assert code == 0
    assert "CHECK roundtrip.idempotent PASS" in out
    assert "CHECK roundtrip.canonical-input PASS" in out


def test_roundtrip_rejects_garbage(capsys, tmp_path):
    path = tmp_path / "bad.form"
    path.write_text("not a form\n")
    code, _, err = run(capsys, "roundtrip", str(path))
    assert code == 2
