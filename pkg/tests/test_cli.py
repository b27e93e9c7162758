"""End-to-end checks of the command-line interface, driven through
``cli.main`` so exit codes and output are observed exactly as a shell
would see them."""

import csv
import io
import json

import pytest

from bellhop import cli


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# bell / stirling


def test_bell_table(capsys):
    code, out, _ = run(["bell", "6"], capsys)
    assert code == 0
    values = [line.split()[1] for line in out.strip().splitlines()[1:]]
    assert values == ["1", "1", "2", "5", "15", "52", "203"]


def test_bell_triangle_row(capsys):
    code, out, _ = run(["bell", "4", "--triangle"], capsys)
    assert code == 0
    last = out.strip().splitlines()[-1].split()
    assert last[0] == "4"
    assert last[2:] == ["0", "1", "7", "6", "1"]


def test_bell_json_format(capsys):
    code, out, _ = run(["--format", "json", "bell", "3"], capsys)
    assert code == 0
    rows = json.loads(out)
    assert rows[-1] == {"n": 3, "bell": 5}


def test_bell_csv_format(capsys):
    code, out, _ = run(["--format", "csv", "bell", "2"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows == [{"n": "0", "bell": "1"}, {"n": "1", "bell": "1"}, {"n": "2", "bell": "2"}]


def test_stirling_single(capsys):
    code, out, _ = run(["--format", "json", "stirling", "5", "3"], capsys)
    assert code == 0
    assert json.loads(out)[0]["stirling2"] == 25


# ---------------------------------------------------------------------------
# normal ordering


def test_normal_order_basic(capsys):
    code, out, _ = run(["normal-order", "a ad"], capsys)
    assert code == 0
    assert out.strip() == "ad a + 1"


def test_normal_order_number_operator_square(capsys):
    code, out, _ = run(["normal-order", "(ad a)^2"], capsys)
    assert code == 0
    assert out.strip() == "ad^2 a^2 + ad a"


def test_normal_order_parse_error_exit_2(capsys):
    code, out, err = run(["normal-order", "a +"], capsys)
    assert code == 2
    assert "parse error" in err


def test_normal_order_resource_limit_exit_3(capsys):
    code, _, err = run(["normal-order", "(ad a)^40"], capsys)
    assert code == 3
    assert "resource limit" in err


# ---------------------------------------------------------------------------
# dobinski / egf / wv / diagrams


def test_dobinski_bell_number(capsys):
    code, out, _ = run(["--format", "json", "dobinski", "5"], capsys)
    assert code == 0
    row = json.loads(out)[0]
    assert abs(float(row["value"]) - 52) < 1e-12
    assert float(row["tail_bound"]) < 1e-20


def test_dobinski_polynomial_argument(capsys):
    code, out, _ = run(["--format", "json", "dobinski", "3", "--y", "1/2"], capsys)
    assert code == 0
    row = json.loads(out)[0]
    # B_3(y) = y + 3y^2 + y^3 at y = 1/2 is 11/8
    assert abs(float(row["value"]) - 11 / 8) < 1e-12


def test_egf_bell(capsys):
    code, out, _ = run(["egf", "bell", "--order", "6"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["coefficients"] == ["1", "1", "2", "5", "15", "52", "203"]


def test_egf_exp_of_x(capsys):
    code, out, _ = run(["egf", "exp", "0", "1", "0", "0"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["coefficients"] == ["1", "1", "1", "1"]


def test_egf_exp_rejects_nonzero_constant(capsys):
    code, _, err = run(["egf", "exp", "1", "1"], capsys)
    assert code == 2
    assert "error" in err


def test_wv_roundtrip(capsys):
    code, out, _ = run(["wv", "w-to-v", "1", "1", "2", "5", "15"], capsys)
    assert code == 0
    v = out.split()
    code, out, _ = run(["wv", "v-to-w"] + v, capsys)
    assert code == 0
    assert out.split() == ["1", "1", "2", "5", "15"]


def test_diagrams_n3(capsys):
    code, out, _ = run(["--format", "json", "diagrams", "3"], capsys)
    assert code == 0
    rows = {r["monomial"]: r["multiplicity"] for r in json.loads(out)}
    assert rows == {"y3": 1, "y1*y2": 3, "y1^3": 1}


def test_diagrams_resource_limit(capsys):
    code, _, err = run(["diagrams", "30"], capsys)
    assert code == 3
    assert "resource limit" in err


# ---------------------------------------------------------------------------
# partition function


def test_partition_function_table(capsys):
    code, out, _ = run(
        ["--format", "json", "partition-function", "--beta-eps", "0.6931471805599453",
         "--cutoff", "45.0"],
        capsys,
    )
    assert code == 0
    rows = json.loads(out)
    methods = [r["method"] for r in rows]
    assert methods == ["closed_form", "regularized_analytic", "regularized_series"]
    assert abs(float(rows[0]["value"]) - 2.0) < 1e-12
    for r in rows[1:]:
        assert float(r["abs_error_vs_closed_form"]) < 1e-6


def test_partition_function_divergence(capsys):
    code, out, _ = run(
        ["--format", "json", "partition-function", "--beta-eps", "1.0", "--divergence", "3"],
        capsys,
    )
    assert code == 0
    rows = json.loads(out)
    values = [abs(float(r["value"])) for r in rows]
    assert values == sorted(values)
    assert values[-1] > 1e10


def test_partition_function_combinatorial_small_cutoff(capsys):
    code, out, _ = run(
        ["--format", "json", "partition-function", "--beta-eps", "1.0",
         "--cutoff", "4.0", "--order", "60", "--combinatorial"],
        capsys,
    )
    assert code == 0
    rows = json.loads(out)
    comb = next(r for r in rows if r["method"] == "combinatorial")
    reg = next(r for r in rows if r["method"] == "regularized_analytic")
    assert abs(float(comb["value"]) - float(reg["value"])) < 1e-8


# ---------------------------------------------------------------------------
# hopf-verify


def test_hopf_verify_ok(capsys):
    code, out, _ = run(["hopf-verify", "--max-weight", "4"], capsys)
    assert code == 0
    assert "all axioms pass" in out
    assert "antipode" in out


def test_hopf_verify_corrupted_antipode_exit_1(capsys):
    code, out, _ = run(["hopf-verify", "--max-weight", "4", "--corrupt-antipode"], capsys)
    assert code == 1
    assert "all axioms pass" not in out


# ---------------------------------------------------------------------------
# plumbing


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "bell.json"
    code, out, _ = run(["--format", "json", "--out", str(target), "bell", "3"], capsys)
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())[-1]["bell"] == 5


def test_determinism_byte_identical(capsys):
    argvs = [
        ["--format", "json", "bell", "8", "--triangle"],
        ["--format", "csv", "diagrams", "5"],
        ["hopf-verify", "--max-weight", "4"],
        ["--format", "json", "partition-function", "--beta-eps", "0.5", "--method", "gauss"],
    ]
    for argv in argvs:
        _, first, _ = run(argv, capsys)
        _, second, _ = run(argv, capsys)
        assert first == second
