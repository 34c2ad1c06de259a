"""Main test runner."""
import csv
import io
import json
import math

import pytest

from spin_chebyshev.cli import EXIT_PASS, EXIT_TOLERANCE, EXIT_USAGE, main
from spin_chebyshev.exceptions import DomainError, ToleranceError
from spin_chebyshev.render import OutputRecord, format_value
from spin_chebyshev.verify.abc_suite import IdentitySuite
from spin_chebyshev.verify.runner import VerificationRunner, build_suites
from spin_chebyshev.verify.suites import SUITES, RecouplingSuite


class Constant(IdentitySuite):
    """Custom suite recording fixed residuals."""

    NAME = "constant"

    def _run(self, rng):
        """Record one residual below and one at the tolerance."""
        self.record("small", 1e-14, 1e-12)
        self.record("edge", 1e-12, 1e-12)


def _rows(text):
    """Parse CSV output, skipping comment lines."""
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.reader(io.StringIO("\n".join(lines))))


def _comments(text):
    """Return the '# key=value' lines as a dict."""
    lines = [line for line in text.splitlines() if line.startswith("#")]
    pairs = [line[2:].split("=", 1) for line in lines]
    return dict(pairs)


def test_custom_suite():
    """Test the abstract suite with a custom subclass."""
    suite = Constant()
    results = suite.run()
    assert set(results) == {"small", "edge"}
    assert suite.passed
    suite.check("edge")
    perturbed = Constant(perturb=1e-3)
    perturbed.run()
    assert not perturbed.passed
    with pytest.raises(ToleranceError):
        perturbed.check("small")


def test_suite_profiles():
    """Test that profiles scale tolerances and --tol replaces them."""
    strict = Constant.from_predefined_config("strict")
    strict.run()
    assert not strict.saved_results["edge"].passed
    loose = Constant.from_predefined_config("loose")
    assert loose.tolerance_for(1e-12) == pytest.approx(1e-10)
    assert Constant(tol=0.5).tolerance_for(1e-12) == 0.5
    with pytest.raises(DomainError):
        Constant.from_predefined_config("sloppy")
    with pytest.raises(TypeError):
        IdentitySuite()


def test_build_suites():
    """Test suite selection by name."""
    assert [s.name for s in build_suites(["all"])] == list(SUITES)
    assert [s.name for s in build_suites(["recoupling", "traces"])] == [
        "recoupling",
        "traces",
    ]
    with pytest.raises(DomainError):
        build_suites(["nope"])


def test_runner():
    """Test the runner over a passing and a failing suite."""
    runner = VerificationRunner(
        [Constant(), Constant(name="shifted", perturb=1.0)], progress=False
    )
    assert not runner.run()
    assert runner.failures() == ["shifted/small", "shifted/edge"]
    rows = list(runner)
    assert len(rows) == 4
    assert rows[0] == ("constant", "small", 1e-14, 1e-12, 1, True)
    assert "FAIL" in str(runner)
    with pytest.raises(DomainError):
        VerificationRunner([Constant(), Constant()])


def test_recoupling_suite_is_seeded():
    """Test that two runs with one seed record identical residuals."""
    first = RecouplingSuite(n_directions=3)
    second = RecouplingSuite(n_directions=3)
    assert first.run().keys() == second.run().keys()
    for name, check in first.saved_results.items():
        assert check.trials == second.saved_results[name].trials
    assert first.passed


def test_format_value():
    """Test the fixed textual form of scalars."""
    assert format_value(True) == "true"
    assert format_value(3) == "3"
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value("3/2") == "3/2"


def test_output_record():
    """Test row length checks and unknown formats."""
    record = OutputRecord(command="x", columns=["a", "b"])
    with pytest.raises(ValueError):
        record.add_row(1)
    record.add_row(1, 2.5)
    assert "a,b\n1,2.5\n" in record.to_csv()
    with pytest.raises(ValueError):
        record.render("xml")


def test_cheb_table_json(capsys):
    """Test the j=1 table as JSON."""
    assert main(["cheb-table", "--j", "1", "--format", "json"]) == EXIT_PASS
    document = json.loads(capsys.readouterr().out)
    assert document["command"] == "cheb-table"
    assert document["columns"] == ["lam", "m", "value"]
    assert len(document["rows"]) == 9
    values = {(row[0], row[1]): float(row[2]) for row in document["rows"]}
    assert values[("2", "0")] == pytest.approx(-2 / math.sqrt(6), abs=1e-15)
    assert values[("1", "-1")] == pytest.approx(-1 / math.sqrt(2), abs=1e-15)
    assert float(document["summary"]["orthonormality_residual"]) < 1e-11


def test_cheb_table_csv_half_integer(capsys):
    """Test CSV output with comment header and summary lines."""
    assert main(["cheb-table", "--j", "3/2"]) == EXIT_PASS
    out = capsys.readouterr().out
    rows = _rows(out)
    assert rows[0] == ["lam", "m", "value"]
    assert len(rows) == 1 + 16
    comments = _comments(out)
    assert comments["command"] == "cheb-table"
    assert comments["j"] == "3/2"
    assert "parity_residual" in comments


def test_cheb_table_large_spin(capsys):
    """Test that the 2j = 40 table passes its orthonormality check."""
    assert main(["cheb-table", "--j", "20", "--format", "json"]) == EXIT_PASS
    document = json.loads(capsys.readouterr().out)
    assert len(document["rows"]) == 41 * 41
    assert float(document["summary"]["orthonormality_residual"]) < 1e-11


def test_output_is_deterministic(capsys):
    """Test that repeated runs write identical bytes."""
    argv = ["transition", "--j", "2", "--m", "1", "--mp", "-1", "--beta", "1.1"]
    main(argv + ["--curve", "7"])
    first = capsys.readouterr().out
    main(argv + ["--curve", "7"])
    assert capsys.readouterr().out == first


def test_transition_flip_curve(capsys):
    """Test the extreme flip against its closed form in degrees."""
    # negative half-integers need the = form so argparse does not read an option
    argv = ["transition", "--j", "3/2", "--m", "3/2", "--mp=-3/2"]
    argv += ["--beta", "180", "--degrees", "--curve", "5", "--format", "json"]
    code = main(argv)
    assert code == EXIT_PASS
    document = json.loads(capsys.readouterr().out)
    assert document["columns"] == ["beta", "probability", "closed_form", "deviation"]
    assert len(document["rows"]) == 5
    assert float(document["rows"][-1][1]) == pytest.approx(1.0, abs=1e-12)
    assert float(document["summary"]["max_deviation"]) < 1e-11


def test_transition_drive(capsys):
    """Test a resonant drive sampled in time."""
    argv = ["transition", "--j", "1", "--m", "1", "--mp", "-1"]
    argv += ["--omega1", "1.0", "--detuning", "0.0", "--t", str(math.pi)]
    assert main(argv + ["--curve", "3"]) == EXIT_PASS
    rows = _rows(capsys.readouterr().out)
    assert rows[0][0] == "t"
    assert float(rows[-1][1]) == pytest.approx(1.0, abs=1e-12)
    assert float(rows[2][1]) == pytest.approx(0.25, abs=1e-12)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["cheb-table"],
        ["cheb-table", "--j", "1/3"],
        ["cheb-table", "--j", "-1"],
        ["transition", "--j", "1", "--m", "1", "--mp", "-1"],
        ["transition", "--j", "1", "--m", "1/2", "--mp", "-1", "--beta", "1"],
        ["transition", "--j=1", "--m=1", "--mp=0", "--beta=1", "--curve=0"],
        ["verify", "--suite", "nope"],
        ["tomography-demo", "--j", "1", "--grid", "sparse"],
    ],
)
def test_usage_errors(argv, capsys):
    """Test that malformed input exits with code 2."""
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_help_exits_cleanly(capsys):
    """Test that --help is not an error."""
    assert main(["--help"]) == EXIT_PASS
    assert "cheb-table" in capsys.readouterr().out


def test_verify_passes(capsys):
    """Test a passing suite run as JSON."""
    code = main(["verify", "--suite", "recoupling", "--format", "json", "-v"])
    assert code == EXIT_PASS
    document = json.loads(capsys.readouterr().out)
    assert document["summary"] == {"failures": "0", "passed": "true"}
    assert {row[0] for row in document["rows"]} == {"recoupling"}


def test_complex_residuals_are_recorded():
    """Test that complex residuals are recorded by magnitude."""

    class ComplexResidual(IdentitySuite):
        """Suite recording one complex residual."""

        NAME = "complex"

        def _run(self, rng):
            """Record |3e-13 - 4e-13i| = 5e-13."""
            self.record("trace", 3e-13 - 4e-13j, 1e-12)

    suite = ComplexResidual()
    suite.run()
    assert suite.passed
    assert suite.saved_results["trace"].trials == [pytest.approx(5e-13)]


def test_verify_traces_suite(capsys):
    """Test that the trace suite runs and passes from the command line."""
    code = main(["verify", "--suite", "traces", "--format", "json"])
    assert code == EXIT_PASS
    document = json.loads(capsys.readouterr().out)
    assert {row[1] for row in document["rows"]} == {"trace-one", "trace-two"}


def test_verify_negative_control(capsys):
    """Test that a perturbation above every tolerance fails the run."""
    argv = ["verify", "--suite", "recoupling", "--suite", "traces"]
    argv += ["--perturb", "1e-3"]
    assert main(argv) == EXIT_TOLERANCE
    comments = _comments(capsys.readouterr().out)
    assert comments["passed"] == "false"
    assert int(comments["failures"]) > 0


def test_tomography_demo(capsys):
    """Test the seeded round-trips for j=1."""
    assert main(["tomography-demo", "--j", "1", "--format", "json"]) == EXIT_PASS
    document = json.loads(capsys.readouterr().out)
    assert document["summary"]["passed"] == "true"
    routes = {(row[0], row[1]) for row in document["rows"]}
    assert routes == {
        (state, route)
        for state in ("random", "mixed", "top")
        for route in ("w", "Q", "W", "group")
    }
