import json

import pytest

import hypflux.reproduce
from conftest import GOLDEN_FAST, THRESHOLD_SQ
from hypflux.cli import main
from hypflux.reproduce import ReproduceReport


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_verdict_is_the_first_line(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--q", "0,0,0", "--lambda-nu", "1,-1"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "HYPERBOLIC"
        assert any("spectral radius" in line for line in lines)

    def test_json_mode(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--q", "0,0,0", "--lambda-nu", "1,-1", "--json"
        )
        assert code == 0
        body = json.loads(out)
        assert body["verdict"] == "HYPERBOLIC"
        assert body["spectral_radius"] == pytest.approx(GOLDEN_FAST, abs=1e-9)

    def test_auto_direction_follows_q(self, capsys):
        code, out, _ = run(
            capsys,
            "classify", "--v", "0", "--q", "1.7", "--lambda-nu", "1,0", "--json",
        )
        assert code == 0
        body = json.loads(out)
        assert body["provenance"]["xi"] == [1.0]
        assert body["verdict"] == "NON_HYPERBOLIC"

    def test_inadmissible_state_exits_3(self, capsys):
        code, _, err = run(capsys, "classify", "--rho", "-1")
        assert code == 3
        assert err.startswith("error:")
        assert "rho" in err

    def test_unknown_model_exits_2(self, capsys):
        code, _, err = run(capsys, "classify", "--model", "nope")
        assert code == 2
        assert "unknown model" in err

    def test_bad_tolerance_key_exits_2(self, capsys):
        code, _, err = run(capsys, "classify", "--tol", "fuzz=1e-3")
        assert code == 2
        assert "fuzz" in err

    def test_bad_flag_raises_system_exit(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["classify", "--does-not-exist"])
        assert excinfo.value.code == 2


class TestSweep:
    CONFIG = {
        "dimension": 1,
        "lambda_nu": [[1.0, 0.0]],
        "thermo_points": [[1.0, 1.0]],
        "q_magnitudes": [0.1, 5.0],
    }

    def test_artifacts_are_reproducible(self, capsys, tmp_path):
        config = tmp_path / "sweep.json"
        config.write_text(json.dumps(self.CONFIG))
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        for target in (first, second):
            code, out, err = run(
                capsys,
                "sweep", "--config", str(config), "--csv", str(target),
            )
            assert code == 0
            assert "rows = 2" in out
            assert f"wrote csv to {target}" in err
        assert first.read_bytes() == second.read_bytes()
        assert first.read_bytes().startswith(b"lambda,nu,rho,theta,")
        assert b"\r\n" in first.read_bytes()

    def test_set_overrides(self, capsys):
        code, out, _ = run(
            capsys,
            "sweep",
            "--set", "dimension=1",
            "--set", 'lambda_nu=[[1.0,0.0]]',
            "--set", "q_magnitudes=[5.0]",
        )
        assert code == 0
        assert "NON_HYPERBOLIC: 1" in out

    def test_every_row_failing_exits_4(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--set", "thermo_points=[[-1.0,1.0]]"
        )
        assert code == 4
        assert "failed = 3" in out

    def test_malformed_config_file_exits_2(self, capsys, tmp_path):
        config = tmp_path / "broken.json"
        config.write_text("{not json")
        code, _, err = run(capsys, "sweep", "--config", str(config))
        assert code == 2
        assert "malformed config" in err

    def test_bad_config_value_exits_2(self, capsys):
        code, _, err = run(capsys, "sweep", "--set", "dimension=9")
        assert code == 2
        assert "dimension" in err


class TestReproduce:
    def test_single_check(self, capsys):
        code, out, _ = run(capsys, "reproduce", "hnull")
        assert code == 0
        assert out.startswith("PASS: hnull")

    def test_all_checks(self, capsys):
        code, out, _ = run(capsys, "reproduce", "all")
        assert code == 0
        assert out.count("PASS: ") >= 6

    def test_unknown_id_exits_2(self, capsys):
        code, _, err = run(capsys, "reproduce", "zeta")
        assert code == 2
        assert "unknown theorem id" in err

    def test_failing_check_exits_5(self, capsys, monkeypatch):
        def broken(seed):
            return ReproduceReport(
                theorem_id="hnull",
                passed=False,
                lines=("FAIL: hnull",),
                data={},
            )

        monkeypatch.setitem(hypflux.reproduce.RECIPES, "hnull", broken)
        code, out, _ = run(capsys, "reproduce", "hnull")
        assert code == 5
        assert out.startswith("FAIL: hnull")


class TestModal:
    def test_table_on_stdout(self, capsys):
        code, out, _ = run(
            capsys,
            "modal", "--q", "1.7,0,0", "--lambda-nu", "1,0", "--k", "1,10",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "scenario,k,max_im_omega,max_im_omega_over_k"
        assert len(lines) == 3
        assert lines[1].startswith("coupled,1,")

    def test_csv_file(self, capsys, tmp_path):
        target = tmp_path / "modal.csv"
        code, _, err = run(
            capsys,
            "modal", "--ccj", "--k", "0,1", "--csv", str(target),
        )
        assert code == 0
        assert "wrote modal table" in err
        rows = target.read_text().splitlines()
        assert rows[0] == "scenario,k,max_im_omega,max_im_omega_over_k"
        assert rows[1].startswith("ccj,0,")
        assert rows[1].endswith(",")  # ratio column empty at k = 0


class TestCcjSpeeds:
    def test_reference_output(self, capsys):
        code, out, _ = run(capsys, "ccj-speeds")
        assert code == 0
        assert "eta1 = 1.6180339887498949" in out
        assert "r = 3" in out

    def test_domain_error_exits_3(self, capsys):
        code, _, err = run(capsys, "ccj-speeds", "--theta", "-2")
        assert code == 3
        assert "theta" in err


class TestWitness:
    def test_reference_threshold(self, capsys):
        code, out, _ = run(capsys, "witness", "--lambda-nu", "1,0")
        assert code == 0
        assert f"threshold q^2 = {THRESHOLD_SQ:.17g}" in out
        assert "witness q = 1.7616280348965083" in out
        assert "1D verdict at witness: NON_HYPERBOLIC" in out

    def test_zero_sum_pair_exits_3(self, capsys):
        code, _, err = run(capsys, "witness", "--lambda-nu", "1,-1")
        assert code == 3
        assert "vanishes identically" in err

    def test_preset_names_parse_but_zero_sum_still_fails(self, capsys):
        # both presets sit on the gamma = 0 line, so the parse must succeed
        # and the rejection must come from the service, not argparse
        code, _, err = run(capsys, "witness", "--lambda-nu", "jordan-compatible")
        assert code == 3
        assert "(1.0, -1.0)" in err
