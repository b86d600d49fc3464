import json
import math

import pytest

from hypervol.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVolume:
    def test_zero_t(self, capsys):
        code, out, _ = run(capsys, "volume", "--n", "3", "--t", "0", "--method", "projective")
        assert code == 0
        assert "value=0 " in out

    def test_all_methods_agree(self, capsys):
        code, out, _ = run(capsys, "volume", "--n", "2", "--t", "0.6435011088",
                           "--method", "all")
        assert code == 0
        assert out.count("method=") == 3
        rel = float(out.strip().splitlines()[-1].split("=")[1])
        assert rel <= 1e-6
        for line in out.splitlines():
            if line.startswith("method="):
                val = float(line.split("value=")[1].split()[0])
                assert val == pytest.approx(0.5454557889380810, rel=1e-9)

    def test_halfspace_rejected_at_ideal(self, capsys):
        code, _, err = run(capsys, "volume", "--n", "3", "--t", "1.5707963",
                           "--method", "halfspace")
        assert code == 1
        assert "undefined at ideal t" in err

    def test_sin_t_flag(self, capsys):
        code, out, _ = run(capsys, "volume", "--n", "2", "--sin-t", "0.6")
        assert code == 0
        assert float(out.split("value=")[1].split()[0]) == pytest.approx(
            0.5454557889380810, rel=1e-9)

    def test_t_and_sin_t_exclusive(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["volume", "--n", "2", "--t", "0.5", "--sin-t", "0.5"])
        assert info.value.code == 1

    def test_bad_n(self, capsys):
        code, _, err = run(capsys, "volume", "--n", "1", "--t", "0.5")
        assert code == 1
        assert "error" in err

    def test_tol_and_seed_flags(self, capsys):
        code, out, _ = run(capsys, "volume", "--n", "3", "--t", "0.8",
                           "--tol", "1e-6", "--seed", "5")
        assert code == 0
        assert "value=" in out

    def test_bad_tol(self, capsys):
        code, _, err = run(capsys, "volume", "--n", "3", "--t", "0.8",
                           "--tol", "1e-20")
        assert code == 1


class TestRatio:
    def test_near_ideal(self, capsys):
        code, out, _ = run(capsys, "ratio", "--n", "3", "--t", "1.57")
        assert code == 0
        assert "SANDWICH=ok" in out
        ratio = float(out.split("ratio=")[1].split()[0])
        assert ratio == pytest.approx(0.32336, rel=1e-3)
        assert "upper=0.49999" in out

    def test_zero_t_rejected(self, capsys):
        code, _, err = run(capsys, "ratio", "--n", "3", "--t", "0")
        assert code == 1
        assert "undefined" in err

    def test_all_fields_present(self, capsys):
        code, out, _ = run(capsys, "ratio", "--n", "4", "--t", "0.8")
        assert code == 0
        for field in ("ratio=", "ratio_err=", "lower=", "upper=",
                      "hm_lower=", "hm_upper=", "SANDWICH="):
            assert field in out
        ratio = float(out.split("ratio=")[1].split()[0])
        lo = float(out.split("lower=")[1].split()[0])
        hi = float(out.split("upper=")[1].split()[0])
        assert lo <= ratio <= hi


class TestSweep:
    def test_grid_rows_and_order(self, capsys):
        code, out, _ = run(capsys, "sweep", "--n-list", "3",
                           "--t-start", "0.1", "--t-stop", "1.5", "--t-step", "0.1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == ("n,t,ratio,ratio_err,lower,upper,hm_lower,hm_upper,"
                            "V_n,V_facet,sandwich_flag")
        assert len(lines) == 16          # header + 15 rows
        assert all(line.endswith(",ok") for line in lines[1:])
        ts = [float(line.split(",")[1]) for line in lines[1:]]
        assert ts == sorted(ts)

    def test_empty_grid(self, capsys):
        code, _, err = run(capsys, "sweep", "--n-list", "", "--t-list", "0.5")
        assert code == 1

    def test_json_format_parity(self, capsys):
        code, out_csv, _ = run(capsys, "sweep", "--n-list", "3", "--t-list", "0.5,0.9")
        code2, out_json, _ = run(capsys, "sweep", "--n-list", "3", "--t-list", "0.5,0.9",
                                 "--format", "json")
        assert code == 0 and code2 == 0
        rows = json.loads(out_json)
        header = out_csv.splitlines()[0].split(",")
        assert len(rows) == 2
        for row, line in zip(rows, out_csv.strip().splitlines()[1:]):
            assert list(row.keys()) == header
            csv_vals = line.split(",")
            for key, cv in zip(header, csv_vals):
                jv = row[key]
                if key in ("n",):
                    assert int(jv) == int(cv)
                elif key == "sandwich_flag":
                    assert jv == cv
                else:
                    assert float(jv) == float(cv)

    def test_reproducible_output(self, capsys):
        a = run(capsys, "sweep", "--n-list", "3,4", "--t-list", "0.4,1.0")
        b = run(capsys, "sweep", "--n-list", "3,4", "--t-list", "0.4,1.0")
        assert a == b

    def test_rejects_t_outside_range(self, capsys):
        code, _, err = run(capsys, "sweep", "--n-list", "3", "--t-list", "1.8")
        assert code == 1


class TestCheck:
    def test_all_pass(self, capsys):
        code, out, _ = run(capsys, "check", "--n", "3", "--t", "0.8")
        assert code == 0
        assert "FAIL" not in out
        for label in ("ladder_chain", "gram_closed_form", "gamma_spheres",
                      "sin_alpha_ladder", "zn_sandwich", "cross_model"):
            assert label in out

    def test_degenerate_skips(self, capsys):
        code, out, _ = run(capsys, "check", "--n", "3", "--t", "0")
        assert code == 0
        assert "PASS ladder_chain" in out
        assert "SKIP" in out
        assert "zn_sandwich" in out

    def test_larger_case(self, capsys):
        code, out, _ = run(capsys, "check", "--n", "5", "--t", "1.3")
        assert code == 0
        assert "FAIL" not in out

    def test_audit_limits(self, capsys):
        code, out, _ = run(capsys, "check", "--n", "3", "--t", "0.8", "--audit-limits")
        assert code == 0
        assert "fitted_limit=" in out
        assert "claimed_limit=1" in out
        products = [float(line.split("product=")[1])
                    for line in out.splitlines() if "product=" in line]
        assert len(products) == 6
        assert all(b < a for a, b in zip(products, products[1:]))


class TestLadder:
    def test_ideal(self, capsys):
        code, out, _ = run(capsys, "ladder", "--n", "3", "--t", "1.5707963268")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "k,r_k,tanh_r_k,d_k,tanh_d_k"
        last = lines[-1].split(",")
        assert last[1] == "inf" and last[2] == "1"
        assert float(last[3]) == pytest.approx(0.34657359027997264, rel=1e-12)

    def test_zero(self, capsys):
        code, out, _ = run(capsys, "ladder", "--n", "3", "--t", "0")
        assert code == 0
        for line in out.strip().splitlines()[1:]:
            assert [float(x) for x in line.split(",")[1:]] == [0.0, 0.0, 0.0, 0.0]

    def test_r3_value(self, capsys):
        code, out, _ = run(capsys, "ladder", "--n", "3", "--t", "0.6435011088")
        assert code == 0
        r3 = float(out.strip().splitlines()[-1].split(",")[1])
        assert r3 == pytest.approx(math.log(2.0), rel=1e-9)

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "ladder.csv"
        code, out, _ = run(capsys, "ladder", "--n", "3", "--t", "0.5",
                           "--out", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("k,r_k")
