import json
import os

import pytest

from reglab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestComputeCommand:
    def test_text_table_and_value(self, capsys):
        code, out, _ = run(capsys, "compute", "--l", "5", "--digits", "15",
                           "--skip-oracle")
        assert code == 0
        assert "0.346139631939354" in out
        assert "0.427459772553180" in out  # I(1)
        assert out.count("\n  ") >= 4  # one row per j

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "compute", "--l", "7", "--format", "json",
                           "--digits", "15", "--skip-oracle")
        assert code == 0
        payload = json.loads(out)
        assert payload["l"] == 7 and payload["h"] == 4
        assert len(payload["I"]) == 6 and len(payload["J"]) == 6
        assert payload["regulator_e_ind"].startswith("0.62948786086058")
        assert payload["oracle_check"] is None
        assert isinstance(payload["det_agreement_digits"], int)

    def test_json_oracle_check_present(self, capsys):
        code, out, _ = run(capsys, "compute", "--l", "5", "--format", "json",
                           "--digits", "10")
        assert code == 0
        payload = json.loads(out)
        diff = float(payload["oracle_check"]["max_rel_diff"])
        assert diff < 1e-6

    def test_csv_columns(self, capsys):
        code, out, _ = run(capsys, "compute", "--l", "5", "--format", "csv",
                           "--digits", "12", "--skip-oracle")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "l,j,I,J"
        assert len(lines) == 5
        assert lines[1].startswith("5,1,")

    def test_validation_exit_2(self, capsys):
        for bad_l in ("4", "9", "3"):
            code, _, err = run(capsys, "compute", "--l", bad_l)
            assert code == 2
            assert "gcd(l, 6) = 1" in err

    def test_digits_floor(self, capsys):
        code, _, err = run(capsys, "compute", "--l", "5", "--digits", "5")
        assert code == 2
        assert "digits" in err

    def test_parallelism_validated_not_used(self, capsys):
        code1, out1, _ = run(capsys, "compute", "--l", "5", "--digits", "12",
                             "--skip-oracle", "--parallelism", "1")
        code4, out4, _ = run(capsys, "compute", "--l", "5", "--digits", "12",
                             "--skip-oracle", "--parallelism", "4")
        assert code1 == code4 == 0
        assert out1 == out4
        code, _, err = run(capsys, "compute", "--l", "5", "--parallelism", "0")
        assert code == 2 and "parallelism" in err


class TestCache:
    def test_round_trip_byte_identical(self, capsys, tmp_path):
        args = ("compute", "--l", "5", "--digits", "12", "--skip-oracle",
                "--cache", str(tmp_path))
        _, first, _ = run(capsys, *args)
        files = os.listdir(tmp_path)
        assert len(files) == 1
        before = (tmp_path / files[0]).read_bytes()
        _, second, _ = run(capsys, *args)
        assert first == second
        assert (tmp_path / files[0]).read_bytes() == before

    def test_corrupt_cache_recovers(self, capsys, tmp_path):
        args = ("compute", "--l", "5", "--digits", "12", "--skip-oracle",
                "--cache", str(tmp_path))
        _, first, _ = run(capsys, *args)
        path = tmp_path / os.listdir(tmp_path)[0]
        entry = json.loads(path.read_text())
        entry["payload"]["regulator_e_ind"] = "9.99"
        path.write_text(json.dumps(entry))
        code, out, err = run(capsys, *args)
        assert code == 0
        assert out == first
        assert "corrupt" in err

    def test_unparseable_cache_recovers(self, capsys, tmp_path):
        args = ("compute", "--l", "5", "--digits", "12", "--skip-oracle",
                "--cache", str(tmp_path))
        _, first, _ = run(capsys, *args)
        path = tmp_path / os.listdir(tmp_path)[0]
        path.write_text("{not json")
        code, out, err = run(capsys, *args)
        assert code == 0 and out == first and "corrupt" in err

    def test_stale_version_ignored_silently(self, capsys, tmp_path):
        from reglab.cli import _checksum

        args = ("compute", "--l", "5", "--digits", "12", "--skip-oracle",
                "--cache", str(tmp_path))
        _, first, _ = run(capsys, *args)
        path = tmp_path / os.listdir(tmp_path)[0]
        entry = json.loads(path.read_text())
        entry["key"]["version"] = "0.0.0"
        entry["checksum"] = _checksum(entry["key"], entry["payload"])
        path.write_text(json.dumps(entry))
        code, out, err = run(capsys, *args)
        assert code == 0 and out == first
        assert "corrupt" not in err

    def test_env_var_overrides(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("REGLAB_CACHE", str(tmp_path))
        code, _, _ = run(capsys, "compute", "--l", "5", "--digits", "12",
                         "--skip-oracle")
        assert code == 0
        assert len(os.listdir(tmp_path)) == 1


class TestOtherCommands:
    def test_fibers(self, capsys):
        code, out, _ = run(capsys, "fibers", "--l", "5")
        assert code == 0
        assert "I_15" in out and "I_1" in out and "IV" in out
        assert "h20 = 1" in out

    def test_fibers_any_positive_l(self, capsys):
        code, out, _ = run(capsys, "fibers", "--l", "2")
        assert code == 0
        assert "I_6" in out
        assert "h20" not in out  # hodge block needs gcd(l,6)=1

    def test_pf(self, capsys):
        code, out, _ = run(capsys, "pf", "--l", "5", "--m", "1")
        assert code == 0
        assert "-104*t^5 + 9" in out

    def test_oracle_single_j(self, capsys):
        code, out, _ = run(capsys, "oracle", "--l", "5", "--j", "2")
        assert code == 0
        assert "max relative difference" in out
        worst = float(out.strip().splitlines()[-1].split()[-1])
        assert worst < 1e-6

    def test_oracle_validation(self, capsys):
        code, _, err = run(capsys, "oracle", "--l", "6")
        assert code == 2
        code, _, err = run(capsys, "oracle", "--l", "5", "--j", "9")
        assert code == 2

    def test_selfcheck_passes(self, capsys):
        code, out, _ = run(capsys, "selfcheck")
        assert code == 0
        assert out.count("[pass]") == 7
        assert "[fail]" not in out


class TestEntryPoint:
    def test_console_script_installed(self):
        import shutil

        assert shutil.which("reglab") is not None

    def test_unknown_subcommand_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
