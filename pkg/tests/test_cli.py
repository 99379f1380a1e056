"""Command-line interface: output formats, exit codes, JSON stability."""

import json
from fractions import Fraction

import pytest

from gwtqft import __version__
from gwtqft.cli import dumps_canonical, main, phi_latex
from gwtqft.exactring import TPoly, parse_poly
from gwtqft.phicalc import PhiElem

t0, t1, t2 = TPoly.var(0), TPoly.var(1), TPoly.var(2)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCompute:
    def test_genus_one_text(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--genus", "1", "--level1", "0",
                               "--level2", "0", "--format", "text")
        assert code == 0
        assert out.strip() == "3"

    def test_genus_zero(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--genus", "0", "--level1", "0",
                               "--level2", "0")
        assert code == 0
        assert out.strip() == "0"

    def test_genus_two_latex(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--genus", "2", "--format", "latex")
        assert code == 0
        assert out.strip() == "t_0^2-t_0t_1-t_0t_2+t_1^2-t_1t_2+t_2^2"

    def test_json_schema_and_roundtrip(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "-g", "1", "--level1", "1",
                               "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"g", "k1", "k2", "terms", "version"}
        assert doc["version"] == __version__
        assert doc["terms"][0].keys() == {"phi_exp", "num", "den"}
        # byte-identical reserialization
        assert dumps_canonical(doc) == out.strip()
        # numbers parse back into the exact symbolic value
        got = PhiElem.from_json_terms(doc["terms"])
        assert got == PhiElem.term((t1 - t0) * (t1 - t2), -2)


class TestExtract:
    def test_calabi_yau(self, capsys):
        code, out, _ = run_cli(capsys, "extract", "--genus", "4", "--n", "2")
        assert code == 0
        assert out.strip() == "81*phi^6"

    def test_vanishing_class(self, capsys):
        code, out, _ = run_cli(capsys, "extract", "--genus", "3", "--n", "1")
        assert code == 0
        assert out.strip() == "0"

    def test_level_one(self, capsys):
        code, out, _ = run_cli(capsys, "extract", "--genus", "1", "--level1", "1",
                               "--n", "-1")
        assert code == 0
        assert parse_poly(out.strip().removesuffix("*phi^-2").strip("()")) == (
            t1 - t0
        ) * (t1 - t2)


class TestGenus:
    def test_table(self, capsys):
        code, out, _ = run_cli(capsys, "genus", "--genus", "0", "--level1", "1",
                               "--n", "-1", "--hmax", "2")
        assert code == 0
        assert out.splitlines() == ["h=0: 1", "h=1: 1/12", "h=2: 1/240"]

    def test_constant_class(self, capsys):
        code, out, _ = run_cli(capsys, "genus", "--genus", "1", "--n", "0",
                               "--hmax", "3")
        assert code == 0
        assert out.splitlines() == ["h=0: 0", "h=1: 3", "h=2: 0", "h=3: 0"]

    def test_cy_level_two(self, capsys):
        code, out, _ = run_cli(capsys, "genus", "--genus", "2", "--level2", "2",
                               "--n", "0", "--hmax", "3")
        assert code == 0
        assert "h=2: 9" in out
        assert "h=3: -3/4" in out

    def test_insufficient_order(self, capsys):
        code, _, err = run_cli(capsys, "genus", "--genus", "1", "--n", "0",
                               "--hmax", "9", "--order", "4")
        assert code == 2
        assert "u^16" in err

    def test_json_rows(self, capsys):
        code, out, _ = run_cli(capsys, "genus", "--genus", "0", "--level1", "1",
                               "--n", "-1", "--hmax", "1", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["rows"] == [
            {"h": 0, "num": "1", "den": "1"},
            {"h": 1, "num": "1/12", "den": "1"},
        ]


class TestVerify:
    def test_small_cy_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "cy", "--gmax", "2",
                               "--kmax", "2")
        assert code == 0
        assert "calabi_yau: pass" in out

    def test_numeric_suite_json(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "numeric", "--seed", "42",
                               "--trials", "3", "--format", "json")
        assert code == 0
        doc = json.loads(out.splitlines()[0])
        assert doc["passed"] is True

    def test_semisimple_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "semisimple")
        assert code == 0
        assert "semisimplicity: pass" in out


class TestWord:
    def test_scalar_word(self, capsys):
        code, out, _ = run_cli(capsys, "word", "trace(tube(0,0))")
        assert code == 0
        assert out.strip() == "3"

    def test_cap_pants(self, capsys):
        code, out, _ = run_cli(capsys, "word", "cap(0,-1) * pants")
        assert code == 0
        assert "class beta0:" in out
        assert "class beta0+1f:" in out

    def test_matrix_word_json(self, capsys):
        code, out, _ = run_cli(capsys, "word", "trace(G^1 * U1^1)", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["tensor"]["rank"] == 0

    def test_parse_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "word", "cap(0,-1) ** pants")
        assert code == 2
        assert "position" in err


class TestUsageErrors:
    def test_missing_genus(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["compute"])
        assert exc.value.code == 2

    def test_bad_suite(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2

    def test_negative_genus(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--genus", "-1")
        assert code == 2


class TestExitCodes:
    def test_internal_consistency_error_is_exit_3(self, capsys, monkeypatch):
        from gwtqft import cli
        from gwtqft.phicalc import ReductionError

        def boom(args):
            raise ReductionError("forced failure")

        monkeypatch.setattr(cli, "cmd_compute", boom)
        parser = cli.build_parser()
        args = parser.parse_args(["compute", "-g", "1"])
        args.fn = boom
        monkeypatch.setattr(cli, "build_parser", lambda: parser)
        monkeypatch.setattr(parser, "parse_args", lambda argv: args)
        code = cli.main(["compute", "-g", "1"])
        assert code == 3
        assert "internal consistency" in capsys.readouterr().err

    def test_failed_check_is_exit_1(self, capsys, monkeypatch):
        from gwtqft import cli
        from gwtqft.checks import CheckReport

        bad = CheckReport("demo", "unit")
        bad.check("p", 1, 2)
        monkeypatch.setattr(cli, "run_checks", lambda **kw: [bad])
        code = cli.main(["verify", "--suite", "cy"])
        assert code == 1
        assert "FAIL" in capsys.readouterr().out


class TestNumericReEvaluation:
    def test_parsed_output_matches_numeric_trace(self, capsys):
        import random

        from gwtqft.checks import numeric_trace

        code, out, _ = run_cli(capsys, "compute", "-g", "2", "--level1", "1",
                               "--format", "json")
        assert code == 0
        parsed = PhiElem.from_json_terms(json.loads(out)["terms"])
        rng = random.Random(17)
        for _ in range(5):
            while True:
                pt = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                           for _ in range(3))
                if len(set(pt)) == 3:
                    break
            assert parsed.evaluate_t(pt) == numeric_trace(2, 1, 0, pt)


class TestCachePersistence:
    def test_cache_file_written_and_reused(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("GWTQFT_CACHE_DIR", str(tmp_path))
        code, out1, _ = run_cli(capsys, "compute", "-g", "2")
        assert code == 0
        cache = tmp_path / "zcache.json"
        assert cache.exists()
        data = json.loads(cache.read_text())
        assert any(e["g"] == 2 for e in data["entries"])
        code, out2, _ = run_cli(capsys, "compute", "-g", "2")
        assert out1 == out2


class TestLatex:
    def test_phi_latex_forms(self):
        assert phi_latex(PhiElem.term(81, 6)) == "81\\phi^{6}"
        assert phi_latex(PhiElem.term(1, -2)) == "\\phi^{-2}"
        assert phi_latex(PhiElem.zero()) == "0"
        e = PhiElem.term((t1 - t0) * (t1 - t2), -2)
        assert phi_latex(e).endswith("\\phi^{-2}")
