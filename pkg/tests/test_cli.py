"""
Tests for the hyperprover CLI
"""
import json
from pathlib import Path

import pytest
import yaml
from click.testing import CliRunner

from hyperprover.cli import main

PRELINEARITY = "(A -> B) \\/ (B -> A)"


class TestCLI:
    """Test CLI commands"""

    @pytest.fixture
    def runner(self):
        """Create CLI runner"""
        return CliRunner()

    def test_version(self, runner):
        """Test --version flag"""
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert "hyperprover version" in result.output

    def test_help(self, runner):
        """Test --help flag"""
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        assert "Commands:" in result.output
        assert "check-proof" in result.output

    def test_banner_without_command(self, runner):
        result = runner.invoke(main, [])
        assert result.exit_code == 0
        assert "hyperprover --help" in result.output


class TestProveCommand:
    """Test suite for hyperprover prove"""

    @pytest.fixture
    def runner(self):
        return CliRunner()

    def test_valid_goal(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["prove", "--goal", PRELINEARITY])
            assert result.exit_code == 0
            assert "Valid" in result.output

    def test_invalid_goal(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["prove", "--logic", "l", "--calculus", "term", "--goal", "p"])
            assert result.exit_code == 1
            assert "Invalid" in result.output
            assert "Countermodel" in result.output

    def test_json_output(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["prove", "--goal", "p", "--format", "json"])
            assert result.exit_code == 1
            data = json.loads(result.stdout)
            assert data["verdict"] == "invalid"
            assert data["calculus"] == "ga"
            assert data["goal"] == "|- p"
            assert "p" in data["countermodel"]

    def test_json_proof(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(
                main, ["prove", "--calculus", "label", "--goal", "p => p", "--format", "json"]
            )
            assert result.exit_code == 0
            data = json.loads(result.stdout)
            assert data["verdict"] == "valid"
            assert data["calculus"] == "ga_l"
            assert "proof" in data

    def test_report(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["prove", "--goal", PRELINEARITY, "--report"])
            assert result.exit_code == 0
            reports = list(Path(".prover/reports").glob("*.md"))
            assert len(reports) == 1
            assert "- Verdict: VALID" in reports[0].read_text(encoding="utf-8")

    def test_syntax_error(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["prove", "--goal", "p ->"])
            assert result.exit_code == 2
            assert "FAIL Error" in result.output

    @pytest.mark.parametrize("calculus", ["label", "single-elab"])
    def test_unit_constant_goal(self, runner, tmp_path, calculus):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["prove", "--calculus", calculus, "--goal", "t -> t"])
            assert result.exit_code == 0
            assert "Valid" in result.output

    def test_internal_error_reported(self, runner, tmp_path, monkeypatch):
        def broken(*args, **kwargs):
            raise IndexError("tuple index out of range")

        monkeypatch.setattr("hyperprover.cli.Engine.decide", broken)
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["prove", "--goal", "|- t"])
            assert result.exit_code == 2
            assert "FAIL Error" in result.output
            assert "internal IndexError" in result.output

    def test_single_elab_needs_abelian_logic(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["prove", "--logic", "l", "--calculus", "single-elab", "--goal", "p"])
            assert result.exit_code == 2


class TestCheckProofCommand:
    """Test suite for hyperprover check-proof"""

    @pytest.fixture
    def runner(self):
        return CliRunner()

    def test_bundled_proof(self, runner, bundled_dir):
        result = runner.invoke(
            main, ["check-proof", "--calculus", "ga", "--file", str(bundled_dir / "exama.json")]
        )
        assert result.exit_code == 0
        assert "OK Proof accepted" in result.output

    def test_corrupted_proof(self, runner, tmp_path, bundled_dir):
        text = (bundled_dir / "exama.json").read_text(encoding="utf-8")
        corrupted = tmp_path / "corrupted.json"
        corrupted.write_text(text.replace('"A |- A"', '"A |- B"'), encoding="utf-8")
        result = runner.invoke(main, ["check-proof", "--calculus", "ga", "--file", str(corrupted)])
        assert result.exit_code == 1
        assert "FAIL Proof rejected at root.0.0.0.0" in result.output

    def test_wrong_calculus(self, runner, bundled_dir):
        result = runner.invoke(
            main, ["check-proof", "--calculus", "gl_s", "--file", str(bundled_dir / "exama.json")]
        )
        assert result.exit_code in (1, 2)

    def test_malformed_file(self, runner, tmp_path):
        empty = tmp_path / "empty.json"
        empty.write_text("", encoding="utf-8")
        result = runner.invoke(main, ["check-proof", "--calculus", "ga", "--file", str(empty)])
        assert result.exit_code == 2
        assert "FAIL Error" in result.output

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(
            main, ["check-proof", "--calculus", "ga", "--file", str(tmp_path / "nowhere.json")]
        )
        assert result.exit_code == 2


class TestTranslateCommand:
    """Test suite for hyperprover translate"""

    @pytest.fixture
    def runner(self):
        return CliRunner()

    def test_star(self, runner):
        result = runner.invoke(main, ["translate", "--formula", "bot => p"])
        assert result.exit_code == 0
        assert "$qbot" in result.output

    def test_check_valid(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["translate", "--formula", "bot => p", "--check"])
            assert result.exit_code == 0
            assert "Ł: valid, A: valid" in result.output

    def test_check_transfers_countermodel(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["translate", "--formula", "p", "--check"])
            assert result.exit_code == 0
            assert "Ł: invalid, A: invalid" in result.output
            assert "Ł countermodel" in result.output

    def test_material(self, runner):
        result = runner.invoke(main, ["translate", "--translation", "material", "--formula", "bot .> p"])
        assert result.exit_code == 0
        assert "t /\\ bot -> bot \\/ p" in result.output

    def test_material_rewrites_whole_language(self, runner):
        result = runner.invoke(main, ["translate", "--translation", "material", "--formula", "p => q"])
        assert result.exit_code == 0
        assert "$mbot" not in result.output
        assert "->" in result.output

    def test_untranslatable(self, runner):
        result = runner.invoke(main, ["translate", "--translation", "enthymematic", "--formula", "p => q"])
        assert result.exit_code == 2
        assert "FAIL Error" in result.output


class TestCorpusCommand:
    """Test suite for hyperprover corpus and bench"""

    @pytest.fixture
    def runner(self):
        return CliRunner()

    def test_reductions(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            Path("prover.yaml").write_text(yaml.dump({"corpus": {"reduction_systems": 5}}))
            result = runner.invoke(main, ["corpus", "--suite", "reductions"])
            assert result.exit_code == 0
            assert "OK All checks passed" in result.output

    def test_enumerated(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["corpus", "--suite", "enumerated", "--max-nodes", "1", "--samples", "2"])
            assert result.exit_code == 0
            assert "OK All checks passed" in result.output

    def test_goal_file(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            Path("goals.txt").write_text("bot => p #valid\np #invalid\n", encoding="utf-8")
            result = runner.invoke(main, ["corpus", "--goals", "goals.txt", "--logic", "l"])
            assert result.exit_code == 0
            assert "OK All checks passed" in result.output

    def test_suite_or_goals_required(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["corpus"])
            assert result.exit_code == 2

    def test_unknown_suite(self, runner):
        result = runner.invoke(main, ["corpus", "--suite", "bogus"])
        assert result.exit_code != 0

    def test_bench(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["bench", "--searches", "5", "--depth", "2"])
            assert result.exit_code == 0
            assert "violations" in result.output


class TestConfigCommand:
    """Test suite for hyperprover config"""

    @pytest.fixture
    def runner(self):
        return CliRunner()

    def test_init_creates_config(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["config", "init"])
            assert result.exit_code == 0
            assert "OK Created prover.yaml" in result.output
            assert Path("prover.yaml").exists()

    def test_init_refuses_to_overwrite(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            runner.invoke(main, ["config", "init"])
            result = runner.invoke(main, ["config", "init"])
            assert result.exit_code == 1
            assert "already exists" in result.output

    def test_init_force(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            Path("prover.yaml").write_text("search: {seed: 3}\n")
            result = runner.invoke(main, ["config", "init", "--force"])
            assert result.exit_code == 0
            assert "seed: 0" in Path("prover.yaml").read_text()

    def test_show(self, runner, tmp_path):
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["config", "show"])
            assert result.exit_code == 0
            assert "search.timeout_ms" in result.output
