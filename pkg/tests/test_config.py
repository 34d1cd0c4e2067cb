"""
Unit tests for configuration loading
"""
from fractions import Fraction

import yaml

from hyperprover.core.config import CONFIG_FILENAME, Config


class TestConfig:
    """Test suite for Config"""

    def test_default(self):
        config = Config.default()
        assert config.timeout_ms == 30_000
        assert config.max_steps == 200_000
        assert config.refute_budget == 0
        assert config.runtime_base_dir == ".prover"
        assert not config.trace_enabled
        assert config.verify_measures

    def test_default_is_a_copy(self):
        config = Config.default()
        config.data["search"]["seed"] = 9
        assert Config.default().seed == 0

    def test_get_dot_notation(self):
        config = Config.default()
        assert config.get("lp.max_constraints") == 20_000
        assert config.get("lp.missing", "fallback") == "fallback"
        assert config.get("search.timeout_ms.deeper") is None

    def test_load_missing_file(self, tmp_path):
        config = Config.load(str(tmp_path / CONFIG_FILENAME))
        assert config.data == Config.DEFAULT_CONFIG

    def test_load_merges_with_defaults(self, tmp_path):
        path = tmp_path / CONFIG_FILENAME
        path.write_text(yaml.dump({"search": {"seed": 5}, "corpus": {"max_nodes": 4}}))
        config = Config.load(str(path))
        assert config.seed == 5
        assert config.max_nodes == 4
        assert config.timeout_ms == 30_000

    def test_load_invalid_yaml(self, tmp_path):
        path = tmp_path / CONFIG_FILENAME
        path.write_text("search: [unclosed")
        assert Config.load(str(path)).data == Config.DEFAULT_CONFIG

    def test_load_non_mapping(self, tmp_path):
        path = tmp_path / CONFIG_FILENAME
        path.write_text("- just\n- a list\n")
        assert Config.load(str(path)).data == Config.DEFAULT_CONFIG

    def test_load_empty_file(self, tmp_path):
        path = tmp_path / CONFIG_FILENAME
        path.write_text("")
        assert Config.load(str(path)).data == Config.DEFAULT_CONFIG

    def test_save_and_reload(self, tmp_path):
        config = Config.default()
        config.data["labelled"]["certificate_max_labels"] = 6
        saved = config.save(tmp_path / CONFIG_FILENAME)
        assert saved.exists()
        assert Config.load(str(saved)).certificate_max_labels == 6


class TestSampling:
    """Test suite for the sampling settings"""

    def test_numerator_range(self):
        assert Config.default().numerator_range == (-8, 8)

    def test_sample_values(self):
        config = Config.default()
        config.data["sampling"]["numerator_range"] = [-1, 1]
        config.data["sampling"]["denominators"] = [1, 2]
        assert config.sample_values() == [
            Fraction(-1),
            Fraction(-1, 2),
            Fraction(0),
            Fraction(1, 2),
            Fraction(1),
        ]

    def test_soundness_samples(self, mock_config):
        assert mock_config.soundness_samples == 20
