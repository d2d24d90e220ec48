"""Tests for configuration parsing and defaults."""

import pytest

from dotcavity.config import (ConfigError, RunConfig, load_config,
                              parse_config)
from dotcavity.tuning import TuningModel


class TestDefaults:
    def test_empty_config_is_calibrated_scenario(self):
        cfg = parse_config("")
        assert cfg == RunConfig()
        assert cfg.tuning_model() == TuningModel()
        assert cfg.g == 0.2
        assert cfg.resolution_fwhm == 0.08

    def test_comments_and_blank_lines_ignored(self):
        cfg = parse_config("\n# a comment\n\ng = 0.3  # inline comment\n")
        assert cfg.g == 0.3

    def test_eps_r_defaults_through_optics(self):
        cfg = parse_config("n_eff = 3.0")
        assert cfg.cavity_optics().eps_r == pytest.approx(9.0)
        cfg2 = parse_config("n_eff = 3.0\neps_r = 12.9")
        assert cfg2.cavity_optics().eps_r == 12.9


class TestParsing:
    def test_unknown_key_is_hard_error_with_line(self):
        with pytest.raises(ConfigError, match=r"line 2.*gd_e0"):
            parse_config("g = 0.2\ngd_e0 = 1685.0\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config("g = 0.2\ng = 0.3\n")

    def test_bad_number_named(self):
        with pytest.raises(ConfigError, match=r"line 1.*'g'"):
            parse_config("g = fast\n")

    def test_missing_equals_rejected(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("just words\n")

    def test_integer_keys_are_integers(self):
        cfg = parse_config("seed = 42\nlm_max_iter = 100\n")
        assert cfg.seed == 42 and isinstance(cfg.seed, int)
        assert cfg.lm_max_iter == 100

    def test_validation_failures_become_config_errors(self):
        with pytest.raises(ConfigError):
            parse_config("gamma_cm = -0.1\n")
        with pytest.raises(ConfigError):
            parse_config("eta_x = 0\neta_c = 0\n")
        with pytest.raises(ConfigError):
            parse_config("grid_spacing = 0\n")


class TestLoading:
    def test_load_from_path(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("g = 0.25\nseed = 3\n", encoding="utf-8")
        cfg = load_config(str(path))
        assert cfg.g == 0.25
        assert cfg.seed == 3

    def test_env_var_override(self, tmp_path, monkeypatch):
        path = tmp_path / "env.cfg"
        path.write_text("g = 0.5\n", encoding="utf-8")
        monkeypatch.setenv("DOTCAVITY_CONFIG", str(path))
        assert load_config(None).g == 0.5

    def test_defaults_without_path_or_env(self, monkeypatch):
        monkeypatch.delenv("DOTCAVITY_CONFIG", raising=False)
        assert load_config(None) == RunConfig()

    def test_missing_file_raises_oserror(self):
        with pytest.raises(OSError):
            load_config("/nonexistent/path.cfg")


class TestSubModels:
    def test_disk_geometry_wiring(self):
        cfg = parse_config("disk_diameter_um = 4\ndisk_core_index = 3.4\n")
        geom = cfg.disk_geometry()
        assert geom.diameter_um == 4.0
        assert geom.core_index == 3.4
        assert geom.thickness_nm == 250.0

    def test_emission_model_wiring(self):
        cfg = parse_config("eta_x = 2\neta_c = 0.5\nbackground = 1.5\n")
        em = cfg.emission_model()
        assert (em.eta_x, em.eta_c, em.background) == (2.0, 0.5, 1.5)
