"""Tests for the [etg] config section and the RunConfig defaults."""

from unittest.mock import patch

import pytest

from etgeom.config import (
    DEFAULT_TOLERANCE,
    RunConfig,
    config_options,
    default_tolerance,
    load_config,
    parse_config,
    parse_triple,
    serialize_config,
)


class TestParseTriple:
    def test_string(self):
        assert parse_triple("-0.05, 0.05,-0.05") == (-0.05, 0.05, -0.05)

    def test_sequence(self):
        assert parse_triple([1, 2, 3]) == (1.0, 2.0, 3.0)

    def test_wrong_count(self):
        with pytest.raises(ValueError, match="three"):
            parse_triple("1,2")

    def test_not_numbers(self):
        with pytest.raises(ValueError):
            parse_triple("a,b,c")


class TestLoadConfig:
    def test_reads_section(self, tmp_path):
        path = tmp_path / "etg.config"
        path.write_text("[etg]\nsteps = 25\nmode = elliptic\n")
        assert load_config(path) == {"steps": "25", "mode": "elliptic"}

    def test_missing_file(self, tmp_path):
        assert load_config(tmp_path / "nope.config") == {}

    def test_missing_section(self, tmp_path):
        path = tmp_path / "etg.config"
        path.write_text("[other]\nsteps = 3\n")
        assert load_config(path) == {}

    def test_expands_home(self, tmp_path):
        (tmp_path / ".etg.config").write_text("[etg]\nseed = 4\n")
        with patch.dict("os.environ", {"HOME": str(tmp_path)}):
            assert load_config("~/.etg.config") == {"seed": "4"}


class TestConfigOptions:
    def test_converts_values(self):
        options = config_options(
            {
                "delta": "-0.1,0.1,-0.1",
                "x0": "0.5,0.5,1",
                "steps": "7",
                "mode": " sqrt ",
                "nu1": "0.25",
                "seed": "3",
                "mesh-resolution": "16",
                "ruling-extent": "2.5",
            }
        )
        assert options == {
            "delta": (-0.1, 0.1, -0.1),
            "x0": (0.5, 0.5, 1.0),
            "steps": 7,
            "mode": "sqrt",
            "nu1": 0.25,
            "seed": 3,
            "mesh_resolution": 16,
            "ruling_extent": 2.5,
        }

    def test_tolerances(self):
        options = config_options({"tolerance": "1e-6", "tolerance-coplanarity": "1e-9"})
        assert options["tolerances"] == {"default": 1e-6, "coplanarity": 1e-9}

    def test_ignores_unknown_keys(self):
        assert config_options({"colour": "blue"}) == {}


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.delta == (-0.05, 0.05, -0.05)
        assert cfg.x0 == (1.0, 0.5, 0.5)
        assert cfg.steps == 10
        assert cfg.mode == "map"
        assert cfg.nu1 is None

    def test_rejects_negative_steps(self):
        with pytest.raises(ValueError, match="steps"):
            RunConfig(steps=-1)

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError, match="mode"):
            RunConfig(mode="rk4")

    def test_rejects_small_mesh(self):
        with pytest.raises(ValueError, match="mesh-resolution"):
            RunConfig(mesh_resolution=1)

    def test_rejects_non_positive_extent(self):
        with pytest.raises(ValueError, match="ruling-extent"):
            RunConfig(ruling_extent=0.0)

    def test_tolerance_lookup_order(self):
        cfg = RunConfig(tolerances={"default": 1e-6, "conservation": 1e-12})
        assert cfg.tolerance("conservation") == 1e-12
        assert cfg.tolerance("coplanarity") == 1e-6

    def test_tolerance_from_environment(self):
        with patch.dict("os.environ", {"ETG_TOLERANCE": "1e-5"}):
            assert RunConfig().tolerance("conservation") == 1e-5

    def test_tolerance_default(self):
        with patch.dict("os.environ", {}, clear=True):
            assert default_tolerance() == DEFAULT_TOLERANCE

    def test_bad_environment_value(self):
        with patch.dict("os.environ", {"ETG_TOLERANCE": "tight"}):
            with pytest.raises(ValueError, match="ETG_TOLERANCE"):
                default_tolerance()


class TestSerializeConfig:
    def test_round_trip(self):
        cfg = RunConfig(
            delta=(-0.1, 0.2, -0.3),
            x0=(0.1, 1.0 / 3.0, 2.0),
            steps=4,
            mode="involutions",
            nu1=0.123456789,
            seed=9,
            tolerances={"default": 1e-7, "signs": 0.0},
            mesh_resolution=12,
            ruling_extent=0.75,
        )
        assert parse_config(serialize_config(cfg)) == cfg

    def test_text(self):
        text = serialize_config(RunConfig(steps=3))
        assert text.startswith("[etg]\n")
        assert "steps = 3\n" in text
        assert "nu1" not in text

    def test_parse_requires_section(self):
        with pytest.raises(ValueError, match=r"\[etg\]"):
            parse_config("[other]\nsteps = 1\n")
