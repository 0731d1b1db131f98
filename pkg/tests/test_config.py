from __future__ import annotations

import json
from pathlib import Path

import pytest
from coe_rigidity.config import (
    SKEW_DEMO_PRESETS,
    CoboundaryConfig,
    RunConfig,
    SamplesFile,
    SkewDemoConfig,
    WitnessFile,
    bundled_names,
    load_config,
    parse_config,
    read_source,
)
from coe_rigidity.errors import ConfigError
from coe_rigidity.odometer.chain import CHAIN_PRESETS
from pydantic import ValidationError


def test_bundled_fixtures_are_listed() -> None:
    names = bundled_names()
    assert "case1_translation" in names
    assert "flagship_dyadic" in names
    assert names == sorted(names)


def test_read_source_from_path(tmp_path: Path) -> None:
    path = tmp_path / "freeness.json"
    path.write_text(json.dumps({"model": {"kind": "case2", "level": 2}}))
    assert read_source(str(path)) == {"model": {"kind": "case2", "level": 2}}


def test_read_source_errors(tmp_path: Path) -> None:
    with pytest.raises(ConfigError, match="No config file or bundled fixture named 'nope'"):
        read_source("nope")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ConfigError, match="invalid JSON"):
        read_source(str(broken))
    listing = tmp_path / "list.json"
    listing.write_text("[1, 2]")
    with pytest.raises(ConfigError, match="expected a JSON object"):
        read_source(str(listing))


class TestWitnessFile:
    def test_bundled_fixture_builds(self) -> None:
        cfg = parse_config("rigidity", read_source("case1_translation"))
        assert isinstance(cfg, WitnessFile)
        witness, model, model_prime, split = cfg.build()
        assert witness.h == (3, 4, 5, 6, 7, 0, 1, 2)
        assert model == model_prime
        assert split.window_multiplier == 4

    def test_size_mismatch(self) -> None:
        data = read_source("case1_translation")
        data["h"] = data["h"][:5]
        with pytest.raises(ConfigError, match="do not match the 8-state model"):
            parse_config("rigidity", data)

    def test_window_multiplier_floor(self) -> None:
        data = read_source("case1_translation")
        data["window_multiplier"] = 2
        with pytest.raises(ConfigError, match="rigidity config is invalid"):
            parse_config("rigidity", data)


class TestSamplesFile:
    def test_needs_exactly_one_source(self) -> None:
        with pytest.raises(ConfigError, match="exactly one"):
            parse_config("bilipschitz", {})
        with pytest.raises(ConfigError, match="exactly one"):
            parse_config("bilipschitz", {"samples": {"0": 0}, "map": {"kind": "affine"}})

    def test_affine_map(self) -> None:
        cfg = SamplesFile(window=3, map={"kind": "affine", "sign": -1, "constant": 2})
        samples, config = cfg.build()
        assert samples == {x: 2 - x for x in range(-3, 4)}
        assert config.ambiguity_threshold is None

    def test_explicit_samples(self) -> None:
        samples, _ = SamplesFile(samples={"1": 1, "-1": -1}).build()
        assert samples == {1: 1, -1: -1}


def test_skew_demo_validation() -> None:
    with pytest.raises(ValidationError, match="below the cocycle level"):
        SkewDemoConfig(level=1, cocycle_level=2)
    with pytest.raises(ValidationError, match="Unknown chain preset"):
        SkewDemoConfig(chain="septadic")
    c, c_prime = SKEW_DEMO_PRESETS["default"].cocycles()
    assert c.table == (0, 3)
    assert c_prime.is_trivial


def test_inline_chain() -> None:
    cfg = CoboundaryConfig(
        chain={"base": 2, "prefix": [], "tail": [2]},
        cocycle={"group": "Z/3", "table": [0, 1]},
    )
    assert cfg.levels == []
    assert cfg.cocycle.build(CHAIN_PRESETS["dyadic"]).table == (0, 1)


def test_unknown_group() -> None:
    with pytest.raises(ValidationError):
        CoboundaryConfig(cocycle={"group": "Q8x", "table": [0, 1]})


class TestLoadConfig:
    def test_run_config_rejects_unknown_preset(self) -> None:
        with pytest.raises(ValidationError, match="Unknown preset"):
            RunConfig(command="skew-demo", preset="huge")

    def test_skew_demo_defaults_to_preset(self) -> None:
        assert load_config(RunConfig(command="skew-demo")) is SKEW_DEMO_PRESETS["default"]
        assert load_config(RunConfig(command="skew-demo", preset="sixfold")) is SKEW_DEMO_PRESETS["sixfold"]

    def test_preset_only_for_skew_demo(self) -> None:
        with pytest.raises(ConfigError, match="--preset only applies"):
            load_config(RunConfig(command="rigidity", preset="default"))

    def test_default_sources(self) -> None:
        assert isinstance(load_config(RunConfig(command="rigidity")), WitnessFile)
        cfg = load_config(RunConfig(command="coboundary"))
        assert isinstance(cfg, CoboundaryConfig)
        assert cfg.levels == [1, 2, 3]
