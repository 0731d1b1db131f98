"""Input schemas, presets and config loading.

Every JSON input is validated by a pydantic schema before any computation
starts. A config source is either a path or the name of a bundled fixture
under ``coe_rigidity/data``. Schema failures are re-raised as
:class:`~coe_rigidity.errors.ConfigError`.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError, field_validator, model_validator

from coe_rigidity.cocycle.level_cocycle import LevelCocycle
from coe_rigidity.errors import ConfigError
from coe_rigidity.group.bilipschitz import BiLipschitzConfig, sample_window
from coe_rigidity.group.dihedral import DihedralElement, left_translation_conjugate, right_translation_conjugate
from coe_rigidity.group.finite_table import FiniteGroupTable
from coe_rigidity.odometer.chain import CHAIN_PRESETS, DivisibilityChain
from coe_rigidity.odometer.model import OdometerModel
from coe_rigidity.rigidity.extraction import SplitConfig
from coe_rigidity.rigidity.models import DinftyModel, ModelKind
from coe_rigidity.rigidity.witness import CoeWitness

Command = Literal["coboundary", "skew-demo", "rigidity", "bilipschitz", "freeness-sweep"]


class _Schema(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, protected_namespaces=())


class ChainSchema(_Schema):
    base: int
    prefix: list[int] = Field(default_factory=list)
    tail: list[int] = Field(default_factory=lambda: [2])

    @model_validator(mode="after")
    def _valid_chain(self) -> ChainSchema:
        self.build()
        return self

    def build(self) -> DivisibilityChain:
        return DivisibilityChain(base=self.base, prefix=tuple(self.prefix), tail=tuple(self.tail))


def _check_chain_ref(value: Any) -> Any:
    if isinstance(value, str) and value not in CHAIN_PRESETS:
        raise ValueError(f"Unknown chain preset '{value}'. Available: {list(CHAIN_PRESETS)}")
    return value


ChainRef = Annotated[str | ChainSchema, BeforeValidator(_check_chain_ref)]


def build_chain(ref: ChainRef) -> DivisibilityChain:
    return CHAIN_PRESETS[ref] if isinstance(ref, str) else ref.build()


class GroupTableSchema(_Schema):
    order: int
    identity: int = 0
    table: list[list[int]]
    name: str = ""


GroupRef = str | GroupTableSchema


def build_group(ref: GroupRef) -> FiniteGroupTable:
    if isinstance(ref, str):
        return FiniteGroupTable.named(ref)
    return FiniteGroupTable.from_json(ref.model_dump())


class CocycleSchema(_Schema):
    """c(1, x) = table[x mod nⱼ] at level j, values as element indices of ``group``."""

    group: GroupRef
    level: int = Field(default=1, ge=1)
    table: list[int]

    @field_validator("group")
    @classmethod
    def _known_group(cls, value: GroupRef) -> GroupRef:
        build_group(value)
        return value

    def build(self, chain: DivisibilityChain) -> LevelCocycle:
        c = LevelCocycle(target=build_group(self.group), level=self.level, table=tuple(self.table))
        c.check_chain(chain)
        return c


class CoboundaryConfig(_Schema):
    chain: ChainRef = "dyadic"
    cocycle: CocycleSchema
    levels: list[int] = Field(default_factory=list)  # essential-value levels to report

    @model_validator(mode="after")
    def _matches_chain(self) -> CoboundaryConfig:
        self.cocycle.build(build_chain(self.chain))
        return self


class SkewDemoConfig(_Schema):
    """The skew pair (c, c′) over one odometer model.

    Attributes:
        table_prime: c′ on the same level as c; None means c′ ≡ e.
        window: coe verification window; None means 2·n_L.
        search_level: Level of the exhaustive conjugacy search; None skips it.
    """

    chain: ChainRef = "dyadic"
    level: int = Field(default=6, ge=1)
    group: GroupRef = "S3"
    cocycle_level: int = Field(default=1, ge=1)
    table: list[int] = Field(default_factory=lambda: [0, 3])
    table_prime: list[int] | None = None
    window: int | None = Field(default=None, ge=1)
    search_level: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _consistent(self) -> SkewDemoConfig:
        if self.level < self.cocycle_level:
            raise ValueError(f"model level {self.level} is below the cocycle level {self.cocycle_level}")
        self.cocycles()
        return self

    def base(self, level: int | None = None) -> OdometerModel:
        return OdometerModel(build_chain(self.chain), level if level is not None else self.level)

    def cocycles(self) -> tuple[LevelCocycle, LevelCocycle]:
        chain = build_chain(self.chain)
        group = build_group(self.group)
        c = CocycleSchema(group=self.group, level=self.cocycle_level, table=self.table).build(chain)
        if self.table_prime is None:
            c_prime = LevelCocycle.constant(group, chain, self.cocycle_level, group.identity)
        else:
            c_prime = CocycleSchema(group=self.group, level=self.cocycle_level, table=self.table_prime).build(chain)
        return c, c_prime


SKEW_DEMO_PRESETS = {
    "default": SkewDemoConfig(),
    # Z/3 is abelian, so its center blocks the certificate
    "abelian": SkewDemoConfig(group="Z/3", table=[0, 1]),
    # 3 divides the tail, so the reduced cocycle dies at level 2
    "sixfold": SkewDemoConfig(chain="sixfold", level=2, table=[0, 3, 0, 0, 0, 0]),
}


class ModelSchema(_Schema):
    kind: ModelKind
    chain: ChainRef = "dyadic"
    level: int = Field(ge=1)
    rotation: Literal[1, -1] = 1
    reflection_offset: int = 0

    @model_validator(mode="after")
    def _valid_model(self) -> ModelSchema:
        self.build()
        return self

    def build(self) -> DinftyModel:
        base = OdometerModel(build_chain(self.chain), self.level)
        return DinftyModel(self.kind, base, self.rotation, self.reflection_offset)


class WitnessFile(_Schema):
    """A coe witness between two D∞ models, pairs written as [k, t] for sᵏtᵗ."""

    model: ModelSchema
    model_prime: ModelSchema
    h: list[int]
    c_s: list[tuple[int, Literal[0, 1]]]
    c_t: list[tuple[int, Literal[0, 1]]]
    window_multiplier: int = Field(default=4, ge=4)
    bound: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _sizes(self) -> WitnessFile:
        size = self.model.build().size
        lengths = {"h": len(self.h), "c_s": len(self.c_s), "c_t": len(self.c_t)}
        bad = {name: n for name, n in lengths.items() if n != size}
        if bad:
            raise ValueError(f"witness tables {bad} do not match the {size}-state model")
        return self

    def build(self) -> tuple[CoeWitness, DinftyModel, DinftyModel, SplitConfig]:
        witness = CoeWitness(
            h=tuple(self.h),
            c_s=tuple(DihedralElement(k, r) for k, r in self.c_s),
            c_t=tuple(DihedralElement(k, r) for k, r in self.c_t),
        )
        split = SplitConfig(window_multiplier=self.window_multiplier, bound=self.bound)
        return witness, self.model.build(), self.model_prime.build(), split


class MapSchema(_Schema):
    """A map of Z to sample: x ↦ sign·x + constant, or g-translation transported through π."""

    kind: Literal["affine", "left", "right"]
    sign: Literal[1, -1] = 1
    constant: int = 0
    element: tuple[int, Literal[0, 1]] = (0, 1)


class SamplesFile(_Schema):
    window: int = Field(default=50, ge=1)
    samples: dict[int, int] | None = None
    map: MapSchema | None = None
    ambiguity_threshold: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _one_source(self) -> SamplesFile:
        if (self.samples is None) == (self.map is None):
            raise ValueError("give exactly one of 'samples' and 'map'")
        return self

    def build(self) -> tuple[dict[int, int], BiLipschitzConfig]:
        config = BiLipschitzConfig(ambiguity_threshold=self.ambiguity_threshold)
        if self.samples is not None:
            return dict(self.samples), config
        spec = self.map
        if spec.kind == "affine":
            return sample_window(lambda x: spec.sign * x + spec.constant, self.window), config
        g = DihedralElement(*spec.element)
        f = left_translation_conjugate(g) if spec.kind == "left" else right_translation_conjugate(g)
        return sample_window(f, self.window), config


class FreenessConfig(_Schema):
    model: ModelSchema
    window: int | None = Field(default=None, ge=1)


class RunConfig(_Schema):
    """One CLI invocation; flags override values read from files."""

    command: Command
    config: str | None = None
    out: Path | None = None
    level: int | None = Field(default=None, ge=1)
    window: int | None = Field(default=None, ge=1)
    format: Literal["json", "text"] = "text"
    trace_level: int = Field(default=0, ge=0, le=3)
    preset: str | None = None

    @field_validator("preset")
    @classmethod
    def _known_preset(cls, value: str | None) -> str | None:
        if value is not None and value not in SKEW_DEMO_PRESETS:
            raise ValueError(f"Unknown preset '{value}'. Available: {list(SKEW_DEMO_PRESETS)}")
        return value


SCHEMAS: dict[str, type[_Schema]] = {
    "coboundary": CoboundaryConfig,
    "skew-demo": SkewDemoConfig,
    "rigidity": WitnessFile,
    "bilipschitz": SamplesFile,
    "freeness-sweep": FreenessConfig,
}

# Bundled fixture used when no --config is given.
DEFAULT_SOURCES = {
    "coboundary": "flagship_dyadic",
    "rigidity": "case1_translation",
    "bilipschitz": "t_translation",
    "freeness-sweep": "freeness_dyadic",
}


def bundled_names() -> list[str]:
    data = resources.files("coe_rigidity") / "data"
    return sorted(p.name.removesuffix(".json") for p in data.iterdir() if p.name.endswith(".json"))


def read_source(source: str) -> dict[str, Any]:
    """JSON object from a path, or from the bundled fixture of that name."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
    else:
        bundled = resources.files("coe_rigidity") / "data" / f"{source}.json"
        if not bundled.is_file():
            raise ConfigError(f"No config file or bundled fixture named '{source}'. Bundled: {bundled_names()}")
        text = bundled.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: expected a JSON object, got {type(data).__name__}")
    return data


def parse_config(command: str, data: dict[str, Any]) -> _Schema:
    try:
        return SCHEMAS[command].model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"{command} config is invalid:\n{exc}") from exc


def load_config(run: RunConfig) -> _Schema:
    """The validated input for ``run.command``."""
    if run.command == "skew-demo" and run.config is None:
        return SKEW_DEMO_PRESETS[run.preset or "default"]
    if run.preset is not None and run.command != "skew-demo":
        raise ConfigError(f"--preset only applies to skew-demo, not {run.command}")
    source = run.config if run.config is not None else DEFAULT_SOURCES[run.command]
    return parse_config(run.command, read_source(source))
