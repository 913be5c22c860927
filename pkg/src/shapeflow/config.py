"""Run configuration: nested sections, INI round-trip, stable hashing.

Every tunable in the pipeline lives here so that a run is reproducible from
(config file, seed) alone.  Section dataclasses are re-exported by the
modules that own them (e.g. ``shapeflow.flow.FlowConfig``).
"""

from __future__ import annotations

import configparser
import dataclasses
import hashlib
import io
import json
from dataclasses import dataclass, field


class ConfigError(ValueError):
    pass


@dataclass
class DataConfig:
    canvas: int = 64
    max_objects: int = 4
    small_radius: int = 6
    large_radius: int = 11
    crop_margin: int = 2


@dataclass
class EncoderConfig:
    d_lm: int = 128
    lm_layers: int = 4
    lm_heads: int = 4
    vit_patch: int = 8
    d_vit: int = 96
    vit_layers: int = 2
    vit_heads: int = 4
    # Optional lexical pretraining (next-token + patch-order prediction)
    # run once before stage 1; the encoder is frozen afterwards either way.
    lexical_pretrain: bool = False
    pretrain_steps: int = 1500
    pretrain_batch: int = 32
    pretrain_lr: float = 3e-4


@dataclass
class BridgeConfig:
    d_mid: int = 512
    d_cond: int = 192
    d_y: int = 192


@dataclass
class DenoiserConfig:
    depth: int = 6
    d_cond: int = 192
    heads: int = 6
    latent_patch: int = 2
    space_to_depth: int = 4
    mlp_ratio: float = 3.0
    zero_init: bool = True


@dataclass
class FlowConfig:
    timestep_dist: str = "logit_normal"  # or "uniform"
    sampler_steps: int = 32
    shift: float = 1.0
    guidance: float = 3.0
    p_drop: float = 0.1
    w_t: str = "unit"

    def __post_init__(self):
        if self.sampler_steps < 1:
            raise ConfigError("sampler_steps must be >= 1")
        if not 0.0 <= self.p_drop < 1.0:
            raise ConfigError("p_drop must be in [0, 1)")
        if self.guidance < 0.0:
            raise ConfigError("guidance must be >= 0")
        if self.timestep_dist not in ("logit_normal", "uniform"):
            raise ConfigError(f"unknown timestep_dist {self.timestep_dist!r}")


@dataclass
class StageConfig:
    stage: int = 1
    total_steps: int = 2000
    batch_size: int = 32
    lr: float = 1e-4
    warmup_frac: float = 0.05
    task_weights: dict = field(default_factory=dict)
    lora_rank: int = 8
    lora_alpha: float = 16.0
    replay_ratio: float = 0.2
    checkpoint_every: int = 2000

    def __post_init__(self):
        if self.stage not in (0, 1, 2):
            raise ConfigError(f"stage must be 0, 1 or 2, got {self.stage}")
        if not self.task_weights:
            self.task_weights = dict(DEFAULT_TASK_WEIGHTS[self.stage])


DEFAULT_TASK_WEIGHTS = {
    0: {"t2i": 1.0},
    1: {"t2i": 3.0, "i2i": 1.0},
    2: {"edit": 1.0, "objects": 4.0},
}


@dataclass
class EvalConfig:
    n_prompts_per_category: int = 50
    n_samples_per_prompt: int = 4
    recon_images: int = 100
    r_grid: tuple = (0.0, 0.25, 0.5, 0.75, 1.0)
    probe_r: float = 0.5
    eval_seed: int = 1234


@dataclass
class RunConfig:
    seed: int = 0
    out_dir: str = "runs/default"
    determinism: bool = False
    data: DataConfig = field(default_factory=DataConfig)
    encoder: EncoderConfig = field(default_factory=EncoderConfig)
    bridge: BridgeConfig = field(default_factory=BridgeConfig)
    denoiser: DenoiserConfig = field(default_factory=DenoiserConfig)
    flow: FlowConfig = field(default_factory=FlowConfig)
    stage0: StageConfig = field(default_factory=lambda: StageConfig(stage=0, lr=2e-4))
    stage1: StageConfig = field(default_factory=lambda: StageConfig(stage=1))
    stage2: StageConfig = field(default_factory=lambda: StageConfig(stage=2, lr=5e-5))
    eval: EvalConfig = field(default_factory=EvalConfig)

    def stage_config(self, stage: int) -> StageConfig:
        cfg = {0: self.stage0, 1: self.stage1, 2: self.stage2}[stage]
        if cfg.stage != stage:
            raise ConfigError(f"stage{stage} section declares stage={cfg.stage}")
        return cfg

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def config_hash(self) -> str:
        """Stable under key reordering; independent of the output location."""
        payload = self.to_dict()
        payload.pop("out_dir")
        canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


_SECTIONS = (
    "data", "encoder", "bridge", "denoiser", "flow",
    "stage0", "stage1", "stage2", "eval",
)


def from_dict(payload: dict) -> RunConfig:
    kwargs = {}
    types = {f.name: f.type for f in dataclasses.fields(RunConfig)}
    section_types = {
        "data": DataConfig, "encoder": EncoderConfig, "bridge": BridgeConfig,
        "denoiser": DenoiserConfig, "flow": FlowConfig,
        "stage0": StageConfig, "stage1": StageConfig, "stage2": StageConfig,
        "eval": EvalConfig,
    }
    for key, value in payload.items():
        if key in section_types:
            if not isinstance(value, dict):
                raise ConfigError(f"section {key!r} must be a table")
            sect = dict(value)
            if "r_grid" in sect:
                sect["r_grid"] = tuple(sect["r_grid"])
            kwargs[key] = section_types[key](**sect)
        elif key in types:
            kwargs[key] = value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    return RunConfig(**kwargs)


def save_ini(cfg: RunConfig, path: str) -> None:
    parser = configparser.ConfigParser()
    payload = cfg.to_dict()
    parser["run"] = {}
    for key in ("seed", "out_dir", "determinism"):
        parser["run"][key] = json.dumps(payload[key])
    for section in _SECTIONS:
        parser[section] = {k: json.dumps(v) for k, v in payload[section].items()}
    buf = io.StringIO()
    parser.write(buf)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(buf.getvalue())


def load_ini(path: str) -> RunConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    payload: dict = {}
    for section in parser.sections():
        items = {}
        for key, raw in parser[section].items():
            try:
                items[key] = json.loads(raw)
            except json.JSONDecodeError:
                items[key] = raw  # bare strings allowed for convenience
        if section == "run":
            payload.update(items)
        else:
            payload[section] = items
    return from_dict(payload)


def toy_config() -> RunConfig:
    return RunConfig()


def reference_config() -> RunConfig:
    """Full-scale reference hyperparameters; not runnable at desk scale."""
    cfg = RunConfig()
    cfg.bridge.d_mid = 4096
    for stage in (cfg.stage0, cfg.stage1, cfg.stage2):
        stage.batch_size = 128
    cfg.stage2.lora_rank = 32
    cfg.stage2.lora_alpha = 32.0
    return cfg
