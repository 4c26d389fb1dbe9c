"""Run configuration of the command line interface

A run configuration is a JSON object with one object per section.
Missing values take the defaults of the corresponding configuration
dataclass, unknown sections or keys are rejected.
"""
from __future__ import annotations

import copy
import dataclasses
import json
import pathlib
from typing import Tuple

from ..errors import ConfigError
from . import ppid


@dataclasses.dataclass(frozen=True)
class DataConfig:
    """Synthetic dataset generation settings"""
    #: number of training signals
    n_train: int = 2000
    #: number of held-out signals
    n_eval: int = 500
    #: standard deviation of the additive noise
    noise_sigma: float = 0.3
    #: maximum absolute slope of the linear drift
    drift: float = 0.5
    #: maximum number of events per signal
    max_active: int = 2
    #: generator seed
    seed: int = 42
    #: repetition time in seconds
    tr: float = 0.72
    #: precision of the stored signals ("f32" or "f64")
    precision: str = "f32"

    def __post_init__(self):
        if self.n_train < 0 or self.n_eval < 0:
            raise ConfigError("Signal counts must not be negative")
        if self.precision not in ("f32", "f64"):
            raise ConfigError(f"Unknown precision '{self.precision}'")


@dataclasses.dataclass(frozen=True)
class BenchConfig:
    """Throughput benchmark settings"""
    #: worker counts to compare
    worker_counts: Tuple[int, ...] = (1, 2, 4)
    #: total number of batches per worker count
    steps: int = 200

    def __post_init__(self):
        object.__setattr__(self, "worker_counts",
                           tuple(int(w) for w in self.worker_counts))
        if not self.worker_counts or min(self.worker_counts) < 1:
            raise ConfigError(f"Invalid worker counts {self.worker_counts}")
        if self.steps < 1:
            raise ConfigError(f"Invalid step budget {self.steps}")


@dataclasses.dataclass(frozen=True)
class PathConfig:
    """Input and output locations"""
    #: directory of the generated datasets and designs
    data_dir: str = "data"
    #: output directory of reports and models
    out: str = "out"
    #: model file (defaults to `out`/model.dpsg)
    model: str = None

    @property
    def model_path(self):
        if self.model:
            return pathlib.Path(self.model)
        return pathlib.Path(self.out) / "model.dpsg"


def _section_classes():
    # imported here to keep the low-level packages free of this module
    from ..dist import ServerConfig, TrainRunConfig, WorkerConfig
    from ..model import ModelConfig
    from ..odl import ODLConfig
    return {
        "model": ModelConfig,
        "server": ServerConfig,
        "worker": WorkerConfig,
        "run": TrainRunConfig,
        "data": DataConfig,
        "odl": ODLConfig,
        "bench": BenchConfig,
        "paths": PathConfig,
    }


def default_sections():
    """Return the default values of all sections"""
    sections = {}
    for name, cls in _section_classes().items():
        sections[name] = {ff.name: copy.deepcopy(ff.default)
                          for ff in dataclasses.fields(cls)}
    return sections


def _parse_override(item):
    if "=" not in item or "." not in item.split("=", 1)[0]:
        raise ConfigError(f"Override must be 'section.key=value': '{item}'")
    key, text = item.split("=", 1)
    section, name = key.split(".", 1)
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        value = text
    return section, name, value


class RunConfig:
    def __init__(self, sections=None):
        """Resolved configuration of a command line run"""
        self.sections = default_sections()
        if sections:
            self.update(sections)

    def set(self, section, key, value):
        if section not in self.sections:
            raise ConfigError(f"Unknown configuration section '{section}'")
        if key not in self.sections[section]:
            raise ConfigError(f"Unknown key '{key}' in section '{section}'")
        self.sections[section][key] = value

    def update(self, sections: dict):
        if not isinstance(sections, dict):
            raise ConfigError("Configuration must be a JSON object")
        for section, values in sections.items():
            if not isinstance(values, dict):
                if section in self.sections:
                    raise ConfigError(f"Section '{section}' must be an object")
                raise ConfigError(
                    f"Unknown configuration section '{section}'")
            for key, value in values.items():
                self.set(section, key, value)

    def build(self, section):
        """Instantiate the configuration dataclass of `section`"""
        cls = _section_classes()[section]
        try:
            return cls(**self.sections[section])
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"Invalid '{section}' configuration: {exc}") \
                from exc

    def to_dict(self):
        return copy.deepcopy(self.sections)

    def resolved(self):
        """All sections plus version, identifiers and pipeline hash"""
        from .._version import __version__
        ppids = {name: self.build(name).get_ppid()
                 for name in ["model", "server", "run", "odl"]}
        return {
            "dcanum_version": __version__,
            "sections": self.to_dict(),
            "ppids": ppids,
            "pipeline_hash": ppid.compute_pipeline_hash(*ppids.values()),
        }

    def write_resolved(self, out_dir):
        """Write `config.json` into `out_dir`"""
        path = pathlib.Path(out_dir) / "config.json"
        path.write_text(json.dumps(self.resolved(), indent=2,
                                   sort_keys=True, default=list) + "\n")
        return path


def load_run_config(path=None, overrides=()):
    """Load a JSON run configuration and apply `section.key=value` items"""
    cfg = RunConfig()
    if path is not None:
        try:
            data = json.loads(pathlib.Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"Invalid JSON in '{path}': {exc}") from exc
        cfg.update(data)
    for item in overrides:
        cfg.set(*_parse_override(item))
    return cfg
