"""Run configuration: the INI ``[etg]`` section and its in-memory form."""

import configparser
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Tuple

from etgeom.conversions import format_number

logger = logging.getLogger(__name__)

SECTION = "etg"
DEFAULT_CONFIG_PATH = "~/.etg.config"
DEFAULT_TOLERANCE = 1e-8
TOLERANCE_ENV = "ETG_TOLERANCE"
MODES = ("map", "elliptic", "involutions", "sqrt")


def default_tolerance():
    """Reporting tolerance from ETG_TOLERANCE, else 1e-8."""
    value = os.environ.get(TOLERANCE_ENV)
    if value is None or not value.strip():
        return DEFAULT_TOLERANCE
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"{TOLERANCE_ENV} must be a number, got {value!r}") from None


def parse_triple(text):
    """Parse "a,b,c" into a tuple of three floats."""
    if isinstance(text, (tuple, list)):
        parts = list(text)
    else:
        parts = [p for p in str(text).split(",") if p.strip()]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise ValueError(f"expected three comma-separated numbers, got {text!r}") from None


@dataclass
class RunConfig:
    delta: Tuple[float, float, float] = (-0.05, 0.05, -0.05)
    x0: Tuple[float, float, float] = (1.0, 0.5, 0.5)
    steps: int = 10
    mode: str = "map"
    nu1: Optional[float] = None
    seed: Optional[int] = None
    tolerances: Dict[str, float] = field(default_factory=dict)
    mesh_resolution: int = 64
    ruling_extent: float = 1.0

    def __post_init__(self):
        self.delta = parse_triple(self.delta)
        self.x0 = parse_triple(self.x0)
        self.steps = int(self.steps)
        if self.steps < 0:
            raise ValueError(f"steps must be non-negative, got {self.steps!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if self.nu1 is not None:
            self.nu1 = float(self.nu1)
        if self.seed is not None:
            self.seed = int(self.seed)
        self.tolerances = {name: float(value) for name, value in self.tolerances.items()}
        self.mesh_resolution = int(self.mesh_resolution)
        if self.mesh_resolution < 2:
            raise ValueError(f"mesh-resolution must be at least 2, got {self.mesh_resolution!r}")
        self.ruling_extent = float(self.ruling_extent)
        if not self.ruling_extent > 0.0:
            raise ValueError(f"ruling-extent must be positive, got {self.ruling_extent!r}")

    def tolerance(self, suite):
        """Tolerance for a verification suite: per-suite key, then global, then environment."""
        if suite in self.tolerances:
            return self.tolerances[suite]
        if "default" in self.tolerances:
            return self.tolerances["default"]
        return default_tolerance()


def load_config(config_path):
    """Read an INI config file and return a dict from the [etg] section."""
    path = Path(config_path).expanduser()
    if not path.is_file():
        return {}
    config = configparser.ConfigParser()
    config.read(path)
    if SECTION not in config:
        return {}
    return dict(config[SECTION])


def config_options(cfg):
    """Convert raw [etg] strings into RunConfig keyword arguments."""
    options = {}
    if "delta" in cfg:
        options["delta"] = parse_triple(cfg["delta"])
    if "x0" in cfg:
        options["x0"] = parse_triple(cfg["x0"])
    if "steps" in cfg:
        options["steps"] = int(cfg["steps"])
    if "mode" in cfg:
        options["mode"] = cfg["mode"].strip()
    if "nu1" in cfg:
        options["nu1"] = float(cfg["nu1"])
    if "seed" in cfg:
        options["seed"] = int(cfg["seed"])
    if "mesh-resolution" in cfg:
        options["mesh_resolution"] = int(cfg["mesh-resolution"])
    if "ruling-extent" in cfg:
        options["ruling_extent"] = float(cfg["ruling-extent"])
    tolerances = {}
    if "tolerance" in cfg:
        tolerances["default"] = float(cfg["tolerance"])
    for key, value in cfg.items():
        if key.startswith("tolerance-"):
            tolerances[key[len("tolerance-"):]] = float(value)
    if tolerances:
        options["tolerances"] = tolerances
    return options


def parse_config(text):
    """Build a RunConfig from INI text with an [etg] section."""
    parser = configparser.ConfigParser()
    parser.read_string(text)
    if SECTION not in parser:
        raise ValueError(f"config text has no [{SECTION}] section")
    return RunConfig(**config_options(dict(parser[SECTION])))


def serialize_config(cfg):
    """INI text for a RunConfig; parse_config reads it back unchanged."""
    lines = [f"[{SECTION}]"]
    lines.append("delta = " + ",".join(format_number(v) for v in cfg.delta))
    lines.append("x0 = " + ",".join(format_number(v) for v in cfg.x0))
    lines.append(f"steps = {cfg.steps}")
    lines.append(f"mode = {cfg.mode}")
    if cfg.nu1 is not None:
        lines.append(f"nu1 = {format_number(cfg.nu1)}")
    if cfg.seed is not None:
        lines.append(f"seed = {cfg.seed}")
    for name in sorted(cfg.tolerances):
        key = "tolerance" if name == "default" else f"tolerance-{name}"
        lines.append(f"{key} = {format_number(cfg.tolerances[name])}")
    lines.append(f"mesh-resolution = {cfg.mesh_resolution}")
    lines.append(f"ruling-extent = {format_number(cfg.ruling_extent)}")
    return "\n".join(lines) + "\n"
