import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

import numpy as np
from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .exceptions import ConfigurationError
from .oracle import DEFAULT_AZIMUTHAL_NODES, QuadratureGrid
from .perturb import NORMAL_PRESSURE, NORMAL_TEMPERATURE
from .potentials import (
    Constant,
    DisplacedQuadratic,
    GeneralizedVdW,
    LennardJones,
    Linear,
    PotentialSpec,
    Quadratic,
)
from .radial import DEFAULT_RADIAL_NODES

logger = logging.getLogger(__name__)

CommandName = Literal["spectrum", "shift", "verify", "scan", "regime"]
PotentialName = Literal["none", "linear", "quadratic", "dq", "vdw", "lj", "constant"]
OutputFormat = Literal["csv", "json", "markdown", "html"]
ScanVariable = Literal["lambda", "z0", "gamma", "beta", "d"]

# which potentials each scan variable can drive
SCAN_TARGETS = {
    "lambda": ("linear", "quadratic", "dq"),
    "z0": ("dq",),
    "gamma": ("vdw",),
    "beta": ("vdw",),
    "d": ("lj",),
}


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True, frozen=True)

    command: CommandName = Field(description="Command to run")
    n_min: int = Field(1, ge=1, description="Smallest principal quantum number")
    n_max: int = Field(3, ge=1, description="Largest principal quantum number")
    Z: int = Field(1, ge=1, description="Nuclear charge")
    potential: PotentialName = Field("none", description="Perturbing potential")
    strength: float = Field(1.0, alias="lambda", description="lambda, Ry/a0 (linear) or Ry/a0^2")
    z0: float = Field(0.0, description="Displacement of the quadratic well, a0")
    gamma: float = Field(1.0, description="van der Waals coupling, Ry/a0^2")
    beta: float = Field(1.5, description="van der Waals anisotropy")
    d: float = Field(100.0, gt=0, description="Wall distance, a0")
    constant: float = Field(1.0, description="Constant shift, Ry")
    format: OutputFormat = Field("csv", description="Output format")
    tol: float = Field(1e-9, gt=0, description="Relative verification tolerance")
    out: Optional[Path] = Field(None, description="Output file; stdout when absent")
    alpha2: Optional[float] = Field(None, ge=0, description="Override of alpha^2")
    radial_nodes: int = Field(DEFAULT_RADIAL_NODES, gt=0, description="Gauss-Laguerre nodes")
    polar_nodes: Optional[int] = Field(None, gt=0, description="Gauss-Legendre nodes in cos(theta)")
    azimuthal_nodes: int = Field(DEFAULT_AZIMUTHAL_NODES, gt=0, description="Trapezoid nodes in phi")
    pressure: float = Field(NORMAL_PRESSURE, gt=0, description="Gas pressure, Pa")
    temperature: float = Field(NORMAL_TEMPERATURE, gt=0, description="Gas temperature, K")
    scan_variable: Optional[ScanVariable] = Field(None, description="Parameter swept by scan")
    scan_start: Optional[float] = Field(None, description="First scan value")
    scan_stop: Optional[float] = Field(None, description="Last scan value, included when on the grid")
    scan_step: Optional[float] = Field(None, description="Scan increment")
    inject_fault: bool = Field(False, description="Perturb the first closed-form value checked by verify")
    verbose: bool = Field(False, description="Debug logging")

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunConfig":
        if self.n_min > self.n_max:
            raise ValueError(f"empty n range: n_min={self.n_min} > n_max={self.n_max}")
        if self.command == "scan":
            missing = [
                name
                for name in ("scan_variable", "scan_start", "scan_stop", "scan_step")
                if getattr(self, name) is None
            ]
            if missing:
                raise ValueError(f"scan needs {', '.join(missing)}")
            if not self.scan_step > 0:
                raise ValueError(f"scan_step={self.scan_step} must be positive")
            if self.scan_stop < self.scan_start:
                raise ValueError(f"scan_stop={self.scan_stop} precedes scan_start={self.scan_start}")
            if self.potential not in SCAN_TARGETS[self.scan_variable]:
                raise ValueError(
                    f"scan_variable={self.scan_variable} does not apply to potential={self.potential}"
                )
            if self.scan_variable == "d" and not self.scan_start > 0:
                raise ValueError(f"a d scan must start above 0, got {self.scan_start}")
        return self

    def potential_spec(self, **overrides: float) -> Optional[PotentialSpec]:
        """The configured potential; ``overrides`` replace parameters by their config key."""
        values = {
            "lambda": self.strength,
            "z0": self.z0,
            "gamma": self.gamma,
            "beta": self.beta,
            "d": self.d,
            "constant": self.constant,
        }
        values.update(overrides)
        if self.potential == "none":
            return None
        if self.potential == "linear":
            return Linear(values["lambda"])
        if self.potential == "quadratic":
            return Quadratic(values["lambda"])
        if self.potential == "dq":
            return DisplacedQuadratic(values["lambda"], values["z0"])
        if self.potential == "vdw":
            return GeneralizedVdW.from_beta(values["gamma"], values["beta"])
        if self.potential == "lj":
            return LennardJones(values["d"])
        return Constant(values["constant"])

    def quadrature_grid(self, l_max: int) -> QuadratureGrid:
        return QuadratureGrid.build(
            l_max, radial=self.radial_nodes, polar=self.polar_nodes, azimuthal=self.azimuthal_nodes
        )

    def scan_values(self) -> List[float]:
        """Grid start, start+step, ... up to stop, which counts when within 1e-12 step of the grid."""
        count = int(np.floor((self.scan_stop - self.scan_start) / self.scan_step + 1e-12)) + 1
        return [float(v) for v in self.scan_start + self.scan_step * np.arange(count)]


def _key_map() -> Dict[str, str]:
    keys = {}
    for name, info in RunConfig.model_fields.items():
        keys[name.lower()] = info.alias or name
        if info.alias:
            keys[info.alias.lower()] = info.alias
    return keys


def normalize_key(key: str) -> str:
    """Map a config key like ``N-MAX`` or ``lambda`` onto its RunConfig name."""
    normalized = key.strip().lower().replace("-", "_")
    keys = _key_map()
    if normalized not in keys:
        raise ConfigurationError(f"unknown configuration key {key!r}")
    return keys[normalized]


def read_config_file(path: Path) -> Dict[str, str]:
    """Flat ``key=value`` file, one entry per line, ``#`` comments allowed."""
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"config file {path} does not exist")
    values = {}
    for key, value in dotenv_values(path).items():
        if value is None:
            raise ConfigurationError(f"{path}: key {key!r} has no value")
        values[normalize_key(key)] = value
    logger.debug("read %d settings from %s", len(values), path)
    return values


def build_run_config(flags: Mapping[str, Any], config_path: Optional[Path] = None) -> RunConfig:
    """RunConfig from command-line ``flags`` over an optional config file over the defaults.

    ``flags`` must hold only the options actually given on the command line.
    """
    merged: Dict[str, Any] = read_config_file(config_path) if config_path else {}
    merged.update({normalize_key(key): value for key, value in flags.items()})
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        raise ConfigurationError(str(e)) from e
