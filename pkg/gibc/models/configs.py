"""
Pydantic models for run configuration files.
"""

import math
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from gibc.surface.impedance import ImpedanceComponent


class ComplexValue(BaseModel):
    """Complex number written as ``{"re": ..., "im": ...}`` in JSON."""

    re: float = Field(0.0, description="Real part")
    im: float = Field(0.0, description="Imaginary part")

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def of(cls, value: complex) -> "ComplexValue":
        return cls(re=float(value.real), im=float(value.imag))


class FourierTerm(BaseModel):
    """One angular harmonic ``c cos(m t) + s sin(m t)``."""

    order: int = Field(..., ge=1)
    cos: ComplexValue = Field(default_factory=ComplexValue)
    sin: ComplexValue = Field(default_factory=ComplexValue)


class ScatterConfig(BaseModel):
    """Parameters of the forward problem."""

    wavenumber: float = Field(6.0, gt=0, description="Wavenumber k")
    radius: float = Field(1.0, gt=0, description="Radius R of the artificial boundary")
    dtn_modes: Optional[int] = Field(
        None, description="Fourier truncation of the DtN map; defaults to ceil(kR) + 16"
    )
    fe_order: Literal[1, 2] = Field(2, description="Lagrange order of the volume space")
    dimensionless_impedance: bool = Field(
        True, description="Impedances are given as (lambda/k, k*mu)"
    )

    @property
    def modes(self) -> int:
        if self.dtn_modes is not None:
            return self.dtn_modes
        return math.ceil(self.wavenumber * self.radius) + 16

    @model_validator(mode="after")
    def check_modes(self) -> "ScatterConfig":
        floor = math.ceil(self.wavenumber * self.radius) + 8
        if self.dtn_modes is not None and self.dtn_modes < floor:
            raise ValueError(f"dtn_modes must be at least ceil(kR) + 8 = {floor}")
        return self


class MeshConfig(BaseModel):
    """Mesh resolution settings."""

    h: float = Field(0.05, gt=0, description="Target element size of the inversion mesh")
    data_h: float = Field(0.035, gt=0, description="Element size used to synthesize data")
    min_angle: float = Field(20.0, gt=0, lt=34, description="Minimum triangle angle in degrees")
    curve_spacing: Optional[float] = Field(
        None, gt=0, description="Boundary node spacing; defaults to h"
    )

    @property
    def spacing(self) -> float:
        return self.curve_spacing if self.curve_spacing is not None else self.h


class GeometrySpec(BaseModel):
    """Obstacle shape description."""

    kind: Literal["circle", "ellipse", "polar", "polygon", "file"] = "circle"
    radius: float = Field(0.3, gt=0)
    semi_axes: tuple[float, float] = (0.3, 0.2)
    center: tuple[float, float] = (0.0, 0.0)
    rotation: float = Field(0.0, description="Rotation angle in radians")
    base_radius: float = Field(0.3, gt=0, description="Mean radius of a polar curve")
    harmonics: list[FourierTerm] = Field(
        default_factory=list, description="Radial harmonics of a polar curve"
    )
    vertices: list[tuple[float, float]] = Field(default_factory=list)
    path: Optional[str] = Field(None, description="CSV file with x,y node columns")

    @model_validator(mode="after")
    def check_kind(self) -> "GeometrySpec":
        if self.kind == "polygon" and len(self.vertices) < 3:
            raise ValueError("polygon geometry needs at least 3 vertices")
        if self.kind == "file" and not self.path:
            raise ValueError("file geometry needs a path")
        return self


class ImpedanceProfile(BaseModel):
    """Impedance value along the boundary as a function of the polar angle."""

    offset: ComplexValue = Field(default_factory=ComplexValue)
    phase: float = Field(0.0, description="Angular shift applied before the harmonics")
    harmonics: list[FourierTerm] = Field(default_factory=list)

    @classmethod
    def constant(cls, value: complex) -> "ImpedanceProfile":
        return cls(offset=ComplexValue.of(value))


class ImpedanceSpec(BaseModel):
    """Impedance pair (lambda, mu) description."""

    lam: ImpedanceProfile = Field(default_factory=lambda: ImpedanceProfile.constant(1j))
    mu: ImpedanceProfile = Field(default_factory=lambda: ImpedanceProfile.constant(1.5))
    path: Optional[str] = Field(
        None, description="CSV file with nodal values; overrides the profiles"
    )


class ModelSpec(BaseModel):
    """Obstacle plus impedances."""

    geometry: GeometrySpec = Field(default_factory=GeometrySpec)
    impedance: ImpedanceSpec = Field(default_factory=ImpedanceSpec)


class IncidenceConfig(BaseModel):
    """Plane-wave illumination and far-field sampling."""

    count: int = Field(8, ge=1, description="Number of equispaced incident directions")
    offset: float = Field(0.0, description="Angle of the first direction")
    directions: Optional[list[float]] = Field(
        None, description="Explicit direction angles; overrides count and offset"
    )
    observations: int = Field(64, ge=8, description="Far-field samples on the unit circle")

    @property
    def angles(self) -> list[float]:
        if self.directions is not None:
            return list(self.directions)
        return [self.offset + 2.0 * math.pi * j / self.count for j in range(self.count)]


class NoiseConfig(BaseModel):
    """Measurement noise."""

    level: float = Field(0.0, ge=0, description="Relative L2 noise level")
    seed: Optional[int] = Field(None, description="Noise seed; defaults to the run seed")


class InversionConfig(BaseModel):
    """Steepest-descent driver settings."""

    schedule: Literal["shape-only", "impedance-only", "alternating"] = "alternating"
    components: list[ImpedanceComponent] = Field(
        default_factory=lambda: list(ImpedanceComponent),
        description="Impedance components that are unknown",
    )
    constant_impedance: bool = Field(False, description="Reconstruct constant impedances")
    max_iterations: int = Field(300, ge=1)
    rho_up: float = Field(1.5, gt=1)
    rho_down: float = Field(2.0, gt=1)
    rho_eta: float = Field(1.2, gt=1)
    alpha_min_ratio: float = Field(1e-6, gt=0, lt=1)
    safety: float = Field(0.3, gt=0, le=0.5, description="Step bound as fraction of feature size")
    step_fraction: float = Field(0.1, gt=0, description="First shape step / feature size")
    impedance_step_fraction: float = Field(0.1, gt=0)
    attenuation_order: float = Field(
        8.0, gt=0, description="Fourier order damped by half in the H1 smoother"
    )
    projection_floor: float = Field(1e-3, gt=0, description="Lower bound of Re mu")
    resample_ratio: float = Field(3.0, gt=1, description="Allowed adjacent edge-length ratio")
    target_error: float = Field(0.0, ge=0, description="Stop when the relative error drops below")
    gradient_floor: float = Field(
        1e-6,
        ge=0,
        description="Stop a sweep once its gradient norm is below this fraction of the data energy",
    )
    snapshot_every: int = Field(1, ge=0, description="Write curve snapshots every N iterations")

    @field_validator("components")
    @classmethod
    def unique_components(cls, value: list[ImpedanceComponent]) -> list[ImpedanceComponent]:
        return sorted(set(value), key=list(ImpedanceComponent).index)

    @property
    def sweeps(self) -> list[Literal["shape", "impedance"]]:
        if self.schedule == "shape-only":
            return ["shape"]
        if self.schedule == "impedance-only":
            return ["impedance"]
        return ["shape", "impedance"]


class RunConfig(BaseModel):
    """Complete description of a forward, synthesis or inversion run."""

    name: str = "run"
    seed: int = 0
    scatter: ScatterConfig = Field(default_factory=ScatterConfig)
    mesh: MeshConfig = Field(default_factory=MeshConfig)
    truth: ModelSpec = Field(default_factory=ModelSpec)
    initial: ModelSpec = Field(default_factory=ModelSpec)
    incidence: IncidenceConfig = Field(default_factory=IncidenceConfig)
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    inversion: InversionConfig = Field(default_factory=InversionConfig)

    @property
    def noise_seed(self) -> int:
        return self.noise.seed if self.noise.seed is not None else self.seed
