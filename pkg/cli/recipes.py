"""
Preset configurations of the reconstruction experiments.
"""

import math
from collections.abc import Callable

from gibc.models.configs import (
    ComplexValue,
    FourierTerm,
    GeometrySpec,
    ImpedanceProfile,
    ImpedanceSpec,
    IncidenceConfig,
    InversionConfig,
    ModelSpec,
    NoiseConfig,
    RunConfig,
)
from gibc.surface.impedance import ImpedanceComponent

L_SHAPE = [(-0.3, -0.3), (0.3, -0.3), (0.3, 0.0), (0.0, 0.0), (0.0, 0.3), (-0.3, 0.3)]


def lshape() -> RunConfig:
    """Known impedances, unknown L-shaped obstacle, eight waves and 5% noise."""
    impedance = ImpedanceSpec(
        lam=ImpedanceProfile.constant(0.5j), mu=ImpedanceProfile.constant(2.0)
    )
    return RunConfig(
        name="lshape",
        truth=ModelSpec(geometry=GeometrySpec(kind="polygon", vertices=L_SHAPE), impedance=impedance),
        initial=ModelSpec(geometry=GeometrySpec(kind="circle", radius=0.25), impedance=impedance),
        incidence=IncidenceConfig(count=8),
        noise=NoiseConfig(level=0.05),
        inversion=InversionConfig(schedule="shape-only"),
    )


def lshape_two_waves() -> RunConfig:
    """Two waves and an off-centre initial disk; the descent is expected to stall."""
    config = lshape()
    return config.model_copy(
        update={
            "name": "lshape-two-waves",
            "incidence": IncidenceConfig(count=2),
            "initial": ModelSpec(
                geometry=GeometrySpec(kind="circle", radius=0.12, center=(0.25, 0.25)),
                impedance=config.initial.impedance,
            ),
        }
    )


def constant_impedance() -> RunConfig:
    """
    L-shaped obstacle and constant impedances, both unknown, 1% noise.

    Shape and the two constants are updated in alternation from a disk
    carrying (i, 1.5).
    """
    return RunConfig(
        name="constant-impedance",
        truth=ModelSpec(
            geometry=GeometrySpec(kind="polygon", vertices=L_SHAPE),
            impedance=ImpedanceSpec(
                lam=ImpedanceProfile.constant(0.5j), mu=ImpedanceProfile.constant(2.0)
            ),
        ),
        initial=ModelSpec(
            geometry=GeometrySpec(kind="circle", radius=0.25),
            impedance=ImpedanceSpec(
                lam=ImpedanceProfile.constant(1j), mu=ImpedanceProfile.constant(1.5)
            ),
        ),
        incidence=IncidenceConfig(count=8),
        noise=NoiseConfig(level=0.01),
        inversion=InversionConfig(schedule="alternating", constant_impedance=True),
    )


def _half_sine_squared(phase: float = 0.0) -> ImpedanceProfile:
    """Real profile ``0.5 (1 + sin^2(theta + phase))``."""
    return ImpedanceProfile(
        offset=ComplexValue(re=0.75),
        phase=phase,
        harmonics=[FourierTerm(order=2, cos=ComplexValue(re=-0.25))],
    )


def rotated_circle() -> RunConfig:
    """
    Shape-only recovery of a disk whose real lambda is rotated by pi/6.

    The truth carries lambda = 0.5 (1 + sin^2(theta + pi/6)) and mu = 0. The
    initial disk is smaller and carries the unrotated profile, which stays
    fixed, so the recovered shape absorbs the impedance error.
    """
    zero = ImpedanceProfile.constant(0.0)
    return RunConfig(
        name="rotated-circle",
        truth=ModelSpec(
            geometry=GeometrySpec(kind="circle", radius=0.3),
            impedance=ImpedanceSpec(lam=_half_sine_squared(math.pi / 6.0), mu=zero),
        ),
        initial=ModelSpec(
            geometry=GeometrySpec(kind="circle", radius=0.2),
            impedance=ImpedanceSpec(lam=_half_sine_squared(), mu=zero),
        ),
        incidence=IncidenceConfig(count=8),
        noise=NoiseConfig(level=0.05),
        inversion=InversionConfig(
            schedule="shape-only",
            components=[ImpedanceComponent.RE_LAMBDA, ImpedanceComponent.IM_LAMBDA],
        ),
    )


def trefoil() -> RunConfig:
    """
    Joint recovery of a trefoil and variable impedances, 5% noise.

    Re lambda and Im mu are known to vanish and stay fixed.
    """
    truth_impedance = ImpedanceSpec(
        lam=ImpedanceProfile(
            offset=ComplexValue(im=0.75),
            harmonics=[FourierTerm(order=2, cos=ComplexValue(im=-0.25))],
        ),
        mu=ImpedanceProfile(
            offset=ComplexValue(re=0.75),
            harmonics=[FourierTerm(order=2, cos=ComplexValue(re=0.25))],
        ),
    )
    return RunConfig(
        name="trefoil",
        truth=ModelSpec(
            geometry=GeometrySpec(
                kind="polar",
                base_radius=0.3,
                harmonics=[FourierTerm(order=3, cos=ComplexValue(re=0.08))],
            ),
            impedance=truth_impedance,
        ),
        initial=ModelSpec(
            geometry=GeometrySpec(kind="circle", radius=0.3),
            impedance=ImpedanceSpec(
                lam=ImpedanceProfile.constant(0.75j), mu=ImpedanceProfile.constant(0.75)
            ),
        ),
        incidence=IncidenceConfig(count=8),
        noise=NoiseConfig(level=0.05),
        inversion=InversionConfig(
            schedule="alternating",
            components=[ImpedanceComponent.IM_LAMBDA, ImpedanceComponent.RE_MU],
        ),
    )


RECIPES: dict[str, Callable[[], RunConfig]] = {
    "lshape": lshape,
    "lshape-two-waves": lshape_two_waves,
    "constant-impedance": constant_impedance,
    "rotated-circle": rotated_circle,
    "trefoil": trefoil,
}
