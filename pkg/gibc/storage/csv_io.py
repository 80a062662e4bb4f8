"""
Versioned CSV formats for curves, impedances, meshes, far fields and histories.
"""

import csv
import logging
from collections.abc import Iterable
from pathlib import Path
from typing import Optional

import numpy as np

from gibc.forward.farfield import FarField, ObservationSet
from gibc.geometry.curve import BoundaryCurve
from gibc.meshing.annulus import AnnulusMesh
from gibc.models.results import IterationRecord
from gibc.surface.impedance import ImpedanceField

logger = logging.getLogger(__name__)

CURVE_TAG = "# closed-curve v1"
IMPEDANCE_TAG = "# impedance v1"
MESH_TAG = "# mesh v1"
FAR_FIELD_TAG = "# far-field v1"
GRADIENT_TAG = "# gradient v1"

HISTORY_COLUMNS = [
    "iter",
    "sweep",
    "F",
    "Error",
    "alpha",
    "eta_tau",
    "eta_nu",
    "eta_lambda",
    "eta_mu",
    "accepted",
    "nodes",
    "note",
]


def write_curve(path: Path, curve: BoundaryCurve) -> None:
    with open(path, "w", newline="") as f:
        f.write(CURVE_TAG + "\n")
        writer = csv.writer(f)
        writer.writerow(["x", "y"])
        writer.writerows([repr(float(x)), repr(float(y))] for x, y in curve.nodes)


def read_curve(path: Path) -> BoundaryCurve:
    """
    Read a curve file.

    Raises:
        FormatError: If the file is not a closed-curve file.
    """
    rows = _read_tagged(path, CURVE_TAG, ["x", "y"])
    return BoundaryCurve([[float(r[0]), float(r[1])] for r in rows], orient=True)


def write_impedance(path: Path, curve: BoundaryCurve, impedance: ImpedanceField) -> None:
    with open(path, "w", newline="") as f:
        f.write(IMPEDANCE_TAG + "\n")
        writer = csv.writer(f)
        writer.writerow(["x", "y", "lam_re", "lam_im", "mu_re", "mu_im"])
        for (x, y), lam, mu in zip(curve.nodes, impedance.lam, impedance.mu):
            writer.writerow(
                [repr(float(v)) for v in (x, y, lam.real, lam.imag, mu.real, mu.imag)]
            )


def read_impedance(path: Path) -> tuple[np.ndarray, ImpedanceField]:
    """Node coordinates and impedance values of an impedance file."""
    rows = _read_tagged(path, IMPEDANCE_TAG, ["x", "y", "lam_re", "lam_im", "mu_re", "mu_im"])
    data = np.array([[float(v) for v in r] for r in rows])
    nodes = data[:, :2]
    impedance = ImpedanceField(data[:, 2] + 1j * data[:, 3], data[:, 4] + 1j * data[:, 5])
    return nodes, impedance


def write_mesh(path: Path, mesh: AnnulusMesh) -> None:
    with open(path, "w", newline="") as f:
        f.write(MESH_TAG + "\n")
        f.write(
            f"# vertices={len(mesh.vertices)} triangles={len(mesh.triangles)} "
            f"curve_nodes={mesh.curve_nodes} outer_nodes={mesh.outer_nodes} "
            f"radius={mesh.radius!r} h={mesh.h!r} min_angle={mesh.min_angle!r}\n"
        )
        writer = csv.writer(f)
        writer.writerows([repr(float(x)), repr(float(y))] for x, y in mesh.vertices)
        writer.writerows(mesh.triangles.tolist())


def read_mesh(path: Path) -> AnnulusMesh:
    with open(path, newline="") as f:
        if f.readline().strip() != MESH_TAG:
            raise FormatError(f"{path} is not a mesh file")
        meta = _parse_header(f.readline())
        rows = list(csv.reader(f))
    try:
        nv, nt = int(meta["vertices"]), int(meta["triangles"])
        vertices = np.array([[float(v) for v in r] for r in rows[:nv]])
        triangles = np.array([[int(v) for v in r] for r in rows[nv : nv + nt]], dtype=np.int64)
        return AnnulusMesh(
            vertices,
            triangles,
            int(meta["curve_nodes"]),
            int(meta["outer_nodes"]),
            float(meta["radius"]),
            float(meta["h"]),
            float(meta["min_angle"]),
        )
    except (KeyError, ValueError) as exc:
        raise FormatError(f"malformed mesh file {path}: {exc}") from exc


def write_far_fields(path: Path, observations: ObservationSet) -> None:
    """
    Write far fields with their provenance header.

    Values are written with ``repr`` so reading them back is bit-exact.
    """
    first = observations.far_fields[0]
    with open(path, "w", newline="") as f:
        f.write(FAR_FIELD_TAG + "\n")
        f.write(
            f"# k={first.k!r} R={first.radius!r} M={len(first)} N={first.modes} "
            f"noise={observations.noise_level!r} seed={observations.seed}\n"
        )
        writer = csv.writer(f)
        writer.writerow(["incident", "incident_angle", "obs_angle", "re", "im"])
        for j, far in enumerate(observations.far_fields):
            incident = "" if far.incident_angle is None else repr(float(far.incident_angle))
            for angle, value in zip(far.angles, far.values):
                writer.writerow(
                    [j, incident, repr(float(angle)), repr(float(value.real)), repr(float(value.imag))]
                )


def read_far_fields(path: Path) -> ObservationSet:
    """
    Read far fields written by ``write_far_fields``.

    Raises:
        FormatError: On a wrong tag or inconsistent sample counts.
    """
    with open(path, newline="") as f:
        if f.readline().strip() != FAR_FIELD_TAG:
            raise FormatError(f"{path} is not a far-field file")
        meta = _parse_header(f.readline())
        reader = csv.reader(f)
        header = next(reader, None)
        if header != ["incident", "incident_angle", "obs_angle", "re", "im"]:
            raise FormatError(f"unexpected columns in {path}: {header}")
        groups: dict[int, list[list[str]]] = {}
        for row in reader:
            groups.setdefault(int(row[0]), []).append(row)

    try:
        k = float(meta["k"])
        radius = float(meta["R"])
        samples = int(meta["M"])
        modes = int(meta["N"])
        noise = float(meta.get("noise", "0.0"))
        seed = int(meta.get("seed", "0"))
    except (KeyError, ValueError) as exc:
        raise FormatError(f"malformed far-field header in {path}: {exc}") from exc

    far_fields = []
    for j in sorted(groups):
        rows = groups[j]
        if len(rows) != samples:
            raise FormatError(f"incident {j} has {len(rows)} samples, expected {samples}")
        values = np.array([complex(float(r[3]), float(r[4])) for r in rows])
        incident_angle: Optional[float] = float(rows[0][1]) if rows[0][1] else None
        far_fields.append(FarField(values, k, radius, modes, incident_angle))
    return ObservationSet(far_fields, noise, seed)


def write_gradient(
    path: Path,
    curve: BoundaryCurve,
    columns: dict[str, np.ndarray],
) -> None:
    """Nodal gradient loads next to node coordinates."""
    names = list(columns)
    with open(path, "w", newline="") as f:
        f.write(GRADIENT_TAG + "\n")
        writer = csv.writer(f)
        writer.writerow(["x", "y", *names])
        for i, (x, y) in enumerate(curve.nodes):
            writer.writerow(
                [repr(float(x)), repr(float(y)), *(repr(float(columns[c][i])) for c in names)]
            )


def write_history(path: Path, records: Iterable[IterationRecord], append: bool = False) -> None:
    exists = path.exists() and append
    with open(path, "a" if append else "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=HISTORY_COLUMNS)
        if not exists:
            writer.writeheader()
        for record in records:
            writer.writerow(record.as_row())


def read_history(path: Path) -> list[IterationRecord]:
    with open(path, newline="") as f:
        return [IterationRecord.from_row(row) for row in csv.DictReader(f)]


def _read_tagged(path: Path, tag: str, columns: list[str]) -> list[list[str]]:
    with open(path, newline="") as f:
        if f.readline().strip() != tag:
            raise FormatError(f"{path} does not start with '{tag}'")
        reader = csv.reader(f)
        header = next(reader, None)
        if header != columns:
            raise FormatError(f"unexpected columns in {path}: {header}")
        rows = [row for row in reader if row]
    if any(len(row) != len(columns) for row in rows):
        raise FormatError(f"ragged rows in {path}")
    return rows


def _parse_header(line: str) -> dict[str, str]:
    if not line.startswith("#"):
        raise FormatError("missing metadata line")
    pairs = (item.split("=", 1) for item in line[1:].split())
    return {key: value for key, value in pairs}


class FormatError(Exception):
    """Raised when a data file does not match its declared format."""

    pass
