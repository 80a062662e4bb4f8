"""
Run directory layout.
"""

import logging
from pathlib import Path

from gibc.forward.farfield import ObservationSet
from gibc.geometry.curve import BoundaryCurve
from gibc.meshing.annulus import AnnulusMesh
from gibc.models.configs import RunConfig
from gibc.models.results import InversionSummary, IterationRecord, ValidationReport
from gibc.storage import csv_io
from gibc.surface.impedance import ImpedanceField

logger = logging.getLogger(__name__)


class RunDirectory:
    """
    Owns the files of one run.

    Layout::

        config.json
        data.csv / far_field.csv / oracle.csv
        history.csv
        summary.json / validation.json / comparison.json
        truth/curve.csv, truth/impedance.csv
        snapshots/iter_0000_curve.csv, snapshots/iter_0000_impedance.csv
        gradients/iter_0000.csv
        meshes/iter_0000.csv
    """

    def __init__(self, root: Path):
        self.root = Path(root)

    def create(self) -> "RunDirectory":
        self.root.mkdir(parents=True, exist_ok=True)
        return self

    @property
    def config_path(self) -> Path:
        return self.root / "config.json"

    @property
    def history_path(self) -> Path:
        return self.root / "history.csv"

    @property
    def data_path(self) -> Path:
        return self.root / "data.csv"

    def write_config(self, config: RunConfig) -> Path:
        self.config_path.write_text(config.model_dump_json(indent=2) + "\n")
        logger.info(f"Wrote {self.config_path}")
        return self.config_path

    def write_far_fields(self, name: str, observations: ObservationSet) -> Path:
        path = self.root / name
        csv_io.write_far_fields(path, observations)
        logger.info(f"Wrote {path}")
        return path

    def write_model(self, folder: str, curve: BoundaryCurve, impedance: ImpedanceField) -> None:
        target = self.root / folder
        target.mkdir(parents=True, exist_ok=True)
        csv_io.write_curve(target / "curve.csv", curve)
        csv_io.write_impedance(target / "impedance.csv", curve, impedance)

    def start_history(self) -> None:
        csv_io.write_history(self.history_path, [])

    def append_history(self, record: IterationRecord) -> None:
        csv_io.write_history(self.history_path, [record], append=True)

    def write_snapshot(
        self, iteration: int, curve: BoundaryCurve, impedance: ImpedanceField
    ) -> None:
        folder = self.root / "snapshots"
        folder.mkdir(exist_ok=True)
        csv_io.write_curve(folder / f"iter_{iteration:04d}_curve.csv", curve)
        csv_io.write_impedance(folder / f"iter_{iteration:04d}_impedance.csv", curve, impedance)

    def write_gradient(self, iteration: int, curve: BoundaryCurve, columns: dict) -> None:  # type: ignore[type-arg]
        folder = self.root / "gradients"
        folder.mkdir(exist_ok=True)
        csv_io.write_gradient(folder / f"iter_{iteration:04d}.csv", curve, columns)

    def write_mesh(self, iteration: int, mesh: AnnulusMesh) -> None:
        folder = self.root / "meshes"
        folder.mkdir(exist_ok=True)
        csv_io.write_mesh(folder / f"iter_{iteration:04d}.csv", mesh)

    def write_summary(self, summary: InversionSummary) -> Path:
        path = self.root / "summary.json"
        path.write_text(summary.model_dump_json(indent=2) + "\n")
        return path

    def write_report(self, report: ValidationReport, name: str = "validation.json") -> Path:
        path = self.root / name
        path.write_text(report.model_dump_json(indent=2) + "\n")
        logger.info(f"Wrote {path}")
        return path
