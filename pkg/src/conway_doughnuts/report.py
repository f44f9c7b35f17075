"""Hole-asymptotics study: tabular output plus a matplotlib figure."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .angleform import TAU, Assignment
from .doughnut import limit_curve, renormalized_boundary


def corner_assignment(n: int, corner_angle: float, split: float = 0.5) -> Assignment:
    """Assignment whose big triangle has angle ``corner_angle`` at A.

    The other two angles share the remainder as ``split : 1 - split``.
    """
    a = corner_angle / n
    rest = TAU / (2 * n) - a
    if a <= 0 or rest <= 0 or not 0 < split < 1:
        raise ValueError("corner angle must lie strictly between 0 and tau/2")
    b = rest * split
    return Assignment(a, b, TAU / (2 * n) - a - b)


@dataclass
class AsymptoteStudy:
    corner_angle: float
    n_values: list[int]
    distances: list[float] = field(default_factory=list)
    boundaries: list[list[complex]] = field(default_factory=list)

    @property
    def monotone(self) -> bool:
        return all(x > y for x, y in zip(self.distances, self.distances[1:]))

    def rows(self):
        for n, d, pts in zip(self.n_values, self.distances, self.boundaries):
            for j, p in enumerate(pts):
                yield {"n": n, "index": j, "x": p.real, "y": p.imag, "distance": d}

    def to_dict(self) -> dict:
        return {
            "corner_angle": self.corner_angle,
            "corner_angle_tau": self.corner_angle / TAU,
            "n_values": self.n_values,
            "distances": self.distances,
            "monotone": self.monotone,
            "boundaries": {str(n): [[p.real, p.imag] for p in pts]
                           for n, pts in zip(self.n_values, self.boundaries)},
        }


def asymptote_study(corner_angle: float, n_values, split: float = 0.5) -> AsymptoteStudy:
    study = AsymptoteStudy(corner_angle, list(n_values))
    for n in study.n_values:
        pts, dist = renormalized_boundary(n, corner_assignment(n, corner_angle, split))
        study.boundaries.append(pts)
        study.distances.append(dist)
    return study


def write_csv(study: AsymptoteStudy, path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["n", "index", "x", "y", "distance"],
                                lineterminator="\n")
        writer.writeheader()
        for row in study.rows():
            writer.writerow({k: (f"{v:.12g}" if isinstance(v, float) else v)
                             for k, v in row.items()})
    return path


def plot_study(study: AsymptoteStudy, path: Path, curve_samples: int = 400) -> Path:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 5), dpi=120)
    curve = limit_curve(study.corner_angle, curve_samples)
    lim = 4.0
    curve = [p for p in curve if abs(p) < lim]
    ax.plot([p.real for p in curve], [p.imag for p in curve], color="black", lw=1.2,
            label="limit curve")
    for n, pts in zip(study.n_values, study.boundaries):
        ax.plot([p.real for p in pts], [p.imag for p in pts], "o-", ms=2.5, lw=0.8,
                label=f"n = {n}")
    ax.set_aspect("equal")
    ax.set_xlim(-0.1, lim)
    ax.set_ylim(-0.1, lim)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def write_report(study: AsymptoteStudy, out_dir: str | Path, stem: str = "asymptote") -> dict:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": out_dir / f"{stem}.json",
        "csv": write_csv(study, out_dir / f"{stem}.csv"),
        "png": plot_study(study, out_dir / f"{stem}.png"),
    }
    paths["json"].write_text(json.dumps(study.to_dict(), indent=2, sort_keys=True) + "\n")
    return {k: str(v) for k, v in paths.items()}
