"""Synthetic populations and dataset file utilities.

The classical 176-strip forest dataset (timber volume vs. strip length) is
not redistributable, so it is not bundled.  `MURTHY_FOREST_STRIPS_SHA256` is
a checksum slot: users who obtain the data can record the digest of their
CSV export here (or pass it on the command line) to verify ingestion.
`synthetic_linear_population` provides a stand-in with a controllable
volume/length-style correlation.
"""
from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .errors import DomainError
from .population import FinitePopulation

# sha256 of a locally obtained forest-strip CSV (header y,x); fill in to verify.
MURTHY_FOREST_STRIPS_SHA256: str | None = None


def synthetic_linear_population(
    n_units: int,
    *,
    rho_target: float = 0.9,
    seed: int = 0,
    x_low: float = 20.0,
    x_high: float = 60.0,
    slope: float = 3.0,
    intercept: float = 10.0,
    sort_by_x: bool = False,
) -> FinitePopulation:
    """Generate y linear in x plus Gaussian noise with a target correlation.

    The noise standard deviation is chosen so that the population correlation
    is approximately `rho_target`; the realized value varies with the seed.
    Units keep their generation order unless `sort_by_x` is set.
    """
    if n_units < 2:
        raise DomainError(f"need at least 2 units, got {n_units}")
    if not 0.0 < abs(rho_target) <= 1.0:
        raise DomainError(f"target correlation must be in (0, 1], got {rho_target}")
    rng = np.random.default_rng(seed)
    x = rng.uniform(x_low, x_high, n_units)
    signal_sd = abs(slope) * x.std()
    noise_sd = signal_sd * np.sqrt(1.0 / rho_target**2 - 1.0)
    y = intercept + slope * x + rng.normal(0.0, noise_sd, n_units)
    if sort_by_x:
        order = np.argsort(x, kind="stable")
        x, y = x[order], y[order]
    return FinitePopulation.from_arrays(y, x)


def write_population_csv(
    pop: FinitePopulation,
    path: str | Path,
    *,
    y_column: str = "y",
    x_column: str = "x",
    delimiter: str = ",",
) -> None:
    """Write the population as delimiter-separated text with a header row."""
    lines = [f"{y_column}{delimiter}{x_column}"]
    lines.extend(f"{y!r}{delimiter}{x!r}" for y, x in zip(pop.y, pop.x))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def file_sha256(path: str | Path) -> str:
    """Hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()
