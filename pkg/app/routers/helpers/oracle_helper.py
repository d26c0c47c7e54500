"""Brute-force check of a constructed locus against its defining predicate.

Direction 1 scans a grid for points whose residual falls inside a band and
measures how far they sit from the analytic locus. Direction 2 samples the
analytic locus and measures the residual there. Rows are scanned in chunks on
a thread pool; chunks are merged in row order so results never depend on
scheduling.
"""
import concurrent.futures
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, FiniteFloat, PositiveInt, model_validator

from .errors import GridTooLarge
from .geometry_helper import DEFAULT_TOLERANCE, Point, Segment, ToleranceProfile, clip_line, dist, midpoint
from .loci_helper import (
    CircleLocus,
    EmptyLocus,
    LineLocus,
    Locus,
    LocusSpec,
    PointLocus,
    ResidualFunction,
    construct,
    distance_estimate_function,
    residual_function,
    residual_scale,
)

logger = logging.getLogger(__name__)

DEFAULT_SAMPLE_CAP = 10_000_000
DEFAULT_WORKERS = 4
CIRCLE_SAMPLES = 360
LINE_SAMPLES = 100
DEFAULT_BAND = 0.02
DEFAULT_STEP_FACTOR = 0.05
# the scan band never drops below this many grid steps
MIN_BAND_STEPS = 0.75


class GridSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    min_corner: Point
    max_corner: Point
    step: FiniteFloat
    sample_cap: PositiveInt = DEFAULT_SAMPLE_CAP

    @model_validator(mode="after")
    def check_box(self):
        if self.step <= 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if self.max_corner.x <= self.min_corner.x or self.max_corner.y <= self.min_corner.y:
            raise ValueError("grid max corner must exceed min corner on both axes")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, columns)."""
        columns = math.floor((self.max_corner.x - self.min_corner.x) / self.step + 1e-9) + 1
        rows = math.floor((self.max_corner.y - self.min_corner.y) / self.step + 1e-9) + 1
        return rows, columns

    @property
    def sample_count(self) -> int:
        rows, columns = self.shape
        return rows * columns

    def contains(self, xs: np.ndarray) -> np.ndarray:
        return (
            (xs[:, 0] >= self.min_corner.x)
            & (xs[:, 0] <= self.max_corner.x)
            & (xs[:, 1] >= self.min_corner.y)
            & (xs[:, 1] <= self.max_corner.y)
        )


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    samples_in_band: int
    max_distance_to_locus: float
    locus_sample_count: int
    max_predicate_residual_on_locus: float
    band: float
    distance_threshold: float
    residual_threshold: float
    grid_rows: int
    grid_columns: int
    passed: bool


def _scan_rows(residual: ResidualFunction, grid: GridSpec, band: float, rows: range) -> np.ndarray:
    _, columns = grid.shape
    xs = grid.min_corner.x + grid.step * np.arange(columns)
    ys = grid.min_corner.y + grid.step * np.arange(rows.start, rows.stop)
    mesh_x, mesh_y = np.meshgrid(xs, ys)
    cells = np.column_stack((mesh_x.ravel(), mesh_y.ravel()))
    return cells[np.abs(residual(cells)) <= band]


def scan_grid(
    residual: ResidualFunction, grid: GridSpec, band: float, workers: int = DEFAULT_WORKERS
) -> np.ndarray:
    """In-band grid points as an (N, 2) array in row-major order."""
    if grid.sample_count > grid.sample_cap:
        raise GridTooLarge(f"grid of {grid.sample_count} samples exceeds the cap of {grid.sample_cap}")
    rows, columns = grid.shape
    chunk = max(1, math.ceil(rows / max(1, workers)))
    chunks = [range(start, min(rows, start + chunk)) for start in range(0, rows, chunk)]

    with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        # map yields in submission order, which keeps the merge row-major
        parts = list(pool.map(lambda r: _scan_rows(residual, grid, band, r), chunks))

    hits = np.concatenate(parts) if parts else np.empty((0, 2))
    logger.info(f"scanned {rows}x{columns} grid in {len(chunks)} chunks, {len(hits)} points in band")
    return hits


def scan_predicate(
    residual: ResidualFunction, grid: GridSpec, band: float, workers: int = DEFAULT_WORKERS
) -> list[Point]:
    return [Point(float(x), float(y)) for x, y in scan_grid(residual, grid, band, workers)]


def _clip_line(locus: LineLocus, grid: GridSpec) -> tuple[float, float] | None:
    lo, hi = grid.min_corner, grid.max_corner
    return clip_line(locus.line, lo.x, lo.y, hi.x, hi.y)


def locus_samples(locus: Locus, grid: GridSpec) -> np.ndarray:
    """Points on the analytic locus used for the reverse check."""
    if isinstance(locus, CircleLocus):
        return locus.sample(CIRCLE_SAMPLES)
    if isinstance(locus, LineLocus):
        interval = _clip_line(locus, grid)
        if interval is None:
            return np.empty((0, 2))
        return locus.sample(LINE_SAMPLES, *interval)
    return locus.sample()


def _locus_meets_box(locus: Locus, grid: GridSpec) -> bool:
    if isinstance(locus, EmptyLocus):
        return False
    if isinstance(locus, LineLocus):
        return _clip_line(locus, grid) is not None
    if isinstance(locus, PointLocus):
        return bool(grid.contains(locus.sample())[0])
    return bool(grid.contains(locus.sample(CIRCLE_SAMPLES)).any())


def verify_locus(
    locus: Locus,
    residual: ResidualFunction,
    grid: GridSpec,
    tol: ToleranceProfile = DEFAULT_TOLERANCE,
    band: float = 0.0,
    residual_scale: float = 1.0,
    distance_threshold: float | None = None,
    workers: int = DEFAULT_WORKERS,
    scan_residual: ResidualFunction | None = None,
    reference: Locus | None = None,
) -> VerificationReport:
    """Two-sided comparison of a locus with the zero set of its residual.

    band applies to scan_residual (the residual itself when omitted). In-band
    points are measured against reference, which defaults to the locus. The
    on-locus residual threshold is abs_eps * residual_scale and the default
    distance threshold is twice the grid step.
    """
    if distance_threshold is None:
        distance_threshold = 2.0 * grid.step
    residual_threshold = tol.abs_eps * residual_scale
    reference = locus if reference is None else reference

    hits = scan_grid(scan_residual or residual, grid, band, workers)
    max_distance = float(np.max(reference.distances(hits))) if len(hits) else 0.0

    samples = locus_samples(locus, grid)
    max_residual = float(np.max(np.abs(residual(samples)))) if len(samples) else 0.0

    passed = max_distance <= distance_threshold and max_residual <= residual_threshold
    if _locus_meets_box(locus, grid) and len(hits) == 0:
        passed = False

    rows, columns = grid.shape
    report = VerificationReport(
        samples_in_band=len(hits),
        max_distance_to_locus=max_distance,
        locus_sample_count=len(samples),
        max_predicate_residual_on_locus=max_residual,
        band=band,
        distance_threshold=distance_threshold,
        residual_threshold=residual_threshold,
        grid_rows=rows,
        grid_columns=columns,
        passed=passed,
    )
    if not passed:
        logger.warning(f"locus verification failed: {report.model_dump()}")
    return report


def verify_construction(
    spec: LocusSpec,
    a: Point,
    b: Point,
    tol: ToleranceProfile = DEFAULT_TOLERANCE,
    locus: Locus | None = None,
    grid: GridSpec | None = None,
    step: float | None = None,
    band: float = DEFAULT_BAND,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
    workers: int = DEFAULT_WORKERS,
) -> VerificationReport:
    """Check a constructed locus (construct(spec, a, b) by default) against the predicate of spec.

    The scan runs on the distance estimate of the predicate with a band of
    band * AB, widened to MIN_BAND_STEPS grid steps so that a grid point always
    falls inside it. Direction 2 uses the raw residual. Without a grid the
    default grid for the locus is used with the given step.
    """
    ab = Segment.between(a, b, tol).length
    if locus is None:
        locus = construct(spec, a, b, tol)
    if grid is None:
        grid = default_grid(locus, a, b, step, sample_cap)
    reference = locus
    if isinstance(locus, EmptyLocus):
        # near misses of an empty sum-of-squares locus gather where the residual is smallest
        reference = PointLocus(point=midpoint(a, b))
    return verify_locus(
        locus,
        residual_function(spec, a, b, tol),
        grid,
        tol,
        band=max(band * ab, MIN_BAND_STEPS * grid.step),
        residual_scale=residual_scale(spec, a, b),
        workers=workers,
        scan_residual=distance_estimate_function(spec, a, b, tol),
        reference=reference,
    )


def default_grid(
    locus: Locus, a: Point, b: Point, step: float | None = None, sample_cap: int = DEFAULT_SAMPLE_CAP
) -> GridSpec:
    """Box around A, B and the finite part of the locus, padded by max(AB, 10% of the extent)."""
    ab = dist(a, b)
    xs, ys = [a.x, b.x], [a.y, b.y]
    if isinstance(locus, CircleLocus):
        c = locus.circle
        xs += [c.center.x - c.radius, c.center.x + c.radius]
        ys += [c.center.y - c.radius, c.center.y + c.radius]
    elif isinstance(locus, LineLocus):
        xs.append(locus.line.anchor.x)
        ys.append(locus.line.anchor.y)
    elif isinstance(locus, PointLocus):
        xs.append(locus.point.x)
        ys.append(locus.point.y)
    extent = max(max(xs) - min(xs), max(ys) - min(ys))
    margin = max(ab, 0.1 * extent)
    return GridSpec(
        min_corner=Point(min(xs) - margin, min(ys) - margin),
        max_corner=Point(max(xs) + margin, max(ys) + margin),
        step=step if step is not None else DEFAULT_STEP_FACTOR * ab,
        sample_cap=sample_cap,
    )
