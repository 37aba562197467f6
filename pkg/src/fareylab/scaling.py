"""Log-log growth fits and the scaling experiment driver."""

from __future__ import annotations

from dataclasses import dataclass
from math import log, sqrt

from .counting import count_L, count_S
from .errors import DomainError
from .lcm_filter import count_J
from .records import CountRecord

SCALING_CSV_COLUMNS = ["n", "H", "count", "candidates_examined", "elapsed_ms"]

QUANTITIES = ("l", "s", "j")


@dataclass(frozen=True)
class GrowthFit:
    """Least-squares line through (log H, log count) points."""

    points: tuple[tuple[float, float], ...]
    slope: float
    intercept: float
    residual: float  # root-mean-square deviation of the fit


def fit_loglog(values: list[tuple[float, float]]) -> GrowthFit:
    """Fit y = slope * x + intercept through (log x, log y) of the inputs."""
    if len(values) < 2:
        raise DomainError("a growth fit needs at least two points")
    if any(x <= 0 or y <= 0 for x, y in values):
        raise DomainError("growth fits need positive coordinates")
    pts = [(log(x), log(y)) for x, y in values]
    m = len(pts)
    sx = sum(x for x, _ in pts)
    sy = sum(y for _, y in pts)
    sxx = sum(x * x for x, _ in pts)
    sxy = sum(x * y for x, y in pts)
    denom = m * sxx - sx * sx
    if denom == 0:
        raise DomainError("degenerate abscissae: all x equal")
    slope = (m * sxy - sx * sy) / denom
    intercept = (sy - slope * sx) / m
    rss = sum((y - (slope * x + intercept)) ** 2 for x, y in pts)
    return GrowthFit(
        points=tuple(pts),
        slope=slope,
        intercept=intercept,
        residual=sqrt(rss / m),
    )


@dataclass
class ScalingRow:
    n: int
    h: int
    count: int
    candidates_examined: int
    elapsed_ms: float

    def csv_row(self) -> list:
        return [self.n, self.h, self.count, self.candidates_examined, repr(self.elapsed_ms)]


def parse_h_grid(text: str) -> list[int]:
    """Parse either 'start:stop:factor' (geometric) or a comma list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError("grid must be start:stop:factor or a comma list")
        start, stop = int(parts[0]), int(parts[1])
        factor = float(parts[2])
        if start < 1 or stop < start or factor <= 1.0:
            raise DomainError("grid requires 1 <= start <= stop and factor > 1")
        out = []
        h = float(start)
        while round(h) <= stop:
            if not out or round(h) != out[-1]:
                out.append(round(h))
            h *= factor
        return out
    values = [int(tok) for tok in text.split(",") if tok.strip()]
    if not values or any(v < 1 for v in values) or values != sorted(values):
        raise DomainError("grid values must be ascending positive integers")
    return values


def scaling_experiment(
    quantity: str,
    n: int,
    h_values: list[int],
    method: str = "fast",
    *,
    workers: int = 1,
    budget: int | None = None,
    fit_candidates: bool = False,
) -> tuple[list[ScalingRow], GrowthFit]:
    """Compute the quantity across the grid and fit its log-log growth.

    With fit_candidates the fitted ordinate is the work counter rather
    than the count (the complexity observable of the fast method).
    """
    if quantity not in QUANTITIES:
        raise DomainError(f"unknown quantity {quantity!r}")
    rows: list[ScalingRow] = []
    for h in h_values:
        if quantity == "l":
            rec: CountRecord = count_L(n, h, method, workers=workers, budget=budget)
        elif quantity == "s":
            rec = count_S(n, h, method, workers=workers, budget=budget)
        else:
            rec = count_J((h,) * n, workers=workers, budget=budget)
        rows.append(
            ScalingRow(
                n=n,
                h=h,
                count=rec.count,
                candidates_examined=rec.candidates_examined,
                elapsed_ms=rec.elapsed_ms,
            )
        )
    ys = [
        (r.h, r.candidates_examined if fit_candidates else r.count) for r in rows
    ]
    return rows, fit_loglog(ys)
