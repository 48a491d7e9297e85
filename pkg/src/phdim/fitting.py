"""Log-log regression and the power-law inversion shared by the estimators."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

BETA_WINDOW = (0.2, 0.8)
DEFAULT_ALPHA_GRID = tuple(round(0.1 * k, 1) for k in range(1, 21))


class DegenerateFit(ValueError):
    pass


@dataclass
class LineFit:
    slope: float
    intercept: float
    stderr: float
    residual: float
    n_points: int


def linear_fit(x, y) -> LineFit:
    """Ordinary least squares y = slope*x + intercept with the slope's standard error."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ok = np.isfinite(x) & np.isfinite(y)
    x, y = x[ok], y[ok]
    if len(np.unique(x)) < 2:
        raise DegenerateFit("need at least two distinct abscissae")
    A = np.column_stack([x, np.ones_like(x)])
    (slope, icpt), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + icpt)
    rss = float(resid @ resid)
    k = len(x)
    sxx = float(((x - x.mean()) ** 2).sum())
    stderr = math.sqrt(rss / (k - 2) / sxx) if k > 2 else 0.0
    return LineFit(float(slope), float(icpt), stderr, math.sqrt(rss / k), k)


@dataclass
class DimensionEstimate:
    """A fitted exponent with the data it came from.

    ``diagnostics`` rows are ``(scale_or_size, statistic, fitted)``. For the
    growth estimators ``curve`` holds ``(alpha, beta, stderr)`` rows.
    """

    estimate: float
    method: str
    degree: int | None = None
    diagnostics: list = field(default_factory=list)
    window: tuple = ()
    curve: list = field(default_factory=list)
    degenerate: bool = False
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "method": self.method,
            "degree": self.degree,
            "window": list(self.window),
            "degenerate": self.degenerate,
            "note": self.note,
            "diagnostics": [list(map(float, r)) for r in self.diagnostics],
            "curve": [list(map(float, r)) for r in self.curve],
        }


def growth_inversion(sizes, sums: dict, window=BETA_WINDOW):
    """Fit beta(alpha) from ``sums[alpha][k]`` measured at ``sizes[k]`` and invert.

    With E_alpha(x_n) ~ n^beta and beta = (d - alpha)/d, each alpha gives
    d = alpha/(1 - beta). Estimates from alphas whose beta falls inside the
    window are averaged. Returns ``(estimate, curve, used_alphas, flag)``;
    ``flag`` is set when no alpha landed in the window and the one with beta
    closest to the window centre was used instead.
    """
    logn = np.log(np.asarray(sizes, dtype=float))
    curve = []
    for a in sorted(sums):
        s = np.asarray(sums[a], dtype=float)
        pos = s > 0
        if pos.sum() < 2:
            continue
        fit = linear_fit(logn[pos], np.log(s[pos]))
        curve.append((float(a), fit.slope, fit.stderr))
    if not curve:
        raise DegenerateFit("no alpha has two positive sums")
    lo, hi = window
    picks = [(a, b) for a, b, _ in curve if lo <= b <= hi and a > 0]
    flag = False
    if not picks:
        centre = 0.5 * (lo + hi)
        a, b, _ = min((r for r in curve if r[1] < 1 and r[0] > 0),
                      key=lambda r: abs(r[1] - centre), default=curve[0])
        picks = [(a, b)]
        flag = True
    ests = [a / (1.0 - b) for a, b in picks if b < 1]
    if not ests:
        raise DegenerateFit("every fitted slope is >= 1")
    return float(np.mean(ests)), curve, [a for a, _ in picks], flag
