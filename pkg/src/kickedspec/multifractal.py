"""Box-counting multifractal analysis of spectra and eigenvector profiles.

Conventions: the q-th moment partition function Z_q(N) over N equal-width
bins is regressed against log N, so a space-filling (uniform) measure gives
tau_q = 1 - q and generalized dimension D_q = tau_q/(1-q) = 1, while a point
mass gives tau_q = 0 and D_q = 0.  Slopes mu of tau_q versus q are fitted
over q in [2, 8].  Negative q is unsupported (empty bins would dominate).

Quasiperiodic spectra produce log-periodically wobbling Z_q(N); the scaling
fits therefore sample scales densely in log N and use one shared window of at
least half the scale points (never fewer than five), picked by the mean R^2
of the per-q fits over the q in [2, 8].  Short windows latched onto a lucky
stretch of the wobble otherwise make tau_q estimates irreproducible between
nearly identical spectra.
"""

from dataclasses import dataclass, replace

import numpy as np

DEFAULT_Q_GRID = tuple(0.5 * k for k in range(21) if k != 2)  # 0, 0.5, 1.5, ..., 10
MU_FIT_RANGE = (2.0, 8.0)
MIN_FIT_POINTS = 5
_Q_ONE_TOL = 1e-9


@dataclass(frozen=True)
class BoxMeasure:
    """Occupation probabilities of equal-width bins spanning the data range."""

    probabilities: np.ndarray
    n_bins: int
    bin_width: float


def box_probabilities(values, n_bins: int) -> BoxMeasure:
    """Histogram values into n_bins equal-width bins and normalize to probabilities.

    Bins cover [min, max]; the rightmost bin is closed on both sides.
    """
    values = np.asarray(values, dtype=float).ravel()
    if n_bins < 2:
        raise ValueError(f"need at least 2 bins, got {n_bins}")
    if values.size < 2:
        raise ValueError("need at least two values")
    lo, hi = float(values.min()), float(values.max())
    if not hi > lo:
        raise ValueError("degenerate range: all values identical")
    counts, edges = np.histogram(values, bins=int(n_bins), range=(lo, hi))
    probs = counts.astype(float) / values.size
    return BoxMeasure(probabilities=probs, n_bins=int(n_bins), bin_width=float(edges[1] - edges[0]))


def partition_moment(probabilities, q: float) -> float:
    """Z_q = sum of p^q over occupied bins; Z_0 counts occupied bins."""
    if q < 0:
        raise ValueError("negative moments are not supported")
    probs = np.asarray(probabilities, dtype=float)
    occupied = probs[probs > 0.0]
    if q == 0:
        return float(occupied.size)
    return float(np.sum(occupied**q))


def _window_fit(x, y):
    """Least-squares slope and R^2 of y against x; constant y fits slope 0 exactly."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    sxy = float(np.dot(xc, yc))
    if syy <= 1e-24 * max(1.0, y.mean() ** 2):
        return 0.0, 1.0
    slope = sxy / sxx
    r2 = sxy * sxy / (sxx * syy)
    return slope, min(max(r2, 0.0), 1.0)


def _min_window(n_scales: int) -> int:
    return min(max(MIN_FIT_POINTS, -(-n_scales // 2)), n_scales)


def _window_q_mask(q_grid) -> np.ndarray:
    """q entries steering the window choice: those in the mu-fit range if any."""
    q = np.asarray(q_grid, dtype=float)
    mask = (q >= MU_FIT_RANGE[0] - 1e-12) & (q <= MU_FIT_RANGE[1] + 1e-12)
    return mask if np.any(mask) else np.ones_like(mask, dtype=bool)


def detect_linear_region(x, ys, q_mask) -> tuple:
    """Shared scaling window: maximize the mean R^2 of the masked columns.

    Scans every contiguous window of at least half the points (>= 5); ties go
    to the longer window.  Returns (start, stop) with stop exclusive.
    """
    x = np.asarray(x, dtype=float)
    ys = np.asarray(ys, dtype=float)
    n = x.size
    best = None
    for length in range(_min_window(n), n + 1):
        for start in range(0, n - length + 1):
            r2s = [_window_fit(x[start:start + length], ys[start:start + length, k])[1]
                   for k in np.nonzero(q_mask)[0]]
            mean_r2 = float(np.mean(r2s))
            if best is None or mean_r2 > best[0] + 1e-12 or (abs(mean_r2 - best[0]) <= 1e-12 and length > best[1][1] - best[1][0]):
                best = (mean_r2, (start, start + length))
    return best[1]


@dataclass(frozen=True)
class ScalingSpectrum:
    """tau_q and D_q with per-q fit diagnostics.

    dq is NaN where q = 1 (flagged in skipped_q); mu is the slope of tau_q
    versus q over [2, 8]; fit_windows holds the (start, stop) scale-index
    window used for each q.
    """

    q_grid: np.ndarray
    tau: np.ndarray
    dq: np.ndarray
    fit_r2: np.ndarray
    scale_grid: np.ndarray
    fit_windows: tuple
    mu: float
    skipped_q: tuple = ()


def default_scale_grid(n_values: int, n_points: int = 32) -> np.ndarray:
    """Bin counts sampled densely in log scale from 16 up to ~n_values/4.

    Box counts of quasiperiodic spectra oscillate around their scaling law;
    dense sampling lets the least-squares fit average the oscillation.
    """
    cap = max(n_values // 4, 64)
    grid = np.unique(np.round(np.geomspace(16, cap, n_points)).astype(int))
    return grid


def generalized_dimensions(spectrum: ScalingSpectrum) -> ScalingSpectrum:
    """Fill D_q = tau_q / (1 - q), skipping q = 1 with a flag."""
    q = np.asarray(spectrum.q_grid, dtype=float)
    near_one = np.abs(q - 1.0) <= _Q_ONE_TOL
    dq = np.full_like(q, np.nan)
    dq[~near_one] = spectrum.tau[~near_one] / (1.0 - q[~near_one])
    skipped = tuple(float(v) for v in q[near_one])
    return replace(spectrum, dq=dq, skipped_q=skipped)


def _slope_over_q(q_grid, tau, q_range=MU_FIT_RANGE):
    q = np.asarray(q_grid, dtype=float)
    mask = (q >= q_range[0] - 1e-12) & (q <= q_range[1] + 1e-12)
    if np.count_nonzero(mask) < 2:
        return float("nan")
    slope, _ = _window_fit(q[mask], np.asarray(tau, dtype=float)[mask])
    return float(slope)


def tau_spectrum(values, q_grid=None, scale_grid=None) -> ScalingSpectrum:
    """Box-counting scaling exponents tau_q of a set of real values.

    For each bin count N in scale_grid, Z_q(N) comes from the box
    probabilities; tau_q is the slope of log Z_q against log N inside the
    shared detected linear region.
    """
    values = np.asarray(values, dtype=float).ravel()
    q_grid = np.asarray(DEFAULT_Q_GRID if q_grid is None else q_grid, dtype=float)
    if np.any(q_grid < 0):
        raise ValueError("negative moments are not supported")
    scale_grid = default_scale_grid(values.size) if scale_grid is None else np.asarray(scale_grid, dtype=int)
    if scale_grid.size < 4:
        raise ValueError(f"need at least 4 scales, got {scale_grid.size}")

    log_n = np.log(scale_grid.astype(float))
    log_z = np.empty((scale_grid.size, q_grid.size))
    for i, n_bins in enumerate(scale_grid):
        probs = box_probabilities(values, int(n_bins)).probabilities
        for k, q in enumerate(q_grid):
            log_z[i, k] = np.log(partition_moment(probs, float(q)))

    start, stop = detect_linear_region(log_n, log_z, _window_q_mask(q_grid))
    tau = np.empty(q_grid.size)
    r2 = np.empty(q_grid.size)
    for k in range(q_grid.size):
        tau[k], r2[k] = _window_fit(log_n[start:stop], log_z[start:stop, k])

    spectrum = ScalingSpectrum(
        q_grid=q_grid,
        tau=tau,
        dq=np.full_like(tau, np.nan),
        fit_r2=r2,
        scale_grid=scale_grid,
        fit_windows=tuple((start, stop) for _ in range(q_grid.size)),
        mu=_slope_over_q(q_grid, tau),
    )
    return generalized_dimensions(spectrum)


def information_dimension(values, scale_grid=None) -> float:
    """D_1 from the entropy scaling sum(p log p) ~ -D_1 log N."""
    values = np.asarray(values, dtype=float).ravel()
    scale_grid = default_scale_grid(values.size) if scale_grid is None else np.asarray(scale_grid, dtype=int)
    if scale_grid.size < 4:
        raise ValueError(f"need at least 4 scales, got {scale_grid.size}")
    log_n = np.log(scale_grid.astype(float))
    entropy = np.empty((scale_grid.size, 1))
    for i, n_bins in enumerate(scale_grid):
        probs = box_probabilities(values, int(n_bins)).probabilities
        occupied = probs[probs > 0.0]
        entropy[i, 0] = float(np.sum(occupied * np.log(occupied)))
    start, stop = detect_linear_region(log_n, entropy, np.array([True]))
    slope, _ = _window_fit(log_n[start:stop], entropy[start:stop, 0])
    return -float(slope)


# ---------------------------------------------------------------------------
# Eigenvector profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenvectorProfile:
    """Component weights |c_m|^2 with localization and scaling diagnostics."""

    weights: np.ndarray
    pr: float
    q_grid: np.ndarray
    tau_bar: np.ndarray
    d_bar: np.ndarray
    mu_bar: float
    fit_r2: np.ndarray
    partition_grid: np.ndarray

    @property
    def d2(self) -> float:
        return _value_at_q(self.q_grid, self.d_bar, 2.0)

    @property
    def d5(self) -> float:
        return _value_at_q(self.q_grid, self.d_bar, 5.0)


def _value_at_q(q_grid, values, q: float) -> float:
    idx = np.nonzero(np.abs(np.asarray(q_grid) - q) <= 1e-9)[0]
    return float(values[idx[0]]) if idx.size else float("nan")


def _require_normalized(weights) -> np.ndarray:
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < -1e-12):
        raise ValueError("weights must be non-negative")
    sums = weights.sum(axis=0)
    if np.any(np.abs(sums - 1.0) > 1e-8):
        raise ValueError("weights must sum to 1 per state")
    return weights


def participation_ratio(weights) -> float:
    """1 / sum(w^2): the effective number of supporting basis states."""
    weights = _require_normalized(np.asarray(weights, dtype=float).ravel())
    return float(1.0 / np.sum(weights**2))


def default_partition_grid(dim: int) -> np.ndarray:
    """Partition counts 2, 4, ... capped so cells keep at least ~8 components.

    Cells wider than typical localization lengths keep strongly localized
    states at flat scaling (D_bar ~ 0) instead of probing their interior.
    """
    cap = max(dim // 8, 4)
    grid = []
    m = 2
    while m <= cap:
        grid.append(m)
        m *= 2
    return np.asarray(grid, dtype=int)


def _partition_starts(dim: int, n_parts: int) -> np.ndarray:
    """Start indices of n_parts contiguous near-equal blocks covering dim slots."""
    sizes = np.full(n_parts, dim // n_parts, dtype=int)
    sizes[: dim % n_parts] += 1
    starts = np.zeros(n_parts, dtype=int)
    np.cumsum(sizes[:-1], out=starts[1:])
    return starts


def analyze_eigenvectors(weight_columns, q_grid=None, partition_grid=None) -> list:
    """EigenvectorProfile for every column of a (dim x n_states) weight matrix.

    Weights are grouped into M contiguous positional partitions for each M in
    partition_grid, and sum(p~^q) is regressed against log M inside each
    state's shared linear region, giving tau_bar_q = (1-q) D_bar_q, so
    D_bar_2 = -tau_bar_2 and D_bar_5 = -tau_bar_5/4.
    """
    weights = np.asarray(weight_columns, dtype=float)
    if weights.ndim == 1:
        weights = weights[:, np.newaxis]
    dim, n_states = weights.shape
    q_grid = np.asarray(DEFAULT_Q_GRID if q_grid is None else q_grid, dtype=float)
    if np.any(q_grid < 0):
        raise ValueError("negative moments are not supported")
    partition_grid = default_partition_grid(dim) if partition_grid is None else np.asarray(partition_grid, dtype=int)
    if np.any(partition_grid < 2):
        raise ValueError("each partition count must be >= 2")
    _require_normalized(weights)

    pr = 1.0 / np.sum(weights**2, axis=0)

    # log sum(p~^q) for every scale, q, state
    n_scales = partition_grid.size
    log_s = np.empty((n_scales, q_grid.size, n_states))
    for i, n_parts in enumerate(partition_grid):
        parts = np.add.reduceat(weights, _partition_starts(dim, int(n_parts)), axis=0)
        occupied = parts > 0.0
        for k, q in enumerate(q_grid):
            if q == 0:
                moment = occupied.sum(axis=0).astype(float)
            else:
                moment = np.sum(np.where(occupied, parts, 1.0) ** q * occupied, axis=0)
            log_s[i, k, :] = np.log(moment)

    log_m = np.log(partition_grid.astype(float))
    tau_bar, fit_r2 = _batched_shared_window(log_m, log_s, _window_q_mask(q_grid))

    near_one = np.abs(q_grid - 1.0) <= _Q_ONE_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        d_bar = tau_bar / (1.0 - q_grid)[:, np.newaxis]
    d_bar[near_one, :] = np.nan

    mu_mask = (q_grid >= MU_FIT_RANGE[0] - 1e-12) & (q_grid <= MU_FIT_RANGE[1] + 1e-12)
    if np.count_nonzero(mu_mask) >= 2:
        mu_bar = np.array([_window_fit(q_grid[mu_mask], tau_bar[mu_mask, s])[0] for s in range(n_states)])
    else:
        mu_bar = np.full(n_states, np.nan)

    return [
        EigenvectorProfile(
            weights=weights[:, s].copy(),
            pr=float(pr[s]),
            q_grid=q_grid,
            tau_bar=tau_bar[:, s].copy(),
            d_bar=d_bar[:, s].copy(),
            mu_bar=float(mu_bar[s]),
            fit_r2=fit_r2[:, s].copy(),
            partition_grid=partition_grid,
        )
        for s in range(n_states)
    ]


def _batched_shared_window(x, log_s, q_mask):
    """Per-state shared-window fits of log moments against x.

    log_s has shape (n_scales, n_q, n_states); returns (tau, r2), both of
    shape (n_q, n_states).  The window maximizes each state's mean R^2 over
    the masked q columns; ties prefer longer windows.
    """
    n, n_q, n_states = log_s.shape
    q_idx = np.nonzero(q_mask)[0]
    best_r2m = np.full(n_states, -1.0)
    best_len = np.zeros(n_states, dtype=int)
    tau = np.zeros((n_q, n_states))
    r2 = np.ones((n_q, n_states))
    for length in range(_min_window(n), n + 1):
        for start in range(0, n - length + 1):
            xw = x[start:start + length]
            xc = xw - xw.mean()
            sxx = float(np.dot(xc, xc))
            slopes = np.empty((n_q, n_states))
            r2s = np.empty((n_q, n_states))
            for k in range(n_q):
                yw = log_s[start:start + length, k, :]
                yc = yw - yw.mean(axis=0)
                syy = np.einsum("ij,ij->j", yc, yc)
                sxy = xc @ yc
                with np.errstate(divide="ignore", invalid="ignore"):
                    slopes[k] = np.where(syy > 1e-24, sxy / sxx, 0.0)
                    r2s[k] = np.where(syy > 1e-24, np.clip(sxy**2 / (sxx * syy), 0.0, 1.0), 1.0)
            mean_r2 = r2s[q_idx].mean(axis=0)
            better = (mean_r2 > best_r2m + 1e-12) | ((np.abs(mean_r2 - best_r2m) <= 1e-12) & (length > best_len))
            tau[:, better] = slopes[:, better]
            r2[:, better] = r2s[:, better]
            best_len = np.where(better, length, best_len)
            best_r2m = np.where(better, mean_r2, best_r2m)
    return tau, r2


def eigenvector_tau(weights, q_grid=None, partition_grid=None) -> EigenvectorProfile:
    """Scaling profile of a single normalized weight vector."""
    return analyze_eigenvectors(np.asarray(weights, dtype=float).reshape(-1, 1),
                                q_grid=q_grid, partition_grid=partition_grid)[0]


# ---------------------------------------------------------------------------
# Ensembles and histograms
# ---------------------------------------------------------------------------

def _histogram_summary(values, n_bins: int, thresholds=()) -> dict:
    values = np.asarray(values, dtype=float)
    counts, edges = np.histogram(values, bins=n_bins)
    total = max(values.size, 1)
    return {
        "mean": float(values.mean()),
        "variance": float(values.var()),
        "histogram": (counts / total).tolist(),
        "bin_edges": edges.tolist(),
        "fraction_below": {str(t): float(np.mean(values < t)) for t in thresholds},
    }


def ensemble_statistics(profiles, n_bins: int = 50,
                        pr_thresholds=(20.0,), d_thresholds=(0.05,), mu_thresholds=()) -> dict:
    """Normalized histograms and summary statistics of D_bar_2, D_bar_5, mu_bar, PR."""
    if not profiles:
        raise ValueError("need at least one eigenvector profile")
    return {
        "count": len(profiles),
        "pr": _histogram_summary([p.pr for p in profiles], n_bins, pr_thresholds),
        "d2": _histogram_summary([p.d2 for p in profiles], n_bins, d_thresholds),
        "d5": _histogram_summary([p.d5 for p in profiles], n_bins, d_thresholds),
        "mu": _histogram_summary([p.mu_bar for p in profiles], n_bins, mu_thresholds),
    }


def spectral_histogram(values, n_bins: int, window=None) -> dict:
    """Density histogram of values over an optional sub-interval."""
    values = np.asarray(values, dtype=float).ravel()
    if window is not None:
        lo, hi = float(window[0]), float(window[1])
        values = values[(values >= lo) & (values <= hi)]
        if values.size == 0:
            raise ValueError(f"no values inside window ({lo}, {hi})")
        rng = (lo, hi)
    else:
        if values.size == 0:
            raise ValueError("no values to histogram")
        rng = (float(values.min()), float(values.max()))
    density, edges = np.histogram(values, bins=n_bins, range=rng, density=True)
    return {"bin_edges": edges.tolist(), "density": density.tolist()}
