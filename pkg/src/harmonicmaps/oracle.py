"""Brute-force verification oracles, independent of every criterion.

Criterion checkers certify inequalities that merely imply univalence; the
oracles attack the conclusion directly at fixed resolution:

* :func:`injectivity_scan` -- O(n^2) pairwise separation of image points on a
  quasi-uniform (sunflower) sample of the disk,
* :func:`jacobian_positivity_scan` -- local sense-preservation on a grid,
* :func:`curve_simplicity` -- does the image of a circle self-intersect?
  (polyline segment-pair test with orientation predicates, plus the winding
  number of the image curve about its centroid).

Verdicts are evidence at the recorded resolution, nothing more.  The pair
scans split across threads when the HARMONIC_THREADS environment variable
asks for it; reductions are by (value, index) so the report is identical
however the pair space was partitioned.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .criteria import (
    VERDICT_HOLDS,
    VERDICT_VIOLATED,
    CheckReport,
    _verdict_from_margin,
)
from .mappings import GridSpec, HarmonicMap, DEFAULT_GRID, eval_map, jacobian

# Collinearity slack for the normalized orientation predicate.
ORIENT_SLACK = 1e-12


def worker_count() -> int:
    """Worker cap from HARMONIC_THREADS (default 1, floor 1)."""
    raw = os.environ.get("HARMONIC_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def sunflower_points(n: int, r_max: float = 0.95) -> np.ndarray:
    """Golden-angle spiral filling the disk ``|z| <= r_max`` quasi-uniformly.

    The k-th point sits at radius ``r_max*sqrt((k+0.5)/n)`` and angle
    ``k*pi*(3-sqrt(5))``; density is nearly constant with no grid anisotropy.
    """
    if n < 1:
        raise ValueError("need at least one point")
    k = np.arange(n)
    radii = r_max * np.sqrt((k + 0.5) / n)
    angles = k * np.pi * (3.0 - np.sqrt(5.0))
    return radii * np.exp(1j * angles)


def _pair_chunk_min(vals, pts, rows):
    """Worst separation ratio of pairs (i, j>i) for i in ``rows``.

    Returns (ratio, i, j); ties are impossible to matter because the caller
    breaks them on (ratio, i, j) order.
    """
    best = (np.inf, -1, -1)
    for i in rows:
        dz = np.abs(pts[i + 1:] - pts[i])
        df = np.abs(vals[i + 1:] - vals[i])
        ratio = df / dz
        j = int(np.argmin(ratio))
        cand = (float(ratio[j]), i, i + 1 + j)
        if cand < best:
            best = cand
    return best


def injectivity_scan(f: HarmonicMap, n_points: int = 400, r_max: float = 0.95,
                     tol: float = 1e-6, points=None) -> CheckReport:
    """All-pairs injectivity evidence on a disk sample.

    The margin is the worst ratio ``|f(z_i)-f(z_j)| / |z_i-z_j|`` over all
    pairs; the verdict is violated iff that ratio drops to ``tol`` or below
    (two sample points essentially sharing an image).

    Parameters
    ----------
    f : HarmonicMap
    n_points : int
        Sample count (>= 50) for the default sunflower layout.
    r_max : float
        Sample disk radius.
    tol : float
        Collision threshold on the ratio (default 1e-6).
    points : ndarray of complex, optional
        Explicit sample locations overriding the sunflower layout (used to
        place known-colliding pairs exactly).
    """
    if points is None:
        if n_points < 50:
            raise ValueError("need at least 50 sample points")
        pts = sunflower_points(n_points, r_max)
        layout = {"kind": "sunflower", "n": int(n_points), "r_max": float(r_max)}
    else:
        pts = np.asarray(points, dtype=complex).ravel()
        if pts.size < 2:
            raise ValueError("need at least two sample points")
        layout = {"kind": "explicit", "n": int(pts.size)}
    vals = np.asarray(eval_map(f, pts), dtype=complex)
    workers = worker_count()
    rows = range(pts.size - 1)
    if workers == 1:
        best = _pair_chunk_min(vals, pts, rows)
    else:
        chunks = np.array_split(np.asarray(rows), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _pair_chunk_min(vals, pts, c), chunks))
        best = min(results)
    ratio, i, j = best
    verdict = VERDICT_HOLDS if ratio > tol else VERDICT_VIOLATED
    return CheckReport("injectivity", verdict, float(ratio),
                       witness=complex(pts[i]), grid=layout,
                       meta={"tol": float(tol), "worst_pair": [int(i), int(j)],
                             "workers": workers})


def jacobian_positivity_scan(f: HarmonicMap, grid: GridSpec = DEFAULT_GRID) -> CheckReport:
    """Minimum Jacobian over the grid; positive margin = sense-preserving on samples."""
    pts = grid.points()
    jac = np.asarray(jacobian(f, pts), dtype=float)
    k = int(np.argmin(jac))
    return CheckReport("jacobian-positivity", _verdict_from_margin(float(jac[k])),
                       float(jac[k]), witness=complex(pts[k]), grid=grid)


def _point_segment_distance(p, a, b):
    """Distance from points p to segments [a, b] (all arrays, elementwise)."""
    u = b - a
    denom = np.maximum(np.abs(u) ** 2, 1e-300)
    t = np.clip(np.real(np.conj(u) * (p - a)) / denom, 0.0, 1.0)
    return np.abs(p - (a + t * u))


def curve_simplicity(f: HarmonicMap, rho: float, n: int = 256) -> CheckReport:
    """Does f map the circle ``|z| = rho`` onto a simple closed polyline?

    Builds the closed image polyline on n circle points, collapses duplicate
    consecutive vertices, and tests every non-adjacent segment pair: a proper
    crossing (strict opposite orientations both ways) or a pair at distance
    ~0 (touching or collinear overlap) makes the verdict violated.  The
    margin is the minimum distance between non-adjacent segments (0 when they
    intersect), and the winding number of the polyline about its centroid is
    reported alongside (1 for a simple positively-oriented image).
    """
    if n < 64:
        raise ValueError("need at least 64 circle points")
    circle = rho * np.exp(2j * np.pi * np.arange(n) / n)
    vals = np.asarray(eval_map(f, circle), dtype=complex)
    scale = float(np.max(np.abs(vals - np.mean(vals))))
    keep = np.ones(n, dtype=bool)
    keep[1:] = np.abs(np.diff(vals)) > 1e-15 * max(scale, 1.0)
    if np.abs(vals[-1] - vals[0]) <= 1e-15 * max(scale, 1.0) and keep[-1]:
        keep[-1] = False
    p = vals[keep]
    zsrc = circle[keep]
    m = p.size
    if m < 3:
        return CheckReport("curve-simplicity", VERDICT_VIOLATED, 0.0,
                           witness=complex(circle[0]),
                           grid={"kind": "circle", "rho": float(rho), "n": int(n)},
                           meta={"failure": "image polyline degenerate"})
    a, b = p, np.roll(p, -1)
    iu, ju = np.triu_indices(m, k=2)
    wrap_adjacent = (iu == 0) & (ju == m - 1)
    iu, ju = iu[~wrap_adjacent], ju[~wrap_adjacent]
    a1, b1, a2, b2 = a[iu], b[iu], a[ju], b[ju]

    def orient(u, v, w):
        """Normalized orientation of w relative to segment u->v, in [-1, 1]."""
        s = v - u
        t = w - u
        denom = np.maximum(np.abs(s) * np.abs(t), 1e-300)
        return np.imag(np.conj(s) * t) / denom

    d1 = orient(a1, b1, a2)
    d2 = orient(a1, b1, b2)
    d3 = orient(a2, b2, a1)
    d4 = orient(a2, b2, b1)
    s1 = np.where(np.abs(d1) <= ORIENT_SLACK, 0.0, np.sign(d1))
    s2 = np.where(np.abs(d2) <= ORIENT_SLACK, 0.0, np.sign(d2))
    s3 = np.where(np.abs(d3) <= ORIENT_SLACK, 0.0, np.sign(d3))
    s4 = np.where(np.abs(d4) <= ORIENT_SLACK, 0.0, np.sign(d4))
    proper = (s1 * s2 < 0) & (s3 * s4 < 0)
    dist = np.minimum.reduce([
        _point_segment_distance(a2, a1, b1),
        _point_segment_distance(b2, a1, b1),
        _point_segment_distance(a1, a2, b2),
        _point_segment_distance(b1, a2, b2),
    ])
    dist = np.where(proper, 0.0, dist)
    k = int(np.argmin(dist))
    margin = float(dist[k])
    crossing = bool(proper[k]) or margin <= ORIENT_SLACK * max(scale, 1.0)
    # Winding of the polyline about its centroid.
    rel = p - np.mean(p)
    dang = np.angle(np.roll(rel, -1) / rel)
    winding = int(np.round(np.sum(dang) / (2.0 * np.pi)))
    verdict = VERDICT_VIOLATED if crossing else VERDICT_HOLDS
    return CheckReport("curve-simplicity", verdict,
                       0.0 if crossing else margin,
                       witness=complex(zsrc[iu[k]]),
                       grid={"kind": "circle", "rho": float(rho), "n": int(n)},
                       meta={"winding": winding,
                             "segments": int(m),
                             "worst_pair": [int(iu[k]), int(ju[k])]})
