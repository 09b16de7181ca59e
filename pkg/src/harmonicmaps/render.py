"""Deterministic vector rendering of disk images under harmonic maps.

Draws the images of concentric circles and radial rays under a map as SVG
paths, with the unit circle (and optionally the reference slit along
(-infinity, -1]) for orientation.  Output is a plain string with fixed
6-decimal coordinates, fixed element ordering, and no timestamps, so the same
invocation always produces byte-identical files.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .mappings import HarmonicMap, eval_map

# Default outer radius 11/12 puts the eleven default circles at j/12.
DEFAULT_RHO_MAX = 11.0 / 12.0
N_CIRCLES = 11
N_RAYS = 24
CIRCLE_SAMPLES = 512
RAY_SAMPLES = 160


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _path(points, stroke, width, dashed=False) -> str:
    # SVG's y axis points down; flip so the upper half-plane renders on top.
    coords = " L ".join(f"{_fmt(p.real)} {_fmt(-p.imag)}" for p in points)
    dash = ' stroke-dasharray="{0} {0}"'.format(_fmt(width * 4)) if dashed else ""
    return (f'<path d="M {coords}" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}" fill="none"{dash}/>')


def disk_image_curves(f: HarmonicMap, rho_max: float = DEFAULT_RHO_MAX,
                      n_circles: int = N_CIRCLES, n_rays: int = N_RAYS):
    """Image polylines of concentric circles and radial rays under f.

    Returns ``(circles, rays)``: lists of complex ndarrays.  Circle radii are
    ``rho_max * j / n_circles`` (j = 1..n_circles); rays run from the origin
    to radius rho_max along ``n_rays`` equispaced directions.
    """
    if not 0.0 < rho_max < f.domain_radius:
        raise ValueError(f"rho_max must lie in (0, {f.domain_radius:g}), got {rho_max}")
    angles = 2.0 * np.pi * np.arange(CIRCLE_SAMPLES + 1) / CIRCLE_SAMPLES
    unit = np.exp(1j * angles)
    circles = [np.asarray(eval_map(f, rho_max * (j / n_circles) * unit))
               for j in range(1, n_circles + 1)]
    radii = rho_max * np.arange(RAY_SAMPLES + 1) / RAY_SAMPLES
    rays = [np.asarray(eval_map(f, radii * np.exp(2j * np.pi * k / n_rays)))
            for k in range(n_rays)]
    return circles, rays


def svg_document(f: HarmonicMap, rho_max: float = DEFAULT_RHO_MAX,
                 n_circles: int = N_CIRCLES, n_rays: int = N_RAYS,
                 draw_slit: bool = False) -> str:
    """Self-contained SVG of the disk image under f (deterministic bytes).

    ``draw_slit`` adds the reference ray (-infinity, -1] clipped to the
    viewport, for maps whose image is known to avoid it.
    """
    circles, rays = disk_image_curves(f, rho_max, n_circles, n_rays)
    pts = np.concatenate(circles + rays)
    xs = np.concatenate([np.real(pts), [-1.0, 1.0]])
    ys = np.concatenate([-np.imag(pts), [-1.0, 1.0]])
    x0, x1 = float(np.min(xs)), float(np.max(xs))
    y0, y1 = float(np.min(ys)), float(np.max(ys))
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-6)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    diag = float(np.hypot(x1 - x0, y1 - y0))
    thin, thick = diag * 0.0012, diag * 0.0025
    unit_angles = 2.0 * np.pi * np.arange(CIRCLE_SAMPLES + 1) / CIRCLE_SAMPLES
    unit_circle = np.exp(1j * unit_angles)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}">',
        f"<title>{escape(f.label or 'harmonic map image')}</title>",
        '<g stroke-linejoin="round" stroke-linecap="round">',
        _path(unit_circle, "#555555", thin, dashed=True),
    ]
    if draw_slit:
        parts.append(_path(np.array([complex(x0, 0.0), -1.0 + 0.0j]),
                           "#000000", thick))
    for curve in circles:
        parts.append(_path(curve, "#1f77b4", thin))
    for curve in rays:
        parts.append(_path(curve, "#d62728", thin * 0.8))
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
