"""JSON (de)serialization for maps, measures, parameters and reports.

Wire conventions, shared by the CLI and by anything persisting reports:

* complex numbers travel as two-element arrays ``[re, im]``;
* function specs are ``{"type": "named", "name": ..., "params": {...}}`` or
  ``{"type": "series", "h": [c1, c2, ...], "g": [d1, ...], "radius": r}``
  (series coefficients start at z^1; either part may be omitted or empty);
* measures are ``{"atoms": [[theta, weight], ...]}``;
* structural parameters are ``{"c": ..., "c1": ..., "c0": [re, im]}``;
* reports carry a ``schema_version`` so downstream parsers can pin layout.

NaN margins (inconclusive scans) serialize as null: strict JSON has no NaN.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .gallery import get as gallery_get
from .herglotz import DiscreteMeasure, StructuralParams
from .mappings import GridSpec, HarmonicMap, constant_function, from_series

SCHEMA_VERSION = 1


def complex_to_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def pair_to_complex(v) -> complex:
    """Accept ``[re, im]`` or a bare real number."""
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex values serialize as [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(float(v), 0.0)


def _plain(value):
    """Recursively coerce numpy scalars/containers into JSON-safe values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        f = float(value)
        return f if math.isfinite(f) else None
    if isinstance(value, (complex, np.complexfloating)):
        return complex_to_pair(value)
    return value


def report_to_dict(report) -> dict:
    """CheckReport as a stable, versioned, JSON-safe dictionary."""
    grid = report.grid
    if isinstance(grid, GridSpec):
        grid = grid.to_dict()
    margin = float(report.margin)
    return {
        "schema_version": SCHEMA_VERSION,
        "criterion": report.criterion,
        "verdict": report.verdict,
        "margin": margin if math.isfinite(margin) else None,
        "witness": None if report.witness is None else complex_to_pair(report.witness),
        "gamma": None if report.gamma is None else float(report.gamma),
        "grid": _plain(grid),
        "meta": _plain(report.meta),
    }


def dumps(payload: dict) -> str:
    """Deterministic JSON text: sorted keys, 2-space indent, no NaN."""
    return json.dumps(_plain(payload), indent=2, sort_keys=True, allow_nan=False)


def map_from_spec(spec: dict) -> HarmonicMap:
    """Build a HarmonicMap from a function-spec dictionary."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise ValueError("function spec must be an object with a 'type' field")
    kind = spec["type"]
    if kind == "named":
        name = spec.get("name")
        if not isinstance(name, str):
            raise ValueError("named spec needs a string 'name'")
        params = spec.get("params") or {}
        if not isinstance(params, dict):
            raise ValueError("'params' must be an object of real values")
        return gallery_get(name, {k: float(v) for k, v in params.items()})
    if kind == "series":
        radius = float(spec.get("radius", 1.0))
        h_coeffs = [pair_to_complex(c) for c in spec.get("h", [])]
        g_coeffs = [pair_to_complex(c) for c in spec.get("g", [])]
        h = from_series(h_coeffs, radius=radius) if h_coeffs \
            else constant_function(0.0, "0")
        g = from_series(g_coeffs, radius=radius) if g_coeffs \
            else constant_function(0.0, "0")
        label = spec.get("label", "series map")
        return HarmonicMap(h=h, g=g, label=str(label))
    raise ValueError(f"unknown function-spec type {kind!r}")


def measure_from_dict(data: dict) -> DiscreteMeasure:
    if not isinstance(data, dict) or "atoms" not in data:
        raise ValueError("measure JSON must be an object with an 'atoms' list")
    atoms = data["atoms"]
    if not isinstance(atoms, list) or not all(
            isinstance(a, (list, tuple)) and len(a) == 2 for a in atoms):
        raise ValueError("'atoms' must be a list of [theta, weight] pairs")
    return DiscreteMeasure(tuple((float(t), float(w)) for t, w in atoms))


def structural_params_from_dict(data: dict) -> StructuralParams:
    if not isinstance(data, dict):
        raise ValueError("structural params must be a JSON object")
    return StructuralParams(
        c=float(data.get("c", 1.0)),
        c1=float(data.get("c1", 0.0)),
        c0=pair_to_complex(data.get("c0", 0.0)),
    )
