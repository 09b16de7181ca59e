"""Named closed-form example maps with fixed branch conventions.

The registry holds the worked examples every test and CLI command leans on:

* plain analytic maps: ``identity``, ``cayley`` (half-plane map z/(1-z)),
  ``koebe`` (z/(1-z)^2), ``h0`` (z + z^2/2),
* the sheared family ``f_k = h0 + conj(k*h0)`` for k in [0, 1),
* ``h1``: a conformal map of the disk onto the region outside the closed unit
  disk with the ray (-infinity, -1] removed, built from two nested principal
  square roots (see :func:`_h1_parts`),
* its dilations ``h_r(z) = h1(r z)`` and the perturbed maps
  ``F_eps = h_r + eps*conj(z)`` and ``f_eps = (1+eps)*h_r + eps*conj(z)``.

Every entry is validated at build time: analytic derivatives are checked
against central finite differences, and the two square-root arguments of h1
are sampled across the disk to prove they stay clear of the branch cut
(a silent branch flip would corrupt every downstream check).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import GalleryLookupError
from .mappings import (
    AnalyticFunction,
    HarmonicMap,
    constant_function,
    derivative_consistency,
    from_series,
    identity_function,
)
from .oracle import sunflower_points

# Relative finite-difference tolerance for build-time validation.
_FD_TOL = 1e-4


@dataclass(frozen=True)
class GalleryEntry:
    """Registry row: builder plus the parameter names it requires."""

    name: str
    required_params: tuple
    notes: str
    builder: Callable

    def describe(self) -> dict:
        return {"name": self.name,
                "params": list(self.required_params),
                "notes": self.notes}


def _validated(fn: AnalyticFunction, n=60) -> AnalyticFunction:
    """Check fn.deriv against finite differences on a fixed disk sample."""
    pts = sunflower_points(n, 0.9 * fn.domain_radius)
    err = derivative_consistency(fn, pts)
    if err > _FD_TOL:
        raise ValueError(f"derivative of '{fn.description}' disagrees with "
                         f"finite differences (rel. err {err:.2e})")
    return fn


def _cayley() -> HarmonicMap:
    fn = AnalyticFunction(
        eval=lambda z: z / (1.0 - z),
        deriv=lambda z: 1.0 / (1.0 - z) ** 2,
        description="z/(1-z)",
    )
    return HarmonicMap.from_analytic(_validated(fn), label="cayley", normalized=True)


def _koebe() -> HarmonicMap:
    fn = AnalyticFunction(
        eval=lambda z: z / (1.0 - z) ** 2,
        deriv=lambda z: (1.0 + z) / (1.0 - z) ** 3,
        description="z/(1-z)^2",
    )
    return HarmonicMap.from_analytic(_validated(fn), label="koebe", normalized=True)


def _h0_function() -> AnalyticFunction:
    return from_series([1.0, 0.5], description="z + z^2/2")


def _h0() -> HarmonicMap:
    return HarmonicMap.from_analytic(_validated(_h0_function()), label="h0",
                                     normalized=True)


def _f_k(k: float) -> HarmonicMap:
    if not 0.0 <= k < 1.0:
        raise GalleryLookupError(f"f_k needs k in [0, 1), got {k}")
    h = _h0_function()
    g = from_series([k, 0.5 * k], description=f"{k:g}*(z + z^2/2)")
    return HarmonicMap(h=_validated(h), g=_validated(g),
                       label=f"f_k(k={k:g})", normalized=(k == 0.0))


# ---------------------------------------------------------------------------
# h1 and its derived family.

def _h1_parts(z):
    """The nested surds of h1: returns (inner_arg, s, t, g).

    inner_arg = 3 - 8z/(1+z)^2, s = sqrt(inner_arg), t = 1 - 2/(1+s),
    g = sqrt(t); both roots principal.  h1 = ((1+g)/(1-g))^2.
    """
    zc = np.asarray(z, dtype=complex)
    inner = 3.0 - 8.0 * zc / (1.0 + zc) ** 2
    s = np.sqrt(inner)
    t = 1.0 - 2.0 / (1.0 + s)
    g = np.sqrt(t)
    return inner, s, t, g


def _h1_eval(z):
    _, _, _, g = _h1_parts(z)
    out = ((1.0 + g) / (1.0 - g)) ** 2
    return out if np.ndim(z) else complex(out)


def _h1_deriv(z):
    zc = np.asarray(z, dtype=complex)
    _, s, _, g = _h1_parts(zc)
    du = 8.0 * (1.0 - zc) / (1.0 + zc) ** 3
    ds = -du / (2.0 * s)
    dt = 2.0 * ds / (1.0 + s) ** 2
    dg = dt / (2.0 * g)
    out = 4.0 * (1.0 + g) / (1.0 - g) ** 3 * dg
    return out if np.ndim(z) else complex(out)


def _assert_off_cut(values, what):
    """Fail loudly if any value sits on (or hugs) the cut (-inf, 0]."""
    v = np.asarray(values, dtype=complex).ravel()
    bad = (np.real(v) <= 0.0) & (np.abs(np.imag(v)) <= 1e-9)
    if np.any(bad):
        k = int(np.argmax(bad))
        raise ValueError(f"{what} touches the branch cut at value {v[k]}; "
                         "principal square root would flip sheets")


_H1_BRANCHES_CHECKED = False


def _h1_function() -> AnalyticFunction:
    """h1 with its one-time branch-cut audit over the disk."""
    global _H1_BRANCHES_CHECKED
    if not _H1_BRANCHES_CHECKED:
        pts = np.concatenate([
            sunflower_points(2000, 0.999),
            0.999 * np.exp(2j * np.pi * np.arange(720) / 720),
        ])
        inner, _, t, _ = _h1_parts(pts)
        _assert_off_cut(inner, "inner square-root argument of h1")
        _assert_off_cut(t, "outer square-root argument of h1")
        _H1_BRANCHES_CHECKED = True
    return AnalyticFunction(eval=_h1_eval, deriv=_h1_deriv, domain_radius=0.999,
                            description="((1+g)/(1-g))^2 with nested principal roots")


def _h1() -> HarmonicMap:
    return HarmonicMap.from_analytic(_validated(_h1_function()), label="h1")


def _h_r_function(r: float) -> AnalyticFunction:
    if not 0.0 < r < 1.0:
        raise GalleryLookupError(f"h_r needs r in (0, 1), got {r}")
    base = _h1_function()

    def _eval(z):
        return base.eval(r * np.asarray(z, dtype=complex) if np.ndim(z) else r * z)

    def _deriv(z):
        return r * base.deriv(r * np.asarray(z, dtype=complex) if np.ndim(z) else r * z)

    return AnalyticFunction(eval=_eval, deriv=_deriv, domain_radius=1.0,
                            description=f"h1({r:g}z)")


def _h_r(r: float) -> HarmonicMap:
    return HarmonicMap.from_analytic(_validated(_h_r_function(r)),
                                     label=f"h_r(r={r:g})")


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not np.isfinite(eps):
        raise GalleryLookupError(f"eps must be finite, got {eps}")
    return eps


def _F_eps(r: float, eps: float) -> HarmonicMap:
    eps = _check_eps(eps)
    g = from_series([eps], description=f"{eps:g}*z")
    return HarmonicMap(h=_validated(_h_r_function(r)), g=g,
                       label=f"F_eps(r={r:g}, eps={eps:g})")


def _f_eps(r: float, eps: float) -> HarmonicMap:
    eps = _check_eps(eps)
    base = _h_r_function(r)
    scale = 1.0 + eps

    def _eval(z):
        return scale * base.eval(z)

    def _deriv(z):
        return scale * base.deriv(z)

    h = AnalyticFunction(eval=_eval, deriv=_deriv, domain_radius=1.0,
                         description=f"{scale:g}*h1({r:g}z)")
    g = from_series([eps], description=f"{eps:g}*z")
    return HarmonicMap(h=_validated(h), g=g,
                       label=f"f_eps(r={r:g}, eps={eps:g})")


_REGISTRY = (
    GalleryEntry("identity", (), "the identity map of the disk",
                 lambda: HarmonicMap.from_analytic(identity_function(),
                                                   label="identity", normalized=True)),
    GalleryEntry("cayley", (), "half-plane map z/(1-z); convex image",
                 _cayley),
    GalleryEntry("koebe", (), "extremal map z/(1-z)^2 onto a slit plane",
                 _koebe),
    GalleryEntry("h0", (), "z + z^2/2; derivative 1+z has positive real part",
                 _h0),
    GalleryEntry("f_k", ("k",),
                 "shear h0 + conj(k*h0); univalent (close-to-convex) for k in [0,1)",
                 _f_k),
    GalleryEntry("h1", (),
                 "conformal map onto the outside of the closed unit disk minus "
                 "the ray (-inf, -1]; nested principal square roots",
                 _h1),
    GalleryEntry("h_r", ("r",), "dilation h1(rz), analytic on the closed disk",
                 _h_r),
    GalleryEntry("F_eps", ("r", "eps"),
                 "perturbed dilation h1(rz) + eps*conj(z)",
                 _F_eps),
    GalleryEntry("f_eps", ("r", "eps"),
                 "(1+eps)*h1(rz) + eps*conj(z); affine shear of F_eps",
                 _f_eps),
)

_BY_NAME = {e.name: e for e in _REGISTRY}


def names() -> tuple:
    """Registry names in their stable documented order."""
    return tuple(e.name for e in _REGISTRY)


def list_entries() -> list:
    """Descriptors (name, required params, notes) for every gallery map."""
    return [e.describe() for e in _REGISTRY]


def get(name: str, params: dict | None = None) -> HarmonicMap:
    """Build a gallery map by name.

    Parameters
    ----------
    name : str
        One of :func:`names`.
    params : dict, optional
        Real-valued parameters; exactly the entry's required set.

    Raises
    ------
    GalleryLookupError
        Unknown name, missing or unexpected parameters, or out-of-range
        values.
    """
    entry = _BY_NAME.get(name)
    if entry is None:
        raise GalleryLookupError(f"unknown gallery map {name!r}; "
                                 f"known: {', '.join(names())}")
    given = dict(params or {})
    missing = [p for p in entry.required_params if p not in given]
    extra = [p for p in given if p not in entry.required_params]
    if missing or extra:
        raise GalleryLookupError(
            f"map {name!r} takes parameters {list(entry.required_params)}; "
            f"missing {missing}, unexpected {extra}")
    args = [float(given[p]) for p in entry.required_params]
    return entry.builder(*args)
