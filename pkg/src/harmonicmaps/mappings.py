"""Pointwise analytic data for planar harmonic mappings.

A harmonic mapping of the unit disk splits as ``f = h + conj(g)`` with ``h``
and ``g`` analytic.  This module holds the small evaluator bundles everything
else is built from:

* :class:`AnalyticFunction` -- value + derivative of a single-valued analytic
  function (closed form or truncated power series),
* :class:`HarmonicMap` -- the pair ``(h, g)``,
* :class:`WirtingerFunction` -- a C^1 function ``phi(w, conj w)`` with both
  Wirtinger partials,
* :class:`GridSpec` -- the polar sample grid used by every criterion scan,

together with the pointwise operations: evaluation, Jacobian, dilatation and
the Wirtinger chain rule for compositions ``phi(f(z), conj f(z))``.

All evaluators are numpy-polymorphic: they accept a complex scalar or an
ndarray of points and broadcast elementwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, SingularDerivativeError

# Central finite-difference step used by every consistency validation.
# 1e-6 balances truncation against double-precision roundoff.
FD_STEP = 1e-6

# Below this magnitude a derivative is treated as (numerically) zero.
SINGULAR_TOL = 1e-14


@dataclass(frozen=True)
class AnalyticFunction:
    """Evaluator bundle for a single-valued analytic function.

    Parameters
    ----------
    eval : callable
        ``z -> f(z)``, complex in, complex out (scalar or ndarray).
    deriv : callable
        ``z -> f'(z)``, same conventions.
    domain_radius : float
        Radius of validity inside the unit disk, in (0, 1].  Branch choices
        are fixed at construction; ``eval`` must be single-valued for
        ``|z| < domain_radius``.
    description : str
        Human-readable label used in reports and rendered output.
    """

    eval: Callable
    deriv: Callable
    domain_radius: float = 1.0
    description: str = ""

    def __post_init__(self):
        if not 0.0 < self.domain_radius <= 1.0:
            raise ValueError(f"domain_radius must lie in (0, 1], got {self.domain_radius}")

    def __call__(self, z):
        return self.eval(z)


def constant_function(value=0.0, description="constant"):
    """Analytic function with constant value (derivative identically zero)."""
    c = complex(value)
    return AnalyticFunction(
        eval=lambda z: np.full_like(np.asarray(z, dtype=complex), c) if np.ndim(z) else c,
        deriv=lambda z: np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0.0 + 0.0j,
        description=description,
    )


def identity_function():
    """The identity map ``z -> z``."""
    return AnalyticFunction(
        eval=lambda z: np.asarray(z, dtype=complex) if np.ndim(z) else complex(z),
        deriv=lambda z: np.ones_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 1.0 + 0.0j,
        description="z",
    )


def from_series(coeffs, radius=1.0, description=None):
    """Analytic function from power-series coefficients ``[c1, c2, ...]``.

    The constant term is zero: ``f(z) = c1*z + c2*z**2 + ...``.  Evaluation
    uses Horner form; the derivative series is differentiated termwise.

    Parameters
    ----------
    coeffs : sequence of complex
        Coefficients of z, z**2, ... in order.
    radius : float
        Declared radius of validity (default 1; caller override for series
        with smaller convergence radius).
    """
    c = np.asarray(list(coeffs), dtype=complex)
    if c.size == 0:
        return constant_function(0.0, description or "0")
    dc = c * np.arange(1, c.size + 1)

    def _eval(z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for ck in c[::-1]:
            acc = acc * z + ck
        return acc * z if z.ndim else complex(acc * z)

    def _deriv(z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for ck in dc[::-1]:
            acc = acc * z + ck
        return acc if z.ndim else complex(acc)

    label = description or f"series[{c.size} coeffs]"
    return AnalyticFunction(eval=_eval, deriv=_deriv, domain_radius=radius, description=label)


@dataclass(frozen=True)
class HarmonicMap:
    """Harmonic mapping ``f = h + conj(g)`` on a disk domain.

    The shared domain radius is the minimum of the two parts' radii.  When
    ``normalized`` is set the map is asserted (to 1e-12) to satisfy
    ``h(0) = g(0) = 0``, ``h'(0) = 1``, ``g'(0) = 0``.
    """

    h: AnalyticFunction
    g: AnalyticFunction
    label: str = ""
    normalized: bool = False

    def __post_init__(self):
        if self.normalized:
            checks = (
                abs(complex(self.h.eval(0j))),
                abs(complex(self.g.eval(0j))),
                abs(complex(self.h.deriv(0j)) - 1.0),
                abs(complex(self.g.deriv(0j))),
            )
            if max(checks) > 1e-12:
                raise ValueError(f"map '{self.label}' flagged normalized but violates "
                                 f"the normalization by {max(checks):.3e}")

    @property
    def domain_radius(self) -> float:
        return min(self.h.domain_radius, self.g.domain_radius)

    @classmethod
    def from_analytic(cls, fn: AnalyticFunction, label=None, normalized=False):
        """Wrap an analytic function as a harmonic map with vanishing co-analytic part."""
        return cls(h=fn, g=constant_function(0.0, "0"),
                   label=label if label is not None else fn.description,
                   normalized=normalized)


@dataclass(frozen=True)
class WirtingerFunction:
    """C^1 function ``phi(w, conj w)`` with both Wirtinger partials.

    ``eval``, ``dw`` and ``dwbar`` all take ``(w, wbar)``; ``dw`` is
    d/dw and ``dwbar`` is d/d(conj w).
    """

    eval: Callable
    dw: Callable
    dwbar: Callable
    domain: str = ""

    def __call__(self, w, wbar=None):
        return self.eval(w, np.conj(w) if wbar is None else wbar)


def linear_wirtinger(a, b, domain="plane"):
    """The function ``phi(w, wbar) = a*w + b*wbar`` with constant partials."""
    a, b = complex(a), complex(b)

    def _shapefull(w, value):
        w = np.asarray(w)
        return np.full(w.shape, value, dtype=complex) if w.ndim else value

    return WirtingerFunction(
        eval=lambda w, wbar: a * np.asarray(w, dtype=complex) + b * np.asarray(wbar, dtype=complex)
        if np.ndim(w) else a * w + b * wbar,
        dw=lambda w, wbar: _shapefull(w, a),
        dwbar=lambda w, wbar: _shapefull(w, b),
        domain=domain,
    )


def analytic_wirtinger(fn: AnalyticFunction, domain="image domain"):
    """View an analytic ``phi(w)`` as a Wirtinger function (d/d(conj w) = 0)."""
    return WirtingerFunction(
        eval=lambda w, wbar: fn.eval(w),
        dw=lambda w, wbar: fn.deriv(w),
        dwbar=lambda w, wbar: np.zeros_like(np.asarray(w, dtype=complex)) if np.ndim(w) else 0.0 + 0.0j,
        domain=domain,
    )


@dataclass(frozen=True)
class GridSpec:
    """Polar sample grid on the closed disk ``|z| <= r_max`` including z=0.

    The sample count is ``n_radial * n_angular + 1``; radii are
    ``r_max * i/n_radial`` (i = 1..n_radial) and angles ``2*pi*j/n_angular``.
    """

    n_radial: int = 40
    n_angular: int = 96
    r_max: float = 0.95

    def __post_init__(self):
        if self.n_radial < 1 or self.n_angular < 1:
            raise ValueError("grid needs at least one radial and one angular sample")
        if not 0.0 < self.r_max < 1.0:
            raise ValueError(f"r_max must lie in (0, 1), got {self.r_max}")

    def points(self, r_max=None) -> np.ndarray:
        """All sample points, z=0 first, then radii-major order.

        ``r_max`` overrides the stored outer radius (used when the same
        resolution is reused on a smaller disk).
        """
        rmax = self.r_max if r_max is None else r_max
        if rmax == 0.0:
            return np.zeros(1, dtype=complex)
        radii = rmax * np.arange(1, self.n_radial + 1) / self.n_radial
        angles = 2.0 * np.pi * np.arange(self.n_angular) / self.n_angular
        zs = np.outer(radii, np.exp(1j * angles)).ravel()
        return np.concatenate(([0.0 + 0.0j], zs))

    def to_dict(self):
        return {"kind": "polar", "n_radial": self.n_radial,
                "n_angular": self.n_angular, "r_max": self.r_max}


DEFAULT_GRID = GridSpec()


def _check_domain(f, z, slack=0.0):
    radius = f.domain_radius if isinstance(f, (HarmonicMap, AnalyticFunction)) else float(f)
    zmax = np.max(np.abs(z))
    if zmax >= radius + slack:
        raise DomainError(f"|z| = {zmax:.6g} outside domain radius {radius:.6g}")


def eval_map(f: HarmonicMap, z):
    """Value ``h(z) + conj(g(z))`` of the harmonic map at z (scalar or array)."""
    _check_domain(f, z)
    return f.h.eval(z) + np.conj(f.g.eval(z))


def jacobian(f: HarmonicMap, z):
    """Jacobian ``|h'(z)|**2 - |g'(z)|**2``; positive iff sense-preserving at z."""
    _check_domain(f, z)
    return np.abs(f.h.deriv(z)) ** 2 - np.abs(f.g.deriv(z)) ** 2


def dilatation(f: HarmonicMap, z):
    """Second complex dilatation ``g'(z)/h'(z)``.

    Raises
    ------
    SingularDerivativeError
        If ``|h'(z)|`` falls below 1e-14 at any requested point.
    """
    _check_domain(f, z)
    hp = f.h.deriv(z)
    if np.min(np.abs(hp)) <= SINGULAR_TOL:
        bad = np.asarray(z, dtype=complex).ravel()[int(np.argmin(np.abs(np.asarray(hp).ravel())))] \
            if np.ndim(z) else z
        raise SingularDerivativeError(f"h'(z) vanishes at z = {bad}")
    return f.g.deriv(z) / hp


def composed_wirtinger(f: HarmonicMap, phi: WirtingerFunction, z):
    """Wirtinger partials of ``Psi(z) = phi(f(z), conj f(z))``.

    Chain rule for non-analytic compositions:

        Psi_z    = phi_w * h'(z) + phi_wbar * g'(z)
        Psi_zbar = phi_w * conj(g'(z)) + phi_wbar * conj(h'(z))

    Returns the pair ``(Psi_z, Psi_zbar)``.
    """
    _check_domain(f, z)
    w = f.h.eval(z) + np.conj(f.g.eval(z))
    wbar = np.conj(w)
    pw = phi.dw(w, wbar)
    pwb = phi.dwbar(w, wbar)
    hp = f.h.deriv(z)
    gp = f.g.deriv(z)
    return pw * hp + pwb * gp, pw * np.conj(gp) + pwb * np.conj(hp)


# ---------------------------------------------------------------------------
# Finite-difference consistency checks (the validation oracle for evaluator
# bundles; all reported errors are relative).

def derivative_consistency(fn: AnalyticFunction, points, step=FD_STEP):
    """Max relative deviation of ``fn.deriv`` from a central difference of ``fn.eval``."""
    z = np.asarray(points, dtype=complex)
    fd = (fn.eval(z + step) - fn.eval(z - step)) / (2.0 * step)
    an = fn.deriv(z)
    scale = np.maximum(np.abs(an), 1.0)
    return float(np.max(np.abs(fd - an) / scale))


def wirtinger_fd(func, w, step=FD_STEP):
    """Finite-difference Wirtinger partials of ``w -> func(w, conj w)``.

    Uses d/dw = (d/dx - i d/dy)/2 and d/d(conj w) = (d/dx + i d/dy)/2.
    """
    w = np.asarray(w, dtype=complex)
    fx = (func(w + step, np.conj(w + step)) - func(w - step, np.conj(w - step))) / (2.0 * step)
    fy = (func(w + 1j * step, np.conj(w + 1j * step)) - func(w - 1j * step, np.conj(w - 1j * step))) / (2.0 * step)
    return (fx - 1j * fy) / 2.0, (fx + 1j * fy) / 2.0


def composition_fd(f: HarmonicMap, phi: WirtingerFunction, z, step=FD_STEP):
    """Finite-difference partials of ``z -> phi(f(z), conj f(z))`` for cross-checks."""

    def psi(z_, zbar_unused=None):
        w = f.h.eval(z_) + np.conj(f.g.eval(z_))
        return phi.eval(w, np.conj(w))

    return wirtinger_fd(lambda u, ubar: psi(u), z, step=step)
