"""Positive-real-part machinery and the structural comparison formula.

Functions analytic on the disk with ``p(0) = 1`` and ``Re p > 0`` are exactly
the integrals of the Poisson-type kernel ``(1 + z e^{i theta})/(1 - z e^{i theta})``
against a probability measure on the circle.  This module works with finite
(discrete) measures and builds, from a univalent analytic ``f`` and such a
measure, the full family of analytic comparison functions ``phi`` whose
composition with ``f`` has derivative of positive real part:

    phi(w) = -c[(1 + i c1) f^{-1}(w)
               + 2 * sum_k lambda_k e^{-i theta_k} log(1 - f^{-1}(w) e^{i theta_k})] + c0

with ``c > 0``, ``c1`` real, ``c0`` complex.  Differentiating the composition
gives the identity ``d/dz phi(f(z)) = c*p(z) - i*c*c1``, which
:func:`verify_structural_identity` checks by central finite differences.

Also here: the numerical inverse of a harmonic map (damped Newton on the
two-real-variable system) and its exact Wirtinger partials, used by the
criteria checkers as the canonical converse witness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InversionError, SingularDerivativeError
from .mappings import (
    AnalyticFunction,
    GridSpec,
    HarmonicMap,
    WirtingerFunction,
    DEFAULT_GRID,
    FD_STEP,
    eval_map,
)


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite nonnegative measure on [0, 2pi) with unit total mass.

    ``atoms`` is a tuple of ``(theta, weight)`` pairs with strictly increasing
    angles; weights must be nonnegative and sum to 1 within 1e-12.
    """

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((float(t), float(w)) for t, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise ValueError("measure needs at least one atom")
        thetas = [t for t, _ in atoms]
        weights = [w for _, w in atoms]
        if any(w < 0.0 for w in weights):
            raise ValueError("weights must be nonnegative")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {sum(weights)!r}")
        if any(not 0.0 <= t < 2.0 * np.pi for t in thetas):
            raise ValueError("atom angles must lie in [0, 2pi)")
        if any(t2 <= t1 for t1, t2 in zip(thetas, thetas[1:])):
            raise ValueError("atom angles must be strictly increasing")

    @property
    def thetas(self):
        return np.array([t for t, _ in self.atoms])

    @property
    def weights(self):
        return np.array([w for _, w in self.atoms])

    @classmethod
    def point_mass(cls, theta=0.0):
        return cls(((theta, 1.0),))

    @classmethod
    def uniform(cls, n):
        """n equal atoms at the n-th roots of unity directions."""
        return cls(tuple((2.0 * np.pi * k / n, 1.0 / n) for k in range(n)))

    def to_dict(self):
        return {"atoms": [[t, w] for t, w in self.atoms]}


@dataclass(frozen=True)
class StructuralParams:
    """Free constants of the structural formula: ``c > 0``, ``c1`` real, ``c0`` complex."""

    c: float = 1.0
    c1: float = 0.0
    c0: complex = 0.0 + 0.0j

    def __post_init__(self):
        if not self.c > 0.0:
            raise ValueError(f"c must be strictly positive, got {self.c}")
        object.__setattr__(self, "c0", complex(self.c0))


def herglotz_p(mu: DiscreteMeasure, z):
    """Kernel sum ``sum_k w_k (1 + z e^{i th_k})/(1 - z e^{i th_k})``.

    Satisfies ``p(0) = 1`` and ``Re p(z) > 0`` on the open disk.  Accepts a
    scalar or ndarray of points with ``|z| < 1``.
    """
    if np.max(np.abs(z)) >= 1.0:
        raise DomainError("herglotz_p requires |z| < 1")
    zs = np.asarray(z, dtype=complex)
    rot = np.exp(1j * mu.thetas)
    terms = (1.0 + zs[..., None] * rot) / (1.0 - zs[..., None] * rot)
    out = np.sum(mu.weights * terms, axis=-1)
    return out if zs.ndim else complex(out)


def build_phi(f_inv, mu: DiscreteMeasure, params: StructuralParams, w):
    """Structural comparison function at ``w`` (scalar or ndarray).

    ``f_inv`` maps image points back into the unit disk; logs are principal,
    which is single-valued here because ``1 - zeta e^{i theta}`` stays in the
    open disk of radius ``|zeta| < 1`` around 1 and so never meets the cut.
    """
    zeta = np.asarray(f_inv(w), dtype=complex)
    if np.max(np.abs(zeta)) >= 1.0:
        raise DomainError("f_inv(w) left the unit disk")
    rot = np.exp(1j * mu.thetas)
    logs = np.log(1.0 - zeta[..., None] * rot)
    series = 2.0 * np.sum(mu.weights * np.conj(rot) * logs, axis=-1)
    out = -params.c * ((1.0 + 1j * params.c1) * zeta + series) + params.c0
    return out if np.ndim(w) else complex(out)


def structural_phi_prime(f: AnalyticFunction, mu: DiscreteMeasure,
                         params: StructuralParams, inversion_tol=1e-12):
    """Derivative ``phi'(w)`` of the structural function, as a callable.

    Uses ``phi'(w) = (c*p(zeta) - i*c*c1) / f'(zeta)`` at ``zeta = f^{-1}(w)``
    (chain rule applied to the derivative identity of the composition).
    """
    fh = HarmonicMap.from_analytic(f)

    def prime(w):
        zeta = invert(fh, w, tol=inversion_tol)
        return (params.c * herglotz_p(mu, zeta) - 1j * params.c * params.c1) / f.deriv(zeta)

    return prime


def verify_structural_identity(f: AnalyticFunction, mu: DiscreteMeasure,
                               params: StructuralParams,
                               grid: GridSpec = DEFAULT_GRID,
                               fd_step=FD_STEP) -> float:
    """Max deviation of ``d/dz phi(f(z))`` from ``c*p(z) - i*c*c1`` over the grid.

    The derivative on the left is a central finite difference of the composed
    map, with the inverse computed by Newton iteration; the right side is the
    kernel sum.  For valid inputs the deviation is at the finite-difference
    noise floor (well under 1e-5).
    """
    fh = HarmonicMap.from_analytic(f)
    pts = grid.points()
    # Tight inversion tolerance: its error is amplified by 1/(2*fd_step).
    f_inv = lambda w: invert(fh, w, tol=1e-14)
    upper = build_phi(f_inv, mu, params, f.eval(pts + fd_step))
    lower = build_phi(f_inv, mu, params, f.eval(pts - fd_step))
    lhs = (upper - lower) / (2.0 * fd_step)
    rhs = params.c * herglotz_p(mu, pts) - 1j * params.c * params.c1
    return float(np.max(np.abs(lhs - rhs)))


def build_big_phi(f: AnalyticFunction, phi_prime, gamma: float, w):
    """Associated analytic ``Phi(w) = f^{-1}(w) / (e^{i gamma} phi'(w))``.

    Feeding this ``Phi`` into the ratio test ``Re(z f'(z)/Phi(f(z))) > 0``
    reproduces the positive-derivative condition on ``phi(f(z))``.
    """
    fh = HarmonicMap.from_analytic(f)
    zeta = invert(fh, w)
    pp = np.asarray(phi_prime(w), dtype=complex)
    if np.min(np.abs(pp)) <= 1e-300:
        raise SingularDerivativeError("phi'(w) vanishes")
    out = zeta / (np.exp(1j * gamma) * pp)
    return out if np.ndim(w) else complex(out)


def big_phi_function(f: AnalyticFunction, phi_prime, gamma: float,
                     fd_step=FD_STEP) -> AnalyticFunction:
    """Wrap :func:`build_big_phi` as an evaluator bundle.

    The derivative is a central finite difference of the wrapped value; that
    is accurate to far better than the 1e-4 validation bar and is only needed
    at the origin by the ratio test.
    """
    def value(w):
        return build_big_phi(f, phi_prime, gamma, w)

    def deriv(w):
        return (value(np.asarray(w) + fd_step) - value(np.asarray(w) - fd_step)) / (2.0 * fd_step)

    return AnalyticFunction(eval=value, deriv=deriv,
                            description=f"{f.description or 'f'}-associated ratio target")


# ---------------------------------------------------------------------------
# Numerical inversion of harmonic maps.

def _newton_sweep(f: HarmonicMap, w, z, tol, max_iter, clamp):
    """Damped Newton iterations from the given seeds; returns (z, residual)."""
    z = z.copy()
    res = np.abs(eval_map(f, z) - w)
    for _ in range(max_iter):
        active = res > tol
        if not np.any(active):
            break
        hp = np.asarray(f.h.deriv(z), dtype=complex)
        gp = np.asarray(f.g.deriv(z), dtype=complex)
        jac = np.abs(hp) ** 2 - np.abs(gp) ** 2
        r = w - (f.h.eval(z) + np.conj(f.g.eval(z)))
        safe = np.abs(jac) > 1e-300
        step = np.zeros_like(z)
        # Solve f_z*dz + f_zbar*conj(dz) = r with f_z = h', f_zbar = conj(g').
        step[safe] = (np.conj(hp[safe]) * r[safe] - np.conj(gp[safe]) * np.conj(r[safe])) / jac[safe]
        step[~active | ~safe] = 0.0
        scale = np.ones_like(jac)
        for _half in range(20):
            cand = z + scale * step
            big = np.abs(cand) > clamp
            if np.any(big):
                cand[big] *= clamp / np.abs(cand[big])
            new_res = np.abs(f.h.eval(cand) + np.conj(f.g.eval(cand)) - w)
            worse = active & (new_res > res)
            if not np.any(worse):
                z, res = cand, new_res
                break
            scale[worse] /= 2.0
        else:
            cand = z + scale * step
            big = np.abs(cand) > clamp
            if np.any(big):
                cand[big] *= clamp / np.abs(cand[big])
            new_res = np.abs(f.h.eval(cand) + np.conj(f.g.eval(cand)) - w)
            improved = new_res < res
            z[improved], res[improved] = cand[improved], new_res[improved]
    return z, res


def _fallback_seeds(f: HarmonicMap, radius):
    """Coarse deterministic seed cloud used after Newton divergence."""
    radii = radius * np.arange(1, 7) / 7.0
    angles = 2.0 * np.pi * np.arange(16) / 16.0
    seeds = np.concatenate(([0.0 + 0.0j], np.outer(radii, np.exp(1j * angles)).ravel()))
    return seeds


def invert(f: HarmonicMap, w, seed=None, tol=1e-12, max_iter=50):
    """Solve ``f(z) = w`` for z by damped Newton iteration.

    The harmonic map is treated as two real unknowns; the update solves the
    linearized system through the Wirtinger differentials ``f_z = h'`` and
    ``f_zbar = conj(g')`` (plain complex Newton would be wrong for ``g != 0``).
    Steps are halved while they increase the residual, iterates are clamped
    inside the domain, and points that fail to converge are reseeded from a
    coarse grid of starting values before giving up.

    Parameters
    ----------
    f : HarmonicMap
        Must be sense-preserving near the solution.
    w : complex scalar or ndarray
        Target value(s).
    seed : complex scalar or ndarray, optional
        Starting point(s); defaults to the origin.
    tol : float
        Residual bound ``|f(z) - w| <= tol`` (default 1e-12).

    Raises
    ------
    InversionError
        If some target still exceeds ``tol`` after the reseeded attempt.
    """
    scalar = np.ndim(w) == 0
    wv = np.atleast_1d(np.asarray(w, dtype=complex)).ravel()
    clamp = f.domain_radius * (1.0 - 1e-9)
    if seed is None:
        z0 = np.zeros_like(wv)
    else:
        z0 = np.broadcast_to(np.asarray(seed, dtype=complex), wv.shape).astype(complex).copy()
        z0[np.abs(z0) > clamp] *= clamp / np.abs(z0[np.abs(z0) > clamp])
    z, res = _newton_sweep(f, wv, z0, tol, max_iter, clamp)
    if np.any(res > tol):
        seeds = _fallback_seeds(f, clamp)
        fs = eval_map(f, seeds)
        stuck = np.flatnonzero(res > tol)
        best = seeds[np.argmin(np.abs(fs[None, :] - wv[stuck][:, None]), axis=1)]
        z2, res2 = _newton_sweep(f, wv[stuck], best.astype(complex), tol, max_iter, clamp)
        better = res2 < res[stuck]
        z[stuck[better]] = z2[better]
        res[stuck[better]] = res2[better]
    if np.any(res > tol):
        k = int(np.argmax(res))
        raise InversionError(
            f"no convergence inverting '{f.label or 'map'}' at w = {wv[k]}",
            w=complex(wv[k]), best_residual=float(np.max(res)),
        )
    shaped = z.reshape(np.shape(w)) if not scalar else complex(z[0])
    return shaped


def inverse_wirtinger(f: HarmonicMap, tol=1e-12) -> WirtingerFunction:
    """The inverse of a univalent harmonic map as a Wirtinger bundle.

    Partials come from inverting the differential at ``z = f^{-1}(w)``:

        d(f^{-1})/dw       =  conj(h'(z)) / J_f(z)
        d(f^{-1})/d(conj w) = -conj(g'(z)) / J_f(z)

    so composing back with ``f`` returns exactly (1, 0).
    """
    def _z(w):
        return invert(f, w, tol=tol)

    def _dw(w, wbar):
        z = _z(w)
        hp, gp = f.h.deriv(z), f.g.deriv(z)
        return np.conj(hp) / (np.abs(hp) ** 2 - np.abs(gp) ** 2)

    def _dwbar(w, wbar):
        z = _z(w)
        hp, gp = f.h.deriv(z), f.g.deriv(z)
        return -np.conj(gp) / (np.abs(hp) ** 2 - np.abs(gp) ** 2)

    return WirtingerFunction(eval=lambda w, wbar: _z(w), dw=_dw, dwbar=_dwbar,
                             domain=f"image of |z| < {f.domain_radius:g}")
