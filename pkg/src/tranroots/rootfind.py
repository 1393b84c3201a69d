"""All complex roots of a dense polynomial, with scaled-residual certification.

The solver is simultaneous Aberth-Ehrlich iteration in Jacobi style: every
update in a sweep is computed from the previous iterate, so sweeps are
vectorized and the output is bit-reproducible for identical inputs.  Exact
zero roots are deflated up front and a few Newton polishing steps run per
converged root.

Recurrence polynomials routinely combine 9-digit interior coefficients with
tiny leading ones, so a single starting circle at half the Cauchy bound can
sit orders of magnitude above the actual roots and stall the iteration.
Initial points are therefore placed on per-cluster circles read off the
Newton polygon (upper convex hull of (i, log|c_i|)), and evaluation switches
to the reversed polynomial at 1/z once |z| > 1 so nothing overflows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .poly import (
    DEFAULT_TOLERANCES,
    ComplexPoly,
    DegreeError,
    ToleranceConfig,
)

INITIAL_RADIUS_FACTOR = 0.5  # batch mode still starts from the Cauchy circle
INITIAL_ANGLE_OFFSET = 0.37  # radians; breaks symmetry of the start ring
CLUSTER_RADIUS = 1e-7


@dataclass(frozen=True)
class Root:
    value: complex
    residual: float
    multiplicity_hint: int = 1


@dataclass(frozen=True)
class RootSet:
    roots: tuple[Root, ...]
    source_degree: int
    converged: bool

    @property
    def values(self) -> list[complex]:
        return [r.value for r in self.roots]

    def values_with_multiplicity(self) -> list[complex]:
        out = []
        for r in self.roots:
            out.extend([r.value] * r.multiplicity_hint)
        return out


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full_like(z, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


class _Evaluator:
    """Overflow-safe p/p' ratios and scaled residuals at arbitrary points.

    For |z| <= 1 evaluation is plain Horner.  For |z| > 1 it uses
    p(z) = z^d q(1/z) with q the reversed polynomial, giving
    p/p' = z q(w) / (d q(w) - w q'(w)) and residual |q(w)| / sum|q_t| m^-t.
    """

    def __init__(self, coeffs: np.ndarray):
        self.coeffs = coeffs
        self.d = len(coeffs) - 1
        self.deriv = coeffs[1:] * np.arange(1, len(coeffs))
        self.rev = coeffs[::-1].copy()
        self.rev_deriv = self.rev[1:] * np.arange(1, len(coeffs))
        self.abs_coeffs = np.abs(coeffs)
        self.abs_rev = self.abs_coeffs[::-1].copy()

    def newton_and_residual(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        m = np.abs(z)
        big = m > 1.0
        with np.errstate(all="ignore"):
            pv = _horner(self.coeffs, z)
            dv = _horner(self.deriv, z)
            n_direct = pv / dv
            r_direct = np.abs(pv) / _horner(self.abs_coeffs, np.maximum(m, 1.0))

            w = np.where(big, 1.0 / np.where(z == 0, 1.0, z), 0.0)
            qv = _horner(self.rev, w)
            qd = _horner(self.rev_deriv, w)
            n_rev = z * qv / (self.d * qv - w * qd)
            r_rev = np.abs(qv) / _horner(self.abs_rev, np.abs(w))

            newton = np.where(big, n_rev, n_direct)
            residual = np.where(big, r_rev, r_direct)
        return newton, residual

    def residual(self, z: np.ndarray) -> np.ndarray:
        return self.newton_and_residual(z)[1]


def scaled_residuals(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """|p(z)| / sum_i |c_i| max(1,|z|)^i, elementwise and overflow-safe."""
    return _Evaluator(np.asarray(coeffs, dtype=complex)).residual(
        np.asarray(z, dtype=complex)
    )


def residual_report(p: ComplexPoly, roots: list[complex]) -> list[float]:
    """Scaled residual of each candidate root, in input order."""
    if p.is_zero():
        raise DegreeError("residual_report requires a nonzero polynomial")
    if not roots:
        return []
    coeffs = np.asarray(p.coeffs, dtype=complex)
    res = scaled_residuals(coeffs, np.asarray(roots, dtype=complex))
    return [float(r) for r in res]


def _newton_polygon_radii(coeffs: np.ndarray) -> np.ndarray:
    """One starting radius per root from the upper hull of (i, log|c_i|)."""
    logs = [(i, math.log(a)) for i, a in enumerate(np.abs(coeffs)) if a > 0]
    hull: list[tuple[int, float]] = []
    for point in logs:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (point[1] - y1) >= (point[0] - x1) * (y2 - y1):
                hull.pop()
            else:
                break
        hull.append(point)
    d = len(coeffs) - 1
    radii = np.empty(d)
    pos = 0
    for (i1, y1), (i2, y2) in zip(hull, hull[1:]):
        r = math.exp(max(-340.0, min(340.0, (y1 - y2) / (i2 - i1))))
        radii[pos:pos + (i2 - i1)] = r
        pos += i2 - i1
    return radii


def _initial_points(coeffs: np.ndarray) -> np.ndarray:
    d = len(coeffs) - 1
    angles = 2.0 * np.pi * np.arange(d) / d + INITIAL_ANGLE_OFFSET
    return _newton_polygon_radii(coeffs) * np.exp(1j * angles)


def _aberth_sweeps(ev: _Evaluator, z: np.ndarray, cfg: ToleranceConfig
                   ) -> tuple[np.ndarray, bool]:
    d = len(z)
    idx = np.arange(d)
    converged = False
    with np.errstate(all="ignore"):
        for _ in range(cfg.max_aberth_iters):
            newton, res = ev.newton_and_residual(z)
            if bool(np.all(res <= cfg.root_residual_tol)):
                converged = True
                break
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            repulsion = np.sum(1.0 / diff, axis=1)
            w = newton / (1.0 - newton * repulsion)
            bad = ~np.isfinite(w)
            if bad.any():
                # deterministic nudge for collided points / vanishing p'
                w = np.where(bad, 0.01 * (1.0 + np.abs(z)) * np.exp(1.7j * idx), w)
            z = z - w
    return z, converged


def _newton_polish(ev: _Evaluator, z: np.ndarray, steps: int = 3) -> np.ndarray:
    with np.errstate(all="ignore"):
        newton, res = ev.newton_and_residual(z)
        for _ in range(steps):
            candidate = z - newton
            cand_newton, cand_res = ev.newton_and_residual(candidate)
            better = np.isfinite(candidate) & (cand_res < res)
            z = np.where(better, candidate, z)
            res = np.where(better, cand_res, res)
            newton = np.where(better, cand_newton, newton)
    return z


def _cluster(values: np.ndarray, residuals: np.ndarray) -> list[Root]:
    # greedy union of points within CLUSTER_RADIUS; hints sum to len(values)
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= CLUSTER_RADIUS:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    roots = []
    for members in groups.values():
        centroid = complex(np.mean(values[members]))
        residual = float(np.max(residuals[members]))
        roots.append(Root(centroid, residual, len(members)))
    return roots


def find_roots(p: ComplexPoly, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> RootSet:
    """Locate all roots of p; RootSet.converged certifies every residual.

    Raises DegreeError for constant or zero polynomials.
    """
    if p.degree < 1:
        raise DegreeError("find_roots requires degree >= 1")
    source_degree = p.degree

    coeffs_full = list(p.coeffs)
    n_zero = 0
    while coeffs_full and coeffs_full[0] == 0:
        coeffs_full.pop(0)
        n_zero += 1

    roots: list[Root] = []
    if n_zero:
        roots.append(Root(0j, 0.0, n_zero))

    converged = True
    d = len(coeffs_full) - 1
    if d >= 1:
        coeffs = np.asarray(coeffs_full, dtype=complex)
        ev = _Evaluator(coeffs)
        z, converged = _aberth_sweeps(ev, _initial_points(coeffs), cfg)
        z = _newton_polish(ev, z)
        res = ev.residual(z)
        converged = bool(np.all(res <= cfg.root_residual_tol))
        roots.extend(_cluster(z, res))

    roots.sort(key=lambda r: (r.value.real, r.value.imag))
    return RootSet(tuple(roots), source_degree, converged)


def aberth_roots_batch(coeff_rows: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOLERANCES,
                       chunk: int = 65536) -> tuple[np.ndarray, np.ndarray]:
    """Roots of many same-degree polynomials at once.

    coeff_rows has shape (m, degree+1), lowest power first, with nonzero
    leading column.  Returns (roots, converged) with shapes (m, degree) and
    (m,).  Used for per-grid-node symbol equations where calling find_roots
    a quarter-million times would dominate the runtime.
    """
    coeff_rows = np.asarray(coeff_rows, dtype=complex)
    m, dp1 = coeff_rows.shape
    d = dp1 - 1
    if d < 1:
        raise DegreeError("batch root finding requires degree >= 1")
    out_roots = np.empty((m, d), dtype=complex)
    out_ok = np.empty(m, dtype=bool)
    for lo in range(0, m, chunk):
        hi = min(m, lo + chunk)
        r, ok = _batch_chunk(coeff_rows[lo:hi], cfg)
        out_roots[lo:hi] = r
        out_ok[lo:hi] = ok
    return out_roots, out_ok


def _batch_horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.broadcast_to(coeffs[:, -1:], z.shape).copy()
    for i in range(coeffs.shape[1] - 2, -1, -1):
        acc = acc * z + coeffs[:, i:i + 1]
    return acc


def _batch_chunk(coeffs: np.ndarray, cfg: ToleranceConfig) -> tuple[np.ndarray, np.ndarray]:
    m, dp1 = coeffs.shape
    d = dp1 - 1
    deriv = coeffs[:, 1:] * np.arange(1, dp1)

    lead = np.abs(coeffs[:, -1])
    rest = np.max(np.abs(coeffs[:, :-1]), axis=1)
    radius = INITIAL_RADIUS_FACTOR * (1.0 + rest / lead)
    angles = 2.0 * np.pi * np.arange(d) / d + INITIAL_ANGLE_OFFSET
    z = radius[:, None] * np.exp(1j * angles)[None, :]

    scale_abs = np.abs(coeffs)

    def residuals(zz):
        mm = np.maximum(1.0, np.abs(zz))
        scale = np.broadcast_to(scale_abs[:, -1:], zz.shape).copy()
        for i in range(dp1 - 2, -1, -1):
            scale = scale * mm + scale_abs[:, i:i + 1]
        return np.abs(_batch_horner(coeffs, zz)) / scale

    with np.errstate(all="ignore"):
        for _ in range(cfg.max_aberth_iters):
            res = residuals(z)
            if bool(np.all(res <= cfg.root_residual_tol)):
                break
            pv = _batch_horner(coeffs, z)
            dv = _batch_horner(deriv, z)
            newton = pv / dv
            diff = z[:, :, None] - z[:, None, :]
            eye = np.eye(d, dtype=bool)
            diff[:, eye] = np.inf
            repulsion = np.sum(1.0 / diff, axis=2)
            w = newton / (1.0 - newton * repulsion)
            bad = ~np.isfinite(w)
            if bad.any():
                fallback = 0.01 * (1.0 + np.abs(z)) * np.exp(1.7j * np.arange(d))[None, :]
                w = np.where(bad, fallback, w)
            z = z - w
        # two polishing sweeps
        for _ in range(2):
            step = _batch_horner(coeffs, z) / _batch_horner(deriv, z)
            candidate = z - step
            better = np.isfinite(candidate) & (residuals(candidate) < residuals(z))
            z = np.where(better, candidate, z)
        ok = np.all(residuals(z) <= cfg.root_residual_tol, axis=1)
    return z, ok
