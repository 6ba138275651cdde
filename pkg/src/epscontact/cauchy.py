"""Finite-difference residuals of the contact flow and constraint equations
on a spatial 2-surface.

A space-time splitting g = -beta^2 dt^2 + q_t turns the contact and
eta-Einstein conditions into evolution equations for (q, Theta, F, alpha_perp,
beta) on a 2D grid plus time-derivative-free constraints:

    r1:  d alpha_perp - F nu_q = 0
    r2:  |alpha_perp|^2_q - eps - F^2 = 0
    r3:  R^q - |Theta|^2_q + (Tr_q Theta)^2 + c - 2 kappa F^2 = 0,
         c = (5 lambda^2 + 3 kappa eps) / 2
    r4:  d Tr_q(Theta) + div_q(Theta) - kappa F alpha_perp = 0

and, for time sequences, the two flow equations

    e1:  *_q alpha_perp + (1/beta) d(beta F) - (1/beta) dt(alpha_perp) = 0
    e2:  Ric^q + Tr_q(Theta) Theta - 2 Theta(Id x W) - (1/beta)(dt Theta
         + Hess_q beta) - kappa alpha_perp (x) alpha_perp
         + (1/2)(lambda^2 + kappa eps) q = 0,   W = q^{-1} Theta.

All spatial derivatives are second-order central differences; non-periodic
axes use one-sided second-order stencils at the edges. Residual norms are
discrete L-infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateParameters, SingularMetric


@dataclass(frozen=True)
class SurfaceGrid:
    nx: int
    ny: int
    hx: float
    hy: float
    periodic_x: bool = True
    periodic_y: bool = True

    def __post_init__(self):
        if self.nx < 4 or self.ny < 4:
            raise ValueError("grid needs at least 4 nodes per axis")
        if self.hx <= 0 or self.hy <= 0:
            raise ValueError("grid spacings must be positive")

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.nx)[:, None] * self.hx * np.ones((1, self.ny))

    @property
    def y(self) -> np.ndarray:
        return np.ones((self.nx, 1)) * np.arange(self.ny)[None, :] * self.hy


def _d1(f: np.ndarray, axis: int, h: float, periodic: bool) -> np.ndarray:
    """Second-order first derivative along a leading grid axis."""
    if periodic:
        return (np.roll(f, -1, axis=axis) - np.roll(f, 1, axis=axis)) / (2.0 * h)
    out = np.empty_like(f)
    sl = [slice(None)] * f.ndim

    def at(idx):
        s = list(sl)
        s[axis] = idx
        return tuple(s)

    out[at(slice(1, -1))] = (f[at(slice(2, None))] - f[at(slice(0, -2))]) / (2.0 * h)
    out[at(0)] = (-3.0 * f[at(0)] + 4.0 * f[at(1)] - f[at(2)]) / (2.0 * h)
    out[at(-1)] = (3.0 * f[at(-1)] - 4.0 * f[at(-2)] + f[at(-3)]) / (2.0 * h)
    return out


def _grad(f: np.ndarray, grid: SurfaceGrid) -> np.ndarray:
    """(..., 2) array of (d_x f, d_y f)."""
    return np.stack(
        [
            _d1(f, 0, grid.hx, grid.periodic_x),
            _d1(f, 1, grid.hy, grid.periodic_y),
        ],
        axis=-1,
    )


@dataclass(frozen=True)
class SurfaceData:
    """One time slice of fields on the grid: q (nx,ny,2,2) positive definite,
    theta (nx,ny,2,2) symmetric, F (nx,ny), alpha (nx,ny,2), beta (nx,ny) > 0."""

    grid: SurfaceGrid
    q: np.ndarray
    theta: np.ndarray
    F: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        nx, ny = self.grid.nx, self.grid.ny
        shapes = {
            "q": (nx, ny, 2, 2),
            "theta": (nx, ny, 2, 2),
            "F": (nx, ny),
            "alpha": (nx, ny, 2),
            "beta": (nx, ny),
        }
        for name, shape in shapes.items():
            arr = np.array(getattr(self, name), dtype=float)  # defensive copy
            if arr.shape != shape:
                raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        det = self.q[..., 0, 0] * self.q[..., 1, 1] - self.q[..., 0, 1] * self.q[..., 1, 0]
        if np.any(det <= 0.0) or np.any(self.q[..., 0, 0] <= 0.0):
            raise SingularMetric("q must be positive definite at every node")
        if np.any(self.beta <= 0.0):
            raise ValueError("beta must be positive")

    def det_q(self) -> np.ndarray:
        return self.q[..., 0, 0] * self.q[..., 1, 1] - self.q[..., 0, 1] * self.q[..., 1, 0]

    def inv_q(self) -> np.ndarray:
        det = self.det_q()
        inv = np.empty_like(self.q)
        inv[..., 0, 0] = self.q[..., 1, 1] / det
        inv[..., 1, 1] = self.q[..., 0, 0] / det
        inv[..., 0, 1] = -self.q[..., 0, 1] / det
        inv[..., 1, 0] = -self.q[..., 1, 0] / det
        return inv


@dataclass(frozen=True)
class SurfaceSequence:
    """Uniformly spaced time slices on a shared grid."""

    slices: tuple
    dt: float

    def __post_init__(self):
        slices = tuple(self.slices)
        if len(slices) < 3:
            raise ValueError("a sequence needs at least three time slices")
        grid = slices[0].grid
        if any(s.grid != grid for s in slices):
            raise ValueError("all slices must share one grid")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        object.__setattr__(self, "slices", slices)

    @property
    def grid(self) -> SurfaceGrid:
        return self.slices[0].grid


def christoffel(d: SurfaceData) -> np.ndarray:
    """Gamma[..., k, i, j] of the surface metric, via central differences."""
    dq = np.stack(
        [
            _d1(d.q, 0, d.grid.hx, d.grid.periodic_x),
            _d1(d.q, 1, d.grid.hy, d.grid.periodic_y),
        ],
        axis=2,
    )  # (nx, ny, m, i, j) = d_m q_ij
    inv = d.inv_q()
    # Gamma^k_ij = 1/2 q^{kl} (d_i q_lj + d_j q_li - d_l q_ij)
    term = (
        np.einsum("xyilj->xyijl", dq)
        + np.einsum("xyjli->xyijl", dq)
        - np.einsum("xylij->xyijl", dq)
    )
    return 0.5 * np.einsum("xykl,xyijl->xykij", inv, term)


def scalar_curvature(d: SurfaceData) -> np.ndarray:
    """R^q at every node (2 x Gauss curvature)."""
    gamma = christoffel(d)
    dgamma = np.stack(
        [
            _d1(gamma, 0, d.grid.hx, d.grid.periodic_x),
            _d1(gamma, 1, d.grid.hy, d.grid.periodic_y),
        ],
        axis=2,
    )  # (nx, ny, m, k, i, j) = d_m Gamma^k_ij
    # R^l_kij = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
    riem = (
        np.einsum("xyiljk->xylkij", dgamma)
        - np.einsum("xyjlik->xylkij", dgamma)
        + np.einsum("xylim,xymjk->xylkij", gamma, gamma)
        - np.einsum("xyljm,xymik->xylkij", gamma, gamma)
    )
    ric = np.einsum("xylklj->xykj", riem)
    return np.einsum("xykj,xykj->xy", d.inv_q(), ric)


def ricci_surface(d: SurfaceData) -> np.ndarray:
    """Ric^q = (R^q/2) q, exact in two dimensions."""
    return 0.5 * scalar_curvature(d)[..., None, None] * d.q


def _hodge_one_form(d: SurfaceData, alpha: np.ndarray) -> np.ndarray:
    """(*alpha)_i on the oriented surface: *dx = dy-like rotation with metric."""
    det = np.sqrt(d.det_q())
    inv = d.inv_q()
    raised = np.einsum("xyij,xyj->xyi", inv, alpha)
    out = np.empty_like(alpha)
    out[..., 0] = -det * raised[..., 1]
    out[..., 1] = det * raised[..., 0]
    return out


@dataclass(frozen=True)
class ConstraintResiduals:
    curl: float        # r1: d alpha - F nu_q
    norm: float        # r2: |alpha|^2 - eps - F^2
    hamiltonian: float  # r3: R - |Theta|^2 + (Tr Theta)^2 + c - 2 kappa F^2
    momentum: float    # r4: d Tr Theta + div Theta - kappa F alpha

    def as_dict(self) -> dict:
        return {
            "curl": self.curl,
            "norm": self.norm,
            "hamiltonian": self.hamiltonian,
            "momentum": self.momentum,
        }

    def max_residual(self) -> float:
        return max(self.curl, self.norm, self.hamiltonian, self.momentum)


def constraint_residuals(
    d: SurfaceData, eps: int, lambda2: float, kappa: float
) -> ConstraintResiduals:
    """Discrete L-infinity norms of the four constraint expressions."""
    grid = d.grid
    inv = d.inv_q()
    det = np.sqrt(d.det_q())
    # r1
    dxy = _d1(d.alpha[..., 1], 0, grid.hx, grid.periodic_x)
    dyx = _d1(d.alpha[..., 0], 1, grid.hy, grid.periodic_y)
    r1 = dxy - dyx - d.F * det
    # r2
    norm2 = np.einsum("xyij,xyi,xyj->xy", inv, d.alpha, d.alpha)
    r2 = norm2 - eps - d.F**2
    # r3
    tr_theta = np.einsum("xyij,xyij->xy", inv, d.theta)
    theta2 = np.einsum("xyik,xyjl,xyij,xykl->xy", inv, inv, d.theta, d.theta)
    c_const = 0.5 * (5.0 * lambda2 + 3.0 * kappa * eps)
    r3 = scalar_curvature(d) - theta2 + tr_theta**2 + c_const - 2.0 * kappa * d.F**2
    # r4
    gamma = christoffel(d)
    dtheta = np.stack(
        [
            _d1(d.theta, 0, grid.hx, grid.periodic_x),
            _d1(d.theta, 1, grid.hy, grid.periodic_y),
        ],
        axis=2,
    )  # (..., m, i, j)
    # (nabla_m Theta)_{ij} = d_m Theta_ij - G^k_mi Theta_kj - G^k_mj Theta_ik
    cov = (
        dtheta
        - np.einsum("xykmi,xykj->xymij", gamma, d.theta)
        - np.einsum("xykmj,xyik->xymij", gamma, d.theta)
    )
    div = np.einsum("xymi,xymij->xyj", inv, cov)
    r4 = _grad(tr_theta, grid) + div - kappa * d.F[..., None] * d.alpha
    return ConstraintResiduals(
        curl=float(np.max(np.abs(r1))),
        norm=float(np.max(np.abs(r2))),
        hamiltonian=float(np.max(np.abs(r3))),
        momentum=float(np.max(np.abs(r4))),
    )


@dataclass(frozen=True)
class EvolutionResiduals:
    alpha_flow: float
    ricci_flow: float

    def as_dict(self) -> dict:
        return {"alpha_flow": self.alpha_flow, "ricci_flow": self.ricci_flow}

    def max_residual(self) -> float:
        return max(self.alpha_flow, self.ricci_flow)


def evolution_residuals(
    seq: SurfaceSequence, eps: int, lambda2: float, kappa: float
) -> EvolutionResiduals:
    """Residuals of the two flow equations on the interior time slices,
    with central time differences."""
    grid = seq.grid
    max_a, max_r = 0.0, 0.0
    for t in range(1, len(seq.slices) - 1):
        prev_s, d, next_s = seq.slices[t - 1], seq.slices[t], seq.slices[t + 1]
        dt_alpha = (next_s.alpha - prev_s.alpha) / (2.0 * seq.dt)
        dt_theta = (next_s.theta - prev_s.theta) / (2.0 * seq.dt)
        beta = d.beta[..., None]
        e1 = _hodge_one_form(d, d.alpha) + _grad(d.beta * d.F, grid) / beta - dt_alpha / beta
        gamma = christoffel(d)
        hess_beta = np.empty_like(d.q)
        gb = _grad(d.beta, grid)
        dgb = np.stack(
            [
                _d1(gb, 0, grid.hx, grid.periodic_x),
                _d1(gb, 1, grid.hy, grid.periodic_y),
            ],
            axis=2,
        )  # (..., i, j) = d_i (d_j beta)
        hess_beta = dgb - np.einsum("xykij,xyk->xyij", gamma, gb)
        inv = d.inv_q()
        tr_theta = np.einsum("xyij,xyij->xy", inv, d.theta)
        w = np.einsum("xyik,xykj->xyij", inv, d.theta)
        theta_w = np.einsum("xyik,xykj->xyij", d.theta, w)
        e2 = (
            ricci_surface(d)
            + tr_theta[..., None, None] * d.theta
            - 2.0 * theta_w
            - (dt_theta + hess_beta) / d.beta[..., None, None]
            - kappa * np.einsum("xyi,xyj->xyij", d.alpha, d.alpha)
            + 0.5 * (lambda2 + kappa * eps) * d.q
        )
        max_a = max(max_a, float(np.max(np.abs(e1))))
        max_r = max(max_r, float(np.max(np.abs(e2))))
    return EvolutionResiduals(alpha_flow=max_a, ricci_flow=max_r)


def recovered_epsilon(d: SurfaceData) -> float:
    """Mean of |alpha|^2_q - F^2 over the grid; matches eps for valid data."""
    norm2 = np.einsum("xyij,xyi,xyj->xy", d.inv_q(), d.alpha, d.alpha)
    return float(np.mean(norm2 - d.F**2))


# --- closed-form example data ---------------------------------------------------


def example_flat_paracontact(
    grid: SurfaceGrid, t_values: Sequence[float], l1: float, l2: float
) -> SurfaceSequence:
    """Spatially constant space-like solution on a flat torus:
    q = (l1^2 + l2^2) Id, F = 0, beta = 1, Theta = 0, with the alpha
    components rotating in time; eps = +1, lambda = kappa = 0."""
    if l1 * l1 + l2 * l2 == 0.0:
        raise DegenerateParameters("l1^2 + l2^2 must be nonzero")
    t_values = [float(t) for t in t_values]
    if len(t_values) < 3:
        raise ValueError("need at least three time samples")
    dts = np.diff(t_values)
    if np.max(np.abs(dts - dts[0])) > 1e-12 * max(1.0, abs(dts[0])):
        raise ValueError("time samples must be uniformly spaced")
    nx, ny = grid.nx, grid.ny
    e2u = l1 * l1 + l2 * l2
    slices = []
    for t in t_values:
        alpha = np.zeros((nx, ny, 2))
        alpha[..., 0] = l2 * math.cos(t) - l1 * math.sin(t)
        alpha[..., 1] = l1 * math.cos(t) + l2 * math.sin(t)
        q = np.zeros((nx, ny, 2, 2))
        q[..., 0, 0] = e2u
        q[..., 1, 1] = e2u
        slices.append(
            SurfaceData(
                grid=grid,
                q=q,
                theta=np.zeros((nx, ny, 2, 2)),
                F=np.zeros((nx, ny)),
                alpha=alpha,
                beta=np.ones((nx, ny)),
            )
        )
    return SurfaceSequence(tuple(slices), float(dts[0]))


def example_null_isothermal(grid: SurfaceGrid, f0: float) -> SurfaceData:
    """Static null-case constraint data in isothermal form: for f0 != 0,
    q = f0^2 Id, alpha = (0, e^{f0 x}), F = e^{f0 x}/f0 (so the norm
    constraint holds exactly and the curl constraint holds analytically);
    f0 = 0 degenerates to q = Id, alpha = (0, 1), F = 0 with the curl
    constraint exact. Use a non-periodic x axis for f0 != 0."""
    nx, ny = grid.nx, grid.ny
    x = grid.x
    if f0 == 0.0:
        q_factor, alpha_y, f_field = 1.0, np.ones((nx, ny)), np.zeros((nx, ny))
    else:
        q_factor = f0 * f0
        alpha_y = np.exp(f0 * x)
        f_field = np.exp(f0 * x) / f0
    q = np.zeros((nx, ny, 2, 2))
    q[..., 0, 0] = q_factor
    q[..., 1, 1] = q_factor
    alpha = np.zeros((nx, ny, 2))
    alpha[..., 1] = alpha_y
    return SurfaceData(
        grid=grid,
        q=q,
        theta=np.zeros((nx, ny, 2, 2)),
        F=f_field,
        alpha=alpha,
        beta=np.ones((nx, ny)),
    )


def isothermal_grid(nx: int, ny: int, length_x: float = 1.0, length_y: float = 1.0) -> SurfaceGrid:
    """Grid for the isothermal example: fixed domain, non-periodic in x."""
    return SurfaceGrid(nx, ny, length_x / nx, length_y / ny, periodic_x=False)


def surface_to_json(d: SurfaceData) -> str:
    """Serialize one slice with the grid header {"nx","ny","hx","hy",...}."""
    import json

    return json.dumps(
        {
            "nx": d.grid.nx,
            "ny": d.grid.ny,
            "hx": d.grid.hx,
            "hy": d.grid.hy,
            "periodic_x": d.grid.periodic_x,
            "periodic_y": d.grid.periodic_y,
            "q": d.q.tolist(),
            "theta": d.theta.tolist(),
            "F": d.F.tolist(),
            "alpha": d.alpha.tolist(),
            "beta": d.beta.tolist(),
        },
        sort_keys=True,
    )


def surface_from_json(text: str) -> SurfaceData:
    import json

    data = json.loads(text)
    grid = SurfaceGrid(
        int(data["nx"]), int(data["ny"]), float(data["hx"]), float(data["hy"]),
        bool(data.get("periodic_x", True)), bool(data.get("periodic_y", True)),
    )
    return SurfaceData(
        grid,
        np.asarray(data["q"], dtype=float),
        np.asarray(data["theta"], dtype=float),
        np.asarray(data["F"], dtype=float),
        np.asarray(data["alpha"], dtype=float),
        np.asarray(data["beta"], dtype=float),
    )
