"""Vectorised evaluation of frame and curvature quantities over many points.

These are plain float64 tensor computations, not jets. They feed mesh export and
singular set searches and give an independent route to the values the jet engine
produces at single points.

Second fundamental quantities use the identities L = <f_uu, nu>, M = <psi_u, nu>
and N = <psi_v, nu>, which follow from <f_u, nu> = <psi, nu> = 0.
"""

from typing import Dict, Sequence, Tuple

import torch

from frontlab.config import Tolerances, get_tolerances
from frontlab.geometry.surface import PolySurface


def _stack(polynomials, u, v) -> torch.Tensor:
    return torch.stack([p.evaluate(u, v) for p in polynomials], -1)


def _dot(a: torch.Tensor, b: torch.Tensor) -> torch.Tensor:
    return (a * b).sum(-1)


def surface_fields(
    surface: PolySurface, u: torch.Tensor, v: torch.Tensor, tol: Tolerances = None
) -> Dict[str, torch.Tensor]:
    """Frame, fundamental quantities and bounded principal curvature at many points.

    Args:
        surface (PolySurface): An adapted surface.
        u (torch.Tensor): u coordinates, any shape.
        v (torch.Tensor): v coordinates, broadcastable against `u`.
        tol (:obj:`Tolerances`, optional): Thresholds, `clamp` bounds the negative
            noise tolerated under the principal curvature square root.

    Returns:
        Dict[str, torch.Tensor]: Keys `f`, `fu`, `psi`, `nu`, `nu_u`, `nu_v` (trailing
            axis 3) and
            `W`, `E`, `F`, `G`, `L`, `M`, `N`, `alpha`, `beta`, `alpha_t`, `beta_t`,
            `A_hat`, `B_hat`, `kappa`, `v_kappa_other`. Points where the frame
            degenerates hold NaN.
    """
    tol = tol or get_tolerances()
    u = torch.as_tensor(u, dtype=torch.float64)
    v = torch.as_tensor(v, dtype=torch.float64)
    u, v = torch.broadcast_tensors(u, v)

    psi_polynomials = surface.psi()
    f = _stack(surface.components, u, v)
    fu = _stack(surface.du(), u, v)
    fuu = _stack([p.du() for p in surface.du()], u, v)
    psi = _stack(psi_polynomials, u, v)
    psi_u = _stack([p.du() for p in psi_polynomials], u, v)
    psi_v = _stack([p.dv() for p in psi_polynomials], u, v)

    normal = torch.linalg.cross(fu, psi, dim=-1)
    W = torch.linalg.norm(normal, dim=-1)
    W = torch.where(W > tol.frame, W, torch.full_like(W, float("nan")))
    nu = normal / W[..., None]

    # nu_u, nu_v by differentiating f_u x psi, using f_uv = v psi_u
    normal_u = torch.linalg.cross(fuu, psi, dim=-1) + torch.linalg.cross(fu, psi_u, dim=-1)
    normal_v = v[..., None] * torch.linalg.cross(psi_u, psi, dim=-1) + torch.linalg.cross(
        fu, psi_v, dim=-1
    )
    nu_u = (normal_u - _dot(normal_u, nu)[..., None] * nu) / W[..., None]
    nu_v = (normal_v - _dot(normal_v, nu)[..., None] * nu) / W[..., None]

    E, F, G = _dot(fu, fu), _dot(fu, psi), _dot(psi, psi)
    L, M, N = _dot(fuu, nu), _dot(psi_u, nu), _dot(psi_v, nu)
    det = E * G - F * F

    A_hat = E * N - 2 * v * F * M + v * G * L
    B_squared = A_hat**2 - 4 * v * det * (L * N - v * M**2)
    B_squared = torch.where(
        (B_squared < 0) & (B_squared >= -tol.clamp), torch.zeros_like(B_squared), B_squared
    )
    B_hat = torch.sqrt(B_squared)
    sigma = torch.where(N >= 0, torch.ones_like(N), -torch.ones_like(N))
    denominator = A_hat + sigma * B_hat

    return {
        "f": f,
        "fu": fu,
        "psi": psi,
        "nu": nu,
        "nu_u": nu_u,
        "nu_v": nu_v,
        "W": W,
        "E": E,
        "F": F,
        "G": G,
        "L": L,
        "M": M,
        "N": N,
        "alpha": (F * M - G * L) / det,
        "beta": (F * L - E * M) / det,
        "alpha_t": (F * N - v * G * M) / det,
        "beta_t": (v * F * M - E * N) / det,
        "A_hat": A_hat,
        "B_hat": B_hat,
        "kappa": 2 * (L * N - v * M**2) / denominator,
        "v_kappa_other": denominator / (2 * det),
    }


def weingarten_gaps(fields: Dict[str, torch.Tensor]) -> torch.Tensor:
    """Relative deviation of nu_u, nu_v from their closed forms in f_u and psi.

    The closed forms are nu_u = alpha f_u + beta psi and
    nu_v = alpha_t f_u + beta_t psi.
    """
    fu, psi = fields["fu"], fields["psi"]
    gap_u = fields["nu_u"] - (fields["alpha"][..., None] * fu + fields["beta"][..., None] * psi)
    gap_v = fields["nu_v"] - (fields["alpha_t"][..., None] * fu + fields["beta_t"][..., None] * psi)
    gap = torch.maximum(gap_u.abs().amax(-1), gap_v.abs().amax(-1))
    scale = 1 + torch.maximum(fields["nu_u"].abs().amax(-1), fields["nu_v"].abs().amax(-1))
    return gap / scale


def parallel_points(fields: Dict[str, torch.Tensor], t: float) -> torch.Tensor:
    """Points of f_t = f + t nu."""
    return fields["f"] + t * fields["nu"]


def parallel_lambda_hat(fields: Dict[str, torch.Tensor], t: float) -> torch.Tensor:
    """The factor 1 - t kappa of the parallel surface area density."""
    return 1 - t * fields["kappa"]


def parallel_area_density(
    fields: Dict[str, torch.Tensor], v: torch.Tensor, t: float
) -> Tuple[torch.Tensor, torch.Tensor]:
    """The area density of f_t and its factored form.

    Returns:
        Tuple[torch.Tensor, torch.Tensor]: det((f_t)_u, (f_t)_v, nu) from the
            differentiated normal, and W (v - t v kappa_other)(1 - t kappa).
    """
    v = torch.as_tensor(v, dtype=torch.float64)
    map_u = fields["fu"] + t * fields["nu_u"]
    map_v = v[..., None] * fields["psi"] + t * fields["nu_v"]
    lam = _dot(torch.linalg.cross(map_u, map_v, dim=-1), fields["nu"])
    factored = fields["W"] * (v - t * fields["v_kappa_other"]) * (1 - t * fields["kappa"])
    return lam, factored


def dual_fields(
    fields: Dict[str, torch.Tensor], c_vec: Sequence[float]
) -> Dict[str, torch.Tensor]:
    """Dual surface quantities from the frame fields.

    The unit normal used is nu* = (2 rho nu - f_bar) / |f_bar|, which is smooth
    across the singular set of f*.

    Returns:
        Dict[str, torch.Tensor]: Keys `f_bar`, `rho`, `rho_u`, `rho_v`, `points`,
            `nu_star` and `lambda_star`.
    """
    c = torch.as_tensor(c_vec, dtype=torch.float64)
    f_bar = fields["f"] + c
    nu, fu, psi = fields["nu"], fields["fu"], fields["psi"]
    nu_u = fields["alpha"][..., None] * fu + fields["beta"][..., None] * psi
    nu_v = fields["alpha_t"][..., None] * fu + fields["beta_t"][..., None] * psi
    rho = _dot(f_bar, nu)
    rho_u, rho_v = _dot(f_bar, nu_u), _dot(f_bar, nu_v)
    dual_u = rho_u[..., None] * nu + rho[..., None] * nu_u
    dual_v = rho_v[..., None] * nu + rho[..., None] * nu_v
    nu_star = (2 * rho[..., None] * nu - f_bar) / torch.linalg.norm(f_bar, dim=-1)[..., None]
    lambda_star = _dot(torch.linalg.cross(dual_u, dual_v, dim=-1), nu_star)
    return {
        "f_bar": f_bar,
        "rho": rho,
        "rho_u": rho_u,
        "rho_v": rho_v,
        "points": rho[..., None] * nu,
        "nu_star": nu_star,
        "lambda_star": lambda_star,
    }
