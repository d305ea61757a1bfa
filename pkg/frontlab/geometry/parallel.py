"""Parallel surfaces f_t = f + t nu of a cuspidal edge.

The unit normal nu of f is also a unit normal of f_t, and the signed area density
factors as

    lambda_t = W (v - t v kappa_other) (1 - t kappa),

where kappa is the bounded principal curvature. Near the u-axis the first factor
does not vanish, so the singular set of f_t is the zero set of 1 - t kappa. At a
singular point with t = 1 / kappa the principal direction (xi, zeta) of kappa is a
null vector of f_t.
"""

from typing import List, Tuple

import torch

from frontlab.config import DEFAULT_JET_ORDER, Tolerances, get_tolerances
from frontlab.errors import ConsistencyFailure, ConstraintError, ZeroCurvature
from frontlab.geometry.curvature import principal_curvature_bounded
from frontlab.geometry.fields import (
    parallel_area_density,
    parallel_lambda_hat,
    parallel_points,
    surface_fields,
)
from frontlab.geometry.frames import build_frame
from frontlab.geometry.grid import Grid, sign_change_points
from frontlab.geometry.jets import Jet2, Point, jet_det
from frontlab.geometry.ridge import RidgeReport, is_negligible, ridge_closed_form, ridge_report
from frontlab.geometry.singularity import SingClass, Verdict, classify
from frontlab.geometry.surface import NormalFormCoeffs, PolySurface


class ParallelJets:
    """Jets of a parallel surface at one point.

    Attributes:
        frame (EdgeFrame): Frame of the base surface.
        principal (PrincipalData): Bounded principal curvature of the base surface.
        map (Tuple[Jet2, Jet2, Jet2]): Jets of f_t.
        lam (Jet2): det((f_t)_u, (f_t)_v, nu).
        lam_hat (Jet2): 1 - t kappa.
        factored (Jet2): W (v - t v kappa_other) (1 - t kappa).
    """

    __slots__ = ("frame", "principal", "map", "lam", "lam_hat", "factored")

    def __init__(self, frame, principal, map, lam, lam_hat, factored) -> None:
        self.frame = frame
        self.principal = principal
        self.map = map
        self.lam = lam
        self.lam_hat = lam_hat
        self.factored = factored

    @property
    def eta(self) -> Tuple[Jet2, Jet2]:
        """The null field (xi, zeta) at focal points."""
        return (self.principal.xi, self.principal.zeta)


class ParallelSurface:
    """The parallel surface f + t nu as a pointwise evaluator.

    Attributes:
        base (PolySurface): The adapted front f.
        t (float): The offset distance, nonzero.
        anchor (Tuple[float, float]): Reference point on the u-axis.
        order (int): Jet order used for point jets.
        kappa_anchor (float): Bounded principal curvature of f at the anchor.
    """

    __slots__ = ("base", "t", "anchor", "order", "kappa_anchor", "tol")

    def __init__(self, base, t, anchor, order, kappa_anchor, tol) -> None:
        self.base = base
        self.t = t
        self.anchor = anchor
        self.order = order
        self.kappa_anchor = kappa_anchor
        self.tol = tol

    @property
    def is_focal(self) -> bool:
        """Whether t = 1 / kappa(anchor), so the anchor is singular on f_t."""
        return abs(1 - self.t * self.kappa_anchor) <= self.tol.sing * (1 + abs(self.t))

    def point_jets(self, point: Point) -> ParallelJets:
        frame = build_frame(self.base, point, self.order, self.tol)
        principal = principal_curvature_bounded(frame, self.tol)
        order = self.order + 1
        map_jets = tuple(
            x.truncated(order) + self.t * n for x, n in zip(frame.f, frame.nu)
        )
        lam = jet_det(
            tuple(x.du() for x in map_jets), tuple(x.dv() for x in map_jets), frame.nu
        )
        lam_hat = 1.0 - self.t * principal.kappa
        factored = frame.W * (frame.v - self.t * principal.v_kappa_other) * lam_hat
        return ParallelJets(frame, principal, map_jets, lam, lam_hat, factored)

    def factorization_residual(self, point: Point) -> float:
        """Relative gap between lambda_t and its factored form at a point."""
        jets = self.point_jets(point)
        gap = abs(jets.lam.value - jets.factored.value)
        return gap / max(1.0, abs(jets.lam.value))

    def factorization_gaps(self, u: torch.Tensor, v: torch.Tensor) -> torch.Tensor:
        """Relative gaps between lambda_t and its factored form on a batch of points.

        Points where the frame degenerates or the bounded curvature loses precision
        hold NaN.
        """
        fields = surface_fields(self.base, u, v, self.tol)
        lam, factored = parallel_area_density(fields, v, self.t)
        map_u = fields["fu"] + self.t * fields["nu_u"]
        map_v = torch.as_tensor(v, dtype=torch.float64)[..., None] * fields["psi"]
        map_v = map_v + self.t * fields["nu_v"]
        scale = 1 + torch.linalg.norm(map_u, dim=-1) * torch.linalg.norm(map_v, dim=-1)
        gaps = (lam - factored).abs() / (scale + factored.abs())
        N = fields["N"]
        sigma = torch.where(N >= 0, torch.ones_like(N), -torch.ones_like(N))
        denominator = fields["A_hat"] + sigma * fields["B_hat"]
        conditioned = denominator.abs() >= 1e-3 * (fields["A_hat"].abs() + fields["B_hat"])
        return torch.where(conditioned, gaps, torch.full_like(gaps, float("nan")))

    def null_residual(self, point: Point) -> float:
        """|df_t(xi, zeta)| at a point, zero on the singular set when t is focal."""
        frame = build_frame(self.base, point, 1, self.tol)
        principal = principal_curvature_bounded(frame, self.tol)
        xi, zeta = principal.v_hat
        residual = 0.0
        for f, n in zip(frame.f, frame.nu):
            d_u = f.partial(1, 0) + self.t * n.partial(1, 0)
            d_v = f.partial(0, 1) + self.t * n.partial(0, 1)
            residual += (xi * d_u + zeta * d_v) ** 2
        return residual**0.5

    def evaluate(self, u: torch.Tensor, v: torch.Tensor) -> torch.Tensor:
        return parallel_points(surface_fields(self.base, u, v, self.tol), self.t)

    def lambda_hat(self, u: torch.Tensor, v: torch.Tensor) -> torch.Tensor:
        return parallel_lambda_hat(surface_fields(self.base, u, v, self.tol), self.t)

    def __repr__(self) -> str:
        return f"ParallelSurface(t={self.t:.6g}, anchor={self.anchor}, focal={self.is_focal})"


def make_parallel(
    surface: PolySurface,
    t: float,
    anchor: Point = (0.0, 0.0),
    order: int = DEFAULT_JET_ORDER,
    tol: Tolerances = None,
) -> ParallelSurface:
    """Builds the parallel surface f + t nu.

    Args:
        surface (PolySurface): An adapted front.
        t (float): The offset distance.
        anchor (:obj:`Tuple[float, float]`, optional): Reference point on the u-axis.
        order (:obj:`int`, optional): Jet order for point jets.
        tol (:obj:`Tolerances`, optional): Thresholds.

    Returns:
        ParallelSurface: The evaluator.

    Raises:
        ConstraintError: If t = 0.
    """
    tol = tol or get_tolerances()
    if t == 0:
        raise ConstraintError("Parallel surfaces need a nonzero offset t")
    frame = build_frame(surface, anchor, order, tol)
    kappa = principal_curvature_bounded(frame, tol).kappa2
    return ParallelSurface(surface, float(t), frame.point, order, kappa, tol)


def parallel_singular_set(
    parallel: ParallelSurface, grid: Grid = None
) -> List[Tuple[float, float]]:
    """Points of the singular set 1 - t kappa = 0 found on the grid edges.

    Returns:
        List[Tuple[float, float]]: Points sorted by v, then u, possibly empty.
    """
    grid = grid or Grid(parallel.base.box())
    points = sign_change_points(grid, parallel.lambda_hat, tol=parallel.tol)
    return [tuple(point) for point in points.tolist()]


def _ridge_verdict(report: RidgeReport, tol: Tolerances) -> Verdict:
    gradient = (report.dkappa[0] ** 2 + report.dkappa[1] ** 2) ** 0.5
    if gradient <= tol.ridge * (1 + abs(report.kappa2)):
        return Verdict.DEGENERATE_OR_UNKNOWN
    return {
        0: Verdict.CUSPIDAL_EDGE,
        1: Verdict.SWALLOWTAIL,
    }.get(report.order, Verdict.DEGENERATE_OR_UNKNOWN)


def predict_swallowtail(
    surface: PolySurface,
    point: Point = (0.0, 0.0),
    order: int = DEFAULT_JET_ORDER,
    coeffs: NormalFormCoeffs = None,
    tol: Tolerances = None,
) -> Tuple[SingClass, RidgeReport]:
    """Classifies the focal parallel surface f + nu / kappa(p) at a u-axis point p.

    Two routes are evaluated. The first classifies the parallel surface directly
    from its jets with the null field (xi, zeta). The second reads the verdict off the
    ridge data of kappa: a non-degenerate point is a swallowtail iff it is a first
    order ridge point, and a cuspidal edge iff it is no ridge point.

    Args:
        surface (PolySurface): An adapted front.
        point (:obj:`Tuple[float, float]`, optional): The point p, the origin by default.
        order (:obj:`int`, optional): Jet order.
        coeffs (:obj:`NormalFormCoeffs`, optional): Normal form coefficients attached
            to the ridge report.
        tol (:obj:`Tolerances`, optional): Thresholds.

    Returns:
        Tuple[SingClass, RidgeReport]: The direct classification and the ridge report.

    Raises:
        ZeroCurvature: If |kappa(p)| <= tol.curvature, so no focal distance exists.
        ConsistencyFailure: If the two routes disagree.
    """
    tol = tol or get_tolerances()
    frame = build_frame(surface, point, order, tol)
    principal = principal_curvature_bounded(frame, tol)
    kappa = principal.kappa2
    if abs(kappa) <= tol.curvature:
        raise ZeroCurvature(f"kappa = {kappa:.3e} at {frame.point}, no focal parallel surface")
    t0 = 1.0 / kappa

    map_jets = tuple(x.truncated(order + 1) + t0 * n for x, n in zip(frame.f, frame.nu))
    direct = classify(map_jets, frame.nu, (principal.xi, principal.zeta), frame.point, tol=tol)
    report = ridge_report(frame.point, principal, coeffs, tol)
    predicted = _ridge_verdict(report, tol)
    if direct.verdict != predicted:
        raise ConsistencyFailure(
            f"Parallel surface at {frame.point}, t0={t0:.6g}: direct route says {direct.verdict}, "
            f"ridge route says {predicted}"
        )
    return direct, report


class SwallowtailConditions:
    """Coefficient conditions for a swallowtail on the focal parallel surface.

    The parallel surface at t0 = 1 / b20 has a swallowtail at the origin iff
    the curvature gradient is nonzero (`cond_gradient`), the origin is a ridge point
    (`cond_ridge`) and the second order ridge expression does not vanish
    (`cond_second_order`).

    Attributes:
        kappa_u (float): b30 - a20 b12.
        kappa_v_numerator (float): 4 b12^2 + a20 b03^2.
        c1 (float): 4 b12^3 + b30 b03^2.
        c2 (float): Second order expression in its published shape.
        c2_exact (float): Second order expression matching the jets, used to decide.
        cond_gradient, cond_ridge, cond_second_order (bool): The three conditions.
    """

    __slots__ = (
        "kappa_u",
        "kappa_v_numerator",
        "c1",
        "c2",
        "c2_exact",
        "cond_gradient",
        "cond_ridge",
        "cond_second_order",
    )

    def __init__(self, **values) -> None:
        for name in self.__slots__:
            setattr(self, name, values[name])

    @property
    def passed(self) -> bool:
        return self.cond_gradient and self.cond_ridge and self.cond_second_order

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        values = {name: getattr(self, name) for name in self.__slots__}
        values["passed"] = self.passed
        return values


def swallowtail_conditions(
    coeffs: NormalFormCoeffs, tol: Tolerances = None
) -> SwallowtailConditions:
    """Decides the swallowtail on the focal parallel surface from the coefficients.

    Raises:
        ZeroCurvature: If |b20| <= tol.curvature, so the focal distance 1 / b20 does
            not exist.
    """
    tol = tol or get_tolerances()
    a20, a30, b20, b30, b12, b03 = coeffs.leading()
    if abs(b20) <= tol.curvature:
        raise ZeroCurvature(f"b20 = {b20:.3e}, the focal distance 1/b20 is undefined")
    closed = ridge_closed_form(coeffs)
    kappa_u = b30 - a20 * b12
    kappa_v_numerator = 4 * b12**2 + a20 * b03**2
    return SwallowtailConditions(
        kappa_u=kappa_u,
        kappa_v_numerator=kappa_v_numerator,
        c1=closed.c1,
        c2=closed.c2,
        c2_exact=closed.c2_exact,
        cond_gradient=not (
            is_negligible(kappa_u, (b30, a20 * b12), floor=1.0)
            and is_negligible(kappa_v_numerator, (4 * b12**2, a20 * b03**2), floor=1.0)
        ),
        cond_ridge=closed.ridge_order > 0,
        cond_second_order=not is_negligible(closed.c2_exact, (closed.c2_scale,), floor=1.0),
    )
