"""Dual surfaces f* = rho nu of a cuspidal edge.

With a constant vector c, f_bar = f + c and rho = <f_bar, nu>, the dual surface is
f* = rho nu. Its unit normal is taken as

    nu* = (2 rho nu - f_bar) / |f_bar|,

which is orthogonal to both partials of f* and stays smooth across the singular set
of f*, the zero set of the bounded principal curvature. On that set the field
eta* = beta_t d/du - beta d/dv is null.
"""

from typing import List, Sequence
import logging
from math import sqrt

import torch

from frontlab.config import DEFAULT_JET_ORDER, Tolerances, get_tolerances
from frontlab.errors import BadTranslationVector, ConsistencyFailure, InconsistentNull
from frontlab.geometry.curvature import principal_curvature_bounded
from frontlab.geometry.fields import dual_fields, surface_fields
from frontlab.geometry.frames import build_frame
from frontlab.geometry.jets import Point, jet_det, jet_dot, jet_norm
from frontlab.geometry.ridge import is_negligible
from frontlab.geometry.singularity import SingClass, Verdict, classify
from frontlab.geometry.surface import NormalFormCoeffs, PolySurface


class DualJets:
    """Jets of a dual surface at one point.

    Attributes:
        frame (EdgeFrame): Frame of the base surface.
        kappa (float): Bounded principal curvature of the base surface.
        f_bar (Tuple[Jet2, Jet2, Jet2]): f + c.
        rho (Jet2): <f_bar, nu>.
        map (Tuple[Jet2, Jet2, Jet2]): f* = rho nu.
        nu_star (Tuple[Jet2, Jet2, Jet2]): The smooth unit normal of f*.
        lam (Jet2): det(f*_u, f*_v, nu*).
        eta (Tuple[Jet2, Jet2]): (beta_t, -beta).
    """

    __slots__ = ("frame", "kappa", "f_bar", "rho", "map", "nu_star", "lam", "eta")

    def __init__(self, frame, kappa, f_bar, rho, map, nu_star, lam, eta) -> None:
        self.frame = frame
        self.kappa = kappa
        self.f_bar = f_bar
        self.rho = rho
        self.map = map
        self.nu_star = nu_star
        self.lam = lam
        self.eta = eta


class DualSurface:
    """The dual surface of an adapted front as a pointwise evaluator.

    Attributes:
        base (PolySurface): The adapted front f, without its translation.
        c_vec (Tuple[float, float, float]): The translation vector c.
        anchor (Tuple[float, float]): Reference point on the u-axis.
        order (int): Jet order used for point jets.
    """

    __slots__ = ("base", "c_vec", "anchor", "order", "tol")

    def __init__(self, base, c_vec, anchor, order, tol) -> None:
        self.base = base
        self.c_vec = c_vec
        self.anchor = anchor
        self.order = order
        self.tol = tol

    def jets(self, point: Point) -> DualJets:
        frame = build_frame(self.base, point, self.order, self.tol)
        kappa = principal_curvature_bounded(frame, self.tol).kappa2
        order = self.order + 1
        f_bar = tuple(x.truncated(order) + c for x, c in zip(frame.f, self.c_vec))
        rho = jet_dot(f_bar, frame.nu)
        dual_map = tuple(rho * n for n in frame.nu)
        size = jet_norm(f_bar)
        nu_star = tuple((2.0 * rho * n - x) / size for n, x in zip(frame.nu, f_bar))
        lam = jet_det(
            tuple(x.du() for x in dual_map), tuple(x.dv() for x in dual_map), nu_star
        )
        eta = (frame.beta_t, -frame.beta)
        return DualJets(frame, kappa, f_bar, rho, dual_map, nu_star, lam, eta)

    def null_residual(self, point: Point) -> float:
        """|df*(eta*)| at a point."""
        jets = self.jets(point)
        xi, zeta = (x.value for x in jets.eta)
        return sqrt(
            sum((xi * x.partial(1, 0) + zeta * x.partial(0, 1)) ** 2 for x in jets.map)
        )

    def fields(self, u: torch.Tensor, v: torch.Tensor) -> dict:
        return dual_fields(surface_fields(self.base, u, v, self.tol), self.c_vec)

    def evaluate(self, u: torch.Tensor, v: torch.Tensor) -> torch.Tensor:
        return self.fields(u, v)["points"]

    def lambda_star(self, u: torch.Tensor, v: torch.Tensor) -> torch.Tensor:
        return self.fields(u, v)["lambda_star"]

    def __repr__(self) -> str:
        return f"DualSurface(c={self.c_vec}, anchor={self.anchor})"


def make_dual(
    surface: PolySurface,
    c_vec: Sequence[float] = None,
    anchor: Point = (0.0, 0.0),
    order: int = DEFAULT_JET_ORDER,
    tol: Tolerances = None,
) -> DualSurface:
    """Builds the dual surface of an adapted front.

    When `c_vec` is omitted the surface's own translation vector is used. Failing
    that, a nonzero constant term of f is split off and used as c.

    Args:
        surface (PolySurface): An adapted front.
        c_vec (:obj:`Sequence[float]`, optional): The translation vector c.
        anchor (:obj:`Tuple[float, float]`, optional): Reference point on the u-axis.
        order (:obj:`int`, optional): Jet order for point jets.
        tol (:obj:`Tolerances`, optional): Thresholds, `sing` bounds <nu(anchor), c>.

    Returns:
        DualSurface: The evaluator.

    Raises:
        BadTranslationVector: If no c is available or <nu(anchor), c> vanishes.
    """
    tol = tol or get_tolerances()
    if c_vec is None:
        if surface.c_vec is not None:
            c_vec = surface.c_vec
        elif any(c != 0.0 for c in surface.constant()):
            c_vec = surface.constant()
            logging.warning(
                f"No translation vector given, splitting the constant term {c_vec} off the surface"
            )
            surface = surface.centered()
        else:
            raise BadTranslationVector(
                "No translation vector: give a C line or a surface with a nonzero constant term"
            )
    c_vec = tuple(float(c) for c in c_vec)
    if len(c_vec) != 3:
        raise BadTranslationVector(f"Translation vector needs 3 components, got {len(c_vec)}")
    frame = build_frame(surface, anchor, 1, tol)
    pairing = sum(n * c for n, c in zip(frame.vector("nu"), c_vec))
    if abs(pairing) <= tol.sing:
        raise BadTranslationVector(
            f"c = {c_vec} is orthogonal to nu{frame.point}: <nu, c> = {pairing:.3e}"
        )
    return DualSurface(surface, c_vec, frame.point, order, tol)


class DualClosedForm:
    """Closed form values of the dual surface at the origin of the normal form.

    Attributes:
        rho_u, rho_v (float): -b20 c1 - b12 c2 and -b03 c2 / 2.
        lambda0 (float): b20 b03 c3 |c| / 2.
        lambda_u, lambda_v (float): Partials of lambda* at the origin, valid when b20 = 0.
        witness (float): 4 d lambda*(eta*) = -(4 b12^3 + b30 b03^2) c3 |c|, valid when b20 = 0.
    """

    __slots__ = ("rho_u", "rho_v", "lambda0", "lambda_u", "lambda_v", "witness")

    def __init__(self, **values) -> None:
        for name in self.__slots__:
            setattr(self, name, values[name])

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__slots__}


def dual_closed_form(coeffs: NormalFormCoeffs, c_vec: Sequence[float]) -> DualClosedForm:
    a20, a30, b20, b30, b12, b03 = coeffs.leading()
    c1, c2, c3 = (float(c) for c in c_vec)
    size = sqrt(c1 * c1 + c2 * c2 + c3 * c3)
    return DualClosedForm(
        rho_u=-b20 * c1 - b12 * c2,
        rho_v=-b03 * c2 / 2,
        lambda0=b20 * b03 * c3 * size / 2,
        lambda_u=(b30 - a20 * b12) * b03 * c3 * size / 2,
        lambda_v=-(4 * b12**2 + a20 * b03**2) * c3 * size / 4,
        witness=-(4 * b12**3 + b30 * b03**2) * c3 * size,
    )


def dual_singularity(
    dual: DualSurface,
    point: Point = (0.0, 0.0),
    coeffs: NormalFormCoeffs = None,
) -> SingClass:
    """Classifies the dual surface at a u-axis point.

    The point is singular on f* iff kappa vanishes there. Singular points are
    classified with eta* = beta_t d/du - beta d/dv, and the front property of f* is
    certified by d nu*(eta*) != 0. With normal form coefficients and the origin as
    point, 4 d lambda*(eta*) is checked against its closed form.

    Raises:
        ConsistencyFailure: If the closed form disagrees with the jets.
    """
    tol = dual.tol
    jets = dual.jets(point)
    xi, zeta = jets.eta
    if abs(jets.kappa) > tol.curvature:
        lam = jets.lam
        result = SingClass(
            Verdict.REGULAR,
            jets.frame.point,
            lam.value,
            (lam.partial(1, 0), lam.partial(0, 1)),
            lam.directional(xi, zeta).value,
            lam.directional(xi, zeta).directional(xi, zeta).value,
            (xi.value, zeta.value),
            dual.null_residual(point),
        )
    else:
        nu_eta = [xi.value * n.partial(1, 0) + zeta.value * n.partial(0, 1) for n in jets.nu_star]
        front = sqrt(sum(x * x for x in nu_eta)) > tol.front
        result = classify(jets.map, jets.nu_star, jets.eta, jets.frame.point, front, tol)

    if coeffs is not None and jets.frame.point == (0.0, 0.0):
        closed = dual_closed_form(coeffs, dual.c_vec)
        size = sqrt(sum(c * c for c in dual.c_vec)) * abs(dual.c_vec[2])
        if abs(coeffs.b20) <= tol.curvature:
            computed, expected = 4 * result.eta_lam, closed.witness
            terms = (4 * coeffs.b12**3 * size, coeffs.b30 * coeffs.b03**2 * size)
        else:
            computed, expected = result.lam, closed.lambda0
            terms = (coeffs.b20 * coeffs.b03 * size,)
        result.closed_form = expected
        if not is_negligible(computed - expected, terms, 1e-6, floor=1.0):
            raise ConsistencyFailure(
                f"Dual surface at the origin: jets give {computed:.12g}, closed form {expected:.12g}"
            )
    return result


class DualNullWitness:
    """Null field data of the dual surface at a singular point.

    Attributes:
        point (Tuple[float, float]): The point.
        rho_u, rho_v (float): Partials of rho.
        alpha, beta, alpha_t, beta_t (float): Weingarten coefficients.
        residual (float): |df*(eta*)|.
        rank (int): Numerical rank of df*.
    """

    __slots__ = ("point", "rho_u", "rho_v", "alpha", "beta", "alpha_t", "beta_t", "residual", "rank")

    def __init__(self, **values) -> None:
        for name in self.__slots__:
            setattr(self, name, values[name])

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__slots__}


def dual_nullfield_witness(dual: DualSurface, point: Point = (0.0, 0.0)) -> DualNullWitness:
    """Values entering df*(eta*) at a singular point of the dual surface.

    Raises:
        InconsistentNull: If |df*(eta*)| exceeds the `residual` tolerance.
    """
    tol = dual.tol
    jets = dual.jets(point)
    if abs(jets.kappa) > tol.curvature:
        logging.warning(f"Null field witness at {point}, where kappa = {jets.kappa:.3e} != 0")
    xi, zeta = (x.value for x in jets.eta)
    differential = torch.tensor(
        [[x.partial(1, 0), x.partial(0, 1)] for x in jets.map], dtype=torch.float64
    )
    residual = float(torch.linalg.norm(differential @ torch.tensor([xi, zeta], dtype=torch.float64)))
    if residual > tol.residual:
        raise InconsistentNull(f"eta* is not null for f* at {point}: |df*(eta*)| = {residual:.3e}")
    singular_values = torch.linalg.svdvals(differential)
    rank = int((singular_values > tol.sing * (1 + float(singular_values[0]))).sum())
    frame = jets.frame
    return DualNullWitness(
        point=frame.point,
        rho_u=jets.rho.partial(1, 0),
        rho_v=jets.rho.partial(0, 1),
        alpha=frame.alpha.value,
        beta=frame.beta.value,
        alpha_t=frame.alpha_t.value,
        beta_t=frame.beta_t.value,
        residual=residual,
        rank=rank,
    )


def flag_null_residuals(dual: DualSurface, points: Sequence[Point]) -> List[Point]:
    """Singular set points where eta* fails to be null, logged but not raised."""
    flagged = []
    for point in points:
        residual = dual.null_residual(point)
        if residual > dual.tol.residual:
            logging.warning(f"eta* residual {residual:.3e} at {point}")
            flagged.append(point)
    return flagged
