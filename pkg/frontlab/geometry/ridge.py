"""Ridge points of cuspidal edges and of regular surfaces.

A point is a k-th order ridge point relative to the principal direction v when the
directional derivatives v kappa, ..., v^(k) kappa vanish and v^(k+1) kappa does not.
Only first order ridges are told apart, deeper ones are reported as order 2.

For the cuspidal edge normal form the jets at the origin have closed forms, see
:func:`ridge_closed_form`.
"""

from typing import Dict, Optional, Tuple

from frontlab.config import DEFAULT_JET_ORDER, Tolerances, get_tolerances
from frontlab.errors import UmbilicPoint, ZeroCurvature
from frontlab.geometry.curvature import (
    PrincipalData,
    principal_curvature_bounded,
    regular_principal,
)
from frontlab.geometry.frames import build_frame
from frontlab.geometry.jets import Jet2, Point, jet_cross, jet_dot, jet_lift, jet_sqrt
from frontlab.geometry.surface import NormalFormCoeffs, PolySurface
from frontlab.geometry.singularity import classify


def directional_derivatives(
    kappa: Jet2, xi: Jet2, zeta: Jet2
) -> Tuple[Jet2, Jet2]:
    """Jets of v kappa and v^(2) kappa for the vector field v = xi d/du + zeta d/dv."""
    first = kappa.directional(xi, zeta)
    return first, first.directional(xi, zeta)


def _ridge_order(vk1: float, vk2: float, threshold: float) -> int:
    if abs(vk1) > threshold:
        return 0
    if abs(vk2) > threshold:
        return 1
    return 2


class RidgeClosedForm:
    """Closed form ridge data of the normal form at the origin.

    Attributes:
        c1 (float): 4 b12^3 + b30 b03^2. The origin is a ridge point iff c1 = 0.
        c2 (float): The second order ridge expression in its published shape.
        c2_exact (float): The same expression with the b20^3 term that matches the
            jets, -3 b20^3 b03^4 instead of -2 b20^3 b03^4.
        kappa_u, kappa_v (float): First partials of the bounded principal curvature.
        xi0, zeta0, xi_u, xi_v, zeta_u, zeta_v (float): The principal direction and
            its first partials.
        kappa_uu, kappa_uv, kappa_vv (float): Second partials in their published shape.
        kappa_uu_exact, kappa_uv_exact, kappa_vv_exact (float): Second partials that
            match the jets for every b20.
        vk1 (float): c1 / (2 b03).
        vk2 (float): v^(2) kappa at the origin, valid with or without c1 = 0.
        c1_scale, c2_scale (float): Largest monomial of c1 and of c2_exact, the
            scales of their zero tests.
    """

    __slots__ = (
        "c1",
        "c2",
        "c2_exact",
        "kappa_u",
        "kappa_v",
        "xi0",
        "zeta0",
        "xi_u",
        "xi_v",
        "zeta_u",
        "zeta_v",
        "kappa_uu",
        "kappa_uv",
        "kappa_vv",
        "kappa_uu_exact",
        "kappa_uv_exact",
        "kappa_vv_exact",
        "vk1",
        "vk2",
        "c1_scale",
        "c2_scale",
    )

    def __init__(self, **values) -> None:
        for name in self.__slots__:
            setattr(self, name, values[name])

    @property
    def ridge_order(self) -> int:
        """0 when c1 != 0, 1 when c1 = 0 and c2_exact != 0, 2 otherwise.

        The zero tests keep a unit floor so they match the absolute threshold the
        jet route applies to v kappa and v^(2) kappa.
        """
        if not is_negligible(self.c1, (self.c1_scale,), floor=1.0):
            return 0
        if not is_negligible(self.c2_exact, (self.c2_scale,), floor=1.0):
            return 1
        return 2

    def as_dict(self) -> Dict[str, float]:
        values = {name: getattr(self, name) for name in self.__slots__}
        values["ridge_order"] = self.ridge_order
        return values


def ridge_closed_form(coeffs: NormalFormCoeffs) -> RidgeClosedForm:
    """Ridge data of the normal form at the origin from its coefficients.

    Only h2(0), h3(0), h4(0) and h5(0, 0) of the tail enter.

    Args:
        coeffs (NormalFormCoeffs): Normal form coefficients, b03 != 0.

    Returns:
        RidgeClosedForm: Every intermediate value.
    """
    a20, a30, b20, b30, b12, b03 = coeffs.leading()
    h2, h3, h4, h5 = coeffs.tail_at_origin()

    c1 = 4 * b12**3 + b30 * b03**2
    tail = 24 * (b03**4 * h2 + 4 * b12**2 * b03**2 * h3 - 8 * b12**3 * b03 * h4 + 16 * b12**4 * h5)
    quadratic = -3 * b20 * (4 * b12**2 + a20 * b03**2) ** 2
    c2 = -2 * b20**3 * b03**4 + quadratic + tail
    c2_exact = -3 * b20**3 * b03**4 + quadratic + tail

    kappa_u = b30 - a20 * b12
    kappa_v = -(a20 * b03**2 + 4 * b12**2) / (2 * b03)
    xi0, zeta0 = b03 / 2, -b12
    xi_u, xi_v = 3 * h4, 8 * h5 - b20
    zeta_u, zeta_v = a20 * b20 - 4 * h3, -3 * h4

    kappa_uu = -2 * (a20**2 * b20 + b20**3 + a30 * b12 - 12 * h2 + 2 * a20 * h3)
    kappa_uv = (
        -a30 * b03**3
        + 8 * b12 * (-4 * b03 * h3 + 3 * b12 * h4)
        + 2 * a20 * b03 * (4 * b20 * b12 - 3 * b03 * h4)
    ) / (2 * b03**2)
    kappa_vv = (
        4
        * (
            -2 * b20 * b12**2
            - 6 * b12 * b03 * h4
            + 16 * b12**2 * h5
            + b03**2 * (h3 - 2 * a20 * h5)
        )
        / b03**2
    )

    kappa_uu_exact = (
        24 * h2
        - 4 * a20 * h3
        - 2 * a30 * b12
        - 2 * a20**2 * b20
        - 3 * b20**3
        - b20 * b12**2
    )
    kappa_uv_exact = (
        -3 * a20 * h4
        - a30 * b03 / 2
        - 16 * b12 * h3 / b03
        + 4 * a20 * b20 * b12 / b03
        + 12 * b12**2 * h4 / b03**2
        - b20 * b12 * b03 / 2
    )
    kappa_vv_exact = (
        4 * h3
        - 8 * a20 * h5
        - 24 * b12 * h4 / b03
        + 64 * b12**2 * h5 / b03**2
        - 8 * b20 * b12**2 / b03**2
        - b20 * b03**2 / 4
    )

    vk2 = (
        (xi0 * xi_u + zeta0 * xi_v) * kappa_u
        + (xi0 * zeta_u + zeta0 * zeta_v) * kappa_v
        + xi0**2 * kappa_uu_exact
        + 2 * xi0 * zeta0 * kappa_uv_exact
        + zeta0**2 * kappa_vv_exact
    )

    return RidgeClosedForm(
        c1=c1,
        c2=c2,
        c2_exact=c2_exact,
        kappa_u=kappa_u,
        kappa_v=kappa_v,
        xi0=xi0,
        zeta0=zeta0,
        xi_u=xi_u,
        xi_v=xi_v,
        zeta_u=zeta_u,
        zeta_v=zeta_v,
        kappa_uu=kappa_uu,
        kappa_uv=kappa_uv,
        kappa_vv=kappa_vv,
        kappa_uu_exact=kappa_uu_exact,
        kappa_uv_exact=kappa_uv_exact,
        kappa_vv_exact=kappa_vv_exact,
        vk1=c1 / (2 * b03),
        vk2=vk2,
        c1_scale=max(abs(4 * b12**3), abs(b30 * b03**2)),
        c2_scale=max(
            abs(3 * b20**3 * b03**4),
            abs(3 * b20 * (4 * b12**2 + a20 * b03**2) ** 2),
            abs(24 * b03**4 * h2),
            abs(96 * b12**2 * b03**2 * h3),
            abs(192 * b12**3 * b03 * h4),
            abs(384 * b12**4 * h5),
        ),
    )


class RidgeReport:
    """Ridge analysis of the bounded principal curvature at a point.

    Attributes:
        point (Tuple[float, float]): The analysed point.
        kappa2 (float): Bounded principal curvature.
        vk1 (float): First directional derivative along the principal direction.
        vk2 (float): Second directional derivative along the principal direction.
        order (int): 0 (not a ridge), 1 (first order ridge) or 2 (order 2 or more).
        dkappa (Tuple[float, float]): Gradient of the curvature.
        d2kappa (Tuple[float, float, float]): The partials kappa_uu, kappa_uv, kappa_vv.
        direction (Tuple[float, float]): The principal direction (xi, zeta).
        closed_form (:obj:`RidgeClosedForm`, optional): Normal form data when known.
        principal (PrincipalData): The curvature jets the report was built from.
    """

    __slots__ = (
        "point",
        "kappa2",
        "vk1",
        "vk2",
        "order",
        "dkappa",
        "d2kappa",
        "direction",
        "closed_form",
        "principal",
    )

    def __init__(self, **values) -> None:
        for name in self.__slots__:
            setattr(self, name, values[name])

    @property
    def is_ridge(self) -> bool:
        return self.order > 0

    def as_dict(self) -> dict:
        values = {
            name: getattr(self, name)
            for name in self.__slots__
            if name not in ("closed_form", "principal")
        }
        values["closed_form"] = self.closed_form.as_dict() if self.closed_form else None
        return values

    def __repr__(self) -> str:
        return f"RidgeReport(point={self.point}, order={self.order}, vk1={self.vk1:.6g})"


def ridge_analyze(
    surface: PolySurface,
    point: Point = (0.0, 0.0),
    order: int = DEFAULT_JET_ORDER,
    coeffs: NormalFormCoeffs = None,
    tol: Tolerances = None,
) -> RidgeReport:
    """Ridge analysis of the bounded principal curvature at a u-axis point.

    Args:
        surface (PolySurface): An adapted front.
        point (:obj:`Tuple[float, float]`, optional): The point, the origin by default.
        order (:obj:`int`, optional): Jet order of the frame, at least 2.
        coeffs (:obj:`NormalFormCoeffs`, optional): Normal form coefficients of the
            surface, attached as closed form data.
        tol (:obj:`Tolerances`, optional): Thresholds, `ridge` scaled by 1 + |kappa|
            decides vanishing.

    Returns:
        RidgeReport: The report.

    Raises:
        NotAFront: Propagated from the curvature computation.
        UmbilicPoint: If the curvature is only known by value at the point.
    """
    tol = tol or get_tolerances()
    assert order >= 2, f"Ridge analysis needs jets of order 2 or more, got {order}"
    frame = build_frame(surface, point, order, tol)
    principal = principal_curvature_bounded(frame, tol)
    return ridge_report(frame.point, principal, coeffs, tol)


def ridge_report(
    point: Point, principal: PrincipalData, coeffs: Optional[NormalFormCoeffs], tol: Tolerances
) -> RidgeReport:
    kappa = principal.kappa
    if kappa.order < 2:
        raise UmbilicPoint(
            f"The principal curvature root is not smooth at {point}, its derivatives are undefined"
        )
    first, second = directional_derivatives(kappa, principal.xi, principal.zeta)
    threshold = tol.ridge * (1 + abs(kappa.value))
    return RidgeReport(
        point=point,
        kappa2=kappa.value,
        vk1=first.value,
        vk2=second.value,
        order=_ridge_order(first.value, second.value, threshold),
        dkappa=(kappa.partial(1, 0), kappa.partial(0, 1)),
        d2kappa=(kappa.partial(2, 0), kappa.partial(1, 1), kappa.partial(0, 2)),
        direction=principal.v_hat,
        closed_form=ridge_closed_form(coeffs) if coeffs is not None else None,
        principal=principal,
    )


def sub_parabolic(
    surface: PolySurface, point: Point, i: int, j: int, tol: Tolerances = None
) -> bool:
    """Whether v_j kappa_i vanishes at a regular point, with i != j.

    Raises:
        UmbilicPoint: Propagated from :func:`regular_principal`.
        NotRegular: Propagated from :func:`regular_principal`.
    """
    tol = tol or get_tolerances()
    if i == j:
        raise ValueError(f"Sub-parabolic points pair two different branches, got i=j={i}")
    principal = regular_principal(surface, point, tol=tol)
    kappa = principal.kappa(i)
    derivative = kappa.directional(*principal.direction(j)).value
    return abs(derivative) <= tol.ridge * (1 + abs(kappa.value))


class RegularParallelReport:
    """Swallowtail test for a parallel surface of a regular surface.

    The parallel surface at distance t = 1 / kappa_i(p) has a swallowtail at p iff p
    is a first order ridge relative to v_i and not sub-parabolic relative to v_j.

    Attributes:
        point (Tuple[float, float]): The point p.
        branch (int): The principal branch i.
        t (float): The parallel distance 1 / kappa_i(p).
        vk1 (float): v_i kappa_i at p.
        vk2 (float): v_i^(2) kappa_i at p.
        cross (float): v_j kappa_i at p.
        ridge_order (int): Ridge order relative to v_i.
        sub_parabolic (bool): Whether v_j kappa_i vanishes.
        predicted (bool): Whether the ridge criterion predicts a swallowtail.
        direct (SingClass): Direct classification of the parallel surface.
    """

    __slots__ = (
        "point",
        "branch",
        "t",
        "vk1",
        "vk2",
        "cross",
        "ridge_order",
        "sub_parabolic",
        "predicted",
        "direct",
    )

    def __init__(self, **values) -> None:
        for name in self.__slots__:
            setattr(self, name, values[name])

    def __bool__(self) -> bool:
        return self.predicted


def regular_parallel_swallowtail(
    surface: PolySurface, point: Point, i: int, order: int = 4, tol: Tolerances = None
) -> RegularParallelReport:
    """Ridge criterion and direct classification for g + nu / kappa_i(p) at p.

    Args:
        surface (PolySurface): A regular surface.
        point (Tuple[float, float]): A regular, non-umbilic point.
        i (int): The principal branch, 1 or 2.
        order (:obj:`int`, optional): Jet order of the curvatures.
        tol (:obj:`Tolerances`, optional): Thresholds.

    Returns:
        RegularParallelReport: Both verdicts.

    Raises:
        ZeroCurvature: If |kappa_i(p)| <= tol.curvature.
    """
    tol = tol or get_tolerances()
    j = 3 - i
    principal = regular_principal(surface, point, order, tol)
    kappa = principal.kappa(i)
    if abs(kappa.value) <= tol.curvature:
        raise ZeroCurvature(f"kappa_{i} vanishes at {point}, no focal distance")
    xi, zeta = principal.direction(i)
    first, second = directional_derivatives(kappa, xi, zeta)
    cross = kappa.directional(*principal.direction(j)).value
    threshold = tol.ridge * (1 + abs(kappa.value))
    ridge_order = _ridge_order(first.value, second.value, threshold)
    is_sub_parabolic = abs(cross) <= threshold

    t = 1.0 / kappa.value
    base = principal.point
    g = tuple(jet_lift(component, base, order + 1) for component in surface)
    normal = jet_cross(tuple(x.du() for x in g), tuple(x.dv() for x in g))
    nu = tuple(x / jet_sqrt(jet_dot(normal, normal), eps=0.0) for x in normal)
    parallel = tuple(x.truncated(order) + t * n for x, n in zip(g, nu))
    direct = classify(parallel, nu, (xi, zeta), base, tol=tol)

    return RegularParallelReport(
        point=base,
        branch=i,
        t=t,
        vk1=first.value,
        vk2=second.value,
        cross=cross,
        ridge_order=ridge_order,
        sub_parabolic=is_sub_parabolic,
        predicted=ridge_order == 1 and not is_sub_parabolic,
        direct=direct,
    )


def is_negligible(value: float, terms, tol: float = 1e-9, floor: float = 0.0) -> bool:
    """Zero test scaled by the largest monomial that builds `value`.

    With the default `floor` the test is purely relative, so a value is zero only
    when it is small against every monomial it is built from. A positive `floor`
    bounds the scale from below for comparisons against jet values that carry an
    absolute threshold.
    """
    scale = max([floor] + [abs(term) for term in terms])
    return abs(value) <= tol * scale
