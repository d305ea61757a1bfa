"""Contact of a cuspidal edge with spheres and planes.

The distance squared function to the focal point q = f(p) + t0 nu(p), t0 = 1/kappa(p),

    phi(u, v) = -(|q - f(u, v)|^2 - t0^2) / 2,

and the height function along n0 = nu(p),

    h(u, v) = <f(u, v) + c, n0> - <f(p) + c, n0>,

both have a vanishing 2-jet at p (the latter when kappa(p) = 0). Their cubic part
decides whether p is a D4 point: with a, b, c, d the third partials along
uuu, uuv, uvv, vvv the discriminant

    a^2 d^2 - 6abcd - 3b^2 c^2 + 4b^3 d + 4ac^3

is positive for the type u^3 + uv^2 and negative for the type u^3 - uv^2.
"""

from typing import Dict, Optional, Sequence, Tuple
from enum import Enum

from frontlab.config import Tolerances, get_tolerances
from frontlab.errors import ConsistencyFailure, NonzeroCurvature, ZeroCurvature
from frontlab.geometry.curvature import principal_curvature_bounded
from frontlab.geometry.frames import build_frame
from frontlab.geometry.jets import Jet2, Point, jet_lift
from frontlab.geometry.ridge import is_negligible
from frontlab.geometry.surface import NormalFormCoeffs, PolySurface, from_normal_form

DEFAULT_C_VEC = (0.0, 0.0, 1.0)


class D4Type(str, Enum):
    PLUS = "u^3+uv^2 type"
    MINUS = "u^3-uv^2 type"
    NOT_D4 = "NotD4"

    def __str__(self) -> str:
        return self.value


class ContactReport:
    """D4 analysis of a distance squared or height function.

    Attributes:
        kind (str): `"DistanceSquared"` or `"Height"`.
        delta (float): The closed form discriminant.
        delta_jet (float): The discriminant of the computed cubic jet.
        d4 (D4Type): The verdict.
        preconditions (Dict[str, float]): kappa(p), b30 and the ridge expression c1.
        third_order_jet (Tuple[float, float, float, float]): The third partials along
            uuu, uuv, uvv, vvv.
        t0 (:obj:`float`, optional): Radius of the contact sphere.
        centre (:obj:`Tuple[float, float, float]`, optional): Its centre q.
    """

    __slots__ = (
        "kind",
        "delta",
        "delta_jet",
        "d4",
        "preconditions",
        "third_order_jet",
        "t0",
        "centre",
    )

    def __init__(self, **values) -> None:
        for name in self.__slots__:
            setattr(self, name, values.get(name))

    @property
    def is_d4(self) -> bool:
        return self.d4 is not D4Type.NOT_D4

    @property
    def umbilic(self) -> bool:
        """A D4 point of the distance squared function is an umbilic of the edge."""
        return self.kind == "DistanceSquared" and self.is_d4

    def as_dict(self) -> dict:
        values = {name: getattr(self, name) for name in self.__slots__}
        values["d4"] = str(self.d4)
        values["umbilic"] = self.umbilic
        return values

    def __repr__(self) -> str:
        return f"ContactReport({self.kind}, delta={self.delta:.6g}, {self.d4})"


def third_partials(jet: Jet2) -> Tuple[float, float, float, float]:
    return (jet.partial(3, 0), jet.partial(2, 1), jet.partial(1, 2), jet.partial(0, 3))


def discriminant_terms(jet: Jet2) -> Tuple[float, float, float, float, float]:
    """The five monomials of the cubic discriminant of a jet."""
    a, b, c, d = third_partials(jet)
    return (a**2 * d**2, -6 * a * b * c * d, -3 * b**2 * c**2, 4 * b**3 * d, 4 * a * c**3)


def cubic_discriminant(jet: Jet2) -> float:
    """Discriminant of the cubic part of a jet, positive for the u^3 + uv^2 type."""
    return sum(discriminant_terms(jet))


def d4_type(delta: float, terms: Sequence[float]) -> D4Type:
    """Sign of the discriminant, zero when small against each of its monomials."""
    if is_negligible(delta, terms):
        return D4Type.NOT_D4
    return D4Type.PLUS if delta > 0 else D4Type.MINUS


def _check_two_jet(jet: Jet2, bound: float, name: str) -> None:
    low_order = max(abs(jet.coefficient(i, j)) for i in range(3) for j in range(3 - i))
    if low_order > bound:
        raise ConsistencyFailure(f"2-jet of {name} at {jet.base} does not vanish: {low_order:.3e}")


def phi_jet(
    surface: PolySurface,
    anchor: Point = (0.0, 0.0),
    order: int = 4,
    tol: Tolerances = None,
) -> Tuple[Jet2, float, Tuple[float, float, float]]:
    """Jet of the distance squared function to the focal point of a u-axis anchor.

    Args:
        surface (PolySurface): An adapted front.
        anchor (:obj:`Tuple[float, float]`, optional): The anchor p on the u-axis.
        order (:obj:`int`, optional): Jet order, at least 3.
        tol (:obj:`Tolerances`, optional): Thresholds.

    Returns:
        Tuple[Jet2, float, Tuple[float, float, float]]: The jet of phi, the radius t0
            and the centre q.

    Raises:
        ZeroCurvature: If |kappa(p)| <= tol.curvature.
        ConsistencyFailure: If the 2-jet of phi exceeds tol.nf, scaled by t0^2.
    """
    tol = tol or get_tolerances()
    frame = build_frame(surface, anchor, 2, tol)
    kappa = principal_curvature_bounded(frame, tol).kappa2
    if abs(kappa) <= tol.curvature:
        raise ZeroCurvature(f"kappa = {kappa:.3e} at {frame.point}, no contact sphere")
    t0 = 1.0 / kappa
    centre = tuple(f + t0 * n for f, n in zip(frame.vector("f"), frame.vector("nu")))
    f = [jet_lift(component, frame.point, order) for component in surface]
    squared = sum(((q - x) * (q - x) for q, x in zip(centre, f)), Jet2.constant(0.0, frame.point, order))
    phi = -0.5 * (squared - t0**2)
    _check_two_jet(phi, tol.nf * max(1.0, t0**2), "phi")
    return phi, t0, centre


def height_jet(
    surface: PolySurface,
    anchor: Point = (0.0, 0.0),
    c_vec: Sequence[float] = DEFAULT_C_VEC,
    order: int = 4,
    tol: Tolerances = None,
) -> Jet2:
    """Jet of the height function along n0 = nu(p), shifted to vanish at p."""
    tol = tol or get_tolerances()
    frame = build_frame(surface, anchor, 1, tol)
    n0 = frame.vector("nu")
    f = [jet_lift(component, frame.point, order) for component in surface]
    r0 = sum(n * (x.value + c) for n, x, c in zip(n0, f, c_vec))
    height = sum((n * (x + c) for n, x, c in zip(n0, f, c_vec)), Jet2.constant(0.0, frame.point, order))
    return height - r0


def delta_phi(coeffs: NormalFormCoeffs, tol: Tolerances = None) -> float:
    """The distance squared discriminant (b30 / b20)(b30 b03^2 + 4 b12^3).

    The jet route gives the discriminant of phi's cubic part, which carries a factor
    1 / b20^3 against the closed form. Both are compared after rescaling.

    Raises:
        ZeroCurvature: If |b20| <= tol.curvature.
        ConsistencyFailure: If the jet route disagrees.
    """
    return classify_umbilic(coeffs, tol).delta


def _umbilic_report(coeffs: NormalFormCoeffs, tol: Tolerances) -> ContactReport:
    a20, a30, b20, b30, b12, b03 = coeffs.leading()
    if abs(b20) <= tol.curvature:
        raise ZeroCurvature(f"b20 = {b20:.3e}, the distance squared function has no focal point")
    c1 = 4 * b12**3 + b30 * b03**2
    delta = b30 / b20 * c1
    terms = (b30 / b20 * 4 * b12**3, b30**2 * b03**2 / b20)

    phi, t0, centre = phi_jet(from_normal_form(coeffs), (0.0, 0.0), 4, tol)
    delta_jet = cubic_discriminant(phi)
    jet_terms = tuple(b20**3 * term for term in discriminant_terms(phi))
    if not is_negligible(b20**3 * delta_jet - delta, terms + jet_terms, 1e-7):
        raise ConsistencyFailure(
            f"Distance squared discriminant: closed form {delta:.12g}, jet route {b20 ** 3 * delta_jet:.12g}"
        )
    return ContactReport(
        kind="DistanceSquared",
        delta=delta,
        delta_jet=delta_jet,
        d4=d4_type(delta, terms),
        preconditions={"kappa2": b20, "b30": b30, "c1": c1},
        third_order_jet=third_partials(phi),
        t0=t0,
        centre=centre,
    )


def classify_umbilic(coeffs: NormalFormCoeffs, tol: Tolerances = None) -> ContactReport:
    """D4 test for the distance squared function at the origin of the normal form.

    phi is D4 iff b30 != 0 and the origin is not a ridge point (c1 != 0), which is
    checked against the sign test of the discriminant.

    Raises:
        ZeroCurvature: If |b20| <= tol.curvature.
        ConsistencyFailure: If the coefficient test and the discriminant disagree.
    """
    tol = tol or get_tolerances()
    report = _umbilic_report(coeffs, tol)
    b30, b12, b03 = coeffs.b30, coeffs.b12, coeffs.b03
    by_coefficients = b30 != 0 and not is_negligible(
        report.preconditions["c1"], (4 * b12**3, b30 * b03**2)
    )
    if by_coefficients != report.is_d4:
        raise ConsistencyFailure(
            f"D4 by coefficients is {by_coefficients} but the discriminant {report.delta:.6g} says {report.d4}"
        )
    return report


def height_jet_and_delta(
    coeffs: NormalFormCoeffs,
    c_vec: Sequence[float] = DEFAULT_C_VEC,
    tol: Tolerances = None,
) -> Tuple[Jet2, ContactReport]:
    """Height function jet and its discriminant b30 (b30 b03^2 + 4 b12^3).

    The origin is a D4 point of the height function iff kappa vanishes there, the
    edge inflectional curvature b30 does not vanish and the origin is not a ridge
    point.

    Raises:
        NonzeroCurvature: If |b20| > tol.curvature.
        ConsistencyFailure: If the 2-jet does not vanish or the jet route disagrees.
    """
    tol = tol or get_tolerances()
    a20, a30, b20, b30, b12, b03 = coeffs.leading()
    if abs(b20) > tol.curvature:
        raise NonzeroCurvature(f"The height function needs b20 = 0, got {b20}")
    c1 = 4 * b12**3 + b30 * b03**2
    delta = b30 * c1
    terms = (4 * b30 * b12**3, b30**2 * b03**2)

    height = height_jet(from_normal_form(coeffs, c_vec), (0.0, 0.0), c_vec, 4, tol)
    _check_two_jet(height, tol.nf, "the height function")
    delta_jet = cubic_discriminant(height)
    if not is_negligible(delta_jet - delta, terms + discriminant_terms(height), 1e-7):
        raise ConsistencyFailure(
            f"Height discriminant: closed form {delta:.12g}, jet route {delta_jet:.12g}"
        )
    report = ContactReport(
        kind="Height",
        delta=delta,
        delta_jet=delta_jet,
        d4=d4_type(delta, terms),
        preconditions={"kappa2": b20, "b30": b30, "c1": c1},
        third_order_jet=third_partials(height),
    )
    return height, report
