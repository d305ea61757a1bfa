"""Cuspidal edge and swallowtail recognition for fronts.

For a front with unit normal nu, the signed area density is
lambda = det(f_u, f_v, nu). At a non-degenerate singular point (d lambda != 0) with
null vector field eta, the front is a cuspidal edge iff eta lambda != 0, and a
swallowtail iff eta lambda = 0 and eta eta lambda != 0. Anything else is reported
as `DegenerateOrUnknown`.
"""

from typing import Optional, Sequence, Tuple
from enum import Enum
import logging
from math import sqrt

from frontlab.config import DEFAULT_JET_ORDER, Tolerances, get_tolerances
from frontlab.errors import InconsistentNull
from frontlab.geometry.frames import build_frame
from frontlab.geometry.jets import Jet2, Point, jet_det
from frontlab.geometry.surface import PolySurface, validate_adapted


class Verdict(str, Enum):
    REGULAR = "Regular"
    CUSPIDAL_EDGE = "CuspidalEdge"
    SWALLOWTAIL = "Swallowtail"
    DEGENERATE_OR_UNKNOWN = "DegenerateOrUnknown"
    NOT_A_FRONT = "NotAFront"

    def __str__(self) -> str:
        return self.value


class SingClass:
    """A classification verdict and the values it rests on.

    Attributes:
        verdict (Verdict): The verdict.
        point (Tuple[float, float]): The classified point.
        lam (float): The signed area density.
        dlam (Tuple[float, float]): Its gradient.
        eta_lam (float): Its derivative along the null field.
        eta_eta_lam (float): Its second derivative along the null field.
        eta (Tuple[float, float]): The null vector at the point.
        null_residual (float): |df(eta)| at the point.
        front (:obj:`bool`, optional): Whether the map was certified to be a front.
        psi_ccr (:obj:`float`, optional): Front detecting value, when computed.
        closed_form (:obj:`float`, optional): Closed form counterpart of a witness,
            when one is known.
    """

    __slots__ = (
        "verdict",
        "point",
        "lam",
        "dlam",
        "eta_lam",
        "eta_eta_lam",
        "eta",
        "null_residual",
        "front",
        "psi_ccr",
        "closed_form",
    )

    def __init__(
        self,
        verdict: Verdict,
        point: Point,
        lam: float,
        dlam: Tuple[float, float],
        eta_lam: float,
        eta_eta_lam: float,
        eta: Tuple[float, float],
        null_residual: float,
        front: Optional[bool] = None,
        psi_ccr: Optional[float] = None,
        closed_form: Optional[float] = None,
    ) -> None:
        self.verdict = verdict
        self.point = point
        self.lam = lam
        self.dlam = dlam
        self.eta_lam = eta_lam
        self.eta_eta_lam = eta_eta_lam
        self.eta = eta
        self.null_residual = null_residual
        self.front = front
        self.psi_ccr = psi_ccr
        self.closed_form = closed_form

    def as_dict(self) -> dict:
        values = {name: getattr(self, name) for name in self.__slots__}
        values["verdict"] = str(self.verdict)
        return values

    def __repr__(self) -> str:
        return f"SingClass({self.verdict}, point={self.point})"


def _norm(values: Sequence[float]) -> float:
    return sqrt(sum(x * x for x in values))


def classify(
    map_jets: Sequence[Jet2],
    nu_jets: Sequence[Jet2],
    eta: Tuple[Jet2, Jet2],
    point: Point = None,
    front: Optional[bool] = None,
    tol: Tolerances = None,
) -> SingClass:
    """Classifies a frontal at a point from its jets.

    The checks run in this order: regular point, nullity of eta, non-degeneracy,
    front certification, cuspidal edge, swallowtail. The lambda threshold scales with
    |F_u| |F_v| and the eta thresholds with the size of eta.

    Args:
        map_jets (Sequence[Jet2]): Jets of the three components of the map, order 3 or
            more.
        nu_jets (Sequence[Jet2]): Jets of its unit normal.
        eta (Tuple[Jet2, Jet2]): Jets of a vector field, null on the singular set.
        point (:obj:`Tuple[float, float]`, optional): The base point, taken from the
            jets when omitted.
        front (:obj:`bool`, optional): Front certification supplied by the caller.
            When omitted the map is a front at a singular point iff d nu (eta) != 0.
        tol (:obj:`Tolerances`, optional): Thresholds, `sing` for the area density,
            `null` for |df(eta)| and `front` for |d nu (eta)|.

    Returns:
        SingClass: The verdict with witnesses.

    Raises:
        InconsistentNull: If the point is singular but eta is not null there.
    """
    tol = tol or get_tolerances()
    point = point if point is not None else map_jets[0].base
    xi, zeta = eta
    map_u = tuple(x.du() for x in map_jets)
    map_v = tuple(x.dv() for x in map_jets)
    lam = jet_det(map_u, map_v, nu_jets)
    eta_lam = lam.directional(xi, zeta)
    eta_eta_lam = eta_lam.directional(xi, zeta)

    xi0, zeta0 = xi.value, zeta.value
    map_u0 = [x.value for x in map_u]
    map_v0 = [x.value for x in map_v]
    null_residual = _norm([xi0 * a + zeta0 * b for a, b in zip(map_u0, map_v0)])
    eta_size = 1.0 + _norm((xi0, zeta0))
    witnesses = dict(
        point=point,
        lam=lam.value,
        dlam=(lam.partial(1, 0), lam.partial(0, 1)),
        eta_lam=eta_lam.value,
        eta_eta_lam=eta_eta_lam.value,
        eta=(xi0, zeta0),
        null_residual=null_residual,
    )

    scale = (1.0 + _norm(map_u0)) * (1.0 + _norm(map_v0))
    if abs(lam.value) > tol.sing * scale:
        return SingClass(Verdict.REGULAR, front=front, **witnesses)
    if null_residual > tol.null * eta_size:
        raise InconsistentNull(
            f"eta = ({xi0:.6g}, {zeta0:.6g}) is not null at {point}: |df(eta)| = {null_residual:.3e}"
        )
    if _norm(witnesses["dlam"]) <= tol.sing * scale:
        return SingClass(Verdict.DEGENERATE_OR_UNKNOWN, front=front, **witnesses)
    if front is None:
        nu_eta = [xi0 * a.partial(1, 0) + zeta0 * a.partial(0, 1) for a in nu_jets]
        front = _norm(nu_eta) > tol.front
    if not front:
        return SingClass(Verdict.DEGENERATE_OR_UNKNOWN, front=False, **witnesses)
    if abs(eta_lam.value) > tol.sing * eta_size:
        return SingClass(Verdict.CUSPIDAL_EDGE, front=True, **witnesses)
    if abs(eta_eta_lam.value) > tol.sing * eta_size**2:
        return SingClass(Verdict.SWALLOWTAIL, front=True, **witnesses)
    return SingClass(Verdict.DEGENERATE_OR_UNKNOWN, front=True, **witnesses)


def classify_edge(
    surface: PolySurface,
    point: Point = (0.0, 0.0),
    order: int = DEFAULT_JET_ORDER,
    tol: Tolerances = None,
) -> SingClass:
    """Classifies an adapted surface itself at a point, with eta = d/dv.

    On the u-axis the front property is certified by psi_ccr = E N / W != 0.
    """
    tol = tol or get_tolerances()
    frame = build_frame(surface, point, order, tol)
    base = frame.point
    eta = (Jet2.constant(0.0, base, order), Jet2.constant(1.0, base, order))
    psi_ccr = frame.E.value * frame.N.value / frame.W.value
    front = abs(psi_ccr) > tol.front if frame.on_axis else None
    result = classify(frame.f, frame.nu, eta, base, front, tol)
    result.psi_ccr = psi_ccr if frame.on_axis else None
    return result


def first_kind_check(
    surface: PolySurface, point: Point = (0.0, 0.0), grid=None, tol: Tolerances = None
) -> bool:
    """Whether the null direction d/dv is transverse to the singular curve at a u-axis point.

    This holds by construction in adapted coordinates, so the check reduces to
    validating that the surface is adapted. Failures are logged with their witnesses.
    """
    if point[1] != 0.0:
        logging.warning(f"First kind check at {point}, which is off the singular curve")
        return False
    report = validate_adapted(surface, grid, tol)
    if not report:
        logging.warning(
            f"Surface '{surface.name}' is not in adapted coordinates: {'; '.join(report.witnesses)}"
        )
        return False
    return True
