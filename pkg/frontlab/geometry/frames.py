"""The singular frame {f_u, psi, nu} of a cuspidal edge in adapted coordinates.

In adapted coordinates the u-axis is the singular curve and f_v = v psi with psi
nowhere zero. The unit normal is nu = f_u x psi / |f_u x psi| and the fundamental
quantities are

    E = <f_u, f_u>, F = <f_u, psi>, G = <psi, psi>,
    L = -<f_u, nu_u>, M = -<psi, nu_u>, N = -<psi, nu_v>.

With det = EG - F^2 the normal derivatives decompose as nu_u = alpha f_u + beta psi
and nu_v = alpha_t f_u + beta_t psi, where

    alpha = (FM - GL) / det,      beta = (FL - EM) / det,
    alpha_t = (FN - vGM) / det,   beta_t = (vFM - EN) / det.
"""

from typing import Dict, Sequence, Tuple

from frontlab.config import DEFAULT_JET_ORDER, Tolerances, get_tolerances
from frontlab.errors import ConsistencyFailure, DegenerateFrame
from frontlab.geometry.jets import (
    Jet2,
    Point,
    jet_cross,
    jet_det,
    jet_divide_by_v,
    jet_dot,
    jet_lift,
    jet_sqrt,
)
from frontlab.geometry.surface import PolySurface


def _max_abs(jets: Sequence[Jet2]) -> float:
    return max(float(jet.coeffs.abs().max()) for jet in jets)


class EdgeFrame:
    """Frame jets of an adapted surface at one point.

    All attributes are jets at `point`. The vectors `f`, `fu`, `psi` and `nu` carry
    one more order than the scalar quantities so that `nu_u` and `nu_v` reach
    `order`.

    Attributes:
        point (Tuple[float, float]): Base point (u, v).
        order (int): Order of the scalar quantities.
        f, fu, psi, nu, nu_u, nu_v (Tuple[Jet2, Jet2, Jet2]): Vector jets.
        W (Jet2): |f_u x psi|.
        E, F, G, L, M, N (Jet2): Fundamental quantities.
        det (Jet2): EG - F^2.
        v (Jet2): The coordinate v.
        alpha, beta, alpha_t, beta_t (Jet2): Weingarten coefficients.
    """

    __slots__ = (
        "point",
        "order",
        "f",
        "fu",
        "psi",
        "nu",
        "nu_u",
        "nu_v",
        "W",
        "E",
        "F",
        "G",
        "L",
        "M",
        "N",
        "det",
        "v",
        "alpha",
        "beta",
        "alpha_t",
        "beta_t",
    )

    def __init__(self, **quantities) -> None:
        for name in self.__slots__:
            setattr(self, name, quantities[name])

    @property
    def on_axis(self) -> bool:
        return self.point[1] == 0.0

    def values(self) -> Dict[str, float]:
        """Base point values of the scalar quantities."""
        names = ("W", "E", "F", "G", "L", "M", "N", "alpha", "beta", "alpha_t", "beta_t")
        return {name: getattr(self, name).value for name in names}

    def vector(self, name: str) -> Tuple[float, float, float]:
        return tuple(jet.value for jet in getattr(self, name))

    def __repr__(self) -> str:
        return f"EdgeFrame(point={self.point}, order={self.order})"


def build_frame(
    surface: PolySurface,
    point: Point = (0.0, 0.0),
    order: int = DEFAULT_JET_ORDER,
    tol: Tolerances = None,
) -> EdgeFrame:
    """Builds the frame jets of an adapted surface.

    On the u-axis psi comes from dividing the jet of f_v by v. Elsewhere it is the
    lift of the exact polynomial quotient f_v / v, which is the same function.

    Args:
        surface (PolySurface): An adapted surface.
        point (:obj:`Tuple[float, float]`, optional): Base point, the origin by default.
        order (:obj:`int`, optional): Order of the scalar quantities.
        tol (:obj:`Tolerances`, optional): Thresholds, `frame` bounds |f_u x psi|
            and EG - F^2 from below.

    Returns:
        EdgeFrame: The frame.

    Raises:
        NotDivisibleByV: If the surface is not in adapted coordinates.
        DegenerateFrame: If f_u and psi are (nearly) dependent at the point.
    """
    tol = tol or get_tolerances()
    point = (float(point[0]), float(point[1]))
    f = tuple(jet_lift(component, point, order + 3) for component in surface)
    fu = tuple(x.du().truncated(order + 1) for x in f)
    if point[1] == 0.0:
        psi = tuple(jet_divide_by_v(x.dv(), tol.divv) for x in f)
    else:
        psi = tuple(jet_lift(component, point, order + 1) for component in surface.psi())

    normal = jet_cross(fu, psi)
    W_squared = jet_dot(normal, normal)
    if W_squared.value <= tol.frame**2:
        raise DegenerateFrame(
            f"f_u and psi are dependent at {point}: |f_u x psi| = {W_squared.value ** 0.5:.3e}"
        )
    W = jet_sqrt(W_squared, eps=0.0)
    nu = tuple(x / W for x in normal)
    nu_u = tuple(x.du() for x in nu)
    nu_v = tuple(x.dv() for x in nu)

    fu_k = tuple(x.truncated(order) for x in fu)
    psi_k = tuple(x.truncated(order) for x in psi)
    E, F, G = jet_dot(fu_k, fu_k), jet_dot(fu_k, psi_k), jet_dot(psi_k, psi_k)
    L = -jet_dot(fu_k, nu_u)
    M = -jet_dot(psi_k, nu_u)
    N = -jet_dot(psi_k, nu_v)
    det = E * G - F * F
    if det.value <= tol.frame:
        raise DegenerateFrame(f"EG - F^2 = {det.value:.3e} at {point}")

    v = Jet2.variable("v", point, order)
    return EdgeFrame(
        point=point,
        order=order,
        f=f,
        fu=fu,
        psi=psi,
        nu=nu,
        nu_u=nu_u,
        nu_v=nu_v,
        W=W.truncated(order),
        E=E,
        F=F,
        G=G,
        L=L,
        M=M,
        N=N,
        det=det,
        v=v,
        alpha=(F * M - G * L) / det,
        beta=(F * L - E * M) / det,
        alpha_t=(F * N - v * G * M) / det,
        beta_t=(v * F * M - E * N) / det,
    )


class WeingartenDecomposition:
    """Base point values of nu_u = alpha f_u + beta psi and nu_v = alpha_t f_u + beta_t psi.

    Attributes:
        alpha, beta, alpha_t, beta_t (float): The coefficients.
        residual (float): Largest coefficient of the jets nu_u - (alpha f_u + beta psi)
            and nu_v - (alpha_t f_u + beta_t psi).
    """

    __slots__ = ("alpha", "beta", "alpha_t", "beta_t", "residual")

    def __init__(self, alpha, beta, alpha_t, beta_t, residual) -> None:
        self.alpha = alpha
        self.beta = beta
        self.alpha_t = alpha_t
        self.beta_t = beta_t
        self.residual = residual

    @property
    def nu_u(self) -> Tuple[float, float]:
        return (self.alpha, self.beta)

    @property
    def nu_v(self) -> Tuple[float, float]:
        return (self.alpha_t, self.beta_t)

    def __iter__(self):
        yield self.nu_u
        yield self.nu_v


def weingarten(frame: EdgeFrame, tol: Tolerances = None) -> WeingartenDecomposition:
    """Checks the closed form Weingarten coefficients against the differentiated normal.

    Args:
        frame (EdgeFrame): A frame from :func:`build_frame`.
        tol (:obj:`Tolerances`, optional): Thresholds, `consistency` bounds the
            residual relative to the size of the normal derivatives.

    Returns:
        WeingartenDecomposition: The coefficients at the base point.

    Raises:
        ConsistencyFailure: If the closed forms disagree with the jets of nu.
    """
    tol = tol or get_tolerances()
    fu = tuple(x.truncated(frame.order) for x in frame.fu)
    psi = tuple(x.truncated(frame.order) for x in frame.psi)
    residuals = [
        nu_u - (frame.alpha * a + frame.beta * b) for nu_u, a, b in zip(frame.nu_u, fu, psi)
    ] + [
        nu_v - (frame.alpha_t * a + frame.beta_t * b) for nu_v, a, b in zip(frame.nu_v, fu, psi)
    ]
    residual = _max_abs(residuals)
    scale = 1.0 + _max_abs(frame.nu_u + frame.nu_v)
    if residual > tol.consistency * scale:
        raise ConsistencyFailure(
            f"Weingarten closed forms miss the normal derivatives at {frame.point} by {residual:.3e}"
        )
    return WeingartenDecomposition(
        frame.alpha.value,
        frame.beta.value,
        frame.alpha_t.value,
        frame.beta_t.value,
        residual,
    )


def psi_ccr(
    surface: PolySurface, u: float, order: int = 2, tol: Tolerances = None
) -> float:
    """The front detecting function along the singular curve.

    Computes det(f_u, nu, nu_v) at (u, 0), where f_u is the velocity of the singular
    curve and nu_v the derivative of the normal along the null direction d/dv, and
    checks it against |f_u|^2 N / |f_u x psi|.

    Args:
        surface (PolySurface): An adapted surface.
        u (float): Position on the u-axis.
        order (:obj:`int`, optional): Jet order of the frame.
        tol (:obj:`Tolerances`, optional): Thresholds.

    Returns:
        float: The determinant, nonzero exactly where the surface is a front.

    Raises:
        DegenerateFrame: Propagated from :func:`build_frame`.
        ConsistencyFailure: If the two expressions disagree.
    """
    tol = tol or get_tolerances()
    frame = build_frame(surface, (u, 0.0), order, tol)
    fu = tuple(x.truncated(0) for x in frame.fu)
    nu = tuple(x.truncated(0) for x in frame.nu)
    nu_v = tuple(x.truncated(0) for x in frame.nu_v)
    determinant = jet_det(fu, nu, nu_v).value
    closed = frame.E.value * frame.N.value / frame.W.value
    if abs(determinant - closed) > 1e-9 * max(1.0, abs(closed)):
        raise ConsistencyFailure(
            f"psi_ccr at u={u}: determinant {determinant:.12g} != closed form {closed:.12g}"
        )
    return determinant
