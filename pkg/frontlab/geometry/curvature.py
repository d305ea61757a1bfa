"""Principal curvatures of cuspidal edges and of regular surfaces.

Near a cuspidal edge the Gaussian and mean curvatures

    K = (LN - vM^2) / (v det),   H = (EN - 2vFM + vGL) / (2v det)

blow up, but with A = EN - 2vFM + vGL and B = sqrt(A^2 - 4v det (LN - vM^2)) the
principal curvature

    kappa = 2 (LN - vM^2) / (A + sign(N) B)

extends smoothly across v = 0 wherever N != 0. The other principal curvature is
only bounded after multiplying by v: v kappa_other = (A + sign(N) B) / (2 det).
"""

from typing import Optional, Tuple
import logging
from math import sqrt

from frontlab.config import Tolerances, get_tolerances
from frontlab.errors import (
    ConsistencyFailure,
    NotAFront,
    NotRegular,
    OnSingularCurve,
    UmbilicPoint,
)
from frontlab.geometry.frames import EdgeFrame
from frontlab.geometry.jets import Jet2, Point, jet_cross, jet_dot, jet_lift, jet_sqrt
from frontlab.geometry.surface import PolySurface


def gauss_mean(frame: EdgeFrame) -> Tuple[float, float]:
    """Gaussian and mean curvature at the frame's base point.

    Raises:
        OnSingularCurve: If the point is on (or within 1e-12 of) the u-axis.
    """
    v = frame.point[1]
    if abs(v) < 1e-12:
        raise OnSingularCurve(f"K and H are unbounded on the singular curve, got v={v}")
    E, F, G, L, M, N, det = (
        getattr(frame, name).value for name in ("E", "F", "G", "L", "M", "N", "det")
    )
    K = (L * N - v * M**2) / (v * det)
    H = (E * N - 2 * v * F * M + v * G * L) / (2 * v * det)
    return K, H


class PrincipalData:
    """The bounded principal curvature and its direction at a point.

    Attributes:
        point (Tuple[float, float]): Base point.
        kappa (Jet2): Jet of the bounded principal curvature.
        v_kappa_other (Jet2): Jet of v times the other principal curvature.
        A_hat, B_hat (Jet2): Jets of A and B.
        sigma (int): Sign of N at the base point.
        branch (str): `"kappa2"` when N > 0, `"kappa1"` when the roles swap.
        xi, zeta (Jet2): The principal direction (xi, zeta) for `kappa`.
    """

    __slots__ = ("point", "kappa", "v_kappa_other", "A_hat", "B_hat", "sigma", "branch", "xi", "zeta")

    def __init__(self, point, kappa, v_kappa_other, A_hat, B_hat, sigma) -> None:
        self.point = point
        self.kappa = kappa
        self.v_kappa_other = v_kappa_other
        self.A_hat = A_hat
        self.B_hat = B_hat
        self.sigma = sigma
        self.branch = "kappa2" if sigma > 0 else "kappa1"
        self.xi = None
        self.zeta = None

    @property
    def kappa2(self) -> float:
        """Value of the bounded principal curvature."""
        return self.kappa.value

    @property
    def v_kappa1(self) -> float:
        return self.v_kappa_other.value

    @property
    def kappa1(self) -> Optional[float]:
        """The unbounded principal curvature, `None` on the u-axis."""
        v = self.point[1]
        if abs(v) < 1e-12:
            return None
        return self.v_kappa_other.value / v

    @property
    def v_hat(self) -> Optional[Tuple[float, float]]:
        if self.xi is None:
            return None
        return (self.xi.value, self.zeta.value)

    def as_dict(self) -> dict:
        return {
            "kappa2": self.kappa2,
            "kappa1": self.kappa1,
            "v_kappa1": self.v_kappa1,
            "branch": self.branch,
            "A_hat": self.A_hat.value,
            "B_hat": self.B_hat.value,
            "v_hat": self.v_hat,
        }

    def __repr__(self) -> str:
        return f"PrincipalData(point={self.point}, kappa2={self.kappa2:.6g}, branch={self.branch})"


def principal_curvature_bounded(frame: EdgeFrame, tol: Tolerances = None) -> PrincipalData:
    """The principal curvature which stays bounded across the cuspidal edge.

    Uses the quotient form 2(LN - vM^2) / (A + sign(N) B), whose denominator equals
    2E|N| on the u-axis. When N < 0 the branch formulas swap and the result is
    recorded as `kappa1`, so callers always receive the smooth branch. The principal
    direction is attached through :func:`principal_direction`.

    Args:
        frame (EdgeFrame): A frame from :func:`build_frame`.
        tol (:obj:`Tolerances`, optional): Thresholds, `front` bounds |N| below and
            `clamp` bounds the negative noise tolerated under the square root.

    Returns:
        PrincipalData: The curvature jets and direction.

    Raises:
        NotAFront: If |N| <= tol at the base point.
    """
    tol = tol or get_tolerances()
    E, F, G, L, M, N, det, v = (
        frame.E, frame.F, frame.G, frame.L, frame.M, frame.N, frame.det, frame.v
    )
    if abs(N.value) <= tol.front:
        raise NotAFront(f"N = {N.value:.3e} at {frame.point}, the surface is not a front there")
    sigma = 1 if N.value > 0 else -1
    gauss_numerator = L * N - v * M * M
    A_hat = E * N - 2.0 * v * F * M + v * G * L
    B_squared = A_hat * A_hat - 4.0 * v * det * gauss_numerator
    # Relative to A^2, which equals B^2 on the u-axis.
    if B_squared.value <= tol.sqrt * A_hat.value**2:
        if B_squared.value < -tol.clamp:
            logging.warning(
                f"Principal curvature discriminant {B_squared.value:.3e} < 0 at {frame.point}"
            )
        # Umbilic-like point: the root is not smooth, keep values only.
        B_hat = Jet2.constant(sqrt(max(B_squared.value, 0.0)), frame.point, 0)
    else:
        B_hat = jet_sqrt(B_squared, eps=0.0)
    denominator = A_hat + sigma * B_hat
    data = PrincipalData(
        frame.point,
        2.0 * gauss_numerator / denominator,
        denominator / (2.0 * det),
        A_hat,
        B_hat,
        sigma,
    )
    data.xi, data.zeta = principal_direction(frame, data, tol)
    return data


def principal_direction(
    frame: EdgeFrame, data: PrincipalData, tol: Tolerances = None
) -> Tuple[Jet2, Jet2]:
    """The principal direction (xi, zeta) = (N - v kappa G, -M + kappa F).

    The curvature is checked against the factored eigen-equation
    (L - kappa E)(N - v kappa G) - v (M - kappa F)^2 = 0 at the base point.

    Raises:
        ConsistencyFailure: If the eigen-equation residual is too large.
    """
    tol = tol or get_tolerances()
    kappa = data.kappa
    E, F, G, L, M, N, v = (frame.E, frame.F, frame.G, frame.L, frame.M, frame.N, frame.v)
    k, e, f, g, l, m, n, v0 = (
        kappa.value, E.value, F.value, G.value, L.value, M.value, N.value, v.value
    )
    residual = (l - k * e) * (n - v0 * k * g) - v0 * (m - k * f) ** 2
    scale = (1 + abs(l) + abs(k * e)) * (1 + abs(n) + abs(v0 * k * g)) + abs(v0) * (
        1 + abs(m) + abs(k * f)
    ) ** 2
    if abs(residual) > tol.consistency * scale:
        raise ConsistencyFailure(
            f"Principal curvature {k:.12g} misses the eigen-equation at {frame.point} by {residual:.3e}"
        )
    return N - v * kappa * G, kappa * F - M


class RegularPrincipal:
    """Principal curvatures and directions of a regular surface at a point.

    `kappa1` is the larger curvature. Iterating yields (kappa1, kappa2, v1, v2) as
    base point values.

    Attributes:
        point (Tuple[float, float]): Base point.
        kappa1, kappa2 (Jet2): Principal curvature jets.
        v1, v2 (Tuple[Jet2, Jet2]): Principal direction jets in the parameter plane.
    """

    __slots__ = ("point", "kappa1", "kappa2", "v1", "v2")

    def __init__(self, point, kappa1, kappa2, v1, v2) -> None:
        self.point = point
        self.kappa1 = kappa1
        self.kappa2 = kappa2
        self.v1 = v1
        self.v2 = v2

    def kappa(self, i: int) -> Jet2:
        return (self.kappa1, self.kappa2)[_branch_index(i)]

    def direction(self, i: int) -> Tuple[Jet2, Jet2]:
        return (self.v1, self.v2)[_branch_index(i)]

    def __iter__(self):
        yield self.kappa1.value
        yield self.kappa2.value
        yield tuple(x.value for x in self.v1)
        yield tuple(x.value for x in self.v2)


def _branch_index(i: int) -> int:
    if i not in (1, 2):
        raise ValueError(f"Principal branch must be 1 or 2, got {i}")
    return i - 1


def _regular_direction(kappa, E, F, G, L, M, N, tol: float) -> Tuple[Jet2, Jet2]:
    xi, zeta = N - kappa * G, kappa * F - M
    if abs(xi.value) + abs(zeta.value) > tol:
        return xi, zeta
    return M - kappa * F, kappa * E - L


def regular_principal(
    surface: PolySurface, point: Point, order: int = 3, tol: Tolerances = None
) -> RegularPrincipal:
    """Principal curvatures and directions of a regular polynomial surface.

    With A = EN - 2FM + GL and B = sqrt(A^2 - 4(EG - F^2)(LN - M^2)) the curvatures
    are (A +- B) / (2(EG - F^2)). The direction for kappa_i is (N - kappa_i G,
    -M + kappa_i F), replaced by (M - kappa_i F, -L + kappa_i E) where the first
    vanishes.

    Args:
        surface (PolySurface): Any polynomial surface.
        point (Tuple[float, float]): A regular, non-umbilic point.
        order (:obj:`int`, optional): Jet order of the curvatures.
        tol (:obj:`Tolerances`, optional): Thresholds, `frame` bounds |g_u x g_v|
            and the discriminant B below.

    Returns:
        RegularPrincipal: The curvatures and directions.

    Raises:
        NotRegular: If |g_u x g_v| <= tol at the point.
        UmbilicPoint: If B <= tol at the point.
    """
    tol = tol or get_tolerances()
    point = (float(point[0]), float(point[1]))
    g = tuple(jet_lift(component, point, order + 2) for component in surface)
    gu = tuple(x.du() for x in g)
    gv = tuple(x.dv() for x in g)
    normal = jet_cross(gu, gv)
    area_squared = jet_dot(normal, normal)
    if area_squared.value <= tol.frame**2:
        raise NotRegular(f"|g_u x g_v| = {sqrt(max(area_squared.value, 0.0)):.3e} at {point}")
    nu = tuple(x / jet_sqrt(area_squared, eps=0.0) for x in normal)

    guu = tuple(x.du().du() for x in g)
    guv = tuple(x.du().dv() for x in g)
    gvv = tuple(x.dv().dv() for x in g)
    gu, gv = tuple(x.truncated(order) for x in gu), tuple(x.truncated(order) for x in gv)
    E, F, G = jet_dot(gu, gu), jet_dot(gu, gv), jet_dot(gv, gv)
    L, M, N = jet_dot(guu, nu), jet_dot(guv, nu), jet_dot(gvv, nu)
    det = E * G - F * F
    A = E * N - 2.0 * F * M + G * L
    B_squared = A * A - 4.0 * det * (L * N - M * M)
    if B_squared.value <= tol.frame**2:
        raise UmbilicPoint(
            f"Principal curvatures coincide at {point}: B = {sqrt(max(B_squared.value, 0.0)):.3e}"
        )
    B = jet_sqrt(B_squared, eps=0.0)
    kappa1 = (A + B) / (2.0 * det)
    kappa2 = (A - B) / (2.0 * det)
    return RegularPrincipal(
        point,
        kappa1,
        kappa2,
        _regular_direction(kappa1, E, F, G, L, M, N, tol.frame),
        _regular_direction(kappa2, E, F, G, L, M, N, tol.frame),
    )
