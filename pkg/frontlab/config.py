"""Default constants and numerical tolerances.

Attributes:
    DEFAULT_JET_ORDER: Truncation order used for frames and curvature jets.
    DEFAULT_BOX: Parameter box (umin, umax, vmin, vmax) used for grids.
    DEFAULT_GRID_SHAPE: Number of grid nodes along u and v.
    TOLERANCE_ENV: Environment variable holding a scale factor for every tolerance.
    FAULT_ENV: Environment variable which makes `frontlab verify` perturb a check.
"""

import os

from frontlab.errors import ConstraintError

DEFAULT_JET_ORDER = 5
DEFAULT_BOX = (-0.4, 0.4, -0.4, 0.4)
DEFAULT_GRID_SHAPE = (81, 81)
PROBE_GRID_SHAPE = (21, 21)

TOLERANCE_ENV = "FRONTLAB_TOL"
FAULT_ENV = "FRONTLAB_INJECT_FAULT"


class Tolerances:
    """Numerical thresholds shared by every computation.

    Attributes:
        div (float): Smallest admissible constant term of a jet divisor.
        sqrt (float): Smallest admissible constant term under a jet square root.
        divv (float): Largest admissible v-free coefficient when dividing by v.
        nf (float): Largest admissible forbidden normal form coefficient, also the
            bound on the 2-jet of a contact function at its critical point.
        frame (float): Smallest admissible norm of f_u x psi.
        front (float): Smallest admissible |N| for the bounded principal curvature.
        ridge (float): Zero threshold of directional curvature derivatives.
        sing (float): Zero threshold of the signed area density and its derivatives.
        null (float): Largest admissible norm of df applied to a null field.
        consistency (float): Relative agreement required between two routes.
        residual (float): Largest admissible residual of a closed form null field.
        bisect (float): Target interval width for singular set bisection.
        clamp (float): Negative noise tolerated under the principal curvature root.
        curvature (float): Largest |kappa| treated as zero, below it no focal point exists.
    """

    __slots__ = (
        "div",
        "sqrt",
        "divv",
        "nf",
        "frame",
        "front",
        "ridge",
        "sing",
        "null",
        "consistency",
        "residual",
        "bisect",
        "clamp",
        "curvature",
    )

    def __init__(
        self,
        div: float = 1e-12,
        sqrt: float = 1e-12,
        divv: float = 1e-9,
        nf: float = 1e-9,
        frame: float = 1e-9,
        front: float = 1e-9,
        ridge: float = 1e-9,
        sing: float = 1e-9,
        null: float = 1e-6,
        consistency: float = 1e-8,
        residual: float = 1e-7,
        bisect: float = 1e-10,
        clamp: float = 1e-12,
        curvature: float = 1e-12,
    ) -> None:
        self.div = div
        self.sqrt = sqrt
        self.divv = divv
        self.nf = nf
        self.frame = frame
        self.front = front
        self.ridge = ridge
        self.sing = sing
        self.null = null
        self.consistency = consistency
        self.residual = residual
        self.bisect = bisect
        self.clamp = clamp
        self.curvature = curvature

    def scaled(self, factor: float) -> "Tolerances":
        """Returns a copy with every threshold multiplied by `factor`."""
        return Tolerances(**{name: getattr(self, name) * factor for name in self.__slots__})

    def __repr__(self) -> str:
        fields = ", ".join(f"{name}={getattr(self, name):g}" for name in self.__slots__)
        return f"Tolerances({fields})"


def get_tolerances() -> Tolerances:
    """Reads the tolerance scale from the environment.

    Returns:
        Tolerances: The default thresholds scaled by `FRONTLAB_TOL` when it is set.

    Raises:
        ConstraintError: If `FRONTLAB_TOL` is not a positive number.
    """
    raw_scale = os.environ.get(TOLERANCE_ENV)
    if raw_scale is None or raw_scale.strip() == "":
        return Tolerances()
    try:
        scale = float(raw_scale)
    except ValueError:
        raise ConstraintError(f"{TOLERANCE_ENV} must be a number, got '{raw_scale}'")
    if not scale > 0:
        raise ConstraintError(f"{TOLERANCE_ENV} must be positive, got {scale}")
    return Tolerances().scaled(scale)


def fault_injected() -> bool:
    """Whether the verification fault toggle is set."""
    return bool(os.environ.get(FAULT_ENV, "").strip())
