"""Closed form predicates of normal form coefficients.

The targets attached to dataset items and the rows of a coefficient sweep are read
off the coefficients alone, without building jets:

- the ridge expressions c1 and c2 and the ridge order of the origin,
- the D4 discriminant of the distance squared function (b20 != 0) or of the
  height function (b20 = 0) and its type,
- the verdict of the focal parallel surface at the origin (b20 != 0),
- the verdict of the dual surface at the origin.
"""

from typing import Dict, Optional, Sequence

from frontlab.config import Tolerances, get_tolerances
from frontlab.geometry.contact import DEFAULT_C_VEC, D4Type, d4_type
from frontlab.geometry.parallel import swallowtail_conditions
from frontlab.geometry.ridge import RidgeClosedForm, ridge_closed_form
from frontlab.geometry.singularity import Verdict
from frontlab.geometry.surface import NormalFormCoeffs

LABEL_COLUMNS = (
    "c1",
    "c2",
    "c2_exact",
    "ridge",
    "delta_kind",
    "delta",
    "d4",
    "parallel",
    "dual",
)


def parallel_verdict(
    coeffs: NormalFormCoeffs, closed: RidgeClosedForm = None, tol: Tolerances = None
) -> Optional[Verdict]:
    """Verdict of the focal parallel surface at the origin, `None` when b20 = 0.

    A non-ridge origin gives a cuspidal edge, a first order ridge with nonzero
    curvature gradient a swallowtail.
    """
    tol = tol or get_tolerances()
    if abs(coeffs.b20) <= tol.curvature:
        return None
    closed = closed or ridge_closed_form(coeffs)
    if closed.ridge_order == 0:
        return Verdict.CUSPIDAL_EDGE
    if swallowtail_conditions(coeffs, tol).passed:
        return Verdict.SWALLOWTAIL
    return Verdict.DEGENERATE_OR_UNKNOWN


def dual_verdict(
    coeffs: NormalFormCoeffs, closed: RidgeClosedForm = None, tol: Tolerances = None
) -> Verdict:
    """Verdict of the dual surface at the origin.

    The origin is regular on the dual iff b20 != 0, and a cuspidal edge iff b20 = 0
    and the origin is no ridge point. The remaining ridge case is reported as
    `DegenerateOrUnknown`.
    """
    tol = tol or get_tolerances()
    if abs(coeffs.b20) > tol.curvature:
        return Verdict.REGULAR
    closed = closed or ridge_closed_form(coeffs)
    if closed.ridge_order == 0:
        return Verdict.CUSPIDAL_EDGE
    return Verdict.DEGENERATE_OR_UNKNOWN


def contact_delta(coeffs: NormalFormCoeffs, tol: Tolerances = None) -> Dict[str, object]:
    """The D4 discriminant of the contact function that applies to the coefficients.

    With b20 != 0 this is the distance squared function from the focal point, with
    b20 = 0 the height function along the normal.
    """
    tol = tol or get_tolerances()
    b20, b30, b12, b03 = coeffs.b20, coeffs.b30, coeffs.b12, coeffs.b03
    c1 = 4 * b12**3 + b30 * b03**2
    if abs(b20) > tol.curvature:
        kind = "DistanceSquared"
        delta = b30 / b20 * c1
        terms = (b30 / b20 * 4 * b12**3, b30**2 * b03**2 / b20)
    else:
        kind = "Height"
        delta = b30 * c1
        terms = (4 * b30 * b12**3, b30**2 * b03**2)
    return {"delta_kind": kind, "delta": delta, "d4": d4_type(delta, terms)}


def label_normal_form(
    coeffs: NormalFormCoeffs, c_vec: Sequence[float] = DEFAULT_C_VEC
) -> Dict[str, object]:
    """Closed form predicates of a coefficient set.

    Args:
        coeffs (NormalFormCoeffs): The coefficients.
        c_vec (:obj:`Sequence[float]`, optional): Translation vector of the dual
            surface. With c3 = 0 the dual is not defined and its verdict is `None`.

    Returns:
        Dict[str, object]: Values keyed by :data:`LABEL_COLUMNS`. Verdicts and D4
            types are strings, missing verdicts `None`.
    """
    tol = get_tolerances()
    closed = ridge_closed_form(coeffs)
    contact = contact_delta(coeffs, tol)
    parallel = parallel_verdict(coeffs, closed, tol)
    dual = dual_verdict(coeffs, closed, tol) if c_vec[2] != 0 else None
    return {
        "c1": closed.c1,
        "c2": closed.c2,
        "c2_exact": closed.c2_exact,
        "ridge": closed.ridge_order,
        "delta_kind": contact["delta_kind"],
        "delta": contact["delta"],
        "d4": str(contact["d4"]),
        "parallel": str(parallel) if parallel is not None else None,
        "dual": str(dual) if dual is not None else None,
    }


def is_d4(label: Dict[str, object]) -> bool:
    return label["d4"] != str(D4Type.NOT_D4)
