"""Cross-check battery run by `frontlab verify`.

Every property is checked on seeded coefficient draws from
:class:`frontlab.datasets.examples.RandomNormalForms`. Three pools are drawn:

- free: no constraint besides b20 >= 0.1,
- ridge: b30 = -4 b12^3 / b03^2 with b20 >= 0.1, so the origin is a ridge point,
- flat: b20 = 0.

A check passes, fails or is skipped. Checks are skipped when a draw lands on a
precondition failure unrelated to the property (for example a random sample point
where the surface stops being a front). Disagreements between two routes to the
same value are failures.
"""

from itertools import islice
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging

import torch

from frontlab.config import Tolerances, fault_injected, get_tolerances
from frontlab.datasets.examples import RandomNormalForms
from frontlab.datasets.labels import contact_delta
from frontlab.errors import ConsistencyFailure, InconsistentNull, PreconditionError
from frontlab.geometry.contact import D4Type, classify_umbilic, height_jet_and_delta
from frontlab.geometry.curvature import principal_curvature_bounded
from frontlab.geometry.dual import (
    dual_closed_form,
    dual_nullfield_witness,
    dual_singularity,
    make_dual,
)
from frontlab.geometry.fields import surface_fields, weingarten_gaps
from frontlab.geometry.frames import build_frame, weingarten
from frontlab.geometry.parallel import make_parallel, predict_swallowtail, swallowtail_conditions
from frontlab.geometry.ridge import ridge_analyze
from frontlab.geometry.singularity import Verdict
from frontlab.geometry.surface import NormalFormCoeffs, from_normal_form

DEFAULT_SEED = 7
DEFAULT_DRAWS = 100
FACTORIZATION_POINTS = 200
FACTORIZATION_JET_POINTS = 2
FINITE_DIFFERENCE_SPOTS = 50
FINITE_DIFFERENCE_STEP = 1e-3

Check = Callable[[NormalFormCoeffs, torch.Generator, Tolerances], bool]


class PropertyResult:
    """Pass, fail and skip counts of one property.

    Attributes:
        name (str): The property name.
        passed, failed, skipped (int): Counts over all draws.
        failures (List[str]): Messages of the first few failures.
    """

    __slots__ = ("name", "passed", "failed", "skipped", "failures")

    MAX_MESSAGES = 3

    def __init__(self, name: str) -> None:
        self.name = name
        self.passed = 0
        self.failed = 0
        self.skipped = 0
        self.failures = []

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, outcome: Optional[bool], message: str = None) -> None:
        if outcome is None:
            self.skipped += 1
        elif outcome:
            self.passed += 1
        else:
            self.failed += 1
            if message and len(self.failures) < self.MAX_MESSAGES:
                self.failures.append(message)

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__slots__}

    def __str__(self) -> str:
        total = self.passed + self.failed
        line = f"{self.name}: {self.passed}/{total} passed"
        if self.skipped:
            line += f", {self.skipped} skipped"
        return line


class VerifyReport:
    """Results of the whole battery."""

    __slots__ = ("seed", "draws", "results")

    def __init__(self, seed: int, draws: int, results: List[PropertyResult]) -> None:
        self.seed = seed
        self.draws = draws
        self.results = results

    @property
    def ok(self) -> bool:
        return all(result.ok for result in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def format(self) -> str:
        lines = [f"frontlab verify (seed={self.seed}, draws={self.draws})"]
        for result in self.results:
            lines.append(str(result))
            lines += [f"    {message}" for message in result.failures]
        lines.append("ALL PASSED" if self.ok else "FAILED")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "draws": self.draws,
            "ok": self.ok,
            "results": [result.as_dict() for result in self.results],
        }


def _uniform(generator: torch.Generator, low: float, high: float, size: int = 1) -> List[float]:
    values = low + (high - low) * torch.rand(size, generator=generator, dtype=torch.float64)
    return values.tolist()


def _close(a: float, b: float, relative: float) -> bool:
    return abs(a - b) <= relative * max(1.0, abs(a), abs(b))


def check_origin_frame(coeffs: NormalFormCoeffs, generator, tol: Tolerances) -> bool:
    """E, F, G, L, M, N at the origin are 1, 0, 1, b20, b12, b03 / 2."""
    values = build_frame(from_normal_form(coeffs), (0.0, 0.0), 2, tol).values()
    expected = {
        "E": 1.0,
        "F": 0.0,
        "G": 1.0,
        "L": coeffs.b20,
        "M": coeffs.b12,
        "N": coeffs.b03 / 2,
    }
    return all(abs(values[name] - value) <= 1e-10 for name, value in expected.items())


def check_ridge_oracle(coeffs: NormalFormCoeffs, generator, tol: Tolerances) -> bool:
    """Jet values of v kappa and v^(2) kappa match c1 / (2 b03) and the closed vk2."""
    report = ridge_analyze(from_normal_form(coeffs), coeffs=coeffs, tol=tol)
    closed = report.closed_form
    c1 = closed.c1 + (1.0 if fault_injected() else 0.0)
    return (
        _close(report.vk1, c1 / (2 * coeffs.b03), 1e-7)
        and _close(report.vk2, closed.vk2, 1e-7)
        and report.order == closed.ridge_order
    )


def check_factorization(coeffs: NormalFormCoeffs, generator, tol: Tolerances) -> bool:
    """lambda_t factors as W (v - t v kappa_other)(1 - t kappa) and the Weingarten
    closed forms match the differentiated normal at random points."""
    surface = from_normal_form(coeffs)
    offset = _uniform(generator, 0.2, 1.0)[0]
    us = torch.tensor(_uniform(generator, -0.2, 0.2, FACTORIZATION_POINTS), dtype=torch.float64)
    vs = torch.tensor(_uniform(generator, -0.2, 0.2, FACTORIZATION_POINTS), dtype=torch.float64)
    gaps = weingarten_gaps(surface_fields(surface, us, vs, tol))
    ok = bool((gaps[torch.isfinite(gaps)] <= 1e-9).all())
    for t in (1.0 / coeffs.b20, offset):
        parallel = make_parallel(surface, t, tol=tol)
        gaps = parallel.factorization_gaps(us, vs)
        ok &= bool((gaps[torch.isfinite(gaps)] <= 1e-8).all())
        # The jet route on a few of the same points.
        for point in islice(zip(us.tolist(), vs.tolist()), FACTORIZATION_JET_POINTS):
            ok &= parallel.factorization_residual(point) <= 1e-8
            weingarten(build_frame(surface, point, 2, tol), tol)
    return ok


def check_route_agreement(coeffs: NormalFormCoeffs, generator, tol: Tolerances) -> bool:
    """The direct and the ridge route classify the focal parallel surface alike."""
    predict_swallowtail(from_normal_form(coeffs), coeffs=coeffs, tol=tol)
    return True


def check_swallowtail_conditions(coeffs: NormalFormCoeffs, generator, tol: Tolerances) -> bool:
    """The coefficient conditions hold iff the focal parallel surface is a swallowtail."""
    direct, _ = predict_swallowtail(from_normal_form(coeffs), coeffs=coeffs, tol=tol)
    return swallowtail_conditions(coeffs, tol).passed == (direct.verdict == Verdict.SWALLOWTAIL)


def check_umbilic(coeffs: NormalFormCoeffs, generator, tol: Tolerances) -> bool:
    """The distance squared function is D4 iff its discriminant does not vanish."""
    report = classify_umbilic(coeffs, tol)
    return report.is_d4 == (contact_delta(coeffs, tol)["d4"] is not D4Type.NOT_D4)


def check_dual_cuspidal(coeffs: NormalFormCoeffs, generator, tol: Tolerances) -> bool:
    """A D4 height function makes the origin a cuspidal edge of the dual surface."""
    c_vec = (0.0, 0.0, 1.0)
    _, contact = height_jet_and_delta(coeffs, c_vec, tol)
    dual = make_dual(from_normal_form(coeffs, c_vec), tol=tol)
    verdict = dual_singularity(dual, coeffs=coeffs).verdict
    return not contact.is_d4 or verdict == Verdict.CUSPIDAL_EDGE


def check_dual_closed_forms(coeffs: NormalFormCoeffs, generator, tol: Tolerances) -> bool:
    """Closed forms of the dual surface at the origin match its jets.

    lambda*(0), or 4 d lambda*(eta*) when b20 = 0, is compared inside
    :func:`dual_singularity`. On singular points rho_u, rho_v and the rank of df*
    are compared as well.
    """
    c1, c2 = _uniform(generator, -1.0, 1.0, 2)
    c3 = _uniform(generator, 0.5, 1.5)[0]
    c_vec = (c1, c2, c3)
    dual = make_dual(from_normal_form(coeffs, c_vec), tol=tol)
    dual_singularity(dual, coeffs=coeffs)
    if abs(coeffs.b20) > tol.curvature:
        return True
    closed = dual_closed_form(coeffs, c_vec)
    witness = dual_nullfield_witness(dual)
    return (
        _close(witness.rho_u, closed.rho_u, 1e-9)
        and _close(witness.rho_v, closed.rho_v, 1e-9)
        and witness.rank == 1
    )


def _richardson(estimate: Callable[[float], float], step: float) -> float:
    return (4 * estimate(step / 2) - estimate(step)) / 3


def finite_difference_partials(
    field: Callable[[float, float], float], point: Tuple[float, float], step: float
) -> Dict[Tuple[int, int], float]:
    """First and second partials by Richardson extrapolated central differences."""
    u, v = point
    center = field(u, v)
    return {
        (1, 0): _richardson(lambda h: (field(u + h, v) - field(u - h, v)) / (2 * h), step),
        (0, 1): _richardson(lambda h: (field(u, v + h) - field(u, v - h)) / (2 * h), step),
        (2, 0): _richardson(
            lambda h: (field(u + h, v) - 2 * center + field(u - h, v)) / h**2, step
        ),
        (0, 2): _richardson(
            lambda h: (field(u, v + h) - 2 * center + field(u, v - h)) / h**2, step
        ),
        (1, 1): _richardson(
            lambda h: (
                field(u + h, v + h)
                - field(u + h, v - h)
                - field(u - h, v + h)
                + field(u - h, v - h)
            )
            / (4 * h**2),
            step,
        ),
    }


def check_finite_differences(coeffs: NormalFormCoeffs, generator, tol: Tolerances) -> bool:
    """Jet partials of the curvature and of the normal match finite differences."""
    surface = from_normal_form(coeffs)
    u = _uniform(generator, -0.2, 0.2)[0]
    v = _uniform(generator, 0.05, 0.2)[0] * (1 if _uniform(generator, 0, 1)[0] < 0.5 else -1)
    frame = build_frame(surface, (u, v), 2, tol)
    principal = principal_curvature_bounded(frame, tol)

    def scalar(name: str, index: int = None) -> Callable[[float, float], float]:
        def field(x: float, y: float) -> float:
            value = surface_fields(
                surface, torch.tensor(x, dtype=torch.float64), torch.tensor(y, dtype=torch.float64), tol
            )[name]
            return float(value if index is None else value[index])

        return field

    checks = [(principal.kappa, scalar("kappa"))]
    checks += [(frame.nu[k], scalar("nu", k)) for k in range(3)]
    checks += [(frame.E, scalar("E")), (frame.N, scalar("N"))]
    for jet, field in checks:
        for (i, j), value in finite_difference_partials(field, (u, v), FINITE_DIFFERENCE_STEP).items():
            if not _close(jet.partial(i, j), value, 1e-6):
                return False
    return True


PROPERTIES: Tuple[Tuple[str, Sequence[str], Check], ...] = (
    ("origin_frame", ("free", "flat"), check_origin_frame),
    ("ridge_oracle", ("free", "ridge"), check_ridge_oracle),
    ("factorization", ("free",), check_factorization),
    ("route_agreement", ("free", "ridge"), check_route_agreement),
    ("swallowtail_conditions", ("free", "ridge"), check_swallowtail_conditions),
    ("umbilic_discriminant", ("free",), check_umbilic),
    ("dual_cuspidal_edge", ("flat",), check_dual_cuspidal),
    ("dual_closed_forms", ("free", "flat"), check_dual_closed_forms),
    ("finite_differences", ("free",), check_finite_differences),
)


def _pools(seed: int, draws: int) -> Dict[str, List[NormalFormCoeffs]]:
    pools = {
        "free": RandomNormalForms(draws, seed, "free", min_b20=0.1, label=False),
        "ridge": RandomNormalForms(draws, seed + 1, "ridge", min_b20=0.1, label=False),
        "flat": RandomNormalForms(draws, seed + 2, "flat", label=False),
    }
    return {name: [item["data"] for item in pool] for name, pool in pools.items()}


def run_property(
    name: str,
    check: Check,
    draws: Sequence[NormalFormCoeffs],
    generator: torch.Generator,
    tol: Tolerances,
) -> PropertyResult:
    result = PropertyResult(name)
    for index, coeffs in enumerate(draws):
        try:
            outcome = check(coeffs, generator, tol)
            message = f"draw {index}: {coeffs!r}"
        except (ConsistencyFailure, InconsistentNull) as error:
            outcome, message = False, f"draw {index}: {error.name}: {error}"
        except PreconditionError as error:
            logging.info(f"{name}: skipping draw {index}, {error.name}: {error}")
            outcome, message = None, None
        result.record(outcome, message)
    logging.info(str(result))
    return result


def run_verification(
    seed: int = DEFAULT_SEED, draws: int = DEFAULT_DRAWS, tol: Tolerances = None
) -> VerifyReport:
    """Runs every property of the battery.

    Args:
        seed (:obj:`int`, optional): Seed of the coefficient draws and sample points.
        draws (:obj:`int`, optional): Draws per pool.
        tol (:obj:`Tolerances`, optional): Thresholds.

    Returns:
        VerifyReport: Per property counts, deterministic for a fixed seed.
    """
    assert draws > 0, f"Verification needs at least one draw, got {draws}"
    tol = tol or get_tolerances()
    if fault_injected():
        logging.warning("Fault injection is on, the ridge oracle compares against a perturbed c1")
    pools = _pools(seed, draws)
    generator = torch.Generator().manual_seed(seed)
    results = []
    for name, families, check in PROPERTIES:
        coefficient_draws = [coeffs for family in families for coeffs in pools[family]]
        if check is check_finite_differences:
            coefficient_draws = coefficient_draws[:FINITE_DIFFERENCE_SPOTS]
        results.append(run_property(name, check, coefficient_draws, generator, tol))
    return VerifyReport(seed, draws, results)
