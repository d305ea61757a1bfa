import pytest

from frontlab.errors import InconsistentNull
from frontlab.geometry.curvature import principal_curvature_bounded
from frontlab.geometry.frames import build_frame
from frontlab.geometry.jets import Jet2, jet_lift
from frontlab.geometry.singularity import Verdict, classify, classify_edge, first_kind_check
from frontlab.geometry.surface import Polynomial, PolySurface

STANDARD = PolySurface(
    Polynomial([(1, 0, 1.0)]), Polynomial([(0, 2, 0.5)]), Polynomial([(0, 3, 1 / 6)])
)


def test_verdict_strings():
    assert str(Verdict.SWALLOWTAIL) == "Swallowtail"
    assert Verdict("CuspidalEdge") is Verdict.CUSPIDAL_EDGE


def test_standard_cuspidal_edge():
    result = classify_edge(STANDARD)
    assert result.verdict == Verdict.CUSPIDAL_EDGE
    assert result.front
    assert result.psi_ccr == pytest.approx(0.5)
    assert result.lam == pytest.approx(0.0, abs=1e-12)
    assert result.as_dict()["verdict"] == "CuspidalEdge"


def test_examples_are_cuspidal_edges(swallowtail_edge, flat_edge):
    assert classify_edge(swallowtail_edge).verdict == Verdict.CUSPIDAL_EDGE
    assert classify_edge(flat_edge, (0.1, 0.0)).verdict == Verdict.CUSPIDAL_EDGE


def test_regular_point():
    result = classify_edge(STANDARD, (0.0, 0.2))
    assert result.verdict == Verdict.REGULAR
    assert result.psi_ccr is None


def test_frontal_is_not_certified():
    frontal = PolySurface(
        Polynomial([(1, 0, 1.0)]), Polynomial([(0, 2, 0.5)]), Polynomial([(0, 4, 1.0)])
    )
    result = classify_edge(frontal)
    assert result.verdict == Verdict.DEGENERATE_OR_UNKNOWN
    assert result.front is False


def test_wrong_null_field():
    frame = build_frame(STANDARD)
    eta = (Jet2.constant(1.0, (0.0, 0.0), 5), Jet2.constant(0.0, (0.0, 0.0), 5))
    with pytest.raises(InconsistentNull):
        classify(frame.f, frame.nu, eta)


def test_first_kind_check():
    assert first_kind_check(STANDARD)
    assert not first_kind_check(STANDARD, (0.0, 0.1))
    swapped = PolySurface(Polynomial([(0, 1, 1.0)]), Polynomial([(1, 0, 1.0)]))
    assert not first_kind_check(swapped)


def rescaled(eta, base):
    """eta times the nowhere zero function 1 + u^2 + v^2."""
    weight = jet_lift([(0, 0, 1.0), (2, 0, 1.0), (0, 2, 1.0)], base, eta[0].order)
    return tuple(weight * component for component in eta)


@pytest.mark.parametrize(
    "point, verdict",
    [
        ((0.0, 0.0), Verdict.CUSPIDAL_EDGE),
        ((0.1, 0.0), Verdict.CUSPIDAL_EDGE),
        ((0.0, 0.2), Verdict.REGULAR),
    ],
)
def test_verdict_ignores_null_field_scaling(point, verdict):
    frame = build_frame(STANDARD, point)
    eta = (Jet2.constant(0.0, frame.point, 5), Jet2.constant(1.0, frame.point, 5))
    plain = classify(frame.f, frame.nu, eta)
    scaled = classify(frame.f, frame.nu, rescaled(eta, frame.point))
    assert plain.verdict == verdict
    assert scaled.verdict == verdict


def test_swallowtail_ignores_null_field_scaling(swallowtail_edge):
    frame = build_frame(swallowtail_edge)
    principal = principal_curvature_bounded(frame)
    t0 = 1.0 / principal.kappa2
    map_jets = [x + t0 * n for x, n in zip(frame.f, frame.nu)]
    eta = (principal.xi, principal.zeta)
    plain = classify(map_jets, frame.nu, eta)
    scaled = classify(map_jets, frame.nu, rescaled(eta, frame.point))
    assert plain.verdict == Verdict.SWALLOWTAIL
    assert scaled.verdict == Verdict.SWALLOWTAIL
    assert scaled.eta_eta_lam == pytest.approx(plain.eta_eta_lam)
