import pytest
from hypothesis import given, settings

from conftest import normal_forms
from frontlab.config import get_tolerances
from frontlab.errors import UmbilicPoint
from frontlab.geometry.curvature import PrincipalData
from frontlab.geometry.jets import Jet2
from frontlab.geometry.ridge import (
    is_negligible,
    regular_parallel_swallowtail,
    ridge_analyze,
    ridge_closed_form,
    ridge_report,
    sub_parabolic,
)
from frontlab.geometry.singularity import Verdict
from frontlab.geometry.surface import NormalFormCoeffs, Polynomial, PolySurface, from_normal_form

SWALLOWTAIL_NF = NormalFormCoeffs(1, 2, 2, 0, 0, 2)
FLAT_EDGE_NF = NormalFormCoeffs(0, 4, 0, 2, 2, 1)


def graph(*terms):
    return PolySurface(Polynomial([(1, 0, 1.0)]), Polynomial([(0, 1, 1.0)]), Polynomial(terms))


def test_closed_form_of_examples():
    closed = ridge_closed_form(SWALLOWTAIL_NF)
    assert closed.c1 == 0.0
    assert closed.c2 == pytest.approx(-352.0)
    assert closed.c2_exact == pytest.approx(-480.0)
    assert closed.kappa_u == 0.0
    assert closed.kappa_v == pytest.approx(-1.0)
    assert closed.kappa_uu == pytest.approx(-20.0)
    assert closed.kappa_uu_exact == pytest.approx(-28.0)
    assert closed.vk2 == pytest.approx(-30.0)
    assert closed.ridge_order == 1

    closed = ridge_closed_form(FLAT_EDGE_NF)
    assert closed.c1 == pytest.approx(34.0)
    assert closed.vk1 == pytest.approx(17.0)
    assert closed.ridge_order == 0
    assert closed.as_dict()["ridge_order"] == 0


def test_jets_agree_with_examples(swallowtail_edge, flat_edge):
    report = ridge_analyze(swallowtail_edge, coeffs=SWALLOWTAIL_NF)
    assert report.kappa2 == pytest.approx(2.0)
    assert report.vk1 == pytest.approx(0.0, abs=1e-10)
    assert report.vk2 == pytest.approx(-30.0)
    assert report.order == 1
    assert report.is_ridge
    assert report.as_dict()["closed_form"]["c1"] == 0.0

    report = ridge_analyze(flat_edge)
    assert report.vk1 == pytest.approx(17.0)
    assert report.order == 0
    assert report.closed_form is None


def test_flat_cubic_part_is_a_ridge():
    coeffs = NormalFormCoeffs(0.3, -1.2, 0.7, 0, 0, -1.5)
    assert ridge_closed_form(coeffs).vk1 == 0.0
    assert ridge_analyze(from_normal_form(coeffs)).vk1 == pytest.approx(0.0, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(normal_forms())
def test_jets_match_closed_form(coeffs):
    closed = ridge_closed_form(coeffs)
    report = ridge_analyze(from_normal_form(coeffs), order=4)
    assert report.vk1 == pytest.approx(closed.vk1, rel=1e-7, abs=1e-7)
    assert report.vk2 == pytest.approx(closed.vk2, rel=1e-7, abs=1e-7)
    assert report.dkappa == pytest.approx((closed.kappa_u, closed.kappa_v), rel=1e-7, abs=1e-7)
    assert report.d2kappa == pytest.approx(
        (closed.kappa_uu_exact, closed.kappa_uv_exact, closed.kappa_vv_exact), rel=1e-7, abs=1e-7
    )


@settings(max_examples=40, deadline=None)
@given(normal_forms())
def test_ridge_criterion_matches_c1(coeffs):
    ridge = coeffs.replace(b30=-4 * coeffs.b12**3 / coeffs.b03**2)
    assert ridge_closed_form(ridge).ridge_order >= 1
    assert ridge_analyze(from_normal_form(ridge), order=4).vk1 == pytest.approx(0.0, abs=1e-8)


def test_closed_form_with_tail():
    coeffs = NormalFormCoeffs(
        0.5, 1, 1, 0, 0, 2, h2=[(0, 0.5)], h3=[(0, -0.25)], h4=[(0, 0.75)], h5=[(0, 0, 1.5)]
    )
    closed = ridge_closed_form(coeffs)
    report = ridge_analyze(from_normal_form(coeffs), order=4)
    assert report.vk2 == pytest.approx(closed.vk2, rel=1e-7)
    assert report.d2kappa == pytest.approx(
        (closed.kappa_uu_exact, closed.kappa_uv_exact, closed.kappa_vv_exact), rel=1e-7, abs=1e-9
    )


def test_is_negligible():
    assert is_negligible(1e-10, (1.0,))
    assert not is_negligible(1e-6, (1.0,))
    assert is_negligible(1e-4, (1e6,))
    # small values are not zero when their monomials are small too
    assert not is_negligible(1e-10, (1e-10,))
    assert is_negligible(1e-10, (1e-10,), floor=1.0)
    assert is_negligible(0.0, ())
    assert not is_negligible(1e-300, ())


def test_sub_parabolic_saddle():
    saddle = graph((2, 0, 0.5), (0, 2, -0.5))
    assert sub_parabolic(saddle, (0.0, 0.0), 1, 2)
    assert sub_parabolic(saddle, (0.0, 0.0), 2, 1)
    with pytest.raises(ValueError):
        sub_parabolic(saddle, (0.0, 0.0), 1, 1)


def test_regular_parallel_swallowtail():
    # kappa_1 is critical along x, grows along y and curves along x
    surface = graph((2, 0, 0.5), (0, 2, -0.5), (2, 1, 0.5), (4, 0, 1.0))
    report = regular_parallel_swallowtail(surface, (0.0, 0.0), 1)
    assert report.t == pytest.approx(1.0)
    assert report.ridge_order == 1
    assert not report.sub_parabolic
    assert report
    assert report.direct.verdict == Verdict.SWALLOWTAIL


def test_regular_parallel_cuspidal_edge():
    # kappa_1 changes along x, the parallel surface has a cuspidal edge
    surface = graph((2, 0, 0.5), (0, 2, -0.5), (3, 0, 1.0))
    report = regular_parallel_swallowtail(surface, (0.0, 0.0), 1)
    assert report.ridge_order == 0
    assert not report
    assert report.direct.verdict == Verdict.CUSPIDAL_EDGE


@pytest.mark.parametrize("b30", [0.0, 1.0])
def test_ridge_on_nearly_flat_cusp(b30):
    # |N| = 5e-7 is a front, but B^2 = (E N)^2 sits below 1e-12
    coeffs = NormalFormCoeffs(0, 0, 1, b30, 0, 1e-6)
    report = ridge_analyze(from_normal_form(coeffs))
    assert report.kappa2 == pytest.approx(1.0)
    assert report.principal.kappa.order >= 2
    assert report.vk1 == pytest.approx(ridge_closed_form(coeffs).vk1, rel=1e-6, abs=1e-9)


def test_ridge_needs_curvature_derivatives(swallowtail_edge):
    principal = ridge_analyze(swallowtail_edge).principal
    flat = PrincipalData(
        principal.point,
        Jet2.constant(principal.kappa2, principal.point, 0),
        principal.v_kappa_other,
        principal.A_hat,
        principal.B_hat,
        principal.sigma,
    )
    flat.xi, flat.zeta = principal.xi, principal.zeta
    with pytest.raises(UmbilicPoint):
        ridge_report(principal.point, flat, None, get_tolerances())
