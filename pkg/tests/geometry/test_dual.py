import pytest
import torch
from hypothesis import given, settings

from conftest import normal_forms
from frontlab.datasets.labels import dual_verdict
from frontlab.errors import BadTranslationVector
from frontlab.geometry.dual import (
    dual_closed_form,
    dual_nullfield_witness,
    dual_singularity,
    flag_null_residuals,
    make_dual,
)
from frontlab.geometry.fields import surface_fields
from frontlab.geometry.singularity import Verdict
from frontlab.geometry.surface import NormalFormCoeffs, from_normal_form

SWALLOWTAIL_NF = NormalFormCoeffs(1, 2, 2, 0, 0, 2)
FLAT_EDGE_NF = NormalFormCoeffs(0, 4, 0, 2, 2, 1)


def test_example_dual_is_cuspidal_edge(flat_edge):
    dual = make_dual(flat_edge)
    assert dual.c_vec == (0.0, 0.0, 1.0)
    assert dual.base.constant() == (0.0, 0.0, 0.0)
    result = dual_singularity(dual, coeffs=FLAT_EDGE_NF)
    assert result.verdict == Verdict.CUSPIDAL_EDGE
    assert result.closed_form == pytest.approx(-34.0)
    assert 4 * result.eta_lam == pytest.approx(-34.0)
    assert result.front


def test_translation_vector_sources(swallowtail_edge):
    with pytest.raises(BadTranslationVector):
        make_dual(swallowtail_edge)
    with pytest.raises(BadTranslationVector):
        make_dual(swallowtail_edge, (1.0, 0.0, 0.0))
    with pytest.raises(BadTranslationVector):
        make_dual(swallowtail_edge, (0.0, 1.0))
    surface = from_normal_form(SWALLOWTAIL_NF, c_vec=(0.0, 0.5, 2.0))
    assert make_dual(surface).c_vec == (0.0, 0.5, 2.0)


def test_regular_dual_where_curvature_does_not_vanish(swallowtail_edge):
    dual = make_dual(swallowtail_edge, (0.0, 0.0, 1.0))
    result = dual_singularity(dual, coeffs=SWALLOWTAIL_NF)
    assert result.verdict == Verdict.REGULAR
    # b20 b03 c3 |c| / 2
    assert result.lam == pytest.approx(2.0)
    assert result.closed_form == pytest.approx(2.0)


@pytest.mark.parametrize("b20", [1e-10, 0.0])
def test_dual_verdict_agrees_with_labels(b20):
    coeffs = NormalFormCoeffs(0, 4, b20, 2, 2, 1)
    dual = make_dual(from_normal_form(coeffs), (0.0, 0.0, 1.0))
    assert dual_singularity(dual, coeffs=coeffs).verdict == dual_verdict(coeffs)


def test_closed_form_values():
    closed = dual_closed_form(NormalFormCoeffs(0.5, 1, 1, 2, 1, 2), (1.0, 2.0, 2.0))
    assert closed.rho_u == pytest.approx(-3.0)
    assert closed.rho_v == pytest.approx(-2.0)
    assert closed.lambda0 == pytest.approx(6.0)
    assert closed.witness == pytest.approx(-(4 + 8) * 6.0)
    assert set(closed.as_dict()) == {"rho_u", "rho_v", "lambda0", "lambda_u", "lambda_v", "witness"}


def test_null_field_witness():
    coeffs = NormalFormCoeffs(0, 0, 0, 0, 1, 2)
    dual = make_dual(from_normal_form(coeffs), (0.0, 1.0, 1.0))
    witness = dual_nullfield_witness(dual)
    assert witness.rho_u == pytest.approx(-1.0)
    assert witness.rho_v == pytest.approx(-1.0)
    assert witness.beta == pytest.approx(-1.0)
    assert witness.beta_t == pytest.approx(-1.0)
    assert witness.rank == 1
    assert witness.residual < 1e-12
    assert flag_null_residuals(dual, [(0.0, 0.0)]) == []


@pytest.mark.parametrize(
    "coeffs, c_vec",
    [
        (NormalFormCoeffs(0, 4, 0, 2, 2, 1), (0.3, -0.4, 1.2)),
        (NormalFormCoeffs(0.5, -1, 0, 1, -0.5, -1.5), (0.0, 0.0, 0.7)),
        (NormalFormCoeffs(-1, 0.5, 0, -1, 1, 0.5), (1.0, 1.0, 1.0)),
    ],
)
def test_witness_matches_closed_form(coeffs, c_vec):
    dual = make_dual(from_normal_form(coeffs), c_vec)
    result = dual_singularity(dual, coeffs=coeffs)
    closed = dual_closed_form(coeffs, c_vec)
    assert 4 * result.eta_lam == pytest.approx(closed.witness, rel=1e-6)
    assert result.verdict == Verdict.CUSPIDAL_EDGE
    assert result.dlam == pytest.approx((closed.lambda_u, closed.lambda_v), rel=1e-6, abs=1e-9)


def test_pointwise_fields_match_jets(flat_edge):
    dual = make_dual(flat_edge)
    u = torch.tensor([0.0, 0.1], dtype=torch.float64)
    v = torch.tensor([0.0, 0.05], dtype=torch.float64)
    points = dual.evaluate(u, v)
    assert points[0].tolist() == pytest.approx([0.0, 0.0, 1.0])
    jets = dual.jets((0.1, 0.05))
    assert points[1].tolist() == pytest.approx([x.value for x in jets.map])
    assert float(dual.lambda_star(u, v)[1]) == pytest.approx(jets.lam.value)


def sign_changes(values):
    """Grid edges along either axis where the values change sign."""
    return torch.cat(
        [
            (values[1:, :] * values[:-1, :] < 0).flatten(),
            (values[:, 1:] * values[:, :-1] < 0).flatten(),
        ]
    )


def near_zero(values, tol):
    return torch.cat(
        [
            ((values[1:, :].abs() <= tol) | (values[:-1, :].abs() <= tol)).flatten(),
            ((values[:, 1:].abs() <= tol) | (values[:, :-1].abs() <= tol)).flatten(),
        ]
    )


def dual_and_curvature_on_grid(surface, c_vec, size=0.1, count=41):
    dual = make_dual(surface, c_vec)
    u = torch.linspace(-size, size, count, dtype=torch.float64)[:, None]
    v = torch.linspace(-size, size, count, dtype=torch.float64)[None, :]
    return dual.lambda_star(u, v), surface_fields(surface, u, v)["kappa"]


def assert_same_zero_set(lambda_star, kappa, tol=1e-9):
    # lambda* = kappa times a factor of moderate size, nonzero on these grids
    assert torch.all(kappa[lambda_star.abs() <= tol].abs() <= 10 * tol)
    assert torch.all(lambda_star[kappa.abs() <= tol].abs() <= 10 * tol)
    skipped = near_zero(lambda_star, 10 * tol) | near_zero(kappa, 10 * tol)
    changes = sign_changes(lambda_star)[~skipped]
    assert torch.equal(changes, sign_changes(kappa)[~skipped])
    return int(changes.sum())


def test_dual_singular_set_is_zero_set_of_curvature(flat_edge):
    lambda_star, kappa = dual_and_curvature_on_grid(flat_edge, (0.0, 0.0, 1.0))
    assert assert_same_zero_set(lambda_star, kappa) > 0


@settings(max_examples=30, deadline=None)
@given(normal_forms(min_abs_b03=1.0))
def test_dual_singular_set_on_normal_forms(coeffs):
    lambda_star, kappa = dual_and_curvature_on_grid(from_normal_form(coeffs), (0.0, 0.0, 1.0))
    assert_same_zero_set(lambda_star, kappa)
