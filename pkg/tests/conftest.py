import pytest
from hypothesis import strategies as st

from frontlab.datasets.base.dataset import NormalFormDataset, NormalFormItem
from frontlab.datasets.examples import load_example_surface
from frontlab.geometry.surface import NormalFormCoeffs


@pytest.fixture
def swallowtail_edge():
    return load_example_surface("swallowtail_edge")


@pytest.fixture
def flat_edge():
    return load_example_surface("flat_edge")


def normal_forms(min_b20: float = 0.0, min_abs_b03: float = 0.2):
    """Hypothesis strategy for leading normal form coefficients without tails."""
    coefficient = st.floats(-2, 2, allow_nan=False, allow_infinity=False)
    b03 = st.floats(min_abs_b03, 2).flatmap(lambda size: st.sampled_from((size, -size)))
    return st.builds(
        NormalFormCoeffs,
        a20=coefficient,
        a30=coefficient,
        b20=st.floats(min_b20, 2),
        b30=coefficient,
        b12=coefficient,
        b03=b03,
    )


class DatasetForTesting(NormalFormDataset):
    """One hundred coefficient sets with a20 = i and a boolean target."""

    def prepare_data(self):
        return [
            NormalFormItem(
                NormalFormCoeffs(float(i), 0, 0, 0, 0, 1),
                id=f"data_item-{i}",
                target=(i % 3) == 1,
            )
            for i in range(100)
        ]
