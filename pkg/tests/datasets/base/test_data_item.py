import pytest

from frontlab.datasets.base.dataset import NormalFormItem
from frontlab.geometry.surface import NormalFormCoeffs

COEFFS = NormalFormCoeffs(1, 2, 2, 0, 0, 2)


def test_create_data_item():
    data_item = NormalFormItem(COEFFS)
    assert data_item.data == COEFFS
    assert data_item.id == None
    assert data_item.target == None


def test_create_data_item_with_target():
    data_item = NormalFormItem(COEFFS, id="swallowtail_edge", target={"ridge": 1, "dual": "Regular"})
    assert data_item.id == "swallowtail_edge"
    assert data_item.target["dual"] == "Regular"


def test_index_data_item():
    data_item = NormalFormItem(COEFFS, id="swallowtail_edge", target=5)
    assert data_item[0] == "swallowtail_edge"
    assert data_item[1] == COEFFS
    assert data_item[2] == 5
    with pytest.raises(IndexError):
        data_item[3]


def test_unpack_data_item():
    data_item = NormalFormItem(COEFFS, target=5)
    id, data, target = data_item
    assert id == None
    assert data.b20 == 2
    assert target == 5


def test_data_item_has_no_dict():
    with pytest.raises(AttributeError):
        NormalFormItem(COEFFS).extra = 1
