import pytest
from conftest import DatasetForTesting

from frontlab.datasets.base.dataset import ConcatNormalFormDatasetView


def test_create_concat_dataset_view():
    dataset = DatasetForTesting()
    dataset_view = ConcatNormalFormDatasetView(dataset, dataset)
    assert dataset_view[1]["id"] == "data_item-1"
    assert dataset_view[1]["target"] == True
    assert dataset_view[len(dataset)]["id"] == "data_item-0"
    assert dataset_view[len(dataset)]["target"] == False
    assert len(dataset_view) == 2 * len(dataset)


def test_create_concat_dataset_view_rejects_lists():
    with pytest.raises(AssertionError):
        ConcatNormalFormDatasetView(DatasetForTesting(), [1, 2])


def test_slice_concat_dataset_view():
    dataset = DatasetForTesting()
    dataset_view = ConcatNormalFormDatasetView(dataset, dataset)[2:22:5]
    assert dataset_view[1]["id"] == "data_item-7"
    assert dataset_view[1]["data"].a20 == 7
    assert dataset_view[1]["target"] == True


def test_slice_concat_dataset_view_with_list():
    dataset = DatasetForTesting()
    dataset_view = ConcatNormalFormDatasetView(dataset, dataset)
    assert dataset_view[50]["id"] == "data_item-50"

    dataset_view = dataset_view[[2, 5, 7, 8, 11, 105]]
    assert dataset_view[5]["id"] == f"data_item-{105 - len(dataset)}"
    assert dataset_view[5]["target"] == ((105 - len(dataset)) % 3 == 1)


def test_map_concat_dataset_view():
    dataset = DatasetForTesting()
    with pytest.raises(AttributeError):
        ConcatNormalFormDatasetView(dataset, dataset).map(lambda coeffs: coeffs)


def test_transform_concat_dataset_view():
    dataset = DatasetForTesting()
    dataset_view = ConcatNormalFormDatasetView(dataset, dataset)
    transformed_dataset = dataset_view.transform(lambda coeffs: coeffs.replace(b12=coeffs.a20))
    assert transformed_dataset[104]["data"].b12 == 4
    assert dataset.data[4].data.b12 == 0


def test_filter_concat_dataset_view():
    dataset = DatasetForTesting()
    selected = ConcatNormalFormDatasetView(dataset, dataset[:10]).where(
        lambda coeffs: coeffs.a20 < 2
    )
    assert [item["id"] for item in selected] == [f"data_item-{i}" for i in (0, 1, 0, 1)]


def test_concat_concat_dataset_view_and_dataset():
    dataset = DatasetForTesting()
    dataset_view = ConcatNormalFormDatasetView(dataset, dataset)
    concat_result = dataset_view + dataset
    assert concat_result[len(dataset_view)]["id"] == "data_item-0"
    assert len(concat_result) == len(dataset_view) + len(dataset)


def test_concat_concat_dataset_view_and_dataset_view():
    dataset = DatasetForTesting()
    concat_dataset_view = ConcatNormalFormDatasetView(dataset, dataset)
    dataset_view = dataset[5:50:3]
    concat_result = concat_dataset_view + dataset_view
    assert concat_result[len(concat_dataset_view)]["id"] == "data_item-5"
    assert len(concat_result) == len(concat_dataset_view) + len(dataset_view)


def test_concat_concat_dataset_view_and_concat_dataset_view():
    dataset = DatasetForTesting()
    concat_dataset_view_one = ConcatNormalFormDatasetView(dataset, dataset)
    concat_dataset_view_two = ConcatNormalFormDatasetView(dataset, dataset)
    concat_result = concat_dataset_view_one + concat_dataset_view_two
    assert concat_result[len(concat_dataset_view_one)]["id"] == "data_item-0"
    assert len(concat_result) == len(concat_dataset_view_one) + len(concat_dataset_view_two)
