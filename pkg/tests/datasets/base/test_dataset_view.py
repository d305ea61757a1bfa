import pytest
from conftest import DatasetForTesting

from frontlab.datasets.base.dataset import ConcatNormalFormDatasetView, NormalFormDatasetView


def test_create_dataset_view():
    dataset = DatasetForTesting()
    dataset_view = NormalFormDatasetView(dataset, [1, 6, 2, 7, 3, 10])
    assert dataset_view[0]["id"] == "data_item-1"
    assert dataset_view[0]["data"].a20 == 1
    assert dataset_view[0]["target"] == True
    assert len(dataset_view) == 6


def test_create_dataset_view_unsorted():
    dataset = DatasetForTesting()
    dataset_view = NormalFormDatasetView(dataset, [6, 1, 6, 2], sorted=False)
    assert [item["id"] for item in dataset_view] == ["data_item-6", "data_item-1", "data_item-2"]


def test_create_dataset_view_duplicate_indices():
    dataset = DatasetForTesting()
    dataset_view = NormalFormDatasetView(dataset, [1, 6, 2, 7, 3, 10, 3, 6])
    with pytest.raises(IndexError):
        dataset_view[7]


def test_slice_dataset_view():
    dataset = DatasetForTesting()

    dataset_view = dataset[50:100:3]
    assert dataset_view[0]["id"] == "data_item-50"

    dataset_view = dataset_view[2:22:5]
    assert dataset_view[1]["id"] == "data_item-71"
    assert dataset_view[1]["data"].a20 == 71
    assert dataset_view[1]["target"] == False


def test_slice_dataset_view_with_list():
    dataset = DatasetForTesting()
    dataset_view = dataset[50:100:3][[2, 5, 7, 8, 11]]
    assert dataset_view[3]["id"] == "data_item-74"
    assert dataset_view[3]["target"] == False


def test_map_dataset_view():
    dataset = DatasetForTesting()
    with pytest.raises(AttributeError):
        dataset[50:100:3].map(lambda coeffs: coeffs)


def test_map_dataset_visible_in_view():
    dataset = DatasetForTesting()
    dataset_view = dataset[:10]
    dataset.map(lambda coeffs: coeffs.replace(b03=-1.0))
    assert dataset_view[3]["data"].b03 == -1.0


def test_transform_dataset_view():
    dataset = DatasetForTesting()
    dataset_view = dataset[:50]
    transformed_dataset = dataset_view.transform(lambda coeffs: coeffs.replace(a20=coeffs.a20 / 2))
    assert transformed_dataset[4]["data"].a20 == 2
    assert dataset[4]["data"].a20 == 4


def test_transform_stacks_with_dataset():
    dataset = DatasetForTesting()
    dataset.transform(lambda coeffs: coeffs.replace(a20=coeffs.a20 + 1))
    dataset_view = dataset[:10].transform(lambda coeffs: coeffs.replace(a20=coeffs.a20 * 2))
    assert dataset_view[3]["data"].a20 == 8


def test_filter_dataset_view():
    dataset = DatasetForTesting()
    selected = dataset[10:20].where(lambda coeffs: coeffs.a20 >= 15)
    assert [item["id"] for item in selected] == [f"data_item-{i}" for i in range(15, 20)]


def test_dataset_view_and_dataset():
    dataset = DatasetForTesting()
    dataset_view = dataset[60:]
    concat_result = dataset_view + dataset
    assert concat_result[len(dataset_view)]["id"] == "data_item-0"
    assert len(concat_result) == len(dataset_view) + len(dataset)


def test_dataset_view_and_dataset_view():
    dataset = DatasetForTesting()
    dataset_view_one = dataset[5:30]
    dataset_view_two = dataset[40:]
    concat_result = dataset_view_one + dataset_view_two
    assert concat_result[len(dataset_view_one)]["id"] == "data_item-40"
    assert concat_result[len(dataset_view_one)]["target"] == True
    assert len(concat_result) == len(dataset_view_one) + len(dataset_view_two)


def test_dataset_view_and_concat_dataset_view():
    dataset = DatasetForTesting()
    dataset_view = dataset[:40]
    concat_dataset_view = ConcatNormalFormDatasetView(dataset, dataset)
    concat_result = dataset_view + concat_dataset_view
    assert concat_result[len(dataset_view)]["id"] == "data_item-0"
    assert len(concat_result) == len(dataset_view) + len(concat_dataset_view)


def test_stats_dataset_view():
    stats = DatasetForTesting()[::2].stats()
    assert stats["length"] == 50
    assert stats["target_types"] is bool
