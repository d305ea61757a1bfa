import pytest
from conftest import DatasetForTesting

from frontlab.datasets.base.dataset import (
    ConcatNormalFormDatasetView,
    NormalFormDataset,
    NormalFormItem,
)
from frontlab.geometry.surface import NormalFormCoeffs


def square_a20(coeffs):
    return coeffs.replace(a20=(coeffs.a20**2 + 1) / 10)


def test_create_dataset():
    dataset = DatasetForTesting()
    assert dataset[0]["id"] == "data_item-0"
    assert dataset[0]["data"].a20 == 0
    assert dataset[0]["target"] == False
    assert len(dataset) == 100


def test_create_dataset_no_ids():
    class DatasetForTesting(NormalFormDataset):
        def prepare_data(self):
            return [NormalFormItem(NormalFormCoeffs(float(i), 0, 0, 0, 0, 1)) for i in range(10)]

    dataset = DatasetForTesting(label=False)
    assert dataset[0]["id"] == "DatasetForTesting-0"
    assert dataset[0]["target"] is None
    assert len(dataset) == 10


def test_setup_labels_missing_targets():
    class DatasetForTesting(NormalFormDataset):
        def prepare_data(self):
            return [
                NormalFormItem(NormalFormCoeffs(1, 2, 2, 0, 0, 2)),
                NormalFormItem(NormalFormCoeffs(0, 4, 0, 2, 2, 1), target="kept"),
            ]

    dataset = DatasetForTesting()
    assert dataset[0]["target"]["parallel"] == "Swallowtail"
    assert dataset[1]["target"] == "kept"


def test_prepare_data_is_abstract():
    with pytest.raises(NotImplementedError):
        NormalFormDataset()


def test_negative_and_out_of_range_index():
    dataset = DatasetForTesting()
    assert dataset[-1]["id"] == "data_item-99"
    with pytest.raises(IndexError):
        dataset[100]
    with pytest.raises(TypeError):
        dataset["a20"]


def test_slice_dataset():
    dataset = DatasetForTesting()

    dataset_view = dataset[50:]
    assert dataset_view[0]["id"] == "data_item-50"
    assert dataset_view[0]["data"].a20 == 50
    assert dataset_view[0]["target"] == False

    dataset_view = dataset[17:38]
    assert dataset_view[0]["id"] == "data_item-17"
    assert dataset_view[-1]["id"] == "data_item-37"
    assert dataset_view[-1]["target"] == True

    dataset_view = dataset[20:30:4]
    assert dataset_view[1]["id"] == "data_item-24"
    assert dataset_view[1]["data"].a20 == 24


def test_slice_dataset_with_list():
    dataset = DatasetForTesting()

    dataset_view = dataset[[2, 3, 6, 12, 26, 32]]
    assert dataset_view[2]["id"] == "data_item-6"

    # list indices are sorted
    dataset_view = dataset[[7, 3, 6, 55, 12, 26, 31, 2]]
    assert dataset_view[6]["id"] == "data_item-31"
    assert dataset_view[6]["target"] == True


def test_map_dataset():
    dataset = DatasetForTesting()
    mapped_dataset = dataset.map(square_a20)
    assert mapped_dataset is dataset
    assert mapped_dataset[4]["data"].a20 == pytest.approx(1.7)
    assert dataset.data[4].data.a20 == pytest.approx(1.7)


def test_map_dataset_batched():
    dataset = DatasetForTesting()
    dataset.map(lambda batch: [square_a20(coeffs) for coeffs in batch], batch_size=7)
    assert dataset[99]["data"].a20 == pytest.approx(980.2)


def test_map_dataset_batched_wrong_length():
    dataset = DatasetForTesting()
    with pytest.raises(AssertionError):
        dataset.map(lambda batch: batch[:1], batch_size=5)


def test_map_dataset_targets():
    dataset = DatasetForTesting()
    dataset.map(int, targets=True)
    assert dataset[4]["target"] == 1
    assert dataset[5]["target"] == 0


def test_transform_dataset():
    dataset = DatasetForTesting()
    transformed_dataset = dataset.transform(square_a20)
    assert transformed_dataset[4]["data"].a20 == pytest.approx(1.7)
    assert dataset.data[4].data.a20 == 4


def test_transform_dataset_targets():
    dataset = DatasetForTesting()
    dataset.transform([int, str], targets=True)
    assert dataset[1]["target"] == "1"


def test_filter_dataset():
    dataset = DatasetForTesting()
    selected = dataset.where(lambda target: target, targets=True)
    assert len(selected) == 33
    assert selected[0]["id"] == "data_item-1"
    small = dataset.where(lambda coeffs: coeffs.a20 < 10)
    assert len(small) == 10


def test_iter_dataset():
    dataset = DatasetForTesting()
    ids = [item["id"] for item in dataset]
    assert ids == [f"data_item-{i}" for i in range(100)]


def test_concat_dataset_and_dataset():
    dataset = DatasetForTesting()
    concat_result = dataset + dataset
    assert concat_result[len(dataset)]["id"] == "data_item-0"
    assert len(concat_result) == 2 * len(dataset)


def test_concat_dataset_and_dataset_view():
    dataset = DatasetForTesting()
    dataset_view = dataset[5:30]
    concat_result = dataset + dataset_view
    assert concat_result[len(dataset)]["id"] == "data_item-5"
    assert len(concat_result) == len(dataset) + len(dataset_view)


def test_concat_dataset_and_concat_dataset_view():
    dataset = DatasetForTesting()
    concat_dataset_view = ConcatNormalFormDatasetView(dataset, dataset)
    concat_result = dataset + concat_dataset_view
    assert concat_result[len(dataset)]["id"] == "data_item-0"
    assert len(concat_result) == len(dataset) + len(concat_dataset_view)


def test_concat_dataset_and_list():
    dataset = DatasetForTesting()
    with pytest.raises(AttributeError):
        dataset + [1, 2, 3]


def test_stats_dataset():
    stats = DatasetForTesting().stats()
    assert stats["length"] == 100
    assert stats["data_types"]["b03"] is float
    assert stats["target_types"] is bool
    assert "verdicts" not in stats


def test_stats_labelled_dataset():
    class DatasetForTesting(NormalFormDataset):
        def prepare_data(self):
            return [
                NormalFormItem(NormalFormCoeffs(1, 2, 2, 0, 0, 2)),
                NormalFormItem(NormalFormCoeffs(0, 4, 0, 2, 2, 1)),
            ]

    stats = DatasetForTesting().stats()
    assert stats["verdicts"]["dual"] == {"CuspidalEdge": 1, "Regular": 1}
    assert stats["verdicts"]["parallel"] == {"None": 1, "Swallowtail": 1}


def test_stats_empty_dataset():
    assert DatasetForTesting()[:0].stats() == {"length": 0}


def test_examples_dataset():
    dataset = DatasetForTesting()
    examples = dataset.examples(3)
    assert [example["id"] for example in examples] == [f"data_item-{i}" for i in range(3)]
    assert len(dataset[:2].examples()) == 2


def test_summary_dataset(capsys):
    text = DatasetForTesting().summary(output_width=120)
    assert text.startswith("DatasetForTesting:")
    assert "Stats:" in text
    assert "data_item-0" in text
    assert capsys.readouterr().out.strip() == text.strip()
