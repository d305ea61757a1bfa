"""Functional API shared by coefficient datasets and their views.

Implements slicing, filtering, transforms, concatenation and summaries for
:class:`NormalFormDataset` and the dataset-like views built on top of it.
"""

from typing import Callable, List, Union
import shutil

from torch.utils.data import Dataset

import frontlab.datasets.base.dataset as frontlab_datasets
from frontlab.datasets.base.display_utils import (
    format_docstring,
    format_examples_tabular,
    format_statistics,
)
from frontlab.datasets.base.utils import count_values, get_nested_data_types

VERDICT_KEYS = ("ridge", "d4", "parallel", "dual")


class FunctionalDataset(Dataset):
    """Abstract class for the functional dataset API.

    Implements the behavior shared by NormalFormDataset, NormalFormDatasetView and
    ConcatNormalFormDatasetView: sliceable indexing, filtering, transforms,
    concatenation and formatted display.
    """

    def __init__(self) -> None:
        self.data_transforms = []
        self.target_transforms = []
        self.has_data_transforms = False
        self.has_target_transforms = False

    def __len__(self):
        raise NotImplementedError

    def __getitem__(self, index: Union[int, slice, tuple, list]):
        """Indexes the dataset.

        An integer returns a single item as a dictionary. A slice, tuple or list of
        integers returns a view of the dataset with those indices.

        Args:
            index (Union[int, slice, tuple, list]): The portion of the dataset to select.

        Returns:
            Union[dict, NormalFormDatasetView]: Either a single item with an `"id"`,
                `"data"` and `"target"`, or a view of the selected indices.

        Raises:
            IndexError: If an integer index is out of range.
            TypeError: For any other kind of index.
        """
        if isinstance(index, int):
            if index < 0:
                index += len(self)
            if not 0 <= index < len(self):
                raise IndexError(f"Index {index} out of range for {len(self)} items")
            id, data, target = self.index(index)
            return {"id": id, "data": data, "target": target}
        elif isinstance(index, slice):
            return frontlab_datasets.NormalFormDatasetView(
                self, list(range(len(self))[index]), sorted=False
            )
        elif isinstance(index, (tuple, list)):
            return frontlab_datasets.NormalFormDatasetView(self, index)
        raise TypeError(f"Cannot index a dataset with {type(index).__name__}")

    def __iter__(self):
        """Iterates over the items, calling :meth:`index` directly."""
        for index in range(len(self)):
            id, data, target = self.index(index)
            yield {"id": id, "data": data, "target": target}

    def index(self, index: int) -> tuple:
        """Gets the (id, data, target) tuple at an index."""
        raise NotImplementedError

    def map(
        self,
        function: Callable,
        targets: bool = False,
        batch_size: int = None,
    ) -> "frontlab_datasets.NormalFormDataset":
        """Maps a function over the dataset"""
        raise NotImplementedError

    def where(
        self, filter_function: Callable, targets: bool = False
    ) -> "frontlab_datasets.NormalFormDatasetView":
        """Selects the items for which a condition holds.

        Args:
            filter_function (Callable): Returns `True` for items to keep.
            targets (:obj:`bool`, optional): Apply the condition to the targets
                instead of the coefficients.

        Returns:
            NormalFormDatasetView: A view holding the selected items.
        """
        attribute = "target" if targets else "data"
        selected = [
            index for index, item in enumerate(self) if filter_function(item[attribute])
        ]
        return frontlab_datasets.NormalFormDatasetView(self, selected)

    def transform(
        self, function: Union[Callable, List[Callable]], targets: bool = False
    ) -> "FunctionalDataset":
        """Adds transforms run each time an item is read.

        Modifies the dataset in place and returns `self`.

        Args:
            function (Union[Callable, List[Callable]]): The transform or transforms.
            targets (:obj:`bool`, optional): Whether the transforms apply to targets.

        Returns:
            FunctionalDataset: `self`.
        """
        if not isinstance(function, (tuple, list)):
            function = [function]
        if targets:
            self.target_transforms += function
            self.has_target_transforms = True
        else:
            self.data_transforms += function
            self.has_data_transforms = True
        return self

    def __add__(
        self, dataset: "FunctionalDataset"
    ) -> "frontlab_datasets.ConcatNormalFormDatasetView":
        """Concatenates two datasets into a view.

        Raises:
            AttributeError: If `dataset` is not a :class:`FunctionalDataset`.
        """
        if not isinstance(dataset, FunctionalDataset):
            raise AttributeError(f"Cannot add a {type(dataset)} to a dataset")
        return frontlab_datasets.ConcatNormalFormDatasetView(self, dataset)

    def stats(self) -> dict:
        """Length, data types and verdict counts of the dataset.

        Returns:
            dict: The statistics, `{"length": 0}` for an empty dataset.
        """
        if len(self) == 0:
            return {"length": 0}
        first = self[0]
        statistics = {
            "length": len(self),
            "data_types": get_nested_data_types(
                first["data"].as_dict() if hasattr(first["data"], "as_dict") else first["data"]
            ),
            "target_types": get_nested_data_types(first["target"]),
        }
        if isinstance(first["target"], dict):
            counts = count_values((item["target"] for item in self), VERDICT_KEYS)
            if counts:
                statistics["verdicts"] = counts
        return statistics

    def examples(self, num_examples: int = 5) -> List[dict]:
        """Up to `num_examples` items from the start of the dataset."""
        return [self[i] for i in range(min(len(self), num_examples))]

    def summary(self, output_width: int = None) -> str:
        """Prints and returns a formatted summary of the dataset.

        The summary holds the class docstring, the statistics and a table of the
        first few items.

        Args:
            output_width (:obj:`int`, optional): Width of the output. Defaults to 150
                or the terminal width, whichever is smaller.

        Returns:
            str: The printed summary.
        """
        if output_width is None:
            output_width = min(150, shutil.get_terminal_size().columns)
        text = "\n".join(
            [
                f"{type(self).__name__}:",
                format_docstring(type(self).__doc__, output_width, indent=True),
                "\nStats:",
                format_statistics(self.stats(), output_width, indent=True),
                "\nExamples:",
                format_examples_tabular(self.examples(), output_width, indent=True),
            ]
        )
        print(text)
        return text
