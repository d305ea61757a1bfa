"""Base dataset classes for normal form coefficient collections.

Houses NormalFormDataset and the associated classes NormalFormDatasetView and
ConcatNormalFormDatasetView.
"""

from typing import Any, Callable, Hashable, Iterator, List, Sequence, Tuple
import logging

from frontlab.datasets.base.functional import FunctionalDataset
from frontlab.datasets.base.utils import batch_enumerate, get_unique, map_functions
from frontlab.geometry.surface import NormalFormCoeffs


class NormalFormDataset(FunctionalDataset):
    """Abstract class for a collection of normal form coefficients.

    Extends :class:`FunctionalDataset` and provides all of its functional API:
    slicing, `where`, `transform`, `map`, concatenation with `+`, statistics and
    summaries.

    Only :meth:`prepare_data` has to be implemented. It returns the items of the
    collection. When `label` is set, :meth:`setup` fills every missing target with
    the closed form predicates of the coefficients, see
    :func:`frontlab.datasets.labels.label_normal_form`.
    """

    def __init__(self, label: bool = True) -> None:
        """Creates the collection.

        Args:
            label (:obj:`bool`, optional): Whether to compute targets during setup.
        """
        super().__init__()
        self.label = label
        self.data = self.prepare_data()
        logging.info(f"Prepared {type(self).__name__} with {len(self.data)} items.")
        self.setup()
        logging.info(f"Setup {type(self).__name__}.")

    def prepare_data(self) -> List["NormalFormItem"]:
        """Builds the items of the collection.

        Returns:
            List[NormalFormItem]: One item per coefficient set.
        """
        raise NotImplementedError

    def setup(self) -> None:
        """Labels items without a target, when labelling is enabled."""
        if not self.label:
            return
        from frontlab.datasets.labels import label_normal_form

        for item in self.data:
            if item.target is None:
                item.target = label_normal_form(item.data)

    # Mutates the items in place, views of this dataset see the new values.
    def map(
        self,
        function: Callable,
        targets: bool = False,
        batch_size: int = None,
    ) -> "NormalFormDataset":
        """Maps a function over the coefficients or targets of every item.

        Args:
            function (Callable): The function to map. With a batch size it receives
                and returns lists.
            targets (:obj:`bool`, optional): Map over targets instead of coefficients.
            batch_size (:obj:`int`, optional): Batch size for batched functions.

        Returns:
            NormalFormDataset: `self`.

        Raises:
            AssertionError: If a batched function does not return a list of the same
                length as its input.
        """
        assert hasattr(
            function, "__call__"
        ), f"Cannot map a value of type {type(function)} over a dataset, `function` must be callable."
        attribute = "target" if targets else "data"

        if batch_size is None:
            for item in self.data:
                setattr(item, attribute, function(getattr(item, attribute)))
            return self

        for batch_slice, batch in batch_enumerate(self.data, batch_size):
            mapped = function([getattr(item, attribute) for item in batch])
            assert isinstance(mapped, Sequence) and not isinstance(
                mapped, str
            ), f"Map function {function.__name__} does not return a sequence over batch"
            assert len(mapped) == len(
                batch
            ), f"Map function {function.__name__} does not return batch of same length as input"
            for item, value in zip(self.data[batch_slice], mapped):
                setattr(item, attribute, value)
        return self

    def __len__(self) -> int:
        return len(self.data)

    def index(self, index: int) -> tuple:
        """Gets the (id, data, target) tuple at an index, applying transforms."""
        item = self.data[index]
        id, data, target = item.id, item.data, item.target
        if id is None:
            id = f"{type(self).__name__}-{index}"
        if self.has_data_transforms:
            data = map_functions(data, self.data_transforms)
        if self.has_target_transforms:
            target = map_functions(target, self.target_transforms)
        return (id, data, target)


class NormalFormDatasetView(FunctionalDataset):
    """Noncopy subset of a dataset.

    Shares the items of the underlying dataset and provides the same functional
    API, except :meth:`map`.
    """

    def __init__(
        self, dataset: FunctionalDataset, view_indices: List[int], sorted: bool = True
    ) -> None:
        """Creates a view of a dataset.

        Args:
            dataset (FunctionalDataset): The dataset to take a view of.
            view_indices (List[int]): Indices of the items to include, repeats dropped.
            sorted (:obj:`bool`, optional): Whether to sort the indices.
        """
        super().__init__()
        self.dataset = dataset
        self.data_indices = get_unique(view_indices, ordered=sorted)

    def map(self, function: Callable, targets: bool = False, batch_size: int = None):
        raise AttributeError("Cannot map over a dataset view!")

    def __len__(self) -> int:
        return len(self.data_indices)

    def index(self, index: int) -> tuple:
        id, data, target = self.dataset.index(self.data_indices[index])
        if self.has_data_transforms:
            data = map_functions(data, self.data_transforms)
        if self.has_target_transforms:
            target = map_functions(target, self.target_transforms)
        return (id, data, target)


class ConcatNormalFormDatasetView(FunctionalDataset):
    """Noncopy concatenation of two datasets.

    Indices below the length of the first dataset read from it, the others from the
    second dataset.
    """

    def __init__(self, dataset_one: FunctionalDataset, dataset_two: FunctionalDataset) -> None:
        assert isinstance(dataset_one, FunctionalDataset) and isinstance(
            dataset_two, FunctionalDataset
        ), f"Cannot concatenate {type(dataset_one)} and {type(dataset_two)}!"
        super().__init__()
        self.dataset_one = dataset_one
        self.dataset_two = dataset_two
        self.transition_point = len(dataset_one)

    def map(self, function: Callable, targets: bool = False, batch_size: int = None):
        raise AttributeError("Cannot map over concatenated datasets!")

    def __len__(self) -> int:
        return len(self.dataset_one) + len(self.dataset_two)

    def index(self, index: int) -> tuple:
        if index < self.transition_point:
            id, data, target = self.dataset_one.index(index)
        else:
            id, data, target = self.dataset_two.index(index - self.transition_point)
        if self.has_data_transforms:
            data = map_functions(data, self.data_transforms)
        if self.has_target_transforms:
            target = map_functions(target, self.target_transforms)
        return (id, data, target)


class NormalFormItem:
    """A single coefficient set of a dataset.

    Behaves like a named tuple with the slots `id`, `data` and `target`.

    Attributes:
        id (:obj:`Hashable`, optional): A unique id for the item.
        data (NormalFormCoeffs): The normal form coefficients.
        target (:obj:`dict`, optional): Predicates computed from the coefficients.
    """

    __slots__ = ("id", "data", "target")

    def __init__(self, data: NormalFormCoeffs, id: Hashable = None, target: Any = None) -> None:
        self.data = data
        self.id = id
        self.target = target

    def __getitem__(self, index: int):
        if index == 0:
            return self.id
        elif index == 1:
            return self.data
        elif index == 2:
            return self.target
        raise IndexError(f"Invalid index {index} for NormalFormItem")

    def __iter__(self) -> Iterator[Tuple[Hashable, Any, Any]]:
        """Supports unpacking, `id, data, target = item`."""
        return iter((self.id, self.data, self.target))
