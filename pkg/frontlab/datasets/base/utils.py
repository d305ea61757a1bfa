"""Functionality utilities for coefficient datasets.

Houses small helpers shared by the dataset classes and their display functions.
"""

from typing import Any, Callable, Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple, Union


def batch_enumerate(items: Sequence, batch_size: int = 1) -> Iterable[Tuple[slice, list]]:
    """Enumerates a sequence in batches.

    The last batch holds `len(items) % batch_size` items when the length is not a
    multiple of the batch size.

    Args:
        items (Sequence): The sequence to split into batches.
        batch_size (:obj:`int`, optional): The size of each batch, except the last.

    Yields:
        Tuple[slice, list]: The slice of the batch within `items` and the batch.
    """
    assert batch_size > 0, f"Batch size must be positive, got {batch_size}"
    length = len(items)
    for start in range(0, length, batch_size):
        stop = min(start + batch_size, length)
        yield (slice(start, stop), items[start:stop])


def map_functions(obj: Any, function_list: Iterable[Callable]) -> Any:
    """Applies functions one after the other, in the order given."""
    value = obj
    for function in function_list:
        value = function(value)
    return value


def get_unique(values: Iterable[Hashable], ordered: bool = True) -> list:
    """Drops repeated elements.

    Args:
        values (Iterable[Hashable]): The elements.
        ordered (:obj:`bool`, optional): Sort the result when `True`, otherwise keep
            the order of first appearance.

    Returns:
        list: The unique elements.
    """
    if ordered:
        return sorted(set(values))
    return list(dict.fromkeys(values))


def get_nested_data_types(obj: Any) -> Union[dict, list, type]:
    """Types of a nested structure of sequences and mappings, keeping its shape."""
    if isinstance(obj, Sequence) and not isinstance(obj, str):
        return [get_nested_data_types(element) for element in obj]
    elif isinstance(obj, Mapping):
        return {key: get_nested_data_types(value) for key, value in obj.items()}
    return type(obj)


def count_values(targets: Iterable[Mapping], keys: Sequence[str]) -> Dict[str, Dict[str, int]]:
    """Counts the string valued entries of target dictionaries.

    Args:
        targets (Iterable[Mapping]): Target dictionaries of a dataset.
        keys (Sequence[str]): The keys to count, missing keys are ignored.

    Returns:
        Dict[str, Dict[str, int]]: For every key, the number of times each value
            occurs, with values sorted.
    """
    counts = {key: {} for key in keys}
    for target in targets:
        for key in keys:
            if key not in target:
                continue
            value = str(target[key])
            counts[key][value] = counts[key].get(value, 0) + 1
    return {key: dict(sorted(values.items())) for key, values in counts.items() if values}


def flatten_coefficients(data: Any) -> List[Tuple[str, Any]]:
    """Named columns of a data element, expanding dictionaries and `as_dict` objects."""
    if hasattr(data, "as_dict"):
        data = data.as_dict()
    if isinstance(data, Mapping):
        return list(data.items())
    if isinstance(data, Sequence) and not isinstance(data, str):
        return [(f"feature_{i}", value) for i, value in enumerate(data)]
    return [("data", data)]
