"""Display utilities for coefficient datasets.

Attributes:
    TAB_SIZE: Length of the tab for dataset display functions.
    TAB: A string of `TAB_SIZE` space characters.
"""

from typing import Any, List, Mapping, Sequence, Union

import textwrap

from frontlab.datasets.base.utils import flatten_coefficients

TAB_SIZE = 4
TAB = " " * TAB_SIZE


def truncate_with_elipse(string: str, max_width: int) -> str:
    """Truncates a string, ending it with an elipse when something was cut."""
    if len(string) > max_width:
        string = string[: max(0, max_width - 3)] + "..."
    return string


def format_data_element(element: Any) -> str:
    """Formats a single value for console display.

    Floats keep six significant digits, so the coefficients of a sweep stay
    readable without hiding small ridge expressions.
    """
    if isinstance(element, str):
        return element.strip()
    elif isinstance(element, bool) or element is None:
        return str(element)
    elif isinstance(element, float):
        return f"{element:.6g}"
    elif isinstance(element, type):
        return element.__name__
    return str(element)


def format_docstring(docstring: str, display_width: int, indent: bool = False) -> str:
    """Wraps a docstring to a display width, optionally indenting every line.

    Args:
        docstring (str): The docstring to format.
        display_width (int): Width to wrap the docstring.
        indent (:obj:`bool`, optional): Whether to indent the docstring.

    Returns:
        str: Formatted docstring.
    """
    if docstring is None:
        docstring = "(No Description)"
    prefix = TAB if indent else ""
    width = display_width - len(prefix)
    lines = []
    for line in textwrap.dedent(docstring).strip().split("\n"):
        wrapped = textwrap.wrap(line.strip(), width=width) or [""]
        lines += [prefix + part for part in wrapped]
    return "\n".join(lines)


def _format_statistics(statistics: Union[Mapping, Sequence], display_width: int) -> List[str]:
    if isinstance(statistics, Mapping):
        lines = []
        for key, value in statistics.items():
            nested = isinstance(value, Mapping) or (
                isinstance(value, Sequence)
                and not isinstance(value, str)
                and len(value) > 0
                and isinstance(value[0], Mapping)
            )
            if nested:
                lines.append(f"{key}:")
                lines += [
                    TAB + line for line in _format_statistics(value, display_width - TAB_SIZE)
                ]
            elif isinstance(value, Sequence) and not isinstance(value, str):
                value = [format_data_element(element) for element in value]
                lines += textwrap.wrap(f"{key}: {value}", width=display_width)
            else:
                lines += textwrap.wrap(
                    f"{key}: {format_data_element(value)}", width=display_width
                )
        return lines

    lines = []
    for item in statistics:
        item_lines = _format_statistics(item, display_width - TAB_SIZE) or [""]
        lines.append("-" + TAB[1:] + item_lines[0])
        lines += [TAB + line for line in item_lines[1:]]
    return lines


def format_statistics(statistics: dict, display_width: int, indent: bool = False) -> str:
    """Formats dataset statistics in a pseudo-yaml layout.

    Nested dictionaries and lists are expanded recursively, single values stay on
    the line of their key. Lines longer than the display width are wrapped.

    Args:
        statistics (dict): The statistics to format.
        display_width (int): The width at which wrapping starts.
        indent (:obj:`bool`, optional): Whether to indent the whole block.

    Returns:
        str: The formatted statistics.
    """
    prefix = TAB if indent else ""
    lines = _format_statistics(statistics, display_width - len(prefix))
    return "\n".join(prefix + line for line in lines)


def flatten_example(example: dict) -> list:
    """The id, data columns and target columns of an example as one flat row."""
    row = [example["id"]]
    row += [value for _, value in flatten_coefficients(example["data"])]
    target = example["target"]
    if isinstance(target, Mapping):
        row += list(target.values())
    elif target is not None:
        row.append(target)
    return row


def get_flat_column_names(example: dict) -> List[str]:
    """Column names matching :func:`flatten_example`."""
    names = ["id"]
    names += [name for name, _ in flatten_coefficients(example["data"])]
    target = example["target"]
    if isinstance(target, Mapping):
        names += list(target.keys())
    elif target is not None:
        names.append("target")
    return names


def format_examples_tabular(examples: List[dict], table_width: int, indent: bool = False) -> str:
    """Formats examples as a table with equal width columns.

    Dictionary valued data and targets are expanded into columns. Values which do not
    fit their column are truncated with an elipse.

    Args:
        examples (List[dict]): The examples to format.
        table_width (int): Desired width of the table in characters.
        indent (:obj:`bool`, optional): Whether to indent the whole table.

    Returns:
        str: The formatted table, empty when there are no examples.
    """
    if not examples:
        return ""
    prefix = TAB if indent else ""
    column_names = get_flat_column_names(examples[0])
    rows = [flatten_example(example) for example in examples]
    separator = " "
    column_width = max(
        4, (table_width - len(prefix) - len(separator) * len(column_names)) // len(column_names)
    )

    def format_row(values) -> str:
        cells = [
            f"{truncate_with_elipse(format_data_element(value), column_width):<{column_width}}"
            for value in values
        ]
        return prefix + separator.join(cells)

    lines = [format_row(column_names), prefix + separator.join(["-" * column_width] * len(column_names))]
    lines += [format_row(row) for row in rows]
    return "\n".join(lines)
