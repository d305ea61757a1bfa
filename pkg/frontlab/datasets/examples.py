"""Concrete normal form collections and the bundled example surfaces.

Attributes:
    EXAMPLE_SURFACES: Names of the surface files shipped with the package.
    DEFAULT_FIXED: Value of every coefficient a sweep leaves unspecified.
"""

from typing import Dict, List, Mapping, Sequence, Tuple, Union
import itertools
import os

import torch

from frontlab import __location__
from frontlab.datasets.base.dataset import NormalFormDataset, NormalFormItem
from frontlab.errors import RangeError
from frontlab.geometry.surface import LEADING_COEFFICIENTS, NormalFormCoeffs, PolySurface, load_surface

EXAMPLE_SURFACES = ("swallowtail_edge", "flat_edge")
DEFAULT_FIXED = {"a20": 0.0, "a30": 0.0, "b20": 0.0, "b30": 0.0, "b12": 0.0, "b03": 1.0}

Range = Tuple[float, float, int]


def example_surface_path(name: str) -> str:
    if name not in EXAMPLE_SURFACES:
        raise ValueError(f"Unknown example surface '{name}', expected one of {EXAMPLE_SURFACES}")
    return os.path.join(__location__, "surfaces", f"{name}.surf")


def load_example_surface(name: str) -> PolySurface:
    """Loads one of the bundled surfaces, `"swallowtail_edge"` or `"flat_edge"`."""
    return load_surface(example_surface_path(name))


def _parse_float(token: str, entry: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise RangeError(f"Invalid number '{token}' in range '{entry}'") from None


def parse_ranges(text: str) -> Dict[str, Range]:
    """Parses the coefficient ranges of a sweep.

    The text is a comma separated list of `name=value` for a fixed
    coefficient or `name=min:max:steps` for a range, for example
    `"b30=-1:1:21,b12=-1:1:21,b20=1,b03=1"`.

    Returns:
        Dict[str, Range]: `(min, max, steps)` per named coefficient, a fixed value
            as a single step range.

    Raises:
        RangeError: On unknown names, repeated names, malformed entries, empty
            ranges (min > max) or a step count below one.
    """
    ranges = {}
    for entry in text.split(","):
        entry = entry.strip()
        if not entry:
            continue
        if "=" not in entry:
            raise RangeError(f"Expected name=value or name=min:max:steps, got '{entry}'")
        name, value = (part.strip() for part in entry.split("=", 1))
        if name not in LEADING_COEFFICIENTS:
            raise RangeError(f"Unknown coefficient '{name}', expected one of {LEADING_COEFFICIENTS}")
        if name in ranges:
            raise RangeError(f"Coefficient '{name}' given twice")
        parts = value.split(":")
        if len(parts) == 1:
            number = _parse_float(parts[0], entry)
            ranges[name] = (number, number, 1)
        elif len(parts) == 3:
            low, high = _parse_float(parts[0], entry), _parse_float(parts[1], entry)
            try:
                steps = int(parts[2])
            except ValueError:
                raise RangeError(f"Invalid step count '{parts[2]}' in '{entry}'") from None
            ranges[name] = (low, high, steps)
        else:
            raise RangeError(f"Expected name=value or name=min:max:steps, got '{entry}'")
    return ranges


def _range_values(name: str, value: Union[float, Sequence]) -> List[float]:
    if isinstance(value, (int, float)):
        return [float(value)]
    low, high, steps = value
    if low > high:
        raise RangeError(f"Empty range for {name}: min {low} > max {high}")
    if steps < 1:
        raise RangeError(f"Range for {name} needs at least one step, got {steps}")
    if steps == 1:
        if low != high:
            raise RangeError(f"A single step range for {name} needs min == max")
        return [float(low)]
    return torch.linspace(low, high, steps, dtype=torch.float64).tolist()


class CoefficientGrid(NormalFormDataset):
    """A lexicographic sweep over normal form coefficients.

    Every coefficient takes a fixed value or `steps` equally spaced values in
    `[min, max]`. Items run through the grid in lexicographic order of
    (a20, a30, b20, b30, b12, b03), the last coefficient varying fastest.
    Coefficients which are not given keep :data:`DEFAULT_FIXED`.
    """

    def __init__(self, ranges: Union[str, Mapping[str, Union[float, Range]]], label: bool = True) -> None:
        """Creates the sweep.

        Args:
            ranges (Union[str, Mapping[str, Union[float, Range]]]): Ranges text
                for :func:`parse_ranges`, or a mapping from coefficient name to a
                fixed value or a `(min, max, steps)` range.
            label (:obj:`bool`, optional): Whether to label the items.

        Raises:
            RangeError: On a malformed or empty range.
            ConstraintError: If a grid point has b20 < 0 or b03 = 0.
        """
        if isinstance(ranges, str):
            ranges = parse_ranges(ranges)
        unknown = set(ranges) - set(LEADING_COEFFICIENTS)
        if unknown:
            raise RangeError(f"Unknown coefficients {sorted(unknown)}")
        self.axes = [
            _range_values(name, ranges.get(name, DEFAULT_FIXED[name])) for name in LEADING_COEFFICIENTS
        ]
        super().__init__(label=label)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(values) for values in self.axes)

    def prepare_data(self) -> List[NormalFormItem]:
        return [
            NormalFormItem(NormalFormCoeffs(*values), id=f"grid-{index}")
            for index, values in enumerate(itertools.product(*self.axes))
        ]


class RandomNormalForms(NormalFormDataset):
    """Seeded random draws of normal form coefficients.

    Leading coefficients are uniform in [-2, 2] with b20 >= 0 and
    |b03| >= `min_abs_b03`. With `tails` every draw also carries a random tail of
    total degree at most five, the constants and linear terms of h1 to h4 and of h5.

    Families:
        free: No further constraint.
        ridge: b30 = -4 b12^3 / b03^2, so the origin is a ridge point.
        flat: b20 = 0, the origin is a point of vanishing curvature.
    """

    FAMILIES = ("free", "ridge", "flat")

    def __init__(
        self,
        n: int = 100,
        seed: int = 0,
        family: str = "free",
        min_abs_b03: float = 0.2,
        min_b20: float = 0.0,
        tails: bool = True,
        label: bool = True,
    ) -> None:
        """Draws the coefficients.

        Args:
            n (:obj:`int`, optional): Number of draws.
            seed (:obj:`int`, optional): Seed of the torch generator.
            family (:obj:`str`, optional): One of :attr:`FAMILIES`.
            min_abs_b03 (:obj:`float`, optional): Lower bound of |b03|.
            min_b20 (:obj:`float`, optional): Lower bound of b20, ignored for "flat".
            tails (:obj:`bool`, optional): Whether to draw tail coefficients.
            label (:obj:`bool`, optional): Whether to label the items.
        """
        assert family in self.FAMILIES, f"Unknown family {family}, expected one of {self.FAMILIES}"
        assert 0 < min_abs_b03 <= 2, f"min_abs_b03 must lie in (0, 2], got {min_abs_b03}"
        assert 0 <= min_b20 <= 2, f"min_b20 must lie in [0, 2], got {min_b20}"
        self.n = n
        self.seed = seed
        self.family = family
        self.min_abs_b03 = min_abs_b03
        self.min_b20 = min_b20
        self.tails = tails
        super().__init__(label=label)

    def _uniform(self, generator: torch.Generator, low: float, high: float) -> float:
        return low + (high - low) * torch.rand(1, generator=generator, dtype=torch.float64).item()

    def _draw(self, generator: torch.Generator) -> NormalFormCoeffs:
        a20, a30, b30, b12 = (self._uniform(generator, -2.0, 2.0) for _ in range(4))
        b20 = 0.0 if self.family == "flat" else self._uniform(generator, self.min_b20, 2.0)
        b03 = self._uniform(generator, self.min_abs_b03, 2.0)
        if self._uniform(generator, 0.0, 1.0) < 0.5:
            b03 = -b03
        if self.family == "ridge":
            b30 = -4 * b12**3 / b03**2

        tails = {}
        if self.tails:
            for name in ("h1", "h2", "h3", "h4"):
                tails[name] = [(i, self._uniform(generator, -2.0, 2.0)) for i in range(2)]
            tails["h5"] = [
                (i, j, self._uniform(generator, -2.0, 2.0)) for i, j in ((0, 0), (1, 0), (0, 1))
            ]
        return NormalFormCoeffs(a20, a30, b20, b30, b12, b03, **tails)

    def prepare_data(self) -> List[NormalFormItem]:
        generator = torch.Generator().manual_seed(self.seed)
        return [
            NormalFormItem(self._draw(generator), id=f"{self.family}-{self.seed}-{index}")
            for index in range(self.n)
        ]
