"""Polynomial surfaces, the cuspidal edge normal form and the surface file format.

A surface definition file is UTF-8 and line based::

    # comment
    X i j c            add c u^i v^j to the first component (also Y, Z)
    C c1 c2 c3         translation vector used by the dual surface
    NF a20 a30 b20 b30 b12 b03
    H1 i c             add c u^i to h1 (also H2, H3, H4)
    H5 i j c           add c u^i v^j to h5
    DOMAIN umin umax vmin vmax

Coefficients are decimals or `p/q` rationals. `NF` excludes X/Y/Z lines and the
`H` lines require `NF`.
"""

from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple
from fractions import Fraction
import logging

import torch

from frontlab.config import PROBE_GRID_SHAPE, DEFAULT_BOX, Tolerances, get_tolerances
from frontlab.errors import (
    ConstraintError,
    NotDivisibleByV,
    NotInNormalForm,
    ParseError,
)

AXES = ("X", "Y", "Z")
LEADING_COEFFICIENTS = ("a20", "a30", "b20", "b30", "b12", "b03")
TAIL_NAMES = ("h1", "h2", "h3", "h4", "h5")


class Polynomial:
    """Sparse polynomial in (u, v) with float coefficients.

    Duplicate monomials are summed and exact zeros dropped, so two polynomials with
    the same terms compare equal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[int, int, float]] = ()) -> None:
        merged: Dict[Tuple[int, int], float] = {}
        for i, j, c in terms:
            if int(i) != i or int(j) != j or i < 0 or j < 0:
                raise ValueError(f"Exponents must be non-negative integers, got ({i}, {j})")
            key = (int(i), int(j))
            merged[key] = merged.get(key, 0.0) + float(c)
        self.terms = {key: c for key, c in sorted(merged.items()) if c != 0.0}

    def __iter__(self) -> Iterator[Tuple[int, int, float]]:
        for (i, j), c in self.terms.items():
            yield (i, j, c)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial([*self, *other])

    def coefficient(self, i: int, j: int) -> float:
        return self.terms.get((i, j), 0.0)

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=0)

    def du(self) -> "Polynomial":
        return Polynomial((i - 1, j, i * c) for i, j, c in self if i > 0)

    def dv(self) -> "Polynomial":
        return Polynomial((i, j - 1, j * c) for i, j, c in self if j > 0)

    def divide_by_v(self) -> "Polynomial":
        """Exact quotient by v.

        Raises:
            NotDivisibleByV: If some monomial carries no factor v.
        """
        offending = [(i, j, c) for i, j, c in self if j == 0]
        if offending:
            raise NotDivisibleByV(
                f"Polynomial is not divisible by v, offending terms: {_format_terms(offending)}"
            )
        return Polynomial((i, j - 1, c) for i, j, c in self)

    def without_constant(self) -> "Polynomial":
        return Polynomial((i, j, c) for i, j, c in self if (i, j) != (0, 0))

    def evaluate(self, u: torch.Tensor, v: torch.Tensor) -> torch.Tensor:
        """Evaluates the polynomial on broadcastable float64 tensors."""
        u = torch.as_tensor(u, dtype=torch.float64)
        v = torch.as_tensor(v, dtype=torch.float64)
        result = torch.zeros(torch.broadcast_shapes(u.shape, v.shape), dtype=torch.float64)
        for i, j, c in self:
            result = result + c * u**i * v**j
        return result

    def __call__(self, u: float, v: float) -> float:
        return sum(c * u**i * v**j for i, j, c in self)

    def __repr__(self) -> str:
        return f"Polynomial({_format_terms(list(self)) or '0'})"


def _format_terms(terms: Sequence[Tuple[int, int, float]]) -> str:
    return " + ".join(f"{c:g}*u^{i}*v^{j}" for i, j, c in terms)


class PolySurface:
    """A polynomial map from the (u, v)-plane to 3-space.

    Attributes:
        components (Tuple[Polynomial, Polynomial, Polynomial]): The X, Y, Z components.
        c_vec (:obj:`Tuple[float, float, float]`, optional): Translation vector used by
            the dual surface construction.
        domain (:obj:`Tuple[float, float, float, float]`, optional): Parameter box
            (umin, umax, vmin, vmax).
        name (:obj:`str`, optional): Display name, usually the source file.
    """

    __slots__ = ("components", "c_vec", "domain", "name")

    def __init__(
        self,
        x: Polynomial = None,
        y: Polynomial = None,
        z: Polynomial = None,
        c_vec: Sequence[float] = None,
        domain: Sequence[float] = None,
        name: str = None,
    ) -> None:
        self.components = tuple(
            component if component is not None else Polynomial() for component in (x, y, z)
        )
        self.c_vec = tuple(float(c) for c in c_vec) if c_vec is not None else None
        self.domain = tuple(float(d) for d in domain) if domain is not None else None
        self.name = name

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolySurface)
            and self.components == other.components
            and self.c_vec == other.c_vec
        )

    def non_adapted_terms(self) -> List[Tuple[str, int, int, float]]:
        """Monomials c u^i v that keep f_v from vanishing on the u-axis."""
        return [
            (axis, i, j, c)
            for axis, component in zip(AXES, self.components)
            for i, j, c in component
            if j == 1
        ]

    @property
    def adapted(self) -> bool:
        """Whether f_v is divisible by v, checked exactly on the coefficients."""
        return not self.non_adapted_terms()

    def du(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        return tuple(component.du() for component in self.components)

    def dv(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        return tuple(component.dv() for component in self.components)

    def psi(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        """The polynomial psi with f_v = v psi.

        Raises:
            NotDivisibleByV: If the surface is not in adapted coordinates.
        """
        terms = self.non_adapted_terms()
        if terms:
            listing = ", ".join(f"{axis}: {c:g}*u^{i}*v" for axis, i, _, c in terms)
            raise NotDivisibleByV(f"f_v does not vanish on the u-axis ({listing})")
        return tuple(component.dv().divide_by_v() for component in self.components)

    def evaluate(self, u: torch.Tensor, v: torch.Tensor) -> torch.Tensor:
        """Surface points, stacked along a trailing axis of size 3."""
        return torch.stack([component.evaluate(u, v) for component in self.components], -1)

    def constant(self) -> Tuple[float, float, float]:
        return tuple(component.coefficient(0, 0) for component in self.components)

    def centered(self) -> "PolySurface":
        """The same surface with its constant vector removed."""
        return PolySurface(
            *(component.without_constant() for component in self.components),
            c_vec=self.c_vec,
            domain=self.domain,
            name=self.name,
        )

    def box(self) -> Tuple[float, float, float, float]:
        return self.domain if self.domain is not None else DEFAULT_BOX

    def __repr__(self) -> str:
        return f"PolySurface(name={self.name!r}, adapted={self.adapted})"


class NormalFormCoeffs:
    """Coefficients of the cuspidal edge normal form.

    The normal form is f = (u, a20 u^2/2 + a30 u^3/6 + v^2/2 + u^4 h1(u),
    b20 u^2/2 + b30 u^3/6 + b12 u v^2/2 + b03 v^3/6 + u^4 h2(u) + u^2 v^2 h3(u)
    + u v^3 h4(u) + v^4 h5(u, v)).

    Attributes:
        a20, a30, b20, b30, b12, b03 (float): Leading coefficients.
        h1, h2, h3, h4 (Tuple[Tuple[int, float], ...]): Tail series in u as (i, c).
        h5 (Tuple[Tuple[int, int, float], ...]): Tail series in (u, v) as (i, j, c).
    """

    __slots__ = (*LEADING_COEFFICIENTS, *TAIL_NAMES)

    def __init__(
        self,
        a20: float,
        a30: float,
        b20: float,
        b30: float,
        b12: float,
        b03: float,
        h1: Iterable[Tuple[int, float]] = (),
        h2: Iterable[Tuple[int, float]] = (),
        h3: Iterable[Tuple[int, float]] = (),
        h4: Iterable[Tuple[int, float]] = (),
        h5: Iterable[Tuple[int, int, float]] = (),
    ) -> None:
        """Creates a set of normal form coefficients.

        Raises:
            ConstraintError: If b20 < 0 or b03 == 0.
        """
        if b20 < 0:
            raise ConstraintError(f"Normal form requires b20 >= 0, got {b20}")
        if b03 == 0:
            raise ConstraintError("Normal form requires b03 != 0")
        self.a20, self.a30 = float(a20), float(a30)
        self.b20, self.b30, self.b12, self.b03 = float(b20), float(b30), float(b12), float(b03)
        self.h1 = _merge_series(h1)
        self.h2 = _merge_series(h2)
        self.h3 = _merge_series(h3)
        self.h4 = _merge_series(h4)
        self.h5 = tuple((i, j, c) for i, j, c in Polynomial(h5))

    def __iter__(self) -> Iterator[float]:
        return iter(self.leading())

    def leading(self) -> Tuple[float, ...]:
        return tuple(getattr(self, name) for name in LEADING_COEFFICIENTS)

    def as_dict(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in LEADING_COEFFICIENTS}

    def tail_at_origin(self) -> Tuple[float, float, float, float]:
        """The values h2(0), h3(0), h4(0), h5(0, 0) consumed by the ridge criteria."""
        return (
            dict(self.h2).get(0, 0.0),
            dict(self.h3).get(0, 0.0),
            dict(self.h4).get(0, 0.0),
            sum(c for i, j, c in self.h5 if i == 0 and j == 0),
        )

    def replace(self, **changes) -> "NormalFormCoeffs":
        values = {name: getattr(self, name) for name in self.__slots__}
        values.update(changes)
        return NormalFormCoeffs(**values)

    def __eq__(self, other) -> bool:
        return isinstance(other, NormalFormCoeffs) and all(
            getattr(self, name) == getattr(other, name) for name in self.__slots__
        )

    def __repr__(self) -> str:
        leading = ", ".join(f"{name}={getattr(self, name):g}" for name in LEADING_COEFFICIENTS)
        return f"NormalFormCoeffs({leading})"


def _merge_series(series: Iterable[Tuple[int, float]]) -> Tuple[Tuple[int, float], ...]:
    return tuple((i, c) for i, _, c in Polynomial((i, 0, c) for i, c in series))


def from_normal_form(coeffs: NormalFormCoeffs, c_vec: Sequence[float] = None) -> PolySurface:
    """Expands the normal form into a polynomial surface in adapted coordinates.

    Args:
        coeffs (NormalFormCoeffs): The normal form coefficients.
        c_vec (:obj:`Sequence[float]`, optional): Translation vector attached to the
            surface for the dual construction. It is not added to the components.

    Returns:
        PolySurface: The expanded surface.
    """
    n = coeffs
    x = Polynomial([(1, 0, 1.0)])
    y = Polynomial(
        [(2, 0, n.a20 / 2), (3, 0, n.a30 / 6), (0, 2, 0.5)]
        + [(4 + i, 0, c) for i, c in n.h1]
    )
    z = Polynomial(
        [
            (2, 0, n.b20 / 2),
            (3, 0, n.b30 / 6),
            (1, 2, n.b12 / 2),
            (0, 3, n.b03 / 6),
        ]
        + [(4 + i, 0, c) for i, c in n.h2]
        + [(2 + i, 2, c) for i, c in n.h3]
        + [(1 + i, 3, c) for i, c in n.h4]
        + [(i, 4 + j, c) for i, j, c in n.h5]
    )
    return PolySurface(x, y, z, c_vec=c_vec, name="normal form")


def extract_normal_form(surface: PolySurface, tol: Tolerances = None) -> NormalFormCoeffs:
    """Reads the normal form coefficients off a surface already in normal form.

    Args:
        surface (PolySurface): An adapted surface whose monomials match the normal form.
        tol (:obj:`Tolerances`, optional): Thresholds, `nf` bounds forbidden terms.

    Returns:
        NormalFormCoeffs: The read-off coefficients.

    Raises:
        NotInNormalForm: Naming the first offending monomial.
        ConstraintError: If the read-off coefficients violate b20 >= 0 or b03 != 0.
    """
    tol = tol or get_tolerances()
    x, y, z = surface.components

    def forbid(axis: str, i: int, j: int, c: float, reason: str):
        if abs(c) > tol.nf:
            raise NotInNormalForm(f"{axis} term {c:g}*u^{i}*v^{j} is forbidden ({reason})")

    for i, j, c in x:
        if (i, j) == (1, 0):
            forbid("X", i, j, c - 1.0, "first component must be u")
        else:
            forbid("X", i, j, c, "first component must be u")
    if abs(x.coefficient(1, 0) - 1.0) > tol.nf:
        raise NotInNormalForm("X term u is missing, first component must be u")

    h1 = []
    for i, j, c in y:
        if (i, j) in ((2, 0), (3, 0)):
            continue
        elif (i, j) == (0, 2):
            forbid("Y", i, j, c - 0.5, "v^2 coefficient must be 1/2")
        elif j == 0 and i >= 4:
            h1.append((i - 4, c))
        else:
            forbid("Y", i, j, c, "not a normal form monomial")
    if abs(y.coefficient(0, 2) - 0.5) > tol.nf:
        raise NotInNormalForm("Y term v^2/2 is missing")

    h2, h3, h4, h5 = [], [], [], []
    for i, j, c in z:
        if (i, j) in ((2, 0), (3, 0), (1, 2), (0, 3)):
            continue
        elif j == 0 and i >= 4:
            h2.append((i - 4, c))
        elif j == 2 and i >= 2:
            h3.append((i - 2, c))
        elif j == 3 and i >= 1:
            h4.append((i - 1, c))
        elif j >= 4:
            h5.append((i, j - 4, c))
        else:
            forbid("Z", i, j, c, "not a normal form monomial")

    return NormalFormCoeffs(
        a20=2 * y.coefficient(2, 0),
        a30=6 * y.coefficient(3, 0),
        b20=2 * z.coefficient(2, 0),
        b30=6 * z.coefficient(3, 0),
        b12=2 * z.coefficient(1, 2),
        b03=6 * z.coefficient(0, 3),
        h1=h1,
        h2=h2,
        h3=h3,
        h4=h4,
        h5=h5,
    )


class AdaptedReport:
    """Outcome of :func:`validate_adapted`.

    Attributes:
        divisible (bool): f_v(u, 0) vanishes identically, checked on coefficients.
        rank_ok (bool): rank df = 2 at every sampled point off the u-axis.
        frame_ok (bool): f_u and psi are independent at every sampled u-axis point.
        sampled (bool): Always `True`, the rank conditions are checked by sampling.
        witnesses (List[str]): Human readable reasons for every failed check.
    """

    __slots__ = ("divisible", "rank_ok", "frame_ok", "sampled", "witnesses")

    def __init__(self, divisible: bool, rank_ok: bool, frame_ok: bool, witnesses: List[str]):
        self.divisible = divisible
        self.rank_ok = rank_ok
        self.frame_ok = frame_ok
        self.sampled = True
        self.witnesses = witnesses

    @property
    def passed(self) -> bool:
        return self.divisible and self.rank_ok and self.frame_ok

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "divisible": self.divisible,
            "rank_ok": self.rank_ok,
            "frame_ok": self.frame_ok,
            "sampled": self.sampled,
            "witnesses": list(self.witnesses),
        }


def validate_adapted(surface: PolySurface, grid=None, tol: Tolerances = None) -> AdaptedReport:
    """Checks that the u-axis is the singular curve with null direction d/dv.

    The divisibility of f_v by v is decided exactly on the coefficients. The rank
    conditions are sampled on a grid.

    Args:
        surface (PolySurface): The surface to check.
        grid (:obj:`Grid`, optional): Probe grid, defaults to a 21x21 grid over the
            surface domain.
        tol (:obj:`Tolerances`, optional): Thresholds, `frame` bounds the rank tests.

    Returns:
        AdaptedReport: The report, never raises for a failed check.
    """
    from frontlab.geometry.grid import Grid

    tol = tol or get_tolerances()
    if grid is None:
        grid = Grid(surface.box(), PROBE_GRID_SHAPE)
    witnesses = []

    terms = surface.non_adapted_terms()
    divisible = not terms
    for axis, i, _, c in terms:
        witnesses.append(f"f_v(u,0) != 0: {axis} contains {c:g}*u^{i}*v")

    u, v = grid.mesh()
    fu = torch.stack([p.evaluate(u, v) for p in surface.du()], -1)
    fv = torch.stack([p.evaluate(u, v) for p in surface.dv()], -1)
    area = torch.linalg.norm(torch.linalg.cross(fu, fv, dim=-1), dim=-1)
    off_axis = v.abs() > 1e-12
    failed = off_axis & (area <= tol.frame)
    rank_ok = not bool(failed.any())
    if not rank_ok:
        index = tuple(torch.nonzero(failed)[0].tolist())
        witnesses.append(
            f"rank df < 2 off the u-axis at (u, v) = ({float(u[index]):.4g}, {float(v[index]):.4g})"
        )

    frame_ok = divisible
    if divisible:
        axis_u = torch.as_tensor(grid.axes()[0])
        axis_v = torch.zeros_like(axis_u)
        fu_axis = torch.stack([p.evaluate(axis_u, axis_v) for p in surface.du()], -1)
        psi_axis = torch.stack([p.evaluate(axis_u, axis_v) for p in surface.psi()], -1)
        width = torch.linalg.norm(torch.linalg.cross(fu_axis, psi_axis, dim=-1), dim=-1)
        if bool((width <= tol.frame).any()):
            frame_ok = False
            index = int(torch.nonzero(width <= tol.frame)[0])
            witnesses.append(f"f_u and psi dependent at u = {float(axis_u[index]):.4g}")

    return AdaptedReport(divisible, rank_ok, frame_ok, witnesses)


def _parse_number(token: str, line_number: int) -> float:
    try:
        return float(Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"'{token}' is not a decimal or p/q rational", line_number)


def _parse_exponent(token: str, line_number: int) -> int:
    try:
        exponent = int(token)
    except ValueError:
        raise ParseError(f"'{token}' is not an integer exponent", line_number)
    if exponent < 0:
        raise ParseError(f"Exponent {exponent} is negative", line_number)
    return exponent


def _expect(tokens: List[str], count: int, line_number: int) -> None:
    if len(tokens) != count + 1:
        raise ParseError(
            f"'{tokens[0]}' takes {count} values, got {len(tokens) - 1}", line_number
        )


def parse_surface(text: str, name: str = None) -> PolySurface:
    """Parses a surface definition.

    Args:
        text (str): The file contents, see the module docstring for the grammar.
        name (:obj:`str`, optional): Display name for the resulting surface.

    Returns:
        PolySurface: The parsed surface.

    Raises:
        ParseError: On any grammar violation, with the offending line number.
        ConstraintError: If an `NF` line violates b20 >= 0 or b03 != 0.
    """
    terms = {axis: [] for axis in AXES}
    tails = {tail: [] for tail in TAIL_NAMES}
    normal_form = None
    c_vec = None
    domain = None
    first_tail_line = None

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        tokens = raw_line.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword = tokens[0]
        if keyword in AXES:
            _expect(tokens, 3, line_number)
            if normal_form is not None:
                raise ParseError("X/Y/Z lines cannot be combined with NF", line_number)
            terms[keyword].append(
                (
                    _parse_exponent(tokens[1], line_number),
                    _parse_exponent(tokens[2], line_number),
                    _parse_number(tokens[3], line_number),
                )
            )
        elif keyword == "NF":
            _expect(tokens, 6, line_number)
            if normal_form is not None:
                raise ParseError("NF given twice", line_number)
            if any(terms.values()):
                raise ParseError("NF cannot be combined with X/Y/Z lines", line_number)
            normal_form = [_parse_number(token, line_number) for token in tokens[1:]]
        elif keyword in ("H1", "H2", "H3", "H4"):
            _expect(tokens, 2, line_number)
            first_tail_line = first_tail_line or line_number
            tails[keyword.lower()].append(
                (_parse_exponent(tokens[1], line_number), _parse_number(tokens[2], line_number))
            )
        elif keyword == "H5":
            _expect(tokens, 3, line_number)
            first_tail_line = first_tail_line or line_number
            tails["h5"].append(
                (
                    _parse_exponent(tokens[1], line_number),
                    _parse_exponent(tokens[2], line_number),
                    _parse_number(tokens[3], line_number),
                )
            )
        elif keyword == "C":
            _expect(tokens, 3, line_number)
            if c_vec is not None:
                raise ParseError("C given twice", line_number)
            c_vec = [_parse_number(token, line_number) for token in tokens[1:]]
        elif keyword == "DOMAIN":
            _expect(tokens, 4, line_number)
            domain = [_parse_number(token, line_number) for token in tokens[1:]]
            if not (domain[0] < domain[1] and domain[2] < domain[3]):
                raise ParseError(f"Empty domain {domain}", line_number)
        else:
            raise ParseError(f"Unknown keyword '{keyword}'", line_number)

    if normal_form is None:
        if first_tail_line is not None:
            raise ParseError("H lines require an NF line", first_tail_line)
        return PolySurface(
            *(Polynomial(terms[axis]) for axis in AXES),
            c_vec=c_vec,
            domain=domain,
            name=name,
        )

    surface = from_normal_form(NormalFormCoeffs(*normal_form, **tails), c_vec=c_vec)
    surface.domain = tuple(domain) if domain is not None else None
    surface.name = name
    return surface


def load_surface(path: str) -> PolySurface:
    """Loads a surface definition file."""
    with open(path, encoding="utf-8") as surface_file:
        surface = parse_surface(surface_file.read(), name=path)
    logging.info(f"Loaded surface '{path}' (adapted: {surface.adapted})")
    return surface
