"""Truncated bivariate Taylor jets.

A :class:`Jet2` stores the normalized Taylor coefficients
c_ij = (1 / (i! j!)) d^(i+j) g / du^i dv^j of a scalar function g at a base point,
for every i + j <= order. Coefficients live in a dense triangular vector ordered by
total degree, so truncating a jet to a lower order is a prefix slice.

Arithmetic is closed: sums, products, quotients and square roots of order k jets at
one base are order k jets at that base. Mixed orders truncate to the smaller one.
"""

from typing import Iterable, Sequence, Tuple, Union
from functools import lru_cache
from math import comb, factorial, sqrt

import torch

from frontlab.config import get_tolerances
from frontlab.errors import DivisionNearZero, NotDivisibleByV, SqrtOfNonpositive

DTYPE = torch.float64

Point = Tuple[float, float]
Scalar = Union[int, float]


def num_coeffs(order: int) -> int:
    """Number of coefficients of an order `order` jet."""
    return (order + 1) * (order + 2) // 2


def coeff_index(i: int, j: int) -> int:
    """Position of c_ij in the dense triangular coefficient vector."""
    degree = i + j
    return degree * (degree + 1) // 2 + j


@lru_cache(maxsize=None)
def exponents(order: int) -> Tuple[Tuple[int, int], ...]:
    """Exponent pairs (i, j) in storage order."""
    return tuple((degree - j, j) for degree in range(order + 1) for j in range(degree + 1))


@lru_cache(maxsize=None)
def _product_table(order: int) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    left, right, out = [], [], []
    terms = exponents(order)
    for a, (i1, j1) in enumerate(terms):
        for b, (i2, j2) in enumerate(terms):
            if i1 + j1 + i2 + j2 <= order:
                left.append(a)
                right.append(b)
                out.append(coeff_index(i1 + i2, j1 + j2))
    return (
        torch.tensor(left, dtype=torch.long),
        torch.tensor(right, dtype=torch.long),
        torch.tensor(out, dtype=torch.long),
    )


@lru_cache(maxsize=None)
def _shift_table(order: int, axis: int) -> Tuple[torch.Tensor, torch.Tensor]:
    # Maps an order `order` jet onto its order - 1 derivative along `axis`.
    source, factor = [], []
    for i, j in exponents(order - 1):
        if axis == 0:
            source.append(coeff_index(i + 1, j))
            factor.append(float(i + 1))
        else:
            source.append(coeff_index(i, j + 1))
            factor.append(float(j + 1))
    return torch.tensor(source, dtype=torch.long), torch.tensor(factor, dtype=DTYPE)


def _order_from_length(length: int) -> int:
    order = 0
    while num_coeffs(order) < length:
        order += 1
    if num_coeffs(order) != length:
        raise ValueError(f"{length} coefficients do not form a triangular jet")
    return order


class Jet2:
    """Truncated Taylor expansion of a scalar function of (u, v).

    Attributes:
        base (Tuple[float, float]): Base point (u0, v0) of the expansion.
        order (int): Maximal total degree kept.
        coeffs (torch.Tensor): The (order + 1)(order + 2) / 2 normalized coefficients.
    """

    __slots__ = ("base", "order", "coeffs")

    def __init__(self, coeffs, base: Point = (0.0, 0.0), order: int = None) -> None:
        """Creates a jet from its coefficient vector.

        Args:
            coeffs: Coefficients in storage order, see :func:`exponents`.
            base (:obj:`Tuple[float, float]`, optional): Base point of the expansion.
            order (:obj:`int`, optional): The jet order, inferred when omitted.
        """
        coeffs = torch.as_tensor(coeffs, dtype=DTYPE)
        if order is None:
            order = _order_from_length(coeffs.shape[0])
        assert coeffs.shape[0] == num_coeffs(
            order
        ), f"Order {order} jet needs {num_coeffs(order)} coefficients, got {coeffs.shape[0]}"
        self.coeffs = coeffs
        self.base = (float(base[0]), float(base[1]))
        self.order = order

    @classmethod
    def constant(cls, value: Scalar, base: Point, order: int) -> "Jet2":
        coeffs = torch.zeros(num_coeffs(order), dtype=DTYPE)
        coeffs[0] = float(value)
        return cls(coeffs, base, order)

    @classmethod
    def variable(cls, name: str, base: Point, order: int) -> "Jet2":
        """The coordinate function `u` or `v` expanded at `base`."""
        if name not in ("u", "v"):
            raise ValueError(f"Unknown coordinate '{name}', expected 'u' or 'v'")
        jet = cls.constant(base[0] if name == "u" else base[1], base, order)
        if order >= 1:
            jet.coeffs[coeff_index(1, 0) if name == "u" else coeff_index(0, 1)] = 1.0
        return jet

    @property
    def value(self) -> float:
        """Value of the represented function at the base point."""
        return float(self.coeffs[0])

    def coefficient(self, i: int, j: int) -> float:
        if i + j > self.order:
            raise ValueError(f"c_{i}{j} is beyond order {self.order}")
        return float(self.coeffs[coeff_index(i, j)])

    def partial(self, i: int, j: int) -> float:
        """The partial derivative d^(i+j) g / du^i dv^j at the base point."""
        return self.coefficient(i, j) * factorial(i) * factorial(j)

    def truncated(self, order: int) -> "Jet2":
        if order > self.order:
            raise ValueError(f"Cannot raise a jet from order {self.order} to {order}")
        return Jet2(self.coeffs[: num_coeffs(order)], self.base, order)

    def du(self) -> "Jet2":
        return self._derivative(0)

    def dv(self) -> "Jet2":
        return self._derivative(1)

    def _derivative(self, axis: int) -> "Jet2":
        if self.order < 1:
            raise ValueError("Cannot differentiate an order 0 jet")
        source, factor = _shift_table(self.order, axis)
        return Jet2(self.coeffs[source] * factor, self.base, self.order - 1)

    def directional(self, xi: Union["Jet2", Scalar], zeta: Union["Jet2", Scalar]) -> "Jet2":
        """Derivative along the vector field xi d/du + zeta d/dv."""
        return xi * self.du() + zeta * self.dv()

    def evaluate(self, du: float, dv: float) -> float:
        """Evaluates the truncated polynomial at base + (du, dv)."""
        total = 0.0
        for (i, j), c in zip(exponents(self.order), self.coeffs.tolist()):
            total += c * du**i * dv**j
        return total

    def sqrt(self) -> "Jet2":
        return jet_sqrt(self)

    def _check(self, other: "Jet2") -> int:
        if self.base != other.base:
            raise ValueError(f"Jets at different bases {self.base} and {other.base}")
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, Jet2):
            order = self._check(other)
            n = num_coeffs(order)
            return Jet2(self.coeffs[:n] + other.coeffs[:n], self.base, order)
        coeffs = self.coeffs.clone()
        coeffs[0] += float(other)
        return Jet2(coeffs, self.base, self.order)

    __radd__ = __add__

    def __neg__(self) -> "Jet2":
        return Jet2(-self.coeffs, self.base, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet2):
            return jet_mul(self, other)
        return Jet2(self.coeffs * float(other), self.base, self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return jet_div(self, other)
        if other == 0:
            raise DivisionNearZero(f"Division of a jet at {self.base} by zero")
        return Jet2(self.coeffs / float(other), self.base, self.order)

    def __rtruediv__(self, other):
        return _reciprocal(self) * other

    def __repr__(self) -> str:
        return f"Jet2(order={self.order}, base={self.base}, value={self.value:.6g})"


def jet_lift(polynomial: Iterable[Tuple[int, int, float]], base: Point, order: int) -> Jet2:
    """Exact Taylor expansion of a polynomial at `base`.

    Each monomial c u^i v^j is re-centered with the binomial theorem, so every kept
    coefficient is exact up to floating point rounding.

    Args:
        polynomial (Iterable[Tuple[int, int, float]]): Monomials (i, j, c).
        base (Tuple[float, float]): Expansion point.
        order (int): Jet order, at least 0.

    Returns:
        Jet2: The lifted jet.
    """
    assert order >= 0, f"Jet order must be non-negative, got {order}"
    u0, v0 = float(base[0]), float(base[1])
    coeffs = [0.0] * num_coeffs(order)
    for i, j, c in polynomial:
        for a in range(min(i, order) + 1):
            u_part = c * comb(i, a) * u0 ** (i - a)
            if u_part == 0.0:
                continue
            for b in range(min(j, order - a) + 1):
                coeffs[coeff_index(a, b)] += u_part * comb(j, b) * v0 ** (j - b)
    return Jet2(torch.tensor(coeffs, dtype=DTYPE), (u0, v0), order)


def jet_mul(a: Jet2, b: Jet2) -> Jet2:
    """Truncated Cauchy product."""
    order = a._check(b)
    n = num_coeffs(order)
    left, right, out = _product_table(order)
    products = a.coeffs[:n][left] * b.coeffs[:n][right]
    coeffs = torch.zeros(n, dtype=DTYPE).index_add_(0, out, products)
    return Jet2(coeffs, a.base, order)


def _compose_nilpotent(x: Jet2, series: Sequence[float]) -> Jet2:
    # Horner evaluation of sum_m series[m] x^m; x has no constant term so x^(order+1)
    # vanishes after truncation.
    result = Jet2.constant(series[-1], x.base, x.order)
    for coefficient in reversed(series[:-1]):
        result = jet_mul(x, result) + coefficient
    return result


def _reciprocal(b: Jet2, eps: float = None) -> Jet2:
    if eps is None:
        eps = get_tolerances().div
    b0 = b.value
    if abs(b0) <= eps:
        raise DivisionNearZero(
            f"Jet divisor has constant term {b0:.3e} at base {b.base} (threshold {eps:.1e})"
        )
    x = (b - b0) / b0
    series = [(-1.0) ** m for m in range(b.order + 1)]
    return _compose_nilpotent(x, series) / b0


def jet_div(a: Jet2, b: Jet2, eps: float = None) -> Jet2:
    """Quotient a / b through the geometric series of the divisor.

    Raises:
        DivisionNearZero: If |b.c00| <= eps (defaults to the `div` tolerance).
    """
    return jet_mul(a, _reciprocal(b, eps))


def _half_binomials(count: int) -> list:
    coefficients = [1.0]
    for m in range(1, count):
        coefficients.append(coefficients[-1] * (0.5 - (m - 1)) / m)
    return coefficients


def jet_sqrt(a: Jet2, eps: float = None) -> Jet2:
    """Square root through the binomial series.

    Raises:
        SqrtOfNonpositive: If a.c00 <= eps (defaults to the `sqrt` tolerance).
    """
    if eps is None:
        eps = get_tolerances().sqrt
    a0 = a.value
    if a0 <= eps:
        raise SqrtOfNonpositive(
            f"Jet square root of constant term {a0:.3e} at base {a.base} (threshold {eps:.1e})"
        )
    x = (a - a0) / a0
    return _compose_nilpotent(x, _half_binomials(a.order + 1)) * sqrt(a0)


def jet_divide_by_v(a: Jet2, eps: float = None) -> Jet2:
    """Exact division by the coordinate v for a jet based on the u-axis.

    Args:
        a (Jet2): A jet with base (u0, 0) whose v-free coefficients vanish.
        eps (:obj:`float`, optional): Largest admissible v-free coefficient,
            defaults to the `divv` tolerance.

    Returns:
        Jet2: The order - 1 jet of a / v.

    Raises:
        NotDivisibleByV: If some |c_i0| exceeds `eps`.
    """
    if eps is None:
        eps = get_tolerances().divv
    if a.base[1] != 0.0:
        raise ValueError(f"Division by v needs a base on the u-axis, got {a.base}")
    if a.order < 1:
        raise ValueError("Cannot divide an order 0 jet by v")
    offending = [
        (i, a.coefficient(i, 0))
        for i in range(a.order + 1)
        if abs(a.coefficient(i, 0)) > eps
    ]
    if offending:
        listing = ", ".join(f"c_{i}0={c:.3e}" for i, c in offending)
        raise NotDivisibleByV(f"Jet at {a.base} is not divisible by v: {listing}")
    source, _ = _shift_table(a.order, 1)
    return Jet2(a.coeffs[source], a.base, a.order - 1)


def jet_dot(a: Sequence[Jet2], b: Sequence[Jet2]) -> Jet2:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def jet_cross(a: Sequence[Jet2], b: Sequence[Jet2]) -> Tuple[Jet2, Jet2, Jet2]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def jet_norm(a: Sequence[Jet2], eps: float = None) -> Jet2:
    return jet_sqrt(jet_dot(a, a), eps)


def jet_det(a: Sequence[Jet2], b: Sequence[Jet2], c: Sequence[Jet2]) -> Jet2:
    return jet_dot(jet_cross(a, b), c)


def jet_values(jets: Sequence[Jet2]) -> torch.Tensor:
    """Values of a sequence of jets as a float64 tensor."""
    return torch.tensor([jet.value for jet in jets], dtype=DTYPE)
