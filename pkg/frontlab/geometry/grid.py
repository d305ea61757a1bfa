"""Rectangular parameter grids, sign change bisection and contour segments.

Grid nodes are stored with rows along v and columns along u, so the vertex
(u_i, v_j) has the row-major index j * nu + i. Every search over a grid reports its
results in that order.
"""

from typing import Callable, List, Sequence, Tuple
from math import ceil, log2

import torch

from frontlab.config import DEFAULT_BOX, DEFAULT_GRID_SHAPE, Tolerances, get_tolerances

Segment = Tuple[Tuple[float, float], Tuple[float, float]]


class Grid:
    """A uniform grid over a box in the (u, v)-plane.

    Attributes:
        box (Tuple[float, float, float, float]): (umin, umax, vmin, vmax).
        shape (Tuple[int, int]): Number of nodes along u and along v.
    """

    __slots__ = ("box", "shape")

    def __init__(
        self,
        box: Sequence[float] = DEFAULT_BOX,
        shape: Sequence[int] = DEFAULT_GRID_SHAPE,
    ) -> None:
        box = tuple(float(b) for b in box)
        shape = tuple(int(n) for n in shape)
        if len(box) != 4 or not (box[0] < box[1] and box[2] < box[3]):
            raise ValueError(f"Grid box must satisfy umin < umax and vmin < vmax, got {box}")
        if len(shape) != 2 or min(shape) < 2:
            raise ValueError(f"Grid needs at least 2 nodes along each axis, got {shape}")
        self.box = box
        self.shape = shape

    def __len__(self) -> int:
        return self.shape[0] * self.shape[1]

    def axes(self) -> Tuple[torch.Tensor, torch.Tensor]:
        umin, umax, vmin, vmax = self.box
        nu, nv = self.shape
        return (
            torch.linspace(umin, umax, nu, dtype=torch.float64),
            torch.linspace(vmin, vmax, nv, dtype=torch.float64),
        )

    def mesh(self) -> Tuple[torch.Tensor, torch.Tensor]:
        """Node coordinates as two (nv, nu) tensors."""
        us, vs = self.axes()
        v, u = torch.meshgrid(vs, us, indexing="ij")
        return u, v

    def cell_containing(self, u: float, v: float) -> Tuple[int, int]:
        """Column and row of the cell holding (u, v)."""
        umin, umax, vmin, vmax = self.box
        nu, nv = self.shape
        i = int((u - umin) / (umax - umin) * (nu - 1))
        j = int((v - vmin) / (vmax - vmin) * (nv - 1))
        return min(max(i, 0), nu - 2), min(max(j, 0), nv - 2)

    def __repr__(self) -> str:
        return f"Grid(box={self.box}, shape={self.shape})"


def _edges(grid: Grid) -> Tuple[torch.Tensor, torch.Tensor]:
    # Horizontal edges first, then vertical ones, each in row-major order.
    nu, nv = grid.shape
    index = torch.arange(nu * nv).reshape(nv, nu)
    starts = torch.cat([index[:, :-1].reshape(-1), index[:-1, :].reshape(-1)])
    ends = torch.cat([index[:, 1:].reshape(-1), index[1:, :].reshape(-1)])
    return starts, ends


def sign_change_points(
    grid: Grid,
    function: Callable[[torch.Tensor, torch.Tensor], torch.Tensor],
    values: torch.Tensor = None,
    tol: Tolerances = None,
) -> torch.Tensor:
    """Zeros of a scalar field on the grid edges, refined by bisection.

    Every grid edge whose endpoint values change sign (or vanish) contributes one
    point. All edges are bisected together until the bracketing interval is shorter
    than the `bisect` tolerance.

    Args:
        grid (Grid): The grid to scan.
        function (Callable): Vectorised field, maps tensors u, v to values.
        values (:obj:`torch.Tensor`, optional): The field on the grid nodes, computed
            when omitted.
        tol (:obj:`Tolerances`, optional): Thresholds, `bisect` sets the precision.

    Returns:
        torch.Tensor: A (k, 2) tensor of (u, v) points sorted by v, then u.
    """
    tol = tol or get_tolerances()
    u, v = grid.mesh()
    if values is None:
        values = function(u, v)
    u, v, values = u.reshape(-1), v.reshape(-1), values.reshape(-1)
    starts, ends = _edges(grid)
    a_values, b_values = values[starts], values[ends]
    finite = torch.isfinite(a_values) & torch.isfinite(b_values)
    crossing = finite & ((a_values == 0) | ((a_values > 0) != (b_values > 0)))
    crossing &= ~((b_values == 0) & (a_values != 0))
    if not bool(crossing.any()):
        return torch.zeros((0, 2), dtype=torch.float64)

    low = torch.stack([u[starts[crossing]], v[starts[crossing]]], -1)
    high = torch.stack([u[ends[crossing]], v[ends[crossing]]], -1)
    low_values = a_values[crossing]
    exact = low_values == 0

    length = float(torch.linalg.norm(high - low, dim=-1).max())
    steps = max(0, ceil(log2(length / tol.bisect))) if length > tol.bisect else 0
    for _ in range(steps):
        middle = (low + high) / 2
        middle_values = function(middle[:, 0], middle[:, 1])
        same_side = (middle_values > 0) == (low_values > 0)
        low = torch.where(same_side[:, None], middle, low)
        low_values = torch.where(same_side, middle_values, low_values)
        high = torch.where(same_side[:, None], high, middle)
    points = torch.where(exact[:, None], low, (low + high) / 2)

    # A node where the field vanishes starts two edges.
    unique = sorted({(v_, u_) for u_, v_ in points.tolist()})
    return torch.tensor([(u_, v_) for v_, u_ in unique], dtype=torch.float64).reshape(-1, 2)


def contour_segments(grid: Grid, values: torch.Tensor) -> List[Segment]:
    """Marching squares extraction of the zero level set.

    Crossings are placed by linear interpolation on the cell edges. Saddle cells are
    resolved with the average of the four corner values. Cells touching a
    non-finite value are skipped.

    Args:
        grid (Grid): The grid the values live on.
        values (torch.Tensor): A (nv, nu) tensor of field values.

    Returns:
        List[Segment]: Segments ((u0, v0), (u1, v1)) in row-major cell order.
    """
    us, vs = grid.axes()
    us, vs = us.tolist(), vs.tolist()
    nu, nv = grid.shape
    table = values.tolist()
    positive = (values >= 0).tolist()
    segments = []

    def crossing(p, q, fp, fq):
        s = fp / (fp - fq) if fp != fq else 0.5
        return (p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1]))

    for j in range(nv - 1):
        for i in range(nu - 1):
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            signs = [positive[b][a] for a, b in corners]
            if all(signs) or not any(signs):
                continue
            corner_values = [table[b][a] for a, b in corners]
            if any(value != value or abs(value) == float("inf") for value in corner_values):
                continue
            points = [(us[a], vs[b]) for a, b in corners]
            crossings = []
            for k in range(4):
                nxt = (k + 1) % 4
                if signs[k] != signs[nxt]:
                    crossings.append(
                        crossing(points[k], points[nxt], corner_values[k], corner_values[nxt])
                    )
            if len(crossings) == 2:
                segments.append((crossings[0], crossings[1]))
            else:
                # Saddle: crossings sit on edges 0-1, 1-2, 2-3, 3-0.
                center_positive = sum(corner_values) / 4 >= 0
                if center_positive == signs[0]:
                    segments.append((crossings[0], crossings[1]))
                    segments.append((crossings[2], crossings[3]))
                else:
                    segments.append((crossings[3], crossings[0]))
                    segments.append((crossings[1], crossings[2]))
    return segments
