"""Wavefront OBJ export of a surface, its parallel surface or its dual surface.

The surface is sampled on a :class:`frontlab.geometry.grid.Grid`. Vertices are
written in row-major grid order (rows along v), followed by one quad face per
grid cell. A second object, `singular_set`, holds line elements along the zero
set of the signed area density, extracted with marching squares. The same input
always produces the same file.
"""

from typing import Callable, Sequence, Tuple
import logging

import torch

from frontlab.config import Tolerances, get_tolerances
from frontlab.errors import DegenerateFrame, ZeroCurvature
from frontlab.geometry.dual import make_dual
from frontlab.geometry.fields import surface_fields
from frontlab.geometry.grid import Grid, contour_segments
from frontlab.geometry.parallel import make_parallel
from frontlab.geometry.surface import PolySurface

SURFACE_KINDS = ("base", "parallel", "dual")


class MeshData:
    """A sampled surface ready for export.

    Attributes:
        name (str): Object name of the surface.
        grid (Grid): The sampling grid.
        vertices (torch.Tensor): (nv * nu, 3) points in row-major grid order.
        faces (List[Tuple[int, int, int, int]]): Quads as 1-based vertex indices.
        segments (List[Segment]): Singular set segments in the parameter plane.
        segment_points (List[Tuple[Tuple[float, ...], Tuple[float, ...]]]): The same
            segments mapped to 3-space.
        skipped (int): Number of cells dropped because the frame degenerates.
    """

    __slots__ = ("name", "grid", "vertices", "faces", "segments", "segment_points", "skipped")

    def __init__(self, name, grid, vertices, faces, segments, segment_points, skipped) -> None:
        self.name = name
        self.grid = grid
        self.vertices = vertices
        self.faces = faces
        self.segments = segments
        self.segment_points = segment_points
        self.skipped = skipped

    def __repr__(self) -> str:
        return (
            f"MeshData({self.name}, vertices={len(self.vertices)}, faces={len(self.faces)}, "
            f"segments={len(self.segments)})"
        )


def _evaluators(
    surface: PolySurface, which: str, t: float, c_vec: Sequence[float], tol: Tolerances
) -> Tuple[str, Callable, Callable]:
    """Point map and signed area density of the requested surface."""
    if which == "base":

        def density(u, v):
            return v * surface_fields(surface, u, v, tol)["W"]

        return "surface_base", surface.evaluate, density

    if which == "parallel":
        if t is None:
            kappa = make_parallel(surface, 1.0, tol=tol).kappa_anchor
            if abs(kappa) <= tol.curvature:
                raise ZeroCurvature(f"kappa(0) = {kappa:.3e}, give an offset with --t")
            t = 1.0 / kappa
            logging.info(f"Using the focal distance t0 = {t:.9g} for the parallel surface")
        parallel = make_parallel(surface, t, tol=tol)

        def density(u, v):
            fields = surface_fields(surface, u, v, tol)
            return fields["W"] * (v - t * fields["v_kappa_other"]) * (1 - t * fields["kappa"])

        return "surface_parallel", parallel.evaluate, density

    if which == "dual":
        dual = make_dual(surface, c_vec, tol=tol)
        return "surface_dual", dual.evaluate, dual.lambda_star

    raise ValueError(f"Unknown surface kind '{which}', expected one of {SURFACE_KINDS}")


def sample_mesh(
    surface: PolySurface,
    which: str = "base",
    t: float = None,
    grid: Grid = None,
    c_vec: Sequence[float] = None,
    skip_degenerate: bool = False,
    tol: Tolerances = None,
) -> MeshData:
    """Samples a surface on a grid.

    Args:
        surface (PolySurface): An adapted front.
        which (:obj:`str`, optional): `"base"`, `"parallel"` or `"dual"`.
        t (:obj:`float`, optional): Offset of the parallel surface, the focal
            distance 1 / kappa(0) when omitted.
        grid (:obj:`Grid`, optional): Sampling grid, 81 x 81 over the surface's box
            by default.
        c_vec (:obj:`Sequence[float]`, optional): Translation vector of the dual.
        skip_degenerate (:obj:`bool`, optional): Drop cells where the frame
            degenerates instead of raising.
        tol (:obj:`Tolerances`, optional): Thresholds.

    Returns:
        MeshData: The sampled mesh. Vertices of dropped cells fall back to the base
            surface point so that vertex indices stay aligned with the grid.

    Raises:
        DegenerateFrame: If some vertex cannot be computed and `skip_degenerate`
            is not set.
        ZeroCurvature: For a parallel surface without `t` when kappa(0) = 0.
        BadTranslationVector: Propagated from :func:`make_dual`.
    """
    tol = tol or get_tolerances()
    grid = grid or Grid(surface.box())
    name, evaluate, density = _evaluators(surface, which, t, c_vec, tol)
    u, v = grid.mesh()
    points = evaluate(u, v)
    finite = torch.isfinite(points).all(-1)

    nu, nv = grid.shape
    if not bool(finite.all()):
        bad = (~finite).nonzero().tolist()
        if not skip_degenerate:
            j, i = bad[0]
            raise DegenerateFrame(
                f"The {which} surface is undefined at ({float(u[j, i]):.6g}, {float(v[j, i]):.6g}), "
                f"{len(bad)} grid nodes affected"
            )
        points = torch.where(finite[..., None], points, surface.evaluate(u, v))

    faces = []
    skipped = 0
    finite_list = finite.tolist()
    for j in range(nv - 1):
        for i in range(nu - 1):
            corners = ((i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1))
            if not all(finite_list[b][a] for a, b in corners):
                skipped += 1
                continue
            faces.append(tuple(b * nu + a + 1 for a, b in corners))
    if skipped:
        logging.warning(f"Skipped {skipped} degenerate cells of the {which} surface")

    segments = contour_segments(grid, density(u, v))
    segment_points = []
    if segments:
        ends = torch.tensor([point for segment in segments for point in segment], dtype=torch.float64)
        mapped = evaluate(ends[:, 0], ends[:, 1]).tolist()
        segment_points = [tuple(map(tuple, mapped[k : k + 2])) for k in range(0, len(mapped), 2)]
    return MeshData(name, grid, points.reshape(-1, 3), faces, segments, segment_points, skipped)


def _vertex_line(point: Sequence[float]) -> str:
    x, y, z = (value + 0.0 for value in point)
    return f"v {x:.9f} {y:.9f} {z:.9f}\n"


def format_obj(mesh: MeshData) -> str:
    """The OBJ text of a mesh."""
    lines = [
        "# frontlab mesh\n",
        f"# grid {mesh.grid.shape[0]} x {mesh.grid.shape[1]} over {list(mesh.grid.box)}\n",
        f"o {mesh.name}\n",
    ]
    lines += [_vertex_line(point) for point in mesh.vertices.tolist()]
    lines += [f"f {a} {b} {c} {d}\n" for a, b, c, d in mesh.faces]

    lines.append("o singular_set\n")
    offset = len(mesh.vertices)
    for start, end in mesh.segment_points:
        lines.append(_vertex_line(start))
        lines.append(_vertex_line(end))
    lines += [
        f"l {offset + 2 * index + 1} {offset + 2 * index + 2}\n"
        for index in range(len(mesh.segment_points))
    ]
    return "".join(lines)


def write_obj(path: str, mesh: MeshData) -> None:
    """Writes a mesh as Wavefront OBJ."""
    with open(path, "w", encoding="utf-8", newline="\n") as obj_file:
        obj_file.write(format_obj(mesh))
    logging.info(f"Wrote {mesh!r} to {path}")
