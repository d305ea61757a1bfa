import pytest
import torch

from frontlab.geometry.grid import Grid, contour_segments, sign_change_points


def test_grid_layout():
    grid = Grid((0.0, 1.0, -1.0, 1.0), (3, 5))
    us, vs = grid.axes()
    assert us.tolist() == pytest.approx([0.0, 0.5, 1.0])
    assert len(vs) == 5
    u, v = grid.mesh()
    assert u.shape == (5, 3)
    # row-major with rows along v
    assert u.reshape(-1)[:3].tolist() == pytest.approx([0.0, 0.5, 1.0])
    assert v.reshape(-1)[:3].tolist() == pytest.approx([-1.0, -1.0, -1.0])
    assert len(grid) == 15


@pytest.mark.parametrize(
    "box, shape",
    [((1.0, 0.0, 0.0, 1.0), (3, 3)), ((0.0, 1.0, 0.0, 0.0), (3, 3)), ((0.0, 1.0, 0.0, 1.0), (1, 3))],
)
def test_grid_rejects(box, shape):
    with pytest.raises(ValueError):
        Grid(box, shape)


def test_cell_containing():
    grid = Grid((0.0, 1.0, 0.0, 1.0), (11, 11))
    assert grid.cell_containing(0.25, 0.95) == (2, 9)
    assert grid.cell_containing(1.0, 1.0) == (9, 9)
    assert grid.cell_containing(-3.0, 0.0) == (0, 0)


def test_sign_change_points_on_circle():
    grid = Grid((-1.0, 1.0, -1.0, 1.0), (9, 9))

    def circle(u, v):
        return u**2 + v**2 - 0.5

    points = sign_change_points(grid, circle)
    assert len(points) > 0
    radii = (points**2).sum(-1)
    assert torch.allclose(radii, torch.full_like(radii, 0.5), atol=1e-8)
    # sorted by v, then u
    order = sorted(range(len(points)), key=lambda k: (points[k, 1].item(), points[k, 0].item()))
    assert order == list(range(len(points)))


def test_sign_change_points_none():
    grid = Grid((-1.0, 1.0, -1.0, 1.0), (5, 5))
    points = sign_change_points(grid, lambda u, v: u**2 + 1)
    assert points.shape == (0, 2)


def test_contour_segments_line():
    grid = Grid((-1.0, 1.0, -1.0, 1.0), (5, 5))
    u, v = grid.mesh()
    segments = contour_segments(grid, u - 0.1)
    assert len(segments) == 4
    for start, end in segments:
        assert start[0] == pytest.approx(0.1)
        assert end[0] == pytest.approx(0.1)


def test_contour_segments_skip_nan():
    grid = Grid((-1.0, 1.0, -1.0, 1.0), (3, 3))
    u, v = grid.mesh()
    values = (u - 0.1).clone()
    values[0, 2] = float("nan")
    assert len(contour_segments(grid, values)) == 1
