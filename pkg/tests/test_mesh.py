import pytest

from frontlab.errors import BadTranslationVector, ZeroCurvature
from frontlab.geometry.grid import Grid
from frontlab.mesh import format_obj, sample_mesh, write_obj

SMALL = Grid((-0.1, 0.1, -0.1, 0.1), (5, 5))


def test_base_mesh_layout(swallowtail_edge):
    mesh = sample_mesh(swallowtail_edge, grid=SMALL)
    assert mesh.name == "surface_base"
    assert tuple(mesh.vertices.shape) == (25, 3)
    assert len(mesh.faces) == 16
    assert mesh.faces[0] == (1, 2, 7, 6)
    assert mesh.vertices[12].tolist() == pytest.approx([0.0, 0.0, 0.0])
    assert mesh.skipped == 0


def test_base_mesh_singular_set(swallowtail_edge):
    mesh = sample_mesh(swallowtail_edge, grid=Grid((-0.1, 0.1, -0.1, 0.1), (4, 4)))
    # the cuspidal edge runs through the middle row of cells
    assert len(mesh.segments) == 3
    for segment in mesh.segments:
        for u, v in segment:
            assert abs(v) < 0.07
    assert len(mesh.segment_points) == 3


def test_focal_parallel_mesh(swallowtail_edge):
    mesh = sample_mesh(swallowtail_edge, "parallel", grid=SMALL)
    assert mesh.name == "surface_parallel"
    assert mesh.vertices[12].tolist() == pytest.approx([0.0, 0.0, 0.5])


def test_parallel_mesh_with_offset(flat_edge):
    mesh = sample_mesh(flat_edge, "parallel", t=0.25, grid=SMALL)
    assert mesh.vertices[12].tolist() == pytest.approx([0.0, 0.0, 1.25])
    with pytest.raises(ZeroCurvature):
        sample_mesh(flat_edge, "parallel", grid=SMALL)


def test_dual_mesh(swallowtail_edge, flat_edge):
    mesh = sample_mesh(flat_edge, "dual", grid=SMALL)
    assert mesh.name == "surface_dual"
    assert mesh.vertices[12].tolist() == pytest.approx([0.0, 0.0, 1.0])
    with pytest.raises(BadTranslationVector):
        sample_mesh(swallowtail_edge, "dual", grid=SMALL)
    assert sample_mesh(swallowtail_edge, "dual", grid=SMALL, c_vec=(0.0, 0.0, 1.0)).name == "surface_dual"


def test_unknown_kind(swallowtail_edge):
    with pytest.raises(ValueError):
        sample_mesh(swallowtail_edge, "focal", grid=SMALL)


def test_format_obj(swallowtail_edge):
    mesh = sample_mesh(swallowtail_edge, grid=Grid((-0.1, 0.1, -0.1, 0.1), (4, 4)))
    lines = format_obj(mesh).split("\n")
    assert lines[0] == "# frontlab mesh"
    assert lines[2] == "o surface_base"
    assert sum(line.startswith("v ") for line in lines) == 16 + 2 * len(mesh.segments)
    assert sum(line.startswith("f ") for line in lines) == 9
    assert lines[-2] == f"l {16 + 2 * len(mesh.segments) - 1} {16 + 2 * len(mesh.segments)}"


def test_write_obj_is_deterministic(swallowtail_edge, tmp_path):
    first, second = tmp_path / "first.obj", tmp_path / "second.obj"
    write_obj(str(first), sample_mesh(swallowtail_edge, "parallel", grid=SMALL))
    write_obj(str(second), sample_mesh(swallowtail_edge, "parallel", grid=SMALL))
    assert first.read_bytes() == second.read_bytes()
