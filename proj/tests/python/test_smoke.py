"""Smoke tests for the python bindings: thin checks that the module loads
and the main operations round-trip. The numerical depth lives in the C++
suites."""

import math

import pytest

import pmlforge


def test_solver_anchor():
    sol = pmlforge.solve_real(0.25, 4.0, 1)
    assert sol.max_ratio == pytest.approx(0.6, rel=1e-8)
    (root,) = sol.t.roots
    assert root.real == pytest.approx(1.0, rel=1e-8)
    assert root.imag == 0.0


def test_imaginary_solver_rotates():
    real = pmlforge.solve_real(0.1, 1.0, 3)
    imag = pmlforge.solve_imaginary(0.1, 1.0, 3)
    assert imag.max_ratio == real.max_ratio
    for r, i in zip(real.t.roots, imag.t.roots):
        assert i.real == 0.0
        assert i.imag == pytest.approx(r.real, abs=0.0)


def test_window_validation():
    with pytest.raises(ValueError):
        pmlforge.SpectralWindow(0.5, 0.01, 1.0)


def test_design_and_validation_pass():
    window = pmlforge.SpectralWindow(-0.25, 0.04, 1.0)
    design = pmlforge.design_balanced(window, 4)
    assert design.k_total == 4
    assert 1 <= design.split_l <= 3
    assert design.achieved.max_reflection_evanescent > 0.0

    report = pmlforge.run_validation(design)
    assert report.all_pass()
    assert len(report.groups) == 6
    assert all(g.pass_ for g in report.groups)


def test_design_file_roundtrip(tmp_path):
    window = pmlforge.SpectralWindow(-0.25, 0.04, 1.0)
    design = pmlforge.build_composite(window, 3, 2)
    path = str(tmp_path / "design.json")
    pmlforge.save_design(design, path)
    back = pmlforge.load_design(path)
    assert back.k_total == design.k_total
    assert back.split_l == design.split_l
    assert back.achieved.max_reflection_propagative == \
        design.achieved.max_reflection_propagative


def test_grid_roundtrip():
    mesh = pmlforge.FEMesh([1.0 + 0.0j, 1.0 + 0.0j])
    grid = pmlforge.fe_to_fd(mesh)
    assert grid.hhat[0] == pytest.approx(0.25)
    assert grid.h[0] == pytest.approx(1.0)
    back = pmlforge.fd_to_fe(grid)
    assert back.lengths[0] == pytest.approx(1.0)
    assert back.lengths[1] == pytest.approx(1.0)


def test_odd_mesh_raises():
    mesh = pmlforge.FEMesh([1.0, 0.5, 2.0])
    with pytest.raises(ValueError):
        pmlforge.fe_to_fd(mesh)


def test_sweep_shape():
    window = pmlforge.SpectralWindow(-0.25, 0.04, 1.0)
    design = pmlforge.build_composite(window, 3, 2)
    h = pmlforge.total_h(design)
    sweep = pmlforge.halfspace_error_sweep(h, window, 21)
    assert len(sweep.samples) == 42
    assert sweep.evanescent.max_reflection > 0.0
    assert math.isfinite(sweep.propagative.max_rel_error)
