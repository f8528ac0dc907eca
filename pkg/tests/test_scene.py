# -*- coding: utf-8 -*-
import numpy as np
import pytest
from pydantic import ValidationError

from src.core.exceptions import GeometryError
from src.physics.dipole import DipoleKind, DipoleSpec
from src.physics.scene import Scene, SceneConfig, build_scene, scene_from_points


def count_kind(scene, kind):
    return sum(d.kind is kind for d in scene.dipoles)


def test_default_chassis_scene_counts():
    scene = build_scene(SceneConfig())
    assert count_kind(scene, DipoleKind.WALL) == 72
    assert count_kind(scene, DipoleKind.RIS) == 16
    assert count_kind(scene, DipoleKind.ANTENNA) == 2
    assert scene.n_elements == 16
    assert all(scene.dipoles[i].kind is DipoleKind.RIS for i in scene.ris_order)


def test_ris_spacing_and_placement():
    scene = build_scene(SceneConfig(position_jitter=0.0))
    ris = scene.positions[list(scene.ris_order)]
    np.testing.assert_allclose(np.diff(ris[:, 0]), 0.024)
    np.testing.assert_allclose(ris[:, 1], 0.006)


def test_zero_ris_elements_is_valid():
    scene = build_scene(SceneConfig(ris_elements=0))
    assert scene.n_elements == 0
    assert scene.ris_order == ()


def test_antenna_outside_cavity_rejected():
    with pytest.raises(GeometryError):
        build_scene(SceneConfig(tx=(1.0, 0.1)))


def test_ris_that_does_not_fit_rejected():
    with pytest.raises(GeometryError):
        build_scene(SceneConfig(ris_elements=32))


def test_deterministic_for_fixed_seed():
    config = SceneConfig(clutter_count=5, seed=9)
    assert build_scene(config) == build_scene(config)
    other = build_scene(SceneConfig(clutter_count=5, seed=10))
    assert not np.array_equal(build_scene(config).positions, other.positions)


def test_clutter_and_rows():
    scene = build_scene(SceneConfig(clutter_count=4, ris_rows=2, ris_wall="left"))
    assert count_kind(scene, DipoleKind.WALL) == 76
    ris = scene.positions[list(scene.ris_order)]
    assert sorted(set(np.round(ris[:, 0], 9))) == pytest.approx([0.006, 0.030])


def test_coincident_dipoles_rejected():
    wall = DipoleSpec((0.1, 0.1), DipoleKind.WALL, 9e9, 9e9, 10e9, 0.9)
    with pytest.raises(GeometryError):
        scene_from_points([wall, wall], (0.05, 0.05), (0.15, 0.15))


def test_scene_reference_checks():
    scene = scene_from_points([], (0.05, 0.05), (0.15, 0.15))
    with pytest.raises(GeometryError):
        Scene(scene.dipoles, scene.tx, scene.tx, ())
    with pytest.raises(GeometryError):
        Scene(scene.dipoles, scene.tx, scene.rx, (0,))


def test_swap_ports():
    scene = build_scene(SceneConfig(ris_elements=4))
    swapped = scene.swap_ports()
    assert (swapped.tx, swapped.rx) == (scene.rx, scene.tx)
    assert swapped.swap_ports() == scene


def test_antennas_scatter_flag():
    passive = build_scene(SceneConfig(ris_elements=2))
    active = build_scene(SceneConfig(ris_elements=2, antennas_scatter=True))
    assert scene_count(passive) + 2 == scene_count(active)


def scene_count(scene):
    return len(scene.scatterer_indices())


def test_config_rejects_inverted_resonances():
    with pytest.raises(ValidationError):
        SceneConfig(ris_resonance_on=6.5e9)
