"""Relaxation experiment: crossed mesh, discrete energy, steepest descent and nucleation trials."""

from __future__ import annotations

import numpy as np
import pytest

from engines.relax import (
    INCOMPATIBLE_A1,
    INCOMPATIBLE_A2,
    RANK_ONE_A1,
    RANK_ONE_A2,
    DoubleWell2D,
    MeshDeformation,
    RelaxConfig,
    StepRule,
    align_normal,
    crossed_mesh,
    descend,
    energy_and_gradient,
    nucleation_trial,
    nucleus_state,
    parent_energy,
    strip_state,
    total_energy,
)
from utils.errors import AlloySpecError, PreconditionError

DELTA = 0.01


@pytest.fixture
def incompatible() -> DoubleWell2D:
    return DoubleWell2D(INCOMPATIBLE_A1, INCOMPATIBLE_A2, delta=DELTA)


@pytest.fixture
def rank_one() -> DoubleWell2D:
    return DoubleWell2D(RANK_ONE_A1, RANK_ONE_A2, delta=DELTA)


def small_config(**overrides) -> RelaxConfig:
    base = dict(mesh_size=16, trials=5, nucleus_radius=0.125, descent_budget=50)
    base.update(overrides)
    return RelaxConfig(**base)


# =============================================================================
# Mesh
# =============================================================================


class TestCrossedMesh:
    """Crossed triangulation of the unit square."""

    def test_counts_and_volume(self) -> None:
        """size 3 has 16 grid nodes, 9 centres and 36 triangles covering area 1."""
        mesh = crossed_mesh(3)
        assert mesh.nodes.shape == (25, 2)
        assert mesh.triangles.shape == (36, 3)
        assert mesh.volume == pytest.approx(1.0)
        assert np.all(mesh.areas > 0.0)

    def test_identity_gradients(self) -> None:
        """The reference state has gradient 1 on every element."""
        G = crossed_mesh(4).gradients()
        assert np.allclose(G, np.eye(2), atol=1e-12)

    def test_affine_state_has_constant_gradient(self) -> None:
        """y = A x + b gives gradient A everywhere."""
        A = np.array([[1.2, 0.3], [-0.1, 0.8]])
        G = crossed_mesh(4).affine(A, [0.5, -2.0]).gradients()
        assert np.allclose(G, A, atol=1e-12)

    def test_inverted_triangle_rejected(self) -> None:
        """Clockwise triangles are not a valid mesh."""
        mesh = crossed_mesh(2)
        with pytest.raises(PreconditionError):
            MeshDeformation(mesh.nodes, mesh.values, mesh.triangles[:, ::-1])

    def test_size_must_be_positive(self) -> None:
        """size 0 has no cells."""
        with pytest.raises(PreconditionError):
            crossed_mesh(0)


# =============================================================================
# Energy
# =============================================================================


class TestEnergy:
    """I(y) = sum of area x W(element gradient)."""

    def test_parent_state_is_zero(self, incompatible) -> None:
        """y = A1 x sits in the zero-depth well."""
        assert parent_energy(incompatible, 8) == pytest.approx(0.0, abs=1e-20)

    def test_product_state_is_minus_delta(self, incompatible) -> None:
        """y = A2 x has energy -delta vol."""
        mesh = crossed_mesh(8).affine(INCOMPATIBLE_A2)
        assert total_energy(mesh, incompatible) == pytest.approx(-DELTA, rel=1e-9)

    def test_gradient_matches_finite_differences(self) -> None:
        """The assembled nodal gradient agrees with central differences."""
        W = DoubleWell2D(INCOMPATIBLE_A1, INCOMPATIBLE_A2, delta=DELTA, smoothing=0.1)
        mesh = crossed_mesh(4)
        rng = np.random.default_rng(11)
        values = mesh.values + 0.05 * rng.standard_normal(mesh.values.shape)
        _, gradient = energy_and_gradient(mesh, W, values)

        h = 1e-6
        for node in (0, 7, 12, 30):
            for axis in (0, 1):
                plus = values.copy()
                minus = values.copy()
                plus[node, axis] += h
                minus[node, axis] -= h
                fd = (energy_and_gradient(mesh, W, plus)[0] - energy_and_gradient(mesh, W, minus)[0]) / (2 * h)
                assert fd == pytest.approx(gradient[node, axis], abs=1e-7)

    def test_zero_depth_is_nonnegative(self) -> None:
        """delta = 0 gives a nonnegative energy for any state."""
        W = DoubleWell2D(INCOMPATIBLE_A1, INCOMPATIBLE_A2, delta=0.0)
        mesh = crossed_mesh(6)
        rng = np.random.default_rng(3)
        state = mesh.with_values(mesh.values + 0.2 * rng.standard_normal(mesh.values.shape))
        assert total_energy(state, W) >= 0.0

    def test_identical_wells_rejected(self) -> None:
        """A double well needs two distinct wells."""
        with pytest.raises(PreconditionError):
            DoubleWell2D(np.eye(2), np.eye(2))


# =============================================================================
# Descent
# =============================================================================


class TestDescent:
    """Armijo steepest descent on the nodal values."""

    def test_parent_state_is_stationary(self, incompatible) -> None:
        """Starting at y = A1 x the descent stops immediately."""
        mesh = crossed_mesh(8).affine(INCOMPATIBLE_A1)
        result = descend(mesh, incompatible, 10)
        assert result.converged
        assert result.steps == 0
        assert np.array_equal(result.mesh.values, mesh.values)

    def test_energy_never_increases(self, incompatible) -> None:
        """The accepted energies form a nonincreasing sequence."""
        mesh = crossed_mesh(8)
        state = nucleus_state(mesh, INCOMPATIBLE_A1, INCOMPATIBLE_A2, np.array([0.5, 0.5]), 0.2)
        result = descend(state, incompatible, 25)
        assert result.steps > 0
        assert np.all(np.diff(result.energies) <= 0.0)
        assert result.energy < result.energies[0]

    def test_tight_budget_keeps_last_state(self, incompatible) -> None:
        """A single step returns one accepted update at most."""
        state = nucleus_state(crossed_mesh(8), INCOMPATIBLE_A1, INCOMPATIBLE_A2, np.array([0.5, 0.5]), 0.2)
        result = descend(state, incompatible, 1, StepRule(initial_step=0.1))
        assert len(result.energies) <= 2


# =============================================================================
# Initial states
# =============================================================================


class TestInitialStates:
    """Nucleus and laminate strip initializers."""

    def test_nucleus_far_from_centre_is_parent(self) -> None:
        """Nodes outside the blend ring carry y = A1 x."""
        mesh = crossed_mesh(16)
        state = nucleus_state(mesh, INCOMPATIBLE_A1, INCOMPATIBLE_A2, np.array([0.5, 0.5]), 0.1)
        far = np.linalg.norm(mesh.nodes - 0.5, axis=1) > 0.1 + mesh.spacing
        assert np.allclose(state.values[far], mesh.nodes[far] @ INCOMPATIBLE_A1.T)

    def test_align_normal_gives_e1(self) -> None:
        """After alignment the wells differ by a (x) e1."""
        A1, A2, a = align_normal(RANK_ONE_A1, RANK_ONE_A2)
        assert a is not None
        assert np.allclose(A2 - A1, np.outer(a, [1.0, 0.0]), atol=1e-12)

    def test_incompatible_wells_are_not_aligned(self) -> None:
        """rank(A2 - A1) = 2 returns no shear vector."""
        _, _, a = align_normal(INCOMPATIBLE_A1, INCOMPATIBLE_A2)
        assert a is None

    def test_strip_gradients_are_exact(self) -> None:
        """A strip on grid lines has element gradients A1 or A1 + a (x) e1 only."""
        A1, A2, a = align_normal(RANK_ONE_A1, RANK_ONE_A2)
        G = strip_state(crossed_mesh(8), A1, a, 0.25, 0.5).gradients()
        in_one = np.all(np.isclose(G, A1, atol=1e-12), axis=(1, 2))
        in_two = np.all(np.isclose(G, A2, atol=1e-12), axis=(1, 2))
        assert np.all(in_one | in_two)
        assert in_two.sum() == 4 * 8 * 2

    def test_strip_outside_square(self) -> None:
        """The strip must lie inside [0, 1]."""
        with pytest.raises(PreconditionError):
            strip_state(crossed_mesh(4), RANK_ONE_A1, np.array([1.0, 0.0]), 0.5, 1.5)


# =============================================================================
# Nucleation experiment
# =============================================================================


class TestNucleationTrial:
    """Seeded trials counting energy-lowering nuclei."""

    def test_incompatible_wells_are_metastable(self, incompatible) -> None:
        """No small nucleus of the incompatible product lowers the energy."""
        report = nucleation_trial(incompatible, config=small_config())
        assert report.trials == 5
        assert report.lowered_count == 0
        assert not report.connected
        assert report.rank == 2

    def test_rank_one_strip_lowers_the_energy(self, rank_one) -> None:
        """A laminate strip of the compatible product beats the parent."""
        report = nucleation_trial(rank_one, trials=3, config=small_config(initializer="strip", descent_budget=5))
        width = 0.25
        assert report.connected
        assert report.lowered_count == 3
        assert report.min_energy_gap < -0.5 * DELTA * width

    def test_zero_depth_never_lowers(self) -> None:
        """With delta = 0 the parent is a global minimizer."""
        W = DoubleWell2D(RANK_ONE_A1, RANK_ONE_A2, delta=0.0)
        report = nucleation_trial(W, trials=3, config=small_config(initializer="strip", descent_budget=5))
        assert report.lowered_count == 0
        assert report.min_energy_gap >= -report.tol

    def test_strip_needs_rank_one_wells(self, incompatible) -> None:
        """The strip initializer has no normal for incompatible wells."""
        with pytest.raises(PreconditionError):
            nucleation_trial(incompatible, trials=1, config=small_config(initializer="strip"))

    def test_seeded_runs_repeat(self, incompatible) -> None:
        """The same seed reproduces every trial gap."""
        config = small_config(trials=2, descent_budget=10)
        first = nucleation_trial(incompatible, config=config)
        second = nucleation_trial(incompatible, config=config)
        assert [r.energy_gap for r in first.results] == [r.energy_gap for r in second.results]

    def test_process_pool_matches_serial(self, incompatible) -> None:
        """workers > 1 reproduces the serial results."""
        serial = nucleation_trial(incompatible, config=small_config(trials=2, descent_budget=10))
        pooled = nucleation_trial(incompatible, config=small_config(trials=2, descent_budget=10, workers=2))
        assert [r.energy_gap for r in serial.results] == [r.energy_gap for r in pooled.results]

    @pytest.mark.slow
    def test_full_experiment(self, incompatible) -> None:
        """1000 trials on the 64 mesh with radius 1/16 find no lower state."""
        report = nucleation_trial(incompatible, nucleus_radius=1.0 / 16.0, mesh_size=64, trials=1000,
                                  seed=0, descent_budget=200)
        assert report.lowered_count == 0


# =============================================================================
# Configuration
# =============================================================================


class TestRelaxConfig:
    """Structured defaults merged with overrides."""

    def test_overrides_apply(self) -> None:
        """Given keys replace the defaults, the rest stay."""
        config = RelaxConfig.merged({"trials": 7, "initializer": "strip"})
        assert config.trials == 7
        assert config.initializer == "strip"
        assert config.mesh_size == 64

    def test_wrong_type_is_a_spec_error(self) -> None:
        """A non-integer mesh size is reported as a document error."""
        with pytest.raises(AlloySpecError):
            RelaxConfig.merged({"mesh_size": "coarse"})

    def test_unknown_key_is_a_spec_error(self) -> None:
        """Keys outside the structured schema are refused."""
        with pytest.raises(AlloySpecError):
            RelaxConfig.merged({"mesh": 16})

    def test_radius_range(self) -> None:
        """The nucleus radius lies in (0, 1/4)."""
        with pytest.raises(PreconditionError):
            RelaxConfig(nucleus_radius=0.3)

    def test_tolerance_scales_with_volume(self) -> None:
        """The verdict tolerance is tol_factor times the domain volume."""
        config = RelaxConfig(tol_factor=1e-9)
        assert config.tolerance(2.0) == pytest.approx(2e-9)
        assert config.tolerance(0.25) == pytest.approx(2.5e-10)

    def test_report_tolerance_uses_mesh_volume(self, incompatible) -> None:
        """The reported tolerance follows tol_factor on the unit-square mesh."""
        config = small_config(trials=1, descent_budget=2, tol_factor=1e-6)
        report = nucleation_trial(incompatible, config=config)
        assert report.tol == pytest.approx(1e-6 * crossed_mesh(config.mesh_size).volume)
        assert report.tol == pytest.approx(1e-6)
