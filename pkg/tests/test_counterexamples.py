"""Counterexamples: rooms and passages, the zero-gradient layer and the L1 splitting sequence."""

from __future__ import annotations

import numpy as np
import pytest
from scipy import integrate

from engines.counterexamples import (
    RoomsPassages,
    complex_step_gradient,
    deformation,
    l1_sequence,
    rooms_ratio,
    rooms_sweep,
    strip_gradient,
    strip_kink,
    thickness_for_ratio,
    zero_gradient_layer,
)
from engines.counterexamples.noone import A1, A2
from utils.errors import PreconditionError

IDENTITY = np.eye(2)
STRETCHED = np.diag([2.0, 1.0])


# =============================================================================
# Rooms and passages
# =============================================================================


class TestRoomsPassages:
    """A nucleus filling one room against thin corridors."""

    def setup_method(self) -> None:
        self.geom = RoomsPassages.dyadic(6)

    def test_nucleus_volume(self) -> None:
        """The nucleus fills room j: volume 4 h_j^2."""
        result = rooms_ratio(self.geom, A1, A2, 2.0, 3)
        assert result.nucleus_volume == 4.0 * 2.0 ** -6

    def test_energy_is_linear_plus_cubic_in_thickness(self) -> None:
        """Layer energy = a d + b d^3, so two thicknesses predict a third."""
        rows = rooms_sweep(self.geom, A1, A2, 2.0, 3, [1.0, 0.5, 0.25])
        (d1, r1), (d2, r2), (d3, r3) = rows
        b = (r1 / d1 - r2 / d2) / (d1 ** 2 - d2 ** 2)
        a = r1 / d1 - b * d1 ** 2
        assert r3 == pytest.approx(a * d3 + b * d3 ** 3, rel=1e-9)
        assert abs(b * d1 ** 2) < 1e-2 * a

    def test_thinner_corridors_scale_ratio_down(self) -> None:
        """Scaling d by 1/10 scales the ratio by 1/10 to leading order."""
        rows = rooms_sweep(self.geom, A1, A2, 2.0, 3, [0.1, 0.01, 0.001])
        ratios = [r for _, r in rows]
        assert ratios[1] / ratios[0] == pytest.approx(0.1, rel=1e-3)
        assert ratios[2] / ratios[1] == pytest.approx(0.1, rel=1e-3)

    def test_ratio_below_target(self) -> None:
        """A thin enough corridor beats any prescribed gamma."""
        scale = thickness_for_ratio(self.geom, A1, A2, 2.0, 3, 0.04)
        assert 0.0 < scale <= 1.0
        assert rooms_ratio(self.geom.with_thickness(scale), A1, A2, 2.0, 3).ratio < 0.04

    def test_rank_one_wells_rejected(self) -> None:
        """Compatible wells are not a counterexample."""
        with pytest.raises(PreconditionError):
            rooms_ratio(self.geom, IDENTITY, STRETCHED, 2.0, 3)

    def test_end_rooms_rejected(self) -> None:
        """The nucleus needs a corridor on both sides."""
        with pytest.raises(PreconditionError):
            rooms_ratio(self.geom, A1, A2, 2.0, 1)

    def test_corridor_must_fit_next_room(self) -> None:
        """d_j >= h_(j+1) is not a valid geometry."""
        with pytest.raises(PreconditionError):
            RoomsPassages(h=(0.5, 0.25, 0.125), l=(0.5, 0.25, 0.125), d=(0.3, 0.1, 0.05))


# =============================================================================
# Zero-gradient layer
# =============================================================================


class TestZeroGradientLayer:
    """Incompatible point wells joined by a layer with Dy = 0."""

    @pytest.mark.parametrize("delta", [0.1, 0.01])
    def test_phase_volume_and_energy(self, delta: float) -> None:
        """min phase volume delta^2/2 and zero gradient energy."""
        layer = zero_gradient_layer(delta)
        assert layer.min_phase_volume == pytest.approx(0.5 * delta * delta, abs=1e-15)
        assert layer.layer_gradient_energy == 0.0

    def test_layer_measure_dominates(self) -> None:
        """Layer energy over the smaller phase grows like 2/delta."""
        small = zero_gradient_layer(0.01)
        large = zero_gradient_layer(0.1)
        assert small.layer_energy() >= small.layer_measure > 0.0
        assert small.layer_energy() / small.min_phase_volume > large.layer_energy() / large.min_phase_volume

    def test_everything_vanishes_with_delta(self) -> None:
        """delta -> 0 shrinks all three quantities."""
        layer = zero_gradient_layer(1e-6)
        assert layer.layer_measure < 2e-6
        assert layer.min_phase_volume < 1e-12

    def test_deformation_is_continuous(self) -> None:
        """No jump across either interface."""
        assert zero_gradient_layer(0.1).interface_jump(samples=500, seed=2) < 1e-12

    def test_gradients_by_region(self) -> None:
        """A1 below, 0 in the layer, A2 in the corner."""
        layer = zero_gradient_layer(0.2)
        G = layer.gradient(np.array([[0.5, 0.1], [0.5, 0.9], [0.95, 0.95]]))
        assert np.array_equal(G[0], A1)
        assert np.array_equal(G[1], np.zeros((2, 2)))
        assert np.array_equal(G[2], A2)

    def test_delta_out_of_range(self) -> None:
        """delta must lie in (0, 1)."""
        with pytest.raises(PreconditionError):
            zero_gradient_layer(1.0)


# =============================================================================
# L1 splitting sequence
# =============================================================================


class TestL1Sequence:
    """y_j stays bounded in L1 as the strip shrinks."""

    def test_uniform_bound(self) -> None:
        """Every member is below the uniform bound and within 5% of the j = 1 value."""
        members = [l1_sequence(IDENTITY, STRETCHED, j, samples=1000) for j in (1, 10, 100, 1000)]
        constant = members[0].l1_norm
        for m in members:
            assert m.l1_norm <= m.bound
            assert m.l1_norm <= 1.05 * constant

    def test_strip_measure(self) -> None:
        """The strip 0 < x1 < 1/j in [-1, 1]^n has measure 2^(n-1)/j."""
        assert l1_sequence(IDENTITY, STRETCHED, 4, samples=10).strip_measure == pytest.approx(0.5)
        assert l1_sequence(np.eye(3), np.diag([2.0, 1.0, 1.0]), 4, samples=10).strip_measure == pytest.approx(1.0)

    @pytest.mark.parametrize("j", [1, 10, 100, 1000])
    def test_gradient_formula(self, j: int) -> None:
        """The displayed strip gradient matches complex-step derivatives at 1000 strip points."""
        member = l1_sequence(IDENTITY, STRETCHED, j, samples=1000, seed=j)
        assert member.gradient_residual < 1e-12

    def test_outside_the_strip(self) -> None:
        """y_j = Ax left of the strip and Bx right of it."""
        x = np.array([[-0.5, 0.3], [0.5, 0.3]])
        y = deformation(IDENTITY, STRETCHED, 10, x)
        assert np.allclose(y[0], x[0])
        assert np.allclose(y[1], STRETCHED @ x[1])

    def test_complex_step_agrees_in_strip(self) -> None:
        """complex_step_gradient reproduces strip_gradient at one point."""
        x = np.array([[0.05, -0.4]])
        assert np.allclose(complex_step_gradient(IDENTITY, STRETCHED, 10, x),
                           strip_gradient(IDENTITY, STRETCHED, 10, x), atol=1e-14)

    def test_index_must_be_positive(self) -> None:
        """j = 0 is not a member of the sequence."""
        with pytest.raises(PreconditionError):
            l1_sequence(IDENTITY, STRETCHED, 0)


class TestStripKink:
    """|Dy_j| is only Lipschitz where the strip gradient passes through zero."""

    # A = I, B = diag(-1/2, -2): Dy_j = [[1 - 3 j x1, 0], [-3 j x2, 1 - 3 j x1]] in the strip,
    # zero at x1 = 1/(3j) which no dyadic panel edge hits
    A = IDENTITY
    B = np.diag([-0.5, -2.0])

    @staticmethod
    def _strip_reference(j: int) -> float:
        """Inner integral in closed form, outer one by adaptive quadrature split at the kink."""
        b = 3.0 * j

        def across(x1: float) -> float:
            a = np.sqrt(2.0) * abs(1.0 - 3.0 * j * x1)
            if a == 0.0:
                return b
            return float(np.hypot(a, b) + a * a / b * np.arcsinh(b / a))

        value, _ = integrate.quad(across, 0.0, 1.0 / j, points=[1.0 / (3.0 * j)], epsabs=1e-14, epsrel=1e-12, limit=200)
        return value

    @pytest.mark.parametrize("j", [1, 10, 100])
    def test_kink_located(self, j: int) -> None:
        """The gradient vanishes at (1/(3j), 0)."""
        kink = strip_kink(self.A, self.B, j)
        assert kink is not None
        assert kink == pytest.approx([1.0 / (3.0 * j), 0.0], abs=1e-12)
        assert np.abs(strip_gradient(self.A, self.B, j, kink)).max() < 1e-12

    def test_no_kink_for_stretch(self) -> None:
        """I and diag(2, 1) never produce a vanishing gradient in the strip."""
        assert strip_kink(IDENTITY, STRETCHED, 10) is None

    @pytest.mark.parametrize("j", [1, 10, 100])
    def test_l1_norm_through_kink(self, j: int) -> None:
        """The L1 norm matches an independent quadrature when Dy_j has a zero inside the strip."""
        member = l1_sequence(self.A, self.B, j, samples=50)
        norm_a, norm_b = np.linalg.norm(self.A), np.linalg.norm(self.B)
        outside = 2.0 * (norm_a + norm_b * (1.0 - 1.0 / j))
        assert member.l1_norm == pytest.approx(outside + self._strip_reference(j), rel=1e-6)
        assert member.quadrature_error < 1e-6 * member.l1_norm
