"""Transition-layer constants: geometry, gamma bracket and the metastability threshold."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engines.layers import (
    ConvexBody,
    LayerProfile,
    ball_volume,
    bvp_profile,
    eccentricity,
    gamma_upper,
    gamma_lower_bound,
    growth_constant,
    metastability_threshold,
    optimal_width,
    radial_layer,
    radial_sweep,
    rho,
    rho_min,
    rho_quadrature,
)
from utils.errors import PreconditionError


def _seeded_triples(count: int, seed: int) -> list:
    """(lam, mu, n) with mu in [0.8, 1.5] and 0.01 <= |lam - mu| <= 0.5."""
    rng = np.random.default_rng(seed)
    triples = []
    for _ in range(count):
        mu = float(rng.uniform(0.8, 1.5))
        d = float(rng.uniform(0.01, 0.5)) * float(rng.choice([-1.0, 1.0]))
        triples.append((mu + d, mu, int(rng.integers(2, 5))))
    return triples


SEEDED_TRIPLES = _seeded_triples(20, seed=2024)


# =============================================================================
# Geometry
# =============================================================================


class TestGeometry:
    """Convex bodies, eccentricity and the gamma lower bound."""

    def test_ball_has_zero_eccentricity(self) -> None:
        """r = R gives E = 0."""
        assert eccentricity(ConvexBody.ball(3)) == 0.0

    def test_square_eccentricity(self) -> None:
        """A square of side 2 has r = 1, R = sqrt(2) and E = sqrt(1/2)."""
        square = ConvexBody.box([2.0, 2.0])
        assert square.inner_radius == pytest.approx(1.0)
        assert square.outer_radius == pytest.approx(math.sqrt(2.0))
        assert eccentricity(square) == pytest.approx(math.sqrt(0.5))

    def test_thin_body_eccentricity_tends_to_one(self) -> None:
        """r/R -> 0 sends E -> 1."""
        assert eccentricity(ConvexBody.box([1.0, 1e-6])) == pytest.approx(1.0, abs=1e-9)

    def test_unit_disc_gamma(self) -> None:
        """gamma0 = 1 with C = Omega = unit disc gives min(1/4, 1/25) = 0.04."""
        disc = ConvexBody.ball(2)
        assert gamma_lower_bound(1.0, disc, ball_volume(2, 1.0)) == pytest.approx(0.04)

    def test_gamma_vanishes_with_gamma0(self) -> None:
        """Both branches scale with gamma0."""
        disc = ConvexBody.ball(2)
        assert gamma_lower_bound(1e-9, disc, disc.volume) < 1e-9

    def test_gamma_nondecreasing_in_gamma0(self) -> None:
        """A larger ball constant never lowers the bound."""
        square = ConvexBody.box([1.0, 1.0])
        values = [gamma_lower_bound(g0, square, 2.0) for g0 in (0.01, 0.1, 0.25, 0.5, 1.0, 4.0)]
        assert all(a <= b for a, b in zip(values, values[1:]))

    def test_gamma_nondecreasing_in_volume_fraction(self) -> None:
        """Shrinking Omega around the same body never lowers the bound."""
        square = ConvexBody.box([1.0, 1.0])
        values = [gamma_lower_bound(1.0, square, vol) for vol in (64.0, 16.0, 4.0, 2.0, 1.0)]
        assert all(a <= b for a, b in zip(values, values[1:]))

    def test_gamma_nonincreasing_in_eccentricity(self) -> None:
        """At fixed volume and outer radius, a smaller inner radius never raises the bound."""
        bodies = [ConvexBody(r, 1.0, ball_volume(2, 0.5), 2) for r in (0.5, 0.4, 0.3, 0.2, 0.1)]
        assert [eccentricity(b) for b in bodies] == sorted(eccentricity(b) for b in bodies)
        values = [gamma_lower_bound(1.0, body, 1.0) for body in bodies]
        assert all(a >= b for a, b in zip(values, values[1:]))
        assert values[-1] < values[0]

    def test_body_larger_than_domain(self) -> None:
        """vol(C) > vol(Omega) is a precondition error."""
        with pytest.raises(PreconditionError):
            gamma_lower_bound(1.0, ConvexBody.ball(2), 1.0)

    def test_inconsistent_volume(self) -> None:
        """A volume outside the ball bounds is rejected."""
        with pytest.raises(PreconditionError):
            ConvexBody(1.0, 1.0, 10.0, 2)


# =============================================================================
# Threshold
# =============================================================================


class TestThreshold:
    """Growth constant K and critical depth delta0."""

    @pytest.mark.parametrize(
        "c0,c1,alpha,expected,branch",
        [
            (2.0, 1.0, 1.0, 1.0, "c0>=c1"),
            (0.7, 1.0, 0.5, 0.7, "alpha<=c0<c1"),
            (0.5, 1.0, 2.0, 0.8, "alpha>c0"),
        ],
    )
    def test_branches(self, c0: float, c1: float, alpha: float, expected: float, branch: str) -> None:
        """Each branch of K on a tabulated triple."""
        K, label = growth_constant(c0, c1, alpha)
        assert K == pytest.approx(expected, abs=1e-15)
        assert label == branch

    def test_continuous_at_c0_equal_c1(self) -> None:
        """K is continuous where c0 reaches c1."""
        below, _ = growth_constant(1.0 - 1e-13, 1.0, 2.0)
        at, _ = growth_constant(1.0, 1.0, 2.0)
        assert abs(below - at) < 1e-12

    def test_continuous_at_alpha_equal_c0(self) -> None:
        """K is continuous where alpha reaches c0."""
        at, _ = growth_constant(0.5, 1.0, 0.5)
        above, _ = growth_constant(0.5, 1.0, 0.5 + 1e-13)
        assert abs(above - at) < 1e-12

    def test_delta0(self) -> None:
        """delta0 = K/2 min(gamma, Delta min(1, gamma))."""
        report = metastability_threshold(2.0, 1.0, 1.0, 2.0, gamma=0.04, Delta=0.5)
        assert report.delta0 == pytest.approx(0.5 * 1.0 * min(0.04, 0.5 * 0.04))
        assert report.sigma is None

    def test_body_radius(self) -> None:
        """With body data the L1 radius sigma is reported."""
        report = metastability_threshold(2.0, 1.0, 1.0, 2.0, gamma=0.04, Delta=0.5,
                                         kappa=1.0, E=0.0, vol_omega=math.pi, n=2)
        assert report.beta == pytest.approx(0.5)
        assert report.sigma == pytest.approx(0.5 * 0.5 * math.pi ** 1.5)
        assert report.Delta_body == pytest.approx(0.125)

    def test_nonpositive_gamma(self) -> None:
        """gamma must be positive."""
        with pytest.raises(PreconditionError):
            metastability_threshold(2.0, 1.0, 1.0, 2.0, gamma=0.0, Delta=0.5)


# =============================================================================
# Radial layer
# =============================================================================


class TestRadialLayer:
    """Closed-form radial interpolation between two dilatations."""

    def test_equal_dilatations_are_degenerate(self) -> None:
        """lam = mu costs nothing."""
        layer = radial_layer(LayerProfile(1.0, 1.0, 3))
        assert layer.degenerate
        assert layer.rho_min == 0.0
        assert layer.gamma_upper == 0.0

    @pytest.mark.parametrize("k", [1.1, 1.5, 2.0])
    def test_closed_form_matches_quadrature(self, k: float) -> None:
        """rho(k) agrees with adaptive quadrature of the layer integrand."""
        profile = LayerProfile(1.1, 1.0, 3)
        assert rho(profile, k) == pytest.approx(rho_quadrature(profile, k), abs=1e-8)

    def test_optimal_width_minimizes(self) -> None:
        """rho(k*) = rho_min and neighbouring widths cost more."""
        profile = LayerProfile(1.1, 1.0, 3)
        k_star = optimal_width(profile)
        assert rho(profile, k_star) == pytest.approx(rho_min(profile), abs=1e-12)
        for k in (0.99 * k_star, 1.01 * k_star):
            if k > 1.0:
                assert rho(profile, k) > rho_min(profile)

    @settings(max_examples=50, deadline=None, derandomize=True)
    @given(
        st.floats(min_value=0.5, max_value=2.0),
        st.floats(min_value=0.5, max_value=2.0),
        st.integers(min_value=2, max_value=4),
    )
    def test_upper_bound_below_rho_min(self, lam: float, mu: float, n: int) -> None:
        """The symmetric bound never exceeds the one-sided minimum."""
        if abs(lam - mu) < 1e-6:
            return
        layer = radial_layer(LayerProfile(lam, mu, n))
        assert layer.gamma_upper <= layer.rho_min + 1e-12
        assert layer.rho_min > 0.0

    def test_collocation_reproduces_profile(self) -> None:
        """solve_bvp on the Euler-Lagrange equation recovers the closed-form profile."""
        profile = LayerProfile(1.1, 1.0, 3, k=2.0, epsilon=0.1)
        R = np.linspace(0.1, 0.2, 101)
        assert np.max(np.abs(bvp_profile(profile)(R) - profile.profile(R))) < 1e-4

    @pytest.mark.parametrize("lam, mu, n", SEEDED_TRIPLES)
    def test_seeded_closed_form_matches_quadrature(self, lam: float, mu: float, n: int) -> None:
        """rho(k) agrees with quadrature at three widths for every seeded triple."""
        profile = LayerProfile(lam, mu, n)
        for k in (1.1, 1.5, 2.0):
            assert rho(profile, k) == pytest.approx(rho_quadrature(profile, k), abs=1e-8)

    @pytest.mark.parametrize("lam, mu, n", SEEDED_TRIPLES)
    def test_seeded_minimum_at_optimal_width(self, lam: float, mu: float, n: int) -> None:
        """rho(k*) = rho_min to 1e-10."""
        profile = LayerProfile(lam, mu, n)
        assert rho(profile, optimal_width(profile)) == pytest.approx(rho_min(profile), abs=1e-10)

    @pytest.mark.parametrize("lam, mu, n", SEEDED_TRIPLES)
    def test_seeded_collocation(self, lam: float, mu: float, n: int) -> None:
        """The boundary-value solution stays within 1e-4 of the closed-form profile."""
        profile = LayerProfile(lam, mu, n, k=2.0, epsilon=0.1)
        R = np.linspace(0.1, 0.2, 101)
        assert np.max(np.abs(bvp_profile(profile)(R) - profile.profile(R))) < 1e-4

    @settings(max_examples=50, deadline=None, derandomize=True)
    @given(
        st.floats(min_value=0.5, max_value=2.0),
        st.floats(min_value=0.5, max_value=2.0),
        st.integers(min_value=2, max_value=4),
    )
    def test_sweep_never_below_minimum(self, lam: float, mu: float, n: int) -> None:
        """Every sampled width costs at least rho_min."""
        profile = LayerProfile(lam, mu, n)
        floor = rho_min(profile)
        for _, value in radial_sweep(profile, np.linspace(1.01, 4.0, 60)):
            assert value >= floor - 1e-9 * max(1.0, floor)

    @settings(max_examples=50, deadline=None, derandomize=True)
    @given(
        st.floats(min_value=0.5, max_value=2.0),
        st.floats(min_value=0.5, max_value=2.0),
        st.integers(min_value=2, max_value=4),
    )
    def test_upper_bound_symmetric(self, lam: float, mu: float, n: int) -> None:
        """Swapping the two dilatations leaves gamma_upper unchanged."""
        forward = gamma_upper(LayerProfile(lam, mu, n))
        assert gamma_upper(LayerProfile(mu, lam, n)) == pytest.approx(forward, abs=1e-12)

    def test_sweep_rows(self) -> None:
        """radial_sweep pairs each width with rho."""
        profile = LayerProfile(1.1, 1.0, 2)
        rows = radial_sweep(profile, [1.5, 2.0])
        assert [k for k, _ in rows] == [1.5, 2.0]
        assert rows[1][1] == pytest.approx(rho(profile, 2.0))

    def test_invalid_width(self) -> None:
        """k <= 1 is not a layer."""
        with pytest.raises(PreconditionError):
            LayerProfile(1.1, 1.0, 3, k=1.0)
