"""Tests for entanglement measures."""

import math

import numpy as np
import pytest

from tanglekit.linalg import (
    DensityMatrix,
    StateVector,
    haar_random_pure,
    permute_qubits,
    reduced_density,
)
from tanglekit.measures import (
    GhzSymCoords,
    ghz_sym_coords,
    ghz_sym_three_tangle,
    ghz_w_line,
    one_tangle,
    pure_three_tangle,
    two_qubit_tangle_mixed,
)

SQ2 = math.sqrt(2)
SQ3 = math.sqrt(3)


def ghz_state(n):
    amps = np.zeros(2**n)
    amps[0] = amps[-1] = 1 / SQ2
    return StateVector(amps)


def w_state():
    amps = np.zeros(8)
    amps[1] = amps[2] = amps[4] = 1 / SQ3
    return StateVector(amps)


def hyperdeterminant_three_tangle(vec):
    """Cayley hyperdeterminant oracle: tau3 = 4 |d1 - 2 d2 + 4 d3|."""
    a = vec  # index bits q0 q1 q2
    d1 = (
        a[0] ** 2 * a[7] ** 2
        + a[1] ** 2 * a[6] ** 2
        + a[2] ** 2 * a[5] ** 2
        + a[4] ** 2 * a[3] ** 2
    )
    d2 = (
        a[0] * a[7] * a[3] * a[4]
        + a[0] * a[7] * a[5] * a[2]
        + a[0] * a[7] * a[6] * a[1]
        + a[3] * a[4] * a[5] * a[2]
        + a[3] * a[4] * a[6] * a[1]
        + a[5] * a[2] * a[6] * a[1]
    )
    d3 = a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4]
    return float(4 * abs(d1 - 2 * d2 + 4 * d3))


class TestOneTangle:
    def test_ghz4_single_qubit(self):
        assert abs(one_tangle(ghz_state(4), [0]) - 1.0) < 1e-12

    def test_product_state(self):
        amps = np.zeros(16)
        amps[0] = 1.0
        assert abs(one_tangle(StateVector(amps), [0])) < 1e-12

    def test_w_state_single_qubit(self):
        assert abs(one_tangle(w_state(), [0]) - 8 / 9) < 1e-12

    def test_complement_symmetry(self):
        psi = haar_random_pure(4, seed=0)
        t_a = one_tangle(psi, [0, 2])
        t_b = one_tangle(psi, [1, 3])
        assert abs(t_a - t_b) < 1e-10

    def test_range_for_larger_partition(self):
        psi = haar_random_pure(4, seed=1)
        t = one_tangle(psi, [0, 1])
        assert -1e-12 <= t <= 2 * (1 - 1 / 4) + 1e-12

    def test_rejects_improper_focus(self):
        psi = haar_random_pure(3, seed=2)
        with pytest.raises(ValueError):
            one_tangle(psi, [])
        with pytest.raises(ValueError):
            one_tangle(psi, [0, 1, 2])


class TestWoottersTangle:
    def test_bell_state(self):
        bell = StateVector(np.array([1, 0, 0, 1]) / SQ2)
        assert abs(two_qubit_tangle_mixed(bell.density()) - 1.0) < 1e-12

    def test_separable_mixture(self):
        rho = np.zeros((4, 4))
        rho[0, 0] = rho[3, 3] = 0.5
        assert two_qubit_tangle_mixed(DensityMatrix(rho)) == 0.0

    def test_werner_state_against_analytic_spectrum(self):
        # rho = w |Phi+><Phi+| + (1-w) I/4 has concurrence max(0, (3w-1)/2)
        bell = np.array([1, 0, 0, 1]) / SQ2
        proj = np.outer(bell, bell)
        for w in (0.2, 1 / 3, 2 / 3, 0.9):
            rho = DensityMatrix(w * proj + (1 - w) * np.eye(4) / 4)
            want = max(0.0, (3 * w - 1) / 2) ** 2
            assert abs(two_qubit_tangle_mixed(rho) - want) < 1e-12

    def test_matches_one_tangle_on_pure_states(self):
        for seed in range(5):
            psi = haar_random_pure(2, seed=seed)
            assert abs(two_qubit_tangle_mixed(psi.density()) - one_tangle(psi, [0])) < 1e-9

    def test_convex_in_the_state(self):
        rng = np.random.default_rng(3)
        for seed in range(10):
            r1 = haar_random_pure(2, seed=100 + seed).density().matrix
            r2 = haar_random_pure(2, seed=200 + seed).density().matrix
            t = rng.random()
            mix = DensityMatrix(t * r1 + (1 - t) * r2)
            lhs = two_qubit_tangle_mixed(mix)
            rhs = t * two_qubit_tangle_mixed(DensityMatrix(r1)) + (1 - t) * two_qubit_tangle_mixed(
                DensityMatrix(r2)
            )
            assert lhs <= rhs + 1e-9

    def test_rejects_wrong_dimension(self):
        with pytest.raises(ValueError):
            two_qubit_tangle_mixed(haar_random_pure(3, seed=4).density())


class TestThreeTangle:
    def test_ghz3_is_one(self):
        assert abs(pure_three_tangle(ghz_state(3)) - 1.0) < 1e-12

    def test_w_state_is_zero(self):
        assert abs(pure_three_tangle(w_state())) < 1e-12

    def test_product_with_bell_is_zero(self):
        amps = np.zeros(8)
        amps[0] = amps[3] = 1 / SQ2  # |0> x Bell on qubits 1,2
        assert abs(pure_three_tangle(StateVector(amps))) < 1e-12

    def test_permutation_invariance(self):
        psi = haar_random_pure(3, seed=5)
        base = pure_three_tangle(psi)
        for perm in ([0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]):
            assert abs(pure_three_tangle(permute_qubits(psi, perm)) - base) < 1e-9

    def test_matches_hyperdeterminant_oracle(self):
        for seed in range(20):
            psi = haar_random_pure(3, seed=seed)
            want = hyperdeterminant_three_tangle(psi.amplitudes)
            assert abs(pure_three_tangle(psi) - want) < 1e-9

    def test_ckw_inequality_at_three_qubits(self):
        for seed in range(50):
            psi = haar_random_pure(3, seed=seed)
            lhs = one_tangle(psi, [0])
            rhs = two_qubit_tangle_mixed(reduced_density(psi, [0, 1])) + two_qubit_tangle_mixed(
                reduced_density(psi, [0, 2])
            )
            assert lhs >= rhs - 1e-9


class TestGhzSymCoords:
    def test_ghz_plus_vertex(self):
        c = ghz_sym_coords(ghz_state(3).density())
        assert abs(c.x - 0.5) < 1e-12
        assert abs(c.y - SQ3 / 4) < 1e-12

    def test_maximally_mixed_origin(self):
        c = ghz_sym_coords(DensityMatrix(np.eye(8) / 8))
        assert abs(c.x) < 1e-12 and abs(c.y) < 1e-12

    def test_ghz_diagonal_mixture(self):
        # (1-p)/2 (|000><000| + |111><111|) + p |GHZ+><GHZ+| -> (p/2, sqrt3/4)
        for p in (0.0, 0.3, 1.0):
            rho = np.zeros((8, 8))
            rho[0, 0] = rho[7, 7] = 0.5
            rho[0, 7] = rho[7, 0] = p / 2
            c = ghz_sym_coords(DensityMatrix(rho))
            assert abs(c.x - p / 2) < 1e-12
            assert abs(c.y - SQ3 / 4) < 1e-12

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError):
            ghz_sym_coords(DensityMatrix(np.eye(4) / 4))

    def test_coords_validation(self):
        with pytest.raises(ValueError):
            GhzSymCoords(x=0.6, y=0.0)
        with pytest.raises(ValueError):
            GhzSymCoords(x=0.0, y=0.5)


class TestGhzWLine:
    def test_v_zero(self):
        c = ghz_w_line(0.0)
        assert abs(c.x) < 1e-15 and abs(c.y - SQ3 / 4) < 1e-15

    def test_v_one(self):
        c = ghz_w_line(1.0)
        assert abs(c.x - 3 / 8) < 1e-15
        assert abs(c.y - SQ3 / 6) < 1e-15

    def test_odd_even_symmetry(self):
        plus, minus = ghz_w_line(0.7), ghz_w_line(-0.7)
        assert abs(plus.x + minus.x) < 1e-15
        assert abs(plus.y - minus.y) < 1e-15

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ghz_w_line(1.5)


class TestGhzSymThreeTangle:
    def test_vertex_is_one(self):
        assert ghz_sym_three_tangle(GhzSymCoords(0.5, SQ3 / 4)) == 1.0

    def test_top_edge_is_quadratic(self):
        for p in np.linspace(0, 1, 21):
            got = ghz_sym_three_tangle(GhzSymCoords(p / 2, SQ3 / 4))
            assert abs(got - p * p) < 1e-12

    def test_origin_is_zero(self):
        assert ghz_sym_three_tangle(GhzSymCoords(0.0, 0.0)) == 0.0

    def test_zero_on_the_curve(self):
        for v in (0.2, 0.5, 0.9):
            c = ghz_w_line(v)
            assert ghz_sym_three_tangle(c) < 1e-6

    def test_positive_towards_vertex(self):
        # midpoints between curve and vertex are strictly inside the GHZ region
        for v in (0.3, 0.8):
            w = ghz_w_line(v)
            mid = GhzSymCoords((w.x + 0.5) / 2, (w.y + SQ3 / 4) / 2)
            assert ghz_sym_three_tangle(mid) > 1e-3

    def test_mirror_symmetry(self):
        for x, y in ((0.3, 0.4), (0.1, 0.2), (0.45, 0.42)):
            a = ghz_sym_three_tangle(GhzSymCoords(x, y))
            b = ghz_sym_three_tangle(GhzSymCoords(-x, y))
            assert abs(a - b) < 1e-12

    def test_rejects_outside_triangle(self):
        with pytest.raises(ValueError):
            ghz_sym_three_tangle(GhzSymCoords(0.4, -0.1))

    def test_continuity_across_the_curve(self):
        w = ghz_w_line(0.6)
        # points slightly inside/outside along the ray from the vertex
        vx, vy = 0.5, SQ3 / 4
        dx, dy = w.x - vx, w.y - vy
        inside = GhzSymCoords(vx + 0.999 * dx, vy + 0.999 * dy)
        outside = GhzSymCoords(vx + 1.001 * dx, vy + 1.001 * dy)
        assert ghz_sym_three_tangle(inside) < 1e-4
        assert ghz_sym_three_tangle(outside) == 0.0
