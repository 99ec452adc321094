"""Entanglement measures: one-tangle, Wootters tangle, three-tangle, and the
analytic three-tangle of GHZ-symmetric three-qubit states.

The one-tangle of a bipartition A:B of a pure state is the squared
concurrence 2[1 - Tr(rho_A^2)], which equals 4 det(rho_A) when A is a single
qubit. For mixed two-qubit states the tangle is the squared Wootters
concurrence C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)), with l_i
the descending eigenvalues of rho * rho~ and rho~ = (sy x sy) rho* (sy x sy).

GHZ-symmetric three-qubit states form a triangle in the (x, y) plane with

    x = ( <GHZ+|rho|GHZ+> - <GHZ-|rho|GHZ-> ) / 2
    y = ( <GHZ+|rho|GHZ+> + <GHZ-|rho|GHZ-> - 1/4 ) / sqrt(3)

whose three-tangle vanishes outside the region cut off by the GHZ/W curve

    x_W(v) = (v^5 + 8 v^3) / (8 (4 - v^2)),
    y_W(v) = (sqrt(3)/4) (4 - v^2 - v^4) / (4 - v^2),   v in [-1, 1]

and equals ((x0 - x0_W) / (1/2 - x0_W))^2 on the GHZ side, where
(x0_W, y0_W) is where the ray from the GHZ vertex (1/2, sqrt(3)/4) through
(x0, y0) crosses the curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from tanglekit.linalg import (
    DensityMatrix,
    StateVector,
    _reduced_from_vec,
)

__all__ = [
    "GhzSymCoords",
    "one_tangle",
    "two_qubit_tangle_mixed",
    "pure_three_tangle",
    "ghz_sym_coords",
    "ghz_w_line",
    "ghz_sym_three_tangle",
]

TRIANGLE_TOP_Y = math.sqrt(3) / 4
TRIANGLE_BOTTOM_Y = -1 / (4 * math.sqrt(3))
GHZ_VERTEX = (0.5, TRIANGLE_TOP_Y)
_COORD_ATOL = 1e-9

# (sigma_y x sigma_y), real matrix
_SYSY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True)
class GhzSymCoords:
    """Point in the GHZ-symmetric (x, y) triangle."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if abs(self.x) > 0.5 + _COORD_ATOL:
            raise ValueError(f"|x| = {abs(self.x)} exceeds 1/2")
        if not (TRIANGLE_BOTTOM_Y - _COORD_ATOL <= self.y <= TRIANGLE_TOP_Y + _COORD_ATOL):
            raise ValueError(f"y = {self.y} outside [-1/(4 sqrt 3), sqrt(3)/4]")


def _one_tangle_raw(vec: np.ndarray, n: int, focus: tuple[int, ...]) -> float:
    red = _reduced_from_vec(vec, n, focus)
    if len(focus) == 1:
        det = red[0, 0] * red[1, 1] - red[0, 1] * red[1, 0]
        return float(4.0 * det.real)
    purity = float(np.trace(red @ red).real)
    return 2.0 * (1.0 - purity)


def one_tangle(psi: StateVector, focus: Iterable[int]) -> float:
    """Squared concurrence of the bipartition focus : rest of a pure state."""
    focus_t = tuple(int(q) for q in focus)
    if len(set(focus_t)) != len(focus_t):
        raise ValueError(f"focus indices must be distinct, got {focus_t}")
    if not focus_t or len(focus_t) >= psi.n_qubits:
        raise ValueError("focus must be a proper nonempty subset of the qubits")
    for q in focus_t:
        if q < 0 or q >= psi.n_qubits:
            raise ValueError(f"qubit index {q} out of range")
    return _one_tangle_raw(psi.amplitudes, psi.n_qubits, focus_t)


def _wootters_tangle_raw(rho: np.ndarray) -> float:
    """Squared Wootters concurrence of a two-qubit density matrix.

    Spectrum computed through the Hermitian product sqrt(rho) rho~ sqrt(rho),
    avoiding a general complex eigensolver. Eigenvalues below 1e-14 are
    treated as exact zeros; the square root would otherwise blow solver
    noise up to ~1e-8.
    """
    lam, v = np.linalg.eigh(rho)
    lam = np.clip(lam, 0.0, None)
    s = (v * np.sqrt(lam)) @ v.conj().T
    rho_tilde = _SYSY @ rho.conj() @ _SYSY
    m = s @ rho_tilde @ s
    m = (m + m.conj().T) / 2
    ev = np.clip(np.linalg.eigvalsh(m), 0.0, None)
    ev[ev < 1e-14] = 0.0
    ev = np.sqrt(ev)
    c = 2 * ev[-1] - ev.sum()
    c = max(0.0, float(c))
    return c * c


def two_qubit_tangle_mixed(rho: DensityMatrix) -> float:
    """Tangle (squared concurrence) of a two-qubit mixed state."""
    if rho.n_qubits != 2:
        raise ValueError(f"expected a 2-qubit state, got {rho.n_qubits} qubits")
    return _wootters_tangle_raw(rho.matrix)


def _pair_tangle_from_pure(vec: np.ndarray, n: int, qa: int, qb: int) -> float:
    """Wootters tangle of the reduced pair (qa, qb) of a pure n-qubit state.

    With rho = M M^dag for M the amplitude matrix of the (qa, qb) : rest
    split, the Wootters numbers sqrt(eig(rho rho~)) are the singular values
    of the complex symmetric matrix M^T (sy x sy) M, which is cheaper and
    better conditioned than eigendecomposing rho itself.
    """
    rest = [q for q in range(n) if q not in (qa, qb)]
    m = vec.reshape((2,) * n).transpose([qa, qb, *rest]).reshape(4, -1)
    a = m.T @ (_SYSY @ m)
    if a.shape[0] == 2:
        f = float(np.abs(a[0, 0]) ** 2 + np.abs(a[0, 1]) ** 2 + np.abs(a[1, 0]) ** 2 + np.abs(a[1, 1]) ** 2)
        d = float(abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]))
        s1 = math.sqrt(max(0.0, (f + math.sqrt(max(0.0, f * f - 4 * d * d))) / 2))
        s2 = d / s1 if s1 > 1e-150 else 0.0
        c = max(0.0, s1 - s2)
        return c * c
    sv = np.linalg.svd(a, compute_uv=False)
    c = max(0.0, float(2 * sv[0] - sv.sum()))
    return c * c


def _three_tangle_raw(vec: np.ndarray) -> float:
    """Residual tripartite entanglement tau_A(BC) - tau_AB - tau_AC of a pure
    3-qubit state. May return a tiny negative from floating-point noise."""
    t_a = _one_tangle_raw(vec, 3, (0,))
    t_ab = _pair_tangle_from_pure(vec, 3, 0, 1)
    t_ac = _pair_tangle_from_pure(vec, 3, 0, 2)
    return t_a - t_ab - t_ac


def pure_three_tangle(psi: StateVector) -> float:
    """Three-tangle of a pure 3-qubit state."""
    if psi.n_qubits != 3:
        raise ValueError(f"expected a 3-qubit state, got {psi.n_qubits} qubits")
    return _three_tangle_raw(psi.amplitudes)


_GHZ_PLUS = np.zeros(8)
_GHZ_PLUS[0] = _GHZ_PLUS[7] = 1 / math.sqrt(2)
_GHZ_MINUS = np.zeros(8)
_GHZ_MINUS[0], _GHZ_MINUS[7] = 1 / math.sqrt(2), -1 / math.sqrt(2)


def ghz_sym_coords(rho: DensityMatrix) -> GhzSymCoords:
    """(x, y) coordinates of a three-qubit state in the GHZ-symmetric plane.

    GHZ symmetry of the input is the caller's responsibility; for general
    states this returns the coordinates of the symmetrized state.
    """
    if rho.n_qubits != 3:
        raise ValueError(f"expected a 3-qubit state, got {rho.n_qubits} qubits")
    p_plus = float((_GHZ_PLUS @ rho.matrix @ _GHZ_PLUS).real)
    p_minus = float((_GHZ_MINUS @ rho.matrix @ _GHZ_MINUS).real)
    x = 0.5 * (p_plus - p_minus)
    y = (p_plus + p_minus - 0.25) / math.sqrt(3)
    return GhzSymCoords(x=x, y=y)


def ghz_w_line(v: float) -> GhzSymCoords:
    """Point on the GHZ/W boundary curve at parameter v in [-1, 1]."""
    if not -1.0 <= v <= 1.0:
        raise ValueError(f"v = {v} outside [-1, 1]")
    v2 = v * v
    x = (v2 * v2 * v + 8 * v2 * v) / (8 * (4 - v2))
    y = TRIANGLE_TOP_Y * (4 - v2 - v2 * v2) / (4 - v2)
    return GhzSymCoords(x=x, y=y)


def _in_triangle(x: float, y: float, atol: float) -> bool:
    if y > TRIANGLE_TOP_Y + atol or y < TRIANGLE_BOTTOM_Y - atol:
        return False
    # slanted edges: y >= (2/sqrt 3)|x| - 1/(4 sqrt 3)
    return y >= (2 / math.sqrt(3)) * abs(x) + TRIANGLE_BOTTOM_Y - atol


def ghz_sym_three_tangle(c: GhzSymCoords) -> float:
    """Three-tangle of the GHZ-symmetric state at coordinates ``c``.

    Zero on the far side of the GHZ/W curve from the nearest GHZ vertex;
    otherwise the squared ratio of distances along the ray from the vertex,
    ((x0 - x0_W) / (1/2 - x0_W))^2. Points with x < 0 are mirrored onto the
    GHZ- vertex by the GHZ+/GHZ- relabeling symmetry.
    """
    if not _in_triangle(c.x, c.y, _COORD_ATOL):
        raise ValueError(f"point ({c.x}, {c.y}) lies outside the GHZ-symmetric triangle")
    x, y = abs(c.x), c.y
    vx, vy = GHZ_VERTEX

    if abs(x - vx) < 1e-14 and abs(y - vy) < 1e-14:
        return 1.0  # the vertex itself; ray degenerates
    if abs(y - TRIANGLE_TOP_Y) <= 1e-12:
        # horizontal ray hits the curve at v = 0, i.e. x_W = 0
        return min(1.0, (2 * x) ** 2)

    px, py = x - vx, y - vy

    def cross(v: float) -> float:
        w = ghz_w_line(v)
        return (w.x - vx) * py - (w.y - vy) * px

    lo, hi = 0.0, 1.0
    # cross(0) = -(y - vy)/2 > 0 whenever y < top (top edge handled above)
    if cross(hi) > 0.0:
        # the v = 1 curve endpoint is collinear with the triangle's bottom
        # vertex, so interior rays only land here by rounding; intersect there
        lo = hi
    else:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if hi - lo < 1e-12:
                break
            if cross(mid) > 0.0:
                lo = mid
            else:
                hi = mid
    w = ghz_w_line(0.5 * (lo + hi))

    # ray parameter of the intersection; the input point sits at t = 1
    denom = px * px + py * py
    t_w = ((w.x - vx) * px + (w.y - vy) * py) / denom
    if t_w < 1.0 - 1e-12:
        return 0.0  # input point lies beyond the GHZ/W curve
    return min(1.0, max(0.0, ((x - w.x) / (vx - w.x)) ** 2))
