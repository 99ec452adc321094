"""Monogamy inequality evaluation for multiqubit states.

All inequalities bound the one-tangle of a focus qubit (canonically qubit 0)
against entanglement already committed to smaller subsystems:

- ``ckw``:  tau_1(rest) >= sum_j tau_1j, with exact Wootters pair tangles.
- ``wsm``:  adds, for every m in 3..n-1, the binomial-weighted average
  C(n-1, m-1)^{-1} sum over (m-1)-subsets of the m-partite residuals.
- ``mrsm``: adds the maximum over nested index chains
  j^{n-1} superset ... superset j^3 of the per-level residuals.
- ``sm``:   adds sum over subsets of residual^{mu_m} with exponents mu_m >= 1.

The m-partite residual of a pure state is the slack of the same inequality
on that state; for mixed states it is the convex roof of the pure residual,
estimated here by upper bounds. Every report tracks whether its higher-order
terms were obtained exactly (analytically, from rank-1 inputs, or from a
zero-average eigendecomposition) or only as heuristic upper bounds: a
negative slack with upper-bound terms is reported as "inconclusive", never
as a violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from tanglekit.linalg import (
    DensityMatrix,
    StateVector,
    _reduced_from_vec,
    hermitian_eig,
    permute_qubits,
)
from tanglekit.measures import (
    _GHZ_MINUS,
    _GHZ_PLUS,
    _one_tangle_raw,
    _pair_tangle_from_pure,
    _three_tangle_raw,
    ghz_sym_coords,
    ghz_sym_three_tangle,
)
from tanglekit.convexroof import RoofConfig, roof_upper_bound

__all__ = [
    "CERTIFY_TOL",
    "IndexChain",
    "InequalityReport",
    "ResidualCache",
    "chains",
    "ckw_report",
    "wsm_residual_pure",
    "mrsm_residual_pure",
    "sm_original_rhs",
    "residual_for_subsystem",
    "t1_t2",
    "binomial_identity_check",
]

CERTIFY_TOL = 1e-9
_GHZ_SYM_ATOL = 1e-8
KINDS = ("ckw", "wsm", "mrsm", "sm")


@dataclass(frozen=True)
class IndexChain:
    """Nested subset chain j^{n-1} superset ... superset j^3 over the
    non-focus qubits, one level per subsystem size from n-1 down to 3."""

    levels: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        prev: frozenset[int] | None = None
        for level in self.levels:
            if 0 in level:
                raise ValueError("chain levels must exclude the focus qubit")
            if prev is not None:
                if not level < prev or len(level) != len(prev) - 1:
                    raise ValueError("chain levels must be strictly nested, shrinking by one")
            prev = level
        if self.levels and len(self.levels[-1]) != 2:
            raise ValueError("the innermost chain level must have two indices")


def chains(n: int) -> list[IndexChain]:
    """All nested index chains for an n-qubit inequality (one empty chain
    at n = 3, where no higher-order terms exist)."""
    if n < 3:
        raise ValueError(f"chains need n >= 3, got {n}")
    rest = tuple(range(1, n))

    def descend(pool: tuple[int, ...], size: int):
        if size < 2:
            yield ()
            return
        for subset in combinations(pool, size):
            for tail in descend(subset, size - 1):
                yield (frozenset(subset),) + tail

    return [IndexChain(levels) for levels in descend(rest, n - 2)]


@dataclass(frozen=True)
class InequalityReport:
    """Evaluation of one monogamy inequality on one pure state."""

    inequality: str
    focus: int
    lhs: float
    pair_sum: float
    higher_term: float
    slack: float
    breakdown: dict[str, float]
    higher_is_exact: bool
    status: str  # certified | inconclusive | violated

    @property
    def residual(self) -> float:
        """The slack doubles as the residual entanglement of the state."""
        return self.slack


class ResidualCache:
    """Memo for subsystem residuals within one report evaluation.

    Keys are (kind-key, qubit index tuple); repeated queries return the
    identical (value, exact) pair.
    """

    def __init__(self) -> None:
        self._store: dict = {}

    def get_or_compute(self, key, compute: Callable[[], tuple[float, bool]]):
        if key not in self._store:
            self._store[key] = compute()
        return self._store[key]

    def __len__(self) -> int:
        return len(self._store)


def binomial_identity_check(n: int, m: int) -> bool:
    """Exact integer check of (n-1) C(n-2, m-1) = (n-m) C(n-1, m-1)."""
    if not 3 <= m <= n - 1:
        raise ValueError(f"need 3 <= m <= n-1, got m={m}, n={n}")
    return (n - 1) * math.comb(n - 2, m - 1) == (n - m) * math.comb(n - 1, m - 1)


def t1_t2(three_tangles: Sequence[float]) -> tuple[float, float]:
    """Tightness indicators of a four-qubit comparison: the maximum of the
    three reduced three-tangles, and the sum of their 3/2 powers."""
    vals = [float(v) for v in three_tangles]
    if len(vals) != 3:
        raise ValueError("expected exactly three three-tangle values")
    for v in vals:
        if not -1e-12 <= v <= 1 + 1e-12:
            raise ValueError(f"three-tangle {v} outside [0, 1]")
    t1 = max(vals)
    t2 = sum(max(0.0, v) ** 1.5 for v in vals)
    return t1, t2


# -- residual engine ---------------------------------------------------------


def _roof_budget(cfg: RoofConfig, depth: int, size: int) -> RoofConfig:
    """Budget policy for nested roof searches.

    Depth counts enclosing roof optimizations. Searches over subsystems of
    four or more qubits evaluate nested roofs inside their functional, so
    they are always capped; at depth >= 2 only the eigendecomposition and
    the rank-2 phase scan are used (no Givens proposals).
    """
    if size >= 4:
        if depth >= 2:
            return replace(cfg, restarts=0, iterations=0)
        return replace(
            cfg,
            restarts=max(1, cfg.restarts // 6),
            iterations=max(80, cfg.iterations // 8),
        )
    if depth <= 0:
        return cfg
    if depth == 1:
        return replace(
            cfg,
            restarts=min(max(2, cfg.restarts // 4), 4),
            iterations=min(max(100, cfg.iterations // 4), 200),
        )
    return replace(cfg, restarts=0, iterations=0)


def _is_ghz_symmetric(mat: np.ndarray, atol: float = _GHZ_SYM_ATOL) -> bool:
    """True when the 3-qubit state equals its GHZ-symmetry twirl."""
    p_plus = float((_GHZ_PLUS @ mat @ _GHZ_PLUS).real)
    p_minus = float((_GHZ_MINUS @ mat @ _GHZ_MINUS).real)
    twirl = p_plus * np.outer(_GHZ_PLUS, _GHZ_PLUS) + p_minus * np.outer(_GHZ_MINUS, _GHZ_MINUS)
    rest = np.eye(8) - np.outer(_GHZ_PLUS, _GHZ_PLUS) - np.outer(_GHZ_MINUS, _GHZ_MINUS)
    twirl = twirl + (1.0 - p_plus - p_minus) / 6.0 * rest
    return bool(np.max(np.abs(mat - twirl)) <= atol)


def _chain_kind_key(kind: str, mu: tuple[float, ...] | None):
    return (kind, mu) if kind == "sm" else kind


def _mu_for(mu: tuple[float, ...] | None, m: int) -> float:
    # mu is indexed by subsystem size m = 3 .. n-1
    return mu[m - 3] if mu is not None else 1.0


def _higher_term_pure(
    vec: np.ndarray,
    n: int,
    kind: str,
    mu: tuple[float, ...] | None,
    cfg: RoofConfig,
    depth: int,
    cache: ResidualCache,
) -> tuple[float, bool, dict[str, float]]:
    """Higher-order (m >= 3) term of one inequality on a pure state."""
    if kind == "ckw" or n == 3:
        return 0.0, True, {}

    def subsystem(idx: tuple[int, ...]) -> tuple[float, bool]:
        key = (_chain_kind_key(kind, mu) if len(idx) > 3 else "tangle3", idx)
        return cache.get_or_compute(
            key,
            lambda: _mixed_residual(
                _reduced_from_vec(vec, n, idx), len(idx), kind, mu, cfg, depth
            ),
        )

    breakdown: dict[str, float] = {}
    exact = True
    if kind in ("wsm", "sm"):
        total = 0.0
        for m in range(3, n):
            coeff = 1.0 / math.comb(n - 1, m - 1) if kind == "wsm" else 1.0
            expo = _mu_for(mu, m) if kind == "sm" else 1.0
            for subset in combinations(range(1, n), m - 1):
                idx = (0,) + subset
                v, e = subsystem(idx)
                exact = exact and e
                breakdown["tau_" + "".join(map(str, idx))] = v
                total += coeff * (v**expo if kind == "sm" else v)
        return total, exact, breakdown

    # mrsm: maximum over nested chains of the per-level residual sums
    best = -math.inf
    for chain in chains(n):
        total = 0.0
        for level in chain.levels:
            idx = (0,) + tuple(sorted(level))
            v, e = subsystem(idx)
            exact = exact and e
            breakdown["tau_" + "".join(map(str, idx))] = v
            total += v
        label = "chain_" + ">".join("".join(map(str, sorted(l))) for l in chain.levels)
        breakdown[label] = total
        best = max(best, total)
    return best, exact, breakdown


def _pure_residual(
    vec: np.ndarray,
    n: int,
    kind: str,
    mu: tuple[float, ...] | None,
    cfg: RoofConfig,
    depth: int,
) -> tuple[float, bool]:
    """Residual (slack) of the inequality on a pure state; exact flag is
    False when any higher-order term is only an upper bound."""
    if n == 3:
        return _three_tangle_raw(vec), True
    lhs = _one_tangle_raw(vec, n, (0,))
    pair_sum = sum(_pair_tangle_from_pure(vec, n, 0, j) for j in range(1, n))
    higher, exact, _ = _higher_term_pure(vec, n, kind, mu, cfg, depth, ResidualCache())
    return lhs - pair_sum - higher, exact


def _eig_states(mat: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
    eig = hermitian_eig(mat)
    lam = eig.eigenvalues
    keep = lam > 1e-10
    vecs = [np.ascontiguousarray(eig.eigenvectors[:, i]) for i in np.nonzero(keep)[0]]
    return lam[keep], vecs


def _subtraction_bound(
    mat: np.ndarray,
    s: int,
    kind: str,
    mu: tuple[float, ...] | None,
    cfg: RoofConfig,
    depth: int,
) -> float | None:
    """Upper bound on the mixed residual: roof of the one-tangle minus the
    mixed pair tangles and the mixed inner residuals of the reduced states.

    Valid only when every subtracted inner term is exact (subtracting an
    upper bound would break the bound direction); returns None otherwise.
    """
    from tanglekit.measures import _wootters_tangle_raw

    inner_cache = ResidualCache()

    def inner(idx: tuple[int, ...]) -> tuple[float, bool]:
        key = (_chain_kind_key(kind, mu) if len(idx) > 3 else "tangle3", idx)
        return inner_cache.get_or_compute(
            key,
            lambda: _mixed_residual(
                _partial_trace_mat(mat, s, idx), len(idx), kind, mu, cfg, depth + 1
            ),
        )

    # higher term of the inequality, evaluated on the mixed state itself
    if kind in ("wsm", "sm"):
        total = 0.0
        for m in range(3, s):
            coeff = 1.0 / math.comb(s - 1, m - 1) if kind == "wsm" else 1.0
            expo = _mu_for(mu, m) if kind == "sm" else 1.0
            for subset in combinations(range(1, s), m - 1):
                v, e = inner((0,) + subset)
                if not e:
                    return None
                total += coeff * (v**expo if kind == "sm" else v)
        higher = total
    else:
        higher = -math.inf
        for chain in chains(s):
            total = 0.0
            for level in chain.levels:
                v, e = inner((0,) + tuple(sorted(level)))
                if not e:
                    return None
                total += v
            higher = max(higher, total)

    pair_sum = 0.0
    for j in range(1, s):
        pair_sum += _wootters_tangle_raw(_partial_trace_mat(mat, s, (0, j)))

    lhs_roof = roof_upper_bound(
        DensityMatrix(mat),
        lambda v: _one_tangle_raw(v, s, (0,)),
        _roof_budget(cfg, depth, 3),
    ).value
    return lhs_roof - pair_sum - higher


def _partial_trace_mat(mat: np.ndarray, n: int, keep: tuple[int, ...]) -> np.ndarray:
    traced = [q for q in range(n) if q not in keep]
    dk, dt = 2 ** len(keep), 2 ** len(traced)
    t = mat.reshape((2,) * (2 * n))
    order = [*keep, *traced, *(n + q for q in keep), *(n + q for q in traced)]
    return np.trace(t.transpose(order).reshape(dk, dt, dk, dt), axis1=1, axis2=3)


def _mixed_residual(
    mat: np.ndarray,
    s: int,
    kind: str,
    mu: tuple[float, ...] | None,
    cfg: RoofConfig,
    depth: int,
) -> tuple[float, bool]:
    """Residual of a mixed s-qubit subsystem: exact where an analytic or
    rank-1 path applies, otherwise the tightest available upper bound."""
    lam, vecs = _eig_states(mat)

    if len(vecs) == 1:
        value, exact = _pure_residual(vecs[0], s, kind, mu, cfg, depth)
        return max(0.0, value), exact

    if s == 3 and _is_ghz_symmetric(mat):
        value = ghz_sym_three_tangle(ghz_sym_coords(DensityMatrix(mat)))
        return value, True

    def f_value(v: np.ndarray) -> float:
        return _pure_residual(v, s, kind, mu, cfg, depth + 1)[0]

    baseline = 0.0
    baseline_exact = True
    for w, v in zip(lam, vecs):
        val, e = _pure_residual(v, s, kind, mu, cfg, depth + 1)
        baseline += w * max(0.0, val)
        baseline_exact = baseline_exact and e
    if baseline <= cfg.tol and baseline_exact:
        return max(0.0, baseline), True

    best = baseline
    est = roof_upper_bound(DensityMatrix(mat), f_value, _roof_budget(cfg, depth, s))
    best = min(best, est.value)

    if s >= 4:
        sub = _subtraction_bound(mat, s, kind, mu, cfg, depth)
        if sub is not None:
            best = min(best, sub)

    best = max(0.0, best)
    if best <= cfg.tol and baseline_exact:
        return best, True
    return best, False


# -- public operations -------------------------------------------------------


def _focused_amplitudes(psi: StateVector, focus: int) -> np.ndarray:
    if not 0 <= focus < psi.n_qubits:
        raise ValueError(f"focus qubit {focus} out of range")
    if focus == 0:
        return psi.amplitudes
    perm = [focus] + [q for q in range(psi.n_qubits) if q != focus]
    return permute_qubits(psi, perm).amplitudes


def _status(slack: float, higher_exact: bool) -> str:
    if slack >= -CERTIFY_TOL:
        return "certified"
    return "violated" if higher_exact else "inconclusive"


def _build_report(
    psi: StateVector,
    kind: str,
    focus: int,
    mu: tuple[float, ...] | None,
    cfg: RoofConfig | None,
    cache: ResidualCache | None,
) -> InequalityReport:
    if psi.n_qubits < 3:
        raise ValueError("monogamy reports need at least 3 qubits")
    cfg = cfg or RoofConfig()
    cache = cache if cache is not None else ResidualCache()
    vec = _focused_amplitudes(psi, focus)
    n = psi.n_qubits

    lhs = _one_tangle_raw(vec, n, (0,))
    breakdown: dict[str, float] = {}
    pair_sum = 0.0
    for j in range(1, n):
        t = _pair_tangle_from_pure(vec, n, 0, j)
        breakdown[f"pair_0{j}"] = t
        pair_sum += t

    higher, exact, hterms = _higher_term_pure(vec, n, kind, mu, cfg, 0, cache)
    breakdown.update(hterms)
    slack = lhs - pair_sum - higher
    return InequalityReport(
        inequality=kind,
        focus=focus,
        lhs=lhs,
        pair_sum=pair_sum,
        higher_term=higher,
        slack=slack,
        breakdown=breakdown,
        higher_is_exact=exact,
        status=_status(slack, exact),
    )


def ckw_report(psi: StateVector, focus: int = 0) -> InequalityReport:
    """Pairwise monogamy report: one-tangle against the exact pair tangles."""
    return _build_report(psi, "ckw", focus, None, None, None)


def wsm_residual_pure(
    psi: StateVector,
    focus: int = 0,
    cfg: RoofConfig | None = None,
    cache: ResidualCache | None = None,
) -> tuple[float, InequalityReport]:
    """Residual of the binomial-weighted inequality on a pure state."""
    report = _build_report(psi, "wsm", focus, None, cfg, cache)
    return report.slack, report


def mrsm_residual_pure(
    psi: StateVector,
    focus: int = 0,
    cfg: RoofConfig | None = None,
    cache: ResidualCache | None = None,
) -> tuple[float, InequalityReport]:
    """Residual of the maximum-chain inequality on a pure state; vanishes
    on every separable (product) state."""
    report = _build_report(psi, "mrsm", focus, None, cfg, cache)
    return report.slack, report


def sm_original_rhs(
    psi: StateVector,
    mu: Sequence[float] | None = None,
    focus: int = 0,
    cfg: RoofConfig | None = None,
    cache: ResidualCache | None = None,
) -> InequalityReport:
    """Report for the exponent-weighted strong-monogamy inequality.

    ``mu`` lists the exponents for subsystem sizes m = 3 .. n-1; the
    four-qubit default is (3/2,).
    """
    n = psi.n_qubits
    if mu is None:
        mu_t = tuple(1.5 for _ in range(max(0, n - 3)))
    else:
        mu_t = tuple(float(x) for x in mu)
        if len(mu_t) != max(0, n - 3):
            raise ValueError(f"expected {max(0, n - 3)} exponents for n={n}, got {len(mu_t)}")
        if any(x < 1.0 for x in mu_t):
            raise ValueError("exponents must be >= 1")
    return _build_report(psi, "sm", focus, mu_t, cfg, cache)


def residual_for_subsystem(
    rho: DensityMatrix,
    kind: str,
    cfg: RoofConfig | None = None,
    mu: Sequence[float] | None = None,
) -> tuple[float, str]:
    """Residual entanglement of a mixed subsystem of >= 3 qubits.

    Returns (value, status) with status "exact" for analytic / rank-1 /
    zero-average evaluations and "upper_bound" for heuristic roof output.
    """
    if kind not in ("wsm", "mrsm", "sm"):
        raise ValueError(f"kind must be wsm, mrsm or sm, got {kind!r}")
    if rho.n_qubits < 3:
        raise ValueError("subsystem residuals need at least 3 qubits")
    cfg = cfg or RoofConfig()
    mu_t = tuple(float(x) for x in mu) if mu is not None else None
    value, exact = _mixed_residual(rho.matrix, rho.n_qubits, kind, mu_t, cfg, 0)
    return value, ("exact" if exact else "upper_bound")
