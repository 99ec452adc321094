"""Reference state families: GHZ states, the nine four-qubit SLOCC normal
forms, their reduced three-tangle bounds, and the rank-2 GHZ-mixture
families (four- and five-qubit) with their analytic entanglement curves.

The four-qubit mixed family is

    rho(p) = (1 - p) |GHZ4><GHZ4| + p |GHZ3><GHZ3| x |-><-|,

with |-> = (|0> - |1>)/sqrt(2) on the last qubit. Its one-tangle roof is
1 - 2p + 2p^2, the reduced three-tangle on the first three qubits is p^2,
and the four-partite residual is (1 - p)^2. The five-qubit purification

    |Psi(p)> = sqrt(1-p) |GHZ4>|0> + sqrt(p) |GHZ3>|->|1>

reduces on qubits 0-3 exactly to rho(p); its five-partite residual is
1 - max{(1-p)^2, 2p(1-p)} - p^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from tanglekit.linalg import DensityMatrix, StateVector, kron

__all__ = [
    "NormalFormParams",
    "SlocOps",
    "ghz",
    "normal_form",
    "apply_slocc",
    "three_tangle_bound",
    "ghz_mixture",
    "ghz_superposition",
    "five_qubit_family",
    "analytic_curves",
]

SQ2 = math.sqrt(2)

FAMILIES = ("G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8", "G9")
BOUNDED_FAMILIES = ("G2", "G3", "G4", "G5")
TRIPLES = ("q1q2q3", "q1q2q4", "q1q3q4")


@dataclass(frozen=True)
class NormalFormParams:
    """Parameters of one of the nine four-qubit normal-form families G1..G9.

    Entries unused by the chosen family are ignored; used entries must have
    nonnegative real part.
    """

    family: str
    a: complex = 0.0
    b: complex = 0.0
    c: complex = 0.0
    d: complex = 0.0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        for name in self._used():
            if complex(getattr(self, name)).real < 0:
                raise ValueError(f"parameter {name} must have nonnegative real part")

    def _used(self) -> tuple[str, ...]:
        return {
            "G1": ("a", "b", "c", "d"),
            "G2": ("a", "b", "c"),
            "G3": ("a", "b"),
            "G4": ("a", "b"),
            "G5": ("a",),
            "G6": ("a",),
            "G7": (),
            "G8": (),
            "G9": (),
        }[self.family]


@dataclass(frozen=True)
class SlocOps:
    """One determinant-one 2x2 operator per qubit of a four-qubit state."""

    ops: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]

    def __init__(self, ops) -> None:
        ops = tuple(np.asarray(o, dtype=complex) for o in ops)
        if len(ops) != 4 or any(o.shape != (2, 2) for o in ops):
            raise ValueError("expected four 2x2 operators")
        for i, o in enumerate(ops):
            det = o[0, 0] * o[1, 1] - o[0, 1] * o[1, 0]
            if abs(det - 1.0) > 1e-10:
                raise ValueError(f"operator {i} has det {det}, expected 1 within 1e-10")
        object.__setattr__(self, "ops", ops)


def ghz(n: int) -> StateVector:
    """(|0...0> + |1...1>)/sqrt(2) on n >= 2 qubits."""
    if n < 2:
        raise ValueError(f"GHZ state needs at least 2 qubits, got {n}")
    amps = np.zeros(2**n)
    amps[0] = amps[-1] = 1 / SQ2
    return StateVector(amps)


def _basis16(bits: str) -> int:
    return int(bits, 2)


def normal_form(p: NormalFormParams) -> StateVector:
    """Normalized representative of the normal-form family at parameters p."""
    a, b, c, d = (complex(p.a), complex(p.b), complex(p.c), complex(p.d))
    v = np.zeros(16, dtype=complex)

    def put(coeff: complex, *kets: str) -> None:
        for bits in kets:
            v[_basis16(bits)] += coeff

    fam = p.family
    if fam == "G1":
        put((a + d) / 2, "0000", "1111")
        put((a - d) / 2, "0011", "1100")
        put((b + c) / 2, "0101", "1010")
        put((b - c) / 2, "0110", "1001")
    elif fam == "G2":
        put((a + b) / 2, "0000", "1111")
        put((a - b) / 2, "0011", "1100")
        put(c, "0101", "1010")
        put(1, "0110")
    elif fam == "G3":
        put(a, "0000", "1111")
        put(b, "0101", "1010")
        put(1, "0110", "0011")
    elif fam == "G4":
        put(a, "0000", "1111")
        put((a + b) / 2, "0101", "1010")
        put((a - b) / 2, "0110", "1001")
        put(1j / SQ2, "0001", "0010", "0111", "1011")
    elif fam == "G5":
        put(a, "0000", "0101", "1010", "1111")
        put(1j, "0001")
        put(1, "0110")
        put(-1j, "1011")
    elif fam == "G6":
        put(a, "0000", "1111")
        put(1, "0011", "0101", "0110")
    elif fam == "G7":
        put(1, "0000", "0101", "1000", "1110")
    elif fam == "G8":
        put(1, "0000", "1011", "1101", "1110")
    else:  # G9
        put(1, "0000", "0111")

    norm = np.linalg.norm(v)
    if norm < 1e-12:
        raise ValueError(f"family {fam} parameters give the zero vector")
    return StateVector(v / norm)


def apply_slocc(psi: StateVector, ops: SlocOps) -> StateVector:
    """Apply A1 x A2 x A3 x A4 to a four-qubit state and renormalize."""
    if psi.n_qubits != 4:
        raise ValueError(f"expected a 4-qubit state, got {psi.n_qubits} qubits")
    op = ops.ops[0]
    for o in ops.ops[1:]:
        op = kron(op, o)
    image = op @ psi.amplitudes
    norm = np.linalg.norm(image)
    if norm < 1e-12:
        raise ValueError("SLOCC image is the zero vector")
    return StateVector(image / norm)


def three_tangle_bound(p: NormalFormParams, triple: str) -> float:
    """Upper bound on the reduced three-tangle of a normal-form state.

    Bounds exist for families G2-G5 and the three q1-anchored qubit triples;
    for G3 the q1q2q3 and q1q3q4 three-tangles vanish identically.
    """
    if triple not in TRIPLES:
        raise ValueError(f"unknown triple {triple!r}, expected one of {TRIPLES}")
    if p.family not in BOUNDED_FAMILIES:
        raise ValueError(f"no three-tangle bound available for family {p.family}")
    a, b, c = complex(p.a), complex(p.b), complex(p.c)
    aa, bb, cc = abs(a), abs(b), abs(c)
    if p.family == "G2":
        return 4 * cc * abs(a * a - b * b) / (aa * aa + bb * bb + 2 * cc * cc + 1) ** 2
    if p.family == "G3":
        if triple in ("q1q2q3", "q1q3q4"):
            return 0.0
        return 4 * aa * bb / (1 + aa * aa + bb * bb) ** 2
    if p.family == "G4":
        return 2 * abs(a * a - b * b) / (2 + 3 * aa * aa + bb * bb) ** 2
    # G5
    if triple in ("q1q2q3", "q1q3q4"):
        return 16 * aa * aa / (3 + 4 * aa * aa) ** 2
    return 4 / (3 + 4 * aa * aa) ** 2


_MINUS = np.array([1, -1]) / SQ2


def ghz_mixture(p: float) -> DensityMatrix:
    """(1-p) |GHZ4><GHZ4| + p |GHZ3><GHZ3| x |-><-| on four qubits."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p = {p} outside [0, 1]")
    g4 = ghz(4).amplitudes
    g3m = np.kron(ghz(3).amplitudes, _MINUS)
    return DensityMatrix((1 - p) * np.outer(g4, g4.conj()) + p * np.outer(g3m, g3m.conj()))


def ghz_superposition(p: float, phi: float) -> StateVector:
    """sqrt(1-p)|GHZ4> + sqrt(p) e^{i phi} |GHZ3>|->, the pure rank-2 family.

    Its one-tangle of qubit 0 versus the rest is 1 - p(1-p)(1 + cos 2 phi).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p = {p} outside [0, 1]")
    g4 = ghz(4).amplitudes
    g3m = np.kron(ghz(3).amplitudes, _MINUS)
    return StateVector(math.sqrt(1 - p) * g4 + math.sqrt(p) * np.exp(1j * phi) * g3m)


def five_qubit_family(p: float) -> StateVector:
    """sqrt(1-p)|GHZ4>|0> + sqrt(p)|GHZ3>|->|1> on five qubits.

    Tracing out the last qubit reproduces ghz_mixture(p) exactly, and the
    one-tangle of qubit 0 versus the rest equals 1 for every p.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p = {p} outside [0, 1]")
    zero = np.array([1.0, 0.0])
    one = np.array([0.0, 1.0])
    g4 = np.kron(ghz(4).amplitudes, zero)
    g3m = np.kron(np.kron(ghz(3).amplitudes, _MINUS), one)
    return StateVector(math.sqrt(1 - p) * g4 + math.sqrt(p) * g3m)


def analytic_curves(which: str, p: float) -> dict[str, float]:
    """Closed-form entanglement components of the two rank-2 families.

    ``which = "ghz_mixture"``: one-tangle roof tau_A_BCD = 1 - 2p + 2p^2,
    reduced three-tangle tau_ABC = p^2, four-partite residual
    tau_ABCD = (1-p)^2.

    ``which = "five_qubit"``: tau_123 = p^2, tau_1234 = (1-p)^2,
    tau_1235 = 2p(1-p), tau4max = max of the two four-partite values, and
    tau_12345 = 1 - tau4max - p^2.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p = {p} outside [0, 1]")
    if which == "ghz_mixture":
        return {
            "tau_A_BCD": 1 - 2 * p + 2 * p * p,
            "tau_ABC": p * p,
            "tau_ABCD": (1 - p) ** 2,
        }
    if which == "five_qubit":
        t1234 = (1 - p) ** 2
        t1235 = 2 * p * (1 - p)
        t4 = max(t1234, t1235)
        return {
            "tau_123": p * p,
            "tau_1234": t1234,
            "tau_1235": t1235,
            "tau4max": t4,
            "tau_12345": 1 - t4 - p * p,
        }
    raise ValueError(f"unknown curve family {which!r}")
