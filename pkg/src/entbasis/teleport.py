"""Teleportation of one qubit through an arbitrary orthonormal entangled basis.

Qubit order is (target, Alice, Bob).  The sender holds the payload on the
target qubit and shares ``|V_i>`` on (Alice, Bob).  Expanding

    |psi> (x) |V_i> = sum_k |V_k> (x) (g'_1k |0> + g'_2k |1>)

gives ``g'_k = (conj(A_k) A_i)^T g``.  Measuring ``|V_k>`` on (target, Alice)
leaves Bob with ``g'_k`` (unnormalised), which the inverse of that product
matrix undoes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .basis import EntangledBasis, QubitState, require_valid
from .linalg import SINGULAR_TOL, det2, inverse2, polar_unitary

PROB_FLOOR = 1e-15
MODES = ("exact", "unitary")


class UnnormalizedInput(ValueError):
    pass


class SingularCorrection(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Branch:
    k: int
    gamma_prime: np.ndarray
    probability: float


@dataclass(frozen=True, eq=False)
class CorrectionMap:
    exact: np.ndarray
    unitary: np.ndarray
    # ||exact||_F / ||unitary||_F; 1 only when the exact map is itself unitary
    scale: float


@dataclass(frozen=True, eq=False)
class TeleportRun:
    basis_name: str
    basis_params: dict
    sender_index: int
    input: QubitState
    mode: str
    branches: list[Branch]
    corrections: list[CorrectionMap]
    fidelity_exact: list[float | None]
    fidelity_unitary: list[float | None]
    shots: int
    seed: int
    counts: list[int]

    def to_dict(self) -> dict:
        return {
            "basis": {"name": self.basis_name, "params": dict(self.basis_params)},
            "sender_index": self.sender_index,
            "input": [_c2(self.input.gamma1), _c2(self.input.gamma2)],
            "mode": self.mode,
            "branches": [
                {"k": b.k, "gamma_prime": [_c2(z) for z in b.gamma_prime], "probability": b.probability}
                for b in self.branches
            ],
            "corrections": [
                {"exact": _m2(c.exact), "unitary": _m2(c.unitary), "scale": c.scale}
                for c in self.corrections
            ],
            "fidelity_exact": list(self.fidelity_exact),
            "fidelity_unitary": list(self.fidelity_unitary),
            "shots": self.shots,
            "seed": self.seed,
            "counts": list(self.counts),
        }


def _c2(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _m2(m) -> list:
    return [[_c2(z) for z in row] for row in m]


def _as_qubit(psi) -> QubitState:
    if isinstance(psi, QubitState):
        return psi
    return QubitState.from_vector(psi)


def _check_normalized(psi: QubitState, what: str = "payload") -> None:
    if not psi.is_normalized():
        raise UnnormalizedInput(f"{what} has norm^2 {psi.norm_squared!r}, expected 1")


def product_matrix(k: int, i: int, basis: EntangledBasis) -> np.ndarray:
    """``(conj(A_k) A_i)^T``: maps the payload to Bob's branch-``k`` amplitudes."""
    return (np.conj(basis.matrices[k]) @ basis.matrices[i]).T


def decompose(psi, i: int, basis: EntangledBasis) -> list[Branch]:
    psi = _as_qubit(psi)
    _check_normalized(psi)
    require_valid(basis)
    if i not in range(4):
        raise IndexError(f"sender index must be 0..3, got {i}")
    return _branches(psi.vector, i, basis)


def _branches(g: np.ndarray, i: int, basis: EntangledBasis) -> list[Branch]:
    branches = []
    for k in range(4):
        gp = product_matrix(k, i, basis) @ g
        gp.setflags(write=False)
        branches.append(Branch(k, gp, float(np.sum(np.abs(gp) ** 2))))
    return branches


def joint_input(psi, i: int, basis: EntangledBasis) -> np.ndarray:
    """The 8 amplitudes of ``|psi> (x) |V_i>``."""
    return np.outer(_as_qubit(psi).vector, basis.state(i)).reshape(8)


def reconstruct(branches: list[Branch], basis: EntangledBasis) -> np.ndarray:
    """``sum_k |V_k> (x) gamma'_k`` as 8 amplitudes."""
    return sum(np.outer(basis.state(b.k), b.gamma_prime).reshape(8) for b in branches)


def correction(k: int, i: int, basis: EntangledBasis) -> CorrectionMap:
    p = product_matrix(k, i, basis)
    if abs(det2(p)) <= SINGULAR_TOL:
        raise SingularCorrection(f"branch k={k}, i={i}: |det| = {abs(det2(p)):.3e}")
    exact = inverse2(p)
    unitary = polar_unitary(exact)
    exact.setflags(write=False)
    unitary.setflags(write=False)
    return CorrectionMap(exact, unitary, float(np.linalg.norm(exact) / math.sqrt(2)))


@lru_cache(maxsize=256)
def _corrections(basis: EntangledBasis, i: int) -> tuple[CorrectionMap, ...]:
    # bases are immutable and hash by identity, so the four maps per sender index can be reused
    return tuple(correction(k, i, basis) for k in range(4))


def fidelity(a, b) -> float:
    """``|<a|b>|^2`` for normalised qubit states."""
    a, b = _as_qubit(a), _as_qubit(b)
    _check_normalized(a, "first state")
    _check_normalized(b, "second state")
    return min(1.0, float(abs(np.vdot(a.vector, b.vector)) ** 2))


def _recovered_fidelity(g: np.ndarray, m: np.ndarray, gp: np.ndarray) -> float:
    # |<psi|out>|^2 / <out|out>, i.e. the fidelity after renormalising the corrected state
    out = m @ gp
    return min(1.0, float(abs(np.vdot(g, out)) ** 2 / np.vdot(out, out).real))


def sample_counts(probabilities, shots: int, seed: int) -> list[int]:
    """Inverse-CDF sampling over the outcome probabilities with a PCG64 stream.

    ``u ~ U[0, 1)`` selects the first index whose cumulative sum exceeds ``u``;
    outcomes below ``PROB_FLOOR`` carry zero mass and are never selected.
    """
    if shots < 0:
        raise ValueError(f"shots must be >= 0, got {shots}")
    p = np.array(probabilities, dtype=float)
    p[p < PROB_FLOOR] = 0.0
    cum = np.cumsum(p)
    if shots == 0:
        return [0] * len(p)
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(shots) * cum[-1]
    idx = np.searchsorted(cum, u, side="right")
    np.minimum(idx, len(p) - 1, out=idx)
    return [int(c) for c in np.bincount(idx, minlength=len(p))]


def fresh_seed() -> int:
    return int(np.random.SeedSequence().entropy) & ((1 << 64) - 1)


def run(psi, i: int, basis: EntangledBasis, shots: int = 10_000, seed: int | None = None,
        mode: str = "exact") -> TeleportRun:
    """Full protocol: branch analytics, both correction variants, sampled counts.

    Both fidelity lists are always filled; ``mode`` only records which correction
    the caller intends to apply.  Fidelities of outcomes with probability below
    ``PROB_FLOOR`` are ``None``.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if shots < 0:
        raise ValueError(f"shots must be >= 0, got {shots}")
    psi = _as_qubit(psi)
    branches = decompose(psi, i, basis)
    corrections = list(_corrections(basis, i))
    g = psi.vector
    f_exact: list[float | None] = []
    f_unit: list[float | None] = []
    for b, c in zip(branches, corrections):
        if b.probability < PROB_FLOOR:
            f_exact.append(None)
            f_unit.append(None)
            continue
        f_exact.append(_recovered_fidelity(g, c.exact, b.gamma_prime))
        f_unit.append(_recovered_fidelity(g, c.unitary, b.gamma_prime))
    if seed is None:
        seed = fresh_seed()
    seed = int(seed)
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    counts = sample_counts([b.probability for b in branches], shots, seed)
    return TeleportRun(
        basis_name=basis.name,
        basis_params=dict(basis.params),
        sender_index=i,
        input=psi,
        mode=mode,
        branches=branches,
        corrections=corrections,
        fidelity_exact=f_exact,
        fidelity_unitary=f_unit,
        shots=shots,
        seed=seed,
        counts=counts,
    )
