"""Entangled two-qubit bases generated by four 2x2 matrices.

A matrix ``A`` with entries ``[[a0, a1], [a2, a3]]`` is identified with the
state ``a0|00> + a1|01> + a2|10> + a3|11>``.  The state is entangled iff
``det A != 0``, and four such matrices form an orthonormal basis iff their
Frobenius Gram matrix ``Tr(A_i^dagger A_j)`` is the identity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import (
    SINGULAR_TOL,
    adjoint,
    as_matrix,
    det2,
    unitarity_error,
)

DET_TOL = SINGULAR_TOL
GRAM_TOL = 1e-9
NORM_TOL = 1e-12
HYPERBOLIC_THETA_MAX = 20.0

FAMILIES = ("bell", "phase", "rotation", "hyperbolic", "scale")
# family -> name of the real parameter it takes
FAMILY_PARAM = {"bell": None, "phase": "theta", "rotation": "theta", "hyperbolic": "theta", "scale": "lambda"}


class InvalidBasis(ValueError):
    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


class ParamOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class QubitState:
    gamma1: complex
    gamma2: complex

    @classmethod
    def from_vector(cls, v) -> "QubitState":
        v = np.asarray(v, dtype=np.complex128).reshape(-1)
        if v.shape != (2,):
            raise ValueError(f"a qubit state has 2 amplitudes, got {v.shape[0]}")
        return cls(complex(v[0]), complex(v[1]))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.gamma1, self.gamma2], dtype=np.complex128)

    @property
    def norm_squared(self) -> float:
        return abs(self.gamma1) ** 2 + abs(self.gamma2) ** 2

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_squared - 1.0) <= tol


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Amplitudes over |00>, |01>, |10>, |11>."""

    amps: np.ndarray
    normalized: bool

    @classmethod
    def from_amplitudes(cls, amps) -> "TwoQubitState":
        a = np.array(amps, dtype=np.complex128).reshape(-1)
        if a.shape != (4,):
            raise ValueError(f"a two-qubit state has 4 amplitudes, got {a.shape[0]}")
        a.setflags(write=False)
        return cls(a, bool(abs(np.vdot(a, a).real - 1.0) <= NORM_TOL))

    def coefficient_matrix(self) -> np.ndarray:
        return self.amps.reshape(2, 2).copy()


@dataclass(frozen=True, eq=False)
class EntangledBasis:
    name: str
    matrices: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    params: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        mats = tuple(as_matrix(m, (2, 2)) for m in self.matrices)
        if len(mats) != 4:
            raise ValueError(f"a basis needs exactly 4 matrices, got {len(mats)}")
        for m in mats:
            m.setflags(write=False)
        object.__setattr__(self, "matrices", mats)

    def state(self, k: int) -> np.ndarray:
        return self.matrices[k].reshape(4).copy()

    def label(self) -> str:
        if not self.params:
            return self.name
        args = ", ".join(f"{k}={v!r}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args})"


@dataclass(frozen=True, eq=False)
class BasisTransform:
    t: np.ndarray
    t_inv: np.ndarray


@dataclass(frozen=True, eq=False)
class ValidationReport:
    dets: list[complex]
    det_ok: list[bool]
    gram: np.ndarray
    gram_deviation: float
    det_tol: float = DET_TOL
    gram_tol: float = GRAM_TOL

    @property
    def orthonormal(self) -> bool:
        return self.gram_deviation < self.gram_tol

    @property
    def passed(self) -> bool:
        return all(self.det_ok) and self.orthonormal

    def failures(self) -> list[str]:
        out = [f"|det A_{i}| = {abs(d):.3e} <= {self.det_tol}" for i, (d, ok) in
               enumerate(zip(self.dets, self.det_ok)) if not ok]
        if not self.orthonormal:
            dev = np.abs(self.gram - np.eye(4))
            i, j = np.unravel_index(np.argmax(dev), dev.shape)
            out.append(f"Gram[{i}][{j}] = {_fmt_c(self.gram[i, j])} "
                       f"(deviation {self.gram_deviation:.3e} >= {self.gram_tol})")
        return out

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "dets": [[d.real, d.imag] for d in self.dets],
            "abs_dets": [abs(d) for d in self.dets],
            "det_ok": list(self.det_ok),
            "det_tol": self.det_tol,
            "gram": [[[complex(z).real, complex(z).imag] for z in row] for row in self.gram],
            "gram_deviation": self.gram_deviation,
            "gram_tol": self.gram_tol,
            "failures": self.failures(),
        }


def _fmt_c(z: complex) -> str:
    z = complex(z)
    return f"{z.real:+.6g}{z.imag:+.6g}j"


def state_from_matrix(m) -> TwoQubitState:
    """Row-major vectorisation ``(m00, m01, m10, m11)``."""
    return TwoQubitState.from_amplitudes(as_matrix(m, (2, 2)).reshape(4))


def entanglement_determinant(s: TwoQubitState) -> complex:
    """Determinant of the coefficient matrix ``[[c1, c2], [c3, c4]]``; zero iff ``s`` is a product state."""
    return det2(s.amps.reshape(2, 2))


def schmidt_coefficients(s: TwoQubitState) -> tuple[float, float]:
    """Singular values of the coefficient matrix, largest first, in closed form.

    ``s1^2 + s2^2 = ||C||_F^2`` and ``s1 s2 = |det C|``; the small one is taken as
    ``|det C| / s1`` to avoid cancellation.
    """
    c = s.amps.reshape(2, 2)
    f = float(np.sum(np.abs(c) ** 2))
    d = abs(det2(c))
    disc = math.sqrt(max(f * f - 4.0 * d * d, 0.0))
    big = math.sqrt((f + disc) / 2.0)
    small = d / big if big > 0 else 0.0
    return big, small


def validate_basis(matrices) -> ValidationReport:
    mats = [as_matrix(m, (2, 2)) for m in matrices]
    if len(mats) != 4:
        raise ValueError(f"a basis needs exactly 4 matrices, got {len(mats)}")
    dets = [det2(m) for m in mats]
    rows = np.array([m.reshape(4) for m in mats])
    # Tr(A_i^dagger A_j) is the plain inner product of the vectorised matrices
    gram = rows.conj() @ rows.T
    return ValidationReport(
        dets=dets,
        det_ok=[abs(d) > DET_TOL for d in dets],
        gram=gram,
        gram_deviation=float(np.max(np.abs(gram - np.eye(4)))),
    )


def require_valid(basis: EntangledBasis) -> ValidationReport:
    report = validate_basis(basis.matrices)
    if not report.passed:
        raise InvalidBasis(f"{basis.label()} is not an orthonormal entangled basis: "
                           + "; ".join(report.failures()), report)
    return report


def assemble_transform(basis: EntangledBasis) -> BasisTransform:
    """Stack the vectorised matrices as the rows of ``T``; ``T^-1 = T^dagger``."""
    require_valid(basis)
    t = np.array([m.reshape(4) for m in basis.matrices], dtype=np.complex128)
    err = unitarity_error(t)
    if err >= GRAM_TOL:
        raise InvalidBasis(f"T is not unitary: max|T T^dagger - I| = {err:.3e}")
    return BasisTransform(t=t, t_inv=adjoint(t))


def expand_computational(j: int, basis: EntangledBasis) -> np.ndarray:
    """Coefficients ``c_k`` with ``|C_j> = sum_k c_k |V_k>``, i.e. ``c_k = conj(a_kj)``."""
    if j not in range(4):
        raise IndexError(f"computational index must be 0..3, got {j}")
    return assemble_transform(basis).t_inv[j].copy()


def builtin_basis(family: str, theta: float | None = None, lam: float | None = None) -> EntangledBasis:
    """One of the five built-in families: bell, phase(theta), rotation(theta),
    hyperbolic(theta), scale(lambda).  ``family`` is case-insensitive."""
    fam = family.strip().lower()
    if fam not in FAMILIES:
        raise ParamOutOfRange(f"unknown basis family {family!r}; choose from {', '.join(FAMILIES)}")
    pname = FAMILY_PARAM[fam]
    value = {"theta": theta, "lambda": lam}.get(pname) if pname else None
    if pname is not None:
        if value is None:
            raise ParamOutOfRange(f"family {fam!r} requires --{pname}")
        value = float(value)
        if not math.isfinite(value):
            raise ParamOutOfRange(f"{pname} must be finite, got {value}")

    r2 = 1 / math.sqrt(2)
    if fam == "bell":
        raw = [[[1, 0], [0, 1]], [[1, 0], [0, -1]], [[0, 1], [1, 0]], [[0, 1], [-1, 0]]]
        mats = [r2 * np.array(m, dtype=np.complex128) for m in raw]
    elif fam == "phase":
        e = np.exp(1j * value)
        mats = [r2 * np.array(m, dtype=np.complex128) for m in
                ([[e, 0], [0, 1]], [[1, 0], [0, -np.conj(e)]], [[0, 1], [-1, 0]], [[0, 1], [1, 0]])]
    elif fam == "rotation":
        c, s = math.cos(value), math.sin(value)
        mats = [r2 * np.array(m, dtype=np.complex128) for m in
                ([[c, -s], [s, c]], [[-s, -c], [c, -s]], [[1, 0], [0, -1]], [[0, 1], [1, 0]])]
    elif fam == "hyperbolic":
        if abs(value) > HYPERBOLIC_THETA_MAX:
            raise ParamOutOfRange(f"hyperbolic family needs |theta| <= {HYPERBOLIC_THETA_MAX}, got {value}")
        ch2 = math.cosh(2 * value)
        if 1 / (2 * ch2) <= DET_TOL:
            # det A_0 = 1 / (2 cosh 2theta) falls below the singularity tolerance
            raise ParamOutOfRange(f"hyperbolic theta={value} makes |det A_0| = {1 / (2 * ch2):.3e} <= {DET_TOL}")
        ch, sh = math.cosh(value), math.sinh(value)
        n = 1 / math.sqrt(2 * ch2)
        mats = [n * np.array([[ch, sh], [sh, ch]], dtype=np.complex128),
                n * np.array([[sh, -ch], [-ch, sh]], dtype=np.complex128),
                r2 * np.array([[1, 0], [0, -1]], dtype=np.complex128),
                r2 * np.array([[0, 1], [-1, 0]], dtype=np.complex128)]
    else:  # scale
        sq = 1 + value * value
        if not math.isfinite(sq) or abs(value) / sq <= DET_TOL:
            raise ParamOutOfRange(f"scale lambda={value} makes |det A_0| = {abs(value) / sq:.3e} <= {DET_TOL}")
        n = 1 / math.sqrt(sq)
        mats = [n * np.array([[value, 0], [0, 1]], dtype=np.complex128),
                n * np.array([[1, 0], [0, -value]], dtype=np.complex128),
                r2 * np.array([[0, 1], [-1, 0]], dtype=np.complex128),
                r2 * np.array([[0, 1], [1, 0]], dtype=np.complex128)]
    return EntangledBasis(fam, tuple(mats), {pname: value} if pname else {})


# -- JSON file format ---------------------------------------------------------

def _c2(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def basis_to_dict(basis: EntangledBasis) -> dict:
    return {
        "name": basis.name,
        "params": dict(basis.params),
        "matrices": [[[_c2(z) for z in row] for row in m] for m in basis.matrices],
    }


def basis_from_dict(data: dict) -> EntangledBasis:
    """Parse the basis file schema and validate the result.

    Raises ``ValueError`` for schema problems and ``InvalidBasis`` (carrying the
    report) when the matrices do not form an orthonormal entangled basis.
    """
    if not isinstance(data, dict):
        raise ValueError("basis file must contain a JSON object")
    try:
        name = str(data["name"])
        params = {str(k): float(v) for k, v in data.get("params", {}).items()}
        raw = data["matrices"]
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed basis file: {exc}") from exc
    if not isinstance(raw, list) or len(raw) != 4:
        raise ValueError("'matrices' must be a list of 4 matrices")
    mats = []
    for idx, m in enumerate(raw):
        try:
            if len(m) != 2 or any(len(row) != 2 or any(len(z) != 2 for z in row) for row in m):
                raise ValueError
            arr = np.array([[complex(float(z[0]), float(z[1])) for z in row] for row in m])
        except (TypeError, ValueError, IndexError) as exc:
            raise ValueError(f"matrix {idx} is not a 2x2 array of [re, im] pairs") from exc
        mats.append(arr)
    basis = EntangledBasis(name, tuple(mats), params)
    require_valid(basis)
    return basis


def load_basis(path: str | Path) -> EntangledBasis:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return basis_from_dict(data)


def save_basis(basis: EntangledBasis, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(basis_to_dict(basis), fh, indent=2)
        fh.write("\n")
