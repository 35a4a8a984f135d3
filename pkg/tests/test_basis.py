import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entbasis.basis import (
    FAMILIES,
    InvalidBasis,
    ParamOutOfRange,
    EntangledBasis,
    TwoQubitState,
    assemble_transform,
    basis_from_dict,
    basis_to_dict,
    builtin_basis,
    entanglement_determinant,
    expand_computational,
    load_basis,
    save_basis,
    schmidt_coefficients,
    state_from_matrix,
    validate_basis,
)
from entbasis.linalg import det2, unitarity_error
from entbasis.reference import cross_check

from conftest import family_grid, grid_bases

R2 = 1 / math.sqrt(2)
BELL = builtin_basis("bell").matrices
B1, B2, B3, B4 = BELL


def test_state_from_matrix_examples():
    assert np.allclose(state_from_matrix(B1).amps, [R2, 0, 0, R2], atol=1e-15)
    assert np.allclose(state_from_matrix(B4).amps, [0, R2, -R2, 0], atol=1e-15)
    s = state_from_matrix(np.eye(2))
    assert np.array_equal(s.amps, [1, 0, 0, 1])
    assert not s.normalized
    assert state_from_matrix(B1).normalized


def test_entanglement_determinant_examples():
    bell = TwoQubitState.from_amplitudes([R2, 0, 0, R2])
    assert entanglement_determinant(bell) == pytest.approx(0.5, abs=1e-15)
    assert entanglement_determinant(TwoQubitState.from_amplitudes([0, 1, 0, 0])) == 0
    assert entanglement_determinant(TwoQubitState.from_amplitudes([0.5] * 4)) == 0


def test_validate_examples():
    rep = validate_basis(BELL)
    assert rep.passed and np.allclose(rep.gram, np.eye(4), atol=1e-15)
    assert validate_basis(builtin_basis("hyperbolic", theta=1.0).matrices).passed
    rep = validate_basis([B1, B2, B3, B3])
    assert not rep.passed
    assert rep.gram[2, 3] == pytest.approx(1.0)
    assert rep.gram_deviation == pytest.approx(1.0)
    assert any("Gram" in f or "gram" in f for f in rep.failures())


def test_validate_flags_singular_matrix():
    rep = validate_basis([np.diag([1, 0]), np.diag([0, 1]), B3, B4])
    assert rep.det_ok[:2] == [False, False]
    assert not rep.passed


def test_assemble_transform_examples():
    t = assemble_transform(builtin_basis("bell")).t
    expected = R2 * np.array([[1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0], [0, 1, -1, 0]])
    assert np.allclose(t, expected, atol=1e-15)
    theta = 0.3
    t = assemble_transform(builtin_basis("phase", theta=theta)).t
    assert np.allclose(t[0], R2 * np.array([np.exp(1j * theta), 0, 0, 1]), atol=1e-15)


def test_assemble_transform_rejects_invalid():
    bad = EntangledBasis("bad", (B1, B2, B3, B3), {})
    with pytest.raises(InvalidBasis) as exc:
        assemble_transform(bad)
    assert exc.value.report is not None


def test_expand_examples():
    bell = builtin_basis("bell")
    assert np.allclose(expand_computational(0, bell), [R2, R2, 0, 0], atol=1e-15)
    theta = 0.9
    got = expand_computational(0, builtin_basis("phase", theta=theta))
    assert np.allclose(got, [np.exp(-1j * theta) * R2, R2, 0, 0], atol=1e-15)
    lam = 2.0
    n = 1 / math.sqrt(1 + lam ** 2)
    got = expand_computational(3, builtin_basis("scale", lam=lam))
    assert np.allclose(got, [n, -lam * n, 0, 0], atol=1e-15)


def test_builtin_examples():
    phase0 = builtin_basis("phase", theta=0.0).matrices
    for got, want in zip(phase0, (B1, B2, B4, B3)):
        assert np.allclose(got, want, atol=1e-15)
    hyp0 = builtin_basis("hyperbolic", theta=0.0).matrices
    assert np.allclose(hyp0[0], R2 * np.eye(2), atol=1e-15)
    assert np.allclose(hyp0[1], R2 * np.array([[0, -1], [-1, 0]]), atol=1e-15)
    assert np.allclose(builtin_basis("scale", lam=1.0).matrices[0], R2 * np.eye(2), atol=1e-15)


def test_builtin_family_names_case_insensitive():
    assert builtin_basis("BeLL").name == "bell"


@pytest.mark.parametrize("family, kwargs", [
    ("nope", {}),
    ("phase", {}),
    ("scale", {}),
    ("phase", {"theta": float("nan")}),
    ("hyperbolic", {"theta": 20.5}),
    ("hyperbolic", {"theta": 15.0}),
    ("scale", {"lam": 0.0}),
    ("scale", {"lam": float("inf")}),
])
def test_builtin_rejects(family, kwargs):
    with pytest.raises(ParamOutOfRange):
        builtin_basis(family, **kwargs)


# -- invariants over sampled parameters ---------------------------------------

def sampled_bases():
    rng = np.random.default_rng(99)
    out = [builtin_basis("bell")]
    for fam in ("phase", "rotation"):
        out += [builtin_basis(fam, theta=t) for t in rng.uniform(-2 * np.pi, 2 * np.pi, 20)]
    out += [builtin_basis("hyperbolic", theta=t) for t in rng.uniform(-3, 3, 20)]
    out += [builtin_basis("scale", lam=v) for v in rng.uniform(0.05, 10, 20) * rng.choice([-1, 1], 20)]
    return out


@pytest.mark.parametrize("basis", sampled_bases(), ids=lambda b: b.label())
def test_builtin_is_valid_and_unitary(basis):
    assert validate_basis(basis.matrices).passed
    assert unitarity_error(assemble_transform(basis).t) < 1e-12


@pytest.mark.parametrize("basis", sampled_bases(), ids=lambda b: b.label())
def test_expansion_round_trip(basis):
    for j in range(4):
        coeffs = expand_computational(j, basis)
        rebuilt = sum(c * basis.state(k) for k, c in enumerate(coeffs))
        assert np.max(np.abs(rebuilt - np.eye(4)[j])) < 1e-12


@pytest.mark.parametrize("basis", grid_bases(), ids=lambda b: b.label())
def test_determinant_paths_agree(basis):
    for m in basis.matrices:
        assert entanglement_determinant(state_from_matrix(m)) == det2(m)


def test_families_constant():
    assert set(FAMILIES) == {"bell", "phase", "rotation", "hyperbolic", "scale"}
    assert {f for f, _ in family_grid()} == set(FAMILIES)


# -- Schmidt / product-state oracle -------------------------------------------

def product_overlap_oracle(amps):
    """Best product-state overlap from numpy's SVD of the coefficient matrix."""
    s = np.linalg.svd(amps.reshape(2, 2), compute_uv=False)
    return s[0] ** 2 / np.sum(s ** 2)


def random_states(n, seed):
    rng = np.random.default_rng(seed)
    out = []
    for idx in range(n):
        if idx % 2:
            # product states, perturbed now and then so both verdicts are exercised
            a = rng.normal(size=2) + 1j * rng.normal(size=2)
            b = rng.normal(size=2) + 1j * rng.normal(size=2)
            v = np.kron(a, b)
        else:
            v = rng.normal(size=4) + 1j * rng.normal(size=4)
        out.append(v / np.linalg.norm(v))
    return out


def test_schmidt_matches_numpy_svd():
    for v in random_states(200, 3):
        big, small = schmidt_coefficients(TwoQubitState.from_amplitudes(v))
        ref = np.linalg.svd(v.reshape(2, 2), compute_uv=False)
        assert big == pytest.approx(ref[0], abs=1e-12)
        assert small == pytest.approx(ref[1], abs=1e-12)


def test_determinant_verdict_matches_product_oracle():
    for v in random_states(1000, 11):
        s = TwoQubitState.from_amplitudes(v)
        product_by_det = abs(entanglement_determinant(s)) < 1e-10
        product_by_oracle = product_overlap_oracle(v) >= 1 - 1e-9
        assert product_by_det == product_by_oracle


@settings(max_examples=200)
@given(st.lists(st.floats(-1, 1, allow_nan=False), min_size=8, max_size=8))
def test_schmidt_identity(xs):
    v = np.array(xs[:4]) + 1j * np.array(xs[4:])
    big, small = schmidt_coefficients(TwoQubitState.from_amplitudes(v))
    assert big >= small >= 0
    assert big ** 2 + small ** 2 == pytest.approx(np.sum(np.abs(v) ** 2), abs=1e-12)
    assert big * small == pytest.approx(abs(det2(v.reshape(2, 2))), abs=1e-12)


# -- transcribed inverse tables -------------------------------------------------

@pytest.mark.parametrize("family, value", [
    ("phase", math.pi / 4), ("phase", 1.3), ("rotation", math.pi / 4), ("rotation", -0.7),
    ("scale", 2.0), ("scale", 0.5),
])
def test_inverse_tables_match(family, value):
    assert cross_check(family, value, tables=("t_inv", "expansions")) == []


@pytest.mark.parametrize("theta", [0.3, 1.0, 2.0])
def test_hyperbolic_expansion_misprint_flagged(theta):
    log = cross_check("hyperbolic", theta, tables=("t_inv", "expansions"))
    assert [(d.table, d.key) for d in log] == [("expansion", "|11>")]
    assert log[0].known


# -- JSON file format ----------------------------------------------------------

@pytest.mark.parametrize("family, kwargs", family_grid())
def test_json_round_trip(tmp_path, family, kwargs):
    basis = builtin_basis(family, **kwargs)
    path = tmp_path / "b.json"
    save_basis(basis, path)
    back = load_basis(path)
    assert back.name == basis.name and back.params == basis.params
    for a, b in zip(back.matrices, basis.matrices):
        assert np.array_equal(a, b)
    data = json.loads(path.read_text())
    assert len(data["matrices"]) == 4
    assert all(len(z) == 2 for m in data["matrices"] for row in m for z in row)


def test_loader_rejects_repeated_matrix(tmp_path):
    d = basis_to_dict(builtin_basis("bell"))
    d["matrices"][3] = d["matrices"][2]
    with pytest.raises(InvalidBasis) as exc:
        basis_from_dict(d)
    assert exc.value.report.gram_deviation == pytest.approx(1.0)


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("matrices"),
    lambda d: d["matrices"].pop(),
    lambda d: d["matrices"][0][0].__setitem__(0, [1.0]),
    lambda d: d["matrices"][0].append([[0, 0], [0, 0]]),
    lambda d: d["matrices"][1][0].__setitem__(1, ["x", 0]),
])
def test_loader_rejects_malformed(mutate):
    d = basis_to_dict(builtin_basis("bell"))
    mutate(d)
    with pytest.raises(ValueError) as exc:
        basis_from_dict(d)
    assert not isinstance(exc.value, InvalidBasis)
