import math
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entbasis.basis import builtin_basis
from entbasis.circuit import (
    CATALOG,
    KNOWN_MISMATCHES,
    TELEPORT_CATALOG,
    CircuitParseError,
    Gate,
    GateCircuit,
    UnknownCircuit,
    WidthMismatch,
    all_teleport_param_sets,
    apply,
    bob_density_matrix,
    catalog,
    compare_states,
    parse_circuit,
    standard_teleport_circuit,
    teleport_circuit,
    teleport_fidelity,
    verify,
    verify_all,
    verify_teleport,
    zero_state,
)
from entbasis.teleport import decompose

from conftest import random_qubit

R2 = 1 / math.sqrt(2)
I2 = np.eye(2)
SWAP_PERM = [0, 2, 1, 3]


def dense_oracle(circuit):
    """Build the full circuit unitary from Kronecker products and permutations."""
    n = circuit.width
    total = np.eye(2 ** n, dtype=complex)
    for g in circuit.gates:
        u = g.unitary()
        if len(g.targets) == 1:
            ops = [u if q == g.targets[0] else I2 for q in range(n)]
            full = reduce(np.kron, ops)
        else:
            # permute the two targets to wires 0, 1, act, then undo
            order = list(g.targets) + [q for q in range(n) if q not in g.targets]
            perm = np.zeros((2 ** n, 2 ** n))
            for idx in range(2 ** n):
                bits = [(idx >> (n - 1 - q)) & 1 for q in range(n)]
                new = [bits[q] for q in order]
                perm[int("".join(map(str, new)), 2), idx] = 1
            full = perm.T @ np.kron(u, np.eye(2 ** (n - 2))) @ perm
        total = full @ total
    return total


ALL_KINDS = [Gate("H", (0,)), Gate("X", (1,)), Gate("Z", (0,)), Gate("SDG", (1,)), Gate("P", (0,), 0.3),
             Gate("RY", (1,), 1.1), Gate("RX", (0,), -0.4), Gate("RZ", (1,), 2.2),
             Gate("U", (0,), matrix=np.array([[0, 1j], [1j, 0]])), Gate("CX", (0, 1)), Gate("CX", (1, 0)),
             Gate("CZ", (0, 1)), Gate("CP", (1, 0), 0.9), Gate("SWAP", (0, 1))]


@pytest.mark.parametrize("gate", ALL_KINDS, ids=str)
def test_gate_unitary(gate):
    u = gate.unitary()
    assert np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) < 1e-15


def test_gate_conventions():
    assert np.allclose(Gate("P", (0,), math.pi).unitary(), np.diag([1, -1]))
    ry = Gate("RY", (0,), math.pi / 2).unitary()
    assert np.allclose(ry @ [1, 0], [R2, R2])
    assert np.allclose(Gate("SDG", (0,)).unitary(), np.diag([1, -1j]))


@pytest.mark.parametrize("kwargs", [
    {"kind": "FOO", "targets": (0,)},
    {"kind": "H", "targets": (0, 1)},
    {"kind": "CX", "targets": (1, 1)},
    {"kind": "P", "targets": (0,)},
    {"kind": "H", "targets": (0,), "param": 0.1},
    {"kind": "U", "targets": (0,)},
])
def test_gate_rejects(kwargs):
    with pytest.raises(ValueError):
        Gate(**kwargs)


def test_circuit_rejects_out_of_range_target():
    with pytest.raises(ValueError):
        GateCircuit(2, (Gate("CX", (0, 2)),))
    with pytest.raises(ValueError):
        GateCircuit(4, ())


def test_apply_examples():
    bell = apply(GateCircuit(2, (Gate("H", (0,)), Gate("CX", (0, 1)))), zero_state(2))
    assert np.allclose(bell, [R2, 0, 0, R2], atol=1e-15)
    psi = np.array([0.5, 0.5j, -0.5, 0.5])
    assert np.array_equal(apply(GateCircuit(2, ()), psi), psi)
    xx = GateCircuit(2, (Gate("X", (0,)), Gate("X", (0,))))
    assert np.array_equal(apply(xx, zero_state(2)), zero_state(2))


def test_apply_big_endian():
    # X on qubit 0 flips the leftmost ket label
    out = apply(GateCircuit(2, (Gate("X", (0,)),)), zero_state(2))
    assert np.array_equal(out, [0, 0, 1, 0])


def test_apply_width_mismatch():
    with pytest.raises(WidthMismatch):
        apply(GateCircuit(2, ()), zero_state(3))


gate_strategy = st.one_of(
    st.sampled_from(["H", "X", "Z", "SDG"]).flatmap(
        lambda k: st.integers(0, 2).map(lambda q: Gate(k, (q,)))),
    st.tuples(st.sampled_from(["P", "RY", "RX", "RZ"]), st.integers(0, 2), st.floats(-7, 7)).map(
        lambda t: Gate(t[0], (t[1],), t[2])),
    st.tuples(st.sampled_from(["CX", "CZ", "SWAP"]), st.permutations([0, 1, 2])).map(
        lambda t: Gate(t[0], tuple(t[1][:2]))),
    st.tuples(st.permutations([0, 1, 2]), st.floats(-7, 7)).map(
        lambda t: Gate("CP", tuple(t[0][:2]), t[1])),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(gate_strategy, max_size=12), st.integers(0, 2 ** 32 - 1))
def test_apply_matches_dense_oracle_and_preserves_norm(gates, seed):
    circ = GateCircuit(3, tuple(gates))
    rng = np.random.default_rng(seed)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    v /= np.linalg.norm(v)
    out = apply(circ, v)
    assert abs(np.linalg.norm(out) - 1) < 1e-12
    assert np.max(np.abs(out - dense_oracle(circ) @ v)) < 1e-12


# -- text format --------------------------------------------------------------

def test_parse_round_trip():
    text = "# bell pair\nh 0\nP 0 0.7853981633974483  # phase\n\ncx 0 1\nSWAP 0 1\nsdg 1\n"
    circ = parse_circuit(text)
    assert circ.width == 2
    assert [g.kind for g in circ.gates] == ["H", "P", "CX", "SWAP", "SDG"]
    assert circ.gates[1].param == math.pi / 4
    again = parse_circuit(circ.to_text())
    assert [str(g) for g in again.gates] == [str(g) for g in circ.gates]


def test_parse_width():
    assert parse_circuit("H 2\n").width == 3
    assert parse_circuit("H 0\n", width=3).width == 3
    with pytest.raises(CircuitParseError):
        parse_circuit("H 2\n", width=2)


@pytest.mark.parametrize("text", ["FOO 0", "H", "P 0", "CX 0", "H x", "CX 0 0", "U 0", "H 0 1"])
def test_parse_errors(text):
    with pytest.raises(CircuitParseError):
        parse_circuit(text)


# -- equivalence --------------------------------------------------------------

def test_compare_states_verdicts():
    a = np.array([R2, 0, 0, R2])
    assert compare_states(a, a)[0] == "exact"
    verdict, phase, *_ = compare_states(-a, a)
    assert verdict == "phase_equivalent" and abs(phase + 1) < 1e-12
    verdict, phase, err, resid, overlap = compare_states(np.array([1, 0, 0, 0]), a)
    assert verdict == "mismatch" and phase is None
    assert overlap == pytest.approx(0.5)


@settings(max_examples=100)
@given(st.floats(0, 2 * math.pi))
def test_compare_recovers_any_phase(phi):
    a = np.array([0.5, 0.5j, -0.5, 0.5])
    verdict, phase, *_ = compare_states(np.exp(1j * phi) * a, a)
    assert verdict in ("exact", "phase_equivalent")
    # an "exact" verdict reports phase 1 for |phi| up to ~2e-9 (smallest amplitude is 0.5)
    assert abs(phase - np.exp(1j * phi)) < 2.5e-9


# -- catalog --------------------------------------------------------------------

FIGURE_IDS = {"fig1", "fig2", "fig3", "fig4", "figExpI1", "figExpI2", "figRot1", "figRot2",
              "figHyper1", "figHyper2", "figEscale1", "figEscale2"}


def test_catalog_completeness():
    assert set(CATALOG) == FIGURE_IDS
    assert set(TELEPORT_CATALOG) == {"telExpI", "telRot", "telHyperScale"}
    assert KNOWN_MISMATCHES <= FIGURE_IDS | set(TELEPORT_CATALOG)


def test_catalog_examples():
    circ, claim = catalog("fig1")
    assert [str(g) for g in circ.gates] == ["H 0", "CX 0 1"]
    assert np.allclose(claim, [R2, 0, 0, R2])
    circ, claim = catalog("fig4")
    assert [str(g) for g in circ.gates] == ["H 0", "Z 0", "X 1", "Z 1", "CX 0 1"]
    assert np.allclose(claim, [0, R2, -R2, 0])
    circ, claim = catalog("figExpI1", {"theta": math.pi / 4})
    assert [g.kind for g in circ.gates] == ["H", "CX", "P"]
    assert circ.gates[2].param == math.pi / 4 and circ.gates[2].targets == (0,)
    assert np.allclose(claim, R2 * np.array([np.exp(1j * math.pi / 4), 0, 0, 1]))


def test_catalog_ids_case_insensitive():
    assert catalog("FIG1")[0].id == "fig1"
    with pytest.raises(UnknownCircuit):
        catalog("fig99")
    with pytest.raises(UnknownCircuit):
        teleport_circuit("telNope")


@pytest.mark.parametrize("cid", ["fig1", "fig2", "fig3"])
def test_bell_figures_exact(cid):
    rep = verify(cid)
    assert rep.verdict == "exact" and rep.max_amp_error < 1e-9


def test_fig4_phase_equivalent():
    rep = verify("fig4")
    assert rep.verdict == "phase_equivalent"
    assert abs(rep.global_phase + 1) < 1e-9
    assert rep.phase_residual < 1e-9


def test_figexpi1_is_claim_at_negated_theta():
    theta = 0.6
    produced = verify("figExpI1", {"theta": theta}).produced
    _, claim_neg = catalog("figExpI1", {"theta": -theta})
    verdict, phase, *_ = compare_states(produced, claim_neg)
    assert verdict == "phase_equivalent"
    assert abs(phase - np.exp(1j * theta)) < 1e-12


@pytest.mark.parametrize("cid", sorted(FIGURE_IDS))
def test_verify_invariants(cid):
    rep = verify(cid)
    assert rep.verdict in ("exact", "phase_equivalent", "mismatch")
    if rep.verdict == "exact":
        assert rep.max_amp_error < 1e-9
    elif rep.verdict == "phase_equivalent":
        assert abs(abs(rep.global_phase) - 1) < 1e-12
        assert np.max(np.abs(rep.produced - rep.global_phase * rep.claimed)) < 1e-9
    else:
        assert rep.note and rep.global_phase is None
    assert (rep.verdict == "mismatch") == (cid in KNOWN_MISMATCHES)
    assert abs(np.linalg.norm(rep.produced) - 1) < 1e-12


@pytest.mark.parametrize("cid", sorted(FIGURE_IDS))
def test_claimed_states_normalised(cid):
    for params in ({"theta": 0.4, "lambda": 0.7}, {"theta": -1.2, "lambda": 3.0}):
        _, claim = catalog(cid, params)
        assert np.linalg.norm(claim) == pytest.approx(1.0, abs=1e-12)


# -- teleport circuits ----------------------------------------------------------

def test_standard_teleport_examples():
    circ = standard_teleport_circuit()
    assert teleport_fidelity(circ, [0, 1]) == pytest.approx(1.0, abs=1e-12)
    assert teleport_fidelity(circ, [1, 0]) == pytest.approx(1.0, abs=1e-12)
    out = apply(circ, np.kron([0, 1], zero_state(2)))
    assert np.allclose(bob_density_matrix(out), np.diag([0, 1]), atol=1e-12)


def test_deferred_measurement_equivalence(rng):
    circ = standard_teleport_circuit()
    bell = builtin_basis("bell")
    for _ in range(100):
        psi = random_qubit(rng)
        assert teleport_fidelity(circ, psi) == pytest.approx(1.0, abs=1e-10)
        # branch route: the engine's Bell decomposition corrected by the same X/Z bits
        fixes = [I2, np.diag([1, -1]), np.array([[0, 1], [1, 0]]), np.array([[0, 1], [-1, 0]])]
        rho = np.zeros((2, 2), dtype=complex)
        for br, fix in zip(decompose(psi, 0, bell), fixes):
            v = fix @ br.gamma_prime
            rho += np.outer(v, v.conj())
        assert np.real(np.vdot(psi, rho @ psi)) == pytest.approx(1.0, abs=1e-10)


def test_bob_density_matrix_is_partial_trace(rng):
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    v /= np.linalg.norm(v)
    full = np.outer(v, v.conj()).reshape(4, 2, 4, 2)
    assert np.allclose(bob_density_matrix(v), np.einsum("aiaj->ij", full), atol=1e-14)


def test_teleport_circuit_verdicts():
    assert verify_teleport("telExpI").verdict == "agree"
    rot = verify_teleport("telRot")
    assert rot.verdict == "mismatch" and rot.note
    for cid, params in all_teleport_param_sets():
        if cid == "telHyperScale":
            rep = verify_teleport(cid, params)
            assert rep.verdict == "agree", params
            assert rep.engine_fidelity >= 1 - 1e-10


def test_teleport_circuit_width_and_ids():
    for cid in TELEPORT_CATALOG:
        circ = teleport_circuit(cid)
        assert circ.width == 3 and circ.id == cid


def test_verify_all_discrepancies_match_known_list():
    res = verify_all()
    assert len(res.states) == len(CATALOG)
    assert len(res.teleports) == len(all_teleport_param_sets())
    assert {d["id"] for d in res.discrepancies()} == KNOWN_MISMATCHES
    assert not res.ok
