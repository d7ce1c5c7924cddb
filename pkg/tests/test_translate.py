"""Circuit-to-proof compilation and proof-to-circuit extraction."""

import random

import pytest

from qmc.amplitude import ExactReal, REAL_ONE
from qmc.calculus import (
    Ax,
    BornAnnotated,
    Coherent,
    Measured,
    Prep,
    ProofNode,
    apply_rule,
    check,
    enumerate_conclusions,
)
from qmc.gates import GateApplication, builtin
from qmc.oracle import compare, run_circuit
from qmc.parser import parse_proof, elaborate
from qmc.state import BasisState, ket
from qmc.translate import (
    Circuit,
    UnsupportedTranslation,
    circuit_to_proof,
    proof_to_circuit,
    random_circuit,
)

from conftest import bell_circuit, load_golden


def hh_circuit() -> Circuit:
    h = GateApplication(builtin("H"), (0,))
    return Circuit(1, (h, h))


# ---------------------------------------------------------------------------
# circuit_to_proof
# ---------------------------------------------------------------------------

def test_bell_enumerates_both_branches():
    proofs = circuit_to_proof(bell_circuit(), "enumerate")
    assert len(proofs) == 2
    outcomes = []
    for proof in proofs:
        assert check(proof).valid
        conclusion = proof.conclusion
        assert isinstance(conclusion, Measured)
        assert conclusion.prob == ExactReal(1, 0, 1)
        outcomes.append(conclusion.outcome.bits)
    assert outcomes == ["00", "11"]


def test_unmeasured_hh_compiles_to_a_single_coherent_proof():
    (proof,) = circuit_to_proof(hh_circuit())
    assert check(proof).valid
    assert proof.conclusion == Coherent(ket("0"))


def test_sample_mode_emits_one_proof():
    for seed in (0, 1, 2, 3):
        (proof,) = circuit_to_proof(bell_circuit(), "sample", seed)
        assert check(proof).valid
        assert isinstance(proof.conclusion, Measured)


def test_unknown_mode_rejected():
    with pytest.raises(ValueError, match="mode"):
        circuit_to_proof(bell_circuit(), "guess")


def test_every_random_proof_checks():
    rng = random.Random(47)
    for _ in range(30):
        circuit = random_circuit(rng, max_width=4, max_gates=10, measured=True)
        for proof in circuit_to_proof(circuit, "enumerate"):
            assert check(proof).valid


def test_semantic_preservation_against_the_oracle():
    rng = random.Random(53)
    for _ in range(30):
        circuit = random_circuit(rng, max_width=5, max_gates=15)
        (proof,) = circuit_to_proof(circuit)
        conclusion = proof.conclusion
        assert isinstance(conclusion, Coherent)
        ok, deviation = compare(conclusion.state, run_circuit(circuit), 1e-9)
        assert ok, deviation


def test_enumerated_probabilities_sum_to_one_and_match_the_root():
    rng = random.Random(59)
    for _ in range(20):
        circuit = random_circuit(rng, max_width=4, max_gates=10, measured=True)
        proofs = circuit_to_proof(circuit, "enumerate")
        born = proofs[0].premises[0]
        assert isinstance(born.conclusion, BornAnnotated)
        listed = enumerate_conclusions(born)
        total = ExactReal(0)
        by_proof = []
        for proof in proofs:
            conclusion = proof.conclusion
            assert isinstance(conclusion, Measured)
            total = total + conclusion.prob
            by_proof.append((conclusion.outcome, conclusion.prob))
        assert total == REAL_ONE
        assert by_proof == listed


# ---------------------------------------------------------------------------
# proof_to_circuit
# ---------------------------------------------------------------------------

def test_bell_proof_extracts_the_bell_circuit():
    # The golden proof applies H before tensoring, as the entangling
    # derivation does; extraction commutes it onto the assembled register.
    proof = load_golden("bell_00.qmc")
    assert proof_to_circuit(proof) == bell_circuit()


def test_pending_measurement_extracts_as_measured():
    script = (
        "proof p { a = ax; b = ax; t = tensor a b; h = gate H [0] t; d = born h; }"
    )
    circuit = proof_to_circuit(elaborate(parse_proof(script)))
    assert circuit.measured
    assert circuit.width == 2


def test_single_axiom_extracts_to_an_empty_circuit():
    proof = ProofNode(Ax(), (), apply_rule(Ax(), []))
    assert proof_to_circuit(proof) == Circuit(1, ())


def test_prep_proofs_are_refused():
    leaf = ProofNode(Prep(BasisState("1")), (), Coherent(ket("1")))
    with pytest.raises(UnsupportedTranslation, match="sequential"):
        proof_to_circuit(leaf)


def test_round_trip_on_random_measured_circuits():
    rng = random.Random(61)
    for _ in range(40):
        circuit = random_circuit(rng, max_width=5, max_gates=12, measured=True)
        proof = circuit_to_proof(circuit, "enumerate")[0]
        assert proof_to_circuit(proof) == circuit


def test_circuit_wire_validation():
    with pytest.raises(ValueError, match="out of range"):
        Circuit(1, (GateApplication(builtin("CNOT"), (0, 1)),))
    with pytest.raises(ValueError, match="at least one"):
        Circuit(0, ())
