"""Gate registry and exact application: unitarity, embedding, involutions."""

import random

import pytest

from qmc.amplitude import AMP_ONE, AMP_ZERO, Amplitude, CycloInt, INV_SQRT2
from qmc.gates import Gate, GateApplication, apply, builtin, is_unitary, BUILTIN_NAMES
from qmc.oracle import compare, run_circuit
from qmc.state import BasisState, combine, ket, norm_sq
from qmc.translate import final_state, random_circuit

from conftest import random_orbit_state


def test_builtin_hadamard_matrix():
    h = builtin("H")
    neg = Amplitude(CycloInt(-1), 1)
    assert h.matrix == ((INV_SQRT2, INV_SQRT2), (INV_SQRT2, neg))


def test_builtin_cnot_is_the_xor_permutation():
    cnot = builtin("CNOT")
    # Column = input index; control 1 flips the target bit.
    for col, row in ((0, 0), (1, 1), (2, 3), (3, 2)):
        assert cnot.matrix[row][col] == AMP_ONE


def test_builtin_identity():
    i = builtin("I")
    assert apply(GateApplication(i, (0,)), ket("1")) == ket("1")


def test_unknown_gate_name():
    with pytest.raises(ValueError, match="unknown gate name"):
        builtin("Y")


def test_all_builtins_are_unitary():
    for name in BUILTIN_NAMES:
        assert is_unitary(builtin(name)), name


def test_zero_row_matrix_is_not_unitary():
    broken = Gate("BAD", 1, ((AMP_ZERO, AMP_ZERO), (AMP_ZERO, AMP_ONE)))
    assert not is_unitary(broken)


# ---------------------------------------------------------------------------
# apply
# ---------------------------------------------------------------------------

def test_hadamard_on_zero():
    result = apply(GateApplication(builtin("H"), (0,)), ket("0"))
    expected = combine(
        [(INV_SQRT2, BasisState("0")), (INV_SQRT2, BasisState("1"))], 1
    )
    assert result == expected


def test_cnot_entangles():
    pre = combine(
        [(INV_SQRT2, BasisState("00")), (INV_SQRT2, BasisState("10"))], 2
    )
    result = apply(GateApplication(builtin("CNOT"), (0, 1)), pre)
    expected = combine(
        [(INV_SQRT2, BasisState("00")), (INV_SQRT2, BasisState("11"))], 2
    )
    assert result == expected


def test_double_hadamard_cancels():
    h = GateApplication(builtin("H"), (0,))
    assert apply(h, apply(h, ket("0"))) == ket("0")


def test_x_flips():
    assert apply(GateApplication(builtin("X"), (0,)), ket("0")) == ket("1")


def test_wire_out_of_range():
    with pytest.raises(ValueError, match="out of range"):
        apply(GateApplication(builtin("H"), (1,)), ket("0"))


def test_duplicate_wires_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        GateApplication(builtin("CNOT"), (1, 1))


def test_wrong_wire_count_rejected():
    with pytest.raises(ValueError):
        GateApplication(builtin("H"), (0, 1))


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

def test_norm_preserved_exactly_by_every_builtin():
    rng = random.Random(23)
    for name in BUILTIN_NAMES:
        gate = builtin(name)
        for _ in range(10):
            width = rng.randint(gate.arity, 4)
            s = random_orbit_state(rng, width, n_gates=8)
            app = GateApplication(gate, tuple(rng.sample(range(width), gate.arity)))
            assert norm_sq(apply(app, s)) == norm_sq(s)


def test_involutions_exactly_undo_themselves():
    rng = random.Random(29)
    for name in ("H", "X", "Z", "CNOT"):
        gate = builtin(name)
        for _ in range(10):
            width = rng.randint(gate.arity, 4)
            s = random_orbit_state(rng, width, n_gates=8)
            app = GateApplication(gate, tuple(rng.sample(range(width), gate.arity)))
            assert apply(app, apply(app, s)) == s


def test_single_qubit_embedding_leaves_other_wires_fixed():
    rng = random.Random(31)
    for _ in range(40):
        width = rng.randint(2, 5)
        bits = "".join(rng.choice("01") for _ in range(width))
        wire = rng.randrange(width)
        name = rng.choice(("X", "Z", "S", "T", "H"))
        result = apply(GateApplication(builtin(name), (wire,)), ket(bits))
        for basis, _ in result.terms():
            for j in range(width):
                if j != wire:
                    assert basis.bits[j] == bits[j]


def test_apply_agrees_with_float_oracle_across_placements():
    rng = random.Random(37)
    for _ in range(50):
        circuit = random_circuit(rng, max_width=6, max_gates=12)
        ok, deviation = compare(final_state(circuit), run_circuit(circuit), 1e-9)
        assert ok, f"deviation {deviation} on {circuit}"
