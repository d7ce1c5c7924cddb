"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import dataclasses
import random
from pathlib import Path

import pytest

from qmc.calculus import ProofNode
from qmc.gates import GateApplication, apply, builtin
from qmc.parser import elaborate, parse_proof
from qmc.state import Superposition, ket
from qmc.translate import Circuit

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_PROOFS = ("bell_pre.qmc", "bell_00.qmc", "bell_11.qmc", "hh.qmc", "hh_0.qmc")


def load_golden(name: str) -> ProofNode:
    return elaborate(parse_proof((GOLDEN / name).read_text()))


def bell_circuit(measured: bool = True) -> Circuit:
    return Circuit(
        2,
        (
            GateApplication(builtin("H"), (0,)),
            GateApplication(builtin("CNOT"), (0, 1)),
        ),
        measured,
    )


def random_orbit_state(rng: random.Random, width: int, n_gates: int = 12) -> Superposition:
    """A normalized state: random gates applied to |0...0>."""
    names = ("X", "Z", "S", "T", "H", "CNOT") if width >= 2 else ("X", "Z", "S", "T", "H")
    state = ket("0" * width)
    for _ in range(n_gates):
        gate = builtin(rng.choice(names))
        state = apply(GateApplication(gate, tuple(rng.sample(range(width), gate.arity))), state)
    return state


def replace_at(node: ProofNode, path: tuple[int, ...], fn) -> ProofNode:
    """Rebuild the tree with fn applied to the node at the given path."""
    if not path:
        return fn(node)
    i = path[0]
    new_premise = replace_at(node.premises[i], path[1:], fn)
    premises = tuple(
        new_premise if j == i else p for j, p in enumerate(node.premises)
    )
    return dataclasses.replace(node, premises=premises)


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""
    from qmc.cli import main

    def invoke(*argv: str) -> tuple[int, str, str]:
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke
