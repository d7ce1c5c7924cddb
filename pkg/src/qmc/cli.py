"""Command-line surface: check, dist, run, translate, render, selftest.

Exit codes: 0 success, 1 check or validation failure, 2 usage or parse error.
Reports go to stdout, errors to stderr.  All commands are deterministic given
the input bytes, flags, and seed; QMC_SEED provides a default for --seed.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from . import calculus, oracle, parser as frontend, translate
from .calculus import (
    BornAnnotated,
    CheckReport,
    Coherent,
    Measure,
    Measured,
    apply_rule,
    distribution,
    sample_outcome,
    sequent_text,
)
from .gates import BUILTIN_NAMES, Gate, builtin, is_unitary
from .parser import ElaborationError, SourceError, elaborate, parse_circuit, parse_proof
from .state import ket, support
from .translate import Circuit, UnsupportedTranslation, final_state, random_circuit


class _UsageError(Exception):
    pass


class _ValidationError(Exception):
    pass


class _CheckFailed(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise _UsageError(f"cannot read {path}: {err}") from err
    except UnicodeDecodeError as err:
        raise _UsageError(f"{path} is not valid UTF-8: {err}") from err


def _kind(path: str) -> str:
    suffix = Path(path).suffix
    if suffix in (".qmc", ".qc"):
        return suffix
    raise _UsageError(f"unrecognized input extension {suffix!r}; expected .qmc or .qc")


def _resolve_seed(args: argparse.Namespace) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("QMC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"QMC_SEED must be an integer, got {env!r}") from None
    return 0


def _print_report(report: CheckReport) -> None:
    for node in report.nodes:
        name = node.label or (".".join(map(str, node.path)) or "root")
        if node.status == "invalid":
            print(f"{name}: invalid  {node.detail}")
        else:
            print(f"{name}: {node.status}  {node.conclusion}")


def _elaborate_or_report(text: str) -> calculus.ProofNode:
    """Parse and elaborate; on a failed rule application print the per-binding
    verdicts up to the failure and raise SystemExit-like via _CheckFailed."""
    script = parse_proof(text)
    try:
        return elaborate(script)
    except ElaborationError as err:
        for name, node in err.completed:
            print(f"{name}: ok  {sequent_text(node.conclusion)}")
        print(
            f"{err.binding.name}: invalid  "
            f"{type(err.cause).__name__}: {err.cause}"
        )
        print("invalid")
        raise _CheckFailed() from err


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_check(args: argparse.Namespace) -> int:
    if _kind(args.path) != ".qmc":
        raise _UsageError("check expects a .qmc proof script")
    try:
        proof = _elaborate_or_report(_read(args.path))
    except _CheckFailed:
        return 1
    report = calculus.check(proof)
    _print_report(report)
    print("valid" if report.valid else "invalid")
    return 0 if report.valid else 1


def _distribution_of(path: str) -> calculus.Distribution:
    kind = _kind(path)
    text = _read(path)
    if kind == ".qc":
        circuit = parse_circuit(text)
        return distribution(final_state(circuit))
    proof = _elaborate_or_report(text)
    root = proof.conclusion
    if isinstance(root, Coherent):
        return distribution(root.state)
    if isinstance(root, BornAnnotated):
        return root.dist
    raise _ValidationError(
        "the proof already ends in a measurement; nothing left to distribute"
    )


def cmd_dist(args: argparse.Namespace) -> int:
    try:
        dist = _distribution_of(args.path)
    except _CheckFailed:
        return 1
    for basis, p in dist.items():
        print(f"{basis} {p.text()} {p.to_float()}")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    kind = _kind(args.path)
    text = _read(args.path)
    if kind == ".qc":
        circuit = parse_circuit(text)
        if not circuit.measured:
            raise _ValidationError("circuit has no terminal measure; nothing to run")
        (proof,) = translate.circuit_to_proof(circuit, "sample", seed)
    else:
        try:
            base = _elaborate_or_report(text)
        except _CheckFailed:
            return 1
        root = base.conclusion
        if not isinstance(root, BornAnnotated):
            raise _ValidationError(
                "the proof must end in a Born annotation to be run"
            )
        outcome, _ = sample_outcome(root.dist, seed)
        rule = Measure(outcome)
        proof = calculus.ProofNode(rule, (base,), apply_rule(rule, [root]))
    sys.stdout.write(frontend.render_proof(proof, "ascii"))
    conclusion = proof.conclusion
    assert isinstance(conclusion, Measured)
    print(f"outcome {conclusion.outcome} p={conclusion.prob.text()}")
    return 0


def _script_name(stem: str) -> str:
    cleaned = "".join(c if c.isalnum() or c == "_" else "_" for c in stem)
    if not cleaned or not (cleaned[0].isalpha() or cleaned[0] == "_"):
        cleaned = "p_" + cleaned
    return cleaned


def cmd_translate(args: argparse.Namespace) -> int:
    kind = _kind(args.path)
    text = _read(args.path)
    source = Path(args.path)
    outdir = Path(args.outdir) if args.outdir else source.parent
    stem = source.stem
    outputs: list[tuple[Path, str]] = []
    if args.to == "proof":
        if kind != ".qc":
            raise _UsageError("translating to a proof expects a .qc circuit")
        circuit = parse_circuit(text)
        if circuit.measured and not args.enumerate and args.seed is None:
            # Deterministic default: emit every measurement branch.
            args.enumerate = True
        mode = "enumerate" if args.enumerate or not circuit.measured else "sample"
        proofs = translate.circuit_to_proof(circuit, mode, _resolve_seed(args))
        for proof in proofs:
            conclusion = proof.conclusion
            if isinstance(conclusion, Measured):
                name = f"{stem}_{conclusion.outcome.bits}"
            else:
                name = stem
            outputs.append(
                (
                    outdir / f"{name}.qmc",
                    frontend.render_script(proof, _script_name(name)),
                )
            )
    else:
        if kind != ".qmc":
            raise _UsageError("translating to a circuit expects a .qmc proof script")
        try:
            proof = _elaborate_or_report(text)
        except _CheckFailed:
            return 1
        circuit = translate.proof_to_circuit(proof)
        outputs.append((outdir / f"{stem}.qc", frontend.render_circuit(circuit)))
    for path, content in outputs:
        path.write_text(content, encoding="utf-8")
        print(path)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    if _kind(args.path) != ".qmc":
        raise _UsageError("render expects a .qmc proof script")
    try:
        proof = _elaborate_or_report(_read(args.path))
    except _CheckFailed:
        return 1
    sys.stdout.write(frontend.render_proof(proof, args.format))
    return 0


# ---------------------------------------------------------------------------
# Selftest
# ---------------------------------------------------------------------------

def _corrupted(gate: Gate) -> Gate:
    from .amplitude import AMP_ZERO

    rows = [list(row) for row in gate.matrix]
    rows[0] = [AMP_ZERO for _ in rows[0]]
    return Gate(gate.name, gate.arity, tuple(tuple(row) for row in rows))


def _selftest_unitarity(inject_fault: str | None) -> str | None:
    for name in BUILTIN_NAMES:
        gate = builtin(name)
        if inject_fault == name:
            gate = _corrupted(gate)
        if not is_unitary(gate):
            return f"unitarity: {name} is not unitary"
    return None


def _selftest_golden() -> str | None:
    bell = Circuit(
        2,
        (
            translate.GateApplication(builtin("H"), (0,)),
            translate.GateApplication(builtin("CNOT"), (0, 1)),
        ),
        measured=True,
    )
    proofs = translate.circuit_to_proof(bell, "enumerate")
    if len(proofs) != 2:
        return f"golden: Bell enumerates {len(proofs)} branches, expected 2"
    for proof in proofs:
        report = calculus.check(proof)
        if not report.valid:
            return f"golden: Bell proof failed check: {report.failures()[0].detail}"
        conclusion = proof.conclusion
        assert isinstance(conclusion, Measured)
        if conclusion.prob != calculus.ExactReal(1, 0, 1):
            return f"golden: Bell outcome probability {conclusion.prob}, expected 1/2"
    hh = Circuit(
        1,
        (
            translate.GateApplication(builtin("H"), (0,)),
            translate.GateApplication(builtin("H"), (0,)),
        ),
    )
    (proof,) = translate.circuit_to_proof(hh)
    if not calculus.check(proof).valid:
        return "golden: double-Hadamard proof failed check"
    conclusion = proof.conclusion
    assert isinstance(conclusion, Coherent)
    if conclusion.state != ket("0") or len(support(conclusion.state)) != 1:
        return "golden: double Hadamard did not cancel back to |0>"
    return None


def _selftest_differential(n_circuits: int = 200) -> str | None:
    rng = random.Random(0xD1FF)
    for i in range(n_circuits):
        circuit = random_circuit(rng)
        exact = final_state(circuit)
        floats = oracle.run_circuit(circuit)
        ok, deviation = oracle.compare(exact, floats, 1e-9)
        if not ok:
            return (
                f"differential: circuit {i} deviates by {deviation:.3e}:\n"
                + frontend.render_circuit(circuit)
            )
    return None


def cmd_selftest(args: argparse.Namespace) -> int:
    suites = (
        ("unitarity", lambda: _selftest_unitarity(args.inject_fault)),
        ("golden proofs", _selftest_golden),
        ("differential sweep", _selftest_differential),
    )
    for name, suite in suites:
        failure = suite()
        if failure is not None:
            print(f"selftest failure: {failure}", file=sys.stderr)
            return 1
        print(f"{name}: ok")
    print("selftest passed")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_argparser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qmc",
        description="Exact proof kernel for a sequent calculus of single "
        "quantum circuits.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check a .qmc proof script")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dist", help="print the exact outcome distribution")
    p.add_argument("path")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("run", help="sample one measurement outcome")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("translate", help="translate between circuits and proofs")
    p.add_argument("path")
    p.add_argument("--to", required=True, choices=("proof", "circuit"))
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--outdir", default=None)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("render", help="render a proof as ascii or latex")
    p.add_argument("path")
    p.add_argument("--format", default="ascii", choices=("ascii", "latex"))
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("selftest", help="run the built-in verification suites")
    p.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        return args.func(args)
    except SourceError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except _ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except UnsupportedTranslation as err:
        print(f"error: UnsupportedTranslation: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
