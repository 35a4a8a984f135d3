"""Command-line front end.

Exit codes: 0 ok, 1 usage / I-O / parse error, 2 validation failure, 3 circuit mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import circuit as circ
from .basis import (
    EntangledBasis,
    InvalidBasis,
    ParamOutOfRange,
    TwoQubitState,
    assemble_transform,
    basis_to_dict,
    builtin_basis,
    entanglement_determinant,
    load_basis,
    schmidt_coefficients,
    validate_basis,
)
from .teleport import MODES, run

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3
ENTANGLEMENT_THRESHOLD = 1e-10
AUTO_NORMALIZE_TOL = 1e-6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- formatting ---------------------------------------------------------------

def _c(z) -> str:
    z = complex(z)
    re = 0.0 if z.real == 0 else z.real
    im = 0.0 if z.imag == 0 else z.imag
    if abs(im) < 1e-15:
        return f"{re:.6g}"
    return f"{re:.6g}{im:+.6g}j"


def _matrix_lines(m, indent: str = "  ") -> list[str]:
    cells = [[_c(z) for z in row] for row in np.asarray(m)]
    w = max(len(c) for row in cells for c in row)
    return [indent + "[ " + "  ".join(c.rjust(w) for c in row) + " ]" for row in cells]


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _parse_floats(text: str, count: int, flag: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"{flag}: expected {count} comma-separated numbers ({exc})") from None
    if len(vals) != count:
        raise UsageError(f"{flag}: expected {count} comma-separated numbers (re,im pairs), got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{flag}: values must be finite")
    return vals


def _complex_pairs(vals: list[float]) -> np.ndarray:
    return np.array([complex(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)])


def _basis_from_args(args) -> EntangledBasis:
    if args.file:
        try:
            return load_basis(args.file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.file}: malformed JSON ({exc})") from None
        except InvalidBasis:
            raise
        except ValueError as exc:
            raise UsageError(f"{args.file}: {exc}") from None
    if not args.builtin:
        raise UsageError("one of --builtin or --file is required")
    return builtin_basis(args.builtin, theta=args.theta, lam=args.lam)


# -- commands -----------------------------------------------------------------

def cmd_basis_validate(args) -> int:
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.file}: malformed JSON ({exc})") from None
        try:
            mats = [np.array([[complex(z[0], z[1]) for z in row] for row in m]) for m in data["matrices"]]
            name = str(data.get("name", args.file))
            if len(mats) != 4 or any(m.shape != (2, 2) for m in mats):
                raise ValueError("expected 4 matrices of shape 2x2")
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            raise UsageError(f"{args.file}: malformed basis file ({exc})") from None
    else:
        basis = _basis_from_args(args)
        mats, name = basis.matrices, basis.label()
    report = validate_basis(mats)
    if args.format == "json":
        _emit_json({"basis": name, **report.to_dict()})
    else:
        print(f"basis: {name}")
        for i, (d, ok) in enumerate(zip(report.dets, report.det_ok)):
            print(f"  A_{i} (V_{i + 1}): det = {_c(d)}  |det| = {abs(d):.6g}  {'ok' if ok else 'FAIL'}")
        print("  Gram matrix Tr(A_i^dagger A_j):")
        print("\n".join(_matrix_lines(report.gram, "    ")))
        print(f"  max |Gram - I| = {report.gram_deviation:.3e} (tolerance {report.gram_tol:g})")
        for f in report.failures():
            print(f"  failure: {f}")
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_INVALID


def cmd_basis_show(args) -> int:
    basis = _basis_from_args(args)
    tr = assemble_transform(basis)
    labels = ("|00>", "|01>", "|10>", "|11>")
    if args.format == "json":
        c2 = lambda z: [complex(z).real, complex(z).imag]  # noqa: E731
        _emit_json({
            **basis_to_dict(basis),
            "t": [[c2(z) for z in row] for row in tr.t],
            "t_inv": [[c2(z) for z in row] for row in tr.t_inv],
            "expansions": {lab: [c2(z) for z in tr.t_inv[j]] for j, lab in enumerate(labels)},
        })
        return EXIT_OK
    print(f"basis: {basis.label()}")
    for k, m in enumerate(basis.matrices):
        print(f"A_{k} (V_{k + 1}), det = {_c(np.linalg.det(m))}:")
        print("\n".join(_matrix_lines(m)))
    print("T (rows are V_0..V_3):")
    print("\n".join(_matrix_lines(tr.t)))
    print("T^-1 = T^dagger:")
    print("\n".join(_matrix_lines(tr.t_inv)))
    for j, lab in enumerate(labels):
        terms = " + ".join(f"({_c(z)}) V_{k}" for k, z in enumerate(tr.t_inv[j]) if abs(z) > 1e-15)
        print(f"{lab} = {terms}")
    return EXIT_OK


def cmd_teleport(args) -> int:
    basis = _basis_from_args(args)
    vals = _parse_floats(args.state, 4, "--state")
    psi = _complex_pairs(vals)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > AUTO_NORMALIZE_TOL:
        print(f"error: --state has norm {norm:.9g}; must be within {AUTO_NORMALIZE_TOL:g} of 1",
              file=sys.stderr)
        return EXIT_INVALID
    if abs(norm * norm - 1.0) > 1e-12:
        print(f"warning: --state norm {norm:.12g} renormalised to 1", file=sys.stderr)
        psi = psi / norm
    if args.index not in range(4):
        raise UsageError(f"--index must be 0..3, got {args.index}")
    if args.shots < 0:
        raise UsageError("--shots must be >= 0")
    result = run(psi, args.index, basis, shots=args.shots, seed=args.seed, mode=args.mode)
    if args.format == "json":
        _emit_json(result.to_dict())
        return EXIT_OK
    print(f"basis: {basis.label()}  sender V_{args.index} (label {args.index + 1})  mode: {args.mode}")
    print(f"payload: ({_c(psi[0])}, {_c(psi[1])})  shots: {result.shots}  seed: {result.seed}")
    print(f"{'k':>2} {'lbl':>3} {'probability':>12} {'fid_exact':>12} {'fid_unitary':>12} {'counts':>8}  gamma'")
    for b, fe, fu, n in zip(result.branches, result.fidelity_exact, result.fidelity_unitary, result.counts):
        fmt = lambda f: "n/a" if f is None else f"{f:.10f}"  # noqa: E731
        print(f"{b.k:>2} {b.k + 1:>3} {b.probability:>12.8f} {fmt(fe):>12} {fmt(fu):>12} {n:>8}  "
              f"({_c(b.gamma_prime[0])}, {_c(b.gamma_prime[1])})")
    for b, c in zip(result.branches, result.corrections):
        print(f"correction k={b.k}: exact ((conj(A_k) A_i)^T)^-1, scale {c.scale:.6g}")
        print("\n".join(_matrix_lines(c.exact, "    ")))
        print("  unitary (polar factor):")
        print("\n".join(_matrix_lines(c.unitary, "    ")))
    return EXIT_OK


def _phase_str(z) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-9:
        return f"{z.real:+.0f}" if abs(abs(z.real) - 1) < 1e-9 else f"{z.real:.6g}"
    return _c(z)


def cmd_circuit_verify(args) -> int:
    params = {"theta": args.theta, "lambda": args.lam}
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                c = circ.parse_circuit(fh.read(), circuit_id=args.file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
        except (circ.CircuitParseError, ValueError) as exc:
            raise UsageError(f"{args.file}: {exc}") from None
        if not args.claim:
            raise UsageError("--file needs --claim with the expected state (re,im pairs)")
        claimed = _complex_pairs(_parse_floats(args.claim, 2 * 2 ** c.width, "--claim"))
        reports, teleports = [circ.verify_against(c, claimed)], []
    elif args.all:
        suite = circ.verify_all(params)
        reports, teleports = suite.states, suite.teleports
    elif args.id:
        try:
            if args.id.lower() in {k.lower() for k in circ.TELEPORT_CATALOG}:
                reports, teleports = [], [circ.verify_teleport(args.id, params)]
            else:
                reports, teleports = [circ.verify(args.id, params)], []
        except circ.UnknownCircuit:
            known = ", ".join(list(circ.CATALOG) + list(circ.TELEPORT_CATALOG))
            raise UsageError(f"unknown circuit id {args.id!r}; known: {known}") from None
    else:
        raise UsageError("one of --all, --id or --file is required")

    suite = circ.SuiteResult(list(reports), list(teleports))
    if args.format == "json":
        _emit_json({"circuits": [r.to_dict() for r in reports],
                    "teleports": [t.to_dict() for t in teleports],
                    "discrepancies": suite.discrepancies()})
    else:
        for r in reports:
            extra = f" ({_phase_str(r.global_phase)})" if r.verdict == "phase_equivalent" else ""
            line = f"{r.circuit_id:<12} {r.verdict}{extra}"
            if r.verdict == "mismatch":
                line += (f"  max_amp_error={r.max_amp_error:.3e} phase_residual={r.phase_residual:.3e} "
                         f"overlap={r.overlap:.6f} reversed_order={r.reversed_verdict}")
            print(line)
        for t in teleports:
            tag = t.circuit_id
            if "family" in t.params:
                tag += f"[{t.params['family']},M{t.params['index'] + 1}]"
            print(f"{tag:<12} {t.verdict}  min_fidelity={t.min_fidelity:.10f} engine={t.engine_fidelity:.10f}")
        for d in suite.discrepancies():
            if d["note"]:
                print(f"discrepancy {d['id']}: {d['note']}")
    return EXIT_OK if suite.ok else EXIT_MISMATCH


def cmd_entanglement(args) -> int:
    vals = _parse_floats(args.state, 8, "--state")
    state = TwoQubitState.from_amplitudes(_complex_pairs(vals))
    det = entanglement_determinant(state)
    big, small = schmidt_coefficients(state)
    verdict = "entangled" if abs(det) > ENTANGLEMENT_THRESHOLD else "product"
    if args.format == "json":
        _emit_json({"determinant": [det.real, det.imag], "abs_determinant": abs(det),
                    "schmidt_coefficients": [big, small], "threshold": ENTANGLEMENT_THRESHOLD,
                    "normalized": state.normalized, "verdict": verdict})
    else:
        print(f"determinant: {_c(det)}")
        print(f"|determinant|: {abs(det):.6g}")
        print(f"schmidt coefficients: {big:.6g}, {small:.6g}")
        print(f"verdict: {verdict}")
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")

    basis_src = argparse.ArgumentParser(add_help=False)
    src = basis_src.add_mutually_exclusive_group()
    src.add_argument("--builtin", metavar="FAMILY",
                     help="bell, phase, rotation, hyperbolic or scale (case-insensitive)")
    src.add_argument("--file", metavar="PATH", help="basis JSON file")
    basis_src.add_argument("--theta", type=float, help="angle in radians (phase, rotation, hyperbolic)")
    basis_src.add_argument("--lambda", dest="lam", type=float, help="scale parameter (scale family)")

    p = _Parser(prog="entbasis", description="Entangled two-qubit bases and generalised teleportation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pb = sub.add_parser("basis", help="validate or inspect a basis")
    bsub = pb.add_subparsers(dest="action", required=True, parser_class=_Parser)
    bv = bsub.add_parser("validate", parents=[common, basis_src], help="check det and Gram conditions")
    bv.set_defaults(func=cmd_basis_validate)
    bs = bsub.add_parser("show", parents=[common, basis_src], help="print matrices, T, T^-1, expansions")
    bs.set_defaults(func=cmd_basis_show)

    pt = sub.add_parser("teleport", parents=[common, basis_src], help="run the teleportation protocol")
    pt.add_argument("--index", type=int, required=True, help="shared state V_i, 0-based (figure labels 1..4 are 0..3)")
    pt.add_argument("--state", required=True, metavar="RE,IM,RE,IM", help="payload amplitudes")
    pt.add_argument("--shots", type=int, default=10_000, help="measurement samples (default: 10000)")
    pt.add_argument("--seed", type=int, default=None, help="unsigned 64-bit seed (default: random, reported)")
    pt.add_argument("--mode", choices=MODES, default="exact", help="correction mode (default: exact)")
    pt.set_defaults(func=cmd_teleport)

    pc = sub.add_parser("circuit", help="circuit catalog")
    csub = pc.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cv = csub.add_parser("verify", parents=[common], help="verify figure circuits against claimed states")
    which = cv.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true", help="verify every catalog entry")
    which.add_argument("--id", help="catalog id, e.g. fig1, figExpI1, telRot")
    which.add_argument("--file", metavar="PATH", help="circuit text file (one gate per line)")
    cv.add_argument("--claim", metavar="RE,IM,...", help="claimed state for --file")
    cv.add_argument("--theta", type=float, default=None, help="theta in radians (default: pi/4)")
    cv.add_argument("--lambda", dest="lam", type=float, default=None, help="lambda (default: 2)")
    cv.set_defaults(func=cmd_circuit_verify)

    pe = sub.add_parser("entanglement", parents=[common], help="determinant entanglement test")
    pe.add_argument("--state", required=True, metavar="RE,IM x4", help="amplitudes of |00>,|01>,|10>,|11>")
    pe.set_defaults(func=cmd_entanglement)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidBasis, ParamOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
