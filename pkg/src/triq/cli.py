"""
Command-line interface.

Usage:
    triq table [--format F] [--expanded]
    triq analyze (--state NAME | --amplitudes RE,IM x8 | --file PATH) [--q Q ...] [--format F]
    triq sweep-q (--state NAME | --file PATH) --q-min A --q-max B --steps N [--format F]
    triq hamiltonian [--format F]
    triq fuzz --count N --seed S [--format F]

Exit codes: 0 success, 1 invalid input or usage, 2 numerical or verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import classify, report
from .errors import InvalidInputError, NumericalError
from .fuzz import run_fuzz

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2
NORM_REJECT = 1e-6
NORM_WARN = 1e-9
FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for numerical failure here
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def parse_amplitudes(tokens) -> np.ndarray:
    """Turn ``re,im`` tokens into a normalized 8-vector (warns on renormalization)."""
    tokens = list(tokens)
    if len(tokens) != 8:
        raise InvalidInputError(f"expected 8 amplitudes, got {len(tokens)}")
    values = []
    for tok in tokens:
        parts = tok.split(",")
        if len(parts) != 2:
            raise InvalidInputError(f"malformed amplitude {tok!r}; expected re,im")
        try:
            re, im = (float(x) for x in parts)
        except ValueError:
            raise InvalidInputError(f"malformed amplitude {tok!r}") from None
        values.append(complex(re, im))
    v = np.array(values, dtype=complex)
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("amplitudes must be finite")
    norm = float(np.linalg.norm(v))
    if norm == 0:
        raise InvalidInputError("amplitude vector is zero")
    if abs(norm - 1) > NORM_REJECT:
        raise InvalidInputError(f"amplitude vector has norm {norm!r}; must be within 1e-6 of 1")
    if abs(norm - 1) > NORM_WARN:
        print(f"warning: renormalizing amplitudes (norm was {norm!r})", file=sys.stderr)
    return v / norm


def read_amplitude_file(path: str) -> np.ndarray:
    """Whitespace/newline separated ``re,im`` pairs; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None
    tokens = []
    for line in text.splitlines():
        tokens += line.split("#", 1)[0].split()
    return parse_amplitudes(tokens)


def _resolve_state(args) -> tuple[np.ndarray | None, str | None]:
    if args.state is not None:
        return None, args.state
    if getattr(args, "amplitudes", None) is not None:
        return parse_amplitudes(args.amplitudes), None
    return read_amplitude_file(args.file), None


def _report(args, q_grid) -> classify.StateReport:
    vec, name = _resolve_state(args)
    for q in q_grid:
        if not q > 0:
            raise InvalidInputError(f"q must be positive, got {q}")
    if name is not None:
        return classify.analyze_named(name, q_grid)
    return classify.analyze(vec, q_grid)


def cmd_table(args) -> str:
    return report.render_table(classify.table_one(expanded=args.expanded), args.format)


def cmd_analyze(args) -> str:
    q_grid = args.q if args.q else classify.DEFAULT_Q_GRID
    return report.render_report(_report(args, q_grid), args.format)


def cmd_sweep_q(args) -> str:
    if not 0 < args.q_min <= args.q_max:
        raise InvalidInputError("need 0 < q-min <= q-max")
    if args.steps < 1:
        raise InvalidInputError("steps must be at least 1")
    q_grid = np.linspace(args.q_min, args.q_max, args.steps) if args.steps > 1 else [args.q_min]
    return report.render_sweep(_report(args, [float(q) for q in q_grid]), args.format)


def cmd_hamiltonian(args) -> str:
    eigen = classify.verify_hamiltonian_eigenstates()
    return report.render_hamiltonian(eigen, classify.hamiltonian_spectrum(), args.format)


def cmd_fuzz(args):
    if args.count < 1:
        raise InvalidInputError("count must be at least 1")
    summary = run_fuzz(args.count, args.seed)
    return report.render_fuzz(summary, args.format), EXIT_OK if summary.failed == 0 else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="triq", description="Entanglement robustness of canonical three-qubit states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_format(p):
        p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("table", help="reproduce the symmetry/concurrence/robustness table")
    add_format(p)
    p.add_argument("--expanded", action="store_true", help="one row per state instead of per +/- class")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("analyze", help="full report for one state")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", help="canonical name, e.g. GHZ+, WRr-")
    src.add_argument("--amplitudes", nargs=8, metavar="RE,IM", help="8 amplitudes, |000> .. |111>")
    src.add_argument("--file", help="amplitude file")
    p.add_argument("--q", type=float, nargs="+", help="Tsallis q values (default 0.5 1 2 3)")
    add_format(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep-q", help="conditional Tsallis entropies over a q range")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--state")
    src.add_argument("--amplitudes", nargs=8, metavar="RE,IM")
    src.add_argument("--file")
    p.add_argument("--q-min", type=float, required=True)
    p.add_argument("--q-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_sweep_q)

    p = sub.add_parser("hamiltonian", help="verify the canonical states are Heisenberg eigenstates")
    add_format(p)
    p.set_defaults(func=cmd_hamiltonian)

    p = sub.add_parser("fuzz", help="randomized consistency checks")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
