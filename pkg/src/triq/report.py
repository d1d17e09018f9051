"""
Text, JSON and CSV renderings.

Every number goes through :func:`fmt` (12 significant digits, no snapping to
nearby rationals), and JSON numbers are the float values of those same
strings, so CSV and JSON always carry identical values.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

import numpy as np

from .classify import StateReport
from .fuzz import GENERATOR, FuzzSummary
from .linalg import PAIRS


def fmt(x: float) -> str:
    x = float(x)
    if x == 0:
        return "0.0"
    s = f"{x:.12g}"
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def num(x: float | None) -> float | None:
    return None if x is None else float(fmt(x))


def _csv(rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _aligned(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------- #
# State reports                                                               #
# --------------------------------------------------------------------------- #

def amplitude_pairs(v) -> list[list[float]]:
    return [[num(a.real), num(a.imag)] for a in np.asarray(v)]


def report_dict(r: StateReport) -> dict:
    state = r.name if r.name is not None else {"amplitudes": amplitude_pairs(r.amplitudes)}
    pairs = {
        p: {
            "symmetry": str(r.pairs[p].symmetry),
            "concurrence": num(r.pairs[p].concurrence),
            "ppt_min_eigenvalue": num(r.pairs[p].entanglement.ppt_min_eigenvalue),
            "robustness": str(r.pairs[p].robustness),
        }
        for p in PAIRS
    }
    tsallis = [
        {
            "q": num(row.q),
            "conditional": {k: num(v.conditional) for k, v in row.conditional.items()},
            "pair_conditional": {k: num(v.conditional) for k, v in row.pair_conditional.items()},
        }
        for row in r.tsallis
    ]
    lew = None
    if r.lewenstein is not None:
        lew = {"s_max": num(r.lewenstein.s_max), "bound_s_plus_c": num(r.lewenstein.bound)}
    return {
        "state": state,
        "pairs": pairs,
        "tangle": {"paper": num(r.tangle.tau_paper), "ckw": num(r.tangle.tau_ckw)},
        "tsallis": tsallis,
        "hamiltonian_eigenvalue": num(r.hamiltonian_eigenvalue),
        "lewenstein": lew,
        "triangle": [num(c) for c in r.triangle],
    }


TABLE_HEADER = [
    "state",
    *[f"{p}_{field}" for p in PAIRS for field in ("symmetry", "concurrence", "robustness")],
    "ABC_tangle",
]


def table_row(r: StateReport) -> list[str]:
    row = [r.name or "?"]
    for p in PAIRS:
        pr = r.pairs[p]
        row += [str(pr.symmetry), fmt(pr.concurrence), str(pr.robustness)]
    row.append(fmt(r.tangle.tau_paper))
    return row


def render_table(rows: Sequence[StateReport], format: str) -> str:
    if format == "json":
        return _dump([report_dict(r) for r in rows])
    body = [table_row(r) for r in rows]
    if format == "csv":
        return _csv([TABLE_HEADER, *body])
    header = ["State", *[f"{p} {h}" for p in PAIRS for h in ("sym", "C", "rob")], "ABC tau"]
    return _aligned([header, *body])


def render_report(r: StateReport, format: str) -> str:
    if format == "json":
        return _dump(report_dict(r))
    if format == "csv":
        return _csv(_report_fields(r))
    return _report_text(r)


def _report_fields(r: StateReport) -> list[list[str]]:
    rows = [["field", "value"], ["state", r.name or "amplitudes"]]
    for i, a in enumerate(r.amplitudes):
        rows.append([f"amplitude_{i:03b}", f"{fmt(a.real)},{fmt(a.imag)}"])
    for p in PAIRS:
        pr = r.pairs[p]
        rows += [
            [f"{p}.symmetry", str(pr.symmetry)],
            [f"{p}.concurrence", fmt(pr.concurrence)],
            [f"{p}.ppt_min_eigenvalue", fmt(pr.entanglement.ppt_min_eigenvalue)],
            [f"{p}.robustness", str(pr.robustness)],
        ]
    rows += [["tangle.paper", fmt(r.tangle.tau_paper)], ["tangle.ckw", fmt(r.tangle.tau_ckw)]]
    for row in r.tsallis:
        for k, v in (*row.conditional.items(), *row.pair_conditional.items()):
            rows.append([f"tsallis[q={fmt(row.q)}].{k}", fmt(v.conditional)])
    h = r.hamiltonian_eigenvalue
    rows.append(["hamiltonian_eigenvalue", "" if h is None else fmt(h)])
    if r.lewenstein is not None:
        rows += [
            ["lewenstein.s_max", fmt(r.lewenstein.s_max)],
            ["lewenstein.bound_s_plus_c", fmt(r.lewenstein.bound)],
        ]
    rows.append(["triangle", " ".join(fmt(c) for c in r.triangle)])
    return rows


def _report_text(r: StateReport) -> str:
    out = [f"state: {r.name or 'custom amplitudes'}"]
    nz = [(i, a) for i, a in enumerate(r.amplitudes) if abs(a) > 1e-15]
    out.append("amplitudes: " + "  ".join(f"|{i:03b}> {fmt(a.real)}{a.imag:+.12g}j" for i, a in nz))
    out.append("")
    rows = [["pair", "symmetry", "concurrence", "PPT min eig", "robustness"]]
    for p in PAIRS:
        pr = r.pairs[p]
        rows.append([p, str(pr.symmetry), fmt(pr.concurrence),
                     fmt(pr.entanglement.ppt_min_eigenvalue), str(pr.robustness)])
    out.append(_aligned(rows).rstrip())
    out.append("")
    out.append(f"3-tangle: {fmt(r.tangle.tau_paper)} (pair formula), {fmt(r.tangle.tau_ckw)} (CKW residual)")
    out.append("concurrence triangle (AB, AC, BC): " + ", ".join(fmt(c) for c in r.triangle))
    h = r.hamiltonian_eigenvalue
    out.append("Heisenberg eigenvalue: " + ("not an eigenstate" if h is None else fmt(h)))
    if r.lewenstein is not None:
        out.append(f"BC split: s_max = {fmt(r.lewenstein.s_max)}, "
                   f"s_max + C(BC) = {fmt(r.lewenstein.bound)}")
    else:
        out.append(f"BC split: n/a ({r.lewenstein_reason})")
    out.append("")
    keys = list(r.tsallis[0].conditional) + list(r.tsallis[0].pair_conditional) if r.tsallis else []
    rows = [["q", *keys]]
    for row in r.tsallis:
        vals = {**row.conditional, **row.pair_conditional}
        rows.append([fmt(row.q), *(fmt(vals[k].conditional) for k in keys)])
    out.append("Tsallis conditional entropies")
    out.append(_aligned(rows).rstrip())
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------- #
# Other commands                                                              #
# --------------------------------------------------------------------------- #

SWEEP_KEYS = ("ABC|AB", "ABC|AC", "ABC|BC")


def render_sweep(r: StateReport, format: str) -> str:
    records = [
        {"q": num(row.q), **{k: num(row.conditional[k].conditional) for k in SWEEP_KEYS}}
        for row in r.tsallis
    ]
    if format == "json":
        return _dump({"state": report_dict(r)["state"], "sweep": records})
    rows = [["q", *SWEEP_KEYS]]
    rows += [[fmt(row.q), *(fmt(row.conditional[k].conditional) for k in SWEEP_KEYS)] for row in r.tsallis]
    return _csv(rows) if format == "csv" else _aligned(rows)


def render_hamiltonian(eigen: dict[str, tuple[float, float]], spectrum, format: str) -> str:
    if format == "json":
        return _dump({
            "states": [{"state": n, "eigenvalue": num(e), "residual": num(res)} for n, (e, res) in eigen.items()],
            "spectrum": [{"eigenvalue": num(e), "multiplicity": m} for e, m in spectrum],
        })
    rows = [["state", "eigenvalue", "residual"]]
    rows += [[n, fmt(e), fmt(res)] for n, (e, res) in eigen.items()]
    spec_rows = [["eigenvalue", "multiplicity"], *[[fmt(e), str(m)] for e, m in spectrum]]
    if format == "csv":
        return _csv(rows) + "\n" + _csv(spec_rows)
    return _aligned(rows) + "\nspectrum of H\n" + _aligned(spec_rows)


def fuzz_dict(s: FuzzSummary) -> dict:
    return {
        "count": s.count,
        "seed": s.seed,
        "generator": GENERATOR,
        "pass": s.passed,
        "fail": s.failed,
        "family_pattern_states": s.family_matches,
        "max_tangle_gap": num(s.max_tangle_gap),
        "failures": [
            {
                "index": f["index"],
                # full precision so the failing state can be replayed exactly
                "amplitudes": [[float(a.real), float(a.imag)] for a in f["amplitudes"]],
                "problems": f["problems"],
            }
            for f in s.failures
        ],
    }


def render_fuzz(s: FuzzSummary, format: str) -> str:
    d = fuzz_dict(s)
    if format == "json":
        return _dump(d)
    if format == "csv":
        keys = ["count", "seed", "generator", "pass", "fail", "family_pattern_states", "max_tangle_gap"]
        rows = [keys, [d["count"], d["seed"], d["generator"], d["pass"], d["fail"],
                       d["family_pattern_states"], fmt(s.max_tangle_gap)]]
        return _csv(rows)
    lines = [
        f"fuzz: count={s.count} seed={s.seed} generator={GENERATOR}",
        f"pass: {s.passed}, fail: {s.failed}",
        f"states matching a parametric family: {s.family_matches}",
        f"max |tau_paper - tau_ckw|: {fmt(s.max_tangle_gap)}",
    ]
    for f in d["failures"]:
        amps = " ".join(f"{re!r},{im!r}" for re, im in f["amplitudes"])
        lines.append(f"FAIL #{f['index']}: {'; '.join(f['problems'])}")
        lines.append(f"  amplitudes: {amps}")
    return "\n".join(lines) + "\n"
