"""Command-line front end.

    pordering tally    --input F --method ranked-pairs|kemeny|p-norm|limit [--p P] [--json] [--allow-ties]
    pordering compare  --input F [--p-list 1,2,3] [--json] [--allow-ties] [--all-orderings]
    pordering converge --input F --max-p N [--threads N] [--json]
    pordering simulate --candidates K --voters V --trials T --seed S [--threads N] [--json]
    pordering matrix   --input F [--json]

Exit status is 0 on success, 2 for unreadable or inadmissible input and 1
when an exact search would exceed the size cap.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .convergence import convergence_profile
from .core import ElectionError, ElectionProfile, MarginMatrix, margin_matrix, parse_election, validate_margins
from .norms import PExponent, p_norm, q_sum
from .simulate import SimulationConfig, condorcet_winner_frequency
from .solvers import (
    DEFAULT_MAX_CANDIDATES,
    SizeCapError,
    kemeny_solve,
    limit_ordering,
    p_ordering_solve,
    ranked_pairs,
)

METHODS = ("ranked-pairs", "kemeny", "p-norm", "limit")
OUTSIDE = "outside proven guarantees: tie-break override engaged"


def _num(x):
    """JSON number policy: exact integers untouched, floats to 12 significant digits."""
    if x is None or isinstance(x, (bool, int)):
        return x
    return float(f"{x:.12g}")


def _p_value(p: PExponent):
    return int(p) if p.is_integer else _num(float(p))


@dataclass
class MethodResult:
    name: str
    p: int | float | None
    ordering: list[str]
    objective: int | float | None
    multiplicity: int = 1
    q_sum: int | float | None = None
    exact: bool = True


@dataclass
class OrderingRow:
    ordering: list[str]
    p: int | float
    p_norm: float
    q_sum: int | float


@dataclass
class Report:
    candidates: list[str] = field(default_factory=list)
    margins: list[list[int]] = field(default_factory=list)
    methods: list[MethodResult] = field(default_factory=list)
    convergence: dict | None = None
    orderings: list[OrderingRow] = field(default_factory=list)
    simulation: dict | None = None
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        return cls(
            candidates=list(data.get("candidates", [])),
            margins=[list(t) for t in data.get("margins", [])],
            methods=[MethodResult(**m) for m in data.get("methods", [])],
            convergence=data.get("convergence"),
            orderings=[OrderingRow(**r) for r in data.get("orderings", [])],
            simulation=data.get("simulation"),
            diagnostics=list(data.get("diagnostics", [])),
        )

    @classmethod
    def for_matrix(cls, matrix: MarginMatrix) -> Report:
        report = cls(list(matrix.candidates), [[i, j, v] for i, j, v in matrix.upper()])
        verdict = validate_margins(matrix)
        if verdict.ok:
            report.diagnostics.append("validity: ok")
        else:
            report.diagnostics.extend("validity: " + msg for msg in verdict.messages(matrix.candidates))
        return report


def format_report(report: Report, mode: str = "human") -> str:
    if mode == "json":
        return json.dumps(report.to_dict(), indent=2)
    if mode != "human":
        raise ValueError(f"unknown report mode {mode!r}")
    out: list[str] = []
    if report.candidates:
        out.append("candidates: " + " ".join(report.candidates))
        out.append("")
        out.extend(_matrix_table(report.candidates, report.margins))
    if report.methods:
        out.append("")
        rows = [["method", "p", "ordering", "objective", "q-sum", "optima"]]
        for m in report.methods:
            rows.append([
                m.name,
                "-" if m.p is None else str(m.p),
                " > ".join(m.ordering),
                _fmt(m.objective) + ("" if m.exact else " (float)"),
                _fmt(m.q_sum),
                str(m.multiplicity),
            ])
        out.extend(_table(rows))
    if report.orderings:
        out.append("")
        rows = [["ordering", "p", "p-norm", "q-sum"]]
        for r in report.orderings:
            rows.append([" > ".join(r.ordering), str(r.p), _fmt(r.p_norm), _fmt(r.q_sum)])
        out.extend(_table(rows))
    if report.convergence:
        c = report.convergence
        out.append("")
        out.append(f"p* bound (closed form):      {_fmt(c['p_star_bound'])}")
        out.append(f"exact dominance threshold:   {c['cdp_threshold']}")
        out.append(f"stabilized at p:             {c['stabilized_at']}")
        out.append(f"agrees with ranked pairs:    {'yes' if c['agrees'] else 'no'}")
        if c.get("flips"):
            out.append("ordering changes at p:       " + ", ".join(map(str, c["flips"])))
        if c.get("trace"):
            out.append("")
            rows = [["p", "ordering", "q-sum", "optima"]]
            for t in c["trace"]:
                rows.append([str(t["p"]), " > ".join(t["ordering"]), str(t["q_sum"]), str(t["multiplicity"])])
            out.extend(_table(rows))
    if report.simulation:
        s = report.simulation
        out.append(
            f"{s['candidates']} candidates, {s['voters']} voters, {s['trials']} trials (seed {s['seed']})"
        )
        out.append(
            f"condorcet winner in {s['hits']} trials: {_fmt(s['fraction'])} +/- {_fmt(s['half_width_95'])}"
        )
    if report.diagnostics:
        out.append("")
        out.extend("# " + d for d in report.diagnostics)
    return "\n".join(out).lstrip("\n") + "\n"


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]


def _matrix_table(names: list[str], upper: list[list[int]]) -> list[str]:
    n = len(names)
    m = [[0] * n for _ in range(n)]
    for i, j, v in upper:
        m[i][j], m[j][i] = v, -v
    rows = [[""] + names]
    for i in range(n):
        rows.append([names[i]] + ["." if i == j else str(m[i][j]) for j in range(n)])
    widths = [max(len(r[k]) for r in rows) for k in range(n + 1)]
    return ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]


# --------------------------------------------------------------------------


def load_matrix(path: str) -> MarginMatrix:
    text = Path(path).read_text(encoding="utf-8")
    parsed = parse_election(text)
    if isinstance(parsed, ElectionProfile):
        return margin_matrix(parsed)
    return parsed


def method_result(matrix: MarginMatrix, method: str, p: PExponent | None, allow_ties: bool,
                  diagnostics: list[str]) -> MethodResult:
    names = matrix.names
    if method == "ranked-pairs":
        return MethodResult(method, None, names(ranked_pairs(matrix, allow_ties)), None)
    if method == "limit":
        return MethodResult(method, None, names(limit_ordering(matrix, allow_ties)), None)
    if method == "kemeny":
        sol = kemeny_solve(matrix, allow_ties)
        return MethodResult(method, 1, names(sol.ordering), sol.objective, sol.multiplicity, sol.objective)
    if method == "p-norm":
        p = p or PExponent.parse(1)
        sol = p_ordering_solve(matrix, p, allow_ties)
        q = q_sum(matrix, sol.ordering, p)
        if not sol.exact:
            note = f"p={p}: floating-point path, not exact"
            if note not in diagnostics:
                diagnostics.append(note)
        if p.value < 1:
            note = f"p={p} < 1: outside the range the convergence results address"
            if note not in diagnostics:
                diagnostics.append(note)
        return MethodResult(
            method,
            _p_value(p),
            names(sol.ordering),
            _num(p_norm(matrix, sol.ordering, p)),
            sol.multiplicity,
            q.exact if q.exact is not None else _num(q.approx),
            sol.exact,
        )
    raise ValueError(f"unknown method {method!r}")


def ordering_rows(matrix: MarginMatrix, p: PExponent) -> list[OrderingRow]:
    rows = []
    for perm in itertools.permutations(range(matrix.n)):
        q = q_sum(matrix, perm, p)
        rows.append(OrderingRow(
            matrix.names(perm),
            _p_value(p),
            _num(p_norm(matrix, perm, p)),
            q.exact if q.exact is not None else _num(q.approx),
        ))
    return rows


def _matrix_report(matrix: MarginMatrix, allow_ties: bool) -> Report:
    report = Report.for_matrix(matrix)
    if allow_ties and not validate_margins(matrix).ok:
        report.diagnostics.append(OUTSIDE)
    return report


def cmd_tally(args) -> Report:
    matrix = load_matrix(args.input)
    report = _matrix_report(matrix, args.allow_ties)
    p = PExponent.parse(args.p) if args.p is not None else None
    report.methods.append(method_result(matrix, args.method, p, args.allow_ties, report.diagnostics))
    return report


def cmd_compare(args) -> Report:
    matrix = load_matrix(args.input)
    report = _matrix_report(matrix, args.allow_ties)
    ps = [PExponent.parse(x) for x in args.p_list.split(",") if x.strip()]
    for method in ("ranked-pairs", "limit", "kemeny"):
        report.methods.append(method_result(matrix, method, None, args.allow_ties, report.diagnostics))
    for p in ps:
        report.methods.append(method_result(matrix, "p-norm", p, args.allow_ties, report.diagnostics))
    if args.all_orderings or matrix.n <= 4:
        if matrix.n > DEFAULT_MAX_CANDIDATES:
            raise SizeCapError(f"{matrix.n} candidates is too many to list every ordering")
        for p in ps:
            report.orderings.extend(ordering_rows(matrix, p))
    return report


def cmd_converge(args) -> Report:
    matrix = load_matrix(args.input)
    report = Report.for_matrix(matrix)
    conv = convergence_profile(matrix, args.max_p, threads=args.threads)
    report.convergence = {
        "p_star_bound": _num(conv.p_star_bound),
        "cdp_threshold": conv.cdp_threshold,
        "stabilized_at": conv.stabilized_at,
        "agrees": conv.agrees,
        "ranked_pairs": matrix.names(conv.ranked_pairs),
        "limit": matrix.names(conv.limit),
        "flips": conv.flips,
        "trace": [
            {"p": t.p, "ordering": matrix.names(t.ordering), "q_sum": t.q, "multiplicity": t.multiplicity}
            for t in conv.trace
        ],
    }
    report.diagnostics.extend(conv.notes)
    return report


def cmd_simulate(args) -> Report:
    config = SimulationConfig(args.candidates, args.voters, args.trials, args.seed)
    est = condorcet_winner_frequency(config, threads=args.threads)
    report = Report()
    report.simulation = {
        "candidates": config.candidates,
        "voters": config.voters,
        "trials": config.trials,
        "seed": config.seed,
        "hits": est.hits,
        "fraction": _num(est.fraction),
        "half_width_95": _num(est.half_width_95),
    }
    return report


def cmd_matrix(args) -> Report:
    return Report.for_matrix(load_matrix(args.input))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pordering", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", required=True, help="ballots or margins file")
        p.add_argument("--json", action="store_true", help="emit the JSON report")

    p = sub.add_parser("tally", help="order candidates with one method")
    add_input(p)
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--p", default=None, help="exponent for --method p-norm (positive decimal)")
    p.add_argument("--allow-ties", action="store_true", help="break margin ties deterministically")
    p.set_defaults(func=cmd_tally)

    p = sub.add_parser("compare", help="all methods side by side")
    add_input(p)
    p.add_argument("--p-list", default="1,2,3")
    p.add_argument("--allow-ties", action="store_true")
    p.add_argument("--all-orderings", action="store_true", help="list every ordering even for n > 4")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("converge", help="trace p-orderings for p = 1..max-p")
    add_input(p)
    p.add_argument("--max-p", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("simulate", help="Condorcet-winner frequency under impartial culture")
    p.add_argument("--candidates", type=int, required=True)
    p.add_argument("--voters", type=int, default=1001)
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("matrix", help="print the margin-of-victory matrix")
    add_input(p)
    p.set_defaults(func=cmd_matrix)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 2
    except (ElectionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(format_report(report, "json" if args.json else "human"))
    return 0


run = main
