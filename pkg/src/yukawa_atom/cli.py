"""Command-line front end.

Subcommands:
  level    one (Z, n, l) energy with its per-order breakdown
  table    a shell's energies over a list of Z values
  verify   perturbative totals against the direct Numerov eigensolver
  compare  regenerated energies against a bundled or user reference CSV

Exit codes: 0 ok, 1 comparison above tolerance, 2 usage or file errors,
3 eigensolver non-convergence.  Floats print with 9 significant digits so
identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .oracle import NoBoundState, NonConvergence, solve_bound_state
from .perturbation import (
    AtomicSystem,
    QuantumState,
    ScreeningLaw,
    ScreeningModel,
    UnitSystem,
    energy_breakdown,
    screening_delta,
    to_kev,
)
from .refdata import (
    SHELL_QUANTUM_NUMBERS,
    DuplicateKey,
    MissingReference,
    ParseError,
    ReferenceSource,
    SignViolation,
    bundled_reference_path,
    compare as compare_datasets,
    load_reference,
)

#: Oracle disagreement above which a verify row is flagged.
BREAKDOWN_REL_THRESHOLD = 0.1

#: Z values covered by the bundled reference tables ('paper' list token).
BUNDLED_Z = {
    "E00": (3, 4, 5, 6, 7, 8, 9, 14, 19, 24, 29, 34, 39, 44, 49, 54, 59, 64, 69, 74, 79, 84),
    "E01": (9, 14, 19, 24, 29, 34, 39, 44, 49, 54, 59, 64, 69, 74, 79, 84),
    "E10": (9, 14, 19, 24, 29, 34, 39, 44, 49, 54, 59, 64, 69, 74, 79, 84),
    "E11": (9, 14, 19, 24, 29, 34, 39, 44, 49, 54, 59, 64, 69, 74, 79, 84),
}


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.9g}"
    if value is None:
        return ""
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return float(f"{value:.9g}")
    return value


def _render(rows, columns, fmt, summary=None, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        payload = {"rows": [{k: _json_value(r.get(k)) for k in columns} for r in rows]}
        if summary is not None:
            payload["summary"] = {k: _json_value(v) for k, v in summary.items()}
        stream.write(json.dumps(payload, indent=2) + "\n")
        return
    if fmt == "csv":
        stream.write(",".join(columns) + "\n")
        for r in rows:
            stream.write(",".join(_fmt(r.get(k)) for k in columns) + "\n")
        if summary is not None:
            stream.write("# " + ", ".join(f"{k}={_fmt(v)}" for k, v in summary.items()) + "\n")
        return
    cells = [[_fmt(r.get(k)) for k in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) if cells else len(c)
              for i, c in enumerate(columns)]
    stream.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for row in cells:
        stream.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
    if summary is not None:
        stream.write(", ".join(f"{k}={_fmt(v)}" for k, v in summary.items()) + "\n")


def _parse_z_spec(text: str, shell: str, parser) -> list[int]:
    """Z list syntax: ints, 'a..b' ranges, 'paper', 'a..b:paper', commas."""
    values: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token == "paper":
            values.extend(BUNDLED_Z[shell])
            continue
        restrict_paper = token.endswith(":paper")
        if restrict_paper:
            token = token[: -len(":paper")]
        if ".." in token:
            try:
                lo_s, hi_s = token.split("..")
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                parser.error(f"bad Z range {token!r}")
            if restrict_paper:
                values.extend(z for z in BUNDLED_Z[shell] if lo <= z <= hi)
            else:
                values.extend(range(lo, hi + 1))
        else:
            try:
                values.append(int(token))
            except ValueError:
                parser.error(f"bad Z value {token!r}")
    if not values:
        parser.error("empty Z list")
    seen = set()
    unique = [z for z in values if not (z in seen or seen.add(z))]
    return sorted(unique)


def _parse_state(text: str, parser) -> QuantumState:
    try:
        n_s, l_s = text.split(",")
        return QuantumState(int(n_s), int(l_s))
    except ValueError:
        parser.error(f"bad state {text!r}; expected 'n,l'")


@dataclass(frozen=True)
class RunConfig:
    """Validated shared command configuration."""

    delta0: float = 0.98
    screening: ScreeningLaw = ScreeningLaw.FERMI_AMALDI
    hartree_to_ev: float = 27.212
    order: int = 3
    output_format: str = "table"

    def __post_init__(self):
        if self.delta0 < 0:
            raise ValueError(f"delta0 must be non-negative, got {self.delta0}")
        if self.hartree_to_ev <= 0:
            raise ValueError(f"hartree-ev must be positive, got {self.hartree_to_ev}")
        if self.order not in (0, 1, 2, 3):
            raise ValueError(f"order must be in 0..3, got {self.order}")
        if self.output_format not in ("table", "csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    @property
    def model(self) -> ScreeningModel:
        return ScreeningModel(variant=self.screening, delta0=self.delta0)

    @property
    def units(self) -> UnitSystem:
        return UnitSystem(hartree_to_ev=self.hartree_to_ev)


def _config(args) -> RunConfig:
    return RunConfig(
        delta0=args.delta0,
        screening=ScreeningLaw(args.screening),
        hartree_to_ev=args.hartree_ev,
        order=args.order,
        output_format=args.format,
    )


def _breakdown_row(z: int, state: QuantumState, cfg: RunConfig) -> dict:
    delta = screening_delta(z, cfg.model)
    b = energy_breakdown(float(z), state, delta, cfg.order)
    return {
        "z": z,
        "n": state.n,
        "l": state.l,
        "order": cfg.order,
        "delta": delta,
        "e0_hartree": b.e0,
        "a_delta_hartree": b.shift_const,
        "e1_hartree": b.e1,
        "e2_hartree": b.e2,
        "e3_hartree": b.e3,
        "total_hartree": b.total,
        "total_kev": to_kev(b.total, cfg.units),
        "flag": "SERIES_SUSPECT" if b.series_suspect else "",
    }


_BREAKDOWN_COLUMNS = ["z", "n", "l", "order", "delta", "e0_hartree", "a_delta_hartree",
                      "e1_hartree", "e2_hartree", "e3_hartree", "total_hartree",
                      "total_kev", "flag"]


def _ordered_map(fn, items):
    """Fan out independent computations; results keep the input order."""
    if len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(8, len(items))) as pool:
        return list(pool.map(fn, items))


def cmd_level(args, parser) -> int:
    cfg = _config(args)
    state = QuantumState(args.n, args.l)
    row = _breakdown_row(args.z, state, cfg)
    _render([row], _BREAKDOWN_COLUMNS, cfg.output_format)
    return 0


def cmd_table(args, parser) -> int:
    if args.shell not in SHELL_QUANTUM_NUMBERS:
        parser.error(f"unknown shell {args.shell!r}; choose from {sorted(SHELL_QUANTUM_NUMBERS)}")
    cfg = _config(args)
    n, l = SHELL_QUANTUM_NUMBERS[args.shell]
    state = QuantumState(n, l)
    z_list = _parse_z_spec(args.z, args.shell, parser)
    rows = _ordered_map(
        lambda z: {"shell": args.shell, **_breakdown_row(z, state, cfg)},
        z_list,
    )
    _render(rows, ["shell"] + _BREAKDOWN_COLUMNS, cfg.output_format)
    return 0


def cmd_verify(args, parser) -> int:
    cfg = _config(args)
    states = [_parse_state(s, parser) for s in (args.state or ["0,0"])]
    z_list = _parse_z_spec(args.z, "E00", parser)
    jobs = [(z, st) for z in z_list for st in states]

    def run(job):
        z, st = job
        system = AtomicSystem(z)
        delta = screening_delta(z, cfg.model)
        b = energy_breakdown(system.a, st, delta, cfg.order)
        row = {
            "z": z, "n": st.n, "l": st.l, "order": cfg.order,
            "perturbative_hartree": b.total,
            "perturbative_kev": to_kev(b.total, cfg.units),
            "oracle_hartree": None, "oracle_kev": None,
            "abs_diff_hartree": None, "rel_diff": None,
            "nodes": None, "grid_points": None, "flag": "",
        }
        try:
            res = solve_bound_state(system, delta, st)
        except NoBoundState:
            row["flag"] = "NO_BOUND_STATE"
            return row, None
        except NonConvergence as exc:
            row["oracle_hartree"] = exc.result.energy
            row["flag"] = "NON_CONVERGENCE"
            return row, exc
        row["oracle_hartree"] = res.energy
        row["oracle_kev"] = to_kev(res.energy, cfg.units)
        row["abs_diff_hartree"] = abs(b.total - res.energy)
        row["rel_diff"] = row["abs_diff_hartree"] / abs(res.energy)
        row["nodes"] = res.nodes_found
        row["grid_points"] = res.grid_points
        if row["rel_diff"] > BREAKDOWN_REL_THRESHOLD or b.series_suspect:
            row["flag"] = "BREAKDOWN"
        return row, None

    results = _ordered_map(run, jobs)
    rows = [r for r, _ in results]
    failures = [e for _, e in results if e is not None]
    columns = ["z", "n", "l", "order", "perturbative_hartree", "oracle_hartree",
               "perturbative_kev", "oracle_kev", "abs_diff_hartree", "rel_diff",
               "nodes", "grid_points", "flag"]
    _render(rows, columns, cfg.output_format)
    if failures:
        print(f"error: {len(failures)} oracle run(s) did not converge", file=sys.stderr)
        return 3
    return 0


def cmd_compare(args, parser) -> int:
    if args.shell not in SHELL_QUANTUM_NUMBERS:
        parser.error(f"unknown shell {args.shell!r}; choose from {sorted(SHELL_QUANTUM_NUMBERS)}")
    cfg = _config(args)
    source = ReferenceSource(args.source)
    try:
        path = args.reference or bundled_reference_path(args.shell)
        dataset = load_reference(path)
    except (OSError, ParseError, DuplicateKey, SignViolation, MissingReference) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    n, l = SHELL_QUANTUM_NUMBERS[args.shell]
    state = QuantumState(n, l)
    z_values = sorted({r.z for r in dataset.rows if r.shell_label == args.shell
                       and r.source == source})
    if args.z:
        z_values = _parse_z_spec(args.z, args.shell, parser)
    computed = [
        (z, args.shell, to_kev(
            energy_breakdown(float(z), state, screening_delta(z, cfg.model), cfg.order).total,
            cfg.units))
        for z in z_values
    ]
    try:
        report = compare_datasets(dataset, computed, source)
    except MissingReference as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    rows = [
        {"z": e.z, "shell": e.shell_label, "computed_kev": e.computed_kev,
         "reference_kev": e.reference_kev, "abs_diff_kev": e.abs_diff_kev,
         "rel_diff": e.rel_diff}
        for e in report.rows
    ]
    summary = {
        "max_abs_diff": report.summary.max_abs_diff,
        "max_rel_diff": report.summary.max_rel_diff,
        "worst_z": report.summary.worst_z,
        "tolerance": args.tolerance,
        "source": source.value,
    }
    _render(rows, ["z", "shell", "computed_kev", "reference_kev", "abs_diff_kev", "rel_diff"],
            cfg.output_format, summary=summary)
    return 0 if report.summary.max_rel_diff <= args.tolerance else 1


def _add_config_flags(sub):
    sub.add_argument("--order", type=int, default=3, choices=(0, 1, 2, 3),
                     help="highest correction order to include")
    sub.add_argument("--delta0", type=float, default=0.98,
                     help="screening strength coefficient (0 gives pure Coulomb)")
    sub.add_argument("--screening", choices=("thomas_fermi", "fermi_amaldi"),
                     default="fermi_amaldi", help="Z-dependence of the screening parameter")
    sub.add_argument("--hartree-ev", type=float, default=27.212, dest="hartree_ev",
                     help="eV per Hartree used for keV output")
    sub.add_argument("--format", choices=("table", "csv", "json"), default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yukawa-atom",
        description="Shell binding energies for the static screened Coulomb potential.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_level = subs.add_parser("level", help="one level with its per-order breakdown")
    p_level.add_argument("--z", type=int, required=True, help="atomic number")
    p_level.add_argument("--n", type=int, required=True, help="radial quantum number")
    p_level.add_argument("--l", type=int, required=True, help="orbital quantum number")
    _add_config_flags(p_level)
    p_level.set_defaults(func=cmd_level)

    p_table = subs.add_parser("table", help="energies of one shell over many Z")
    p_table.add_argument("--shell", required=True, help="E00, E01, E10 or E11")
    p_table.add_argument("--z", default="paper",
                         help="Z list: ints, 'a..b', 'paper', 'a..b:paper', comma separated")
    _add_config_flags(p_table)
    p_table.set_defaults(func=cmd_table)

    p_verify = subs.add_parser("verify", help="perturbative totals vs the direct eigensolver")
    p_verify.add_argument("--z", required=True,
                          help="Z list: ints, 'a..b', 'paper', comma separated")
    p_verify.add_argument("--state", action="append",
                          help="state as 'n,l'; repeatable (default 0,0)")
    _add_config_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_cmp = subs.add_parser("compare", help="regenerated energies vs a reference CSV")
    p_cmp.add_argument("--shell", required=True, help="E00, E01 or E10 (E11 has no table)")
    p_cmp.add_argument("--z", default=None, help="restrict to these Z values")
    p_cmp.add_argument("--reference", default=None, help="reference CSV path (default: bundled)")
    p_cmp.add_argument("--tolerance", type=float, default=1e-4,
                       help="maximum acceptable relative difference")
    p_cmp.add_argument("--source", default="present_work",
                       choices=[s.value for s in ReferenceSource],
                       help="reference column to compare against")
    _add_config_flags(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except ValueError as exc:
        parser.error(str(exc))
        return 2  # unreachable; parser.error exits


if __name__ == "__main__":
    sys.exit(main())
