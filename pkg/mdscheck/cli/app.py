"""
mdscheck command line

Usage:
    mdscheck --json classify --g 141 --d 35 --evidence quartic
    mdscheck scan --d-max 15 --catalog
    mdscheck pell --D 32 --N -8
    mdscheck chambers --n1 5 --n2 5 --components "0,1;1,4"

Exit codes: 0 success, 2 invalid input, 3 criterion hypotheses fail.
"""

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

from mdscheck import __version__
from mdscheck.arithmetic.pell import PellProblem, decide
from mdscheck.audit_logger import AuditLogger
from mdscheck.catalog.hilbert import (
    CubicType,
    ci_numerics,
    cubic_numerics,
    large_family,
    low_degree_quartic_catalog,
    quadric_numerics,
    quartic_component,
)
from mdscheck.cli.error_handlers import from_exception
from mdscheck.cli.export_service import COLUMN_LABELS, export_to_csv, render_table
from mdscheck.cli.models import ReportEnvelope
from mdscheck.errors import EXIT_OK, InvalidInput, MDSCheckError
from mdscheck.geometry.blowup import (
    cones_ci,
    cones_extremal_surface,
    cones_super_rigid,
    flip_steps,
    unbalance_degree,
)
from mdscheck.geometry.k3lattice import CurveNumerics
from mdscheck.geometry.linkage import (
    ResidualComponent,
    SkewLinkageSpec,
    chambers,
    linked_numerics,
    potential_contractibility_conditions,
    rigidity,
)
from mdscheck.report_storage import ReportStorage
from mdscheck.settings import get_settings
from mdscheck.verdicts.classify import classify, non_openness_witness, quartic_raw_scan
from mdscheck.verdicts.models import Evidence
from mdscheck.verification.gate_runner import GateRunner

logger = logging.getLogger(__name__)

GLOBAL_OPTIONS = ("json", "csv", "save", "log_level", "func", "command")


@dataclass
class CommandResult:
    """What a command handler hands back to the output layer."""

    result: Any
    certificates: dict[str, Any] = field(default_factory=dict)
    citations: list[dict[str, str]] = field(default_factory=list)
    rows: list[dict] | None = None
    text: str | None = None


# ─── Flag parsing helpers ───────────────────────────────────────────────────

def _int_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(part) for part in text.split(","))
    except ValueError:
        raise InvalidInput(f"expected two comma-separated integers, got {text!r}") from None
    return a, b


def parse_components(text: str) -> tuple[ResidualComponent, ...]:
    """
    "g1,d1;g2,d2;..." with optional per-component flags after the pair:
    q (Q-canonical), nq (not Q-canonical), s=L (L-subcanonical).
    """
    components = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        fields = [f.strip() for f in chunk.split(",")]
        if len(fields) < 2:
            raise InvalidInput(f"component {chunk!r} needs at least g,d")
        try:
            g, d = int(fields[0]), int(fields[1])
        except ValueError:
            raise InvalidInput(f"component {chunk!r} has non-integer numerics") from None
        qcanonical, level = None, None
        for flag in fields[2:]:
            if flag == "q":
                qcanonical = True
            elif flag == "nq":
                qcanonical = False
            elif flag.startswith("s="):
                try:
                    level = int(flag[2:])
                except ValueError:
                    raise InvalidInput(f"bad subcanonical level in {chunk!r}") from None
            else:
                raise InvalidInput(f"unknown component flag {flag!r}")
        components.append(ResidualComponent(g, d, qcanonical, level))
    if not components:
        raise InvalidInput("no components given")
    return tuple(components)


# ─── Command handlers ───────────────────────────────────────────────────────

def cmd_classify(args: argparse.Namespace) -> CommandResult:
    numerics = CurveNumerics(args.g, args.d)
    verdict = classify(numerics, Evidence.parse(args.evidence))
    payload = verdict.to_dict()
    if args.verify:
        runner = GateRunner(audit_logger=AuditLogger("classify"))
        runner.run_from_config(get_settings().gates_path, context={"verdict": verdict})
        payload["verification"] = {"summary": runner.get_summary(), "gates": runner.results}
    return CommandResult(
        payload,
        certificates=verdict.certificates,
        citations=[c.to_dict() for c in verdict.citations],
    )


def cmd_scan(args: argparse.Namespace) -> CommandResult:
    if args.catalog:
        records = [r for r in low_degree_quartic_catalog() if r.numerics.d <= args.d_max]
        rows = [
            {"g": r.numerics.g, "d": r.numerics.d, "dimension": r.dimension,
             "status": r.status.value, "provenance": r.notes[0]}
            for r in records
        ]
        return CommandResult([r.to_dict() for r in records], rows=rows)

    scan_rows = quartic_raw_scan(args.d_max, args.workers)
    rows = [row.to_dict() for row in scan_rows]
    certificates = {f"{row.numerics.g},{row.numerics.d}": row.certificates for row in scan_rows}
    return CommandResult(rows, certificates=certificates, rows=rows)


def cmd_pell(args: argparse.Namespace) -> CommandResult:
    outcome = decide(PellProblem(args.D, args.N))
    status = "solvable" if outcome.solvable else "unsolvable"
    witness = f" witness {outcome.witness}" if outcome.witness else ""
    return CommandResult(
        outcome.to_dict(),
        certificates={"pell": outcome.certificate.to_dict()},
        text=f"{outcome.problem}: {status}{witness} [{outcome.certificate}]",
    )


def cmd_linkage(args: argparse.Namespace) -> CommandResult:
    residual = linked_numerics(args.g, args.d, args.n1, args.n2)
    return CommandResult(
        {"curve": CurveNumerics(args.g, args.d).to_dict(), "n1": args.n1, "n2": args.n2,
         "residual": residual.to_dict()},
        text=f"({args.g}, {args.d}) linked by ({args.n1}, {args.n2}) to {residual}",
    )


def cmd_chambers(args: argparse.Namespace) -> CommandResult:
    spec = SkewLinkageSpec(args.n1, args.n2, parse_components(args.components))
    structure = chambers(spec)
    payload: dict[str, Any] = {
        "spec": spec.to_dict(),
        "rigidity": rigidity(spec).to_dict(),
        "chambers": structure.to_dict(),
    }
    if args.contractibility:
        payload["potential_contractibility"] = potential_contractibility_conditions(spec).to_dict()
    walls = ", ".join(f"{label} = {cls}" for label, cls in structure.wall_sequence())
    return CommandResult(payload, text=f"k = {structure.k}; walls: {walls}")


def cmd_cones(args: argparse.Namespace) -> CommandResult:
    if args.ci:
        n1, n2 = sorted(_int_pair(args.ci))
        return CommandResult(cones_ci(n1, n2).to_dict())
    if args.components:
        if args.n1 is None or args.n2 is None:
            raise InvalidInput("--components needs --n1 and --n2")
        pairs = [(c.g, c.d) for c in parse_components(args.components)]
        return CommandResult(cones_super_rigid(args.n1, args.n2, pairs).to_dict())
    if args.g is None or args.d is None:
        raise InvalidInput("cones needs --g/--d with --surface, --ci, or --n1/--n2/--components")
    cones = cones_extremal_surface(CurveNumerics(args.g, args.d), args.surface)
    return CommandResult(cones.to_dict(), certificates={"r": cones.r})


def cmd_family(args: argparse.Namespace) -> CommandResult:
    record = large_family(args.n)
    return CommandResult(record.to_dict(), certificates=record.certificates)


def cmd_flips(args: argparse.Namespace) -> CommandResult:
    sequence = flip_steps(args.a1, args.a2)
    payload = sequence.to_dict()
    if args.n1 is not None and args.n2 is not None and args.d is not None:
        payload["unbalance_degree"] = unbalance_degree(args.n1, args.n2, args.d)
    return CommandResult(
        payload,
        text=f"k = {sequence.total}, multiplicities {list(sequence.multiplicities)}, final {sequence.final}",
    )


def cmd_component(args: argparse.Namespace) -> CommandResult:
    if args.quadric:
        record = quadric_numerics(*_int_pair(args.quadric))
    elif args.cubic:
        record = cubic_numerics(CubicType.parse(args.cubic))
    elif args.ci:
        record = ci_numerics(*_int_pair(args.ci))
    elif args.quartic:
        if args.g is None or args.d is None:
            raise InvalidInput("--quartic needs --g and --d")
        record = quartic_component(CurveNumerics(args.g, args.d))
    else:
        raise InvalidInput("component needs one of --quadric, --cubic, --ci, --quartic")
    return CommandResult(record.to_dict(), certificates=record.certificates)


def cmd_witness(args: argparse.Namespace) -> CommandResult:
    report = non_openness_witness(args.g_res, args.d_res, args.n1, args.n2, acm=args.acm)
    citations = [c.to_dict() for c in report.special.citations]
    if report.very_general is not None:
        citations = [c.to_dict() for c in report.very_general.citations] + citations
    return CommandResult(report.to_dict(), citations=citations)


# ─── Parser ─────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdscheck",
        description="Mori Dream Space criteria for blowups of P^3 along space curves.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", action="store_true", help="emit the JSON report envelope")
    output.add_argument("--csv", action="store_true", help="emit CSV (tabular commands)")
    parser.add_argument("--save", metavar="DIR", help="also persist the report under DIR")
    parser.add_argument("--log-level", default=None, help="logging level (default MDSCHECK_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=handler)
        return p

    p = add("classify", cmd_classify, "verdict for (g, d) under the given evidence")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--evidence", default=None,
                   help="ci:N1,N2 | aci | surface:S | quartic | linked:G',D',N1,N2[,acm] | none")
    p.add_argument("--verify", action="store_true", help="re-verify certificates through the gates")

    p = add("scan", cmd_scan, "raw quartic hypothesis scan or the low-degree catalog")
    p.add_argument("--d-max", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--raw", action="store_true", default=True)
    mode.add_argument("--catalog", action="store_true")
    p.add_argument("--workers", type=int, default=None)

    p = add("pell", cmd_pell, "decide x^2 - D y^2 = N")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--N", type=int, required=True)

    p = add("linkage", cmd_linkage, "residual numerics under (n1, n2)-linkage")
    for flag in ("--g", "--d", "--n1", "--n2"):
        p.add_argument(flag, type=int, required=True)

    p = add("chambers", cmd_chambers, "Mori chambers of a rigid skew linkage")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--components", required=True, help='"g1,d1[,q|nq][,s=L];g2,d2;..."')
    p.add_argument("--contractibility", action="store_true",
                   help="also report potential contractibility conditions")

    p = add("cones", cmd_cones, "effective, movable and nef cones of the blowup")
    p.add_argument("--g", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--surface", type=int, default=4)
    p.add_argument("--ci", metavar="N1,N2")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--components")

    p = add("family", cmd_family, "member n of the (20n + 1, 5n) family")
    p.add_argument("--n", type=int, required=True)

    p = add("flips", cmd_flips, "blowups balancing O(a1) + O(a2)")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--a2", type=int, required=True)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--d", type=int)

    p = add("component", cmd_component, "Hilbert-scheme component record")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--quadric", metavar="A,B")
    kind.add_argument("--cubic", metavar="K;M1,...,M6")
    kind.add_argument("--ci", metavar="N1,N2")
    kind.add_argument("--quartic", action="store_true")
    p.add_argument("--g", type=int)
    p.add_argument("--d", type=int)

    p = add("witness", cmd_witness, "non-openness of Mori dreamness in a linked family")
    p.add_argument("--g-res", "--gp", dest="g_res", type=int, required=True)
    p.add_argument("--d-res", "--dp", dest="d_res", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--acm", action="store_true", default=None)

    return parser


# ─── Output ─────────────────────────────────────────────────────────────────

def _text_lines(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
        return lines
    return [f"{pad}{value}"]


def render(args: argparse.Namespace, envelope: ReportEnvelope, outcome: CommandResult) -> str:
    if args.json:
        return envelope.to_json()
    if args.csv:
        if outcome.rows is None:
            raise InvalidInput(f"--csv is only available for tabular commands, not {args.command}")
        return export_to_csv(outcome.rows, COLUMN_LABELS)
    if outcome.rows is not None:
        return render_table(outcome.rows, COLUMN_LABELS)
    if outcome.text is not None:
        return outcome.text
    return "\n".join(_text_lines(envelope.to_dict()["result"]))


def _inputs(args: argparse.Namespace) -> dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in GLOBAL_OPTIONS and v is not None}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(levelname)s  %(name)s  %(message)s",
        stream=sys.stderr,
    )

    save_dir = args.save or settings.report_dir
    storage = ReportStorage(save_dir) if save_dir else None
    audit = AuditLogger(args.command, report_storage=storage)

    try:
        outcome = args.func(args)
        envelope = ReportEnvelope(
            command=args.command,
            inputs=_inputs(args),
            result=outcome.result,
            certificates=outcome.certificates,
            citations=outcome.citations,
        )
        text = render(args, envelope, outcome)
    except MDSCheckError as exc:
        error = from_exception(exc)
        audit.record_error(error)
        print(json.dumps(error, ensure_ascii=False, indent=2), file=sys.stderr)
        return exc.exit_code

    print(text)
    report = envelope.to_dict()
    audit.record_run(report, rows=len(outcome.rows) if outcome.rows is not None else None)
    if storage is not None:
        storage.write_report(report, args.command)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
