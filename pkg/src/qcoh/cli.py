"""Command-line front end: ``qcoh <command> [options]``.

Exit codes: 0 success, 1 failed verification, 2 violated precondition,
64 usage error.  Payloads go to stdout (or ``--out``), traces to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .algebra import Element
from .errors import PreconditionError
from .gw import GWQuery, donaldson_line_value, gw_value, representative_queries
from .jacobian import VOLUME_CONVENTION, extension_chern_classes, grr_extension_chern_character
from .qh import InvariantQuantumRing, hat_class_table, hat_text, parse_hat
from .quotient import (
    QuotientPresentation,
    basis_monomials,
    poincare_polynomial_invariant,
    primitive_dimension_direct,
    sp_decomposition,
)
from .relations import ABG, FLAVORS, classical_relations, floer_relations, quantum_relations

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION, EXIT_USAGE = 0, 1, 2, 64
DEFAULT_MAX_GENUS = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _element_payload(x: Element, rename=None) -> dict:
    return {"text": x.to_text(rename), "terms": x.to_json(rename)}


def _conventions(genus, conjectural: bool) -> dict:
    out = {"volume": VOLUME_CONVENTION, "conjectural": conjectural}
    if isinstance(genus, int) and genus >= 1:
        out["hat_classes"] = hat_class_table(genus).describe()
    return out


def _require_genus(args, low: int = 1) -> int:
    g = args.genus
    if g is None:
        raise UsageError(f"{args.command}: --genus is required")
    if g < low:
        raise PreconditionError(f"{args.command} needs genus >= {low}, got {g}")
    return g


def _quantum_guard(g: int, args) -> bool:
    if g >= 4 and not args.conjectural:
        raise PreconditionError(
            f"quantum data for genus {g} is conjectural; rerun with --conjectural to accept it"
        )
    return g >= 4


# -- commands ---------------------------------------------------------------------------


def cmd_relations(args):
    g = _require_genus(args)
    if args.flavor == "quantum":
        conj = _quantum_guard(g, args)
        triple = quantum_relations(g)
    else:
        conj = False
        triple = classical_relations(g) if args.flavor == "classical" else floer_relations(g)
    rename = triple.rename()
    payload = {
        "flavor": args.flavor,
        "relations": [_element_payload(r, rename) for r in triple],
    }
    lines = [f"{args.flavor} relations, genus {g}" + (" [CONJECTURAL]" if conj else "")]
    lines += [f"  R{i} = {t}" for i, t in enumerate(triple.to_text(), start=1)]
    return payload, lines, conj, []


def cmd_basis(args):
    g = _require_genus(args)
    mons = basis_monomials(g)
    poincare = poincare_polynomial_invariant(g)
    texts = [Element(ABG, {m: 1}).to_text() for m in mons]
    payload = {
        "dimension": len(mons),
        "basis": texts,
        "graded_dimensions": {str(d): n for d, n in enumerate(poincare) if n},
    }
    lines = [f"basis of Q[a,b,g]/I_{g}: dimension {len(mons)}"]
    lines += [f"  {t}" for t in texts]
    lines.append("graded dimensions: " + ", ".join(f"deg {d}: {n}" for d, n in enumerate(poincare) if n))
    return payload, lines, False, []


def cmd_nf(args):
    g = _require_genus(args)
    if args.expr is None:
        raise UsageError("nf: --expr is required")
    conj = False
    if args.mode == "quantum":
        conj = _quantum_guard(g, args)
        ring = InvariantQuantumRing(g, conjectural=conj)
        pres = ring.presentation
        if args.max_degree is not None:
            pres = QuotientPresentation(g, ring.relations.relations, "filtered", args.max_degree)
        x = parse_hat(args.expr)
        rename = {"a": "ah", "b": "bh", "g": "gh"}
    else:
        pres = QuotientPresentation(g, max_degree=args.max_degree)
        x = ABG.parse(args.expr)
        rename = None
    nf = pres.normal_form(x)
    payload = {
        "mode": args.mode,
        "input": _element_payload(x, rename),
        "normal_form": _element_payload(nf, rename),
        "working_degree_bound": pres.max_degree,
    }
    lines = [f"NF = {nf.to_text(rename)}" + (" [CONJECTURAL]" if conj else "")]
    return payload, lines, conj, []


def cmd_decompose(args):
    g = _require_genus(args)
    dec = sp_decomposition(g)
    rows = []
    for s in dec.summands:
        row = {
            "k": s.k,
            "primitive_dim": s.primitive_dim,
            "ring_genus": s.tensor_genus,
            "ring_dim": s.ring_dim,
            "dimension": s.dimension,
        }
        if args.direct:
            row["primitive_dim_direct"] = primitive_dimension_direct(g, s.k)
        rows.append(row)
    payload = {"summands": rows, "total": dec.total}
    lines = [f"H*(M_Sigma), genus {g} = sum_k Lambda_0^k H^3 (x) Q[a,b,g]/I_(g-k)"]
    for r in rows:
        extra = f"  (direct {r['primitive_dim_direct']})" if args.direct else ""
        lines.append(
            f"  k={r['k']}: {r['primitive_dim']} x {r['ring_dim']} = {r['dimension']}{extra}"
        )
    lines.append(f"  total {dec.total}")
    return payload, lines, False, []


def cmd_grr(args):
    g = _require_genus(args, 2)
    trace: list = []
    ch = grr_extension_chern_character(g, trace)
    classes = extension_chern_classes(g)
    payload = {
        "trace": trace,
        "chern_character": _element_payload(ch),
        "chern_classes": [c.to_text() for c in classes],
    }
    lines = list(trace)
    lines += [f"c_{i}(E) = {c.to_text()}" for i, c in enumerate(classes, start=1)]
    return payload, lines, False, []


def _parse_psi(text) -> tuple:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise PreconditionError(f"--psi must be a comma-separated list of integers, got {text!r}")


def cmd_gw(args):
    g = _require_genus(args, 0)
    q = GWQuery(g, args.a, args.b, _parse_psi(args.psi))
    q.validate()
    value = gw_value(q, args.engine)
    don = donaldson_line_value(q)
    payload = {
        "query": {"a": q.a, "b": q.b, "psi": list(q.psi)},
        "value": str(value),
        "donaldson": str(don),
        "engine": args.engine,
        "convention": VOLUME_CONVENTION,
    }
    lines = [f"Psi(a^{q.a} b^{q.b} psi{list(q.psi)}) = {value}", f"Donaldson value = {don}"]
    return payload, lines, False, []


def cmd_gw_table(args):
    g = _require_genus(args, 3)
    if g > args.max_genus:
        raise PreconditionError(f"genus {g} exceeds the table bound {args.max_genus}; raise --max-genus")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["genus", "a", "b", "psi", "value", "donaldson"])
    rows = []
    for q in representative_queries(g):
        v = gw_value(q, args.engine)
        d = donaldson_line_value(q)
        w.writerow([g, q.a, q.b, " ".join(map(str, q.psi)), str(v), str(d)])
        rows.append({"a": q.a, "b": q.b, "psi": list(q.psi), "value": str(v), "donaldson": str(d)})
    return {"rows": rows, "csv": buf.getvalue()}, None, False, []


def cmd_qmul(args):
    g = _require_genus(args)
    if args.expr is None:
        raise UsageError("qmul: --expr is required")
    conj = _quantum_guard(g, args)
    ring = InvariantQuantumRing(g, conjectural=conj)
    x = parse_hat(args.expr)
    prod = ring.normal_form(x)
    rename = {"a": "ah", "b": "bh", "g": "gh"}
    payload = {"input": args.expr, "product": _element_payload(prod, rename)}
    lines = [f"{args.expr} = {hat_text(prod)}" + (" [CONJECTURAL]" if conj else "")]
    return payload, lines, conj, []


def cmd_verify(args):
    from .verify import run_suite

    g = args.genus if args.genus is not None else 3
    reports = run_suite(args.suite, g)
    payload = {
        "suite": args.suite,
        "passed": all(r.passed for r in reports),
        "reports": [r.to_json() for r in reports],
    }
    lines = []
    trace = []
    for r in reports:
        for c in r.checks:
            mark = "PASS" if c.passed else "FAIL"
            detail = f"  [{c.detail}]" if c.detail and not c.passed else ""
            lines.append(f"{mark} {r.name}: {c.label}{detail}")
        trace += [f"{r.name}: {t}" for t in r.trace]
    lines.append("all passed" if payload["passed"] else "FAILURES present")
    return payload, lines, False, trace


COMMANDS = {
    "relations": cmd_relations,
    "basis": cmd_basis,
    "nf": cmd_nf,
    "decompose": cmd_decompose,
    "grr": cmd_grr,
    "gw": cmd_gw,
    "gw-table": cmd_gw_table,
    "qmul": cmd_qmul,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--genus", type=int)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--conjectural", action="store_true")
    common.add_argument("--out")
    common.add_argument("--max-degree", type=int, dest="max_degree")

    p = _Parser(prog="qcoh", description="Quantum cohomology of the moduli of odd rank-two bundles.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sp = sub.add_parser("relations", parents=[common], help="relation triples")
    sp.add_argument("--flavor", choices=FLAVORS, default="classical")
    sub.add_parser("basis", parents=[common], help="monomial basis of the invariant ring")
    sp = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    sp.add_argument("--mode", choices=("classical", "quantum"), default="classical")
    sp.add_argument("--expr")
    sp = sub.add_parser("decompose", parents=[common], help="Sp(2g) decomposition")
    sp.add_argument("--direct", action="store_true", help="also count primitives by kernel rank")
    sub.add_parser("grr", parents=[common], help="GRR trace for ch(E)")
    for name in ("gw", "gw-table"):
        sp = sub.add_parser(name, parents=[common], help="line Gromov-Witten invariants")
        sp.add_argument("--engine", choices=("both", "direct", "qhn"), default="both")
        if name == "gw":
            sp.add_argument("--a", type=int, default=0)
            sp.add_argument("--b", type=int, default=0)
            sp.add_argument("--psi", default="")
        else:
            sp.add_argument("--max-genus", type=int, default=DEFAULT_MAX_GENUS, dest="max_genus")
    sp = sub.add_parser("qmul", parents=[common], help="quantum product in the invariant ring")
    sp.add_argument("--expr")
    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument(
        "--suite",
        choices=("relations", "quotient", "grr", "lemma9", "gw", "prop19", "qring", "kernel", "all"),
        default="all",
    )
    return p


def _render(args, payload, lines, conj, status) -> str:
    if args.format == "json":
        env = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "genus": args.genus,
            "conventions": _conventions(args.genus, conj),
            "payload": payload,
            "status": status,
        }
        return json.dumps(env, indent=2, sort_keys=True, default=str) + "\n"
    if lines is None:  # CSV tables
        return payload["csv"]
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError(build_parser().format_usage() + "qcoh: error: a command is required")
    except UsageError as e:
        print(str(e), file=stderr)
        return EXIT_USAGE
    try:
        payload, lines, conj, trace = COMMANDS[args.command](args)
    except UsageError as e:
        print(str(e), file=stderr)
        return EXIT_USAGE
    except ValueError as e:  # PreconditionError and parse errors
        print(f"qcoh {args.command}: precondition violated: {e}", file=stderr)
        return EXIT_PRECONDITION
    except AssertionError as e:
        print(f"qcoh {args.command}: internal check failed: {e}", file=stderr)
        return EXIT_FAIL
    code = EXIT_OK
    if args.command == "verify" and not payload["passed"]:
        code = EXIT_FAIL
    text = _render(args, payload, lines, conj, "ok" if code == EXIT_OK else "failed")
    for t in trace:
        print(t, file=stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
