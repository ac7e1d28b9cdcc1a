"""Command-line surface: bases, action matrices, decomposition tables, and
oracle verification reports as JSON, CSV, or text.

Exit codes: 0 = success / all checks passed, 1 = a verification mismatch,
2 = invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import closedform, modrep
from .curve import BasisSet, GroupElement, action_matrix, degree
from .ff import make_field
from .modrep import GuardError

DEFAULT_SWEEP_P = (3, 5, 7)
DEFAULT_SWEEP_M = (2, 3)


@dataclass
class RunConfig:
    command: str
    p: int = 3
    r: int = 1
    m: int = 1
    format: str = "text"
    group: str = "B"
    element: tuple = None
    oracle: bool = False
    force: bool = False
    p_values: tuple = DEFAULT_SWEEP_P
    m_values: tuple = DEFAULT_SWEEP_M
    out: str = None


def _parse_entry(token, ctx):
    if "," in token:
        return ctx.element([int(c) for c in token.split(",")])
    return ctx.element(int(token))


def _element_from_tokens(tokens, ctx):
    a, b, c, d = (_parse_entry(tok, ctx) for tok in tokens)
    return GroupElement(a, b, c, d)


def _cell(elem):
    if elem.ctx.r == 1:
        return int(elem.val)
    return list(elem.coeffs)


# -- document builders (JSON-shaped dicts; other formats project these) ----


def _doc_basis(config):
    q = config.p**config.r
    basis = BasisSet(q, config.m)
    return 0, {
        "q": q,
        "m": config.m,
        "dim": len(basis),
        "basis": [
            {"i": ix.i, "j": ix.j, "degree": degree(ix, q)} for ix in basis
        ],
    }


def _doc_action(config):
    if config.element is None:
        raise ValueError("action requires --element a b c d")
    q = config.p**config.r
    ctx = make_field(config.p, config.r)
    sigma = _element_from_tokens(config.element, ctx)
    basis = BasisSet(q, config.m)
    mat = action_matrix(sigma, basis)
    return 0, {
        "q": q,
        "p": config.p,
        "r": config.r,
        "m": config.m,
        "element": [[_cell(e) for e in sigma.entries()[:2]],
                    [_cell(e) for e in sigma.entries()[2:]]],
        "matrix": [[_cell(mat[i, j]) for j in range(mat.cols)] for i in range(mat.rows)],
    }


def _summand_list(mult):
    return [
        {"a": lab.a, "b": lab.b, "mult": n}
        for lab, n in sorted(mult.items(), key=lambda kv: (kv[0].b, kv[0].a))
    ]


def _doc_decompose(config):
    if config.r != 1:
        raise ValueError("decompose requires r = 1 (tables exist only for q = p)")
    if config.group == "B":
        bdec = closedform.b_decomposition(config.m, config.p)
        doc = {"summands": _summand_list(bdec.mult)}
        status = 0
        if config.oracle:
            oracle = modrep.decompose_b_oracle(
                modrep.restrict_to_b(modrep.h0_module(config.p, config.m))
            )
            doc["oracle"] = _summand_list(oracle)
            diff = []
            for lab in sorted(set(bdec.mult) | set(oracle), key=lambda l: (l.b, l.a)):
                want, got = bdec.mult.get(lab, 0), oracle.get(lab, 0)
                if want != got:
                    diff.append({"a": lab.a, "b": lab.b, "closed": want, "oracle": got})
            doc["diff"] = diff
            status = 1 if diff else 0
        return status, doc
    if config.oracle:
        raise ValueError("--oracle applies only to --group B")
    gdec = closedform.g_decomposition(config.m, config.p)
    return 0, {
        "summands": _summand_list(gdec.nonproj),
        "projectives": [
            {"t": t, "n": n} for t, n in sorted(gdec.proj.items()) if n
        ],
        "factors": [{"t": t, "d": gdec.factors[t]} for t in sorted(gdec.factors)],
    }


def _doc_factors(config):
    if config.r != 1:
        raise ValueError("factors requires r = 1 (tables exist only for q = p)")
    d = closedform.comp_factors_h0(config.m, config.p)
    return 0, {"factors": [{"t": t, "d": d[t]} for t in sorted(d)]}


def _report_dict(report):
    return {
        "p": report.p,
        "m": report.m,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in report.checks
        ],
        "all_passed": report.all_passed,
    }


def _doc_verify(config):
    report = modrep.verify_full(config.p, config.m, force=config.force)
    return (0 if report.all_passed else 1), _report_dict(report)


def _doc_sweep(config):
    grid = []
    ok = True
    for p in config.p_values:
        for m in config.m_values:
            report = modrep.verify_full(p, m, force=config.force)
            ok = ok and report.all_passed
            grid.append(_report_dict(report))
    return (0 if ok else 1), {"grid": grid, "all_passed": ok}


_BUILDERS = {
    "basis": _doc_basis,
    "action": _doc_action,
    "decompose": _doc_decompose,
    "factors": _doc_factors,
    "verify": _doc_verify,
    "sweep": _doc_sweep,
}


# -- renderers ---------------------------------------------------------------


def _text_matrix(rows):
    return "\n".join("  " + " ".join(str(v) for v in row) for row in rows)


def _dlist(factor_recs):
    return "[" + ",".join(str(rec["d"]) for rec in factor_recs) + "]"


def _render_text(command, doc):
    lines = []
    if command == "basis":
        lines.append(f"q={doc['q']} m={doc['m']} dim={doc['dim']}")
        for rec in doc["basis"]:
            lines.append(f"w({rec['i']},{rec['j']})  degree {rec['degree']}")
    elif command == "action":
        lines.append(
            f"q={doc['q']} r={doc['r']} m={doc['m']} element={doc['element']}"
        )
        lines.append(_text_matrix(doc["matrix"]))
    elif command == "decompose":
        lines.append("summands:")
        for rec in doc["summands"]:
            lines.append(f"  U({rec['a']},{rec['b']}) x {rec['mult']}")
        if "projectives" in doc:
            lines.append("projective covers:")
            for rec in doc["projectives"]:
                lines.append(f"  P(V_{rec['t']}) x {rec['n']}")
            lines.append("factors: d = " + _dlist(doc["factors"]))
        if "oracle" in doc:
            lines.append("oracle:")
            for rec in doc["oracle"]:
                lines.append(f"  U({rec['a']},{rec['b']}) x {rec['mult']}")
            if doc["diff"]:
                lines.append("diff:")
                for rec in doc["diff"]:
                    lines.append(
                        f"  ({rec['a']},{rec['b']}): closed {rec['closed']} != oracle {rec['oracle']}"
                    )
            else:
                lines.append("diff: none (oracle agrees)")
    elif command == "factors":
        lines.append("d = " + _dlist(doc["factors"]))
    elif command == "verify":
        lines.append(_verify_text(doc))
    elif command == "sweep":
        for rec in doc["grid"]:
            lines.append(_verify_text(rec))
        lines.append("sweep: " + ("all passed" if doc["all_passed"] else "FAILED"))
    return "\n".join(lines) + "\n"


def _verify_text(rec):
    lines = [f"verify p={rec['p']} m={rec['m']}"]
    for c in rec["checks"]:
        lines.append(f"  [{'pass' if c['passed'] else 'FAIL'}] {c['name']}: {c['detail']}")
    lines.append("result: " + ("all checks passed" if rec["all_passed"] else "FAILED"))
    return "\n".join(lines)


def _csv_rows(command, doc):
    if command == "basis":
        yield ("i", "j", "degree")
        for rec in doc["basis"]:
            yield (rec["i"], rec["j"], rec["degree"])
    elif command == "action":
        yield ("row", "col", "value")
        for i, row in enumerate(doc["matrix"]):
            for j, v in enumerate(row):
                yield (i, j, v if isinstance(v, int) else ";".join(map(str, v)))
    elif command == "decompose":
        if "oracle" in doc:
            closed = {(r["a"], r["b"]): r["mult"] for r in doc["summands"]}
            oracle = {(r["a"], r["b"]): r["mult"] for r in doc["oracle"]}
            yield ("a", "b", "closed", "oracle")
            for a, b in sorted(set(closed) | set(oracle), key=lambda k: (k[1], k[0])):
                yield (a, b, closed.get((a, b), 0), oracle.get((a, b), 0))
        elif "projectives" in doc:
            yield ("kind", "a", "b", "t", "value")
            for rec in doc["summands"]:
                yield ("summand", rec["a"], rec["b"], "", rec["mult"])
            for rec in doc["projectives"]:
                yield ("projective", "", "", rec["t"], rec["n"])
            for rec in doc["factors"]:
                yield ("factor", "", "", rec["t"], rec["d"])
        else:
            yield ("a", "b", "mult")
            for rec in doc["summands"]:
                yield (rec["a"], rec["b"], rec["mult"])
    elif command == "factors":
        yield ("t", "d")
        for rec in doc["factors"]:
            yield (rec["t"], rec["d"])
    elif command in ("verify", "sweep"):
        yield ("p", "m", "check", "passed", "detail")
        recs = doc["grid"] if command == "sweep" else [doc]
        for rec in recs:
            for c in rec["checks"]:
                yield (rec["p"], rec["m"], c["name"], c["passed"], c["detail"])


def _render(command, doc, fmt):
    if fmt == "json":
        return json.dumps(doc, separators=(",", ":")) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in _csv_rows(command, doc):
            writer.writerow(row)
        return buf.getvalue()
    return _render_text(command, doc)


def run(config, stream=None):
    """Execute one command; emits the rendered document, returns exit status."""
    try:
        status, doc = _BUILDERS[config.command](config)
    except (ValueError, GuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rendered = _render(config.command, doc, config.format)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(rendered)
    elif stream is not None:
        stream.write(rendered)
    else:
        sys.stdout.write(rendered)
    return status


def build_parser():
    parser = argparse.ArgumentParser(
        prog="drinfeld",
        description=(
            "Exact holomorphic m-differentials on the Drinfeld curve: bases, "
            "SL2(F_q) action matrices, Borel and full-group decomposition "
            "tables, and an independent matrix oracle that re-derives them."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, m_default=None):
        sp.add_argument("--p", type=int, required=True, help="odd prime p")
        sp.add_argument("--r", type=int, default=1, help="extension degree (q = p^r)")
        if m_default is None:
            sp.add_argument("--m", type=int, required=True, help="tensor power m")
        else:
            sp.add_argument("--m", type=int, default=m_default)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", help="write output to this path instead of stdout")

    common(sub.add_parser("basis", help="ordered monomial basis with degrees"))

    sp = sub.add_parser("action", help="action matrix of one group element")
    common(sp)
    sp.add_argument(
        "--element",
        nargs=4,
        required=True,
        metavar=("A", "B", "C", "D"),
        help="entries of [[A,B],[C,D]]; ints mod p, or comma-separated "
        "coefficient vectors when r > 1",
    )

    sp = sub.add_parser("decompose", help="B or G decomposition table (q = p)")
    common(sp)
    sp.add_argument("--group", choices=("B", "G"), default="B")
    sp.add_argument(
        "--oracle",
        action="store_true",
        help="also run the matrix oracle and report a cellwise diff (group B)",
    )

    common(sub.add_parser("factors", help="composition factor multiplicities d_t"))

    sp = sub.add_parser("verify", help="run the four oracle checks for one (p, m)")
    common(sp)
    sp.add_argument("--force", action="store_true", help="override size guards")

    sp = sub.add_parser("sweep", help="verify over a grid of (p, m) points")
    sp.add_argument("--p-values", default="3,5,7", help="comma list of primes")
    sp.add_argument("--m-values", default="2,3", help="comma list of tensor powers")
    sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
    sp.add_argument("--out", help="write output to this path instead of stdout")
    sp.add_argument("--force", action="store_true", help="override size guards")
    return parser


def config_from_args(args):
    cfg = RunConfig(command=args.command)
    for name in ("p", "r", "m", "format", "group", "element", "oracle", "force", "out"):
        if hasattr(args, name):
            value = getattr(args, name)
            if value is not None:
                setattr(cfg, name, tuple(value) if name == "element" else value)
    if args.command == "sweep":
        cfg.p_values = tuple(int(v) for v in args.p_values.split(","))
        cfg.m_values = tuple(int(v) for v in args.m_values.split(","))
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
