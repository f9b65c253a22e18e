"""Command-line front end.  Every subcommand writes one JSON document.

Exit status: 0 success, 1 usage error, 2 domain error (invalid weight,
pole, singular system), 3 when ``verify`` finds a failing check.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Any, Sequence

from . import invariants as inv
from . import matrix_rep as mr
from .algebra_core import (
    AlgebraSignature,
    Convention,
    GradedIndex,
    Weight,
    casimir_eigenvalue,
    format_weight,
    parse_weight,
    rho,
    validate_dominant,
)
from .branching import branch_enumerate, index_sets
from .char_roots import MIDDLE_RULES, characteristic_roots, extended_labels
from .errors import OspError
from .scalars import format_scalar
from .verify import SUITES, run_suites

SCHEMA = "ospchar/1"
SUBCOMMANDS = ("roots", "rho", "casimir", "branch", "invariants", "matrep", "verify")
BASES = ("racah", "cartan-weyl")

log = logging.getLogger("ospchar")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(message)


@dataclass
class CommandRequest:
    subcommand: str
    m: int
    n: int
    weight: str | None = None
    child_weight: str | None = None
    convention: str = "canonical"
    middle_root: str = "formula"
    basis: str = "racah"
    limit: bool = False
    suite: str = "all"
    output: str | None = None
    verbosity: int = 0

    def to_argv(self) -> list[str]:
        argv = [self.subcommand, "--m", str(self.m), "--n", str(self.n)]
        if self.weight is not None:
            argv += ["--weight", self.weight]
        if self.child_weight is not None:
            argv += ["--child-weight", self.child_weight]
        argv += ["--convention", self.convention, "--middle-root", self.middle_root]
        argv += ["--basis", self.basis, "--suite", self.suite]
        if self.limit:
            argv.append("--limit")
        if self.output is not None:
            argv += ["--output", self.output]
        argv += ["-v"] * self.verbosity
        return argv

    @classmethod
    def from_argv(cls, argv: Sequence[str]) -> "CommandRequest":
        ns = build_parser().parse_args(list(argv))
        return cls(**{f.name: getattr(ns, f.name) for f in fields(cls)})


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ospchar", description="Exact computations for osp(m|n) characteristic identities.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    helps = {
        "roots": "characteristic roots alpha_p of an irreducible module",
        "rho": "half sum rho of positive even minus odd roots",
        "casimir": "second order Casimir eigenvalue (Lambda, Lambda + 2 rho)",
        "branch": "child weights of an osp(m|n) weight under osp(m-1|n); --m is the parent m",
        "invariants": "C_q, gamma, mu, omega for a parent/child pair; --m is the parent m",
        "matrep": "generator matrices on the defining module",
        "verify": "identity suites; for the branching suites --m is the child m",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--weight", help='highest weight, e.g. "even:1;odd:2"')
        p.add_argument("--child-weight", dest="child_weight")
        p.add_argument("--convention", choices=[c.value for c in Convention], default="canonical")
        p.add_argument("--middle-root", dest="middle_root", choices=MIDDLE_RULES, default="formula")
        p.add_argument("--basis", choices=BASES, default="racah")
        p.add_argument("--limit", action="store_true", help="resolve removable poles by a limit")
        p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
        p.add_argument("--output", "-o", help="write JSON here instead of stdout")
        p.add_argument("-v", "--verbose", dest="verbosity", action="count", default=0)
    return parser


# serialization


def q(x: Fraction | int) -> str:
    return str(Fraction(x))


def _weight_json(w: Weight) -> dict[str, Any]:
    return {"text": format_weight(w), "even": [q(x) for x in w.even], "odd": [q(x) for x in w.odd]}


def _keyed(d: dict[GradedIndex, Fraction | None]) -> dict[str, str | None]:
    return {p.key(): None if v is None else q(v) for p, v in d.items()}


def _pair_keyed(d: dict[tuple[GradedIndex, GradedIndex], Fraction | None]) -> dict[str, str | None]:
    return {f"{a.key()},{b.key()}": None if v is None else q(v) for (a, b), v in d.items()}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# handlers


def _signature(req: CommandRequest) -> AlgebraSignature:
    if req.m < 0 or req.n < 0 or req.n % 2:
        raise UsageError(f"need m >= 0 and even n >= 0, got m={req.m}, n={req.n}")
    return AlgebraSignature(req.m, req.n)


def _need_weight(req: CommandRequest, sig: AlgebraSignature, name: str = "weight") -> Weight:
    text = getattr(req, name)
    if text is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {req.subcommand}")
    w = parse_weight(text)
    w.check_shape(sig)
    return w


def _roots(req: CommandRequest, sig: AlgebraSignature) -> dict:
    w = _need_weight(req, sig)
    roots = characteristic_roots(w, sig, middle_root=req.middle_root)
    ext = extended_labels(w, sig)
    return {
        "weight": _weight_json(w),
        "class": validate_dominant(w, sig),
        "middle_root": req.middle_root,
        "alpha": _keyed(roots.alpha),
        "alpha_even": [q(x) for x in roots.alpha_even],
        "alpha_odd": [q(x) for x in roots.alpha_odd],
        "extended_labels": _keyed(ext.labels),
    }


def _rho(req: CommandRequest, sig: AlgebraSignature) -> dict:
    conv = Convention(req.convention)
    return {"convention": conv.value, "rho": _weight_json(rho(sig, conv))}


def _casimir(req: CommandRequest, sig: AlgebraSignature) -> dict:
    conv = Convention(req.convention)
    w = _need_weight(req, sig)
    return {"convention": conv.value, "weight": _weight_json(w), "eigenvalue": q(casimir_eigenvalue(w, sig, conv))}


def _child_sig(sig: AlgebraSignature) -> AlgebraSignature:
    if sig.m < 1:
        raise UsageError("branching needs a parent with m >= 1")
    return AlgebraSignature(sig.m - 1, sig.n)


def _branch(req: CommandRequest, sig: AlgebraSignature) -> dict:
    w = _need_weight(req, sig)
    child = _child_sig(sig)
    children = []
    for c in branch_enumerate(w, sig):
        ctx = index_sets(w, c, child, middle_root=req.middle_root)
        children.append({"weight": _weight_json(c), "I1": [p.key() for p in ctx.I1]})
    return {
        "parent": _weight_json(w),
        "child_signature": {"m": child.m, "n": child.n},
        "children": children,
        "count": len(children),
    }


def _invariants(req: CommandRequest, sig: AlgebraSignature) -> dict:
    parent = _need_weight(req, sig)
    child_sig = _child_sig(sig)
    child = _need_weight(req, child_sig, "child_weight")
    ctx = index_sets(parent, child, child_sig, middle_root=req.middle_root)
    table = inv.invariant_table(ctx, limit=req.limit)
    return {
        "parent": _weight_json(parent),
        "child": _weight_json(child),
        "child_signature": {"m": child_sig.m, "n": child_sig.n},
        "middle_root": req.middle_root,
        "limit": req.limit,
        "I0": [p.key() for p in ctx.I0],
        "I1": [p.key() for p in ctx.I1],
        "beta": _keyed(ctx.beta),
        "alpha": _keyed(ctx.alpha),
        "C": _keyed(table.C),
        "gamma_p": _keyed(table.gamma_p),
        "gamma_ps": _pair_keyed(table.gamma_ps),
        "mu": _keyed(table.mu),
        "omega": _pair_keyed(table.omega),
        "poles": dict(table.poles),
    }


def _matrep(req: CommandRequest, sig: AlgebraSignature) -> dict:
    gens = mr.racah_generators(sig) if req.basis == "racah" else mr.cw_generators(sig)
    out = []
    for (p, r), X in sorted(gens.items()):
        out.append({
            "p": p.key(),
            "q": r.key(),
            "parity": X.parity,
            "entries": [[format_scalar(x) for x in row] for row in X.entries()],
        })
    return {"basis": req.basis, "indices": [p.key() for p in sig.indices], "generators": out}


def _color(text: str, status: str) -> str:
    if os.environ.get("OSPCHAR_COLOR", "").lower() not in ("1", "true", "yes", "always"):
        return text
    code = {"pass": "32", "fail": "31", "skip": "33"}[status]
    return f"\033[{code}m{text}\033[0m"


def _verify(req: CommandRequest, sig: AlgebraSignature) -> dict:
    report = run_suites(sig, req.suite, middle_root=req.middle_root)
    print(f"{'suite':<11} {'pass':>5} {'fail':>5} {'skip':>5}", file=sys.stderr)
    for suite, row in report.summary().items():
        status = "fail" if row["fail"] else "pass"
        line = f"{suite:<11} {row['pass']:>5} {row['fail']:>5} {row['skip']:>5}"
        print(_color(line, status), file=sys.stderr)
    if req.verbosity:
        for c in report.checks:
            if c.status != "pass" or req.verbosity > 1:
                print(_color(f"  {c.status:<4} {c.suite}: {c.name} {c.detail}", c.status), file=sys.stderr)
    return {
        "suite": req.suite,
        "middle_root": req.middle_root,
        "ok": report.ok,
        "summary": report.summary(),
        "checks": [c.as_dict() for c in report.checks],
    }


_HANDLERS = {
    "roots": _roots,
    "rho": _rho,
    "casimir": _casimir,
    "branch": _branch,
    "invariants": _invariants,
    "matrep": _matrep,
    "verify": _verify,
}


def run(req: CommandRequest) -> tuple[int, dict]:
    """Execute a request; returns (exit status, JSON document)."""
    sig = None
    try:
        sig = _signature(req)
        body = _HANDLERS[req.subcommand](req, sig)
        status = 3 if req.subcommand == "verify" and not body["ok"] else 0
    except UsageError as exc:
        return 1, _error_doc(req, "usage", str(exc))
    except OspError as exc:
        return 2, _error_doc(req, type(exc).__name__, str(exc))
    except ValueError as exc:  # flag combinations such as a distinguished rho with m != 2
        return 1, _error_doc(req, "usage", str(exc))
    doc = {"schema": SCHEMA, "command": req.subcommand, "signature": {"m": sig.m, "n": sig.n}}
    doc.update(body)
    return status, doc


def _error_doc(req: CommandRequest, kind: str, message: str) -> dict:
    return {
        "schema": SCHEMA,
        "command": req.subcommand,
        "signature": {"m": req.m, "n": req.n},
        "error": {"kind": kind, "message": message},
    }


def main(argv: Sequence[str] | None = None) -> int:
    try:
        req = CommandRequest.from_argv(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"ospchar: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.WARNING - 10 * min(req.verbosity, 2), format="%(levelname)s %(message)s")
    log.info("running %s", " ".join(req.to_argv()))
    status, doc = run(req)
    if "error" in doc:
        print(f"ospchar: {doc['error']['kind']}: {doc['error']['message']}", file=sys.stderr)
    text = dumps(doc)
    if req.output:
        with open(req.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
