"""Command-line entry point ``kpowers``.

Every command writes a report to stdout, as plain text or as JSON lines
(one object per line with a ``record`` field).  The exit status is 0 exactly
when every gating check passed, 1 when a check failed and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .binary import BinaryComplex, bottom, is_biacyclic, k1_class, top
from .complexes import ChainComplex, ChainMap, euler_characteristic, homology, is_quasi_iso
from .equivariant import GRep, RepError, character, verify_composition_RG, verify_sum_rule_RG
from .io import ParseError, parse_file, serialize
from .lambda_ring import (
    BinomialPoint, check_composition_axiom, lambda_binomial, universal_composition_identity,
)
from .linalg import Matrix
from .rings import RingError, ring_from_name
from .simplicial import ConsistencyError, dold_puppe_power, dold_puppe_power_map
from .suites import SUITES, build_suite, run_suite
from .symfun import universal_P_compose


class Report:
    """Collects records; renders them as text or JSON lines."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines = []
        self.failures = []

    def emit(self, record: str, text: str, /, **fields):
        if self.fmt == "json-lines":
            self.lines.append(json.dumps({"record": record, **fields}, ensure_ascii=False,
                                         sort_keys=True))
        else:
            self.lines.append(text)

    def check(self, name: str, ok: bool, detail: str = "", gating: bool = True):
        status = "PASS" if ok else ("FAIL" if gating else "INFO")
        self.emit("check", f"{status} {name}" + (f": {detail}" if detail else ""),
                  name=name, ok=bool(ok), gating=gating, detail=detail)
        if gating and not ok:
            self.failures.append((name, detail))

    def finish(self) -> int:
        if self.failures:
            self.emit("failures", f"{len(self.failures)} failing check(s):",
                      count=len(self.failures), names=[n for n, _ in self.failures])
            if self.fmt != "json-lines":
                self.lines.extend(f"  {n}: {d}" for n, d in self.failures)
        else:
            self.emit("status", "all checks passed", ok=True)
        sys.stdout.write("\n".join(self.lines) + "\n")
        return 1 if self.failures else 0


# ---------------------------------------------------------------------------
# helpers

def _homology_text(ring, free, torsion) -> str:
    parts = [f"{ring.name}^{free}"] if free else []
    parts += [f"{ring.name}/{t}" for t in torsion]
    return " + ".join(parts) or "0"


def _change_ring(obj, ring):
    """Reinterpret the entries of a complex or chain map over another ring."""
    if ring is None:
        return obj

    def conv(M: Matrix) -> Matrix:
        return Matrix.from_rows(ring, M.tolist(), M.cols)

    if isinstance(obj, ChainComplex):
        return ChainComplex(ring, obj.ranks, [conv(d) for d in obj.diffs])
    if isinstance(obj, ChainMap):
        return ChainMap(_change_ring(obj.source, ring), _change_ring(obj.target, ring),
                        [conv(M) for M in obj.components])
    if isinstance(obj, BinaryComplex):
        return BinaryComplex(ring, obj.ranks, [conv(d) for d in obj.d_diffs],
                             [conv(d) for d in obj.dt_diffs])
    if isinstance(obj, GRep):
        return GRep(obj.group, ring, [conv(M) for M in obj.matrices])
    raise TypeError(f"cannot change the ring of {type(obj).__name__}")


def _load(args, *kinds):
    obj = _change_ring(parse_file(args.input), args.ring)
    if kinds and not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in kinds)
        raise ParseError(f"expected {names}, file holds {type(obj).__name__}")
    return obj


def _report_homology(rep: Report, C: ChainComplex, label: str):
    for n in range(C.top + 1):
        free, tors = homology(C, n)
        rep.emit("homology", f"H_{n}({label}) = {_homology_text(C.ring, free, tors)}",
                 complex=label, degree=n, free_rank=free, torsion=[str(t) for t in tors])


def _report_complex(rep: Report, C: ChainComplex, label: str, with_diffs: bool):
    rep.emit("ranks", f"{label} ranks: {list(C.ranks)}", complex=label, ranks=list(C.ranks))
    if with_diffs:
        body = serialize(C)
        if rep.fmt == "json-lines":
            rep.emit("complex", "", complex=label, text=body)
        else:
            rep.lines.extend(["--- " + label, body.rstrip("\n"), "---"])


# ---------------------------------------------------------------------------
# commands

def cmd_homology(args, rep: Report):
    obj = _load(args, ChainComplex, BinaryComplex, ChainMap)
    if isinstance(obj, ChainComplex):
        _report_complex(rep, obj, "C", False)
        _report_homology(rep, obj, "C")
    elif isinstance(obj, BinaryComplex):
        _report_homology(rep, bottom(obj), "bottom")
        _report_homology(rep, top(obj), "top")
        rep.emit("biacyclic", f"biacyclic: {is_biacyclic(obj)}", value=is_biacyclic(obj))
    else:
        _report_homology(rep, obj.source, "source")
        _report_homology(rep, obj.target, "target")
        q = is_quasi_iso(obj)
        rep.emit("quasi_iso", f"quasi-isomorphism: {q}", value=q)


def cmd_lambda(args, rep: Report):
    obj = _load(args, ChainComplex, ChainMap)
    k = args.k
    if isinstance(obj, ChainMap):
        f = dold_puppe_power_map(obj, k)
        _report_complex(rep, f.source, f"⋀^{k} source", False)
        _report_complex(rep, f.target, f"⋀^{k} target", False)
        q = is_quasi_iso(f)
        rep.emit("quasi_iso", f"⋀^{k} f quasi-isomorphism: {q}", k=k, value=q)
        if is_quasi_iso(obj):
            rep.check(f"⋀^{k} preserves the quasi-isomorphism", q)
        return
    P = dold_puppe_power(obj, k, slack=args.slack)
    _report_complex(rep, P, f"⋀^{k} C", True)
    _report_homology(rep, P, f"⋀^{k} C")


def cmd_euler(args, rep: Report):
    C = _load(args, ChainComplex)
    chi = euler_characteristic(C).value
    rep.emit("euler", f"chi(C) = {chi}", complex="C", value=chi)
    ks = [args.k] if args.k else []
    for k in ks:
        got = euler_characteristic(dold_puppe_power(C, k, slack=args.slack)).value
        want = lambda_binomial(chi, k)
        rep.emit("euler", f"chi(⋀^{k} C) = {got}", complex=f"⋀^{k} C", value=got)
        rep.check(f"chi(⋀^{k} C) = λ^{k}(chi C)", got == want, f"{got} vs {want}")


def cmd_k1class(args, rep: Report):
    B = _load(args, BinaryComplex)
    if args.k and args.k > 1:
        from .binary import binary_power
        B = binary_power(B, args.k, slack=args.slack)
        rep.emit("ranks", f"⋀^{args.k} ranks: {list(B.ranks)}", ranks=list(B.ranks))
    value = k1_class(B)
    rep.emit("k1class", f"k1_class = {value}", value=str(value))


def _suite_command(names, args, rep: Report):
    for name in names:
        report = run_suite(build_suite(name), args.seed, args.threads)
        for r in report.results:
            rep.check(f"{name}/{r.case_id}", r.ok, r.detail, gating=report.gating)
        verdict = "ok" if report.ok else ("FAILED" if report.gating else "reported")
        rep.emit("suite", f"suite {name}: {report.passed}/{len(report.results)} {verdict} "
                          f"({report.title})",
                 suite=name, passed=report.passed, total=len(report.results), ok=report.ok,
                 gating=report.gating)


def cmd_axioms(args, rep: Report):
    _suite_command(["axioms"], args, rep)


def cmd_compose(args, rep: Report):
    k, l = args.k or 2, args.l or 2
    P = universal_P_compose(k, l)
    rep.emit("polynomial", f"P_{k},{l} = {P}", k=k, l=l, terms=P.to_records())
    rep.check(f"universal λ^{k}λ^{l} = P_{k},{l}", universal_composition_identity(k, l))
    bad = [n for n in range(-8, 9) if not check_composition_axiom(BinomialPoint(n), k, l)]
    rep.check(f"binomial λ^{k}λ^{l} = P_{k},{l} for |n| <= 8", not bad,
              f"failed at {bad}" if bad else "")


def cmd_equivariant(args, rep: Report):
    if args.input is None:
        _suite_command(["equivariant"], args, rep)
        return
    V = _load(args, GRep)
    k, l = args.k or 2, args.l or 2
    chi = character(V)
    rep.emit("character", f"character of V on classes {V.group.classes}: "
                          f"{[V.ring.format(x) for x in chi.values]}",
             values=[V.ring.format(x) for x in chi.values])
    rep.check(f"λ^{k}λ^{l}[V] = P_{k},{l}(λ[V])", verify_composition_RG(V, k, l))
    rep.check(f"λ^{k}(V + V) sum rule", verify_sum_rule_RG(V, V, k))


def cmd_verify_all(args, rep: Report):
    names = [args.suite] if args.suite else list(SUITES)
    _suite_command(names, args, rep)


COMMANDS = {
    "homology": (cmd_homology, True, "homology of a complex, binary complex or chain map"),
    "lambda": (cmd_lambda, True, "Dold-Puppe power: ranks, differentials, homology"),
    "euler": (cmd_euler, True, "Euler characteristic, with --k also of the power"),
    "k1class": (cmd_k1class, True, "k1_class of a biacyclic binary complex"),
    "axioms": (cmd_axioms, False, "(E1)-(E5) instance suite"),
    "compose": (cmd_compose, False, "P_{k,l} and its identities"),
    "equivariant": (cmd_equivariant, None, "composition axiom in R(G) (suite or one file)"),
    "verify-all": (cmd_verify_all, False, "full acceptance run"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kpowers", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_input, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("input", help="input file")
        elif needs_input is None:
            p.add_argument("input", nargs="?", help="optional representation file")
        p.add_argument("--ring", type=_ring_arg, help="coefficient ring (Z, Q, Fp)")
        p.add_argument("--k", type=_positive, default=2 if name == "lambda" else None)
        p.add_argument("--l", type=_positive)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--slack", type=_non_negative, default=2,
                       help="extra levels checked above the support bound")
        p.add_argument("--format", choices=("text", "json-lines"), default="text")
        p.add_argument("--suite", choices=list(SUITES))
        p.add_argument("--threads", type=_positive, default=1)
    return parser


def _ring_arg(text):
    try:
        return ring_from_name(text)
    except RingError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(args.format)
    handler = COMMANDS[args.command][0]
    try:
        handler(args, rep)
    except (ParseError, RingError, RepError, ConsistencyError, ValueError, OSError) as exc:
        if args.format == "json-lines":
            print(json.dumps({"record": "error", "kind": type(exc).__name__, "message": str(exc)},
                             ensure_ascii=False, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    return rep.finish()


if __name__ == "__main__":
    sys.exit(main())
