"""Command-line driver.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .count import count_module, group_case_counts
from .geomopt import SEMISTABLE, torus_optimal
from .repchar import (ModuleCharacter, adjoint_character, dual_character, highest_weight_character,
                      hw_from_fundamental)
from .rootsys import (CapacityError, InputError, build_root_datum, parse_type, reflection_degrees,
                      weyl_order)
from .strata import Engine, EngineConfig, GroupState

SUBCOMMANDS = ("roots", "character", "strata", "count", "blade", "verify", "unipotent")
SUITES = ("sl2", "sl3", "binary", "torus", "pencil", "steinberg", "flag", "all")


@dataclass
class JobSpec:
    subcommand: str
    type_spec: str = "A1"
    module: str = "adjoint"
    eval_points: list[int] = field(default_factory=list)
    output_format: str = "json"
    threads: int = 1
    memo: bool = True
    max_subset: int | None = None
    lattice: str | None = None
    weights: str | None = None
    suite: str = "all"

    def to_argv(self) -> list[str]:
        argv = [self.subcommand, "--type", self.type_spec, "--module", self.module]
        if self.eval_points:
            argv += ["--eval", ",".join(map(str, self.eval_points))]
        argv += ["--format", self.output_format, "--threads", str(self.threads)]
        if not self.memo:
            argv.append("--no-memo")
        if self.max_subset is not None:
            argv += ["--max-subset", str(self.max_subset)]
        if self.lattice:
            argv += ["--lattice", self.lattice]
        if self.weights:
            argv += ["--weights", self.weights]
        if self.subcommand == "verify":
            argv += ["--suite", self.suite]
        return argv

    def __str__(self) -> str:
        return shlex.join(self.to_argv())


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nullstrata",
        description="Hesselink strata of nullcones and their finite-field point counts.",
        epilog=(
            "TYPE: simple factors joined by 'x' plus an optional central torus, "
            "e.g. A2, B2xA1, A1+T1.  MODULE: adjoint | dual-adjoint | hw:<c1,...> "
            "(fundamental-weight coefficients, trailing entries are torus weights) | dual-hw:<...>."
        ),
    )
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--type", dest="type_spec", default="A1")
    p.add_argument("--module", default="adjoint")
    p.add_argument("--eval", dest="eval_points", type=_int_list, default=[],
                   help="comma-separated prime powers at which to evaluate n_V")
    p.add_argument("--q", dest="eval_points", type=_int_list, default=argparse.SUPPRESS,
                   help="alias of --eval (used by verify)")
    p.add_argument("--format", dest="output_format", choices=("json", "tsv"), default="json")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-memo", dest="memo", action="store_false")
    p.add_argument("--max-subset", type=int, default=None,
                   help="largest weight subset used for candidate directions")
    p.add_argument("--lattice", default=None,
                   help="cocharacter lattice basis rows in simple-coroot coordinates, "
                        "rows separated by ';' (e.g. '1/2,1/2;0,1')")
    p.add_argument("--weights", default=None,
                   help="blade: weights in fundamental-weight coordinates, separated by ';'")
    p.add_argument("--suite", choices=SUITES, default="all")
    return p


def parse_job(argv) -> JobSpec:
    ns = build_parser().parse_args(argv)
    return JobSpec(**vars(ns))


def make_datum(job: JobSpec):
    spec = parse_type(job.type_spec)
    if not job.lattice:
        return build_root_datum(spec)
    base = build_root_datum(spec)
    rows = []
    for row in job.lattice.split(";"):
        coeffs = [Fraction(x) for x in row.split(",")]
        if len(coeffs) != base.rank:
            raise InputError("lattice rows must have one entry per coordinate")
        rows.append(base.from_lattice_coords(coeffs))
    return build_root_datum(spec, cochar_basis=rows)


def make_character(datum, module: str) -> ModuleCharacter:
    dual = module.startswith("dual-")
    body = module[5:] if dual else module
    if body == "adjoint":
        ch = adjoint_character(datum)
    elif body.startswith("hw:"):
        coeffs = [Fraction(x) for x in body[3:].split(",") if x.strip()]
        ch = highest_weight_character(datum, hw_from_fundamental(datum, coeffs))
    else:
        raise InputError(f"unknown module {module!r}")
    return dual_character(ch) if dual else ch


def _engine(job: JobSpec) -> Engine:
    return Engine(EngineConfig(threads=job.threads, memo=job.memo, max_subset=job.max_subset))


def _rat(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True, indent=2))
    out.write("\n")


def _strata_tsv(strata, datum, out):
    out.write("lambda\tk\tdim\tn\tN\tcontribution\n")
    for s in strata:
        lam = ",".join(str(int(x)) for x in datum.lattice_coords(s.lam))
        coeffs = ",".join(map(str, s.contribution.tolist()))
        out.write(f"{lam}\t{s.k}\t{s.dim}\t{s.n}\t{s.N}\t{coeffs}\n")


def cmd_roots(job, out):
    d = make_datum(job)
    degrees = reflection_degrees(d)
    _emit({
        "type": str(d.type_spec),
        "rank": d.rank,
        "dim": d.dim,
        "gram": [list(r) for r in d.gram],
        "simple_roots": [list(r) for r in d.simple_roots],
        "roots": [list(r) for r in d.roots],
        "cochar_basis": [[_rat(x) for x in r] for r in d.cochar_basis],
        "degrees": degrees,
        "weyl_order": weyl_order(d.type_spec),
    }, out)
    return 0


def cmd_character(job, out):
    d = make_datum(job)
    ch = make_character(d, job.module)
    _emit({"type": str(d.type_spec), "module": job.module, "dim": ch.dim, "weights": ch.to_json()}, out)
    return 0


def cmd_strata(job, out):
    d = make_datum(job)
    ch = make_character(d, job.module)
    strata = _engine(job).enumerate_strata(GroupState.top(d), ch)
    if job.output_format == "tsv":
        _strata_tsv(strata, d, out)
    else:
        _emit({"type": str(d.type_spec), "module": job.module,
               "strata": [s.to_json(d) for s in strata]}, out)
    return 0


def cmd_count(job, out, unipotent=False):
    d = make_datum(job)
    ch = make_character(d, job.module)
    report = count_module(ch, module=job.module, engine=_engine(job))
    if unipotent:
        report = group_case_counts(report)
    if job.output_format == "tsv":
        _strata_tsv(report.strata, d, out)
        out.write(f"# n_V\t{','.join(map(str, report.n_V.tolist()))}\n")
        for q in job.eval_points:
            out.write(f"# n_V({q})\t{report.n_V(q)}\n")
    else:
        _emit(report.to_json(job.eval_points), out)
    return 0 if all(c.passed for c in report.checks) else 1


def cmd_blade(job, out):
    d = make_datum(job)
    if not job.weights:
        raise InputError("blade needs --weights")
    support = []
    for row in job.weights.split(";"):
        coeffs = [Fraction(x) for x in row.split(",")]
        if len(coeffs) != d.rank:
            raise InputError("each weight needs one coordinate per rank")
        support.append(d.from_weight_coords(coeffs))
    state = GroupState.top(d)
    res = torus_optimal(support, state)
    if res == SEMISTABLE:
        _emit({"status": "semistable"}, out)
        return 0
    lam, m, mu = res
    _emit({
        "status": "unstable",
        "lambda": [int(x) for x in d.lattice_coords(lam)],
        "m": _rat(m),
        "mu": [_rat(x) for x in d.lattice_coords(mu)],
        "mu_norm2": _rat(d.norm2(mu)),
    }, out)
    return 0


def cmd_verify(job, out):
    from . import verify
    qs = job.eval_points or [2, 3]
    rows = verify.run_suite(job.suite, qs, engine=_engine(job))
    if job.output_format == "tsv":
        out.write("suite\tcase\tq\toracle\tpolynomial\tok\n")
        for r in rows:
            out.write(f"{r['suite']}\t{r['case']}\t{r['q']}\t{r['oracle']}\t{r['poly']}\t{r['ok']}\n")
    else:
        _emit({"results": rows, "ok": all(r["ok"] for r in rows)}, out)
    return 0 if all(r["ok"] for r in rows) else 1


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        job = parse_job(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        handler = {
            "roots": cmd_roots,
            "character": cmd_character,
            "strata": cmd_strata,
            "count": cmd_count,
            "blade": cmd_blade,
            "verify": cmd_verify,
            "unipotent": lambda j, o: cmd_count(j, o, unipotent=True),
        }[job.subcommand]
        return handler(job, out)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except CapacityError as exc:
        sys.stderr.write(f"capacity exceeded: {exc}\n")
        return 3


def main():
    sys.exit(run())


