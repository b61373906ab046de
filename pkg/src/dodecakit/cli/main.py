"""Command line entry point.

Exit codes: 0 proven / verified / success, 1 not proven or failed checks,
2 solver unavailable or budget exhausted, 64 usage, 65 malformed input
data, 74 unreadable or unwritable files.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .config import Config, ConfigError, load_config
from .report import RunReport

EX_OK, EX_NO, EX_UNAVAILABLE = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_IOERR = 64, 65, 74


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _out(rows, stream):
    for row in rows:
        stream.write("\t".join(str(x) for x in row) + "\n")


def _read(path) -> str:
    return Path(path).read_text(encoding="utf-8")


# verbs


def cmd_constants(a, cfg, rep, out):
    from ..ival import constants as K
    from ..tame import B_TABLE, t_exact

    rows = [("name", "lo", "hi")]
    for name in K.CONSTANTS:
        x = K.constant(name)
        rows.append((name, repr(x.lo), repr(x.hi)))
    gap = K.m0() - K.m_dod()
    rows.append(("M_0-M_dod", repr(gap.lo), repr(gap.hi)))
    for n in range(3, 9):
        rows.append((f"t_{n}", str(t_exact(n)), str(t_exact(n))))
    for (p, q), v in sorted(B_TABLE.items()):
        rows.append((f"b({p},{q})", str(v), str(v)))
    _out(rows, out)
    rep.verdicts = [{"name": r[0], "lo": r[1], "hi": r[2]} for r in rows[1:]]
    return EX_OK


def cmd_packing_report(a, cfg, rep, out):
    from ..packing import InvalidPacking, component_report, read_packing, totals

    rep.add_input(a.packing)
    try:
        pk = read_packing(a.packing) if a.t is None else read_packing(a.packing, a.t)
        faces = component_report(pk)
    except (InvalidPacking, ValueError) as exc:
        raise DataError(str(exc)) from exc
    rows = [("face", "cycle", "sol", "omega", "mu")]
    rows += [(f.face_id, ",".join(map(str, f.cycle)), repr(f.sol), repr(f.omega), repr(f.mu)) for f in faces]
    tot = totals(faces)
    rows.append(("total", tot.faces, repr(tot.sol), repr(tot.omega), repr(tot.mu)))
    _out(rows, out)
    rep.verdicts = [{"faces": tot.faces, "sol": tot.sol, "omega": tot.omega, "mu": tot.mu}]
    return EX_OK


def cmd_prove_ineq(a, cfg, rep, out):
    from dataclasses import replace

    from ..prover import TaskFormatError, parse_task, verify, write_log

    rep.add_input(a.task)
    text = _read(a.task)
    try:
        task = parse_task(text)
    except (TaskFormatError, ValueError) as exc:
        raise DataError(str(exc)) from exc
    # the flag wins; otherwise the configured budget caps the task's own
    task = replace(task, budget=a.budget if a.budget is not None else min(task.budget, cfg.prover_budget))
    res = verify(task, workers=cfg.workers)
    rep.timing["cells"] = res.cells_used
    verdict = {"task": a.task, "status": res.status, "cells": res.cells_used}
    if cfg.out_dir and hasattr(res, "certificates"):
        log = Path(cfg.out_dir) / (Path(a.task).stem + ".cells")
        log.parent.mkdir(parents=True, exist_ok=True)
        with open(log, "w", encoding="utf-8") as fh:
            write_log(task, res.certificates, fh)
        rep.artifacts.append(str(log))
    if res.status == "failed":
        verdict["witness"] = res.witness.to_text()
    rep.verdicts = [verdict]
    _out([(a.task, res.status, res.cells_used)], out)
    return {"verified": EX_OK, "failed": EX_NO}.get(res.status, EX_UNAVAILABLE)


def _gen_params(a, cfg):
    from ..graphgen import GenParams

    return GenParams(
        max_nodes=a.max_nodes, min_nodes=a.min_nodes, face_sizes=tuple(a.sizes),
        min_degree=a.min_degree, max_degree=a.max_degree,
        squander=not a.no_squander, tame_filters=not a.no_tame_filters,
    )


def cmd_gen_graphs(a, cfg, rep, out):
    from ..graphgen import InvalidParams, ResourceBudgetExceeded, enumerate_archive, write_archive
    from ..hmap import format_face_list, to_face_list

    try:
        params = _gen_params(a, cfg)
    except InvalidParams as exc:
        raise UsageError(str(exc)) from exc
    try:
        arc = enumerate_archive(params, budget=cfg.generator_budget)
    except ResourceBudgetExceeded as exc:
        rep.verdicts = [{"status": "budget_exhausted", "found": len(exc.state.found)}]
        rep.timing["visited"] = exc.state.visited
        out.write(f"budget exhausted after {exc.state.visited} partial maps\n")
        return EX_UNAVAILABLE
    header = f"gen-graphs {vars(params)}"
    if a.output:
        write_archive(a.output, arc, header=header)
        rep.artifacts.append(a.output)
    else:
        for h in arc:
            out.write(format_face_list(to_face_list(h)) + "\n")
    rep.verdicts = [{"status": "complete", "maps": len(arc)}]
    return EX_OK


def _archive(path):
    from ..graphgen import read_archive
    from ..hmap import InconsistentFaceList, InvalidHypermap

    try:
        return read_archive(path)
    except (InconsistentFaceList, InvalidHypermap, ValueError) as exc:
        raise DataError(f"{path}: {exc}") from exc


def cmd_tame_check(a, cfg, rep, out):
    from ..tame import is_tame, weight_feasible

    rep.add_input(a.archive)
    arc = _archive(a.archive)
    rows = [("entry", "tame", "failed", "weight_total")]
    all_ok = True
    for k, h in enumerate(arc):
        r = is_tame(h, epsilon=cfg.epsilon, weights=not a.structural)
        failed = r.failed()
        ok = not failed if a.structural else r.ok
        total = weight_feasible(h, epsilon=cfg.epsilon).total if a.structural and ok else None
        all_ok &= ok
        rows.append((k, "yes" if ok else "no", ",".join(map(str, failed)) or "-",
                     "-" if total is None else repr(total)))
        rep.verdicts.append({"entry": k, "tame": ok, "failed": failed, "weight_total": total})
    _out(rows, out)
    return EX_OK if all_ok else EX_NO


def cmd_compare_archives(a, cfg, rep, out):
    from ..graphgen import compare
    from ..hmap import format_face_list, to_face_list

    for p in (a.first, a.second):
        rep.add_input(p)
    res = compare(_archive(a.first), _archive(a.second))
    def fl(h):
        return format_face_list(to_face_list(h))

    rows = [("missing", fl(h)) for h in res.missing] + [("extra", fl(h)) for h in res.extra]
    _out(rows or [("same", "-")], out)
    rep.verdicts = [{"same": res.same, "missing": len(res.missing), "extra": len(res.extra)}]
    return EX_OK if res.same else EX_NO


def _systems(a, rep):
    from ..lp import ConstraintSyntax, NotTame, relax_hypermap

    rep.add_input(a.archive)
    extra = None
    if a.constraints:
        rep.add_input(a.constraints)
        extra = _read(a.constraints)
    for k, h in enumerate(_archive(a.archive)):
        try:
            yield k, relax_hypermap(h, extra, ignore=tuple(a.ignore)), None
        except NotTame as exc:
            yield k, None, str(exc)
        except ConstraintSyntax as exc:
            raise DataError(str(exc)) from exc


def cmd_lp_build(a, cfg, rep, out):
    from ..lp import format_system

    out_dir = Path(a.out or cfg.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    code = EX_OK
    for k, s, err in _systems(a, rep):
        if s is None:
            rep.verdicts.append({"entry": k, "status": "not_tame", "reason": err})
            _out([(k, "not_tame", err)], out)
            code = EX_NO
            continue
        path = out_dir / f"system-{k}.txt"
        lin = s.to_linear_system()
        path.write_text(format_system(lin), encoding="utf-8")
        rep.artifacts.append(str(path))
        rep.verdicts.append({"entry": k, "status": "built", "rows": lin.m, "vars": lin.n,
                             "guards": len(s.guards)})
        _out([(k, "built", path)], out)
    return code


def cmd_lp_prove(a, cfg, rep, out):
    from ..lp import CertificateRejected, SolverUnavailable, format_dual, prove_infeasible

    solver = a.solver or cfg.solver
    cert_dir = Path(cfg.out_dir) / "certificates" if cfg.out_dir else None
    code = EX_OK
    for k, s, err in _systems(a, rep):
        if s is None:
            rep.verdicts.append({"entry": k, "verdict": "not_tame", "reason": err})
            _out([(k, "not_tame", err)], out)
            code = EX_NO
            continue
        try:
            res = prove_infeasible(s, solver=solver)
        except SolverUnavailable as exc:
            rep.verdicts.append({"entry": k, "verdict": "unavailable", "reason": str(exc)})
            _out([(k, "unavailable", exc)], out)
            return EX_UNAVAILABLE
        except CertificateRejected as exc:
            rep.verdicts.append({"entry": k, "verdict": "rejected", "reason": str(exc)})
            _out([(k, "rejected", exc)], out)
            code = EX_NO
            continue
        v = {"entry": k, "verdict": res.verdict, "branches": len(res.branches)}
        if cert_dir is not None and res.proven:
            cert_dir.mkdir(parents=True, exist_ok=True)
            for br in res.branches:
                path = cert_dir / f"entry-{k}-branch-{'.'.join(map(str, br.path)) or 'root'}.txt"
                path.write_text(format_dual(br.certificate), encoding="utf-8")
                rep.artifacts.append(str(path))
        rep.verdicts.append(v)
        _out([(k, res.verdict, len(res.branches))], out)
        if not res.proven:
            code = EX_NO
    return code


def cmd_lp_check_cert(a, cfg, rep, out):
    from ..lp import DimensionMismatch, SystemFormatError, check_certificate, parse_dual, parse_system

    for p in (a.system, a.certificate):
        rep.add_input(p)
    try:
        s = parse_system(_read(a.system))
        chk = check_certificate(s, parse_dual(_read(a.certificate)))
    except (SystemFormatError, DimensionMismatch, ValueError) as exc:
        raise DataError(str(exc)) from exc
    rep.verdicts = [{"verdict": chk.verdict, "bound": chk.bound, "target": chk.target}]
    _out([(chk.verdict, repr(chk.bound), repr(chk.target))], out)
    return EX_OK if chk.proven else EX_NO


# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument("--out", dest="out_dir", help="directory for reports and certificates")
    common.add_argument("--workers", type=int)

    p = _Parser(prog="dodecakit", description="Verification pipeline for the dodecahedral bound.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("constants", parents=[common], help="enclosures of the named constants and tables")
    s.set_defaults(fn=cmd_constants)

    s = sub.add_parser("packing-report", parents=[common], help="per-face sol, omega and mu of a packing")
    s.add_argument("packing")
    s.add_argument("--t", type=float, help="truncation radius (default t_dod)")
    s.set_defaults(fn=cmd_packing_report)

    s = sub.add_parser("prove-ineq", parents=[common], help="verify an inequality task file")
    s.add_argument("task")
    s.add_argument("--budget", type=int)
    s.set_defaults(fn=cmd_prove_ineq)

    s = sub.add_parser("gen-graphs", parents=[common], help="enumerate plane graphs")
    s.add_argument("--max-nodes", type=int, required=True)
    s.add_argument("--min-nodes", type=int, default=13)
    s.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5, 6, 7])
    s.add_argument("--min-degree", type=int, default=2)
    s.add_argument("--max-degree", type=int, default=6)
    s.add_argument("--no-squander", action="store_true")
    s.add_argument("--no-tame-filters", action="store_true")
    s.add_argument("--output", "-o")
    s.set_defaults(fn=cmd_gen_graphs)

    s = sub.add_parser("tame-check", parents=[common], help="tameness of every archive entry")
    s.add_argument("archive")
    s.add_argument("--structural", action="store_true",
                   help="conditions 1-10 only; record the weight LP minimum separately")
    s.set_defaults(fn=cmd_tame_check)

    s = sub.add_parser("compare-archives", parents=[common], help="compare two archives up to isomorphism")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(fn=cmd_compare_archives)

    for verb, fn, text in (("lp-build", cmd_lp_build, "write the linear systems of an archive"),
                           ("lp-prove", cmd_lp_prove, "prove the systems of an archive infeasible")):
        s = sub.add_parser(verb, parents=[common], help=text)
        s.add_argument("archive")
        s.add_argument("--constraints", help="constraint file with extra inequalities")
        s.add_argument("--ignore", type=int, nargs="*", default=[],
                       help="tameness conditions to waive")
        if verb == "lp-build":
            s.add_argument("--out-systems", dest="out", help="directory for system files")
        else:
            s.add_argument("--solver", help="'builtin' or a solver program")
        s.set_defaults(fn=fn)

    s = sub.add_parser("lp-check-cert", parents=[common], help="check a dual certificate")
    s.add_argument("system")
    s.add_argument("certificate")
    s.set_defaults(fn=cmd_lp_check_cert)
    return p


def _config(a) -> Config:
    cfg = load_config(a.config) if a.config else Config()
    return cfg.override(out_dir=a.out_dir, workers=a.workers)


def main(argv=None, stdout=None) -> int:
    out = stdout or sys.stdout
    err = sys.stderr
    try:
        a = build_parser().parse_args(argv)
        cfg = _config(a)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EX_USAGE
    except ConfigError as exc:
        err.write(f"config error: {exc}\n")
        return EX_USAGE
    except OSError as exc:
        err.write(f"cannot read config: {exc}\n")
        return EX_IOERR
    args = {k: v for k, v in sorted(vars(a).items()) if k not in ("fn", "config", "out_dir", "verb")}
    rep = RunReport(a.verb, args, cfg.as_dict())
    t0 = time.perf_counter()
    try:
        code = a.fn(a, cfg, rep, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EX_USAGE
    except DataError as exc:
        err.write(f"bad input: {exc}\n")
        return EX_DATAERR
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return EX_IOERR
    rep.exit_code = code
    if cfg.record_wall_time:
        rep.timing["wall_seconds"] = time.perf_counter() - t0
    if cfg.out_dir:
        try:
            path = rep.write(cfg.out_dir)
        except OSError as exc:
            err.write(f"I/O error writing report: {exc}\n")
            return EX_IOERR
        err.write(f"report {path}\n")
    return code
