"""Command-line front end.

Every command prints either a JSON document ``{command, inputs, results,
warnings}``, LaTeX, or plain text.  Exit status: 0 success, 1 a verification
failed, 2 bad usage, 3 an internal error raised by the library.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import sympy

from . import __version__
from .algebra import AlgNum
from .config import FORMATS, Config
from .errors import HypGammaError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_number(s: str) -> AlgNum:
    try:
        return AlgNum(sympy.sympify(s.replace("^", "**"), locals={"i": sympy.I}))
    except (sympy.SympifyError, TypeError, ValueError, SyntaxError) as err:
        raise UsageError(f"cannot parse number {s!r}") from err


def _parse_triple(s: str) -> tuple:
    parts = [p.strip() for p in s.split(",")]
    if len(parts) != 3:
        raise UsageError(f"expected three comma-separated values, got {s!r}")
    return tuple(_parse_number(p) for p in parts)


def _parse_shift(s: str):
    from .contiguity import ShiftVector

    try:
        g = ShiftVector.parse(s)
    except (ValueError, TypeError) as err:
        raise UsageError(f"bad shift vector {s!r}; expected k,l,m") from err
    if g.is_zero():
        raise UsageError("the zero shift vector is not allowed")
    return g


class Output:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results = None
        self.warnings: list = []
        self.text_lines: list = []
        self.latex_lines: list = []

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"command": self.command, "inputs": self.inputs, "results": self.results,
                   "warnings": self.warnings}
            return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)
        lines = self.latex_lines if fmt == "latex" and self.latex_lines else self.text_lines
        body = "\n".join(lines)
        if self.warnings:
            body += "\n" + "\n".join(f"warning: {w}" for w in self.warnings)
        return body


# ------------------------------------------------------------------ commands

def cmd_contiguity(args, cfg: Config, out: Output) -> int:
    from .contiguity import shift_relation

    rel = shift_relation(_parse_shift(args.shift), args.order)
    out.results = rel.to_json()
    out.results["R_factored"] = rel.R.factored_text()
    out.results["Q_factored"] = rel.Q.factored_text()
    out.text_lines = [f"R = {rel.R.factored_text()}", f"Q = {rel.Q.factored_text()}"]
    out.latex_lines = [rf"R = {sympy.latex(sympy.factor(rel.R.to_sympy()))}",
                       rf"Q = {sympy.latex(sympy.factor(rel.Q.to_sympy()))}"]
    return EXIT_OK


def cmd_admissible(args, cfg: Config, out: Output) -> int:
    from .admissibility import build_system, solve_system

    system = build_system(_parse_shift(args.shift))
    res = solve_system(system, cfg.algnum_degree_ceiling, with_report=True)
    out.results = {"system": system.to_json(), "quadruples": [q.to_json() for q in res.quadruples],
                   "unsolved": [u.to_json() for u in res.unsolved]}
    for u in res.unsolved:
        out.warnings.append(f"unsolved {u.kind} component (z-factor {u.z_factor})")
    out.text_lines = [f"[{i}] {q.to_json()['line']}" + ("  (resonant: " + q.witness + ")" if q.resonant else "")
                      for i, q in enumerate(res.quadruples)] or ["no admissible quadruples"]
    out.latex_lines = [rf"F\big({q.line_text()}\,|\,{sympy.latex(q.z0.expr)}\big)" for q in res.quadruples]
    return EXIT_OK


def cmd_kernel(args, cfg: Config, out: Output) -> int:
    from .admissibility import admissible_quadruples
    from .interpolation import factor_R, line_view
    from .kernel import belyi_z0, r0_from_kernel

    gamma = _parse_shift(args.shift)
    points = belyi_z0(gamma, cfg.algnum_degree_ceiling)
    quads = admissible_quadruples(gamma, cfg.algnum_degree_ceiling).quadruples
    rows = []
    for p in points:
        row = p.to_json()
        row["z0_text"] = p.z0.to_text()
        if p.g_value is not None:
            r0k = r0_from_kernel(gamma, p.z0, p.x1)
            row["R0_kernel"] = r0k.to_text()
            row["R0_contiguity"] = []
            for q in quads:
                if q.z0 == p.z0 and not q.resonant:
                    r0c = factor_R(line_view(q).R, cfg.algnum_degree_ceiling)[0]
                    row["R0_contiguity"].append(r0c.to_text())
                    if (r0c * r0c.conjugate()).simplified() != (r0k * r0k.conjugate()).simplified():
                        out.warnings.append(f"|R0| mismatch at z0 = {p.z0.to_text()}")
        rows.append(row)
    out.results = {"gamma": list(gamma), "belyi_points": rows}
    out.text_lines = [f"z0 = {r['z0_text']}  R0_kernel = {r.get('R0_kernel', '-')}  "
                      f"R0_contiguity = {r.get('R0_contiguity', '-')}" for r in rows] or ["no Belyi points"]
    return EXIT_FAIL if out.warnings else EXIT_OK


def _select_quadruple(args, cfg: Config):
    from .admissibility import AdmissibleQuadruple, admissible_quadruples, find_quadruple, is_nonresonant

    gamma = _parse_shift(args.shift)
    if args.offsets or args.z0:
        if not (args.offsets and args.z0):
            raise UsageError("--offsets and --z0 go together")
        offs = _parse_triple(args.offsets)
        z0 = _parse_number(args.z0)
        q = find_quadruple(gamma, offs, z0)
        if q is None:
            q = AdmissibleQuadruple(gamma, *offs, z0)
            ok, wit = is_nonresonant(q)
            q = AdmissibleQuadruple(gamma, *offs, z0, not ok, wit)
            from .symmetry import _verify_admissible
            if not _verify_admissible(q):
                raise UsageError("the given offsets and z0 are not admissible for this shift")
        return q
    quads = admissible_quadruples(gamma, cfg.algnum_degree_ceiling).quadruples
    if not quads:
        raise UsageError(f"no admissible quadruple for {gamma}")
    if not 0 <= args.branch < len(quads):
        raise UsageError(f"--branch must be in 0..{len(quads) - 1}")
    return quads[args.branch]


def cmd_interpolate(args, cfg: Config, out: Output) -> int:
    from .interpolation import interpolate

    q = _select_quadruple(args, cfg)
    if q.resonant:
        raise UsageError(f"resonant quadruple ({q.witness}); see the catalog for resonant identities")
    ev = interpolate(q, cfg.precision_bits)
    out.results = ev.to_json()
    out.warnings.extend(ev.warnings)
    out.text_lines = [ev.to_text(), f"pole bounds {ev.pole_bounds}, verified {ev.verified_fresh}"]
    out.latex_lines = [ev.to_latex()]
    return EXIT_OK if ev.verified_fresh else EXIT_FAIL


def cmd_associates(args, cfg: Config, out: Output) -> int:
    from .symmetry import associates, normalize_shift, orbit

    gamma = _parse_shift(args.shift)
    if args.offsets or args.z0:
        q = _select_quadruple(args, cfg)
        imgs = associates(q, verify=True)
        out.results = {"quadruple": q.to_json(),
                       "images": [{"row": i, "quadruple": img.to_json()} for i, img in imgs]}
        out.text_lines = [f"[{i:2d}] {img.to_json()['line']}" for i, img in imgs]
        return EXIT_OK
    orb = orbit(gamma)
    rep, idx = normalize_shift(gamma)
    out.results = {"orbit": orb.to_json(), "normal_form": {"gamma": list(rep), "row": idx}}
    out.text_lines = [f"row {i:2d}: {g}" for g, i in orb.members] + [f"normal form {rep} via row {idx}"]
    return EXIT_OK


def cmd_eval2f1(args, cfg: Config, out: Output) -> int:
    from .numerics import hyp2f1

    vals = []
    for name in ("a", "b", "c", "z"):
        v = _parse_number(getattr(args, name))
        vals.append(v.enclosure(cfg.precision_bits + 40))
    ball = hyp2f1(*vals, prec=cfg.precision_bits, branch=args.branch, method=args.method)
    out.results = {"value": ball.to_json(max(20, int(cfg.precision_bits * 0.30103))),
                   "rel_accuracy_bits": round(float(ball.rel_accuracy_bits()), 1)}
    out.text_lines = [ball.to_string(max(20, int(cfg.precision_bits * 0.30103)))]
    out.latex_lines = [ball.to_string(30).replace("±", r"\pm")]
    return EXIT_OK


def cmd_catalog(args, cfg: Config, out: Output) -> int:
    from .catalog import entry_by_id, load_catalog, verify_all, verify_entry

    entries = load_catalog()
    if args.action == "list":
        out.results = [e.to_json() for e in entries]
        out.text_lines = [f"{e.id:45s} {e.lhs_text()}" for e in entries]
        return EXIT_OK
    prec = args.prec or cfg.precision_bits
    if args.action == "verify":
        if not args.id:
            raise UsageError("catalog verify needs --id")
        try:
            entry = entry_by_id(args.id, entries)
        except KeyError as err:
            raise UsageError(f"unknown catalog id {args.id!r}") from err
        reports = [verify_entry(entry, prec=prec, seed=cfg.seed)]
    else:
        reports = verify_all(entries, prec, args.jobs or cfg.jobs, cfg.seed)
    out.results = [r.to_json() for r in reports]
    out.text_lines = [f"{r.verdict:7s} {r.max_discrepancy():.2e}  {r.entry_id}"
                      + (f"  ({r.reason})" if r.reason else "") for r in reports]
    skipped = [r.entry_id for r in reports if r.verdict == "skipped"]
    if skipped:
        out.warnings.append(f"skipped: {', '.join(skipped)}")
    return EXIT_FAIL if any(r.verdict == "fail" for r in reports) else EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypgamma", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default json)")
    common.add_argument("--prec", type=int, default=None, help="working precision in bits")
    common.add_argument("--ceiling", type=int, default=None, help="algebraic degree ceiling")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("contiguity", parents=[common], help="R and Q of F(β+γ) = R F(β) + Q F'(β)")
    s.add_argument("--shift", required=True, help="k,l,m")
    s.add_argument("--order", default="abc", help="ladder order (any permutation of abc)")
    s.set_defaults(func=cmd_contiguity)

    s = sub.add_parser("admissible", parents=[common], help="admissible quadruples for a shift")
    s.add_argument("--shift", required=True)
    s.set_defaults(func=cmd_admissible)

    s = sub.add_parser("kernel", parents=[common], help="Belyi points and kernel-side R0")
    s.add_argument("--shift", required=True)
    s.set_defaults(func=cmd_kernel)

    for name, fn, hlp in (("interpolate", cmd_interpolate, "Γ-evaluation of an admissible quadruple"),
                          ("associates", cmd_associates, "images under Kummer's 24 transformations")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--shift", required=True)
        s.add_argument("--branch", type=int, default=0, help="index in the admissible list")
        s.add_argument("--offsets", help="a0,b0,c0 (instead of --branch)")
        s.add_argument("--z0", help="argument z0 (with --offsets)")
        s.set_defaults(func=fn)

    s = sub.add_parser("eval2f1", parents=[common], help="ball value of 2F1(a,b;c;z)")
    for name in ("a", "b", "c", "z"):
        s.add_argument(f"--{name}", required=True)
    s.add_argument("--branch", choices=("upper", "lower"), default="upper",
                   help="side of the cut for real z > 1")
    s.add_argument("--method", default="auto", help="auto, ode or a fixed transformation route")
    s.set_defaults(func=cmd_eval2f1)

    s = sub.add_parser("catalog", parents=[common], help="list or verify the identity catalog")
    s.add_argument("action", choices=("list", "verify", "verify-all"))
    s.add_argument("--id")
    s.add_argument("--jobs", type=int, default=None)
    s.set_defaults(func=cmd_catalog)
    return p


VALUE_OPTIONS = ("--shift", "--offsets", "--z0", "--a", "--b", "--c", "--z")


def _attach_negative_values(argv: list) -> list:
    """Turn ``--z0 -1/8`` into ``--z0=-1/8`` so argparse does not read the value as a flag."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def dispatch(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0) and EXIT_USAGE
    try:
        cfg = Config.from_env(output_format=args.format,
                              precision_bits=args.prec if args.command != "catalog" else None,
                              algnum_degree_ceiling=args.ceiling,
                              jobs=getattr(args, "jobs", None))
    except ValueError as err:
        parser.print_usage(stderr)
        print(f"error: {err}", file=stderr)
        return EXIT_USAGE
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "format")}
    out = Output(args.command, inputs)
    try:
        status = args.func(args, cfg, out)
    except UsageError as err:
        parser.print_usage(stderr)
        print(f"error: {err}", file=stderr)
        return EXIT_USAGE
    except HypGammaError as err:
        print(f"internal error: {type(err).__name__}: {err}", file=stderr)
        return EXIT_INTERNAL
    print(out.render(cfg.output_format), file=stdout)
    return status


def main(argv: Optional[list] = None) -> None:
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
