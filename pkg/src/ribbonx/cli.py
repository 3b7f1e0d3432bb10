"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error.
Output depends only on the arguments, so repeated runs are byte-identical.
"""

import argparse
import json
import logging
import os
import sys

from .catalog import by_name
from .documents import algebra_to_dict, dumps, load_algebra
from .errors import InvalidModule, InvalidSpec, SizeLimitExceeded
from .field import DEFAULT_LEVEL, one
from .hopf import (HopfData, is_factorizable, is_unimodular, left_integrals, right_integrals,
                   verify_drinfeld_properties, verify_hopf_axioms, verify_ribbon, verify_rmatrix)
from .report import Report
from .reps import DEFAULT_SEED

log = logging.getLogger("ribbonx")


class UsageError(Exception):
    pass


# -- algebra resolution -------------------------------------------------------

def resolve(spec, level=DEFAULT_LEVEL):
    """Catalog name (``dk1``, ``tilde:h4``, ...) or path to a JSON algebra document."""
    if spec.endswith(".json") or os.path.sep in spec:
        try:
            return load_algebra(spec)
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{spec} is not valid JSON: {exc}") from None
    try:
        H = by_name(spec, level)
    except KeyError:
        raise UsageError(f"unknown algebra {spec!r}") from None
    return getattr(H, "extended", H)


def corrupt_antipode(H):
    """Copy of H whose antipode is replaced by the identity map."""
    o = one(H.level)
    return HopfData(H.dim, H.labels, H.mult_table, H.unit_vec, H.comult_table, H.counit_vec,
                    [{i: o} for i in range(H.dim)], level=H.level, r_matrix=H._r,
                    ribbon=H._ribbon, name=f"{H.name}[S=id]", generators=H.generators)


# -- batteries ---------------------------------------------------------------

def integrals_report(H):
    rep = Report(f"integrals: {H.name}")
    left, right = left_integrals(H), right_integrals(H)
    rep.add("left_integrals_one_dimensional", len(left) == 1, len(left))
    rep.add("right_integrals_one_dimensional", len(right) == 1, len(right))
    rep.data["unimodular"] = is_unimodular(H)
    if left:
        rep.data["left_integral"] = left[0].to_strings()
    return rep


def battery(H):
    reports = [verify_hopf_axioms(H)]
    if H.has_r():
        reports.append(verify_rmatrix(H))
        reports.append(verify_drinfeld_properties(H))
    reports.append(integrals_report(H))
    if H.has_r():
        fac, rank = is_factorizable(H)
        rep = Report(f"factorizability: {H.name}")
        rep.data["factorizable"] = fac
        rep.data["drinfeld_map_rank"] = rank
        reports.append(rep)
    if H.ribbon is not None:
        reports.append(verify_ribbon(H))
    return reports


def extend_reports(H, verify=True):
    from .ribbon_ext import (check_integrals_transfer, extension_report, ribbon_extension,
                             ribbon_tensor_decomposition, sommerhauser_decomposition)
    ext = ribbon_extension(H)
    reports = []
    if verify:
        reports.append(extension_report(ext))
        reports.append(check_integrals_transfer(ext))
        reports.append(sommerhauser_decomposition(H)[2])
        if H.ribbon is not None:
            reports.append(ribbon_tensor_decomposition(H))
        else:
            skip = Report(f"ribbon tensor decomposition: {H.name}")
            skip.note("skipped: no ribbon element is attached to the base algebra")
            reports.append(skip)
    return ext, reports


# -- output ------------------------------------------------------------------

def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(header, reports, fmt, extra=None):
    passed = all(r.passed for r in reports)
    if fmt == "json":
        doc = dict(header)
        doc["passed"] = passed
        doc["reports"] = [r.to_dict() for r in reports]
        if extra:
            doc.update(extra)
        return dumps(doc), passed
    lines = [f"# {header['command']} {header.get('spec', header.get('table', ''))}".rstrip(), ""]
    for key in sorted(header):
        if key != "command":
            lines.append(f"- {key}: {header[key]}")
    lines.append("")
    text = "\n".join(lines) + "\n" + "\n".join(r.to_markdown() for r in reports)
    text += f"\nresult: {'pass' if passed else 'FAIL'}\n"
    return text, passed


def _report_failures(reports):
    for r in reports:
        for c in r.failures():
            w = "" if c.witness is None else f": {c.witness}"
            print(f"FAIL [{r.title}] {c.name}{w}", file=sys.stderr)


# -- commands ------------------------------------------------------------------

def cmd_verify(args):
    H = resolve(args.spec, args.level)
    if args.corrupt_antipode:
        H = corrupt_antipode(H)
    log.info("verifying %s (dim %d)", H.name, H.dim)
    reports = battery(H)
    header = {"command": "verify", "spec": args.spec, "level": args.level, "seed": args.seed,
              "algebra": H.name, "dim": H.dim}
    text, ok = _render(header, reports, args.format)
    _emit(text, args.out)
    if not ok:
        _report_failures(reports)
    return 0 if ok else 1


def cmd_extend(args):
    H = resolve(args.spec, args.level)
    log.info("extending %s (dim %d)", H.name, H.dim)
    ext, reports = extend_reports(H, verify=not args.no_verify)
    Ht = ext.extended
    header = {"command": "extend", "spec": args.spec, "level": args.level, "seed": args.seed,
              "base": H.name, "dim": Ht.dim}
    if args.format == "json":
        text, ok = _render(header, reports, "json",
                           {"algebra": algebra_to_dict(Ht, ext.sidecar())})
    else:
        text, ok = _render(header, reports, "markdown")
    _emit(text, args.out)
    if not ok:
        _report_failures(reports)
    return 0 if ok else 1


def cmd_report(args):
    from .tables import TABLES
    res = TABLES[args.table](args.seed)
    header = {"command": "report", "table": args.table, "seed": args.seed}
    if args.format == "json":
        doc = dict(header)
        doc["passed"] = res.passed
        doc["report"] = res.to_dict()
        text = dumps(doc)
    else:
        text = f"# report {args.table}\n\n- seed: {args.seed}\n\n" + res.markdown()
        if res.report.notes:
            text += "\n### Open questions\n\n" + "".join(f"- {n}\n" for n in res.report.notes)
        data = {k: v for k, v in res.report.data.items() if k != "seed"}
        if data:
            text += "\n### Data\n\n" + "".join(f"- {k}: {data[k]}\n" for k in sorted(data))
    _emit(text, args.out)
    if not res.passed:
        _report_failures([res.report])
    return 0 if res.passed else 1


def cmd_module(args):
    from .reps import decompose, dkn_modules, module_to_dict, module_verify
    mods = dkn_modules(1)
    if args.name not in mods:
        raise UsageError(f"unknown module {args.name!r}; choose from {', '.join(mods)}")
    M = mods[args.name]
    rep = module_verify(M)
    reports = [rep]
    extra = {"module": module_to_dict(M)}
    if args.decompose:
        dec = decompose(M, args.seed, mods)
        reports.append(dec.check())
        extra["summands"] = list(dec.name_with(mods).names)
    header = {"command": "module", "spec": args.name, "seed": args.seed, "dim": M.dim}
    if args.format == "json":
        text, ok = _render(header, reports, "json", extra)
    else:
        text, ok = _render(header, reports, "markdown")
        if "summands" in extra:
            text += f"summands: {extra['summands']}\n"
    _emit(text, args.out)
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------

def build_parser():
    from .tables import TABLES
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, default=DEFAULT_LEVEL,
                        help="cyclotomic level N of the scalar field Q(zeta_N)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=("json", "markdown"), default="markdown")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="ribbonx", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the verifier battery")
    v.add_argument("spec")
    v.add_argument("--corrupt-antipode", action="store_true",
                   help="replace the antipode by the identity before verifying")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extend", parents=[common], help="build the ribbon extension")
    e.add_argument("spec")
    e.add_argument("--no-verify", action="store_true",
                   help="construct and emit the extension without running any checks")
    e.set_defaults(func=cmd_extend)

    r = sub.add_parser("report", parents=[common], help="emit a reproduction table")
    r.add_argument("table", choices=sorted(TABLES))
    r.set_defaults(func=cmd_report)

    m = sub.add_parser("module", parents=[common], help="emit a named module of the n=1 extension")
    m.add_argument("name")
    m.add_argument("--decompose", action="store_true")
    m.set_defaults(func=cmd_module)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, InvalidSpec, InvalidModule, SizeLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
