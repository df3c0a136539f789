"""Command-line interface: ``sympcoh <command> ...``.

Exit codes: 0 success (verdicts are data, not exit codes), 1 invalid model
or operational failure, 2 usage or parse error.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .checkers import (canonical_map_report, check_dd_lambda_lemma, check_lefschetz_decomposition,
                       check_pairing, check_primitive_bounds, check_primitive_exact_spaces,
                       check_strong_lefschetz, verdict_consistency)
from .cohomology import KINDS, CohomologyEngine, normalize_kind
from .errors import ParseError, SympError
from .exterior import format_form, parse_form
from .identities import run_suite
from .metric import HodgeContext
from .model import (BUILTIN_DESCRIPTIONS, builtin_model, builtin_names, load_model, validate_model)

CHECK_TESTS = ("ddl-lemma", "strong-lefschetz", "lefschetz-decomp", "pairing", "canonical-map",
               "primitive-exact")


def _add_model_args(p):
    p.add_argument("file", nargs="?", help="model file (# symp-model v1)")
    p.add_argument("--builtin", metavar="NAME", help="built-in model: kt, torus1, torus2, ...")
    p.add_argument("--format", choices=("table", "json"), default="table")


def build_parser():
    parser = argparse.ArgumentParser(prog="sympcoh", description="Exact symplectic cohomology calculator "
                                     "for invariant forms on nilmanifolds and solvmanifolds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a model")
    _add_model_args(p)

    p = sub.add_parser("cohomology", help="dimensions and bases of the cohomologies")
    _add_model_args(p)
    p.add_argument("--kinds", default="all", help="comma-separated kinds (d, dΛ|dL, d+dΛ, ddΛ, d∩dΛ) or 'all'")
    p.add_argument("--primitive", action="store_true", help="primitive cohomologies PH instead")
    p.add_argument("--harmonic", action="store_true", help="also compute harmonic representatives")
    p.add_argument("--lambda", dest="lam", default="1", help="positive rational λ for the Laplacians")

    p = sub.add_parser("check", help="structural checks with verdicts and witnesses")
    _add_model_args(p)
    p.add_argument("--test", required=True, choices=CHECK_TESTS)
    p.add_argument("--kind", default="d", help="cohomology kind for strong-lefschetz")
    p.add_argument("--degree", type=int, help="degree for pairing (default: all k <= n)")

    p = sub.add_parser("decompose", help="Lefschetz decomposition of a form")
    _add_model_args(p)
    p.add_argument("--form", required=True, help='form such as "e1^e2 + 1/2 * e3^e4"')

    p = sub.add_parser("identity-suite", help="seeded randomized operator identity checks")
    p.add_argument("--backend", choices=("poly", "invariant"), default="invariant")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--model", default="kt", help="built-in model for the invariant backend")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("builtin", help="list built-in models")
    p.add_argument("--list", action="store_true", default=True)
    return parser


class UsageError(Exception):
    pass


def _load(args):
    if args.builtin and args.file:
        raise UsageError("give either a model file or --builtin, not both")
    if args.builtin:
        return builtin_model(args.builtin)
    if not args.file:
        raise UsageError("a model file or --builtin NAME is required")
    return load_model(args.file)


def _emit(text, out):
    out.write(text if text.endswith("\n") else text + "\n")


def _json(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False)


def _envelope(model, results=(), checks=()):
    return {"model": model.name, "version": __version__, "inputHash": model.input_hash,
            "complex": "invariant forms", "results": list(results), "checks": list(checks)}


def _require_valid(model):
    report = validate_model(model)
    if not report.ok:
        raise SympError(str(report))
    return report


# -- commands -------------------------------------------------------------------

def cmd_validate(args, out):
    model = _load(args)
    report = validate_model(model)
    if args.format == "json":
        _emit(_json({"model": model.name, "version": __version__, "inputHash": model.input_hash,
                     "valid": report.ok,
                     "checks": [{"name": e.name, "verdict": "holds" if e.passed else "fails",
                                 "witnesses": [e.witness] if e.witness else []} for e in report.entries]}),
              out)
    else:
        _emit(str(report), out)
    return 0 if report.ok else 1


def _kinds(text, primitive):
    if text.strip().lower() == "all":
        kinds = list(KINDS)
        if primitive:
            return ["PH:d+dΛ", "PH:ddΛ", "PH:d∩dΛ", "PH:d"]
        return kinds
    out = []
    for part in text.split(","):
        kind = normalize_kind(part)
        if primitive and not kind.startswith("PH:"):
            kind = "PH:" + kind
        if kind not in out:
            out.append(kind)
    return out


def cmd_cohomology(args, out):
    model = _load(args)
    _require_valid(model)
    lam = Fraction(args.lam)
    if lam <= 0:
        raise UsageError("--lambda must be positive")
    hodge = HodgeContext(model) if args.harmonic else None
    engine = CohomologyEngine(model, hodge, lam)
    kinds = _kinds(args.kinds, args.primitive)
    tables = {kind: engine.cohomology_table(kind, args.harmonic) for kind in kinds}
    if args.format == "json":
        results = [r.to_dict() for kind in kinds for r in tables[kind]]
        _emit(_json(_envelope(model, results)), out)
    else:
        _emit(format_cohomology_table(model, kinds, tables, args.harmonic, lam), out)
    return 0


def format_cohomology_table(model, kinds, tables, harmonic=False, lam=1):
    top = max(len(rows) for rows in tables.values()) - 1
    width = max(8, max(len(k) for k in kinds) + 2)
    lines = [f"model {model.name}: dim {model.dim}, cohomology of invariant forms"]
    if harmonic:
        lines[0] += f", λ = {lam}"
    lines.append("kind".ljust(width) + "".join(f"k={k}".rjust(6) for k in range(top + 1)))
    for kind in kinds:
        dims = "".join(str(r.dimension).rjust(6) for r in tables[kind])
        lines.append(kind.ljust(width) + dims)
    lines.append("")
    lines.append("bases:")
    for kind in kinds:
        for r in tables[kind]:
            basis = ", ".join(r.basis_strings()) or "0"
            lines.append(f"  H^{r.degree}_{kind}: {basis}")
            if harmonic:
                if r.harmonic is None:
                    lines.append(f"    harmonic: (no harmonic theory for {kind})")
                else:
                    lines.append(f"    harmonic: {', '.join(r.harmonic_strings()) or '0'}")
    return "\n".join(lines)


def cmd_check(args, out):
    model = _load(args)
    _require_valid(model)
    engine = CohomologyEngine(model)
    if args.test == "ddl-lemma":
        reports = [check_dd_lambda_lemma(model, engine)]
    elif args.test == "strong-lefschetz":
        reports = [check_strong_lefschetz(model, args.kind, engine)]
    elif args.test == "lefschetz-decomp":
        reports = [check_lefschetz_decomposition(model, engine)]
    elif args.test == "primitive-exact":
        reports = [check_primitive_exact_spaces(model, engine), check_primitive_bounds(model, engine)]
    elif args.test == "canonical-map":
        consistent, verdicts = verdict_consistency(model, engine)
        reports = [canonical_map_report(model, engine)]
        reports[0].details["verdict consistency"] = {"consistent": consistent, "verdicts": verdicts}
    else:
        if args.degree is not None and not 0 <= args.degree <= model.dim:
            raise UsageError(f"--degree must lie in 0..{model.dim}")
        reports = [check_pairing(model, args.degree, engine)]
    if args.format == "json":
        _emit(_json(_envelope(model, checks=[r.to_dict() for r in reports])), out)
    else:
        lines = [f"model {model.name}"]
        for r in reports:
            lines.append(str(r))
            lines.extend(_format_details(r.details, "  "))
        _emit("\n".join(lines), out)
    return 0


def _format_details(details, indent):
    lines = []
    for key, value in details.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_format_details(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{indent}{key}:")
            width = max(len(x) for row in value for x in row)
            lines.extend(indent + "  [" + " ".join(x.rjust(width) for x in row) + "]" for row in value)
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def cmd_decompose(args, out):
    model = _load(args)
    _require_valid(model)
    form = parse_form(args.form, model.dim)
    ctx = model.context(checked=True)
    comps = ctx.decompose(form)
    recomposed = comps.recompose()
    entries = []
    for r, b in comps.items():
        entries.append({"r": r, "degree": comps.degree - 2 * r, "B": format_form(b),
                        "primitive": ctx.is_primitive(b)})
    if args.format == "json":
        payload = _envelope(model)
        payload["decomposition"] = {"form": format_form(form), "degree": comps.degree,
                                    "components": entries, "recomposes": recomposed == form}
        _emit(_json(payload), out)
    else:
        lines = [f"A = {format_form(form)}  (degree {comps.degree})",
                 "A = sum_r (1/r!) L^r B_(k-2r)"]
        for e in entries:
            status = "primitive" if e["primitive"] else "NOT primitive"
            lines.append(f"  r={e['r']}: B_{e['degree']} = {e['B']}  [{status}]")
        lines.append(f"recomposition check: {'ok' if recomposed == form else 'FAILED'}")
        _emit("\n".join(lines), out)
    return 0


def cmd_identity_suite(args, out):
    if args.cases < 1:
        raise UsageError("--cases must be positive")
    report = run_suite(args.backend, args.seed, args.cases, args.model)
    if args.format == "json":
        _emit(_json(report.to_dict()), out)
    else:
        _emit(report.format(), out)
    return 0 if report.ok else 1


def cmd_builtin(args, out):
    lines = [f"{name:8s} {BUILTIN_DESCRIPTIONS.get(name, '')}" for name in builtin_names()]
    lines.append("torusN   flat 2N-torus for any N >= 1")
    _emit("\n".join(lines), out)
    return 0


COMMANDS = {"validate": cmd_validate, "cohomology": cmd_cohomology, "check": cmd_check,
            "decompose": cmd_decompose, "identity-suite": cmd_identity_suite, "builtin": cmd_builtin}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return 2
    except (SympError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except (UsageError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
