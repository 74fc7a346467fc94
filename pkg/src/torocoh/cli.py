"""Command-line surface: ``torocoh <subcommand> --group g.json [--bundle b.json] ...``

Exit codes: 0 success, 1 parse/validation failure (including a certified
(IS) failure in ``validate`` and a golden mismatch in ``examples``),
2 precondition violation, 3 undetermined classification.
"""
import argparse
import csv
import decimal
import io as _io
import json
import os
import platform
import sys
import time

from . import __version__
from .classify import ClassifyOptions, classify
from .dbar import solve, witness_non_hausdorff
from .diophantine import certify, refute, scan
from .errors import (
    NonIntegerPError,
    NotAlgebraicError,
    PreconditionError,
    SingularBError,
    TorocohError,
    ValidationError,
)
from .io import form_to_json, load_json, parse_form, parse_instance
from .reports import (
    bundle_report,
    context_of,
    frame_report,
    run_example,
    shift_report,
    sigma0_report,
)
from .scalars.lacunary import ApproximationRule
from .spectral import find_sigma0
from .torus import check_irrationality

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_UNDETERMINED = 0, 1, 2, 3
FORMATS = ("json", "csv", "text")
RULES = ("factorial-pow10", "supergap", "custom")


class Outcome:
    """A report body plus the exit code it implies."""

    def __init__(self, body, code=EXIT_OK, rows=None):
        self.body = body
        self.code = code
        self.rows = rows  # optional tabular view for csv output


# --------------------------------------------------------------------------
# argument parsing


def _int_list(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group JSON file (may embed the bundle)")
    common.add_argument("--bundle", help="bundle JSON file")
    common.add_argument("--precision", type=int, default=None,
                        help="decimal digits in reports (default $TOROCOH_PRECISION or 30)")
    common.add_argument("--out", help="output path, or one of json|csv|text for stdout")
    common.add_argument("--format", choices=FORMATS, default=None, help="output format")

    parser = argparse.ArgumentParser(prog="torocoh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="period matrix and irrationality check")
    sub.add_parser("frame", parents=[common], help="real coordinate frame A, B, C")
    sub.add_parser("bundle", parents=[common], help="normalized summand, alpha, beta, d(L)")
    sub.add_parser("sigma0", parents=[common], help="exceptional mode sigma_0 or none")
    p = sub.add_parser("shift", parents=[common], help="spectral shift at one lattice point")
    p.add_argument("--sigma", type=_int_list, required=True, help="comma-separated (n+m) integers")
    p = sub.add_parser("scan", parents=[common], help="shell minima of ||K_sigma + d(L)||")
    p.add_argument("--radius", type=_positive, default=12)
    sub.add_parser("certify", parents=[common], help="certify the exponential lower bound")
    p = sub.add_parser("refute", parents=[common], help="refute it with a lacunary witness family")
    p.add_argument("--rule", choices=RULES, default="factorial-pow10")
    p.add_argument("--nu-max", type=_positive, default=3)
    p.add_argument("--q-exponents", type=_int_list, default=(), help="custom rule: log10 q per nu")
    p.add_argument("--terms", type=_int_list, default=(), help="custom rule: partial-sum length per nu")
    p = sub.add_parser("solve", parents=[common], help="solve the translated dbar equation modewise")
    p.add_argument("--in", dest="infile", required=True, help="closed form JSON")
    p.add_argument("--mode", choices=("exact", "numeric"), default="exact")
    p = sub.add_parser("witness", parents=[common], help="non-Hausdorff witness pairs")
    p.add_argument("--rule", choices=RULES, default="supergap")
    p.add_argument("--nu-max", type=_positive, default=3)
    p.add_argument("--q-exponents", type=_int_list, default=())
    p.add_argument("--terms", type=_int_list, default=())
    p = sub.add_parser("classify", parents=[common], help="full classification pipeline")
    p.add_argument("--radius", type=_positive, default=12)
    p.add_argument("--accept-evidence", action="store_true")
    p.add_argument("--witness-rule", choices=RULES[:2], default=None)
    p.add_argument("--nu-max", type=_positive, default=3)
    p.add_argument("--external-facts", action="store_true",
                   help="add the standard dimension count of H^p(T, O)")
    p.add_argument("--trivial-stub", action="store_true",
                   help="accept a trivial bundle and emit a stub report")
    p = sub.add_parser("examples", parents=[common], help="rebuild a worked example and compare to golden")
    p.add_argument("name", choices=("10.1", "10.2", "10.3"))
    p.add_argument("--radius", type=_positive, default=12)
    return parser


def resolve_precision(value):
    if value is None:
        env = os.environ.get("TOROCOH_PRECISION")
        try:
            value = int(env) if env else 30
        except ValueError as exc:
            raise ValidationError(f"TOROCOH_PRECISION is not an integer: {env!r}") from exc
    if value < 6:
        raise ValidationError("precision must be >= 6")
    return value


def resolve_output(args):
    """(path or None, format)."""
    path, fmt = args.out, args.format
    if path in FORMATS:
        return None, fmt or path
    if fmt is None:
        ext = os.path.splitext(path)[1].lstrip(".") if path else ""
        fmt = ext if ext in FORMATS else "json"
    return path, fmt


# --------------------------------------------------------------------------
# subcommands


def _instance(args, need_bundle=True):
    if not args.group:
        raise ValidationError("--group is required")
    group_obj = load_json(args.group)
    bundle_obj = load_json(args.bundle) if args.bundle else None
    P, d = parse_instance(group_obj, bundle_obj)
    if need_bundle and d is None:
        raise ValidationError("--bundle is required (or embed d_e/d_s in the group file)")
    return P, d


def _rule(args):
    if args.rule == "custom":
        if not args.q_exponents or len(args.q_exponents) != len(args.terms):
            raise ValidationError("custom rule needs --q-exponents and --terms of equal length")
        if len(args.q_exponents) < args.nu_max:
            raise ValidationError("custom rule lists must cover nu = 1..nu-max")
    return ApproximationRule(args.rule, tuple(args.q_exponents), tuple(args.terms))


def cmd_validate(args, digits):
    P, _ = _instance(args, need_bundle=False)
    irr = check_irrationality(P)
    body = {"n": P.n, "m": P.m, "field": P.field.kind, "certified": P.certified,
            "irrationality": irr.to_json()}
    return Outcome(body, EXIT_INVALID if irr.status == "certified_fails" else EXIT_OK)


def cmd_frame(args, digits):
    P, _ = _instance(args, need_bundle=False)
    return Outcome(frame_report(P, digits))


def cmd_bundle(args, digits):
    P, d = _instance(args)
    return Outcome(bundle_report(P, d, digits))


def cmd_sigma0(args, digits):
    P, d = _instance(args)
    body, _ = sigma0_report(context_of(P, d), digits)
    return Outcome(body)


def cmd_shift(args, digits):
    P, d = _instance(args)
    if len(args.sigma) != P.n + P.m:
        raise ValidationError(f"--sigma needs {P.n + P.m} integers")
    return Outcome(shift_report(context_of(P, d), args.sigma, digits))


def _decimal_str(x, digits):
    """A rational as a decimal string with ``digits`` significant digits."""
    with decimal.localcontext() as c:
        c.prec = digits
        return str(decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator))


def cmd_scan(args, digits):
    P, d = _instance(args)
    ctx = context_of(P, d)
    rep = scan(ctx, find_sigma0(ctx), args.radius)
    rows = [
        {"shell": g.shell, "min_gap": _decimal_str(g.gap.hi, digits), "min_gap_log10_lo": repr(g.log10_lo), "min_gap_log10_hi": repr(g.log10_hi),
         "sigma": " ".join(str(s) for s in g.sigma)}
        for g in rep.shells
    ]
    return Outcome(rep.to_json(), rows=rows)


def cmd_certify(args, digits):
    P, d = _instance(args)
    ctx = context_of(P, d)
    return Outcome(certify(ctx, find_sigma0(ctx)).to_json())


def cmd_refute(args, digits):
    P, d = _instance(args)
    ctx = context_of(P, d)
    return Outcome(refute(ctx, find_sigma0(ctx), _rule(args), args.nu_max).to_json())


def cmd_witness(args, digits):
    P, d = _instance(args)
    ctx = context_of(P, d)
    return Outcome(witness_non_hausdorff(ctx, find_sigma0(ctx), _rule(args), args.nu_max).to_json())


def cmd_solve(args, digits):
    P, d = _instance(args)
    ctx = context_of(P, d)
    phi = parse_form(load_json(args.infile), P.m, P.field, args.mode)
    if phi.m != P.m:
        raise ValidationError("form and group disagree on m")
    res = solve(phi, find_sigma0(ctx), ctx)
    body = {
        "psi": form_to_json(res.psi, digits),
        "harmonic": form_to_json(res.harmonic, digits) if res.harmonic is not None else None,
        "max_residual": res.max_residual,
        "residuals": [{"sigma": list(s), "residual": r} for s, r in sorted(res.residuals.items())],
    }
    return Outcome(body)


def cmd_classify(args, digits):
    P, d = _instance(args)
    opts = ClassifyOptions(radius=args.radius, witness_rule=args.witness_rule, nu_max=args.nu_max,
                           accept_evidence=args.accept_evidence, external_facts=args.external_facts)
    res = classify(P, d, opts)
    body = res.to_json()
    if res.case == "trivial_bundle":
        if not args.trivial_stub:
            raise PreconditionError("bundle is trivial; pass --trivial-stub to emit a stub report")
        body["stub"] = "H^p(X, O) of the trivial bundle is not computed here"
        return Outcome(body)
    return Outcome(body, EXIT_UNDETERMINED if res.case == "undetermined" else EXIT_OK)


def cmd_examples(args, digits):
    out = run_example(args.name, digits, args.radius)
    return Outcome(out, EXIT_OK if out["golden_match"] else EXIT_INVALID)


COMMANDS = {
    "validate": cmd_validate, "frame": cmd_frame, "bundle": cmd_bundle, "sigma0": cmd_sigma0,
    "shift": cmd_shift, "scan": cmd_scan, "certify": cmd_certify, "refute": cmd_refute,
    "solve": cmd_solve, "witness": cmd_witness, "classify": cmd_classify, "examples": cmd_examples,
}


# --------------------------------------------------------------------------
# output


def dumps(body):
    return json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}.{i}")
    else:
        yield prefix, obj


def render(outcome, fmt):
    if fmt == "json":
        return dumps(outcome.body)
    if fmt == "csv":
        if outcome.rows is None:
            raise ValidationError("csv output is only available for scan")
        buf = _io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["shell", "min_gap", "min_gap_log10_lo", "min_gap_log10_hi", "sigma"],
                           lineterminator="\n")
        w.writeheader()
        w.writerows(outcome.rows)
        return buf.getvalue()
    return "".join(f"{k} = {json.dumps(v, ensure_ascii=False)}\n" for k, v in _flatten(outcome.body))


def _write_meta(path, argv, code, elapsed, digits):
    meta = {
        "argv": list(argv),
        "exit_code": code,
        "elapsed_seconds": round(elapsed, 3),
        "finished_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "precision": digits,
        "python": platform.python_version(),
        "version": __version__,
    }
    base = path[: -len(".json")] if path.endswith(".json") else path
    with open(base + ".meta.json", "w") as fh:
        fh.write(dumps(meta))


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, run the subcommand and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    start = time.monotonic()
    try:
        digits = resolve_precision(args.precision)
        path, fmt = resolve_output(args)
        outcome = COMMANDS[args.command](args, digits)
        text = render(outcome, fmt)
    except (ValidationError, SingularBError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except (PreconditionError, NotAlgebraicError, NonIntegerPError) as exc:
        print(f"precondition: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except TorocohError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=stderr)
        return EXIT_PRECONDITION
    if path:
        with open(path, "w") as fh:
            fh.write(text)
        _write_meta(path, argv, outcome.code, time.monotonic() - start, digits)
    else:
        stdout.write(text)
    return outcome.code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
