"""``apolar`` command line.

Exit codes: 0 success, 1 a verdict failed (or an O-sequence check is
negative), 2 unreadable input, 3 bad configuration, 4 dependent forms.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .apolarity import ActionKind, FormSpace
from .config import RunConfig, default_seed
from .errors import (
    ActionCharacteristicError,
    ConfigError,
    DependentFormsError,
    FieldError,
    InsufficientFieldError,
    ParseError,
)
from .forms import infer_nvars, parse_form
from .hilbert import check_level_condition, hilbert_of_form, hilbert_of_space, is_o_sequence, socle_type
from .paperbook import CASES, run_paperbook
from .pencil import format_lambda, sweep
from .scalars import FieldSpec

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CONFIG, EXIT_DEPENDENT = range(5)


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _action(text: str) -> ActionKind:
    try:
        return ActionKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--r", type=int, default=None, metavar="R",
                   help="number of variables (default: inferred from the input)")
    p.add_argument("--field", type=_field, default=None, metavar="q|gf:P",
                   help="coefficient field (default q)")
    p.add_argument("--action", type=_action, default=None, metavar="diff|contract",
                   help="how R acts on forms (default contract)")
    p.add_argument("--samples", type=int, default=None, metavar="N",
                   help="random λ values besides 0 and ∞ (default 8)")
    p.add_argument("--seed", type=int, default=None, metavar="S",
                   help="sampling seed (default $APOLAR_SEED or 0)")
    p.add_argument("--exhaustive", action="store_true", default=None,
                   help="visit every λ of a finite field")
    p.add_argument("--json", action="store_true", help="print JSON instead of a table")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="apolar", description="Hilbert functions of inverse systems and pencils of forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    hf = sub.add_parser("hf", parents=[common], help="Hilbert function of R o F")
    hf.add_argument("form")

    level = sub.add_parser("level", parents=[common], help="H(A), socle type and level test for a space of forms")
    level.add_argument("forms", nargs="+")

    pencil = sub.add_parser("pencil", parents=[common], help="sweep the pencil F + λG and check the bounds")
    pencil.add_argument("F")
    pencil.add_argument("G")

    oseq = sub.add_parser("osequence", parents=[common], help="Macaulay growth test for a sequence")
    oseq.add_argument("values", nargs="+", help="entries, comma or space separated")

    verify = sub.add_parser("verify", help="regression suites")
    vsub = verify.add_subparsers(dest="suite", required=True)
    book = vsub.add_parser("paperbook", parents=[common],
                           help="replay the golden pencils (always uses differentiation)")
    book.add_argument("--case", action="append", choices=[c.key for c in CASES],
                      help="run only this case (repeatable)")
    return parser


def make_config(args) -> RunConfig:
    seed = args.seed if args.seed is not None else default_seed()
    kw = {"seed": seed, "output": "json" if args.json else "table"}
    for name in ("field", "action", "samples", "exhaustive"):
        val = getattr(args, name)
        if val is not None:
            kw[name] = val
    return RunConfig(**kw)


def _nvars(args, texts) -> int:
    if args.r is None:
        return infer_nvars(texts)
    if args.r < 1:
        raise ConfigError("--r must be positive")
    return args.r


def _seq(h) -> str:
    return " ".join(map(str, h))


def _table(rows) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}".rstrip() for k, v in rows)


def _emit(config: RunConfig, payload: dict, rows) -> None:
    if config.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_table(rows))


# -- commands ---------------------------------------------------------------

def cmd_hf(args, config: RunConfig) -> int:
    r = _nvars(args, [args.form])
    F = parse_form(args.form, r, config.field)
    config.check_action(F.degree)
    h = hilbert_of_form(F, config.action)
    if config.output == "json":
        print(json.dumps({"form": str(F), "H": list(h)}))
    else:
        print(_seq(h))
    return EXIT_OK


def cmd_level(args, config: RunConfig) -> int:
    r = _nvars(args, args.forms)
    forms = [parse_form(t, r, config.field) for t in args.forms]
    if len({F.degree for F in forms}) > 1:
        raise ParseError("all forms must have the same degree")
    config.check_action(forms[0].degree)
    W = FormSpace(forms)
    h = hilbert_of_space(W, config.action)
    soc = socle_type(W, config.action)
    level = check_level_condition(W, config.action)
    _emit(
        config,
        {"H_A": list(h), "socle_type": list(soc), "level": level},
        [("H_A", _seq(h)), ("socle", _seq(soc)), ("level", "yes" if level else "no")],
    )
    return EXIT_OK


def _verdict_text(v: dict) -> str:
    extra = {k: val for k, val in v.items() if k in ("degrees", "non_generic_samples", "first_partials", "generic_count")}
    tail = " ".join(f"{k}={val}" for k, val in extra.items())
    return f"{v['status']} {tail}".rstrip()


def cmd_pencil(args, config: RunConfig) -> int:
    r = _nvars(args, [args.F, args.G])
    F = parse_form(args.F, r, config.field)
    G = parse_form(args.G, r, config.field)
    if F.degree != G.degree:
        raise ParseError(f"F has degree {F.degree} but G has degree {G.degree}")
    config.check_action(F.degree)
    config.check_pencil()
    rep = sweep(F, G, samples=config.samples, seed=config.seed,
                exhaustive=config.exhaustive, action=config.action)
    rows = [
        ("H_F", _seq(rep.H_F)),
        ("H_G", _seq(rep.H_G)),
        ("H_A", _seq(rep.H_A)),
        ("d", _seq(rep.d)),
        ("t", _seq(rep.t)),
        ("H_gen", _seq(rep.H_gen)),
    ]
    for p in rep.special_fibers:
        rows.append((f"λ={format_lambda(p.lam)}", _seq(p.H)))
    rows += [(name, _verdict_text(v)) for name, v in rep.verdicts.items()]
    s = rep.sampling
    mode = "exhaustive" if s["exhaustive"] else f"{s['samples']} samples, seed {s['seed']}"
    rows.append(("sampling", f"{s['field']} {s['action']} {mode}"))
    _emit(config, rep.to_dict(), rows)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _parse_values(values) -> tuple:
    out = []
    for chunk in values:
        for tok in chunk.replace(",", " ").split():
            try:
                out.append(int(tok))
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}") from None
    return tuple(out)


def cmd_osequence(args, config: RunConfig) -> int:
    h = _parse_values(args.values)
    res = is_o_sequence(h)
    if config.output == "json":
        print(json.dumps({"sequence": list(h), "o_sequence": res.ok, "index": res.index}))
    else:
        print("true" if res.ok else f"false at index {res.index}")
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_paperbook(args, config: RunConfig) -> int:
    results = run_paperbook(config, args.case)
    if config.output == "json":
        print(json.dumps([
            {"case": res.key, "status": res.status, "note": res.note,
             "checks": [{"label": c.label, "ok": c.ok, "detail": c.detail} for c in res.checks]}
            for res in results
        ], indent=2))
    else:
        rows = []
        for res in results:
            passed = sum(c.ok for c in res.checks)
            summary = f"{passed}/{len(res.checks)}" if res.checks else ""
            rows.append((res.key, f"{res.status:<12} {summary:<6} {res.note}".rstrip()))
        print(_table(rows))
    failed = [res for res in results if res.status == "fail"]
    if failed:
        first = failed[0]
        chk = first.first_failure
        why = f"{chk.label}: {chk.detail}" if chk else first.note
        print(f"first failing case: {first.key} ({why})", file=sys.stderr)
        return EXIT_FAIL
    if any(res.status == "config-error" for res in results):
        return EXIT_CONFIG
    return EXIT_OK


COMMANDS = {
    "hf": cmd_hf,
    "level": cmd_level,
    "pencil": cmd_pencil,
    "osequence": cmd_osequence,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = cmd_paperbook if args.command == "verify" else COMMANDS[args.command]
    try:
        config = make_config(args)
        return handler(args, config)
    except ParseError as exc:
        print(f"apolar: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DependentFormsError as exc:
        print(f"apolar: {exc}", file=sys.stderr)
        return EXIT_DEPENDENT
    except (ConfigError, ActionCharacteristicError, InsufficientFieldError) as exc:
        print(f"apolar: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
