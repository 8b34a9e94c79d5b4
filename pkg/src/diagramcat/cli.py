"""Command-line surface.

Subcommands: compose, enumerate, analyze, eggbox, verify, classify-iso.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import brauer, engine, sandwich
from .errors import DiagramError, UsageError
from .partition import TAGS, from_json_obj, from_text, identity, make_partition


def _read_spec(text):
    """A context spec: {"tag": ..., "m": ..., "n": ..., "sigma": blocks}.

    A monoid spec {"tag": ..., "n": ...} means sigma = id_n.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return _spec_to_context(obj)


def _spec_to_context(obj):
    if not isinstance(obj, dict) or "tag" not in obj:
        raise UsageError("context spec must be an object with a 'tag'")
    tag = obj["tag"]
    if tag not in TAGS:
        raise UsageError(f"unknown tag {tag!r}")
    if "sigma" in obj:
        try:
            m, n = int(obj["m"]), int(obj["n"])
        except (KeyError, TypeError, ValueError):
            raise UsageError("context spec needs integer 'm' and 'n'") from None
        sigma = from_json_obj({"m": n, "n": m, "blocks": obj["sigma"]})
    else:
        try:
            n = int(obj["n"])
        except (KeyError, TypeError, ValueError):
            raise UsageError("monoid spec needs integer 'n'") from None
        m, sigma = n, identity(n)
    return sandwich.make_context(tag, m, n, sigma)


def _cmd_compose(args, out):
    a = from_text(args.left)
    b = from_text(args.right)
    from .partition import compose

    out.write(compose(a, b).to_text() + "\n")
    return 0


def _cmd_enumerate(args, out):
    from .homset import enumerate_homset

    hs = enumerate_homset(args.tag, args.m, args.n, max_total=args.max_total)
    for p in hs.elements:
        out.write(p.to_text() + "\n")
    return 0


def _cmd_analyze(args, out):
    ctx = _read_spec(_read_input(args))
    report = sandwich.analyze_report(ctx)
    out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_eggbox(args, out):
    ctx = _read_spec(_read_input(args))
    if args.regular_only:
        ps = sandwich.p_sets(ctx)
        oracle = sandwich.sandwich_oracle(ctx)
        sub = oracle.restrict([oracle.index[a] for a in sorted(ps.p)])
        box = engine.eggbox(sub)
    else:
        box = sandwich.sandwich_eggbox(ctx)
    out.write(engine.eggbox_dot(box))
    return 0


def _cmd_verify(args, out):
    tags = TAGS if args.tag == "all" else (args.tag,)
    if args.tag in ("B", "all"):
        rows = brauer.verify_suite(max_total=args.max_size, tags=tags)
    else:
        rows = brauer.counting_rows(tags, min(args.max_size, 10))
    failures = [r for r in rows if not r["match"]]
    if args.report == "json":
        out.write(json.dumps(rows, default=str, indent=1) + "\n")
    else:
        out.write("check,params,formula,bruteforce,match\n")
        for r in rows:
            out.write(
                '%s,"%s","%s","%s",%s\n'
                % (r["check"], r["params"], r["formula"], r["bruteforce"], r["match"])
            )
    out.write(f"# {len(rows)} checks, {len(failures)} failures\n")
    return 1 if failures else 0


def _cmd_classify_iso(args, out):
    text = _read_input(args)
    try:
        specs = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(specs, list):
        raise UsageError("classify-iso expects a JSON array of context specs")
    contexts = [_spec_to_context(s) for s in specs]
    oracles = [sandwich.sandwich_oracle(c) for c in contexts]
    mode = "antiIso" if args.anti else "iso"
    classes = []
    for i, oracle in enumerate(oracles):
        for cls in classes:
            j = cls[0]
            if engine.isomorphic(oracles[j], oracle) or (
                args.anti and engine.isomorphic(oracles[j], oracle, "antiIso")
            ):
                cls.append(i)
                break
        else:
            classes.append([i])
    del mode
    out.write(
        json.dumps(
            {"schema": 1, "classes": classes, "count": len(classes)}, sort_keys=True
        )
        + "\n"
    )
    return 0


def _read_input(args):
    if args.spec is not None:
        return args.spec
    if args.file is not None:
        with open(args.file, "r", encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _parser():
    top = argparse.ArgumentParser(
        prog="diagramcat",
        description="diagram categories and their sandwich semigroups",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="compose two partitions (text format)")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("enumerate", help="list a hom-set, one partition per line")
    p.add_argument("tag", choices=TAGS)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--max-total", type=int, default=None)

    for name, help_text in (
        ("analyze", "JSON structure report for a sandwich context"),
        ("eggbox", "DOT eggbox diagram for a sandwich context or monoid"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--spec", help="context spec as inline JSON")
        p.add_argument("--file", help="read the context spec from a file")
        if name == "eggbox":
            p.add_argument("--regular-only", action="store_true")

    p = sub.add_parser("verify", help="formula-vs-oracle verification suite")
    p.add_argument("--tag", default="B", choices=TAGS + ("all",))
    p.add_argument("--max-size", type=int, default=12)
    p.add_argument("--report", default="csv", choices=("csv", "json"))

    p = sub.add_parser("classify-iso", help="group context specs by isomorphism")
    p.add_argument("--spec", help="JSON array of context specs")
    p.add_argument("--file")
    p.add_argument("--anti", action="store_true", help="also allow anti-isomorphism")
    return top


_COMMANDS = {
    "compose": _cmd_compose,
    "enumerate": _cmd_enumerate,
    "analyze": _cmd_analyze,
    "eggbox": _cmd_eggbox,
    "verify": _cmd_verify,
    "classify-iso": _cmd_classify_iso,
}


def run(argv, out=None, err=None):
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except DiagramError as exc:
        err.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
