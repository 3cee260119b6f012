"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (invalid representation, failed
verification, inapplicable move, inequivalent pair), 2 unparsable input,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys

from .census import aggregate_stats, census, chirality, load_appendix, verify_appendix, \
    appendix_labels
from .diagram import build_knot_diagram, build_link_diagram
from .equivalence import anchor_classes, classify_all, equivalent, find_anchor_sequences, orbit
from .graph import Cycle, DomainError, TrianglePair
from .invariants import classify_knot, classify_link, kauffman_bracket, linking_number
from .model import ParseError, parse, serialize, validate
from .moves import MoveInapplicable, ScriptError, mirror, parse_script, replay

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_IO = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _rep(text: str):
    try:
        return parse(text)
    except (ParseError, DomainError) as exc:
        raise CliError(f"cannot parse {text!r}: {exc}", EXIT_PARSE) from exc


def _valid_rep(text: str):
    rep = _rep(text)
    problem = validate(rep)
    if problem is not None:
        raise CliError(f"invalid representation: {problem}", EXIT_FAIL)
    return rep


def _cache_path(args):
    return os.environ.get("BOOKREP_CACHE") or args.cache


def _classification(args):
    try:
        return classify_all(jobs=args.jobs, cache=_cache_path(args))
    except OSError as exc:
        raise CliError(f"cache error: {exc}", EXIT_IO) from exc


def _emit(args, payload, text_lines, rows=None, header=None):
    """Write ``payload`` as JSON, ``rows`` as CSV, or ``text_lines`` as text."""
    out = args.out
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        if rows is None:
            rows = [[k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v]
                    for k, v in sorted(payload.items())]
            header = ["key", "value"]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(header)
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write("\n".join(text_lines) + "\n")


# -- commands ------------------------------------------------------------------


def cmd_validate(args) -> int:
    rep = _rep(args.rep)
    problem = validate(rep)
    payload = {"rep": serialize(rep), "valid": problem is None,
               "violation": None if problem is None else
               {"kind": problem.kind, "message": problem.message, "sheet": problem.sheet,
                "edges": [str(e) for e in problem.edges]}}
    _emit(args, payload, ["ok" if problem is None else str(problem)])
    return EXIT_OK if problem is None else EXIT_FAIL


def _census_text(c) -> list[str]:
    counts = c.counts()
    head = (f"{counts['hopf']} hopf, {counts['solomon']} solomon, "
            f"{counts['trefoil_L'] + counts['trefoil_R']} trefoils "
            f"({counts['trefoil_L']} L, {counts['trefoil_R']} R), {counts['fig8']} figure-eight")
    return [head] + ["  " + line for line in c.lines()]


def cmd_classify(args) -> int:
    cl = _classification(args)
    chir = chirality(cl)
    labels = appendix_labels(cl)
    censuses = [census(o.representative) for o in cl.orbits]
    classes = []
    for i, (orb, c) in enumerate(zip(cl.orbits, censuses)):
        partner = chir.partner(i)
        classes.append({
            "index": i,
            "label": labels.get(i),
            "canonical": orb.canonical,
            "min_sheets": orb.min_sheets,
            "size": orb.size,
            "census": c.counts(),
            "mirror": None if partner == i else partner,
        })
    hist = cl.histogram()
    payload = {
        "classes": len(cl),
        "representations": cl.total,
        "histogram": {str(k): v for k, v in hist.items()},
        "achiral": [cl.orbits[i].canonical for i in chir.achiral],
        "chiral_pairs": len(chir.pairs),
        "list": classes,
    }
    text = [
        f"{len(cl)}",
        "histogram " + " ".join(f"{k}:{v}" for k, v in hist.items()),
        "achiral " + " ".join(cl.orbits[i].canonical for i in chir.achiral),
        f"chiral pairs {len(chir.pairs)}",
    ]
    for row in classes:
        cnt = row["census"]
        mir = "achiral" if row["mirror"] is None else f"mirror={row['mirror']}"
        text.append(
            f"{row['index']:2d} {row['label'] or '-':5s} s={row['min_sheets']} {row['canonical']:30s} "
            f"H={cnt['hopf']} S={cnt['solomon']} L={cnt['trefoil_L']} R={cnt['trefoil_R']} "
            f"F={cnt['fig8']} {mir}"
        )
    header = ["index", "label", "min_sheets", "canonical", "size", "hopf", "solomon",
              "trefoil_L", "trefoil_R", "fig8", "mirror"]
    rows = [[r["index"], r["label"] or "", r["min_sheets"], r["canonical"], r["size"],
             *r["census"].values(), "" if r["mirror"] is None else r["mirror"]] for r in classes]
    _emit(args, payload, text, rows, header)
    return EXIT_OK


def cmd_census(args) -> int:
    rep = _valid_rep(args.rep)
    c = census(rep)
    payload = {"rep": serialize(rep), **c.to_json()}
    rows = [line.split(" ", 1) for line in c.lines()]
    _emit(args, payload, _census_text(c), rows, ["kind", "item"])
    return EXIT_OK


def cmd_orbit(args) -> int:
    rep = _valid_rep(args.rep)
    if args.cache or os.environ.get("BOOKREP_CACHE"):
        orb = _classification(args).orbit_of(rep)
    else:
        orb = orbit(rep)
    payload = {"rep": serialize(rep), "canonical": orb.canonical, "min_sheets": orb.min_sheets,
               "size": orb.size, "member_count": orb.member_count}
    _emit(args, payload, [f"canonical {orb.canonical}", f"min_sheets {orb.min_sheets}",
                          f"size {orb.size}", f"symmetry_classes {orb.member_count}"])
    return EXIT_OK


def cmd_equiv(args) -> int:
    a, b = _valid_rep(args.rep_a), _valid_rep(args.rep_b)
    cl = _classification(args) if (args.cache or os.environ.get("BOOKREP_CACHE")) else None
    same = equivalent(a, b, cl)
    _emit(args, {"a": serialize(a), "b": serialize(b), "equivalent": same},
          ["equivalent" if same else "not equivalent"])
    return EXIT_OK if same else EXIT_FAIL


def cmd_mirror(args) -> int:
    rep = _valid_rep(args.rep)
    m = mirror(rep)
    _emit(args, {"rep": serialize(rep), "mirror": serialize(m)}, [serialize(m)])
    return EXIT_OK


def cmd_anchors(args) -> int:
    if args.length is not None:
        try:
            found = anchor_classes(args.length)
        except DomainError as exc:
            raise CliError(str(exc), EXIT_PARSE) from exc
        payload = {"length": args.length, "classes": [[str(e) for e in a.edges] for a in found]}
    else:
        if args.rep is None:
            raise CliError("give a representation or --length", EXIT_PARSE)
        rep = _valid_rep(args.rep)
        found = find_anchor_sequences(rep, cyclic=args.cyclic)
        payload = {"rep": serialize(rep), "anchors": [[str(e) for e in a.edges] for a in found]}
    _emit(args, payload, [str(a) for a in found] or ["none"])
    return EXIT_OK


def cmd_replay(args) -> int:
    rep = _valid_rep(args.rep)
    try:
        with open(args.script) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read script: {exc}", EXIT_IO) from exc
    try:
        moves = parse_script(text)
    except ScriptError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    try:
        steps = replay(rep, moves)
    except MoveInapplicable as exc:
        raise CliError(str(exc), EXIT_FAIL) from exc
    lines = []
    rows = []
    for k, step in enumerate(steps):
        what = "start" if step.move is None else step.move.text
        mark = "" if step.valid else "  (invalid)"
        lines.append(f"{k:2d} {what:20s} {serialize(step.rep)}{mark}")
        rows.append([k, what, serialize(step.rep), step.valid])
    final = steps[-1].rep.normalized()
    lines.append(f"final {serialize(final)}")
    payload = {"steps": [{"move": r[1], "rep": r[2], "valid": r[3]} for r in rows],
               "final": serialize(final)}
    _emit(args, payload, lines, rows, ["step", "move", "rep", "valid"])
    return EXIT_OK if all(s.valid for s in steps) else EXIT_FAIL


def cmd_verify_appendix(args) -> int:
    try:
        entries = load_appendix(args.golden)
    except OSError as exc:
        raise CliError(f"cannot read golden file: {exc}", EXIT_IO) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    report = verify_appendix(classification=_classification(args), entries=entries)
    bad = report.mismatches()
    payload = {
        "entries": len(report.entries),
        "entries_ok": sum(e.ok for e in report.entries),
        "classes": report.classes,
        "covered": report.covered,
        "ok": report.ok,
        "mismatches": bad,
    }
    lines = [f"entries {payload['entries_ok']}/{payload['entries']} ok",
             f"coverage {report.covered}/{report.classes}"]
    lines += [f"mismatch {m}" for m in bad]
    lines.append("ok" if report.ok else "FAILED")
    _emit(args, payload, lines, [[m] for m in bad], ["mismatch"])
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_stats(args) -> int:
    stats = aggregate_stats(_classification(args))
    stats["histogram"] = {str(k): v for k, v in stats["histogram"].items()}
    lines = [f"{k} {v}" for k, v in stats.items()]
    _emit(args, stats, lines)
    return EXIT_OK


def cmd_diagram(args) -> int:
    rep = _valid_rep(args.rep)
    try:
        if ")(" in args.cycle:
            d = build_link_diagram(rep, TrianglePair.parse(args.cycle))
            kind, extra = classify_link(d).value, {"linking_number": linking_number(d)}
        else:
            d = build_knot_diagram(rep, Cycle.parse(args.cycle))
            kind, extra = classify_knot(d).value, {}
    except DomainError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    bracket = kauffman_bracket(d)
    payload = {"crossings": [str(c) for c in d.crossings], "writhe": d.writhe,
               "bracket": str(bracket), "type": kind, **extra}
    _emit(args, payload, d.dump().splitlines() + [f"writhe {d.writhe}", f"bracket {bracket}",
                                                    f"type {kind}"])
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", default=None,
                        help="orbit cache file (read if present, written otherwise)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for classify")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="bookrep", description="Book representations of K6.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check a representation").add_argument("rep")
    add("classify", cmd_classify, "classify every representation of K6")
    add("census", cmd_census, "knotted cycles and linked triangle pairs").add_argument("rep")
    add("orbit", cmd_orbit, "equivalence class of a representation").add_argument("rep")
    sp = add("equiv", cmd_equiv, "decide whether two representations are equivalent")
    sp.add_argument("rep_a")
    sp.add_argument("rep_b")
    add("mirror", cmd_mirror, "reverse the sheet order").add_argument("rep")
    sp = add("anchors", cmd_anchors, "anchor sequences of a representation, or anchor classes")
    sp.add_argument("rep", nargs="?")
    sp.add_argument("--cyclic", action="store_true")
    sp.add_argument("--length", type=int)
    sp = add("replay", cmd_replay, "apply a move script")
    sp.add_argument("rep")
    sp.add_argument("script")
    sp = add("verify-appendix", cmd_verify_appendix, "check the golden census file")
    sp.add_argument("golden", nargs="?", default=None)
    add("stats", cmd_stats, "aggregate census extremes")
    sp = add("diagram", cmd_diagram, "dump the diagram of a cycle or triangle pair")
    sp.add_argument("rep")
    sp.add_argument("cycle", help="e.g. 136425 or (135)(246)")
    return p


def main(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    args.out = out if out is not None else sys.stdout
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
