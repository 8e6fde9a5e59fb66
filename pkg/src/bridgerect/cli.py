"""Command-line interface.

Each command prints one machine-readable record line (``key=value`` pairs,
starting with the command name) followed by human-readable detail.  Exit
codes: 0 success, 1 verdict contradicted (or ``--expect`` mismatch), 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import catalog, criteria, harness, moves
from .arrangement import minimal_arrangement
from .sphere import InvalidSystem, are_isotopic


class UsageError(Exception):
    pass


def _load(src: str):
    try:
        return catalog.load_system(src)
    except catalog.ParseError as exc:
        raise UsageError(f"{src}: {exc}") from exc
    except InvalidSystem as exc:
        raise UsageError(f"{src}: invalid system: {exc}") from exc
    except (OSError, KeyError) as exc:
        raise UsageError(str(exc)) from exc


def _fmt_pairs(pairs) -> str:
    return ",".join(f"{a}{b}" for a, b in sorted(pairs)) or "-"


def _fmt_tuples(tuples) -> str:
    return ",".join(f"{a[0]}{a[1]}/{b[0]}{b[1]}" for a, b in sorted(tuples)) or "-"


def _record(cmd: str, **fields) -> str:
    parts = [cmd] + [f"{k}={v}" for k, v in fields.items()]
    return " ".join(parts)


def _verdict(v) -> str:
    return str(v).lower()


# ------------------------------------------------------------------ commands

def cmd_validate(args):
    try:
        A = catalog.load_system(args.system)
    except InvalidSystem as exc:
        print(_record("validate", verdict="invalid", kinds=",".join(sorted(set(exc.kinds)))))
        for v in exc.violations:
            print(f"  {v.kind}: {v.message}" + (f" [{v.location}]" if v.location else ""))
        return "invalid"
    except catalog.ParseError as exc:
        raise UsageError(str(exc)) from exc
    except (OSError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    n = sum(len(a.events) for a in A.arcs)
    print(_record("validate", verdict="valid", name=A.name, equator_crossings=n))
    return "valid"


def cmd_isotopic(args):
    A, B = _load(args.a), _load(args.b)
    v = are_isotopic(A, B)
    print(_record("isotopic", verdict=_verdict(v)))
    return _verdict(v)


def cmd_intersections(args):
    A, B = _load(args.a), _load(args.b)
    arr = minimal_arrangement(A, B)
    m = arr.matrix()
    print(_record("intersections", total=arr.n_crossings,
                  matrix=";".join(",".join(map(str, r)) for r in m)))
    for i, row in enumerate(m, 1):
        print(f"  A{i}: " + " ".join(f"{x:4d}" for x in row))
    return str(arr.n_crossings)


def cmd_rc(args):
    A, B = _load(args.a), _load(args.b)
    rep = criteria.rectangle_report(A, B)
    print(_record("rc", verdict=_verdict(rep.holds), realized=len(rep.realized),
                  missing=_fmt_tuples(rep.missing)))
    if rep.diagnostic:
        print(f"  {rep.diagnostic}")
    if args.witnesses:
        for t, f in sorted(rep.witnesses.items()):
            print(f"  tuple {_fmt_tuples([t])}: face {f}")
    return _verdict(rep.holds)


def cmd_scan_rc(args):
    A, B = _load(args.a), _load(args.b)
    got = criteria.rectangle_tuples_by_scan(A, B)
    holds = len(got) == 9
    print(_record("scan-rc", verdict=_verdict(holds), realized=_fmt_tuples(got)))
    return _verdict(holds)


def cmd_waves(args):
    ref, tgt = _load(args.ref), _load(args.target)
    ws = criteria.find_waves(ref, tgt)
    print(_record("waves", count=len(ws)))
    for w in ws:
        print(f"  host B{w.host_arc} stations {w.subarc.lo}-{w.subarc.hi} based at A{w.base_arc} signs {w.signs}")
    return str(len(ws))


def cmd_normal_form(args):
    A, B = _load(args.a), _load(args.b)
    rep = criteria.normal_form_report(A, B)
    print(_record("normal-form", verdict=_verdict(rep.holds), violations=len(rep.violations)))
    for side, arc, pos, other in rep.violations:
        print(f"  along {side}{arc} at station {pos}: two adjacent points on arc {other}")
    return _verdict(rep.holds)


def cmd_classify(args):
    ref, tgt = _load(args.ref), _load(args.target)
    cls = criteria.classify_adjacent_pairs(ref, tgt)
    unclassified = sum(c.kind == "Unclassified" for c in cls)
    print(_record("classify", pairs=len(cls), unclassified=unclassified))
    for c in cls:
        extra = f"({c.other_ref})" if c.other_ref else ""
        print(f"  A{c.ref_arc} positions {c.positions} B{c.target_arc}: {c.kind}{extra}")
    return "ok" if not unclassified else "unclassified"


def cmd_certify(args):
    G, B = _load(args.g), _load(args.b)
    try:
        cert = criteria.certify_no_rc_partner(G, B)
    except criteria.IsotopicDegenerate as exc:
        print(_record("certify", verdict="degenerate"))
        print(f"  {exc}")
        return "degenerate"
    if cert is None:
        print(_record("certify", verdict="none"))
        return "none"
    print(_record("certify", verdict="certificate", arc=cert.witness_arc, missing=_fmt_pairs([cert.missing_pair])))
    for k in (1, 2, 3):
        print(f"  arc {k} connects {_fmt_pairs(criteria.connecting_pairs(G, k, B))}")
    return "certificate"


def cmd_enumerate(args):
    base = _load(args.base)
    res = moves.enumerate_systems(base, args.rewires, args.max_crossings, args.max_classes)
    print(_record("enumerate", classes=len(res), truncated=_verdict(res.truncated),
                  rewires=args.rewires, max_crossings=args.max_crossings))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        width = len(str(len(res)))
        for i, S in enumerate(res.systems):
            catalog.save_system(S.renamed(f"beta{i:0{width}d}"), out / f"beta{i:0{width}d}.arcs")
    return str(len(res))


def _parse_twist(tok: str) -> moves.TwistSpec:
    circle, _, n = tok.partition(":")
    try:
        return moves.TwistSpec(circle, int(n) if n else 1)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_twist(args):
    A = _load(args.system)
    word = [_parse_twist(t) for t in args.twists]
    B = moves.apply_twists(word, A)
    text = catalog.dumps(B)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    print(_record("twist", twists=len(word), equator_crossings=sum(len(a.events) for a in B.arcs)))
    if not args.out:
        sys.stdout.write(text)
    return "ok"


def cmd_verify_85(args):
    cfg = harness.HarnessConfig(args.rewires, args.max_crossings, args.max_classes, args.jobs)
    rep = harness.verify_85(cfg)
    print(_record("verify-85", verdict="ok" if rep.ok else "violation", classes=rep.classes_enumerated,
                  rc_failures=rep.rc_failures, certificates=rep.certificates,
                  truncated=_verdict(rep.truncated)))
    print(f"  systems without a wave {rep.systems_without_wave}, normal-form exceptions "
          f"{rep.normal_form_exceptions}, unclassified pairs {rep.unclassified_pairs}, "
          f"oracle disagreements {rep.oracle_disagreements}, wall time {rep.wall_time}s")
    if args.out:
        Path(args.out).write_text(rep.to_json(), encoding="utf-8")
    for ce in rep.counterexamples[:3]:
        print(f"  counterexample #{ce['index']}: {'; '.join(ce['problems'])}")
        sys.stdout.write(ce["system"])
    return "ok" if rep.ok else "violation"


def cmd_render(args):
    A = _load(args.a)
    B = _load(args.b) if args.b else None
    svg = catalog.render_svg(A, B, args.out)
    print(_record("render", crossings=svg.count('class="crossing"'), out=args.out))
    return "ok"


# ------------------------------------------------------------------ wiring

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bridgerect", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--expect", help="exit 1 unless the command's verdict equals this value")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, help_text=""):
        sp = sub.add_parser(name, help=help_text)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "system", help_text="check a system file or builtin")
    add("isotopic", cmd_isotopic, "a", "b", help_text="decide isotopy of two systems")
    add("intersections", cmd_intersections, "a", "b", help_text="minimal intersection matrix")
    add("rc", cmd_rc, "a", "b", help_text="rectangle condition").add_argument(
        "--witnesses", action="store_true", help="list the face realising each tuple")
    add("scan-rc", cmd_scan_rc, "a", "b", help_text="rectangle tuples by the scan oracle")
    add("waves", cmd_waves, "ref", "target", help_text="waves of target with respect to ref")
    add("normal-form", cmd_normal_form, "a", "b", help_text="normal form check in both directions")
    add("classify", cmd_classify, "ref", "target", help_text="classify adjacent same-arc pairs")
    add("certify", cmd_certify, "g", "b", help_text="no-partner certificate for b")
    sp = add("enumerate", cmd_enumerate, help_text="enumerate rewired systems")
    sp.add_argument("base", nargs="?", default="@epsilon")
    sp.add_argument("--rewires", type=int, default=1)
    sp.add_argument("--max-crossings", type=int, default=4)
    sp.add_argument("--max-classes", type=int, default=20000)
    sp.add_argument("--out", help="directory receiving one file per system")
    sp = add("twist", cmd_twist, "system", help_text="apply catalog twists, e.g. pair2:1 eps1:-1")
    sp.add_argument("twists", nargs="+")
    sp.add_argument("--out")
    sp = add("verify-85", cmd_verify_85, help_text="bounded check that delta has no rectangle partner")
    sp.add_argument("--rewires", type=int, default=2)
    sp.add_argument("--max-crossings", type=int, default=8)
    sp.add_argument("--max-classes", type=int, default=20000)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", help="write the JSON report here")
    sp = add("render", cmd_render, "a", help_text="write an SVG picture")
    sp.add_argument("b", nargs="?")
    sp.add_argument("--out", required=True)
    return p


_FAILING = {"violation", "invalid", "unclassified"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        verdict = args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.expect is not None:
        return 0 if verdict == args.expect.lower() else 1
    return 1 if verdict in _FAILING else 0


if __name__ == "__main__":
    sys.exit(main())
