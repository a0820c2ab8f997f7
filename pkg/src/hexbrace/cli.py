"""Command-line surface: every pipeline stage behind one ``hexbrace`` tool.

Machine output is JSON on stdout; human summaries go to stderr.  Exit codes:
0 success, 1 domain failure (e.g. not a brace), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import brace as brace_mod
from . import eargen, hexagon
from .brace import AugmentationTrace, generate_base, is_brace, replay_trace
from .graphs import GraphError, LabeledGraph, parse_graph
from .hexagon import (
    DcdcCertificate,
    build_hexagon_graph,
    check_hexagon_invariants,
    euler_genus,
    extract_dcdc,
    find_safe_matching,
    hexagon_to_dot,
    hexagon_to_json,
    is_safe,
    mdw_cycles,
    rotation_from_json,
    trace_faces,
    verify_dcdc,
)

OK, DOMAIN_FAIL, INPUT_ERROR = 0, 1, 2


def _load_graph(path: str) -> LabeledGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_hexagon_build(args) -> int:
    g = _load_graph(args.graph)
    h = build_hexagon_graph(g)
    if args.verify:
        bad = check_hexagon_invariants(h)
        if bad:
            _say("hexagon invariants violated: " + "; ".join(bad))
            return DOMAIN_FAIL
        _say("hexagon invariants verified")
    if args.dot:
        sys.stdout.write(hexagon_to_dot(h))
    else:
        sys.stdout.write(hexagon_to_json(h) + "\n")
    _say(f"hexagon graph: {h.graph.n()} vertices, {h.graph.m()} edges")
    return OK


def cmd_dcdc_find(args) -> int:
    g = _load_graph(args.graph)
    h = build_hexagon_graph(g)
    m = find_safe_matching(h)
    if m is None:
        _say("no safe matching exists (this would refute the conjecture for this graph)")
        return DOMAIN_FAIL
    cert = extract_dcdc(h, m)
    if args.verify:
        ok, problems = verify_dcdc(g, cert)
        if not ok:
            _say("certificate failed verification: " + "; ".join(problems))
            return DOMAIN_FAIL
        _say("certificate verified")
    out = {
        "matching_bits": [int(b) for b in m.bits],
        "cycles": [[list(a) for a in cyc] for cyc in cert.cycles],
    }
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    _say(f"safe matching found; certificate has {len(cert.cycles)} directed cycles")
    return OK


def cmd_dcdc_verify(args) -> int:
    g = _load_graph(args.graph)
    with open(args.cert) as fh:
        cert = DcdcCertificate.from_json(fh.read())
    ok, problems = verify_dcdc(g, cert)
    sys.stdout.write(json.dumps({"valid": ok, "problems": problems}, indent=2) + "\n")
    if not ok:
        _say("certificate invalid: " + "; ".join(problems[:5]))
        return DOMAIN_FAIL
    _say("certificate valid")
    return OK


def cmd_brace_check(args) -> int:
    g = _load_graph(args.graph)
    rep = is_brace(g)
    out = {"is_brace": rep.is_brace, "reason": rep.reason}
    if rep.witness_pair:
        out["witness_pair"] = [list(rep.witness_pair[0]), list(rep.witness_pair[1])]
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    if not rep.is_brace:
        pair = rep.witness_pair
        detail = f": pair ({pair[0][0]}-{pair[0][1]}, {pair[1][0]}-{pair[1][1]})" if pair else ""
        _say(f"not a brace{detail} ({rep.reason})")
        return DOMAIN_FAIL
    _say("brace verified")
    return OK


def cmd_base(args) -> int:
    g = generate_base(args.family, args.size)
    sys.stdout.write(
        json.dumps({"n": g.n(), "edges": [list(e) for e in g.edges]}, indent=2) + "\n"
    )
    _say(f"{args.family}({args.size}): {g.n()} vertices, {g.m()} edges")
    return OK


def cmd_trace_generate(args) -> int:
    g = _load_graph(args.graph)
    result = eargen.generate_hexagon_trace(g)
    text = result.trace.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        _say(f"trace written to {args.output}")
    else:
        sys.stdout.write(text + "\n")
    if args.verify:
        rep = replay_trace(result.trace)
        if not rep.ok:
            _say("replay failed: " + "; ".join(rep.log[-3:]))
            return DOMAIN_FAIL
        _say("trace replays cleanly")
    report = result.report_json()
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    _say(
        f"generated {len(result.trace.steps)} steps; final graph "
        f"{result.final_graph.n()} vertices / {result.final_graph.m()} edges"
    )
    return OK


def cmd_trace_replay(args) -> int:
    with open(args.trace) as fh:
        trace = AugmentationTrace.from_json(fh.read())
    rep = replay_trace(trace, spot_check_brace=args.spot_check_brace)
    out = {
        "ok": rep.ok,
        "failed_step": rep.failed_step,
        "final": None if rep.graph is None else {"n": rep.graph.n(), "m": rep.graph.m()},
        "log": rep.log,
    }
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    if not rep.ok:
        _say(f"replay failed at step {rep.failed_step}")
        return DOMAIN_FAIL
    _say("replay ok")
    return OK


def cmd_embed_faces(args) -> int:
    g = _load_graph(args.graph)
    with open(args.rotation) as fh:
        r = rotation_from_json(fh.read())
    fs = trace_faces(g, r)
    genus = euler_genus(g, r)
    out = {
        "faces": [list(f.vertices) for f in fs.faces],
        "face_count": len(fs.faces),
        "genus": genus,
    }
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    _say(f"{len(fs.faces)} faces, genus {genus}")
    return OK


def cmd_embed_census(args) -> int:
    g = _load_graph(args.graph)
    if g.n() > 8:
        _say("census is exhaustive over 2^n rotation systems; refusing n > 8")
        return INPUT_ERROR
    census = {}
    for r in hexagon.all_rotation_systems(g):
        fs = trace_faces(g, r)
        genus = euler_genus(g, r)
        key = f"faces={len(fs.faces)},genus={genus}"
        census[key] = census.get(key, 0) + 1
    sys.stdout.write(json.dumps(census, indent=2) + "\n")
    _say(f"enumerated {sum(census.values())} rotation systems")
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hexbrace", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    hx = sub.add_parser("hexagon", help="hexagon-graph construction").add_subparsers(
        dest="sub", required=True
    )
    p = hx.add_parser("build", help="build the hexagon graph of a cubic graph")
    p.add_argument("graph")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_hexagon_build)

    dc = sub.add_parser("dcdc", help="safe matchings and DCDC certificates").add_subparsers(
        dest="sub", required=True
    )
    p = dc.add_parser("find", help="search for a safe matching and extract a certificate")
    p.add_argument("graph")
    p.add_argument("--jobs", type=int, default=1, help="worker count (result is identical)")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_dcdc_find)
    p = dc.add_parser("verify", help="verify a DCDC certificate")
    p.add_argument("graph")
    p.add_argument("cert")
    p.set_defaults(func=cmd_dcdc_verify)

    br = sub.add_parser("brace", help="brace testing").add_subparsers(dest="sub", required=True)
    p = br.add_parser("check")
    p.add_argument("graph")
    p.add_argument("--verify", action="store_true", help="re-check the witness by enumeration")
    p.set_defaults(func=cmd_brace_check)

    p = sub.add_parser("base", help="base-family generators")
    p.add_argument("family", choices=("moebius_ladder", "ladder", "biwheel"))
    p.add_argument("size", type=int)
    p.set_defaults(func=cmd_base)

    tr = sub.add_parser("trace", help="generation traces").add_subparsers(dest="sub", required=True)
    p = tr.add_parser("generate", help="ladder-to-hexagon-graph trace for a cubic graph")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_trace_generate)
    p = tr.add_parser("replay", help="replay and validate a trace")
    p.add_argument("trace")
    p.add_argument("--spot-check-brace", type=int, default=None, metavar="K")
    p.set_defaults(func=cmd_trace_replay)

    em = sub.add_parser("embed", help="rotation systems and embeddings").add_subparsers(
        dest="sub", required=True
    )
    p = em.add_parser("faces", help="trace the faces of a rotation system")
    p.add_argument("graph")
    p.add_argument("rotation")
    p.set_defaults(func=cmd_embed_faces)
    p = em.add_parser("census", help="exhaustive rotation-system census (n <= 8)")
    p.add_argument("graph")
    p.set_defaults(func=cmd_embed_census)

    return ap


def run(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        _say(f"cannot read file: {exc}")
        return INPUT_ERROR
    except GraphError as exc:
        _say(f"error: {exc}")
        return INPUT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
