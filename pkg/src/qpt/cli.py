"""Command line: ``qpt analyze``, ``qpt construct`` and ``qpt demo``.

Reports are JSON on stdout (schema ``qpt-report/1``); logs go to stderr.
Exit codes: 0 verified, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from .cocycles import CentralTypeSubgroup, TwoCocycle
from .errors import InputError, QptError, VerificationError
from .graphs import DEFAULT_MAX_GROUP_ORDER, graph_to_json, parse_graph, petersen_graph, rook_graph
from .numerics import Tolerance
from .permgroups import closure
from .pipelines import (
    RunConfig,
    analyze_graph,
    cycle_table,
    magic_square_pipeline,
    pentagram_pipeline,
    strip_private,
)
from .qiso import pseudo_telepathy_verdict
from .ueb import UnitaryErrorBasis, ueb_from_central_type

SCHEMA = "qpt-report/1"
log = logging.getLogger("qpt")


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _read_graph(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_graph(text)


def _load_pair(subgroup_path, cocycle_path, degree):
    """Combine a subgroup file and a cocycle file into a central-type pair.

    The cocycle's abstract element i is realised by ``embedding[i]`` when the
    cocycle file has one, otherwise by ``elements[i]`` of the subgroup file.
    """
    sub = _read_json(subgroup_path)
    coc = _read_json(cocycle_path)
    psi = TwoCocycle.from_json(coc)
    if "embedding" in coc:
        elements = np.asarray(coc["embedding"], dtype=np.int64)
    elif "elements" in sub:
        elements = np.asarray(sub["elements"], dtype=np.int64)
    else:
        raise InputError("give the subgroup 'elements' in table order or an 'embedding' in the cocycle file")
    if elements.ndim != 2 or elements.shape[1] != degree:
        raise InputError(f"subgroup permutations must act on {degree} points")
    if "generators" in sub:
        gens = closure(np.asarray(sub["generators"], dtype=np.int64), degree)
        if gens.order != len(elements) or np.any(gens.indices_of(elements) < 0):
            raise InputError("cocycle embedding does not enumerate the subgroup generated by 'generators'")
    return CentralTypeSubgroup(elements, psi)


def _write(out_dir, name, obj):
    path = Path(out_dir) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj))
    log.info("wrote %s", path)
    return str(path)


def cmd_analyze(args, cfg):
    g = _read_graph(args.graph)
    return analyze_graph(g, cfg, construct=args.construct)


def cmd_construct(args, cfg):
    g = _read_graph(args.graph)
    pair = _load_pair(args.subgroup, args.cocycle, g.n)
    if args.ueb:
        u = UnitaryErrorBasis.from_json(_read_json(args.ueb), cfg.tol)
    else:
        u = ueb_from_central_type(pair, cfg.seed, cfg.tol)
    verdict = pseudo_telepathy_verdict(g, pair, u, cfg.tol, cfg.seed)
    report = verdict.summary()
    report["classification"] = (
        "exhaustive classification" if cfg.no_quantum_symmetries else "constructed"
    )
    if args.out:
        if verdict.ppm is not None:
            report["ppm_file"] = _write(args.out, "ppm.json", verdict.ppm.to_json())
            report["output_graph_file"] = _write(args.out, "output_graph.json", graph_to_json(verdict.output_graph))
        else:
            report["quantum_graph_file"] = _write(args.out, "quantum_graph.json", verdict.split.graph.to_json())
    return report


def cmd_demo(args, cfg):
    if args.name == "magic-square":
        return magic_square_pipeline(cfg)
    if args.name == "pentagram":
        return pentagram_pipeline(cfg, args.l_star)
    if args.name == "cycles":
        return {"table": cycle_table(range(5, 13), cfg)}
    if args.name == "vertex-transitive":
        return {
            "petersen": analyze_graph(petersen_graph(), cfg),
            "torus": analyze_graph(rook_graph(3), cfg),
        }
    raise InputError(f"unknown demo {args.name}")  # pragma: no cover - argparse restricts choices


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="max-norm tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--max-group-order", type=int, default=DEFAULT_MAX_GROUP_ORDER,
                        help="cap on enumerated automorphism group elements")
    common.add_argument("--out", help="directory for PPM and graph artefacts")
    common.add_argument("--no-quantum-symmetries", action="store_true",
                        help="assert the input graph has no quantum symmetries; "
                             "upgrades wording to an exhaustive classification")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    parser = argparse.ArgumentParser(prog="qpt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="automorphisms, central-type subgroups, coisotropy")
    p.add_argument("graph")
    p.add_argument("--construct", action="store_true", help="also run the full construction for every class")
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("construct", parents=[common], help="build and split X for a given subgroup and cocycle")
    p.add_argument("graph")
    p.add_argument("subgroup")
    p.add_argument("cocycle")
    p.add_argument("--ueb", help="unitary error basis JSON (default: extracted from the cocycle)")
    p.set_defaults(func=cmd_construct)
    p = sub.add_parser("demo", parents=[common], help="built-in end-to-end runs")
    p.add_argument("name", choices=["magic-square", "pentagram", "cycles", "vertex-transitive"])
    p.add_argument("--l-star", type=int, default=0, help="flipped vertex for the pentagram (default 0)")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    report = {"schema": SCHEMA, "command": args.command}
    try:
        tol = Tolerance(eps=args.tol)
        cfg = RunConfig(tol, args.seed, args.max_group_order, args.no_quantum_symmetries)
        report["config"] = {"tol": args.tol, "seed": args.seed, "max_group_order": args.max_group_order}
        t0 = time.perf_counter()
        report["result"] = strip_private(args.func(args, cfg))
        report["elapsed_s"] = time.perf_counter() - t0
        report["status"] = "verified"
        code = 0
    except VerificationError as exc:
        log.error("verification failed: %s", exc)
        report.update(status="verification failure", error=type(exc).__name__, message=str(exc))
        code = 1
    except InputError as exc:
        log.error("input error: %s", exc)
        report.update(status="input error", error=type(exc).__name__, message=str(exc))
        code = 2
    except QptError as exc:
        log.error("%s", exc)
        report.update(status="failure", error=type(exc).__name__, message=str(exc))
        code = 1
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "report.json").write_text(json.dumps(report, indent=2))
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
