"""Command-line entry point: ``buildfano <verb> [--input FILE] [--output json|table]``.

Exit codes: 0 success, 1 negative ``fano`` verdict, 2 bad input,
3 the two Fano tests disagreed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import atlas
from .buildset import BuildingSet, BuildingSetError, elements_of, from_json
from .digraph import (
    DigraphError,
    DirectedGraph,
    NotFano,
    building_set_digraph,
    fan_of_digraph,
    fans_isomorphic,
    is_smooth_fano_polytope,
    polytope_from_digraph,
)
from .fan import build_fan, is_complete, is_fano_by_intersection, is_smooth
from .fano import describe_pair, is_fano_criterion, witness_report
from .nested import TooLarge, maximal_nested_sets, nested_complex

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_ORACLE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str | None):
    if path is None:
        raise InputError("--input is required for this command")
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc


def _building_set(args) -> BuildingSet:
    data = _load(args.input)
    try:
        return from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed building set: {exc}") from exc


def _lists(face):
    return [list(elements_of(m)) for m in face]


def _wall_rows(f, profile):
    return [{"wall": i, "tau": list(w.tau), "v": w.v, "v_prime": w.v_prime, "number": k}
            for i, (w, k) in enumerate(profile)]


# -- verbs ------------------------------------------------------------------

def cmd_validate(args):
    B = _building_set(args)
    out = {"valid": True, "building_set": B.to_json(), "components": _lists(B.components())}
    return out, f"valid: {B}\ncomponents: {_lists(B.components())}", EXIT_OK


def cmd_nested(args):
    B = _building_set(args)
    faces = maximal_nested_sets(B) if args.maximal else nested_complex(B).faces
    rows = [_lists(f) for f in faces]
    return rows, "\n".join(str(r) for r in rows), EXIT_OK


def cmd_fan(args):
    B = _building_set(args)
    f = build_fan(B)
    _, profile = is_fano_by_intersection(f)
    out = {
        "dim": f.dim,
        "rays": [list(r) for r in f.rays],
        "max_cones": [list(c) for c in f.max_cones],
        "wall_profile": [[i, k] for i, (_, k) in enumerate(profile)],
        "smooth": is_smooth(f),
        "complete": is_complete(f),
    }
    lines = [f"dim {f.dim}, {len(f.rays)} rays, {len(f.max_cones)} maximal cones"]
    lines += [f"  ray {i}: {r}" for i, r in enumerate(f.rays)]
    lines += [f"  cone {list(c)}" for c in f.max_cones]
    lines.append("walls: " + " ".join(str(k) for _, k in profile))
    return out, "\n".join(lines), EXIT_OK


def cmd_fano(args):
    B = _building_set(args)
    out: dict = {}
    verdicts = []
    if args.method in ("criterion", "both"):
        ok, viol = is_fano_criterion(B)
        verdicts.append(ok)
        out["criterion"] = {
            "fano": ok,
            "violations": [
                {"component": list(elements_of(v.component)), "pair": _lists(v.pair), "reason": v.reason}
                for v in viol
            ],
        }
    if args.method in ("intersection", "both"):
        f = build_fan(B)
        ok, profile = is_fano_by_intersection(f)
        verdicts.append(ok)
        out["intersection"] = {"fano": ok, "wall_profile": _wall_rows(f, profile)}
    if len(set(verdicts)) > 1:
        out["fano"] = None
        return out, f"DISAGREEMENT for {B}: {verdicts}", EXIT_ORACLE
    out["fano"] = verdicts[0]
    text = f"{B}: {'Fano' if verdicts[0] else 'not Fano'} ({args.method})"
    return out, text, EXIT_OK if verdicts[0] else EXIT_FALSE


def cmd_witness(args):
    B = _building_set(args)
    rep = witness_report(B)
    if rep is None:
        return {"fano": True, "witness": None}, f"{B} is Fano; no witness", EXIT_OK
    out = {
        "fano": False,
        "violation": {"pair": _lists(rep.violation.pair), "reason": rep.violation.reason},
        "pair": describe_pair(rep.pair),
        "maximal_nested_sets": [_lists(m) for m in rep.maximal_sets],
        "wall": {"tau": _lists(rep.tau), "v": list(elements_of(rep.pair.J1)),
                 "v_prime": list(elements_of(rep.pair.J2))},
        "predicted": rep.predicted,
        "intersection_number": rep.intersection_number,
    }
    text = "\n".join([
        f"J1={_lists([rep.pair.J1])[0]} J2={_lists([rep.pair.J2])[0]}",
        *rep.pair.trace,
        f"maximal nested sets: {out['maximal_nested_sets']}",
        f"intersection number {rep.intersection_number} (predicted {rep.predicted})",
    ])
    return out, text, EXIT_OK


def _digraph_report(G: DirectedGraph, B: BuildingSet | None = None) -> dict:
    out = G.to_json()
    if G.nodes == 1:
        out.update(smooth_fano=True, isomorphism=[] if B is not None else None)
        return out
    P = polytope_from_digraph(G)
    ok = P.full_dimensional and is_smooth_fano_polytope(P)
    out["vertices"] = [list(v) for v in P.vertex_coords()]
    out["smooth_fano"] = ok
    if B is not None:
        out["isomorphism"] = fans_isomorphic(build_fan(B), fan_of_digraph(G)) if ok else None
    return out


def cmd_digraph(args):
    B = _building_set(args)
    G = building_set_digraph(B)
    out = _digraph_report(G, B)
    text = f"nodes {G.nodes}\narrows {[list(a) for a in G.arrows]}\nsmooth Fano: {out['smooth_fano']}"
    return out, text, EXIT_OK


def cmd_check_digraph(args):
    data = _load(args.input)
    try:
        G = DirectedGraph.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed digraph: {exc}") from exc
    out = _digraph_report(G)
    return out, f"smooth Fano: {out['smooth_fano']}", EXIT_OK


def cmd_enumerate(args):
    rep = atlas.classify_fano(args.size, args.connected, sample=args.sample)
    if args.fano_only:
        rep.records = [r for r in rep.records if r.fano]
    return rep.to_json(), rep.table(), EXIT_OK


def cmd_verify_realizations(args):
    rep = atlas.verify_realizations(args.size, args.connected)
    return rep.to_json(), rep.table(), EXIT_OK


def cmd_census_threefolds(args):
    c = atlas.fano_threefold_census()
    return c.to_json(), c.table(), EXIT_OK


def cmd_search_digraphs(args):
    found = atlas.search_non_building_digraphs(args.nodes, args.max_arrows, args.limit)
    out = [G.to_json() for G in found]
    return out, "\n".join(str(g) for g in out) or "none found", EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON file ('-' for stdin)")
    common.add_argument("--output", choices=("json", "table"), default="json")

    p = argparse.ArgumentParser(prog="buildfano", parents=[common], description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    verb("validate", cmd_validate, help="check the building-set axioms")
    verb("nested", cmd_nested, help="nested complex").add_argument("--maximal", action="store_true")
    verb("fan", cmd_fan, help="rays, maximal cones and wall profile")
    verb("fano", cmd_fano, help="Fano verdict").add_argument(
        "--method", choices=("criterion", "intersection", "both"), default="both")
    verb("witness", cmd_witness, help="wall with nonpositive degree for a non-Fano input")
    verb("digraph", cmd_digraph, help="directed graph realizing a Fano building set")
    verb("check-digraph", cmd_check_digraph, help="is P_G a smooth Fano polytope")
    e = verb("enumerate", cmd_enumerate, help="building sets up to isomorphism")
    e.add_argument("--size", type=int, required=True)
    e.add_argument("--connected", action="store_true")
    e.add_argument("--fano-only", action="store_true")
    e.add_argument("--sample", type=int, default=None, help="stop after this many forms")
    t = verb("verify-thm2", cmd_verify_realizations, help="realize every Fano form and check the polytope")
    t.add_argument("--size", type=int, required=True)
    t.add_argument("--connected", action="store_true")
    verb("census-threefolds", cmd_census_threefolds, help="Fano threefolds from building sets")
    s = verb("search-digraphs", cmd_search_digraphs, help="smooth Fano P_G not from building sets (slow)")
    s.add_argument("--nodes", type=int, default=4)
    s.add_argument("--max-arrows", type=int, default=None)
    s.add_argument("--limit", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, text, code = args.fn(args)
    except (InputError, BuildingSetError, DigraphError, NotFano, TooLarge, atlas.TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except atlas.OracleDisagreement as exc:
        print(f"oracle disagreement: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    if args.output == "json":
        print(json.dumps(out, indent=2))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
