"""Batch JSON front-end.

Subcommands: symroots, cluster, graph, genus2, invariants, global, verify.
All exact values are emitted as rational strings "n/d"; real (log-scaled)
companions are decimal strings and never replace the exact values.  Exit
codes: 0 success, 1 input/validation error, 2 internal failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys

from . import clustertree, invariants, metgraph, symroots, verify
from .invariants import PlaceReport
from .metgraph import MetrizedGraph
from .rational import format_rat, parse_point, parse_rat
from .symroots import RootConfig


class _Parser(argparse.ArgumentParser):
    # argument errors are validation errors (exit 1), not internal failures
    def error(self, message):
        raise ValueError(message)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc


def _load_curve(doc):
    if "genus" not in doc or "roots" not in doc:
        raise ValueError('curve JSON requires "genus" and "roots"')
    cfg = RootConfig(
        int(doc["genus"]), tuple(parse_point(r) for r in doc["roots"])
    )
    return symroots.normalize_finite(cfg)


def _parse_triple(text, size):
    parts = [int(x) for x in text.split(",")]
    if len(parts) != size:
        raise ValueError(f"expected {size} comma-separated indices: {text!r}")
    return tuple(parts)


def _triples(cfg, args):
    if args.triple:
        return [_parse_triple(args.triple, 3)]
    if args.all_triples:
        return list(itertools.permutations(range(len(cfg.roots)), 3))
    raise ValueError("one of --triple or --all-triples is required")


def _triple_record(cfg, prime, i, j, k):
    rec = {"l_pow_2g": format_rat(symroots.symroot_pow(cfg, i, j, k))}
    if prime is not None:
        nu = symroots.symroot_val(cfg, prime, i, j, k)
        rec["nu_l"] = format_rat(nu)
        rec["pairing_nu"] = format_rat(nu / 2)
        rec["pairing_log"] = str(float(nu / 2) * math.log(prime))
    return rec


def _cmd_symroots(args):
    doc = _load_json(args.curve)
    cfg = _load_curve(doc)
    prime = args.prime if args.prime is not None else doc.get("prime")
    triples = _triples(cfg, args)
    out = {"genus": cfg.genus}
    if prime is not None:
        out["prime"] = prime
    if args.triple:
        i, j, k = triples[0]
        out.update(_triple_record(cfg, prime, i, j, k))
    else:
        out["results"] = {
            f"({i},{j},{k})": _triple_record(cfg, prime, i, j, k)
            for i, j, k in triples
        }
    return out


def _cmd_cluster(args):
    doc = _load_json(args.curve)
    cfg = _load_curve(doc)
    prime = args.prime if args.prime is not None else doc.get("prime")
    if prime is None:
        raise ValueError("cluster requires --prime (or a prime in the curve JSON)")
    report = clustertree.check_normal_form(cfg, prime)
    out = {
        "genus": cfg.genus,
        "prime": prime,
        "checks": list(report.violations) or ["ok"],
    }
    if not report.ok:
        return out
    tree = clustertree.build_tree(cfg, prime)
    out["tree"] = {
        "nodes": [
            {
                "level": node.level,
                "members": sorted(node.members),
                "representative": format_rat(node.representative),
            }
            for node in tree.nodes
        ]
    }
    g = cfg.genus
    pairings = {}
    if args.triple or args.all_triples:
        for i, j, k in _triples(cfg, args):
            lhs = clustertree.pairing_from_tree(tree, i, j, k)
            rhs = 2 * g * (g - 1) * symroots.symroot_val(cfg, prime, i, j, k)
            pairings[f"({i},{j},{k})"] = {
                "combination": format_rat(lhs),
                "expected_from_symroots": format_rat(rhs),
                "match": lhs == rhs,
            }
        out["pairings"] = pairings
    return out


def _cmd_graph(args):
    if args.action != "eval":
        raise ValueError(f"unknown graph action: {args.action!r}")
    try:
        graph = MetrizedGraph.from_json(_load_json(args.infile))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad graph JSON: {exc}") from exc
    eps, ph = metgraph.epsilon_phi(graph)
    return {
        "epsilon": format_rat(eps),
        "phi": format_rat(ph),
        "delta": format_rat(metgraph.delta(graph)),
        "genus": str(graph.total_genus),
    }


def _cmd_genus2(args):
    params = (
        tuple(parse_rat(x) for x in args.params.split(",")) if args.params else ()
    )
    row = invariants.genus2_row(args.type, params)
    out = {
        "type": args.type,
        "params": [format_rat(x) for x in params],
        "d_half": format_rat(row.d_half),
        "delta": format_rat(row.delta),
        "epsilon": format_rat(row.eps),
        "chi": format_rat(row.chi),
    }
    if args.graph_check:
        graph = invariants.genus2_graph(args.type, params)
        eps, ph = metgraph.epsilon_phi(graph)
        counts, warnings = invariants.node_counts_from_graph(graph)
        out["graph_check"] = {
            "epsilon": format_rat(eps),
            "phi": format_rat(ph),
            "delta": format_rat(metgraph.delta(graph)),
            "d_half": format_rat(invariants.d_from_counts(counts) / 2),
            "matches_table": (
                eps == row.eps
                and ph == row.chi
                and metgraph.delta(graph) == row.delta
                and invariants.d_from_counts(counts) == 2 * row.d_half
            ),
            "warnings": warnings,
        }
    return out


def _cmd_invariants(args):
    if args.action != "chi":
        raise ValueError(f"unknown invariants action: {args.action!r}")
    chi = invariants.chi_nonarch(
        args.genus, parse_rat(args.d), parse_rat(args.eps), parse_rat(args.delta)
    )
    return {"chi": format_rat(chi)}


def _cmd_global(args):
    doc = _load_json(args.places)
    if not isinstance(doc, list):
        raise ValueError("places JSON must be a list of place records")
    places = []
    for rec in doc:
        try:
            rec = dict(rec)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"bad place record: {exc}") from exc
        if missing := {"genus", "logNv", "d", "eps", "delta", "phi", "chi"} - set(rec):
            raise ValueError(f"place record missing keys: {sorted(missing)}")
        places.append(
            PlaceReport(
                label=str(rec.get("label", len(places))),
                genus=int(rec["genus"]),
                log_nv=float(rec["logNv"]),
                d=parse_rat(rec["d"]),
                eps=parse_rat(rec["eps"]),
                delta=parse_rat(rec["delta"]),
                phi=parse_rat(rec["phi"]),
                chi=parse_rat(rec["chi"]),
            )
        )
    return {
        "places": len(places),
        "omega_omega_adm": str(invariants.aggregate_global(places)),
    }


def _cmd_verify(args):
    return verify.run_suite(args.suite, args.seed)


def build_parser():
    parser = _Parser(prog="hypinv", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON document to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("symroots", help="symmetric roots and pairings")
    p.add_argument("--curve", required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--triple")
    p.add_argument("--all-triples", action="store_true")
    p.set_defaults(func=_cmd_symroots)

    p = add_parser("cluster", help="residue-class tree cross-check")
    p.add_argument("--curve", required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--triple")
    p.add_argument("--all-triples", action="store_true")
    p.set_defaults(func=_cmd_cluster)

    p = add_parser("graph", help="metrized-graph invariants")
    p.add_argument("action", choices=["eval"])
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_graph)

    p = add_parser("genus2", help="genus-2 closed-form table")
    p.add_argument("--type", required=True)
    p.add_argument("--params", default="")
    p.add_argument("--graph-check", action="store_true")
    p.set_defaults(func=_cmd_genus2)

    p = add_parser("invariants", help="scalar invariant algebra")
    p.add_argument("action", choices=["chi"])
    p.add_argument("--d", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--genus", type=int, required=True)
    p.set_defaults(func=_cmd_invariants)

    p = add_parser("global", help="adelic aggregation over places")
    p.add_argument("--places", required=True)
    p.set_defaults(func=_cmd_global)

    p = add_parser("verify", help="built-in verification suites")
    p.add_argument("--suite", required=True, choices=verify.SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    return parser


def _emit(doc, out_path):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        doc = args.func(args)
    except ValueError as exc:
        _emit({"error": "validation", "detail": str(exc)}, None)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        _emit({"error": "internal", "detail": f"{type(exc).__name__}: {exc}"}, None)
        return 2
    _emit(doc, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
