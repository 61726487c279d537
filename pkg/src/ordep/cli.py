"""Command-line interface.

Four subcommands: discover, validate, map, infer.  Reports go to stdout
(JSON or text) and are byte-identical across runs with the same inputs
and flags; wall-clock timing goes to stderr so it never perturbs the
report.  Exit codes: 0 success, 1 a validation or derivation answered
no, 2 usage or parse failure, 3 a configured budget or limit stopped
the run.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, asdict

from .discovery import discover, discover_unpruned
from .errors import BudgetExceededError, OrdepError
from .inference import DerivationLimit, ODSet, derive_with_trace, derives
from .odmodel import (
    ConstantOD,
    ListOD,
    format_od,
    map_list_to_canonical,
    map_od_attrs,
    parse_canonical_parts,
    parse_od,
    satisfies_list_od,
    validate_canonical,
    violations,
)
from .oracle import OracleConfig, brute_discover, brute_validate_canonical, brute_validate_list
from .relation import NULL_POLICIES, Schema, infer_schema, load_csv

_POLICY_FLAG = {"first": "nulls_first", "last": "nulls_last", "reject": "reject"}


@dataclass
class RunReport:
    """Everything one invocation produced, in serialization order."""

    command: str
    input: dict | None
    flags: dict
    results: dict

    def to_json(self) -> str:
        doc = {"command": self.command}
        if self.input is not None:
            doc["input"] = self.input
        doc["flags"] = self.flags
        doc.update(self.results)
        return json.dumps(doc, indent=2) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordep", description="Order dependency toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_data_flags(p):
        p.add_argument("--input", required=True, help="CSV file")
        p.add_argument("--schema", help="schema JSON file")
        p.add_argument("--infer-schema", action="store_true", help="guess the schema by trial parsing")
        p.add_argument("--no-header", action="store_true", help="the CSV has no header row")
        p.add_argument("--null-policy", choices=sorted(_POLICY_FLAG), help="override the schema's null policy")

    def add_common(p):
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--seed", type=int, help="accepted and echoed; no behavior depends on it")
        p.add_argument("--threads", type=int, default=1, help="reserved; execution is sequential")

    p = sub.add_parser("discover", help="find all minimal order dependencies")
    add_data_flags(p)
    add_common(p)
    p.add_argument("--max-level", type=int, help="cap on attributes per lattice node")
    p.add_argument("--no-prune", action="store_true", help="disable node deletion and key shortcuts")
    p.add_argument("--oracle", action="store_true", help="use the brute-force reference instead")

    p = sub.add_parser("validate", help="check one dependency against the data")
    p.add_argument("od", help="dependency text")
    add_data_flags(p)
    add_common(p)
    p.add_argument("--witnesses", action="store_true", help="list violating row pairs")
    p.add_argument("--oracle", action="store_true", help="use the brute-force reference instead")

    p = sub.add_parser("map", help="translate a list dependency to canonical form")
    p.add_argument("od", help="list dependency text")
    add_common(p)

    p = sub.add_parser("infer", help="derive a dependency from premises by the axioms")
    p.add_argument("target", help="canonical dependency text")
    p.add_argument("--premises", required=True, help="JSON file with universe and ods")
    add_common(p)
    p.add_argument("--max-context", type=int, help="context size limit (default: universe size)")
    p.add_argument("--max-chain", type=int, default=3, help="chain length limit")
    p.add_argument("--trace", action="store_true", help="print one derivation path")
    return parser


def _load_relation(args):
    if args.schema:
        with open(args.schema, encoding="utf-8") as fh:
            schema = Schema.from_json(fh.read())
    elif args.infer_schema:
        schema = infer_schema(args.input, has_header=not args.no_header)
    else:
        raise OrdepError("either --schema or --infer-schema is required")
    if args.null_policy:
        schema = Schema(schema.attributes, _POLICY_FLAG[args.null_policy])
    rel = load_csv(args.input, schema, has_header=not args.no_header)
    fingerprint = {
        "path": args.input,
        "rows": rel.row_count,
        "attributes": rel.attr_count,
        "schema_sha256": hashlib.sha256(schema.to_json().encode()).hexdigest(),
    }
    return rel, fingerprint


def _od_level(od) -> int:
    return len(od.context) + (1 if isinstance(od, ConstantOD) else 2)


def _od_sort_key(od):
    return (
        _od_level(od),
        tuple(sorted(od.context)),
        0 if isinstance(od, ConstantOD) else 1,
        (od.attr,) if isinstance(od, ConstantOD) else (od.a, od.b),
    )


def _od_record(od, names) -> dict:
    rec = {"kind": "constant" if isinstance(od, ConstantOD) else "order_compatible"}
    rec["context"] = [names[a] for a in sorted(od.context)]
    if isinstance(od, ConstantOD):
        rec["attr"] = names[od.attr]
    else:
        rec["a"] = names[od.a]
        rec["b"] = names[od.b]
    rec["level"] = _od_level(od)
    rec["text"] = format_od(od, names)
    return rec


def _common_flags(args) -> dict:
    return {"format": args.format, "seed": args.seed, "threads": args.threads}


def _cmd_discover(args) -> int:
    rel, fingerprint = _load_relation(args)
    names = rel.schema.names
    flags = _common_flags(args)
    flags.update(
        {
            "max_level": args.max_level,
            "prune": not args.no_prune,
            "oracle": args.oracle,
            "null_policy": rel.schema.null_policy,
        }
    )
    started = time.perf_counter()
    if args.oracle:
        found = brute_discover(rel, OracleConfig(max_level=args.max_level))
        results = {"ods": [_od_record(od, names) for od in sorted(found, key=_od_sort_key)]}
        results["od_count"] = len(found)
        results["stats"] = None
    else:
        run = discover_unpruned(rel, args.max_level) if args.no_prune else discover(rel, args.max_level)
        results = {
            "ods": [_od_record(od, names) for od in sorted(run.ods, key=_od_sort_key)]
        }
        results["od_count"] = len(run.ods)
        results["stats"] = {
            "levels": [asdict(s) for s in run.stats.levels],
            "totals": {
                "nodes_generated": run.stats.nodes_generated,
                "nodes_pruned": run.stats.nodes_pruned,
                "constant_checks": run.stats.constant_checks,
                "swap_checks": run.stats.swap_checks,
                "keys_found": run.stats.keys_found,
            },
            "levels_processed": run.levels_processed,
            "exhausted": run.exhausted,
        }
    elapsed = time.perf_counter() - started
    report = RunReport("discover", fingerprint, flags, results)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        for rec in results["ods"]:
            sys.stdout.write(rec["text"] + "\n")
    print(f"discover: {results['od_count']} dependencies in {elapsed:.3f}s", file=sys.stderr)
    return 0


def _cmd_validate(args) -> int:
    od = parse_od(args.od)
    rel, fingerprint = _load_relation(args)
    od_idx = map_od_attrs(od, rel.attr_index)
    if isinstance(od_idx, ListOD):
        valid = brute_validate_list(rel, od_idx) if args.oracle else satisfies_list_od(rel, od_idx)
    else:
        valid = (
            brute_validate_canonical(rel, od_idx) if args.oracle else validate_canonical(rel, od_idx)
        )
    results = {"od": format_od(od_idx, rel.schema.names), "valid": valid}
    if args.witnesses and not valid:
        results["witnesses"] = [
            {
                "kind": v.kind,
                "over": [rel.schema.names[a] for a in v.over],
                "attrs": [rel.schema.names[a] for a in v.attrs],
                "pairs": [list(p) for p in v.pairs],
            }
            for v in violations(rel, od_idx)
        ]
    flags = _common_flags(args)
    flags.update({"witnesses": args.witnesses, "oracle": args.oracle, "null_policy": rel.schema.null_policy})
    report = RunReport("validate", fingerprint, flags, results)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(("valid" if valid else "invalid") + f": {results['od']}\n")
        for w in results.get("witnesses", []):
            pairs = " ".join(f"({s},{t})" for s, t in w["pairs"])
            sys.stdout.write(f"  {w['kind']} witnesses: {pairs}\n")
    return 0 if valid else 1


def _cmd_map(args) -> int:
    od = parse_od(args.od)
    if not isinstance(od, ListOD):
        raise OrdepError("map expects a list dependency like [A,B] -> [C,D]")
    mapped = map_list_to_canonical(od)
    results = {
        "od": format_od(od),
        "ods": [format_od(m) for m in mapped],
        "od_count": len(mapped),
    }
    report = RunReport("map", None, _common_flags(args), results)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        for text in results["ods"]:
            sys.stdout.write(text + "\n")
    return 0


def _parse_premises(path):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "ods" not in doc:
        raise OrdepError('premises file needs an object with an "ods" array')
    ods = [parse_od(t) for t in doc["ods"]]
    for od in ods:
        if isinstance(od, ListOD):
            raise OrdepError("premises must be canonical dependencies, not list form")
    mentioned = set()
    for od in ods:
        mentioned |= od.context
        mentioned |= {od.attr} if isinstance(od, ConstantOD) else {od.a, od.b}
    universe = frozenset(doc.get("universe", sorted(mentioned)))
    return ODSet(universe, ods)


def _trivial_canonical(text):
    """True when the text is canonical syntax but names a dependency
    that holds structurally (reflexivity or identity shape)."""
    parts = parse_canonical_parts(text)
    if parts is None:
        return False
    if parts[0] == "constant":
        return parts[2] in parts[1]
    _, ctx, a, b = parts
    return a == b or a in ctx or b in ctx


def _cmd_infer(args) -> int:
    premises = _parse_premises(args.premises)
    if _trivial_canonical(args.target):
        results = {"target": args.target.strip(), "answer": "yes", "derivable": True, "trivial": True}
        flags = _common_flags(args)
        flags.update({"max_context": args.max_context, "max_chain": args.max_chain, "trace": args.trace})
        report = RunReport("infer", None, flags, results)
        if args.format == "json":
            sys.stdout.write(report.to_json())
        else:
            sys.stdout.write(f"yes (trivial): {results['target']}\n")
        return 0
    target = parse_od(args.target)
    if isinstance(target, ListOD):
        raise OrdepError("infer expects a canonical dependency target")
    universe = premises.universe | target.context
    universe |= {target.attr} if isinstance(target, ConstantOD) else {target.a, target.b}
    premises = ODSet(universe, premises.constants | premises.ocs)
    max_ctx = args.max_context if args.max_context is not None else len(universe)
    lim = DerivationLimit(max_ctx, args.max_chain)
    at_caps = max_ctx >= len(universe) and args.max_chain >= max(0, len(universe) - 2)
    trace = derive_with_trace(premises, target, lim) if args.trace else None
    derivable = trace is not None if args.trace else derives(premises, target, lim)
    if derivable:
        answer = "yes"
    elif at_caps:
        answer = "no"
    else:
        answer = "not derivable within limits"
    results = {"target": format_od(target), "answer": answer, "derivable": derivable}
    if trace:
        results["trace"] = [
            {"od": format_od(od), "rule": rule, "premises": [format_od(p) for p in prems]}
            for od, rule, prems in trace
        ]
    flags = _common_flags(args)
    flags.update({"max_context": max_ctx, "max_chain": args.max_chain, "trace": args.trace})
    report = RunReport("infer", None, flags, results)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(f"{answer}: {results['target']}\n")
        for step in results.get("trace", []):
            via = f" via {step['rule']}" if step["rule"] != "premise" else " (premise)"
            sys.stdout.write(f"  {step['od']}{via}\n")
    if derivable:
        return 0
    return 1 if at_caps else 3


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes.
        return 2 if exc.code else 0
    handlers = {
        "discover": _cmd_discover,
        "validate": _cmd_validate,
        "map": _cmd_map,
        "infer": _cmd_infer,
    }
    try:
        return handlers[args.command](args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OrdepError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
