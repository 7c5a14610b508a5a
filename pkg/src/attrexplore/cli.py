"""Command-line entry points.

Subcommands: explore (batch run against a scripted domain), serve (host the
session endpoints), replay (verify a journal), report (inspect a base),
validate-expert (audit a scripted domain). Outputs are plain JSON and text
so runs can be diffed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from .base import is_consistent
from .engine import explore, minimal_realizer_report
from .errors import EnumerationLimitError, ExplorationError
from .expert import (
    MASK_FIXED,
    MASK_NONE,
    MASK_RANDOM,
    MaskPolicy,
    load_domain,
    validate_expert,
)
from .journal import JournalWriter, read_journal, verify_journal
from .logic import BOTTOM, Implication, format_implication, remove_redundant
from .schema import DEFAULT_ENUM_LIMIT, load_schema
from .session import load_examples
from .server import serve


def _parse_mask_flag(value: str | None, seed: int | None, schema):
    if value is None:
        return None
    if value == MASK_NONE:
        return MaskPolicy()
    if value.startswith("fixed:"):
        names = [n for n in value[len("fixed:") :].split(",") if n]
        return MaskPolicy(MASK_FIXED, hide=schema.set_of(names))
    if value == "random":
        if seed is None:
            raise ExplorationError("--mask random needs --seed")
        return MaskPolicy(MASK_RANDOM, seed=seed)
    raise ExplorationError(f"unknown --mask value {value!r} (use none, fixed:a,b or random)")


def _write_json(path: Path, data) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_explore(args) -> int:
    schema = load_schema(args.schema)
    policy = _parse_mask_flag(args.mask, args.seed, schema)
    domain = load_domain(args.domain, schema, mask_override=policy)
    examples = load_examples(args.examples, schema) if args.examples else []
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    writer = JournalWriter(out / "journal.jsonl", schema, truncate=True)
    result = explore(schema, domain, examples, budget=args.budget, journal_writer=writer)

    _write_json(
        out / "implications.json",
        [
            {
                "premise": schema.names(i.premise),
                "conclusion": None if i.conclusion is BOTTOM else schema.names(i.conclusion),
            }
            for i in result.validated
        ],
    )
    with open(out / "implications.txt", "w", encoding="utf-8") as fh:
        for imp in result.validated:
            fh.write(format_implication(imp, schema) + "\n")
    summary = {
        "terminated": result.terminated,
        "question_count": result.question_count,
        "implication_count": len(result.validated),
        "example_count": len(result.final_base.examples),
        "journal_length": len(result.final_base.journal),
    }
    try:
        realizer = minimal_realizer_report(result.validated, schema.background, schema, args.max_enum)
        _write_json(
            out / "realizer.json",
            {"irreducible": [schema.names(m) for m in realizer]},
        )
        summary["realizer_written"] = True
    except EnumerationLimitError as exc:
        summary["realizer_written"] = False
        summary["realizer_skipped"] = str(exc)
    _write_json(out / "result.json", summary)
    print(f"{result.terminated}: {len(result.validated)} implications after {result.question_count} questions")
    return 0


def cmd_serve(args) -> int:
    serve(args.port, args.journal, host=args.host)
    return 0


def cmd_replay(args) -> int:
    schema = load_schema(args.schema)
    entries = read_journal(args.journal, schema)
    base = verify_journal(schema, entries)
    print(f"replay clean: {len(entries)} entries")
    print(f"implications: {len(base.implications)}")
    for imp in base.implications:
        print(f"  {format_implication(imp, schema)}")
    print(f"examples: {len(base.examples)}")
    for ex in base.examples:
        print(f"  ({' '.join(schema.names(ex.lower)) or '{}'}, {' '.join(schema.names(ex.upper)) or '{}'})")
    return 0


def cmd_report(args) -> int:
    schema = load_schema(args.schema)
    entries = read_journal(args.journal, schema)
    from .journal import replay_journal

    base = replay_journal(schema, entries)
    print(f"journal entries: {len(entries)}")
    print(f"consistent: {is_consistent(base, schema)}")
    print(f"implications ({len(base.implications)}):")
    for imp in base.implications:
        print(f"  {format_implication(imp, schema)}")
    irredundant = remove_redundant(base.implications)
    if len(irredundant) < len(base.implications):
        print(f"redundant implications: {len(base.implications) - len(irredundant)}")
    print(f"examples ({len(base.examples)}):")
    for ex in base.examples:
        print(f"  ({' '.join(schema.names(ex.lower)) or '{}'}, {' '.join(schema.names(ex.upper)) or '{}'})")
    try:
        realizer = minimal_realizer_report(base.implications, schema.background, schema, args.max_enum)
        print(f"indispensable completions ({len(realizer)}):")
        for m in realizer:
            print(f"  {{{' '.join(schema.names(m))}}}")
    except EnumerationLimitError as exc:
        print(f"realizer report skipped: {exc}")
    return 0


def cmd_validate_expert(args) -> int:
    schema = load_schema(args.schema)
    policy = _parse_mask_flag(args.mask, args.seed, schema)
    domain = load_domain(args.domain, schema, mask_override=policy)
    if 3**schema.n <= args.max_queries:
        sample = []
        for premise in range(schema.full_mask + 1):
            free = schema.full_mask & ~premise
            extra = free
            while True:
                sample.append(Implication(premise, premise | extra))
                if extra == 0:
                    break
                extra = (extra - 1) & free
    else:
        import random

        rng = random.Random(args.seed or 0)
        sample = [
            Implication(rng.getrandbits(schema.n), rng.getrandbits(schema.n))
            for _ in range(args.max_queries)
        ]
    confirmed = [q for q in sample if domain.answer(q).is_valid]
    report = validate_expert(domain.answer, schema, confirmed, sample)
    print(f"checked {report.checked_queries} queries, {len(report.violations)} violation(s)")
    for v in itertools.islice(report.violations, 20):
        print(f"  condition {v.condition}: {format_implication(v.query, schema)}: {v.detail}")
    return 0 if report.clean else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="attrexplore", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("explore", help="run a batch exploration against a scripted domain")
    p.add_argument("--schema", required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--examples", help="optional initial examples file")
    p.add_argument("--out", required=True, help="output directory for journal and reports")
    p.add_argument("--budget", type=int, default=None, help="maximum number of questions")
    p.add_argument("--mask", default=None, help="none, fixed:a,b or random (overrides the domain file)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-enum", type=int, default=DEFAULT_ENUM_LIMIT, dest="max_enum")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("serve", help="host the session endpoints")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--journal", required=True, help="directory for session journals")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("replay", help="verify a journal re-derives identically")
    p.add_argument("--schema", required=True)
    p.add_argument("--journal", required=True)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("report", help="reconstruct and describe a base from its journal")
    p.add_argument("--schema", required=True)
    p.add_argument("--journal", required=True)
    p.add_argument("--max-enum", type=int, default=DEFAULT_ENUM_LIMIT, dest="max_enum")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("validate-expert", help="audit a scripted domain against the expert rules")
    p.add_argument("--schema", required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--mask", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-queries", type=int, default=2000, dest="max_queries")
    p.set_defaults(func=cmd_validate_expert)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExplorationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
