"""Acceptance suite: one test per criterion, printing one PASS/FAIL line each.

Every expected value is either computed here by an independent oracle
(full enumeration, the by-size minimum-base construction, the pairwise
intersection sieve) or asserted exactly against the behavioral contract.
"""

import json
import random
import time

from attrexplore import (
    ExpertAnswer,
    ExplorationSchema,
    Implication,
    PartialExample,
    ScriptedDomain,
    Session,
    VALID,
    close,
    entails,
    expert_closure,
    find_completion,
    models,
    normalize,
    respects,
    refutes,
    validate_expert,
)
from attrexplore.cli import main as cli_main
from attrexplore.expert import MASK_FIXED, MASK_RANDOM, MaskPolicy
from helpers import (
    all_implications,
    brute_completions,
    clop_from_domain,
    dg_base,
    make_schema,
    random_clause,
    random_consistent_base,
    random_domain,
    random_implications,
)


def report(name, failures, elapsed=None, limit=None, work=None, floor=None):
    ok = not failures and (limit is None or elapsed < limit)
    timing = f" ({elapsed:.1f}s of {limit:.0f}s budget)" if limit is not None else ""
    detail = f" [{work} checks]" if work is not None else ""
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}{timing}{detail}")
    assert not failures, f"{name}: {failures[:5]}"
    if limit is not None:
        assert elapsed < limit, f"{name}: took {elapsed:.1f}s, budget {limit:.0f}s"
    if floor is not None:
        assert work >= floor, f"{name}: only {work} checks ran, expected at least {floor}"


def test_canonical_base_reproduction():
    # 200 random universes (3..7 attributes, no background), random set
    # families: the validated list must have the same closure operator and
    # the same size as the by-size minimum base of the family
    rng = random.Random(2024_01)
    failures = []
    questions = 0
    start = time.monotonic()
    from attrexplore import explore

    for trial in range(200):
        n = rng.randint(3, 7)
        schema = make_schema(n)
        family = random_domain(rng, schema, 15)
        domain = ScriptedDomain(family, schema)
        result = explore(schema, domain)
        questions += result.question_count
        if result.terminated != "complete":
            failures.append((trial, "did not complete"))
            continue
        oracle = dg_base(clop_from_domain(family, schema.full_mask), n)
        if len(result.validated) != len(oracle):
            failures.append((trial, family, len(result.validated), len(oracle)))
            continue
        for x in range(1 << n):
            if close(result.validated, x) != close(oracle, x):
                failures.append((trial, "closure mismatch", x))
                break
    elapsed = time.monotonic() - start
    report("canonical-base-reproduction", failures, elapsed, 30.0, questions, 800)


def _random_background_schema(rng, n):
    clauses = tuple(
        random_clause(rng, n, allow_indefinite=True) for _ in range(rng.randint(0, 3))
    )
    return ExplorationSchema("abcde"[:n], clauses)


def test_masked_exploration_recovers_the_theory():
    # 100 random universes with cumulated-clause background and masked
    # answer sources: afterwards an implication A -> {m} follows from the
    # validated list plus the background exactly when the family validates it
    rng = random.Random(2024_02)
    failures = []
    compared = 0
    start = time.monotonic()
    from attrexplore import explore

    for trial in range(100):
        n = rng.randint(2, 5)
        schema = _random_background_schema(rng, n)
        family = random_domain(rng, schema, 10)
        if trial % 2 == 0:
            policy = MaskPolicy(MASK_FIXED, hide=rng.getrandbits(n))
        else:
            policy = MaskPolicy(MASK_RANDOM, seed=trial)
        domain = ScriptedDomain(family, schema, policy)
        result = explore(schema, domain)
        if result.terminated != "complete":
            failures.append((trial, "did not complete"))
            continue
        for a in range(1 << n):
            for m in range(n):
                query = Implication(a, a | (1 << m))
                valid = all(respects(d, query) for d in family)
                entailed = entails(
                    result.validated, schema.background, query, "with_background"
                )
                compared += 1
                if valid != entailed:
                    failures.append((trial, schema.names(a), schema.attributes[m], valid))
    elapsed = time.monotonic() - start
    report("masked-theory-recovery", failures, elapsed, 60.0, compared, 3000)


def test_termination_condition_is_exact():
    # at completion, exhaustively over universes of up to 5 attributes: an
    # implication is refuted by no stored example iff it follows from the
    # validated list together with the background
    rng = random.Random(2024_03)
    failures = []
    checked = 0
    from attrexplore import explore

    for trial in range(60):
        n = rng.randint(1, 5)
        if trial % 3 == 0:
            schema = make_schema(n)
            policy = MaskPolicy()
        else:
            schema = _random_background_schema(rng, n)
            policy = (
                MaskPolicy(MASK_RANDOM, seed=trial)
                if trial % 3 == 1
                else MaskPolicy(MASK_FIXED, hide=rng.getrandbits(n))
            )
        family = random_domain(rng, schema, 10)
        result = explore(schema, ScriptedDomain(family, schema, policy))
        base = result.final_base
        for query in all_implications(n):
            checked += 1
            unrefuted = not any(refutes(e, query) for e in base.examples)
            entailed = entails(base.implications, schema.background, query, "with_background")
            if unrefuted != entailed:
                failures.append((trial, query, unrefuted))
    report("termination-condition", failures, work=checked, floor=3000)


def test_normalization_is_sound():
    # 500 random consistent bases: the implicational models are untouched,
    # every rewrite tightens its example while keeping the same completions,
    # and a second pass changes nothing
    rng = random.Random(2024_04)
    failures = []
    rewrites = 0
    for trial in range(500):
        n = rng.randint(2, 6)
        clauses = tuple(random_clause(rng, n) for _ in range(rng.randint(0, 2)))
        schema = ExplorationSchema("abcdef"[:n], clauses)
        base = random_consistent_base(rng, schema, rng.randint(0, 4), rng.randint(0, 5))
        pre_models = models(base.implications, clauses, schema)
        pre_examples = list(base.examples)
        survivors = list(range(len(pre_examples)))  # original index per position
        mark = len(base.journal)
        normalize(base)
        if models(base.implications, clauses, schema) != pre_models:
            failures.append((trial, "models changed"))
            continue
        for entry in base.journal[mark:]:
            if entry.action == "drop_example":
                survivors.pop(entry.payload["index"])
        for position, original in enumerate(survivors):
            pre = pre_examples[original]
            post = base.examples[position]
            tight = pre.lower & ~post.lower == 0 and post.upper & ~pre.upper == 0
            if not tight:
                failures.append((trial, "not tighter", original))
                continue
            pre_comp = brute_completions(pre.lower, pre.upper, base.implications, clauses)
            post_comp = brute_completions(post.lower, post.upper, base.implications, clauses)
            if pre_comp != post_comp:
                failures.append((trial, "completions changed", original))
        rewrites += len(base.journal) - mark
        snapshot = base.lists()
        mark2 = len(base.journal)
        normalize(base)
        if base.lists() != snapshot or len(base.journal) != mark2:
            failures.append((trial, "not idempotent"))
    report("normalization-soundness", failures, work=rewrites, floor=200)


def test_consistency_checks_match_enumeration():
    # 1000 random (base, example) instances over up to 10 attributes: the
    # backtracking completion search agrees exactly with 2^|M| enumeration
    rng = random.Random(2024_05)
    failures = []
    enumerated = 0
    for trial in range(1000):
        n = rng.randint(2, 10)
        clauses = tuple(
            random_clause(rng, n, allow_indefinite=True) for _ in range(rng.randint(0, 2))
        )
        schema = ExplorationSchema("abcdefghij"[:n], clauses)
        rules = random_implications(rng, n, rng.randint(0, 6))
        if trial % 3 == 0:
            lower, upper = 0, schema.full_mask  # the full 2^|M| sweep
        else:
            lower = rng.getrandbits(n)
            upper = lower | rng.getrandbits(n)
        example = PartialExample(lower, upper)
        witness = find_completion(example, rules, clauses, schema)
        oracle = brute_completions(lower, upper, rules, clauses)
        enumerated += 1 << (upper & ~lower).bit_count()
        if (witness is not None) != bool(oracle):
            failures.append((trial, n, "existence mismatch"))
        elif witness is not None and witness not in oracle:
            failures.append((trial, n, "bogus witness"))
    report("consistency-oracle-equivalence", failures, work=enumerated, floor=50_000)


def test_expert_rules_hold_and_break_as_designed():
    # scripted masked sources over 100 random families pass the audit on
    # exhaustive query sets; three deliberately broken sources are each
    # flagged with their own condition
    rng = random.Random(2024_06)
    failures = []
    audited = 0
    for trial in range(100):
        n = rng.randint(1, 5)
        schema = _random_background_schema(rng, n)
        family = random_domain(rng, schema, 8)
        policy = [
            MaskPolicy(),
            MaskPolicy(MASK_FIXED, hide=rng.getrandbits(n)),
            MaskPolicy(MASK_RANDOM, seed=trial),
        ][trial % 3]
        domain = ScriptedDomain(family, schema, policy)
        sample = all_implications(n)
        confirmed = [q for q in sample if domain.answer(q).is_valid]
        audit = validate_expert(domain.answer, schema, confirmed, sample)
        audited += audit.checked_queries
        if not audit.clean:
            failures.append((trial, audit.violations[0]))

    schema = make_schema(3)

    def breaks_i(_query):
        return ExpertAnswer(PartialExample(0, 0))

    def breaks_ii(query):
        if query == Implication(schema.set_of("a"), schema.set_of("ab")):
            return VALID
        return ExpertAnswer(PartialExample(schema.set_of("a"), schema.set_of("a")))

    blocked = [Implication(schema.set_of("a"), schema.set_of("ab"))]

    def breaks_iii(_query):
        return ExpertAnswer(PartialExample(schema.set_of("a"), schema.set_of("ac")))

    sample3 = [
        Implication(schema.set_of("a"), schema.set_of("ab")),
        Implication(schema.set_of("a"), schema.set_of("ac")),
        Implication(schema.set_of("a"), schema.set_of("abc")),
    ]
    for source, validated, expected in (
        (breaks_i, [], "i"),
        (breaks_ii, [], "ii"),
        (breaks_iii, blocked, "iii"),
    ):
        audit = validate_expert(source, schema, validated, sample3)
        if not any(v.condition == expected for v in audit.violations):
            failures.append(("mutant", expected, audit.violations))
    report("expert-rules", failures, work=audited, floor=5000)


def test_closure_law_suites():
    # two property suites of ten thousand random cases each
    rng = random.Random(2024_07)
    failures = []
    cases = 0
    for case in range(10_000):
        n = rng.randint(1, 12)
        rules = random_implications(rng, n, rng.randint(0, 8))
        a = rng.getrandbits(n)
        b = a | rng.getrandbits(n)
        ca, cb = close(rules, a), close(rules, b)
        from attrexplore import BOTTOM

        if ca is BOTTOM:
            if cb is not BOTTOM:
                failures.append((case, "monotonicity with the absorbing top"))
            continue
        if a & ~ca:
            failures.append((case, "not extensive"))
        if cb is not BOTTOM and ca & ~cb:
            failures.append((case, "not monotone"))
        if close(rules, ca) != ca:
            failures.append((case, "not idempotent"))
        cases += 1

    for case in range(10_000):
        n = rng.randint(1, 8)
        schema = make_schema(n)
        domain = ScriptedDomain(
            [rng.getrandbits(n) for _ in range(rng.randint(0, 6))], schema
        )
        x = rng.getrandbits(n)
        y = x | rng.getrandbits(n)
        cx = expert_closure(domain, x)
        if x & ~cx:
            failures.append((case, "expert closure not extensive"))
        if cx & ~expert_closure(domain, y):
            failures.append((case, "expert closure not monotone"))
        if expert_closure(domain, cx) != cx:
            failures.append((case, "expert closure not idempotent"))
        if not domain.answer(Implication(x, cx)).is_valid:
            failures.append((case, "closure not confirmed"))
        z = rng.getrandbits(n)
        if z & ~cx and domain.answer(Implication(x, z)).is_valid:
            failures.append((case, "something above the closure confirmed"))
        cases += 1
    report("closure-laws", failures, work=cases, floor=20_000)


def test_determinism_and_resumability(tmp_path):
    failures = []

    # byte-identical journals for repeated batch runs with a fixed seed
    schema_path = tmp_path / "schema.json"
    schema_path.write_text(json.dumps({"attributes": ["a", "b", "c", "d"], "background": []}))
    domain_path = tmp_path / "domain.json"
    domain_path.write_text(
        json.dumps(
            {
                "sets": [[], ["a", "b"], ["b", "c", "d"], ["a", "d"]],
                "mask": {"policy": "per-query-random", "seed": 99},
            }
        )
    )
    journals = []
    for run in ("one", "two"):
        out = tmp_path / run
        code = cli_main(
            [
                "explore",
                "--schema",
                str(schema_path),
                "--domain",
                str(domain_path),
                "--out",
                str(out),
            ]
        )
        if code != 0:
            failures.append(("batch run failed", run))
        journals.append((out / "journal.jsonl").read_bytes())
    if journals[0] != journals[1]:
        failures.append(("journals differ across identical runs",))

    # twenty random sessions: resume from every journal prefix and continue
    # to the identical final implication list (and the identical journal)
    rng = random.Random(2024_08)
    prefixes = 0
    for trial in range(20):
        n = rng.randint(2, 4)
        schema = make_schema(n)
        family = random_domain(rng, schema, 5)
        domain = ScriptedDomain(family, schema)
        path = tmp_path / f"session{trial}.jsonl"
        session = Session.create(schema, [], path, session_id=f"t{trial}")
        while session.status == "awaiting_answer":
            session.submit_answer(domain.answer(session.pending.implication), session.token)
        final_lists = session.base.lists()
        lines = path.read_text().splitlines()
        for cut in range(len(lines) + 1):
            prefix = tmp_path / f"s{trial}c{cut}.jsonl"
            prefix.write_text("\n".join(lines[:cut]) + ("\n" if cut else ""))
            resumed = Session.resume(prefix, schema)
            prefixes += 1
            while resumed.status == "awaiting_answer":
                resumed.submit_answer(
                    domain.answer(resumed.pending.implication), resumed.token
                )
            if resumed.base.lists() != final_lists:
                failures.append((trial, cut, "diverged after resume"))
                break
            if prefix.read_text().splitlines() != lines:
                failures.append((trial, cut, "journal continuation differs"))
                break
    report("determinism-and-resumability", failures, work=prefixes, floor=60)
