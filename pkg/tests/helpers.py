"""Shared oracles and random generators for the test suite.

The oracles are deliberately structured differently from the production
code: full enumeration and repeated whole-list scans instead of branch
searches and worklists, so the two sides stay independent.
"""

from __future__ import annotations

import random
import string

from attrexplore import (
    BOTTOM,
    CumulatedClause,
    ExplorationBase,
    ExplorationSchema,
    Implication,
    PartialExample,
)

LETTERS = string.ascii_lowercase


def make_schema(n: int, clauses: tuple[CumulatedClause, ...] = ()) -> ExplorationSchema:
    return ExplorationSchema(LETTERS[:n], clauses)


def naive_close(implications, start):
    """Fixpoint by rescanning the whole list until nothing changes."""
    cur = start
    while True:
        nxt = cur
        for imp in implications:
            if imp.premise & ~cur == 0:
                if imp.conclusion is BOTTOM:
                    return BOTTOM
                nxt |= imp.conclusion
        if nxt == cur:
            return cur
        cur = nxt


def is_model(x: int, implications, clauses) -> bool:
    for imp in implications:
        if imp.premise & ~x == 0:
            if imp.conclusion is BOTTOM or imp.conclusion & ~x:
                return False
    for cl in clauses:
        if cl.premise & ~x == 0 and not any(d & ~x == 0 for d in cl.disjuncts):
            return False
    return True


def brute_models(implications, clauses, n: int) -> list[int]:
    return [x for x in range(1 << n) if is_model(x, implications, clauses)]


def brute_completions(lower: int, upper: int, implications, clauses) -> list[int]:
    """Every model between the bounds, by submask enumeration."""
    out = []
    free = upper & ~lower
    sub = free
    while True:
        d = lower | sub
        if is_model(d, implications, clauses):
            out.append(d)
        if sub == 0:
            break
        sub = (sub - 1) & free
    return out


def clop_from_domain(sets, full_mask: int):
    """Closure operator of the intersection system generated by the family."""

    def clop(x: int) -> int:
        out = full_mask
        for d in sets:
            if x & ~d == 0:
                out &= d
        return out

    return clop


def dg_base(clop, n: int) -> list[Implication]:
    """Minimum implication base of a closure operator, by direct definition.

    Processes subsets by cardinality; a set is a premise exactly when it is
    not closed but absorbs the closure of every smaller premise it contains.
    """
    pseudo: list[int] = []
    for x in sorted(range(1 << n), key=lambda m: (m.bit_count(), m)):
        cx = clop(x)
        if cx == x:
            continue
        if all(clop(q) & ~x == 0 for q in pseudo if q != x and q & ~x == 0):
            pseudo.append(x)
    return [Implication(p, clop(p)) for p in pseudo]


def brute_irreducible(model_list, full_mask: int) -> list[int]:
    """Models that are not the intersection of the models strictly above them."""
    out = []
    for x in model_list:
        larger = [y for y in model_list if y != x and x & ~y == 0]
        if not larger:
            out.append(x)
            continue
        meet = full_mask
        for y in larger:
            meet &= y
        if meet != x:
            out.append(x)
    return out


def lectic_rank(x: int, n: int) -> int:
    """Integer rank of a subset in lectic order (first attribute most significant)."""
    rank = 0
    for i in range(n):
        if x & (1 << i):
            rank |= 1 << (n - 1 - i)
    return rank


def random_implications(rng: random.Random, n: int, count: int) -> list[Implication]:
    out = []
    for _ in range(count):
        premise = rng.getrandbits(n) & rng.getrandbits(n)
        conclusion = rng.getrandbits(n)
        out.append(Implication(premise, conclusion))
    return out


def random_clause(rng: random.Random, n: int, allow_indefinite: bool = False) -> CumulatedClause:
    premise = rng.getrandbits(n) & rng.getrandbits(n)
    choices = [1, 1, 2, 2]
    if allow_indefinite:
        choices.append(0)
    k = rng.choice(choices)
    disjuncts = []
    for _ in range(k):
        d = rng.getrandbits(n)
        disjuncts.append(d if d else 1 << rng.randrange(n))
    return CumulatedClause(premise, tuple(disjuncts))


def random_consistent_base(
    rng: random.Random,
    schema: ExplorationSchema,
    imp_count: int,
    example_count: int,
) -> ExplorationBase:
    """A base whose examples are widened around actual models, so it is consistent."""
    n = schema.n
    implications = random_implications(rng, n, imp_count)
    model_pool = brute_models(implications, schema.background, n)
    base = ExplorationBase(schema)
    for imp in implications:
        base.add_implication(imp, "init", note="seed")
    if not model_pool:
        return base
    for _ in range(example_count):
        d = rng.choice(model_pool)
        lower = d & rng.getrandbits(n)
        upper = d | (rng.getrandbits(n) & ~d & schema.full_mask)
        base.add_example(PartialExample(lower, upper), "init", note="seed")
    return base


def random_domain(rng: random.Random, schema: ExplorationSchema, max_size: int) -> list[int]:
    """A random family of background-compatible sets, construction order fixed."""
    candidates = [
        x
        for x in range(schema.full_mask + 1)
        if all(
            cl.premise & ~x or any(d & ~x == 0 for d in cl.disjuncts)
            for cl in schema.background
        )
    ]
    if not candidates:
        return []
    size = rng.randint(0, min(max_size, len(candidates)))
    return rng.sample(candidates, size)


def all_implications(n: int) -> list[Implication]:
    """Every implication over n attributes with premise contained in conclusion."""
    out = []
    for premise in range(1 << n):
        free = ((1 << n) - 1) & ~premise
        extra = free
        while True:
            out.append(Implication(premise, premise | extra))
            if extra == 0:
                break
            extra = (extra - 1) & free
    return out
