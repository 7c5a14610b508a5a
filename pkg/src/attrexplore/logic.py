"""Implicational and clausal inference: closures, entailment, model enumeration.

All operations are pure functions of their inputs and safe to call
concurrently. Implication lists are plain Python lists of `Implication`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import EnumerationLimitError
from .schema import (
    DEFAULT_ENUM_LIMIT,
    CumulatedClause,
    ExplorationSchema,
    satisfies_clause,
)


class _Bottom:
    """Absorbing top element: no admissible set lies above the premise."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "BOTTOM"


#: Conclusion marker for indefinite implications, and the value `close`
#: returns when a premise cannot be contained in any admissible set.
BOTTOM = _Bottom()

IMPLICATIONS_ONLY = "implications_only"
WITH_BACKGROUND = "with_background"


@dataclass(frozen=True)
class Implication:
    """A pair premise -> conclusion, stored with premise contained in conclusion.

    The conclusion may be BOTTOM, meaning the premise is not contained in
    any admissible set.
    """

    premise: int
    conclusion: int | _Bottom

    def __post_init__(self):
        if self.conclusion is not BOTTOM:
            object.__setattr__(self, "conclusion", self.conclusion | self.premise)


def respects(x: int, imp: Implication) -> bool:
    """True when the set is a model of the implication."""
    if imp.premise & ~x:
        return True
    if imp.conclusion is BOTTOM:
        return False
    return imp.conclusion & ~x == 0


def format_implication(imp: Implication, schema: ExplorationSchema) -> str:
    """Human-readable rendering; the conclusion shows only what the premise adds."""
    left = " ".join(schema.names(imp.premise)) or "{}"
    if imp.conclusion is BOTTOM:
        return f"{left} -> FALSE"
    added = imp.conclusion & ~imp.premise
    right = " ".join(schema.names(added)) or "{}"
    return f"{left} -> {right}"


def close(
    implications: Sequence[Implication],
    start: int,
    schema: ExplorationSchema | None = None,
    use_background: bool = False,
) -> int | _Bottom:
    """Least fixpoint of firing every implication whose premise is contained.

    Returns BOTTOM when a fired implication concludes BOTTOM. With
    `use_background` the result is additionally BOTTOM when no model of the
    implications together with the schema's background clauses contains the
    fixpoint; otherwise background clauses are ignored entirely.
    """
    cur = start
    pending = list(implications)
    progressed = True
    while progressed and pending:
        progressed = False
        remaining = []
        for imp in pending:
            if imp.premise & ~cur == 0:
                # fired implications never need a second look
                if imp.conclusion is BOTTOM:
                    return BOTTOM
                if imp.conclusion & ~cur:
                    cur |= imp.conclusion
                    progressed = True
            else:
                remaining.append(imp)
        pending = remaining
    if use_background:
        if schema is None:
            raise ValueError("use_background requires the schema")
        for _ in minimal_models_above(implications, schema.background, cur):
            return cur
        return BOTTOM
    return cur


def minimal_models_above(
    implications: Sequence[Implication],
    background: Sequence[CumulatedClause],
    start: int,
    upper: int | None = None,
) -> Iterator[int]:
    """Yield the minimal sets above `start` respecting implications and clauses.

    Every model above `start` (and inside `upper` when given) contains one of
    the yielded sets, and each yielded set is itself a model. The search
    branches over clause disjuncts, so it is exponential only in the number
    of background clauses.
    """
    seen: set[int] = set()

    def walk(bits: int) -> Iterator[int]:
        cur = close(implications, bits)
        if cur is BOTTOM or cur in seen:
            return
        seen.add(cur)
        if upper is not None and cur & ~upper:
            return
        for clause in background:
            if clause.premise & ~cur == 0 and not any(d & ~cur == 0 for d in clause.disjuncts):
                for d in clause.disjuncts:
                    yield from walk(cur | d)
                return
        yield cur

    yield from walk(start)


def entails(
    implications: Sequence[Implication],
    background: Sequence[CumulatedClause],
    imp: Implication,
    mode: str = IMPLICATIONS_ONLY,
) -> bool:
    """Does the implication follow from the list (and clauses, per mode)?

    implications_only ignores the clauses: sound, but it may miss
    consequences that need clause reasoning. with_background decides
    entailment over all models of implications plus clauses.
    """
    if mode == IMPLICATIONS_ONLY:
        closure = close(implications, imp.premise)
        if closure is BOTTOM:
            return True
        if imp.conclusion is BOTTOM:
            return False
        return imp.conclusion & ~closure == 0
    if mode == WITH_BACKGROUND:
        for model in minimal_models_above(implications, background, imp.premise):
            if imp.conclusion is BOTTOM or imp.conclusion & ~model:
                return False
        return True
    raise ValueError(f"unknown entailment mode {mode!r}")


def models(
    implications: Sequence[Implication],
    background: Sequence[CumulatedClause],
    schema: ExplorationSchema,
    limit: int = DEFAULT_ENUM_LIMIT,
) -> list[int]:
    """All sets respecting every implication and clause, by full enumeration.

    A desk-scale oracle: refuses universes larger than `limit` attributes.
    """
    if schema.n > limit:
        raise EnumerationLimitError(
            f"universe of {schema.n} attributes exceeds the enumeration guard ({limit})"
        )
    out = []
    for x in range(schema.full_mask + 1):
        if all(respects(x, imp) for imp in implications) and all(
            satisfies_clause(x, c) for c in background
        ):
            out.append(x)
    return out


def remove_redundant(implications: Iterable[Implication]) -> list[Implication]:
    """Drop every implication already entailed by the remaining ones.

    Scans in list order, so the result is left-biased: an earlier item is
    removed when the rest still entails it.
    """
    kept = list(implications)
    i = 0
    while i < len(kept):
        rest = kept[:i] + kept[i + 1 :]
        if entails(rest, (), kept[i], IMPLICATIONS_ONLY):
            kept.pop(i)
        else:
            i += 1
    return kept
