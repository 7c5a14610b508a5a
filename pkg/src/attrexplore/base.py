"""The exploration base: validated implications, partial examples, journal.

A partial example is an interval (lower, upper) standing for an unknown
admissible set between the two bounds. The base is a single-writer
structure; every mutation appends a journal entry, and replaying the
journal from an empty base reproduces the lists exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EnumerationLimitError, InconsistentBaseError, JournalError
from .logic import (
    BOTTOM,
    Implication,
    close,
    format_implication,
    minimal_models_above,
    models,
)
from .schema import DEFAULT_ENUM_LIMIT, CumulatedClause, ExplorationSchema, iter_indices

ACTORS = ("init", "expert", "engine", "normalizer")
ACTIONS = (
    "add_implication",
    "add_example",
    "tighten_example",
    "drop_example",
    "drop_implication",
)


@dataclass(frozen=True)
class PartialExample:
    """An interval (lower, upper): some admissible set lies between the bounds."""

    lower: int
    upper: int

    def __post_init__(self):
        if self.lower & ~self.upper:
            raise ValueError("lower bound of a partial example must be contained in its upper bound")

    def contains(self, x: int) -> bool:
        return self.lower & ~x == 0 and x & ~self.upper == 0


def refutes(ex: PartialExample, imp: Implication) -> bool:
    """True when every completion of the example falsifies the implication."""
    if imp.premise & ~ex.lower:
        return False
    if imp.conclusion is BOTTOM:
        return True
    return bool(imp.conclusion & ~ex.upper)


@dataclass(frozen=True)
class JournalEntry:
    """One recorded modification of the base.

    `payload` holds the affected implication or example (with before/after
    where a rewrite happened, and the list index where one is needed to
    replay the step).
    """

    seq: int
    actor: str
    action: str
    payload: dict
    note: str = ""


class ExplorationBase:
    """Validated implications plus partial examples, with an append-only journal."""

    def __init__(self, schema: ExplorationSchema):
        self.schema = schema
        self.implications: list[Implication] = []
        self.examples: list[PartialExample] = []
        self.journal: list[JournalEntry] = []

    def _log(self, actor: str, action: str, payload: dict, note: str) -> JournalEntry:
        entry = JournalEntry(len(self.journal) + 1, actor, action, payload, note)
        self.journal.append(entry)
        return entry

    def add_implication(self, imp: Implication, actor: str, note: str = "") -> JournalEntry:
        self.implications.append(imp)
        return self._log(actor, "add_implication", {"implication": imp}, note)

    def add_example(self, ex: PartialExample, actor: str, note: str = "") -> JournalEntry:
        self.examples.append(ex)
        return self._log(actor, "add_example", {"example": ex}, note)

    def tighten_example(self, index: int, after: PartialExample, actor: str, note: str = "") -> JournalEntry:
        before = self.examples[index]
        self.examples[index] = after
        return self._log(
            actor,
            "tighten_example",
            {"index": index, "before": before, "after": after},
            note,
        )

    def drop_example(self, index: int, actor: str, note: str = "") -> JournalEntry:
        ex = self.examples.pop(index)
        return self._log(actor, "drop_example", {"index": index, "example": ex}, note)

    def drop_implication(self, index: int, actor: str, note: str = "") -> JournalEntry:
        imp = self.implications.pop(index)
        return self._log(actor, "drop_implication", {"index": index, "implication": imp}, note)

    def apply_entry(self, entry: JournalEntry) -> None:
        """Replay one recorded entry, verifying it matches the current state."""
        if self.journal and entry.seq <= self.journal[-1].seq:
            raise JournalError("journal sequence numbers must increase", seq=entry.seq)
        action, payload = entry.action, entry.payload
        try:
            if action == "add_implication":
                self.implications.append(payload["implication"])
            elif action == "add_example":
                self.examples.append(payload["example"])
            elif action == "tighten_example":
                idx = payload["index"]
                if not 0 <= idx < len(self.examples) or self.examples[idx] != payload["before"]:
                    raise JournalError("tighten_example does not match the replayed state", seq=entry.seq)
                self.examples[idx] = payload["after"]
            elif action == "drop_example":
                idx = payload["index"]
                if not 0 <= idx < len(self.examples) or self.examples[idx] != payload["example"]:
                    raise JournalError("drop_example does not match the replayed state", seq=entry.seq)
                self.examples.pop(idx)
            elif action == "drop_implication":
                idx = payload["index"]
                if not 0 <= idx < len(self.implications) or self.implications[idx] != payload["implication"]:
                    raise JournalError("drop_implication does not match the replayed state", seq=entry.seq)
                self.implications.pop(idx)
            else:
                raise JournalError(f"unknown action {action!r}", seq=entry.seq)
        except KeyError as exc:
            raise JournalError(f"entry payload misses field {exc}", seq=entry.seq) from exc
        self.journal.append(entry)

    def lists(self) -> tuple[tuple[Implication, ...], tuple[PartialExample, ...]]:
        """Immutable snapshot of the two lists, for comparisons."""
        return tuple(self.implications), tuple(self.examples)


def find_completion(
    ex: PartialExample,
    implications: Sequence[Implication],
    background: Sequence[CumulatedClause],
    schema: ExplorationSchema,
) -> int | None:
    """A witness set inside the example's interval respecting everything, or None.

    Complete: returns a witness exactly when one exists. The search closes
    the lower bound under the implications and branches over clause
    disjuncts, pruning branches that escape the upper bound.
    """
    for model in minimal_models_above(implications, background, ex.lower, upper=ex.upper):
        return model
    return None


def is_consistent(base: ExplorationBase, schema: ExplorationSchema | None = None) -> bool:
    """Does every partial example admit a compatible completion?"""
    schema = schema or base.schema
    return all(
        find_completion(ex, base.implications, schema.background, schema) is not None
        for ex in base.examples
    )


def normalize(base: ExplorationBase, schema: ExplorationSchema | None = None) -> ExplorationBase:
    """Tighten the partial examples without changing what they express.

    Three rewrite rules run to a fixpoint, each journaled by the normalizer:
      1. a lower bound absorbs the conclusion of any implication whose
         premise it contains (raising an inconsistency error if that would
         escape the upper bound);
      2. an attribute is removed from an upper bound when adding it to the
         lower bound would force, through the implications, something the
         upper bound excludes;
      3. an example is dropped when another example is at least as tight
         (on identical intervals the later-added one survives).

    Rule 1 runs to a fixpoint per example, then rule 2 (scanning attributes
    in ascending index order), then rule 3 globally; the schedule reaches a
    global fixpoint in one round, which keeps journals deterministic.
    """
    schema = schema or base.schema
    impls = base.implications
    for idx in range(len(base.examples)):
        ex = base.examples[idx]
        lower = ex.lower
        pending = list(impls)
        progressed = True
        while progressed and pending:
            progressed = False
            remaining = []
            for imp in pending:
                if imp.premise & ~lower == 0:
                    if imp.conclusion is BOTTOM:
                        raise InconsistentBaseError(
                            "example lower bound triggers an indefinite implication: "
                            f"{_describe(ex, imp, schema)}",
                            example=ex,
                            implication=imp,
                        )
                    if imp.conclusion & ~ex.upper:
                        raise InconsistentBaseError(
                            "tightening the lower bound escapes the upper bound, "
                            f"the base is inconsistent: {_describe(ex, imp, schema)}",
                            example=ex,
                            implication=imp,
                        )
                    if imp.conclusion & ~lower:
                        lower |= imp.conclusion
                        progressed = True
                else:
                    remaining.append(imp)
            pending = remaining
        if lower != ex.lower:
            base.tighten_example(idx, PartialExample(lower, ex.upper), "normalizer", note="rule1")
            ex = base.examples[idx]
        upper = ex.upper
        while True:
            removed = None
            for v in iter_indices(upper & ~lower):
                forced = close(impls, lower | (1 << v))
                if forced is BOTTOM or forced & ~upper:
                    removed = v
                    break
            if removed is None:
                break
            upper &= ~(1 << removed)
        if upper != ex.upper:
            base.tighten_example(idx, PartialExample(lower, upper), "normalizer", note="rule2")

    examples = base.examples
    dropped = []
    for i, e1 in enumerate(examples):
        for j, e2 in enumerate(examples):
            if i == j:
                continue
            tighter = e1.lower & ~e2.lower == 0 and e2.upper & ~e1.upper == 0
            if tighter and (e1 != e2 or j > i):
                dropped.append(i)
                break
    for i in reversed(dropped):
        base.drop_example(i, "normalizer", note="rule3")
    return base


def _describe(ex: PartialExample, imp: Implication, schema: ExplorationSchema) -> str:
    return (
        f"example ({schema.names(ex.lower)}, {schema.names(ex.upper)}) "
        f"against implication {format_implication(imp, schema)}"
    )


def _conclusion_within(c1, c2) -> bool:
    # comparison in the order extended with BOTTOM on top
    if c2 is BOTTOM:
        return True
    if c1 is BOTTOM:
        return False
    return c1 & ~c2 == 0


def better_focused(b1: ExplorationBase, b2: ExplorationBase) -> bool:
    """Syntactic comparison: every item of b2 has a tighter counterpart in b1."""
    for imp2 in b2.implications:
        if not any(
            i1.premise & ~imp2.premise == 0 and _conclusion_within(imp2.conclusion, i1.conclusion)
            for i1 in b1.implications
        ):
            return False
    for e2 in b2.examples:
        if not any(
            e2.lower & ~e1.lower == 0 and e1.upper & ~e2.upper == 0 for e1 in b1.examples
        ):
            return False
    return True


def more_expressive(
    b1: ExplorationBase,
    b2: ExplorationBase,
    schema: ExplorationSchema | None = None,
    limit: int = DEFAULT_ENUM_LIMIT,
) -> bool:
    """Is every realizer of b1 also a realizer of b2?

    A realizer of a base is read as a family of sets, each respecting the
    implications and the background, that contains a completion for every
    example. A desk-scale oracle over full enumeration; refuses universes
    larger than `limit` attributes.

    Characterization used: an inconsistent b1 has no realizers, so the
    comparison is vacuously true. Otherwise every realizer of b1 must stay
    within b2's models (checked on the largest realizer), and every example
    of b2 must be completed by every choice of completions for b1, which
    holds exactly when some b1 example has all its completions inside the
    b2 example's interval.
    """
    schema = schema or b1.schema
    if schema.n > limit:
        raise EnumerationLimitError(
            f"universe of {schema.n} attributes exceeds the enumeration guard ({limit})"
        )
    if not is_consistent(b1, schema):
        return True
    models1 = models(b1.implications, schema.background, schema, limit)
    models2 = set(models(b2.implications, schema.background, schema, limit))
    if any(x not in models2 for x in models1):
        return False
    for e2 in b2.examples:
        found = False
        for e1 in b1.examples:
            completions = [x for x in models1 if e1.contains(x)]
            if completions and all(e2.contains(x) for x in completions):
                found = True
                break
        if not found:
            return False
    return True
