"""The query engine and the top-level exploration loop.

Questions have the form A -> A+?, where A is closed under the validated
implications and A+? is the largest conclusion no stored partial example
refutes. Closed premises are enumerated in lectic order; the loop ends
when no closed set admits a question, at which point the implications that
no example refutes are exactly the consequences of the validated list.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .base import (
    ExplorationBase,
    PartialExample,
    find_completion,
    normalize,
    refutes,
)
from .errors import ExpertContractError, ExplorationError, InconsistentBaseError
from .expert import ExpertAnswer
from .journal import JournalWriter
from .logic import BOTTOM, Implication, close, format_implication, models
from .schema import DEFAULT_ENUM_LIMIT, CumulatedClause, ExplorationSchema

logger = logging.getLogger(__name__)

TERMINATED_COMPLETE = "complete"
TERMINATED_BUDGET = "budget_exhausted"


@dataclass(frozen=True)
class Question:
    """A proposed implication together with its witness premise.

    The rationale records the set A that was closed under the validated
    implications yet had A+? above it when the question was issued.
    """

    implication: Implication
    rationale: int


@dataclass
class ExplorationResult:
    final_base: ExplorationBase
    validated: list[Implication]
    question_count: int
    terminated: str


def plus_query(examples: Sequence[PartialExample], a: int, schema: ExplorationSchema) -> int:
    """Intersection of upper bounds over examples whose lower bound contains a.

    The full attribute set when no example qualifies: the largest conclusion
    such that no stored example refutes the implication from a.
    """
    out = schema.full_mask
    for ex in examples:
        if a & ~ex.lower == 0:
            out &= ex.upper
    return out


def lectic_next_closed(
    implications: Sequence[Implication],
    a: int | None,
    schema: ExplorationSchema,
) -> int | None:
    """The next closed set after `a` in lectic order, or None past the top.

    Passing None seeds the enumeration: the closure of the empty set comes
    back first. Lectic order compares characteristic vectors with the
    first declared attribute as the most significant position; candidates
    whose closure collapses to BOTTOM are skipped.
    """
    if a is None:
        first = close(implications, 0)
        return None if first is BOTTOM else first
    for i in range(schema.n - 1, -1, -1):
        bit = 1 << i
        if a & bit:
            continue
        below = bit - 1
        candidate = close(implications, (a & below) | bit)
        if candidate is BOTTOM:
            continue
        if (candidate & below) == (a & below):
            return candidate
    return None


def next_question(
    base: ExplorationBase,
    schema: ExplorationSchema | None = None,
    start: int | None = None,
) -> Question | None:
    """The question for the lectically smallest closed set still undecided.

    Returns None when every closed set A already has A+? equal to A; the
    base is then complete. `start` resumes the scan strictly after a
    premise already handled; the result is the same as a scan from the
    beginning whenever every earlier closed set is already decided, which
    the exploration loop maintains.
    """
    schema = schema or base.schema
    impls = base.implications
    a = lectic_next_closed(impls, start, schema)
    while a is not None:
        plus = plus_query(base.examples, a, schema)
        if plus != a:
            return Question(Implication(a, plus), rationale=a)
        a = lectic_next_closed(impls, a, schema)
    return None


def answer_problem(
    base: ExplorationBase,
    schema: ExplorationSchema,
    question: Question,
    answer: ExpertAnswer,
) -> tuple[str, str] | None:
    """Why an answer to the pending question must be rejected, or None.

    A confirmation is rejected when adding the implication would leave some
    example without a compatible completion (a counter-example is then
    required). A counter-example is rejected when it does not refute the
    question, or admits no completion under the validated implications and
    the background.
    """
    if answer.is_valid:
        trial = base.implications + [question.implication]
        for ex in base.examples:
            if find_completion(ex, trial, schema.background, schema) is None:
                return (
                    "consistency",
                    "confirming this implication would leave the example "
                    f"({schema.names(ex.lower)}, {schema.names(ex.upper)}) without a "
                    "compatible completion; a counter-example is required",
                )
        return None
    ex = answer.example
    if not refutes(ex, question.implication):
        return (
            "condition_i",
            f"({schema.names(ex.lower)}, {schema.names(ex.upper)}) does not refute "
            f"{format_implication(question.implication, schema)}",
        )
    if find_completion(ex, base.implications, schema.background, schema) is None:
        return (
            "condition_iii",
            f"({schema.names(ex.lower)}, {schema.names(ex.upper)}) admits no completion "
            "compatible with the validated implications and the background",
        )
    return None


def explore(
    schema: ExplorationSchema,
    expert_source: Callable[[Implication], ExpertAnswer],
    initial_examples: Iterable[PartialExample] = (),
    budget: int | None = None,
    journal_writer: JournalWriter | None = None,
) -> ExplorationResult:
    """Drive the ask/answer loop until no question remains or the budget ends.

    Initial examples must be consistent on their own. Each accepted answer
    is journaled and followed by normalization. A rejected answer is asked
    again once; a source repeating a rejected answer breaks the expert
    contract and raises.
    """
    base = ExplorationBase(schema)
    for ex in initial_examples:
        if find_completion(ex, [], schema.background, schema) is None:
            raise InconsistentBaseError(
                f"initial example ({schema.names(ex.lower)}, {schema.names(ex.upper)}) "
                "has no background-compatible completion",
                example=ex,
            )
        base.add_example(ex, "init", note="initial example")
    normalize(base, schema)
    if journal_writer is not None:
        journal_writer.flush(base)

    asked: set[tuple[int, object]] = set()
    count = 0
    cursor: int | None = None
    previous_premise: int | None = None
    terminated = TERMINATED_COMPLETE
    while True:
        question = next_question(base, schema, start=cursor)
        if question is None:
            break
        if budget is not None and count >= budget:
            terminated = TERMINATED_BUDGET
            break
        premise = question.implication.premise
        if previous_premise is not None and _lectic_less(premise, previous_premise, schema):
            # not expected with this question selection; log, never fail
            logger.warning(
                "question premise %s lectically precedes the previous premise %s",
                schema.names(premise),
                schema.names(previous_premise),
            )
        previous_premise = premise
        key = (premise, question.implication.conclusion)
        if key in asked:
            raise ExplorationError(
                f"question {format_implication(question.implication, schema)} repeated; "
                "the loop is not progressing"
            )
        asked.add(key)

        answer = expert_source(question.implication)
        count += 1
        problem = answer_problem(base, schema, question, answer)
        if problem is not None:
            answer = expert_source(question.implication)
            count += 1
            second = answer_problem(base, schema, question, answer)
            if second is not None:
                raise ExpertContractError(f"{second[0]}: {second[1]}")
        if answer.is_valid:
            base.add_implication(question.implication, "expert", note="validated")
            cursor = premise
        else:
            base.add_example(answer.example, "expert", note="counter-example")
        normalize(base, schema)
        if journal_writer is not None:
            journal_writer.flush(base)

    return ExplorationResult(base, list(base.implications), count, terminated)


def _lectic_less(a: int, b: int, schema: ExplorationSchema) -> bool:
    diff = a ^ b
    if diff == 0:
        return False
    low = diff & -diff
    return bool(b & low)


def minimal_realizer_report(
    implications: Sequence[Implication],
    background: Sequence[CumulatedClause],
    schema: ExplorationSchema,
    limit: int = DEFAULT_ENUM_LIMIT,
) -> list[int]:
    """The intersection-irreducible models of the implications plus background.

    A model is reported when it is not the intersection of the models
    strictly above it; maximal models (in particular the full set, when it
    is a model) count as irreducible. These are exactly the completions no
    realizer can do without.
    """
    all_models = models(implications, background, schema, limit)
    out = []
    for x in all_models:
        larger = [y for y in all_models if y != x and x & ~y == 0]
        if not larger:
            out.append(x)
            continue
        meet = schema.full_mask
        for y in larger:
            meet &= y
        if meet != x:
            out.append(x)
    return out
