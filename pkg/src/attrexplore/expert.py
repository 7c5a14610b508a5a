"""Domain experts: scripted answer sources, masking, and the answer-source audit.

An answer source is any callable mapping an Implication to an ExpertAnswer.
A well-behaved source confirms exactly the implications that hold in some
fixed family of admissible sets and otherwise discloses a partial
counter-example that the posed implication is refuted by.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .base import PartialExample, find_completion, refutes
from .errors import ExpertContractError, SchemaError
from .logic import BOTTOM, Implication, close, format_implication, respects
from .schema import ExplorationSchema, compatible_with_background

MASK_NONE = "none"
MASK_FIXED = "fixed-hide-set"
MASK_RANDOM = "per-query-random"


@dataclass(frozen=True)
class ExpertAnswer:
    """Either a confirmation (example is None) or a partial counter-example."""

    example: PartialExample | None

    @property
    def is_valid(self) -> bool:
        return self.example is None


#: The confirmation answer.
VALID = ExpertAnswer(None)


@dataclass(frozen=True)
class MaskPolicy:
    """Which attributes of a disclosed counter-example stay undisclosed.

    `none` discloses the full set. `fixed-hide-set` always hides the same
    attributes. `per-query-random` draws a hide set reproducibly from the
    seed and the query, so identical queries mask identically across runs.
    """

    kind: str = MASK_NONE
    hide: int = 0
    seed: int | None = None

    def hide_bits(self, imp: Implication, schema: ExplorationSchema) -> int:
        if self.kind == MASK_NONE:
            return 0
        if self.kind == MASK_FIXED:
            return self.hide & schema.full_mask
        if self.kind == MASK_RANDOM:
            if schema.n == 0:
                return 0
            conclusion = "F" if imp.conclusion is BOTTOM else str(imp.conclusion)
            rng = random.Random(f"{self.seed}:{imp.premise}:{conclusion}")
            return rng.getrandbits(schema.n)
        raise SchemaError(f"unknown mask policy {self.kind!r}")


def mask(d: int, imp: Implication, policy: MaskPolicy, schema: ExplorationSchema) -> PartialExample:
    """Partially disclose a refuting set as an interval around it.

    Hidden attributes leave the lower bound and enter the upper bound,
    except that the premise stays disclosed and one conclusion attribute
    missing from the set is kept out of the upper bound, so the result
    still refutes the implication and still has the set as a completion.
    """
    if imp.premise & ~d or (imp.conclusion is not BOTTOM and imp.conclusion & ~d == 0):
        raise ExpertContractError(
            f"mask requires a set refuting the implication {format_implication(imp, schema)}"
        )
    hidden = policy.hide_bits(imp, schema) & schema.full_mask
    lower = (d & ~hidden) | imp.premise
    if imp.conclusion is BOTTOM:
        upper = d | hidden
    else:
        missing = imp.conclusion & ~d
        witness = missing & -missing
        upper = d | (hidden & ~witness)
    return PartialExample(lower, upper)


class ScriptedDomain:
    """An answer source built from an explicit finite family of admissible sets.

    Confirms an implication exactly when every member respects it; otherwise
    discloses the first refuting member (construction order) through the
    mask policy. Members must satisfy the schema's background clauses.
    """

    def __init__(
        self,
        sets: Iterable[int],
        schema: ExplorationSchema,
        mask_policy: MaskPolicy = MaskPolicy(),
    ):
        self.schema = schema
        self.mask_policy = mask_policy
        self.sets: list[int] = []
        for s in sets:
            if not compatible_with_background(s, schema):
                raise SchemaError(
                    f"domain member {schema.names(s)} violates a background clause"
                )
            self.sets.append(s)

    def answer(self, imp: Implication) -> ExpertAnswer:
        return scripted_answer(self, imp)

    __call__ = answer

    def to_dict(self) -> dict:
        mask_doc: dict = {"policy": self.mask_policy.kind}
        if self.mask_policy.kind == MASK_FIXED:
            mask_doc["hide"] = self.schema.names(self.mask_policy.hide)
        if self.mask_policy.seed is not None:
            mask_doc["seed"] = self.mask_policy.seed
        return {"sets": [self.schema.names(s) for s in self.sets], "mask": mask_doc}


def scripted_answer(dom: ScriptedDomain, imp: Implication) -> ExpertAnswer:
    """Confirm, or disclose the first member of the domain refuting the query."""
    for d in dom.sets:
        if not respects(d, imp):
            return ExpertAnswer(mask(d, imp, dom.mask_policy, dom.schema))
    return VALID


def expert_closure(dom: ScriptedDomain, x: int) -> int:
    """Largest conclusion the domain confirms above x.

    The meet of all members containing x; the full attribute set when no
    member does.
    """
    out = dom.schema.full_mask
    for d in dom.sets:
        if x & ~d == 0:
            out &= d
    return out


@dataclass(frozen=True)
class Violation:
    """One audited answer that broke an expert rule (i, ii or iii)."""

    condition: str
    query: Implication
    example: PartialExample | None = None
    detail: str = ""


@dataclass
class ExpertReport:
    checked_queries: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations


def validate_expert(
    answer_source: Callable[[Implication], ExpertAnswer],
    schema: ExplorationSchema,
    validated: Sequence[Implication],
    sample: Sequence[Implication],
) -> ExpertReport:
    """Audit an answer source against the three expert rules.

    (i) a counter-example must refute the query it answers; (ii) no
    returned counter-example may refute a query the source confirmed,
    checked pairwise over the sample; (iii) every counter-example must
    admit a completion compatible with `validated` and the background.
    """
    report = ExpertReport(len(sample))
    confirmed: list[Implication] = []
    counter: list[tuple[Implication, PartialExample]] = []
    for query in sample:
        answer = answer_source(query)
        if answer.is_valid:
            confirmed.append(query)
            continue
        ex = answer.example
        if not refutes(ex, query):
            report.violations.append(
                Violation("i", query, ex, "answer does not refute the posed implication")
            )
        if find_completion(ex, validated, schema.background, schema) is None:
            report.violations.append(
                Violation("iii", query, ex, "counter-example admits no compatible completion")
            )
        counter.append((query, ex))
    seen_pairs: set[tuple[int, object, PartialExample]] = set()
    for good in confirmed:
        for query, ex in counter:
            key = (good.premise, good.conclusion, ex)
            if key in seen_pairs:
                continue
            if refutes(ex, good):
                seen_pairs.add(key)
                report.violations.append(
                    Violation(
                        "ii",
                        query,
                        ex,
                        f"counter-example refutes the confirmed implication "
                        f"{format_implication(good, schema)}",
                    )
                )
    return report


def normalize_expert_answer(ans: ExpertAnswer, theory: Sequence[Implication]) -> ExpertAnswer:
    """Lift a counter-example's lower bound to its closure under the theory.

    Confirmations pass through. The rewritten answer refutes the same
    queries the original did and refutes nothing the theory entails.
    """
    if ans.is_valid:
        return ans
    ex = ans.example
    closed = close(theory, ex.lower)
    if closed is BOTTOM or closed & ~ex.upper:
        raise ExpertContractError(
            "counter-example has no completion respecting the theory it was answered under"
        )
    return ExpertAnswer(PartialExample(closed, ex.upper))


def load_domain(
    path,
    schema: ExplorationSchema,
    mask_override: MaskPolicy | None = None,
) -> ScriptedDomain:
    """Read a scripted-domain file: member sets by name plus mask configuration."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"domain file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "sets" not in data:
        raise SchemaError("domain document must be an object with a 'sets' list")
    sets = [schema.set_of(names) for names in data["sets"]]
    if mask_override is not None:
        policy = mask_override
    else:
        policy = parse_mask_config(data.get("mask", {}), schema)
    return ScriptedDomain(sets, schema, policy)


def parse_mask_config(doc: dict, schema: ExplorationSchema) -> MaskPolicy:
    kind = doc.get("policy", MASK_NONE)
    if kind == MASK_NONE:
        return MaskPolicy()
    if kind == MASK_FIXED:
        return MaskPolicy(MASK_FIXED, hide=schema.set_of(doc.get("hide", [])))
    if kind == MASK_RANDOM:
        if "seed" not in doc:
            raise SchemaError("per-query-random masking needs a seed")
        return MaskPolicy(MASK_RANDOM, seed=int(doc["seed"]))
    raise SchemaError(f"unknown mask policy {kind!r}")
