"""Exploration schema: the attribute universe and its background knowledge.

Attribute sets are represented as int bitmasks throughout the package:
attribute index i corresponds to bit ``1 << i``. Names appear only at I/O
boundaries (schema files, journals, the wire protocol).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import SchemaError, SchemaMismatchError

#: Default guard for operations that enumerate the whole power set.
DEFAULT_ENUM_LIMIT = 20


def iter_indices(bits: int) -> Iterator[int]:
    """Yield the attribute indices contained in a bitmask, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def popcount(bits: int) -> int:
    return bits.bit_count()


@dataclass(frozen=True)
class CumulatedClause:
    """A constraint ``premise -> disjunct_1 or ... or disjunct_k``.

    Every admissible set containing the premise must contain at least one
    of the disjuncts in full. ``k == 0`` states that no admissible set
    contains the premise at all (the indefinite form).
    """

    premise: int
    disjuncts: tuple[int, ...] = ()


class ExplorationSchema:
    """The universe under exploration: named attributes plus background clauses.

    Immutable once constructed; every downstream structure indexes into it.
    Attribute names map to indices in declaration order.
    """

    __slots__ = ("attributes", "background", "_index")

    def __init__(self, attributes: Iterable[str], background: Iterable[CumulatedClause] = ()):
        attrs = tuple(attributes)
        if len(set(attrs)) != len(attrs):
            raise SchemaError("attribute names must be unique")
        if any(not isinstance(a, str) or not a for a in attrs):
            raise SchemaError("attribute names must be non-empty strings")
        self.attributes = attrs
        self._index = {name: i for i, name in enumerate(attrs)}
        clauses = tuple(background)
        full = (1 << len(attrs)) - 1
        for clause in clauses:
            masks = (clause.premise, *clause.disjuncts)
            if any(m & ~full for m in masks):
                raise SchemaMismatchError("background clause uses attribute indices outside the schema")
        self.background = clauses

    @property
    def n(self) -> int:
        return len(self.attributes)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.attributes)) - 1

    def set_of(self, names: Iterable[str]) -> int:
        """Encode a collection of attribute names as a bitmask."""
        bits = 0
        for name in names:
            try:
                bits |= 1 << self._index[name]
            except KeyError:
                raise SchemaError(f"unknown attribute {name!r}") from None
        return bits

    def names(self, bits: int) -> list[str]:
        """Decode a bitmask into attribute names, in declaration order."""
        if bits & ~self.full_mask:
            raise SchemaMismatchError("attribute set has indices outside the schema")
        return [self.attributes[i] for i in iter_indices(bits)]

    def clause_of(self, premise: Iterable[str], disjuncts: Iterable[Iterable[str]]) -> CumulatedClause:
        return CumulatedClause(self.set_of(premise), tuple(self.set_of(d) for d in disjuncts))

    def to_dict(self) -> dict:
        return {
            "attributes": list(self.attributes),
            "background": [
                {"premise": self.names(c.premise), "disjuncts": [self.names(d) for d in c.disjuncts]}
                for c in self.background
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExplorationSchema":
        if not isinstance(data, dict) or "attributes" not in data:
            raise SchemaError("schema document must be an object with an 'attributes' list")
        attrs = data["attributes"]
        if not isinstance(attrs, list):
            raise SchemaError("'attributes' must be a list of names")
        schema = cls(attrs)
        clauses = []
        for raw in data.get("background", []):
            if not isinstance(raw, dict) or "premise" not in raw:
                raise SchemaError("each background clause needs a 'premise' list")
            clauses.append(schema.clause_of(raw["premise"], raw.get("disjuncts", [])))
        return cls(attrs, clauses)

    def __repr__(self) -> str:
        return f"ExplorationSchema({list(self.attributes)!r}, {len(self.background)} clauses)"


def load_schema(path) -> ExplorationSchema:
    """Read a schema file (JSON with attribute names, not indices)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"schema file {path} is not valid JSON: {exc}") from exc
    return ExplorationSchema.from_dict(data)


def save_schema(schema: ExplorationSchema, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(schema.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def satisfies_clause(x: int, clause: CumulatedClause, schema: ExplorationSchema | None = None) -> bool:
    """Does the set satisfy the clause?

    True when the premise is not contained in x, or some disjunct is.
    A clause with no disjuncts is violated by every superset of its premise.
    """
    if schema is not None and x & ~schema.full_mask:
        raise SchemaMismatchError("attribute set has indices outside the schema")
    if clause.premise & ~x:
        return True
    return any(d & ~x == 0 for d in clause.disjuncts)


def compatible_with_background(x: int, schema: ExplorationSchema) -> bool:
    """True when the set satisfies every background clause of the schema."""
    if x & ~schema.full_mask:
        raise SchemaMismatchError("attribute set has indices outside the schema")
    return all(satisfies_clause(x, c) for c in schema.background)
