"""Journal persistence: one JSON object per line, append-only.

On disk every payload speaks in attribute names; a base is fully
reconstructible from its schema file plus its journal file. Lines are
serialized canonically (sorted keys, no whitespace) so that identical
runs produce byte-identical journals.
"""

from __future__ import annotations

import json
import os
from typing import Iterable

from .base import ACTIONS, ACTORS, ExplorationBase, JournalEntry, PartialExample, normalize
from .errors import JournalError
from .logic import BOTTOM, Implication
from .schema import ExplorationSchema


def _implication_to_names(imp: Implication, schema: ExplorationSchema) -> dict:
    conclusion = None if imp.conclusion is BOTTOM else schema.names(imp.conclusion)
    return {"premise": schema.names(imp.premise), "conclusion": conclusion}


def _implication_from_names(data: dict, schema: ExplorationSchema) -> Implication:
    conclusion = data["conclusion"]
    return Implication(
        schema.set_of(data["premise"]),
        BOTTOM if conclusion is None else schema.set_of(conclusion),
    )


def _example_to_names(ex: PartialExample, schema: ExplorationSchema) -> dict:
    return {"lower": schema.names(ex.lower), "upper": schema.names(ex.upper)}


def _example_from_names(data: dict, schema: ExplorationSchema) -> PartialExample:
    return PartialExample(schema.set_of(data["lower"]), schema.set_of(data["upper"]))


def entry_to_dict(entry: JournalEntry, schema: ExplorationSchema) -> dict:
    payload: dict = {}
    raw = entry.payload
    if "index" in raw:
        payload["index"] = raw["index"]
    if "implication" in raw:
        payload["implication"] = _implication_to_names(raw["implication"], schema)
    if "example" in raw:
        payload["example"] = _example_to_names(raw["example"], schema)
    if "before" in raw:
        payload["before"] = _example_to_names(raw["before"], schema)
        payload["after"] = _example_to_names(raw["after"], schema)
    return {
        "seq": entry.seq,
        "actor": entry.actor,
        "action": entry.action,
        "payload": payload,
        "note": entry.note,
    }


def entry_from_dict(data: dict, schema: ExplorationSchema) -> JournalEntry:
    try:
        seq = data["seq"]
        actor = data["actor"]
        action = data["action"]
        raw = data["payload"]
        note = data.get("note", "")
    except (KeyError, TypeError) as exc:
        raise JournalError(f"journal entry misses field {exc}") from exc
    if actor not in ACTORS:
        raise JournalError(f"unknown actor {actor!r}", seq=seq)
    if action not in ACTIONS:
        raise JournalError(f"unknown action {action!r}", seq=seq)
    payload: dict = {}
    try:
        if "index" in raw:
            payload["index"] = raw["index"]
        if "implication" in raw:
            payload["implication"] = _implication_from_names(raw["implication"], schema)
        if "example" in raw:
            payload["example"] = _example_from_names(raw["example"], schema)
        if "before" in raw:
            payload["before"] = _example_from_names(raw["before"], schema)
            payload["after"] = _example_from_names(raw["after"], schema)
    except (KeyError, TypeError, ValueError) as exc:
        raise JournalError(f"malformed payload: {exc}", seq=seq) from exc
    return JournalEntry(seq, actor, action, payload, note)


def entry_to_line(entry: JournalEntry, schema: ExplorationSchema) -> str:
    return json.dumps(entry_to_dict(entry, schema), sort_keys=True, separators=(",", ":"))


def read_journal(path, schema: ExplorationSchema) -> list[JournalEntry]:
    """Parse a journal file; a corrupt line raises naming its sequence number."""
    entries: list[JournalEntry] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise JournalError(f"corrupt journal line: {exc}", seq=lineno) from exc
            entries.append(entry_from_dict(data, schema))
    return entries


def replay_journal(schema: ExplorationSchema, entries: Iterable[JournalEntry]) -> ExplorationBase:
    """Rebuild a base by applying entries to an empty one."""
    base = ExplorationBase(schema)
    for entry in entries:
        base.apply_entry(entry)
    return base


def verify_journal(schema: ExplorationSchema, entries: list[JournalEntry]) -> ExplorationBase:
    """Replay an exploration journal while re-deriving every engine action.

    The journal of a run is structured as an initial block of `init`
    additions followed by alternating expert entries and normalizer blocks.
    Each normalizer block is recomputed from the state before it, each
    validated implication must equal the question the engine would pose at
    that point, and each counter-example must be an acceptable answer to
    it; any mismatch raises naming the first divergent sequence number.
    """
    from .engine import answer_problem, next_question
    from .expert import ExpertAnswer

    base = ExplorationBase(schema)
    i = 0
    total = len(entries)

    def expect_normalizer_block():
        nonlocal i
        before = len(base.journal)
        normalize(base)
        for derived in base.journal[before:]:
            if i >= total:
                raise JournalError(
                    "journal ends before the recorded normalization completes",
                    seq=derived.seq,
                )
            recorded = entries[i]
            if recorded != derived:
                raise JournalError("normalization step diverges from re-derivation", seq=recorded.seq)
            i += 1

    while i < total and entries[i].actor == "init":
        base.apply_entry(entries[i])
        i += 1
    expect_normalizer_block()
    while i < total:
        entry = entries[i]
        if entry.actor != "expert":
            raise JournalError(f"unexpected entry by actor {entry.actor!r}", seq=entry.seq)
        question = next_question(base, schema)
        if question is None:
            raise JournalError("an answer was recorded after the base was complete", seq=entry.seq)
        if entry.action == "add_implication":
            if entry.payload["implication"] != question.implication:
                raise JournalError(
                    "validated implication diverges from the question the engine poses",
                    seq=entry.seq,
                )
        elif entry.action == "add_example":
            answer = ExpertAnswer(entry.payload["example"])
            if answer_problem(base, schema, question, answer) is not None:
                raise JournalError(
                    "recorded counter-example would not have been accepted",
                    seq=entry.seq,
                )
        else:
            raise JournalError(f"unexpected expert action {entry.action!r}", seq=entry.seq)
        base.apply_entry(entry)
        i += 1
        expect_normalizer_block()
    return base


class JournalWriter:
    """Appends a base's new journal entries to a file, one line per entry."""

    def __init__(self, path, schema: ExplorationSchema, already_flushed: int = 0, truncate: bool = False):
        self.path = str(path)
        self.schema = schema
        self._flushed = already_flushed
        if truncate:
            with open(self.path, "w", encoding="utf-8"):
                pass

    def flush(self, base: ExplorationBase) -> int:
        """Write entries not yet on disk; returns how many were written."""
        new = base.journal[self._flushed :]
        if not new:
            return 0
        with open(self.path, "a", encoding="utf-8") as fh:
            for entry in new:
                fh.write(entry_to_line(entry, self.schema))
                fh.write("\n")
            fh.flush()
            os.fsync(fh.fileno())
        self._flushed = len(base.journal)
        return len(new)
