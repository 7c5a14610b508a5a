"""Persistent, resumable exploration sessions for a human answer source.

A session owns one exploration base, one journal file, and at most one
pending question. Answers must echo the pending question's token, so a
superseded question cannot be answered by accident. Sessions are fully
reconstructible from the schema plus the journal file.
"""

from __future__ import annotations

import hashlib
import json
import uuid
from typing import Iterable

from .base import ExplorationBase, PartialExample, find_completion, is_consistent, normalize
from .engine import Question, answer_problem, next_question
from .errors import AnswerRejected, InconsistentBaseError, SchemaError
from .expert import ExpertAnswer
from .journal import JournalWriter, entry_to_dict, read_journal, replay_journal
from .logic import BOTTOM
from .schema import ExplorationSchema, load_schema

STATUS_AWAITING = "awaiting_answer"
STATUS_COMPLETE = "complete"

JOURNAL_TAIL = 10


def _question_token(seq: int, question: Question) -> str:
    conclusion = "F" if question.implication.conclusion is BOTTOM else str(question.implication.conclusion)
    material = f"{seq}|{question.implication.premise}|{conclusion}"
    return hashlib.sha1(material.encode("ascii")).hexdigest()[:16]


class Session:
    """One exploration driven over the wire, journal-backed."""

    def __init__(self, schema: ExplorationSchema, base: ExplorationBase, writer: JournalWriter, session_id: str):
        self.schema = schema
        self.base = base
        self.writer = writer
        self.session_id = session_id
        self.pending: Question | None = None
        self.token: str | None = None
        self.status = STATUS_COMPLETE
        self._advance()

    @classmethod
    def create(
        cls,
        schema: ExplorationSchema,
        initial_examples: Iterable[PartialExample],
        journal_path,
        session_id: str | None = None,
    ) -> "Session":
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
        writer = JournalWriter(journal_path, schema, truncate=True)
        writer.flush(base)
        return cls(schema, base, writer, session_id or uuid.uuid4().hex[:12])

    @classmethod
    def create_from_files(cls, schema_file, examples_file, journal_path, session_id: str | None = None) -> "Session":
        schema = load_schema(schema_file)
        examples = load_examples(examples_file, schema)
        return cls.create(schema, examples, journal_path, session_id)

    @classmethod
    def resume(cls, journal_path, schema, session_id: str | None = None) -> "Session":
        """Rebuild the session recorded in a journal file.

        `schema` may be an ExplorationSchema or a schema file path. A
        journal cut short inside a normalization block is completed, so any
        clean prefix of a valid journal resumes to a continuable state.
        """
        if not isinstance(schema, ExplorationSchema):
            schema = load_schema(schema)
        entries = read_journal(journal_path, schema)
        base = replay_journal(schema, entries)
        flushed = len(base.journal)
        normalize(base, schema)
        writer = JournalWriter(journal_path, schema, already_flushed=flushed)
        writer.flush(base)
        return cls(schema, base, writer, session_id or uuid.uuid4().hex[:12])

    def _advance(self) -> None:
        question = next_question(self.base, self.schema)
        if question is None:
            self.pending = None
            self.token = None
            self.status = STATUS_COMPLETE
        else:
            self.pending = question
            self.token = _question_token(len(self.base.journal), question)
            self.status = STATUS_AWAITING

    def submit_answer(self, answer: ExpertAnswer, token: str) -> "Session":
        """Accept or reject an answer to the pending question.

        Rejections raise AnswerRejected with a machine-readable reason and
        leave the journal untouched.
        """
        if self.status != STATUS_AWAITING or token != self.token:
            raise AnswerRejected("stale_token", "no pending question carries this token")
        problem = answer_problem(self.base, self.schema, self.pending, answer)
        if problem is not None:
            raise AnswerRejected(*problem)
        if answer.is_valid:
            self.base.add_implication(self.pending.implication, "expert", note="validated")
        else:
            self.base.add_example(answer.example, "expert", note="counter-example")
        normalize(self.base, self.schema)
        self.writer.flush(self.base)
        self._advance()
        return self

    def questions_answered(self) -> int:
        return sum(1 for e in self.base.journal if e.actor == "expert")

    def state(self) -> dict:
        """Read-only snapshot, JSON-ready, attribute names throughout."""
        schema = self.schema
        question = None
        if self.pending is not None:
            imp = self.pending.implication
            conclusion = None if imp.conclusion is BOTTOM else schema.names(imp.conclusion)
            asks = None
            if imp.conclusion is not BOTTOM:
                asks = schema.names(imp.conclusion & ~imp.premise)
            question = {
                "premise": schema.names(imp.premise),
                "conclusion": conclusion,
                "asks": asks,
                "token": self.token,
                "number": self.questions_answered() + 1,
            }
        tail = self.base.journal[-JOURNAL_TAIL:]
        return {
            "session_id": self.session_id,
            "status": self.status,
            "consistent": is_consistent(self.base, schema),
            "question": question,
            "implications": [
                {
                    "premise": schema.names(i.premise),
                    "conclusion": None if i.conclusion is BOTTOM else schema.names(i.conclusion),
                }
                for i in self.base.implications
            ],
            "examples": [
                {"lower": schema.names(e.lower), "upper": schema.names(e.upper)}
                for e in self.base.examples
            ],
            "journal_length": len(self.base.journal),
            "journal_tail": [entry_to_dict(e, schema) for e in tail],
            "questions_answered": self.questions_answered(),
            "schema": schema.to_dict(),
        }


def load_examples(path, schema: ExplorationSchema) -> list[PartialExample]:
    """Read an initial-examples file: a JSON list of lower/upper name pairs."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"examples file {path} is not valid JSON: {exc}") from exc
    return parse_examples(data, schema)


def parse_examples(data, schema: ExplorationSchema) -> list[PartialExample]:
    if not isinstance(data, list):
        raise SchemaError("examples document must be a JSON list")
    out = []
    for raw in data:
        if not isinstance(raw, dict) or "lower" not in raw or "upper" not in raw:
            raise SchemaError("each example needs 'lower' and 'upper' name lists")
        try:
            out.append(PartialExample(schema.set_of(raw["lower"]), schema.set_of(raw["upper"])))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    return out


def parse_answer(data: dict, schema: ExplorationSchema) -> ExpertAnswer:
    """Decode a wire answer: {"valid": true} or {"counterexample": {...}}."""
    if not isinstance(data, dict):
        raise SchemaError("answer must be a JSON object")
    has_valid = bool(data.get("valid"))
    counter = data.get("counterexample")
    if has_valid == (counter is not None):
        raise SchemaError("answer must carry either valid=true or a counterexample")
    if has_valid:
        return ExpertAnswer(None)
    if not isinstance(counter, dict) or "lower" not in counter or "upper" not in counter:
        raise SchemaError("counterexample needs 'lower' and 'upper' name lists")
    try:
        example = PartialExample(schema.set_of(counter["lower"]), schema.set_of(counter["upper"]))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    return ExpertAnswer(example)
