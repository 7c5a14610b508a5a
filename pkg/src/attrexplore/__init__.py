"""Interactive attribute exploration with partial counter-examples.

The package maintains an exploration base of validated implications and
partially described examples, keeps it normalized and consistency-checked,
and drives an answer source (scripted or human, over HTTP) with implication
questions until the base's consequences match the source's theory.
"""

from .base import (
    ExplorationBase,
    JournalEntry,
    PartialExample,
    better_focused,
    find_completion,
    is_consistent,
    more_expressive,
    normalize,
    refutes,
)
from .engine import (
    ExplorationResult,
    Question,
    explore,
    lectic_next_closed,
    minimal_realizer_report,
    next_question,
    plus_query,
)
from .errors import (
    AnswerRejected,
    EnumerationLimitError,
    ExpertContractError,
    ExplorationError,
    InconsistentBaseError,
    JournalError,
    SchemaError,
    SchemaMismatchError,
)
from .expert import (
    VALID,
    ExpertAnswer,
    ExpertReport,
    MaskPolicy,
    ScriptedDomain,
    expert_closure,
    mask,
    normalize_expert_answer,
    scripted_answer,
    validate_expert,
)
from .journal import JournalWriter, read_journal, replay_journal, verify_journal
from .logic import (
    BOTTOM,
    Implication,
    close,
    entails,
    format_implication,
    minimal_models_above,
    models,
    remove_redundant,
    respects,
)
from .schema import (
    CumulatedClause,
    ExplorationSchema,
    compatible_with_background,
    load_schema,
    satisfies_clause,
)
from .session import Session

__all__ = [name for name in dir() if not name.startswith("_")]
