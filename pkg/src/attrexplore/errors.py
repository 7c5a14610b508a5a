"""Exception types shared across the package."""


class ExplorationError(Exception):
    """Base class for every error raised by this package."""


class SchemaError(ExplorationError):
    """A schema, domain or example definition is malformed."""


class SchemaMismatchError(SchemaError):
    """An attribute set carries indices outside the schema's universe."""


class InconsistentBaseError(ExplorationError):
    """The exploration base admits no realizer.

    Carries the offending example and, when one pinpoints the conflict,
    the implication that exposed it.
    """

    def __init__(self, message, example=None, implication=None):
        super().__init__(message)
        self.example = example
        self.implication = implication


class EnumerationLimitError(ExplorationError):
    """A brute-force operation was asked to enumerate past its size guard."""


class ExpertContractError(ExplorationError):
    """An answer source violated the rules a domain expert must follow."""


class JournalError(ExplorationError):
    """A journal file is corrupt or diverges from re-derivation."""

    def __init__(self, message, seq=None):
        if seq is not None:
            message = f"{message} (seq {seq})"
        super().__init__(message)
        self.seq = seq


class AnswerRejected(ExplorationError):
    """A submitted answer was refused; `reason` is a machine-readable code.

    Codes: condition_i (not a counter-example to the posed question),
    condition_iii (no compatible completion), consistency (a confirmation
    that would break the base; a counter-example is required), stale_token.
    """

    def __init__(self, reason, message):
        super().__init__(message)
        self.reason = reason
