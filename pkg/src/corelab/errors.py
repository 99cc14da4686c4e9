"""Exception hierarchy. The CLI maps these onto exit codes."""


class CorelabError(Exception):
    exit_code = 1


class InputError(CorelabError, ValueError):
    """Malformed or out-of-contract input data."""


class SchemaError(InputError):
    """A corpus or ratings record does not match its JSONL schema."""


class AlignmentError(InputError):
    """Gold and system token boundaries disagree for an instance."""


class EncodingError(InputError):
    """A categorical level was not seen when the design encoder was fitted."""


class ConfigurationError(CorelabError):
    exit_code = 2


class RatingUnavailableError(CorelabError):
    """The external rater never produced a parseable 1..3 score."""


class TransportError(CorelabError):
    """The rater endpoint answered with a non-2xx status."""
