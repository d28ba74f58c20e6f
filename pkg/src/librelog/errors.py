"""Exception hierarchy shared by every librelog module."""


class LibreLogError(Exception):
    """Base class for all librelog errors."""


# ingest
class FileNotReadable(LibreLogError, OSError):
    pass


class EmptyInput(LibreLogError, ValueError):
    pass


class MissingColumn(LibreLogError, ValueError):
    pass


class DuplicateLineId(LibreLogError, ValueError):
    pass


# preprocess / grouping / selection
class EmptyContent(LibreLogError, ValueError):
    pass


class LengthMismatch(LibreLogError, ValueError):
    pass


class EmptyTokenSet(LibreLogError, ValueError):
    pass


class EmptyGroup(LibreLogError, ValueError):
    pass


class UnequalTokenLength(LibreLogError, ValueError):
    pass


# backend
class BackendError(LibreLogError):
    """Any failure while obtaining a completion."""


class TransportError(BackendError):
    pass


class MalformedResponse(BackendError):
    pass


class MalformedLogList(BackendError, ValueError):
    pass


# prompting
class EmptyLogList(LibreLogError, ValueError):
    pass


class UnparseableResponse(LibreLogError, ValueError):
    pass


# evaluation / config
class KeyMismatch(LibreLogError, ValueError):
    pass


class ConfigError(LibreLogError, ValueError):
    pass
