"""HTTP datetime-negotiated resource versioning."""

from ._memento import (  # noqa: F401
    Archive,
    Client,
    Interval,
    LookupResult,
    MementoError,
    MementoRecord,
    MementoResponse,
    OutOfRangeError,
    Service,
    Timestamp,
    normalize,
    parse_ntriples,
    timemap_rdfxml,
)

__all__ = [
    "Archive",
    "Client",
    "Interval",
    "LookupResult",
    "MementoError",
    "MementoRecord",
    "MementoResponse",
    "OutOfRangeError",
    "Service",
    "Timestamp",
    "normalize",
    "parse_ntriples",
    "timemap_rdfxml",
]
