"""Exception hierarchy shared across the package."""


class TrilinearError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGrid(TrilinearError):
    """Grid dimensions cannot be laid out (e.g. fewer than two columns)."""


class InvalidSite(TrilinearError):
    """A site coordinate is outside the layout or a defect entry is malformed."""


class InvalidN(TrilinearError):
    """Qubit count too small for the scaling formulas."""


class NotNeighbors(TrilinearError):
    """Requested a nearest-neighbor gate on cells that are not grid-adjacent."""


class UnsupportedPair(TrilinearError):
    """Cell pair falls outside the implemented long-range connectivity classes."""


class Partitioned(TrilinearError):
    """No shuttle path exists between the requested sites."""


class Unrecoverable(Partitioned):
    """Defects sever the array across all three rows; no reconfiguration helps."""


class MuxInfeasible(TrilinearError):
    """A single micro-op needs more distinct waveforms than the AC input count."""


class NoAdjacentEmpty(TrilinearError):
    """Addressed single-qubit gate has no free neighboring bare dot to hop into."""


class CircuitError(TrilinearError):
    """Logical circuit is invalid against the layout or operating protocol."""


class ConfigError(TrilinearError):
    """Run configuration failed validation; message carries the field path."""
