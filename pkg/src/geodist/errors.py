class GeodistError(Exception):
    """Base class for data errors raised by the library."""


class ResourceLimitError(GeodistError):
    """An enumeration would exceed its configured element or step cap."""


class PolygonError(GeodistError, ValueError):
    """Invalid fundamental polygon: non-convex, bad pairing, ideal vertex."""


class OutsidePatchError(GeodistError):
    """A point is not covered by the enumerated tessellation patch."""
