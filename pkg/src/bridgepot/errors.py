"""Exception hierarchy shared across the package."""

from __future__ import annotations

__all__ = ["BridgepotError", "DimensionError", "GeometryError", "ComputationError"]


class BridgepotError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(BridgepotError, ValueError):
    """Raised for dimensions where the bridge potential theory degenerates."""


class GeometryError(BridgepotError, ValueError):
    """Probe geometry incompatible with the symmetry reductions (v1 scope)."""


class ComputationError(BridgepotError, RuntimeError):
    """A computation failed in a way that must not be silently reported."""
