"""Both sides of each identity, assembled from the other modules and compared in IdentityReports."""

from .report import IdentityReport

__all__ = ["IdentityReport"]
