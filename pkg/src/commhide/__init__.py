"""Community deception via greedy network-permanence loss.

Rewire a graph with a small budget of edge additions and deletions so
that community detectors no longer recover a chosen community (or node),
while keeping the rest of the structure intact.
"""

from .graph import (
    CommunityPartition,
    DuplicateEdgeError,
    EdgeUpdate,
    Graph,
    GraphError,
    MissingEdgeError,
    SelfLoopError,
    UnknownCommunityError,
    UnknownNodeError,
    UpdateKind,
)
from .neural import Budget, UpdatePlan, deceive, hide_node
from .permanence import IllegalUpdateError, network_permanence, permanence_of

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "CommunityPartition",
    "DuplicateEdgeError",
    "EdgeUpdate",
    "Graph",
    "GraphError",
    "IllegalUpdateError",
    "MissingEdgeError",
    "SelfLoopError",
    "UnknownCommunityError",
    "UnknownNodeError",
    "UpdateKind",
    "UpdatePlan",
    "deceive",
    "hide_node",
    "network_permanence",
    "permanence_of",
    "__version__",
]
