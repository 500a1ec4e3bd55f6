"""Semantic word cloud engine.

Builds a co-occurrence similarity graph from text, computes a semantically
faithful overlap-free layout, scores it with quality metrics, and supports
semantic-aware editing sessions.
"""

from .errors import (
    EmptyHistory,
    EmptyInput,
    NonConvergence,
    SemcloudError,
    UnknownState,
    UnknownTerm,
)
from .graph import SimilarityGraph, build_graph, jaccard
from .kernels import BACKEND as KERNEL_BACKEND
from .layout import ForceConfig, Layout, generate_layout, mds_initialize, settle
from .metrics import MetricReport, report
from .pipeline import CloudResult, create_cloud
from .session import EditSession, InteractionConfig, select_relevant
from .textpipe import Term, assign_fonts, build_terms, extract_terms, segment_sentences

__version__ = "0.1.0"

__all__ = [
    "SemcloudError",
    "EmptyInput",
    "UnknownTerm",
    "UnknownState",
    "EmptyHistory",
    "NonConvergence",
    "SimilarityGraph",
    "build_graph",
    "jaccard",
    "KERNEL_BACKEND",
    "ForceConfig",
    "Layout",
    "generate_layout",
    "mds_initialize",
    "settle",
    "MetricReport",
    "report",
    "CloudResult",
    "create_cloud",
    "EditSession",
    "InteractionConfig",
    "select_relevant",
    "Term",
    "assign_fonts",
    "build_terms",
    "extract_terms",
    "segment_sentences",
    "__version__",
]
