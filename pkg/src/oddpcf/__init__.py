"""oddpcf: a plane-graph laboratory for odd and proper conflict-free 4-coloring.

Core pieces: rotation-system plane graphs, partial colorings with odd/unique
color queries, the array grammar over face boundary walks, forbidden/flexible
greedy extension, exact-rational discharging audits, reducible-configuration
detectors, and brute-force chromatic oracles.
"""

from .plane_graph import (
    Face,
    PlaneGraph,
    Thread,
    VertexClass,
    build_from_rotation,
    classify_vertex,
    embed,
    girth,
    is_cut_vertex,
    is_supported,
)
from .coloring import (
    ColorMultiset,
    PartialColoring,
    is_odd_coloring,
    is_pcf_coloring,
    odd_colors,
    parity_flip,
    unique_colors,
)

__version__ = "0.1.0"

__all__ = [
    "Face", "PlaneGraph", "Thread", "VertexClass", "build_from_rotation",
    "classify_vertex", "embed", "girth", "is_cut_vertex", "is_supported",
    "ColorMultiset", "PartialColoring", "is_odd_coloring", "is_pcf_coloring",
    "odd_colors", "parity_flip", "unique_colors", "__version__",
]
