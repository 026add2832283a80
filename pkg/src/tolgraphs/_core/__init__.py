"""Kernel backend selection: compiled extension when available, pure
Python otherwise.  Set TOLGRAPHS_PURE=1 to force the fallback."""

import os

if os.environ.get("TOLGRAPHS_PURE"):
    from . import _kernels_py as backend
else:
    try:
        from . import _kernels as backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as backend

crossing_arcs = backend.crossing_arcs
trapezoid_edges = backend.trapezoid_edges
spfa_longest = backend.spfa_longest
nae_smallest = backend.nae_smallest


def backend_name() -> str:
    return "compiled" if backend.__name__.endswith("._kernels") else "pure"
