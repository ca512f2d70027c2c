"""Exact-arithmetic toolkit for closed triangulated surfaces in E^4.

Capabilities: mesh validation and generation, Z2 cohomology rings with cup
products, degree mod 2 and the degree-one-to-torus obstruction, 2-plane
avoidance certificates, near-tangent hyperplane slicing, and free-group
link words of slice curves.
"""

__version__ = "0.1.0"

from .mesh import (  # noqa: F401
    BUILTIN_NAMES,
    MeshReport,
    SimplicialSurface,
    Triangle,
    generate_builtin,
    load_off4,
    parse_off4,
    save_off4,
    torus_grid,
    validate,
    write_off4,
)
