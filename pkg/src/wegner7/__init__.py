"""Squares of planar subcubic graphs: red/blue decompositions and certified 7-colorings."""

from __future__ import annotations

from .errors import (
    BudgetError,
    CertificationError,
    InputError,
    PreconditionError,
    Wegner7Error,
)
from .graph import (
    CycleRef,
    Face,
    PlanarGraph,
    SimpleGraph,
    Turn,
    facial_paths,
    from_rotation,
    light_face_pair,
    square,
    turn_direction,
)
from .oracle import OracleBudget, chromatic_number, exists_decomposition, k_coloring
from .planarity import is_planar
from .precolor import (
    BoundarySpec,
    ConditionReport,
    Kind,
    Mark,
    RBColoring,
    blue_square_graph,
    check_conditions,
    is_dangerous_cycle,
    is_forbidden_cycle,
    red_facial_4paths,
    red_square_graph,
)
from .solver import (
    DecompositionCertificate,
    KempeChain,
    PaletteColoring,
    color_blue_square,
    color_red_square,
    kempe_swap,
    seven_color,
    seven_color_run,
    solve_decomposition,
    verify_square_coloring,
)

__version__ = "0.1.0"
