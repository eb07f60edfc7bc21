"""Exact verification engine for towers of diagram algebras."""

__version__ = "0.1.0"

from .branching import TLVertex, Vertex, compare, edges, paths, scalars
from .cellmod import (
    CellModule,
    GZFamily,
    action_matrix,
    build_cell_module,
    central_idempotent,
    get_cell_module,
    gz_idempotents,
    murphy_cell_module,
    path_basis,
    restriction_filtration,
)
from .diagrams import BrauerDiagram, compose, generator_diagram
from .jm import JMFamily, jm_elements
from .ratfunc import (
    MultiPoly,
    RationalFunction,
    RingContext,
    poly_gcd,
    rf_arith,
    specialize,
)
from .skein import RawTangle, check_relations, normal_form_multiply, skein_reduce
from .towers import AlgebraElement, left_mult_matrix, make_tower

__all__ = [
    "AlgebraElement",
    "BrauerDiagram",
    "CellModule",
    "GZFamily",
    "JMFamily",
    "MultiPoly",
    "RationalFunction",
    "RawTangle",
    "RingContext",
    "TLVertex",
    "Vertex",
    "action_matrix",
    "build_cell_module",
    "central_idempotent",
    "check_relations",
    "compare",
    "compose",
    "edges",
    "generator_diagram",
    "get_cell_module",
    "gz_idempotents",
    "jm_elements",
    "left_mult_matrix",
    "make_tower",
    "murphy_cell_module",
    "normal_form_multiply",
    "path_basis",
    "paths",
    "poly_gcd",
    "restriction_filtration",
    "rf_arith",
    "scalars",
    "skein_reduce",
    "specialize",
]
