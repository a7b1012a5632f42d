"""Groups of fractions of forest categories, diagram partition functions,
and quadratic renormalization certificates.

The package splits into five layers:

- ``trees`` / ``annular``: planar binary trees, forests, their composition
  and minimal common refinements, plus the periodic (annular) variant.
- ``fraction``: the group of fractions of the forest category and the
  direct-limit action attached to a functor.
- ``thompson``: Thompson's groups F, T, V as reduced tree pairs (with a
  cyclic mark or a leaf permutation), PL-map evaluation, rotations.
- ``diagrams`` / ``coloring`` / ``tensors``: closed trivalent diagrams
  from tree pairs and their partition-function values (edge and face
  colorings, the loop-parameter-d chromatic evaluation, tensor
  contraction).
- ``renorm``: the quadratic renormalization map on the three-dimensional
  four-box space, its growth constant, and rigorous decay certificates.
"""

from .annular import AnnularForest, annular_compose, parse_annular, rho, tau
from .coloring import (
    chromatic_value,
    coefficient,
    count_proper_colorings,
    edge_coloring_count,
    face_coefficient,
    face_coloring_count,
    value2_subgroup_test,
)
from .diagrams import ClosedDiagram, closed_graph
from .fraction import (
    FractionPair,
    LimitVector,
    fraction_equals,
    fraction_multiply,
    limit_act,
    limit_equivalent,
    limit_inner,
    parse_pair,
    reduce_pair,
)
from .renorm import (
    B1,
    B2,
    B3,
    Certificate,
    CertificateFailure,
    LoopParameter,
    PrecisionError,
    Q4Vector,
    ScanReport,
    bilinear_map,
    bound_check,
    compare_square_forms,
    decay_profile,
    find_certificate,
    iterate_norms,
    m_constant,
    renorm_map,
    scan,
)
from .tensors import VertexTensor, phi_forest, phi_tree, vacuum, vacuum_coefficient
from .thompson import (
    DyadicRational,
    FElement,
    PLMap,
    TElement,
    VElement,
    parse_element,
    random_element,
    rotation_element,
    x_generator,
)
from .trees import (
    Forest,
    Tree,
    catalan,
    common_refinement,
    compose_forests,
    enumerate_trees,
    parse_forest,
    parse_tree,
    random_tree,
    tree_to_partition,
)

__version__ = "0.1.0"
