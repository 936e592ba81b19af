"""Exact tools for strong shift equivalence of nonnegative integer matrices."""

from ._arith import bigint_mode
from .bowen_franks import (
    CokernelMap,
    FinAbGroup,
    bowen_franks_group,
    check_diagram,
    check_edge_identities,
    cokernel,
    compose,
    equal_maps,
    induced_map,
    is_isomorphism,
    unit_class,
    unit_witness,
)
from .errors import SSEError, Verdict
from .graph_core import DirectedMultigraph, Edge, TransitionMatrix, edge_graph, from_matrix, to_matrix, trace_sequence
from .shift_space import (
    CylinderFunction,
    allowed_words,
    check_transfer_law,
    periodic_count,
    phi_map,
    psi_map,
    shift_compose,
)
from .snf import smith_normal_form
from .splitting import (
    find_out_amalgamations,
    in_partition,
    in_split,
    out_amalgamate,
    out_partition,
    out_split,
)
from .sse import (
    CuntzFamily,
    ElementaryEquivalence,
    SSEChain,
    dhat,
    edge_pairing,
    search_elementary,
    verify_chain,
    verify_elementary,
)
from .transpose_free import TFChain, TFStep, make_step, step_from_split, verify_tf_chain

__version__ = "0.1.0"
