"""Exact perfect-matching counting over ring blowups.

The package turns any graph into a +-1-weighted ring blowup with the
same perfect-matching count (`build_ring_blowup`), recovers signed
counts through an oracle that only counts unweighted graphs
(`strip_weights`), and certifies that blowups of simple rings contain
no K8 minor (`certify_simple_ring_blowup`).  Counting itself is exact
over rationals, with a brute engine for reference semantics and an FKT
engine for planar inputs.
"""

from .core import (
    GraphFormatError,
    Verdict,
    WeightedGraph,
    complete_graph,
    cycle_graph,
    parse_graph,
    serialize_graph,
)
from .count import NonPlanarInput, count_pm_exact, count_pm_fkt
from .gadgets import (
    SignCrossingGadget,
    compute_signature,
    insert_gadget,
    load_shipped_gadget,
    signed_count,
)
from .minors import (
    BudgetExceeded,
    MinorModel,
    blowup,
    clique_sum,
    hadwiger,
    has_minor,
    parse_minor_model,
    serialize_minor_model,
    verify_minor_model,
)
from .reduce import (
    RingBlowup,
    build_ring_blowup,
    parse_ring_blowup,
    serialize_ring_blowup,
    strip_weights,
    verify_ring_blowup,
)
from .rings import (
    Certificate,
    SimpleRing,
    certify_simple_ring_blowup,
    check_certificate,
    decompose,
    find_complications,
    make_simple,
    parse_certificate,
    parse_simple_ring,
    serialize_certificate,
    serialize_simple_ring,
    triangulate,
    verify_simple_ring,
    verify_simple_ring_blowup,
)

__all__ = [
    "BudgetExceeded",
    "Certificate",
    "GraphFormatError",
    "MinorModel",
    "NonPlanarInput",
    "RingBlowup",
    "SignCrossingGadget",
    "SimpleRing",
    "Verdict",
    "WeightedGraph",
    "blowup",
    "build_ring_blowup",
    "certify_simple_ring_blowup",
    "check_certificate",
    "clique_sum",
    "complete_graph",
    "compute_signature",
    "count_pm_exact",
    "count_pm_fkt",
    "cycle_graph",
    "decompose",
    "find_complications",
    "hadwiger",
    "has_minor",
    "insert_gadget",
    "load_shipped_gadget",
    "make_simple",
    "parse_certificate",
    "parse_graph",
    "parse_minor_model",
    "parse_ring_blowup",
    "parse_simple_ring",
    "serialize_certificate",
    "serialize_graph",
    "serialize_minor_model",
    "serialize_ring_blowup",
    "serialize_simple_ring",
    "signed_count",
    "strip_weights",
    "triangulate",
    "verify_minor_model",
    "verify_ring_blowup",
    "verify_simple_ring",
    "verify_simple_ring_blowup",
]
