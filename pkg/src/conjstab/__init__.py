"""Conjugacy stability of standard parabolic subgroups in spherical Artin-Tits groups.

The package decides, for a finite Coxeter graph ``S`` and ``X`` a subset of
its vertices, whether every pointwise conjugation between subsets of ``X``
realized in ``W_S`` is already realized in ``W_X``, and compares the answer
with the known classification.
"""
from .coxgraph import (
    INF,
    CoxeterGraph,
    SphericalType,
    automorphisms,
    catalog,
    disjoint_union,
    from_matrix,
    from_name,
    from_type,
    induced,
    is_spherical,
    odd_components,
    odd_connected,
    recognize,
    type_name,
)
from .engine import (
    GroupElement,
    RootSystem,
    build_root_system,
    enumerate_elements,
    evaluate_word,
    group_order,
    length,
    longest_element,
    reduced_word,
    simple_conjugate,
    support,
)
from .errors import *  # noqa: F401,F403
from .golden import PHI, Golden
from .ribbons import (
    Reachability,
    Ribbon,
    RibbonChain,
    SubsetMap,
    W0Conj,
    apply_chain,
    chain_element,
    reachable_maps,
    ribbon_map,
    w0_map,
)
from .star import (
    StarVerdict,
    Witness,
    cross_validate,
    decide_star,
    realized_maps_oracle,
    realized_maps_ribbon,
    witness_is_sound,
)
from .classify import expected_rule, expected_verdict, sweep
from .verify import PaperCheck, verify_counterexample, verify_odd_lemma, verify_tables

__version__ = "0.1.0"
