"""
Megagreedoids: exact invariants, shellings and Hopf structure

This package contains:
- core: the data model, axioms, minors and feasible permutations
- constructions: rooted graphs, posets, greedoids and polymatroids
- qsym: quasisymmetric functions in the M and F bases
- invariants: descents, the generic quasisymmetric function and its oracles
- complex: the relative order complex and its greedy shelling
- hopf: product, coproduct, antipode and the axiom verifier
- documents, corpus, reports: JSON input, random instances, text output
"""

from .core import (
    GroundSet,
    Megagreedoid,
    MegagreedoidError,
    check_axioms,
    contract,
    direct_sum,
    feasible_permutations,
    restrict,
)
from .constructions import (
    Poset,
    RankTable,
    RootedMultigraph,
    from_greedoid,
    from_polymatroid,
    from_poset,
    from_rooted_graph,
)
from .qsym import QsymElement, specialize_poly
from .invariants import chi_F, chi_flag, descents
from .complex import verify_shelling
from .hopf import FormalSum, antipode, coproduct

__all__ = [
    'GroundSet',
    'Megagreedoid',
    'MegagreedoidError',
    'check_axioms',
    'contract',
    'direct_sum',
    'feasible_permutations',
    'restrict',
    'Poset',
    'RankTable',
    'RootedMultigraph',
    'from_greedoid',
    'from_polymatroid',
    'from_poset',
    'from_rooted_graph',
    'QsymElement',
    'specialize_poly',
    'chi_F',
    'chi_flag',
    'descents',
    'verify_shelling',
    'FormalSum',
    'antipode',
    'coproduct',
]
