"""Diagonal semilattices, mutually orthogonal Latin squares and diagonal
semilattices (MODS), orthogonal arrays and the finite groups, fields and
Galois rings they are built from."""
from .algebra import GaloisField, GaloisRing, gf_build, gr_build, parse_ring_spec, teichmuller_set
from .constructions import (
    Arc,
    FrobeniusData,
    arc_to_mods,
    character_oa,
    cyclic_complement,
    frobenius_mogs,
    isotopism_witness,
    lifted_arc,
    nrc_arc,
    paper_example_8x8,
)
from .designs import (
    BoundsReport,
    Embedding,
    ModsSystem,
    OrthogonalArray,
    bounds_from_mods,
    mods_build,
    mods_regular_analyze,
    mods_verify,
    mols_from_oa,
    oa_from_mods,
    oa_from_mols,
    oa_verify,
)
from .errors import *  # noqa: F401,F403
from .groups import (
    AbelianSpec,
    Automorphism,
    GroupTable,
    build_table,
    enumerate_automorphisms,
    fpf_triple_bruteforce,
    fpf_triple_exists,
    fpf_triple_witness,
    group_from_spec,
    identify_group,
    parse_group_spec,
)
from .latin import (
    Isotopism,
    LatinSquare,
    MolsSet,
    apply_isotopism,
    are_orthogonal,
    group_profile,
    is_group_isotopic,
    quadrangle_criterion,
)
from .partitions import (
    Partition,
    PartitionSet,
    diagonal_group_generators,
    diagonal_semilattice,
    is_cartesian,
    partition_set_stabilizer,
)

__version__ = "0.1.0"
