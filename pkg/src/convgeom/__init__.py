"""Convex geometries, closure systems and the lattice conditions that characterize them."""

from .checks import (
    CanonicalJoinDecomposition,
    PropertyReport,
    canonical_join_decomposition,
    extreme_point_join,
    is_atomistic,
    is_distributive,
    is_locally_distributive,
    is_lower_semimodular,
    is_sd_join,
    is_sd_join_star,
    satisfies_sd_join_n,
    scs_geom_report,
    sd_join_n_terms,
    unique_min_ji,
)
from .closure import (
    AepWitness,
    ClosureSystem,
    aep,
    cji_correspondence,
    cld_lattice,
    close,
    cover_singleton,
    extreme_points,
    is_convex_geometry,
    make_closure,
    standard_representation,
)
from .errors import ConvGeomError
from .lattice import (
    FiniteLattice,
    RefinementWitness,
    boolean,
    build_lattice,
    chain,
    construct,
    covers_of,
    doubled_atom,
    dual,
    ji_below,
    lattice_algebra,
    m3,
    n5,
    product,
    refines,
)
from .generators import co_poset, filter_lattice, make_poset, make_semilattice, sub_meet, suborders

__version__ = "0.1.0"
