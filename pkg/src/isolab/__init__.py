"""isocrystal-lab: exact arithmetic for p-divisible group invariants.

Newton polygons and their stratification posets, truncated Witt vectors
and the local Cartier ring, module presentations with a semilinear
Frobenius, q-Weil number classification, and (m,n)-semimodule
combinatorics.  Everything runs over exact integers and rationals.
"""

from .cartier import CartierContext, CartierElement, artin_hasse, cartier_normalize
from .dieudonne import (
    DieudonnePresentation,
    DisplayNormalForm,
    TorsionProfile,
    a_number,
    display_matrix,
    dualize,
    gmn_module,
    gmn_normal_form,
    np_of_display,
    np_sigma_trivial,
    serre_tate_torsion,
)
from .errors import InputError, IsolabError, PlaceResolutionError, PrecisionError
from .newton import (
    Comparison,
    NewtonPolygon,
    ValuationPolygon,
    np_compare,
    np_diamond,
    np_dim,
    np_dual,
    np_from_pairs,
    np_from_slopes,
    np_is_symmetric,
    np_of_polynomial,
    np_precedes,
    np_sdim,
    np_triangle,
    p_rank,
    render_pairs,
)
from .poset import (
    NPPoset,
    dot_export,
    enumerate_polygons,
    longest_chain,
    poset_build,
    specialization_witness,
)
from .semimodule import SemiModule, sm_dual, sm_enumerate, sm_from_jumps, sm_normalize, sm_principal
from .weil import (
    HondaTateData,
    WeilNumber,
    WeilRejection,
    albert_classify,
    honda_tate,
    weil_from_real_trace,
    weil_verify,
)
from .witt import WittContext, WittElement, ghost_components, ghost_inverse

__version__ = "0.1.0"
