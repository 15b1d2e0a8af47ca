"""Desk-scale exact computations on sites fibred over presheaves of categories.

The package is organized by layer:

- fincat: finite categories, functors, groupoids, comma categories,
  components, set-valued colimits and pointwise left Kan extension;
- site: sieves, Grothendieck topologies and their verifier, the sheaf
  condition, sheafification;
- fibred: the construction of the total site over a presheaf of categories,
  its induced topology, the presheaf/enriched-diagram equivalence, and the
  restriction / left Kan adjunctions;
- sset: truncated simplicial sets, nerves, bisimplicial diagonals, exact
  integer homology, and weak-equivalence evidence;
- hocopb: the homotopy-colimit/pullback adjunction over groupoid nerves and
  its sectionwise version over presheaves of groupoids;
- cohom: cochain complexes, stack cohomology, the Cech approximation, and
  the homotopy-invariance comparison;
- snf: the Smith normal form and integer lattice kernel;
- sampling: seeded random instances for the verification harnesses;
- bundle / report / cli: the declarative text format and the command line.
"""

from .cohom import (
    AbelianPresheaf,
    CochainComplex,
    FgAbelianGroup,
    TRIVIAL_GROUP,
    ZZ,
    cech_cohomology,
    cochain_complex,
    cohomology_of_complex,
    compatible_family_group,
    constant_abelian_presheaf,
    invariance_report,
    restrict_abelian_along,
    stack_cohomology,
    zmod,
)
from .errors import CapExceeded, FibsiteError, InputError, RefusedMode, ValidationFailure
from .fibred import (
    EnrichedSetDiagram,
    FibredSite,
    MorphismOfPresheavesOfCategories,
    OverPresheaf,
    PresheafDiagram,
    PresheafOfCategories,
    PresheafOfGroupoids,
    constant_presheaf_of_categories,
    enriched_to_presheaf,
    free_enrichment,
    grothendieck_construct,
    induced_topology,
    is_sectionwise_equivalence,
    left_kan_along,
    make_translation_presheaf,
    object_restriction,
    presheaf_to_enriched,
    restrict_along,
    total_functor,
)
from .fincat import (
    FiniteCategory,
    Functor,
    Groupoid,
    SetValuedFunctor,
    colim_set,
    comma_category,
    comma_data,
    left_kan_set,
    opposite,
    pi0,
    pi0_classes,
    validate_category,
    validate_functor,
    validate_groupoid,
)
from .hocopb import (
    EnrichedGroupoidDiagram,
    EnrichedOverNerve,
    GroupoidDiagram,
    OverNerve,
    check_triangles,
    counit_epsilon,
    hocolim,
    pb,
    presheaf_hocolim_pb,
    unit_eta,
)
from .site import (
    GrothendieckTopology,
    Presheaf,
    Sieve,
    is_sheaf,
    maximal_sieve,
    pullback_sieve,
    sheafify,
    sieve_from_generators,
    trivial_topology,
    verify_topology,
)
from .snf import SmithForm, smith_normal_form
from .sset import (
    BisimplicialSet,
    HomologyResult,
    SimplicialMap,
    TruncatedSimplicialSet,
    diagonal,
    homology,
    interchange_comparison,
    nerve,
    we_evidence,
)

__version__ = "0.1.0"
