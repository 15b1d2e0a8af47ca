"""Stack cohomology and its invariance across equivalences.

Run with: python3 demos/04_stack_cohomology.py
"""

from fibsite.cohom import (
    ZZ,
    compatible_family_group,
    constant_abelian_presheaf,
    invariance_report,
    stack_cohomology,
    zmod,
)
from fibsite.fibred import (
    MorphismOfPresheavesOfCategories,
    constant_presheaf_of_categories,
    grothendieck_construct,
)
from fibsite.fincat import Functor, codiscrete_groupoid, cyclic_groupoid, terminal_category
from fibsite.site import trivial_topology

pt = terminal_category("U")
z2 = cyclic_groupoid(2)

# The classifying stack of Z/2 over the point: its cohomology with integer
# coefficients is the group cohomology of Z/2.
g = constant_presheaf_of_categories(pt, z2)
fs = grothendieck_construct(g)
coeff = constant_abelian_presheaf(fs.total, ZZ)
groups = stack_cohomology(trivial_topology(pt), g, coeff, 4)
print("H^*(point / Z2; Z):", [str(x) for x in groups])
print("H^0 against the direct computation:", compatible_family_group(fs.total, coeff))

# Mod-2 coefficients: Z/2 in every degree.
groups2 = stack_cohomology(
    trivial_topology(pt), g, constant_abelian_presheaf(fs.total, zmod(2)), 4
)
print("H^*(point / Z2; Z/2):", [str(x) for x in groups2])

# Invariance: collapsing the contractible two-object groupoid onto the
# trivial one does not change the cohomology.
e2 = codiscrete_groupoid(["o1", "o2"])
triv = cyclic_groupoid(1)
ge = constant_presheaf_of_categories(pt, e2)
gt = constant_presheaf_of_categories(pt, triv)
collapse = MorphismOfPresheavesOfCategories(
    domain=ge,
    codomain=gt,
    components={
        "U": Functor(
            domain=e2,
            codomain=triv,
            object_map={o: "*" for o in e2.objects},
            morphism_map={m: "id_*" for m in e2.morphisms},
        )
    },
)
rep = invariance_report(
    collapse, constant_abelian_presheaf(grothendieck_construct(gt).total, ZZ), 3
)
print("collapse comparison passes:", rep.passed)
print("  codomain side:", [str(x) for x in rep.target])
print("  pulled back:  ", [str(x) for x in rep.source])
