"""Presheaves on the total category are enriched diagrams, and back.

Run with: python3 demos/02_enriched_diagrams.py
"""

from fibsite.fibred import (
    constant_presheaf_of_categories,
    enriched_to_presheaf,
    free_enrichment,
    grothendieck_construct,
    object_restriction,
    presheaf_to_enriched,
)
from fibsite.fincat import cyclic_groupoid, poset_chain, terminal_category
from fibsite.site import representable_presheaf

# Work over the one-point site with the cyclic group of order 2 as fibre.
pt = terminal_category("U")
z2 = cyclic_groupoid(2)
a = constant_presheaf_of_categories(pt, z2)
fs = grothendieck_construct(a)
print("total morphisms:", sorted(fs.total.morphisms))

# The representable presheaf at the unique total object.
f = representable_presheaf(fs.total, fs.total.objects[0])
print("sections:", {o: f.value[o] for o in fs.total.objects})

# Read it as an enriched diagram: a right action of the group on two
# elements (the regular representation), plus trivial site actions.
x = presheaf_to_enriched(fs, f)
key = ("U", "*")
print("enriched value:", x.value[key])
print("action of the flip:", x.cat_action[("U", "r1")])

# The two readings convert back and forth on the nose.
print("round trip is the identity:", enriched_to_presheaf(fs, x) == f)

# Forgetting the group action leaves a set over the fibre objects; freely
# re-enriching multiplies by the arrows out of each object.
x0 = object_restriction(x)
print("object level size:", len(x0.total.value["U"]))
free = free_enrichment(a, x0)
print("freely enriched size:", len(free.value[key]))
