"""A first walk through the construction: totals, projections, topologies.

Run with: python3 demos/01_fibred_site_tour.py
"""

from fibsite.fibred import (
    constant_presheaf_of_categories,
    grothendieck_construct,
    induced_topology,
)
from fibsite.fincat import (
    cyclic_groupoid,
    poset_chain,
    product_category,
    terminal_category,
)
from fibsite.site import (
    saturate_topology,
    sieve_from_generators,
    trivial_topology,
    verify_topology,
)

# The base site: two objects V -> U, with the sieve generated by the arrow
# declared as a cover of U (the saturation fills in the rest).
chain = poset_chain(["V", "U"])
topo = saturate_topology(
    chain, {"U": {sieve_from_generators(chain, "U", {"a_V_U"})}}
)
print("base covers:", {u: len(topo.covering(u)) for u in chain.objects})

# A constant one-arrow fibre: the total category is literally the product.
j = poset_chain(["x", "y"])
fs = grothendieck_construct(constant_presheaf_of_categories(chain, j))
print("total objects:", sorted(fs.total.objects))
print("total = product?", fs.total == product_category(chain, j))

# The covering sieves upstairs are the sieves containing a preimage of a
# base cover.  With a non-invertible fibre arrow there are strictly more of
# them than bare preimages; the verifier confirms the axioms regardless.
upstairs = induced_topology(fs, topo)
print("induced covers:", {t: len(upstairs.covering(t)) for t in sorted(fs.total.objects)})
print("axioms verified:", verify_topology(upstairs) == [])

# A groupoid fibre behaves like the classical picture: every covering sieve
# is exactly a preimage.
z2 = cyclic_groupoid(2)
fs2 = grothendieck_construct(constant_presheaf_of_categories(chain, z2))
up2 = induced_topology(fs2, topo)
print("groupoid fibre covers:", {t: len(up2.covering(t)) for t in sorted(fs2.total.objects)})
print("axioms verified:", verify_topology(up2) == [])

# Trivial base topology induces the trivial topology upstairs.
up3 = induced_topology(fs2, trivial_topology(chain))
print(
    "trivial base gives trivial induced:",
    all(len(up3.covering(t)) == 1 for t in fs2.total.objects),
)
