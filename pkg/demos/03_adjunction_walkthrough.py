"""The homotopy-colimit / pullback adjunction over a groupoid nerve.

Run with: python3 demos/03_adjunction_walkthrough.py
"""

from fibsite.fincat import cyclic_groupoid
from fibsite.hocopb import (
    OverNerve,
    check_triangles,
    counit_epsilon,
    hocolim,
    pb,
    unit_eta,
)
from fibsite.sampling import constant_diagram, orbit_diagram
from fibsite.sset import (
    homology,
    identity_simplicial_map,
    nerve,
    standard_simplex,
    we_evidence,
)

z2 = cyclic_groupoid(2)
d = 4

# The one-point diagram: its homotopy colimit is the classifying space.
one = constant_diagram(z2, standard_simplex(0, d))
h = hocolim(one, d)
print("H_*(hocolim of the point):", homology(h.total, 3).factors)

# The free orbit of a point: two points swapped by the flip.  The colimit
# is contractible, as the homology of the total space confirms.
orbit = orbit_diagram(z2, "*", standard_simplex(0, d))
print("H_*(hocolim of the free orbit):", homology(hocolim(orbit, d).total, 2).factors)

# Pulling the nerve back over itself gives the slice nerves: contractible
# at every object, with simplex counts 2 * 2^n.
nz = nerve(z2, d)
x = OverNerve(base=z2, total=nz, structure=identity_simplicial_map(nz))
p = pb(x)
print("pb simplex counts:", [len(p.value["*"].simplices[n]) for n in range(d + 1)])
print("H_*(pb):", homology(p.value["*"], 2).factors)

# Unit and counit: exact triangle identities, and homology evidence that
# both are weak equivalences.
print("triangles exact:", check_triangles(a=one, x=x).passed)
eta = unit_eta(x)
print("unit evidence:", we_evidence(eta, 3).passed)
for y, eps in counit_epsilon(one).items():
    print(f"counit evidence at {y}:", we_evidence(eps, 3).passed)
