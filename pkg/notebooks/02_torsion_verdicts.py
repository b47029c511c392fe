"""
Torsion verdicts for three genus one splittings
===============================================

For each manifold we build the two handlebody ideals J and K, compute
Tor_1 = (J n K) / (JK + relation) up to a degree bound, lift every class to
a Hochschild 1-chain and read off the t-adic valuation of its boundary.
"""

from skeinhh.heegaard import preset
from skeinhh.hochschild import HochschildChain, boundary, lift_class, torsion_verdict
from skeinhh.polyring import parse_poly, tor1_module
from skeinhh.surface import L, LM, SurfaceElement, torus_relation

# In[1]:
# The lens space L(2,1).  Both ideals contain y - z, which is where Tor_1
# comes from.

lens = preset("lens:2,1")
print(lens.describe())
print("J =", lens.J)
print("K =", lens.K)

tor = tor1_module(lens.J, lens.K, torus_relation(), 8)
print("Tor_1 dimension:", tor.dimension)
for b in tor.vector_space_basis:
    print("  class", b)

# In[2]:
# Each class lifts to a cycle on the nose, so nothing survives to the
# specialisation t = -1 as torsion.

for cls in ("y - z", "y*(y - z)"):
    lift = lift_class(parse_poly(cls), "library")
    print(f"{cls:>10}: lift {lift.surface_part()}")
    print(f"{'':>10}  boundary {boundary(lift, lens) or 0}")

print("verdict:", torsion_verdict(lens).verdict)

# In[3]:
# S1 x S2.  The chain L - LM specialises to y - z, which is in both ideals,
# yet its boundary only vanishes at t = -1: valuation one.

s1s2 = preset("s1xs2")
alpha = HochschildChain.simple(SurfaceElement([((L,), 1), ((LM,), -1)]))
bd = boundary(alpha, s1s2)
print("d(alpha) =", bd)
print("valuation:", bd.valuation())

report = torsion_verdict(s1s2)
print("verdict:", report.verdict)
for note in report.notes:
    print("  note:", note)

# In[4]:
# S3.  The two ideals are lines on the cubic surface meeting at its node, so
# Tor_1 is one-dimensional even though the quotient is a single point.

s3 = preset("s3")
report = torsion_verdict(s3)
print(report.dumps())
