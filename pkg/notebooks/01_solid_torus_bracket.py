"""
Curves in the solid torus
=========================

A torus curve pushed into a solid torus becomes a polynomial in the core z
with Laurent coefficients in t.  This walk-through draws a few curves,
resolves them, and checks the answers against a brute-force state sum.
"""

from skeinhh.annulus import resolve, state_sum
from skeinhh.layers import curve_diagram, delta_diagram, gamma_diagram, stack

# The longitude is the core itself, and the meridian bounds a disc, so it is a
# trivial loop worth -(t^2 + t^-2).
print("(1,0) ->", resolve(curve_diagram(1, 0)))
print("(0,1) ->", resolve(curve_diagram(0, 1)))

# (1,1) winds once around the core and picks up one framing curl.
print("(1,1) ->", resolve(curve_diagram(1, 1)))

# Longer curves cross themselves.  The memoised resolver and the 2^n state sum
# agree exactly.
for a, b in [(2, 1), (2, -1), (3, 1)]:
    d = curve_diagram(a, b)
    r = resolve(d)
    print(f"({a},{b}): {d.n_crossings} crossings -> {r}   state sum agrees: {r == state_sum(d)}")

# %%
# Stacking puts later curves further out.  A core with a (1,-1) curve outside
# it clasps; in the other order the two come apart.
print("clasp  :", resolve(stack(curve_diagram(1, 0), curve_diagram(1, -1))))
print("apart  :", resolve(stack(curve_diagram(1, -1), curve_diagram(1, 0))))

# The unframed clasp and the doubled (1,-1) curve differ by a unit.
delta = resolve(delta_diagram())
gamma = resolve(gamma_diagram())
print("delta  :", delta)
print("gamma  :", gamma)
print("gamma == t^6 delta:", gamma == delta * {6: 1})
