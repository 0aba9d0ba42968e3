"""Linking two stars through their hubs or through two leaves.

The hub link gives a higher effective bias for almost every delta.  At
k = l = 2 the gap turns negative just below delta = 1.  The table is the
same data the ``curve`` command emits as CSV.
"""

from fractions import Fraction

from conftalk import sign_change
from conftalk.scenarios import hub_minus_leaf

gap = hub_minus_leaf(2, 2)
print("hub link minus leaf link, k = l = 2:", gap)
print("value at delta = 1:", gap.evaluate(1), f"({float(gap.evaluate(1))})")
root = sign_change(gap, Fraction(99, 100), 1, Fraction(1, 10**9))
print(f"sign change at delta ~ {float(root):.6f}")

print("\n delta  " + "  ".join(f"({k},{l})" for k, l in [(1, 2), (2, 2), (2, 3), (3, 3)]))
gaps = {kl: hub_minus_leaf(*kl) for kl in [(1, 2), (2, 2), (2, 3), (3, 3)]}
for i in (10, 50, 90, 99):
    d = Fraction(i, 100)
    print(f" {float(d):.2f}  " + "  ".join(f"{float(p.evaluate(d)):+.3f}" for p in gaps.values()))

print("\nat k = l = 1 both joins are the same path:", hub_minus_leaf(1, 1).is_zero())
