"""Merging two stars: one big star versus two hubs joined by a link.

The difference of effective biases factors through (4/3 - 5/2 delta), so the
two arrangements swap order at delta = 8/15.  The second half compares four
two-person conversations on the joined network.
"""

from fractions import Fraction

from conftalk.scenarios import closed_form, protocol_bias

k, l = 2, 3
big = protocol_bias("bigstar_full", k, l)
join = protocol_bias("hubhub_full", k, l)
print(f"big star S_{k + l + 1}, hub talks to a leaf:  {big}")
print(f"S_{k} joined to S_{l} at the hubs:           {join}")
print("difference:", big - join)
print("closed form:", closed_form("two_star_diff", k, l))
print("at delta = 8/15:", (big - join).evaluate(Fraction(8, 15)))

print("\ntwo-person conversations on the hub-linked join")
for name, label in (
    ("hubhub_pair", "hub to hub"),
    ("bigstar_pair", "hub to leaf, big star"),
    ("hubleaf_pair", "hub to own leaf"),
    ("leafleaf_pair", "leaf to far leaf"),
):
    b = protocol_bias(name, k, l)
    print(f"  {label:22s} {str(b):30s} at 1/2: {float(b.evaluate(Fraction(1, 2))):.4f}")
