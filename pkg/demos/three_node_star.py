"""Three people in a line: sender, receiver at the hub, and a witness.

Walks the whole pipeline by hand: coalition worths, Myerson values, bias
components, the effective bias, and the partition equilibrium it allows.
"""

from fractions import Fraction

from conftalk import (
    Conversation,
    bias_component,
    bias_report,
    build_graph,
    dyadic_conferences,
    myerson_conference,
    restricted_worth,
    solve_conversation,
)

S, R, W = 0, 1, 2
g = build_graph(3, [(S, R), (R, W)])
h = dyadic_conferences(g)

print("worth of everyone:   ", restricted_worth(g, h, {S, R, W}))
print("worth of sender+hub: ", restricted_worth(g, h, {S, R}))
print("worth of the two ends:", restricted_worth(g, h, {S, W}), "(no conference joins them)")

mu = myerson_conference(g, h)
for name, v in (("sender", S), ("receiver", R), ("witness", W)):
    print(f"Myerson value of the {name:8s}: {mu[v]}")

# how much the sender loses if the witness walks away
print("sender's loss without the witness:", bias_component(g, h, None, removed=W, subject=S))

rep = bias_report(g, h, None, Conversation([S, R, W], S, R))
print("effective bias:", rep.effective)

# the same bias for every assignment of roles
for s, r in ((S, R), (R, S), (S, W), (W, R)):
    assert bias_report(g, h, None, Conversation([S, R, W], s, r)).effective == rep.effective

print()
print(" delta   b_eff      N   boundaries")
for i in range(1, 10):
    d = Fraction(i, 20)
    eq = solve_conversation(g, h, None, Conversation([S, R, W], S, R), d)
    bounds = ", ".join(str(t) for t in eq.boundaries)
    print(f" {float(d):.2f}   {float(eq.b_eff):.5f}  {eq.n_partitions:2d}   {bounds}")
