"""Who sits at the hub of a star matters.

With the sender at the hub, the effective bias grows with the number of
leaves.  With a witness at the hub, adding a leaf helps or hurts depending
on whether delta is below or above 3/5.
"""

from fractions import Fraction

from conftalk import Conversation, bias_report, make_star, partition_count, sign_change

print(" k   sender at hub              witness at hub")
witness = {}
for k in range(2, 8):
    st = make_star(k)
    nodes = st.graph.nodes
    sender_hub = bias_report(st.graph, st.conferences, None, Conversation(nodes, st.hub, 1)).effective
    witness[k] = bias_report(st.graph, st.conferences, None, Conversation(nodes, 1, 2)).effective
    print(f" {k}   {str(sender_hub):25s}  {witness[k]}")

marginal = witness[3] - witness[2]
print("\neffect of a third leaf with a witness hub:", marginal)
root = sign_change(marginal, Fraction(1, 10), Fraction(9, 10), Fraction(1, 10**12))
print("changes sign at delta ~", float(root))

for d in (Fraction(1, 20), Fraction(1, 10)):
    counts = [partition_count(witness[k](d)) for k in range(2, 8)]
    print(f"partitions at delta={d}, k=2..7:", counts)
