"""Every labeled tree on a few nodes.

Checks that path sharing reproduces the enumerated Myerson values and that
no tree is worth more than the star.
"""

from collections import Counter
from fractions import Fraction

from conftalk import (
    check_star_dominance,
    dyadic_conferences,
    enumerate_labeled_trees,
    myerson_conference,
    tree_path_sharing,
)
from conftalk.graph import diameter

n = 5
trees = list(enumerate_labeled_trees(n))
print(f"{len(trees)} labeled trees on {n} nodes")
print("diameters:", dict(sorted(Counter(diameter(t) for t in trees).items())))

same = sum(tree_path_sharing(t) == myerson_conference(t, dyadic_conferences(t)) for t in trees)
print(f"path sharing matches enumeration on {same} of {len(trees)}")

grid = [Fraction(i, 10) for i in range(1, 10)]
for m in range(3, 8):
    rep = check_star_dominance(m, grid)
    print(f"n={m}: {rep.trees:6d} trees, {rep.histograms} distinct worths, violations: {len(rep.violations)}")
