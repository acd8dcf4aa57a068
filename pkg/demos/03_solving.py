"""Combining networks: the bounded search and the full solver.

Run with: python3 demos/03_solving.py
"""

from treechild import (
    Instance,
    displays_bruteforce,
    parse_enewick,
    solve,
    tree_child_sequence,
    write_enewick,
)

# Two conflicting rootings of the same three taxa.  No tree displays both,
# but one reticulation reconciles them.
t1 = parse_enewick("((1,2),3);")
t2 = parse_enewick("((1,3),2);")
inst = Instance.from_networks([t1, t2])

print("budget 0:", tree_child_sequence(inst, (), 0))
seq = tree_child_sequence(inst, (), 1)
print("budget 1:", list(seq), "weight", seq.weight)

result = solve(inst)
print("\noptimal weight:", result.weight)
print("solution network:", write_enewick(result.network))
print("displays t1:", displays_bruteforce(result.network, t1))
print("displays t2:", displays_bruteforce(result.network, t2))

print("\nsearch statistics:")
stats = result.stats
print("  nodes expanded:    ", stats.nodes_expanded)
print("  trivial reductions:", stats.trivial_reductions)
print("  max branch width:  ", stats.max_branch_width)

# Networks can be inputs too, not just trees.
n1 = parse_enewick("((((1)#H1,2),3),(#H1,4));")
n2 = parse_enewick("(((1,2),(3)#H2),(#H2,4));")
combined = solve(Instance.from_networks([n1, n2]))
print("\ntwo one-reticulation networks combine at weight", combined.weight)
print("solution:", write_enewick(combined.network))
