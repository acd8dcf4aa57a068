"""Incompatible inputs: witnesses and proofs of infeasibility.

Not every set of tree-child networks embeds in a common tree-child network.
Run with: python3 demos/04_incompatibility.py
"""

from treechild import (
    Instance,
    parse_enewick,
    quick_incompatibility,
    solve,
    tree_child_sequence,
    write_enewick,
)

# Opposite reticulated cherries on the same two taxa can never be displayed
# together: each forces its own ordered pair into any reducing sequence, and
# a tree-child sequence cannot contain both (1,2) and (2,1).
n1 = parse_enewick("(((1)#H1,2),(#H1,3));")
n2 = parse_enewick("(((2)#H1,1),(#H1,3));")
print("n1:", write_enewick(n1))
print("n2:", write_enewick(n2))

inst = Instance.from_networks([n1, n2])
witness = quick_incompatibility(inst)
print("\nwitness:", witness)
print("solve:", solve(inst))

# The witness scan is a shortcut, not a decision procedure: its absence does
# not certify compatibility.  The search itself proves infeasibility when it
# exhausts the space without ever hitting a budget cutoff.
print("\nbounded searches fail at every budget:")
for k in range(4):
    print(f"  k={k}:", tree_child_sequence(inst, (), k))
