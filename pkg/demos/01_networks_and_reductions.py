"""Networks, their classification, and cherry reductions.

Builds a small network, inspects its structure, and walks a reduction.
Run with: python3 demos/01_networks_and_reductions.py
"""

from treechild import (
    is_binary,
    is_stack_free,
    is_tree_child,
    isomorphic,
    parse_enewick,
    reduce_pair,
    reducible_pairs,
    reticulation_number,
    validate,
    write_enewick,
)

# A binary tree-child network on {1, 2, 3} with one reticulation: leaf 1
# hangs below a reticulation whose parents sit above 2 and above 3.
net = parse_enewick("(((1)#H1,2),(#H1,3));")
print("network:        ", write_enewick(net))
print("valid:          ", validate(net) == [])
print("reticulations:  ", reticulation_number(net))
print("binary:         ", is_binary(net))
print("stack-free:     ", is_stack_free(net))
print("tree-child:     ", is_tree_child(net))

print("\nreducible pairs:")
for rp in sorted(reducible_pairs(net)):
    print(f"  ({rp.first},{rp.second})  [{rp.kind.value}]")

# Reducing the reticulated cherry (1,2) deletes the reticulation edge on the
# side of 2; the result is a plain tree.
step1 = reduce_pair(net, ("1", "2"))
print("\nafter reducing (1,2):", write_enewick(step1))

# Reducing a pair that is not reducible changes nothing.
unchanged = reduce_pair(net, ("2", "3"))
print("reducing (2,3) is a no-op:", isomorphic(unchanged, net))

# Two more cherry reductions reach the terminal single-leaf network.
step2 = reduce_pair(step1, ("1", "3"))
step3 = reduce_pair(step2, ("2", "3"))
print("after (1,3) and (2,3):", write_enewick(step3))
