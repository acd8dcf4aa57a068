"""Tree-child sequences: the two conditions, weight, and construction.

Run with: python3 demos/02_sequences_and_construction.py
"""

from treechild import (
    TCSequence,
    construct_network,
    forbidden,
    is_tcs,
    reduces_set,
    reticulation_number,
    weight,
    write_enewick,
)

good = [("x", "y"), ("x", "z"), ("y", "z")]
bad = [("x", "y"), ("y", "x")]  # x is forbidden once used as a first coordinate

print("conditions hold for", good, "->", is_tcs(good))
print("conditions fail for", bad, " ->", is_tcs(bad))
print("forbidden after [(x,y)]:", sorted(forbidden([("x", "y")])))

# Weight counts how far the sequence exceeds a plain tree reduction:
# |S| - |leaves involved| + 1.
print("\nweight of a tree-like sequence:", weight([("x", "y"), ("y", "z")]))
print("weight of", good, ":", weight(good))

# Constructing from a sequence runs the pairs backwards, starting from the
# last second coordinate; the reticulation number always equals the weight.
seq = TCSequence(tuple(good))
net = construct_network(seq)
print("\nconstructed network:", write_enewick(net))
print("reticulation number == weight:", reticulation_number(net) == seq.weight)

# The sequence reduces its own construction back to a single leaf.
print("sequence reduces its network:", reduces_set([net], seq))

# A heavier sequence on the same taxa: repeating a pair adds an edge to the
# same reticulation.
heavy = TCSequence((("x", "y"), ("x", "y"), ("x", "y")))
print("\nrepeated pair, weight", heavy.weight, "->", write_enewick(construct_network(heavy)))
