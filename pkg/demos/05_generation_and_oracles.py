"""Random instances and the brute-force oracles that keep the solver honest.

Run with: python3 demos/05_generation_and_oracles.py
"""

from treechild import (
    GeneratorConfig,
    brute_force_min_tcs,
    construct_network,
    displays_bruteforce,
    generate_instance,
    random_tcs,
    solve,
    write_enewick,
)

cfg = GeneratorConfig(taxa_count=5, target_weight=2, seed=42, subnetwork_count=3)

# The generator builds a host network from a random sequence of the exact
# target weight, then derives instance members by deleting reticulation
# edges, so the instance is compatible with optimum at most the target.
seq = random_tcs(cfg)
host = construct_network(seq)
print("host (weight {}):".format(seq.weight), write_enewick(host))

inst = generate_instance(cfg)
for i, net in enumerate(inst.networks, start=1):
    print(f"member {i}:", write_enewick(net))
    assert displays_bruteforce(host, net)

result = solve(inst)
print("\nsolver optimum:", result.weight)

# The oracle re-derives the optimum by exhaustive enumeration over every
# reducible pair, with none of the solver's shortcuts.
report = brute_force_min_tcs(inst, k_max=2)
print("oracle optimum:", report.min_weight, f"({report.states_explored} states)")
print("witness:", list(report.witness_sequence))
assert report.min_weight == result.weight

# Same seed, same instance: generation is reproducible.
again = generate_instance(cfg)
print("\nreproducible:", [write_enewick(n) for n in again.networks] == [write_enewick(n) for n in inst.networks])
