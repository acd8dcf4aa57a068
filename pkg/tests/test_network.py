import pytest

from treechild import (
    Network,
    NodeKind,
    PairKind,
    ReduciblePair,
    add_pair,
    canonical_form,
    construct_network,
    is_binary,
    is_stack_free,
    is_tree_child,
    isomorphic,
    node_kind,
    random_tcs,
    reduce_pair,
    reducible_pairs,
    reticulation_number,
    single_leaf,
    validate,
    GeneratorConfig,
)

from conftest import build_cherry, build_reticulated_cherry


class TestValidate:
    def test_single_leaf_is_valid(self):
        assert validate(single_leaf("x")) == []

    def test_outdegree_three_is_flagged(self):
        n = Network([(0, 1), (1, 2), (1, 3), (1, 4)], {2: "a", 3: "b", 4: "c"})
        diags = validate(n)
        assert any(d.invariant == "node-degrees" and 1 in d.nodes for d in diags)

    def test_two_cycle_is_flagged(self):
        n = Network([(0, 1), (1, 2), (2, 1), (2, 3), (1, 4)], {3: "a", 4: "b"})
        diags = validate(n)
        assert any(d.invariant == "acyclic" for d in diags)

    def test_duplicate_label_is_flagged(self):
        n = Network([(0, 1), (1, 2), (1, 3)], {2: "x", 3: "x"})
        assert any(d.invariant == "bijective-labels" for d in validate(n))

    def test_unlabelled_leaf_is_flagged(self):
        n = Network([(0, 1), (1, 2), (1, 3)], {2: "x"})
        assert any(d.invariant == "labelled-leaves" and 3 in d.nodes for d in validate(n))

    def test_multiple_roots_are_flagged(self):
        n = Network([(0, 2), (1, 2), (2, 3)], {3: "x"})
        diags = validate(n)
        assert any(d.invariant == "single-root" for d in diags)

    def test_root_outdegree_must_be_one(self):
        n = Network([(0, 1), (0, 2)], {1: "x", 2: "y"})
        assert any(d.invariant == "root-degree" for d in validate(n))

    def test_empty_label_is_flagged(self):
        n = Network([(0, 1), (1, 2), (1, 3)], {2: "", 3: "y"})
        assert any(d.invariant == "nonempty-label" for d in validate(n))

    def test_root_property_requires_unique_root(self):
        n = Network([(0, 2), (1, 2), (2, 3)], {3: "x"})
        with pytest.raises(ValueError, match="indegree-0"):
            n.root


class TestNodeKind:
    def test_classification(self, ret_cherry):
        assert node_kind(ret_cherry, 0) is NodeKind.ROOT
        assert node_kind(ret_cherry, 1) is NodeKind.TREE_NODE
        assert node_kind(ret_cherry, 3) is NodeKind.RETICULATION
        assert node_kind(ret_cherry, 5) is NodeKind.LEAF

    def test_unknown_node(self, cherry):
        with pytest.raises(KeyError):
            node_kind(cherry, 99)


class TestReticulationNumber:
    def test_tree_is_zero(self, cherry):
        assert reticulation_number(cherry) == 0

    def test_two_binary_reticulations(self):
        net = construct_network([("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")])
        assert reticulation_number(net) == 2

    def test_indegree_three_counts_two(self):
        net = construct_network([("a", "b")] * 3)
        assert reticulation_number(net) == 2


class TestClassPredicates:
    def test_tree_satisfies_all(self, cherry):
        assert is_binary(cherry) and is_stack_free(cherry) and is_tree_child(cherry)

    def test_stack_is_not_stack_free(self):
        # two stacked reticulations: valid as a network, but not stack-free
        edges = [
            (0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (4, 6), (5, 6),
            (6, 7), (3, 7), (7, 8), (4, 9), (5, 10), (3, 11),
        ]
        n = Network(edges, {8: "x", 9: "y", 10: "z", 11: "w"})
        assert validate(n) == []
        assert not is_stack_free(n)
        assert not is_tree_child(n)

    def test_tree_node_with_only_reticulation_children(self):
        edges = [
            (0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5),
            (4, 6), (5, 7), (6, 8), (6, 9), (7, 10), (7, 11),
        ]
        n = Network(edges, {8: "a", 9: "b", 10: "c", 11: "d"})
        assert validate(n) == []
        assert is_stack_free(n)
        assert not is_tree_child(n)

    def test_nonbinary_reticulation(self):
        net = construct_network([("a", "b")] * 3)
        assert not is_binary(net)
        assert is_tree_child(net)


class TestReduciblePairs:
    def test_cherry_gives_both_orders(self, cherry):
        assert reducible_pairs(cherry) == {
            ReduciblePair("x", "y", PairKind.CHERRY),
            ReduciblePair("y", "x", PairKind.CHERRY),
        }

    def test_reticulated_cherry_gives_one_order(self, ret_cherry):
        assert reducible_pairs(ret_cherry) == {
            ReduciblePair("x", "y", PairKind.RETICULATED_CHERRY)
        }

    def test_single_leaf_has_none(self):
        assert reducible_pairs(single_leaf("x")) == set()


class TestReducePair:
    def test_cherry_reduction(self, cherry):
        reduced = reduce_pair(cherry, ("x", "y"))
        assert isomorphic(reduced, single_leaf("y"))

    def test_reticulated_cherry_reduction(self, ret_cherry):
        reduced = reduce_pair(ret_cherry, ("x", "y"))
        assert isomorphic(reduced, build_cherry("x", "y"))

    def test_non_reducible_pair_is_identity(self, ret_cherry):
        assert reduce_pair(ret_cherry, ("y", "x")) is ret_cherry
        assert reduce_pair(ret_cherry, ("a", "b")) is ret_cherry

    def test_reduction_matches_reducible_pairs(self):
        for seed in range(30):
            cfg = GeneratorConfig(2 + seed % 5, seed % 4, seed=seed)
            net = construct_network(random_tcs(cfg)) if cfg.taxa_count > 1 else single_leaf("a")
            pairs = {rp.ordered for rp in reducible_pairs(net)}
            taxa = sorted(net.taxa)
            for x in taxa:
                for y in taxa:
                    if x == y:
                        continue
                    changed = not isomorphic(reduce_pair(net, (x, y)), net)
                    assert changed == ((x, y) in pairs), (seed, x, y)

    def test_preserves_validity_and_tree_childness(self):
        for seed in range(40):
            cfg = GeneratorConfig(3 + seed % 4, seed % 4, seed=seed + 100)
            net = construct_network(random_tcs(cfg))
            for rp in reducible_pairs(net):
                reduced = reduce_pair(net, rp.ordered)
                assert validate(reduced) == []
                assert is_tree_child(reduced)

    def test_multi_parent_reticulation_survives_one_reduction(self):
        net = construct_network([("a", "b")] * 3)
        reduced = reduce_pair(net, ("a", "b"))
        assert reticulation_number(reduced) == 1
        assert isomorphic(reduced, construct_network([("a", "b")] * 2))

    def test_each_taxon_is_second_in_at_most_one_pair(self):
        # outdegree-2 tree nodes leave room for only one pair ending in a leaf
        for seed in range(40):
            cfg = GeneratorConfig(2 + seed % 7, seed % 5, seed=seed + 200)
            net = construct_network(random_tcs(cfg))
            seconds = [rp.second for rp in reducible_pairs(net)]
            assert len(seconds) == len(set(seconds))


class TestAddPair:
    def test_new_leaf_forms_cherry(self):
        assert isomorphic(add_pair(single_leaf("y"), ("x", "y")), build_cherry("x", "y"))

    def test_existing_leaf_forms_reticulated_cherry(self, cherry):
        net = add_pair(cherry, ("x", "y"))
        assert isomorphic(net, build_reticulated_cherry("x", "y"))
        assert reticulation_number(net) == 1

    def test_reticulation_parent_gains_an_edge(self):
        base = construct_network([("x", "y"), ("x", "z"), ("y", "z")])
        grown = add_pair(base, ("x", "z"))
        assert max(grown.indegree(v) for v in grown.nodes) == 3
        assert is_stack_free(grown)
        assert validate(grown) == []

    def test_requires_second_coordinate_present(self, cherry):
        with pytest.raises(ValueError):
            add_pair(cherry, ("a", "b"))

    def test_round_trip_add_then_reduce(self):
        for seed in range(40):
            cfg = GeneratorConfig(2 + seed % 6, seed % 4, seed=seed)
            net = construct_network(random_tcs(cfg))
            for rp in sorted(reducible_pairs(net))[:3]:
                rebuilt = add_pair(reduce_pair(net, rp.ordered), rp.ordered)
                assert isomorphic(rebuilt, net), (seed, rp)

    def test_adding_any_legal_pair_is_undone_by_reducing_it(self):
        import random

        rng = random.Random(5)
        for seed in range(40):
            cfg = GeneratorConfig(2 + seed % 5, seed % 4, seed=seed + 300)
            net = construct_network(random_tcs(cfg))
            taxa = sorted(net.taxa)
            y = rng.choice(taxa)
            x = rng.choice([t for t in taxa if t != y] + ["fresh1", "fresh2"])
            grown = add_pair(net, (x, y))
            assert validate(grown) == []
            assert isomorphic(reduce_pair(grown, (x, y)), net), (seed, x, y)


class TestIsomorphic:
    def test_reflexive(self, ret_cherry):
        assert isomorphic(ret_cherry, ret_cherry)

    def test_label_mismatch(self):
        assert not isomorphic(build_cherry("x", "y"), build_cherry("x", "z"))

    def test_invariant_under_id_renaming(self, ret_cherry):
        shift = {v: v + 17 for v in ret_cherry.nodes}
        renamed = Network(
            [(shift[u], shift[v]) for u, v in ret_cherry.edges],
            {shift[v]: lab for v, lab in ret_cherry.leaf_labels.items()},
        )
        assert isomorphic(ret_cherry, renamed)
        assert canonical_form(ret_cherry) == canonical_form(renamed)

    def test_distinguishes_topologies(self):
        caterpillar = construct_network([("a", "b"), ("b", "c"), ("c", "d")])
        balanced = construct_network([("a", "b"), ("c", "d"), ("b", "d")])
        assert not isomorphic(caterpillar, balanced)

    def test_child_order_does_not_matter(self):
        n1 = Network([(0, 1), (1, 2), (1, 3)], {2: "x", 3: "y"})
        n2 = Network([(9, 8), (8, 7), (8, 6)], {7: "y", 6: "x"})
        assert isomorphic(n1, n2)

    def test_different_reticulation_wiring(self):
        n1 = construct_network([("a", "b"), ("a", "b"), ("b", "c")])
        n2 = construct_network([("a", "b"), ("a", "c"), ("b", "c")])
        assert len(n1.nodes) == len(n2.nodes)
        assert not isomorphic(n1, n2)

    def test_same_network_from_symmetric_sequences(self):
        n1 = construct_network([("a", "b"), ("a", "c"), ("b", "c")])
        n2 = construct_network([("a", "c"), ("a", "b"), ("b", "c")])
        assert isomorphic(n1, n2)

    def test_non_tree_child_networks_use_exact_matching(self):
        # two tree nodes sharing both reticulation children defeat the
        # bottom-up form, so these graphs exercise the backtracking matcher
        edges = [
            (0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5),
            (4, 6), (5, 7), (6, 8), (6, 9), (7, 10), (7, 11),
        ]
        labels = {8: "a", 9: "b", 10: "c", 11: "d"}
        n1 = Network(edges, labels)
        assert not is_tree_child(n1)
        shift = {v: 50 - v for v in n1.nodes}
        n2 = Network(
            [(shift[u], shift[v]) for u, v in edges],
            {shift[v]: lab for v, lab in labels.items()},
        )
        assert isomorphic(n1, n2)
        relabelled = Network(edges, {8: "a", 9: "c", 10: "b", 11: "d"})
        assert not isomorphic(n1, relabelled)
