import pytest

from treechild import (
    ENewickError,
    GeneratorConfig,
    construct_network,
    is_tree_child,
    isomorphic,
    parse_document,
    parse_enewick,
    random_tcs,
    reticulation_number,
    single_leaf,
    validate,
    write_enewick,
)

from conftest import build_cherry


class TestParse:
    def test_plain_tree(self):
        net = parse_enewick("((1,2),3);")
        assert validate(net) == []
        assert net.taxa == {"1", "2", "3"}
        assert reticulation_number(net) == 0

    def test_single_reticulation(self):
        net = parse_enewick("((1,(2)#H1),(#H1,3));")
        assert validate(net) == []
        assert reticulation_number(net) == 1
        assert is_tree_child(net)
        assert net.taxa == {"1", "2", "3"}

    def test_single_leaf(self):
        assert isomorphic(parse_enewick("x;"), single_leaf("x"))

    def test_branch_lengths_and_internal_labels_dropped(self):
        a = parse_enewick("((1:0.5, 2:1e-3)inner:2.0, 3):0.1;")
        b = parse_enewick("((1,2),3);")
        assert isomorphic(a, b)

    def test_whitespace_around_length_fields(self):
        a = parse_enewick("((s1: 0.125, s2 :0.25) : 0.5, s3);")
        b = parse_enewick("((s1,s2),s3);")
        assert isomorphic(a, b)

    def test_support_and_length_fields(self):
        a = parse_enewick("((1:0.1,2:0.2)0.95:0.3,3);")
        b = parse_enewick("((1,2),3);")
        assert isomorphic(a, b)

    def test_root_edge_added(self):
        net = parse_enewick("(1,2);")
        root = net.root
        assert net.outdegree(root) == 1


class TestParseErrors:
    def assert_position(self, text, line, column, fragment):
        with pytest.raises(ENewickError) as err:
            parse_enewick(text)
        assert err.value.line == line
        assert err.value.column == column
        assert fragment in str(err.value)

    def test_missing_close_paren(self):
        self.assert_position("((1,2);", 1, 7, "unbalanced")

    def test_duplicate_leaf_label(self):
        self.assert_position("((1,2),1);", 1, 8, "duplicate")

    def test_tag_without_definition(self):
        self.assert_position("(#H1,2);", 1, 2, "no child-bearing occurrence")

    def test_tag_with_two_definitions(self):
        with pytest.raises(ENewickError, match="multiple child-bearing"):
            parse_enewick("(((2)#H1,1),((3)#H1,4));")

    def test_reticulation_needs_indegree_two(self):
        with pytest.raises(ENewickError, match="indegree"):
            parse_enewick("((2)#H1,1);")

    def test_unsupported_tag_flavours(self):
        for text in ("((1,(2)#LGT1),(#LGT1,3));", "((1,(2)#R1),(#R1,3));", "((1,(2)#1),(#1,3));"):
            with pytest.raises(ENewickError, match="unsupported reticulation tag"):
                parse_enewick(text)

    def test_parallel_edges_rejected(self):
        with pytest.raises(ENewickError, match="parallel"):
            parse_enewick("((#H1,(2)#H1),1);")

    def test_trailing_content(self):
        with pytest.raises(ENewickError, match="after ';'"):
            parse_enewick("(1,2); (3,4);")

    def test_missing_semicolon(self):
        with pytest.raises(ENewickError, match="expected ';'"):
            parse_enewick("(1,2)")

    def test_empty_input(self):
        with pytest.raises(ENewickError, match="empty"):
            parse_enewick("   ")

    def test_degree_violation_fails_validation(self):
        with pytest.raises(ENewickError, match="not a valid network"):
            parse_enewick("((1));")


class TestWrite:
    def test_single_leaf(self):
        assert write_enewick(single_leaf("x")) == "x;"

    def test_cherry(self):
        assert write_enewick(build_cherry("1", "2")) == "(1,2);"

    def test_children_ordered_by_least_leaf(self):
        assert write_enewick(parse_enewick("(3,(2,1));")) == "((1,2),3);"

    def test_round_trip_reticulated_cherry(self):
        net = construct_network([("x", "y"), ("x", "y")])
        assert isomorphic(parse_enewick(write_enewick(net)), net)

    def test_serialization_is_isomorphism_invariant(self):
        for seed in range(30):
            cfg = GeneratorConfig(2 + seed % 6, seed % 4, seed=seed)
            net = construct_network(random_tcs(cfg))
            shift = {v: v + 101 for v in net.nodes}
            relabelled = type(net)(
                [(shift[u], shift[v]) for u, v in net.edges],
                {shift[v]: lab for v, lab in net.leaf_labels.items()},
            )
            assert write_enewick(net) == write_enewick(relabelled)

    def test_round_trip_random_networks(self):
        for seed in range(40):
            cfg = GeneratorConfig(2 + seed % 7, seed % 5, seed=seed + 11)
            net = construct_network(random_tcs(cfg))
            again = parse_enewick(write_enewick(net))
            assert isomorphic(net, again), seed

    def test_rejects_unwritable_labels(self):
        with pytest.raises(ValueError):
            write_enewick(single_leaf("a b"))


class TestDocument:
    def test_comments_and_blank_lines(self):
        text = "# a comment\n\n((1,2),3);\n((1,3),2);\n"
        doc = parse_document(text)
        assert len(doc.networks) == 2
        assert doc.lines == (3, 4)

    def test_error_carries_source_line(self):
        with pytest.raises(ENewickError) as err:
            parse_document("((1,2),3);\n((1,2;\n")
        assert err.value.line == 2
