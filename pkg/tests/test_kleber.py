import pytest

from app.kr.errors import UnsupportedTypeError
from app.kr.fermionic import vacancy_table
from app.kr.kleber import brute_force_configs, configs, kleber_tree, path_to_config, path_vacancies
from app.kr.root_data import Weight, parse_type, weight_from_partition
from app.kr.tensor_spec import TensorSpec
from app.verify.figures import A3_TREE, expected_rows, kleber_rows


@pytest.fixture
def figure_tree():
    return kleber_tree(parse_type("A3~1"), A3_TREE.spec)


class TestFigureTree:
    def test_rows_match_worked_example(self):
        count, rows = kleber_rows(A3_TREE)
        assert count == 10
        assert rows == expected_rows(A3_TREE)

    def test_root(self, figure_tree):
        root = figure_tree.root
        assert root.weight == weight_from_partition((5, 3, 2), 3)
        assert root.edge is None
        weight, nu = path_to_config(figure_tree, root)
        assert nu.is_empty()

    def test_depth_one_edges(self, figure_tree):
        edges = sorted(node.edge for node in figure_tree.nodes if node.depth == 1)
        assert edges == [(0, 1, 1), (1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 2, 1)]

    def test_edges_decrease_along_paths(self, figure_tree):
        for node in figure_tree.nodes:
            if node.parent is None or figure_tree.node(node.parent).edge is None:
                continue
            parent_edge = figure_tree.node(node.parent).edge
            assert all(c <= p for c, p in zip(node.edge, parent_edge))

    def test_weighted_reading_matches_definition(self, figure_tree):
        a3 = parse_type("A3~1")
        for node in figure_tree.nodes:
            _, nu = path_to_config(figure_tree, node)
            assert path_vacancies(figure_tree, node) == vacancy_table(a3, A3_TREE.spec, nu)

    def test_walk_visits_every_node(self, figure_tree):
        assert sorted(n.node_id for n in figure_tree.walk()) == list(range(10))


class TestPruning:
    def test_target_prunes(self):
        a3 = parse_type("A3~1")
        pruned = kleber_tree(a3, A3_TREE.spec, Weight((0, 1, 0)))
        assert len(pruned) < 10
        assert len(pruned.nodes_of_weight(Weight((0, 1, 0)))) == 2

    @pytest.mark.parametrize(
        "type_name, tensor",
        [
            ("A1~1", ["1,1", "1,1", "1,2"]),
            ("A2~1", ["1,1", "2,2"]),
            ("D4~1", ["1,1", "2,1"]),
        ],
    )
    def test_matches_brute_force(self, type_name, tensor):
        from app.verify.cases import weight_candidates

        t = parse_type(type_name)
        spec = TensorSpec.parse(tensor)
        for lam in weight_candidates(t, spec):
            assert configs(t, spec, lam) == brute_force_configs(t, spec, lam)


def test_non_simply_laced_is_rejected():
    with pytest.raises(UnsupportedTypeError):
        kleber_tree(parse_type("C2~1"), TensorSpec.parse(["1,1"]))
