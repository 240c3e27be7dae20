import pytest

from app.kr.errors import NotAnEmbeddingError, NotVirtualError, UnsupportedTypeError
from app.kr.fermionic import enumerate_rigged, m_polynomial, rc_cocharge
from app.kr.qpoly import QPolynomial
from app.kr.root_data import Weight, parse_type
from app.kr.tensor_spec import Configuration, TensorSpec
from app.kr.virtual_kleber import (
    brute_force_virtual_configs,
    check_vacancy_scaling,
    devirtualize,
    devirtualize_rigged,
    embedding,
    lift_L,
    m_polynomial_via_virtual,
    psi_delta_check,
    psi_inverse,
    psi_weight,
    selected_virtual_configs,
    virtual_configs,
    virtual_kleber_tree,
    virtualize,
    virtualize_configuration,
)
from app.verify.cases import virtual_weight_candidates
from app.verify.figures import C2_VIRTUAL_TREE, expected_rows, virtual_kleber_rows

FIGURE_SPEC = TensorSpec.parse(["1,2", "1,1", "2,1"])


class TestEmbedding:
    def test_c2_into_a3(self, c2):
        emb = embedding(c2)
        assert emb.y_type == parse_type("A3~1")
        assert emb.gamma == (2, 1, 2)
        assert emb.iota(1) == (1, 3)
        assert emb.iota(2) == (2,)

    def test_b3_into_d4(self):
        emb = embedding(parse_type("B3~1"))
        assert emb.y_type == parse_type("D4~1")
        assert emb.gamma == (2, 2, 2, 1)
        assert emb.iota(3) == (3, 4)

    def test_a_odd_twisted_keeps_gamma_one(self):
        emb = embedding(parse_type("A5~2"))
        assert emb.y_type == parse_type("D4~1")
        assert emb.gamma == (1, 1, 1, 1)

    def test_g2_into_d4(self):
        emb = embedding(parse_type("G2~1"))
        assert emb.y_type == parse_type("D4~1")
        assert emb.iota(1) == (2,)
        assert emb.iota(2) == (1, 3, 4)
        assert emb.gamma == (3, 3, 1)
        assert psi_delta_check(parse_type("G2~1"))

    def test_exceptional_folds_of_e6(self):
        f4 = embedding(parse_type("F4~1"))
        assert f4.y_type == parse_type("E6~1")
        assert f4.gamma == (2, 2, 2, 1, 1)
        assert f4.iota(4) == (1, 5)
        assert embedding(parse_type("E6~2")).gamma == (1, 1, 1, 1, 1)

    @pytest.mark.parametrize("name", [
        "C2~1", "A4~2", "A4~2dag", "D3~2", "A5~2", "B3~1", "F4~1", "E6~2", "D4~3",
    ])
    def test_null_root_scales(self, name):
        assert psi_delta_check(parse_type(name))

    def test_simply_laced_has_no_embedding(self):
        with pytest.raises(NotAnEmbeddingError):
            embedding(parse_type("A3~1"))

    def test_dagger_doubles_node_n(self):
        emb = embedding(parse_type("A4~2dag"))
        assert emb.gamma == (2, 1, 1)
        assert emb.grid == (2, 1, 2)
        assert emb.scale == (2, 1, 2)
        a4 = embedding(parse_type("A4~2"))
        assert a4.gamma == (1, 1, 2)
        assert a4.grid == (1, 1, 1)
        assert a4.scale == (1, 1, 2)

    def test_rank_one_dag_unsupported(self):
        with pytest.raises(UnsupportedTypeError):
            embedding(parse_type("A2~2dag"))


class TestWeights:
    def test_psi(self, c2):
        assert psi_weight(c2, Weight((3, 1))) == Weight((3, 2, 3))
        assert psi_inverse(c2, Weight((3, 2, 3))) == Weight((3, 1))

    def test_off_lattice(self, c2):
        assert psi_inverse(c2, Weight((1, 0, 0))) is None
        assert psi_inverse(c2, Weight((1, 1, 1))) is None

    def test_lift(self, c2):
        assert lift_L(c2, FIGURE_SPEC).factors == ((1, 2), (3, 2), (1, 1), (3, 1), (2, 2))


class TestFigureTree:
    def test_selected_rows_match_worked_example(self):
        count, rows = virtual_kleber_rows(C2_VIRTUAL_TREE)
        assert count == 9
        assert len(rows) == 6
        assert rows == expected_rows(C2_VIRTUAL_TREE)

    def test_untrimmed_tree_contains_trimmed(self, c2):
        trimmed = virtual_kleber_tree(c2, FIGURE_SPEC)
        full = virtual_kleber_tree(c2, FIGURE_SPEC, trim=False)
        assert len(full) >= len(trimmed)
        assert sum(n.selected for n in full.nodes) == 6

    def test_devirtualized_configurations(self, c2):
        found = virtual_configs(c2, FIGURE_SPEC, Weight((1, 0)))
        assert found == {
            Configuration.from_partitions([[2, 1], [1, 1]]),
            Configuration.from_partitions([[3], [2]]),
        }


class TestSelection:
    @pytest.mark.parametrize(
        "name, tensor",
        [
            ("C2~1", ["1,1", "1,1"]),
            ("C2~1", ["2,1", "1,1"]),
            ("D3~2", ["1,1", "2,1"]),
            ("A4~2", ["1,1", "2,1"]),
            ("A5~2", ["1,1", "1,1"]),
            ("B3~1", ["1,1", "3,1"]),
        ],
    )
    def test_matches_filtered_brute_force(self, name, tensor):
        x = parse_type(name)
        spec = TensorSpec.parse(tensor)
        for lam in virtual_weight_candidates(x, spec):
            assert selected_virtual_configs(x, spec, lam) == brute_force_virtual_configs(x, spec, lam)


class TestRiggedVirtualization:
    def test_round_trip_and_cocharge(self, c2):
        emb = embedding(c2)
        spec = TensorSpec.parse(["1,1", "1,1", "2,1"])
        for lam in virtual_weight_candidates(c2, spec):
            for rc in enumerate_rigged(c2, spec, lam):
                rc_hat = virtualize(c2, rc)
                assert devirtualize_rigged(c2, rc_hat) == rc
                assert rc_cocharge(emb.y_type, rc_hat) == emb.gamma[0] * rc_cocharge(c2, rc)
                assert check_vacancy_scaling(c2, spec, rc_hat.nu)

    def test_configuration_round_trip(self, c2):
        nu = Configuration.from_partitions([[2, 1], [1]])
        nu_hat = virtualize_configuration(c2, nu)
        assert nu_hat.partitions == ((2, 1), (2,), (2, 1))
        assert devirtualize(c2, nu_hat) == nu

    def test_not_virtual(self, c2):
        with pytest.raises(NotVirtualError):
            devirtualize(c2, Configuration.from_partitions([[1], [1], [1]]))

    def test_dagger_excludes_odd_rows_at_node_n(self):
        x = parse_type("A4~2dag")
        spec = TensorSpec.parse(["1,1", "1,1"])
        assert selected_virtual_configs(x, spec, Weight((0, 0))) == {
            Configuration.from_partitions([[2], [2], [2]]),
        }
        assert m_polynomial_via_virtual(x, spec, Weight((0, 0))) == QPolynomial.monomial(1)

    @pytest.mark.parametrize("name", ["C2~1", "D3~2", "A4~2"])
    def test_m_equals_virtual_sum(self, name):
        x = parse_type(name)
        spec = TensorSpec.parse(["1,1", "1,1"])
        for lam in virtual_weight_candidates(x, spec):
            assert m_polynomial(x, spec, lam) == m_polynomial_via_virtual(x, spec, lam)
