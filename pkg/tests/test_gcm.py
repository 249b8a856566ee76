"""Matrix validation and exact type classification."""

import itertools

import pytest

import oracles
from kmgroups import (
    AFFINE,
    FINITE,
    INDEFINITE,
    DiagonalNotTwoError,
    GcmValidationError,
    GeneralizedCartanMatrix,
    NotSquareError,
    PositiveOffDiagonalError,
    ZeroAsymmetryError,
    classify,
    components,
    scalars,
)

A2 = [[2, -1], [-1, 2]]


class TestValidation:
    def test_valid_matrix_round_trip(self):
        g = GeneralizedCartanMatrix.from_rows(A2)
        assert g.rank == 2
        assert g.entries == ((2, -1), (-1, 2))
        assert g.labels == ("1", "2")
        assert list(g.index_set) == [0, 1]
        assert g.entry(1, 0) == -1

    def test_empty_matrix_rejected(self):
        with pytest.raises(NotSquareError):
            GeneralizedCartanMatrix.from_rows([])

    def test_ragged_matrix_rejected(self):
        with pytest.raises(NotSquareError) as exc:
            GeneralizedCartanMatrix.from_rows([[2, -1], [-1]])
        assert exc.value.position == (1,)

    def test_non_square_rejected(self):
        with pytest.raises(NotSquareError):
            GeneralizedCartanMatrix.from_rows([[2, -1, 0], [-1, 2, 0]])

    def test_diagonal_must_be_two(self):
        with pytest.raises(DiagonalNotTwoError) as exc:
            GeneralizedCartanMatrix.from_rows([[2, -1], [-1, 3]])
        assert exc.value.position == (1,)
        assert exc.value.describe() == "DiagonalNotTwo(2)"

    def test_positive_off_diagonal_rejected(self):
        with pytest.raises(PositiveOffDiagonalError) as exc:
            GeneralizedCartanMatrix.from_rows([[2, 1], [-1, 2]])
        assert exc.value.position == (0, 1)
        assert exc.value.describe() == "PositiveOffDiagonal(1,2)"

    def test_zero_asymmetry_rejected(self):
        with pytest.raises(ZeroAsymmetryError) as exc:
            GeneralizedCartanMatrix.from_rows([[2, -1], [0, 2]])
        # reported at the nonzero entry
        assert exc.value.position == (0, 1)
        assert exc.value.describe() == "ZeroAsymmetry(1,2)"

    def test_axiom_check_order(self):
        # diagonal is checked before off-diagonal sign
        with pytest.raises(DiagonalNotTwoError):
            GeneralizedCartanMatrix.from_rows([[1, 1], [1, 1]])
        # row-major: (1,2) before (2,1)
        with pytest.raises(PositiveOffDiagonalError) as exc:
            GeneralizedCartanMatrix.from_rows([[2, 5], [7, 2]])
        assert exc.value.position == (0, 1)

    def test_describe_is_one_based(self):
        with pytest.raises(GcmValidationError) as exc:
            GeneralizedCartanMatrix.from_rows([[2, 0, -1], [0, 2, 0], [0, 0, 2]])
        assert exc.value.describe() == "ZeroAsymmetry(1,3)"

    def test_labels(self):
        g = GeneralizedCartanMatrix.from_rows(A2, labels=["a", "b"])
        assert g.labels == ("a", "b")
        assert g.label_set([1, 0]) == "{a,b}"
        with pytest.raises(GcmValidationError):
            GeneralizedCartanMatrix.from_rows(A2, labels=["a"])

    def test_validation_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            GeneralizedCartanMatrix.from_rows([[3]])

    def test_submatrix(self):
        g = GeneralizedCartanMatrix.from_rows(
            [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
        )
        assert g.submatrix({2, 0}) == ((2, 0), (0, 2))
        assert g.submatrix([1]) == ((2,),)
        assert g.submatrix([]) == ()


class TestComponents:
    def test_block_diagonal_splits(self):
        g = GeneralizedCartanMatrix.from_rows(
            [[2, -1, 0], [-1, 2, 0], [0, 0, 2]]
        )
        assert [sorted(c) for c in components(g)] == [[0, 1], [2]]

    def test_connected_matrix_is_one_component(self):
        g = GeneralizedCartanMatrix.from_rows(
            [[2, -2, 0], [-2, 2, -1], [0, -1, 2]]
        )
        assert [sorted(c) for c in components(g)] == [[0, 1, 2]]

    def test_agrees_with_union_find(self):
        rows = [
            [2, 0, -1, 0],
            [0, 2, 0, -2],
            [-1, 0, 2, 0],
            [0, -2, 0, 2],
        ]
        g = GeneralizedCartanMatrix.from_rows(rows)
        edges = [
            (i, j)
            for i in range(4)
            for j in range(i + 1, 4)
            if rows[i][j] != 0
        ]
        assert [sorted(c) for c in components(g)] == oracles.uf_components(4, edges)


class TestClassify:
    @pytest.mark.parametrize(
        "rows,expected",
        [
            (A2, FINITE),
            ([[2]], FINITE),
            ([[2, -1], [-2, 2]], FINITE),
            ([[2, -1], [-3, 2]], FINITE),
            ([[2, -2], [-2, 2]], AFFINE),
            ([[2, -1], [-4, 2]], AFFINE),
            ([[2, -3], [-3, 2]], INDEFINITE),
            ([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], AFFINE),
        ],
    )
    def test_indecomposable_types(self, rows, expected):
        verdict = classify(GeneralizedCartanMatrix.from_rows(rows))
        assert verdict.indecomposable
        assert verdict.types == (expected,)

    def test_mixed_components(self):
        g = GeneralizedCartanMatrix.from_rows(
            [[2, -2, 0], [-2, 2, 0], [0, 0, 2]]
        )
        verdict = classify(g)
        assert not verdict.indecomposable
        assert verdict.types == (AFFINE, FINITE)
        assert verdict.type_of(0) == AFFINE
        assert verdict.type_of(2) == FINITE
        assert not verdict.all_finite

    def test_type_of_out_of_range(self):
        verdict = classify(GeneralizedCartanMatrix.from_rows(A2))
        with pytest.raises(IndexError):
            verdict.type_of(5)

    def test_matches_minor_oracle_exhaustively_rank3(self):
        # every indecomposable rank-3 GCM with entries in {0,-1,-2}
        values = (0, -1, -2)
        for a, b, c, d, e, f in itertools.product(values, repeat=6):
            rows = [[2, a, b], [c, 2, d], [e, f, 2]]
            try:
                g = GeneralizedCartanMatrix.from_rows(rows)
            except GcmValidationError:
                continue
            verdict = classify(g)
            if not verdict.indecomposable:
                continue
            assert verdict.types[0] == oracles.trichotomy(rows), rows


class TestScalars:
    def test_basic(self):
        s = scalars(GeneralizedCartanMatrix.from_rows([[2, -2], [-3, 2]]))
        assert s.max_abs_offdiag == 3
        assert not s.two_spherical

    def test_two_spherical_boundary(self):
        assert scalars(GeneralizedCartanMatrix.from_rows([[2, -1], [-3, 2]])).two_spherical
        assert not scalars(
            GeneralizedCartanMatrix.from_rows([[2, -1], [-4, 2]])
        ).two_spherical

    def test_rank_one(self):
        s = scalars(GeneralizedCartanMatrix.from_rows([[2]]))
        assert s.max_abs_offdiag == 0
        assert s.two_spherical
