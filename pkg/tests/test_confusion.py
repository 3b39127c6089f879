"""Confusion-matrix validation, ratios, scaling, equivalence, and CSV I/O."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from imbindex import (
    ConfusionMatrix,
    DimensionMismatchError,
    EmptyRowError,
    MatrixError,
    NegativeEntryError,
    NonIntegerScalingError,
    NonSquareError,
    RowScaling,
    TooFewClassesError,
    UnknownLabelError,
    ZeroClassCountError,
    apply_scaling,
    are_equivalent,
    ingest_labels,
    max_ratio,
    to_fraction,
    validate,
)
from imbindex.confusion import ClassRatioProfile
from imbindex.io import read_label_pairs, read_matrix_csv, write_matrix_csv

from conftest import confusion_matrices, matrices_with_scaling, scaled_copy


class TestValidate:
    def test_identity_layout(self):
        m = validate([[5, 0], [0, 5]])
        assert m.row_sums == (5, 5)
        assert m.col_sums == (5, 5)
        assert m.total == 10

    def test_skewed_sums(self):
        m = validate([[8, 2], [10, 90]])
        assert m.row_sums == (10, 100)
        assert m.col_sums == (18, 92)
        assert m.total == 110

    def test_empty_row_rejected(self):
        with pytest.raises(EmptyRowError, match="row 1"):
            validate([[0, 0], [3, 4]])

    def test_non_square_rejected(self):
        with pytest.raises(NonSquareError):
            validate([[1, 2, 3], [4, 5, 6]])

    def test_single_class_rejected(self):
        with pytest.raises(TooFewClassesError):
            validate([[7]])

    def test_negative_entry_rejected(self):
        with pytest.raises(NegativeEntryError, match="row 2, column 1"):
            validate([[1, 2], [-3, 4]])

    def test_float_entry_rejected(self):
        with pytest.raises(NegativeEntryError):
            validate([[1.5, 2], [3, 4]])

    def test_numpy_ints_accepted(self):
        import numpy as np

        m = validate(np.array([[3, 1], [2, 4]]))
        assert m.counts == ((3, 1), (2, 4))


class TestMaxRatio:
    def test_two_class(self):
        assert max_ratio([3000, 75]) == 40

    def test_balanced(self):
        assert max_ratio([5, 5, 5]) == 1

    def test_ten_class_profile(self):
        counts = [2000, 1750, 1500, 1250, 1000, 750, 500, 250, 150, 100]
        assert max_ratio(counts) == 20

    def test_zero_count_rejected(self):
        with pytest.raises(ZeroClassCountError):
            max_ratio([10, 0])

    def test_profile_structure(self):
        profile = ClassRatioProfile.from_counts([4, 2])
        assert profile.max_ratio == 2
        assert Fraction(1, 2) in profile.ratio_set
        assert profile.max_ratio >= 1

    @given(st.permutations([3000, 75, 150, 600]))
    def test_permutation_invariant(self, counts):
        assert max_ratio(counts) == 40


class TestRowScaling:
    def test_integer_scaling(self):
        m = validate([[8, 2], [10, 90]])
        scaled = apply_scaling(m, RowScaling.for_matrix(m, (2, 1)))
        assert scaled.counts == ((16, 4), (10, 90))

    def test_rational_scaling(self):
        m = validate([[8, 2], [10, 90]])
        scaled = apply_scaling(m, RowScaling.for_matrix(m, ("1/2", "1/5")))
        assert scaled.counts == ((4, 1), (2, 18))

    def test_non_integer_result_rejected(self):
        m = validate([[8, 2], [10, 90]])
        with pytest.raises(NonIntegerScalingError, match="row 1"):
            RowScaling.for_matrix(m, (Fraction(1, 3), 1))

    def test_factor_count_mismatch(self):
        m = validate([[8, 2], [10, 90]])
        with pytest.raises(DimensionMismatchError):
            RowScaling.for_matrix(m, (1, 2, 3))

    def test_non_positive_factor_rejected(self):
        with pytest.raises(MatrixError):
            RowScaling((Fraction(0), Fraction(1)))

    @given(matrices_with_scaling())
    def test_scaling_preserves_equivalence(self, pair):
        m, scaling = pair
        assert are_equivalent(m, apply_scaling(m, scaling))


class TestEquivalence:
    def test_scaled_rows_equivalent(self):
        a = validate([[8, 2], [10, 90]])
        b = validate([[16, 4], [10, 90]])
        assert are_equivalent(a, b)

    def test_different_profile_not_equivalent(self):
        a = validate([[8, 2], [10, 90]])
        b = validate([[8, 2], [20, 80]])
        assert not are_equivalent(a, b)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            are_equivalent(validate([[1, 1], [1, 1]]), validate([[1] * 3] * 3))

    @given(confusion_matrices())
    def test_reflexive(self, m):
        assert are_equivalent(m, m)

    @given(matrices_with_scaling(max_classes=4))
    def test_symmetric_and_transitive_on_scaling_chains(self, pair):
        m, scaling = pair
        b = apply_scaling(m, scaling)
        c = scaled_copy(b, [2] * b.class_count)
        assert are_equivalent(b, m)
        assert are_equivalent(m, c) and are_equivalent(c, m)


class TestIngestLabels:
    def test_direct_tally(self):
        m = ingest_labels([("A", "A"), ("A", "B"), ("B", "B")], ["A", "B"])
        assert m.counts == ((1, 1), (0, 1))

    def test_missing_true_class_rejected(self):
        with pytest.raises(EmptyRowError):
            ingest_labels([("A", "A")], ["A", "B"])

    def test_unknown_label_rejected(self):
        with pytest.raises(UnknownLabelError):
            ingest_labels([("A", "C")], ["A", "B"])

    def test_first_appearance_order(self):
        m = ingest_labels([("B", "A"), ("A", "A")])
        # B appears first, so row 0 is class B
        assert m.counts == ((0, 1), (0, 1))

    def test_duplicate_class_list_rejected(self):
        with pytest.raises(MatrixError):
            ingest_labels([("A", "A"), ("B", "B")], ["A", "A"])

    def test_pairs_realizing_target_matrix(self):
        target = validate([[8, 2], [10, 90]])
        pairs = []
        labels = ["pos", "neg"]
        for i, row in enumerate(target.counts):
            for j, count in enumerate(row):
                pairs.extend([(labels[i], labels[j])] * count)
        assert len(pairs) == 110
        assert ingest_labels(pairs, labels).counts == target.counts

    @given(confusion_matrices(max_classes=4, max_cell=5))
    def test_roundtrip_from_matrix(self, m):
        labels = [f"c{i}" for i in range(m.class_count)]
        pairs = [
            (labels[i], labels[j])
            for i, row in enumerate(m.counts)
            for j, count in enumerate(row)
            for _ in range(count)
        ]
        assert ingest_labels(pairs, labels).counts == m.counts


class TestToFraction:
    def test_decimal_string(self):
        assert to_fraction("0.6") == Fraction(3, 5)

    def test_ratio_string(self):
        assert to_fraction("3/5") == Fraction(3, 5)

    def test_float_uses_decimal_repr(self):
        assert to_fraction(0.6) == Fraction(3, 5)

    def test_rejects_bool(self):
        with pytest.raises(TypeError):
            to_fraction(True)


class TestMatrixCsv:
    def test_roundtrip_no_header(self, tmp_path):
        path = tmp_path / "m.csv"
        m = validate([[8, 2], [10, 90]])
        write_matrix_csv(path, m)
        loaded, labels = read_matrix_csv(path)
        assert loaded == m and labels is None

    def test_roundtrip_with_header(self, tmp_path):
        path = tmp_path / "m.csv"
        m = validate([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        write_matrix_csv(path, m, labels=("a", "b", "c"))
        loaded, labels = read_matrix_csv(path)
        assert loaded == m and labels == ("a", "b", "c")

    def test_bad_cell_named_in_error(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("1,2\n3,x\n")
        with pytest.raises(MatrixError, match="row 2, column 2"):
            read_matrix_csv(path)

    def test_label_pairs_with_header(self, tmp_path):
        path = tmp_path / "pairs.csv"
        path.write_text("true,predicted\nA,A\nA,B\nB,B\n")
        assert read_label_pairs(path) == [("A", "A"), ("A", "B"), ("B", "B")]

    def test_label_pairs_without_header(self, tmp_path):
        path = tmp_path / "pairs.csv"
        path.write_text("A,A\nB,B\n")
        assert read_label_pairs(path) == [("A", "A"), ("B", "B")]
