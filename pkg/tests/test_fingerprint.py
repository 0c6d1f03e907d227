import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fixture_path
from oracles import poly_eval
from zsite.fincat import InputError
from zsite.fingerprint import (
    UNIT,
    GradedDims,
    graded_dims,
    invariant_of,
    positive_fold,
    tensor_dims,
    z_equiv,
)
from zsite.jsonio import load_workspace
from zsite.zlin import z_object


@pytest.fixture(scope="module")
def ws():
    return load_workspace(fixture_path("fingerprint.json"))


ALPHABET = ("a", "b", "c", "d")


def dims():
    return st.lists(st.integers(min_value=0, max_value=9), max_size=5).map(graded_dims)


def tables():
    return st.fixed_dictionaries({o: dims() for o in ALPHABET})


def zobjs():
    parts = st.lists(
        st.tuples(st.sampled_from(ALPHABET), st.integers(-3, 3).filter(bool)),
        min_size=1,
        max_size=4,
    )
    return parts.map(lambda ps: z_object([(i + 1, o, c) for i, (o, c) in enumerate(ps)]))


class TestTensorLaws:
    @given(dims(), dims(), st.integers(min_value=-5, max_value=5))
    def test_tensor_matches_polynomial_product(self, a, b, x):
        assert poly_eval(tensor_dims(a, b).dims, x) == poly_eval(a.dims, x) * poly_eval(b.dims, x)

    @given(dims(), dims(), dims())
    def test_associativity(self, a, b, c):
        assert tensor_dims(a, tensor_dims(b, c)) == tensor_dims(tensor_dims(a, b), c)

    @given(dims(), dims())
    def test_commutativity(self, a, b):
        assert tensor_dims(a, b) == tensor_dims(b, a)

    @given(dims())
    def test_unit_on_both_sides(self, a):
        assert tensor_dims(UNIT, a) == a
        assert tensor_dims(a, UNIT) == a

    @given(dims())
    def test_zero_annihilates(self, a):
        zero = graded_dims(())
        assert tensor_dims(zero, a) == zero
        assert tensor_dims(a, zero) == zero

    @given(dims(), dims())
    def test_degree_adds_and_total_multiplies(self, a, b):
        t = tensor_dims(a, b)
        assert t.total() == a.total() * b.total()
        if a.dims and b.dims:
            assert t.top_degree() == a.top_degree() + b.top_degree()


class TestNormalization:
    @given(dims())
    def test_graded_dims_is_idempotent(self, a):
        assert graded_dims(a.dims) == a

    @given(dims())
    def test_trailing_zeros_are_stripped(self, a):
        assert graded_dims(tuple(a.dims) + (0, 0)) == a

    def test_negative_dimension_is_refused(self):
        with pytest.raises(InputError):
            GradedDims(dims=(1, -1))

    def test_unnormalized_tuple_is_refused(self):
        with pytest.raises(InputError):
            GradedDims(dims=(1, 0))


class TestInvariants:
    def test_fixture_parts(self, ws):
        tab = ws.fingerprints["tab"]
        inv = invariant_of(ws.zobjects["fX"], tab)
        assert inv.parts == (
            (1, 2, graded_dims((1, 1))),
            (2, 1, graded_dims((2,))),
        )
        assert inv.indices() == (1, 2)

    def test_missing_base_object_is_refused(self, ws):
        tab = ws.fingerprints["tab"]
        stray = z_object([(1, "nowhere", 1)])
        with pytest.raises(InputError):
            invariant_of(stray, tab)

    def test_fixture_verdicts(self, ws):
        tab = ws.fingerprints["tab"]
        for check in ws.checks:
            if check["kind"] != "z_equiv":
                continue
            left = ws.zobjects[check["left"]]
            right = ws.zobjects[check["right"]]
            assert z_equiv(left, right, tab) is check["expect"], check["label"]

    def test_different_index_sets_never_compare(self, ws):
        tab = ws.fingerprints["tab"]
        assert not z_equiv(z_object([(1, "a", 1)]), z_object([(2, "a", 1)]), tab)

    def test_coefficients_are_compared_not_folded_in(self, ws):
        # same component dims, different bookkeeping coefficient
        tab = ws.fingerprints["tab"]
        assert not z_equiv(z_object([(1, "a", 2)]), z_object([(1, "a", 1)]), tab)

    @given(tables(), zobjs())
    def test_reflexive(self, tab, obj):
        assert z_equiv(obj, obj, tab)

    @given(tables(), zobjs(), zobjs())
    def test_symmetric(self, tab, left, right):
        assert z_equiv(left, right, tab) == z_equiv(right, left, tab)

    def test_transitive_through_a_renamed_middle(self, ws):
        # a and c share dims, so swapping them preserves the invariant
        tab = ws.fingerprints["tab"]
        first = ws.zobjects["fX"]
        middle = ws.zobjects["fX2"]
        last = z_object([(1, "a", 2), (2, "b", 1)])
        assert z_equiv(first, middle, tab) and z_equiv(middle, last, tab)
        assert z_equiv(first, last, tab)


class TestPositiveFold:
    def test_fold_of_the_fixture_sum(self, ws):
        tab = ws.fingerprints["tab"]
        inv = invariant_of(ws.zobjects["fX"], tab)
        assert positive_fold(inv) == graded_dims((2, 2))

    def test_negative_parts_are_excluded(self, ws):
        tab = ws.fingerprints["tab"]
        inv = invariant_of(ws.zobjects["fY"], tab)
        # only the +2 [a] part contributes a factor
        assert positive_fold(inv) == tab["a"]

    def test_empty_sum_folds_to_the_unit(self, ws):
        tab = ws.fingerprints["tab"]
        empty = z_object([])
        assert z_equiv(empty, empty, tab)
        assert positive_fold(invariant_of(empty, tab)) == UNIT

    @given(tables(), zobjs())
    def test_equivalent_sums_have_equal_folds(self, tab, obj):
        # equivalence matches parts pointwise, so the fold is determined
        mirror = z_object(obj.components)
        assert z_equiv(obj, mirror, tab)
        assert positive_fold(invariant_of(obj, tab)) == positive_fold(invariant_of(mirror, tab))
