import itertools

import pytest

from services import cayley_service as cayley
from services.errors import AssociativityError, BoundExceeded, RangeError
from utils.config import Bounds


def test_new_semigroup_accepts_left_zero_table():
    s = cayley.new_semigroup(2, [[0, 0], [1, 1]])
    assert s.order == 2
    assert s.mul(1, 0) == 1


def test_new_semigroup_reports_first_non_associative_triple():
    with pytest.raises(AssociativityError) as exc:
        cayley.new_semigroup(2, [[1, 1], [0, 0]])
    assert exc.value.triple == (0, 0, 0)
    assert (exc.value.left, exc.value.right) == (0, 1)


def test_new_semigroup_accepts_z3():
    s = cayley.new_semigroup(3, [[(i + j) % 3 for j in range(3)] for i in range(3)])
    assert cayley.identity(s) == 0


@pytest.mark.parametrize(
    "order, table",
    [
        (2, [[0, 2], [1, 1]]),
        (2, [[0, 0]]),
        (2, [[0, 0, 0], [1, 1, 1]]),
        (0, []),
    ],
)
def test_new_semigroup_rejects_bad_shapes_and_entries(order, table):
    with pytest.raises(RangeError):
        cayley.new_semigroup(order, table)


def test_element_profile_right_zero(right_zero_2):
    p = cayley.element_profile(right_zero_2, 0)
    assert p.left_identity and p.right_zero and p.idempotent
    assert not p.left_zero


def test_element_profile_group_identity(z2):
    p = cayley.element_profile(z2, 0)
    assert p.identity and p.left_cancellable
    assert p.left_nilpotent_index is None
    assert not p.left_nilpotent


def test_element_profile_null_semigroup(null_2):
    p = cayley.element_profile(null_2, 1)
    assert p.left_nilpotent_index == 2
    assert not p.left_cancellable


def test_element_profile_out_of_range(z2):
    with pytest.raises(RangeError):
        cayley.element_profile(z2, 2)


def test_adjoin_identity(z2, left_zero_2, right_zero_2):
    assert cayley.adjoin_identity(z2) is z2
    monoid = cayley.adjoin_identity(left_zero_2)
    assert monoid.order == 3
    assert cayley.identity(monoid) == 2
    assert cayley.left_zeros(monoid) == [0, 1]
    assert cayley.identity(cayley.adjoin_identity(right_zero_2)) == 2


def test_adjoin_zero(z2, left_zero_2, null_2):
    z2_zero = cayley.adjoin_zero(z2)
    assert z2_zero.order == 3
    assert cayley.zero(z2_zero) == 2
    lz = cayley.adjoin_zero(left_zero_2)
    # 0 absorbe : θ·0 = 0, seul le zéro adjoint reste zéro à gauche
    assert cayley.left_zeros(lz) == [2]
    assert lz.mul(0, 2) == 2
    assert cayley.adjoin_zero(null_2) is null_2


def test_adjunction_is_idempotent_up_to_isomorphism(left_zero_2):
    once = cayley.adjoin_identity(left_zero_2)
    assert cayley.adjoin_identity(once) is once
    zeroed = cayley.adjoin_zero(left_zero_2)
    assert cayley.adjoin_zero(zeroed) is zeroed


def test_opposite():
    for n in (2, 3):
        assert cayley.opposite(cayley.left_zero_semigroup(n)) == cayley.right_zero_semigroup(n)
    z3 = cayley.cyclic_group(3)
    assert cayley.opposite(z3) == z3
    s = cayley.adjoin_identity(cayley.right_zero_semigroup(2))
    assert cayley.opposite(cayley.opposite(s)) == s


def test_direct_product_indexing(z2, right_zero_2):
    p = cayley.direct_product(z2, right_zero_2)
    assert p.order == 4
    # (1, 0)·(1, 1) = (0, 1)
    assert p.mul(2, 3) == 1


def test_left_identities_form_right_zero_subsemigroup(right_zero_2):
    s = cayley.adjoin_identity(right_zero_2)
    li = cayley.left_identities(s)
    assert li == [2]
    li_r = cayley.left_identities(right_zero_2)
    assert li_r == [0, 1]
    assert all(right_zero_2.mul(a, b) == b for a in li_r for b in li_r)


def test_restrict_requires_closed_subset(z2_zero):
    sub, mapping = cayley.restrict(z2_zero, [0, 1])
    assert sub == cayley.cyclic_group(2)
    assert mapping == [0, 1]
    with pytest.raises(RangeError):
        cayley.restrict(cayley.cyclic_group(3), [0, 1])


def test_canonical_form_left_zero(left_zero_2):
    assert cayley.canonical_form(left_zero_2) == (0, 0, 1, 1)


def test_are_isomorphic(z2, left_zero_2, right_zero_2):
    assert not cayley.are_isomorphic(z2, left_zero_2)
    assert cayley.are_isomorphic(right_zero_2, cayley.permute(right_zero_2, [1, 0]))
    assert not cayley.are_isomorphic(z2, cayley.cyclic_group(3))


def test_canonical_form_is_invariant_under_relabeling():
    s = cayley.adjoin_zero(cayley.adjoin_identity(cayley.right_zero_semigroup(2)))
    expected = cayley.canonical_form(s)
    for perm in itertools.permutations(range(s.order)):
        assert cayley.canonical_form(cayley.permute(s, perm)) == expected


def test_canonical_form_respects_bound():
    with pytest.raises(BoundExceeded) as exc:
        cayley.canonical_form(cayley.cyclic_group(4), bounds=Bounds(canonical_order=3))
    assert exc.value.limit == 3
