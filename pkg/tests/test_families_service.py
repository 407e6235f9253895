import itertools

import pytest

from services import cayley_service as cayley
from services import families_service as families
from services.acts_service import is_uniform
from services.classify_service import RegularUniformTag, classify_regular_uniform, structural_profile
from services.errors import AssociativityError, BoundExceeded, RangeError, RegularityError
from services.families_service import FamilyKind, FamilySpec


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 2), (7, 1), (8, 5)])
def test_builtin_group_counts(n, count):
    groups = families.builtin_groups(n)
    assert len(groups) == count
    for g in groups:
        assert g.order == n
        assert structural_profile(g).group


@pytest.mark.parametrize("n", [4, 6])
def test_builtin_groups_are_pairwise_non_isomorphic(n):
    groups = families.builtin_groups(n)
    for a, b in itertools.combinations(groups, 2):
        assert not cayley.are_isomorphic(a, b)


def test_builtin_groups_bound():
    with pytest.raises(BoundExceeded):
        families.builtin_groups(9)


def test_non_abelian_groups():
    for name in ("S3", "D4", "Q8"):
        assert not structural_profile(families.group_by_name(name)).commutative
    q8 = families.group_by_name("Q8")
    assert len([x for x in q8.elements if cayley.power(q8, x, 2) == 0]) == 2


def test_group_by_name_unknown():
    with pytest.raises(RangeError):
        families.group_by_name("Z9")


def test_monogenic_nil():
    s = families.monogenic_nil(3)
    assert cayley.zero(s) == 0
    assert s.mul(1, 1) == 2
    assert s.mul(1, 2) == 0
    assert structural_profile(s).left_nil


def test_construct_simple_families():
    assert families.construct(FamilySpec(kind=FamilyKind.LEFT_ZERO, size=3)) == cayley.left_zero_semigroup(3)
    assert families.construct(FamilySpec(kind=FamilyKind.CYCLIC_GROUP, size=4)) == cayley.cyclic_group(4)
    z2 = families.group_by_name("Z2")
    assert families.construct(FamilySpec(kind=FamilyKind.GROUP, group=z2)) == z2
    rg = families.construct(FamilySpec(kind=FamilyKind.RIGHT_GROUP_PRODUCT, group=z2, size=2))
    assert rg.order == 4
    assert structural_profile(rg).right_group


def test_construct_group_rejects_non_group():
    with pytest.raises(RangeError):
        families.construct(FamilySpec(kind=FamilyKind.GROUP, group=cayley.left_zero_semigroup(2)))


def test_group_two_left_zeros_z2(z2_two_left_zeros):
    s = z2_two_left_zeros
    assert s.order == 4
    assert s.mul(1, 2) == 3 and s.mul(1, 3) == 2
    assert is_uniform(s)
    assert structural_profile(s).regular
    assert classify_regular_uniform(s).tag is RegularUniformTag.GROUP_WITH_TWO_LEFT_ZEROS


def test_group_two_left_zeros_strict_rule_fails_for_z3():
    spec = FamilySpec(kind=FamilyKind.GROUP_TWO_LEFT_ZEROS, group=families.group_by_name("Z3"), strict_paper=True)
    with pytest.raises(AssociativityError) as exc:
        families.construct(spec)
    # (a·a)·θ₁ = θ₂ mais a·(a·θ₁) = θ₁
    assert exc.value.triple == (1, 1, 3)


def test_group_two_left_zeros_trivial_action_is_not_uniform():
    z3 = families.group_by_name("Z3")
    s = families.construct(FamilySpec(
        kind=FamilyKind.GROUP_TWO_LEFT_ZEROS, group=z3, sigma=(False, False, False), strict_paper=False,
    ))
    assert s.order == 5
    assert not is_uniform(s)


def test_group_two_left_zeros_needs_sigma():
    with pytest.raises(RangeError):
        families.construct(FamilySpec(
            kind=FamilyKind.GROUP_TWO_LEFT_ZEROS, group=families.group_by_name("Z2"), strict_paper=False,
        ))


def test_paper_sigma():
    assert families.paper_sigma(families.group_by_name("Z3")) == (False, True, True)


def test_rees_matrix_right_group():
    spec = FamilySpec(
        kind=FamilyKind.REES_MATRIX,
        group=families.group_by_name("Z2"),
        index_i=1,
        index_lambda=2,
        sandwich=((0,), (0,)),
    )
    s = families.construct(spec)
    assert s.order == 4
    assert is_uniform(s)
    assert classify_regular_uniform(s).tag is RegularUniformTag.RIGHT_GROUP
    assert "ReesMatrix" in spec.describe()


def test_rees_matrix_two_element_left_zero():
    spec = FamilySpec(
        kind=FamilyKind.REES_MATRIX,
        group=families.group_by_name("Z1"),
        index_i=2,
        index_lambda=1,
        sandwich=((0, 0),),
    )
    assert families.construct(spec) == cayley.left_zero_semigroup(2)


def test_rees_matrix_0_right_zero_group():
    spec = FamilySpec(
        kind=FamilyKind.REES_MATRIX_0,
        group=families.group_by_name("Z1"),
        index_i=1,
        index_lambda=2,
        sandwich=((0,), (0,)),
    )
    s = families.construct(spec)
    assert s.order == 3
    assert cayley.zero(s) == 2
    assert classify_regular_uniform(s).tag is RegularUniformTag.RIGHT_ZERO_GROUP


def test_rees_matrix_0_trivial_shape_is_a_zero_group():
    spec = FamilySpec(
        kind=FamilyKind.REES_MATRIX_0,
        group=families.group_by_name("Z1"),
        sandwich=((0,),),
    )
    assert classify_regular_uniform(families.construct(spec)).tag is RegularUniformTag.ZERO_GROUP


def test_rees_matrix_0_rejects_zero_column():
    spec = FamilySpec(
        kind=FamilyKind.REES_MATRIX_0,
        group=families.group_by_name("Z2"),
        index_i=2,
        index_lambda=1,
        sandwich=((0, None),),
    )
    with pytest.raises(RegularityError):
        families.construct(spec)


def test_rees_matrix_rejects_zero_entry_without_zero():
    spec = FamilySpec(
        kind=FamilyKind.REES_MATRIX,
        group=families.group_by_name("Z2"),
        sandwich=((None,),),
    )
    with pytest.raises(RangeError):
        families.construct(spec)


def test_sandwich_matrices_counts():
    assert len(list(families.sandwich_matrices(2, 2, 2, with_zero=False))) == 16
    assert len(list(families.sandwich_matrices(1, 2, 2, with_zero=True))) == 7


def test_rees_sweep_uniformity_criteria():
    for spec, s in families.rees_sweep(max_group_order=2, max_index=2, with_zero=True):
        assert is_uniform(s) == (spec.index_i == 1), spec.describe()
    for spec, s in families.rees_sweep(max_group_order=2, max_index=2, with_zero=False):
        if s.order < 2:
            continue
        expected = spec.index_i == 1 or (spec.index_i == 2 and spec.index_lambda == 1 and spec.group.order == 1)
        assert is_uniform(s) == expected, spec.describe()
