"""Services (métier) de classification structurelle.

Objectifs :
- Calculer le profil structurel d'un demi-groupe (simplicité, groupes, nil, chaîne, ...).
- Décomposer en partie nil à gauche / partie simplifiable à gauche (sous-élémentaire à gauche).
- Décrire la structure de E(S).
- Associer un demi-groupe régulier uniforme à l'une des quatre structures connues.

Ce module ne fait aucune E/S.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

from services import cayley_service as cayley
from services.acts_service import is_uniform
from services.cayley_service import Semigroup
from services.errors import ClassificationGap, CriterionInapplicable


# -----------------------------------------------------------------------------
# Data
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class StructuralProfile:
    """Prédicats décidables au niveau du demi-groupe."""

    commutative: bool
    band: bool
    regular: bool
    e_semigroup: bool
    orthodox: bool
    completely_regular: bool
    inverse: bool
    left_inverse: bool
    right_inverse: bool
    clifford: bool
    left_simple: bool
    right_simple: bool
    simple: bool
    left_0_simple: bool
    right_0_simple: bool
    zero_simple: bool
    completely_simple: bool
    completely_zero_simple: bool
    group: bool
    right_group: bool
    left_zero_sg: bool
    right_zero_sg: bool
    zero_group: bool
    right_zero_group: bool
    left_nil: bool
    left_cancellative: bool
    chain: bool
    has_identity: bool
    has_left_identity: bool
    has_right_identity: bool
    has_zero: bool
    left_zero_count: int
    left_identity_count: int

    def to_dict(self) -> dict[str, bool | int]:
        return asdict(self)

    @classmethod
    def flag_names(cls) -> list[str]:
        return [name for name, f in cls.__dataclass_fields__.items() if f.type in ("bool", bool)]


@dataclass(frozen=True)
class LeftSubelementary:
    """S = L ⊔ C : L idéal à gauche nil à gauche, C sous-demi-groupe simplifiable à gauche."""

    nil_part: tuple[int, ...]
    cancellable_part: tuple[int, ...]


class IdempotentShape(enum.StrEnum):
    LEFT_ZERO_PAIR = "LeftZeroPair"
    LEFT_ZERO_PAIR_WITH_IDENTITY = "LeftZeroPairWithIdentity"
    RIGHT_ZERO = "RightZero"
    RIGHT_ZERO_WITH_ZERO = "RightZeroWithZero"
    EMPTY = "Empty"
    OTHER = "Other"


@dataclass(frozen=True)
class IdempotentStructure:
    elements: tuple[int, ...]
    shape: IdempotentShape

    @property
    def closed(self) -> bool:
        return self.shape is not IdempotentShape.OTHER


class RegularUniformTag(enum.StrEnum):
    GROUP = "Group"
    ZERO_GROUP = "ZeroGroup"
    GROUP_WITH_TWO_LEFT_ZEROS = "GroupWithTwoLeftZeros"
    TWO_ELEMENT_LEFT_ZERO = "TwoElementLeftZero"
    RIGHT_GROUP = "RightGroup"
    RIGHT_ZERO_GROUP = "RightZeroGroup"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class LeftZeroAction:
    """Action g ↦ (gθ₁, gθ₂) d'un groupe sur ses deux zéros à gauche."""

    thetas: tuple[int, int]
    swapping: tuple[int, ...]        # éléments g qui échangent θ₁ et θ₂
    fixing: tuple[int, ...]
    swap_rule: bool                  # g ≠ 1 échange toujours
    faithful: bool


@dataclass(frozen=True)
class RegularUniformClass:
    tag: RegularUniformTag
    group_elements: tuple[int, ...] = ()
    action: LeftZeroAction | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def applicable(self) -> bool:
        return self.tag is not RegularUniformTag.NOT_APPLICABLE


# -----------------------------------------------------------------------------
# Ideals
# -----------------------------------------------------------------------------

def _left_multiples(s: Semigroup, a: int) -> set[int]:
    """Sa."""
    return {s.table[x][a] for x in s.elements}


def _right_multiples(s: Semigroup, a: int) -> set[int]:
    """aS."""
    return set(s.table[a])


def principal_ideal(s: Semigroup, a: int) -> frozenset[int]:
    """S¹aS¹."""
    t = s.table
    left = _left_multiples(s, a) | {a}
    return frozenset(left | {t[x][y] for x in left for y in s.elements})


def _products_all_zero(s: Semigroup, z: int) -> bool:
    return all(v == z for row in s.table for v in row)


def _is_group_on(s: Semigroup, elements: set[int]) -> bool:
    """`elements` est-il un sous-groupe de S ?"""
    if not elements or not cayley.is_closed(s, elements):
        return False
    t = s.table
    units = [e for e in elements if all(t[e][x] == x == t[x][e] for x in elements)]
    if not units:
        return False
    e = units[0]
    return all(any(t[x][y] == e == t[y][x] for y in elements) for x in elements)


def _is_right_simple_on(s: Semigroup, elements: set[int]) -> bool:
    t = s.table
    return all({t[a][x] for x in elements} == elements for a in elements)


def _is_right_group_on(s: Semigroup, elements: set[int]) -> bool:
    if not elements or not cayley.is_closed(s, elements):
        return False
    has_idempotent = any(s.table[x][x] == x for x in elements)
    return has_idempotent and _is_right_simple_on(s, elements)


def _is_completely_regular(s: Semigroup) -> bool:
    for x in s.elements:
        p = x
        for _ in range(s.order):
            p = s.table[p][x]
            if p == x:
                break
        else:
            return False
    return True


# -----------------------------------------------------------------------------
# Profile
# -----------------------------------------------------------------------------

def structural_profile(s: Semigroup) -> StructuralProfile:
    n = s.order
    t = s.table
    arr = s.array
    everything = set(s.elements)

    idem = cayley.idempotents(s)
    idem_set = set(idem)
    commutative = bool((arr == arr.T).all())
    band = len(idem) == n
    regular = all(cayley.is_regular_element(s, a) for a in s.elements)
    e_semigroup = cayley.is_closed(s, idem)
    idem_commute = all(t[e][f] == t[f][e] for e in idem for f in idem)

    left_simple = all(_left_multiples(s, a) == everything for a in s.elements)
    right_simple = all(_right_multiples(s, a) == everything for a in s.elements)
    ideals = [principal_ideal(s, a) for a in s.elements]
    simple = all(ideal == everything for ideal in ideals)
    chain = all(i <= j or j <= i for i in ideals for j in ideals)

    z = cayley.zero(s)
    has_zero = z is not None
    nonzero = everything - {z} if has_zero else everything
    square_nonzero = has_zero and n >= 2 and not _products_all_zero(s, z)
    left_0_simple = square_nonzero and all(_left_multiples(s, a) | {a} == everything for a in nonzero)
    right_0_simple = square_nonzero and all(_right_multiples(s, a) | {a} == everything for a in nonzero)
    zero_simple = square_nonzero and all(ideals[a] == everything for a in nonzero)

    ident = cayley.identity(s)
    group = _is_group_on(s, everything)
    right_group = right_simple and bool(idem)
    zero_group = has_zero and n >= 2 and _is_group_on(s, nonzero)
    right_zero_group = has_zero and n >= 2 and _is_right_group_on(s, nonzero)

    left_zero_list = cayley.left_zeros(s)
    left_identity_list = cayley.left_identities(s)

    return StructuralProfile(
        commutative=commutative,
        band=band,
        regular=regular,
        e_semigroup=e_semigroup,
        orthodox=regular and e_semigroup,
        completely_regular=_is_completely_regular(s),
        inverse=regular and idem_commute,
        left_inverse=regular and all(t[t[e][f]][e] == t[e][f] for e in idem for f in idem),
        right_inverse=regular and all(t[t[e][f]][e] == t[f][e] for e in idem for f in idem),
        clifford=regular and all(t[e][x] == t[x][e] for e in idem_set for x in s.elements),
        left_simple=left_simple,
        right_simple=right_simple,
        simple=simple,
        left_0_simple=left_0_simple,
        right_0_simple=right_0_simple,
        zero_simple=zero_simple,
        completely_simple=simple,
        completely_zero_simple=zero_simple,
        group=group,
        right_group=right_group,
        left_zero_sg=len(left_zero_list) == n,
        right_zero_sg=all(cayley.is_right_zero(s, x) for x in s.elements),
        zero_group=zero_group,
        right_zero_group=right_zero_group,
        left_nil=all(cayley.left_nilpotent_index(s, x) is not None for x in s.elements),
        left_cancellative=all(cayley.is_left_cancellable(s, x) for x in s.elements),
        chain=chain,
        has_identity=ident is not None,
        has_left_identity=bool(left_identity_list),
        has_right_identity=bool(cayley.right_identities(s)),
        has_zero=has_zero,
        left_zero_count=len(left_zero_list),
        left_identity_count=len(left_identity_list),
    )


def is_left_subelementary(s: Semigroup) -> LeftSubelementary | None:
    """S = L ⊔ C, L = éléments nilpotents à gauche (idéal à gauche), C ≠ ∅ simplifiable à gauche.

    Retourne None si la décomposition échoue (y compris L = ∅ : S est alors
    simplifiable à gauche et c'est ce drapeau qui s'applique).
    """
    nil_part = [x for x in s.elements if cayley.left_nilpotent_index(s, x) is not None]
    nil_set = set(nil_part)
    cancellable_part = [x for x in s.elements if x not in nil_set]
    if not nil_part or not cancellable_part:
        return None
    if not all(cayley.is_left_cancellable(s, c) for c in cancellable_part):
        return None
    if not cayley.is_closed(s, cancellable_part):
        return None
    if any(s.table[x][l] not in nil_set for x in s.elements for l in nil_part):
        return None
    return LeftSubelementary(tuple(nil_part), tuple(cancellable_part))


def idempotent_structure(s: Semigroup) -> IdempotentStructure:
    """Forme de E(S) : L, L¹ (L zéro à gauche à deux éléments), R ou R⁰ (R zéro à droite)."""
    idem = tuple(cayley.idempotents(s))
    if not idem:
        return IdempotentStructure(idem, IdempotentShape.EMPTY)
    if not cayley.is_closed(s, idem):
        return IdempotentStructure(idem, IdempotentShape.OTHER)

    sub, _ = cayley.restrict(s, idem)
    k = sub.order
    left_zero_sg = len(cayley.left_zeros(sub)) == k
    right_zero_sg = all(cayley.is_right_zero(sub, x) for x in sub.elements)

    if k == 2 and left_zero_sg:
        return IdempotentStructure(idem, IdempotentShape.LEFT_ZERO_PAIR)
    if right_zero_sg:
        return IdempotentStructure(idem, IdempotentShape.RIGHT_ZERO)
    unit = cayley.identity(sub)
    if k == 3 and unit is not None:
        rest = [x for x in sub.elements if x != unit]
        if all(cayley.is_left_zero(sub, x) for x in rest):
            return IdempotentStructure(idem, IdempotentShape.LEFT_ZERO_PAIR_WITH_IDENTITY)
    z = cayley.zero(sub)
    if z is not None and k >= 2:
        rest = [x for x in sub.elements if x != z]
        if all(sub.table[a][b] == b for a in rest for b in rest):
            return IdempotentStructure(idem, IdempotentShape.RIGHT_ZERO_WITH_ZERO)
    return IdempotentStructure(idem, IdempotentShape.OTHER)


# -----------------------------------------------------------------------------
# Regular uniform structures
# -----------------------------------------------------------------------------

def _group_part(s: Semigroup, elements: set[int]) -> tuple[int, ...]:
    """Sous-groupe maximal Se (e premier idempotent de `elements`)."""
    e = min(x for x in elements if s.table[x][x] == x)
    return tuple(sorted({s.table[x][e] for x in elements}))


def _match_group_with_two_left_zeros(s: Semigroup, profile: StructuralProfile) -> RegularUniformClass | None:
    if profile.left_zero_count != 2:
        return None
    theta_1, theta_2 = cayley.left_zeros(s)
    group = set(s.elements) - {theta_1, theta_2}
    if not _is_group_on(s, group):
        return None
    e = next(g for g in group if all(s.table[g][x] == x == s.table[x][g] for x in group))
    if not cayley.is_left_identity(s, e):
        return None

    swapping = tuple(sorted(g for g in group if s.table[g][theta_1] == theta_2))
    fixing = tuple(sorted(g for g in group if s.table[g][theta_1] == theta_1))
    action = LeftZeroAction(
        thetas=(theta_1, theta_2),
        swapping=swapping,
        fixing=fixing,
        swap_rule=set(swapping) == group - {e},
        faithful=fixing == (e,),
    )
    notes = () if action.swap_rule else ("action differs from the swap-for-every-g≠1 rule",)
    return RegularUniformClass(
        tag=RegularUniformTag.GROUP_WITH_TWO_LEFT_ZEROS,
        group_elements=tuple(sorted(group)),
        action=action,
        notes=notes,
    )


def classify_regular_uniform(
    s: Semigroup,
    *,
    profile: StructuralProfile | None = None,
    uniform: bool | None = None,
) -> RegularUniformClass:
    """Structure d'un demi-groupe régulier uniforme (ordre de test fixé).

    Lève ClassificationGap si S est régulier, uniforme, et ne correspond à aucune
    structure : ce serait un contre-exemple au théorème de classification.
    """
    p = profile or structural_profile(s)
    is_unif = is_uniform(s) if uniform is None else uniform
    if not (p.regular and is_unif):
        return RegularUniformClass(RegularUniformTag.NOT_APPLICABLE)

    everything = set(s.elements)
    if s.order == 2 and p.left_zero_sg:
        return RegularUniformClass(RegularUniformTag.TWO_ELEMENT_LEFT_ZERO)
    if p.group:
        return RegularUniformClass(RegularUniformTag.GROUP, group_elements=tuple(s.elements))
    if p.zero_group:
        z = cayley.zero(s)
        return RegularUniformClass(
            RegularUniformTag.ZERO_GROUP,
            group_elements=tuple(sorted(everything - {z})),
        )
    matched = _match_group_with_two_left_zeros(s, p)
    if matched is not None:
        return matched
    if p.right_group:
        return RegularUniformClass(RegularUniformTag.RIGHT_GROUP, group_elements=_group_part(s, everything))
    if p.right_zero_group:
        z = cayley.zero(s)
        return RegularUniformClass(
            RegularUniformTag.RIGHT_ZERO_GROUP,
            group_elements=_group_part(s, everything - {z}),
        )
    raise ClassificationGap(s.table)


def chain_uniform_criterion(s: Semigroup, *, profile: StructuralProfile | None = None) -> bool:
    """Pour S commutatif de chaîne : xy = y ⇒ x identité ou y zéro."""
    p = profile or structural_profile(s)
    if not (p.commutative and p.chain):
        raise CriterionInapplicable("the criterion applies to commutative chain semigroups only")
    ident = cayley.identity(s)
    z = cayley.zero(s)
    t = s.table
    return all(
        x == ident or y == z
        for x in s.elements
        for y in s.elements
        if t[x][y] == y
    )

