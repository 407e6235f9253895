"""Services (métier) : constructeurs des familles nommées de demi-groupes.

Objectifs :
- Construire chaque famille (zéros à gauche/droite, groupes, G⁰, groupes à droite,
  Rees M[G;I,Λ;P] et M⁰[G;I,Λ;P], G ⊔ {θ₁, θ₂}) en un Semigroup validé.
- Fournir les groupes d'ordre ≤ 8 à isomorphisme près.
- Balayer les matrices sandwich sur une petite grille de paramètres.

Toute sortie passe par `new_semigroup` : une famille non associative remonte
une AssociativityError, elle n'est jamais masquée.
"""

from __future__ import annotations

import enum
import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, replace

from services import cayley_service as cayley
from services.cayley_service import Semigroup
from services.errors import BoundExceeded, RangeError, RegularityError
from utils.config import Bounds, load_bounds

log = logging.getLogger("semiuniform.families")

Sandwich = tuple[tuple[int | None, ...], ...]


class FamilyKind(enum.StrEnum):
    LEFT_ZERO = "LeftZero"
    RIGHT_ZERO = "RightZero"
    CYCLIC_GROUP = "CyclicGroup"
    GROUP = "Group"
    NULL_MONOGENIC_NIL = "NullMonogenicNil"
    DIRECT_PRODUCT = "DirectProduct"
    ZERO_ADJOINED = "ZeroAdjoined"
    IDENTITY_ADJOINED = "IdentityAdjoined"
    RIGHT_GROUP_PRODUCT = "RightGroupProduct"
    REES_MATRIX = "ReesMatrix"
    REES_MATRIX_0 = "ReesMatrix0"
    GROUP_TWO_LEFT_ZEROS = "GroupTwoLeftZeros"


@dataclass(frozen=True)
class FamilySpec:
    """Paramètres d'une famille.

    - size : ordre (LeftZero, RightZero, CyclicGroup, NullMonogenicNil) ou |R| (RightGroupProduct).
    - group : table du groupe G (RightGroupProduct, ReesMatrix*, GroupTwoLeftZeros).
    - base / other : facteurs (DirectProduct, ZeroAdjoined, IdentityAdjoined).
    - index_i, index_lambda, sandwich : |I|, |Λ| et P (Λ × I, None = entrée nulle).
    - sigma : sigma[g] = True si g échange θ₁ et θ₂.
    """

    kind: FamilyKind
    size: int = 0
    group: Semigroup | None = None
    base: Semigroup | None = None
    other: Semigroup | None = None
    index_i: int = 1
    index_lambda: int = 1
    sandwich: Sandwich | None = None
    sigma: tuple[bool, ...] | None = None
    strict_paper: bool = True

    def describe(self) -> str:
        parts = [str(self.kind)]
        if self.size:
            parts.append(f"size={self.size}")
        if self.group is not None:
            parts.append(f"|G|={self.group.order}")
        if self.kind in (FamilyKind.REES_MATRIX, FamilyKind.REES_MATRIX_0):
            parts.append(f"|I|={self.index_i} |Λ|={self.index_lambda} P={_format_sandwich(self.sandwich)}")
        if self.kind is FamilyKind.GROUP_TWO_LEFT_ZEROS:
            parts.append("strict_paper" if self.strict_paper else f"sigma={self.sigma}")
        return " ".join(parts)


def _format_sandwich(p: Sandwich | None) -> str:
    if p is None:
        return "-"
    return ";".join(",".join("z" if v is None else str(v) for v in row) for row in p)


# -----------------------------------------------------------------------------
# Groups
# -----------------------------------------------------------------------------

def _require_group(g: Semigroup | None) -> Semigroup:
    if g is None:
        raise RangeError("this family needs a group")
    if cayley.identity(g) is None or not all(
        len(set(row)) == g.order for row in (*g.table, *zip(*g.table))
    ):
        raise RangeError("the given table is not a group")
    return g


def permutation_group(generators: Sequence[Sequence[int]]) -> Semigroup:
    """Groupe engendré par des permutations ; produit = « x puis y », identité en 0."""
    degree = len(generators[0])
    ident = tuple(range(degree))
    gens = [tuple(g) for g in generators]
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(degree))
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    ordered = sorted(elements)
    index = {p: k for k, p in enumerate(ordered)}
    rows = [[index[tuple(y[x[i]] for i in range(degree))] for y in ordered] for x in ordered]
    return cayley.new_semigroup(len(ordered), rows)


def dihedral_group(n: int) -> Semigroup:
    rotation = [(i + 1) % n for i in range(n)]
    reflection = list(reversed(range(n)))
    return permutation_group([rotation, reflection])


def quaternion_group() -> Semigroup:
    # units 1, i, j, k ; (sign, unit) indexed sign * 4 + unit
    unit_product = {
        (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def mul(x: int, y: int) -> int:
        sx, ux = divmod(x, 4)
        sy, uy = divmod(y, 4)
        if ux == 0:
            sign, unit = 0, uy
        elif uy == 0:
            sign, unit = 0, ux
        else:
            sign, unit = unit_product[(ux, uy)]
        return ((sx + sy + sign) % 2) * 4 + unit

    return cayley.new_semigroup(8, [[mul(x, y) for y in range(8)] for x in range(8)])


def _product_of(*factors: Semigroup) -> Semigroup:
    result = factors[0]
    for f in factors[1:]:
        result = cayley.direct_product(result, f)
    return result


def _group_recipes() -> dict[str, tuple[int, object]]:
    z = cayley.cyclic_group
    return {
        "Z1": (1, lambda: z(1)),
        "Z2": (2, lambda: z(2)),
        "Z3": (3, lambda: z(3)),
        "Z4": (4, lambda: z(4)),
        "Z2xZ2": (4, lambda: _product_of(z(2), z(2))),
        "Z5": (5, lambda: z(5)),
        "Z6": (6, lambda: z(6)),
        "S3": (6, lambda: dihedral_group(3)),
        "Z7": (7, lambda: z(7)),
        "Z8": (8, lambda: z(8)),
        "Z4xZ2": (8, lambda: _product_of(z(4), z(2))),
        "Z2xZ2xZ2": (8, lambda: _product_of(z(2), z(2), z(2))),
        "D4": (8, lambda: dihedral_group(4)),
        "Q8": (8, quaternion_group),
    }


GROUP_NAMES: tuple[str, ...] = tuple(_group_recipes())


def group_by_name(name: str) -> Semigroup:
    recipes = _group_recipes()
    key = name.strip()
    if key not in recipes:
        raise RangeError(f"unknown group {name!r}; known: {', '.join(GROUP_NAMES)}")
    return recipes[key][1]()


def builtin_group_names(n: int, *, bounds: Bounds | None = None) -> list[str]:
    limit = (bounds or load_bounds()).group_order
    if n > limit:
        raise BoundExceeded("builtin_groups order", n, limit)
    return [name for name, (order, _) in _group_recipes().items() if order == n]


def builtin_groups(n: int, *, bounds: Bounds | None = None) -> list[Semigroup]:
    """Groupes d'ordre n à isomorphisme près (n ≤ 8)."""
    return [group_by_name(name) for name in builtin_group_names(n, bounds=bounds)]


# -----------------------------------------------------------------------------
# Constructions
# -----------------------------------------------------------------------------

def monogenic_nil(n: int) -> Semigroup:
    """{a, a², ..., a^(n-1), 0} avec a^n = 0 ; 0 indexé 0, a^k indexé k."""
    if n < 1:
        raise RangeError("order must be positive")
    rows = [[0 if i == 0 or j == 0 or i + j >= n else i + j for j in range(n)] for i in range(n)]
    return cayley.new_semigroup(n, rows)


def paper_sigma(group: Semigroup) -> tuple[bool, ...]:
    """σ(g) = échange pour tout g ≠ 1."""
    e = cayley.identity(group)
    return tuple(g != e for g in group.elements)


def _rees_matrix(spec: FamilySpec, *, with_zero: bool) -> Semigroup:
    g = _require_group(spec.group)
    n_i, n_l = spec.index_i, spec.index_lambda
    if n_i < 1 or n_l < 1:
        raise RangeError("index sets I and Λ must be nonempty")
    p = spec.sandwich
    if p is None or len(p) != n_l or any(len(row) != n_i for row in p):
        raise RangeError(f"sandwich matrix must be |Λ|×|I| = {n_l}×{n_i}")
    for row in p:
        for v in row:
            if v is None and not with_zero:
                raise RangeError("zero sandwich entries need the 0-variant")
            if v is not None and not 0 <= v < g.order:
                raise RangeError(f"sandwich entry {v} is not an element of G")
    if with_zero:
        if any(all(v is None for v in row) for row in p) or any(
            all(p[l][i] is None for l in range(n_l)) for i in range(n_i)
        ):
            raise RegularityError(f"sandwich matrix {_format_sandwich(p)} has a zero row or column")

    m = g.order
    size = n_i * m * n_l
    t = g.table

    def index(i: int, x: int, lam: int) -> int:
        return (i * m + x) * n_l + lam

    order = size + 1 if with_zero else size
    zero = size
    rows = [[zero] * order for _ in range(order)]
    for a in range(size):
        i, rest = divmod(a, m * n_l)
        x, lam = divmod(rest, n_l)
        for b in range(size):
            j, rest_b = divmod(b, m * n_l)
            y, mu = divmod(rest_b, n_l)
            entry = p[lam][j]
            if entry is None:
                continue
            rows[a][b] = index(i, t[t[x][entry]][y], mu)
    return cayley.new_semigroup(order, rows)


def _group_two_left_zeros(spec: FamilySpec) -> Semigroup:
    g = _require_group(spec.group)
    m = g.order
    if spec.strict_paper:
        sigma = paper_sigma(g)
        if spec.sigma is not None and tuple(spec.sigma) != sigma:
            raise RangeError("strict_paper requires sigma(g) = swap for every g ≠ 1")
    elif spec.sigma is None:
        raise RangeError("sigma is required when strict_paper is off")
    else:
        sigma = tuple(bool(v) for v in spec.sigma)
    if len(sigma) != m:
        raise RangeError(f"sigma must have one entry per group element ({m})")

    theta = (m, m + 1)
    rows: list[list[int]] = []
    for x in range(m):
        row = list(g.table[x])
        for k in (0, 1):
            row.append(theta[1 - k] if sigma[x] else theta[k])
        rows.append(row)
    for k in (0, 1):
        rows.append([theta[k]] * (m + 2))
    return cayley.new_semigroup(m + 2, rows)


def construct(spec: FamilySpec) -> Semigroup:
    match spec.kind:
        case FamilyKind.LEFT_ZERO:
            return cayley.left_zero_semigroup(spec.size)
        case FamilyKind.RIGHT_ZERO:
            return cayley.right_zero_semigroup(spec.size)
        case FamilyKind.CYCLIC_GROUP:
            return cayley.cyclic_group(spec.size)
        case FamilyKind.GROUP:
            return _require_group(spec.group)
        case FamilyKind.NULL_MONOGENIC_NIL:
            return monogenic_nil(spec.size)
        case FamilyKind.DIRECT_PRODUCT:
            if spec.base is None or spec.other is None:
                raise RangeError("DirectProduct needs two factors")
            return cayley.direct_product(spec.base, spec.other)
        case FamilyKind.ZERO_ADJOINED:
            if spec.base is None:
                raise RangeError("ZeroAdjoined needs a base semigroup")
            return cayley.adjoin_zero(spec.base)
        case FamilyKind.IDENTITY_ADJOINED:
            if spec.base is None:
                raise RangeError("IdentityAdjoined needs a base semigroup")
            return cayley.adjoin_identity(spec.base)
        case FamilyKind.RIGHT_GROUP_PRODUCT:
            g = _require_group(spec.group)
            return cayley.direct_product(g, cayley.right_zero_semigroup(spec.size))
        case FamilyKind.REES_MATRIX:
            return _rees_matrix(spec, with_zero=False)
        case FamilyKind.REES_MATRIX_0:
            return _rees_matrix(spec, with_zero=True)
        case FamilyKind.GROUP_TWO_LEFT_ZEROS:
            return _group_two_left_zeros(spec)
    raise RangeError(f"unknown family {spec.kind!r}")


# -----------------------------------------------------------------------------
# Sweeps
# -----------------------------------------------------------------------------

def sandwich_matrices(group_order: int, n_i: int, n_l: int, *, with_zero: bool) -> Iterator[Sandwich]:
    """Toutes les matrices Λ × I (régulières pour la variante 0)."""
    values: list[int | None] = list(range(group_order))
    if with_zero:
        values.append(None)
    for entries in itertools.product(values, repeat=n_i * n_l):
        p = tuple(tuple(entries[l * n_i:(l + 1) * n_i]) for l in range(n_l))
        if with_zero and (
            any(all(v is None for v in row) for row in p)
            or any(all(p[l][i] is None for l in range(n_l)) for i in range(n_i))
        ):
            continue
        yield p


def rees_sweep(
    *,
    max_group_order: int = 3,
    max_index: int = 2,
    with_zero: bool,
) -> Iterator[tuple[FamilySpec, Semigroup]]:
    """M[G;I,Λ;P] (ou M⁰) pour G d'ordre ≤ max_group_order, |I|, |Λ| ≤ max_index."""
    kind = FamilyKind.REES_MATRIX_0 if with_zero else FamilyKind.REES_MATRIX
    for order in range(1, max_group_order + 1):
        for group in builtin_groups(order):
            for n_i in range(1, max_index + 1):
                for n_l in range(1, max_index + 1):
                    template = FamilySpec(kind=kind, group=group, index_i=n_i, index_lambda=n_l)
                    for p in sandwich_matrices(order, n_i, n_l, with_zero=with_zero):
                        spec = replace(template, sandwich=p)
                        yield spec, construct(spec)
