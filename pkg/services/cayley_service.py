"""Services (métier) liés aux tables de Cayley.

Objectifs :
- Représenter un demi-groupe fini par sa table de multiplication validée.
- Fournir les prédicats élémentaires (idempotent, zéro à gauche, identité à gauche, ...).
- Adjoindre une identité / un zéro, construire l'opposé, canoniser à isomorphisme près.

Convention : table[i][j] = i∘j, i étant le facteur de gauche.
Les éléments sont des indices 0..n-1 ; les noms lisibles vivent dans la couche CLI.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from services.errors import AssociativityError, BoundExceeded, RangeError
from utils.config import Bounds, load_bounds

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Semigroup:
    """Demi-groupe fini (immutable). Construire via `new_semigroup`."""

    order: int
    table: Table

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.table, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def __repr__(self) -> str:
        return f"Semigroup(order={self.order}, table={[list(r) for r in self.table]})"


@dataclass(frozen=True)
class ElementProfile:
    element: int
    idempotent: bool
    left_zero: bool
    right_zero: bool
    zero: bool
    left_identity: bool
    right_identity: bool
    identity: bool
    regular: bool
    left_cancellable: bool
    left_nilpotent_index: int | None

    @property
    def left_nilpotent(self) -> bool:
        return self.left_nilpotent_index is not None


# -----------------------------------------------------------------------------
# Construction
# -----------------------------------------------------------------------------

def _first_associativity_violation(arr: np.ndarray) -> tuple[int, int, int] | None:
    left = arr[arr, :]    # left[i, j, k] = (ij)k
    right = arr[:, arr]   # right[i, j, k] = i(jk)
    bad = np.argwhere(left != right)
    if bad.size == 0:
        return None
    i, j, k = (int(v) for v in bad[0])
    return i, j, k


def new_semigroup(order: int, table: Sequence[Sequence[int]]) -> Semigroup:
    """Valide puis retourne un Semigroup.

    Lève RangeError (taille / entrées hors bornes) ou AssociativityError avec le
    premier triplet fautif dans l'ordre lexicographique.
    """
    if order < 1:
        raise RangeError(f"order must be positive, got {order}")
    rows = [tuple(int(v) for v in row) for row in table]
    if len(rows) != order or any(len(r) != order for r in rows):
        raise RangeError(f"table must be {order}x{order}")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not 0 <= v < order:
                raise RangeError(f"entry table[{i}][{j}] = {v} is outside [0, {order - 1}]")

    frozen: Table = tuple(rows)
    arr = np.asarray(frozen, dtype=np.int64)
    triple = _first_associativity_violation(arr)
    if triple is not None:
        i, j, k = triple
        raise AssociativityError(triple, frozen[frozen[i][j]][k], frozen[i][frozen[j][k]])
    return Semigroup(order=order, table=frozen)


def from_flat(order: int, flat: Sequence[int]) -> Semigroup:
    if len(flat) != order * order:
        raise RangeError(f"expected {order * order} entries, got {len(flat)}")
    return new_semigroup(order, [flat[i * order:(i + 1) * order] for i in range(order)])


def left_zero_semigroup(n: int) -> Semigroup:
    return new_semigroup(n, [[i] * n for i in range(n)])


def right_zero_semigroup(n: int) -> Semigroup:
    return new_semigroup(n, [list(range(n)) for _ in range(n)])


def cyclic_group(n: int) -> Semigroup:
    return new_semigroup(n, [[(i + j) % n for j in range(n)] for i in range(n)])


# -----------------------------------------------------------------------------
# Element predicates
# -----------------------------------------------------------------------------

def is_idempotent(s: Semigroup, x: int) -> bool:
    return s.table[x][x] == x


def is_left_zero(s: Semigroup, x: int) -> bool:
    return all(v == x for v in s.table[x])


def is_right_zero(s: Semigroup, x: int) -> bool:
    return all(s.table[y][x] == x for y in s.elements)


def is_left_identity(s: Semigroup, x: int) -> bool:
    return all(s.table[x][y] == y for y in s.elements)


def is_right_identity(s: Semigroup, x: int) -> bool:
    return all(s.table[y][x] == y for y in s.elements)


def is_left_cancellable(s: Semigroup, x: int) -> bool:
    # cx = cy => x = y, i.e. the row of x is a permutation
    return len(set(s.table[x])) == s.order


def is_regular_element(s: Semigroup, a: int) -> bool:
    t = s.table
    return any(t[t[a][x]][a] == a for x in s.elements)


def power(s: Semigroup, x: int, k: int) -> int:
    if k < 1:
        raise RangeError(f"exponent must be positive, got {k}")
    p = x
    for _ in range(k - 1):
        p = s.table[p][x]
    return p


def left_nilpotent_index(s: Semigroup, x: int) -> int | None:
    """Plus petit k <= n tel que x^k soit un zéro à gauche, sinon None."""
    p = x
    for k in range(1, s.order + 1):
        if is_left_zero(s, p):
            return k
        p = s.table[p][x]
    return None


def element_profile(s: Semigroup, x: int) -> ElementProfile:
    if not 0 <= x < s.order:
        raise RangeError(f"element {x} is outside [0, {s.order - 1}]")
    lz = is_left_zero(s, x)
    rz = is_right_zero(s, x)
    li = is_left_identity(s, x)
    ri = is_right_identity(s, x)
    return ElementProfile(
        element=x,
        idempotent=is_idempotent(s, x),
        left_zero=lz,
        right_zero=rz,
        zero=lz and rz,
        left_identity=li,
        right_identity=ri,
        identity=li and ri,
        regular=is_regular_element(s, x),
        left_cancellable=is_left_cancellable(s, x),
        left_nilpotent_index=left_nilpotent_index(s, x),
    )


# -----------------------------------------------------------------------------
# Distinguished elements
# -----------------------------------------------------------------------------

def idempotents(s: Semigroup) -> list[int]:
    return [x for x in s.elements if is_idempotent(s, x)]


def left_zeros(s: Semigroup) -> list[int]:
    return [x for x in s.elements if is_left_zero(s, x)]


def left_identities(s: Semigroup) -> list[int]:
    return [x for x in s.elements if is_left_identity(s, x)]


def right_identities(s: Semigroup) -> list[int]:
    return [x for x in s.elements if is_right_identity(s, x)]


def identity(s: Semigroup) -> int | None:
    for e in s.elements:
        if is_left_identity(s, e) and is_right_identity(s, e):
            return e
    return None


def zero(s: Semigroup) -> int | None:
    for z in s.elements:
        if is_left_zero(s, z) and is_right_zero(s, z):
            return z
    return None


def is_closed(s: Semigroup, subset: Iterable[int]) -> bool:
    members = set(subset)
    return all(s.table[a][b] in members for a in members for b in members)


def restrict(s: Semigroup, subset: Iterable[int]) -> tuple[Semigroup, list[int]]:
    """Sous-demi-groupe sur `subset` (doit être stable), réindexé 0..k-1.

    Retourne (sous-demi-groupe, liste nouvel indice -> ancien élément).
    """
    new_to_old = sorted(set(subset))
    old_to_new = {x: i for i, x in enumerate(new_to_old)}
    if not new_to_old:
        raise RangeError("cannot restrict to the empty set")
    try:
        rows = [[old_to_new[s.table[a][b]] for b in new_to_old] for a in new_to_old]
    except KeyError as exc:
        raise RangeError(f"subset {new_to_old} is not closed under the product") from exc
    return Semigroup(order=len(new_to_old), table=tuple(tuple(r) for r in rows)), new_to_old


# -----------------------------------------------------------------------------
# Adjunction, opposite, products
# -----------------------------------------------------------------------------

def adjoin_identity(s: Semigroup) -> Semigroup:
    """S¹ : S inchangé s'il possède déjà une identité."""
    if identity(s) is not None:
        return s
    n = s.order
    rows = [list(row) + [i] for i, row in enumerate(s.table)]
    rows.append(list(range(n + 1)))
    return new_semigroup(n + 1, rows)


def adjoin_zero(s: Semigroup) -> Semigroup:
    """S⁰ : S inchangé s'il possède déjà un zéro."""
    if zero(s) is not None:
        return s
    n = s.order
    rows = [list(row) + [n] for row in s.table]
    rows.append([n] * (n + 1))
    return new_semigroup(n + 1, rows)


def opposite(s: Semigroup) -> Semigroup:
    n = s.order
    return new_semigroup(n, [[s.table[j][i] for j in range(n)] for i in range(n)])


def direct_product(s: Semigroup, t: Semigroup) -> Semigroup:
    """S × T, (a, b) indexé a * |T| + b."""
    m = t.order
    n = s.order * m
    rows = []
    for x in range(n):
        a, b = divmod(x, m)
        rows.append([s.table[a][y // m] * m + t.table[b][y % m] for y in range(n)])
    return new_semigroup(n, rows)


def permute(s: Semigroup, perm: Sequence[int]) -> Semigroup:
    """Renommage x -> perm[x]."""
    n = s.order
    if sorted(perm) != list(range(n)):
        raise RangeError(f"{list(perm)} is not a permutation of 0..{n - 1}")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows[perm[i]][perm[j]] = perm[s.table[i][j]]
    return Semigroup(order=n, table=tuple(tuple(r) for r in rows))


# -----------------------------------------------------------------------------
# Canonical form
# -----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _permutation_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    inverses = np.argsort(perms, axis=1)
    return perms, inverses


def canonical_form(s: Semigroup, *, bounds: Bounds | None = None) -> tuple[int, ...]:
    """Table aplatie lexicographiquement minimale sur tous les renommages.

    Les n! renommages sont évalués d'un bloc (numpy) ; au-delà de
    `bounds.canonical_order` on lève BoundExceeded.
    """
    limit = (bounds or load_bounds()).canonical_order
    n = s.order
    if n > limit:
        raise BoundExceeded("canonical_form order", n, limit)
    if n == 1:
        return (0,)
    perms, inverses = _permutation_arrays(n)
    m = perms.shape[0]
    # relabeled[p][x][y] = perm_p(T[inv_p(x)][inv_p(y)])
    inner = s.array[inverses[:, :, None], inverses[:, None, :]].reshape(m, n * n)
    relabeled = np.take_along_axis(perms, inner, axis=1)
    best = np.lexsort(relabeled.T[::-1])[0]
    return tuple(int(v) for v in relabeled[best])


def are_isomorphic(s: Semigroup, t: Semigroup, *, bounds: Bounds | None = None) -> bool:
    if s.order != t.order:
        return False
    return canonical_form(s, bounds=bounds) == canonical_form(t, bounds=bounds)
