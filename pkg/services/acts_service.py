"""Services (métier) liés aux S-actes à droite et à leurs congruences.

Objectifs :
- Représenter un S-acte à droite fini (S_S en particulier).
- Engendrer des congruences (union-find + file de travail), congruences de Rees.
- Décider la largeur d'un sous-acte et l'uniformité d'un demi-groupe.
- Fournir un oracle par énumération exhaustive (petits ordres uniquement).

Un sous-acte « non nul » est un sous-acte d'au moins deux éléments : tout
sous-acte à un élément est formé d'un élément zéro (l'acte zéro Θ).
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType

from services.cayley_service import Semigroup, opposite
from services.errors import BoundExceeded, CompatibilityError, DegenerateOrderError, RangeError, SubactError
from utils.config import Bounds, load_bounds

log = logging.getLogger("semiuniform.acts")


# -----------------------------------------------------------------------------
# Data
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class RightAct:
    """Acte à droite : action[a][s] = a·s."""

    base: Semigroup
    carrier_size: int
    action: tuple[tuple[int, ...], ...]

    @property
    def carrier(self) -> range:
        return range(self.carrier_size)

    def act(self, a: int, s: int) -> int:
        return self.action[a][s]


@dataclass(frozen=True)
class RightCongruence:
    """Partition du support ; class_id[a] = plus petit élément du bloc de a."""

    class_id: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.class_id)

    def related(self, a: int, b: int) -> bool:
        return self.class_id[a] == self.class_id[b]

    def is_diagonal(self) -> bool:
        return all(c == a for a, c in enumerate(self.class_id))

    def is_universal(self) -> bool:
        return all(c == 0 for c in self.class_id)

    def blocks(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for a, c in enumerate(self.class_id):
            groups.setdefault(c, []).append(a)
        return [tuple(groups[c]) for c in sorted(groups)]

    def merges_within(self, elements: Iterable[int]) -> bool:
        """Vrai si la congruence identifie deux éléments distincts de `elements`."""
        members = list(elements)
        return len({self.class_id[x] for x in members}) < len(members)

    def contains(self, other: RightCongruence) -> bool:
        return all(self.class_id[a] == self.class_id[other.class_id[a]] for a in range(self.size))

    def meet(self, other: RightCongruence) -> RightCongruence:
        first: dict[tuple[int, int], int] = {}
        ids = []
        for a in range(self.size):
            key = (self.class_id[a], other.class_id[a])
            ids.append(first.setdefault(key, a))
        return RightCongruence(tuple(ids))


@dataclass(frozen=True)
class Subact:
    elements: frozenset[int]

    def __len__(self) -> int:
        return len(self.elements)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))


@dataclass(frozen=True)
class UniformityFailure:
    """Témoin de non-uniformité : ρ(a, b) ne fusionne aucun couple de `subact`."""

    subact: Subact
    pair: tuple[int, int]
    congruence: RightCongruence


# -----------------------------------------------------------------------------
# Union-find
# -----------------------------------------------------------------------------


class UnionFind:
    """Union-find with path compression and union by rank."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> bool:
        root_i = self.find(i)
        root_j = self.find(j)
        if root_i == root_j:
            return False
        if self.rank[root_i] < self.rank[root_j]:
            root_i, root_j = root_j, root_i
        self.parent[root_j] = root_i
        if self.rank[root_i] == self.rank[root_j]:
            self.rank[root_i] += 1
        return True

    def to_congruence(self) -> RightCongruence:
        least: dict[int, int] = {}
        ids = []
        for a in range(len(self.parent)):
            ids.append(least.setdefault(self.find(a), a))
        return RightCongruence(tuple(ids))


# -----------------------------------------------------------------------------
# Acts
# -----------------------------------------------------------------------------


def s_as_act(s: Semigroup) -> RightAct:
    """S_S : S agissant sur lui-même par multiplication à droite."""
    return RightAct(base=s, carrier_size=s.order, action=s.table)


def new_act(base: Semigroup, action: Iterable[Iterable[int]]) -> RightAct:
    rows = tuple(tuple(int(v) for v in row) for row in action)
    size = len(rows)
    if size < 1:
        raise RangeError("an act needs a nonempty carrier")
    for a, row in enumerate(rows):
        if len(row) != base.order:
            raise RangeError(f"action row {a} must have {base.order} entries")
        if any(not 0 <= v < size for v in row):
            raise RangeError(f"action row {a} leaves the carrier")
    t = base.table
    for a in range(size):
        for s in base.elements:
            for u in base.elements:
                if rows[a][t[s][u]] != rows[rows[a][s]][u]:
                    raise CompatibilityError(f"a(st) != (as)t for a={a}, s={s}, t={u}")
    return RightAct(base=base, carrier_size=size, action=rows)


def _check_carrier(act: RightAct, bounds: Bounds | None, what: str) -> None:
    limit = (bounds or load_bounds()).congruence_carrier
    if act.carrier_size > limit:
        raise BoundExceeded(what, act.carrier_size, limit)


# -----------------------------------------------------------------------------
# Congruences
# -----------------------------------------------------------------------------


def generated_congruence(act: RightAct, pairs: Iterable[tuple[int, int]]) -> RightCongruence:
    """Plus petite congruence contenant `pairs`.

    Chaque fusion de blocs (x, y) met en file (x·s, y·s) pour tout s ; point fixe
    atteint quand la file est vide.
    """
    uf = UnionFind(act.carrier_size)
    work = list(pairs)
    for a, b in work:
        if not (0 <= a < act.carrier_size and 0 <= b < act.carrier_size):
            raise RangeError(f"pair ({a}, {b}) is outside the carrier")
    elements = act.base.elements
    while work:
        x, y = work.pop()
        if not uf.union(x, y):
            continue
        row_x = act.action[x]
        row_y = act.action[y]
        for s in elements:
            if row_x[s] != row_y[s]:
                work.append((row_x[s], row_y[s]))
    return uf.to_congruence()


def principal_congruence(act: RightAct, a: int, b: int) -> RightCongruence:
    return generated_congruence(act, [(a, b)])


@lru_cache(maxsize=2048)
def principal_congruences(act: RightAct) -> Mapping[tuple[int, int], RightCongruence]:
    """ρ(a, b) pour tout a < b (calcul unique, partagé)."""
    table = {
        (a, b): principal_congruence(act, a, b)
        for a, b in itertools.combinations(act.carrier, 2)
    }
    return MappingProxyType(table)


def is_right_compatible(act: RightAct, congruence: RightCongruence) -> bool:
    ids = congruence.class_id
    for s in act.base.elements:
        image_of: dict[int, int] = {}
        for a in act.carrier:
            img = ids[act.action[a][s]]
            if image_of.setdefault(ids[a], img) != img:
                return False
    return True


def make_subact(act: RightAct, elements: Iterable[int]) -> Subact:
    members = frozenset(elements)
    if not members:
        raise SubactError("a subact must be nonempty")
    if any(not 0 <= a < act.carrier_size for a in members):
        raise SubactError(f"{sorted(members)} is not inside the carrier")
    for a in members:
        for v in act.action[a]:
            if v not in members:
                raise SubactError(f"{sorted(members)} is not closed under the action ({a}·s = {v})")
    return Subact(members)


def rees_congruence(act: RightAct, subact: Subact | Iterable[int]) -> RightCongruence:
    """ρ_B = (B × B) ∪ Δ."""
    members = subact.elements if isinstance(subact, Subact) else subact
    b = make_subact(act, members)
    rep = min(b.elements)
    return RightCongruence(tuple(rep if a in b.elements else a for a in act.carrier))


def _set_partitions(n: int) -> Iterator[list[int]]:
    """Chaînes à croissance restreinte (restricted growth strings), ordre déterministe."""
    labels = [0] * n

    def backtrack(i: int, top: int) -> Iterator[list[int]]:
        if i == n:
            yield labels
            return
        for label in range(top + 2):
            labels[i] = label
            yield from backtrack(i + 1, max(top, label))

    if n == 0:
        return
    yield from backtrack(1, 0)


def all_right_congruences(act: RightAct, *, bounds: Bounds | None = None) -> list[RightCongruence]:
    """Toutes les congruences de l'acte (énumération des partitions, Bell(n))."""
    _check_carrier(act, bounds, "all_right_congruences carrier")
    found: list[RightCongruence] = []
    for labels in _set_partitions(act.carrier_size):
        first: dict[int, int] = {}
        ids = tuple(first.setdefault(label, a) for a, label in enumerate(labels))
        candidate = RightCongruence(ids)
        if is_right_compatible(act, candidate):
            found.append(candidate)
    return found


def annihilator(act: RightAct, a: int) -> RightCongruence:
    """ann(a) = {(s, t) | a·s = a·t}, congruence à droite sur S_S (noyau de λ_a)."""
    first: dict[int, int] = {}
    ids = tuple(first.setdefault(act.action[a][s], s) for s in act.base.elements)
    return RightCongruence(ids)


# -----------------------------------------------------------------------------
# Subacts
# -----------------------------------------------------------------------------


def zero_elements(act: RightAct) -> list[int]:
    """Z(A) : θ tel que θs = θ pour tout s (pour S_S : les zéros à gauche)."""
    return [a for a in act.carrier if all(v == a for v in act.action[a])]


def generated_subact(act: RightAct, x: int) -> Subact:
    """{x} ∪ xS."""
    if not 0 <= x < act.carrier_size:
        raise RangeError(f"element {x} is outside the carrier")
    return Subact(frozenset((x, *act.action[x])))


def all_subacts(act: RightAct, *, bounds: Bounds | None = None) -> list[Subact]:
    _check_carrier(act, bounds, "all_subacts carrier")
    found = []
    for size in range(1, act.carrier_size + 1):
        for combo in itertools.combinations(act.carrier, size):
            members = frozenset(combo)
            if all(v in members for a in combo for v in act.action[a]):
                found.append(Subact(members))
    return found


# -----------------------------------------------------------------------------
# Largeness and uniformity
# -----------------------------------------------------------------------------


def _blind_pair(act: RightAct, subact: Subact) -> tuple[tuple[int, int], RightCongruence] | None:
    for pair, rho in principal_congruences(act).items():
        if not rho.merges_within(subact.elements):
            return pair, rho
    return None


def is_large(act: RightAct, subact: Subact) -> bool:
    """B ⊆' A : toute congruence principale non diagonale fusionne deux éléments de B."""
    make_subact(act, subact.elements)
    return _blind_pair(act, subact) is None


def is_large_oracle(
    act: RightAct,
    subact: Subact,
    congruences: list[RightCongruence] | None = None,
    *,
    bounds: Bounds | None = None,
) -> bool:
    """Même question, quantifiée sur toutes les congruences (définition)."""
    congs = congruences if congruences is not None else all_right_congruences(act, bounds=bounds)
    return all(rho.is_diagonal() or rho.merges_within(subact.elements) for rho in congs)


def _uniformity_candidates(act: RightAct) -> Iterator[Subact]:
    """Sous-actes minimaux à tester : tout sous-acte non nul en contient un."""
    zeros = zero_elements(act)
    zero_set = set(zeros)
    for x in act.carrier:
        if x not in zero_set:
            yield generated_subact(act, x)
    for a, b in itertools.combinations(zeros, 2):
        yield Subact(frozenset((a, b)))


def act_uniformity_witness(act: RightAct) -> UniformityFailure | None:
    for candidate in _uniformity_candidates(act):
        blind = _blind_pair(act, candidate)
        if blind is not None:
            pair, rho = blind
            log.debug("Subact %s is not large (witness pair %s)", candidate.sorted(), pair)
            return UniformityFailure(subact=candidate, pair=pair, congruence=rho)
    return None


def _require_nondegenerate(s: Semigroup) -> None:
    if s.order < 2:
        raise DegenerateOrderError("uniformity is only defined for semigroups with at least two elements")


def uniformity_witness(s: Semigroup) -> UniformityFailure | None:
    """None si S est uniforme à droite, sinon un sous-acte non large et sa congruence témoin."""
    _require_nondegenerate(s)
    return act_uniformity_witness(s_as_act(s))


def is_uniform(s: Semigroup) -> bool:
    return uniformity_witness(s) is None


def is_uniform_oracle(s: Semigroup, *, bounds: Bounds | None = None) -> bool:
    """Définition brute : tous les sous-actes (≥ 2 éléments) contre toutes les congruences."""
    _require_nondegenerate(s)
    act = s_as_act(s)
    congs = all_right_congruences(act, bounds=bounds)
    for subact in all_subacts(act, bounds=bounds):
        if len(subact) < 2:
            continue
        if not is_large_oracle(act, subact, congs):
            return False
    return True


def is_left_uniform(s: Semigroup) -> bool:
    return is_uniform(opposite(s))


# -----------------------------------------------------------------------------
# Irreducibility
# -----------------------------------------------------------------------------


def monolith(s: Semigroup) -> RightCongruence | None:
    """Intersection des congruences à droite non diagonales, si elle n'est pas Δ."""
    _require_nondegenerate(s)
    act = s_as_act(s)
    meet: RightCongruence | None = None
    for rho in principal_congruences(act).values():
        meet = rho if meet is None else meet.meet(rho)
        if meet.is_diagonal():
            return None
    return meet


def is_right_irreducible(s: Semigroup) -> bool:
    return monolith(s) is not None


def is_right_irreducible_oracle(s: Semigroup, *, bounds: Bounds | None = None) -> bool:
    """Δ est-il inf-irréductible dans le treillis de toutes les congruences à droite ?"""
    _require_nondegenerate(s)
    meet: RightCongruence | None = None
    for rho in all_right_congruences(s_as_act(s), bounds=bounds):
        if not rho.is_diagonal():
            meet = rho if meet is None else meet.meet(rho)
    return meet is not None and not meet.is_diagonal()
