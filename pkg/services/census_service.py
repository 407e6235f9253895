"""Services (métier) du recensement des demi-groupes d'ordre fixé.

Objectifs :
- Énumérer toutes les tables associatives n×n (retour arrière, vérification
  incrémentale des triplets complets), dédoublonner par forme canonique.
- Mettre en cache le résultat par ordre (format texte `n;t00,t01,...`), revalidé au chargement.
- Produire des CensusRecord (profil, uniformité, étiquette) et les filtrer par drapeaux.

La sortie est déterministe : triée par forme canonique, indépendante du nombre de workers.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path

from tqdm import tqdm

from services import cayley_service as cayley
from services.acts_service import is_uniform
from services.cayley_service import Semigroup, Table
from services.classify_service import (
    RegularUniformTag,
    StructuralProfile,
    classify_regular_uniform,
    structural_profile,
)
from services.errors import AssociativityError, BoundExceeded, CensusCacheError, RangeError
from utils.config import Bounds, load_bounds

log = logging.getLogger("semiuniform.census")

# Demi-groupes à isomorphisme près (non à anti-isomorphisme près).
PUBLISHED_COUNTS: dict[int, int] = {1: 1, 2: 5, 3: 24, 4: 188, 5: 1915, 6: 28634}


@dataclass(frozen=True)
class CensusRecord:
    order: int
    table: Table
    profile: StructuralProfile
    uniform: bool | None            # None pour le singleton
    tag: RegularUniformTag

    @cached_property
    def semigroup(self) -> Semigroup:
        return Semigroup(order=self.order, table=self.table)

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def flag(self, name: str) -> bool:
        if name == "uniform":
            return bool(self.uniform)
        value = getattr(self.profile, name)
        return bool(value)


# -----------------------------------------------------------------------------
# Bounds
# -----------------------------------------------------------------------------

def check_census_order(n: int, *, allow_extended: bool = False, bounds: Bounds | None = None) -> None:
    b = bounds or load_bounds()
    if n < 1:
        raise RangeError(f"census order must be positive, got {n}")
    if n <= b.census_order:
        return
    if allow_extended and n <= b.census_extended_order:
        log.warning("Census of order %s requested: this can take a very long time", n)
        return
    limit = b.census_extended_order if allow_extended else b.census_order
    raise BoundExceeded("census order", n, limit)


# -----------------------------------------------------------------------------
# Backtracking
# -----------------------------------------------------------------------------

def _consistent(t: list[int], n: int, i: int, j: int) -> bool:
    """Vérifie les triplets complets qui utilisent la case (i, j) qui vient d'être remplie."""
    v = t[i * n + j]
    # (i j) c == i (j c)
    for c in range(n):
        vc = t[v * n + c]
        jc = t[j * n + c]
        if vc < 0 or jc < 0:
            continue
        r = t[i * n + jc]
        if r >= 0 and r != vc:
            return False
    # (a i) j == a (i j)
    for a in range(n):
        ai = t[a * n + i]
        av = t[a * n + v]
        if ai < 0 or av < 0:
            continue
        left = t[ai * n + j]
        if left >= 0 and left != av:
            return False
    # (a b) j with ab = i
    for a in range(n):
        for b in range(n):
            if t[a * n + b] != i:
                continue
            bj = t[b * n + j]
            if bj < 0:
                continue
            r = t[a * n + bj]
            if r >= 0 and r != v:
                return False
    # i (b c) with bc = j
    for b in range(n):
        ib = t[i * n + b]
        if ib < 0:
            continue
        for c in range(n):
            if t[b * n + c] != j:
                continue
            left = t[ib * n + c]
            if left >= 0 and left != v:
                return False
    return True


def _labeled_tables(n: int, first: int) -> Iterator[tuple[int, ...]]:
    """Toutes les tables associatives (étiquetées) avec table[0][0] = first."""
    size = n * n
    t = [-1] * size
    t[0] = first
    if not _consistent(t, n, 0, 0):
        return

    def fill(k: int) -> Iterator[tuple[int, ...]]:
        if k == size:
            yield tuple(t)
            return
        i, j = divmod(k, n)
        for v in range(n):
            t[k] = v
            if _consistent(t, n, i, j):
                yield from fill(k + 1)
        t[k] = -1

    yield from fill(1)


def _canonical_branch(n: int, first: int, bounds: Bounds) -> set[tuple[int, ...]]:
    found: set[tuple[int, ...]] = set()
    for flat in _labeled_tables(n, first):
        s = Semigroup(order=n, table=tuple(flat[r * n:(r + 1) * n] for r in range(n)))
        found.add(cayley.canonical_form(s, bounds=bounds))
    return found


def _from_canonical(n: int, flat: Sequence[int]) -> Semigroup:
    return Semigroup(order=n, table=tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n)))


def _enumerate(n: int, *, workers: int, bounds: Bounds, progress: bool) -> list[Semigroup]:
    log.info("Census of order %s started (workers=%s)", n, workers)
    found: set[tuple[int, ...]] = set()
    branches = range(n)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_canonical_branch, n, first, bounds) for first in branches]
            for fut in tqdm(futures, desc=f"order {n}", disable=not progress, leave=False):
                found |= fut.result()
    else:
        for first in tqdm(branches, desc=f"order {n}", disable=not progress, leave=False):
            found |= _canonical_branch(n, first, bounds)
    result = [_from_canonical(n, flat) for flat in sorted(found)]
    log.info("Census of order %s finished: %s semigroups", n, len(result))
    expected = PUBLISHED_COUNTS.get(n)
    if expected is not None and expected != len(result):
        log.error("Census of order %s found %s semigroups, published count is %s", n, len(result), expected)
    return result


# -----------------------------------------------------------------------------
# Cache
# -----------------------------------------------------------------------------

def cache_path(cache_dir: Path, n: int) -> Path:
    return Path(cache_dir) / f"semigroups_order_{n}.txt"


def _format_line(s: Semigroup) -> str:
    return f"{s.order};" + ",".join(str(v) for v in s.flat())


def write_cache(path: Path, semigroups: Iterable[Semigroup]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = sorted(_format_line(s) for s in semigroups)
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    log.info("Census cache written: %s (%s records)", path, len(lines))


def read_cache(path: Path, n: int, *, bounds: Bounds | None = None) -> list[Semigroup]:
    """Relit et revalide un cache : ordre, associativité, forme canonique, unicité, effectif."""
    b = bounds or load_bounds()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CensusCacheError(f"cannot read census cache {path}: {exc}") from exc

    seen: set[tuple[int, ...]] = set()
    result: list[Semigroup] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        head, _, body = line.partition(";")
        try:
            order = int(head)
            flat = tuple(int(v) for v in body.split(","))
        except ValueError as exc:
            raise CensusCacheError(f"{path}:{lineno}: malformed record") from exc
        if order != n:
            raise CensusCacheError(f"{path}:{lineno}: order {order}, expected {n}")
        try:
            s = cayley.from_flat(n, flat)
        except (RangeError, AssociativityError) as exc:
            raise CensusCacheError(f"{path}:{lineno}: {exc}") from exc
        if cayley.canonical_form(s, bounds=b) != flat:
            raise CensusCacheError(f"{path}:{lineno}: table is not in canonical form")
        if flat in seen:
            raise CensusCacheError(f"{path}:{lineno}: duplicate table")
        seen.add(flat)
        result.append(s)

    expected = PUBLISHED_COUNTS.get(n)
    if expected is not None and len(result) != expected:
        raise CensusCacheError(f"{path}: {len(result)} records, expected {expected}")
    result.sort(key=lambda s: s.flat())
    return result


# -----------------------------------------------------------------------------
# Public API
# -----------------------------------------------------------------------------

def census(
    n: int,
    *,
    workers: int = 1,
    cache_dir: Path | None = None,
    allow_extended: bool = False,
    progress: bool = False,
    bounds: Bounds | None = None,
) -> list[Semigroup]:
    """Demi-groupes d'ordre n à isomorphisme près, en forme canonique, triés."""
    b = bounds or load_bounds()
    check_census_order(n, allow_extended=allow_extended, bounds=b)
    if cache_dir is not None:
        path = cache_path(cache_dir, n)
        if path.exists():
            try:
                cached = read_cache(path, n, bounds=b)
                log.info("Census of order %s loaded from %s", n, path)
                return cached
            except CensusCacheError as exc:
                log.warning("Discarding census cache: %s", exc)
    result = _enumerate(n, workers=max(1, workers), bounds=b, progress=progress)
    if cache_dir is not None:
        write_cache(cache_path(cache_dir, n), result)
    return result


def enumerate_semigroups(
    n: int,
    *,
    workers: int = 1,
    allow_extended: bool = False,
    bounds: Bounds | None = None,
) -> Iterator[Semigroup]:
    yield from census(n, workers=workers, allow_extended=allow_extended, bounds=bounds)


def make_record(s: Semigroup) -> CensusRecord:
    profile = structural_profile(s)
    if s.order == 1:
        return CensusRecord(s.order, s.table, profile, None, RegularUniformTag.NOT_APPLICABLE)
    uniform = is_uniform(s)
    cls = classify_regular_uniform(s, profile=profile, uniform=uniform)
    return CensusRecord(s.order, s.table, profile, uniform, cls.tag)


@lru_cache(maxsize=None)
def _records_for_order(
    n: int, cache_dir: Path | None, allow_extended: bool, bounds: Bounds | None
) -> tuple[CensusRecord, ...]:
    found = census(n, cache_dir=cache_dir, allow_extended=allow_extended, bounds=bounds)
    return tuple(make_record(s) for s in found)


def records_for_order(
    n: int,
    *,
    cache_dir: Path | None = None,
    allow_extended: bool = False,
    bounds: Bounds | None = None,
) -> tuple[CensusRecord, ...]:
    path = Path(cache_dir) if cache_dir is not None else None
    return _records_for_order(n, path, allow_extended, bounds)


def census_records(
    max_order: int,
    *,
    cache_dir: Path | None = None,
    allow_extended: bool = False,
    bounds: Bounds | None = None,
) -> list[CensusRecord]:
    """Records des ordres 2..max_order (le singleton est exclu)."""
    records: list[CensusRecord] = []
    for n in range(2, max_order + 1):
        records.extend(records_for_order(n, cache_dir=cache_dir, allow_extended=allow_extended, bounds=bounds))
    return records


def parse_predicates(names: Iterable[str]) -> list[tuple[str, bool]]:
    """`band`, `!band` ou `not_band` ; `uniform` en plus des drapeaux du profil."""
    known = set(StructuralProfile.flag_names()) | {"uniform"}
    parsed: list[tuple[str, bool]] = []
    for raw in names:
        name = raw.strip()
        expected = True
        if name.startswith("!"):
            name, expected = name[1:], False
        elif name.startswith("not_"):
            name, expected = name[4:], False
        if name not in known:
            raise RangeError(f"unknown flag {raw!r}; known: {', '.join(sorted(known))}")
        parsed.append((name, expected))
    return parsed


def census_filter(
    n: int,
    predicates: Iterable[str] = (),
    *,
    cache_dir: Path | None = None,
    allow_extended: bool = False,
) -> list[CensusRecord]:
    wanted = parse_predicates(predicates)
    check_census_order(n, allow_extended=allow_extended)
    return [
        r
        for r in records_for_order(n, cache_dir=cache_dir, allow_extended=allow_extended)
        if all(r.flag(name) == expected for name, expected in wanted)
    ]
