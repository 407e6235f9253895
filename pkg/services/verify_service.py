"""Services (métier) de vérification par modèles finis.

Objectifs :
- Associer à chaque énoncé (C1..C20) une vérification exécutable sur le recensement
  et sur les balayages de familles.
- Produire un VerificationReport : instances examinées, contre-exemples avec témoin,
  écarts documentés (énoncés littéralement faux mais dont la conséquence vaut).

Une hypothèse est un filtre du recensement ; la conclusion est testée telle quelle.
`negate=True` inverse la conclusion (auto-test du harnais).
"""

from __future__ import annotations

import itertools
import logging
import time
from collections import Counter
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from tqdm import tqdm

from services import cayley_service as cayley
from services import families_service as families
from services.acts_service import is_right_irreducible, is_right_irreducible_oracle, is_uniform
from services.cayley_service import Semigroup, Table
from services.census_service import CensusRecord, census_records, check_census_order
from services.classify_service import (
    IdempotentShape,
    RegularUniformTag,
    StructuralProfile,
    chain_uniform_criterion,
    classify_regular_uniform,
    idempotent_structure,
    is_left_subelementary,
    structural_profile,
)
from services.errors import AssociativityError, ClassificationGap, RangeError
from services.families_service import FamilyKind, FamilySpec
from utils.config import Bounds, load_bounds

log = logging.getLogger("semiuniform.verify")

# Groupes utilisés par les vérifications de familles.
FAMILY_GROUP_ORDER = 4


@dataclass(frozen=True)
class Finding:
    table: Table | None
    detail: str

    def to_dict(self) -> dict:
        return {
            "table": None if self.table is None else [list(r) for r in self.table],
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    check_id: str
    title: str
    statement: str
    max_order: int
    instances_scanned: int = 0
    counterexamples: list[Finding] = field(default_factory=list)
    discrepancies: list[Finding] = field(default_factory=list)
    tallies: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0
    negated: bool = False

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "title": self.title,
            "statement": self.statement,
            "max_order": self.max_order,
            "negated": self.negated,
            "instances_scanned": self.instances_scanned,
            "passed": self.passed,
            "counterexamples": [f.to_dict() for f in self.counterexamples],
            "discrepancies": [f.to_dict() for f in self.discrepancies],
            "tallies": dict(sorted(self.tallies.items())),
            "elapsed": round(self.elapsed, 3),
        }


# -----------------------------------------------------------------------------
# Harness
# -----------------------------------------------------------------------------

class _Context:
    def __init__(self, report: VerificationReport, records: list[CensusRecord], *, progress: bool) -> None:
        self.report = report
        self.records = records
        self.progress = progress
        self._tallies: Counter[str] = Counter()

    def census(self, hypothesis: Callable[[CensusRecord], bool]) -> Iterable[CensusRecord]:
        it = tqdm(
            self.records,
            desc=self.report.check_id,
            disable=not self.progress,
            leave=False,
        )
        return (r for r in it if hypothesis(r))

    def expect(self, table: Table | None, ok: bool, detail: str) -> None:
        if self.report.negated:
            ok = not ok
        self.report.instances_scanned += 1
        if not ok:
            self.report.counterexamples.append(Finding(table, detail))

    def discrepancy(self, table: Table | None, detail: str) -> None:
        self.report.discrepancies.append(Finding(table, detail))

    def tally(self, key: str) -> None:
        self._tallies[key] += 1

    def close(self) -> None:
        self.report.tallies = dict(self._tallies)


@dataclass(frozen=True)
class _Check:
    check_id: str
    title: str
    statement: str
    run: Callable[[_Context], None]


def _uniform(r: CensusRecord) -> bool:
    return bool(r.uniform)


def _two_element_left_zero(s: Semigroup, profile: StructuralProfile) -> bool:
    return s.order == 2 and profile.left_zero_sg


# -----------------------------------------------------------------------------
# Census checks
# -----------------------------------------------------------------------------

def _check_zero_bound(ctx: _Context) -> None:
    for r in ctx.census(_uniform):
        lz = cayley.left_zeros(r.semigroup)
        ctx.expect(r.table, len(lz) <= 2, f"left zeros {lz}")


def _check_left_identity_or_left_zero(ctx: _Context) -> None:
    for r in ctx.census(_uniform):
        s = r.semigroup
        bad = next(
            (
                (x, y)
                for x in s.elements
                for y in s.elements
                if s.table[x][y] == y and not cayley.is_left_identity(s, x) and not cayley.is_left_zero(s, y)
            ),
            None,
        )
        ctx.expect(r.table, bad is None, f"xy = y with x={bad[0]}, y={bad[1]}" if bad else "")


def _check_chain_criterion(ctx: _Context) -> None:
    for r in ctx.census(lambda r: r.profile.commutative and r.profile.chain):
        criterion = chain_uniform_criterion(r.semigroup, profile=r.profile)
        ctx.expect(r.table, criterion == r.uniform, f"criterion={criterion}, uniform={r.uniform}")


def _check_down_transfer(ctx: _Context) -> None:
    for r in ctx.census(lambda r: True):
        s = r.semigroup
        if not r.profile.has_identity and is_uniform(cayley.adjoin_identity(s)):
            ctx.expect(r.table, _uniform(r), "S¹ uniform but S is not")
        if not r.profile.has_zero and is_uniform(cayley.adjoin_zero(s)):
            ctx.expect(r.table, _uniform(r), "S⁰ uniform but S is not")


def _check_identity_transfer(ctx: _Context) -> None:
    for r in ctx.census(lambda r: not r.profile.has_identity):
        lifted = is_uniform(cayley.adjoin_identity(r.semigroup))
        expected = _uniform(r) and not r.profile.has_left_identity
        ctx.expect(r.table, lifted == expected, f"S¹ uniform={lifted}, S uniform={r.uniform}, "
                                                f"left identities={r.profile.left_identity_count}")


def _check_zero_transfer(ctx: _Context) -> None:
    for r in ctx.census(lambda r: not r.profile.has_zero):
        lifted = is_uniform(cayley.adjoin_zero(r.semigroup))
        expected = _uniform(r) and r.profile.left_zero_count == 0
        ctx.expect(r.table, lifted == expected, f"S⁰ uniform={lifted}, S uniform={r.uniform}, "
                                                f"left zeros={r.profile.left_zero_count}")


def _check_idempotents(ctx: _Context) -> None:
    for r in ctx.census(_uniform):
        st = idempotent_structure(r.semigroup)
        ctx.tally(str(st.shape))
        ok = st.shape is not IdempotentShape.OTHER and r.profile.e_semigroup
        ctx.expect(r.table, ok, f"E(S)={list(st.elements)} shape={st.shape}")


def _check_left_simple(ctx: _Context) -> None:
    for r in ctx.census(lambda r: _uniform(r) and r.profile.left_simple):
        ok = _two_element_left_zero(r.semigroup, r.profile) or r.profile.group
        ctx.expect(r.table, ok, "left simple uniform, neither a group nor a two-element left zero semigroup")


def _check_left_0_simple(ctx: _Context) -> None:
    for r in ctx.census(lambda r: _uniform(r) and r.profile.left_0_simple):
        ctx.expect(r.table, r.profile.zero_group, "left 0-simple uniform but not a 0-group")


def _check_finite_trichotomy(ctx: _Context) -> None:
    for r in ctx.census(_uniform):
        p = r.profile
        sub = is_left_subelementary(r.semigroup)
        if p.right_group:
            ctx.tally("right group")
        elif p.left_nil:
            ctx.tally("left nil")
        elif sub is not None:
            ctx.tally("left subelementary")
        ok = p.right_group or p.left_nil or sub is not None
        ctx.expect(r.table, ok, "neither right group, left nil nor left subelementary")


def _check_regular_without_left_identity(ctx: _Context) -> None:
    def hyp(r: CensusRecord) -> bool:
        return _uniform(r) and r.profile.regular and not r.profile.has_left_identity

    for r in ctx.census(hyp):
        ctx.expect(r.table, _two_element_left_zero(r.semigroup, r.profile), "regular uniform without left identity")


def _check_regular_with_left_identity(ctx: _Context) -> None:
    def hyp(r: CensusRecord) -> bool:
        p = r.profile
        return _uniform(r) and p.regular and p.has_left_identity and not p.has_identity

    allowed = {RegularUniformTag.RIGHT_GROUP, RegularUniformTag.RIGHT_ZERO_GROUP}
    for r in ctx.census(hyp):
        ctx.expect(r.table, r.tag in allowed, f"tag {r.tag}")


def _check_irreducible(ctx: _Context) -> None:
    for r in ctx.census(_uniform):
        irreducible = is_right_irreducible(r.semigroup)
        lattice = is_right_irreducible_oracle(r.semigroup)
        ctx.tally("irreducible" if irreducible else "not irreducible")
        ctx.expect(r.table, irreducible == lattice,
                   f"principal meet says irreducible={irreducible}, full lattice says {lattice}")
        if not irreducible:
            ctx.discrepancy(r.table, "uniform but Δ is meet-reducible: uniform does not imply right irreducible")


def _check_regular_dichotomy(ctx: _Context) -> None:
    for r in ctx.census(lambda r: _uniform(r) and r.profile.regular):
        ok = _two_element_left_zero(r.semigroup, r.profile) or r.profile.has_left_identity
        ctx.expect(r.table, ok, "regular uniform without left identity")


def _check_right_simple(ctx: _Context) -> None:
    for r in ctx.census(lambda r: r.profile.right_simple):
        ctx.expect(r.table, _uniform(r), "right simple but not uniform")


def _check_left_identities(ctx: _Context) -> None:
    for r in ctx.census(lambda r: r.profile.has_left_identity):
        s = r.semigroup
        li = cayley.left_identities(s)
        ok = cayley.is_closed(s, li) and all(s.table[a][b] == b for a in li for b in li)
        ctx.expect(r.table, ok, f"left identities {li}")


# -----------------------------------------------------------------------------
# Classification and families
# -----------------------------------------------------------------------------

def _family_groups() -> list[tuple[str, Semigroup]]:
    return [
        (name, families.group_by_name(name))
        for n in range(1, FAMILY_GROUP_ORDER + 1)
        for name in families.builtin_group_names(n)
    ]


def _expect_structure(ctx: _Context, label: str, s: Semigroup, expected: RegularUniformTag) -> None:
    if s.order < 2:
        return
    p = structural_profile(s)
    uniform = is_uniform(s)
    try:
        tag = classify_regular_uniform(s, profile=p, uniform=uniform).tag
    except ClassificationGap:
        tag = None
    ok = p.regular and uniform and tag is expected
    ctx.expect(s.table, ok, f"{label}: regular={p.regular}, uniform={uniform}, tag={tag}, expected {expected}")


def _strict_case_ii(ctx: _Context, name: str, group: Semigroup) -> Semigroup | None:
    spec = FamilySpec(kind=FamilyKind.GROUP_TWO_LEFT_ZEROS, group=group, strict_paper=True)
    try:
        return families.construct(spec)
    except AssociativityError as exc:
        ctx.discrepancy(
            None,
            f"G={name}: the rule g·θᵢ = θⱼ for every g ≠ 1 does not define a semigroup ({exc})",
        )
        return None


def _check_main_classification(ctx: _Context) -> None:
    for r in ctx.census(lambda r: _uniform(r) and r.profile.regular):
        try:
            cls = classify_regular_uniform(r.semigroup, profile=r.profile, uniform=True)
        except ClassificationGap as exc:
            ctx.expect(r.table, False, str(exc))
            continue
        ctx.tally(str(cls.tag))
        ctx.expect(r.table, cls.applicable, f"tag {cls.tag}")

    # converse : chaque structure construite est régulière et uniforme
    tags = RegularUniformTag
    _expect_structure(ctx, "left_zero(2)", cayley.left_zero_semigroup(2), tags.TWO_ELEMENT_LEFT_ZERO)
    for name, g in _family_groups():
        _expect_structure(ctx, name, g, tags.GROUP)
        _expect_structure(ctx, f"{name}⁰", cayley.adjoin_zero(g), tags.ZERO_GROUP)
        for k in (2, 3):
            rg = families.construct(FamilySpec(kind=FamilyKind.RIGHT_GROUP_PRODUCT, group=g, size=k))
            _expect_structure(ctx, f"{name}×R{k}", rg, tags.RIGHT_GROUP)
            _expect_structure(ctx, f"({name}×R{k})⁰", cayley.adjoin_zero(rg), tags.RIGHT_ZERO_GROUP)
        case_ii = _strict_case_ii(ctx, name, g)
        if case_ii is not None:
            _expect_structure(ctx, f"{name}⊔{{θ₁,θ₂}}", case_ii, tags.GROUP_WITH_TWO_LEFT_ZEROS)


def _check_rees_sweeps(ctx: _Context) -> None:
    for with_zero in (False, True):
        for spec, s in families.rees_sweep(max_group_order=3, max_index=2, with_zero=with_zero):
            if s.order < 2:
                continue
            p = structural_profile(s)
            uniform = is_uniform(s)
            g = spec.group.order
            if with_zero:
                expected = spec.index_i == 1
                ok = p.completely_zero_simple and uniform == expected and uniform == p.right_zero_group
            else:
                expected = spec.index_i == 1 or (spec.index_i == 2 and spec.index_lambda == 1 and g == 1)
                structural = _two_element_left_zero(s, p) or p.right_group
                ok = p.completely_simple and uniform == expected and uniform == structural
            ctx.tally(f"{spec.kind} uniform" if uniform else f"{spec.kind} not uniform")
            ctx.expect(s.table, ok, f"{spec.describe()}: uniform={uniform}, expected {expected}")


def _check_case_ii_action(ctx: _Context) -> None:
    def hyp(r: CensusRecord) -> bool:
        return _uniform(r) and r.tag is RegularUniformTag.GROUP_WITH_TWO_LEFT_ZEROS

    for r in ctx.census(hyp):
        cls = classify_regular_uniform(r.semigroup, profile=r.profile, uniform=True)
        action = cls.action
        ctx.tally("swap rule" if action.swap_rule else "other action")
        ctx.expect(r.table, action.faithful, f"action swapping={list(action.swapping)} is not faithful")

    for name, g in _family_groups():
        _strict_case_ii(ctx, name, g)
        e = cayley.identity(g)
        for sigma in itertools.product((False, True), repeat=g.order):
            if sigma[e]:
                continue
            homomorphism = all(
                sigma[g.table[x][y]] == (sigma[x] != sigma[y]) for x in g.elements for y in g.elements
            )
            if not homomorphism:
                continue
            spec = FamilySpec(kind=FamilyKind.GROUP_TWO_LEFT_ZEROS, group=g, sigma=sigma, strict_paper=False)
            s = families.construct(spec)
            faithful = sum(sigma) == g.order - 1
            uniform = is_uniform(s)
            ctx.tally("faithful" if faithful else "not faithful")
            ctx.expect(s.table, uniform == faithful, f"G={name} sigma={list(sigma)}: uniform={uniform}")


# -----------------------------------------------------------------------------
# Table of characterisations
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class _Row:
    name: str
    hypothesis: Callable[[CensusRecord], bool]
    derived: Callable[[CensusRecord], bool]
    printed: Callable[[CensusRecord], bool]


def _tags(*tags: RegularUniformTag) -> Callable[[CensusRecord], bool]:
    return lambda r: r.tag in tags


def _two_lz(r: CensusRecord) -> bool:
    return _two_element_left_zero(r.semigroup, r.profile)


def _semilattice_01(r: CensusRecord) -> bool:
    p = r.profile
    return r.order == 2 and p.commutative and p.has_identity and p.has_zero


def _noetherian_trichotomy(r: CensusRecord) -> bool:
    p = r.profile
    return p.left_cancellative or p.left_nil or is_left_subelementary(r.semigroup) is not None


def _finite_trichotomy(r: CensusRecord) -> bool:
    p = r.profile
    return p.right_group or p.left_nil or is_left_subelementary(r.semigroup) is not None


def _applicable(r: CensusRecord) -> bool:
    return r.tag is not RegularUniformTag.NOT_APPLICABLE


def _rows() -> list[_Row]:
    T = RegularUniformTag
    return [
        _Row("regular / orthodox / completely regular",
             lambda r: r.profile.regular or r.profile.orthodox or r.profile.completely_regular,
             _applicable, _applicable),
        _Row("right inverse", lambda r: r.profile.right_inverse,
             _tags(T.GROUP, T.ZERO_GROUP, T.RIGHT_GROUP, T.RIGHT_ZERO_GROUP),
             _tags(T.GROUP, T.ZERO_GROUP, T.RIGHT_GROUP, T.RIGHT_ZERO_GROUP)),
        _Row("left inverse", lambda r: r.profile.left_inverse,
             _tags(T.GROUP, T.ZERO_GROUP, T.GROUP_WITH_TWO_LEFT_ZEROS, T.TWO_ELEMENT_LEFT_ZERO),
             _tags(T.GROUP, T.ZERO_GROUP, T.GROUP_WITH_TWO_LEFT_ZEROS)),
        _Row("inverse", lambda r: r.profile.inverse, _tags(T.GROUP, T.ZERO_GROUP), _tags(T.GROUP, T.ZERO_GROUP)),
        _Row("Clifford", lambda r: r.profile.clifford, _tags(T.GROUP, T.ZERO_GROUP), _tags(T.GROUP, T.ZERO_GROUP)),
        _Row("completely simple", lambda r: r.profile.completely_simple,
             lambda r: _two_lz(r) or r.profile.right_group, lambda r: _two_lz(r) or r.profile.right_group),
        _Row("completely 0-simple", lambda r: r.profile.completely_zero_simple,
             lambda r: r.profile.right_zero_group, lambda r: r.profile.right_zero_group),
        _Row("band", lambda r: r.profile.band,
             lambda r: _semilattice_01(r) or r.profile.right_zero_sg or _two_lz(r)
             or (r.profile.right_zero_group and r.profile.band)
             or (r.tag is T.GROUP_WITH_TWO_LEFT_ZEROS and r.order == 3),
             lambda r: _semilattice_01(r) or r.profile.right_zero_sg or _two_lz(r)),
        _Row("left simple", lambda r: r.profile.left_simple,
             lambda r: _two_lz(r) or r.profile.group, lambda r: _two_lz(r) or r.profile.group),
        _Row("left 0-simple", lambda r: r.profile.left_0_simple,
             lambda r: r.profile.zero_group, lambda r: r.profile.zero_group),
        _Row("strongly right noetherian", lambda r: True, _noetherian_trichotomy, _noetherian_trichotomy),
        _Row("finite", lambda r: True, _finite_trichotomy, _finite_trichotomy),
    ]


def _check_characterisations(ctx: _Context) -> None:
    rows = _rows()
    for r in ctx.census(_uniform):
        for row in rows:
            if not row.hypothesis(r):
                continue
            ok = row.derived(r)
            ctx.tally(row.name)
            ctx.expect(r.table, ok, f"{row.name}: structure not matched (tag {r.tag})")
            if ok and not row.printed(r):
                ctx.discrepancy(r.table, f"{row.name}: uniform instance missing from the printed row (tag {r.tag})")


# -----------------------------------------------------------------------------
# Registry
# -----------------------------------------------------------------------------

CHECKS: dict[str, _Check] = {
    c.check_id: c
    for c in (
        _Check("C1", "zero bound", "a uniform semigroup has at most two left zeros", _check_zero_bound),
        _Check("C2", "xy = y", "in a uniform semigroup xy = y forces x to be a left identity or y a left zero",
               _check_left_identity_or_left_zero),
        _Check("C3", "chain criterion", "a commutative chain semigroup is uniform iff xy = y forces "
               "x to be the identity or y the zero", _check_chain_criterion),
        _Check("C4", "down transfer", "if S¹ or S⁰ is uniform then S is uniform", _check_down_transfer),
        _Check("C5", "identity transfer", "S¹ is uniform iff S is uniform and has no left identity",
               _check_identity_transfer),
        _Check("C6", "zero transfer", "S⁰ is uniform iff S is uniform and has no left zero", _check_zero_transfer),
        _Check("C7", "idempotents", "E(S) of a uniform semigroup is L, L¹, R or R⁰ (L two-element left zero, "
               "R right zero); S is an E-semigroup", _check_idempotents),
        _Check("C8", "left simple", "a left simple uniform semigroup has two elements or is a group",
               _check_left_simple),
        _Check("C9", "left 0-simple", "a left 0-simple uniform semigroup is a 0-group", _check_left_0_simple),
        _Check("C10", "finite trichotomy", "a finite uniform semigroup is a right group, left nil or "
               "left subelementary", _check_finite_trichotomy),
        _Check("C11", "regular without left identity", "a regular uniform semigroup without left identity "
               "is {θ₁, θ₂}", _check_regular_without_left_identity),
        _Check("C12", "regular with left identity", "a regular uniform semigroup with a left identity but no "
               "identity is a right group or a right 0-group", _check_regular_with_left_identity),
        _Check("C13", "main classification", "a regular uniform semigroup is G or G⁰ (G a group), G ⊔ {θ₁, θ₂}, "
               "{θ₁, θ₂}, or G or G⁰ (G a right group); each structure is regular and uniform",
               _check_main_classification),
        _Check("C14", "completely (0-)simple", "M⁰[G;I,Λ;P] is uniform iff |I| = 1; M[G;I,Λ;P] is uniform iff "
               "|I| = 1 or |I| = 2, |Λ| = 1 and G trivial", _check_rees_sweeps),
        _Check("C15", "characterisation table", "row-by-row structure of uniform semigroups in classical classes",
               _check_characterisations),
        _Check("C16", "irreducibility", "right irreducibility of a uniform semigroup is decided by the meet of its "
               "principal right congruences; uniform instances that are not irreducible are reported",
               _check_irreducible),
        _Check("C17", "regular dichotomy", "a regular uniform semigroup is a two-element left zero semigroup "
               "or has a left identity", _check_regular_dichotomy),
        _Check("C18", "right simple", "every right simple semigroup is uniform", _check_right_simple),
        _Check("C19", "left identities", "the left identities form an empty set or a right zero subsemigroup",
               _check_left_identities),
        _Check("C20", "two left zeros action", "in G ⊔ {θ₁, θ₂} the action of G on {θ₁, θ₂} is faithful, "
               "so |G| ≤ 2", _check_case_ii_action),
    )
}


def _validate_max_order(max_order: int, *, allow_extended: bool, bounds: Bounds) -> None:
    if max_order < 1:
        raise RangeError(f"max order must be positive, got {max_order}")
    if max_order >= 2:
        check_census_order(max_order, allow_extended=allow_extended, bounds=bounds)


def run_check(
    check_id: str,
    max_order: int,
    *,
    negate: bool = False,
    allow_extended: bool = False,
    progress: bool = False,
    bounds: Bounds | None = None,
) -> VerificationReport:
    key = check_id.strip().upper()
    if key not in CHECKS:
        raise RangeError(f"unknown check {check_id!r}; known: {', '.join(CHECKS)}")
    b = bounds or load_bounds()
    _validate_max_order(max_order, allow_extended=allow_extended, bounds=b)
    check = CHECKS[key]

    log.info("Check %s (%s) started, max order %s", check.check_id, check.title, max_order)
    started = time.perf_counter()
    records = (
        census_records(max_order, allow_extended=allow_extended, bounds=bounds) if max_order >= 2 else []
    )
    report = VerificationReport(
        check_id=check.check_id,
        title=check.title,
        statement=check.statement,
        max_order=max_order,
        negated=negate,
    )
    ctx = _Context(report, records, progress=progress)
    check.run(ctx)
    ctx.close()
    report.elapsed = time.perf_counter() - started

    if report.passed:
        log.info("Check %s passed: %s instances in %.2fs", check.check_id, report.instances_scanned, report.elapsed)
    else:
        log.warning(
            "Check %s FAILED: %s counterexamples out of %s instances",
            check.check_id, len(report.counterexamples), report.instances_scanned,
        )
    return report


def run_all(
    max_order: int,
    *,
    allow_extended: bool = False,
    progress: bool = False,
    bounds: Bounds | None = None,
) -> list[VerificationReport]:
    return [
        run_check(check_id, max_order, allow_extended=allow_extended, progress=progress, bounds=bounds)
        for check_id in CHECKS
    ]
