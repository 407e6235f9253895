"""Services (métier) liés aux rapports.

Objectifs :
- Construire l'AnalysisReport d'un demi-groupe (profil, zéros, E(S), uniformité,
  classification, témoin de non-uniformité).
- Sérialiser en JSON stable (schéma "v1", ordre de clés fixe) et relire.
- Rendre les rapports texte via les templates Jinja2 de `templates/`.

Ce module ne dépend pas de la CLI.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Final

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from services import cayley_service as cayley
from services.acts_service import (
    UniformityFailure,
    is_left_uniform,
    is_right_irreducible,
    s_as_act,
    uniformity_witness,
    zero_elements,
)
from services.cayley_service import Semigroup
from services.census_service import CensusRecord
from services.classify_service import (
    StructuralProfile,
    classify_regular_uniform,
    idempotent_structure,
    is_left_subelementary,
    structural_profile,
)
from services.verify_service import VerificationReport

SCHEMA_VERSION: Final[str] = "v1"

BASE_DIR: Final[Path] = Path(__file__).resolve().parent.parent
TEMPLATES_DIR: Final[Path] = BASE_DIR / "templates"

env: Final[Environment] = Environment(
    loader=FileSystemLoader(TEMPLATES_DIR),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
    undefined=StrictUndefined,
)


@dataclass(frozen=True)
class Witness:
    """Sous-acte non large et congruence principale qui le rencontre en Δ."""

    subact: tuple[int, ...]
    pair: tuple[int, int]
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_failure(cls, failure: UniformityFailure) -> Witness:
        return cls(
            subact=failure.subact.sorted(),
            pair=failure.pair,
            blocks=tuple(failure.congruence.blocks()),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "subact": list(self.subact),
            "pair": list(self.pair),
            "blocks": [list(b) for b in self.blocks],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Witness:
        a, b = d["pair"]
        return cls(
            subact=tuple(d["subact"]),
            pair=(a, b),
            blocks=tuple(tuple(block) for block in d["blocks"]),
        )


@dataclass(frozen=True)
class AnalysisReport:
    source: str
    order: int
    table: tuple[tuple[int, ...], ...]
    profile: StructuralProfile
    names: tuple[str, ...] | None = None
    zero_elements: tuple[int, ...] = ()
    left_identities: tuple[int, ...] = ()
    idempotents: tuple[int, ...] = ()
    idempotent_shape: str = ""
    left_subelementary: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    uniform: bool | None = None
    left_uniform: bool | None = None
    right_irreducible: bool | None = None
    classification: str | None = None
    group_elements: tuple[int, ...] = ()
    witness: Witness | None = None
    discrepancies: tuple[str, ...] = field(default_factory=tuple)

    def name(self, element: int) -> str:
        return self.names[element] if self.names else str(element)

    def names_of(self, elements: Iterable[int]) -> str:
        return "{" + ", ".join(self.name(x) for x in elements) + "}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "kind": "analysis",
            "source": self.source,
            "order": self.order,
            "names": list(self.names) if self.names else None,
            "table": [list(r) for r in self.table],
            "flags": self.profile.to_dict(),
            "zero_elements": list(self.zero_elements),
            "left_identities": list(self.left_identities),
            "idempotents": list(self.idempotents),
            "idempotent_shape": self.idempotent_shape,
            "left_subelementary": (
                None if self.left_subelementary is None
                else {"nil": list(self.left_subelementary[0]), "cancellable": list(self.left_subelementary[1])}
            ),
            "uniform": self.uniform,
            "left_uniform": self.left_uniform,
            "right_irreducible": self.right_irreducible,
            "classification": self.classification,
            "group_elements": list(self.group_elements),
            "witness": None if self.witness is None else self.witness.to_dict(),
            "discrepancies": list(self.discrepancies),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> AnalysisReport:
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        sub = d["left_subelementary"]
        return cls(
            source=d["source"],
            order=d["order"],
            table=tuple(tuple(r) for r in d["table"]),
            profile=StructuralProfile(**d["flags"]),
            names=tuple(d["names"]) if d["names"] else None,
            zero_elements=tuple(d["zero_elements"]),
            left_identities=tuple(d["left_identities"]),
            idempotents=tuple(d["idempotents"]),
            idempotent_shape=d["idempotent_shape"],
            left_subelementary=None if sub is None else (tuple(sub["nil"]), tuple(sub["cancellable"])),
            uniform=d["uniform"],
            left_uniform=d["left_uniform"],
            right_irreducible=d["right_irreducible"],
            classification=d["classification"],
            group_elements=tuple(d["group_elements"]),
            witness=None if d["witness"] is None else Witness.from_dict(d["witness"]),
            discrepancies=tuple(d["discrepancies"]),
        )


# -----------------------------------------------------------------------------
# Analysis
# -----------------------------------------------------------------------------

def analyze(s: Semigroup, *, source: str = "<input>", names: Sequence[str] | None = None) -> AnalysisReport:
    """Rapport complet. Pour le singleton, les champs d'uniformité restent à None."""
    profile = structural_profile(s)
    idem = idempotent_structure(s)
    sub = is_left_subelementary(s)
    common = dict(
        source=source,
        order=s.order,
        table=s.table,
        profile=profile,
        names=tuple(names) if names else None,
        zero_elements=tuple(zero_elements(s_as_act(s))),
        left_identities=tuple(cayley.left_identities(s)),
        idempotents=idem.elements,
        idempotent_shape=str(idem.shape),
        left_subelementary=None if sub is None else (sub.nil_part, sub.cancellable_part),
    )
    if s.order < 2:
        return AnalysisReport(**common)

    failure = uniformity_witness(s)
    uniform = failure is None
    cls = classify_regular_uniform(s, profile=profile, uniform=uniform)
    return AnalysisReport(
        **common,
        uniform=uniform,
        left_uniform=is_left_uniform(s),
        right_irreducible=is_right_irreducible(s),
        classification=str(cls.tag) if cls.applicable else None,
        group_elements=cls.group_elements,
        witness=None if failure is None else Witness.from_failure(failure),
        discrepancies=cls.notes,
    )


# -----------------------------------------------------------------------------
# Payloads
# -----------------------------------------------------------------------------

def census_payload(order: int, filters: Sequence[str], records: Sequence[CensusRecord]) -> dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "census",
        "order": order,
        "filters": list(filters),
        "count": len(records),
        "records": [
            {
                "table": [list(r) for r in rec.table],
                "uniform": rec.uniform,
                "tag": str(rec.tag),
                "flags": [name for name in StructuralProfile.flag_names() if getattr(rec.profile, name)],
            }
            for rec in records
        ],
    }


def verification_payload(reports: Sequence[VerificationReport]) -> dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "verification",
        "passed": all(r.passed for r in reports),
        "checks": [r.to_dict() for r in reports],
    }


def dumps(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


# -----------------------------------------------------------------------------
# Text rendering
# -----------------------------------------------------------------------------

def _yes_no(value: bool | None) -> str:
    if value is None:
        return "n/a"
    return "true" if value else "false"


env.filters["yesno"] = _yes_no


def render_analysis(report: AnalysisReport) -> str:
    flags = [n for n in StructuralProfile.flag_names() if getattr(report.profile, n)]
    return env.get_template("analysis.txt.j2").render(r=report, flags=flags)


def render_verification(reports: Sequence[VerificationReport]) -> str:
    return env.get_template("verification.txt.j2").render(
        reports=reports,
        passed=all(r.passed for r in reports),
    )


def render_census(order: int, filters: Sequence[str], records: Sequence[CensusRecord]) -> str:
    return env.get_template("census.txt.j2").render(order=order, filters=list(filters), records=records)
