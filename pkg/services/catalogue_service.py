"""Services (métier) liés au catalogue SQLite des résultats.

Objectifs :
- Conserver les CensusRecord (insertion idempotente par (ordre, table)).
- Historiser les exécutions de vérification.
- Fournir les requêtes utilisées par la commande `history` et les filtres.
"""

import json
from collections.abc import Iterable

from sqlalchemy.orm import Session

from models import CensusEntry, VerificationRun
from services.census_service import CensusRecord
from services.verify_service import VerificationReport


def _table_key(record: CensusRecord) -> str:
    return ",".join(str(v) for v in record.flat())


# -----------------------------------------------------------------------------
# Census
# -----------------------------------------------------------------------------

def store_census(session: Session, records: Iterable[CensusRecord]) -> int:
    """Ajoute les records absents (clé (ordre, table)) et commit. Retourne le nombre d'ajouts."""
    added = 0
    for record in records:
        key = _table_key(record)
        entry = session.query(CensusEntry).filter_by(order=record.order, table=key).first()
        if entry is None:
            entry = CensusEntry(order=record.order, table=key)
            session.add(entry)
            added += 1
        entry.uniform = record.uniform
        entry.regular = record.profile.regular
        entry.tag = str(record.tag)
        entry.flags = json.dumps(record.profile.to_dict(), sort_keys=True)
    session.commit()
    return added


def list_census(
    session: Session,
    order: int,
    *,
    uniform: bool | None = None,
    tag: str | None = None,
) -> list[CensusEntry]:
    q = session.query(CensusEntry).filter_by(order=order)
    if uniform is not None:
        q = q.filter(CensusEntry.uniform.is_(uniform))
    if tag is not None:
        q = q.filter_by(tag=tag)
    return q.order_by(CensusEntry.table.asc()).all()


def entry_flags(entry: CensusEntry) -> dict[str, bool | int]:
    return json.loads(entry.flags)


# -----------------------------------------------------------------------------
# Verification runs
# -----------------------------------------------------------------------------

def record_verification(session: Session, report: VerificationReport) -> VerificationRun:
    run = VerificationRun(
        check_id=report.check_id,
        max_order=report.max_order,
        negated=report.negated,
        instances_scanned=report.instances_scanned,
        counterexamples=len(report.counterexamples),
        discrepancies=len(report.discrepancies),
        passed=report.passed,
        elapsed=report.elapsed,
    )
    session.add(run)
    session.commit()
    session.refresh(run)
    return run


def list_runs(session: Session, *, check_id: str | None = None, limit: int = 50) -> list[VerificationRun]:
    """Dernières exécutions, les plus récentes d'abord."""
    q = session.query(VerificationRun)
    if check_id is not None:
        q = q.filter_by(check_id=check_id.upper())
    return q.order_by(VerificationRun.id.desc()).limit(limit).all()
