# models.py
from datetime import UTC, datetime

from sqlalchemy import Boolean, Column, DateTime, Float, Integer, String, Text, UniqueConstraint

from db import Base


def _now() -> datetime:
    return datetime.now(UTC)


class CensusEntry(Base):
    __tablename__ = "census_entry"

    id = Column(Integer, primary_key=True)
    order = Column("semigroup_order", Integer, nullable=False, index=True)
    table = Column("cayley_table", String(200), nullable=False)   # forme canonique, "t00,t01,..."

    uniform = Column(Boolean, nullable=True)      # None pour le singleton
    regular = Column(Boolean, nullable=False)
    tag = Column(String(40), nullable=False)
    flags = Column(Text, nullable=False)          # JSON du profil structurel

    created_at = Column(DateTime, nullable=False, default=_now)

    __table_args__ = (
        UniqueConstraint("semigroup_order", "cayley_table", name="uq_census_order_table"),
    )


class VerificationRun(Base):
    __tablename__ = "verification_run"

    id = Column(Integer, primary_key=True)
    check_id = Column(String(10), nullable=False, index=True)
    max_order = Column(Integer, nullable=False)
    negated = Column(Boolean, nullable=False, default=False)

    instances_scanned = Column(Integer, nullable=False, default=0)
    counterexamples = Column(Integer, nullable=False, default=0)
    discrepancies = Column(Integer, nullable=False, default=0)
    passed = Column(Boolean, nullable=False)
    elapsed = Column(Float, nullable=False, default=0.0)

    created_at = Column(DateTime, nullable=False, default=_now)
