# create_db.py
"""Initialisation et migration légère du catalogue SQLite.

Pas d'Alembic ici non plus :
- create_all() crée les tables manquantes
- des ALTER TABLE ajoutent les colonnes apparues après coup sur un catalogue existant

Usage : python create_db.py [URL]   (défaut : SEMIUNIFORM_DB_URL ou le dossier de données)
"""

from __future__ import annotations

import logging
import sys

from sqlalchemy import Engine, text

from db import init_db

log = logging.getLogger("semiuniform.db")

# (table, colonne, définition) ajoutées depuis la première version du catalogue
_LATE_COLUMNS: tuple[tuple[str, str, str], ...] = (
    ("verification_run", "negated", "BOOLEAN NOT NULL DEFAULT 0"),
    ("verification_run", "discrepancies", "INTEGER NOT NULL DEFAULT 0"),
    ("verification_run", "elapsed", "FLOAT NOT NULL DEFAULT 0.0"),
)


def _column_exists(conn, table: str, column: str) -> bool:
    rows = conn.execute(text(f"PRAGMA table_info({table})")).fetchall()
    return any(r[1] == column for r in rows)  # r[1] = name


def migrate_sqlite(engine: Engine) -> list[str]:
    """Ajoute les colonnes manquantes (idempotent). Renvoie les colonnes ajoutées."""
    if engine.url.get_backend_name() != "sqlite":
        return []
    added: list[str] = []
    with engine.begin() as conn:
        for table, column, ddl in _LATE_COLUMNS:
            if not _column_exists(conn, table, column):
                conn.execute(text(f"ALTER TABLE {table} ADD COLUMN {column} {ddl}"))
                added.append(f"{table}.{column}")
        conn.execute(text("CREATE INDEX IF NOT EXISTS ix_census_tag ON census_entry(tag)"))
    for name in added:
        log.info("Added column %s", name)
    return added


def main(argv: list[str] | None = None) -> int:
    args = sys.argv[1:] if argv is None else argv
    engine = init_db(args[0] if args else None)
    migrate_sqlite(engine)
    print(f"Catalogue initialisé / migré : {engine.url.render_as_string(hide_password=True)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
