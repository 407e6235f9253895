import sqlite3

import create_db
from db import get_engine


def _columns(path, table):
    with sqlite3.connect(path) as conn:
        return {row[1] for row in conn.execute(f"PRAGMA table_info({table})")}


def test_fresh_catalogue_needs_no_migration(tmp_path, capsys):
    path = tmp_path / "fresh.sqlite"
    assert create_db.main([f"sqlite:///{path}"]) == 0
    assert "Catalogue initialisé" in capsys.readouterr().out
    assert create_db.migrate_sqlite(get_engine(f"sqlite:///{path}")) == []
    assert "elapsed" in _columns(path, "verification_run")


def test_old_catalogue_gets_late_columns(tmp_path, capsys):
    path = tmp_path / "old.sqlite"
    with sqlite3.connect(path) as conn:
        conn.execute(
            "CREATE TABLE verification_run ("
            "id INTEGER PRIMARY KEY, check_id VARCHAR(10) NOT NULL, max_order INTEGER NOT NULL, "
            "instances_scanned INTEGER NOT NULL, counterexamples INTEGER NOT NULL, "
            "passed BOOLEAN NOT NULL, created_at DATETIME NOT NULL)"
        )
    url = f"sqlite:///{path}"
    assert create_db.main([url]) == 0
    capsys.readouterr()
    cols = _columns(path, "verification_run")
    assert {"negated", "discrepancies", "elapsed"} <= cols
    # une seconde passe ne touche plus rien
    assert create_db.migrate_sqlite(get_engine(url)) == []
