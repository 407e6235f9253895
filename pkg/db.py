from __future__ import annotations

import importlib
import logging
import os
import sys
from pathlib import Path

from sqlalchemy import Engine, create_engine, event
from sqlalchemy.engine import make_url
from sqlalchemy.orm import Session, declarative_base, sessionmaker

DB_URL_ENV = "SEMIUNIFORM_DB_URL"

log = logging.getLogger("semiuniform.db")

Base = declarative_base()

_ENGINES: dict[str, Engine] = {}
_INITIALIZED: set[str] = set()


def _get_app_data_dir() -> Path:
    """
    Dossier de données :
    macOS: ~/Library/Application Support/semiuniform
    sinon: ~/.local/state/semiuniform
    """
    home = Path.home()
    if sys.platform == "darwin":
        return home / "Library" / "Application Support" / "semiuniform"
    return home / ".local" / "state" / "semiuniform"


def default_database_url() -> str:
    env_url = os.environ.get(DB_URL_ENV, "").strip()
    if env_url:
        return env_url
    return f"sqlite:///{_get_app_data_dir() / 'catalogue.sqlite'}"


def _set_sqlite_pragma(dbapi_connection, connection_record):  # pragma: no cover
    cursor = dbapi_connection.cursor()
    cursor.execute("PRAGMA foreign_keys=ON")
    cursor.close()


def get_engine(url: str | None = None) -> Engine:
    """Un moteur par URL (créé au premier appel, dossier SQLite compris)."""
    resolved = url or default_database_url()
    engine = _ENGINES.get(resolved)
    if engine is not None:
        return engine

    parsed = make_url(resolved)
    if parsed.get_backend_name() == "sqlite" and parsed.database not in (None, "", ":memory:"):
        Path(parsed.database).expanduser().parent.mkdir(parents=True, exist_ok=True)

    engine = create_engine(resolved, echo=False)
    if parsed.get_backend_name() == "sqlite":
        event.listen(engine, "connect", _set_sqlite_pragma)
    _ENGINES[resolved] = engine
    return engine


def init_db(url: str | None = None) -> Engine:
    """Crée le schéma si besoin (idempotent)."""
    engine = get_engine(url)
    key = str(engine.url)
    if key in _INITIALIZED:
        return engine
    importlib.import_module("models")
    Base.metadata.create_all(bind=engine)
    _INITIALIZED.add(key)
    log.info("Catalogue ready at %s", engine.url.render_as_string(hide_password=True))
    return engine


def get_session(url: str | None = None) -> Session:
    engine = init_db(url)
    return sessionmaker(bind=engine, autoflush=False, autocommit=False)()
