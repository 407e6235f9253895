import atexit
import logging
import logging.handlers
import os
import queue
import sys
from dataclasses import dataclass
from pathlib import Path


APP_NAME = "semiuniform"
DEFAULT_LOGGER_NAME = "semiuniform"
LOG_FILE_ENV = "SEMIUNIFORM_LOG_FILE"


@dataclass(frozen=True, slots=True)
class LoggingConfig:
    """
    Configuration du logging.

    Console sur stderr : stdout est réservé aux rapports (texte ou JSON).
    Le fichier n'est activé que sur demande (`--log-file` ou SEMIUNIFORM_LOG_FILE).
    """
    level: str = "WARNING"
    to_console: bool = True
    to_file: bool = False
    log_file: Path | None = None
    max_bytes: int = 2_000_000
    backup_count: int = 5
    queue_maxsize: int = 10_000


class LoggingManager:
    """
    Gestionnaire de logging asynchrone.
    - Ajoute un QueueHandler sur le logger applicatif.
    - Draine vers console + fichier via QueueListener.
    """

    def __init__(
        self,
        logger: logging.Logger,
        listener: logging.handlers.QueueListener,
    ) -> None:
        self.logger = logger
        self._listener = listener
        self._started = False

    def start(self) -> None:
        if self._started:
            return
        try:
            self._listener.start()
        except RuntimeError:
            # déjà démarré par un autre manager
            return
        self._started = True

    def stop(self) -> None:
        if not self._started:
            return
        try:
            self._listener.stop()
        finally:
            self._started = False

    def __enter__(self) -> "LoggingManager":
        self.start()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.stop()


def _level(value: str | int) -> int:
    if isinstance(value, int):
        return value
    return getattr(logging, str(value).upper(), logging.WARNING)


def _default_log_dir() -> Path:
    """
    - macOS: ~/Library/Application Support/semiuniform/logs
    - Linux: ~/.local/state/semiuniform/logs
    """
    home = Path.home()
    if sys.platform == "darwin":
        base = home / "Library" / "Application Support" / APP_NAME
    else:
        base = home / ".local" / "state" / APP_NAME
    return base / "logs"


def resolve_log_file(config: LoggingConfig) -> Path:
    if config.log_file is not None:
        return Path(config.log_file).expanduser()
    env_path = os.environ.get(LOG_FILE_ENV, "").strip()
    if env_path:
        return Path(env_path).expanduser()
    return _default_log_dir() / "semiuniform.log"


def _make_formatter() -> logging.Formatter:
    fmt = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
    return logging.Formatter(fmt=fmt, datefmt="%Y-%m-%d %H:%M:%S")


def install_excepthook(logger_name: str = DEFAULT_LOGGER_NAME) -> None:
    """Journalise les exceptions non gérées (CRITICAL)."""
    logger = logging.getLogger(logger_name)

    def excepthook(exc_type, exc, tb):
        if exc_type is KeyboardInterrupt:
            sys.__excepthook__(exc_type, exc, tb)
            return
        logger.critical("Unhandled exception", exc_info=(exc_type, exc, tb))

    sys.excepthook = excepthook


def _sink_key(cfg: LoggingConfig) -> tuple[bool, str | None]:
    logfile = resolve_log_file(cfg) if (cfg.to_file or cfg.log_file is not None) else None
    return cfg.to_console, None if logfile is None else str(logfile)


def _teardown(logger: logging.Logger) -> None:
    """Arrête le listener installé et retire ses handlers (changement de cible)."""
    listener: logging.handlers.QueueListener = logger._semiuniform_listener  # type: ignore[attr-defined]
    listener.stop()
    for h in listener.handlers:
        h.close()
    logger.removeHandler(logger._semiuniform_queue_handler)  # type: ignore[attr-defined]
    del logger._semiuniform_listener  # type: ignore[attr-defined]


def setup_logging(
    *,
    config: LoggingConfig | None = None,
    logger_name: str = DEFAULT_LOGGER_NAME,
) -> LoggingManager:
    """
    Configure le logger applicatif et renvoie un LoggingManager (context manager).

        with setup_logging(config=LoggingConfig(level="INFO")):
            ...

    Un second appel avec les mêmes sorties réutilise le listener et ajuste le niveau ;
    si la console ou le fichier cible changent, les handlers sont reconstruits.
    """
    cfg = config or LoggingConfig()
    lvl = _level(cfg.level)
    key = _sink_key(cfg)

    logger = logging.getLogger(logger_name)
    logger.setLevel(lvl)
    logger.propagate = False

    existing = getattr(logger, "_semiuniform_listener", None)
    if existing is not None:
        if logger._semiuniform_sinks == key:  # type: ignore[attr-defined]
            for h in existing.handlers:
                h.setLevel(lvl)
            return LoggingManager(logger=logger, listener=existing)
        _teardown(logger)

    formatter = _make_formatter()
    sinks: list[logging.Handler] = []

    if cfg.to_console:
        ch = logging.StreamHandler(stream=sys.stderr)
        ch.setLevel(lvl)
        ch.setFormatter(formatter)
        sinks.append(ch)

    if key[1] is not None:
        logfile = Path(key[1])
        logfile.parent.mkdir(parents=True, exist_ok=True)
        fh = logging.handlers.RotatingFileHandler(
            logfile,
            maxBytes=cfg.max_bytes,
            backupCount=cfg.backup_count,
            encoding="utf-8",
        )
        fh.setLevel(lvl)
        fh.setFormatter(formatter)
        sinks.append(fh)

    q: queue.Queue[logging.LogRecord] = queue.Queue(maxsize=cfg.queue_maxsize)
    qh = logging.handlers.QueueHandler(q)
    logger.addHandler(qh)

    listener = logging.handlers.QueueListener(q, *sinks, respect_handler_level=True)
    mgr = LoggingManager(logger=logger, listener=listener)
    atexit.register(mgr.stop)

    logger._semiuniform_listener = listener  # type: ignore[attr-defined]
    logger._semiuniform_queue_handler = qh  # type: ignore[attr-defined]
    logger._semiuniform_sinks = key  # type: ignore[attr-defined]
    logger.debug("Logging configured")
    return mgr
