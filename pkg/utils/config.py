import logging
import os
from dataclasses import dataclass, fields, replace


ENV_PREFIX = "SEMIUNIFORM_"


@dataclass(frozen=True, slots=True)
class Bounds:
    """
    Limites de calcul (tailles au-delà desquelles une opération lève BoundExceeded).

    Chaque champ peut être surchargé par une variable d'environnement
    `SEMIUNIFORM_<CHAMP>` (ex: SEMIUNIFORM_CENSUS_ORDER=6).
    """
    canonical_order: int = 7
    congruence_carrier: int = 8
    census_order: int = 5
    census_extended_order: int = 6
    group_order: int = 8
    verify_default_order: int = 4
    verify_extended_order: int = 5


def load_bounds(environ: dict[str, str] | None = None) -> Bounds:
    log = logging.getLogger("semiuniform.config")
    env = os.environ if environ is None else environ
    overrides: dict[str, int] = {}
    for f in fields(Bounds):
        raw = env.get(ENV_PREFIX + f.name.upper(), "").strip()
        if not raw:
            continue
        try:
            value = int(raw)
        except ValueError:
            log.warning("Ignoring %s%s=%r (not an integer)", ENV_PREFIX, f.name.upper(), raw)
            continue
        if value < 1:
            log.warning("Ignoring %s%s=%r (must be positive)", ENV_PREFIX, f.name.upper(), raw)
            continue
        overrides[f.name] = value
    return replace(Bounds(), **overrides)
