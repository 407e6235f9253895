"""Exceptions partagées par les services.

Toutes héritent de `SemigroupError` : la CLI les traduit en code de sortie 2
(erreur d'entrée) avec un message sur une ligne.
"""

from __future__ import annotations


class SemigroupError(Exception):
    pass


class RangeError(SemigroupError, ValueError):
    """Entrée de table (ou élément) hors de [0, n-1], ou table non carrée."""


class AssociativityError(SemigroupError):
    """Premier triplet (i, j, k) tel que (ij)k != i(jk)."""

    def __init__(self, triple: tuple[int, int, int], left: int, right: int) -> None:
        self.triple = triple
        self.left = left
        self.right = right
        i, j, k = triple
        super().__init__(
            f"not associative at ({i}, {j}, {k}): ({i}*{j})*{k} = {left} but {i}*({j}*{k}) = {right}"
        )


class BoundExceeded(SemigroupError):
    def __init__(self, what: str, value: int, limit: int) -> None:
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what}: {value} exceeds the configured limit {limit}")


class SubactError(SemigroupError):
    """Sous-ensemble non stable par l'action."""


class RegularityError(SemigroupError):
    """Matrice sandwich avec une ligne ou une colonne entièrement nulle."""


class DegenerateOrderError(SemigroupError):
    """Le demi-groupe à un élément n'entre pas dans la théorie (S n'est pas un singleton)."""


class CriterionInapplicable(SemigroupError):
    pass


class ClassificationGap(SemigroupError):
    """Un demi-groupe régulier uniforme qui ne correspond à aucune structure connue."""

    def __init__(self, table: tuple[tuple[int, ...], ...], message: str = "") -> None:
        self.table = table
        super().__init__(message or f"regular uniform semigroup matches no structure: {table}")


class CompatibilityError(SemigroupError):
    """Action non compatible : a(st) != (as)t."""


class CensusCacheError(SemigroupError):
    """Fichier de cache du recensement illisible ou incohérent."""
