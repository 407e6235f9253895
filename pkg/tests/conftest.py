from pathlib import Path

import pytest

from services import cayley_service as cayley
from services import families_service as families
from services.cayley_service import Semigroup
from services.families_service import FamilyKind, FamilySpec

SAMPLES_DIR = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES_DIR


@pytest.fixture
def left_zero_2() -> Semigroup:
    return cayley.left_zero_semigroup(2)


@pytest.fixture
def right_zero_2() -> Semigroup:
    return cayley.right_zero_semigroup(2)


@pytest.fixture
def z2() -> Semigroup:
    return cayley.cyclic_group(2)


@pytest.fixture
def null_2() -> Semigroup:
    """{0, a} avec a·a = 0 ; 0 indexé 0."""
    return families.monogenic_nil(2)


@pytest.fixture
def z2_zero(z2) -> Semigroup:
    return cayley.adjoin_zero(z2)


@pytest.fixture
def z2_two_left_zeros(z2) -> Semigroup:
    """e=0, a=1, θ₁=2, θ₂=3 ; a échange θ₁ et θ₂."""
    return families.construct(FamilySpec(kind=FamilyKind.GROUP_TWO_LEFT_ZEROS, group=z2, strict_paper=True))


@pytest.fixture
def write_table(tmp_path):
    def _write(text: str, name: str = "table.txt") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
