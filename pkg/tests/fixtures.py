from functools import lru_cache
from pathlib import Path

from perfect_unary.forms.field_core import NumberField, load_field_description, quadratic_field
from perfect_unary.forms.unit_lattice import LogUnitLattice, build_log_lattice

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "fields"
CUBIC_49 = DATA_DIR / "cubic_49.json"


@lru_cache(maxsize=None)
def quadratic(d: int) -> tuple[NumberField, LogUnitLattice]:
    field = quadratic_field(d)
    return field, build_log_lattice(field)


@lru_cache(maxsize=None)
def cubic() -> tuple[NumberField, LogUnitLattice]:
    field, units = load_field_description(CUBIC_49)
    return field, build_log_lattice(field, units)
