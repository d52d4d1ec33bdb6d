"""Named curve families used throughout the examples."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldTooSmall
from .fields import QQ, FieldSpec, field_make
from .poly import Poly, Ring

__all__ = ["FamilySpec", "FAMILIES", "family_make", "family_field", "default_slopes"]

FAMILIES = ("near-pencil", "gn", "intro-quintic", "q5-quintic", "ramphoid")

_FIXED = {
    "intro-quintic": "x0*(x1^2+x0*x2)*(2*x1^2+x0*x2)",
    "q5-quintic": "x0*(x1^2+x0*x2)*(x1^2+x0*x2+x0^2)",
    "ramphoid": "x2*(x1^4-2*x0*x1^2*x2+x0^2*x2^2-x1*x2^3)",
}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    n: int | None = None
    field: FieldSpec = QQ
    seed: int = 0
    allow_extension: bool = True

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValueError(f"unknown family {self.name!r}; choose from {', '.join(FAMILIES)}")
        if self.name in ("near-pencil", "gn"):
            if self.n is None or self.n < 2:
                raise ValueError(f"family {self.name} needs n >= 2")

    def label(self) -> str:
        return self.name if self.n is None else f"{self.name}(n={self.n})"


def family_field(spec: FamilySpec) -> FieldSpec:
    """The field the family is built over; near-pencils may need an extension."""
    F = spec.field
    if spec.name != "near-pencil" or F.kind == "Q":
        return F
    need = spec.n - 2
    if F.order - 1 >= need:
        return F
    if not spec.allow_extension:
        raise FieldTooSmall(f"{F.label()} has only {F.order - 1} nonzero elements, {need} slopes needed")
    k = 2
    while F.characteristic ** (F.extension_degree * k) - 1 < need:
        k += 1
    return field_make(F.characteristic, F.extension_degree * k)


def default_slopes(field: FieldSpec, count: int, seed: int = 0) -> list:
    """Distinct nonzero slopes: ``g^seed, g^(seed+1), ...`` for a primitive ``g``,
    or ``seed+1, seed+2, ...`` over Q."""
    if count <= 0:
        return []
    if field.kind == "Q":
        return [field.from_int(seed + i + 1) for i in range(count)]
    if field.order - 1 < count:
        raise FieldTooSmall(f"{field.label()} cannot supply {count} distinct nonzero slopes")
    g = field.generator()
    return [field.pow(g, (seed + i) % (field.order - 1)) for i in range(count)]


def family_make(spec: FamilySpec) -> Poly:
    F = family_field(spec)
    ring = Ring(F, ("x0", "x1", "x2"))
    x0, x1, x2 = ring.gens()
    if spec.name == "near-pencil":
        f = x0 * x1 * x2
        for c in default_slopes(F, spec.n - 2, spec.seed):
            f = f * (x0 + x1.scale(c))
        return f
    if spec.name == "gn":
        n = spec.n
        return x0 * x1 * (x1 ** (n - 1) + x0 ** (n - 2) * x2)
    return ring.parse(_FIXED[spec.name])
