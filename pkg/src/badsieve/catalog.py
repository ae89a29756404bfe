"""Named coefficient pairs used by the acceptance runs and the CLI.

All entries are exact rationals. The square-root entries are 51-digit
decimal truncations (declared_error covers the cut tail); the staircase
entry is a finite sum of reciprocal powers of ten with rapidly growing
exponents, whose declared_error covers the omitted continuation of the
pattern. That last pair has spectacularly good rational approximations,
which is exactly the regime the homogeneous weighted score exposes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ConfigError
from .rationals import ThetaForm

_DIGITS = 51
_SCALE = 10**_DIGITS


def _trunc_sqrt_frac(n: int) -> Fraction:
    """Truncation of sqrt(n) - 1 to _DIGITS decimals, for 1 < n < 4."""
    return Fraction(isqrt(n * _SCALE * _SCALE) - _SCALE, _SCALE)


def _trunc_golden() -> Fraction:
    """Truncation of (sqrt(5) - 1)/2 to _DIGITS decimals."""
    return Fraction((isqrt(5 * _SCALE * _SCALE) - _SCALE) // 2, _SCALE)


_STAIR_EXPONENTS = (1, 2, 4, 30, 180)
_STAIR_DIGITS_2 = (3, 2, 4, 2, 3)


def _staircase(digits) -> Fraction:
    return sum(Fraction(d, 10**e) for d, e in zip(digits, _STAIR_EXPONENTS))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    theta: ThetaForm
    description: str


def _build() -> dict[str, CatalogEntry]:
    entries = [
        CatalogEntry(
            name="sqrt2-sqrt3",
            theta=ThetaForm(
                theta1=_trunc_sqrt_frac(2),
                theta2=_trunc_sqrt_frac(3),
                declared_error=Fraction(1, _SCALE),
            ),
            description="51-digit truncations of sqrt(2)-1 and sqrt(3)-1",
        ),
        CatalogEntry(
            name="golden-pair",
            theta=ThetaForm(
                theta1=_trunc_golden(),
                theta2=_trunc_sqrt_frac(2),
                declared_error=Fraction(1, _SCALE),
            ),
            description="51-digit truncations of (sqrt(5)-1)/2 and sqrt(2)-1",
        ),
        CatalogEntry(
            name="liouville",
            theta=ThetaForm(
                theta1=_staircase((1,) * len(_STAIR_EXPONENTS)),
                theta2=_staircase(_STAIR_DIGITS_2),
                declared_error=Fraction(1, 10**500),
            ),
            description=(
                "staircase decimals with exponent gaps 1,2,4,30,180: "
                "admits huge rational spikes, far from badly approximable"
            ),
        ),
    ]
    return {e.name: e for e in entries}


_ENTRIES = _build()


def catalog_names() -> list[str]:
    return list(_ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise ConfigError(
            f"unknown catalog entry {name!r}; have {', '.join(_ENTRIES)}"
        ) from None
