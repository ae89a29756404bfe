"""Exact rational numerics: parsing, distance to the nearest integer, the
weighted height, form values, and the truncation-precision guard.

Everything here is exact. No floats enter or leave any public function;
Fraction is the single number type. Decimal strings ("0.25") parse exactly,
"p/q" strings parse exactly, and formatting always emits canonical "p/q"
with q > 0 and gcd(p, q) = 1 (Fraction maintains that invariant for us).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ConfigError, PrecisionExhausted

Q = Fraction  # local shorthand, mirrors how the rest of the package writes exact values


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q', an integer string, or a decimal string, exactly.

    Raises ConfigError on anything Fraction cannot represent exactly.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not an exact rational: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical 'p/q' form, denominator always explicit."""
    return f"{x.numerator}/{x.denominator}"


def dist_to_nearest_int(x: Fraction) -> Fraction:
    """||x||: distance from x to the nearest integer. Always in [0, 1/2]."""
    r = x - (x.numerator // x.denominator)  # x mod 1, in [0, 1)
    return min(r, 1 - r)


def weighted_height_sq(m1: int, m2: int) -> int:
    """M^2 = max(|m1|, m2^2), the squared weighted height. Integer, exact;
    the height itself (its square root) is never materialized."""
    return max(abs(m1), m2 * m2)


def ceil_isqrt(n: int) -> int:
    """Smallest integer s with s*s >= n."""
    s = isqrt(n)
    return s if s * s == n else s + 1


@dataclass(frozen=True)
class ThetaForm:
    """The linear form's coefficient pair with truncation metadata.

    theta1, theta2 are the exact rationals actually computed with.
    declared_error bounds |theta_i(true) - theta_i| when the pair stands in
    for an irrational target; 0 means the rationals are themselves the target.
    """

    theta1: Fraction
    theta2: Fraction
    declared_error: Fraction = Fraction(0)

    def __post_init__(self):
        for t in (self.theta1, self.theta2):
            if not (0 < t < 1):
                raise ConfigError(f"theta component out of (0,1): {t}")
        if not (0 <= self.declared_error < Fraction(1, 2)):
            raise ConfigError(f"declared_error out of [0, 1/2): {self.declared_error}")


def form_value(theta: ThetaForm, m1: int, m2: int) -> tuple[Fraction, int]:
    """(zeta, m0): the distance ||theta1*m1 + theta2*m2|| together with the
    integer m0 realizing it, i.e. |m0 + theta1*m1 + theta2*m2| = zeta.

    Tie at a half-integer resolves to the m0 of smaller absolute value,
    then to the smaller m0.
    """
    v = theta.theta1 * m1 + theta.theta2 * m2
    lo = v.numerator // v.denominator  # floor(v)
    candidates = [-(lo), -(lo + 1)]
    best = None
    for m0 in candidates:
        d = abs(m0 + v)
        key = (d, abs(m0), m0)
        if best is None or key < best[0]:
            best = (key, m0, d)
    return best[2], best[1]


def validate_precision(theta: ThetaForm, height_sq_max: int, zeta_min: Fraction) -> None:
    """Guard: the record structure computed from the truncated pair is only
    trusted when every record zeta clears the worst-case perturbation with a
    10x margin.

    A form value moves by at most |m1|*err + |m2|*err <= (H + ceil_isqrt(H))*err
    when each coefficient moves by err. ok iff
        zeta_min > 10 * declared_error * (H + ceil_isqrt(H)).
    Raises PrecisionExhausted otherwise, with an estimate of the extra decimal
    digits needed.
    """
    err = theta.declared_error
    if err == 0:
        return
    margin = 10 * err * (height_sq_max + ceil_isqrt(height_sq_max))
    if zeta_min > margin:
        return
    # err must shrink below zeta_min / (10 * (H + ceil_isqrt(H)))
    needed = zeta_min / (10 * (height_sq_max + ceil_isqrt(height_sq_max)))
    extra = None
    if needed > 0:
        ratio = err / needed
        extra = len(str(ratio.numerator // ratio.denominator)) if ratio > 1 else 1
    raise PrecisionExhausted(
        "declared truncation error too coarse for this height range: "
        f"zeta_min={zeta_min} <= guard={margin}; "
        f"roughly {extra} more decimal digits of theta needed",
        extra_digits=extra,
    )


def theta_fingerprint(theta: ThetaForm) -> str:
    """Stable identity for a coefficient pair, used to tie files together."""
    import hashlib

    text = "|".join(
        format_rational(x) for x in (theta.theta1, theta.theta2, theta.declared_error)
    )
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()[:32]


def form_range(m1: int, m2: int, b1, b2, w1, w2):
    """Closed range [lo, hi] of m1*x1 + m2*x2 over the box
    [b1, b1+w1] x [b2, b2+w2]. Exact; extremes sit at corners."""
    base = m1 * b1 + m2 * b2
    lo = base + min(m1 * w1, 0) + min(m2 * w2, 0)
    hi = base + max(m1 * w1, 0) + max(m2 * w2, 0)
    return lo, hi
