"""Engineering-notation parsing and formatting with SI suffixes."""

from __future__ import annotations

import re
from decimal import Decimal

SI_EXPONENTS = {
    "f": -15,
    "p": -12,
    "n": -9,
    "u": -6,
    "m": -3,
    "k": 3,
    "M": 6,
    "G": 9,
}
_SUFFIX_FOR_EXPONENT = {v: k for k, v in SI_EXPONENTS.items()}

_NUMBER_RE = re.compile(
    r"^(?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<suffix>[A-Za-z]?)$"
)


def parse_si(text: str) -> float:
    """Parse ``"10f"``, ``"5G"``, ``"1.5e-3"`` or ``"50"`` into a float.

    The mantissa and the suffix exponent are combined in decimal before the
    single conversion to binary, so ``parse_si("10f") == 1e-14`` exactly.
    """
    m = _NUMBER_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed value {text!r}")
    suffix = m.group("suffix")
    if suffix and suffix not in SI_EXPONENTS:
        raise ValueError(f"unknown SI suffix {suffix!r} in {text!r}")
    num = Decimal(m.group("num"))
    if suffix:
        num = num.scaleb(SI_EXPONENTS[suffix])
    return float(num)


def format_si(x: float) -> str:
    """Format ``x`` as mantissa plus SI suffix, losslessly.

    The mantissa is the shortest repr of ``x`` shifted by a multiple of
    three decimal places, so ``parse_si(format_si(x)) == x``.
    """
    if x == 0:
        return "0"
    d = Decimal(repr(float(x)))
    exp = d.adjusted()
    eng = 3 * (exp // 3)
    eng = max(min(eng, 9), -15)
    mant = d.scaleb(-eng).normalize()
    # fixed-point avoids the "1E+1" form normalize() can produce
    return f"{mant:f}" + _SUFFIX_FOR_EXPONENT.get(eng, "")
