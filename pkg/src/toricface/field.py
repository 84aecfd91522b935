"""Coefficient fields: the rationals or a prime field GF(p)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``characteristic == 0`` means Q; otherwise GF(characteristic)."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic and not _is_prime(self.characteristic):
            raise ValueError(f"{self.characteristic} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip().lower()
        if text in ("q", "qq", "rationals", "0"):
            return cls(0)
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field spec {text!r} (use 'q' or 'fp:<p>')")

    @property
    def p(self) -> int | None:
        return self.characteristic or None

    def coerce(self, x):
        if self.characteristic:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.characteristic)) % self.characteristic
            return int(x) % self.characteristic
        return Fraction(x)

    def __str__(self):
        return f"fp:{self.characteristic}" if self.characteristic else "q"


QQ = FieldSpec(0)
