"""Coefficient rings: the integers, the rationals and prime fields.

Elements are plain Python objects: ``int`` for Z, ``Fraction`` for Q and
``int`` in ``range(p)`` for F_p.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import re


class RingError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingTag:
    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise RingError(f"F_p needs a prime p, got {self.p!r}")
        elif self.p is not None:
            raise RingError(f"ring {self.kind} takes no modulus")

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.kind == "Fp" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    def __str__(self):
        return self.name

    # -- elements ---------------------------------------------------------
    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def coerce(self, x):
        """Bring ``x`` (int, Fraction, or numeric string) into the ring."""
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise RingError(f"{x} is not an integer")
                return x.numerator
            if isinstance(x, bool) or not isinstance(x, int):
                raise RingError(f"{x!r} is not an integer")
            return x
        if self.kind == "Q":
            if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                return Fraction(x)
            raise RingError(f"{x!r} is not rational")
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise RingError(f"{x} has denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingError(f"{x!r} is not an integer residue")
        return x % self.p

    def parse(self, token: str):
        token = token.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", token):
            raise RingError(f"cannot read {token!r} as a scalar")
        value = Fraction(token)
        return self.coerce(value)

    def format(self, x) -> str:
        if isinstance(x, Fraction) and x.denominator == 1:
            return str(x.numerator)
        return str(x)

    def is_unit(self, x) -> bool:
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def inv(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not a unit in {self.name}")
        if self.kind == "Z":
            return x
        if self.kind == "Q":
            return 1 / x
        return pow(x, -1, self.p)

    def div(self, a, b):
        return self.coerce(a * self.inv(b)) if self.kind == "Fp" else a * self.inv(b)

    def normalize_unit(self, x):
        """Canonical associate: positive over Z, unchanged over fields."""
        if self.kind == "Z":
            return abs(x)
        return x


ZZ = RingTag("Z")
QQ = RingTag("Q")


def GF(p: int) -> RingTag:
    return RingTag("Fp", p)


def ring_from_name(name: str) -> RingTag:
    """Parse ``Z``, ``Q``, ``F5``, ``Fp 5``, ``F 5`` or ``GF5``."""
    text = name.strip()
    if text in ("Z", "ZZ"):
        return ZZ
    if text in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:Fp|F|GF)\s*(\d+)", text)
    if m:
        return GF(int(m.group(1)))
    raise RingError(f"unknown ring {name!r}; expected Z, Q or Fp")
