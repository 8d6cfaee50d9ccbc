"""Coefficient rings: the integers, the rationals and prime fields.

Elements are plain Python numbers: ``int`` for Z and F_p (canonical residues
in ``[0, p)``), ``fractions.Fraction`` for Q.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Ring:
    """One of Z, Q or F_p.

    Use the module constants ``ZZ`` and ``QQ`` or ``GF(p)`` rather than
    building instances by hand.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise ValueError(f"F_p needs a prime p, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("only F_p carries a modulus")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def __call__(self, x):
        """Coerce ``x`` into the ring."""
        if self.kind == "Q":
            if isinstance(x, str):
                return Fraction(x)
            if not isinstance(x, Rational):
                raise TypeError(f"cannot coerce {x!r} into Q")
            return Fraction(x)
        if self.kind == "Z":
            if isinstance(x, bool) or not isinstance(x, Rational):
                raise TypeError(f"cannot coerce {x!r} into Z")
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        # F_p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, Rational):
            raise TypeError(f"cannot coerce {x!r} into F_{self.p}")
        return int(x) % self.p

    def reduce(self, x):
        """Canonical form of the result of ``+``/``-``/``*`` on elements."""
        if self.kind == "Fp":
            return x % self.p
        return x

    def inv(self, x):
        if self.kind == "Q":
            return 1 / x
        if self.kind == "Fp":
            return pow(x, -1, self.p)
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in Z")

    def is_unit(self, x) -> bool:
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def is_zero_divisor(self, x) -> bool:
        # Z, Q and F_p are domains.
        return x == 0

    def to_json(self, x):
        if self.kind == "Q":
            if x.denominator == 1:
                return x.numerator
            return f"{x.numerator}/{x.denominator}"
        return int(x)

    @property
    def label(self):
        """JSON form: ``"Z"``, ``"Q"`` or ``{"Fp": p}``."""
        if self.kind == "Fp":
            return {"Fp": self.p}
        return self.kind

    def __str__(self):
        return f"F_{self.p}" if self.kind == "Fp" else self.kind


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Fp", p)


def ring_from_json(obj) -> Ring:
    if obj == "Z":
        return ZZ
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        return GF(obj["Fp"])
    raise ValueError(f"unrecognised ring {obj!r}")
