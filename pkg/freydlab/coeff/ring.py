"""Coefficient rings: the integers, the rationals, Z/n and prime fields.

Elements are plain Python integers (reduced into ``[0, n)`` for Z/n and F_p)
or sympy ``QQ`` elements for the rationals, so arithmetic is always exact.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Any, Optional, Tuple

from sympy import isprime
from sympy.polys.domains import QQ

from ..errors import InvalidRing, RingMismatch

logger = logging.getLogger(__name__)

INTEGERS = "Integers"
RATIONALS = "Rationals"
INTEGERS_MOD = "IntegersMod"
PRIME_FIELD = "PrimeField"

KINDS = (INTEGERS, RATIONALS, INTEGERS_MOD, PRIME_FIELD)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Extended Euclid on integers: returns (g, s, t) with s*a + t*b = g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class Ring:
    """A supported commutative coefficient ring."""

    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidRing(f"Unknown ring kind '{self.kind}'")
        if self.kind == INTEGERS_MOD and self.modulus < 2:
            raise InvalidRing(f"IntegersMod needs n >= 2, got {self.modulus}")
        if self.kind == PRIME_FIELD and not isprime(self.modulus):
            raise InvalidRing(f"PrimeField needs a prime, got {self.modulus}")
        if self.kind in (INTEGERS, RATIONALS) and self.modulus != 0:
            raise InvalidRing(f"{self.kind} takes no modulus")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def integers(cls) -> "Ring":
        return cls(INTEGERS)

    @classmethod
    def rationals(cls) -> "Ring":
        return cls(RATIONALS)

    @classmethod
    def integers_mod(cls, n: int) -> "Ring":
        return cls(INTEGERS_MOD, n)

    @classmethod
    def prime_field(cls, p: int) -> "Ring":
        return cls(PRIME_FIELD, p)

    @classmethod
    def parse(cls, text: str) -> "Ring":
        """
        Parse a ring name.

        Accepted forms: ``Z``, ``Q``, ``Z/n``, ``F_p`` / ``Fp`` / ``GF(p)``.
        """
        t = str(text).strip().replace(" ", "")
        if t in ("Z", "ZZ", "Integers"):
            return cls.integers()
        if t in ("Q", "QQ", "Rationals"):
            return cls.rationals()
        try:
            if t.startswith("Z/"):
                return cls.integers_mod(int(t[2:]))
            if t.startswith("GF(") and t.endswith(")"):
                return cls.prime_field(int(t[3:-1]))
            if t.startswith("F_"):
                return cls.prime_field(int(t[2:]))
            if t.startswith("F") and t[1:].isdigit():
                return cls.prime_field(int(t[1:]))
        except ValueError:
            pass
        raise InvalidRing(f"Cannot parse ring '{text}'")

    def __str__(self) -> str:
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == INTEGERS_MOD:
            return f"Z/{self.modulus}"
        return f"F_{self.modulus}"

    # ------------------------------------------------------------------
    # properties
    # ------------------------------------------------------------------
    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS, PRIME_FIELD)

    @property
    def is_modular(self) -> bool:
        return self.kind in (INTEGERS_MOD, PRIME_FIELD)

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def zero(self) -> Any:
        return QQ.zero if self.kind == RATIONALS else 0

    @property
    def one(self) -> Any:
        return QQ.one if self.kind == RATIONALS else 1

    # ------------------------------------------------------------------
    # elements
    # ------------------------------------------------------------------
    def element(self, value: Any) -> Any:
        """Coerce an int, a string or a rational into a canonical element of this ring."""
        if isinstance(value, str):
            return self.parse_element(value)
        if self.kind == RATIONALS:
            if isinstance(value, int):
                return QQ(value)
            if QQ.of_type(value):
                return value
            try:
                return QQ(int(value.numerator), int(value.denominator))
            except AttributeError:
                raise RingMismatch(f"Cannot read {value!r} as a rational") from None
        if isinstance(value, bool) or not isinstance(value, int):
            if QQ.of_type(value) and int(value.denominator) == 1:
                value = int(value.numerator)
            else:
                raise RingMismatch(f"{value!r} is not an element of {self}")
        if self.is_modular:
            return value % self.modulus
        return value

    def parse_element(self, text: str) -> Any:
        t = str(text).strip()
        try:
            if "/" in t:
                if self.kind != RATIONALS:
                    raise RingMismatch(f"'{t}' is not an element of {self}")
                num, den = t.split("/", 1)
                if int(den) == 0:
                    raise RingMismatch("zero denominator")
                return QQ(int(num), int(den))
            return self.element(int(t))
        except ValueError:
            raise RingMismatch(f"Cannot parse '{t}' as an element of {self}") from None

    def format(self, a: Any) -> str:
        """Canonical string encoding used by JSON output."""
        if self.kind == RATIONALS:
            num, den = int(a.numerator), int(a.denominator)
            return str(num) if den == 1 else f"{num}/{den}"
        return str(int(a))

    def lift(self, a: Any) -> int:
        """Integer representative (Z, Z/n, F_p only)."""
        if self.kind == RATIONALS:
            raise RingMismatch("rationals have no integer lift")
        return int(a)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def add(self, a: Any, b: Any) -> Any:
        r = a + b
        return r % self.modulus if self.is_modular else r

    def sub(self, a: Any, b: Any) -> Any:
        r = a - b
        return r % self.modulus if self.is_modular else r

    def neg(self, a: Any) -> Any:
        return (-a) % self.modulus if self.is_modular else -a

    def mul(self, a: Any, b: Any) -> Any:
        r = a * b
        return r % self.modulus if self.is_modular else r

    def is_zero(self, a: Any) -> bool:
        return a == 0

    def is_unit(self, a: Any) -> bool:
        if self.kind == INTEGERS:
            return a in (1, -1)
        if self.is_field:
            return a != 0
        return gcd(a, self.modulus) == 1

    def inverse(self, a: Any) -> Any:
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{self.format(a)} is not a unit in {self}")
        if self.kind == RATIONALS:
            return QQ.one / a
        if self.kind == INTEGERS:
            return a
        return pow(a, -1, self.modulus)

    def divides(self, a: Any, b: Any) -> bool:
        """True iff a·q = b for some q."""
        if self.is_field:
            return a != 0 or b == 0
        if self.kind == INTEGERS:
            return b == 0 if a == 0 else b % a == 0
        return b % gcd(a, self.modulus) == 0

    def quo(self, b: Any, a: Any) -> Optional[Any]:
        """Some q with a·q = b, or None."""
        if not self.divides(a, b):
            return None
        if b == 0:
            return self.zero
        if self.kind == RATIONALS:
            return b / a
        if self.kind == INTEGERS:
            return b // a
        if self.kind == PRIME_FIELD:
            return self.mul(b, pow(a, -1, self.modulus))
        g = gcd(a, self.modulus)
        n1 = self.modulus // g
        return ((b // g) * pow(a // g, -1, n1)) % n1 if n1 > 1 else 0

    def gcdex(self, a: Any, b: Any) -> Tuple[Any, Any, Any, Any, Any]:
        """
        Elementary 2x2 transform clearing b against a.

        Returns (g, s, t, u, v) with s·a + t·b = g, u·a + v·b = 0 and
        ``[[s, t], [u, v]]`` invertible over this ring.
        """
        zero, one = self.zero, self.one
        if b == 0:
            return a, one, zero, zero, one
        if a == 0:
            return b, zero, one, one, zero
        if self.divides(a, b):
            return a, one, zero, self.neg(self.quo(b, a)), one
        if self.is_field:
            # unreachable: a != 0 divides everything
            return a, one, zero, self.neg(b / a), one
        g, s, t = _xgcd(int(a), int(b))
        u, v = -(int(b) // g), int(a) // g
        if self.is_modular:
            return g % self.modulus, s % self.modulus, t % self.modulus, u % self.modulus, v % self.modulus
        return g, s, t, u, v

    def unit_normal(self, a: Any) -> Tuple[Any, Any]:
        """Return (unit, canonical associate) with unit·a = canonical associate."""
        if a == 0:
            return self.one, self.zero
        if self.kind == INTEGERS:
            return (1, a) if a > 0 else (-1, -a)
        if self.is_field:
            return self.inverse(a), self.one
        n = self.modulus
        g = gcd(a, n)
        n1 = n // g
        u0 = pow(a // g, -1, n1) if n1 > 1 else 1
        for k in range(g + 1):
            u = u0 + k * n1
            if gcd(u, n) == 1:
                return u % n, g % n
        raise ArithmeticError(f"no unit normalizing {a} in {self}")  # pragma: no cover

    def norm(self, a: Any) -> int:
        """Euclidean-style size used to choose pivots (0 for zero)."""
        if a == 0:
            return 0
        if self.kind == INTEGERS:
            return abs(a)
        if self.is_field:
            return 1
        return gcd(a, self.modulus)

    def solve_scalar(self, d: Any, c: Any) -> Optional[Any]:
        """Smallest canonical y with d·y = c, or None."""
        if d == 0:
            return self.zero if c == 0 else None
        q = self.quo(c, d)
        if q is None or self.kind != INTEGERS_MOD:
            return q
        return q % (self.modulus // gcd(d, self.modulus))

    def annihilator(self, d: Any) -> Any:
        """Generator of {y : d·y = 0}."""
        if d == 0:
            return self.one
        if self.kind == INTEGERS_MOD:
            return (self.modulus // gcd(d, self.modulus)) % self.modulus
        return self.zero

    def to_rationals(self, a: Any) -> Any:
        if self.kind not in (INTEGERS, RATIONALS):
            raise RingMismatch(f"cannot map {self} into Q")
        return QQ(a) if isinstance(a, int) else a
