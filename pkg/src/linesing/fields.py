"""Exact coefficient fields: the rationals and prime fields GF(p).

Field objects know how to coerce, combine and format raw element values.
Rational elements are ``fractions.Fraction`` (automatically in lowest
terms with positive denominator); prime-field elements are ints reduced
to the canonical residue range ``0..p-1``.  Keeping elements as plain
values and arithmetic on the field object avoids wrapper objects in the
inner loops of the linear algebra.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError, InputError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field of rational numbers with exact Fraction arithmetic."""

    tag = "q"
    characteristic = 0

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / a

    def div(self, a, b):
        return a * self.inv(b)

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {s!r}: {exc}") from exc

    def random(self, rng, height: int = 5):
        """Small-height element; integer-biased to keep arithmetic light."""
        if rng.random() < 0.8:
            return Fraction(rng.randint(-height, height))
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime p; elements are canonical residues."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.tag = f"fp:{p}"
        self.characteristic = p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, self.p - 2, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        try:
            return self.coerce(Fraction(s))
        except ValueError as exc:
            raise InputError(f"bad field literal {s!r}: {exc}") from exc

    def random(self, rng, height: int | None = None):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def field_from_tag(tag: str):
    """Resolve a field selector string: ``"q"`` or ``"fp:<prime>"``."""
    if tag == "q":
        return QQ
    if tag.startswith("fp:"):
        try:
            p = int(tag[3:])
        except ValueError as exc:
            raise InputError(f"bad field tag {tag!r}") from exc
        return PrimeField(p)
    raise InputError(f"unknown field tag {tag!r}")


def same_field(a, b):
    if a != b:
        raise FieldMismatchError(f"fields differ: {a!r} vs {b!r}")
    return a
