"""Exact arithmetic in the ring Z[phi], phi = (1 + sqrt 5) / 2."""
from __future__ import annotations

from functools import total_ordering


@total_ordering
class Golden:
    """The number ``a + b*phi`` with integer ``a``, ``b``; ``phi**2 = phi + 1``."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = int(a)
        self.b = int(b)

    @classmethod
    def coerce(cls, x) -> "Golden":
        if isinstance(x, Golden):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {x!r} to Golden")

    def __repr__(self):
        return f"Golden({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}φ"
        return f"{self.a}{self.b:+}φ"

    def __hash__(self):
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def __eq__(self, other):
        try:
            other = Golden.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __lt__(self, other):
        return (self - Golden.coerce(other)).sign() < 0

    def __add__(self, other):
        other = Golden.coerce(other)
        return Golden(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Golden(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-Golden.coerce(other))

    def __rsub__(self, other):
        return Golden.coerce(other) - self

    def __mul__(self, other):
        other = Golden.coerce(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return Golden(a * c + b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def conjugate(self) -> "Golden":
        """Galois conjugate (phi -> 1 - phi)."""
        return Golden(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def sign(self) -> int:
        # a + b*phi = (p + q*sqrt5) / 2 with p = 2a + b, q = b
        p, q = 2 * self.a + self.b, self.b
        if p >= 0 and q >= 0:
            return 0 if p == 0 and q == 0 else 1
        if p <= 0 and q <= 0:
            return -1
        d = p * p - 5 * q * q
        return (1 if d > 0 else -1) if p > 0 else (1 if d < 0 else -1)

    def __bool__(self):
        return bool(self.a or self.b)

    def __float__(self):
        return self.a + self.b * (1 + 5 ** 0.5) / 2


PHI = Golden(0, 1)
