"""Vectors over Z4, the Gray map and Lee weights.

A vector ``v = b + 2c`` is held as two bitplanes: ``b`` (the residue mod 2)
and ``c`` (the 2-adic digit), both Python ints with bit ``j`` for
coordinate ``j``.  Lee weight is then ``popcount(c) + popcount(b ^ c)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

MAX_LENGTH = 1 << 16

LEE = (0, 1, 2, 1)


@dataclass(frozen=True)
class Z4Vector:
    b: int
    c: int
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_LENGTH:
            raise ValueError(f"length {self.n} outside 0..{MAX_LENGTH}")
        if self.b < 0 or self.c < 0 or self.b >> self.n or self.c >> self.n:
            raise ValueError("bitplanes wider than the vector length")

    @classmethod
    def from_digits(cls, digits: Sequence[int]) -> "Z4Vector":
        b = c = 0
        for j, x in enumerate(digits):
            x = int(x)
            if not 0 <= x <= 3:
                raise ValueError(f"coordinate {j} = {x} is not in Z4")
            b |= (x & 1) << j
            c |= (x >> 1) << j
        return cls(b, c, len(digits))

    @classmethod
    def parse(cls, text: str) -> "Z4Vector":
        """Parse a digit string such as ``0213``."""
        if any(ch not in "0123" for ch in text):
            raise ValueError(f"{text!r} is not a Z4 digit string")
        return cls.from_digits([int(ch) for ch in text])

    @classmethod
    def zero(cls, n: int) -> "Z4Vector":
        return cls(0, 0, n)

    def digits(self) -> list[int]:
        return [(self.b >> j & 1) | (self.c >> j & 1) << 1 for j in range(self.n)]

    def __str__(self) -> str:
        return "".join(str(x) for x in self.digits())

    def __len__(self) -> int:
        return self.n

    def _check(self, other: "Z4Vector") -> None:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Z4Vector") -> "Z4Vector":
        self._check(other)
        return Z4Vector(self.b ^ other.b, self.c ^ other.c ^ (self.b & other.b), self.n)

    def __neg__(self) -> "Z4Vector":
        # -(b + 2c) = b + 2(b + c)
        return Z4Vector(self.b, self.c ^ self.b, self.n)

    def __sub__(self, other: "Z4Vector") -> "Z4Vector":
        return self + (-other)

    def scale(self, k: int) -> "Z4Vector":
        k %= 4
        if k == 0:
            return Z4Vector.zero(self.n)
        if k == 1:
            return self
        if k == 2:
            return Z4Vector(0, self.b, self.n)
        return -self

    def __mul__(self, other: "Z4Vector") -> "Z4Vector":
        """Componentwise product."""
        self._check(other)
        b = self.b & other.b
        c = (self.b & other.c) ^ (self.c & other.b)
        return Z4Vector(b, c, self.n)


@dataclass(frozen=True)
class GrayImage:
    """Binary vector of length 2n: first n bits are c, last n are b + c."""

    bits: int
    n: int

    def to_list(self) -> list[int]:
        return [self.bits >> j & 1 for j in range(2 * self.n)]

    def weight(self) -> int:
        return self.bits.bit_count()


def gray(v: Z4Vector) -> GrayImage:
    return GrayImage(v.c | (v.b ^ v.c) << v.n, v.n)


def lee_weight(v: Z4Vector) -> int:
    return v.c.bit_count() + (v.b ^ v.c).bit_count()


def lee_distance(u: Z4Vector, v: Z4Vector) -> int:
    return lee_weight(u - v)


def hamming_weight(v: Z4Vector) -> int:
    return (v.b | v.c).bit_count()
