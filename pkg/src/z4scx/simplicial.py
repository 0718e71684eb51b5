"""Subsets of [m] as bitmasks and the simplicial complexes built from them.

Element ``i`` of ``[m] = {1, ..., m}`` lives at bit ``i - 1``.  A binary
vector ``v`` in Z_2^m is identified with the mask of its support, so a
complex is just a sorted tuple of masks.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

MAX_M = 20

_SUBSET_RE = re.compile(r"^\s*\{\s*(\d+(\s*,\s*\d+)*)?\s*\}\s*$")


@dataclass(frozen=True, order=True)
class SubsetMask:
    """A subset of [m] stored as an m-bit mask."""

    bits: int
    m: int

    def __post_init__(self) -> None:
        if not 1 <= self.m <= MAX_M:
            raise ValueError(f"ground set size m={self.m} outside 1..{MAX_M}")
        if self.bits < 0 or self.bits >> self.m:
            raise ValueError(f"mask {self.bits:#x} does not fit in m={self.m} bits")

    @classmethod
    def from_elements(cls, elements: Iterable[int], m: int) -> "SubsetMask":
        bits = 0
        for e in elements:
            if not 1 <= e <= m:
                raise ValueError(f"element {e} not in [1..{m}]")
            bits |= 1 << (e - 1)
        return cls(bits, m)

    @classmethod
    def full(cls, m: int) -> "SubsetMask":
        return cls((1 << m) - 1, m)

    @property
    def elements(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in range(self.m) if self.bits >> i & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        _same_m(self, other)
        return SubsetMask(self.bits & other.bits, self.m)

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        _same_m(self, other)
        return SubsetMask(self.bits | other.bits, self.m)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        _same_m(self, other)
        return SubsetMask(self.bits & ~other.bits, self.m)

    def complement(self) -> "SubsetMask":
        return SubsetMask(~self.bits & ((1 << self.m) - 1), self.m)

    def issubset(self, other: "SubsetMask") -> bool:
        _same_m(self, other)
        return self.bits & ~other.bits == 0

    def vector_string(self) -> str:
        """Binary vector with coordinate 1 first, e.g. ``{1,3}`` -> ``101``."""
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.m))

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"


def _same_m(a: SubsetMask, b: SubsetMask) -> None:
    if a.m != b.m:
        raise ValueError(f"ground sets differ: m={a.m} vs m={b.m}")


def parse_subset(text: str, m: int) -> SubsetMask:
    """Parse the brace form ``{2,3}`` (``{}`` is the empty set)."""
    match = _SUBSET_RE.match(text)
    if match is None:
        raise ValueError(f"cannot parse subset {text!r}; expected e.g. '{{1,3}}' or '{{}}'")
    body = match.group(1)
    elements = [int(tok) for tok in body.split(",")] if body else []
    if len(set(elements)) != len(elements):
        raise ValueError(f"repeated element in {text!r}")
    return SubsetMask.from_elements(elements, m)


@dataclass(frozen=True)
class BitVectorSet:
    """A set of vectors of Z_2^m, members sorted ascending by mask value."""

    members: Tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        ms = self.members
        if any(a >= b for a, b in zip(ms, ms[1:])):
            raise ValueError("members must be strictly ascending")

    @classmethod
    def from_iterable(cls, masks: Iterable[int], m: int) -> "BitVectorSet":
        return cls(tuple(sorted(set(masks))), m)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        i = bisect_left(self.members, mask)
        return i < len(self.members) and self.members[i] == mask

    def vector_strings(self) -> list[str]:
        return [SubsetMask(v, self.m).vector_string() for v in self.members]


def submasks(bits: int) -> list[int]:
    """All submasks of ``bits`` in ascending order (includes 0)."""
    out = []
    s = bits
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & bits
    out.reverse()
    return out


def simplex(A: SubsetMask) -> BitVectorSet:
    """The one-generator complex of all v with Supp(v) contained in A."""
    return BitVectorSet(tuple(submasks(A.bits)), A.m)


def two_gen_complex(B: SubsetMask, C: SubsetMask) -> BitVectorSet:
    _same_m(B, C)
    return BitVectorSet.from_iterable(submasks(B.bits) + submasks(C.bits), B.m)


def punctured_two_gen(B: SubsetMask, C: SubsetMask) -> BitVectorSet:
    """Union of the two simplices minus their common face complex."""
    _same_m(B, C)
    if B.bits == C.bits:
        raise ValueError("punctured two-generator complex needs B != C")
    common = B.bits & C.bits
    members = [v for v in two_gen_complex(B, C) if v & ~common]
    return BitVectorSet(tuple(members), B.m)


def complement_two_gen(B: SubsetMask, C: SubsetMask) -> BitVectorSet:
    """Z_2^m minus the two-generator complex."""
    _same_m(B, C)
    full = (1 << B.m) - 1
    if B.bits == full or C.bits == full:
        raise ValueError("complex generated by B and C is all of Z_2^m; complement is empty")
    members = [v for v in range(1 << B.m) if v & ~B.bits and v & ~C.bits]
    return BitVectorSet(tuple(members), B.m)


def punctured_simplex(A: SubsetMask) -> BitVectorSet:
    return BitVectorSet(tuple(submasks(A.bits)[1:]), A.m)


def psi(v: int, A: SubsetMask) -> int:
    """1 if Supp(v) misses A, else 0."""
    return 0 if v & A.bits else 1


def character_sum(v: int, A: SubsetMask) -> int:
    """Sum of (-1)^(v.t) over t in the simplex of A, by direct enumeration."""
    return sum(-1 if (v & t).bit_count() & 1 else 1 for t in submasks(A.bits))


def complex_size_formula(kind: str, A_or_B: SubsetMask, C: SubsetMask | None = None) -> int:
    """Cardinality of a complex from set sizes alone."""
    if kind == "simplex":
        return 1 << len(A_or_B)
    if kind == "punctured_simplex":
        return (1 << len(A_or_B)) - 1
    assert C is not None
    b, c, bc = len(A_or_B), len(C), len(A_or_B & C)
    if kind == "two_gen":
        return (1 << b) + (1 << c) - (1 << bc)
    if kind == "punctured_two_gen":
        return (1 << b) + (1 << c) - (1 << (bc + 1))
    if kind == "complement_two_gen":
        return (1 << A_or_B.m) - (1 << b) - (1 << c) + (1 << bc)
    raise ValueError(f"unknown complex kind {kind!r}")
