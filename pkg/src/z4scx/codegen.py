"""Defining sets D = D1 + 2*D2 and the codes C_D they generate.

Three families are supported:

* ``F1``: D1 = simplex(A),            D2 = punctured_two_gen(B, C)
* ``F2``: D1 = simplex(A) minus zero, D2 = punctured_two_gen(B, C)
* ``F3``: D1 = simplex(A),            D2 = complement_two_gen(B, C)

The code is ``{(v . d)_{d in D} : v in Z4^m}``; it is enumerated over all
4^m messages and deduplicated.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from z4scx.simplicial import (
    BitVectorSet,
    SubsetMask,
    complement_two_gen,
    punctured_simplex,
    punctured_two_gen,
    simplex,
)
from z4scx.z4core import Z4Vector

ENUMERATION_CAP = 12
# rows of the prefix table materialised at once while sweeping messages
_PREFIX_ROWS = 6


class PreconditionError(ValueError):
    """A family hypothesis is violated by the requested parameters."""

    def __init__(self, hypothesis: str, detail: str = "") -> None:
        self.hypothesis = hypothesis
        msg = f"violated hypothesis: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class Family(str, enum.Enum):
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"

    @property
    def description(self) -> str:
        return {
            Family.F1: "D = simplex(A) + 2*(two-gen(B,C) minus simplex(B&C))",
            Family.F2: "D = (simplex(A) minus 0) + 2*(two-gen(B,C) minus simplex(B&C))",
            Family.F3: "D = simplex(A) + 2*(complement of two-gen(B,C))",
        }[self]


def _spread(bits: int) -> int:
    """Move bit i to bit 2i."""
    out = 0
    i = 0
    while bits:
        if bits & 1:
            out |= 1 << (2 * i)
        bits >>= 1
        i += 1
    return out


def column_key(d1: int, d2: int) -> int:
    """Base-4 value of d1 + 2*d2 with coordinate 1 as the least significant digit."""
    return _spread(d1) + 2 * _spread(d2)


@dataclass(frozen=True)
class DefiningSet:
    m: int
    columns: tuple[tuple[int, int], ...]
    family: Optional[Family] = None
    A: Optional[SubsetMask] = None
    B: Optional[SubsetMask] = None
    C: Optional[SubsetMask] = None

    def __post_init__(self) -> None:
        keys = [column_key(d1, d2) for d1, d2 in self.columns]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("columns must be distinct and in ascending base-4 order")

    @classmethod
    def from_columns(cls, m: int, columns: Iterable[Z4Vector | Sequence[int]]) -> "DefiningSet":
        """Hand-built defining set; each column is a length-m vector over Z4."""
        pairs = set()
        for col in columns:
            v = col if isinstance(col, Z4Vector) else Z4Vector.from_digits(col)
            if v.n != m:
                raise ValueError(f"column of length {v.n}, expected {m}")
            pairs.add((v.b, v.c))
        return cls(m, tuple(sorted(pairs, key=lambda p: column_key(*p))))

    @property
    def n(self) -> int:
        return len(self.columns)

    def column_vectors(self) -> list[Z4Vector]:
        return [Z4Vector(d1, d2, self.m) for d1, d2 in self.columns]

    def digit_strings(self) -> list[str]:
        return [str(v) for v in self.column_vectors()]

    def generator_matrix(self) -> np.ndarray:
        """m x n matrix over Z4; row i holds coordinate i of every column."""
        G = np.zeros((self.m, self.n), dtype=np.uint8)
        for j, (d1, d2) in enumerate(self.columns):
            for i in range(self.m):
                G[i, j] = (d1 >> i & 1) | (d2 >> i & 1) << 1
        return G

    def params(self) -> dict:
        return {
            "family": self.family.value if self.family else None,
            "m": self.m,
            "A": str(self.A) if self.A is not None else None,
            "B": str(self.B) if self.B is not None else None,
            "C": str(self.C) if self.C is not None else None,
        }


def check_preconditions(family: Family | str, m: int, A: SubsetMask, B: SubsetMask, C: SubsetMask) -> None:
    family = Family(family)
    for name, s in (("A", A), ("B", B), ("C", C)):
        if s.m != m:
            raise PreconditionError(f"{name} is a subset of [m]", f"{name} has m={s.m}, expected {m}")
    if m < 2:
        raise PreconditionError("m >= 2", f"m={m}")
    if family is Family.F1:
        if B.bits == C.bits:
            raise PreconditionError("B != C", f"B = C = {B}")
    elif family is Family.F2:
        if (A & (B | C)).bits:
            raise PreconditionError("A and (B union C) are disjoint", f"A={A}, B={B}, C={C}")
        if nominal_length(family, m, A, B, C) <= 1:
            raise PreconditionError("|D| > 1", f"|D| = {nominal_length(family, m, A, B, C)}")
    elif family is Family.F3:
        full = (1 << m) - 1
        if B.bits == full or C.bits == full:
            raise PreconditionError("two-gen(B,C) != Z_2^m", f"B={B}, C={C}")
    else:  # pragma: no cover
        raise ValueError(family)


def nominal_length(family: Family | str, m: int, A: SubsetMask, B: SubsetMask, C: SubsetMask) -> int:
    family = Family(family)
    a, b, c, bc = len(A), len(B), len(C), len(B & C)
    if family is Family.F1:
        return (1 << a) * ((1 << b) + (1 << c) - (1 << (bc + 1)))
    if family is Family.F2:
        return ((1 << a) - 1) * ((1 << b) + (1 << c) - (1 << (bc + 1)))
    return (1 << a) * ((1 << m) - (1 << b) - (1 << c) + (1 << bc))


def nominal_type(family: Family | str, m: int, A: SubsetMask, B: SubsetMask, C: SubsetMask) -> tuple[int, int]:
    """(k1, k2) claimed for the family before any degenerate-case adjustment."""
    family = Family(family)
    if family is Family.F1:
        return len(A), len((B | C) - A)
    if family is Family.F2:
        return len(A), len(B | C)
    return len(A), m - len(A)


def build_defining_set(family: Family | str, m: int, A: SubsetMask, B: SubsetMask, C: SubsetMask) -> DefiningSet:
    family = Family(family)
    check_preconditions(family, m, A, B, C)
    if family is Family.F1:
        D1, D2 = simplex(A), punctured_two_gen(B, C)
    elif family is Family.F2:
        D1, D2 = punctured_simplex(A), punctured_two_gen(B, C)
    else:
        D1, D2 = simplex(A), complement_two_gen(B, C)
    columns = sorted(((d1, d2) for d1 in D1 for d2 in D2), key=lambda p: column_key(*p))
    ds = DefiningSet(m, tuple(columns), family, A, B, C)
    expected = nominal_length(family, m, A, B, C)
    if ds.n != expected:  # pragma: no cover - guarded by tests
        raise AssertionError(f"|D| = {ds.n} but length formula gives {expected}")
    return ds


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of rows given as int bitmasks."""
    basis: list[int] = []
    for r in rows:
        for v in basis:
            r = min(r, r ^ v)
        if r:
            basis.append(r)
    return len(basis)


def row_mask(row: np.ndarray) -> int:
    """Pack a 0/1 numpy row into an int with bit j for column j."""
    packed = np.packbits(np.asarray(row, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def code_type(generator: np.ndarray, size: int) -> tuple[int, int]:
    """(k1, k2) from the residue rank of the generator and the code size."""
    if size < 1 or size & (size - 1):
        raise ValueError(f"code size {size} is not a power of two")
    k1 = gf2_rank(row_mask(r & 1) for r in np.asarray(generator))
    k2 = size.bit_length() - 1 - 2 * k1
    if k2 < 0:
        raise ValueError(f"size {size} too small for residue rank {k1}")
    return k1, k2


def _span_table(G: np.ndarray) -> np.ndarray:
    """All Z4 combinations of the rows of G, message digit i varying slowest last."""
    n = G.shape[1]
    table = np.zeros((1, n), dtype=np.uint8)
    for row in G:
        table = np.concatenate([(table + x * row) & 3 for x in range(4)])
    return table


def packed_keys(words: np.ndarray) -> np.ndarray:
    """One opaque hashable key per row: the packed b-plane and c-plane."""
    planes = np.hstack(
        [np.packbits(words & 1, axis=1), np.packbits(words >> 1, axis=1)]
    )
    planes = np.ascontiguousarray(planes)
    return planes.view(np.dtype((np.void, planes.shape[1]))).ravel()


def _dedupe(words: np.ndarray) -> np.ndarray:
    keys = packed_keys(words)
    _, idx = np.unique(keys, return_index=True)
    return words[np.sort(idx)]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("Z4SCX_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True, eq=False)
class QuaternaryCode:
    m: int
    generator: np.ndarray
    codewords: np.ndarray
    k1: int
    k2: int
    defining_set: Optional[DefiningSet] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def size(self) -> int:
        return self.codewords.shape[0]

    @cached_property
    def _keys(self) -> frozenset:
        if self.n == 0:
            return frozenset({b""})
        return frozenset(k.tobytes() for k in packed_keys(self.codewords))

    def __contains__(self, word: Z4Vector | Sequence[int]) -> bool:
        digits = word.digits() if isinstance(word, Z4Vector) else list(word)
        if len(digits) != self.n:
            return False
        if self.n == 0:
            return True
        row = np.asarray(digits, dtype=np.uint8).reshape(1, -1)
        return packed_keys(row)[0].tobytes() in self._keys

    def vectors(self) -> list[Z4Vector]:
        return [Z4Vector.from_digits(row) for row in self.codewords]

    def generator_rows(self) -> list[Z4Vector]:
        return [Z4Vector.from_digits(row) for row in self.generator]


def generate_code(D: DefiningSet) -> QuaternaryCode:
    """Enumerate C_D over all 4^m messages and deduplicate."""
    if D.m > ENUMERATION_CAP:
        raise ValueError(f"exhaustive enumeration limited to m <= {ENUMERATION_CAP}; got m={D.m}")
    G = D.generator_matrix()
    n = G.shape[1]
    if n == 0:
        words = np.zeros((1, 0), dtype=np.uint8)
    elif D.m <= _PREFIX_ROWS:
        words = _dedupe(_span_table(G))
    else:
        # prefix table over the first rows, shifted by every combination of the rest
        prefix = _span_table(G[:_PREFIX_ROWS])
        offsets = _span_table(G[_PREFIX_ROWS:])

        def chunk(off: np.ndarray) -> np.ndarray:
            return _dedupe((prefix + off) & 3)

        if _threads() > 1:
            with ThreadPoolExecutor(_threads()) as pool:
                parts = list(pool.map(chunk, offsets))
        else:
            parts = [chunk(off) for off in offsets]
        words = _dedupe(np.concatenate(parts))
    k1, k2 = code_type(G, words.shape[0])
    return QuaternaryCode(D.m, G, words, k1, k2, D)
