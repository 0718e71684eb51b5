"""Lee weight distributions: exhaustive and closed form.

The closed-form evaluators take only set cardinalities.  Every row is
computed in exact rational arithmetic because some weights carry a factor
``2^(|A|-1)``; a non-integral weight is only tolerated on rows whose
frequency vanishes.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Union

import numpy as np

from z4scx.codegen import (
    ENUMERATION_CAP,
    Family,
    QuaternaryCode,
    check_preconditions,
    nominal_length,
    nominal_type,
)
from z4scx.simplicial import SubsetMask
from z4scx.z4core import LEE


class ClosedFormError(ArithmeticError):
    """A table row evaluated to a negative frequency or a fractional weight."""


@dataclass(frozen=True)
class WeightDistribution:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        weights = [w for w, _ in self.pairs]
        if weights != sorted(set(weights)):
            raise ValueError("weights must be strictly ascending")
        if any(f <= 0 for _, f in self.pairs):
            raise ValueError("frequencies must be positive")

    @classmethod
    def from_mapping(cls, freqs: Mapping[int, int]) -> "WeightDistribution":
        return cls(tuple(sorted((int(w), int(f)) for w, f in freqs.items() if f)))

    @classmethod
    def from_weights(cls, weights: Iterable[int]) -> "WeightDistribution":
        return cls.from_mapping(Counter(int(w) for w in weights))

    @property
    def total(self) -> int:
        return sum(f for _, f in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def __getitem__(self, weight: int) -> int:
        return self.as_dict().get(weight, 0)

    def nonzero_weights(self) -> list[int]:
        return [w for w, _ in self.pairs if w]

    def to_json(self) -> str:
        return json.dumps({str(w): f for w, f in self.pairs})

    @classmethod
    def from_json(cls, text: str) -> "WeightDistribution":
        return cls.from_mapping({int(w): f for w, f in json.loads(text).items()})

    def csv_rows(self) -> list[tuple[int, int]]:
        return list(self.pairs)


def lee_spectrum_bruteforce(code: QuaternaryCode) -> WeightDistribution:
    lee = np.asarray(LEE, dtype=np.int64)
    weights = lee[code.codewords].sum(axis=1) if code.n else np.zeros(code.size, dtype=np.int64)
    values, counts = np.unique(weights, return_counts=True)
    return WeightDistribution(tuple(zip(values.tolist(), counts.tolist())))


def min_lee_distance(dist: WeightDistribution) -> Optional[int]:
    """Smallest nonzero weight, or None when the code is {0}."""
    nz = dist.nonzero_weights()
    return nz[0] if nz else None


def _monomial(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def lee_enumerator_string(dist: WeightDistribution, n: int) -> str:
    terms = []
    for w, f in dist.pairs:
        if w > 2 * n:
            raise ValueError(f"weight {w} exceeds 2n = {2 * n}")
        body = _monomial("x", w) + _monomial("y", 2 * n - w)
        coef = "" if f == 1 and body else str(f)
        terms.append(coef + body)
    return " + ".join(terms)


# ---------------------------------------------------------------- closed form


def _p(e: int) -> Fraction:
    return Fraction(2) ** e


@dataclass(frozen=True)
class Cardinalities:
    m: int
    a: int
    b: int
    c: int
    bc: int
    AuB: int
    AuC: int
    BuC: int
    AuBC: int  # |A u (B n C)|
    U: int  # |A u B u C|
    ab: int
    ac: int

    @classmethod
    def of(cls, m: int, A: SubsetMask, B: SubsetMask, C: SubsetMask) -> "Cardinalities":
        return cls(
            m=m,
            a=len(A),
            b=len(B),
            c=len(C),
            bc=len(B & C),
            AuB=len(A | B),
            AuC=len(A | C),
            BuC=len(B | C),
            AuBC=len(A | (B & C)),
            U=len(A | B | C),
            ab=len(A & B),
            ac=len(A & C),
        )


Row = tuple[Fraction, Fraction]


def rows_f1(k: Cardinalities) -> list[Row]:
    a, b, c, bc, U = k.a, k.b, k.c, k.bc, k.U
    p = _p
    core = p(b) + p(c) - p(bc + 1)
    return [
        (p(a - 1) * core, 2 * (p(U - k.BuC) - 1)),
        (p(a) * core, p(a + U) + p(U - k.AuBC) - p(U - bc + 1)),
        (p(a + c), p(U - k.AuB) - 1),
        (p(a - 1) * (p(b) + p(c + 1) - p(bc + 1)), 2 * (p(U - b) - p(U - k.AuB) - p(U - k.BuC) + 1)),
        (p(a + b), p(U - k.AuC) - 1),
        (p(a - 1) * (p(b + 1) + p(c) - p(bc + 1)), 2 * (p(U - c) - p(U - k.AuC) - p(U - k.BuC) + 1)),
        (p(a) * (p(b) + p(c)), p(U - k.AuBC) - p(U - k.AuB) - p(U - k.AuC) + 1),
        (
            p(a) * (p(b) + p(c) - p(bc)),
            2 * (p(U - bc) - p(U - k.AuBC) - p(U - b) - p(U - c)
                 + p(U - k.AuB) + p(U - k.AuC) + p(U - k.BuC) - 1),
        ),
    ]


def rows_f2(k: Cardinalities) -> list[Row]:
    a, b, c, bc, U = k.a, k.b, k.c, k.bc, k.U
    p = _p
    core = p(b) + p(c) - p(bc + 1)
    return [
        (p(a - 1) * core, 2 * (p(U - k.BuC) - 1)),
        (p(a) * core, p(a + U - k.BuC) - p(U - k.BuC + 1) + 1),
        (p(a + c) - p(c), p(U - k.AuB) - 1),
        (p(a - 1) * (p(b) + p(c + 1) - p(bc + 1)) - p(c),
         2 * (p(U - b) - p(U - k.AuB) - p(U - k.BuC) + 1)),
        (p(a) * core - p(c),
         p(U + a - b) - p(U + a - k.BuC) - p(U - b + 1) + p(U - k.AuB) + p(U - k.BuC + 1) - 1),
        (p(a + b) - p(b), p(U - k.AuC) - 1),
        (p(a - 1) * (p(b + 1) + p(c) - p(bc + 1)) - p(b),
         2 * (p(U - c) - p(U - k.AuC) - p(U - k.BuC) + 1)),
        (p(a) * core - p(b),
         p(U + a - c) - p(U + a - k.BuC) - p(U - c + 1) + p(U - k.AuC) + p(U - k.BuC + 1) - 1),
        (p(a) * (p(b) + p(c)) - p(b) - p(c), p(U - k.AuBC) - p(U - k.AuB) - p(U - k.AuC) + 1),
        (
            p(a) * (p(b) + p(c) - p(bc)) - p(b) - p(c),
            2 * (p(U - bc) - p(U - k.AuBC) - p(U - b) - p(U - c)
                 + p(U - k.AuB) + p(U - k.AuC) + p(U - k.BuC) - 1),
        ),
        (
            p(a) * core - p(b) - p(c),
            p(U + a - bc) - p(U + a - b) - p(U + a - c) + p(U + a - k.BuC)
            - p(U - bc + 1) + p(U - b + 1) + p(U - k.AuBC) + p(U - c + 1)
            - p(U - k.AuB) - p(U - k.AuC) - p(U - k.BuC + 1) + 1,
        ),
        ((p(a) - 1) * core, p(U + a) - p(U + a - bc)),
    ]


def rows_f3(k: Cardinalities) -> list[Row]:
    m, a, b, c, bc, U = k.m, k.a, k.b, k.c, k.bc, k.U
    p = _p
    return [
        (p(m + a), p(m - U) - 1),
        (p(a - 1) * (p(m + 1) - p(b) - p(c) + p(bc)), 2 * (p(m - k.BuC) - p(m - U))),
        (p(a) * (p(m) - p(c)), p(m - k.AuB) - p(m - U)),
        (p(a - 1) * (p(m + 1) - p(b) - p(c + 1) + p(bc)),
         2 * (p(m - b) - p(m - k.AuB) - p(m - k.BuC) + p(m - U))),
        (p(a) * (p(m) - p(b)), p(m - k.AuC) - p(m - U)),
        (p(a - 1) * (p(m + 1) - p(b + 1) - p(c) + p(bc)),
         2 * (p(m - c) - p(m - k.AuC) - p(m - k.BuC) + p(m - U))),
        (p(a) * (p(m) - p(b) - p(c)), p(m - k.AuBC) - p(m - k.AuB) - p(m - k.AuC) + p(m - U)),
        (
            p(a - 1) * (p(m + 1) - p(b + 1) - p(c + 1) + p(bc)),
            2 * (p(m - bc) - p(m - k.AuBC) - p(m - b) - p(m - c)
                 + p(m - k.AuB) + p(m - k.AuC) + p(m - k.BuC) - p(m - U)),
        ),
        (p(a) * (p(m) - p(b) - p(c) + p(bc)), p(m + a) - p(m - bc + 1) + p(m - k.AuBC)),
    ]


# Specialised tables.  Each takes the cardinalities of the parent family.


def rows_f1_c_equals_a(k: Cardinalities) -> list[Row]:
    a, b, ab, AuB = k.a, k.b, k.ab, k.AuB
    p = _p
    return [
        (p(a) * (p(a) + p(b) - p(ab + 1)), p(AuB + a) + p(AuB - a) - p(AuB - ab + 1)),
        (p(a - 1) * (p(a + 1) + p(b) - p(ab + 1)), 2 * (p(AuB - b) - 1)),
        (p(a + b), p(AuB - a) - 1),
        (p(a) * (p(a) + p(b) - p(ab)), 2 * (p(AuB - ab) - p(AuB - a) - p(AuB - b) + 1)),
    ]


def rows_f1_nested(k: Cardinalities) -> list[Row]:
    """B strictly inside C and A inside C."""
    a, b, c, AuB = k.a, k.b, k.c, k.AuB
    p = _p
    return [
        (p(a + c), p(c - AuB) - 1),
        (p(a - 1) * (p(c + 1) - p(b)), 2 * (p(c - b) - p(c - AuB))),
        (p(a) * (p(c) - p(b)), p(a + c) + p(c - AuB) - p(c - b + 1)),
    ]


def rows_f2_nested(k: Cardinalities) -> list[Row]:
    """B strictly inside C."""
    a, b, c, AuB, AuC = k.a, k.b, k.c, k.AuB, k.AuC
    p = _p
    return [
        (p(a - 1) * (p(c) - p(b)), 2 * (p(AuC - c) - 1)),
        (p(a) * (p(c) - p(b)), p(a + AuC - c) - p(AuC - c + 1) + 1),
        (p(a + c) - p(c), p(AuC - AuB) - 1),
        (p(a - 1) * (p(c + 1) - p(b)) - p(c), 2 * (p(AuC - b) - p(AuC - AuB) - p(AuC - c) + 1)),
        (p(a) * (p(c) - p(b)) - p(c),
         p(AuC + a - b) - p(AuC + a - c) - p(AuC - b + 1) + p(AuC - AuB) + p(AuC - c + 1) - 1),
        ((p(a) - 1) * (p(c) - p(b)), p(AuC + a) - p(AuC + a - b)),
    ]


def rows_f3_c_equals_a(k: Cardinalities) -> list[Row]:
    m, a, b, ab, AuB = k.m, k.a, k.b, k.ab, k.AuB
    p = _p
    return [
        (p(m + a), p(m - AuB) - 1),
        (p(a - 1) * (p(m + 1) - p(a + 1) - p(b) + p(ab)), 2 * (p(m - b) - p(m - AuB))),
        (p(a) * (p(m) - p(b)), p(m - a) - p(m - AuB)),
        (p(a - 1) * (p(m + 1) - p(a + 1) - p(b + 1) + p(ab)),
         2 * (p(m - ab) - p(m - a) - p(m - b) + p(m - AuB))),
        (p(a) * (p(m) - p(a) - p(b) + p(ab)), p(m + a) - p(m - ab + 1) + p(m - a)),
    ]


FAMILY_TABLES = {Family.F1: rows_f1, Family.F2: rows_f2, Family.F3: rows_f3}

SPECIALISED_TABLES = {
    "f1:c=a": rows_f1_c_equals_a,
    "f1:nested": rows_f1_nested,
    "f2:nested": rows_f2_nested,
    "f3:c=a": rows_f3_c_equals_a,
}


def aggregate_rows(rows: Iterable[Row]) -> tuple[WeightDistribution, int]:
    """Sum equal weights and drop empty rows.

    A row of weight 0 means the nominal kernel is too small: every codeword
    was counted ``2^j`` times where ``A_0 = 2^j``.  Frequencies are divided
    through by that multiplicity, which is returned alongside.
    """
    freqs: Counter[int] = Counter({0: 1})
    for w, f in rows:
        if f == 0:
            continue
        if f < 0 or f.denominator != 1:
            raise ClosedFormError(f"row ({w}, {f}) has an invalid frequency")
        if w.denominator != 1 or w < 0:
            raise ClosedFormError(f"row ({w}, {f}) has a non-integral weight")
        freqs[int(w)] += int(f)
    mult = freqs[0]
    if mult & (mult - 1):
        raise ClosedFormError(f"frequency of weight 0 is {mult}, not a power of two")
    if any(f % mult for f in freqs.values()):
        raise ClosedFormError(f"frequencies not divisible by the zero-weight multiplicity {mult}")
    return WeightDistribution.from_mapping({w: f // mult for w, f in freqs.items()}), mult


@dataclass(frozen=True)
class ClosedForm:
    distribution: WeightDistribution
    n: int
    nominal_type: tuple[int, int]
    effective_type: tuple[int, int]
    oracle_checkable: bool

    @property
    def degenerate(self) -> bool:
        return self.nominal_type != self.effective_type


def evaluate_closed_form(
    family: Family | str,
    m: int,
    A: SubsetMask,
    B: SubsetMask,
    C: SubsetMask,
    table: Optional[Callable[[Cardinalities], list[Row]]] = None,
) -> ClosedForm:
    """Evaluate the family's row table; ``table`` substitutes another row set."""
    family = Family(family)
    check_preconditions(family, m, A, B, C)
    k = Cardinalities.of(m, A, B, C)
    dist, mult = aggregate_rows((table or FAMILY_TABLES[family])(k))
    k1, k2 = nominal_type(family, m, A, B, C)
    effective = (k1, k2 - (mult.bit_length() - 1))
    return ClosedForm(
        distribution=dist,
        n=nominal_length(family, m, A, B, C),
        nominal_type=(k1, k2),
        effective_type=effective,
        oracle_checkable=m <= ENUMERATION_CAP,
    )


def lee_spectrum_closed_form(family: Family | str, m: int, A: SubsetMask, B: SubsetMask, C: SubsetMask) -> WeightDistribution:
    return evaluate_closed_form(family, m, A, B, C).distribution


def specialised_spectrum(name: str, m: int, A: SubsetMask, B: SubsetMask, C: SubsetMask) -> WeightDistribution:
    return aggregate_rows(SPECIALISED_TABLES[name](Cardinalities.of(m, A, B, C)))[0]


def _exact(x: Fraction) -> Union[int, Fraction]:
    return int(x) if x.denominator == 1 else x


def f1_c_equals_a_min_distance(A: SubsetMask, B: SubsetMask) -> Union[int, Fraction]:
    """Piecewise closed form for d_L when C = A, evaluated literally (no rounding)."""
    a, b, ab = len(A), len(B), len(A & B)
    if (1 << (a + 1)) - (1 << (ab + 1)) <= 1 << b:
        return _exact(_p(a - 1) * ((1 << (a + 1)) + (1 << b) - (1 << (ab + 1))))
    return 1 << (a + b)


def f3_c_equals_a_min_distance(m: int, A: SubsetMask, B: SubsetMask) -> Union[int, Fraction]:
    a, b, ab = len(A), len(B), len(A & B)
    proper = (A.issubset(B) or B.issubset(A)) and A != B
    if proper:
        return _exact(_p(a - 1) * ((1 << (m + 1)) - (1 << (a + 1)) - (1 << (b + 1)) + (1 << ab)))
    return (1 << a) * ((1 << m) - (1 << a) - (1 << b) + (1 << ab))
