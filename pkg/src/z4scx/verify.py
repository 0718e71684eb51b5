"""Parameter sweeps and the closed-form vs. enumeration comparison."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from z4scx.codegen import (
    Family,
    PreconditionError,
    QuaternaryCode,
    build_defining_set,
    check_preconditions,
    generate_code,
)
from z4scx.simplicial import SubsetMask
from z4scx.spectra import (
    Cardinalities,
    ClosedFormError,
    WeightDistribution,
    evaluate_closed_form,
    lee_spectrum_bruteforce,
)

Triple = tuple[SubsetMask, SubsetMask, SubsetMask]

# membership classes of a ground element: bit 0 -> in A, bit 1 -> in B, bit 2 -> in C
_ALL_CLASSES = tuple(range(8))
_F2_CLASSES = (0, 1, 2, 4, 6)


def _valid(family: Family, m: int, A: SubsetMask, B: SubsetMask, C: SubsetMask) -> bool:
    try:
        check_preconditions(family, m, A, B, C)
    except PreconditionError:
        return False
    return True


def parameter_space(family: Family | str, m: int) -> Iterator[Triple]:
    """Every (A, B, C) over [m] meeting the family hypotheses, in mask order."""
    family = Family(family)
    for a, b, c in itertools.product(range(1 << m), repeat=3):
        A, B, C = SubsetMask(a, m), SubsetMask(b, m), SubsetMask(c, m)
        if _valid(family, m, A, B, C):
            yield A, B, C


def _swap_bc(cls: int) -> int:
    return (cls & 1) | (cls >> 1 & 2) | (cls << 1 & 4)


def orbit_representatives(family: Family | str, m: int) -> Iterator[Triple]:
    """One triple per orbit of S_m acting on [m], also identifying B with C.

    Codes in one orbit are equivalent up to a coordinate permutation, so they
    share length, type and spectrum.
    """
    family = Family(family)
    classes = _F2_CLASSES if family is Family.F2 else _ALL_CLASSES
    k = len(classes)
    pos = {c: i for i, c in enumerate(classes)}
    for cuts in itertools.combinations(range(m + k - 1), k - 1):
        counts = [b - a - 1 for a, b in zip((-1,) + cuts, cuts + (m + k - 1,))]
        swapped = [0] * k
        for c, cnt in zip(classes, counts):
            swapped[pos[_swap_bc(c)]] = cnt
        if swapped < counts:
            continue
        masks = [0, 0, 0]
        elem = 0
        for c, cnt in zip(classes, counts):
            for _ in range(cnt):
                for j in range(3):
                    if c >> j & 1:
                        masks[j] |= 1 << elem
                elem += 1
        A, B, C = (SubsetMask(x, m) for x in masks)
        if _valid(family, m, A, B, C):
            yield A, B, C


@dataclass(frozen=True)
class Mismatch:
    family: Family
    m: int
    A: SubsetMask
    B: SubsetMask
    C: SubsetMask
    check: str
    expected: object
    actual: object

    def describe(self) -> str:
        return (
            f"{self.check} mismatch for {self.family.value} m={self.m} "
            f"A={self.A} B={self.B} C={self.C}: expected {self.expected}, got {self.actual}"
        )


@dataclass
class SweepResult:
    family: Family
    checked: int = 0
    degenerate: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


RowTable = Callable[[Cardinalities], list]


def check_instance(
    family: Family,
    m: int,
    A: SubsetMask,
    B: SubsetMask,
    C: SubsetMask,
    table: Optional[RowTable] = None,
    code: Optional[QuaternaryCode] = None,
) -> tuple[list[Mismatch], bool]:
    """Compare one parameter triple.  Returns (mismatches, degenerate flag)."""
    out: list[Mismatch] = []

    def bad(check, expected, actual):
        out.append(Mismatch(family, m, A, B, C, check, expected, actual))

    code = code or generate_code(build_defining_set(family, m, A, B, C))
    brute = lee_spectrum_bruteforce(code)
    try:
        cf = evaluate_closed_form(family, m, A, B, C, table)
    except ClosedFormError as exc:
        bad("spectrum", "a valid closed form", str(exc))
        return out, False
    if cf.distribution != brute:
        bad("spectrum", cf.distribution.as_dict(), brute.as_dict())
    if code.n != cf.n:
        bad("length", cf.n, code.n)
    degenerate = cf.degenerate
    actual = (code.k1, code.k2)
    # only the projective family has a documented exception to its type formula
    if not (degenerate and family is Family.F2) and actual != cf.nominal_type:
        bad("type", cf.nominal_type, actual)
    return out, degenerate


def verify_family(
    family: Family | str,
    m_max: int,
    m_min: int = 2,
    a_max: Optional[int] = None,
    table: Optional[RowTable] = None,
    stop_first: bool = False,
    checks: tuple[str, ...] = ("spectrum", "length", "type"),
) -> SweepResult:
    family = Family(family)
    result = SweepResult(family)
    for m in range(m_min, m_max + 1):
        for A, B, C in parameter_space(family, m):
            if a_max is not None and len(A) > a_max:
                continue
            found, degenerate = check_instance(family, m, A, B, C, table)
            result.checked += 1
            result.degenerate += degenerate
            found = [x for x in found if x.check in checks]
            result.mismatches.extend(found)
            if found and stop_first:
                return result
    return result


def spectrum_of(family: Family | str, m: int, A, B, C) -> WeightDistribution:
    return lee_spectrum_bruteforce(generate_code(build_defining_set(family, m, A, B, C)))
