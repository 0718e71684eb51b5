"""Structural predicates on quaternary codes and their binary Gray images."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Optional, Union

import numpy as np

from z4scx.codegen import DefiningSet, QuaternaryCode, gf2_rank, row_mask
from z4scx.spectra import WeightDistribution, lee_spectrum_bruteforce, min_lee_distance
from z4scx.z4core import LEE

DUAL_ORACLE_MAX_N = 10
MINIMALITY_MAX_SIZE = 1 << 16


# ------------------------------------------------------------------ projectivity


def is_projective_generator(G: np.ndarray) -> bool:
    """Column test: each column has a unit entry and no column is +-1 times another."""
    G = np.asarray(G, dtype=np.uint8) & 3
    if G.shape[1] == 0:
        raise ValueError("empty generator matrix")
    if not (G & 1).any(axis=0).all():
        return False
    seen: set[bytes] = set()
    for col in G.T:
        key, neg = col.tobytes(), ((4 - col) & 3).astype(np.uint8).tobytes()
        if key in seen or neg in seen:
            return False
        seen.add(key)
    return True


def is_projective_columns(D: DefiningSet) -> bool:
    if D.n == 0:
        raise ValueError("empty defining set")
    cols = set(D.columns)
    for d1, d2 in D.columns:
        if not d1:
            return False
        # -(d1 + 2 d2) = d1 + 2 (d1 ^ d2) bitwise on the two planes
        if (d1, d2 ^ d1) in cols:
            return False
    return True


def _lane_word(col: np.ndarray) -> int:
    """Pack a column over Z4 into 4-bit lanes of one integer."""
    return sum(int(x) << (4 * i) for i, x in enumerate(col))


def dual_distance_oracle(code: QuaternaryCode) -> Optional[int]:
    """Minimum Lee weight of the dual code; None if the dual is {0}.

    Sweeps all of Z4^n, one coordinate at a time, carrying the syndrome
    sum_j u_j G_j (4-bit lanes, reduced mod 4) and the Lee weight of u.
    """
    n, m = code.n, code.m
    if n > DUAL_ORACLE_MAX_N:
        raise ValueError(f"dual oracle limited to n <= {DUAL_ORACLE_MAX_N}; got n={n}")
    if m > 16:
        raise ValueError("syndrome lanes support m <= 16")
    if n == 0:
        return None
    mask = np.uint64(int("3" * m, 16)) if m else np.uint64(0)
    syn = np.zeros(1, dtype=np.uint64)
    wt = np.zeros(1, dtype=np.int16)
    for col in np.asarray(code.generator, dtype=np.uint8).T:
        multiples = [np.uint64(_lane_word((x * col) & 3)) for x in range(4)]
        syn = np.concatenate([(syn + mul) & mask for mul in multiples])
        wt = np.concatenate([wt + LEE[x] for x in range(4)])
    hits = wt[(syn == 0) & (wt > 0)]
    return int(hits.min()) if hits.size else None


# ---------------------------------------------------------------------- Plotkin


def plotkin_check(n: int, size: int, d_L: Optional[int]) -> tuple[int, bool]:
    if size < 2:
        raise ValueError("Plotkin bound needs at least two codewords")
    bound = size * n // (size - 1)
    return bound, d_L == bound


# ---------------------------------------------------------------- Gray images


@dataclass(frozen=True, eq=False)
class BinaryCode:
    n: int
    words: np.ndarray  # distinct rows over {0,1}
    linear: bool
    dimension: Optional[int]

    @classmethod
    def from_words(cls, words: np.ndarray) -> "BinaryCode":
        words = np.asarray(words, dtype=np.uint8)
        n = words.shape[1]
        size = words.shape[0]
        rank = gf2_rank(row_mask(r) for r in words) if n else 0
        has_zero = bool((~words.any(axis=1)).any()) if size else False
        linear = has_zero and size == 1 << rank
        return cls(n, words, linear, rank if linear else None)

    @property
    def size(self) -> int:
        return self.words.shape[0]

    @property
    def spectrum(self) -> WeightDistribution:
        return WeightDistribution.from_weights(self.words.sum(axis=1).tolist())

    @property
    def min_distance(self) -> Optional[int]:
        return min_lee_distance(self.spectrum)

    def params(self) -> tuple[int, Optional[int], Optional[int]]:
        return self.n, self.dimension, self.min_distance


def gray_image(code: QuaternaryCode) -> BinaryCode:
    w = code.codewords
    c = w >> 1
    return BinaryCode.from_words(np.hstack([c, c ^ (w & 1)]))


def gray_linear_pairtest(code: QuaternaryCode) -> bool:
    """Generator-row version of the 2(c*d) membership criterion."""
    rows = np.asarray(code.generator, dtype=np.uint8) & 3
    for i, j in combinations_with_replacement(range(rows.shape[0]), 2):
        prod = (2 * ((rows[i] * rows[j]) & 3)) & 3
        if prod.tolist() not in code:
            return False
    return True


def gray_linear_exhaustive(code: QuaternaryCode) -> bool:
    """2(c*d) in C for every pair of codewords.  Quadratic; meant as an oracle."""
    W = code.codewords & 1  # 2(c*d) only sees residues
    for i in range(W.shape[0]):
        prods = (2 * (W[i] & W[i:])).astype(np.uint8)
        for row in prods:
            if row.tolist() not in code:
                return False
    return True


# ------------------------------------------------------------------- minimality


def _packed(words: np.ndarray) -> np.ndarray:
    n = words.shape[1]
    pad = (-n) % 64
    padded = np.pad(words, ((0, 0), (0, pad)))
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64)


def is_minimal_binary(code: BinaryCode) -> bool:
    """True iff no nonzero codeword's support strictly contains another's."""
    if not code.linear:
        raise ValueError("minimality is only defined here for linear codes")
    if code.size > MINIMALITY_MAX_SIZE:
        raise ValueError(f"code too large for the cover scan ({code.size} words)")
    P = _packed(code.words)
    P = P[P.any(axis=1)]
    for i in range(P.shape[0]):
        inside = ~(P & ~P[i]).any(axis=1)
        # the row itself is always inside; anything else is a strictly smaller support
        if inside.sum() > 1:
            return False
    return True


def ab_condition(spectrum: Union[WeightDistribution, Mapping[int, int], Iterable[int]]) -> bool:
    if isinstance(spectrum, WeightDistribution):
        weights = spectrum.nonzero_weights()
    elif isinstance(spectrum, Mapping):
        weights = [w for w, f in spectrum.items() if w and f]
    else:
        weights = [w for w in spectrum if w]
    if not weights:
        raise ValueError("no nonzero weights")
    return 2 * min(weights) > max(weights)


def griesmer_defect(n: int, k: int, d: int) -> int:
    if k < 1 or d < 1:
        raise ValueError(f"need k >= 1 and d >= 1; got k={k}, d={d}")
    return n - sum(-(-d // (1 << i)) for i in range(k))


# ----------------------------------------------------------------------- report


@dataclass(frozen=True)
class AnalysisReport:
    projective: bool
    projective_method: str
    plotkin_bound: Optional[int]
    plotkin_optimal: bool
    gray_linear: bool
    gray_dimension: Optional[int]
    minimal: Optional[bool]
    ab: Optional[bool]
    griesmer_defect: Optional[int]

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def analyze(
    code: QuaternaryCode,
    spectrum: Optional[WeightDistribution] = None,
    minimal_max_size: int = MINIMALITY_MAX_SIZE,
) -> AnalysisReport:
    spectrum = spectrum or lee_spectrum_bruteforce(code)
    d_L = min_lee_distance(spectrum)
    if code.n == 0:
        projective, method = False, "column-criterion"
    elif code.defining_set is not None:
        projective, method = is_projective_columns(code.defining_set), "column-criterion"
    elif code.n <= DUAL_ORACLE_MAX_N:
        dual = dual_distance_oracle(code)
        projective, method = dual is None or dual >= 3, "dual-oracle"
    else:
        projective, method = is_projective_generator(code.generator), "column-criterion"

    bound, optimal = plotkin_check(code.n, code.size, d_L) if code.size >= 2 else (None, False)

    linear = gray_linear_pairtest(code)
    dim = minimal = ab = defect = None
    if linear:
        image = gray_image(code)
        dim = image.dimension
        if d_L is not None:
            if image.size <= minimal_max_size:
                minimal = is_minimal_binary(image)
            ab = ab_condition(spectrum)
            if dim:
                defect = griesmer_defect(image.n, dim, d_L)
    return AnalysisReport(projective, method, bound, optimal, linear, dim, minimal, ab, defect)
