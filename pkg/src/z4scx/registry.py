"""Code records, the best-known table, verdicts, parameter search and reports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Union

from z4scx.analysis import analyze, is_projective_columns, plotkin_check
from z4scx.codegen import ENUMERATION_CAP, Family, build_defining_set, generate_code, nominal_length
from z4scx.simplicial import SubsetMask, parse_subset
from z4scx.spectra import (
    evaluate_closed_form,
    lee_spectrum_bruteforce,
    min_lee_distance,
)
from z4scx.verify import orbit_representatives

DEFAULT_COVERAGE = 128
BEST_KNOWN_HEADER = ["n", "k1", "k2", "dL", "source"]


class TableError(ValueError):
    pass


# ---------------------------------------------------------------- best-known db


@dataclass(frozen=True)
class BestKnownEntry:
    n: int
    k1: int
    k2: int
    dL: int
    source: str

    @property
    def key(self) -> tuple[int, int, int]:
        return self.n, self.k1, self.k2


@dataclass(frozen=True)
class BestKnownTable:
    entries: dict
    coverage: int = DEFAULT_COVERAGE

    def get(self, n: int, k1: int, k2: int) -> Optional[BestKnownEntry]:
        return self.entries.get((n, k1, k2))

    def __len__(self) -> int:
        return len(self.entries)


def parse_best_known(text: str, coverage: int = DEFAULT_COVERAGE, name: str = "<table>") -> BestKnownTable:
    lines = text.splitlines()
    if not lines or [h.strip() for h in lines[0].split(",")] != BEST_KNOWN_HEADER:
        raise TableError(f"{name}:1: header must be {','.join(BEST_KNOWN_HEADER)}")
    entries: dict = {}
    for lineno, row in enumerate(csv.reader(lines[1:]), start=2):
        if not row or all(not x.strip() for x in row):
            continue
        if len(row) != 5:
            raise TableError(f"{name}:{lineno}: expected 5 fields, got {len(row)}")
        try:
            n, k1, k2, d = (int(x) for x in row[:4])
        except ValueError:
            raise TableError(f"{name}:{lineno}: non-integer field in {row[:4]}") from None
        if n < 1 or k1 < 0 or k2 < 0 or d < 1:
            raise TableError(f"{name}:{lineno}: out-of-range values {row[:4]}")
        entry = BestKnownEntry(n, k1, k2, d, row[4].strip())
        if entry.key in entries:
            raise TableError(f"{name}:{lineno}: duplicate key {entry.key}")
        entries[entry.key] = entry
    return BestKnownTable(entries, coverage)


def load_best_known(path: Union[str, Path, None] = None, coverage: int = DEFAULT_COVERAGE) -> BestKnownTable:
    """Read a best-known CSV; with no path, the bundled snapshot."""
    if path is None:
        text = resources.files("z4scx.data").joinpath("best_known.csv").read_text(encoding="utf-8")
        return parse_best_known(text, coverage, "best_known.csv")
    return parse_best_known(Path(path).read_text(encoding="utf-8"), coverage, str(path))


# --------------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class Verdict:
    kind: str  # new | improved | best-known | dominated | unknown
    best: Optional[int] = None

    KINDS = ("new", "improved", "best-known", "dominated", "unknown")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown verdict {self.kind!r}")

    def __str__(self) -> str:
        if self.kind in ("improved", "dominated", "best-known") and self.best is not None:
            return f"{self.kind} (d_L^best={self.best})"
        return self.kind

    def to_dict(self) -> dict:
        return {"kind": self.kind, "best": self.best}


def classify_params(n: int, k1: int, k2: int, dL: Optional[int], table: BestKnownTable) -> Verdict:
    if n > table.coverage:
        return Verdict("unknown")
    entry = table.get(n, k1, k2)
    if entry is None:
        return Verdict("new")
    if dL is None or dL < entry.dL:
        return Verdict("dominated", entry.dL)
    if dL > entry.dL:
        return Verdict("improved", entry.dL)
    return Verdict("best-known", entry.dL)


# ---------------------------------------------------------------------- records


@dataclass(frozen=True)
class Flags:
    projective: Optional[bool] = None
    plotkin_optimal: Optional[bool] = None
    gray_linear: Optional[bool] = None
    minimal: Optional[bool] = None


@dataclass(frozen=True)
class CodeRecord:
    family: str
    m: int
    A: str
    B: str
    C: str
    n: int
    k1: int
    k2: int
    dL: Optional[int]
    flags: Flags = field(default_factory=Flags)
    provenance: str = ""
    verified: bool = True
    verdict: Optional[Verdict] = None
    note: str = ""

    @property
    def type_string(self) -> str:
        return f"4^{self.k1} 2^{self.k2}"

    def key(self) -> tuple:
        return self.n, self.k1, self.k2, self.dL, self.provenance

    def to_dict(self) -> dict:
        d = asdict(self)
        d["flags"] = asdict(self.flags)
        d["verdict"] = self.verdict.to_dict() if self.verdict else None
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CodeRecord":
        d = dict(d)
        d["flags"] = Flags(**d.get("flags", {}))
        v = d.get("verdict")
        d["verdict"] = Verdict(**v) if v else None
        return cls(**d)


def classify(record: CodeRecord, table: BestKnownTable) -> Verdict:
    return classify_params(record.n, record.k1, record.k2, record.dL, table)


def provenance(family: Family | str, A: SubsetMask, B: SubsetMask, C: SubsetMask) -> str:
    """Descriptive tag for the specialised sub-family a triple belongs to."""
    family = Family(family)
    nested = (B.issubset(C) and B != C) or (C.issubset(B) and B != C)
    if family is Family.F1:
        if nested:
            inner, outer = (B, C) if B.issubset(C) else (C, B)
            if A.issubset(outer) and (A.bits or inner.bits):
                return "F1 (B⊊C, A⊆C)"
        if C == A or B == A:
            return "F1 (C=A)"
        return "F1"
    if family is Family.F2:
        return "F2 (B⊊C)" if nested else "F2"
    return "F3 (C=A)" if (C == A or B == A) else "F3"


def make_record(
    family: Family | str,
    m: int,
    A: SubsetMask,
    B: SubsetMask,
    C: SubsetMask,
    table: Optional[BestKnownTable] = None,
    enumerate_code: bool = True,
    minimal_max_size: int = 1 << 12,
    note: str = "",
) -> CodeRecord:
    """Build one record, by enumeration when allowed, else from the closed form."""
    family = Family(family)
    if enumerate_code and m <= ENUMERATION_CAP:
        code = generate_code(build_defining_set(family, m, A, B, C))
        dist = lee_spectrum_bruteforce(code)
        rep = analyze(code, dist, minimal_max_size=minimal_max_size)
        flags = Flags(rep.projective, rep.plotkin_optimal, rep.gray_linear, rep.minimal)
        n, k1, k2, d, verified = code.n, code.k1, code.k2, min_lee_distance(dist), True
    else:
        cf = evaluate_closed_form(family, m, A, B, C)
        d = min_lee_distance(cf.distribution)
        n, (k1, k2) = cf.n, cf.effective_type
        size = cf.distribution.total
        optimal = plotkin_check(n, size, d)[1] if size >= 2 else False
        proj = is_projective_columns(build_defining_set(family, m, A, B, C)) if n <= 1 << 16 else None
        flags, verified = Flags(proj, optimal), False
    rec = CodeRecord(family.value, m, str(A), str(B), str(C), n, k1, k2, d, flags,
                     provenance(family, A, B, C), verified, None, note)
    if table is not None:
        rec = replace(rec, verdict=classify(rec, table))
    return rec


# ----------------------------------------------------------------------- search

Constraint = Callable[[SubsetMask, SubsetMask, SubsetMask], bool]


def _nested(A, B, C):
    return B.issubset(C) and B != C


CONSTRAINTS: dict[str, Constraint] = {
    "nested-contains-a": lambda A, B, C: _nested(A, B, C) and A.issubset(C) and bool(A.bits or B.bits),
    "nested": _nested,
    "c-equals-a": lambda A, B, C: C == A,
}


def _orient(constraint: Optional[Constraint], A, B, C):
    """Return (B, C) in the orientation satisfying the constraint, or None."""
    if constraint is None:
        return B, C
    if constraint(A, B, C):
        return B, C
    if constraint(A, C, B):
        return C, B
    return None


def sort_key(r: CodeRecord) -> tuple:
    return (r.n, r.k1, r.k2, -(r.dL or 0), r.provenance, r.m, r.A, r.B, r.C)


@dataclass(frozen=True)
class SearchConfig:
    family: Family
    m_values: Sequence[int]
    constraint: Optional[str] = None
    enumerate_max_m: int = 7
    # skip enumeration when codewords * length would exceed this many digits
    enumerate_budget: int = 1 << 26
    projective_only: bool = False


def search(config: SearchConfig, table: Optional[BestKnownTable] = None) -> list[CodeRecord]:
    family = Family(config.family)
    rule = CONSTRAINTS[config.constraint] if config.constraint else None
    seen: dict[tuple, CodeRecord] = {}
    for m in config.m_values:
        for A, B, C in orbit_representatives(family, m):
            oriented = _orient(rule, A, B, C)
            if oriented is None:
                continue
            B, C = oriented
            n = nominal_length(family, m, A, B, C)
            enum = m <= config.enumerate_max_m and n * 4**m <= config.enumerate_budget
            rec = make_record(family, m, A, B, C, table, enumerate_code=enum)
            if config.projective_only and not rec.flags.projective:
                continue
            seen.setdefault(rec.key(), rec)
    return sorted(seen.values(), key=sort_key)


# ---------------------------------------------------------------------- reports

REPORT_COLUMNS = ["Ref.", "m", "A", "B", "C", "Length", "Type", "d_L", "Remark"]
CSV_COLUMNS = [
    "provenance", "family", "m", "A", "B", "C", "n", "k1", "k2", "dL",
    "projective", "plotkin_optimal", "gray_linear", "minimal", "verified", "verdict", "best", "note",
]


def remark(record: CodeRecord, highlight: bool = False) -> str:
    parts = [str(record.verdict) if record.verdict else ""]
    if highlight:
        if record.flags.projective:
            parts.append("projective")
        elif record.flags.plotkin_optimal:
            parts.append("Plotkin-optimal")
    if record.note:
        parts.append(record.note)
    return "; ".join(p for p in parts if p)


def _fmt(value) -> str:
    return "" if value is None else str(value).lower() if isinstance(value, bool) else str(value)


def export_report(records: Iterable[CodeRecord], fmt: str, highlight: bool = False) -> str:
    records = list(records)
    if fmt == "json":
        return json.dumps([r.to_dict() for r in records], indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            v = r.verdict
            w.writerow([
                r.provenance, r.family, r.m, r.A, r.B, r.C, r.n, r.k1, r.k2, _fmt(r.dL),
                _fmt(r.flags.projective), _fmt(r.flags.plotkin_optimal), _fmt(r.flags.gray_linear),
                _fmt(r.flags.minimal), _fmt(r.verified),
                v.kind if v else "", _fmt(v.best if v else None), r.note,
            ])
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(REPORT_COLUMNS) + " |", "|" + "---|" * len(REPORT_COLUMNS)]
        for r in records:
            cells = [r.provenance, r.m, r.A, r.B, r.C, r.n, r.type_string, _fmt(r.dL), remark(r, highlight)]
            lines.append("| " + " | ".join(str(c) for c in cells) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}; use csv, json or markdown")


def records_from_json(text: str) -> list[CodeRecord]:
    return [CodeRecord.from_dict(d) for d in json.loads(text)]


# ------------------------------------------------------------ reference tables


@dataclass(frozen=True)
class ReferenceRow:
    table: str
    family: Family
    listed_m: int
    m: int
    A: SubsetMask
    B: SubsetMask
    C: SubsetMask
    n: int
    k1: int
    k2: int
    dL: int
    verdict: str
    best: Optional[int]
    note: str


REFERENCE_TABLES = ("f1-new", "f3-new", "f2-projective", "consolidated")


def load_reference_rows() -> list[ReferenceRow]:
    text = resources.files("z4scx.data").joinpath("reference_tables.csv").read_text(encoding="utf-8")
    rows = []
    for d in csv.DictReader(io.StringIO(text)):
        m = int(d["m"])
        rows.append(ReferenceRow(
            table=d["table"], family=Family(d["family"]), listed_m=int(d["listed_m"]), m=m,
            A=parse_subset(d["A"], m), B=parse_subset(d["B"], m), C=parse_subset(d["C"], m),
            n=int(d["n"]), k1=int(d["k1"]), k2=int(d["k2"]), dL=int(d["dL"]),
            verdict=d["verdict"], best=int(d["best"]) if d["best"] else None, note=d["note"],
        ))
    return rows


@dataclass
class Reproduction:
    tables: dict[str, list[CodeRecord]]
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def reproduce_reference_tables(table: Optional[BestKnownTable] = None) -> Reproduction:
    """Rebuild every catalogued row and compare with its listed values."""
    table = table if table is not None else load_best_known()
    out: dict[str, list[CodeRecord]] = {name: [] for name in REFERENCE_TABLES}
    problems: list[str] = []
    for row in load_reference_rows():
        rec = make_record(row.family, row.m, row.A, row.B, row.C, table, note=row.note)
        got = (rec.n, rec.k1, rec.k2, rec.dL, rec.verdict.kind, rec.verdict.best)
        want = (row.n, row.k1, row.k2, row.dL, row.verdict, row.best)
        if got != want:
            problems.append(f"{row.table} m={row.m} A={row.A} B={row.B} C={row.C}: listed {want}, got {got}")
        out[row.table].append(rec)
        if row.verdict in ("new", "improved"):
            out["consolidated"].append(rec)
    out["consolidated"].sort(key=lambda r: (r.n, r.dL or 0, r.k1, r.k2))
    return Reproduction(out, problems)


def write_reference_reports(outdir: Union[str, Path], table: Optional[BestKnownTable] = None) -> Reproduction:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rep = reproduce_reference_tables(table)
    for name, recs in rep.tables.items():
        text = export_report(recs, "markdown", highlight=name == "consolidated")
        (outdir / f"{name.replace('-', '_')}.md").write_text(text, encoding="utf-8")
    return rep

