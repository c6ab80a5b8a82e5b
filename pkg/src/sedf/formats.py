"""Family files and the results catalog.

Family file::

    group Z3xZ3
    set (0,1) (0,2) (1,0) (2,0)
    set (1,1) (1,2) (2,1) (2,2)

Elements are coordinate tuples; single-factor groups are written as bare
integers.  Blank lines and ``#`` comments are ignored on read.

The catalog is an append-only tab-separated log, one record per line.
Reading keeps the last record for each (parameters, group) pair.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable

from .algebra import FiniteAbelianGroup, ParseError, resolve_group
from .diffcore import SetFamily, format_element

_TUPLE_RE = re.compile(r"\(([^()]*)\)|(-?\d+)")
_INNER_SPACE_RE = re.compile(r"\s*,\s*|(?<=\()\s+|\s+(?=\))")


def format_family(fam: SetFamily) -> str:
    g = fam.group
    lines = [f"group {g.spec}"]
    for s in fam.sets:
        elems = " ".join(format_element(g, x) for x in sorted(s))
        lines.append(f"set {elems}".rstrip())
    return "\n".join(lines) + "\n"


def _parse_element(group: FiniteAbelianGroup, token: re.Match, lineno: int) -> int:
    inner, bare = token.group(1), token.group(2)
    try:
        coords = [int(c) for c in inner.split(",")] if inner is not None else [int(bare)]
    except ValueError as exc:
        raise ParseError(f"line {lineno}: bad element {token.group(0)!r}") from exc
    if len(coords) != group.rank:
        raise ParseError(f"line {lineno}: element {token.group(0)} has {len(coords)} coordinates, group has {group.rank}")
    for c, f in zip(coords, group.factors):
        if not 0 <= c < f:
            raise ParseError(f"line {lineno}: coordinate {c} out of range for Z{f}")
    return group.encode(coords)


def parse_family(text: str) -> SetFamily:
    group = None
    sets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "group":
            if group is not None:
                raise ParseError(f"line {lineno}: second group line")
            group = resolve_group(rest)
        elif head == "set":
            if group is None:
                raise ParseError(f"line {lineno}: set before group line")
            # tolerate spaces inside tuples, then split on whitespace between elements
            body = _INNER_SPACE_RE.sub(lambda mt: mt.group(0).strip(), rest).replace(")(", ") (")
            tokens = [_TUPLE_RE.fullmatch(t) for t in body.split()]
            if not all(tokens):
                raise ParseError(f"line {lineno}: cannot parse elements {rest!r}")
            sets.append([_parse_element(group, t, lineno) for t in tokens])
        else:
            raise ParseError(f"line {lineno}: expected 'group' or 'set', got {head!r}")
    if group is None:
        raise ParseError("missing group line")
    if not sets:
        raise ParseError("no set lines")
    try:
        return SetFamily.of(group, sets)
    except (ValueError, IndexError) as exc:
        raise ParseError(str(exc)) from exc


def read_family(path: str | Path) -> SetFamily:
    return parse_family(Path(path).read_text())


def write_family(path: str | Path, fam: SetFamily) -> None:
    Path(path).write_text(format_family(fam))


# -- catalog --

CATALOG_FIELDS = ("kind", "params", "group", "status", "rules", "witness", "note", "timestamp")


@dataclass(frozen=True)
class CatalogRecord:
    kind: str  # "sedf" or "gsedf"
    params: str
    group: str
    status: str
    rules: str
    witness: str
    note: str
    timestamp: str

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.kind, self.params, self.group)

    def to_line(self) -> str:
        values = [getattr(self, f) for f in CATALOG_FIELDS]
        if any("\t" in v or "\n" in v for v in values):
            raise ValueError("catalog fields may not contain tabs or newlines")
        return "\t".join(values) + "\n"

    @classmethod
    def from_line(cls, line: str) -> CatalogRecord:
        parts = line.rstrip("\n").split("\t")
        if len(parts) != len(CATALOG_FIELDS):
            raise ParseError(f"catalog line has {len(parts)} fields, expected {len(CATALOG_FIELDS)}")
        return cls(*parts)

    def same_content(self, other: CatalogRecord) -> bool:
        return replace(self, timestamp="") == replace(other, timestamp="")


def now_stamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def make_record(kind: str, params: str, verdict, group: str = "", timestamp: str | None = None) -> CatalogRecord:
    witness = ""
    if verdict.witness is not None:
        witness = str(verdict.witness)
        if not group:
            group = verdict.witness.build().group.spec
    return CatalogRecord(
        kind,
        params,
        group,
        verdict.status.value,
        ",".join(verdict.rules_fired),
        witness,
        verdict.note,
        timestamp or now_stamp(),
    )


def append_records(path: str | Path, records: Iterable[CatalogRecord]) -> None:
    """Append whole lines with O_APPEND so concurrent writers never interleave within a line."""
    fd = os.open(path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
    try:
        for rec in records:
            os.write(fd, rec.to_line().encode())
    finally:
        os.close(fd)


def read_catalog(path: str | Path) -> list[CatalogRecord]:
    p = Path(path)
    if not p.exists():
        return []
    return [CatalogRecord.from_line(line) for line in p.read_text().splitlines() if line and not line.startswith("#")]


def current_records(path: str | Path) -> dict[tuple[str, str, str], CatalogRecord]:
    """Last record wins for every (kind, params, group) key."""
    out: dict[tuple[str, str, str], CatalogRecord] = {}
    for rec in read_catalog(path):
        out[rec.key] = rec
    return out
