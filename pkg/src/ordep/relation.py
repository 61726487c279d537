"""Typed relations with order-preserving integer rank columns.

A relation is loaded once, every column is replaced by dense integer
ranks (1..d for the d distinct non-null values, in ascending value
order), and all downstream validation and discovery work happens on
those ranks.  Nulls are mapped below or above every value depending on
the null policy.  Row identity is positional: internally rows are
0-based, while anything user-facing (violation reports, CLI output)
uses the 1-based row number of the input file.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from datetime import date

from .errors import ParseError, SchemaError

TYPES = ("integer", "float", "text", "date")
NULL_POLICIES = ("nulls_first", "nulls_last", "reject")

_PY_TYPES = {
    "integer": int,
    "float": float,
    "text": str,
    "date": date,
}


@dataclass(frozen=True)
class Schema:
    """Ordered attribute declarations plus the relation's null policy.

    attributes: tuple of (name, type) pairs; type is one of
    "integer", "float", "text", "date".
    """

    attributes: tuple[tuple[str, str], ...]
    null_policy: str = "nulls_first"

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple((n, t) for n, t in self.attributes))
        seen = set()
        for name, typ in self.attributes:
            if not name:
                raise SchemaError("empty attribute name")
            if name in seen:
                raise SchemaError(f"duplicate attribute name {name!r}")
            seen.add(name)
            if typ not in TYPES:
                raise SchemaError(f"unknown type {typ!r} for attribute {name!r}")
        if self.null_policy not in NULL_POLICIES:
            raise SchemaError(f"unknown null policy {self.null_policy!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.attributes)

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.attributes):
            if n == name:
                return i
        raise SchemaError(f"no attribute named {name!r}")

    def type_of(self, idx: int) -> str:
        return self.attributes[idx][1]

    @classmethod
    def from_json(cls, text: str) -> "Schema":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"schema is not valid JSON: {exc}") from exc
        if isinstance(doc, list):
            attrs, policy = doc, "nulls_first"
        elif isinstance(doc, dict):
            attrs = doc.get("attributes")
            policy = doc.get("null_policy", "nulls_first")
            if attrs is None:
                raise SchemaError('schema object needs an "attributes" array')
        else:
            raise SchemaError("schema must be a JSON object or array")
        pairs = []
        for rec in attrs:
            if not isinstance(rec, dict) or "name" not in rec or "type" not in rec:
                raise SchemaError("each attribute record needs name and type")
            pairs.append((rec["name"], rec["type"]))
        return cls(tuple(pairs), policy)

    def to_json(self) -> str:
        doc = {
            "attributes": [{"name": n, "type": t} for n, t in self.attributes],
            "null_policy": self.null_policy,
        }
        return json.dumps(doc, indent=2)


def parse_value(text: str, typ: str):
    """Parse one CSV field under the declared type. Empty field is null."""
    if text == "":
        return None
    if typ == "integer":
        try:
            return int(text)
        except ValueError:
            raise ParseError(f"not an integer: {text!r}")
    if typ == "float":
        try:
            val = float(text)
        except ValueError:
            raise ParseError(f"not a float: {text!r}")
        if math.isnan(val):
            # NaN has no place in a total order.
            raise ParseError("NaN is not allowed")
        return val
    if typ == "date":
        try:
            return date.fromisoformat(text)
        except ValueError:
            raise ParseError(f"not an ISO date: {text!r}")
    return text


def encode_ranks(values, typ: str, null_policy: str = "nulls_first") -> list[int]:
    """Map raw values to dense order-preserving ranks.

    Distinct non-null values get 1..d in ascending order; nulls get 0
    under nulls_first, d+1 under nulls_last, and raise under reject.
    Equal values always share a rank, so both equality and relative
    order survive the encoding.
    """
    py = _PY_TYPES[typ]
    nonnull = []
    has_null = False
    for v in values:
        if v is None:
            has_null = True
            continue
        if typ == "float" and isinstance(v, int) and not isinstance(v, bool):
            v = float(v)
        if not isinstance(v, py) or isinstance(v, bool):
            raise ParseError(f"value {v!r} does not match declared type {typ!r}")
        if typ == "float" and math.isnan(v):
            raise ParseError("NaN is not allowed")
        nonnull.append(v)
    if has_null and null_policy == "reject":
        raise ParseError("null value under reject policy")
    distinct = sorted(set(nonnull))
    rank = {v: i + 1 for i, v in enumerate(distinct)}
    null_rank = 0 if null_policy == "nulls_first" else len(distinct) + 1
    out = []
    for v in values:
        if v is None:
            out.append(null_rank)
        elif typ == "float" and isinstance(v, int):
            out.append(rank[float(v)])
        else:
            out.append(rank[v])
    return out


@dataclass(frozen=True)
class Relation:
    """An immutable table of rank-encoded columns.

    columns[i][t] is the rank of row t under attribute i; raw_columns
    keeps the parsed values so reference checks can bypass the encoding
    entirely.
    """

    schema: Schema
    row_count: int
    columns: tuple[tuple[int, ...], ...]
    raw_columns: tuple[tuple, ...] = field(repr=False, default=())

    @property
    def attr_count(self) -> int:
        return len(self.schema.attributes)

    def attr_index(self, attr) -> int:
        if isinstance(attr, int):
            if not 0 <= attr < self.attr_count:
                raise SchemaError(f"attribute index {attr} out of range")
            return attr
        return self.schema.index(attr)

    def attr_name(self, idx: int) -> str:
        return self.schema.attributes[idx][0]

    def column(self, attr) -> tuple[int, ...]:
        return self.columns[self.attr_index(attr)]

    def raw_column(self, attr) -> tuple:
        return self.raw_columns[self.attr_index(attr)]

    @classmethod
    def from_columns(cls, schema: Schema, cols) -> "Relation":
        cols = [list(c) for c in cols]
        if len(cols) != len(schema.attributes):
            raise SchemaError(
                f"expected {len(schema.attributes)} columns, got {len(cols)}"
            )
        n = len(cols[0]) if cols else 0
        for c in cols:
            if len(c) != n:
                raise SchemaError("columns differ in length")
        ranked = tuple(
            tuple(encode_ranks(c, schema.type_of(i), schema.null_policy))
            for i, c in enumerate(cols)
        )
        return cls(schema, n, ranked, tuple(tuple(c) for c in cols))

    @classmethod
    def from_rows(cls, schema: Schema, rows) -> "Relation":
        rows = list(rows)
        k = len(schema.attributes)
        for r, row in enumerate(rows):
            if len(row) != k:
                raise ParseError(f"expected {k} fields, got {len(row)}", row=r + 1)
        cols = [[row[i] for row in rows] for i in range(k)]
        return cls.from_columns(schema, cols)


def load_csv(path, schema: Schema, has_header: bool = True) -> Relation:
    """Load an RFC-4180 CSV file under a declared schema.

    With a header, columns are matched to schema attributes by name (any
    file order); without one, positionally.  Every data row must have
    exactly one field per attribute.  Empty fields are nulls.
    """
    names = schema.names
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        order = list(range(len(names)))
        start_row = 1
        if has_header:
            try:
                header = next(reader)
            except StopIteration:
                raise ParseError("file is empty but a header was expected")
            dupes = {h for h in header if header.count(h) > 1}
            if dupes:
                raise ParseError(f"duplicate header names: {sorted(dupes)}", row=1)
            if set(header) != set(names):
                raise ParseError(
                    f"header {header} does not match schema attributes {list(names)}",
                    row=1,
                )
            order = [header.index(n) for n in names]
            start_row = 2
        raw_rows = []
        for lineno, fields in enumerate(reader, start=start_row):
            if len(fields) != len(names):
                raise ParseError(
                    f"expected {len(names)} fields, got {len(fields)}", row=lineno
                )
            row = []
            for i in range(len(names)):
                text = fields[order[i]]
                try:
                    row.append(parse_value(text, schema.type_of(i)))
                except ParseError as exc:
                    raise ParseError(exc.args[0], row=lineno, column=names[i]) from None
            raw_rows.append(row)
    try:
        return Relation.from_rows(schema, raw_rows)
    except ParseError as exc:
        raise ParseError(f"encoding failed: {exc}") from exc


def infer_schema(path, has_header: bool = True, null_policy: str = "nulls_first") -> Schema:
    """Guess a schema by trial parsing: integer, then float, date, text.

    Convenience for the CLI; declared schemas are authoritative.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    if not rows:
        raise ParseError("cannot infer a schema from an empty file")
    if has_header:
        names, data = rows[0], rows[1:]
    else:
        names = [f"c{i + 1}" for i in range(len(rows[0]))]
        data = rows
    types = []
    for i, name in enumerate(names):
        cells = [r[i] for r in data if i < len(r) and r[i] != ""]
        chosen = "text"
        for cand in ("integer", "float", "date"):
            try:
                for c in cells:
                    parse_value(c, cand)
            except ParseError:
                continue
            chosen = cand
            break
        types.append((name, chosen))
    return Schema(tuple(types), null_policy)
