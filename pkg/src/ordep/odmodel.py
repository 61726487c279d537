"""Order dependencies: list form, canonical set form, and their semantics.

A list dependency `[A,B] -> [C,D]` states that sorting by the left list
also sorts by the right list (lexicographically, ties broken by later
attributes).  Every list dependency is equivalent to a polynomial-size
set of canonical dependencies of just two shapes:

* ConstantOD  -- `{X}: [] |-> A`: within each group of rows equal on
  the context X, attribute A is single-valued;
* OrderCompatOD -- `{X}: A ~ B`: within each group equal on X, no two
  rows order one way by A and the opposite way by B (no swap).

The quadratic pairwise definitions live here as the readable reference
semantics; lattice discovery uses the partition-based checks instead.

Attribute identifiers are deliberately generic: the discovery engine
works with 0-based column indices, while parsed text and inference over
abstract schemas use attribute-name strings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ODSyntaxError
from .partitions import partition_set, sorted_partition, check_constant, check_order_compatible


def normalize_spec(spec) -> tuple:
    """Drop repeated attributes, keeping first occurrences.

    Later occurrences of an attribute can never break a tie the first
    occurrence left, so the shortened list orders rows identically.
    """
    seen = set()
    out = []
    for a in spec:
        if a not in seen:
            seen.add(a)
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class ListOD:
    """A list-form dependency lhs -> rhs. Both sides are normalized."""

    lhs: tuple
    rhs: tuple

    def __post_init__(self):
        object.__setattr__(self, "lhs", normalize_spec(self.lhs))
        object.__setattr__(self, "rhs", normalize_spec(self.rhs))


@dataclass(frozen=True)
class ConstantOD:
    """`context: [] |-> attr`; trivial forms (attr in context) are rejected."""

    context: frozenset
    attr: object

    def __post_init__(self):
        object.__setattr__(self, "context", frozenset(self.context))
        if self.attr in self.context:
            raise ODSyntaxError(f"trivial constant dependency: {self.attr!r} is in its own context")


@dataclass(frozen=True)
class OrderCompatOD:
    """`context: a ~ b`, stored with a < b; trivial forms are rejected."""

    context: frozenset
    a: object
    b: object

    def __post_init__(self):
        object.__setattr__(self, "context", frozenset(self.context))
        if self.a == self.b:
            raise ODSyntaxError("trivial order compatibility: identical attributes")
        if self.a in self.context or self.b in self.context:
            raise ODSyntaxError("trivial order compatibility: attribute is in its own context")
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class ViolationReport:
    """Witness pairs for one failed check.

    kind is "split" (rows equal on `over` but unequal on `attrs`) or
    "swap" (rows in one `over`-class ordered oppositely by the two
    attrs).  Pairs carry 1-based row numbers of the input.
    """

    kind: str
    over: tuple
    attrs: tuple
    pairs: tuple[tuple[int, int], ...]


def _resolve(rel, attrs):
    return [rel.attr_index(a) for a in attrs]


def lex_leq(rel, s: int, t: int, spec) -> bool:
    """Row s precedes-or-ties row t under the lexicographic spec."""
    for a in _resolve(rel, spec):
        col = rel.columns[a]
        ra, rb = col[s], col[t]
        if ra < rb:
            return True
        if ra > rb:
            return False
    return True


def satisfies_list_od(rel, od: ListOD) -> bool:
    """Pairwise reference check of lhs -> rhs; quadratic in rows."""
    lhs = _resolve(rel, od.lhs)
    rhs = _resolve(rel, od.rhs)
    n = rel.row_count
    cols = rel.columns

    def leq(s, t, spec):
        for a in spec:
            col = cols[a]
            if col[s] < col[t]:
                return True
            if col[s] > col[t]:
                return False
        return True

    for s in range(n):
        for t in range(n):
            if leq(s, t, lhs) and not leq(s, t, rhs):
                return False
    return True


def order_equivalent(rel, x, y) -> bool:
    """Both lists sort the relation identically (each implies the other)."""
    return satisfies_list_od(rel, ListOD(tuple(x), tuple(y))) and satisfies_list_od(
        rel, ListOD(tuple(y), tuple(x))
    )


def order_compatible(rel, x, y) -> bool:
    """The concatenations xy and yx are order equivalent."""
    x, y = tuple(x), tuple(y)
    return order_equivalent(rel, x + y, y + x)


def map_list_to_canonical(od: ListOD) -> tuple:
    """Translate a list dependency into its equivalent canonical set.

    For lhs X = [x1..xk] and rhs Y = [y1..ym]:
      * {X}: [] |-> yj for every j, and
      * {x1..x(i-1), y1..y(j-1)}: xi ~ yj for every i, j,
    with trivial members dropped.  At most |Y| + |X||Y| dependencies.
    """
    X, Y = od.lhs, od.rhs
    ctx_all = frozenset(X)
    out = []
    for yj in Y:
        if yj not in ctx_all:
            out.append(ConstantOD(ctx_all, yj))
    for i in range(len(X)):
        for j in range(len(Y)):
            ctx = frozenset(X[:i]) | frozenset(Y[:j])
            a, b = X[i], Y[j]
            if a == b or a in ctx or b in ctx:
                continue
            out.append(OrderCompatOD(ctx, a, b))
    return tuple(dict.fromkeys(out))


def validate_canonical(rel, od) -> bool:
    """Check one canonical dependency against the data via partitions."""
    ctx = partition_set(rel, [rel.attr_index(a) for a in od.context])
    if isinstance(od, ConstantOD):
        return check_constant(ctx, rel.column(od.attr))
    tau = sorted_partition(rel, od.a)
    return check_order_compatible(ctx, tau, rel.column(od.b))


def find_splits(rel, x, y) -> tuple[tuple[int, int], ...]:
    """All row pairs equal on x but unequal on y, as 1-based (s, t), s < t."""
    xi = sorted(set(_resolve(rel, x)))
    yi = sorted(set(_resolve(rel, y)))
    groups: dict[tuple, list[int]] = {}
    for t in range(rel.row_count):
        key = tuple(rel.columns[i][t] for i in xi)
        groups.setdefault(key, []).append(t)
    pairs = []
    for rows in groups.values():
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                s, t = rows[i], rows[j]
                if any(rel.columns[k][s] != rel.columns[k][t] for k in yi):
                    pairs.append((s + 1, t + 1))
    pairs.sort()
    return tuple(pairs)


def find_swaps(rel, context, a, b) -> tuple[tuple[int, int], ...]:
    """All swaps of (a, b) within context classes.

    Each pair is reported as 1-based (s, t) with s strictly before t on
    a and strictly after t on b.
    """
    ai = rel.attr_index(a)
    bi = rel.attr_index(b)
    ca, cb = rel.columns[ai], rel.columns[bi]
    ctx = sorted(set(_resolve(rel, context)))
    groups: dict[tuple, list[int]] = {}
    for t in range(rel.row_count):
        key = tuple(rel.columns[i][t] for i in ctx)
        groups.setdefault(key, []).append(t)
    pairs = []
    for rows in groups.values():
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                s, t = rows[i], rows[j]
                if ca[s] < ca[t] and cb[s] > cb[t]:
                    pairs.append((s + 1, t + 1))
                elif ca[s] > ca[t] and cb[s] < cb[t]:
                    pairs.append((t + 1, s + 1))
    pairs.sort()
    return tuple(pairs)


def violations(rel, od) -> tuple[ViolationReport, ...]:
    """Witness reports for a failed dependency of any form."""
    if isinstance(od, ConstantOD):
        pairs = find_splits(rel, od.context, [od.attr])
        if not pairs:
            return ()
        return (ViolationReport("split", tuple(sorted(od.context)), (od.attr,), pairs),)
    if isinstance(od, OrderCompatOD):
        pairs = find_swaps(rel, od.context, od.a, od.b)
        if not pairs:
            return ()
        return (ViolationReport("swap", tuple(sorted(od.context)), (od.a, od.b), pairs),)
    # List form: splits against lhs->lhs+rhs, swaps against the two lists.
    out = []
    split_pairs = find_splits(rel, od.lhs, [a for a in od.rhs if a not in od.lhs])
    if split_pairs:
        out.append(ViolationReport("split", tuple(od.lhs), tuple(od.rhs), split_pairs))
    lhs = _resolve(rel, od.lhs)
    rhs = _resolve(rel, od.rhs)
    cols = rel.columns

    def less(s, t, spec):
        for a in spec:
            if cols[a][s] < cols[a][t]:
                return True
            if cols[a][s] > cols[a][t]:
                return False
        return False

    swap_pairs = []
    for s in range(rel.row_count):
        for t in range(rel.row_count):
            if less(s, t, lhs) and less(t, s, rhs):
                swap_pairs.append((s + 1, t + 1))
    if swap_pairs:
        out.append(ViolationReport("swap", tuple(od.lhs), tuple(od.rhs), tuple(sorted(swap_pairs))))
    return tuple(out)


# ---------------------------------------------------------------------------
# Textual syntax.
#
#   list form      [A,B] -> [C,D]
#   constant form  {A,B}: [] |-> C
#   compat form    {A}: B ~ C
#
# Attribute names are runs of word characters, dots, or percent signs.

_NAME = r"[\w.%]+"
_LIST_RE = re.compile(r"^\s*\[(?P<lhs>[^\]]*)\]\s*->\s*\[(?P<rhs>[^\]]*)\]\s*$")
_CONST_RE = re.compile(r"^\s*\{(?P<ctx>[^}]*)\}\s*:\s*\[\s*\]\s*\|->\s*(?P<attr>" + _NAME + r")\s*$")
_OC_RE = re.compile(
    r"^\s*\{(?P<ctx>[^}]*)\}\s*:\s*(?P<a>" + _NAME + r")\s*~\s*(?P<b>" + _NAME + r")\s*$"
)


def _parse_names(text: str, what: str) -> tuple[str, ...]:
    text = text.strip()
    if not text:
        return ()
    names = []
    for tok in text.split(","):
        tok = tok.strip()
        if not re.fullmatch(_NAME, tok):
            raise ODSyntaxError(f"bad attribute name {tok!r} in {what}")
        names.append(tok)
    return tuple(names)


def parse_canonical_parts(text: str):
    """Split canonical dependency text into raw parts without the
    non-triviality checks: ("constant", ctx, attr) or ("oc", ctx, a, b),
    or None when the text is not canonical syntax at all."""
    m = _CONST_RE.match(text)
    if m:
        return ("constant", frozenset(_parse_names(m.group("ctx"), "context")), m.group("attr"))
    m = _OC_RE.match(text)
    if m:
        return (
            "oc",
            frozenset(_parse_names(m.group("ctx"), "context")),
            m.group("a"),
            m.group("b"),
        )
    return None


def parse_od(text: str):
    """Parse dependency text into a ListOD, ConstantOD, or OrderCompatOD.

    Raises ODSyntaxError for malformed text and for canonical forms
    that are trivial (for example `{A}: A ~ B`).
    """
    m = _LIST_RE.match(text)
    if m:
        return ListOD(_parse_names(m.group("lhs"), "lhs"), _parse_names(m.group("rhs"), "rhs"))
    parts = parse_canonical_parts(text)
    if parts is not None:
        if parts[0] == "constant":
            return ConstantOD(parts[1], parts[2])
        return OrderCompatOD(parts[1], parts[2], parts[3])
    raise ODSyntaxError(f"unrecognized dependency syntax: {text!r}")


def format_od(od, names=None) -> str:
    """Render a dependency in the textual syntax.

    `names` maps attribute ids to display names (for index-based
    dependencies pass the schema's name tuple).  Context attributes are
    rendered in ascending id order.
    """

    def disp(a):
        return str(names[a]) if names is not None else str(a)

    if isinstance(od, ListOD):
        return "[{}] -> [{}]".format(
            ",".join(disp(a) for a in od.lhs), ",".join(disp(a) for a in od.rhs)
        )
    ctx = "{" + ",".join(disp(a) for a in sorted(od.context)) + "}"
    if isinstance(od, ConstantOD):
        return f"{ctx}: [] |-> {disp(od.attr)}"
    return f"{ctx}: {disp(od.a)} ~ {disp(od.b)}"


def map_od_attrs(od, fn):
    """Rebuild a dependency with every attribute id passed through fn."""
    if isinstance(od, ListOD):
        return ListOD(tuple(fn(a) for a in od.lhs), tuple(fn(a) for a in od.rhs))
    if isinstance(od, ConstantOD):
        return ConstantOD(frozenset(fn(a) for a in od.context), fn(od.attr))
    return OrderCompatOD(frozenset(fn(a) for a in od.context), fn(od.a), fn(od.b))
