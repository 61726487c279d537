"""Bounded forward chaining over the canonical dependency axioms.

The rule set (over non-trivial canonical dependencies; trivial ones are
true by construction and never stored):

  commutativity     X: A ~ B  derives  X: B ~ A          (implicit: storage is unordered)
  strengthen        X: [] |-> A  and  XA: [] |-> B   derive  X: [] |-> B
  propagate         X: [] |-> A                      derives X: A ~ B for any B
  augmentation-c    X: [] |-> A                      derives ZX: [] |-> A
  augmentation-oc   X: A ~ B                         derives ZX: A ~ B
  chain             X: A ~ B1, X: Bi ~ Bi+1 (i<n), X: Bn ~ C,
                    and XBi: A ~ C for every i       derive  X: A ~ C

Reflexivity (X: [] |-> A for A in X) and identity (X: A ~ A) only ever
produce trivial dependencies, so applying them is a no-op here.

The chainer is bounded, not a decision procedure: conclusions are kept
only while their context fits max_context_size, and chain instances use
at most max_chain_length intermediate attributes.  Within a universe of
attributes the bounded closure is finite, so iteration terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .odmodel import ConstantOD, OrderCompatOD, validate_canonical


@dataclass(frozen=True)
class DerivationLimit:
    max_context_size: int
    max_chain_length: int = 3

    def __post_init__(self):
        if self.max_context_size < 0 or self.max_chain_length < 0:
            raise ValueError("limits must be non-negative")


class ODSet:
    """An immutable collection of non-trivial canonical dependencies
    over an explicit attribute universe."""

    __slots__ = ("universe", "constants", "ocs")

    def __init__(self, universe, ods=()):
        self.universe = frozenset(universe)
        consts, ocs = set(), set()
        for od in ods:
            if not isinstance(od, (ConstantOD, OrderCompatOD)):
                raise TypeError(f"not a canonical dependency: {od!r}")
            for a in _attrs_of(od):
                if a not in self.universe:
                    raise ValueError(f"attribute {a!r} is outside the universe")
            if isinstance(od, ConstantOD):
                consts.add(od)
            else:
                ocs.add(od)
        self.constants = frozenset(consts)
        self.ocs = frozenset(ocs)

    def __len__(self):
        return len(self.constants) + len(self.ocs)

    def __iter__(self):
        key = lambda od: (
            len(od.context),
            tuple(sorted(od.context)),
            0 if isinstance(od, ConstantOD) else 1,
            (od.attr,) if isinstance(od, ConstantOD) else (od.a, od.b),
        )
        return iter(sorted(self.constants | self.ocs, key=key))

    def __contains__(self, od):
        return od in self.constants or od in self.ocs

    def __eq__(self, other):
        return (
            isinstance(other, ODSet)
            and self.universe == other.universe
            and self.constants == other.constants
            and self.ocs == other.ocs
        )

    def __hash__(self):
        return hash((self.universe, self.constants, self.ocs))


def _attrs_of(od):
    if isinstance(od, ConstantOD):
        return tuple(od.context) + (od.attr,)
    return tuple(od.context) + (od.a, od.b)


def holds_constant(s: ODSet, context: frozenset, attr) -> bool:
    """Membership with trivial dependencies counted as present."""
    if attr in context:
        return True
    return ConstantOD(context, attr) in s.constants


def holds_oc(s: ODSet, context: frozenset, a, b) -> bool:
    if a == b or a in context or b in context:
        return True
    return OrderCompatOD(context, a, b) in s.ocs


def _chase(s: ODSet, lim: DerivationLimit, target=None, want_trace=False):
    """Run rule applications to fixpoint (or until target appears).

    Returns (constants, ocs, provenance).  Provenance maps each derived
    dependency to (rule name, premise tuple); premises given as input
    are absent from the map.
    """
    univ = sorted(s.universe)
    consts = set(s.constants)
    ocs = set(s.ocs)
    prov: dict = {}
    max_ctx = lim.max_context_size

    def add(od, rule, premises):
        pool = consts if isinstance(od, ConstantOD) else ocs
        if od in pool:
            return False
        pool.add(od)
        if want_trace:
            prov[od] = (rule, tuple(premises))
        return True

    def found():
        return target is not None and (target in consts or target in ocs)

    changed = True
    while changed and not found():
        changed = False
        # Constant-premise rules.
        for od in sorted(consts, key=_od_key):
            X, A = od.context, od.attr
            # propagate: X: [] |-> A gives X: A ~ B for every other B.
            if len(X) <= max_ctx:
                for B in univ:
                    if B != A and B not in X:
                        changed |= add(OrderCompatOD(X, A, B), "propagate", (od,))
            # augmentation: blow the context up by any disjoint Z.
            rest = [z for z in univ if z not in X and z != A]
            for r in range(1, max_ctx - len(X) + 1):
                for extra in combinations(rest, r):
                    changed |= add(ConstantOD(X | frozenset(extra), A), "augmentation-c", (od,))
            # strengthen: X: [] |-> A and XA: [] |-> B give X: [] |-> B.
            if len(X) <= max_ctx:
                xa = X | {A}
                for other in sorted(consts, key=_od_key):
                    if other.context == xa and other.attr not in X:
                        changed |= add(ConstantOD(X, other.attr), "strengthen", (od, other))
        # Compatibility-premise rules.
        for od in sorted(ocs, key=_od_key):
            X = od.context
            rest = [z for z in univ if z not in X and z not in (od.a, od.b)]
            for r in range(1, max_ctx - len(X) + 1):
                for extra in combinations(rest, r):
                    changed |= add(
                        OrderCompatOD(X | frozenset(extra), od.a, od.b), "augmentation-oc", (od,)
                    )
        # chain: contexts that carry at least one compatibility.
        for X in sorted({od.context for od in ocs}, key=lambda c: (len(c), tuple(sorted(c)))):
            if len(X) > max_ctx:
                continue
            avail = [z for z in univ if z not in X]
            for A, C in combinations(avail, 2):
                if OrderCompatOD(X, A, C) in ocs:
                    continue
                mids = [m for m in avail if m != A and m != C]
                hit = _find_chain(ocs, X, A, C, mids, lim.max_chain_length)
                if hit is not None:
                    changed |= add(OrderCompatOD(X, A, C), "chain", hit)
        if found():
            break
    return consts, ocs, prov


def _od_key(od):
    return (
        len(od.context),
        tuple(sorted(od.context)),
        0 if isinstance(od, ConstantOD) else 1,
        (od.attr,) if isinstance(od, ConstantOD) else (od.a, od.b),
    )


def _find_chain(ocs, X, A, C, mids, max_len):
    """First premise tuple proving X: A ~ C through <= max_len middles."""
    for n in range(1, max_len + 1):
        for seq in permutations(mids, n):
            premises = [OrderCompatOD(X, A, seq[0])]
            premises += [OrderCompatOD(X, seq[i], seq[i + 1]) for i in range(n - 1)]
            premises.append(OrderCompatOD(X, seq[-1], C))
            premises += [OrderCompatOD(X | {m}, A, C) for m in seq]
            if all(p in ocs for p in premises):
                return tuple(premises)
    return None


def apply_axioms_once(s: ODSet, lim: DerivationLimit) -> ODSet:
    """s plus every dependency one rule application away, within limits."""
    univ = sorted(s.universe)
    consts = set(s.constants)
    ocs = set(s.ocs)
    max_ctx = lim.max_context_size
    for od in s.constants:
        X, A = od.context, od.attr
        if len(X) <= max_ctx:
            for B in univ:
                if B != A and B not in X:
                    ocs.add(OrderCompatOD(X, A, B))
        rest = [z for z in univ if z not in X and z != A]
        for r in range(1, max_ctx - len(X) + 1):
            for extra in combinations(rest, r):
                consts.add(ConstantOD(X | frozenset(extra), A))
        if len(X) <= max_ctx:
            xa = X | {A}
            for other in s.constants:
                if other.context == xa and other.attr not in X:
                    consts.add(ConstantOD(X, other.attr))
    for od in s.ocs:
        X = od.context
        rest = [z for z in univ if z not in X and z not in (od.a, od.b)]
        for r in range(1, max_ctx - len(X) + 1):
            for extra in combinations(rest, r):
                ocs.add(OrderCompatOD(X | frozenset(extra), od.a, od.b))
    for X in {od.context for od in s.ocs}:
        if len(X) > max_ctx:
            continue
        avail = [z for z in univ if z not in X]
        for A, C in combinations(avail, 2):
            mids = [m for m in avail if m != A and m != C]
            if _find_chain(s.ocs, X, A, C, mids, lim.max_chain_length) is not None:
                ocs.add(OrderCompatOD(X, A, C))
    return ODSet(s.universe, consts | ocs)


def closure(s: ODSet, lim: DerivationLimit) -> ODSet:
    """Least fixpoint of the rules under the given limits."""
    consts, ocs, _ = _chase(s, lim)
    return ODSet(s.universe, consts | ocs)


def derives(s: ODSet, target, lim: DerivationLimit) -> bool:
    """Whether the premises derive the target within the limits.

    Trivial targets hold structurally; pass raw parts through
    holds_constant / holds_oc for those, since trivial dependency
    objects cannot be built.
    """
    consts, ocs, _ = _chase(s, lim, target=target)
    return target in consts or target in ocs


def derive_with_trace(s: ODSet, target, lim: DerivationLimit):
    """One derivation path for the target, or None.

    Returns a list of (od, rule, premises) in dependency order; input
    premises appear with rule "premise" and no antecedents.
    """
    consts, ocs, prov = _chase(s, lim, target=target, want_trace=True)
    if target not in consts and target not in ocs:
        return None
    path = []
    seen = set()

    def visit(od):
        if od in seen:
            return
        seen.add(od)
        entry = prov.get(od)
        if entry is None:
            path.append((od, "premise", ()))
            return
        rule, premises = entry
        for p in premises:
            visit(p)
        path.append((od, rule, premises))

    visit(target)
    return path


def is_minimal_constant(rel, context: frozenset, attr, validate=None) -> bool:
    """No smaller context yields the same constant dependency, and no
    context attribute is itself implied by the rest of the context.

    Assumes `context: [] |-> attr` is valid on rel.  `validate`
    defaults to the partition-based check; the brute-force oracle
    injects its own.
    """
    if validate is None:
        validate = validate_canonical
    context = frozenset(context)
    for r in range(len(context)):
        for sub in combinations(sorted(context), r):
            if validate(rel, ConstantOD(frozenset(sub), attr)):
                return False
    for b in context:
        if validate(rel, ConstantOD(context - {b}, b)):
            return False
    return True


def is_minimal_oc(rel, context: frozenset, a, b, validate=None) -> bool:
    """Minimality of `context: a ~ b` given that it is valid on rel:
    no proper subcontext suffices, neither side is constant under the
    context, and no context attribute is implied by the others."""
    if validate is None:
        validate = validate_canonical
    context = frozenset(context)
    for r in range(len(context)):
        for sub in combinations(sorted(context), r):
            if validate(rel, OrderCompatOD(frozenset(sub), a, b)):
                return False
    if validate(rel, ConstantOD(context, a)) or validate(rel, ConstantOD(context, b)):
        return False
    for c in context:
        if validate(rel, ConstantOD(context - {c}, c)):
            return False
    return True
