"""Finite proximity sets (proxets).

A proxet is a finite labeled carrier with a proximity table ``d`` into
[0, 1] that is reflexive (``d(x, x) == 1``) and transitive
(``d(x, y) * d(y, z) <= d(x, z)``). Extensional proxets additionally
identify elements at mutual proximity 1; intensional ones need not.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .exceptions import SizeError, ValidationError
from .values import ONE, ZERO, ValueLike, as_value, format_value

EXTENSIONAL = "extensional"
INTENSIONAL = "intensional"

DEFAULT_MAX_POWER = 10**6


@dataclass(frozen=True)
class Violation:
    """One failing instance of a defining inequality ``lhs <= rhs``."""

    kind: str
    witness: Tuple
    lhs: Fraction
    rhs: Fraction

    def __str__(self):
        w = ", ".join(str(x) for x in self.witness)
        if self.kind == "antisymmetry":
            return f"antisymmetry: d({w}) = 1 both ways"
        if self.kind == "reflexivity":
            return f"reflexivity: d({w},{w}) = {format_value(self.lhs)} != 1"
        return f"{self.kind} at ({w}): {format_value(self.lhs)} > {format_value(self.rhs)}"


@dataclass(frozen=True, eq=True)
class Proxet:
    """An immutable finite proxet.

    Construct through :func:`validate` (or the builders below); the raw
    constructor does not check the axioms.
    """

    labels: Tuple[str, ...]
    table: Tuple[Tuple[Fraction, ...], ...]
    mode: str = EXTENSIONAL
    _index: Dict[str, int] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.labels)})

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._index

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown element {label!r}") from None

    def prox(self, x, y) -> Fraction:
        return self.table[self.index(x)][self.index(y)]

    @property
    def is_extensional(self) -> bool:
        return self.mode == EXTENSIONAL

    def is_binary(self) -> bool:
        # values lie in [0, 1], so integrality means 0 or 1
        return all(v.denominator == 1 for row in self.table for v in row)

    def is_discrete(self) -> bool:
        n = len(self)
        return all(self.table[i][j] == (ONE if i == j else ZERO) for i in range(n) for j in range(n))

    def as_dict(self) -> Dict[Tuple[str, str], Fraction]:
        return {(x, y): self.table[i][j] for i, x in enumerate(self.labels) for j, y in enumerate(self.labels)}


def _as_table(labels: Sequence[str], prox) -> Tuple[Tuple[Fraction, ...], ...]:
    n = len(labels)
    if isinstance(prox, Mapping):
        try:
            rows = [[prox[(x, y)] for y in labels] for x in labels]
        except KeyError as e:
            raise ValueError(f"proximity table is missing entry {e.args[0]!r}") from None
    else:
        rows = [list(r) for r in prox]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"proximity table must be {n}x{n}")
    return tuple(tuple(as_value(v) for v in r) for r in rows)


def _check_labels(labels: Iterable) -> Tuple[str, ...]:
    labels = tuple(labels)
    seen = set()
    dups = [a for a in labels if a in seen or seen.add(a)]
    if dups:
        raise ValueError(f"duplicate labels: {', '.join(map(str, dups))}")
    return labels


def violations(labels: Sequence[str], table, mode: str = EXTENSIONAL):
    """All reflexivity, transitivity and (if extensional) antisymmetry failures."""
    n = len(labels)
    found = []
    for i in range(n):
        if table[i][i] != ONE:
            found.append(Violation("reflexivity", (labels[i],), table[i][i], ONE))
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = table[i][j] * table[j][k]
        if lhs > table[i][k]:
            found.append(Violation("transitivity", (labels[i], labels[j], labels[k]), lhs, table[i][k]))
    if mode == EXTENSIONAL:
        for i, j in itertools.combinations(range(n), 2):
            if table[i][j] == ONE and table[j][i] == ONE:
                found.append(Violation("antisymmetry", (labels[i], labels[j]), ONE, ONE))
    return found


def validate(labels: Iterable[str], prox, mode: str = EXTENSIONAL) -> Proxet:
    """Check the proxet axioms and return the proxet.

    ``prox`` is either a mapping ``(x, y) -> value`` or a square nested
    sequence in label order. Raises :class:`ValidationError` listing every
    violation.
    """
    if mode not in (EXTENSIONAL, INTENSIONAL):
        raise ValueError(f"mode must be {EXTENSIONAL!r} or {INTENSIONAL!r}, got {mode!r}")
    labels = _check_labels(labels)
    table = _as_table(labels, prox)
    found = violations(labels, table, mode)
    if found:
        raise ValidationError(f"not a valid {mode} proxet ({len(found)} violations)", found)
    return Proxet(labels, table, mode)


def discrete(labels: Iterable[str]) -> Proxet:
    labels = _check_labels(labels)
    n = len(labels)
    return Proxet(labels, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))


def from_poset(labels: Iterable[str], leq, mode: str = EXTENSIONAL) -> Proxet:
    """The 0/1 proxet of a partial order (or of a preorder, in intensional mode).

    ``leq`` is a collection of pairs ``(x, y)`` meaning ``x ⊑ y`` or a
    predicate of two arguments. Reflexive pairs may be omitted from a
    collection.
    """
    labels = _check_labels(labels)
    if callable(leq):
        rel = {(x, y) for x in labels for y in labels if leq(x, y)}
    else:
        rel = set(leq)
        unknown = {a for pair in rel for a in pair} - set(labels)
        if unknown:
            raise ValueError(f"relation mentions unknown elements: {sorted(map(str, unknown))}")
        rel |= {(x, x) for x in labels}
    for x in labels:
        if (x, x) not in rel:
            raise ValueError(f"relation is not reflexive at {x!r}")
    for x, y, z in itertools.product(labels, repeat=3):
        if (x, y) in rel and (y, z) in rel and (x, z) not in rel:
            raise ValueError(f"relation is not transitive: {x!r} ⊑ {y!r} ⊑ {z!r}")
    if mode == EXTENSIONAL:
        for x, y in itertools.combinations(labels, 2):
            if (x, y) in rel and (y, x) in rel:
                raise ValueError(f"relation is not antisymmetric: {x!r} and {y!r}; use intensional mode for preorders")
    table = tuple(tuple(ONE if (x, y) in rel else ZERO for y in labels) for x in labels)
    return Proxet(labels, table, mode)


def from_set_family(family: Mapping[str, Iterable]) -> Proxet:
    """Proxet of named finite sets with ``d(X, Y) = 2 ** -|Y - X|``.

    The result is extensional exactly when no two names carry equal sets.
    """
    if not family:
        raise ValueError("set family must be nonempty")
    names = _check_labels(family.keys())
    sets = [frozenset(family[k]) for k in names]
    table = tuple(tuple(Fraction(1, 2 ** len(y - x)) for y in sets) for x in sets)
    mode = EXTENSIONAL if len(set(sets)) == len(sets) else INTENSIONAL
    return Proxet(names, table, mode)


def dual(a: Proxet) -> Proxet:
    n = len(a)
    return Proxet(a.labels, tuple(tuple(a.table[j][i] for j in range(n)) for i in range(n)), a.mode)


def product(a: Proxet, b: Proxet) -> Proxet:
    """Cartesian product with the componentwise minimum; labels are pairs."""
    pairs = [(i, k) for i in range(len(a)) for k in range(len(b))]
    labels = tuple((a.labels[i], b.labels[k]) for i, k in pairs)
    table = tuple(
        tuple(min(a.table[i][j], b.table[k][l]) for j, l in pairs)
        for i, k in pairs
    )
    mode = EXTENSIONAL if a.is_extensional and b.is_extensional else INTENSIONAL
    return Proxet(labels, table, mode)


def _max_power() -> int:
    raw = os.environ.get("PROXLAT_MAX_POWER")
    return int(raw) if raw else DEFAULT_MAX_POWER


def power(a: Proxet, b: Proxet, max_candidates: int = None) -> Proxet:
    """The proxet of monotone maps ``a -> b`` under the pointwise minimum.

    Each map is labeled by the tuple of its images in ``a``'s label order.
    """
    bound = _max_power() if max_candidates is None else max_candidates
    count = len(b) ** len(a)
    if count > bound:
        raise SizeError(f"power proxet needs {count} candidate maps, bound is {bound}")
    n = len(a)
    maps = []
    for f in itertools.product(range(len(b)), repeat=n):
        if all(a.table[x][y] <= b.table[f[x]][f[y]] for x in range(n) for y in range(n)):
            maps.append(f)
    labels = tuple(tuple(b.labels[i] for i in f) for f in maps)
    table = tuple(
        tuple(min((b.table[f[x]][g[x]] for x in range(n)), default=ONE) for g in maps)
        for f in maps
    )
    return Proxet(labels, table, b.mode)


def upsilon_poset(a: Proxet):
    """The relation ``x ⊑ y`` iff ``d(x, y) == 1``, as a set of pairs."""
    return {(x, y) for (x, y), v in a.as_dict().items() if v == ONE}


def lambda_preorder(a: Proxet):
    """The relation ``x ⊑ y`` iff ``d(x, y) > 0``, as a set of pairs."""
    return {(x, y) for (x, y), v in a.as_dict().items() if v > ZERO}


def render_table(a: Proxet) -> str:
    width = max([len(str(x)) for x in a.labels] + [1])
    lines = []
    for i, x in enumerate(a.labels):
        cells = " ".join(format_value(v).rjust(5) for v in a.table[i])
        lines.append(f"{str(x).ljust(width)} {cells}")
    return "\n".join(lines)


def coerce(labels: Iterable[str], prox: Mapping[Tuple[str, str], ValueLike], mode=EXTENSIONAL) -> Proxet:
    """Build a proxet without checking the axioms. Intended for trusted tables."""
    labels = _check_labels(labels)
    return Proxet(labels, _as_table(labels, prox), mode)
