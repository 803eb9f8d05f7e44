"""Lower and upper vectors over a proxet, cones, cuts and completions.

A lower vector ``λ`` satisfies ``d(x, y) * λ[y] <= λ[x]`` and an upper
vector ``υ`` satisfies ``υ[x] * d(x, y) <= υ[y]``. The representable
vectors of an element ``a`` are ``down(a)[x] = d(x, a)`` and
``up(a)[x] = d(a, x)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exceptions import UnsupportedFragmentError, ValidationError
from .proxet import Proxet, Violation
from .values import ONE, ZERO, ValueLike, as_value, format_value, residuate


@dataclass(frozen=True)
class _Vector:
    base: Proxet
    values: Tuple[Fraction, ...]

    kind = "vector"

    def __getitem__(self, label) -> Fraction:
        return self.values[self.base.index(label)]

    def __len__(self):
        return len(self.values)

    def items(self):
        return zip(self.base.labels, self.values)

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.items())

    def to_json(self) -> dict:
        return {"kind": self.kind, "values": {str(k): format_value(v) for k, v in self.items()}}

    def __le__(self, other: "_Vector") -> bool:
        _same_base(self, other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __repr__(self):
        body = ", ".join(f"{k}: {format_value(v)}" for k, v in self.items())
        return f"{type(self).__name__}({{{body}}})"


class LowerVector(_Vector):
    kind = "lower"


class UpperVector(_Vector):
    kind = "upper"


@dataclass(frozen=True)
class Cut:
    """A pair of vectors fixed by the cone closure."""

    lower: LowerVector
    upper: UpperVector

    @property
    def key(self) -> Tuple[Fraction, ...]:
        return self.lower.values

    def to_json(self) -> dict:
        return {"lower": self.lower.to_json()["values"], "upper": self.upper.to_json()["values"]}


def _same_base(u: _Vector, v: _Vector):
    if u.base != v.base:
        raise ValueError("vectors live on different proxets")


def _values(base: Proxet, values) -> Tuple[Fraction, ...]:
    if isinstance(values, Mapping):
        missing = [a for a in base.labels if a not in values]
        if missing:
            raise ValueError(f"vector is missing values for {missing}")
        extra = set(values) - set(base.labels)
        if extra:
            raise ValueError(f"vector has values for unknown elements {sorted(map(str, extra))}")
        return tuple(as_value(values[a]) for a in base.labels)
    values = tuple(as_value(v) for v in values)
    if len(values) != len(base):
        raise ValueError(f"vector has {len(values)} entries, proxet has {len(base)} elements")
    return values


def lower_violations(base: Proxet, values: Sequence[Fraction]) -> List[Violation]:
    n = len(base)
    d = base.table
    return [
        Violation("lower vector", (base.labels[x], base.labels[y]), d[x][y] * values[y], values[x])
        for x in range(n)
        for y in range(n)
        if d[x][y] * values[y] > values[x]
    ]


def upper_violations(base: Proxet, values: Sequence[Fraction]) -> List[Violation]:
    n = len(base)
    d = base.table
    return [
        Violation("upper vector", (base.labels[x], base.labels[y]), values[x] * d[x][y], values[y])
        for x in range(n)
        for y in range(n)
        if values[x] * d[x][y] > values[y]
    ]


def validate_lower(base: Proxet, values: Mapping[str, ValueLike] | Sequence[ValueLike]) -> LowerVector:
    vals = _values(base, values)
    found = lower_violations(base, vals)
    if found:
        raise ValidationError(f"not a lower vector ({len(found)} violations)", found)
    return LowerVector(base, vals)


def validate_upper(base: Proxet, values: Mapping[str, ValueLike] | Sequence[ValueLike]) -> UpperVector:
    vals = _values(base, values)
    found = upper_violations(base, vals)
    if found:
        raise ValidationError(f"not an upper vector ({len(found)} violations)", found)
    return UpperVector(base, vals)


def yoneda_lower(base: Proxet, a) -> LowerVector:
    """The representable lower vector ``x -> d(x, a)``."""
    j = base.index(a)
    return LowerVector(base, tuple(row[j] for row in base.table))


def yoneda_upper(base: Proxet, a) -> UpperVector:
    """The representable upper vector ``x -> d(a, x)``."""
    return UpperVector(base, base.table[base.index(a)])


def vector_proximity_lower(lam: LowerVector, mu: LowerVector) -> Fraction:
    _same_base(lam, mu)
    return min((residuate(a, b) for a, b in zip(lam.values, mu.values)), default=ONE)


def vector_proximity_upper(ups: UpperVector, tau: UpperVector) -> Fraction:
    # upper vectors are ordered contravariantly
    _same_base(ups, tau)
    return min((residuate(b, a) for a, b in zip(ups.values, tau.values)), default=ONE)


def cone_up(lam: LowerVector) -> UpperVector:
    """How well each element bounds ``lam`` from above."""
    base, n = lam.base, len(lam.base)
    d = base.table
    return UpperVector(
        base,
        tuple(min((residuate(lam.values[x], d[x][a]) for x in range(n)), default=ONE) for a in range(n)),
    )


def cone_down(ups: UpperVector) -> LowerVector:
    """How well each element bounds ``ups`` from below."""
    base, n = ups.base, len(ups.base)
    d = base.table
    return LowerVector(
        base,
        tuple(min((residuate(ups.values[x], d[a][x]) for x in range(n)), default=ONE) for a in range(n)),
    )


def cut_closure(lam: LowerVector) -> Cut:
    upper = cone_up(lam)
    return Cut(cone_down(upper), upper)


def is_cut(lower: LowerVector, upper: UpperVector) -> bool:
    return cone_up(lower) == upper and cone_down(upper) == lower


def is_upper_bound(base: Proxet, u, lam: LowerVector) -> bool:
    j = base.index(u)
    return all(lam.values[x] <= base.table[x][j] for x in range(len(base)))


def is_lower_bound(base: Proxet, l, ups: UpperVector) -> bool:
    i = base.index(l)
    return all(ups.values[y] <= base.table[i][y] for y in range(len(base)))


def suprema(lam: LowerVector) -> List:
    """Every element ``s`` whose upper representable equals the cone of ``lam``."""
    cone = cone_up(lam).values
    return [s for i, s in enumerate(lam.base.labels) if lam.base.table[i] == cone]


def infima(ups: UpperVector) -> List:
    cone = cone_down(ups).values
    base = ups.base
    return [s for i, s in enumerate(base.labels) if tuple(row[i] for row in base.table) == cone]


def supremum(lam: LowerVector) -> Optional[str]:
    """The supremum of ``lam``, or ``None`` when the proxet lacks one.

    In an intensional proxet several equivalent elements may qualify; the
    first in carrier order is returned.
    """
    found = suprema(lam)
    return found[0] if found else None


def infimum(ups: UpperVector) -> Optional[str]:
    found = infima(ups)
    return found[0] if found else None


@dataclass(frozen=True)
class Completion:
    """A proxet of cuts together with the embedding of the original carrier."""

    cuts: Tuple[Cut, ...]
    proxet: Proxet
    embedding: Dict[str, int]

    def cut_of(self, a) -> Cut:
        return self.cuts[self.embedding[a]]

    def leq(self, i: int, j: int) -> bool:
        return self.proxet.table[i][j] == ONE

    def covers(self) -> List[Tuple[int, int]]:
        n = len(self.cuts)
        lt = [[i != j and self.leq(i, j) for j in range(n)] for i in range(n)]
        return [
            (i, j)
            for i in range(n)
            for j in range(n)
            if lt[i][j] and not any(lt[i][k] and lt[k][j] for k in range(n))
        ]

    def cut_label(self, i: int) -> str:
        extent = [a for a, v in self.cuts[i].lower.items() if v == ONE]
        return "{" + ",".join(map(str, extent)) + "}"


def dm_completion(base: Proxet) -> Completion:
    """Dedekind-MacNeille completion of a {0,1}-valued proxet.

    Enumerates every 0/1 lower vector (the down-closed subsets), closes
    each under the cone operators and keeps the distinct cuts. Cuts are
    labeled ``c0, c1, ...`` in order of increasing lower-set size.
    """
    if not base.is_binary():
        raise UnsupportedFragmentError(
            "cut enumeration is only finite for {0,1}-valued proxets; use cut_closure on individual vectors"
        )
    seen = {}
    for bits in itertools.product((ZERO, ONE), repeat=len(base)):
        if lower_violations(base, bits):
            continue
        cut = cut_closure(LowerVector(base, bits))
        seen.setdefault(cut.key, cut)
    cuts = sorted(seen.values(), key=lambda c: (sum(c.key), tuple(-v for v in c.key)))
    labels = tuple(f"c{i}" for i in range(len(cuts)))
    table = tuple(tuple(vector_proximity_lower(g.lower, f.lower) for f in cuts) for g in cuts)
    index = {c.key: i for i, c in enumerate(cuts)}
    embedding = {a: index[cut_closure(yoneda_lower(base, a)).key] for a in base.labels}
    return Completion(tuple(cuts), Proxet(labels, table), embedding)
