"""Representable concepts of a context matrix and their proximities.

Every object ``a`` and attribute ``b`` of a matrix ``Φ: A ↬ B`` generates
a Φ-cut: ``â = (Φ_*Φ^*∇a, Φ^*∇a)`` and ``b̂ = (Φ_*Δb, Φ^*Φ_*Δb)``. These
finitely many cuts suffice to factor ``Φ`` as a projection followed by an
embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .exceptions import SizeError, UnsupportedFragmentError
from .matrix import (
    ContextMatrix,
    PhiCut,
    phi_cut_closure,
    phi_cut_coclosure,
)
from .proxet import EXTENSIONAL, INTENSIONAL, Proxet
from .values import ONE, ZERO, format_value
from .vectors import (
    LowerVector,
    UpperVector,
    vector_proximity_lower,
    yoneda_lower,
    yoneda_upper,
)

OBJECT = "object"
ATTRIBUTE = "attribute"

#: enumeration bound for :func:`fca_lattice` (subsets of the smaller side)
MAX_FCA_SIDE = 20


@dataclass(frozen=True)
class Generator:
    side: str
    label: str

    def __str__(self):
        return str(self.label)


@dataclass(frozen=True)
class Concept:
    cut: PhiCut
    generators: Tuple[Generator, ...]
    label: str

    @property
    def lower(self) -> LowerVector:
        return self.cut.lower

    @property
    def upper(self) -> UpperVector:
        return self.cut.upper

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "generators": [{"side": g.side, "label": str(g.label)} for g in self.generators],
            **self.cut.to_json(),
        }


def _needs_qualifying(phi: ContextMatrix) -> bool:
    return bool(set(phi.source.labels) & set(phi.target.labels))


def _gen_name(g: Generator, qualify: bool) -> str:
    if qualify:
        return f"{'A' if g.side == OBJECT else 'B'}:{g.label}"
    return str(g.label)


def _raw_representables(phi: ContextMatrix) -> List[Tuple[Generator, PhiCut]]:
    raw = []
    for b in phi.target.labels:
        raw.append((Generator(ATTRIBUTE, b), phi_cut_coclosure(phi, yoneda_upper(phi.target, b))))
    for a in phi.source.labels:
        raw.append((Generator(OBJECT, a), phi_cut_closure(phi, yoneda_lower(phi.source, a))))
    return raw


def representable_concepts(phi: ContextMatrix, dedup: bool = True) -> List[Concept]:
    """Concepts generated by single attributes, then by single objects.

    With ``dedup`` (the default) generators whose cuts coincide are merged
    into one concept labeled ``"x=y"``.
    """
    qualify = _needs_qualifying(phi)
    raw = _raw_representables(phi)
    if not dedup:
        return [Concept(cut, (g,), _gen_name(g, qualify)) for g, cut in raw]
    groups: Dict[Tuple[Fraction, ...], List] = {}
    for g, cut in raw:
        groups.setdefault(cut.key, [cut, []])[1].append(g)
    return [
        Concept(cut, tuple(gens), "=".join(_gen_name(g, qualify) for g in gens))
        for cut, gens in groups.values()
    ]


@dataclass(frozen=True)
class ConceptTable:
    concepts: Tuple[Concept, ...]
    prox: Tuple[Tuple[Fraction, ...], ...]

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(c.label for c in self.concepts)

    def index(self, label) -> int:
        for i, c in enumerate(self.concepts):
            if c.label == label or any(str(g.label) == str(label) for g in c.generators):
                return i
        raise KeyError(f"no concept generated by {label!r}")

    def __call__(self, x, y) -> Fraction:
        return self.prox[self.index(x)][self.index(y)]

    def as_proxet(self) -> Proxet:
        distinct = len({c.cut.key for c in self.concepts}) == len(self.concepts)
        return Proxet(self.labels, self.prox, EXTENSIONAL if distinct else INTENSIONAL)

    def to_rows(self) -> List[List[str]]:
        rows = [[""] + list(self.labels)]
        for lab, r in zip(self.labels, self.prox):
            rows.append([lab] + [format_value(v) for v in r])
        return rows

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "concepts": [c.to_json() for c in self.concepts],
            "prox": [[format_value(v) for v in r] for r in self.prox],
        }


def concept_proximity_table(phi: ContextMatrix, dedup: bool = False) -> ConceptTable:
    """Pairwise proximities of the representable concepts.

    ``prox[x][y] = min_u lower_x[u] ⊢ lower_y[u]``. By default every
    generator keeps its own row, so coinciding concepts appear as distinct
    rows at mutual proximity 1.
    """
    concepts = tuple(representable_concepts(phi, dedup=dedup))
    prox = tuple(tuple(vector_proximity_lower(c.lower, e.lower) for e in concepts) for c in concepts)
    return ConceptTable(concepts, prox)


def decomposition(phi: ContextMatrix) -> Tuple[ContextMatrix, ContextMatrix]:
    """Factor ``Φ`` through its deduplicated representable concepts.

    Returns ``(P, E)`` with ``P(x, c) = c.lower[x]`` and ``E(c, y) = c.upper[y]``;
    the middle proxet is available as ``P.target``.
    """
    table = concept_proximity_table(phi, dedup=True)
    middle = table.as_proxet()
    concepts = table.concepts
    p = ContextMatrix(
        phi.source,
        middle,
        tuple(tuple(c.lower.values[x] for c in concepts) for x in range(len(phi.source))),
    )
    e = ContextMatrix(middle, phi.target, tuple(c.upper.values for c in concepts))
    return p, e


def recommend(table: ConceptTable, subject, side: str = "users", k: Optional[int] = None):
    """Rank the other concepts of one side by their proximity from ``subject``.

    ``side`` is ``"users"`` (object-generated rows) or ``"items"``
    (attribute-generated rows). Returns ``[(label, value), ...]`` sorted by
    decreasing value, ties in table order.
    """
    wanted = {"users": OBJECT, "objects": OBJECT, "items": ATTRIBUTE, "attributes": ATTRIBUTE}.get(side)
    if wanted is None:
        raise ValueError(f"side must be 'users' or 'items', got {side!r}")
    i = table.index(subject)
    ranked = [
        (c.label, table.prox[i][j], j)
        for j, c in enumerate(table.concepts)
        if j != i and any(g.side == wanted for g in c.generators)
    ]
    ranked.sort(key=lambda t: (-t[1], t[2]))
    if k is not None:
        ranked = ranked[:k]
    return [(label, v) for label, v, _ in ranked]


@dataclass(frozen=True)
class FormalConcept:
    extent: FrozenSet
    intent: FrozenSet
    cut: PhiCut


@dataclass(frozen=True)
class FCALattice:
    """Formal concepts of a binary context ordered by extent inclusion."""

    concepts: Tuple[FormalConcept, ...]
    objects: Tuple
    attributes: Tuple

    def leq(self, i: int, j: int) -> bool:
        return self.concepts[i].extent <= self.concepts[j].extent

    @property
    def bottom(self) -> int:
        return min(range(len(self.concepts)), key=lambda i: len(self.concepts[i].extent))

    @property
    def top(self) -> int:
        return max(range(len(self.concepts)), key=lambda i: len(self.concepts[i].extent))

    def find(self, extent) -> int:
        extent = frozenset(extent)
        for i, c in enumerate(self.concepts):
            if c.extent == extent:
                return i
        raise KeyError(f"{set(extent)} is not an extent")

    def join(self, indices: Sequence[int]) -> int:
        """Least concept above all of ``indices`` (the bottom for none)."""
        common = frozenset(self.attributes)
        for i in indices:
            common &= self.concepts[i].intent
        return min(
            (i for i, c in enumerate(self.concepts) if c.intent == common),
            key=lambda i: len(self.concepts[i].extent),
        )

    def meet(self, indices: Sequence[int]) -> int:
        common = frozenset(self.objects)
        for i in indices:
            common &= self.concepts[i].extent
        return self.find(common)

    def object_concept(self, obj) -> int:
        """Smallest concept whose extent contains ``obj``."""
        return min(
            (i for i, c in enumerate(self.concepts) if obj in c.extent),
            key=lambda i: len(self.concepts[i].extent),
        )

    def covers(self) -> List[Tuple[int, int]]:
        n = len(self.concepts)
        lt = [[i != j and self.leq(i, j) for j in range(n)] for i in range(n)]
        return [
            (i, j)
            for i in range(n)
            for j in range(n)
            if lt[i][j] and not any(lt[i][k] and lt[k][j] for k in range(n))
        ]

    def concept_label(self, i: int) -> str:
        c = self.concepts[i]
        ext = ",".join(str(o) for o in self.objects if o in c.extent)
        itt = ",".join(str(a) for a in self.attributes if a in c.intent)
        return f"({{{ext}}}, {{{itt}}})"


def _order_key(c: FormalConcept, objects) -> tuple:
    return (len(c.extent), tuple(o not in c.extent for o in objects))


def _derive(masks, subset: int, full: int) -> int:
    """Intersection of ``masks[i]`` over the bits ``i`` of ``subset``."""
    out = full
    i = 0
    while subset:
        if subset & 1:
            out &= masks[i]
        subset >>= 1
        i += 1
    return out


def fca_lattice(phi: ContextMatrix) -> FCALattice:
    """All {0,1}-valued Φ-cuts of a binary context, i.e. its formal concepts.

    On {0,1} values the Φ-closure is the classical derivation, so subsets of
    the smaller side are closed as bitmasks and only the distinct results are
    turned into cuts. Concepts are ordered by extent size, then lexically by
    object order.
    """
    if not (phi.is_binary() and phi.source.is_binary() and phi.target.is_binary()):
        raise UnsupportedFragmentError(
            "fca_lattice needs {0,1}-valued proxets and matrix; use representable_concepts for graded contexts"
        )
    a, b = phi.source, phi.target
    n, m = len(a), len(b)
    side = min(n, m)
    if side > MAX_FCA_SIDE:
        raise SizeError(f"brute-force concept enumeration over {side} elements exceeds bound {MAX_FCA_SIDE}")
    row_masks = [sum(v.numerator << j for j, v in enumerate(r)) for r in phi.rows]
    col_masks = [sum(phi.rows[i][j].numerator << i for i in range(n)) for j in range(m)]
    full_a, full_b = (1 << n) - 1, (1 << m) - 1
    found = {}
    if n <= m:
        for xs in range(1 << n):
            intent = _derive(row_masks, xs, full_b)
            found.setdefault(_derive(col_masks, intent, full_a), intent)
    else:
        for ys in range(1 << m):
            extent = _derive(col_masks, ys, full_a)
            found.setdefault(extent, _derive(row_masks, extent, full_b))

    def bits(mask, size):
        return tuple(ONE if mask >> k & 1 else ZERO for k in range(size))

    concepts = [
        FormalConcept(
            frozenset(x for k, x in enumerate(a.labels) if ext >> k & 1),
            frozenset(y for k, y in enumerate(b.labels) if itt >> k & 1),
            PhiCut(LowerVector(a, bits(ext, n)), UpperVector(b, bits(itt, m))),
        )
        for ext, itt in found.items()
    ]
    concepts.sort(key=lambda c: _order_key(c, a.labels))
    return FCALattice(tuple(concepts), a.labels, b.labels)
