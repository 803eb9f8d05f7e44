"""Proximity matrices between proxets.

A matrix ``Φ: A ↬ B`` assigns a value to every pair ``(a, b)`` and must
satisfy ``d_A(u, x) * Φ(x, y) * d_B(y, v) <= Φ(u, v)``. Composition is the
max-times product. Each matrix induces the adjoint pair

    phi_upper(λ)[b] = min_x λ[x] ⊢ Φ(x, b)
    phi_lower(υ)[a] = min_y υ[y] ⊢ Φ(a, y)

between lower vectors on ``A`` and upper vectors on ``B``; their common
fixpoints are the Φ-cuts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .exceptions import ValidationError
from .proxet import Proxet, Violation
from .values import ONE, ZERO, as_value, format_value, residuate
from .vectors import (
    LowerVector,
    UpperVector,
    vector_proximity_lower,
    vector_proximity_upper,
    yoneda_lower,
)


@dataclass(frozen=True)
class ContextMatrix:
    source: Proxet
    target: Proxet
    rows: Tuple[Tuple[Fraction, ...], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.source), len(self.target)

    def __call__(self, a, b) -> Fraction:
        return self.rows[self.source.index(a)][self.target.index(b)]

    def entries(self) -> Dict[Tuple[str, str], Fraction]:
        return {
            (a, b): self.rows[i][j]
            for i, a in enumerate(self.source.labels)
            for j, b in enumerate(self.target.labels)
        }

    def is_binary(self) -> bool:
        return all(v.denominator == 1 for r in self.rows for v in r)

    def __le__(self, other: "ContextMatrix") -> bool:
        _check_same_shape(self, other)
        return all(x <= y for r, s in zip(self.rows, other.rows) for x, y in zip(r, s))

    def __repr__(self):
        return f"ContextMatrix({len(self.source)}x{len(self.target)})"


@dataclass(frozen=True)
class PhiCut:
    """A pair ``(lower on A, upper on B)`` fixed by the Φ adjunction."""

    lower: LowerVector
    upper: UpperVector

    @property
    def key(self) -> Tuple[Fraction, ...]:
        return self.lower.values

    def to_json(self) -> dict:
        return {"lower": self.lower.to_json()["values"], "upper": self.upper.to_json()["values"]}


@dataclass
class Clause:
    name: str
    ok: bool
    checked: int
    failed: int = 0
    counterexample: Optional[str] = None

    def __str__(self):
        if self.ok:
            return f"{self.name}: OK ({self.checked}/{self.checked} cells)"
        return (
            f"{self.name}: FAILED ({self.checked - self.failed}/{self.checked} cells); "
            f"first counterexample {self.counterexample}"
        )


@dataclass
class DecompositionReport:
    clauses: List[Clause] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)

    def __str__(self):
        return "\n".join(str(c) for c in self.clauses)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "clauses": [
                {"name": c.name, "ok": c.ok, "checked": c.checked, "failed": c.failed,
                 "counterexample": c.counterexample}
                for c in self.clauses
            ],
        }


def _check_same_shape(m: ContextMatrix, n: ContextMatrix):
    if m.source != n.source or m.target != n.target:
        raise ValueError("matrices are between different proxets")


def _as_rows(a: Proxet, b: Proxet, entries) -> Tuple[Tuple[Fraction, ...], ...]:
    if isinstance(entries, Mapping):
        try:
            rows = [[entries[(x, y)] for y in b.labels] for x in a.labels]
        except KeyError as e:
            raise ValueError(f"matrix is missing entry {e.args[0]!r}") from None
    else:
        rows = [list(r) for r in entries]
        if len(rows) != len(a) or any(len(r) != len(b) for r in rows):
            raise ValueError(f"matrix must be {len(a)}x{len(b)}")
    return tuple(tuple(as_value(v) for v in r) for r in rows)


def matrix_violations(a: Proxet, b: Proxet, rows) -> List[Violation]:
    found = []
    na, nb = len(a), len(b)
    da, db = a.table, b.table
    for u, x in itertools.product(range(na), repeat=2):
        if da[u][x] == ZERO:
            continue
        for y, v in itertools.product(range(nb), repeat=2):
            lhs = da[u][x] * rows[x][y] * db[y][v]
            if lhs > rows[u][v]:
                found.append(Violation("matrix", (a.labels[u], a.labels[x], b.labels[y], b.labels[v]), lhs, rows[u][v]))
    return found


def validate_matrix(a: Proxet, b: Proxet, entries) -> ContextMatrix:
    """Check ``d_A(u,x) Φ(x,y) d_B(y,v) <= Φ(u,v)`` for every quadruple."""
    rows = _as_rows(a, b, entries)
    found = matrix_violations(a, b, rows)
    if found:
        raise ValidationError(f"not a proximity matrix ({len(found)} violations)", found)
    return ContextMatrix(a, b, rows)


def identity(a: Proxet) -> ContextMatrix:
    return ContextMatrix(a, a, a.table)


def compose(phi: ContextMatrix, psi: ContextMatrix) -> ContextMatrix:
    """``(Φ;Ψ)(x, z) = max_y Φ(x, y) * Ψ(y, z)``."""
    if phi.target != psi.source:
        raise ValueError("cannot compose: middle proxets differ")
    cols = list(zip(*psi.rows)) if psi.rows else [() for _ in range(len(psi.target))]
    return ContextMatrix(
        phi.source,
        psi.target,
        tuple(tuple(max((p * q for p, q in zip(r, c)), default=ZERO) for c in cols) for r in phi.rows),
    )


def dual_matrix(phi: ContextMatrix) -> ContextMatrix:
    """The largest ``Ψ: B ↬ A`` with ``Φ;Ψ <= Id_A`` and ``Ψ;Φ <= Id_B``.

    ``Φ‡(y, x) = min(min_u Φ(u, y) ⊢ d_A(u, x), min_v Φ(x, v) ⊢ d_B(y, v))``.
    """
    a, b = phi.source, phi.target
    da, db = a.table, b.table
    na, nb = len(a), len(b)
    rows = tuple(
        tuple(
            min(
                min((residuate(phi.rows[u][y], da[u][x]) for u in range(na)), default=ONE),
                min((residuate(phi.rows[x][v], db[y][v]) for v in range(nb)), default=ONE),
            )
            for x in range(na)
        )
        for y in range(nb)
    )
    return ContextMatrix(b, a, rows)


def is_suspension(phi: ContextMatrix) -> bool:
    return dual_matrix(dual_matrix(phi)) == phi


def is_connection(phi: ContextMatrix, psi: ContextMatrix) -> bool:
    return compose(phi, psi) <= identity(phi.source) and compose(psi, phi) <= identity(phi.target)


def is_embedding(phi: ContextMatrix) -> bool:
    return compose(phi, dual_matrix(phi)) == identity(phi.source)


def is_projection(phi: ContextMatrix) -> bool:
    return compose(dual_matrix(phi), phi) == identity(phi.target)


def _check_base(vec, base: Proxet, what: str):
    if vec.base != base:
        raise ValueError(f"{what} does not live on the expected proxet")


def phi_upper(phi: ContextMatrix, lam: LowerVector) -> UpperVector:
    _check_base(lam, phi.source, "lower vector")
    na = len(phi.source)
    return UpperVector(
        phi.target,
        tuple(
            min((residuate(lam.values[x], phi.rows[x][b]) for x in range(na)), default=ONE)
            for b in range(len(phi.target))
        ),
    )


def phi_lower(phi: ContextMatrix, ups: UpperVector) -> LowerVector:
    _check_base(ups, phi.target, "upper vector")
    return LowerVector(
        phi.source,
        tuple(
            min((residuate(v, r[y]) for y, v in enumerate(ups.values)), default=ONE)
            for r in phi.rows
        ),
    )


def adjunction_gap(phi: ContextMatrix, lam: LowerVector, ups: UpperVector) -> Tuple[Fraction, Fraction]:
    """Both sides of ``d(Φ^*λ, υ) = d(λ, Φ_*υ)``, computed independently."""
    return (
        vector_proximity_upper(phi_upper(phi, lam), ups),
        vector_proximity_lower(lam, phi_lower(phi, ups)),
    )


def phi_cut_closure(phi: ContextMatrix, lam: LowerVector) -> PhiCut:
    upper = phi_upper(phi, lam)
    return PhiCut(phi_lower(phi, upper), upper)


def phi_cut_coclosure(phi: ContextMatrix, ups: UpperVector) -> PhiCut:
    lower = phi_lower(phi, ups)
    return PhiCut(lower, phi_upper(phi, lower))


def is_phi_cut(phi: ContextMatrix, lower: LowerVector, upper: UpperVector) -> bool:
    return phi_upper(phi, lower) == upper and phi_lower(phi, upper) == lower


def recover_matrix(phi: ContextMatrix) -> ContextMatrix:
    """Rebuild a matrix from its adjunction via ``Φ(a, b) = phi_upper(down(a))[b]``."""
    return ContextMatrix(
        phi.source,
        phi.target,
        tuple(phi_upper(phi, yoneda_lower(phi.source, a)).values for a in phi.source.labels),
    )


def _first_mismatch(name, got: ContextMatrix, want: ContextMatrix, lhs: str, rhs: str) -> Clause:
    checked = failed = 0
    first = None
    for i, x in enumerate(want.source.labels):
        for j, y in enumerate(want.target.labels):
            checked += 1
            g, w = got.rows[i][j], want.rows[i][j]
            if g != w:
                failed += 1
                if first is None:
                    first = f"({x}, {y}): {lhs} = {format_value(g)}, {rhs} = {format_value(w)}"
    return Clause(name, failed == 0, checked, failed, first)


def column_proximity(p: ContextMatrix) -> ContextMatrix:
    """``(c, c') -> min_x P(x, c) ⊢ P(x, c')``: the columns compared as lower vectors."""
    n = len(p.target)
    return ContextMatrix(
        p.target,
        p.target,
        tuple(
            tuple(min((residuate(r[c], r[c2]) for r in p.rows), default=ONE) for c2 in range(n))
            for c in range(n)
        ),
    )


def row_proximity(e: ContextMatrix) -> ContextMatrix:
    """``(c, c') -> min_y E(c', y) ⊢ E(c, y)``: the rows compared as upper vectors."""
    return ContextMatrix(
        e.source,
        e.source,
        tuple(
            tuple(min((residuate(v2, v) for v, v2 in zip(r, r2)), default=ONE) for r2 in e.rows)
            for r in e.rows
        ),
    )


def verify_decomposition(p: ContextMatrix, e: ContextMatrix, phi: ContextMatrix) -> DecompositionReport:
    """Check a factorization ``Φ = P;E`` through a middle proxet ``D``.

    Clauses, in order: ``P‡;P = Id_D`` (projection), ``E;E‡ = Id_D``
    (embedding), ``P;E = Φ``, and the two isometry conditions saying that
    ``d_D`` is recovered from the columns of ``P`` as lower vectors and from
    the rows of ``E`` as upper vectors. Never raises on a failing clause.
    """
    report = DecompositionReport()
    if p.source != phi.source or e.target != phi.target or p.target != e.source:
        report.clauses.append(Clause("shapes", False, 0, 1, "P: A↬D, E: D↬B and Φ: A↬B must share proxets"))
        return report
    ident = identity(p.target)
    report.clauses.append(_first_mismatch("P projection (P‡;P = Id)", compose(dual_matrix(p), p), ident, "P‡;P", "d_D"))
    report.clauses.append(_first_mismatch("E embedding (E;E‡ = Id)", compose(e, dual_matrix(e)), ident, "E;E‡", "d_D"))
    report.clauses.append(_first_mismatch("P;E = Φ", compose(p, e), phi, "P;E", "Φ"))
    report.clauses.append(_first_mismatch("P columns isometric", column_proximity(p), ident, "d(P-,P-)", "d_D"))
    report.clauses.append(_first_mismatch("E rows isometric", row_proximity(e), ident, "d(E-,E-)", "d_D"))
    return report


def matrices_from_morphism(a: Proxet, b: Proxet, f: Mapping) -> Tuple[ContextMatrix, ContextMatrix]:
    """The matrices ``Ωf(x, y) = d_B(fx, y)`` and ``℧f(y, x) = d_B(y, fx)``."""
    missing = [x for x in a.labels if x not in f]
    if missing:
        raise ValueError(f"map is undefined on {missing}")
    img = [b.index(f[x]) for x in a.labels]
    for i, j in itertools.product(range(len(a)), repeat=2):
        if a.table[i][j] > b.table[img[i]][img[j]]:
            raise ValueError(
                f"map is not monotone: d({a.labels[i]}, {a.labels[j]}) = {format_value(a.table[i][j])} "
                f"> d(f{a.labels[i]}, f{a.labels[j]}) = {format_value(b.table[img[i]][img[j]])}"
            )
    omega = ContextMatrix(a, b, tuple(b.table[img[x]] for x in range(len(a))))
    mho = ContextMatrix(b, a, tuple(tuple(b.table[y][img[x]] for x in range(len(a))) for y in range(len(b))))
    return omega, mho

