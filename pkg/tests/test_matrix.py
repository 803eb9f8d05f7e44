from fractions import Fraction as F

import pytest

from proxlat.concepts import decomposition
from proxlat.exceptions import ValidationError
from proxlat.matrix import (
    ContextMatrix,
    adjunction_gap,
    compose,
    dual_matrix,
    identity,
    is_connection,
    is_embedding,
    is_phi_cut,
    is_projection,
    matrices_from_morphism,
    phi_cut_closure,
    phi_cut_coclosure,
    phi_lower,
    phi_upper,
    recover_matrix,
    validate_matrix,
    verify_decomposition,
)
from proxlat.proxet import discrete, from_poset
from proxlat.values import ONE, ZERO, residuate
from proxlat.vectors import LowerVector, UpperVector, yoneda_lower

import randgen


def random_pair(rng, n=None, m=None):
    a = randgen.proxet(rng, n or rng.randint(1, 4), prefix="a")
    b = randgen.proxet(rng, m or rng.randint(1, 4), prefix="b")
    return a, b, randgen.matrix(rng, a, b)


def chain():
    return from_poset(["0", "1"], {("0", "1")})


# -- validity ------------------------------------------------------------------

def test_discrete_accepts_anything(rng):
    a, b = discrete("xy"), discrete("uvw")
    for _ in range(10):
        validate_matrix(a, b, [[randgen.rational(rng) for _ in range(3)] for _ in range(2)])


def test_identity_is_valid_on_chain():
    c = chain()
    validate_matrix(c, c, c.table)


def test_flipped_chain_is_rejected():
    c = chain()
    flipped = [[1, 0], [1, 1]]
    with pytest.raises(ValidationError) as exc:
        validate_matrix(c, c, flipped)
    assert exc.value.violations


def test_accepts_mapping_entries():
    a, b = discrete("x"), discrete("y")
    phi = validate_matrix(a, b, {("x", "y"): "1/2"})
    assert phi("x", "y") == F(1, 2)


def test_random_saturated_matrices_are_valid(rng):
    for _ in range(30):
        a, b, phi = random_pair(rng)
        validate_matrix(a, b, phi.rows)


# -- composition ----------------------------------------------------------------

def test_identity_units(rng):
    for _ in range(30):
        a, b, phi = random_pair(rng)
        assert compose(identity(a), phi) == phi
        assert compose(phi, identity(b)) == phi


def test_composition_associative(rng):
    for _ in range(30):
        a, b, phi = random_pair(rng)
        c = randgen.proxet(rng, rng.randint(1, 4), prefix="c")
        d = randgen.proxet(rng, rng.randint(1, 4), prefix="d")
        psi = randgen.matrix(rng, b, c)
        chi = randgen.matrix(rng, c, d)
        assert compose(compose(phi, psi), chi) == compose(phi, compose(psi, chi))


def test_composition_oracle():
    a, m, b = discrete("xy"), discrete("pq"), discrete("uv")
    phi = ContextMatrix(a, m, ((F(1, 2), F(1, 3)), (ZERO, ONE)))
    psi = ContextMatrix(m, b, ((F(1, 2), ONE), (F(3, 4), ZERO)))
    got = compose(phi, psi)
    assert got.rows == ((F(1, 4), F(1, 2)), (F(3, 4), ZERO))


def test_compose_rejects_mismatched_middle(rng):
    a, b, phi = random_pair(rng)
    with pytest.raises(ValueError):
        compose(phi, phi) if a != b else compose(phi, identity(discrete(["zz"])))


# -- duals --------------------------------------------------------------------

def test_dual_properties(rng):
    for _ in range(40):
        _, _, phi = random_pair(rng)
        d = dual_matrix(phi)
        assert is_connection(phi, d)
        assert phi <= dual_matrix(d)
        assert dual_matrix(dual_matrix(d)) == d


def test_dual_is_largest_connection_partner(rng):
    # every connection partner found by brute force over a small value grid is below the dual
    a, b = discrete("x"), discrete("y")
    grid = [F(k, 4) for k in range(5)]
    for v in grid:
        phi = ContextMatrix(a, b, ((v,),))
        best = dual_matrix(phi)
        for w in grid:
            psi = ContextMatrix(b, a, ((w,),))
            if is_connection(phi, psi):
                assert psi <= best


def test_identity_is_self_dual_embedding_and_projection(rng):
    for _ in range(20):
        a = randgen.proxet(rng, rng.randint(1, 5))
        i = identity(a)
        assert dual_matrix(i) == i
        assert is_embedding(i) and is_projection(i)


def test_literal_residuated_dual_breaks_identity():
    # min over (u, v) of Φ(u,v) ⊢ d_A(u,x) d_B(y,v), on a discrete pair
    a = discrete("xy")
    i = identity(a)
    n = len(a)
    lit = tuple(
        tuple(
            min(residuate(i.rows[u][v], a.table[u][x] * a.table[y][v]) for u in range(n) for v in range(n))
            for x in range(n)
        )
        for y in range(n)
    )
    assert lit == ((ZERO, ZERO), (ZERO, ZERO))
    assert not compose(i, ContextMatrix(a, a, lit)) == i
    assert dual_matrix(i) == i


def test_ratings_matrix_is_neither_embedding_nor_projection(phi):
    assert not is_embedding(phi)
    assert not is_projection(phi)


# -- adjunction ---------------------------------------------------------------

def test_phi_upper_and_lower_examples(phi, ref):
    low = ref.corrected_lower()
    cut_a = phi_cut_closure(phi, yoneda_lower(phi.source, "a"))
    assert cut_a.upper.values == ref.CONVERTED["a"]
    assert cut_a.lower.values == low["a"]
    cut_t = phi_cut_closure(phi, yoneda_lower(phi.source, "t"))
    assert cut_t.lower.values == low["t"]


def test_phi_lower_of_representable_column(phi, ref):
    b = phi.target
    for j, y in enumerate(ref.ITEMS):
        delta = UpperVector(b, tuple(ONE if k == j else ZERO for k in range(len(b))))
        col = tuple(ref.CONVERTED[u][j] for u in ref.USERS)
        assert phi_lower(phi, delta).values == col


def test_adjunction_holds(rng):
    for _ in range(80):
        a, b, phi = random_pair(rng)
        lam = randgen.lower_vector(rng, a)
        ups = randgen.upper_vector(rng, b)
        left, right = adjunction_gap(phi, lam, ups)
        assert left == right


def test_cut_closure_laws(rng):
    for _ in range(60):
        a, b, phi = random_pair(rng)
        lam = randgen.lower_vector(rng, a)
        cut = phi_cut_closure(phi, lam)
        assert lam <= cut.lower
        assert is_phi_cut(phi, cut.lower, cut.upper)
        assert phi_cut_closure(phi, cut.lower) == cut
        ups = randgen.upper_vector(rng, b)
        co = phi_cut_coclosure(phi, ups)
        assert ups <= co.upper
        assert is_phi_cut(phi, co.lower, co.upper)


def test_recover_matrix(rng, phi):
    assert recover_matrix(phi) == phi
    for _ in range(30):
        _, _, m = random_pair(rng)
        assert recover_matrix(m) == m


def test_wrong_base_rejected(phi):
    with pytest.raises(ValueError):
        phi_upper(phi, LowerVector(discrete("q"), (ONE,)))


# -- decomposition report -----------------------------------------------------

def test_verify_identity_factorization(rng):
    for _ in range(10):
        a, b, phi = random_pair(rng)
        report = verify_decomposition(identity(a), phi, phi)
        factor = [c for c in report.clauses if c.name == "P;E = Φ"][0]
        assert factor.ok and factor.checked == len(a) * len(b)


def test_verify_identity_self(rng):
    a = randgen.proxet(rng, 4)
    report = verify_decomposition(identity(a), identity(a), identity(a))
    assert report.ok
    assert "OK" in str(report)


def test_verify_reports_mutation(phi):
    p, e = decomposition(phi)
    rows = [list(r) for r in e.rows]
    rows[0][0] = ZERO if rows[0][0] else ONE
    bad = ContextMatrix(e.source, e.target, tuple(map(tuple, rows)))
    report = verify_decomposition(p, bad, phi)
    factor = [c for c in report.clauses if c.name == "P;E = Φ"][0]
    assert not factor.ok and factor.counterexample
    assert "FAILED" in str(report)
    assert report.to_json()["ok"] is False


def test_verify_shape_mismatch(phi):
    report = verify_decomposition(identity(phi.source), identity(phi.target), phi)
    assert not report.ok and report.clauses[0].name == "shapes"


# -- morphisms ----------------------------------------------------------------

def test_matrices_from_morphism(rng):
    for _ in range(20):
        a = randgen.proxet(rng, rng.randint(1, 4), prefix="a")
        b = randgen.proxet(rng, rng.randint(1, 4), prefix="b")
        y = rng.choice(b.labels)
        f = {x: y for x in a.labels}
        omega, mho = matrices_from_morphism(a, b, f)
        validate_matrix(a, b, omega.rows)
        validate_matrix(b, a, mho.rows)
        assert identity(a) <= compose(omega, mho)
        assert compose(mho, omega) <= identity(b)


def test_identity_morphism_gives_identity(rng):
    a = randgen.proxet(rng, 4)
    omega, mho = matrices_from_morphism(a, a, {x: x for x in a.labels})
    assert omega == identity(a) == mho


def test_non_monotone_map_rejected():
    c = chain()
    with pytest.raises(ValueError, match="not monotone"):
        matrices_from_morphism(c, c, {"0": "1", "1": "0"})
    with pytest.raises(ValueError, match="undefined"):
        matrices_from_morphism(c, c, {"0": "0"})
