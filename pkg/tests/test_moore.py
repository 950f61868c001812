import random
from itertools import permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from lform import default_field, FieldElem, Poly
from lform.moore import (moore_det, moore_minor_map, delta_epsilon, span, structural_poly,
                         structural_poly_fast, dickson_invariants, moore_product, bareiss,
                         apply_matrix, random_gl, int_det_mod, cofactor_matrix, check_identities,
                         check_poly_identities)
from lform.errors import DependentBasis, SingularTuple, ZeroEpsilon, TupleTooSmall


def leibniz(F, rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i, j in enumerate(perm):
            term = F.mul(term, rows[i][j])
        total = F.sub(total, term) if inv % 2 else F.add(total, term)
    return total


def moore_rows(F, a):
    return [[F.pow(x, F.p ** i) for x in a] for i in range(len(a))]


@pytest.mark.parametrize("p,k,n", [(2, 4, 3), (3, 3, 3), (5, 2, 2), (7, 1, 1)])
def test_moore_det_against_leibniz(p, k, n):
    F = default_field(p, k)

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n))
    def run(a):
        d = moore_det([FieldElem(F, x) for x in a])
        assert d.v == leibniz(F, moore_rows(F, a))
        assert moore_product([FieldElem(F, x) for x in a]) == d
        independent = len({x for x in span(F, a)}) == p ** n
        assert bool(d) == independent
    run()


def test_frozen_moore_values():
    F = default_field(2, 2)
    mu = FieldElem(F, 2)
    assert moore_det([FieldElem(F, 1), mu]) == 1
    G = default_field(3, 2)
    # (1, mu): mu^3 - mu over F9
    d = moore_det([FieldElem(G, 1), FieldElem(G, 3)])
    assert d == FieldElem(G, G.sub(G.pow(3, 3), 3))


def test_minor_map_and_delta_epsilon():
    F = default_field(3, 3)
    rng = random.Random(5)
    for _ in range(20):
        a = [FieldElem(F, rng.randrange(F.q)) for _ in range(3)]
        phi = moore_minor_map(a)
        assert phi[1] == -moore_det([a[0], a[2]])
        for eps in product(range(3), repeat=3):
            if any(eps):
                want = FieldElem(F, 0)
                for e, m in zip(eps, phi):
                    want = want + m * e
                assert delta_epsilon(eps, a) == want
    with pytest.raises(ZeroEpsilon):
        delta_epsilon((0, 3, 0), a)
    with pytest.raises(TupleTooSmall):
        moore_minor_map([a[0]])


def test_structural_poly():
    F = default_field(5, 2)
    basis = [FieldElem(F, 1), FieldElem(F, 5)]
    P = structural_poly(basis)
    assert P.deg == 25 and P.lc() == 1
    assert all(P.eval(x) == 0 for x in range(F.q))
    # additive: only p-power monomials
    assert all(not c for i, c in enumerate(P.c) if i not in (1, 5, 25))
    assert P == structural_poly_fast(F, [1, 5])
    with pytest.raises(DependentBasis):
        structural_poly([FieldElem(F, 1), FieldElem(F, 2)])


def test_dickson_are_structural_coefficients():
    F = default_field(2, 4)
    rng = random.Random(6)
    for _ in range(10):
        a = [FieldElem(F, rng.randrange(1, F.q)) for _ in range(3)]
        if not moore_det(a):
            continue
        P = structural_poly(a)
        cs = dickson_invariants(a)
        # P_V = X^(p^n) + sum (-1)^(n-i) c_{n,i} X^(p^i)
        for i, c in enumerate(cs):
            sign = -1 if (3 - i) % 2 else 1
            assert P.coeff(2 ** i) == (c * sign).v
    with pytest.raises(SingularTuple):
        dickson_invariants([FieldElem(F, 1), FieldElem(F, 1)])


def test_gl_equivariance_of_det():
    F = default_field(3, 3)
    rng = random.Random(7)
    for _ in range(20):
        a = [rng.randrange(F.q) for _ in range(3)]
        M = random_gl(3, 3, rng)
        b = apply_matrix(F, a, M)
        da = moore_det([FieldElem(F, x) for x in a])
        db = moore_det([FieldElem(F, x) for x in b])
        assert db == da * int_det_mod(M, 3)


def test_cofactor_inverse():
    rng = random.Random(8)
    for p in (2, 3, 5):
        M = random_gl(p, 3, rng)
        C = cofactor_matrix(M, p)
        d = int_det_mod(M, p)
        for i in range(3):
            for j in range(3):
                s = sum(M[i][k] * C[j][k] for k in range(3)) % p
                assert s == (d if i == j else 0)


def test_bareiss_matches_leibniz_on_polys():
    F = default_field(7)
    rng = random.Random(9)
    for _ in range(10):
        m = [[Poly(F, [rng.randrange(7) for _ in range(3)]) for _ in range(3)] for _ in range(3)]
        x = rng.randrange(7)
        assert bareiss(m).eval(x) == leibniz(F, [[e.eval(x) for e in r] for r in m])


def test_identity_suite_small():
    counts = check_identities(default_field(2, 3), 3, trials=30, rng=random.Random(1))
    assert counts["product_formula"] == 30 and counts["nested_moore_3_1"] == 30
    assert check_poly_identities(default_field(3), 3, trials=3)
