import random

import pytest

from lform import default_field, Poly, build_space
from lform.poly import compose
from lform.lspace import criterion_value_det
from lform.char2 import (split_uv, bezout_prompt_n2, bezout_prompt_n2_even, validate_w,
                         construct_gamma, general_construct, expected_lambda, wr_equivalence,
                         pullback_parameters, InvalidWTuple)
from lform.errors import WrongCharacteristic, NotCoprime, DegreeDrop, TupleTooSmall, InputError

from _gen import rand_poly, rand_w

F = default_field(2, 4)


def test_split_uv():
    rng = random.Random(13)
    X = Poly.X(F)
    for _ in range(20):
        Q = rand_poly(F, rng.randrange(1, 8), rng)
        U, V = split_uv(Q)
        assert U * U + X * V * V == Q
    with pytest.raises(WrongCharacteristic):
        split_uv(Poly(default_field(3), [1, 1]))


def test_bezout_prompts():
    rng = random.Random(14)
    done = 0
    while done < 10:
        V1, V2 = rand_poly(F, 2, rng), rand_poly(F, 2, rng)
        try:
            Q = bezout_prompt_n2(V1, V2)
        except (NotCoprime, DegreeDrop):
            continue
        assert criterion_value_det(Q) == Poly.const(F, 1)
        Q2 = bezout_prompt_n2(V1, V2, shift=3)
        assert criterion_value_det(Q2) == Poly.const(F, 1)
        done += 1
    X = Poly.X(F)
    with pytest.raises(NotCoprime):
        bezout_prompt_n2(X * (X + 1), (X * (X + 2)).scale(3))
    with pytest.raises(DegreeDrop):
        bezout_prompt_n2(X + 1, X)
    Q = bezout_prompt_n2_even(X + 1, X.scale(2) + 3)
    assert criterion_value_det(Q) == Poly.const(F, 1)


def test_validate_w():
    X = Poly.X(F)
    assert validate_w([Poly.const(F, 1), Poly.const(F, 2)]) == 0
    with pytest.raises(InvalidWTuple):
        validate_w([X, X])
    with pytest.raises(InvalidWTuple):
        validate_w([X * (X + 1), X * (X + 2).scale(3)])
    with pytest.raises(TupleTooSmall):
        validate_w([X])


def test_gamma_congruences():
    rng = random.Random(15)
    W = rand_w(F, 3, 1, rng)
    g, V = construct_gamma(W)
    assert len(V) == 3
    assert g.deg < 7


def test_lambda_law():
    rng = random.Random(16)
    for n, d in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1)]:
        W = rand_w(F, n, d, rng)
        assert general_construct(W)[0].lam == expected_lambda(n, d, None)
        R = rand_poly(F, 2, rng)
        assert general_construct(W, R)[0].lam == expected_lambda(n, d, R)
    assert expected_lambda(2, 1, None) == 3
    assert expected_lambda(3, 1, Poly(F, [0, 1])) == 2 * (1 + 3)


def test_standard_l22():
    w = F.subfield(4)[2]
    Q = general_construct([Poly.const(F, 1), Poly.const(F, w)])[0]
    assert Q.lam == 1
    s = build_space(Q)
    assert set(s.poles) == {1, w, F.add(1, w)}


def test_wr_equivalence():
    rng = random.Random(17)
    W = rand_w(F, 2, 1, rng)
    R = Poly(F, [1, 1])
    assert wr_equivalence(W, R, W, R) == ("same", None)
    assert wr_equivalence(W, R, [W[1], W[0]], R)[0] == "same"
    b = 6
    W2 = [compose(w, Poly(F, [F.mul(b, b), 1])) for w in W]
    verdict = wr_equivalence(W, R, W2, R + Poly.const(F, b))
    assert verdict == ("equivalent", b)


def test_pullback_closure_and_errors():
    rng = random.Random(18)
    W, R = rand_w(F, 2, 1, rng), Poly(F, [2])
    S = Poly(F, [3, 1, 5])
    WS, R2 = pullback_parameters(W, R, S)
    Q = general_construct(W, R)[0]
    assert tuple(compose(q, S) for q in Q.Q) == general_construct(WS, R2)[0].Q
    with pytest.raises(InputError):
        pullback_parameters(W, R, Poly(F, [0, 2]))
