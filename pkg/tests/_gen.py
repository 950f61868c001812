"""Random inputs shared by the test modules."""
from lform.ff import FieldElem
from lform.poly import Poly
from lform.moore import _Ring, _moore_raw
from lform.char2 import validate_w, InvalidWTuple


def rand_poly(F, deg, rng, monic=False):
    lead = 1 if monic else rng.randrange(1, F.q)
    return Poly(F, [rng.randrange(F.q) for _ in range(deg)] + [lead])


def independent(F, vals):
    return bool(_moore_raw(_Ring([FieldElem(F, x) for x in vals]), list(vals)))


def rand_prompt(F, n, lam, rng):
    while True:
        Q = [rand_poly(F, lam, rng) for _ in range(n)]
        if independent(F, [q.lc() for q in Q]):
            return tuple(Q)


def rand_distinct(F, k, rng, nonzero=False):
    pool = list(range(1 if nonzero else 0, F.q))
    return rng.sample(pool, k)


def rand_w(F, n, d, rng):
    while True:
        W = [rand_poly(F, d, rng) for _ in range(n)]
        try:
            if validate_w(W) == d:
                return W
        except InvalidWTuple:
            pass
