import random

from gmpy2 import mpz

from tropfew.realsolve.resultant import bareiss_det, resultant_y, sylvester, unpack_signed

from oracles import sylvester_det_y


def random_bipoly(rng, dx, dy, density=0.6, cmax=9):
    f = {}
    for i in range(dx + 1):
        for j in range(dy + 1):
            if rng.random() < density:
                c = rng.randint(-cmax, cmax)
                if c:
                    f[(i, j)] = c
    return f


def ints(v):
    return [int(c) for c in v]


def test_simple_resultants():
    # Res_y(y - x, y + x - 2) = 2 - 2x up to the sign convention of the determinant
    assert ints(resultant_y({(0, 1): 1, (1, 0): -1}, {(0, 1): 1, (1, 0): 1, (0, 0): -2})) == \
        sylvester_det_y({(0, 1): 1, (1, 0): -1}, {(0, 1): 1, (1, 0): 1, (0, 0): -2})
    # y and y^3 + 1: the determinant is +1
    assert ints(resultant_y({(0, 1): 1}, {(0, 3): 1, (0, 0): 1})) == [1]


def test_common_factor_gives_zero():
    f = {(1, 1): 1, (0, 0): -1}          # xy - 1
    g = {(2, 1): 1, (1, 0): -1}          # x (xy - 1)
    assert not any(resultant_y(f, g))


def test_bareiss_matches_cofactor_expansion():
    rng = random.Random(61)

    def cofactor(m):
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** j * m[0][j] * cofactor([row[:j] + row[j + 1:] for row in m[1:]])
                   for j in range(len(m)))

    for _ in range(100):
        n = rng.randint(1, 5)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert bareiss_det(m) == cofactor(m)


def test_signed_digits_round_trip():
    rng = random.Random(62)
    for _ in range(200):
        coeffs = [rng.randint(-1000, 1000) for _ in range(rng.randint(1, 8))]
        v = sum(mpz(c) << (16 * i) for i, c in enumerate(coeffs))
        out = ints(unpack_signed(v, 16))
        while len(out) > len(coeffs) and out[-1] == 0:
            out.pop()
        assert out[:len(coeffs)] == coeffs


def test_sylvester_shape():
    mat = sylvester({(0, 2): 1, (0, 0): -1}, {(0, 3): 2, (1, 0): 1})
    assert len(mat) == 5 and all(len(r) == 5 for r in mat)


def test_against_sympy_determinant():
    rng = random.Random(63)
    for _ in range(80):
        f = random_bipoly(rng, rng.randint(0, 3), rng.randint(1, 3))
        g = random_bipoly(rng, rng.randint(0, 3), rng.randint(1, 3))
        if not f or not g or max(j for _, j in f) == 0 or max(j for _, j in g) == 0:
            continue
        mine = ints(resultant_y(f, g))
        want = sylvester_det_y(f, g)
        while len(mine) > 1 and mine[-1] == 0:
            mine.pop()
        if not want:
            want = [0]
        assert mine == want, (f, g)
