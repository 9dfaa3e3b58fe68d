import random
from fractions import Fraction

import pytest

from doubleoctic.qarith import (
    GFp, GFp2, GFext, InvalidModulusError, NonIntegralError, PrimeIdeal,
    QuadInt, QuadRing, RamifiedEntryError, ideal_from_generator, is_prime,
    legendre, prime_by_image, reduce_mod, residue_quad_char, split_prime,
    sqrt_d_image,
)

Z_SQRT2 = QuadRing(2)
Z_PHI = QuadRing(5)
Z_ZETA = QuadRing(-3)


def test_legendre_basics():
    assert legendre(2, 7) == 1   # 3^2 = 2 mod 7
    assert legendre(-1, 5) == 1  # 2^2 = -1 mod 5
    assert legendre(2, 5) == -1  # squares mod 5 are {1, 4}
    assert legendre(10, 5) == 0
    with pytest.raises(InvalidModulusError):
        legendre(3, 8)
    with pytest.raises(InvalidModulusError):
        legendre(3, 15)


def test_legendre_multiplicative():
    rng = random.Random(7)
    for p in (5, 13, 31, 97):
        for _ in range(50):
            a = rng.randrange(1, p)
            b = rng.randrange(1, p)
            assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_fq_char_examples():
    f25 = GFp2(5)
    # t satisfies t^2 = n, n the smallest non-residue mod 5 (= 2); chi(t)
    # equals legendre of the norm -2 = 3, a non-square mod 5.
    t = f25.join(0, 1)
    assert f25.n == 2
    assert f25.char(t) == -1
    assert f25.char(0) == 0
    f49 = GFp2(7)
    assert f49.char(f49.from_int(4)) == 1  # 4 = 2^2 everywhere


def test_fq_char_is_power_map():
    # chi via norm agrees with x^((q-1)/2) for every element, p <= 31
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        fld = GFp2(p)
        one = fld.from_int(1)
        minus_one = fld.neg(one)
        for x in fld.elements():
            power = fld.pow(x, (fld.q - 1) // 2)
            expect = 0 if x == 0 else (1 if power == one else -1)
            assert power in (0, one, minus_one) or x == 0
            assert fld.char(x) == expect


def test_fq_char_multiplicative():
    fld = GFp2(11)
    rng = random.Random(3)
    for _ in range(200):
        x = rng.randrange(1, fld.q)
        y = rng.randrange(1, fld.q)
        assert fld.char(fld.mul(x, y)) == fld.char(x) * fld.char(y)


def test_char_square_count():
    for fld in (GFp(13), GFp2(5), GFext(3, 2)):
        plus = sum(1 for x in fld.elements() if fld.char(x) == 1)
        assert plus == (fld.q - 1) // 2


def test_split_prime_paper_rows():
    (p1, p2) = split_prime(Z_SQRT2, 7)
    assert p1.kind == "split" and p1.norm == 7
    gens = {str(p1.generator), str(p2.generator)}
    assert gens == {"3 + 1*sqrt(2)", "-3 + 1*sqrt(2)"}

    (i5,) = split_prime(Z_SQRT2, 5)
    assert i5.kind == "inert" and i5.norm == 25

    (q1, q2) = split_prime(Z_PHI, 11)
    assert {abs(g.norm()) for g in (q1.generator, q2.generator)} == {11}
    # sqrt5 + 4 and sqrt5 - 4 name the same pair of ideals
    keys = {ideal_from_generator(Z_PHI, Z_PHI.from_sqrt_coords(s, 1)).key()
            for s in (4, -4)}
    assert keys == {q1.key(), q2.key()}


def test_splitting_law():
    for ring in (Z_SQRT2, Z_PHI, Z_ZETA):
        p = 3
        while p < 1000:
            if is_prime(p):
                ideals = split_prime(ring, p)
                sym = legendre(ring.d, p)
                if sym == 1:
                    assert len(ideals) == 2 and ideals[0].kind == "split"
                    assert ideals[0].key() != ideals[1].key()
                elif sym == -1:
                    assert ideals[0].kind == "inert"
                else:
                    assert ideals[0].kind == "ramified"
            p += 2


def test_reduce_mod_paper_values():
    phi = QuadInt(Z_PHI, -1, 1)  # (-1 + sqrt5)/2
    P = prime_by_image(Z_PHI, 11, phi, 3)
    assert reduce_mod(phi, P) == 3
    # P is the ideal generated by sqrt5 + 4
    assert ideal_from_generator(Z_PHI, Z_PHI.from_sqrt_coords(4, 1)).key() == P.key()

    (p1, p2) = split_prime(Z_SQRT2, 7)
    by_img = {reduce_mod(Z_SQRT2.sqrt_d(), P): P for P in (p1, p2)}
    assert set(by_img) == {3, 4}  # sqrt2 = -+3 mod the two conjugates

    zeta = QuadInt(Z_ZETA, -1, 1)  # (-1 + sqrt-3)/2
    images = {reduce_mod(zeta, P) for P in split_prime(Z_ZETA, 7)}
    assert images == {2, 4}


def test_reduce_mod_is_ring_hom():
    rng = random.Random(11)
    for ring in (Z_SQRT2, Z_PHI, Z_ZETA):
        primes = []
        p = 3
        while p < 100:
            if is_prime(p) and ring.d % p != 0:
                primes.extend(split_prime(ring, p))
            p += 2
        for P in primes:
            if P.norm >= 10**4:
                continue
            fld = P.residue_field()
            for _ in range(10):
                a = QuadInt(ring, rng.randrange(-50, 50), rng.randrange(-50, 50))
                b = QuadInt(ring, rng.randrange(-50, 50), rng.randrange(-50, 50))
                assert reduce_mod(a + b, P) == fld.add(reduce_mod(a, P), reduce_mod(b, P))
                assert reduce_mod(a * b, P) == fld.mul(reduce_mod(a, P), reduce_mod(b, P))


def test_reduce_mod_fraction_and_sqrt_pairs():
    P = split_prime(Z_SQRT2, 7)[0]
    r = reduce_mod(Fraction(1, 2), P)
    assert (2 * r) % 7 == 1
    # x + y*sqrt2 pairs agree with the QuadInt route
    val = reduce_mod((Fraction(3), Fraction(1)), P)
    assert val == reduce_mod(QuadInt(Z_SQRT2, 3, 1), P)
    with pytest.raises(NonIntegralError):
        reduce_mod(Fraction(1, 7), P)


def test_residue_quad_char_paper_rows():
    sqrt2 = Z_SQRT2.sqrt_d()
    (i5,) = split_prime(Z_SQRT2, 5)
    assert residue_quad_char(sqrt2, i5) == 1
    assert residue_quad_char(QuadInt(Z_SQRT2, 3, 0), i5) == 0
    p_3plus = prime_by_image(Z_SQRT2, 7, sqrt2, 4)  # the ideal (sqrt2 + 3)
    assert residue_quad_char(QuadInt(Z_SQRT2, -1, 0), p_3plus) == 1
    with pytest.raises(RamifiedEntryError):
        residue_quad_char(QuadInt(Z_SQRT2, 7, 0), p_3plus)


def test_residue_quad_char_matches_square_sets():
    rng = random.Random(5)
    for ring in (Z_SQRT2, Z_PHI, Z_ZETA):
        p = 3
        while p < 100:
            if is_prime(p) and ring.d % p != 0:
                for P in split_prime(ring, p):
                    if P.norm >= 10**4:
                        continue
                    fld = P.residue_field()
                    squares = {fld.mul(y, y) for y in fld.elements()}
                    for _ in range(8):
                        a = QuadInt(ring, rng.randrange(-60, 60), rng.randrange(-60, 60))
                        r = reduce_mod(a, P)
                        if r == 0:
                            continue
                        assert residue_quad_char(a, P) == (0 if r in squares else 1)
            p += 2


def test_quadint_norm_and_conj():
    x = QuadInt(Z_SQRT2, 3, 1)
    assert x.norm() == 7
    assert x.conj().sqrt_coords() == (3, -1)
    phi = QuadInt(Z_PHI, -1, 1)
    assert phi.norm() == -1
    assert (phi * phi.conj()).a == -1
    zeta = QuadInt(Z_ZETA, -1, 1)
    assert zeta.norm() == 1
    # zeta is a primitive cube root of unity
    assert (zeta * zeta * zeta) == QuadInt(Z_ZETA, 1, 0)
    rng = random.Random(2)
    for ring in (Z_SQRT2, Z_PHI, Z_ZETA):
        for _ in range(30):
            a = QuadInt(ring, rng.randrange(-9, 9), rng.randrange(-9, 9))
            b = QuadInt(ring, rng.randrange(-9, 9), rng.randrange(-9, 9))
            assert (a * b).norm() == a.norm() * b.norm()
            assert a.conj().conj() == a


def test_ideal_from_generator():
    P = ideal_from_generator(Z_SQRT2, QuadInt(Z_SQRT2, 3, 1))
    assert P.p == 7 and reduce_mod(Z_SQRT2.sqrt_d(), P) == 4
    # unit multiples name the same ideal: (3+sqrt2)(1+sqrt2) = 5+4sqrt2
    P2 = ideal_from_generator(Z_SQRT2, QuadInt(Z_SQRT2, 5, 4))
    assert P2.key() == P.key()
    (i13,) = split_prime(Z_PHI, 13)
    assert ideal_from_generator(Z_PHI, QuadInt(Z_PHI, 13, 0)).key() == i13.key()


def test_sqrt_d_image_squares_to_d():
    for ring in (Z_SQRT2, Z_PHI, Z_ZETA):
        for p in (7, 11, 13, 19):
            if ring.d % p == 0:
                continue
            for P in split_prime(ring, p):
                fld = P.residue_field()
                s = sqrt_d_image(P)
                assert fld.mul(s, s) == fld.from_int(ring.d)
