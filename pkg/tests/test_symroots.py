import cmath
import itertools
import random
from fractions import Fraction

import pytest

from hypinv.rational import INF
from hypinv.symroots import (
    RootConfig,
    cross_ratio,
    normalize_finite,
    pairing_cross_ratio,
    pairing_difference,
    sym_discriminant,
    symroot_pow,
    symroot_val,
)

CFG6 = RootConfig(2, tuple(Fraction(x) for x in range(6)))
CFG3 = RootConfig(2, tuple(Fraction(x) for x in (0, 9, 1, 10, 2, 11)))


def test_config_validation():
    with pytest.raises(ValueError):
        RootConfig(1, (Fraction(0),) * 4)
    with pytest.raises(ValueError):
        RootConfig(2, tuple(Fraction(x) for x in range(5)))
    with pytest.raises(ValueError):
        RootConfig(2, (Fraction(0),) + tuple(Fraction(x) for x in range(5)))
    with pytest.raises(ValueError):
        RootConfig(2, (INF, INF) + tuple(Fraction(x) for x in range(4)))


def test_symroot_pow_worked_value():
    assert symroot_pow(CFG6, 0, 1, 2) == Fraction(16, 5)


def test_symroot_val_worked_value():
    # roots (0, 9, 1, 10, 2, 11): i -> 0, j -> 1, k -> 9
    assert symroot_val(CFG3, 3, 0, 2, 1) == 2


def test_symroot_val_units():
    # all root differences are units at 7
    for i, j, k in itertools.permutations(range(6), 3):
        assert symroot_val(CFG6, 7, i, j, k) == 0


def test_symroot_val_rejects_two():
    with pytest.raises(ValueError):
        symroot_val(CFG6, 2, 0, 1, 2)


def test_antisymmetry():
    for i, j, k in itertools.permutations(range(6), 3):
        assert symroot_pow(CFG6, i, j, k) * symroot_pow(CFG6, j, i, k) == 1


def test_cocycle():
    rng = random.Random(11)
    for g in (2, 3):
        roots = tuple(Fraction(x) for x in rng.sample(range(-40, 40), 2 * g + 2))
        cfg = RootConfig(g, roots)
        i, j, k = rng.sample(range(len(roots)), 3)
        prod = (
            symroot_pow(cfg, i, j, k)
            * symroot_pow(cfg, j, k, i)
            * symroot_pow(cfg, k, i, j)
        )
        assert prod == -1


def test_translation_invariance():
    shifted = RootConfig(2, tuple(r + 7 for r in CFG6.roots))
    for i, j, k in itertools.permutations(range(6), 3):
        assert symroot_pow(shifted, i, j, k) == symroot_pow(CFG6, i, j, k)


def test_cross_ratio_value_and_errors():
    assert cross_ratio(CFG6, 0, 1, 2, 3) == Fraction(4, 3)
    with pytest.raises(ValueError):
        cross_ratio(CFG6, 0, 1, 2, 2)
    with pytest.raises(ValueError):
        cross_ratio(CFG6, 0, 1, 2, 9)


def test_disc_product_one():
    for i in range(6):
        prod = Fraction(1)
        for k in range(6):
            if k != i:
                prod *= sym_discriminant(CFG6, i, k)
        assert prod == 1


def test_disc_ratio_identity():
    g2 = 4
    for i, j, k in itertools.permutations(range(6), 3):
        lhs = sym_discriminant(CFG6, i, k) / sym_discriminant(CFG6, j, k)
        assert lhs == -symroot_pow(CFG6, i, j, k) ** (g2 + 1)


def test_disc_numeric_oracle():
    # independent floating path: pick any complex 2g-th root t of P, set
    # l_r = m_r * t and multiply out the discriminant directly
    g2 = 4
    for i, j in [(0, 1), (2, 5), (4, 0)]:
        a = CFG6.roots
        others = [r for r in range(6) if r not in (i, j)]
        m = {r: complex((a[i] - a[r]) / (a[j] - a[r])) for r in others}
        big_p = 1.0
        for r in others:
            big_p *= complex((a[j] - a[r]) / (a[i] - a[r]))
        t = big_p ** (1.0 / g2) if big_p.imag or big_p.real >= 0 else cmath.exp(
            cmath.log(big_p) / g2
        )
        ell = {r: m[r] * t for r in others}
        num = 1.0
        for r, s in itertools.permutations(others, 2):
            num *= ell[r] - ell[s]
        exact = complex(sym_discriminant(CFG6, i, j))
        assert abs(num - exact) <= 1e-9 * max(abs(exact), 1.0)


def test_pairing_difference_worked_value():
    assert pairing_difference(CFG3, 3, 0, 2, 1) == 1


def test_pairing_cross_ratio_is_difference():
    rng = random.Random(5)
    for _ in range(25):
        roots = tuple(Fraction(x) for x in rng.sample(range(-50, 50), 6))
        cfg = RootConfig(2, roots)
        i, j, k, r = rng.sample(range(6), 4)
        p = rng.choice((3, 5, 7))
        assert pairing_cross_ratio(cfg, p, i, j, k, r) == pairing_difference(
            cfg, p, i, j, k
        ) - pairing_difference(cfg, p, i, j, r)


def test_normalize_finite():
    cfg = RootConfig(2, (INF,) + tuple(Fraction(x) for x in range(1, 6)))
    norm = normalize_finite(cfg)
    assert norm.all_finite
    assert "1/(x - 0)" in norm.note
    assert normalize_finite(CFG6) is CFG6


def test_mobius_invariance():
    from hypinv.rational import mobius

    moved = RootConfig(2, tuple(mobius(r, 0, 1, 1, -7) for r in CFG6.roots))
    for i, j, k in itertools.permutations(range(6), 3):
        assert symroot_pow(moved, i, j, k) == symroot_pow(CFG6, i, j, k)


def test_symroot_requires_finite():
    cfg = RootConfig(2, (INF,) + tuple(Fraction(x) for x in range(1, 6)))
    with pytest.raises(ValueError):
        symroot_pow(cfg, 0, 1, 2)
