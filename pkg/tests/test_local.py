"""Truncated local cyclotomic arithmetic, valuations, and kappa invariants."""

import random

import pytest

from towerforge.errors import CofactorError, PrecisionError
from towerforge.local import (
    AT_CAP,
    KummerClass,
    LocalCycloElement,
    check_kummer_class_invariance,
    divide_by_pi,
    kappa,
    kappa_cap,
    kummer_class,
    pi_valuation,
)


def random_unit(rng, p, m, precision):
    e = LocalCycloElement.pi(p, m, precision).e
    while True:
        coeffs = [rng.randrange(0, p**precision) for _ in range(e)]
        element = LocalCycloElement(p, m, precision, coeffs)
        if not element.is_zero() and pi_valuation(element) == 0:
            return element


class TestPiValuation:
    def test_uniformizer(self):
        assert pi_valuation(LocalCycloElement.pi(3, 1, 6)) == 1

    def test_p_is_pi_to_the_e(self):
        assert pi_valuation(LocalCycloElement.from_int(3, 3, 1, 6)) == 2
        assert pi_valuation(LocalCycloElement.from_int(3, 3, 2, 4)) == 6
        assert pi_valuation(LocalCycloElement.from_int(2, 2, 2, 5)) == 2

    def test_unit(self):
        assert pi_valuation(LocalCycloElement.from_int(2, 3, 1, 6)) == 0

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            pi_valuation(LocalCycloElement.from_int(0, 3, 1, 4))
        with pytest.raises(ValueError):
            # 81 = 3^4 vanishes mod 3^4
            pi_valuation(LocalCycloElement.from_int(81, 3, 1, 4))

    def test_additivity(self):
        rng = random.Random(5)
        for p, m in ((2, 1), (2, 2), (3, 1), (3, 2)):
            pi = LocalCycloElement.pi(p, m, 8)
            for _ in range(25):
                a = random_unit(rng, p, m, 8) * pi ** rng.randrange(0, 3)
                b = random_unit(rng, p, m, 8) * pi ** rng.randrange(0, 3)
                va, vb = pi_valuation(a), pi_valuation(b)
                if va + vb < a.cap:
                    assert pi_valuation(a * b) == va + vb


class TestDivideByPi:
    def test_total_ramification_witness(self):
        for p, m in ((2, 2), (3, 1), (3, 2)):
            e = LocalCycloElement.pi(p, m, 8).e
            p_elem = LocalCycloElement.from_int(p, p, m, 8)
            pi = LocalCycloElement.pi(p, m, 8)
            assert pi_valuation(pi**e) == pi_valuation(p_elem) == e
            unit = divide_by_pi(p_elem, e)
            assert pi_valuation(unit) == 0
            # multiply back and compare at the reduced precision
            back = (pi**e * unit).reduce_precision(unit.precision)
            assert back == p_elem.reduce_precision(unit.precision)

    def test_round_trip(self):
        rng = random.Random(13)
        for _ in range(20):
            u = random_unit(rng, 3, 1, 7)
            pi = LocalCycloElement.pi(3, 1, 7)
            x = u * pi**3
            quotient = divide_by_pi(x, 3)
            assert pi_valuation(quotient) == 0
            assert (quotient * pi**3).reduce_precision(4) == x.reduce_precision(4)

    def test_inexact_rejected(self):
        with pytest.raises(ValueError):
            divide_by_pi(LocalCycloElement.from_int(2, 3, 1, 6), 1)

    def test_precision_exhaustion(self):
        pi = LocalCycloElement.pi(3, 1, 2)
        with pytest.raises(PrecisionError):
            divide_by_pi(pi * pi, 2)


class TestKappa:
    def test_one_reaches_lmax(self):
        one = LocalCycloElement.from_int(1, 3, 1, 6)
        assert kappa(one, 3) == 3
        one2 = LocalCycloElement.from_int(1, 2, 2, 8)
        assert kappa(one2, 4) == 4

    def test_one_plus_pi(self):
        # frozen from the exhaustive enumeration itself: units cube to +-1
        # mod pi^2 when p = 3, so 1 + pi is a cube only to level 1
        x = LocalCycloElement(3, 1, 6, [2, -1])
        assert kappa(x, 3) == 1

    def test_pth_power_reaches_lmax(self):
        rng = random.Random(17)
        for p, m in ((2, 1), (2, 2), (3, 1), (3, 2)):
            cap = kappa_cap(p, m)
            gamma = random_unit(rng, p, m, 8)
            assert kappa(gamma**p, cap) == cap

    def test_invariance_under_unit_pth_powers(self):
        rng = random.Random(19)
        for p, m in ((2, 1), (2, 2), (3, 1)):
            cap = kappa_cap(p, m)
            for _ in range(10):
                u = random_unit(rng, p, m, 8)
                gamma = random_unit(rng, p, m, 8)
                assert kappa(u, cap) == kappa(u * gamma**p, cap)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            kappa(LocalCycloElement.pi(3, 1, 6), 3)

    def test_domain_enforcement(self):
        with pytest.raises(ValueError):
            kappa(LocalCycloElement.from_int(1, 5, 1, 6), 3)
        with pytest.raises(ValueError):
            kappa(LocalCycloElement.from_int(1, 3, 2, 6), 9)  # above the level limit
        with pytest.raises(ValueError):
            kappa(LocalCycloElement.from_int(1, 3, 1, 6), 4)  # above p^m

    def test_insufficient_precision(self):
        with pytest.raises(PrecisionError):
            kappa(LocalCycloElement.from_int(1, 3, 1, 2), 3)


class TestKummerClass:
    def test_uniformizer_shape(self):
        assert kummer_class(LocalCycloElement.pi(3, 1, 8)) == KummerClass(1, None)

    def test_unit_one(self):
        cls = kummer_class(LocalCycloElement.from_int(1, 3, 1, 8))
        assert cls == KummerClass(0, kappa_cap(3, 1))

    def test_valuation_reduced_mod_p(self):
        pi = LocalCycloElement.pi(3, 1, 8)
        two = LocalCycloElement.from_int(2, 3, 1, 8)
        assert kummer_class(two * pi**2) == KummerClass(2, None)
        # v = 3 is absorbed into the p-th power pi^3, leaving the unit part
        assert kummer_class(two * pi**3) == kummer_class(two * pi**3)
        assert kummer_class(two * pi**3).v_mod_p == 0

    def test_invariant_under_pth_power_units(self):
        rng = random.Random(23)
        for p, m in ((2, 2), (3, 1)):
            for _ in range(8):
                u = random_unit(rng, p, m, 8)
                gamma = random_unit(rng, p, m, 8)
                assert kummer_class(u) == kummer_class(u * gamma**p)


class TestKummerClassInvariance:
    def test_uniformizer_with_pth_power_cofactor(self):
        rng = random.Random(29)
        pi = LocalCycloElement.pi(3, 1, 8)
        gamma = random_unit(rng, 3, 1, 8)
        assert check_kummer_class_invariance(pi, [gamma**3])

    def test_unit_with_two_cofactors(self):
        rng = random.Random(31)
        u = random_unit(rng, 3, 1, 8)
        g1, g2 = random_unit(rng, 3, 1, 8), random_unit(rng, 3, 1, 8)
        assert check_kummer_class_invariance(u, [g1**3, g2**3])

    def test_bad_cofactor_reported_distinctly(self):
        u = LocalCycloElement.from_int(1, 3, 1, 8)
        x = LocalCycloElement(3, 1, 8, [2, -1])  # 1 + pi: kappa = 1 < cap
        with pytest.raises(CofactorError):
            check_kummer_class_invariance(u, [x])
        with pytest.raises(CofactorError):
            check_kummer_class_invariance(u, [LocalCycloElement.pi(3, 1, 8)])


class TestElementBasics:
    def test_immutability(self):
        element = LocalCycloElement.from_int(1, 3, 1, 4)
        with pytest.raises(AttributeError):
            element.coeffs = (0, 0)

    def test_reduction_mod_cyclotomic(self):
        # zeta^2 + zeta + 1 = 0 in the p = 3, m = 1 ring
        z2 = LocalCycloElement(3, 1, 4, [0, 0, 1])
        expected = LocalCycloElement(3, 1, 4, [-1, -1])
        assert z2 == expected

    def test_ring_mismatch(self):
        a = LocalCycloElement.from_int(1, 3, 1, 4)
        b = LocalCycloElement.from_int(1, 2, 2, 4)
        with pytest.raises(ValueError):
            _ = a * b

    def test_at_cap_repr(self):
        assert repr(AT_CAP) == "AT_CAP"
