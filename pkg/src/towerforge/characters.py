"""Dirichlet characters of prime-power modulus and relative class numbers.

The relative class number h^- of the cyclotomic field of conductor q = p^m is
recomputed from scratch two independent ways:

* product formula: h^- = Q * w * prod_{chi odd} (-B(chi)/2), where
  B(chi) = (1/q) sum_a chi(a) a over units a mod q, w is the number of roots
  of unity in the field (q for even q, 2q for odd q) and the unit index Q is 1
  for prime-power conductor. The product is grouped into Galois orbits of
  characters; each orbit contributes the norm of one representative's factor,
  so the heavy arithmetic happens in the small field Q(zeta_ord(chi)).

* determinant oracle: no characters at all. Over a half-system a_1..a_n of
  units mod q (one from each pair {a, -a}), the matrix with entries
  g(a_i * a_j^-1), for any odd function g on the units, has the vectors
  (chi(a_j))_j as eigenbasis with eigenvalues sum_{half} g(a)chi(a), one per
  odd character chi. Taking g(x) = R(x)/q - 1/2 (R = least positive residue)
  makes the eigenvalue B(chi)/2, hence h^- = Q * w * |det|. The implementation
  scales entries to the integers 2R(a_i a_j^-1) - q and divides (2q)^n back out.

Character values are held as exponents on fixed generators and only
materialized into cyclotomic elements inside the B(chi) sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from math import gcd, lcm

from .arith import FactoredInteger, euler_phi, factorize, is_prime
from .cyclotomic import CycloElement, _poly_divmod_monic, cyclo_norm, cyclo_poly, integer_det
from .errors import BudgetExceededError, IntegralityError


@dataclass(frozen=True)
class _UnitGroup:
    """Structure of (Z/q)^* for prime-power q: fixed generators and dlog table."""

    modulus: int
    gens: tuple[int, ...]
    orders: tuple[int, ...]
    exponent: int
    dlog: dict[int, tuple[int, ...]]


_group_cache: dict[int, _UnitGroup] = {}


def _primitive_root(p: int, m: int) -> int:
    """Smallest primitive root mod p^m, p odd."""
    q = p**m
    phi = euler_phi(q)
    prime_divisors = factorize(phi).primes
    for g in range(2, q):
        if g % p == 0:
            continue
        if all(pow(g, phi // r, q) != 1 for r in prime_divisors):
            return g
    raise AssertionError("no primitive root found for an odd prime power")


def _unit_group(q: int, p: int, m: int) -> _UnitGroup:
    cached = _group_cache.get(q)
    if cached is not None:
        return cached
    if p == 2:
        # (Z/4)^* is cyclic on -1; for 2^m, m >= 3, fix the generators -1 and 5.
        if m == 2:
            gens, orders = (q - 1,), (2,)
        else:
            gens, orders = (q - 1, 5), (2, 2 ** (m - 2))
    else:
        gens, orders = (_primitive_root(p, m),), (euler_phi(q),)
    dlog: dict[int, tuple[int, ...]] = {}
    for exps in iter_product(*(range(s) for s in orders)):
        a = 1
        for g, e in zip(gens, exps):
            a = a * pow(g, e, q) % q
        dlog[a] = exps
    assert len(dlog) == euler_phi(q)
    group = _UnitGroup(q, gens, orders, lcm(*orders), dlog)
    _group_cache[q] = group
    return group


def _validated_conductor(p: int, m: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("m must be >= 1")
    q = p**m
    if q <= 2:
        raise ValueError(f"conductor {q} has no odd characters; h^- is trivially 1")
    return q


@dataclass(frozen=True)
class DirichletCharacter:
    """Character of (Z/q)^*, q a prime power, as exponents on fixed generators.

    chi(g_i) = zeta_{s_i}^{generator_images[i]} where s_i is the order of the
    i-th generator. ``order`` is the order of chi in the character group and
    ``parity`` is chi(-1) in {+1, -1}.
    """

    modulus: int
    generator_images: tuple[int, ...]
    order: int
    parity: int

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    def _group(self) -> _UnitGroup:
        group = _group_cache.get(self.modulus)
        if group is None:
            raise ValueError(f"no unit-group structure for modulus {self.modulus}")
        return group

    def value_exponent(self, a: int) -> int:
        """Exponent k with chi(a) = zeta_order^k, for a coprime to the modulus."""
        group = self._group()
        exps = group.dlog.get(a % self.modulus)
        if exps is None:
            raise ValueError(f"{a} is not a unit mod {self.modulus}")
        big = group.exponent
        t = 0
        for x, k, s in zip(exps, self.generator_images, group.orders):
            t += x * k * (big // s)
        t %= big
        num = t * self.order
        assert num % big == 0
        return num // big

    def __pow__(self, t: int) -> "DirichletCharacter":
        group = self._group()
        images = tuple(k * t % s for k, s in zip(self.generator_images, group.orders))
        return _make_character(group, images)


def _make_character(group: _UnitGroup, images: tuple[int, ...]) -> DirichletCharacter:
    order = 1
    for k, s in zip(images, group.orders):
        order = lcm(order, s // gcd(s, k))
    minus_one = group.dlog[group.modulus - 1]
    big = group.exponent
    t = sum(x * k * (big // s) for x, k, s in zip(minus_one, images, group.orders)) % big
    assert t in (0, big // 2)
    parity = 1 if t == 0 else -1
    return DirichletCharacter(group.modulus, images, order, parity)


def characters_mod(p: int, m: int) -> list[DirichletCharacter]:
    """All phi(p^m) characters of (Z/p^m)^*, in lexicographic image order."""
    q = _validated_conductor(p, m)
    group = _unit_group(q, p, m)
    chars = [
        _make_character(group, images)
        for images in iter_product(*(range(s) for s in group.orders))
    ]
    assert sum(1 for c in chars if c.is_odd) == len(chars) // 2
    return chars


def gen_bernoulli_b1(chi: DirichletCharacter) -> CycloElement:
    """B(chi) = (1/q) sum_{a unit mod q} chi(a) a, as an element of Q(zeta_ord(chi)).

    For prime-power modulus this equals the value attached to the primitive
    character inducing chi, because the single ramified prime always divides
    the conductor of a nontrivial chi.
    """
    group = chi._group()
    q = chi.modulus
    d = chi.order
    weights = [0] * d
    for a in group.dlog:
        weights[chi.value_exponent(a)] += a
    _, reduced = _poly_divmod_monic(weights, cyclo_poly(d))
    return CycloElement(d, [Fraction(c, q) for c in reduced])


def _galois_orbit(chi: DirichletCharacter) -> set[tuple[int, ...]]:
    return {
        (chi**t).generator_images for t in range(1, chi.order + 1) if gcd(t, chi.order) == 1
    }


def hminus_product(p: int, m: int) -> int:
    """h^-(conductor p^m) by the odd-character product, assembled orbit by orbit."""
    q = _validated_conductor(p, m)
    odd = [chi for chi in characters_mod(p, m) if chi.is_odd]
    visited: set[tuple[int, ...]] = set()
    total = Fraction(1)
    for chi in odd:
        # lexicographic iteration makes the first unvisited member the
        # lexicographically smallest representative of its orbit
        if chi.generator_images in visited:
            continue
        orbit = _galois_orbit(chi)
        assert len(orbit) == euler_phi(chi.order)
        visited |= orbit
        factor = gen_bernoulli_b1(chi) * Fraction(-1, 2)
        total *= cyclo_norm(factor)
    assert visited == {chi.generator_images for chi in odd}
    w = q if q % 2 == 0 else 2 * q
    value = total * w
    if value.denominator != 1 or value <= 0:
        raise IntegralityError(f"odd-character product for conductor {q} is not a positive integer: {value}")
    return int(value)


def hminus_determinant(p: int, m: int, *, bound: int = 200) -> int:
    """h^-(conductor p^m) by the half-system determinant; desk-scale oracle."""
    q = _validated_conductor(p, m)
    if q > bound:
        raise BudgetExceededError(f"determinant oracle bound {bound} exceeded by conductor {q}")
    half = [a for a in range(1, (q + 1) // 2) if gcd(a, q) == 1]
    n = len(half)
    inverses = {a: pow(a, -1, q) for a in half}
    matrix = [[2 * (a * inverses[b] % q) - q for b in half] for a in half]
    det = integer_det(matrix)
    w = q if q % 2 == 0 else 2 * q
    value = Fraction(w * abs(det), (2 * q) ** n)
    if value.denominator != 1 or value <= 0:
        raise IntegralityError(f"determinant for conductor {q} is not a positive integer: {value}")
    return int(value)


@dataclass(frozen=True)
class RelClassNumber:
    """A recomputed relative class number, with the method that produced it."""

    conductor: int
    value: FactoredInteger
    method: str


def relative_class_number(p: int, m: int, *, rho_budget: int = 2_000_000) -> RelClassNumber:
    """h^- by the product formula, factored for downstream candidate selection."""
    value = hminus_product(p, m)
    return RelClassNumber(p**m, factorize(value, rho_budget=rho_budget), "product-formula")


def relative_class_number_det(
    p: int, m: int, *, bound: int = 200, rho_budget: int = 2_000_000
) -> RelClassNumber:
    """h^- by the determinant oracle; must agree with the product formula."""
    value = hminus_determinant(p, m, bound=bound)
    return RelClassNumber(p**m, factorize(value, rho_budget=rho_budget), "determinant-oracle")
