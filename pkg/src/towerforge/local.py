"""Truncated arithmetic in the ramified local ring Z_p[zeta_{p^m}].

Elements are residues mod Phi_{p^m}(x) with coefficients carried mod p^N,
where N is an explicit per-element precision. The maximal ideal is generated
by pi = 1 - zeta, the ramification index is e = phi(p^m), and p = unit * pi^e.

Valuations are read off the pi-power basis: substituting x = 1 - t rewrites an
element as sum d_j t^j with j < e, and the terms d_j pi^j have pairwise
distinct valuations e*v_p(d_j) + j, so the minimum is exact whenever it is
resolved by the carried precision (cap e*N).

The kappa invariant (deepest level l at which an element is congruent to a
p-th power mod pi^l) is found by exhaustive search over residue
representatives, which is the only assumption-free oracle; the search is
therefore hard-limited to p in {2, 3}, m in {1, 2} and levels <= 8.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from math import comb, gcd

from .arith import euler_phi
from .cyclotomic import cyclo_poly
from .errors import CofactorError, PrecisionError


class AtCap:
    """Marker: valuation is at or beyond what the carried precision resolves."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "AT_CAP"


AT_CAP = AtCap()

_SEARCH_PRIMES = (2, 3)
_SEARCH_EXPONENTS = (1, 2)
_SEARCH_LEVEL_LIMIT = 8


class LocalCycloElement:
    """Immutable residue mod (Phi_{p^m}(x), p^precision)."""

    __slots__ = ("p", "m", "precision", "coeffs")

    def __init__(self, p: int, m: int, precision: int, coeffs) -> None:
        if precision < 1:
            raise ValueError("precision must be >= 1")
        e = euler_phi(p**m)
        pn = p**precision
        c = [int(x) for x in coeffs]
        if len(c) > e:
            c = _reduce_mod_cyclo(c, p, m)
        c = [x % pn for x in c]
        c += [0] * (e - len(c))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "coeffs", tuple(c[:e]))

    def __setattr__(self, *_):
        raise AttributeError("LocalCycloElement is immutable")

    @property
    def e(self) -> int:
        """Ramification index phi(p^m)."""
        return len(self.coeffs)

    @property
    def cap(self) -> int:
        return self.e * self.precision

    @classmethod
    def pi(cls, p: int, m: int, precision: int) -> "LocalCycloElement":
        """The uniformizer 1 - zeta."""
        return cls(p, m, precision, [1, -1])

    @classmethod
    def from_int(cls, value: int, p: int, m: int, precision: int) -> "LocalCycloElement":
        return cls(p, m, precision, [value])

    def _like(self, coeffs, precision: int | None = None) -> "LocalCycloElement":
        if precision is None:
            precision = self.precision
        return LocalCycloElement(self.p, self.m, precision, coeffs)

    def _check_compatible(self, other: "LocalCycloElement") -> None:
        if (self.p, self.m) != (other.p, other.m):
            raise ValueError("ring mismatch")

    def __add__(self, other: "LocalCycloElement") -> "LocalCycloElement":
        self._check_compatible(other)
        prec = min(self.precision, other.precision)
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)], prec)

    def __sub__(self, other: "LocalCycloElement") -> "LocalCycloElement":
        self._check_compatible(other)
        prec = min(self.precision, other.precision)
        return self._like([a - b for a, b in zip(self.coeffs, other.coeffs)], prec)

    def __mul__(self, other: "LocalCycloElement") -> "LocalCycloElement":
        self._check_compatible(other)
        prec = min(self.precision, other.precision)
        prod = [0] * (2 * self.e - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return self._like(prod, prec)

    def __pow__(self, k: int) -> "LocalCycloElement":
        if k < 0:
            raise ValueError("negative powers are not defined at truncated precision")
        result = self._like([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalCycloElement):
            return NotImplemented
        return (self.p, self.m, self.precision, self.coeffs) == (
            other.p,
            other.m,
            other.precision,
            other.coeffs,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.precision, self.coeffs))

    def __repr__(self) -> str:
        return f"LocalCycloElement(p={self.p}, m={self.m}, N={self.precision}, {list(self.coeffs)})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def reduce_precision(self, precision: int) -> "LocalCycloElement":
        if precision > self.precision:
            raise PrecisionError("cannot raise precision after truncation")
        return self._like(self.coeffs, precision)


def _reduce_mod_cyclo(coeffs: list[int], p: int, m: int) -> list[int]:
    phi = cyclo_poly(p**m)
    dd = len(phi) - 1
    num = list(coeffs)
    while num and len(num) - 1 >= dd:
        c = num[-1]
        k = len(num) - 1 - dd
        for i in range(dd + 1):
            num[k + i] -= c * phi[i]
        while num and num[-1] == 0:
            num.pop()
    return num


def pi_valuation(element: LocalCycloElement) -> int | AtCap:
    """Exact pi-adic valuation, or AT_CAP when the precision cannot resolve it.

    Rejects elements that vanish at the carried precision: their valuation is
    only bounded below, never known.
    """
    if element.is_zero():
        raise ValueError("zero at the carried precision has no resolvable valuation")
    p, e, n = element.p, element.e, element.precision
    pn = p**n
    best = element.cap
    for j in range(e):
        d = sum(c * comb(i, j) for i, c in enumerate(element.coeffs) if i >= j)
        if j % 2:
            d = -d
        d %= pn
        if d == 0:
            continue
        v = 0
        while d % p == 0:
            d //= p
            v += 1
        best = min(best, e * v + j)
    if best >= element.cap:
        return AT_CAP
    return best


def _pi_cofactor(p: int, m: int, precision: int) -> LocalCycloElement:
    """The element b with pi * b = p: the product of 1 - zeta^k over units k != 1."""
    q = p**m
    acc = LocalCycloElement.from_int(1, p, m, precision)
    for k in range(2, q):
        if gcd(k, q) == 1:
            term = [0] * (k + 1)
            term[0] = 1
            term[k] = -1
            acc = acc * LocalCycloElement(p, m, precision, term)
    return acc


def divide_by_pi(element: LocalCycloElement, t: int = 1) -> LocalCycloElement:
    """Exact division by pi^t for an element of valuation >= t.

    Costs t units of p-adic precision: multiply by the cofactor (p/pi)^t, then
    strip the known factor p^t from every coefficient.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return element
    if element.precision <= t:
        raise PrecisionError(f"need precision > {t} to divide by pi^{t}")
    v = pi_valuation(element)
    if v is AT_CAP or v < t:
        raise ValueError(f"valuation {v} is below {t}; division is not exact")
    cofactor = _pi_cofactor(element.p, element.m, element.precision)
    scaled = element * cofactor**t
    pt = element.p**t
    assert all(c % pt == 0 for c in scaled.coeffs)
    return LocalCycloElement(
        element.p, element.m, element.precision - t, [c // pt for c in scaled.coeffs]
    )


def _enforce_search_domain(p: int, m: int, l_max: int) -> None:
    if p not in _SEARCH_PRIMES or m not in _SEARCH_EXPONENTS:
        raise ValueError(
            f"exhaustive kappa search is limited to p in {_SEARCH_PRIMES}, m in {_SEARCH_EXPONENTS}"
        )
    if l_max < 1 or l_max > min(p**m, _SEARCH_LEVEL_LIMIT):
        raise ValueError(f"l_max must be in [1, min(p^m, {_SEARCH_LEVEL_LIMIT})]")


def _pth_power_residues(x: LocalCycloElement, level: int):
    """Yield gamma^p - x over unit representatives gamma mod pi^level."""
    p = x.p
    pi = LocalCycloElement.pi(x.p, x.m, x.precision)
    pi_powers = [LocalCycloElement.from_int(1, x.p, x.m, x.precision)]
    for _ in range(level - 1):
        pi_powers.append(pi_powers[-1] * pi)
    # digit 0 runs over 1..p-1 only: a non-unit gamma has v(gamma^p) >= p > 0,
    # so it can never witness congruence to a unit at level >= 1
    for digits in iter_product(range(1, p), *([range(p)] * (level - 1))):
        gamma_coeffs = [0] * x.e
        for digit, power in zip(digits, pi_powers):
            if digit:
                gamma_coeffs = [a + digit * b for a, b in zip(gamma_coeffs, power.coeffs)]
        gamma = LocalCycloElement(x.p, x.m, x.precision, gamma_coeffs)
        yield gamma**p - x


def kappa(x: LocalCycloElement, l_max: int) -> int:
    """Largest l <= l_max such that x is a p-th power mod pi^l, by brute force.

    Searching representatives mod pi^l is exhaustive: perturbing a candidate
    gamma by pi^l changes gamma^p only above level l. Requires a unit x and
    l_max + e of resolvable valuation (safety margin of one ramification index).
    """
    _enforce_search_domain(x.p, x.m, l_max)
    if x.cap < l_max + x.e:
        raise PrecisionError(
            f"precision resolves {x.cap}; need l_max + e = {l_max + x.e}"
        )
    if pi_valuation(x) != 0:
        raise ValueError("kappa is defined for units only")
    best = 0
    for level in range(1, l_max + 1):
        found = False
        for difference in _pth_power_residues(x, level):
            v = pi_valuation(difference) if not difference.is_zero() else AT_CAP
            if v is AT_CAP or v >= level:
                found = True
                break
        if not found:
            break
        best = level
    return best


@dataclass(frozen=True)
class KummerClass:
    """The pair the local discriminant of adjoining a p-th root depends on.

    v_mod_p is the pi-valuation mod p; kappa is populated only in the unit
    case (v_mod_p = 0), after the valuation has been absorbed into a p-th
    power of the uniformizer.
    """

    v_mod_p: int
    kappa: int | None


def kappa_cap(p: int, m: int) -> int:
    """Deepest level the enforced search bounds allow for this ring."""
    return min(p**m, _SEARCH_LEVEL_LIMIT)


def kummer_class(x: LocalCycloElement) -> KummerClass:
    """(v mod p, kappa), with the p-th-power part of the valuation absorbed."""
    v = pi_valuation(x)
    if v is AT_CAP:
        raise PrecisionError("valuation at cap; pick a higher precision")
    residue = v % x.p
    if residue != 0:
        return KummerClass(residue, None)
    unit = divide_by_pi(x, v)  # pi^v is the p-th power (pi^{v/p})^p here
    return KummerClass(0, kappa(unit, kappa_cap(x.p, x.m)))


def check_kummer_class_invariance(
    x_target: LocalCycloElement, cofactors: list[LocalCycloElement]
) -> bool:
    """Invariance of the Kummer class under multiplication by deep p-th powers.

    Every cofactor must be a unit that is a p-th power to the full searched
    depth; that precondition is reported distinctly when violated.
    """
    cap = kappa_cap(x_target.p, x_target.m)
    product = x_target
    for i, cofactor in enumerate(cofactors):
        x_target._check_compatible(cofactor)
        if pi_valuation(cofactor) != 0:
            raise CofactorError(f"cofactor {i} is not a unit")
        if kappa(cofactor, cap) != cap:
            raise CofactorError(f"cofactor {i} is not a p-th power to level {cap}")
        product = product * cofactor
    return kummer_class(product) == kummer_class(x_target)
