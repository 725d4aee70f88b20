"""Exact integer arithmetic: primality, factorization, totient, multiplicative order.

Everything here is deterministic. Primality uses a fixed Miller-Rabin base set
that is proven complete below 3.3e24, far above any integer this package ever
certifies, and inputs beyond that bound are rejected rather than accepted
probabilistically.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import FactorizationError

# First 13 primes certify Miller-Rabin deterministically below this bound
# (Sorenson-Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_BOUND = 3_317_044_064_679_887_385_961_981

_TRIAL_BOUND = 10_000


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 3.3e24."""
    if n >= _MR_BOUND:
        raise ValueError(f"{n} exceeds the deterministic certification bound {_MR_BOUND}")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its complete prime factorization.

    ``factors`` is sorted by prime; every listed prime is re-certified at
    construction time and the product is checked against ``value``.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("value must be positive")
        prod = 1
        prev = 0
        for p, e in self.factors:
            if e < 1:
                raise ValueError(f"exponent of {p} must be >= 1")
            if p <= prev:
                raise ValueError("factors must be sorted by strictly increasing prime")
            if not is_prime(p):
                raise ValueError(f"listed factor {p} is not prime")
            prod *= p**e
            prev = p
        if prod != self.value:
            raise ValueError(f"factors recompose to {prod}, not {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


def _pollard_brent(n: int, c: int, budget: int) -> tuple[int | None, int]:
    """Brent-cycle Pollard rho with polynomial x^2 + c; returns (factor, used)."""
    y, r, q = 2, 1, 1
    g = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            step = min(128, r - k)
            for _ in range(step):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += step
            used += step
            if used > budget:
                return None, used
        r *= 2
    if g == n:
        # Batched gcd overshot; redo the last block one step at a time.
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            used += 1
            if used > budget:
                return None, used
    return (g if g != n else None), used


def factorize(n: int, *, rho_budget: int = 2_000_000) -> FactoredInteger:
    """Complete prime factorization of n >= 1.

    Trial division below a fixed bound, then Brent-rho on the survivors, each
    certified prime before being recorded. Raises FactorizationError if the
    rho iteration budget runs out before the factorization is complete.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    value = n
    counts: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)  # steps through residues coprime to 30
    w = 0
    while d <= _TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            counts[d] = counts.get(d, 0) + 1
            n //= d
        d += wheel[w]
        w = (w + 1) % 8
    if n > 1 and n <= _TRIAL_BOUND * _TRIAL_BOUND:
        # below the trial bound squared a survivor is automatically prime
        counts[n] = counts.get(n, 0) + 1
        n = 1

    budget = rho_budget
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m >= _MR_BOUND:
            raise FactorizationError(
                f"cofactor {m} exceeds the deterministic primality bound"
            )
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        root = isqrt(m)
        if root * root == m:
            stack.extend((root, root))
            continue
        factor = None
        for c in range(1, 100):
            factor, used = _pollard_brent(m, c, budget)
            budget -= used
            if budget <= 0 and factor is None:
                raise FactorizationError(f"rho budget exhausted on composite cofactor {m}")
            if factor is not None:
                break
        if factor is None:
            raise FactorizationError(f"no rho split found for composite cofactor {m}")
        stack.extend((factor, m // factor))

    return FactoredInteger(value, tuple(sorted(counts.items())))


def euler_phi(n: int) -> int:
    """Euler totient, via the factorization of n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = n
    for p in factorize(n).primes:
        result -= result // p
    return result


def mult_order(a: int, n: int) -> int:
    """Least k >= 1 with a^k = 1 mod n.

    Starts from phi(n) and strips primes while the congruence survives, so the
    cost is a factorization plus O(log) modular exponentiations; no naive
    iteration.
    """
    if n < 2:
        raise ValueError("modulus must be >= 2")
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    t = euler_phi(n)
    for p in factorize(t).primes:
        while t % p == 0 and pow(a, t // p, n) == 1:
            t //= p
    return t


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n = p^k if n is a prime power, else None."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f.factors) == 1:
        return f.factors[0]
    return None
