"""Number theory for the defining congruences.

Covers factorization, the admissibility test for ``r`` (9 does not divide
``r`` and every other prime factor is 1 mod 6), and the solutions of
``1 + k + k^2 = 0 (mod r)`` alone and jointly with ``1 + 2k = 0 (mod r)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

SCAN_LIMIT = 10**6
TRIAL_DIVISION_LIMIT = 10**6
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
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


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard-Brent failed on {n}")


def factorize(u: int) -> list[tuple[int, int]]:
    """Prime factorization of ``u`` as ``[(p, e), ...]`` with ascending primes."""
    if u < 1 or u > 2**63:
        raise ValueError(f"factorize needs 1 <= u <= 2**63, got {u}")
    counts: dict[int, int] = {}
    p = 2
    while p * p <= u and p <= TRIAL_DIVISION_LIMIT:
        while u % p == 0:
            counts[p] = counts.get(p, 0) + 1
            u //= p
        p += 1 if p == 2 else 2
    stack = [u] if u > 1 else []
    while stack:
        v = stack.pop()
        if is_prime(v):
            counts[v] = counts.get(v, 0) + 1
        else:
            d = _pollard_brent(v)
            stack += [d, v // d]
    return sorted(counts.items())


@dataclass(frozen=True)
class Admissibility:
    r: int
    admissible: bool
    three_exp: int
    q_part: int
    q_factors: list[tuple[int, int]] = field(default_factory=list)


def admissible_r(r: int) -> Admissibility:
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    factors = factorize(r)
    three_exp = dict(factors).get(3, 0)
    q_factors = [(p, e) for p, e in factors if p != 3]
    ok = three_exp <= 1 and all(p % 6 == 1 for p, _ in q_factors)
    return Admissibility(
        r=r,
        admissible=ok,
        three_exp=three_exp,
        q_part=r // 3**three_exp,
        q_factors=q_factors,
    )


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, x = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, x = t * c % p, x * b % p
    return x


def _roots_mod_prime_power(p: int, e: int) -> list[int]:
    """Roots of ``1 + k + k^2`` modulo ``p^e``."""
    if p == 3:
        return [1] if e == 1 else []
    if p % 6 != 1:
        return []
    t = sqrt_mod_prime(-3, p)
    # (2k + 1)^2 = -3, and 2 is invertible mod p
    inv2 = pow(2, -1, p)
    roots = sorted({(t - 1) * inv2 % p, (-t - 1) * inv2 % p})
    modulus = p
    for _ in range(1, e):
        modulus *= p
        # Hensel step: f'(k) = 2k + 1 is a unit since p does not divide 3
        roots = [(k - (1 + k + k * k) * pow(2 * k + 1, -1, modulus)) % modulus for k in roots]
    return roots


def _crt_pair(a1: int, n1: int, a2: int, n2: int) -> int:
    return (a1 + n1 * ((a2 - a1) * pow(n1, -1, n2) % n2)) % (n1 * n2)


def solve_k_crt(r: int) -> list[int]:
    """Roots of ``1 + k + k^2 = 0 (mod r)`` assembled from prime-power roots by CRT."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    per_factor = []
    for p, e in factorize(r):
        roots = _roots_mod_prime_power(p, e)
        if not roots:
            return []
        per_factor.append((roots, p**e))
    out = []
    for choice in product(*(roots for roots, _ in per_factor)):
        k, mod = 0, 1
        for root, (_, pe) in zip(choice, per_factor):
            k = _crt_pair(k, mod, root, pe)
            mod *= pe
        out.append(k)
    return sorted(out)


def _scan(r: int) -> list[int]:
    k = np.arange(r, dtype=np.int64)
    return np.flatnonzero((1 + k + k * k) % r == 0).tolist()


def solve_k(r: int) -> list[int]:
    """All ``k`` in ``[0, r)`` with ``1 + k + k^2 = 0 (mod r)``, ascending."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    return _scan(r) if r <= SCAN_LIMIT else solve_k_crt(r)


def solve_k_joint(r: int) -> list[int]:
    """Solutions shared by ``1 + k + k^2 = 0`` and ``1 + 2k = 0`` modulo ``r``."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if r % 2 == 0:
        return []  # 1 + 2k is odd
    k = (r - 1) // 2
    return [k] if (1 + k + k * k) % r == 0 else []


def canonical_k_values(r: int) -> list[int]:
    """The smaller member of each pair ``(k, r - 1 - k)``."""
    return [k for k in solve_k(r) if k <= r - 1 - k]


def admissible_r_list(max_r: int) -> list[tuple[int, list[int]]]:
    if max_r < 1:
        raise ValueError(f"max must be positive, got {max_r}")
    return [(r, solve_k(r)) for r in range(1, max_r + 1) if admissible_r(r).admissible]
