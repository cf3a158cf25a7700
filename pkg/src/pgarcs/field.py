"""Prime field GF(p) and cubic extension GF(p^3) arithmetic.

Field elements are plain ``int`` residues in ``[0, p)``.  Extension
elements are triples ``(a0, a1, a2)`` meaning ``a0 + a1*x + a2*x^2``
modulo a monic cubic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FieldError(ValueError):
    """Raised for undefined field operations (zero inverse, 0**0, bad modulus)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    """Return ``p`` unchanged if it is a prime, else raise FieldError."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise FieldError(f"modulus must be an integer, got {p!r}")
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    return p


def fe_inv(p: int, a: int) -> int:
    a %= p
    if a == 0:
        raise FieldError(f"0 has no inverse modulo {p}")
    return pow(a, -1, p)


def inverse_table(p: int) -> list[int]:
    """inv[a] for a in [0, p); inv[0] is set to 0 as a sentinel."""
    inv = [0] * p
    if p > 1:
        inv[1] = 1
    for a in range(2, p):
        # classical recurrence: inv[a] = -(p // a) * inv[p % a]
        inv[a] = (p - (p // a) * inv[p % a] % p) % p
    return inv


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division; fine for n up to ~1e15."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class CubicPolynomial:
    """Monic cubic ``x^3 + c2*x^2 + c1*x + c0`` over GF(p)."""

    p: int
    c0: int
    c1: int
    c2: int

    def __post_init__(self):
        for c in (self.c0, self.c1, self.c2):
            if not 0 <= c < self.p:
                raise FieldError(f"coefficient {c} not reduced mod {self.p}")

    def __call__(self, t: int) -> int:
        p = self.p
        return (((t + self.c2) * t + self.c1) * t + self.c0) % p

    def has_root(self) -> bool:
        if self.c0 == 0:
            return True
        return any(self(t) == 0 for t in range(1, self.p))

    def is_irreducible(self) -> bool:
        # a cubic factors iff it has a linear factor
        return not self.has_root()

    def __str__(self):
        terms = ["x^3"]
        for coef, mono in ((self.c2, "x^2"), (self.c1, "x"), (self.c0, "")):
            if coef == 0:
                continue
            if mono and coef == 1:
                terms.append(mono)
            else:
                terms.append(f"{coef}{'*' + mono if mono else ''}")
        return " + ".join(terms)


ExtensionElement = tuple[int, int, int]

ONE: ExtensionElement = (1, 0, 0)
X: ExtensionElement = (0, 1, 0)


def ext_mul(f: CubicPolynomial, g: ExtensionElement, h: ExtensionElement) -> ExtensionElement:
    p = f.p
    a0, a1, a2 = g
    b0, b1, b2 = h
    # schoolbook product, degree <= 4
    d0 = a0 * b0
    d1 = a0 * b1 + a1 * b0
    d2 = a0 * b2 + a1 * b1 + a2 * b0
    d3 = a1 * b2 + a2 * b1
    d4 = a2 * b2
    # x^3 = -(c2 x^2 + c1 x + c0); fold x^4 first, then x^3
    c0, c1, c2 = f.c0, f.c1, f.c2
    d4 %= p
    d3 = (d3 - d4 * c2) % p
    d2 = d2 - d4 * c1
    d1 = d1 - d4 * c0
    d2 = (d2 - d3 * c2) % p
    d1 = (d1 - d3 * c1) % p
    d0 = (d0 - d3 * c0) % p
    return (d0, d1, d2)


def ext_mul_x(f: CubicPolynomial, g: ExtensionElement) -> ExtensionElement:
    """Multiply by the residue class of x (one Singer step)."""
    p = f.p
    a0, a1, a2 = g
    return ((-a2 * f.c0) % p, (a0 - a2 * f.c1) % p, (a1 - a2 * f.c2) % p)


def ext_pow(f: CubicPolynomial, g: ExtensionElement, n: int) -> ExtensionElement:
    if n < 0:
        raise FieldError("negative exponent")
    g = tuple(c % f.p for c in g)
    if n == 0:
        if g == (0, 0, 0):
            raise FieldError("0**0 is undefined")
        return ONE
    result = ONE
    base = g
    while n:
        if n & 1:
            result = ext_mul(f, result, base)
        n >>= 1
        if n:
            base = ext_mul(f, base, base)
    return result


def is_primitive(f: CubicPolynomial) -> bool:
    """True iff f is irreducible and x has order exactly p^3 - 1."""
    if f.c0 == 0:
        return False
    order = f.p ** 3 - 1
    if ext_pow(f, X, order) != ONE:
        return False
    for r in _group_order_primes(f.p):
        if ext_pow(f, X, order // r) == ONE:
            return False
    # the exponent tests already force irreducibility; the root scan is O(p)
    # and only runs on the final candidate
    return f.is_irreducible()


@lru_cache(maxsize=None)
def _group_order_primes(p: int) -> tuple[int, ...]:
    # p^3 - 1 = (p - 1)(p^2 + p + 1); factor the pieces separately
    primes = set(factorize(p - 1)) | set(factorize(p * p + p + 1))
    return tuple(sorted(primes))


@lru_cache(maxsize=None)
def find_primitive_cubic(p: int) -> CubicPolynomial:
    """Smallest primitive monic cubic over GF(p), ordered by (c2, c1, c0)."""
    check_prime(p)
    for c2 in range(p):
        for c1 in range(p):
            for c0 in range(1, p):
                f = CubicPolynomial(p, c0, c1, c2)
                if is_primitive(f):
                    return f
    raise AssertionError(f"no primitive cubic over GF({p})")  # unreachable for prime p
