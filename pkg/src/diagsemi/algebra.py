"""Finite fields GF(p^d) and Galois rings GR(p^e, d).

A ring element is stored as an int: the coefficient vector
``(c_0, ..., c_{d-1})`` over Z/p^e read in base p^e, lowest degree least
significant.  For d = 1 the element is simply the residue.
"""
from __future__ import annotations

import itertools
import re
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import CapExceeded, DivisionByZero, NotPrime, ParseError
from .groups import AbelianSpec, is_prime, prime_power

DEFAULT_SIZE_CAP = 2**20

Poly = list[int]  # coefficients, low degree first


# ---------------------------------------------------------------------------
# polynomial helpers over Z/mod


def _trim(a: Poly) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], mod: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % mod for v in out])


def poly_add(a: Sequence[int], b: Sequence[int], mod: int) -> Poly:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % mod for i in range(n)])


def poly_sub(a: Sequence[int], b: Sequence[int], mod: int) -> Poly:
    return poly_add(a, [-v for v in b], mod)


def poly_divmod(a: Sequence[int], b: Sequence[int], mod: int) -> tuple[Poly, Poly]:
    """Division by ``b`` whose leading coefficient is a unit mod ``mod``."""
    a = _trim([v % mod for v in a])
    b = _trim([v % mod for v in b])
    if not b:
        raise DivisionByZero("polynomial division by zero")
    lead_inv = pow(b[-1], -1, mod)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = a[:]
    while len(r) >= len(b):
        shift = len(r) - len(b)
        f = (r[-1] * lead_inv) % mod
        q[shift] = f
        for i, v in enumerate(b):
            r[shift + i] = (r[shift + i] - f * v) % mod
        r = _trim(r)
    return _trim(q), r


def poly_xgcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[Poly, Poly, Poly]:
    """``(g, s, t)`` with ``s*a + t*b = g`` monic, over GF(p)."""
    r0, r1 = _trim([v % p for v in a]), _trim([v % p for v in b])
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    scale = lambda f: _trim([(v * inv) % p for v in f])
    return scale(r0), scale(s0), scale(t0)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2 over GF(p)."""
    f = _trim([v % p for v in f])
    d = len(f) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            _, r = poly_divmod(f, list(low) + [1], p)
            if not r:
                return False
    return True


def least_irreducible(p: int, d: int) -> Poly:
    """Lexicographically least monic irreducible of degree d, comparing the
    non-leading coefficients ``(c_0, ..., c_{d-1})`` in that order."""
    for low in itertools.product(range(p), repeat=d):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return f
    raise AssertionError("irreducible polynomials exist in every degree")


def hensel_lift(f: Sequence[int], p: int, e: int) -> Poly:
    """Lift a monic irreducible factor ``f`` of ``X^q - X`` over GF(p) to the
    unique monic factor of ``X^q - X`` over Z/p^e reducing to it."""
    d = len(f) - 1
    q = p**d
    big = [0] * (q + 1)
    big[q], big[1] = 1, -1
    cof, r = poly_divmod(big, f, p)
    if r:
        raise ValueError("f does not divide X^q - X")
    g, s, t = poly_xgcd(f, cof, p)
    if g != [1]:
        raise ValueError("X^q - X is not squarefree over GF(p)")
    F, G = [v % p for v in f], cof
    for k in range(1, e):
        pk = p**k
        mod_next = pk * p
        err = poly_sub(big, poly_mul(F, G, mod_next), mod_next)
        err = [(v // pk) % p for v in err]
        # a*G + b*F = err (mod p) with deg a < deg F
        quo, a = poly_divmod(poly_mul(err, t, p), f, p)
        b = poly_add(poly_mul(err, s, p), poly_mul(quo, cof, p), p)
        F = poly_add(F, [pk * v for v in a], mod_next)
        G = poly_add(G, [pk * v for v in b], mod_next)
    F = F + [0] * (d + 1 - len(F))
    return F


# ---------------------------------------------------------------------------
# the quotient rings


class _QuotientRing:
    """Z/p^e [X] / (modulus) with monic ``modulus`` of degree d."""

    def __init__(self, p: int, e: int, d: int, modulus: Sequence[int]):
        self.p, self.e, self.d = p, e, d
        self.char = p**e
        self.modulus = tuple(int(v) % self.char for v in modulus)
        if len(self.modulus) != d + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        self.size = self.char**d
        self.q = p**d

    def __repr__(self) -> str:
        return f"{type(self).__name__}(p={self.p}, e={self.e}, d={self.d}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        return (type(self) is type(other) and
                (self.p, self.e, self.d, self.modulus) == (other.p, other.e, other.d, other.modulus))

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.p, self.e, self.d, self.modulus))

    # representation
    def to_coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.d):
            a, c = divmod(a, self.char)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.d:
            _, coeffs = poly_divmod(coeffs, self.modulus, self.char)
        out = 0
        for c in reversed(list(coeffs) + [0] * (self.d - len(coeffs))):
            out = out * self.char + c % self.char
        return out

    def elements(self) -> range:
        return range(self.size)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.embed(1)

    def embed(self, k: int) -> int:
        """The image of the integer k."""
        return self.from_coeffs([k])

    @property
    def generator(self) -> int:
        """The class of X."""
        return self.from_coeffs([0, 1]) if self.d > 1 else self.from_coeffs([-self.modulus[0]])

    # arithmetic
    def add(self, a: int, b: int) -> int:
        return self.from_coeffs([x + y for x, y in zip(self.to_coeffs(a), self.to_coeffs(b))])

    def neg(self, a: int) -> int:
        return self.from_coeffs([-x for x in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return self._mul(a, b)

    @lru_cache(maxsize=1 << 16)
    def _mul(self, a: int, b: int) -> int:
        prod = poly_mul(self.to_coeffs(a), self.to_coeffs(b), self.char)
        _, r = poly_divmod(prod, self.modulus, self.char)
        return self.from_coeffs(r)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        out, base = self.one, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def additive_spec(self) -> AbelianSpec:
        """The additive group (C_{p^e})^d."""
        return AbelianSpec((self.char,) * self.d)

    def additive_index(self, a: int) -> int:
        """Index of ``a`` in :meth:`additive_spec` (coefficient c_0 most significant)."""
        return self.additive_spec().index(self.to_coeffs(a))

    def from_additive_index(self, i: int) -> int:
        return self.from_coeffs(self.additive_spec().element(i))

    def multiplication_matrix(self, a: int) -> list[list[int]]:
        """Matrix of ``x -> a*x`` on coefficient columns."""
        cols = [self.to_coeffs(self.mul(a, self.from_coeffs([0] * j + [1]))) for j in range(self.d)]
        return [[cols[j][i] for j in range(self.d)] for i in range(self.d)]


class GaloisField(_QuotientRing):
    def __init__(self, p: int, d: int, modulus: Sequence[int]):
        super().__init__(p, 1, d, modulus)
        if not is_irreducible(self.modulus, p):
            raise ValueError("modulus is not irreducible")

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def det(self, matrix: Sequence[Sequence[int]]) -> int:
        """Determinant by Gaussian elimination."""
        m = [list(r) for r in matrix]
        n = len(m)
        det = self.one
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = self.neg(det)
            det = self.mul(det, m[col][col])
            pinv = self.inv(m[col][col])
            for r in range(col + 1, n):
                if m[r][col]:
                    f = self.mul(m[r][col], pinv)
                    m[r] = [self.sub(x, self.mul(f, y)) for x, y in zip(m[r], m[col])]
        return det


class GaloisRing(_QuotientRing):
    """GR(p^e, d): Z/p^e[X] modulo the Hensel lift of the residue field's modulus."""

    def __init__(self, p: int, e: int, d: int, modulus: Sequence[int], residue: GaloisField):
        super().__init__(p, e, d, modulus)
        if tuple(v % p for v in self.modulus) != residue.modulus:
            raise ValueError("modulus does not reduce to the residue field modulus")
        self.residue_field = residue

    def reduce(self, a: int) -> int:
        """Image in the residue field GF(q)."""
        return self.residue_field.from_coeffs([c % self.p for c in self.to_coeffs(a)])

    def lift(self, a: int) -> int:
        """Residue-field element with the same coefficient representatives."""
        return self.from_coeffs(self.residue_field.to_coeffs(a))

    def is_unit(self, a: int) -> bool:
        return self.reduce(a) != 0

    def inv(self, a: int) -> int:
        if not self.is_unit(a):
            raise DivisionByZero("element is not a unit")
        units = self.q ** (self.e - 1) * (self.q - 1)
        return self.pow(a, units - 1)

    @cached_property
    def teichmuller(self) -> tuple[int, ...]:
        return tuple(teichmuller_set(self))


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def gf_build(p: int, d: int = 1, cap: int = DEFAULT_SIZE_CAP) -> GaloisField:
    _check_prime(p)
    if d < 1:
        raise ValueError("degree must be >= 1")
    if p**d > cap:
        raise CapExceeded(f"field order {p**d} exceeds cap {cap}")
    return GaloisField(p, d, least_irreducible(p, d))


def gr_build(p: int, e: int, d: int, cap: int = DEFAULT_SIZE_CAP) -> GaloisRing:
    _check_prime(p)
    if e < 1 or d < 1:
        raise ValueError("e and d must be >= 1")
    if p ** (e * d) > cap:
        raise CapExceeded(f"ring order {p ** (e * d)} exceeds cap {cap}")
    field = gf_build(p, d, cap)
    modulus = hensel_lift(field.modulus, p, e)
    return GaloisRing(p, e, d, modulus, field)


def teichmuller_set(ring: GaloisRing) -> list[int]:
    """The roots of X^q - X, indexed by their residues: entry i lifts
    residue-field element i.  Each nonzero lift is the limit of u -> u^q."""
    q = ring.q
    out = []
    for a in ring.residue_field.elements():
        u = ring.lift(a)
        for _ in range(ring.e + 1):
            nxt = ring.pow(u, q)
            if nxt == u:
                break
            u = nxt
        if ring.pow(u, q) != u:
            raise AssertionError("Teichmuller iteration did not stabilise")
        out.append(u)
    return out


def gr_matrix_is_unimodular(ring: _QuotientRing, matrix: Sequence[Sequence[int]]) -> bool:
    """True iff the determinant is a unit, i.e. nonzero after reduction to GF(q)."""
    if isinstance(ring, GaloisRing):
        field, red = ring.residue_field, ring.reduce
    else:
        field, red = ring, (lambda a: a)
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    return field.det([[red(x) for x in row] for row in matrix]) != 0


_GF_SPEC = re.compile(r"^gf:(\d+)$")
_GR_SPEC = re.compile(r"^gr:(\d+)\^(\d+):(\d+)$")


def parse_ring_spec(text: str, cap: int = DEFAULT_SIZE_CAP) -> GaloisField | GaloisRing:
    """``gf:9`` gives GF(9); ``gr:2^2:2`` gives GR(4, 2)."""
    text = text.strip()
    m = _GF_SPEC.match(text)
    if m:
        pe = prime_power(int(m.group(1)))
        if pe is None:
            raise ParseError(f"{m.group(1)} is not a prime power")
        return gf_build(pe[0], pe[1], cap)
    m = _GR_SPEC.match(text)
    if m:
        p, e, d = (int(x) for x in m.groups())
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        return gr_build(p, e, d, cap)
    raise ParseError(f"bad field/ring spec {text!r}")


def format_poly(coeffs: Sequence[int]) -> str:
    return ",".join(str(c) for c in coeffs)
