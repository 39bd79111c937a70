"""Exact arithmetic in small finite fields GF(p^m).

Elements are integer codes in ``[0, q)``: the coefficient vector of the
representative polynomial, read little-endian in base ``p``.  All array
operations broadcast like numpy ufuncs, so the same calls serve scalars,
rows and whole batches of matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from flagrank.errors import InvalidInput

MAX_ORDER = 1 << 16
TABLE_LIMIT = 256  # full q x q tables (and the compiled kernels) up to this order


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q = p**m``; raise if it is not a prime power."""
    if q < 2:
        raise InvalidInput(f"field order must be a prime power, got {q}")
    fac = _prime_factors(q)
    if len(fac) != 1:
        raise InvalidInput(f"field order must be a prime power, got {q}")
    p, m = fac[0], 0
    while q > 1:
        q //= p
        m += 1
    return p, m


def _poly_mulmod_p(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    """Product of two residues modulo the monic polynomial ``f`` over GF(p)."""
    m = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, m - 1, -1):
        c = prod[i]
        if c:
            for k in range(m + 1):
                prod[i - m + k] = (prod[i - m + k] - c * f[k]) % p
    prod = prod[:m] + [0] * max(0, m - len(prod))
    return prod


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m) defined by a monic irreducible ``modulus`` (low-to-high)."""

    p: int
    m: int
    modulus: tuple[int, ...]
    order: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        p, m = self.p, self.m
        if not is_prime(p):
            raise InvalidInput(f"characteristic {p} is not prime")
        if m < 1:
            raise InvalidInput(f"extension degree must be >= 1, got {m}")
        if p**m > MAX_ORDER:
            raise InvalidInput(f"field order {p}^{m} exceeds {MAX_ORDER}")
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != m + 1 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
            raise InvalidInput(f"modulus {list(mod)} is not a monic degree-{m} polynomial over GF({p})")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "order", p**m)
        if m > 1 and not _is_irreducible(list(mod), _prime_field(p)):
            raise InvalidInput(f"modulus {list(mod)} is reducible over GF({p})")
        self._build()

    # -- construction of lookup structures ---------------------------------

    def _build(self) -> None:
        p, m, q = self.p, self.m, self.order
        codes = np.arange(q, dtype=np.int64)
        powers = p ** np.arange(m, dtype=np.int64)
        digits = (codes[:, None] // powers[None, :]) % p
        # multiplication by a fixed element is GF(p)-linear: images of x^i
        def mul_map(g: int) -> np.ndarray:
            gd = self._to_digits(g)
            cols = [_poly_mulmod_p(gd, [0] * i + [1], self.modulus, p) for i in range(m)]
            mat = np.array(cols, dtype=np.int64)  # row i = digits of g * x^i
            return ((digits @ mat) % p) @ powers

        order_target = q - 1
        prim = None
        for g in range(1, q):
            mg = mul_map(g) if m > 1 else (codes * g) % p
            exp = np.empty(q - 1, dtype=np.int64)
            x, k = 1, 0
            while True:
                exp[k] = x
                x = int(mg[x])
                k += 1
                if x == 1:
                    break
            if k == order_target:
                prim = g
                break
        assert prim is not None
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        inv = np.zeros(q, dtype=np.int64)
        inv[exp] = exp[(-np.arange(q - 1)) % (q - 1)]
        if p == 2:
            neg = codes.copy()
        else:
            neg = ((p - digits) % p) @ powers
        d = self.__dict__
        d["_digits"] = digits
        d["_powers"] = powers
        d["_exp"] = exp
        d["_log"] = log
        d["_inv"] = inv
        d["_neg"] = neg
        d["primitive"] = prim
        d["tables"] = None
        if q <= TABLE_LIMIT:
            a, b = np.meshgrid(codes, codes, indexing="ij")
            add_t = self._add_generic(a, b)
            mul_t = self._mul_generic(a, b)
            d["tables"] = (
                add_t.astype(np.int32),
                mul_t.astype(np.int32),
                neg.astype(np.int32),
                inv.astype(np.int32),
            )
            d["_add_t"] = add_t
            d["_mul_t"] = mul_t

    def _to_digits(self, c: int) -> list[int]:
        return [(c // self.p**i) % self.p for i in range(self.m)]

    def _add_generic(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._powers

    def _mul_generic(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        s = self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, s)

    # -- vectorized arithmetic on integer codes ----------------------------

    @property
    def q(self) -> int:
        return self.order

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.tables is not None:
            return self._add_t[a, b]
        return self._add_generic(np.asarray(a), np.asarray(b))

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        if self.m == 1:
            return (np.asarray(a) - b) % self.p
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if self.m == 1:
            return (np.asarray(a) * b) % self.p
        if self.tables is not None:
            return self._mul_t[a, b]
        return self._mul_generic(a, b)

    def inv(self, a):
        """Multiplicative inverse; zero entries map to zero (callers check)."""
        return self._inv[a]

    def sum(self, a, axis=None):
        """Field sum along ``axis``."""
        a = np.asarray(a)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        dig = self._digits[a]
        if axis is None:
            dig = dig.reshape(-1, self.m)
            return int((dig.sum(axis=0) % self.p) @ self._powers)
        ax = axis if axis >= 0 else a.ndim + axis
        return (dig.sum(axis=ax) % self.p) @ self._powers

    def matmul(self, a, b):
        """Matrix product over the field (supports leading batch dimensions)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a @ b) % self.p
        prods = self.mul(a[..., :, :, None], b[..., None, :, :])
        return self.sum(prods, axis=-2)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self._exp[(int(self._log[a]) * e) % (self.order - 1)])

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(c, self) for c in range(self.order)]

    def check_codes(self, a) -> None:
        arr = np.asarray(a)
        if arr.size and (arr.min() < 0 or arr.max() >= self.order):
            raise InvalidInput(f"entry codes must lie in [0, {self.order})")

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __str__(self) -> str:
        return f"GF({self.order})"


@dataclass(frozen=True)
class FieldElement:
    """A single field element; thin wrapper over its integer code."""

    code: int
    field: FieldSpec

    def __post_init__(self) -> None:
        if not 0 <= self.code < self.field.order:
            raise InvalidInput(f"code {self.code} out of range for {self.field}")

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise InvalidInput("operands belong to different fields")
            return b.code
        return FieldElement(int(b), self.field).code

    def __add__(self, b):
        return FieldElement(int(self.field.add(self.code, self._other(b))), self.field)

    def __sub__(self, b):
        return FieldElement(int(self.field.sub(self.code, self._other(b))), self.field)

    def __mul__(self, b):
        return FieldElement(int(self.field.mul(self.code, self._other(b))), self.field)

    def __neg__(self):
        return FieldElement(int(self.field.neg(self.code)), self.field)

    def inverse(self) -> "FieldElement":
        if self.code == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(int(self.field.inv(self.code)), self.field)

    def __truediv__(self, b):
        return self * FieldElement(self._other(b), self.field).inverse()

    def __int__(self) -> int:
        return self.code


def arith(kind: str, a: FieldElement, b: FieldElement | None = None, spec: FieldSpec | None = None) -> FieldElement:
    """Apply ``kind`` in {add, sub, mul, neg, inv} to elements of ``spec``."""
    spec = spec or a.field
    a = a if isinstance(a, FieldElement) else FieldElement(int(a), spec)
    if kind == "neg":
        return -a
    if kind == "inv":
        return a.inverse()
    if b is None:
        raise InvalidInput(f"{kind} needs two operands")
    b = b if isinstance(b, FieldElement) else FieldElement(int(b), spec)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise InvalidInput(f"unknown operation {kind!r}")


def elements(spec: FieldSpec) -> list[FieldElement]:
    """All elements in increasing code order."""
    return spec.elements()


# -- polynomials over a FieldSpec (coefficient codes, low-to-high) ----------


def _poly_rem(a: list[int], b: list[int], F: FieldSpec) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``b``."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            for k in range(db + 1):
                a[i - db + k] = int(F.sub(a[i - db + k], F.mul(c, b[k])))
    return a[:db]


def _is_irreducible(f: list[int], F: FieldSpec) -> bool:
    """Exhaustive test: no root and no monic divisor of degree <= deg/2."""
    m = len(f) - 1
    if m <= 1:
        return m == 1
    # roots, vectorized Horner over all field elements
    x = np.arange(F.order, dtype=np.int64)
    val = np.zeros_like(x)
    for c in reversed(f):
        val = F.add(F.mul(val, x), c)
    if np.any(val == 0):
        return False
    for d in range(2, m // 2 + 1):
        for low in itertools.product(range(F.order), repeat=d):
            if low[0] == 0:
                continue  # divisible by x, already excluded by the root test
            if not any(_poly_rem(f, list(low) + [1], F)):
                return False
    return True


def irreducible_poly(F: FieldSpec, m: int) -> tuple[int, ...]:
    """Lexicographically least (low-to-high) monic irreducible of degree ``m`` over ``F``."""
    if m < 1:
        raise InvalidInput("degree must be >= 1")
    if F.order**m > MAX_ORDER:
        raise InvalidInput(f"degree-{m} extension of {F} exceeds order {MAX_ORDER}")
    if m == 1:
        return (0, 1)
    for low in itertools.product(range(F.order), repeat=m):
        cand = list(low) + [1]
        if _is_irreducible(cand, F):
            return tuple(cand)
    raise AssertionError("irreducible polynomials exist in every degree")


@lru_cache(maxsize=None)
def _prime_field(p: int) -> FieldSpec:
    return FieldSpec(p, 1, (0, 1))


@lru_cache(maxsize=None)
def field_make(p: int, m: int = 1) -> FieldSpec:
    """GF(p^m) with the canonical modulus (least monic irreducible over GF(p))."""
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidInput(f"characteristic {p} is not prime")
    if not isinstance(m, int) or m < 1:
        raise InvalidInput(f"extension degree must be >= 1, got {m}")
    if p**m > MAX_ORDER:
        raise InvalidInput(f"field order {p}^{m} exceeds {MAX_ORDER}")
    if m == 1:
        return _prime_field(p)
    return FieldSpec(p, m, irreducible_poly(_prime_field(p), m))


def gf(q: int) -> FieldSpec:
    """Canonical field of order ``q``."""
    return field_make(*prime_power(q))


def field_from_json(d: dict) -> FieldSpec:
    try:
        spec = FieldSpec(int(d["p"]), int(d["m"]), tuple(int(c) for c in d["modulus"]))
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed field description: {exc}") from exc
    canon = field_make(spec.p, spec.m)
    return canon if canon == spec else spec
