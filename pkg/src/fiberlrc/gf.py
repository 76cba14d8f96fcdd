"""Exact arithmetic in GF(p^n).

Elements are stored as their canonical integer encoding
``enc(x) = sum(c_i * p**i)`` where ``c_i`` are the coefficients of the
polynomial-basis representative.  Scalar operations take and return plain
ints; the ``v*`` methods are their numpy-vectorized counterparts and are
what the curve and code modules use in bulk.

Multiplication goes through exp/log tables built from the smallest
primitive element.  Addition is XOR for p = 2, a full table for small
fields, and digit-wise arithmetic otherwise.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    NotAKernelElement,
    NotIndependent,
    NotPrime,
    OddDegree,
    ReducibleModulus,
    TooLargeToEnumerate,
)

# Table-backed arithmetic is only built below this order.
ENUM_CAP = 1 << 20
_ADD_TABLE_CAP = 1024

MAPS = ("rel_trace", "rel_norm", "artin_schreier")


# ---------------------------------------------------------------------------
# integers

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % f for f in range(3, math.isqrt(n) + 1, 2))


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low degree first

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _frobenius_power_of_x(f: Sequence[int], p: int, k: int) -> list[int]:
    """x^(p^k) mod f."""
    r = _pmod([0, 1], f, p)
    for _ in range(k):
        acc, base, e = [1], r, p
        while e:
            if e & 1:
                acc = _pmod(_pmul(acc, base, p), f, p)
            base = _pmod(_pmul(base, base, p), f, p)
            e >>= 1
        r = acc
    return r


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    f = list(poly)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True

    def sub_x(h):
        h = list(h) + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        return _trim(h)

    if sub_x(_frobenius_power_of_x(f, p, d)) != []:
        return False
    for r in prime_factors(d):
        g = _pgcd(f, sub_x(_frobenius_power_of_x(f, p, d // r)), p)
        if len(g) > 1:
            return False
    return True


def _monic_candidates(p: int, degree: int) -> Iterable[tuple[int, ...]]:
    # ascending enc of the low coefficients (c0 + c1*p + ...)
    for code in range(p**degree):
        low = [(code // p**i) % p for i in range(degree)]
        yield tuple(low) + (1,)


def make_field(p: int, degree: int, modulus: Sequence[int] | None = None) -> "FieldSpec":
    """Build GF(p^degree).

    Without ``modulus`` the lexicographically least monic irreducible
    polynomial is used, ordering candidates by the enc of their low
    coefficients.  ``modulus`` is a low-degree-first coefficient sequence.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if degree < 1:
        raise DegreeMismatch(f"degree must be >= 1, got {degree}")
    if modulus is None:
        for cand in _monic_candidates(p, degree):
            if is_irreducible(cand, p):
                return FieldSpec(p, degree, cand)
        raise AssertionError("no irreducible polynomial found")  # pragma: no cover
    mod = tuple(int(c) % p for c in modulus)
    if len(mod) != degree + 1 or mod[-1] != 1:
        raise DegreeMismatch(
            f"modulus must be monic of degree {degree}, got {list(modulus)}"
        )
    if not is_irreducible(mod, p):
        raise ReducibleModulus(f"{list(mod)} is reducible over GF({p})")
    return FieldSpec(p, degree, mod)


# ---------------------------------------------------------------------------

class FieldSpec:
    """GF(p^degree) with a fixed polynomial basis.

    Immutable; the arithmetic tables are built lazily on first use and are
    then read-only, so one instance can be shared freely.
    """

    def __init__(self, p: int, degree: int, modulus: Sequence[int]):
        self.p = int(p)
        self.degree = int(degree)
        self.modulus = tuple(int(c) for c in modulus)
        self.order = self.p**self.degree

    # identity ---------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (
            (self.p, self.degree, self.modulus) == (other.p, other.degree, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.degree, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, degree={self.degree}, modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {"p": self.p, "degree": self.degree, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        return make_field(obj["p"], obj["degree"], obj.get("modulus"))

    # subfield of half degree (the F_q inside F_{q^2})
    @property
    def q(self) -> int:
        if self.degree % 2:
            raise OddDegree(f"GF({self.p}^{self.degree}) has no index-2 subfield")
        return self.p ** (self.degree // 2)

    # representation --------------------------------------------------
    @functools.cached_property
    def _powers(self) -> np.ndarray:
        return self.p ** np.arange(self.degree, dtype=np.int64)

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple((x // self.p**i) % self.p for i in range(self.degree))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.degree:
            raise DegreeMismatch(f"too many coefficients for degree {self.degree}")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def element(self, x) -> "FieldElement":
        return FieldElement(self, self.parse(x) if isinstance(x, str) else int(x))

    def elements(self) -> np.ndarray:
        self._check_enumerable()
        return np.arange(self.order, dtype=np.int64)

    def format(self, x: int) -> str:
        terms = []
        for i, c in enumerate(self.coeffs(x)):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "b" if i == 1 else f"b^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def parse(self, text: str) -> int:
        """Parse a decimal enc value or a polynomial string such as ``2+b+b^2 (mod 3)``."""
        s = text.strip()
        m = re.search(r"\(\s*mod\s+(\d+)\s*\)\s*$", s)
        if m:
            if int(m.group(1)) != self.p:
                raise FieldMismatch(f"element given mod {m.group(1)}, field has p={self.p}")
            s = s[: m.start()]
        s = s.replace(" ", "")
        if re.fullmatch(r"\d+", s):
            v = int(s)
            if v >= self.order:
                raise ValueError(f"enc {v} out of range for GF({self.order})")
            return v
        coeffs = [0] * self.degree
        for term in s.split("+"):
            tm = re.fullmatch(r"(?:(\d+)\*?)?(?:b(?:\^(\d+))?)?", term)
            if not term or tm is None:
                raise ValueError(f"cannot parse field element {text!r}")
            c, e = tm.group(1), tm.group(2)
            if "b" in term:
                k = int(e) if e else 1
                c = int(c) if c else 1
            else:
                k, c = 0, int(c)
            if k >= self.degree:
                raise ValueError(f"term b^{k} exceeds degree {self.degree}")
            coeffs[k] = (coeffs[k] + c) % self.p
        return self.from_coeffs(coeffs)

    # tables -----------------------------------------------------------
    def _check_enumerable(self):
        if self.order > ENUM_CAP:
            raise TooLargeToEnumerate(f"GF({self.p}^{self.degree}) exceeds the enumeration cap")

    @functools.cached_property
    def _reduction(self) -> np.ndarray:
        # row k = coefficients of x^k mod f, for k < 2*degree - 1
        d, p = self.degree, self.p
        rows = [_pmod([0] * k + [1], self.modulus, p) for k in range(2 * d - 1)]
        red = np.zeros((2 * d - 1, d), dtype=np.int64)
        for k, r in enumerate(rows):
            red[k, : len(r)] = r
        return red

    def _mul_matrix(self, b: int) -> np.ndarray:
        """Matrix M with digits(a*b) = digits(a) @ M mod p."""
        d = self.degree
        bd = self.coeffs(b)
        toeplitz = np.zeros((d, 2 * d - 1), dtype=np.int64)
        for i in range(d):
            toeplitz[i, i : i + d] = bd
        return (toeplitz @ self._reduction) % self.p

    def _slow_mul(self, a: int, b: int) -> int:
        da = np.array(self.coeffs(a), dtype=np.int64)
        return int(((da @ self._mul_matrix(b)) % self.p) @ self._powers)

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    @functools.cached_property
    def generator(self) -> int:
        """Smallest primitive element by enc."""
        n = self.order - 1
        if n == 1:
            return 1
        exps = [n // r for r in prime_factors(n)]
        for g in range(2, self.order):
            if all(self._slow_pow(g, e) != 1 for e in exps):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    @functools.cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        self._check_enumerable()
        n = self.order - 1
        g = self.generator
        m = max(1, math.isqrt(n) + 1)
        first = [1]
        for _ in range(m - 1):
            first.append(self._slow_mul(first[-1], g))
        first_digits = (np.array(first, dtype=np.int64)[:, None] // self._powers) % self.p
        exp = np.empty(n, dtype=np.int64)
        lead = 1
        gm = self._slow_mul(first[-1], g)
        for start in range(0, n, m):
            block = (first_digits @ self._mul_matrix(lead)) % self.p @ self._powers
            stop = min(n, start + m)
            exp[start:stop] = block[: stop - start]
            lead = self._slow_mul(lead, gm)
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if len(set(exp.tolist())) != n:
            raise AssertionError("generator is not primitive")  # pragma: no cover
        return exp, log

    @functools.cached_property
    def _exp_list(self) -> list[int]:
        return self._exp_log[0].tolist()

    @functools.cached_property
    def _log_list(self) -> list[int]:
        return self._exp_log[1].tolist()

    @functools.cached_property
    def _digits(self) -> np.ndarray:
        self._check_enumerable()
        return ((np.arange(self.order, dtype=np.int64)[:, None] // self._powers) % self.p).astype(
            np.int8 if self.p < 64 else np.int64
        )

    @functools.cached_property
    def _add_table(self) -> np.ndarray | None:
        if self.p == 2 or self.order > _ADD_TABLE_CAP:
            return None
        D = self._digits.astype(np.int64)
        return ((D[:, None, :] + D[None, :, :]) % self.p) @ self._powers

    @functools.cached_property
    def _neg_table(self) -> np.ndarray:
        if self.p == 2:
            return np.arange(self.order, dtype=np.int64)
        return ((self.p - self._digits.astype(np.int64)) % self.p) @ self._powers

    # scalar arithmetic -----------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % self.p
        t = self._add_table
        if t is not None:
            return int(t[a, b])
        p = self.p
        out, w = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.degree == 1:
            return (-a) % self.p
        p = self.p
        out, w = 0, 1
        while a:
            out += ((-(a % p)) % p) * w
            a //= p
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        lg = self._log_list
        return self._exp_list[(lg[a] + lg[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        return self._exp_list[(-self._log_list[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp_list[(self._log_list[a] * e) % (self.order - 1)]

    # vectorized arithmetic -------------------------------------------
    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % self.p
        t = self._add_table
        if t is not None:
            return t[a, b]
        D = self._digits
        return ((D[a].astype(np.int64) + D[b]) % self.p) @ self._powers

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.degree == 1:
            return (-a) % self.p
        return self._neg_table[a]

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        exp, log = self._exp_log
        out = exp[(log[a] + log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("zero has no inverse")
        exp, log = self._exp_log
        return exp[(-log[a]) % (self.order - 1)]

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.vpow(self.vinv(a), -e)
        if e == 0:
            return np.ones_like(a)
        exp, log = self._exp_log
        out = exp[(log[a] * (e % (self.order - 1))) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    def vsum(self, a, axis: int = 0) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.degree == 1:
            return a.sum(axis=axis) % self.p
        D = self._digits[a].astype(np.int64)
        return (D.sum(axis=axis) % self.p) @ self._powers

    # structure maps --------------------------------------------------
    def in_subfield(self, x: int) -> bool:
        return self.pow(x, self.q) == x

    def rel_trace(self, x: int) -> int:
        return self.add(self.pow(x, self.q), x)

    def rel_norm(self, x: int) -> int:
        return self.pow(x, self.q + 1)

    def artin_schreier(self, x: int) -> int:
        return self.sub(self.pow(x, self.p), x)

    def abs_trace(self, x: int) -> int:
        """Trace down to the prime field."""
        acc, y = 0, x
        for _ in range(self.degree):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        return acc

    @functools.lru_cache(maxsize=None)
    def map_values(self, name) -> np.ndarray:
        """Values of a structure map over all elements, indexed by enc.

        ``name`` is one of ``MAPS`` or ``("pow", m)``.
        """
        x = self.elements()
        if name == "rel_trace":
            return self.vadd(self.vpow(x, self.q), x)
        if name == "rel_norm":
            return self.vpow(x, self.q + 1)
        if name == "artin_schreier":
            return self.vsub(self.vpow(x, self.p), x)
        if isinstance(name, tuple) and name[0] == "pow":
            return self.vpow(x, int(name[1]))
        raise ValueError(f"unknown map {name!r}")

    @functools.lru_cache(maxsize=None)
    def preimage_index(self, name) -> "PreimageIndex":
        return PreimageIndex.from_values(self.map_values(name))


@dataclass(frozen=True)
class PreimageIndex:
    """Fibres of a map on field elements, grouped by value."""

    members: np.ndarray  # elements sorted by (value, enc)
    starts: np.ndarray
    counts: np.ndarray

    @classmethod
    def from_values(cls, values: np.ndarray) -> "PreimageIndex":
        order = np.argsort(values, kind="stable")
        counts = np.bincount(values, minlength=len(values))
        starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        return cls(order.astype(np.int64), starts, counts)

    def __call__(self, value: int) -> np.ndarray:
        s = self.starts[value]
        return self.members[s : s + self.counts[value]]


# ---------------------------------------------------------------------------
# element wrapper

@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    @property
    def enc(self) -> int:
        return self.value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other.value
        return int(other)

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __str__(self):
        return self.field.format(self.value)


def arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, div, pow, inv, neg}; ``b`` is the exponent for pow."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FieldElement) and b.field != a.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def rel_trace(x: FieldElement) -> FieldElement:
    return FieldElement(x.field, x.field.rel_trace(x.value))


def rel_norm(x: FieldElement) -> FieldElement:
    return FieldElement(x.field, x.field.rel_norm(x.value))


def preimage_set(field: FieldSpec, map_name: str, target: int) -> list[int]:
    """All x with map(x) == target, sorted by enc.

    ``artin_schreier`` is x -> x^p - x.
    """
    if map_name not in MAPS:
        raise ValueError(f"unknown map {map_name!r}")
    return field.preimage_index(map_name)(int(target)).tolist()


def _fp_span(field: FieldSpec, elems: Iterable[int]) -> set[int]:
    span = {0}
    for a in elems:
        mults = [field.mul(c, a) for c in range(field.p)] if field.degree > 1 else None
        if mults is None:
            mults = [(c * a) % field.p for c in range(field.p)]
        span = {field.add(s, m) for s in span for m in mults}
    return span


def trace_kernel_basis(field: FieldSpec, override: Sequence[int] | None = None) -> list[int]:
    """An F_p-basis of the kernel of the trace to the index-2 subfield.

    The default scans elements in enc order and keeps each one that is
    independent of those already kept.
    """
    h = field.degree // 2
    if field.degree % 2:
        raise OddDegree(f"GF({field.p}^{field.degree}) has no index-2 subfield")
    if override is not None:
        kept: list[int] = []
        span = {0}
        for a in override:
            a = int(a)
            if a == 0 or field.rel_trace(a) != 0:
                raise NotAKernelElement(f"{field.format(a)} has nonzero relative trace")
            if a in span:
                raise NotIndependent(f"{field.format(a)} is in the span of {kept}")
            kept.append(a)
            span = _fp_span(field, kept)
        return kept
    kernel = np.flatnonzero(field.map_values("rel_trace") == 0)
    kept, span = [], {0}
    for a in kernel.tolist():
        if len(kept) == h:
            break
        if a not in span:
            kept.append(a)
            span = _fp_span(field, kept)
    return kept


# ---------------------------------------------------------------------------
# polynomials over the field itself (lists of enc values, low degree first)

def fpoly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fpoly_mod(field: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a = fpoly_trim(list(a))
    b = fpoly_trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = field.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = field.mul(a[-1], inv_lead)
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = field.sub(a[shift + i], field.mul(c, bc))
        fpoly_trim(a)
    return a


def fpoly_gcd(field: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Monic gcd of two polynomials over the field."""
    a, b = fpoly_trim(list(a)), fpoly_trim(list(b))
    while b:
        a, b = b, fpoly_mod(field, a, b)
    if not a:
        return a
    inv = field.inv(a[-1])
    return [field.mul(c, inv) for c in a]


def fpoly_eval(field: FieldSpec, a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc
