"""
Arithmetic in the binary field F_{2^m}, 3 <= m <= 24.

Elements are plain ints whose bit k is the coefficient of alpha^k in the
polynomial basis. Scalar methods work on ints; the *_vec methods work
elementwise on numpy int64 arrays and are what the scans use.
"""
import logging
from functools import lru_cache
from math import gcd

import numpy as np

from .conf import budget
from .exceptions import (
    ContextMismatch,
    DegreeOutOfRange,
    DivisionByZero,
    GcdViolation,
    InvalidElement,
    NonIrreducibleModulus,
    OddDegreeRequired,
)

logger = logging.getLogger(__name__)

MIN_M = 3
MAX_M = 24


# ============ POLYNOMIALS OVER F_2 ============

def prime_factors(n):
    """Distinct prime factors of n by trial division"""
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        factors.append(n)
    return factors


def poly_mod(a, mod):
    deg = mod.bit_length() - 1
    while a.bit_length() - 1 >= deg:
        a ^= mod << (a.bit_length() - 1 - deg)
    return a


def poly_mulmod(a, b, mod):
    """Carry-less product of a and b reduced modulo mod (a already reduced)"""
    deg = mod.bit_length() - 1
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if (a >> deg) & 1:
            a ^= mod
    return result


def poly_gcd(a, b):
    while b:
        a, b = b, poly_mod(a, b)
    return a


def is_irreducible(poly):
    """
    Rabin's test: x^(2^n) = x mod f and gcd(x^(2^(n/p)) - x, f) = 1
    for every prime p dividing n = deg f.
    """
    n = poly.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True

    # frob[k] = x^(2^k) mod poly
    frob = [poly_mod(0b10, poly)]
    for _ in range(n):
        frob.append(poly_mulmod(frob[-1], frob[-1], poly))

    if frob[n] != frob[0]:
        return False
    for p in prime_factors(n):
        if poly_gcd(poly, frob[n // p] ^ 0b10) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(m):
    """Lexicographically smallest irreducible polynomial of degree m"""
    for poly in range(1 << m, 1 << (m + 1)):
        if is_irreducible(poly):
            return poly
    raise NonIrreducibleModulus(f'no irreducible polynomial of degree {m}')


# ============ FIELD CONTEXT ============

class FieldCtx:
    """
    A concrete field F_{2^m} with Frobenius parameter q = 2^i.

    Immutable after construction, safe to share between threads and
    worker processes (rebuild it from (m, i, modulus) on the other side).
    """

    def __init__(self, m, i, modulus, theorem_mode=False):
        self.m = m
        self.i = i
        self.q = 1 << i
        self.modulus = modulus
        self.theorem_mode = theorem_mode
        self.size = 1 << m
        self.order = self.size - 1
        # exponent shared by every polynomial of the families
        self.d = self.q * self.q + self.q + 1

        self._exp = None
        self._log = None
        self._exp_arr = None
        self._log_arr = None
        if m <= budget('TABLE_M'):
            self._build_tables()

        # trace is linear, so it is the parity of x & mask
        self._trace_mask = 0
        for k in range(m):
            if FieldCtx.trace_abs(self, 1 << k):
                self._trace_mask |= 1 << k

    def _build_tables(self):
        generator = self._primitive_element()
        exp = [0] * (2 * self.order)
        log = [0] * self.size
        value = 1
        for k in range(self.order):
            exp[k] = value
            log[value] = k
            value = poly_mulmod(value, generator, self.modulus)
        for k in range(self.order, 2 * self.order):
            exp[k] = exp[k - self.order]
        self._exp = exp
        self._log = log
        self._exp_arr = np.array(exp, dtype=np.int64)
        self._log_arr = np.array(log, dtype=np.int64)

    def _primitive_element(self):
        factors = prime_factors(self.order)
        for g in range(2, self.size):
            if all(self._pow_raw(g, self.order // p) != 1 for p in factors):
                return g
        return 1

    def _pow_raw(self, x, e):
        result = 1
        while e:
            if e & 1:
                result = poly_mulmod(result, x, self.modulus)
            x = poly_mulmod(x, x, self.modulus)
            e >>= 1
        return result

    @property
    def key(self):
        return (self.m, self.i, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f'FieldCtx(m={self.m}, i={self.i}, modulus={self.modulus_hex})'

    # ============ ELEMENTS ============

    def elements(self):
        return range(self.size)

    def nonzero(self):
        return range(1, self.size)

    def elements_array(self):
        return np.arange(self.size, dtype=np.int64)

    def nonzero_array(self):
        return np.arange(1, self.size, dtype=np.int64)

    def to_hex(self, x):
        if not 0 <= x < self.size:
            raise InvalidElement(f'{x!r} has bits above degree {self.m - 1}')
        return hex(x)

    def from_hex(self, text):
        try:
            value = int(text, 16)
        except (TypeError, ValueError):
            raise InvalidElement(f'{text!r} is not a hex element')
        if not 0 <= value < self.size:
            raise InvalidElement(f'{text} is not an element of F_2^{self.m}')
        return value

    @property
    def modulus_hex(self):
        return hex(self.modulus)

    # ============ SCALAR ARITHMETIC ============

    def add(self, x, y):
        return x ^ y

    def mul(self, x, y):
        if not x or not y:
            return 0
        if self._exp is not None:
            return self._exp[self._log[x] + self._log[y]]
        return poly_mulmod(x, y, self.modulus)

    def square(self, x):
        return self.mul(x, x)

    def pow(self, x, e):
        if e < 0:
            return self.pow(self.inv(x), -e)
        if e == 0:
            return 1
        if not x:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[x] * e) % self.order]
        return self._pow_raw(x, e % self.order or self.order)

    def inv(self, x):
        if not x:
            raise DivisionByZero('zero has no inverse')
        return self.pow(x, self.size - 2)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def frob_q(self, x):
        """x^q by i repeated squarings"""
        for _ in range(self.i):
            x = self.square(x)
        return x

    def frob(self, x, k):
        """x^(2^k); k is taken mod m"""
        for _ in range(k % self.m):
            x = self.square(x)
        return x

    def trace_abs(self, c):
        """Absolute trace sum_{j<m} c^(2^j), returned as 0 or 1"""
        acc = c
        t = c
        for _ in range(self.m - 1):
            t = self.square(t)
            acc ^= t
        return acc

    def artin_schreier_solvable(self, c):
        """Whether t^q + t = c has a solution; needs gcd(i, m) = 1"""
        if gcd(self.i, self.m) != 1:
            raise GcdViolation(f'gcd({self.i}, {self.m}) != 1')
        return self.trace_abs(c) == 0

    def artin_schreier_solutions(self, c):
        """All t with t^q + t = c, by exhaustive scan"""
        t = self.elements_array()
        hits = np.nonzero((self.frob_vec(t) ^ t) == c)[0]
        return [int(v) for v in hits]

    # ============ VECTOR ARITHMETIC ============

    def mul_vec(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self._exp_arr is not None:
            out = self._exp_arr[self._log_arr[x] + self._log_arr[y]]
            return np.where((x == 0) | (y == 0), 0, out)
        return self._clmul_vec(x, y)

    def _clmul_vec(self, x, y):
        x, y = np.broadcast_arrays(x, y)
        x = x.copy()
        acc = np.zeros_like(x)
        for bit in range(self.m):
            acc ^= np.where((y >> bit) & 1, x, 0)
            x <<= 1
            x ^= np.where((x >> self.m) & 1, self.modulus, 0)
        return acc

    def frob_vec(self, x, k=None):
        """x^(2^k) elementwise, k defaults to i"""
        k = (self.i if k is None else k) % self.m
        x = np.asarray(x, dtype=np.int64)
        if self._exp_arr is not None:
            out = self._exp_arr[(self._log_arr[x] << k) % self.order]
            return np.where(x == 0, 0, out)
        for _ in range(k):
            x = self._clmul_vec(x, x)
        return x

    def pow_vec(self, x, e):
        x = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(x)
        r = e % self.order
        if self._exp_arr is not None:
            out = self._exp_arr[(self._log_arr[x] * r) % self.order]
            return np.where(x == 0, 0, out)
        result = np.where(x == 0, 0, 1)
        base = x
        while r:
            if r & 1:
                result = self._clmul_vec(result, base)
            base = self._clmul_vec(base, base)
            r >>= 1
        return result

    def inv_vec(self, x):
        """Elementwise inverse; zero entries map to zero"""
        return self.pow_vec(x, self.size - 2)

    def trace_vec(self, x):
        v = np.asarray(x, dtype=np.int64) & self._trace_mask
        parity = np.zeros_like(v)
        for bit in range(self.m):
            parity ^= (v >> bit) & 1
        return parity


# ============ DEBUG CONTEXT TAGS ============

class TaggedFe(int):
    """Element remembering which context produced it"""

    def __new__(cls, value, ctx_key):
        obj = super().__new__(cls, value)
        obj.ctx_key = ctx_key
        return obj


class TaggedFieldCtx(FieldCtx):
    """
    FieldCtx whose scalar operations check and tag their operands.

    Used when APNTRI_CONTEXT_TAGS is on; results are TaggedFe so an
    element that travels into a different context is caught on first use.
    """

    def _check(self, *values):
        for value in values:
            if isinstance(value, TaggedFe) and value.ctx_key != self.key:
                raise ContextMismatch(f'element from {value.ctx_key} used in {self.key}')
            if not 0 <= value < self.size:
                raise InvalidElement(f'{value!r} has bits above degree {self.m - 1}')

    def _tag(self, value):
        return TaggedFe(value, self.key)

    def add(self, x, y):
        self._check(x, y)
        return self._tag(super().add(x, y))

    def mul(self, x, y):
        self._check(x, y)
        return self._tag(super().mul(x, y))

    def pow(self, x, e):
        self._check(x)
        return self._tag(super().pow(x, e))

    def inv(self, x):
        self._check(x)
        return self._tag(super().inv(x))

    def frob_q(self, x):
        self._check(x)
        return self._tag(super().frob_q(x))

    def frob(self, x, k):
        self._check(x)
        return self._tag(super().frob(x, k))

    def trace_abs(self, c):
        self._check(c)
        return super().trace_abs(c)


@lru_cache(maxsize=64)
def _build_ctx(m, i, modulus, theorem_mode, tagged):
    logger.debug(f'Building F_2^{m} (i={i}, modulus={hex(modulus)})')
    cls = TaggedFieldCtx if tagged else FieldCtx
    return cls(m, i, modulus, theorem_mode=theorem_mode)


def ctx_new(m, i, modulus_override=None, theorem_mode=False):
    """
    Build (or fetch the cached) field context.

    Args:
        m: extension degree, 3 <= m <= 24
        i: Frobenius exponent, 1 <= i < m
        modulus_override: irreducible polynomial of degree m, bit-encoded
        theorem_mode: require odd m and gcd(i, m) = 1

    Returns:
        FieldCtx
    """
    if not MIN_M <= m <= MAX_M:
        raise DegreeOutOfRange(f'm must lie in [{MIN_M}, {MAX_M}], got {m}')
    if i < 1:
        raise DegreeOutOfRange(f'i must be positive, got {i}')
    if theorem_mode:
        _check_theorem(m, i)
    if i >= m:
        raise DegreeOutOfRange(f'i must be below m, got i={i}, m={m}')

    if modulus_override is None:
        modulus = smallest_irreducible(m)
    else:
        modulus = modulus_override
        if modulus.bit_length() - 1 != m or not is_irreducible(modulus):
            raise NonIrreducibleModulus(f'{hex(modulus)} is not irreducible of degree {m}')

    return _build_ctx(m, i, modulus, theorem_mode, bool(budget('CONTEXT_TAGS')))


def _check_theorem(m, i):
    if gcd(i, m) != 1:
        raise GcdViolation(f'gcd({i}, {m}) = {gcd(i, m)} != 1')
    if m % 2 == 0:
        raise OddDegreeRequired(f'family theorems need odd m, got {m}')


def require_theorem_mode(ctx):
    """Raise unless ctx satisfies the family theorems' hypotheses (m odd, gcd(i, m) = 1)"""
    _check_theorem(ctx.m, ctx.i)
