"""
Triprojective quadratic maps F^3 -> F^3.

Output k of a QuadForm3 is sum over (i, j) of coeff[k][i][j] * x_i^q * x_j,
with coordinates indexed 0, 1, 2 for x, y, z. Both families and every map
obtained from them by monomial substitution have this shape.

Triples are also handled packed into one int, x | y << m | z << 2m, which
is how the scans index the 2^(3m) inputs.
"""
import logging
from typing import NamedTuple

import numpy as np

from gf2m.conf import budget
from gf2m.field import ctx_new
from univariate.polys import require_parameter

logger = logging.getLogger(__name__)

SWAP = (2, 1, 0)


class Triple(NamedTuple):
    x: int
    y: int
    z: int

    def is_zero(self):
        return not (self.x or self.y or self.z)


def _freeze(coeff):
    return tuple(tuple(tuple(int(c) for c in row) for row in matrix) for matrix in coeff)


def zero_coeff():
    return [[[0] * 3 for _ in range(3)] for _ in range(3)]


class QuadForm3:
    """
    A map (x, y, z) -> three sums of x_i^q x_j terms over one field context.

    `family` and `a` are labels carried into reports; they play no part
    in evaluation or equality.
    """

    def __init__(self, ctx, coeff, family=None, a=None):
        self.ctx = ctx
        self.coeff = _freeze(coeff)
        self.family = family
        self.a = a
        self._pairs = sorted({
            (i, j)
            for k in range(3) for i in range(3) for j in range(3)
            if self.coeff[k][i][j]
        })

    def __eq__(self, other):
        return (
            isinstance(other, QuadForm3)
            and self.ctx == other.ctx
            and self.coeff == other.coeff
        )

    def __hash__(self):
        return hash((self.ctx, self.coeff))

    def __repr__(self):
        label = f'{self.family}_{hex(self.a)}' if self.family else 'QuadForm3'
        return f'<{label} over {self.ctx!r}>'

    def terms(self):
        """Nonzero terms as (k, i, j, c)"""
        for k in range(3):
            for i in range(3):
                for j in range(3):
                    c = self.coeff[k][i][j]
                    if c:
                        yield k, i, j, c

    def support(self, k):
        """Set of (i, j) monomials present in output k"""
        return {(i, j) for kk, i, j, _ in self.terms() if kk == k}

    # ============ EVALUATION ============

    def eval(self, v):
        ctx = self.ctx
        v = Triple(*v)
        vq = tuple(ctx.frob_q(c) for c in v)
        out = [0, 0, 0]
        for k, i, j, c in self.terms():
            out[k] ^= ctx.mul(c, ctx.mul(vq[i], v[j]))
        return Triple(*out)

    def eval_naive(self, v):
        """Term-by-term evaluation through ctx.pow; used to cross-check eval"""
        ctx = self.ctx
        out = [0, 0, 0]
        for k, i, j, c in self.terms():
            out[k] ^= ctx.mul(c, ctx.mul(ctx.pow(v[i], ctx.q), v[j]))
        return Triple(*out)

    def eval_vec(self, x, y, z):
        """Elementwise evaluation over three coordinate arrays"""
        ctx = self.ctx
        cols = tuple(np.asarray(c, dtype=np.int64) for c in (x, y, z))
        cols_q = tuple(ctx.frob_vec(c) for c in cols)
        products = {(i, j): ctx.mul_vec(cols_q[i], cols[j]) for i, j in self._pairs}

        out = [np.zeros_like(cols[0]) for _ in range(3)]
        for k, i, j, c in self.terms():
            term = products[(i, j)]
            out[k] ^= term if c == 1 else ctx.mul_vec(c, term)
        return tuple(out)

    def eval_packed(self, packed):
        x, y, z = self.unpack_vec(packed)
        return self.pack_vec(*self.eval_vec(x, y, z))

    # ============ PACKING ============

    def pack(self, v):
        m = self.ctx.m
        return v[0] | (v[1] << m) | (v[2] << (2 * m))

    def unpack(self, p):
        m = self.ctx.m
        mask = self.ctx.order
        return Triple(p & mask, (p >> m) & mask, (p >> (2 * m)) & mask)

    def pack_vec(self, x, y, z):
        m = self.ctx.m
        return x | (y << m) | (z << (2 * m))

    def unpack_vec(self, packed):
        m = self.ctx.m
        mask = self.ctx.order
        packed = np.asarray(packed, dtype=np.int64)
        return packed & mask, (packed >> m) & mask, packed >> (2 * m)

    # ============ TRANSPORT ============

    def to_payload(self):
        """JSON-safe dict for Celery task arguments"""
        return {
            'm': self.ctx.m,
            'i': self.ctx.i,
            'modulus': self.ctx.modulus,
            'family': self.family,
            'a': self.a,
            'coeff': [[list(row) for row in matrix] for matrix in self.coeff],
        }

    @classmethod
    def from_payload(cls, payload):
        ctx = ctx_new(payload['m'], payload['i'], modulus_override=payload['modulus'])
        return cls(ctx, payload['coeff'], family=payload.get('family'), a=payload.get('a'))


# ============ FAMILIES ============

def make_G(ctx, a):
    """G_a = (x^(q+1) + a x^q z + y z^q, x^q z + y^(q+1), x y^q + a y^q z + z^(q+1))"""
    require_parameter(a)
    coeff = zero_coeff()
    coeff[0][0][0] = 1
    coeff[0][0][2] = a
    coeff[0][2][1] = 1
    coeff[1][0][2] = 1
    coeff[1][1][1] = 1
    coeff[2][1][0] = 1
    coeff[2][1][2] = a
    coeff[2][2][2] = 1
    return QuadForm3(ctx, coeff, family='G', a=a)


def make_H(ctx, a):
    """H_a = (x^(q+1) + a x y^q + y z^q, x y^q + z^(q+1), x^q z + y^(q+1) + a y^q z)"""
    require_parameter(a)
    coeff = zero_coeff()
    coeff[0][0][0] = 1
    coeff[0][1][0] = a
    coeff[0][2][1] = 1
    coeff[1][1][0] = 1
    coeff[1][2][2] = 1
    coeff[2][0][2] = 1
    coeff[2][1][1] = 1
    coeff[2][1][2] = a
    return QuadForm3(ctx, coeff, family='H', a=a)


def make_family(ctx, family, a):
    makers = {'G': make_G, 'H': make_H}
    return makers[family.upper()](ctx, a)


def affine_part_vanishes(f):
    return f.eval(Triple(0, 0, 0)).is_zero()


# ============ SWAP SYMMETRY ============

def swap_conjugate(f):
    """sigma o f o sigma with sigma(x, y, z) = (z, y, x)"""
    s = SWAP
    coeff = [
        [[f.coeff[s[k]][s[i]][s[j]] for j in range(3)] for i in range(3)]
        for k in range(3)
    ]
    return QuadForm3(f.ctx, coeff, family=f.family, a=f.a)


def swap_counterexample(f, chunk_size=None):
    """
    First input (in packed order) where f(sigma v) != sigma f(v), or None.

    The coefficient comparison decides the question; the scan only runs to
    produce a concrete witness.
    """
    conjugate = swap_conjugate(f)
    if conjugate.coeff == f.coeff:
        return None

    chunk_size = budget('CHUNK_SIZE', chunk_size)
    total = 1 << (3 * f.ctx.m)
    for lo in range(0, total, chunk_size):
        packed = np.arange(lo, min(lo + chunk_size, total), dtype=np.int64)
        diff = np.nonzero(f.eval_packed(packed) != conjugate.eval_packed(packed))[0]
        if len(diff):
            witness = f.unpack(int(packed[diff[0]]))
            logger.info(f'Swap identity fails for {f!r} at {tuple(hex(c) for c in witness)}')
            return witness
    return None
