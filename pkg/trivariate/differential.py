"""
Differential kernels of triprojective maps and the direction classification
for G_a.

For a quadratic f the map x -> f(x + d) + f(x) + f(d) is F_2-linear, so its
solution set is the kernel of a 3m x 3m matrix over F_2 whose columns are
the images of the 3m packed unit vectors.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from gf2m import linalg
from gf2m.conf import budget, check_budget
from gf2m.exceptions import ZeroDirection
from univariate.polys import (
    PolyVariant,
    eval_reciprocal_p,
    eval_reciprocal_p_vec,
    eval_variant,
    eval_variant_vec,
    require_parameter,
    roots_in_field,
)

from .quadform import Triple, make_G

logger = logging.getLogger(__name__)


class DirectionType(Enum):
    AXIS = 'Axis'
    TYPE1 = 'Type1'
    TYPE2A = 'Type2a'
    TYPE2B = 'Type2b'
    TYPE3 = 'Type3'


@dataclass(frozen=True)
class KernelProfile:
    direction: Triple
    kernel_size: int
    direction_type: DirectionType
    predicted: int
    exact: bool
    h_zero: Optional[bool] = None

    @property
    def consistent(self):
        if self.exact:
            return self.kernel_size == self.predicted
        return self.kernel_size >= self.predicted


# ============ KERNELS ============

def _require_direction(d):
    if Triple(*d).is_zero():
        raise ZeroDirection('the differential direction must be nonzero')


def differential_images(f, d):
    """Images of the 3m unit vectors under x -> f(x + d) + f(x) + f(d)"""
    fd = f.eval(d)
    images = []
    for k in range(3 * f.ctx.m):
        e = f.unpack(1 << k)
        shifted = f.eval(Triple(e.x ^ d[0], e.y ^ d[1], e.z ^ d[2]))
        fe = f.eval(e)
        images.append(f.pack(Triple(*(s ^ u ^ w for s, u, w in zip(shifted, fe, fd)))))
    return images


def diff_kernel_size(f, d):
    _require_direction(d)
    return 1 << linalg.nullity(differential_images(f, d))


def diff_kernel_basis(f, d):
    """F_2-basis of the differential kernel as Triples"""
    _require_direction(d)
    return [f.unpack(v) for v in linalg.kernel_basis(differential_images(f, d))]


def diff_kernel_size_enumerated(f, d):
    """#{x : f(x + d) + f(x) + f(d) = 0} by evaluating every x"""
    _require_direction(d)
    packed = np.arange(1 << (3 * f.ctx.m), dtype=np.int64)
    d_packed = f.pack(d)
    values = f.eval_packed(packed ^ d_packed) ^ f.eval_packed(packed) ^ f.pack(f.eval(d))
    return int(np.count_nonzero(values == 0))


def kernel_sizes(f, directions):
    """
    Kernel sizes for many packed directions at once.

    Args:
        f: QuadForm3
        directions: int64 array of packed nonzero directions

    Returns:
        int64 array of kernel sizes, aligned with directions
    """
    directions = np.asarray(directions, dtype=np.int64)
    nbits = 3 * f.ctx.m
    f_dir = f.eval_packed(directions)
    columns = []
    for k in range(nbits):
        unit = 1 << k
        f_unit = f.pack(f.eval(f.unpack(unit)))
        columns.append(f.eval_packed(directions ^ unit) ^ f_unit ^ f_dir)
    ranks = linalg.rank_batch(columns, nbits)
    return np.left_shift(1, nbits - ranks)


def direction_chunks(m, chunk_size=None):
    """(lo, hi) ranges covering the packed nonzero directions 1 .. 2^(3m) - 1"""
    chunk_size = budget('CHUNK_SIZE', chunk_size)
    total = 1 << (3 * m)
    return [(lo, min(lo + chunk_size, total)) for lo in range(1, total, chunk_size)]


# ============ THE H POLYNOMIAL ============

def h_value(ctx, a, d):
    """
    H(A, B, C), homogeneous of degree d = q^2 + q + 1.

    On the coordinate planes it reduces to B^d Q_{a^q}(A/B), A^d Q_a(C/A)
    and B^d P*_a(C/B).
    """
    require_parameter(a)
    A, B, C = d
    mul = ctx.mul
    fq = ctx.frob_q
    Aq, Bq, Cq = fq(A), fq(B), fq(C)
    Aq2, Bq2, Cq2 = fq(Aq), fq(Bq), fq(Cq)
    aq = fq(a)
    Bq2q = mul(Bq2, Bq)
    terms = (
        mul(mul(Aq2, Aq), A),
        mul(aq, mul(A, Bq2q)),
        mul(A, mul(Bq, Cq2)),
        mul(a, mul(mul(Aq2, Aq), C)),
        mul(Aq, mul(Bq2, C)),
        mul(Aq2, mul(B, Cq)),
        mul(Bq2q, B),
        mul(mul(aq, a), mul(Bq2q, C)),
        mul(a, mul(Bq, mul(Cq2, C))),
        mul(aq, mul(Bq2, mul(Cq, C))),
        mul(mul(Cq2, Cq), C),
    )
    value = 0
    for term in terms:
        value ^= term
    return value


def h_value_vec(ctx, a, A, B, C):
    require_parameter(a)
    mul = ctx.mul_vec
    fq = ctx.frob_vec
    Aq, Bq, Cq = fq(A), fq(B), fq(C)
    Aq2, Bq2, Cq2 = fq(Aq), fq(Bq), fq(Cq)
    aq = ctx.frob_q(a)
    Aq2q = mul(Aq2, Aq)
    Bq2q = mul(Bq2, Bq)
    return (
        mul(Aq2q, A)
        ^ mul(aq, mul(A, Bq2q))
        ^ mul(A, mul(Bq, Cq2))
        ^ mul(a, mul(Aq2q, C))
        ^ mul(Aq, mul(Bq2, C))
        ^ mul(Aq2, mul(B, Cq))
        ^ mul(Bq2q, B)
        ^ mul(ctx.mul(aq, a), mul(Bq2q, C))
        ^ mul(a, mul(Bq, mul(Cq2, C)))
        ^ mul(aq, mul(Bq2, mul(Cq, C)))
        ^ mul(mul(Cq2, Cq), C)
    )


def h_zero_count(ctx, a):
    """Number of nonzero triples where H vanishes"""
    check_budget('H factorization check', ctx.m, 'MAX_H_CHECK_M')
    m = ctx.m
    packed = np.arange(1, 1 << (3 * m), dtype=np.int64)
    mask = ctx.order
    values = h_value_vec(ctx, a, packed & mask, (packed >> m) & mask, packed >> (2 * m))
    return int(np.count_nonzero(values == 0))


def h_factorization_check(ctx, a):
    """H has a zero on a nonzero triple exactly when Q_a has a root"""
    zeros = h_zero_count(ctx, a)
    has_root = roots_in_field(ctx, PolyVariant.Q, a).count > 0
    if (zeros > 0) != has_root:
        logger.warning(
            f'H/Q_a disagreement at a={hex(a)}: {zeros} zeros of H, Q_a has_root={has_root}'
        )
    return (zeros > 0) == has_root


# ============ DIRECTION CLASSIFICATION (FAMILY G) ============

def direction_type(d):
    A, B, C = d
    nonzero = (A != 0) + (B != 0) + (C != 0)
    if nonzero == 1:
        return DirectionType.AXIS
    if nonzero == 3:
        return DirectionType.TYPE3
    if not C:
        return DirectionType.TYPE1
    if not B:
        return DirectionType.TYPE2A
    return DirectionType.TYPE2B


def classify_direction_G(ctx, a, d, measured=None):
    """
    Predicted kernel size of D_d G_a from the root tests, paired with the
    measured size.

    Args:
        ctx: field context
        a: family parameter
        d: nonzero direction (A, B, C)
        measured: kernel size if already known; computed otherwise

    Returns:
        KernelProfile
    """
    require_parameter(a)
    _require_direction(d)
    d = Triple(*d)
    A, B, C = d
    full = ctx.size
    kind = direction_type(d)
    h_zero = None
    exact = True

    if kind is DirectionType.AXIS:
        predicted = 2
    elif kind is DirectionType.TYPE1:
        hit = eval_variant(ctx, PolyVariant.QQ, a, ctx.div(A, B)) == 0
        predicted = full if hit else 2
    elif kind is DirectionType.TYPE2A:
        hit = eval_variant(ctx, PolyVariant.Q, a, ctx.div(C, A)) == 0
        predicted = full if hit else 2
    elif kind is DirectionType.TYPE2B:
        hit = eval_reciprocal_p(ctx, a, ctx.div(C, B)) == 0
        predicted = full if hit else 2
    else:
        h_zero = h_value(ctx, a, d) == 0
        if roots_in_field(ctx, PolyVariant.Q, a).count:
            # only the zero set of H carries a bound; elsewhere just |ker| >= 2
            predicted = full if h_zero else 2
            exact = False
        else:
            predicted = 2

    if measured is None:
        measured = diff_kernel_size(make_G(ctx, a), d)
    return KernelProfile(
        direction=d,
        kernel_size=int(measured),
        direction_type=kind,
        predicted=predicted,
        exact=exact,
        h_zero=h_zero,
    )


@dataclass
class TypeTally:
    total: int = 0
    exact_match: int = 0
    mismatches: int = 0
    bound_met: int = 0
    bound_missed: int = 0
    h_zero: int = 0
    max_kernel: int = 0


@dataclass
class DirectionSummary:
    a: int
    tallies: dict = field(default_factory=lambda: {t: TypeTally() for t in DirectionType})
    first_mismatch: Optional[KernelProfile] = None

    @property
    def mismatches(self):
        return sum(t.mismatches + t.bound_missed for t in self.tallies.values())

    @property
    def consistent(self):
        return self.mismatches == 0


def _predictions(ctx, a, x, y, z, q_has_root, h_zero):
    """Vectorized counterpart of classify_direction_G's case analysis"""
    full = ctx.size
    nx, ny, nz = x != 0, y != 0, z != 0
    nonzero = nx.astype(np.int64) + ny + nz

    types = np.full(len(x), -1, dtype=np.int64)
    predicted = np.full(len(x), 2, dtype=np.int64)

    codes = {t: n for n, t in enumerate(DirectionType)}
    axis = nonzero == 1
    type1 = (nonzero == 2) & ~nz
    type2a = (nonzero == 2) & ~ny
    type2b = (nonzero == 2) & ~nx
    type3 = nonzero == 3
    types[axis] = codes[DirectionType.AXIS]
    types[type1] = codes[DirectionType.TYPE1]
    types[type2a] = codes[DirectionType.TYPE2A]
    types[type2b] = codes[DirectionType.TYPE2B]
    types[type3] = codes[DirectionType.TYPE3]

    inv_y = ctx.inv_vec(y)
    inv_x = ctx.inv_vec(x)
    hit1 = eval_variant_vec(ctx, PolyVariant.QQ, a, ctx.mul_vec(x, inv_y)) == 0
    hit2a = eval_variant_vec(ctx, PolyVariant.Q, a, ctx.mul_vec(z, inv_x)) == 0
    hit2b = eval_reciprocal_p_vec(ctx, a, ctx.mul_vec(z, inv_y)) == 0
    predicted[type1 & hit1] = full
    predicted[type2a & hit2a] = full
    predicted[type2b & hit2b] = full
    if q_has_root:
        predicted[type3 & h_zero] = full
    return types, predicted


def classify_directions_G(ctx, a, chunk_size=None):
    """
    Classify every nonzero direction of G_a and tally predicted against
    measured kernel sizes per direction type.
    """
    require_parameter(a)
    check_budget('direction classification', ctx.m, 'MAX_KERNEL_M')
    f = make_G(ctx, a)
    q_has_root = roots_in_field(ctx, PolyVariant.Q, a).count > 0
    summary = DirectionSummary(a=a)
    kinds = list(DirectionType)

    for lo, hi in direction_chunks(ctx.m, chunk_size):
        packed = np.arange(lo, hi, dtype=np.int64)
        x, y, z = f.unpack_vec(packed)
        measured = kernel_sizes(f, packed)
        h_zero = h_value_vec(ctx, a, x, y, z) == 0
        types, predicted = _predictions(ctx, a, x, y, z, q_has_root, h_zero)

        for code, kind in enumerate(kinds):
            sel = types == code
            if not sel.any():
                continue
            tally = summary.tallies[kind]
            got, want = measured[sel], predicted[sel]
            tally.total += int(sel.sum())
            tally.max_kernel = max(tally.max_kernel, int(got.max()))
            tally.h_zero += int(np.count_nonzero(h_zero[sel]))
            if kind is DirectionType.TYPE3 and q_has_root:
                bad = got < want
                tally.bound_met += int(np.count_nonzero(~bad))
                tally.bound_missed += int(np.count_nonzero(bad))
            else:
                bad = got != want
                tally.exact_match += int(np.count_nonzero(~bad))
                tally.mismatches += int(np.count_nonzero(bad))
            if bad.any() and summary.first_mismatch is None:
                where = int(np.nonzero(sel)[0][np.nonzero(bad)[0][0]])
                summary.first_mismatch = classify_direction_G(
                    ctx, a, f.unpack(int(packed[where])), measured=int(measured[where])
                )

    if not summary.consistent:
        logger.warning(f'Direction classification mismatch for G_{hex(a)}: {summary.first_mismatch}')
    return summary
