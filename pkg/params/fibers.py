"""
Fibers of g(u) = (u^d + 1)/u and the collision curve.

C_k is the set of values v with exactly k preimages under g on F*. The
good parameters are the nonzero values with an empty fiber, and the
affine points of the collision curve are the ordered pairs x != y with
g(x) = g(y), counted by sum over k of (k^2 - k) #C_k.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from decimal import ROUND_CEILING, Decimal, localcontext
from typing import Optional

import numpy as np

from gf2m.conf import check_budget

from .goodset import g_values

logger = logging.getLogger(__name__)

BOUND_PRECISION = 50


@dataclass(frozen=True)
class BoundValue:
    value: Decimal
    ceiling: int

    @property
    def vacuous(self):
        return self.value <= 0

    def __str__(self):
        return f'{self.value.quantize(Decimal("0.001"))}'


@dataclass
class FiberStats:
    m: int
    i: int
    class_counts: dict
    gamma_affine: int
    c0: int
    lower_bound: BoundValue
    collision_pairs: Optional[int] = None
    gamma_direct: Optional[int] = None
    gamma_diagonal: Optional[int] = None

    @property
    def partition_ok(self):
        total = sum(self.class_counts.values())
        weighted = sum(k * n for k, n in self.class_counts.items())
        return total == 1 << self.m and weighted == (1 << self.m) - 1

    @property
    def counts_agree(self):
        """Fiber formula against the direct counters, when they ran"""
        if self.collision_pairs is None:
            return True
        return self.gamma_affine == self.collision_pairs == self.gamma_direct - self.gamma_diagonal


def lower_bound(ctx):
    """
    (2^m + 1 - (d - 1)(d - 2) 2^(m/2) - d) / d with d = q^2 + q + 1.

    May be negative, in which case it says nothing.
    """
    d = ctx.d
    with localcontext() as decimal_ctx:
        decimal_ctx.prec = BOUND_PRECISION
        root = Decimal(2).sqrt() ** ctx.m
        value = (Decimal(2 ** ctx.m + 1) - (d - 1) * (d - 2) * root - d) / d
        ceiling = int(value.to_integral_value(rounding=ROUND_CEILING))
    return BoundValue(value=value, ceiling=ceiling)


def fiber_histogram(ctx):
    """Preimage count of every field value under g"""
    return np.bincount(g_values(ctx), minlength=ctx.size)


def class_counts(fibers):
    return dict(sorted(Counter(int(n) for n in fibers).items()))


def gamma_sum(ctx, x, y):
    """sum over j = 0 .. d - 2 of x^(d-2-j) y^j, x scalar, y array (Horner in y)"""
    n = ctx.d - 2
    acc = np.ones_like(y)
    power = 1
    for _ in range(n):
        power = ctx.mul(power, x)
        acc = ctx.mul_vec(acc, y) ^ power
    return acc


def count_gamma(ctx):
    """
    Direct scans over all pairs of nonzero (x, y).

    Returns:
        (ordered pairs x != y with g(x) = g(y),
         zeros of x y S(x, y) + 1 including the diagonal,
         zeros on the diagonal x = y)
    """
    check_budget('direct Gamma count', ctx.m, 'MAX_GAMMA_M')
    ys = ctx.nonzero_array()
    g = g_values(ctx, ys)
    collisions = 0
    gamma = 0
    diagonal = 0
    for index, x in enumerate(ys):
        x = int(x)
        same = g == g[index]
        collisions += int(np.count_nonzero(same)) - 1
        zero = (ctx.mul_vec(x, ctx.mul_vec(ys, gamma_sum(ctx, x, ys))) ^ 1) == 0
        gamma += int(np.count_nonzero(zero))
        diagonal += int(zero[index])
    return collisions, gamma, diagonal


def fiber_stats(ctx, direct=False):
    """
    Fiber classes of g, the collision-curve count and the counting bound.

    Args:
        ctx: field context
        direct: also run the pair scans (m <= APNTRI_MAX_GAMMA_M)

    Returns:
        FiberStats
    """
    fibers = fiber_histogram(ctx)
    counts = class_counts(fibers)
    stats = FiberStats(
        m=ctx.m,
        i=ctx.i,
        class_counts=counts,
        gamma_affine=sum((k * k - k) * n for k, n in counts.items()),
        c0=int(np.count_nonzero(fibers[1:] == 0)),
        lower_bound=lower_bound(ctx),
    )
    if direct:
        stats.collision_pairs, stats.gamma_direct, stats.gamma_diagonal = count_gamma(ctx)
        if stats.gamma_diagonal:
            logger.warning(f'Gamma meets the diagonal at m={ctx.m}: {stats.gamma_diagonal} points')
        if not stats.counts_agree:
            logger.warning(
                f'Gamma counts differ at m={ctx.m}: fibers {stats.gamma_affine}, '
                f'collisions {stats.collision_pairs}, equation {stats.gamma_direct}'
            )
    return stats
