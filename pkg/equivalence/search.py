"""
Search for g = outer o f o inner over monomial inner and outer maps.

Inner maps are enumerated as (perm, twists) patterns and then scalars.
A pattern survives only if every output of f, raised to some 2^t, keeps
the x_i^q x_j shape after substitution; for surviving patterns the
scalars run over all of (F*)^3, with the last two coordinates handled as
one numpy grid. The outer map is solved for rather than enumerated: each
output of g must be a scalar multiple of one twisted output of f o inner,
and the six output permutations are tried on the resulting match table.
"""
import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Optional

import numpy as np

from gf2m.conf import budget, check_budget
from gf2m.exceptions import BudgetExceeded

from .monomial import MonomialMap, compose_monomial, pattern_holds, term_target

logger = logging.getLogger(__name__)

EQUIVALENT = 'equivalent'
INEQUIVALENT = 'inequivalent'
BUDGET_EXCEEDED = 'budget_exceeded'

FOOTNOTES = (
    'Only monomial maps (permutation, per-coordinate Frobenius twist, nonzero scalars) are searched.',
    'For quadratic APN maps vanishing at 0, CCZ-equivalence implies EA-equivalence and EA- reduces to EL-equivalence.',
    'Equivalences between these families are monomial when m > 4, m != 6 and 7 does not divide m; outside that range only monomial inequivalence is shown.',
)


def scope_label(m):
    if m in (4, 6) or m % 7 == 0:
        return 'monomial-inequivalent only'
    return 'CCZ via monomial restriction'


@dataclass
class EquivReport:
    a: Optional[int]
    b: Optional[int]
    families: tuple
    m: int
    i: int
    result: str = INEQUIVALENT
    inner: Optional[MonomialMap] = None
    outer: Optional[MonomialMap] = None
    maps_searched: int = 0
    patterns_searched: int = 0
    patterns_surviving: int = 0
    scope: str = ''
    footnotes: tuple = field(default=FOOTNOTES)

    @property
    def equivalent(self):
        return self.result == EQUIVALENT


def surviving_patterns(f):
    """
    Inner (perm, twists) patterns with, for each output k of f, the list
    of output twists that keep the pattern.
    """
    ctx = f.ctx
    patterns = []
    total = 0
    for perm in permutations(range(3)):
        for twists in product(range(ctx.m), repeat=3):
            total += 1
            probe = MonomialMap(perm=perm, scalars=(1, 1, 1), twists=twists)
            out_twists = [
                [t for t in range(ctx.m) if pattern_holds(ctx, f, probe, k, t)]
                for k in range(3)
            ]
            if all(out_twists):
                patterns.append((perm, twists, out_twists))
    return patterns, total


def _composed_output(f, perm, twists, k, t_out, s0, s1, s2):
    """
    Coefficient arrays {(row, col): array over the scalar grid} of output
    k of f o inner raised to 2^t_out, inner = (perm, (s0, s1, s2), twists).
    """
    ctx = f.ctx
    probe = MonomialMap(perm=perm, scalars=(1, 1, 1), twists=twists)
    scalars = (s0, s1, s2)
    scalars_q = tuple(ctx.frob_vec(s) for s in scalars)
    out = {}
    for kk, i, j, c in f.terms():
        if kk != k:
            continue
        target = term_target(ctx, probe, i, j, t_out)
        value = ctx.frob_vec(ctx.mul_vec(c, ctx.mul_vec(scalars_q[i], scalars[j])), t_out)
        out[target] = out.get(target, 0) ^ value
    return out


def _match(ctx, composed, target_row):
    """
    Per grid point, the scalar s with s * composed == target_row on all
    nine positions (0 where there is none).
    """
    grid_len = len(next(iter(composed.values()))) if composed else 0
    pivot = next((p for p in sorted(target_row) if target_row[p]), None)
    if pivot is None or pivot not in composed:
        return np.zeros(grid_len, dtype=np.int64)

    scale = ctx.mul_vec(target_row[pivot], ctx.inv_vec(composed[pivot]))
    ok = np.asarray(composed[pivot]) != 0
    for pos in set(composed) | {p for p, v in target_row.items() if v}:
        lhs = ctx.mul_vec(scale, composed.get(pos, np.zeros(grid_len, dtype=np.int64)))
        ok &= lhs == target_row.get(pos, 0)
    return np.where(ok, scale, 0)


def el_equiv_monomial_search(f, g, max_maps=None):
    """
    Exhaust monomial inner maps looking for g = outer o f o inner.

    Args:
        f, g: QuadForm3 over the same context
        max_maps: cap on inner maps examined (default APNTRI_EQUIV_BUDGET)

    Returns:
        EquivReport; the first witness in (perm, twists, scalars) order

    Raises:
        BudgetExceeded: carrying the partial report
    """
    ctx = f.ctx
    check_budget('monomial equivalence search', ctx.m, 'MAX_EQUIV_M')
    max_maps = budget('EQUIV_BUDGET', max_maps)
    report = EquivReport(
        a=f.a, b=g.a, families=(f.family, g.family), m=ctx.m, i=ctx.i,
        scope=scope_label(ctx.m),
    )

    patterns, report.patterns_searched = surviving_patterns(f)
    report.patterns_surviving = len(patterns)
    target = [
        {(r, c): g.coeff[j][r][c] for r in range(3) for c in range(3) if g.coeff[j][r][c]}
        for j in range(3)
    ]

    units = ctx.nonzero_array()
    s1, s2 = (v.ravel() for v in np.meshgrid(units, units, indexing='ij'))
    grid = len(s1)

    for perm, twists, out_twists in patterns:
        for s0 in ctx.nonzero():
            if report.maps_searched + grid > max_maps:
                report.result = BUDGET_EXCEEDED
                logger.info(f'Equivalence search stopped after {report.maps_searched} maps')
                raise BudgetExceeded(
                    f'monomial search exceeded {max_maps} inner maps', report=report,
                )
            report.maps_searched += grid
            s0_arr = np.full(grid, s0, dtype=np.int64)

            # matches[(j, k, t)] = outer scalar per grid point, 0 if none
            matches = {}
            for k in range(3):
                for t_out in out_twists[k]:
                    composed = _composed_output(f, perm, twists, k, t_out, s0_arr, s1, s2)
                    for j in range(3):
                        matches[(j, k, t_out)] = _match(ctx, composed, target[j])

            hit = _first_outer(out_twists, matches)
            if hit is None:
                continue
            index, outer = hit
            inner = MonomialMap(
                perm=perm, scalars=(s0, int(s1[index]), int(s2[index])), twists=twists,
            )
            if compose_monomial(f, inner, outer) == g:
                report.result = EQUIVALENT
                report.inner, report.outer = inner, outer
                logger.info(f'{f!r} ~ {g!r} via inner {inner} outer {outer}')
                return report
            logger.error(f'Coefficient match {inner} / {outer} fails composition')

    report.result = INEQUIVALENT
    return report


def _first_outer(out_twists, matches):
    """Smallest grid index (then outer perm, twists) admitting an outer map"""
    best = None
    for out_perm in permutations(range(3)):
        choices = [
            [(t, matches[(j, out_perm[j], t)]) for t in out_twists[out_perm[j]]]
            for j in range(3)
        ]
        ok = np.ones(len(next(iter(matches.values()))), dtype=bool)
        for row in choices:
            ok &= np.any([scale != 0 for _, scale in row], axis=0)
        if not ok.any():
            continue
        index = int(np.argmax(ok))
        if best is not None and best[0] <= index:
            continue
        scalars, twists = [], []
        for row in choices:
            t, scale = next((t, scale) for t, scale in row if scale[index])
            scalars.append(int(scale[index]))
            twists.append(t)
        best = (index, MonomialMap(perm=out_perm, scalars=tuple(scalars), twists=tuple(twists)))
    return best
