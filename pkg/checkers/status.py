"""
Permutation and APN status of a QuadForm3 by independent methods.

    image       evaluate on all 2^(3m) inputs, look for a repeated output
    kernel      every nonzero direction has differential kernel of size 2
    exhaustive  count solutions of f(x + d) + f(x) = b for every (d, b)
    criterion   root test on Q_a (family G) or P'_a (family H); theorem
                based, used only where measuring is out of budget
"""
import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from gf2m.conf import budget, check_budget, check_work
from trivariate.differential import direction_chunks, kernel_sizes
from univariate.polys import PolyVariant, roots_in_field

logger = logging.getLogger(__name__)

METHODS = ('auto', 'kernel', 'exhaustive', 'image', 'criterion')

# directions handled per bincount pass of the exhaustive checker
EXHAUSTIVE_BATCH = 32


@dataclass
class StatusReport:
    a: int
    family: str
    is_permutation: bool
    is_apn: bool
    method: str
    max_kernel: Optional[int]
    elapsed_ms: float
    perm_method: str = 'image'
    witness: Optional[tuple] = None


# ============ PERMUTATION ============

def first_collision(f, chunk_size=None, max_units=None):
    """
    Smallest packed input whose image was already produced, or None.

    Images are marked in a 2^(3m)-bit occupancy array of uint64 words.
    """
    check_budget('full-image permutation check', f.ctx.m, 'MAX_IMAGE_M')
    chunk_size = budget('CHUNK_SIZE', chunk_size)
    total = 1 << (3 * f.ctx.m)
    check_work('full-image permutation check', total, max_units)
    occupancy = np.zeros((total + 63) // 64, dtype=np.uint64)
    one = np.uint64(1)

    for lo in range(0, total, chunk_size):
        packed = np.arange(lo, min(lo + chunk_size, total), dtype=np.int64)
        images = f.eval_packed(packed)
        words = images >> 6
        bits = np.left_shift(one, (images & 63).astype(np.uint64))

        seen = (occupancy[words] & bits) != 0
        _, first_index = np.unique(images, return_index=True)
        repeated = np.ones(len(images), dtype=bool)
        repeated[first_index] = False
        clash = seen | repeated
        if clash.any():
            return int(packed[np.argmax(clash)])
        np.bitwise_or.at(occupancy, words, bits)
    return None


def is_permutation(f, chunk_size=None, max_units=None):
    collision = first_collision(f, chunk_size, max_units)
    if collision is not None:
        logger.debug(f'{f!r} repeats an image at input {hex(collision)}')
    return collision is None


# ============ APN BY KERNELS ============

def kernel_chunk(f, lo, hi):
    """
    Scan packed directions lo .. hi - 1.

    Returns:
        dict with the chunk bounds, the largest kernel seen and the first
        direction whose kernel exceeds 2 (None when there is none)
    """
    directions = np.arange(lo, hi, dtype=np.int64)
    sizes = kernel_sizes(f, directions)
    over = np.nonzero(sizes > 2)[0]
    return {
        'lo': lo,
        'hi': hi,
        'max_kernel': int(sizes.max()) if len(sizes) else 0,
        'witness': int(directions[over[0]]) if len(over) else None,
    }


def run_serial(f, chunks):
    """Run chunks in order in this process, stopping after the first violation"""
    results = []
    for lo, hi in chunks:
        result = kernel_chunk(f, lo, hi)
        results.append(result)
        if result['witness'] is not None:
            break
    return results


def merge_chunks(results):
    """
    Fold chunk results in index order up to the first violating chunk.

    The outcome does not depend on how many chunks past the violation
    were also computed.
    """
    max_kernel = 0
    for result in sorted(results, key=lambda r: r['lo']):
        max_kernel = max(max_kernel, result['max_kernel'])
        if result['witness'] is not None:
            return False, max_kernel, result['witness']
    return True, max_kernel, None


def scan_kernels(f, runner=None, chunk_size=None, max_units=None):
    """(is_apn, max_kernel, packed witness or None) over all nonzero directions"""
    check_budget('kernel APN check', f.ctx.m, 'MAX_KERNEL_M')
    check_work('kernel APN check', (1 << (3 * f.ctx.m)) - 1, max_units)
    runner = runner or run_serial
    return merge_chunks(runner(f, direction_chunks(f.ctx.m, chunk_size)))


def is_apn_kernel(f, runner=None, chunk_size=None):
    is_apn, max_kernel, _ = scan_kernels(f, runner, chunk_size)
    return is_apn, max_kernel


# ============ APN BY SOLUTION COUNTS ============

def _difference_rows(values, directions):
    """Rows f(x + d) + f(x) for each direction d, x over all inputs"""
    inputs = np.arange(len(values), dtype=np.int64)
    return values[inputs[None, :] ^ directions[:, None]] ^ values[None, :]


def _row_max_counts(rows, size):
    """Largest multiplicity in each row"""
    offsets = np.arange(len(rows), dtype=np.int64)[:, None] * size
    counts = np.bincount((rows + offsets).ravel(), minlength=len(rows) * size)
    return counts.reshape(len(rows), size).max(axis=1)


def first_exhaustive_violation(f, max_units=None):
    """Smallest direction with some f(x + d) + f(x) = b hit more than twice"""
    check_budget('exhaustive APN check', f.ctx.m, 'MAX_EXHAUSTIVE_M')
    total = 1 << (3 * f.ctx.m)
    check_work('exhaustive APN check', (total - 1) * total, max_units)
    values = f.eval_packed(np.arange(total, dtype=np.int64))
    for lo in range(1, total, EXHAUSTIVE_BATCH):
        directions = np.arange(lo, min(lo + EXHAUSTIVE_BATCH, total), dtype=np.int64)
        worst = _row_max_counts(_difference_rows(values, directions), total)
        over = np.nonzero(worst > 2)[0]
        if len(over):
            return int(directions[over[0]])
    return None


def is_apn_exhaustive(f):
    return first_exhaustive_violation(f) is None


def solution_counts_are_affine(f):
    """Each equation f(x + d) + f(x) + f(d) = b has 0 or |ker D_d f| solutions"""
    check_budget('solution count check', f.ctx.m, 'MAX_EXHAUSTIVE_M')
    total = 1 << (3 * f.ctx.m)
    values = f.eval_packed(np.arange(total, dtype=np.int64))
    directions = np.arange(1, total, dtype=np.int64)
    sizes = kernel_sizes(f, directions)
    for lo in range(0, len(directions), EXHAUSTIVE_BATCH):
        batch = directions[lo:lo + EXHAUSTIVE_BATCH]
        rows = _difference_rows(values, batch) ^ values[batch][:, None]
        for d, row, size in zip(batch, rows, sizes[lo:lo + EXHAUSTIVE_BATCH]):
            counts = np.bincount(row, minlength=total)
            hit = counts[counts > 0]
            if not (hit == size).all():
                logger.warning(f'Non-affine solution counts for {f!r} at direction {hex(int(d))}')
                return False
    return True


# ============ DEFAULT SELECTION ============

def criterion_good(f):
    """Root-freeness of the family's univariate polynomial"""
    variant = PolyVariant.PPRIME if f.family == 'H' else PolyVariant.Q
    return roots_in_field(f.ctx, variant, f.a).count == 0


def resolve_method(m, method='auto'):
    if method != 'auto':
        return method
    if m <= budget('MAX_EXHAUSTIVE_M'):
        return 'exhaustive'
    if m <= budget('MAX_KERNEL_M'):
        return 'kernel'
    return 'criterion'


def status(f, method='auto', runner=None, chunk_size=None, max_units=None):
    """
    Permutation and APN status of f with the requested (or default) method.

    The permutation side is measured by the image scan whenever m is within
    the image budget and falls back to the criterion otherwise; `image`
    as APN method reuses that scan and reads APN off the permutation
    verdict.

    max_kernel is the largest differential kernel over all directions for
    `exhaustive`, the largest up to the first violating chunk for `kernel`,
    the predicted 2 or 2^m for `criterion`, and None for a non-APN `image`
    verdict, which measures no kernels. max_units caps the evaluations of
    each sweep (APNTRI_SCAN_BUDGET when None).
    """
    started = time.perf_counter()
    m = f.ctx.m
    method = resolve_method(m, method)
    witness = None

    if method == 'criterion':
        perm_method = 'criterion'
    else:
        perm_method = 'image' if m <= budget('MAX_IMAGE_M') else 'criterion'
    perm = is_permutation(f, chunk_size, max_units) if perm_method == 'image' else criterion_good(f)

    if method == 'exhaustive':
        direction = first_exhaustive_violation(f, max_units)
        apn = direction is None
        witness = direction
        if apn:
            max_kernel = 2
        else:
            directions = np.arange(1, 1 << (3 * m), dtype=np.int64)
            max_kernel = int(kernel_sizes(f, directions).max())
    elif method == 'kernel':
        apn, max_kernel, witness = scan_kernels(f, runner, chunk_size, max_units)
    elif method == 'image':
        apn = perm
        max_kernel = 2 if apn else None
    else:
        apn = criterion_good(f)
        max_kernel = 2 if apn else f.ctx.size

    elapsed_ms = (time.perf_counter() - started) * 1000
    logger.debug(f'{f!r}: perm={perm} apn={apn} via {method} in {elapsed_ms:.1f} ms')
    return StatusReport(
        a=f.a,
        family=f.family,
        is_permutation=perm,
        is_apn=apn,
        method=method,
        max_kernel=max_kernel,
        elapsed_ms=elapsed_ms,
        perm_method=perm_method,
        witness=tuple(f.unpack(witness)) if witness is not None else None,
    )
