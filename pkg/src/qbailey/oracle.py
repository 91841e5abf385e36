"""Brute-force ground truth by exhaustive enumeration.

Nothing here reuses the q-binomial machinery: paths and partitions are
listed one by one and their weights are added up, so agreement with the
closed formulas is genuine evidence rather than a shared bug.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .series import BudgetExceeded, QSeries, default_budget


@dataclass(frozen=True)
class LatticePath:
    heights: tuple[int, ...]
    weight: Fraction

    def __post_init__(self):
        h = self.heights
        if any(abs(h[i + 1] - h[i]) != 1 for i in range(len(h) - 1)):
            raise ValueError("consecutive heights must differ by one")


def _local_weight(pp_minus_p: int, pp: int, a: int, b: int, c: int) -> Fraction:
    """The weight attached to the middle vertex of the triple (a, b, c)."""
    if a == c:
        band = (a * pp_minus_p) // pp
        return Fraction(band) if b == a - 1 else Fraction(-band)
    return Fraction(1, 2)


def count_paths(pp: int, s: int, b: int, L: int) -> int:
    """Number of height sequences from s to b in L unit steps inside 1..p'-1."""
    ways = {s: 1} if 1 <= s <= pp - 1 else {}
    for _ in range(L):
        nxt: dict[int, int] = {}
        for h, n in ways.items():
            for g in (h - 1, h + 1):
                if 1 <= g <= pp - 1:
                    nxt[g] = nxt.get(g, 0) + n
        ways = nxt
    return ways.get(b, 0)


def enumerate_paths(p: int, pp: int, s: int, b: int, c: int, L: int,
                    limit: int | None = None) -> Iterator[LatticePath]:
    """Every path s = x_0, ..., x_L = b, x_{L+1} = c with 1 <= x_i <= p'-1 inside."""
    limit = default_budget() * 50 if limit is None else limit
    if abs(c - b) != 1:
        return
    total = count_paths(pp, s, b, L)
    if total > limit:
        raise BudgetExceeded(f"{total} paths exceed the enumeration limit {limit}")
    count = 0
    heights = [s]

    def rec(i: int):
        nonlocal count
        if i == L:
            if heights[-1] != b:
                return
            full = heights + [c]
            w = sum((k * _local_weight(pp - p, pp, full[k - 1], full[k], full[k + 1])
                     for k in range(1, L + 1)), Fraction(0))
            count += 1
            if count > limit:
                raise BudgetExceeded(f"more than {limit} paths")
            yield LatticePath(tuple(full), w)
            return
        for step in (-1, 1):
            h = heights[-1] + step
            if not 1 <= h <= pp - 1:
                continue
            # the walk must still be able to reach b in the remaining steps
            if abs(h - b) > L - i - 1:
                continue
            heights.append(h)
            yield from rec(i + 1)
            heights.pop()

    if L == 0:
        if s == b:
            yield LatticePath((s, c), Fraction(0))
        return
    yield from rec(0)


def path_generating_fn(p: int, pp: int, s: int, b: int, c: int, L: int) -> QSeries:
    """Sum of q^weight over all restricted paths, on the half-integer grid."""
    if not 1 <= s <= pp - 1 or not 1 <= b <= pp - 1 or not 0 <= c <= pp:
        raise ValueError("heights out of range")
    acc: dict[Fraction, int] = {}
    for path in enumerate_paths(p, pp, s, b, c, L):
        acc[path.weight] = acc.get(path.weight, 0) + 1
    return QSeries(acc, denom=2)


def fb_r_value(p: int, pp: int, b: int, c: int) -> int:
    """The label r attached to the boundary pair (b, c)."""
    twice = b + c - 1
    if twice % 2:
        raise ValueError("b + c must be odd")
    return twice // 2 - (c * (pp - p)) // pp


def fb_r_value_alt(p: int, pp: int, b: int, c: int) -> int:
    """The same label computed from the complementary floor."""
    return (b - c + 1) // 2 + (c * p) // pp


def fb_prefactor(s: int, b: int, c: int, r: int, L: int) -> Fraction:
    """Exponent of the q-power relating path sums and configuration sums."""
    return Fraction(L * (c - b) * (c + b - 1 - 2 * r) + (s - b) * (s + b - 1 - 2 * r), 4)


# ----------------------------------------------------------------------
# Partitions with hook-difference conditions


def _partitions_in_box(parts: int, largest: int) -> Iterator[tuple[int, ...]]:
    """Partitions with at most `parts` parts, none larger than `largest`."""
    if parts <= 0 or largest <= 0:
        yield ()
        return
    current: list[int] = []

    def rec(cap: int):
        yield tuple(current)
        if len(current) == parts:
            return
        for v in range(1, cap + 1):
            current.append(v)
            yield from rec(v)
            current.pop()

    yield from rec(largest)


def conjugate(lam: tuple[int, ...]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def diagonal_hook_differences(lam: tuple[int, ...], d: int) -> list[int]:
    """lambda_i - lambda'_j over the nodes (i, i-d) of the Ferrers diagram."""
    conj = conjugate(lam)
    out = []
    for i in range(1, len(lam) + 1):
        j = i - d
        if 1 <= j <= lam[i - 1]:
            out.append(lam[i - 1] - conj[j - 1])
    return out


def hook_partition_gen_fn(p: int, pp: int, r: int, s: int, b: int, L: int) -> QSeries:
    """Generating function of box-constrained partitions with two diagonal hook windows."""
    if (L + s + b) % 2:
        raise ValueError("L+s+b even is required")
    if not 0 <= r <= p:
        raise ValueError("r outside 0..p")
    if not (0 <= b - r <= pp - p):
        raise ValueError("need 0 <= b-r <= p'-p")
    max_parts = (L + s - b) // 2
    max_part = (L - s + b) // 2
    acc: dict[int, int] = {}
    if max_parts < 0 or max_part < 0:
        return QSeries.zero()
    low = r - s + 1
    high = pp - p + r - s - 1
    for lam in _partitions_in_box(max_parts, max_part):
        if r == 0 and (lam[0] if lam else 0) <= (L - s - b) // 2:
            continue
        if r == p and len(lam) <= (L + s + b) // 2 - pp:
            continue
        if any(h < low for h in diagonal_hook_differences(lam, 1 - r)):
            continue
        if any(h > high for h in diagonal_hook_differences(lam, p - r - 1)):
            continue
        n = sum(lam)
        acc[n] = acc.get(n, 0) + 1
    return QSeries(acc, denom=1)


# ----------------------------------------------------------------------
# Partitions with restricted parts


@dataclass(frozen=True)
class PartSpec:
    """Which partitions to count.

    `modulus` and `residues` restrict the allowed parts to those congruent
    to one of the residues; `distinct` forbids repeated parts.
    """

    modulus: int = 1
    residues: tuple[int, ...] = (0,)
    distinct: bool = False

    def allows(self, part: int) -> bool:
        return part % self.modulus in self.residues


def _count_partitions(n: int, allowed: list[int], distinct: bool) -> int:
    count = 0

    def rec(remaining: int, idx: int):
        nonlocal count
        if remaining == 0:
            count += 1
            return
        for k in range(idx, len(allowed)):
            part = allowed[k]
            if part > remaining:
                break
            rec(remaining - part, k + 1 if distinct else k)

    rec(n, 0)
    return count


def partition_count_products(spec: PartSpec, order: int) -> QSeries:
    """Number of admissible partitions of each n below `order`, as a series."""
    allowed = [k for k in range(1, order) if spec.allows(k)]
    coeffs = [_count_partitions(n, allowed, spec.distinct) for n in range(order)]
    return QSeries.from_dense(coeffs, 0, order)
