"""Independent brute-force oracles used by the test suite."""

from __future__ import annotations

from math import gcd, isqrt

import numpy as np


def pell_brute_solutions(r: int, m_abs_max: int, x_bound: int) -> dict[int, set[tuple[int, int]]]:
    """Every (X, Y) with 0 <= Y, |X| <= x_bound and X^2 - rY^2 = m, 0 < |m| <= m_abs_max.

    Vectorised over Y: for each Y the admissible X lie in
    ``[sqrt(rY^2 - M), sqrt(rY^2 + M)]``, a window of a few integers.
    """
    out: dict[int, set[tuple[int, int]]] = {}
    y_max = isqrt((x_bound * x_bound + m_abs_max) // r)
    ys = np.arange(0, y_max + 1, dtype=np.int64)
    ry2 = r * ys * ys
    lo = np.ceil(np.sqrt(np.maximum(ry2 - m_abs_max, 0).astype(np.float64))).astype(np.int64) - 1
    hi = np.floor(np.sqrt((ry2 + m_abs_max).astype(np.float64))).astype(np.int64) + 1
    lo = np.maximum(lo, 0)
    width = int((hi - lo).max()) + 1
    for d in range(width):
        xs = lo + d
        ok = (xs <= hi) & (xs <= x_bound)
        m = xs * xs - ry2
        ok &= (m != 0) & (np.abs(m) <= m_abs_max)
        for x, y, mm in zip(xs[ok].tolist(), ys[ok].tolist(), m[ok].tolist()):
            bucket = out.setdefault(mm, set())
            bucket.add((x, y))
            bucket.add((-x, y))
    return out


def same_class(a: tuple[int, int], b: tuple[int, int], r: int, m: int) -> bool:
    # (X + Y sqrt r)/(X' + Y' sqrt r) must be an integral unit
    x1, y1 = a
    x2, y2 = b
    return (x1 * x2 - r * y1 * y2) % m == 0 and (x1 * y2 - x2 * y1) % m == 0


def partition_classes(sols: set[tuple[int, int]], r: int, m: int) -> list[list[tuple[int, int]]]:
    classes: list[list[tuple[int, int]]] = []
    for s in sorted(sols, key=lambda p: (p[1], abs(p[0]), p[0] < 0)):
        for cls in classes:
            if same_class(cls[0], s, r, m):
                cls.append(s)
                break
        else:
            classes.append([s])
    return classes


def pell_brute_small_y(r: int, m: int, y_max: int) -> list[tuple[int, int]]:
    """Solutions with 0 <= Y <= y_max by direct search, both signs of X."""
    out = []
    for y in range(y_max + 1):
        v = m + r * y * y
        if v < 0:
            continue
        x = isqrt(v)
        if x * x == v:
            out.append((x, y))
            if x:
                out.append((-x, y))
    return out


def fm_bruteforce(t: int) -> int:
    m = 2 * t
    units = [a for a in range(m) if gcd(a, m) == 1 and (a * a - 1) % (4 * t) == 0]
    return len({min(a, m - a) for a in units})
