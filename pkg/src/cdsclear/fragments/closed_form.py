"""
Closed-form clearing rates of fragment cycles.

k chained g1a' fragments map a start rate ``r`` to
``(f_k - r f_{k-2}) / (f_{k+2} - r f_k)`` with ``f`` the Fibonacci numbers,
so a cycle of them clears where ``r^2 - 3r + 1 = 0``, at ``(3 - sqrt 5) / 2``
whatever k is.
"""
from __future__ import annotations

import logging
from fractions import Fraction

from cdsclear.core.numbers import Number, QuadraticSurd
from cdsclear.exceptions import NotRewritable
from cdsclear.fragments.catalog import Family, Variant
from cdsclear.fragments.cycle import FragmentString
from cdsclear.fragments.moebius import MoebiusTransform
from cdsclear.fragments.rewrite import rewrite_to_canonical, string_transfer

logger = logging.getLogger(__name__)


def fibonacci(n: int) -> int:
    """``f_n`` with ``f_0 = 0``, ``f_1 = 1``, extended to ``f_{-1} = 1``."""
    if n < -1:
        raise ValueError(f"fibonacci index must be at least -1, got {n}")
    if n == -1:
        return 1
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_map(k: int) -> MoebiusTransform:
    """Composed transfer map of ``k >= 1`` chained g1a' fragments."""
    if k < 1:
        raise ValueError(f"need at least one fragment, got {k}")
    return MoebiusTransform(
        Fraction(-fibonacci(k - 2)),
        Fraction(fibonacci(k)),
        Fraction(-fibonacci(k)),
        Fraction(fibonacci(k + 2)),
    )


def fibonacci_rate(i: int, r: Number) -> Number:
    """End rate after ``i`` chained g1a' fragments from start rate ``r``."""
    return fibonacci_map(i)(r)


def solve_cycle_closed_form(cycle: FragmentString) -> QuadraticSurd:
    """Clearing rate of the first start node of a fragment cycle.

    The cycle is rewritten to copies of g1a' and the fixed point of the
    composed transfer map in [0, 1] is returned.

    Raises:
        NotRewritable: If the cycle is open or does not rewrite to g1a'
            copies only.
    """
    if not cycle.closed:
        raise NotRewritable(f"{cycle} is not a cycle")
    canonical = rewrite_to_canonical(cycle)
    if any(f.family is not Family.G1A or f.variant is not Variant.PRIME for f in canonical):
        raise NotRewritable(f"{cycle.name} rewrites to {canonical.name}, not to g1a' copies")

    k = len(canonical)
    transfer = string_transfer(canonical)
    if not transfer.equivalent(fibonacci_map(k)):
        raise NotRewritable(
            f"{cycle.name}: composed transfer {transfer} is not the g1a' map of length {k}"
        )
    points = transfer.fixed_points()
    if len(points) != 1:
        raise NotRewritable(f"{cycle.name}: expected one fixed point in [0, 1], found {len(points)}")
    root = points[0]
    logger.debug("%s -> %d x g1a', rate %s", cycle.name, k, root)
    return root if isinstance(root, QuadraticSurd) else QuadraticSurd(root)
