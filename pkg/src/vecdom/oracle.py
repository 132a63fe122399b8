"""Exhaustive reference solver used as ground truth at desk scale."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .graph import Instance, ProblemKind, check_domination

DEFAULT_CAP = 20


class OracleCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    optimum: Optional[int]
    witness: Optional[frozenset[int]]
    count: Optional[int] = None

    @property
    def feasible(self) -> bool:
        return self.optimum is not None


def brute_min(instance: Instance, cap: int = DEFAULT_CAP, count: bool = False) -> OracleResult:
    """Smallest feasible set by enumerating subsets in order of size.

    With ``count=True`` the number of optimal sets is reported too.
    """
    g = instance.graph
    if g.n > cap:
        raise OracleCapExceeded(f"{g.n} vertices exceeds the oracle cap {cap}")
    forced: list[int] = []
    if instance.kind is ProblemKind.VECTOR:
        # a vertex that cannot be dominated from outside must be chosen
        forced = [v for v in range(g.n) if instance.demands[v] > g.degree(v)]
    free = [v for v in range(g.n) if v not in set(forced)]
    for size in range(len(free) + 1):
        first = None
        hits = 0
        for extra in combinations(free, size):
            S = forced + list(extra)
            if check_domination(instance, S):
                if first is None:
                    first = frozenset(S)
                    if not count:
                        break
                hits += 1
        if first is not None:
            return OracleResult(len(forced) + size, first, hits if count else None)
    return OracleResult(None, None, 0 if count else None)


def brute_decide(instance: Instance, k: int, cap: int = DEFAULT_CAP) -> bool:
    res = brute_min(instance, cap)
    return res.optimum is not None and res.optimum <= k


