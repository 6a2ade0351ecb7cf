"""Hitting-set view of vertex deletion for universal formulas.

For ``f = A x1 ... A xr. chi`` a vertex set is a deletion set exactly when it
meets the vertex set of every falsifying r-tuple.  The family of those sets
is kernelised with the sunflower rule and then solved by a bounded search.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .formula import FORALL, Formula, FormulaError
from .graph import Graph
from .modelcheck import models, open_formula


@dataclass(frozen=True)
class HittingFamily:
    """Deduplicated family of sets, sorted by (size, elements).

    An empty member means no set can hit the family.
    """
    universe: frozenset
    sets: tuple
    rank: int = 0  # bound on member size

    @classmethod
    def of(cls, sets: Iterable[Iterable], universe: Iterable | None = None, rank: int | None = None):
        members = {frozenset(s) for s in sets}
        ordered = tuple(sorted(members, key=lambda s: (len(s), sorted(s))))
        uni = frozenset(universe) if universe is not None else frozenset().union(*members)
        if not all(s <= uni for s in members):
            raise ValueError("family member outside the universe")
        if rank is None:
            rank = max((len(s) for s in members), default=0)
        return cls(uni, ordered, rank)

    def __len__(self) -> int:
        return len(self.sets)

    def is_hit_by(self, hitter: Iterable) -> bool:
        h = set(hitter)
        return all(s & h for s in self.sets)


def extract_hitting_family(g: Graph, f: Formula) -> HittingFamily:
    """Vertex sets of all r-tuples falsifying the matrix of a universal sentence."""
    if not f.is_sentence:
        raise FormulaError("hitting family needs a sentence")
    if any(q is not FORALL for q, _ in f.prefix):
        raise FormulaError("hitting family needs a purely universal formula")
    r = len(f.prefix)
    opened = open_formula(f, r)
    found = {frozenset(v) for v in itertools.product(g.vertices, repeat=r)
             if not models(g, opened, v)}
    return HittingFamily.of(found, g.vertices, rank=r)


def sunflower_bound(r: int, k: int) -> int:
    return math.factorial(r) * r * (k + 1) ** r


def find_sunflower(sets: list, petals: int):
    """Constructive sunflower search: ``(core, members)`` or ``None``.

    Guaranteed to succeed when the family has more than ``d! (petals-1)^d``
    distinct sets of size at most ``d``.
    """
    chosen, used = [], set()
    for s in sets:
        if not (s & used):
            chosen.append(s)
            used |= s
            if len(chosen) == petals:
                return frozenset(), chosen
    counts = Counter(x for s in sets for x in s if x in used)
    if not counts:
        return None
    best = max(counts.values())
    if best < petals:
        return None
    x = min(e for e, c in counts.items() if c == best)
    sub = [s - {x} for s in sets if x in s]
    found = find_sunflower(sub, petals)
    if found is None:
        return None
    core, members = found
    return core | {x}, [m | {x} for m in members]


def _drop_supersets(sets: list) -> list:
    sets = sorted(set(sets), key=len)
    kept: list = []
    for s in sets:
        if not any(t <= s for t in kept):
            kept.append(s)
    return kept


def kernelize_hitting_family(fam: HittingFamily, k: int) -> HittingFamily:
    """Sunflower kernel: any ``k + 2`` sets pairwise meeting in the same core
    are replaced by the core, since a hitter of size at most ``k`` must hit it.

    The output has a hitting set of size <= k iff the input does, every
    hitting set of the output hits the input, and the output has at most
    ``r! * r * (k+1)^r`` sets.  An empty core is reported as the family
    ``{{}}`` (no hitting set at all).
    """
    if k < 0:
        raise ValueError("budget must be non-negative")
    if len(fam) <= sunflower_bound(fam.rank, k) and frozenset() not in fam.sets:
        return fam
    petals = k + 2
    sets = _drop_supersets(list(fam.sets))
    while True:
        if frozenset() in sets:
            return HittingFamily.of([frozenset()], fam.universe, fam.rank)
        found = find_sunflower(sorted(sets, key=lambda s: (len(s), sorted(s))), petals)
        if found is None:
            break
        core, members = found
        drop = set(members)
        sets = _drop_supersets([s for s in sets if s not in drop] + [core])
    used = frozenset().union(*sets) if sets else frozenset()
    return HittingFamily.of(sets, used, fam.rank)


@dataclass
class HitStats:
    nodes: int = 0
    max_depth: int = 0
    max_branching: int = 0


def hitting_set(fam: HittingFamily, k: int, stats: HitStats | None = None) -> frozenset | None:
    """Bounded search: branch on the elements of the first set not yet hit."""
    stats = stats if stats is not None else HitStats()
    sets = fam.sets

    def search(chosen: frozenset, depth: int):
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, depth)
        missed = next((s for s in sets if not (s & chosen)), None)
        if missed is None:
            return chosen
        if len(chosen) == k or not missed:
            return None
        stats.max_branching = max(stats.max_branching, len(missed))
        for x in sorted(missed):
            res = search(chosen | {x}, depth + 1)
            if res is not None:
                return res
        return None

    return search(frozenset(), 0)


def minimum_hitting_set_size(fam: HittingFamily) -> int | None:
    """Exhaustive minimum (oracle); ``None`` if the family contains the empty set."""
    if frozenset() in fam.sets:
        return None
    elements = sorted(fam.universe)
    for size in range(len(elements) + 1):
        for cand in itertools.combinations(elements, size):
            if fam.is_hit_by(cand):
                return size
    return None


def hittable(fam: HittingFamily, k: int) -> bool:
    """Exhaustive check for a hitting set of size at most ``k`` (oracle)."""
    if frozenset() in fam.sets:
        return False
    elements = sorted(fam.universe)
    return any(fam.is_hit_by(c) for size in range(min(k, len(elements)) + 1)
               for c in itertools.combinations(elements, size))
