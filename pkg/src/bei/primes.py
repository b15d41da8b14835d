"""Cut sets and the combinatorial minimal primes of a binomial edge ideal.

Every vertex subset S is tested verbatim: S is kept when it is empty or when
removing any single element of S strictly drops the component count of the
restriction.  Heights come from the closed formula n - c(S) + |S|.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, _component_masks, is_connected, mask_to_labels


@dataclass(frozen=True)
class CutSet:
    mask: int
    components: tuple[tuple[int, ...], ...]
    c: int

    def labels(self) -> tuple[int, ...]:
        return mask_to_labels(self.mask)


@dataclass(frozen=True)
class MinimalPrime:
    cutset: CutSet
    height: int

    def to_json(self) -> dict:
        return {
            "S": list(self.cutset.labels()),
            "c": self.cutset.c,
            "height": self.height,
        }


@dataclass(frozen=True)
class DecompositionSummary:
    primes: tuple[MinimalPrime, ...]
    height_ideal: int
    dim_quotient: int
    unmixed: bool

    def to_json(self) -> dict:
        return {
            "primes": [p.to_json() for p in self.primes],
            "height": self.height_ideal,
            "dim": self.dim_quotient,
            "unmixed": self.unmixed,
        }


def _component_count(adj, full: int, removed: int) -> int:
    return len(_component_masks(adj, full & ~removed))


def cut_sets(G: Graph) -> tuple[CutSet, ...]:
    """All subsets indexing minimal primes, sorted by (size, bitmask)."""
    full = G.full_mask()
    adj = G.adj
    found = []
    for s in range(1 << G.n):
        if s:
            c_s = _component_count(adj, full, s)
            ok = True
            m = s
            while m:
                b = m & -m
                m ^= b
                if _component_count(adj, full, s & ~b) >= c_s:
                    ok = False
                    break
            if not ok:
                continue
        comps = _component_masks(adj, full & ~s)
        found.append(
            CutSet(s, tuple(mask_to_labels(cm) for cm in comps), len(comps))
        )
    found.sort(key=lambda cs: (cs.mask.bit_count(), cs.mask))
    return tuple(found)


def minimal_primes(G: Graph) -> DecompositionSummary:
    primes = tuple(
        MinimalPrime(cs, G.n - cs.c + cs.mask.bit_count()) for cs in cut_sets(G)
    )
    heights = {p.height for p in primes}
    height_ideal = min(heights)
    return DecompositionSummary(
        primes=primes,
        height_ideal=height_ideal,
        dim_quotient=2 * G.n - height_ideal,
        unmixed=len(heights) == 1,
    )


def is_unmixed(G: Graph) -> bool:
    """All minimal primes share a height.

    For connected graphs the equivalent cut-set counting form c(S) = |S| + 1
    is evaluated as well; a mismatch would be a bug, not a property of the
    input.
    """
    summary = minimal_primes(G)
    if is_connected(G):
        by_counting = all(
            p.cutset.c == p.cutset.mask.bit_count() + 1 for p in summary.primes
        )
        if by_counting != summary.unmixed:
            raise AssertionError("height route and counting route disagree")
    return summary.unmixed
