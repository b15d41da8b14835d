"""Shape recognition and the licci verdict through independent routes.

The shape route is purely combinatorial (path, or triangle with pendant
paths).  The algebra route asks for Cohen-Macaulayness plus regularity in
the top window; for chordal graphs a third route needs only unmixedness.
When more than one route applies they are all computed and compared; a
disagreement raises instead of picking a winner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cliques import is_chordal
from .degeneration import InvariantRecord, invariants
from .errors import RouteDisagreementError
from .graphs import (
    Graph,
    connected_components,
    induced_on,
    is_bipartite,
    is_connected,
)

PATH = "path"
TRIANGLE_WITH_PATHS = "triangle_with_paths"
OTHER = "other"


@dataclass(frozen=True)
class Shape:
    kind: str
    attached: Optional[tuple[int, int, int]] = None  # pendant path lengths, sorted desc

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.attached is not None:
            out["r"], out["s"], out["t"] = self.attached
        return out

    def __str__(self) -> str:
        if self.attached is not None:
            return f"{self.kind}{self.attached}"
        return self.kind


@dataclass(frozen=True)
class LicciVerdict:
    licci: bool
    route: str  # "shape" | "algebra" | "chordal"
    witness: Optional[InvariantRecord]
    shape: Optional[Shape]
    component_shapes: tuple[Shape, ...] = ()
    isolated_vertices: tuple[int, ...] = ()


def classify_shape(G: Graph) -> Shape:
    """Path, triangle-with-pendant-paths (with sorted lengths), or other."""
    if not is_connected(G):
        raise ValueError("shape classification is for connected graphs")
    m = G.edge_count()
    degrees = [G.degree(v) for v in range(1, G.n + 1)]
    if m == G.n - 1 and max(degrees, default=0) <= 2:
        return Shape(PATH)
    if m != G.n:
        return Shape(OTHER)
    # exactly one cycle; strip leaves down to the core
    alive = G.full_mask()
    deg = degrees[:]
    changed = True
    while changed:
        changed = False
        for v in range(G.n):
            if alive >> v & 1 and deg[v] == 1:
                alive &= ~(1 << v)
                mm = G.adj[v] & alive
                while mm:
                    b = mm & -mm
                    mm ^= b
                    deg[b.bit_length() - 1] -= 1
                deg[v] = 0
                changed = True
    core = [v + 1 for v in range(G.n) if alive >> v & 1]
    if len(core) != 3:
        return Shape(OTHER)
    if not all(G.has_edge(a, b) for a in core for b in core if a < b):
        return Shape(OTHER)
    if any(G.degree(v) > 3 for v in core):
        return Shape(OTHER)
    if any(G.degree(v) > 2 for v in range(1, G.n + 1) if v not in core):
        return Shape(OTHER)
    lengths = []
    for v in core:
        hang = [u for u in G.neighbors(v) if u not in core]
        if not hang:
            lengths.append(0)
            continue
        # follow the pendant path
        count = 0
        prev, cur = v, hang[0]
        while True:
            count += 1
            nxt = [u for u in G.neighbors(cur) if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
        lengths.append(count)
    return Shape(TRIANGLE_WITH_PATHS, tuple(sorted(lengths, reverse=True)))


def licci_by_shape(G: Graph) -> LicciVerdict:
    """Combinatorial verdict: every component a path, at most one triangle-with-paths."""
    if G.edge_count() == 0:
        raise ValueError("edgeless graph has no proper ideal to classify")
    comps = connected_components(G)
    shapes = tuple(classify_shape(induced_on(G, c).graph) for c in comps)
    isolated = tuple(c[0] for c in comps if len(c) == 1)
    if len(comps) == 1:
        licci = shapes[0].kind in (PATH, TRIANGLE_WITH_PATHS)
        return LicciVerdict(licci, "shape", None, shapes[0], shapes, isolated)
    kinds = [s.kind for s in shapes]
    licci = all(k == PATH for k in kinds) or (
        kinds.count(TRIANGLE_WITH_PATHS) == 1
        and all(k == PATH for k in kinds if k != TRIANGLE_WITH_PATHS)
    )
    return LicciVerdict(licci, "shape", None, None, shapes, isolated)


def licci_by_algebra(G: Graph, best_effort: bool = False) -> LicciVerdict:
    """Cohen-Macaulay plus regularity at least n-2 (n-c-1 with c components)."""
    if G.edge_count() == 0:
        raise ValueError("edgeless graph has no proper ideal to classify")
    rec = invariants(G, best_effort)
    c = len(connected_components(G))
    threshold = G.n - 2 if c == 1 else G.n - c - 1
    licci = rec.cm and rec.reg >= threshold
    return LicciVerdict(licci, "algebra", rec, None)


def chordal_licci(G: Graph, best_effort: bool = False) -> LicciVerdict:
    """For connected chordal graphs unmixedness replaces Cohen-Macaulayness."""
    if not is_connected(G):
        raise ValueError("chordal route needs a connected graph")
    chordal, _ = is_chordal(G)
    if not chordal:
        raise ValueError("chordal route needs a chordal graph")
    if G.edge_count() == 0:
        raise ValueError("edgeless graph has no proper ideal to classify")
    rec = invariants(G, best_effort)
    licci = rec.unmixed and rec.reg >= G.n - 2
    return LicciVerdict(licci, "chordal", rec, None)


def hu_bound_holds(G: Graph, best_effort: bool = False) -> bool:
    """reg >= (height - 1)(indeg - 1); a necessary condition for licci when CM."""
    if G.edge_count() == 0:
        raise ValueError("edgeless graph has no bound to evaluate")
    rec = invariants(G, best_effort)
    return rec.reg >= (rec.height - 1) * (rec.indeg - 1)


def bipartite_corollary(G: Graph) -> bool:
    """Bipartite connected graphs are licci exactly when they are paths."""
    if not is_connected(G):
        raise ValueError("needs a connected graph")
    if not is_bipartite(G):
        raise ValueError("needs a bipartite graph")
    verdict = licci_by_shape(G)
    if verdict.licci != (verdict.shape.kind == PATH):
        raise RouteDisagreementError(
            "bipartite verdict differs from the path test"
        )
    return verdict.licci


@dataclass(frozen=True)
class CombinedVerdict:
    licci: bool
    shape: Optional[Shape]
    component_shapes: tuple[Shape, ...]
    isolated_vertices: tuple[int, ...]
    witness: InvariantRecord
    routes: tuple[str, ...]
    routes_agree: bool

    def to_json(self) -> dict:
        rec = self.witness
        return {
            "licci": self.licci,
            "shape": self.shape.to_json() if self.shape else None,
            "component_shapes": [s.to_json() for s in self.component_shapes],
            "reg": rec.reg,
            "depth": rec.depth,
            "dim": rec.dim,
            "cm": rec.cm,
            "unmixed": rec.unmixed,
            "routes_agree": self.routes_agree,
        }


def licci_verdict(G: Graph, best_effort: bool = False) -> CombinedVerdict:
    """Run every applicable route; raise if they do not agree."""
    by_shape = licci_by_shape(G)
    by_algebra = licci_by_algebra(G, best_effort)
    routes = ["shape", "algebra"]
    verdicts = [by_shape.licci, by_algebra.licci]
    if is_connected(G) and is_chordal(G)[0]:
        routes.append("chordal")
        verdicts.append(chordal_licci(G, best_effort).licci)
    if len(set(verdicts)) != 1:
        raise RouteDisagreementError(
            f"licci routes disagree on {G}: {dict(zip(routes, verdicts))}"
        )
    return CombinedVerdict(
        licci=verdicts[0],
        shape=by_shape.shape,
        component_shapes=by_shape.component_shapes,
        isolated_vertices=by_shape.isolated_vertices,
        witness=by_algebra.witness,
        routes=tuple(routes),
        routes_agree=True,
    )
