import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bei.cliques import SimplicialComplex, maximal_cliques
from bei.degeneration import (
    admissible_paths,
    betti_table,
    colon_generators,
    initial_ideal,
    invariants,
    monomial_ideal,
    reduced_homology,
    stanley_reisner,
    x_slot,
    y_slot,
)
from bei.errors import TierExceededError
from bei.graphs import (
    build_graph,
    connected_components,
    enumerate_connected,
    induced_on,
    is_decomposable,
)

P3 = build_graph(3, [(1, 2), (2, 3)])
K3 = build_graph(3, [(1, 2), (2, 3), (1, 3)])
STAR = build_graph(4, [(1, 2), (1, 3), (1, 4)])


def mask(n, xs=(), ys=()):
    m = 0
    for v in xs:
        m |= x_slot(n, v)
    for v in ys:
        m |= y_slot(n, v)
    return m


def test_admissible_paths_examples():
    # inner vertex inside the label interval disqualifies the long path
    assert {p.lead for p in admissible_paths(P3)} == {
        mask(3, [1], [2]),
        mask(3, [2], [3]),
    }
    # path 2-1-3: the route through 1 < 2 is admissible with a y-slot factor
    g = build_graph(3, [(1, 2), (1, 3)])
    leads = {p.lead for p in admissible_paths(g)}
    assert mask(3, [2], [1, 3]) in leads
    assert leads == {mask(3, [1], [2]), mask(3, [1], [3]), mask(3, [2], [1, 3])}
    assert {p.lead for p in admissible_paths(K3)} == {
        mask(3, [1], [2]),
        mask(3, [1], [3]),
        mask(3, [2], [3]),
    }


def test_admissible_path_u_factor():
    g = build_graph(3, [(1, 2), (1, 3)])
    long = [p for p in admissible_paths(g) if p.path.inner]
    assert len(long) == 1
    assert long[0].path.vertices == (2, 1, 3)
    assert long[0].u_mask == mask(3, ys=[1])


def test_initial_ideal_examples():
    assert set(initial_ideal(P3).min_gens) == {mask(3, [1], [2]), mask(3, [2], [3])}
    assert set(initial_ideal(K3).min_gens) == {
        mask(3, [1], [2]),
        mask(3, [1], [3]),
        mask(3, [2], [3]),
    }
    assert initial_ideal(build_graph(3, [])).is_zero()


def test_colon_generators_examples():
    got = colon_generators(K3, (1, 3))
    assert set(got.min_gens) == {mask(3, [2]), mask(3, ys=[2])}
    # simplicial vertex of degree t: variables for the other t-1 neighbors
    g = build_graph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    got = colon_generators(g, (1, 4))
    assert set(got.min_gens) == {
        mask(4, [2]),
        mask(4, ys=[2]),
        mask(4, [3]),
        mask(4, ys=[3]),
    }
    p4 = build_graph(4, [(1, 2), (2, 3), (3, 4)])
    got = colon_generators(p4, (1, 4))
    assert set(got.min_gens) == {
        mask(4, [2, 3]),
        mask(4, [3], [2]),
        mask(4, ys=[2, 3]),
    }
    # no inner path at all: the zero ideal
    assert colon_generators(P3, (1, 2)).is_zero()


def test_monomial_ideal_minimalizes():
    I = monomial_ideal(4, [0b0011, 0b0111, 0b0011, 0b1100])
    assert I.min_gens == (0b0011, 0b1100)
    with pytest.raises(ValueError):
        monomial_ideal(4, [0])


def test_stanley_reisner_examples():
    I = monomial_ideal(4, [mask(2, [1], [2])])  # x1*y2 on slots x1,x2,y1,y2
    sr = stanley_reisner(I)
    assert sr.facet_labels() == ((1, 2, 3), (2, 3, 4))
    zero = monomial_ideal(4, [])
    assert stanley_reisner(zero).facets == (0b1111,)
    I = monomial_ideal(4, [mask(2, [1]), mask(2, ys=[1])])  # (x1, y1)
    assert stanley_reisner(I).facet_labels() == ((2, 4),)


def test_reduced_homology_examples():
    assert reduced_homology(SimplicialComplex(2, (0b01, 0b10))) == {-1: 0, 0: 1}
    square = SimplicialComplex(4, (0b0011, 0b0110, 0b1100, 0b1001))
    assert reduced_homology(square) == {-1: 0, 0: 0, 1: 1}
    hollow = SimplicialComplex(3, (0b011, 0b101, 0b110))
    assert reduced_homology(hollow) == {-1: 0, 0: 0, 1: 1}
    filled = SimplicialComplex(3, (0b111,))
    assert reduced_homology(filled) == {-1: 0, 0: 0, 1: 0, 2: 0}
    assert reduced_homology(SimplicialComplex(1, (0,))) == {-1: 1}
    with pytest.raises(TierExceededError):
        reduced_homology(SimplicialComplex(17, (1,)))


def test_reduced_homology_euler_characteristic():
    rng = random.Random(3)
    for _ in range(25):
        nv = rng.randint(2, 6)
        facets = [rng.getrandbits(nv) | 1 for _ in range(rng.randint(1, 4))]
        keep = [f for f in facets if not any(f != g and f & ~g == 0 for g in facets)]
        comp = SimplicialComplex(nv, tuple(dict.fromkeys(keep)))
        ranks = reduced_homology(comp)
        faces = set()
        for f in comp.facets:
            sub = f
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        euler = sum((-1) ** (f.bit_count() - 1) for f in faces)
        assert euler == sum((-1) ** d * r for d, r in ranks.items())


# --- independent Hochster oracle: literal subset scan, dense Fraction ranks


def dense_rank(rows):
    rows = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    piv = 0
    for c in range(cols):
        for r in range(rank, len(rows)):
            if rows[r][c]:
                rows[rank], rows[r] = rows[r], rows[rank]
                lead = rows[rank][c]
                for rr in range(len(rows)):
                    if rr != rank and rows[rr][c]:
                        f = rows[rr][c] / lead
                        rows[rr] = [a - f * b for a, b in zip(rows[rr], rows[rank])]
                rank += 1
                break
    return rank


def naive_betti(gens, n_vars):
    """Textbook scan: every subset, explicit faces, dense boundary ranks."""
    entries = {}
    for w in range(1 << n_vars):
        verts = [v for v in range(n_vars) if w >> v & 1]
        faces = []
        for r in range(len(verts) + 1):
            for c in combinations(verts, r):
                fm = sum(1 << v for v in c)
                if not any(g & ~fm == 0 for g in gens):
                    faces.append(fm)
        by_size = {}
        for f in faces:
            by_size.setdefault(f.bit_count(), []).append(f)
        max_size = max(by_size)
        rank_bd = {}
        for size in range(1, max_size + 1):
            lower = {f: i for i, f in enumerate(by_size.get(size - 1, []))}
            upper = by_size.get(size, [])
            rows = []
            for f in upper:
                row = [0] * len(lower)
                sign = 1
                m = f
                while m:
                    b = m & -m
                    m ^= b
                    row[lower[f ^ b]] = sign
                    sign = -sign
                rows.append(row)
            rank_bd[size - 1] = dense_rank(rows)
        for d in range(-1, max_size):
            fd = len(by_size.get(d + 1, []))
            h = fd - rank_bd.get(d, 0) - rank_bd.get(d + 1, 0)
            if h:
                size = w.bit_count()
                key = (size - d - 1, size)
                entries[key] = entries.get(key, 0) + h
    return tuple(sorted((i, j, r) for (i, j), r in entries.items()))


def test_betti_table_p3_frozen():
    bt = betti_table(initial_ideal(P3))
    assert bt.entries == ((0, 0, 1), (1, 2, 2), (2, 4, 1))
    assert bt.reg == 2 and bt.pd == 2


def test_betti_table_zero_ideal():
    bt = betti_table(monomial_ideal(6, []))
    assert bt.entries == ((0, 0, 1),)
    assert bt.reg == 0 and bt.pd == 0


def test_betti_table_against_naive_scan_small_graphs():
    for n in (2, 3):
        for g in enumerate_connected(n):
            I = initial_ideal(g)
            assert betti_table(I).entries == naive_betti(I.min_gens, I.n_vars)
    I = initial_ideal(STAR)
    assert betti_table(I).entries == naive_betti(I.min_gens, I.n_vars)


@given(st.data())
@settings(max_examples=25, deadline=None)
def test_betti_table_against_naive_scan_random_ideals(data):
    nv = data.draw(st.integers(min_value=2, max_value=6))
    count = data.draw(st.integers(min_value=1, max_value=4))
    gens = data.draw(
        st.lists(
            st.integers(min_value=1, max_value=(1 << nv) - 1),
            min_size=count,
            max_size=count,
        )
    )
    I = monomial_ideal(nv, gens)
    assert betti_table(I).entries == naive_betti(I.min_gens, I.n_vars)


def test_first_column_is_generator_degrees():
    for g in [P3, K3, STAR, build_graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])]:
        I = initial_ideal(g)
        bt = betti_table(I)
        degrees = {}
        for m in I.min_gens:
            degrees[m.bit_count()] = degrees.get(m.bit_count(), 0) + 1
        got = {j: r for i, j, r in bt.entries if i == 1}
        assert got == degrees


def test_invariants_pinned_families():
    for n in range(2, 8):
        pn = build_graph(n, [(i, i + 1) for i in range(1, n)])
        rec = invariants(pn)
        assert rec.reg == n - 1 and rec.cm
        assert rec.depth == rec.dim == n + 1
        kn = build_graph(n, [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)])
        rec = invariants(kn)
        assert rec.reg == 1 and rec.cm and rec.dim == n + 1
    rec = invariants(STAR)
    assert rec.reg == 2 and not rec.unmixed and not rec.cm
    assert rec.indeg == 2
    assert invariants(build_graph(2, [])).indeg is None


def test_invariants_disconnected_additive():
    g = build_graph(5, [(1, 2), (2, 3), (4, 5)])  # P3 + P2
    rec = invariants(g)
    assert rec.reg == 2 + 1
    assert rec.depth == 2 * 5 - (2 + 1)
    assert rec.dim == 4 + 3
    assert rec.cm


def test_invariants_label_invariance():
    rng = random.Random(11)
    for n in (4, 5):
        for g in rng.sample(enumerate_connected(n), 6):
            base = invariants(g)
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            relabeled = build_graph(
                n, [(perm[a - 1], perm[b - 1]) for a, b in g.edges()]
            )
            other = invariants(relabeled)
            assert (base.reg, base.pd, base.dim, base.unmixed, base.cm) == (
                other.reg,
                other.pd,
                other.dim,
                other.unmixed,
                other.cm,
            )


def test_regularity_additivity_on_decomposable():
    for n in range(2, 7):
        for g in enumerate_connected(n):
            split = is_decomposable(g)
            if split is None:
                continue
            _, p1, p2 = split
            assert (
                invariants(g).reg
                == invariants(p1.graph).reg + invariants(p2.graph).reg
            )


def test_clique_bound_small():
    for n in range(2, 6):
        for g in enumerate_connected(n):
            rec = invariants(g)
            cl = maximal_cliques(g)
            assert rec.reg <= g.n - cl.dim
            for w in cl.maximal_cliques:
                assert rec.reg <= g.n - len(w) + 1


def test_disconnected_clique_bound_small():
    rng = random.Random(23)
    for _ in range(15):
        n = rng.randint(2, 6)
        pairs = list(combinations(range(1, n + 1), 2))
        g = build_graph(n, rng.sample(pairs, rng.randint(0, len(pairs))))
        if not g.edge_count():
            continue
        rec = invariants(g)
        total_dim = sum(
            maximal_cliques(induced_on(g, c).graph).dim
            for c in connected_components(g)
        )
        assert rec.reg <= g.n - total_dim


def test_quotient_dimension_matches_stanley_reisner():
    # cut-set route and initial-ideal route compute the same dimension
    from bei.primes import minimal_primes

    for n in range(2, 6):
        for g in enumerate_connected(n):
            sr = stanley_reisner(initial_ideal(g))
            assert minimal_primes(g).dim_quotient == sr.dim + 1


def test_tier_errors():
    with pytest.raises(TierExceededError):
        betti_table(monomial_ideal(18, [3]))
    k8 = build_graph(8, [(i, j) for i in range(1, 8) for j in range(i + 1, 9)])
    with pytest.raises(TierExceededError):
        invariants(k8)
    assert invariants(k8, best_effort=True).reg == 1
