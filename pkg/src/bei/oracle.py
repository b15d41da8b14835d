"""Desk-scale exact symbolic algebra used to certify the combinatorial modules.

Polynomials carry exact rational coefficients; Buchberger runs with the
normal selection strategy and both classical skip criteria under hard
budgets (variable count, pair count, degree) that raise explicit resource
errors instead of running away.  Intersections and colons go through one
auxiliary elimination variable ranked above everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from heapq import heappop, heappush
from typing import Optional

from .degeneration import colon_generators, initial_ideal
from .errors import ResourceBudgetError
from .graphs import Graph, restriction, vertex_stats, ohtani_completion, edge_completion, toggle_edge
from .primes import CutSet, cut_sets, minimal_primes

MAX_EFFECTIVE_VARS = 11
MAX_INPUT_DEGREE = 6  # documented contract is 4; headroom covers internal folds
MAX_RUN_DEGREE = 24
MAX_PAIRS = 60_000
MAX_BASIS = 400

LEX_XY = "lexxy"
DEGREVLEX = "degrevlex"


@dataclass(frozen=True)
class PolyContext:
    """Variable layout [t?] x_1..x_n y_1..y_n with t (when present) greatest."""

    n: int
    order: str = LEX_XY
    aux: bool = False

    def __post_init__(self):
        if self.order not in (LEX_XY, DEGREVLEX):
            raise ValueError(f"unknown order {self.order!r}")
        if self.aux and self.order != LEX_XY:
            raise ValueError("the auxiliary elimination variable needs the lex order")

    @property
    def nvars(self) -> int:
        return 2 * self.n + (1 if self.aux else 0)

    def x(self, v: int) -> int:
        return (1 if self.aux else 0) + v - 1

    def y(self, v: int) -> int:
        return (1 if self.aux else 0) + self.n + v - 1

    def var_names(self) -> tuple[str, ...]:
        names = tuple(f"x{v}" for v in range(1, self.n + 1)) + tuple(
            f"y{v}" for v in range(1, self.n + 1)
        )
        return (("t",) + names) if self.aux else names

    def key(self, exps: tuple[int, ...]):
        if self.order == LEX_XY:
            return exps
        return (sum(exps), tuple(-e for e in reversed(exps)))


def _m_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _m_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _m_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _m_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _m_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class Polynomial:
    """Exact multivariate polynomial; terms map exponent tuple -> Fraction."""

    __slots__ = ("ctx", "terms", "_lt")

    def __init__(self, ctx: PolyContext, terms: Optional[dict] = None):
        self.ctx = ctx
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c
        self._lt = None

    # builders -------------------------------------------------------------
    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def variable(cls, ctx, index, coeff=1):
        exps = [0] * ctx.nvars
        exps[index] = 1
        return cls(ctx, {tuple(exps): Fraction(coeff)})

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, {(0,) * ctx.nvars: Fraction(c)})

    # structure ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def lt(self) -> tuple[tuple[int, ...], Fraction]:
        if self._lt is None:
            m = max(self.terms, key=self.ctx.key)
            self._lt = (m, self.terms[m])
        return self._lt

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def monic(self) -> "Polynomial":
        _, c = self.lt()
        if c == 1:
            return self
        return Polynomial(self.ctx, {m: v / c for m, v in self.terms.items()})

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            w = out.get(m, 0) + c
            if w:
                out[m] = w
            elif m in out:
                del out[m]
        return Polynomial(self.ctx, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            w = out.get(m, 0) - c
            if w:
                out[m] = w
            elif m in out:
                del out[m]
        return Polynomial(self.ctx, out)

    def __neg__(self):
        return Polynomial(self.ctx, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _m_mul(m1, m2)
                w = out.get(m, 0) + c1 * c2
                if w:
                    out[m] = w
                elif m in out:
                    del out[m]
        return Polynomial(self.ctx, out)

    def shifted(self, mono, coeff=1):
        """self * coeff * x^mono."""
        coeff = Fraction(coeff)
        return Polynomial(
            self.ctx, {_m_mul(m, mono): c * coeff for m, c in self.terms.items()}
        )

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.ctx.var_names()
        parts = []
        for m in sorted(self.terms, key=self.ctx.key, reverse=True):
            c = self.terms[m]
            body = "*".join(
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(m)
                if e
            )
            parts.append(f"{c}" if not body else (body if c == 1 else f"{c}*{body}"))
        return " + ".join(parts)


class Ideal:
    __slots__ = ("ctx", "gens", "_gb")

    def __init__(self, ctx: PolyContext, gens):
        self.ctx = ctx
        self.gens = tuple(g for g in gens if not g.is_zero())
        self._gb = None

    def groebner(self) -> tuple[Polynomial, ...]:
        if self._gb is None:
            self._gb = buchberger(self)
        return self._gb

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.groebner()).is_zero()


def normal_form(f: Polynomial, basis) -> Polynomial:
    """Full remainder of f modulo a list of monic polynomials."""
    ctx = f.ctx
    key = ctx.key
    lts = [(g.lt()[0], g) for g in basis]
    work = dict(f.terms)
    out: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lt_g, g in lts:
            if _m_divides(lt_g, m):
                shift = _m_div(m, lt_g)
                for mg, cg in g.terms.items():
                    if mg == lt_g:
                        continue
                    mm = _m_mul(mg, shift)
                    w = work.get(mm, 0) - c * cg
                    if w:
                        work[mm] = w
                    elif mm in work:
                        del work[mm]
                break
        else:
            out[m] = c
    return Polynomial(ctx, out)


def _spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, _ = f.lt()
    lg, _ = g.lt()
    lcm = _m_lcm(lf, lg)
    return f.shifted(_m_div(lcm, lf)) - g.shifted(_m_div(lcm, lg))


def buchberger(I: Ideal) -> tuple[Polynomial, ...]:
    """Reduced Groebner basis (monic, sorted by decreasing lead term)."""
    ctx = I.ctx
    if ctx.nvars > MAX_EFFECTIVE_VARS:
        raise ResourceBudgetError(
            f"{ctx.nvars} variables exceeds the {MAX_EFFECTIVE_VARS}-variable budget"
        )
    for g in I.gens:
        if g.degree() > MAX_INPUT_DEGREE:
            raise ResourceBudgetError(
                f"generator degree {g.degree()} exceeds budget {MAX_INPUT_DEGREE}"
            )
    key = ctx.key
    basis: list[Polynomial] = []
    for g in I.gens:
        h = normal_form(g, basis)
        if not h.is_zero():
            basis.append(h.monic())
    pending: set[tuple[int, int]] = set()
    heap: list = []

    def push_pairs(j: int) -> None:
        for i in range(j):
            lcm = _m_lcm(basis[i].lt()[0], basis[j].lt()[0])
            heappush(heap, (key(lcm), lcm, i, j))
            pending.add((i, j))

    for j in range(len(basis)):
        push_pairs(j)

    processed = 0
    while heap:
        _, lcm, i, j = heappop(heap)
        pending.discard((i, j))
        processed += 1
        if processed > MAX_PAIRS:
            raise ResourceBudgetError(f"pair budget {MAX_PAIRS} exceeded")
        fi, fj = basis[i], basis[j]
        if _m_coprime(fi.lt()[0], fj.lt()[0]):
            continue
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _m_divides(basis[k].lt()[0], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        h = normal_form(_spoly(fi, fj), basis)
        if h.is_zero():
            continue
        if h.degree() > MAX_RUN_DEGREE:
            raise ResourceBudgetError(f"degree budget {MAX_RUN_DEGREE} exceeded")
        basis.append(h.monic())
        if len(basis) > MAX_BASIS:
            raise ResourceBudgetError(f"basis size budget {MAX_BASIS} exceeded")
        push_pairs(len(basis) - 1)

    # minimalize: keep only leads not divisible by another kept lead
    minimal: list[Polynomial] = []
    for f in sorted(basis, key=lambda g: key(g.lt()[0])):
        if not any(_m_divides(g.lt()[0], f.lt()[0]) for g in minimal):
            minimal.append(f)
    # tail-reduce to the unique reduced basis
    changed = True
    while changed:
        changed = False
        for idx, f in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1 :]
            r = normal_form(f, others)
            if r.terms != f.terms:
                minimal[idx] = r.monic()
                changed = True
    minimal.sort(key=lambda g: key(g.lt()[0]), reverse=True)
    # self-check: every S-polynomial of the final basis reduces to zero
    for i in range(len(minimal)):
        for j in range(i + 1, len(minimal)):
            if _m_coprime(minimal[i].lt()[0], minimal[j].lt()[0]):
                continue
            if not normal_form(_spoly(minimal[i], minimal[j]), minimal).is_zero():
                raise AssertionError("reduced basis failed the S-polynomial check")
    return tuple(minimal)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """Mutual membership via normal forms against each reduced basis."""
    if I.ctx != J.ctx:
        raise ValueError("ideals live in different contexts")
    gb_i = I.groebner()
    gb_j = J.groebner()
    return all(normal_form(g, gb_j).is_zero() for g in I.gens) and all(
        normal_form(g, gb_i).is_zero() for g in J.gens
    )


def _lift(f: Polynomial, actx: PolyContext) -> Polynomial:
    return Polynomial(actx, {(0,) + m: c for m, c in f.terms.items()})


def _project(f: Polynomial, ctx: PolyContext) -> Polynomial:
    assert all(m[0] == 0 for m in f.terms)
    return Polynomial(ctx, {m[1:]: c for m, c in f.terms.items()})


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """Eliminate t from t*I + (1-t)*J."""
    ctx = I.ctx
    if ctx != J.ctx:
        raise ValueError("ideals live in different contexts")
    if ctx.aux:
        raise ValueError("nested elimination not supported")
    actx = PolyContext(ctx.n, LEX_XY, aux=True)
    t = Polynomial.variable(actx, 0)
    one = Polynomial.constant(actx, 1)
    gens = [t * _lift(g, actx) for g in I.gens]
    gens += [(one - t) * _lift(g, actx) for g in J.gens]
    gb = buchberger(Ideal(actx, gens))
    kept = [_project(p, ctx) for p in gb if p.lt()[0][0] == 0]
    return Ideal(ctx, kept)


def _exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    ctx = f.ctx
    glt, glc = g.lt()
    work = dict(f.terms)
    out: dict = {}
    while work:
        m = max(work, key=ctx.key)
        c = work.pop(m)
        if not _m_divides(glt, m):
            raise ArithmeticError("division is not exact")
        q = _m_div(m, glt)
        qc = c / glc
        out[q] = qc
        for mg, cg in g.terms.items():
            if mg == glt:
                continue
            mm = _m_mul(mg, q)
            w = work.get(mm, 0) - qc * cg
            if w:
                work[mm] = w
            elif mm in work:
                del work[mm]
    return Polynomial(ctx, out)


def ideal_colon(I: Ideal, f: Polynomial) -> Ideal:
    """I : f, computed as (I ∩ (f)) divided by f."""
    if f.is_zero():
        raise ValueError("colon by zero")
    inter = ideal_intersection(I, Ideal(I.ctx, [f]))
    return Ideal(I.ctx, [_exact_divide(g, f) for g in inter.gens])


# ---------------------------------------------------------------------------
# graph-flavored constructions


def edge_binomial(ctx: PolyContext, a: int, b: int) -> Polynomial:
    """x_a y_b - x_b y_a for a < b."""
    a, b = min(a, b), max(a, b)
    ma = [0] * ctx.nvars
    ma[ctx.x(a)] = 1
    ma[ctx.y(b)] = 1
    mb = [0] * ctx.nvars
    mb[ctx.x(b)] = 1
    mb[ctx.y(a)] = 1
    return Polynomial(ctx, {tuple(ma): Fraction(1), tuple(mb): Fraction(-1)})


def binomial_edge_ideal(G: Graph, ctx: Optional[PolyContext] = None) -> Ideal:
    ctx = ctx or PolyContext(G.n)
    return Ideal(ctx, [edge_binomial(ctx, a, b) for a, b in G.edges()])


def monomial_polynomial(ctx: PolyContext, mask: int) -> Polynomial:
    """A squarefree monomial on the 2n slot layout of the degeneration module."""
    exps = [0] * ctx.nvars
    for k in range(2 * ctx.n):
        if mask >> k & 1:
            v = k + 1 if k < ctx.n else k - ctx.n + 1
            exps[ctx.x(v) if k < ctx.n else ctx.y(v)] = 1
    return Polynomial(ctx, {tuple(exps): Fraction(1)})


def prime_component_ideal(
    G: Graph, S: CutSet, ctx: Optional[PolyContext] = None
) -> Ideal:
    """Variables for S plus the 2-minors of the completed components."""
    if S not in cut_sets(G):
        raise ValueError("not a valid cut set of this graph")
    ctx = ctx or PolyContext(G.n)
    gens = []
    for v in S.labels():
        gens.append(Polynomial.variable(ctx, ctx.x(v)))
        gens.append(Polynomial.variable(ctx, ctx.y(v)))
    for comp in S.components:
        for i, a in enumerate(comp):
            for b in comp[i + 1 :]:
                gens.append(edge_binomial(ctx, a, b))
    return Ideal(ctx, gens)


# ---------------------------------------------------------------------------
# certification checks


def _budget_n(G: Graph, cap: int, what: str) -> None:
    if G.n > cap:
        raise ResourceBudgetError(f"{what} budget is n <= {cap}, got {G.n}")


def verify_primary_decomposition(G: Graph) -> bool:
    """The edge-minor ideal equals the intersection of its combinatorial primes."""
    _budget_n(G, 5, "primary decomposition check")
    primes = minimal_primes(G).primes
    acc = prime_component_ideal(G, primes[0].cutset)
    for p in primes[1:]:
        acc = ideal_intersection(acc, prime_component_ideal(G, p.cutset))
    return ideal_equal(acc, binomial_edge_ideal(G))


def verify_colon_theorem(H: Graph, e) -> bool:
    """Colon of the edge-deleted ideal by the removed binomial equals the
    completed-graph ideal plus the inner-path monomials."""
    _budget_n(H, 4, "colon check")
    a, b = e
    if not H.has_edge(a, b):
        raise ValueError("e must be an edge of H")
    ctx = PolyContext(H.n)
    h_minus = toggle_edge(H, e, "delete")
    lhs = ideal_colon(binomial_edge_ideal(h_minus, ctx), edge_binomial(ctx, a, b))
    completed = edge_completion(h_minus, e)
    mono = [
        monomial_polynomial(ctx, m) for m in colon_generators(H, e).min_gens
    ]
    rhs = Ideal(ctx, list(binomial_edge_ideal(completed, ctx).gens) + mono)
    return ideal_equal(lhs, rhs)


def verify_ohtani(G: Graph, v: int) -> bool:
    """Splitting at a non-simplicial or cut vertex: J_G = J_{G_v} ∩ (J_{G-v} + (x_v, y_v))."""
    _budget_n(G, 5, "vertex splitting check")
    ctx = PolyContext(G.n)
    right_a = binomial_edge_ideal(ohtani_completion(G, v), ctx)
    rest = restriction(G, [v])
    gens = [
        edge_binomial(ctx, rest.labels[a - 1], rest.labels[b - 1])
        for a, b in rest.graph.edges()
    ]
    gens.append(Polynomial.variable(ctx, ctx.x(v)))
    gens.append(Polynomial.variable(ctx, ctx.y(v)))
    right = ideal_intersection(right_a, Ideal(ctx, gens))
    return ideal_equal(binomial_edge_ideal(G, ctx), right)


def verify_initial_ideal(G: Graph) -> bool:
    """Lex lead terms of the reduced basis match the path-indexed monomials."""
    _budget_n(G, 5, "initial ideal check")
    gb = binomial_edge_ideal(G).groebner()
    ctx = PolyContext(G.n)
    leads = set()
    for p in gb:
        m, _ = p.lt()
        mask = 0
        for i, e in enumerate(m):
            if e == 0:
                continue
            if e != 1:
                return False  # a non-squarefree lead cannot match
            v = i + 1 if i < ctx.n else i - ctx.n + 1
            mask |= 1 << (v - 1) if i < ctx.n else 1 << (ctx.n + v - 1)
        leads.add(mask)
    return leads == set(initial_ideal(G).min_gens)


def cut_vertices(G: Graph) -> tuple[int, ...]:
    return tuple(
        v for v in range(1, G.n + 1) if vertex_stats(G, v).cut_vertex
    )
