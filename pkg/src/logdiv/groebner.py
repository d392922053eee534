"""Buchberger engine for ideals and submodules of free modules over the
polynomial ring, with syzygies, lifting, ideal quotient, saturation,
elimination and codimension.

The public API works with Fraction-coefficient vectors; internally every
computation runs on primitive integer term maps, with content stripped as
reductions proceed.  Reduced Groebner bases are unique for a fixed order,
so all results are deterministic across runs.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd, inf

from .poly import (DEGREVLEX, BlockElim, ModuleOrder, Polynomial, SyzElimOrder,
                   TopOrder, mono_deg, mono_div, mono_divides, mono_lcm,
                   mono_mul)


class FreeModuleVector:
    """Element of a free module O^m, stored as a tuple of polynomials."""

    __slots__ = ("components",)

    def __init__(self, components):
        self.components = tuple(components)
        if not self.components:
            raise ValueError("rank-zero vectors are not supported")

    @property
    def rank(self):
        return len(self.components)

    @property
    def nvars(self):
        return self.components[0].nvars

    @staticmethod
    def from_polynomial(p: Polynomial):
        return FreeModuleVector((p,))

    @staticmethod
    def zero(rank, nvars):
        z = Polynomial.zero(nvars)
        return FreeModuleVector((z,) * rank)

    def is_zero(self):
        return all(p.is_zero() for p in self.components)

    def __add__(self, other):
        return FreeModuleVector(tuple(a + b for a, b in
                                      zip(self.components, other.components)))

    def __sub__(self, other):
        return FreeModuleVector(tuple(a - b for a, b in
                                      zip(self.components, other.components)))

    def __neg__(self):
        return FreeModuleVector(tuple(-a for a in self.components))

    def scale(self, c):
        return FreeModuleVector(tuple(a * c for a in self.components))

    def __eq__(self, other):
        if not isinstance(other, FreeModuleVector):
            return NotImplemented
        return self.components == other.components

    def __repr__(self):
        return "(" + ", ".join(repr(p) for p in self.components) + ")"


class GroebnerBasis:
    """Reduced Groebner basis of a submodule of O^rank (rank 1: an ideal)."""

    __slots__ = ("generators", "order", "rank", "nvars", "reduced", "_ivecs")

    def __init__(self, generators, order, rank, nvars, reduced=True):
        self.generators = list(generators)
        self.order = order
        self.rank = rank
        self.nvars = nvars
        self.reduced = reduced
        self._ivecs = None

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_zero_module(self):
        return not self.generators

    def contains_unit(self):
        """Rank-1 only: does the ideal contain a nonzero constant?"""
        return any(v.components[0].is_constant() and not v.components[0].is_zero()
                   for v in self.generators)

    def ivecs(self):
        if self._ivecs is None:
            self._ivecs = [_fmv_to_ivec(v) for v in self.generators]
        return self._ivecs

    def __repr__(self):
        return (f"GroebnerBasis({len(self.generators)} generators, "
                f"rank {self.rank}, {self.order.name})")


# ---------------------------------------------------------------------------
# integer term-map plumbing
# ---------------------------------------------------------------------------

def _fmv_to_ivec(v: FreeModuleVector):
    den = 1
    for p in v.components:
        for c in p.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
    vec = {}
    for comp, p in enumerate(v.components):
        for m, c in p.terms.items():
            vec[(comp, m)] = int(c * den)
    return _strip(vec)


def _ivec_to_fmv(vec, rank, nvars, divisor=1):
    polys = [dict() for _ in range(rank)]
    for (comp, m), c in vec.items():
        polys[comp][m] = Fraction(c, divisor)
    return FreeModuleVector(tuple(
        Polynomial(nvars, t, _clean=True) for t in polys))


def _strip(vec):
    g = 0
    for c in vec.values():
        g = gcd(g, c)
        if g == 1:
            return vec
    if g > 1:
        for t in vec:
            vec[t] //= g
    return vec


class _Engine:
    """Shared machinery for normal forms and Buchberger over one order."""

    def __init__(self, order: ModuleOrder):
        self._kcache = {}
        self._okey = order.key
        self.order = order

    def key(self, term):
        k = self._kcache.get(term)
        if k is None:
            k = self._okey(term)
            self._kcache[term] = k
        return k

    def lead(self, vec):
        key = self.key
        return max(vec, key=key)

    def make_reducer(self, vec):
        lt = self.lead(vec)
        tail = [(t, c) for t, c in vec.items() if t != lt]
        return (lt, vec[lt], tail)

    def index_by_comp(self, reducers):
        by_comp = {}
        for i, (lt, _, _) in enumerate(reducers):
            by_comp.setdefault(lt[0], []).append(i)
        return by_comp

    def normal_form(self, vec, reducers, by_comp, primitive=True):
        """Full normal form.  Returns (out, scale) with
        scale * vec == out (mod the submodule); if ``primitive`` the result
        is content-stripped and scale is returned as None."""
        key = self.key
        cur = dict(vec)
        out = {}
        scale = 1
        heap = [(_neg(key(t)), t) for t in cur]
        heapify(heap)
        while heap:
            _, t = heappop(heap)
            c = cur.pop(t, 0)
            if not c:
                continue
            comp, mono = t
            hit = None
            for idx in by_comp.get(comp, ()):
                lt, lc, tail = reducers[idx]
                if mono_divides(lt[1], mono):
                    hit = (lt, lc, tail)
                    break
            if hit is None:
                out[t] = c
                continue
            lt, lc, tail = hit
            g = gcd(c, lc)
            a, b = lc // g, c // g
            if a < 0:
                a, b = -a, -b
            if a != 1:
                for t2 in cur:
                    cur[t2] *= a
                for t2 in out:
                    out[t2] *= a
                scale *= a
            shift = mono_div(mono, lt[1])
            for (tc, tm), cc in tail:
                t2 = (tc, mono_mul(tm, shift))
                prev = cur.get(t2)
                if prev is None:
                    val = -b * cc
                    if val:
                        cur[t2] = val
                        heappush(heap, (_neg(key(t2)), t2))
                else:
                    val = prev - b * cc
                    if val:
                        cur[t2] = val
                    else:
                        del cur[t2]
        if primitive:
            return _strip(out), None
        return out, scale

    # -- Buchberger ---------------------------------------------------------

    def buchberger(self, ivecs, rank):
        basis = []      # list of dict
        leads = []      # list of (term, coeff)
        tails = []
        reducers = []   # (lead term, lead coeff, tail), parallel to basis
        by_comp = {}

        def push_elem(vec):
            lt = self.lead(vec)
            tail = [(t, c) for t, c in vec.items() if t != lt]
            basis.append(vec)
            leads.append((lt, vec[lt]))
            tails.append(tail)
            by_comp.setdefault(lt[0], []).append(len(reducers))
            reducers.append((lt, vec[lt], tail))

        for vec in ivecs:
            if vec:
                push_elem(dict(vec))

        pairs = []
        for j in range(len(basis)):
            for i in range(j):
                self._maybe_pair(pairs, leads, i, j)
        heapify(pairs)

        while pairs:
            _, _, i, j = heappop(pairs)
            lt_i, lc_i = leads[i]
            lt_j, lc_j = leads[j]
            lcm = mono_lcm(lt_i[1], lt_j[1])
            if rank == 1 and lcm == mono_mul(lt_i[1], lt_j[1]):
                continue  # product criterion (ideals only)
            if self._chain_skip(leads, i, j, lt_i[0], lcm):
                continue
            g = gcd(lc_i, lc_j)
            a, b = lc_j // g, lc_i // g
            ui = mono_div(lcm, lt_i[1])
            uj = mono_div(lcm, lt_j[1])
            s = {}
            for (tc, tm), cc in basis[i].items():
                s[(tc, mono_mul(tm, ui))] = a * cc
            for (tc, tm), cc in basis[j].items():
                t2 = (tc, mono_mul(tm, uj))
                val = s.get(t2, 0) - b * cc
                if val:
                    s[t2] = val
                else:
                    s.pop(t2, None)
            if not s:
                continue
            nf, _ = self.normal_form(s, reducers, by_comp)
            if nf:
                new = len(basis)
                push_elem(nf)
                for k in range(new):
                    self._maybe_pair(pairs, leads, k, new, heap=True)

        return self._reduce_basis(basis, leads, tails, rank)

    def _maybe_pair(self, pairs, leads, i, j, heap=False):
        lt_i, lt_j = leads[i][0], leads[j][0]
        if lt_i[0] != lt_j[0]:
            return
        lcm = mono_lcm(lt_i[1], lt_j[1])
        entry = (mono_deg(lcm), self.key((lt_i[0], lcm)), i, j)
        if heap:
            heappush(pairs, entry)
        else:
            pairs.append(entry)

    def _chain_skip(self, leads, i, j, comp, lcm):
        # Buchberger's second criterion, strict-divisor form: sound without
        # pair bookkeeping because both sub-lcms properly divide lcm(i,j).
        for k, (lt, _) in enumerate(leads):
            if k == i or k == j or lt[0] != comp:
                continue
            if not mono_divides(lt[1], lcm):
                continue
            if mono_lcm(lt[1], leads[i][0][1]) == lcm:
                continue
            if mono_lcm(lt[1], leads[j][0][1]) == lcm:
                continue
            return True
        return False

    def _reduce_basis(self, basis, leads, tails, rank):
        key = self.key
        order_idx = sorted(range(len(basis)), key=lambda i: key(leads[i][0]))
        kept = []
        for i in order_idx:
            lt = leads[i][0]
            if any(leads[k][0][0] == lt[0] and
                   mono_divides(leads[k][0][1], lt[1]) for k in kept):
                continue
            kept.append(i)
        # tail-reduce each survivor against the others
        final = []
        for pos, i in enumerate(kept):
            others = [(leads[k][0], leads[k][1], tails[k])
                      for k in kept if k != i]
            by_comp = self.index_by_comp(others)
            nf, _ = self.normal_form(basis[i], others, by_comp)
            final.append(nf)
            # refresh tail so later reductions see the reduced form
            lt = leads[i][0]
            tails[i] = [(t, c) for t, c in nf.items() if t != lt]
            leads[i] = (lt, nf[lt])
            basis[i] = nf
        return final


def _neg(key):
    return tuple(-x for x in key)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def default_module_order():
    return TopOrder(DEGREVLEX)


def _prep(gens):
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list (rank is undetermined)")
    rank = gens[0].rank
    nvars = gens[0].nvars
    for v in gens:
        if v.rank != rank or v.nvars != nvars:
            raise ValueError("generators of mixed rank or ring dimension")
    return gens, rank, nvars


def buchberger(gens, order: ModuleOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by ``gens``."""
    gens, rank, nvars = _prep(gens)
    order = order or default_module_order()
    eng = _Engine(order)
    ivecs = [_fmv_to_ivec(v) for v in gens if not v.is_zero()]
    final = eng.buchberger(ivecs, rank)
    out = []
    for vec in final:
        lt = eng.lead(vec)
        out.append(_ivec_to_fmv(vec, rank, nvars, divisor=vec[lt]))
    out.sort(key=lambda v: eng.key(_lead_term(v, eng)))
    return GroebnerBasis(out, order, rank, nvars, reduced=True)


def _lead_term(v: FreeModuleVector, eng: _Engine):
    best = None
    for comp, p in enumerate(v.components):
        for m in p.terms:
            t = (comp, m)
            if best is None or eng.key(t) > eng.key(best):
                best = t
    return best


def vector_lead_term(v: FreeModuleVector, order: ModuleOrder | None = None):
    """Leading (component, monomial) of a nonzero vector with its sort key
    and coefficient."""
    if v.is_zero():
        raise ValueError("the zero vector has no leading term")
    eng = _Engine(order or default_module_order())
    t = _lead_term(v, eng)
    return t, eng.key(t), v.components[t[0]].terms[t[1]]


def normal_form(v: FreeModuleVector, gb: GroebnerBasis) -> FreeModuleVector:
    """Complete reduction of v modulo the basis; zero iff v lies in the
    submodule; idempotent and linear over the rationals."""
    if v.rank != gb.rank:
        raise ValueError("rank mismatch between vector and basis")
    if v.is_zero():
        return v
    eng = _Engine(gb.order)
    den = 1
    for p in v.components:
        for c in p.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
    vec = {}
    for comp, p in enumerate(v.components):
        for m, c in p.terms.items():
            vec[(comp, m)] = int(c * den)
    reducers = [eng.make_reducer(iv) for iv in gb.ivecs()]
    by_comp = eng.index_by_comp(reducers)
    out, scale = eng.normal_form(vec, reducers, by_comp, primitive=False)
    return _ivec_to_fmv(out, gb.rank, gb.nvars, divisor=scale * den)


def in_submodule(v: FreeModuleVector, gb: GroebnerBasis) -> bool:
    return normal_form(v, gb).is_zero()


def is_groebner_basis(gens, order: ModuleOrder | None = None) -> bool:
    """Buchberger's criterion: every S-vector reduces to zero against the
    generators themselves (no pair-skipping criteria are applied)."""
    gens, rank, nvars = _prep(gens)
    order = order or default_module_order()
    eng = _Engine(order)
    ivecs = [_fmv_to_ivec(v) for v in gens if not v.is_zero()]
    reducers = [eng.make_reducer(vec) for vec in ivecs]
    by_comp = eng.index_by_comp(reducers)
    for i, j in itertools.combinations(range(len(ivecs)), 2):
        (ci, mi), lci = reducers[i][0], reducers[i][1]
        (cj, mj), lcj = reducers[j][0], reducers[j][1]
        if ci != cj:
            continue
        lcm = mono_lcm(mi, mj)
        g = gcd(lci, lcj)
        a, b = lcj // g, lci // g
        ui, uj = mono_div(lcm, mi), mono_div(lcm, mj)
        s = {}
        for (tc, tm), cc in ivecs[i].items():
            s[(tc, mono_mul(tm, ui))] = a * cc
        for (tc, tm), cc in ivecs[j].items():
            t2 = (tc, mono_mul(tm, uj))
            val = s.get(t2, 0) - b * cc
            if val:
                s[t2] = val
            else:
                s.pop(t2, None)
        nf, _ = eng.normal_form(s, reducers, by_comp)
        if nf:
            return False
    return True


# ---------------------------------------------------------------------------
# syzygies and lifting
# ---------------------------------------------------------------------------

def _tagged(gens, rank, nvars):
    """Embed generator i as g_i + e_(rank+i); elements of the Groebner basis
    supported purely on the tags are a basis of the syzygy module."""
    m = len(gens)
    zero = Polynomial.zero(nvars)
    one = Polynomial.one(nvars)
    out = []
    for i, g in enumerate(gens):
        comps = list(g.components) + [zero] * m
        comps[rank + i] = one
        out.append(FreeModuleVector(comps))
    return out


def syzygies(gens, ring_order=DEGREVLEX):
    """Generators of the first syzygy module {(a_1..a_m) : sum a_i g_i = 0}."""
    gens, rank, nvars = _prep(gens)
    m = len(gens)
    order = SyzElimOrder(rank, ring_order)
    gb = buchberger(_tagged(gens, rank, nvars), order)
    out = []
    for v in gb.generators:
        if all(v.components[c].is_zero() for c in range(rank)):
            out.append(FreeModuleVector(v.components[rank:rank + m]))
    return out


def module_lift(v: FreeModuleVector, gens):
    """Coefficients (q_1..q_m) with v = sum q_i g_i, or None if v is not in
    the submodule."""
    gens, rank, nvars = _prep(gens)
    if v.rank != rank:
        raise ValueError("rank mismatch")
    m = len(gens)
    order = SyzElimOrder(rank, DEGREVLEX)
    gb = buchberger(_tagged(gens, rank, nvars), order)
    zero = Polynomial.zero(nvars)
    padded = FreeModuleVector(list(v.components) + [zero] * m)
    nf = normal_form(padded, gb)
    if any(not nf.components[c].is_zero() for c in range(rank)):
        return None
    return [-nf.components[rank + i] for i in range(m)]


def ideal_lift(g: Polynomial, polys):
    lifted = module_lift(FreeModuleVector.from_polynomial(g),
                         [FreeModuleVector.from_polynomial(p) for p in polys])
    return lifted


# ---------------------------------------------------------------------------
# ideal operations (rank 1)
# ---------------------------------------------------------------------------

def ideal_gb(polys, order=None) -> GroebnerBasis:
    polys = list(polys)
    if not polys:
        raise ValueError("empty generator list")
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        return GroebnerBasis([], order or default_module_order(), 1,
                             polys[0].nvars)
    return buchberger([FreeModuleVector.from_polynomial(p) for p in nonzero],
                      order)


def gb_polys(gb: GroebnerBasis):
    return [v.components[0] for v in gb.generators]


def ideal_member(g: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(FreeModuleVector.from_polynomial(g), gb).is_zero()


def ideal_quotient(gb: GroebnerBasis, g: Polynomial) -> GroebnerBasis:
    """(I : g) = {h : h*g in I}, from syzygies of (gens, g)."""
    if g.is_zero():
        raise ValueError("quotient by the zero polynomial")
    if gb.is_zero_module():
        return GroebnerBasis([], gb.order, 1, gb.nvars)
    gens = [FreeModuleVector.from_polynomial(p) for p in gb_polys(gb)]
    gens.append(FreeModuleVector.from_polynomial(g))
    quots = [s.components[-1] for s in syzygies(gens)]
    quots = [q for q in quots if not q.is_zero()]
    if not quots:
        return GroebnerBasis([], gb.order, 1, gb.nvars)
    return ideal_gb(quots)


def gb_equal(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    """Equality of the generated submodules via mutual membership."""
    if a.rank != b.rank or a.nvars != b.nvars:
        return False
    return (all(in_submodule(v, b) for v in a.generators) and
            all(in_submodule(v, a) for v in b.generators))


def saturation(gb: GroebnerBasis, g: Polynomial) -> GroebnerBasis:
    """(I : g^inf) by iterating the quotient until it stabilises."""
    if g.is_zero():
        raise ValueError("saturation by the zero polynomial")
    cur = gb
    while True:
        nxt = ideal_quotient(cur, g)
        if len(nxt) == len(cur) and all(
                u == v for u, v in zip(nxt.generators, cur.generators)):
            return cur
        if gb_equal(nxt, cur):
            return cur
        cur = nxt


def eliminate(gb_or_polys, elim_vars, nvars=None) -> GroebnerBasis:
    """Intersection with the subring on the complementary variables, as a
    reduced degrevlex Groebner basis (still in the ambient ring)."""
    if isinstance(gb_or_polys, GroebnerBasis):
        polys = gb_polys(gb_or_polys)
        nvars = gb_or_polys.nvars
    else:
        polys = list(gb_or_polys)
        nvars = nvars or polys[0].nvars
    elim = sorted(set(elim_vars))
    order = TopOrder(BlockElim(elim, nvars))
    gb = ideal_gb(polys, order) if any(not p.is_zero() for p in polys) else None
    if gb is None:
        return GroebnerBasis([], default_module_order(), 1, nvars)
    kept = []
    elimset = set(elim)
    for v in gb.generators:
        p = v.components[0]
        if all(all(m[i] == 0 for i in elimset) for m in p.terms):
            kept.append(v)
    return GroebnerBasis(kept, default_module_order(), 1, nvars)


def codim(gb: GroebnerBasis):
    """n - dim(R/I) from the leading term ideal; +inf for the unit ideal,
    0 for the zero ideal."""
    if gb.rank != 1:
        raise ValueError("codim is defined for ideals (rank 1)")
    if gb.is_zero_module():
        return 0
    if gb.contains_unit():
        return inf
    n = gb.nvars
    key = gb.order.key
    supports = []
    for v in gb.generators:
        p = v.components[0]
        lead = max(p.terms, key=lambda m: key((0, m)))
        supports.append(frozenset(i for i, e in enumerate(lead) if e))
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return n - size
    return n


def local_membership_at_origin(g: Polynomial, gb: GroebnerBasis) -> bool:
    """g in I*O_0 (the local ring at the origin): some generator of (I : g)
    has a nonzero value at 0."""
    if g.is_zero():
        return True
    if gb.is_zero_module():
        return False
    quot = ideal_quotient(gb, g)
    return any(p.constant_term() != 0 for p in gb_polys(quot))


# ---------------------------------------------------------------------------
# graded minimal generators
# ---------------------------------------------------------------------------

def vector_degree(v: FreeModuleVector, weights=None, shifts=None):
    """Degree of a homogeneous vector (component degree + shift, consistent
    across components); raises if the vector is not homogeneous."""
    w = tuple(weights) if weights is not None else (1,) * v.nvars
    degs = set()
    for comp, p in enumerate(v.components):
        if p.is_zero():
            continue
        if not p.is_weighted_homogeneous(w):
            raise ValueError("vector component is not homogeneous")
        d = p.weighted_degree(w)
        degs.add(d + (shifts[comp] if shifts else 0))
    if len(degs) > 1:
        raise ValueError("vector is not homogeneous for the given shifts")
    return degs.pop() if degs else None


def graded_min_generators(vectors, weights=None, shifts=None):
    """Minimal homogeneous generating subset, greedily by degree
    (graded Nakayama).  Returns (kept_vectors, degrees)."""
    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return [], []
    eng = _Engine(default_module_order())
    deco = []
    for i, v in enumerate(vectors):
        d = vector_degree(v, weights, shifts)
        deco.append((d, eng.key(_lead_term(v, eng)), i, v))
    deco.sort(key=lambda t: (t[0], t[1], t[2]))
    kept = []
    degrees = []
    gb = None
    for d, _, _, v in deco:
        if gb is not None and in_submodule(v, gb):
            continue
        kept.append(v)
        degrees.append(d)
        gb = buchberger(kept)
    return kept, degrees
