"""Symmetric algebras of derivation modules, the Rees kernel, the
injectivity/torsion tests, grade computations and depth via graded minimal
free resolutions.

Ring conventions: the symmetric algebra of a module with m generators over
O = Q[x_1..x_n] is presented in the polynomial ring on n+m variables
x_1..x_n, T_1..T_m (the T block occupies indices n..n+m-1).  The Rees
kernel is computed in the auxiliary ring x_1..x_n, xi_1..xi_n, T_1..T_m by
eliminating the xi block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import (FreeModuleVector, GroebnerBasis, buchberger, codim,
                       gb_equal, gb_polys, graded_min_generators, ideal_gb,
                       normal_form, syzygies, eliminate, vector_degree)
from .logder import DerivationModule, quasi_weights
from .poly import Polynomial, monomials_of_degree


def _reindex(p: Polynomial, nvars_new: int, positions) -> Polynomial:
    """Move p into a larger ring, variable i landing at positions[i]."""
    terms = {}
    for m, c in p.terms.items():
        expo = [0] * nvars_new
        for i, e in enumerate(m):
            if e:
                expo[positions[i]] = e
        terms[tuple(expo)] = c
    return Polynomial(nvars_new, terms, _clean=False)


def _restrict(p: Polynomial, nvars_new: int, keep) -> Polynomial:
    """Inverse of _reindex: drop the variables outside ``keep`` (which must
    not occur in p)."""
    terms = {}
    for m, c in p.terms.items():
        terms[tuple(m[i] for i in keep)] = c
    return Polynomial(nvars_new, terms, _clean=False)


@dataclass
class SymPresentation:
    """Sym_O M = O[T_1..T_m] / J with J spanned by the linear forms
    sum_j a_ij T_j, one per first syzygy (a_i1..a_im) of the generators."""

    base_dim: int
    module_rank: int
    relations: list
    gen_degrees: list | None = None
    weights: tuple | None = None
    _gb: GroebnerBasis | None = field(default=None, repr=False, compare=False)

    @property
    def ring_dim(self):
        return self.base_dim + self.module_rank

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            if self.relations:
                self._gb = buchberger(
                    [FreeModuleVector.from_polynomial(r) for r in self.relations])
            else:
                from .groebner import default_module_order
                self._gb = GroebnerBasis([], default_module_order(), 1,
                                         self.ring_dim)
        return self._gb


@dataclass
class ReesKernel:
    """Full relation ideal Q of the generator symbols inside O[T]; always
    contains the linear syzygy ideal J."""

    ideal: GroebnerBasis

    @property
    def generators(self):
        return gb_polys(self.ideal)


def sym_presentation(dm: DerivationModule) -> SymPresentation:
    n = dm.nvars
    m = len(dm.generators)
    ring = n + m
    xpos = list(range(n))
    rels = []
    for s in dm.first_syzygies:
        rel = Polynomial.zero(ring)
        for j, a in enumerate(s.components):
            if a.is_zero():
                continue
            tvar = Polynomial.variable(ring, n + j)
            rel = rel + _reindex(a, ring, xpos) * tvar
        if not rel.is_zero():
            rels.append(rel)
    w = quasi_weights(dm.divisor)
    gen_degs = None
    if w is not None:
        shifts = tuple(-wi for wi in w)
        try:
            gen_degs = [vector_degree(g, weights=w, shifts=shifts)
                        for g in dm.generators]
        except ValueError:
            gen_degs = None
    return SymPresentation(n, m, rels, gen_degrees=gen_degs, weights=w)


def rees_kernel(dm: DerivationModule) -> ReesKernel:
    """Relations of the symbols sigma(theta_i) = sum_j a_ij xi_j, by
    eliminating the xi variables from <T_i - sigma_i>."""
    n = dm.nvars
    m = len(dm.generators)
    big = 2 * n + m
    xpos = list(range(n))
    gens = []
    for i, g in enumerate(dm.generators):
        p = Polynomial.variable(big, 2 * n + i)
        for j, a in enumerate(g.components):
            if a.is_zero():
                continue
            xi = Polynomial.variable(big, n + j)
            p = p - _reindex(a, big, xpos) * xi
        gens.append(p)
    elim = eliminate(gens, list(range(n, 2 * n)), nvars=big)
    keep = list(range(n)) + list(range(2 * n, big))
    ring = n + m
    projected = [FreeModuleVector.from_polynomial(
        _restrict(v.components[0], ring, keep)) for v in elim.generators]
    from .groebner import default_module_order
    gb = GroebnerBasis(projected, default_module_order(), 1, ring,
                       reduced=True)
    return ReesKernel(gb)


def pi_injectivity_test(sp: SymPresentation, rk: ReesKernel) -> bool:
    """Sym -> Rees is injective iff J = Q as ideals."""
    return gb_equal(sp.gb(), rk.ideal)


# ---------------------------------------------------------------------------
# degreewise torsion
# ---------------------------------------------------------------------------

def symk_module(sp: SymPresentation, k: int):
    """The T-degree-k piece of O[T]/J as an O-module: generator basis = the
    degree-k monomials in T, relations = (degree k-1 monomials) * (linear
    forms of J).  Returns (tmonos, relation_vectors, shifts)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n, m = sp.base_dim, sp.module_rank
    tmonos = monomials_of_degree(m, k)
    index = {t: i for i, t in enumerate(tmonos)}
    N = len(tmonos)
    zero = Polynomial.zero(n)
    keep = list(range(n))
    rel_vecs = []
    decomposed = []
    for rel in sp.relations:
        coeffs = {}
        for mono, c in rel.terms.items():
            tpart = mono[n:]
            j = next(i for i, e in enumerate(tpart) if e)
            coeffs.setdefault(j, {})[mono[:n]] = c
        decomposed.append({j: Polynomial(n, t) for j, t in coeffs.items()})
    for tm in monomials_of_degree(m, k - 1):
        for dec in decomposed:
            comps = [zero] * N
            for j, cj in dec.items():
                target = tuple(e + (1 if i == j else 0)
                               for i, e in enumerate(tm))
                comps[index[target]] = cj
            v = FreeModuleVector(comps)
            if not v.is_zero():
                rel_vecs.append(v)
    shifts = None
    if sp.gen_degrees is not None:
        shifts = [sum(d * e for d, e in zip(sp.gen_degrees, t))
                  for t in tmonos]
    return tmonos, rel_vecs, shifts


def module_quotient_by_poly(rel_vecs, g: Polynomial, rank: int, nvars: int):
    """Generators of (Rel : g) = {v in O^rank : g*v in Rel}."""
    if not rel_vecs:
        return []
    gens = []
    for b in range(rank):
        comps = [Polynomial.zero(nvars)] * rank
        comps[b] = g
        gens.append(FreeModuleVector(comps))
    gens.extend(rel_vecs)
    out = []
    for s in syzygies(gens):
        v = FreeModuleVector(s.components[:rank])
        if not v.is_zero():
            out.append(v)
    return out


@dataclass
class TorsionReport:
    tdegree: int
    torsion_free: bool
    witnesses: list          # (variable index, canonical annihilated class)

    def witness_for(self, i):
        for j, v in self.witnesses:
            if j == i:
                return v
        return None


def torsion_test_symk(sp: SymPresentation, k: int) -> TorsionReport:
    """Degreewise torsion of Sym^k: for every variable x_i, look for a
    nonzero class killed by x_i.  Witnesses are canonical: the normal form
    of the annihilated element, smallest lead first, scaled monic."""
    n = sp.base_dim
    tmonos, rel_vecs, _ = symk_module(sp, k)
    N = len(tmonos)
    if rel_vecs:
        relgb = buchberger(rel_vecs)
    else:
        relgb = None
    witnesses = []
    for i in range(n):
        xi = Polynomial.variable(n, i)
        quot = module_quotient_by_poly(rel_vecs, xi, N, n)
        best = None
        for v in quot:
            nf = normal_form(v, relgb) if relgb is not None else v
            if nf.is_zero():
                continue
            cand = _canonical_vector(nf)
            if best is None or _vector_sort_key(cand) < _vector_sort_key(best):
                best = cand
        if best is not None:
            witnesses.append((i, best))
    return TorsionReport(k, not witnesses, witnesses)


def _canonical_vector(v: FreeModuleVector) -> FreeModuleVector:
    from .groebner import vector_lead_term
    _, _, lc = vector_lead_term(v)
    return v.scale(1 / lc)


def _vector_sort_key(v: FreeModuleVector):
    from .groebner import vector_lead_term
    _, key, _ = vector_lead_term(v)
    return (key, repr(v))


def alpha_image_nf(dm: DerivationModule, op, k: int = 2) -> FreeModuleVector:
    """Normal form of the symbol of ``op`` against the O-module spanned by
    k-fold products of the generator symbols (the degree-k image of the
    symmetric algebra in the symbol ring).  Nonzero means the symbol class
    is not reached by vector fields."""
    from itertools import combinations_with_replacement

    from .weyl import WeylOperator, symbol, xi_component_vector
    n = dm.nvars
    xi_monos = monomials_of_degree(n, k)
    sym_gens = [symbol(WeylOperator.vector_field(g.components))
                for g in dm.generators]
    products = []
    for word in combinations_with_replacement(range(len(sym_gens)), k):
        p = Polynomial.one(2 * n)
        for i in word:
            p = p * sym_gens[i]
        products.append(FreeModuleVector(
            xi_component_vector(p, n, k, xi_monos)))
    target = FreeModuleVector(
        xi_component_vector(symbol(op), n, k, xi_monos))
    gb = buchberger(products)
    return normal_form(target, gb)


# ---------------------------------------------------------------------------
# grade criterion (rank-one resolution)
# ---------------------------------------------------------------------------

@dataclass
class GradeCertificate:
    applicable: bool
    reason: str
    syzygy_vector: FreeModuleVector | None = None
    ideal_generators: list | None = None
    grade: float | int | None = None
    required: int | None = None
    certified: bool = False


def grade_criterion(dm: DerivationModule, dimZ: int) -> GradeCertificate:
    """Certify via the length-one resolution 0 -> R -> R^m -> A -> 0: the
    single syzygy vector (a_1..a_m) must generate all first syzygies, and
    codim<a_1..a_m> (= grade over the Cohen-Macaulay ambient ring) must be
    at least dimZ + 3."""
    required = dimZ + 3
    w = quasi_weights(dm.divisor)
    if w is None:
        return GradeCertificate(False, "divisor is not (quasi-)homogeneous",
                                required=required)
    if not dm.first_syzygies:
        return GradeCertificate(
            False, "module is free (no syzygies): resolution has length 0",
            required=required)
    shifts = tuple(-wi for wi in w)
    try:
        gen_degs = [vector_degree(g, weights=w, shifts=shifts)
                    for g in dm.generators]
        kept, _ = graded_min_generators(dm.first_syzygies, weights=w,
                                        shifts=gen_degs)
    except ValueError:
        return GradeCertificate(False, "syzygies are not graded",
                                required=required)
    if len(kept) != 1:
        return GradeCertificate(
            False, f"first syzygy module needs {len(kept)} generators, not 1",
            required=required)
    vec = kept[0]
    if syzygies([vec]):
        return GradeCertificate(False, "syzygy vector has relations",
                                required=required)
    entries = [p for p in vec.components if not p.is_zero()]
    igb = ideal_gb(entries)
    grade = codim(igb)
    return GradeCertificate(True, "rank-one resolution found",
                            syzygy_vector=vec,
                            ideal_generators=entries,
                            grade=grade, required=required,
                            certified=bool(grade >= required))


# ---------------------------------------------------------------------------
# depth via graded minimal free resolution
# ---------------------------------------------------------------------------

def _eliminate_units(rank, relations, shifts, nvars):
    """Strip presentation generators hit by relations with constant entries
    so that the remaining presentation is minimal at level one."""
    rels = [list(v.components) for v in relations]
    shifts = list(shifts)
    changed = True
    while changed:
        changed = False
        for ri, rel in enumerate(rels):
            unit_pos = None
            for p, entry in enumerate(rel):
                if not entry.is_zero() and entry.is_constant():
                    unit_pos = p
                    break
            if unit_pos is None:
                continue
            c = rel[unit_pos].constant_term()
            for other in rels:
                if other is rel or other[unit_pos].is_zero():
                    continue
                factor = other[unit_pos] * (1 / c)
                for q in range(rank):
                    other[q] = other[q] - factor * rel[q]
            del rels[ri]
            for other in rels:
                del other[unit_pos]
            del shifts[unit_pos]
            rank -= 1
            changed = True
            break
    out = []
    for rel in rels:
        if rank == 0:
            continue
        v = FreeModuleVector(rel)
        if not v.is_zero():
            out.append(v)
    return rank, out, shifts


def depth_via_resolution(rank: int, relations, nvars: int,
                         shifts=None, weights=None) -> int:
    """Depth at the irrelevant maximal ideal of the graded module
    O^rank / <relations>, as nvars - (length of a graded minimal free
    resolution) by Auslander-Buchsbaum."""
    w = tuple(weights) if weights is not None else (1,) * nvars
    shifts = list(shifts) if shifts is not None else [0] * rank
    for v in relations:
        vector_degree(v, weights=w, shifts=shifts)  # raises if non-graded
    rank, rels, shifts = _eliminate_units(rank, relations, shifts, nvars)
    if rank == 0:
        raise ValueError("presentation collapsed to the zero module")
    pd = 0
    cur, degs = graded_min_generators(rels, weights=w, shifts=shifts)
    while cur:
        pd += 1
        nxt = syzygies(cur)
        cur, degs = graded_min_generators(nxt, weights=w, shifts=degs)
    return nvars - pd
