"""Independent oracles for cross-checking the engine.

Everything here deliberately avoids the code paths it is used to check:
multiplication runs on sorted term lists, linear algebra is a plain
Fraction Gaussian elimination, and the graded-piece dimension oracle uses
single-divisor polynomial division instead of the subspace row reductions
in the main library.
"""

from fractions import Fraction

from logdiv.poly import Polynomial, divmod_single, mono_deg, monomials_of_degree


def schoolbook_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Convolution on explicit term lists."""
    acc = {}
    for m1, c1 in sorted(p.terms.items()):
        for m2, c2 in sorted(q.terms.items()):
            m = tuple(a + b for a, b in zip(m1, m2))
            acc[m] = acc.get(m, Fraction(0)) + c1 * c2
    return Polynomial(p.nvars, acc)


def rand_poly(rng, nvars, max_deg, max_terms=4, zero_ok=False) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0 if zero_ok else 1, max_terms)):
        m = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        if mono_deg(m) > max_deg:
            continue
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if c:
            terms[m] = terms.get(m, Fraction(0)) + c
    return Polynomial(nvars, terms)


def rand_homog_poly(rng, nvars, deg, max_terms=4) -> Polynomial:
    monos = monomials_of_degree(nvars, deg)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = monos[rng.randrange(len(monos))]
        terms[m] = terms.get(m, Fraction(0)) + rng.randint(-3, 3)
    return Polynomial(nvars, terms)


# ---------------------------------------------------------------------------
# plain Gaussian elimination (no content tricks, no integer fast path)
# ---------------------------------------------------------------------------

def gauss_rref(rows, ncols):
    rows = [[Fraction(c) for c in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][col]
        rows[r] = [c / lead for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return [row for row in rows[:r]], pivots


def gauss_rank(rows, ncols):
    return len(gauss_rref(rows, ncols)[0])


def in_row_span(rows, target, ncols):
    base = gauss_rank(rows, ncols)
    return gauss_rank(rows + [list(target)], ncols) == base


# ---------------------------------------------------------------------------
# brute-force ideal membership as linear algebra on monomial multiples
# ---------------------------------------------------------------------------

def monomials_up_to(nvars, d):
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


def poly_to_row(p, index):
    row = [Fraction(0)] * len(index)
    for m, c in p.terms.items():
        row[index[m]] = c
    return row


def span_membership(g: Polynomial, gens, bound: int) -> bool:
    """Is g a polynomial combination sum q_i gens_i with every product of
    total degree <= bound?  Exact for homogeneous data at bound = deg g."""
    monos = monomials_up_to(g.nvars, bound)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for p in gens:
        if p.is_zero():
            continue
        room = bound - p.degree()
        for m in monomials_up_to(g.nvars, max(room, -1)):
            q = p * Polynomial.monomial(g.nvars, m)
            rows.append(poly_to_row(q, index))
    return in_row_span(rows, poly_to_row(g, index), len(monos))


# ---------------------------------------------------------------------------
# graded V-filtration piece by brute force
# ---------------------------------------------------------------------------

def brute_v0_dimension(f: Polynomial, d: int, w: int, k: int = 0) -> int:
    """Dimension of {order <= d, weight w} operators P with
    P(x^alpha f^l) divisible by f^(l-k) for all |alpha| + l <= d.

    Conditions are evaluated with single-divisor polynomial division
    (remainder must vanish), one equation per remainder coefficient, and
    the kernel dimension comes from the plain Gaussian elimination above.
    """
    n = f.nvars
    e = f.degree()
    unknowns = []  # (beta, mono)
    for bd in range(d + 1):
        for beta in monomials_of_degree(n, bd):
            cdeg = w + bd
            if cdeg < 0:
                continue
            for mono in monomials_of_degree(n, cdeg):
                unknowns.append((beta, mono))
    conditions = []
    for l in range(d + 1):
        if l - k < 1:
            continue
        for adeg in range(d - l + 1):
            for alpha in monomials_of_degree(n, adeg):
                conditions.append((alpha, l))
    rows_by_condition = []
    for alpha, l in conditions:
        g = Polynomial.monomial(n, alpha) * f ** l
        fp = f ** (l - k)
        residues = []
        for beta, mono in unknowns:
            val = g.partial(beta) * Polynomial.monomial(n, mono)
            _, r = divmod_single(val, fp)
            residues.append(r)
        monos = sorted({m for r in residues for m in r.terms})
        index = {m: i for i, m in enumerate(monos)}
        for m in monos:
            rows_by_condition.append(
                [r.terms.get(m, Fraction(0)) for r in residues])
    if not unknowns:
        return 0
    rank = gauss_rank(rows_by_condition, len(unknowns))
    return len(unknowns) - rank


# ---------------------------------------------------------------------------
# degreewise torsion oracle for graded module presentations
# ---------------------------------------------------------------------------

def module_vec_to_row(vec, rank, index):
    row = [Fraction(0)] * (rank * len(index))
    for comp, p in enumerate(vec.components):
        for m, c in p.terms.items():
            row[comp * len(index) + index[m]] = c
    return row


def torsion_class_exists_at_degree(rel_vecs, rank, nvars, var, d):
    """Is there v in (R^rank)_d, v not in Rel_d, with x_var * v in Rel_(d+1)?

    Pure linear algebra: build Rel_d and Rel_(d+1) as row spans over the
    monomial coordinates and compare kernel dimensions.  Assumes the
    relation vectors are homogeneous with entries of a single degree each
    (true for the symmetric-power presentations used here).
    """
    lo = monomials_of_degree(nvars, d)
    hi = monomials_of_degree(nvars, d + 1)
    lo_index = {m: i for i, m in enumerate(lo)}
    hi_index = {m: i for i, m in enumerate(hi)}

    def span_rows(target_deg, index):
        rows = []
        for vec in rel_vecs:
            deg = max(p.degree() for p in vec.components if not p.is_zero())
            room = target_deg - deg
            if room < 0:
                continue
            for m in monomials_of_degree(nvars, room):
                shifted = vec.scale(Polynomial.monomial(nvars, m))
                rows.append(module_vec_to_row(shifted, rank, index))
        return rows

    rel_lo = span_rows(d, lo_index)
    rel_hi = span_rows(d + 1, hi_index)
    hi_red, hi_piv = gauss_rref(rel_hi, rank * len(hi))
    hi_pivset = set(hi_piv)

    # matrix of "multiply by x_var then reduce mod Rel_(d+1)" on (R^rank)_d
    xv = Polynomial.variable(nvars, var)
    rows = []
    for comp in range(rank):
        for m in lo:
            vec_comps = [Polynomial.zero(nvars)] * rank
            vec_comps[comp] = Polynomial.monomial(nvars, m) * xv
            from logdiv.groebner import FreeModuleVector
            row = module_vec_to_row(FreeModuleVector(vec_comps), rank, hi_index)
            for rrow, piv in zip(hi_red, hi_piv):
                c = row[piv]
                if c:
                    row = [a - c * b for a, b in zip(row, rrow)]
            rows.append(row)
    # kernel of the composite map, column-indexed by (comp, lo-monomial)
    ncols_dom = rank * len(lo)
    mat = [[rows[j][i] for j in range(ncols_dom)]
           for i in range(rank * len(hi))]
    kernel_dim = ncols_dom - gauss_rank(mat, ncols_dom)
    rel_lo_dim = gauss_rank(rel_lo, ncols_dom)
    # Rel_d always sits inside the kernel; strict excess is a torsion class
    return kernel_dim > rel_lo_dim
