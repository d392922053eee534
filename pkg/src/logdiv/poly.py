"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials are immutable once constructed: every operation returns a new
object, so values may be shared freely across worker threads and caches.
Monomials are plain exponent tuples; term orders produce flat integer sort
keys so that terms can be heapified and compared cheaply.
"""

from __future__ import annotations

from fractions import Fraction

Mono = tuple


# ---------------------------------------------------------------------------
# monomial helpers
# ---------------------------------------------------------------------------

def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Mono, a: Mono) -> Mono:
    # caller guarantees a | b
    return tuple(x - y for x, y in zip(b, a))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: Mono) -> int:
    return sum(a)


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree d, in a fixed (lexicographic)
    enumeration order."""
    if d < 0:
        return []
    if nvars == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), d, nvars)
    return out


# ---------------------------------------------------------------------------
# term orders
# ---------------------------------------------------------------------------

class TermOrder:
    """Total multiplicative order on monomials.

    ``key`` maps a monomial to a flat tuple of ints; monomials compare the
    way their keys compare.  Keys of one order instance are only ever
    compared with each other.
    """

    name = "order"

    def key(self, m: Mono) -> tuple:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Degrevlex(TermOrder):
    """Degree reverse lexicographic; refines total degree, 1 is minimal."""

    name = "degrevlex"

    def key(self, m):
        return (sum(m), *(-e for e in reversed(m)))


class Lex(TermOrder):
    """Lexicographic with x1 > x2 > ...; admissible but not degree-refining."""

    name = "lex"

    def key(self, m):
        return m


class BlockElim(TermOrder):
    """Block order eliminating a subset of variables.

    The eliminated block is compared first (degrevlex within the block), so
    any monomial involving an eliminated variable beats every monomial free
    of them; Groebner bases under this order intersect to the subring.
    """

    def __init__(self, elim, nvars):
        self.elim = tuple(sorted(elim))
        keep = [i for i in range(nvars) if i not in set(self.elim)]
        self.keep = tuple(keep)
        self.name = f"block(elim={self.elim})"

    def key(self, m):
        e = tuple(m[i] for i in self.elim)
        k = tuple(m[i] for i in self.keep)
        return (sum(e), *(-x for x in reversed(e)), sum(k), *(-x for x in reversed(k)))


DEGREVLEX = Degrevlex()
LEX = Lex()


class ModuleOrder:
    """Total order on module terms ``(component, monomial)``."""

    name = "module-order"

    def key(self, term) -> tuple:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class TopOrder(ModuleOrder):
    """Term-over-position; monomials compared by the ring order, ties go to
    the lower component.  Optional shifts add per-component degree offsets
    (only meaningful over a degree-refining ring order)."""

    def __init__(self, ring_order=DEGREVLEX, shifts=None):
        self.ring_order = ring_order
        self.shifts = tuple(shifts) if shifts is not None else None
        self.name = f"top({ring_order.name})"

    def key(self, term):
        c, m = term
        k = self.ring_order.key(m)
        if self.shifts is not None:
            k = (k[0] + self.shifts[c], *k[1:])
        return (*k, -c)


class PotOrder(ModuleOrder):
    """Position-over-term.  With ``ascending=True`` higher component index
    wins, which realises an order refining e_1 < e_2 < ... < e_rank."""

    def __init__(self, ring_order=DEGREVLEX, ascending=True):
        self.ring_order = ring_order
        self.ascending = ascending
        self.name = f"pot({ring_order.name},{'asc' if ascending else 'desc'})"

    def key(self, term):
        c, m = term
        return (c if self.ascending else -c, *self.ring_order.key(m))


class SyzElimOrder(ModuleOrder):
    """Internal elimination order: components below ``split`` dominate the
    rest, term-over-position within each block.  Used for syzygy and lift
    computations via tagged generators."""

    def __init__(self, split, ring_order=DEGREVLEX):
        self.split = split
        self.ring_order = ring_order
        self.name = f"syzelim(split={split})"

    def key(self, term):
        c, m = term
        return (1 if c < self.split else 0, *self.ring_order.key(m), -c)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _coerce(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


class Polynomial:
    """Sparse polynomial: a finite map monomial -> nonzero Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None, _clean=True):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = {m: _coerce(c) for m, c in terms.items() if c != 0}
        else:
            self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars):
        return Polynomial(nvars, {}, _clean=False)

    @staticmethod
    def constant(nvars, c):
        c = _coerce(c)
        if c == 0:
            return Polynomial.zero(nvars)
        return Polynomial(nvars, {(0,) * nvars: c}, _clean=False)

    @staticmethod
    def one(nvars):
        return Polynomial.constant(nvars, 1)

    @staticmethod
    def variable(nvars, i):
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for {nvars} variables")
        expo = tuple(1 if j == i else 0 for j in range(nvars))
        return Polynomial(nvars, {expo: Fraction(1)}, _clean=False)

    @staticmethod
    def monomial(nvars, expo, coeff=1):
        coeff = _coerce(coeff)
        if len(expo) != nvars:
            raise ValueError("exponent length does not match variable count")
        if coeff == 0:
            return Polynomial.zero(nvars)
        return Polynomial(nvars, {tuple(expo): coeff}, _clean=False)

    # -- basic queries -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(mono_deg(m) == 0 for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def evaluate_at_origin(self) -> Fraction:
        return self.constant_term()

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def weighted_degree(self, weights) -> int:
        if not self.terms:
            return -1
        return max(sum(w * e for w, e in zip(weights, m)) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {mono_deg(m) for m in self.terms}
        return len(degs) <= 1

    def is_weighted_homogeneous(self, weights) -> bool:
        degs = {sum(w * e for w, e in zip(weights, m)) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self):
        """Decompose into [(degree, component)], ascending; empty for 0."""
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(mono_deg(m), {})[m] = c
        return [(d, Polynomial(self.nvars, t, _clean=False))
                for d, t in sorted(parts.items())]

    def lead_mono(self, order: TermOrder = DEGREVLEX) -> Mono:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        key = order.key
        return max(self.terms, key=key)

    def lead_coeff(self, order: TermOrder = DEGREVLEX) -> Fraction:
        return self.terms[self.lead_mono(order)]

    def sorted_terms(self, order: TermOrder = DEGREVLEX, reverse=True):
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError(
                f"ring dimension mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Polynomial(self.nvars, res, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()},
                          _clean=False)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _coerce(other)
            if c == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars,
                              {m: c * v for m, v in self.terms.items()},
                              _clean=False)
        self._check(other)
        res = {}
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = mono_mul(m1, m2)
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                elif m in res:
                    del res[m]
        return Polynomial(self.nvars, res, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if self.is_constant():
                return self.constant_term() == _coerce(other)
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return format_polynomial(self)

    # -- calculus ------------------------------------------------------------

    def deriv(self, i):
        res = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                res[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial(self.nvars, res, _clean=False)

    def partial(self, beta):
        """Apply the monomial differential operator d^beta."""
        p = self
        for i, k in enumerate(beta):
            for _ in range(k):
                if p.is_zero():
                    return p
                p = p.deriv(i)
        return p

    def subs(self, values):
        """Substitute values[i] (polynomials over a common ring) for x_i."""
        if len(values) != self.nvars:
            raise ValueError("substitution list length mismatch")
        tgt = values[0].nvars if values else 0
        result = Polynomial.zero(tgt)
        powers = [{} for _ in range(self.nvars)]
        for m, c in self.terms.items():
            term = Polynomial.constant(tgt, c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    cache[e] = values[i] ** e
                term = term * cache[e]
            result = result + term
        return result


# ---------------------------------------------------------------------------
# division
# ---------------------------------------------------------------------------

def divmod_single(g: Polynomial, h: Polynomial, order: TermOrder = DEGREVLEX):
    """Divide g by a single polynomial h: returns (q, r) with g = q*h + r
    where no term of r is divisible by the leading monomial of h.  Since a
    single polynomial is a Groebner basis of its principal ideal, r is the
    unique normal form and r = 0 iff h divides g exactly."""
    if h.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    g._check(h)
    key = order.key
    hm = h.lead_mono(order)
    hc = h.terms[hm]
    cur = dict(g.terms)
    q = {}
    r = {}
    while cur:
        m = max(cur, key=key)
        c = cur.pop(m)
        if c == 0:
            continue
        if mono_divides(hm, m):
            u = mono_div(m, hm)
            f = c / hc
            q[u] = q.get(u, 0) + f
            for m2, c2 in h.terms.items():
                if m2 == hm:
                    continue
                t = mono_mul(u, m2)
                cur[t] = cur.get(t, 0) - f * c2
        else:
            r[m] = c
    return (Polynomial(g.nvars, q), Polynomial(g.nvars, r))


def divide_exact(g: Polynomial, h: Polynomial, order: TermOrder = DEGREVLEX):
    """Exact quotient g / h, or None if h does not divide g."""
    q, r = divmod_single(g, h, order)
    if not r.is_zero():
        return None
    return q


# ---------------------------------------------------------------------------
# printing (the parser lives in grammar.py and round-trips this format)
# ---------------------------------------------------------------------------

_ALIAS = ("x", "y", "z", "w")


def var_name(i: int, nvars: int) -> str:
    if nvars <= 4:
        return _ALIAS[i]
    return f"x{i + 1}"


def _fmt_coeff(c: Fraction) -> str:
    return str(c)


def format_polynomial(p: Polynomial, order: TermOrder = DEGREVLEX) -> str:
    if p.is_zero():
        return "0"
    bits = []
    for m, c in p.sorted_terms(order):
        factors = []
        for i, e in enumerate(m):
            if e == 0:
                continue
            v = var_name(i, p.nvars)
            factors.append(v if e == 1 else f"{v}^{e}")
        mag = abs(c)
        if not factors:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_fmt_coeff(mag)] + factors)
        if not bits:
            bits.append(body if c > 0 else "-" + body)
        else:
            bits.append((" + " if c > 0 else " - ") + body)
    return "".join(bits)
