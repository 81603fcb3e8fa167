"""Ideals, reduced Groebner bases and the ideal-theoretic toolbox."""

from dataclasses import dataclass
from itertools import combinations

from . import _engine as eng
from .errors import PreconditionError, RingMismatch
from .hilbert import HilbertSeries, hilbert_numerator
from .poly import MonomialOrder, Polynomial, RingContext, lowest_form


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def lead_exponents(self):
        return [g.lead_exp for g in self.elements]


class Ideal:
    """An ideal given by generators, with a lazily cached reduced basis."""

    def __init__(self, ring, generators=()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g)
            if g:
                gens.append(g)
        self.generators = tuple(gens)
        self._gb = None
        self._cone = None

    @classmethod
    def parse(cls, ring, text):
        from .parse import parse_polynomial_list

        return cls(ring, parse_polynomial_list(text, ring))

    # -- Groebner data ---------------------------------------------------
    def _raw(self):
        if self._gb is None:
            vecs = [eng.poly_to_vec(g.terms) for g in self.generators]
            self._gb = eng.groebner(vecs, self.ring, rank_one=True)
        return self._gb

    def groebner(self):
        els = tuple(
            Polynomial(self.ring, eng.vec_component(v, 0)) for _, v in self._raw()
        )
        return GroebnerBasis(self.ring.order, els)

    def reduce(self, f):
        f = self.ring(f)
        r = eng.reduce_full(eng.poly_to_vec(f.terms), self._raw(), self.ring)
        return Polynomial(self.ring, eng.vec_component(r, 0))

    def __contains__(self, f):
        return not self.reduce(f)

    def contains_ideal(self, other):
        return all(g in self for g in other.generators)

    def is_unit(self):
        return any(not any(lt[1]) for lt, _ in self._raw())

    def is_zero(self):
        return not self.generators

    def lead_exponents(self):
        return [lt[1] for lt, _ in self._raw()]

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring.variables != self.ring.variables or other.ring.field != self.ring.field:
            return False
        return self.contains_ideal(other) and other.contains_ideal(self)

    __hash__ = None

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __pow__(self, k):
        out = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            out = Ideal(self.ring, out.groebner().elements) * self
        return out

    def in_ring(self, target):
        return Ideal(target, [g.rename(target) if g.ring.variables != target.variables else target(g) for g in self.generators])

    def is_in_maximal_ideal(self):
        """All generators vanish at the origin."""
        return all(not g.constant_term() for g in self.generators)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self} in {self.ring}"


def groebner(I):
    return I.groebner()


def _check(I, J):
    if I.ring != J.ring:
        if I.ring.variables == J.ring.variables and I.ring.field == J.ring.field:
            return
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def ideal_sum(I, J):
    _check(I, J)
    return Ideal(I.ring, I.generators + tuple(I.ring(g) for g in J.generators))


def ideal_product(I, J):
    _check(I, J)
    return Ideal(I.ring, [f * I.ring(g) for f in I.generators for g in J.generators])


def extend_ring(ring, new_vars, order, first=True, base=()):
    names = tuple(new_vars) + ring.variables if first else ring.variables + tuple(new_vars)
    clash = set(new_vars) & set(ring.variables)
    if clash:
        raise PreconditionError(f"variable names already in use: {sorted(clash)}")
    return RingContext(ring.field, names, order, base)


def fresh_names(ring, stems):
    out = []
    used = set(ring.variables)
    for stem in stems:
        name, k = stem, 0
        while name in used:
            k += 1
            name = f"{stem}{k}"
        used.add(name)
        out.append(name)
    return out


def eliminate(polys, ring, k):
    """Generators of (polys) intersected with the last ``nvars - k`` variables.

    ``ring`` must list the variables to eliminate first; the result lives in
    the ring of the remaining variables (same order of names, grevlex).
    """
    elim_ring = ring.with_order(MonomialOrder("block", block=k))
    vecs = [eng.poly_to_vec(elim_ring(p).terms) for p in polys]
    G = eng.groebner(vecs, elim_ring, rank_one=True)
    rest = RingContext(ring.field, ring.variables[k:])
    out = []
    for lt, v in G:
        if not any(lt[1][:k]):
            terms = {e[k:]: c for (_, e), c in v.items()}
            out.append(Polynomial(rest, terms))
    return out


def intersection(I, J):
    """I ∩ J via one auxiliary variable t: (tI + (1-t)J) ∩ k[x]."""
    _check(I, J)
    ring = I.ring
    (t,) = fresh_names(ring, ["t"])
    big = extend_ring(ring, [t], ring.order)
    tv = big.gen(t)
    polys = [tv * f.rename(big) for f in I.generators]
    polys += [(1 - tv) * big(J.ring(g).rename(big)) for g in J.generators]
    if not I.generators or not J.generators:
        return Ideal(ring, [])
    out = eliminate(polys, big, 1)
    return Ideal(ring, [ring(p.rename(ring)) for p in out])


def quotient_by_element(I, f):
    """I : f, read off the syzygies of the row (f, g_1, ..., g_r)."""
    ring = I.ring
    f = ring(f)
    if not f:
        return Ideal(ring, [ring.one()])
    cols = [eng.poly_to_vec(f.terms)] + [eng.poly_to_vec(g.terms) for g in I.groebner().elements]
    syz = eng.syzygies(cols, 1, ring)
    return Ideal(ring, [Polynomial(ring, eng.vec_component(s, 0)) for s in syz])


def quotient(I, J):
    _check(I, J)
    if not J.generators:
        return Ideal(I.ring, [I.ring.one()])
    out = None
    for g in J.generators:
        q = quotient_by_element(I, g)
        out = q if out is None else intersection(out, q)
    return out


def saturation_by_element(I, f, method="iterate"):
    ring = I.ring
    f = ring(f)
    if method == "rabinowitsch":
        (y,) = fresh_names(ring, ["y"])
        big = extend_ring(ring, [y], ring.order)
        polys = [g.rename(big) for g in I.generators] + [1 - big.gen(y) * f.rename(big)]
        return Ideal(ring, [ring(p.rename(ring)) for p in eliminate(polys, big, 1)])
    current = I
    while True:
        nxt = quotient_by_element(current, f)
        if nxt == current:
            return current
        current = nxt


def saturation(I, J, method="iterate"):
    """I : J^∞ as the intersection of the element saturations I : g^∞."""
    _check(I, J)
    out = None
    for g in J.generators:
        s = saturation_by_element(I, g, method)
        out = s if out is None else intersection(out, s)
    return out if out is not None else Ideal(I.ring, [I.ring.one()])


def ideal_ops(I, J, op):
    ops = {
        "sum": ideal_sum,
        "product": ideal_product,
        "intersection": intersection,
        "quotient": quotient,
        "saturation": saturation,
    }
    return ops[op](I, J)


def maximal_ideal(ring, point=None):
    if point is None:
        return Ideal(ring, ring.gens())
    return Ideal(ring, [x - c for x, c in zip(ring.gens(), point)])


def _independent_dimension(leads, n):
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if not any(all(i in s for i, a in enumerate(e) if a) for e in leads):
                return size
    return -1


def krull_dimension(I):
    """Dimension of k[x]/I from a maximal independent set mod the lead ideal."""
    grevlex = I.ring.with_order(MonomialOrder())
    J = I if I.ring.order.kind == "grevlex" else I.in_ring(grevlex)
    if J.is_unit():
        raise PreconditionError("the unit ideal has no dimension")
    return _independent_dimension(J.lead_exponents(), I.ring.nvars)


def hilbert_series(M):
    """Hilbert series of k[x]/M for a monomial ideal M."""
    n = M.ring.nvars
    exps = []
    for g in M.generators:
        if len(g) != 1:
            raise PreconditionError(f"{g} is not a monomial")
        exps.append(g.lead_exp)
    return HilbertSeries(tuple(hilbert_numerator(exps, n)), n)


def leading_ideal(I):
    ring = I.ring
    return Ideal(ring, [Polynomial(ring, {e: 1}) for e in I.lead_exponents()])


def support_at_origin(I):
    """V(I) is contained in the origin, i.e. I : (x_1..x_n)^∞ = (1)."""
    if I.is_unit():
        return True
    for x in I.ring.gens():
        if not saturation_by_element(I, x, "rabinowitsch").is_unit():
            return False
    return True


def _tangent_order(n):
    return MonomialOrder("matrix", weights=((1,) * (n + 1), (1,) + (0,) * n))


def tangent_cone(I):
    """Ideal of lowest forms of the localization of I at the origin.

    Generators are homogenized with a fresh variable h and a basis is
    computed for an order that compares total degree first and then prefers
    a higher power of h; dehomogenized basis elements form a standard basis
    for the local degree order, whose lowest forms generate the cone.
    """
    ring = I.ring
    if not I.generators:
        return Ideal(ring, [])
    if I._cone is None:
        I._cone = _tangent_cone(I)
    return I._cone


def _tangent_cone(I):
    ring = I.ring
    (h,) = fresh_names(ring, ["h"])
    hring = extend_ring(ring, [h], _tangent_order(ring.nvars))
    vecs = []
    for g in I.generators:
        d = g.total_degree()
        terms = {(d - sum(e),) + e: c for e, c in g.terms.items()}
        vecs.append(eng.poly_to_vec(Polynomial(hring, terms).terms))
    G = eng.groebner(vecs, hring, rank_one=True)
    forms = []
    for _, v in G:
        terms = {}
        for (_, e), c in v.items():
            terms[e[1:]] = terms.get(e[1:], 0) + c
        f = Polynomial(ring, terms)
        if f:
            forms.append(lowest_form(f))
    return Ideal(ring, forms)


def local_dimension(I):
    """Dimension of the localization of k[x]/I at the origin."""
    if not I.is_in_maximal_ideal() and I.is_unit():
        raise PreconditionError("ideal is the unit ideal")
    tc = tangent_cone(I)
    if tc.is_unit():
        raise PreconditionError("origin is not on V(I)")
    return krull_dimension(tc)
