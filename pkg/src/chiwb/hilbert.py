"""Hilbert series of monomial ideals by pivot recursion.

Univariate integer polynomials are coefficient lists, lowest degree first.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import InfiniteLength


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def psub(a, b):
    return padd(a, [-c for c in b])


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def divide_one_minus_t(a):
    """Exact quotient of ``a`` by ``1 - T``, or None when it does not divide."""
    if not a:
        return []
    if sum(a) != 0:
        return None
    # a = (1 - T) q  =>  q_i = a_0 + ... + a_i
    q, acc = [], 0
    for c in a[:-1]:
        acc += c
        q.append(acc)
    return _trim(q)


def minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


@lru_cache(maxsize=65536)
def _numerator(gens):
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return ()
    # pairwise coprime supports: product formula
    seen = set()
    coprime = True
    for g in gens:
        supp = {i for i, a in enumerate(g) if a}
        if supp & seen:
            coprime = False
            break
        seen |= supp
    if coprime:
        out = [1]
        for g in gens:
            out = pmul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return tuple(out)
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    i = max(range(n), key=lambda k: counts[k])
    e = min(g[i] for g in gens if g[i])
    pivot = tuple(e if k == i else 0 for k in range(n))
    plus = minimalize([g for g in gens if g[i] < e] + [pivot])
    colon = minimalize([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens])
    left = _numerator(tuple(plus))
    right = _numerator(tuple(colon))
    return tuple(padd(list(left), [0] * e + list(right)))


def hilbert_numerator(gens, nvars):
    """Numerator N with HS(S/I) = N(T)/(1-T)^nvars for monomial generators."""
    gens = [tuple(g) for g in gens]
    if any(len(g) != nvars for g in gens):
        raise ValueError("exponent length mismatch")
    return list(_numerator(tuple(minimalize(gens))))


@dataclass(frozen=True)
class HilbertSeries:
    """The rational function ``numerator(T) / (1 - T)^denominator_exponent``."""

    numerator: tuple
    denominator_exponent: int

    def reduced(self):
        num, d = list(self.numerator), self.denominator_exponent
        if not num:
            return HilbertSeries((), 0)
        while d > 0:
            q = divide_one_minus_t(num)
            if q is None:
                break
            num, d = q, d - 1
        return HilbertSeries(tuple(num), d)

    @property
    def dimension(self):
        """Pole order at T = 1 (Krull dimension of the quotient); -1 for zero."""
        r = self.reduced()
        return r.denominator_exponent if r.numerator else -1

    @property
    def multiplicity(self):
        return sum(self.reduced().numerator)

    def coefficients(self, upto):
        """Expansion coefficients of T^0 .. T^upto."""
        coeffs = list(self.numerator) + [0] * (upto + 1)
        coeffs = coeffs[: upto + 1]
        for _ in range(self.denominator_exponent):
            acc = 0
            for i in range(upto + 1):
                acc += coeffs[i]
                coeffs[i] = acc
        return coeffs

    def __add__(self, other):
        d = max(self.denominator_exponent, other.denominator_exponent)
        a = pmul(list(self.numerator), _one_minus_t_pow(d - self.denominator_exponent))
        b = pmul(list(other.numerator), _one_minus_t_pow(d - other.denominator_exponent))
        return HilbertSeries(tuple(padd(a, b)), d)

    def __sub__(self, other):
        neg = HilbertSeries(tuple(-c for c in other.numerator), other.denominator_exponent)
        return self + neg

    def total(self):
        """Sum of all coefficients; raises InfiniteLength unless a polynomial."""
        r = self.reduced()
        if r.denominator_exponent > 0 and r.numerator:
            raise InfiniteLength("Hilbert series is not a polynomial")
        return sum(r.numerator)


def _one_minus_t_pow(k):
    out = [1]
    for _ in range(k):
        out = pmul(out, [1, -1])
    return out


def module_series(G, rank, nvars):
    """Hilbert series of F/LT(U) from a module Groebner basis ``G``."""
    leads = [[] for _ in range(rank)]
    for lt, _ in G:
        leads[lt[0]].append(lt[1])
    num = []
    for gens in leads:
        num = padd(num, hilbert_numerator(gens, nvars))
    return HilbertSeries(tuple(num), nvars)
