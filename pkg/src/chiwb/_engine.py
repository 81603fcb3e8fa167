"""Raw Groebner machinery on sparse module vectors.

A vector is a dict ``{(pos, exp): coeff}`` with nonzero coefficients; an
ideal element is a vector living entirely in position 0.  Terms are
compared term-over-position (the ring's monomial order first, then a
smaller position index is larger), which keeps the order degree compatible
for graded rings.  Passing ``split`` puts every position ``>= split`` in a
strictly smaller block; syzygy computations use this to eliminate the
original rows.  Everything here is internal; the
public layer wraps these dicts in :class:`Polynomial`, :class:`Ideal` and
:class:`PresentedModule`.
"""

from contextlib import contextmanager
from contextvars import ContextVar
from heapq import heapify, heappop, heappush
from operator import add as add_int, le

from .errors import BudgetExhausted

DEFAULT_BUDGET = 10**7

_budget = ContextVar("chiwb_budget", default=None)


class Budget:
    def __init__(self, steps):
        self.limit = steps
        self.remaining = steps

    def spend(self, n=1):
        self.remaining -= n
        if self.remaining < 0:
            raise BudgetExhausted(f"reduction step budget of {self.limit} exhausted")


@contextmanager
def step_budget(steps=DEFAULT_BUDGET):
    """Cap the number of reduction steps performed inside the block.

    Steps spent inside a nested block are also charged to the outer one.
    """
    parent = _budget.get()
    inner = Budget(steps)
    token = _budget.set(inner)
    try:
        yield inner
    finally:
        _budget.reset(token)
        if parent is not None:
            parent.spend(inner.limit - max(inner.remaining, 0))


def term_key(ring, split=None):
    """Key of a module term (pos, exp) under the order named by ``split``.

    ``None`` or an int is position-last order, with positions ``>= split``
    below everything else.  ``("schreyer", prev, leads)`` is the order
    induced by elements with lead terms ``leads`` under the order ``prev``:
    x^a e_p is compared through x^a·leads[p], then by position.
    """
    cache = ring._keys.setdefault(("module", split), {})
    if isinstance(split, tuple):
        _, prev, leads = split
        ptk = term_key(ring, prev)

        def stk(t):
            k = cache.get(t)
            if k is None:
                lp, le = leads[t[0]]
                k = cache[t] = ptk((lp, tuple(map(add_int, le, t[1])))) + (-t[0],)
            return k

        return stk
    okey = ring.key

    def tk(t):
        k = cache.get(t)
        if k is None:
            low = split is not None and t[0] >= split
            k = cache[t] = (not low,) + okey(t[1]) + (-t[0],)
        return k

    return tk


def lead(v, tk):
    return max(v, key=tk)


def divides(a, b):
    """Exponent ``a`` divides exponent ``b``."""
    return all(map(le, a, b))


def scale(v, c, p):
    if p:
        return {t: a * c % p for t, a in v.items()}
    return {t: a * c for t, a in v.items()}


def make_monic(v, field, tk):
    t = lead(v, tk)
    c = v[t]
    if c == 1:
        return t, v
    return t, scale(v, field.inv(c), field.characteristic)


def axpy(v, c, shift, g, p):
    """In place: ``v -= c * x^shift * g``."""
    for (gp, ge), gc in g.items():
        nt = (gp, tuple(a + b for a, b in zip(ge, shift)))
        nc = v.get(nt, 0) - c * gc
        if p:
            nc %= p
        if nc:
            v[nt] = nc
        else:
            v.pop(nt, None)


def mul_poly(v, poly, p):
    """Product of a vector with a polynomial given as ``{exp: coeff}``."""
    out = {}
    for (pos, e), c in v.items():
        for f, d in poly.items():
            t = (pos, tuple(a + b for a, b in zip(e, f)))
            nc = out.get(t, 0) + c * d
            if p:
                nc %= p
            if nc:
                out[t] = nc
            else:
                out.pop(t, None)
    return out


def add(v, w, p, c=1):
    """``v + c*w`` as a new vector."""
    out = dict(v)
    for t, a in w.items():
        nc = out.get(t, 0) + c * a
        if p:
            nc %= p
        if nc:
            out[t] = nc
        else:
            out.pop(t, None)
    return out


def find_reducer(t, reducers):
    pos, e = t
    for lt, g in reducers:
        if lt[0] == pos and divides(lt[1], e):
            return lt, g
    return None


def _heap_key(ring, split):
    """Cached negated term key, so that heapq pops the largest term first."""
    cache = ring._keys.setdefault(("heap", split), {})
    tk = term_key(ring, split)

    def hk(t):
        k = cache.get(t)
        if k is None:
            k = cache[t] = tuple(-a for a in tk(t))
        return k

    return hk


def reduce_full(v, reducers, ring, split=None, stop=None, quot=None, index=None):
    """Remainder of ``v`` on full division by monic ``reducers`` [(lt, vec)].

    Terms are reduced largest first in the order with block ``split``.
    Terms at positions ``>= stop`` are never reduced; once the leading term
    lies there the rest of ``v`` is copied to the remainder unchanged.
    With ``quot`` the quotients are accumulated there as
    ``{(index[id(reducer)], shift): coeff}``.
    """
    if not v or not reducers:
        return dict(v)
    hk = _heap_key(ring, split)
    p = ring.field.characteristic
    budget = _budget.get()
    v = dict(v)
    heap = [(hk(t), t) for t in v]
    heapify(heap)
    rem = {}
    while heap:
        _, t = heappop(heap)
        c = v.get(t)
        if c is None:
            continue
        if stop is not None and t[0] >= stop:
            rem.update(v)
            break
        hit = find_reducer(t, reducers)
        if hit is None:
            rem[t] = v.pop(t)
            continue
        if budget is not None:
            budget.spend()
        lt, g = hit
        shift = tuple(a - b for a, b in zip(t[1], lt[1]))
        if quot is not None:
            k = (index[id(g)], shift)
            nq = quot.get(k, 0) + c
            quot[k] = nq % p if p else nq
        for (gp, ge), gc in g.items():
            nt = (gp, tuple(a + b for a, b in zip(ge, shift)))
            old = v.get(nt)
            nc = (old or 0) - c * gc
            if p:
                nc %= p
            if nc:
                v[nt] = nc
                if old is None:
                    heappush(heap, (hk(nt), nt))
            elif old is not None:
                del v[nt]
    return rem


def groebner(vectors, ring, *, rank_one=None, split=None, collect=False, record=False):
    """Reduced Groebner basis (monic, sorted by lead descending) of ``vectors``.

    Buchberger with the normal selection strategy and the Gebauer-Moeller
    update; the coprime-lead criterion is used only for ideals.  With
    ``collect`` (which needs ``split``) vectors whose lead falls in the low
    block are returned instead of inserted: the result is ``(basis, low)``
    and ``low`` generates the low-block part of the submodule.

    With ``record`` the result is ``(elements, relations)``: every inserted
    element in insertion order (monic, not interreduced) and the relations
    among them read off from the S-pair reductions, which generate all
    relations (Schreyer).  The coprime criterion is off in this mode.
    """
    field = ring.field
    p = field.characteristic
    tk = term_key(ring, split)
    vectors = [v for v in vectors if v]
    if rank_one is None:
        rank_one = all(t[0] == 0 for v in vectors for t in v)
    if record:
        rank_one = False
    basis = []
    current = []
    pairs = {}

    def lcm(a, b):
        return (a[0], tuple(map(max, a[1], b[1])))

    def coprime(a, b):
        return rank_one and not any(x and y for x, y in zip(a[1], b[1]))

    def tdiv(a, b):
        return a[0] == b[0] and divides(a[1], b[1])

    def insert(vec):
        lt_h, h = make_monic(vec, field, tk)
        ih = len(basis)
        basis.append((lt_h, h))
        index[id(h)] = ih
        cand = [g for g in current if basis[g][0][0] == lt_h[0]]
        lcms = {g: lcm(lt_h, basis[g][0]) for g in cand}
        kept = []
        while cand:
            g = cand.pop()
            L = lcms[g]
            if coprime(lt_h, basis[g][0]) or (
                not any(divides(lcms[c][1], L[1]) for c in cand)
                and not any(divides(lcms[d][1], L[1]) for d in kept)
            ):
                kept.append(g)
        for key in list(pairs):
            L = pairs[key]
            if tdiv(lt_h, L):
                i, j = key
                if lcm(basis[i][0], lt_h) != L and lcm(basis[j][0], lt_h) != L:
                    del pairs[key]
        for g in kept:
            if not coprime(lt_h, basis[g][0]):
                pairs[(g, ih)] = lcms[g]
        current[:] = [g for g in current if not tdiv(lt_h, basis[g][0])] + [ih]

    def reducers():
        return [basis[g] for g in current]

    stop = split if collect else None
    low = []
    index = {}
    relations = []

    def consider(r):
        if not r:
            return
        if collect and lead(r, tk)[0] >= split:
            low.append(r)
        else:
            insert(r)

    for v in vectors:
        consider(reduce_full(v, reducers(), ring, split, stop))
    while pairs:
        key = min(pairs, key=lambda k: (sum(pairs[k][1]), tk(pairs[k])))
        L = pairs.pop(key)
        (li, gi), (lj, gj) = basis[key[0]], basis[key[1]]
        si = tuple(a - b for a, b in zip(L[1], li[1]))
        sj = tuple(a - b for a, b in zip(L[1], lj[1]))
        s = {}
        axpy(s, -1, si, gi, p)
        axpy(s, 1, sj, gj, p)
        if not record:
            consider(reduce_full(s, reducers(), ring, split, stop))
            continue
        quot = {}
        r = reduce_full(s, reducers(), ring, split, quot=quot, index=index)
        rel = {(key[0], si): 1}
        rel[(key[1], sj)] = p - 1 if p else -1
        if r:
            quot[(len(basis), (0,) * ring.nvars)] = r[lead(r, tk)]
            insert(r)
        for t, c in quot.items():
            nc = rel.get(t, 0) - c
            if p:
                nc %= p
            if nc:
                rel[t] = nc
            else:
                rel.pop(t, None)
        relations.append(rel)
    if record:
        return basis, relations
    if collect:
        return [basis[g] for g in current], low
    # interreduce
    final = reducers()
    out = []
    for idx, (lt, g) in enumerate(final):
        others = final[:idx] + final[idx + 1:]
        tail = {t: c for t, c in g.items() if t != lt}
        r = reduce_full(tail, others, ring, split)
        r[lt] = 1
        out.append((lt, r))
    out.sort(key=lambda x: tk(x[0]), reverse=True)
    return out


def syzygies(columns, nrows, ring, extra=()):
    """Generators of the module of relations among ``columns`` in A^nrows.

    Relations are taken modulo the submodule spanned by ``extra``.  The
    result generates the relation module, as vectors with positions
    ``0..len(columns)-1``.
    """
    zero = (0,) * ring.nvars
    aug = []
    for j, col in enumerate(columns):
        v = dict(col)
        v[(nrows + j, zero)] = 1
        aug.append(v)
    _, low = groebner(aug + [dict(e) for e in extra if e], ring, rank_one=False, split=nrows, collect=True)
    return [{(pos - nrows, e): c for (pos, e), c in g.items()} for g in low]


def schreyer(vectors, ring, order=None):
    """Groebner elements [(lead, vec)] of ``vectors`` and their relations.

    ``order`` is passed to ``term_key``; feeding back
    ``("schreyer", order, leads)`` makes the relations a Groebner basis
    of their own module, which keeps the next step of a resolution cheap.
    """
    return groebner(vectors, ring, split=order, rank_one=False, record=True)


def lead_monomials_by_position(G, rank):
    """Lead exponents of a Groebner basis grouped by position."""
    out = [[] for _ in range(rank)]
    for lt, _ in G:
        out[lt[0]].append(lt[1])
    return out


def shift_positions(v, offset):
    return {(pos + offset, e): c for (pos, e), c in v.items()}


def poly_to_vec(terms, pos=0):
    return {(pos, e): c for e, c in terms.items()}


def vec_component(v, pos):
    return {e: c for (q, e), c in v.items() if q == pos}
