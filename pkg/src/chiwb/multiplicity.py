"""Hilbert-Samuel functions, tangent cones and point multiplicities."""

from itertools import product
from math import comb

from . import _engine as eng
from .errors import BudgetExhausted, NoStabilization, PreconditionError
from .groebner import (
    Ideal,
    extend_ring,
    fresh_names,
    hilbert_series,
    krull_dimension,
    leading_ideal,
    local_dimension,
    tangent_cone,
)
from .hilbert import HilbertSeries, hilbert_numerator
from .homology import PresentedModule, chi
from .poly import MonomialOrder, Polynomial, RingContext, substitute
from .reports import MultiplicityReport

__all__ = [
    "hs_length",
    "hs_function",
    "hs_multiplicity",
    "tangent_cone",
    "point_multiplicity",
    "transversality_check",
]

DEFAULT_CAP = 30
DEFAULT_WINDOW = 3
# reduction steps allowed for the associated graded series before falling
# back to a wider stability window
GR_BUDGET = 30_000
FALLBACK_WINDOW = 6


def _module(M):
    if isinstance(M, PresentedModule):
        return M
    return PresentedModule.from_ideal(M)


def _ideal_power(q, n):
    ring = q.ring
    gens = list(q.generators)
    if all(len(g) == 1 for g in gens):
        # monomial ideal: keep only minimal monomials of the power
        exps = {(0,) * ring.nvars}
        for _ in range(n):
            exps = {tuple(a + b for a, b in zip(e, g.lead_exp)) for e in exps for g in gens}
        return [Polynomial(ring, {e: 1}) for e in exps]
    out = Ideal(ring, [ring.one()])
    for _ in range(n):
        out = Ideal(ring, (out * q).groebner().elements)
    return list(out.generators)


def hs_length(M, q, n):
    """k-dimension of M / q^n M."""
    M = _module(M)
    if n == 0 or M.rank == 0:
        return 0
    power = _ideal_power(q, n)
    extra = [eng.poly_to_vec(g.terms, i) for i in range(M.rank) for g in power]
    N = PresentedModule(M.ring, M.rank, M.relations + extra, M.modulus)
    return N.k_dimension()


def hs_function(M, q, upto):
    """[ℓ(M/q^n M) for n = 0..upto]."""
    return [hs_length(M, q, n) for n in range(upto + 1)]


def _difference(values, n, d):
    """d-th backward difference of ``values`` at index n."""
    return sum((-1) ** k * comb(d, k) * values[n - k] for k in range(d + 1))


def _is_maximal(q):
    gens = {g for g in q.generators}
    return len(gens) == q.ring.nvars and gens == set(q.ring.gens())


def _postulation_start(I, d):
    """First n from which the d-th difference of n -> ℓ(A/(I + m^n)) is constant.

    The Hilbert function of the tangent cone agrees with its polynomial
    once n exceeds deg N(T) - D, for its reduced series N(T)/(1-T)^D.
    """
    return _start_from(hilbert_series(leading_ideal(tangent_cone(I))), d)


def _linear_change(q):
    """Coordinates in which an ideal of linear forms is (u_1, ..., u_r).

    Returns (new ring, images of the old variables, r), the u's first, or
    None when some generator is not a linear form.
    """
    ring, field = q.ring, q.ring.field
    n = ring.nvars
    unit = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    rows = []
    for g in q.generators:
        if any(sum(e) != 1 for e in g.terms):
            return None
        rows.append([g.terms.get(unit[j], 0) for j in range(n)])
    pivots = []
    for col in range(n):
        k = len(pivots)
        hit = next((i for i in range(k, len(rows)) if rows[i][col]), None)
        if hit is None:
            continue
        rows[k], rows[hit] = rows[hit], rows[k]
        inv = field.inv(rows[k][col])
        rows[k] = [field(a * inv) for a in rows[k]]
        for i in range(len(rows)):
            if i != k and rows[i][col]:
                c = rows[i][col]
                rows[i] = [field(a - c * b) for a, b in zip(rows[i], rows[k])]
        pivots.append(col)
    r = len(pivots)
    others = [v for j, v in enumerate(ring.variables) if j not in pivots]
    unames = fresh_names(ring, [f"u{k}" for k in range(1, r + 1)])
    new = RingContext(field, tuple(unames) + tuple(others))
    images = {v: new.gen(v) for v in others}
    for k, col in enumerate(pivots):
        # u_k = x_col + Σ a_j x_j over non-pivot j, solved for x_col
        img = new.gen(unames[k])
        for j, a in enumerate(rows[k]):
            if a and j != col:
                img = img - new.const(a) * new.gen(ring.variables[j])
        images[ring.variables[col]] = img
    return new, images, r


def _gr_series(M, q):
    """Hilbert series over k[u] of the associated graded module of M for q.

    Only for q generated by linear forms with M/qM of finite length;
    otherwise None.  The relations are moved to coordinates with
    q = (u), homogenized in the u-degree with h, and a basis is taken for
    an order comparing (u, h)-degree first and then preferring a higher
    power of h; the lowest u-forms of the dehomogenized basis generate the
    initial module.  Its standard monomials in the other variables lie in
    a finite box, and each box point contributes a monomial series in u.
    """
    change = _linear_change(q)
    if change is None or change[2] == 0:
        return None
    new, images, r = change
    field = new.field
    n = new.nvars
    rels = []
    for v in M.all_relations():
        vec = {}
        for pos in {t[0] for t in v}:
            img = substitute(Polynomial(M.ring, eng.vec_component(v, pos)), images, new)
            vec.update(eng.poly_to_vec(img.terms, pos))
        if vec:
            rels.append(vec)
    (h,) = fresh_names(new, ["h"])
    weights = ((1,) * (r + 1) + (0,) * (n - r), (1,) + (0,) * n)
    hring = extend_ring(new, [h], MonomialOrder("matrix", weights=weights))
    hom = []
    for v in rels:
        d = max(sum(e[:r]) for _, e in v)
        hom.append({(pos, (d - sum(e[:r]),) + e): c for (pos, e), c in v.items()})
    initial = []
    for _, g in eng.groebner(hom, hring, rank_one=False):
        deh = {}
        for (pos, e), c in g.items():
            t = (pos, e[1:])
            deh[t] = field(deh.get(t, 0) + c)
        deh = {t: c for t, c in deh.items() if c}
        if deh:
            low = min(sum(e[:r]) for _, e in deh)
            initial.append({t: c for t, c in deh.items() if sum(t[1][:r]) == low})
    leads = [[] for _ in range(M.rank)]
    for lt, _ in eng.groebner(initial, new, rank_one=False):
        leads[lt[0]].append(lt[1])
    series = HilbertSeries((), r)
    for L in leads:
        bounds = []
        for z in range(r, n):
            pure = [e[z] for e in L if not any(e[i] for i in range(n) if i != z)]
            if not pure:
                return None
            bounds.append(min(pure))
        for w in product(*(range(b) for b in bounds)):
            gens = [e[:r] for e in L if all(a <= b for a, b in zip(e[r:], w))]
            series = series + HilbertSeries(tuple(hilbert_numerator(gens, r)), r)
    return series


def _bounded_gr_series(M, q):
    try:
        with eng.step_budget(GR_BUDGET):
            return _gr_series(M, q)
    except BudgetExhausted:
        return None


def _start_from(series, d):
    H = series.reduced()
    return max(d, len(H.numerator) + d - H.denominator_exponent)


def hs_multiplicity(M, q, d, cap=DEFAULT_CAP, window=DEFAULT_WINDOW):
    """Stabilized d-th difference of n -> ℓ(M/q^n M); 0 when dim M < d.

    ``M`` is an ideal I (for A/I) or a presented module.  For an ideal,
    d below the local dimension is rejected; for a module that case shows
    up as a failure to stabilize.  The differences must agree ``window``
    times in a row.  When q is generated by linear forms the search only
    starts past the postulation index of the associated graded module
    (for an ideal and the maximal ideal, of the tangent cone), since the
    Hilbert function can plateau before it settles.  If that series is too
    expensive, or q is not linear, the window widens to ``FALLBACK_WINDOW``
    for modules and non-maximal q and the result is heuristic.
    """
    if d < 0:
        raise PreconditionError("d must be non-negative")
    mod = _module(M)
    if mod.rank == 0:
        return 0
    start = None
    if isinstance(M, Ideal):
        dim = local_dimension(M)
        if d < dim:
            raise PreconditionError(f"d = {d} is below the dimension {dim}")
        if dim < d:
            return 0
        if _is_maximal(q):
            start = _postulation_start(M, d)
    elif mod.hilbert_series().dimension < d:
        return 0
    if start is None:
        series = _bounded_gr_series(mod, q)
        if series is not None:
            start = _start_from(series, d)
        else:
            start, window = d, max(window, FALLBACK_WINDOW)
    cap = max(cap, start + window)
    values = []
    run = []
    for n in range(cap + 1):
        values.append(hs_length(mod, q, n))
        if n < start:
            continue
        diff = _difference(values, n, d)
        run = run + [diff] if run and run[-1] == diff else [diff]
        if len(run) >= window:
            return diff
    raise NoStabilization(f"d-th differences did not stabilize by n = {cap}")


def point_multiplicity(I):
    """Degree of the tangent cone at the origin, read from its Hilbert series."""
    if not I.is_in_maximal_ideal():
        raise PreconditionError("ideal must vanish at the origin")
    cone = tangent_cone(I)
    return hilbert_series(leading_ideal(cone)).multiplicity


def transversality_check(I, J):
    """χ against e(A/I)·e(A/J) together with the tangent-cone dimension."""
    report = chi(I, J)
    e1, e2 = point_multiplicity(I), point_multiplicity(J)
    cone = tangent_cone(I) + tangent_cone(J)
    t = krull_dimension(cone)
    transverse = t == 0
    flags = dict(report.classification)
    flags["transverse"] = transverse
    flags["equality"] = report.chi == e1 * e2
    flags["tennison_holds"] = (not transverse) or report.chi == e1 * e2
    witnesses = dict(report.witnesses)
    witnesses["cone_sum"] = cone
    witnesses["cone_dimension"] = t
    return MultiplicityReport(report.dims, report.tor_lengths, report.chi, (e1, e2), flags, witnesses)
