"""Blowing up the origin: affine charts, strict transforms and χ on the blowup.

Chart i of the blowup of affine d-space at the origin has coordinates
``v`` and ``u_j`` (j != i, 1-based), with x_i = v and x_j = v·u_j; for
d = 2 the single affine coordinate is called ``u``.  A point of the
exceptional divisor has homogeneous coordinates [h_1 : ... : h_d] with
h_i = 1 and h_j = u_j, and is counted in the chart of its first nonzero
homogeneous coordinate.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AssertionFailed,
    PreconditionError,
    ResidualSupport,
    SupportNotFinite,
)
from .groebner import (
    Ideal,
    krull_dimension,
    maximal_ideal,
    saturation,
    saturation_by_element,
    support_at_origin,
    tangent_cone,
)
from .homology import PresentedModule, chi, homology, tor_setup
from .multiplicity import hs_length, point_multiplicity
from .poly import RingContext, lowest_form, substitute
from .reports import BlowupIntersectionReport, ChartPoint, CheckReport


@dataclass(frozen=True)
class BlowupChart:
    index: int
    source: RingContext
    chart_ring: RingContext
    substitution: dict

    @property
    def d(self):
        return self.source.nvars

    @property
    def exceptional(self):
        return self.chart_ring.gen("v")

    @property
    def name(self):
        return self.source.variables[self.index - 1]

    def coordinate_names(self):
        """Chart coordinates other than v, keyed by original (1-based) index."""
        names = self.chart_ring.variables[1:]
        others = [j for j in range(1, self.d + 1) if j != self.index]
        return dict(zip(others, names))

    def apply(self, f):
        return substitute(self.source(f), self.substitution, self.chart_ring)


def chart(source, i):
    """Chart ``i`` (1-based) of the blowup of the origin of ``source``.

    ``source`` is a ring (or the number of variables, for x_1..x_d over QQ).
    """
    if isinstance(source, int):
        source = RingContext(variables=tuple(f"x_{k}" for k in range(1, source + 1)))
    d = source.nvars
    if not 1 <= i <= d:
        raise PreconditionError(f"chart index {i} out of range 1..{d}")
    if d == 2:
        unames = ["u"]
    else:
        unames = [f"u_{j}" for j in range(1, d + 1) if j != i]
    R = RingContext(source.field, ("v",) + tuple(unames))
    v = R.gen("v")
    sub = {}
    it = iter(unames)
    for j, name in enumerate(source.variables, start=1):
        sub[name] = v if j == i else v * R.gen(next(it))
    return BlowupChart(i, source, R, sub)


def charts(source):
    return [chart(source, i) for i in range(1, source.nvars + 1)]


def chart_index(source, key):
    """Chart index from a variable name or a 1-based integer."""
    if isinstance(key, int):
        if not 1 <= key <= source.nvars:
            raise PreconditionError(f"chart index {key} out of range")
        return key
    return source.index(key) + 1


def strict_transform(I, c):
    """Substitute the generators into the chart and saturate by v."""
    subs = Ideal(c.chart_ring, [c.apply(g) for g in I.generators])
    if not subs.generators:
        return subs
    return saturation_by_element(subs, c.exceptional)


def vbar_locus(f, c):
    """(v, f_sub / v) for an f of order exactly one."""
    f = c.source(f)
    if not f or f.constant_term() or lowest_form(f).total_degree() != 1:
        raise PreconditionError(f"{f} is not of order exactly one")
    g = c.apply(f)
    reduced = g.divide_by_monomial((1,) + (0,) * (c.chart_ring.nvars - 1))
    return Ideal(c.chart_ring, [c.exceptional, reduced])


def _translate(p, point, ring):
    return substitute(p, {name: ring.gen(name) + a for name, a in zip(ring.variables, point)}, ring)


def _field_point(ring, point):
    if len(point) != ring.nvars:
        raise PreconditionError(f"point needs {ring.nvars} coordinates, got {len(point)}")
    return [ring.field(Fraction(a)) for a in point]


def ramification_check(f, c, point):
    """Order of f_sub at ``point`` is at least two; checked against vbar_locus."""
    R = c.chart_ring
    point = _field_point(R, point)
    g = _translate(c.apply(f), point, R)
    ramified = not g or (not g.constant_term() and lowest_form(g).total_degree() >= 2)
    in_locus = all(not h.evaluate(point) for h in vbar_locus(f, c).generators)
    if ramified != in_locus:
        raise AssertionFailed(
            f"order test says {ramified} but vbar membership says {in_locus}",
            CheckReport("ramification", False, {"order_at_least_two": ramified, "in_vbar": in_locus}),
        )
    return ramified


def homogeneous_coordinates(c, point):
    names = c.coordinate_names()
    coords = dict(zip(c.chart_ring.variables, point))
    return [1 if j == c.index else coords[names[j]] for j in range(1, c.d + 1)]


def convert_point(c, point, target):
    """Coordinates in chart ``target`` of a point of chart ``c``."""
    h = homogeneous_coordinates(c, point)
    hk = h[target.index - 1]
    if not hk:
        raise PreconditionError("point does not lie in the target chart")
    field = target.chart_ring.field
    inv = field.inv(hk)
    names = target.coordinate_names()
    coords = {names[j]: h[j - 1] * inv for j in names}
    rest = tuple(field(coords[n]) for n in target.chart_ring.variables[1:])
    return (field(point[0] * hk),) + rest


def canonical_point(c, point, all_charts):
    h = homogeneous_coordinates(c, point)
    k = next(j for j, a in enumerate(h, start=1) if a)
    target = all_charts[k - 1]
    if k == c.index:
        return target, tuple(point)
    return target, convert_point(c, point, target)


def _local_length(T, m):
    """Length of the localization at the origin of a finite-length module."""
    if T.rank == 0:
        return 0
    prev = None
    n = 1
    while True:
        cur = hs_length(T, m, n)
        if cur == prev:
            return cur
        prev, n = cur, n + 1


def local_chi(I, J):
    """χ of the localizations at the origin; other support points are ignored."""
    S = I + J
    if support_at_origin(S):
        return chi(I, J).chi
    ring = I.ring
    m = maximal_ideal(ring)
    M, N = PresentedModule.from_ideal(I), PresentedModule.from_ideal(J)
    F, other = tor_setup(M, N, ring.nvars + 1)
    total = 0
    for i in range(min(F.length, ring.nvars) + 1):
        total += (-1) ** i * _local_length(homology(F, other, i), m)
    return total


def _joint(I, J, c):
    return strict_transform(I, c) + strict_transform(J, c)


def blowup_chi(I, J, points=()):
    """Σ of local χ of the strict transforms over the supplied points.

    ``points`` is a list of ``(chart, coordinates)`` with chart a source
    variable name or 1-based index, coordinates ordered as the chart ring
    (v first).  The points must exhaust the joint support in every chart.
    """
    source = I.ring
    J = Ideal(source, J.generators)
    all_charts = charts(source)
    joints = [_joint(I, J, c) for c in all_charts]
    canon = []
    seen = set()
    for key, coords in points:
        c = all_charts[chart_index(source, key) - 1]
        pt = tuple(_field_point(c.chart_ring, coords))
        target, cpt = canonical_point(c, pt, all_charts)
        if (target.index, cpt) in seen:
            continue
        seen.add((target.index, cpt))
        canon.append((target, cpt))
    for c, S in zip(all_charts, joints):
        if S.is_unit():
            continue
        if krull_dimension(S) > 0:
            raise SupportNotFinite(f"strict transforms meet in positive dimension in chart {c.name}")
        residual = S
        for target, pt in canon:
            if homogeneous_coordinates(target, pt)[c.index - 1]:
                q = pt if target is c else convert_point(target, pt, c)
                residual = saturation(residual, maximal_ideal(c.chart_ring, q))
        if not residual.is_unit():
            raise ResidualSupport(
                f"supplied points do not exhaust the support in chart {c.name} "
                "(add the missing points, or extend base field if they are not rational)"
            )
    chart_points = []
    for c, pt in canon:
        S = joints[c.index - 1]
        if any(g.evaluate(pt) for g in S.generators):
            raise PreconditionError(f"point {list(map(str, pt))} is not on both strict transforms")
        R = c.chart_ring
        Ii = Ideal(R, [_translate(g, pt, R) for g in strict_transform(I, c).generators])
        Ji = Ideal(R, [_translate(g, pt, R) for g in strict_transform(J, c).generators])
        chart_points.append(ChartPoint(c.name, pt, local_chi(Ii, Ji)))
    total = sum(p.local_chi for p in chart_points)
    return BlowupIntersectionReport(chart_points, total)


def fulton_verify(I, J, points=()):
    """χ(I, J) = e(A/I)·e(A/J) + χ on the blowup."""
    lhs = chi(I, J).chi
    e1, e2 = point_multiplicity(I), point_multiplicity(Ideal(I.ring, J.generators))
    report = blowup_chi(I, J, points)
    report.fulton_lhs = lhs
    report.fulton_rhs = e1 * e2 + report.total_blowup_chi
    report.e_values = (e1, e2)
    if report.fulton_lhs != report.fulton_rhs:
        raise AssertionFailed(f"χ = {lhs} but e·e + blowup χ = {report.fulton_rhs}", report)
    return report


def corollary_d_check(I, J, points=()):
    """When χ = e·e with cone intersection of dimension ≤ 1, the blowup sees nothing."""
    J = Ideal(I.ring, J.generators)
    cone = tangent_cone(I) + tangent_cone(J)
    t = krull_dimension(cone)
    if t > 1:
        raise PreconditionError(f"tangent cones meet in dimension {t} > 1")
    report = fulton_verify(I, J, points)
    e1, e2 = report.e_values
    lhs = report.fulton_lhs
    values = {
        "chi": lhs,
        "e_values": [e1, e2],
        "cone_dimension": t,
        "total_blowup_chi": report.total_blowup_chi,
        "local_chi": [p.local_chi for p in report.chart_points],
    }
    if lhs == e1 * e2:
        empty = all(_joint(I, J, c).is_unit() for c in charts(I.ring))
        holds = report.total_blowup_chi == 0 and empty and t == 0
        values.update({"equality": True, "blowup_empty": empty})
        out = CheckReport("corollary_d", holds, values)
        if not holds:
            raise AssertionFailed("χ = e·e but the blowup intersection is not empty", out)
        return out
    positive = all(p.local_chi > 0 for p in report.chart_points)
    values.update({"equality": False, "local_terms_positive": positive})
    out = CheckReport("corollary_d", positive, values)
    if not positive:
        raise AssertionFailed("a local χ on the blowup is not positive", out)
    return out
