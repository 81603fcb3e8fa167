"""Seeded random ideal pairs supported at the origin, and the invariant scans.

A pair is built so that V(I + J) is the origin by construction: for a
split n = k + (n - k) of the variables,

    g_j = x_{k+j}^{b_j} + Σ_{i≤k} x_i·h_ij        (generators of J)
    f_i = x_i^{a_i} + Σ_j q_ij·g_j                (generators of I)

so I + J contains every x_i^{a_i} (i ≤ k), and modulo those it contains
x_{k+j}^{b_j}.  Variants intersect or multiply I with a second such ideal,
add an embedded component at the origin, or add an extra generator to I
(which pushes the pair into the vanishing case).  A triangular change of
coordinates fixing the origin is applied at the end.
"""

import random

from .field import FF
from .groebner import Ideal, intersection, krull_dimension, local_dimension, maximal_ideal, tangent_cone
from .homology import chi
from .multiplicity import point_multiplicity
from .poly import Polynomial, RingContext, substitute
from .reports import CheckReport

DEFAULT_FIELD = FF(32003)
VARIANTS = ("plain", "intersection", "product", "embedded", "extra")

# Curated plane and space instances: (variables, I, J, points on the
# blowup as (chart, coordinates), χ, e(A/I)·e(A/J), blowup χ).
FULTON_CORPUS = [
    ("x,y", ["y^2 - x^3"], ["y"], [("x", (0, 0))], 3, 2, 1),
    ("x,y", ["y^2 - x^3"], ["x"], [], 2, 2, 0),
    ("x,y", ["x"], ["y"], [], 1, 1, 0),
    ("x,y", ["y - x^2"], ["y"], [("x", (0, 0))], 2, 1, 1),
    ("x,y", ["y - x^3"], ["y"], [("x", (0, 0))], 3, 1, 2),
    ("x,y", ["y^2 - x^2"], ["y"], [], 2, 2, 0),
    ("x,y", ["y^2 - x^5"], ["y"], [("x", (0, 0))], 5, 2, 3),
    ("x,y", ["y^3 - x^4"], ["x"], [], 3, 3, 0),
    ("x,y", ["y^3 - x^4"], ["y"], [("x", (0, 0))], 4, 3, 1),
    ("x,y", ["x"], ["x + y^2"], [("y", (0, 0))], 2, 1, 1),
    ("x,y,z", ["z"], ["x", "y - z^2"], [], 1, 1, 0),
    ("x,y,z", ["z - x^2 - y^2"], ["x", "y"], [], 1, 1, 0),
    ("x,y,z", ["z - x^2"], ["y", "z"], [("x", (0, 0, 0))], 2, 1, 1),
]


def _random_poly(rng, R, variables, degree, terms):
    """Sum of a few random monomials of degree 1..degree in ``variables``."""
    out = R.zero()
    idx = [R.index(v) for v in variables]
    if not idx:
        return out
    for _ in range(terms):
        e = [0] * R.nvars
        for _ in range(rng.randint(1, degree)):
            e[rng.choice(idx)] += 1
        out = out + Polynomial(R, {tuple(e): rng.randint(1, 7) * rng.choice((1, -1))})
    return out


def _j_gens(rng, R, k):
    xs = R.variables
    gs = []
    for name in xs[k:]:
        g = R.gen(name) ** rng.randint(1, 3)
        for x in xs[:k]:
            h = _random_poly(rng, R, xs, 1, rng.randint(0, 1)) + rng.randint(0, 2)
            g = g + R.gen(x) * h
        gs.append(g)
    return gs


def _i_gens(rng, R, k, gs):
    xs = R.variables
    fs = []
    for name in xs[:k]:
        f = R.gen(name) ** rng.randint(1, 3)
        for g in gs:
            if rng.random() < 0.6:
                q = _random_poly(rng, R, xs, 1, 1) if rng.random() < 0.5 else R.const(rng.randint(1, 3))
                f = f + q * g
        fs.append(f)
    return fs


def _coordinate_change(rng, R):
    """x_a -> x_a + c·x_b^e for a random pair a != b (an automorphism fixing 0)."""
    if R.nvars < 2 or rng.random() < 0.4:
        return None
    a, b = rng.sample(range(R.nvars), 2)
    mapping = {v: R.gen(v) for v in R.variables}
    mapping[R.variables[a]] = R.gen(R.variables[a]) + rng.randint(1, 3) * R.gen(R.variables[b]) ** rng.randint(1, 2)
    return mapping


def random_pair(rng, field=DEFAULT_FIELD, nvars=None, variant=None):
    """A pair (I, J) of ideals with V(I + J) = {0}.

    Returns ``(I, J, variant)``; ``variant`` is drawn from VARIANTS unless
    given.
    """
    n = nvars or rng.choice((2, 2, 3))
    names = ("x", "y", "z", "w")[:n]
    R = RingContext(field, names)
    k = rng.randint(1, n - 1) if n > 1 else 1
    gs = _j_gens(rng, R, k)
    variant = variant or rng.choice(VARIANTS)
    I = Ideal(R, _i_gens(rng, R, k, gs))
    if variant in ("intersection", "product"):
        I2 = Ideal(R, _i_gens(rng, R, k, gs))
        I = intersection(I, I2) if variant == "intersection" else I * I2
    elif variant == "embedded":
        I = intersection(I, maximal_ideal(R) ** rng.randint(1, 2))
    elif variant == "extra":
        extra = R.gen(R.variables[-1]) ** rng.randint(1, 2) + _random_poly(rng, R, R.variables[:k], 2, 1)
        I = Ideal(R, list(I.generators) + [extra])
    J = Ideal(R, gs)
    mapping = _coordinate_change(rng, R)
    if mapping is not None:
        I = Ideal(R, [substitute(g, mapping, R) for g in I.generators])
        J = Ideal(R, [substitute(g, mapping, R) for g in J.generators])
    return I, J, variant


def random_pairs(seed, count, field=DEFAULT_FIELD, nvars=None, variant=None):
    rng = random.Random(seed)
    return [random_pair(rng, field, nvars, variant) for _ in range(count)]


def diagonal_instance(rng, base_size, field=DEFAULT_FIELD):
    """A tensor model with a pair (I, J) of ideals of A for the diagonal.

    Base size 0 uses A = k[x, y]; base size 1 or 2 uses one left
    variable x after the base variables s (, t).  Returns
    ``(model, I, J)`` with J still in A; pass ``model.to_right(J)``.
    """
    from .diagonal import build_tensor_model

    base = ("s", "t")[:base_size]
    left = ("x", "y") if base_size == 0 else ("x",)
    I, J, _ = random_pair(rng, field, nvars=len(base) + len(left))
    model = build_tensor_model(base, left, [f"{v}_r" for v in left], field)
    A = model.left_ring
    # same number of variables: exponent tuples carry over positionally
    I = Ideal(A, [Polynomial(A, g.terms) for g in I.generators])
    J = Ideal(A, [Polynomial(A, g.terms) for g in J.generators])
    return model, I, J


def parameter_instance(rng, field=DEFAULT_FIELD, nvars=None):
    """An ideal I and a system of parameters for A/I at the origin.

    The generators of J in a pair (I, J) number n - k while I has k
    generators, so dim A/I is at least n - k; with V(I + J) the origin it
    is exactly n - k whenever I keeps its generator count.  Draws until the
    dimension matches and returns ``(I, seq)``.
    """
    while True:
        I, J, _ = random_pair(rng, field, nvars, rng.choice(VARIANTS[:4]))
        seq = list(J.generators)
        if local_dimension(I) == len(seq):
            return I, seq


def _scan_decency(I, J, report):
    d1, d2 = report.dims
    return True, d1 + d2 <= I.ring.nvars


def _scan_vanishing(I, J, report):
    applies = report.classification["vanishing_case"]
    return applies, (not applies) or report.chi == 0


def _scan_positivity(I, J, report):
    applies = report.classification["positivity_case"]
    return applies, (not applies) or report.chi > 0


def _scan_lowerbound(I, J, report):
    applies = report.classification["positivity_case"]
    if not applies:
        return False, True
    return True, report.chi >= point_multiplicity(I) * point_multiplicity(J)


def _scan_tennison(I, J, report):
    if not report.classification["positivity_case"]:
        return False, True
    transverse = krull_dimension(tangent_cone(I) + tangent_cone(J)) == 0
    if not transverse:
        return False, True
    return True, report.chi == point_multiplicity(I) * point_multiplicity(J)


SCANS = {
    "decency": _scan_decency,
    "vanishing": _scan_vanishing,
    "positivity": _scan_positivity,
    "lowerbound": _scan_lowerbound,
    "tennison": _scan_tennison,
}


def scan(kind, count, seed=0, field=DEFAULT_FIELD):
    """Run one invariant over ``count`` seeded random pairs.

    The vanishing scan draws only from the ``extra`` variant so that every
    instance lands in the case it tests.
    """
    if kind not in SCANS:
        raise ValueError(f"unknown scan kind {kind!r}")
    variant = "extra" if kind == "vanishing" else None
    rng = random.Random(f"{kind}:{seed}")
    applicable, violations = 0, []
    for n in range(count):
        I, J, var = random_pair(rng, field, variant=variant)
        report = chi(I, J)
        applies, ok = SCANS[kind](I, J, report)
        applicable += applies
        if not ok:
            violations.append({"instance": n, "variant": var, "I": str(I), "J": str(J), "chi": report.chi})
    return CheckReport(
        f"scan:{kind}",
        not violations,
        {"instances": count, "applicable": applicable, "violations": violations},
    )
