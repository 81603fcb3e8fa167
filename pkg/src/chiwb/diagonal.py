"""Reduction to the diagonal over a base R = k[s] or k[s, t].

A pair A = R[x], B = R[y] is modelled inside the big ring C = R[x, y];
completed tensor products become extension of scalars to C and completed
Tor becomes ordinary Tor over C.  The diagonal ideal is (x_i - y_i).
"""

from dataclasses import dataclass

from .errors import AssertionFailed, PreconditionError, SupportNotAtOrigin
from .field import QQ
from .groebner import Ideal, local_dimension, quotient_by_element, support_at_origin
from .homology import PresentedModule, chi, homology, koszul_homology, tor_setup
from .multiplicity import hs_multiplicity
from .poly import Polynomial, RingContext
from .reports import CheckReport, CompletedTorReport


@dataclass(frozen=True)
class TensorModel:
    base_vars: tuple
    left_vars: tuple
    right_vars: tuple
    big_ring: RingContext
    left_ring: RingContext
    right_ring: RingContext
    left_embed: dict
    right_embed: dict
    diagonal: Ideal

    @property
    def m(self):
        return len(self.left_vars)

    def embed_left(self, I):
        return Ideal(self.big_ring, [g.rename(self.big_ring) for g in _into(I, self.left_ring).generators])

    def embed_right(self, J):
        return Ideal(self.big_ring, [g.rename(self.big_ring) for g in _into(J, self.right_ring).generators])

    def to_right(self, J):
        """Copy of an ideal of A in B, renaming each x_i to y_i."""
        J = _into(J, self.left_ring)
        names = dict(zip(self.left_vars, self.right_vars))
        renamed = RingContext(self.left_ring.field, tuple(names.get(v, v) for v in self.left_ring.variables))
        return Ideal(self.right_ring, [Polynomial(renamed, g.terms).rename(self.right_ring) for g in J.generators])

    def identify(self, J):
        """Image of an ideal of B in A, renaming each y_i to x_i."""
        J = _into(J, self.right_ring)
        names = dict(zip(self.right_vars, self.left_vars))
        renamed = RingContext(self.right_ring.field, tuple(names.get(v, v) for v in self.right_ring.variables))
        return Ideal(self.left_ring, [Polynomial(renamed, g.terms).rename(self.left_ring) for g in J.generators])


def _into(I, ring):
    if I.ring.variables != ring.variables:
        raise PreconditionError(f"ideal lives in {I.ring}, expected {ring}")
    return Ideal(ring, I.generators)


def build_tensor_model(base, left, right, field=QQ):
    base, left, right = tuple(base), tuple(left), tuple(right)
    if len(base) > 2:
        raise PreconditionError("at most two base variables are supported")
    names = base + left + right
    if len(set(names)) != len(names):
        raise PreconditionError(f"variable names collide: {names}")
    big = RingContext(field, names, base_vars=base)
    A = RingContext(field, base + left, base_vars=base)
    B = RingContext(field, base + right, base_vars=base)
    diag = None
    if len(left) == len(right):
        diag = Ideal(big, [big.gen(x) - big.gen(y) for x, y in zip(left, right)])
    return TensorModel(
        base,
        left,
        right,
        big,
        A,
        B,
        {v: v for v in base + left},
        {v: v for v in base + right},
        diag,
    )


def completed_tor(model, I, J, q):
    """Tor_q over the big ring of C/IC and C/JC."""
    M = PresentedModule.from_ideal(model.embed_left(I))
    N = PresentedModule.from_ideal(model.embed_right(J))
    return homology(*tor_setup(M, N, q + 1), q)


def diagonal_decompose(model, I, J):
    """χ as Σ (-1)^q e_Δ(completed Tor_q, m), checked against χ computed in A."""
    if model.diagonal is None:
        raise PreconditionError("the diagonal needs as many right variables as left ones")
    Ic, Jc = model.embed_left(I), model.embed_right(J)
    if not support_at_origin(Ic + Jc + model.diagonal):
        raise SupportNotAtOrigin("the identified quotient is not supported at the origin")
    direct = chi(_into(I, model.left_ring), model.identify(J)).chi
    M, N = PresentedModule.from_ideal(Ic), PresentedModule.from_ideal(Jc)
    top = len(model.base_vars)
    F, other = tor_setup(M, N, top + 1)
    modules, e_values = [], []
    for qq in range(top + 1):
        T = homology(F, other, qq)
        modules.append(T)
        e_values.append(hs_multiplicity(T, model.diagonal, model.m) if T.rank else 0)
    via = sum((-1) ** qq * e for qq, e in enumerate(e_values))
    report = CompletedTorReport(modules, e_values, via, direct)
    if via != direct:
        raise AssertionFailed(f"diagonal gives {via} but the direct computation gives {direct}", report)
    return report


def r_flatness_check(model, I, normal=None):
    """Flatness of A/I over R through the Koszul complex on the base variables.

    Koszul homology is tested for vanishing at the origin.  ``normal`` is
    the caller's assertion about normality of A/I and is only echoed.
    """
    if len(model.base_vars) != 2:
        raise PreconditionError("flatness check needs a two-dimensional base")
    A = model.left_ring
    I = _into(I, A)
    M = PresentedModule.from_ideal(I)
    seq = [A.gen(v) for v in model.base_vars]
    h = [koszul_homology(seq, M, i).vanishes_at_origin() for i in (1, 2)]
    fiber = local_dimension(I + Ideal(A, seq))
    dim = local_dimension(I)
    return CheckReport(
        "r_flatness",
        h[0] and h[1],
        {
            "H1_vanishes": h[0],
            "H2_vanishes": h[1],
            "fiber_dimension": fiber,
            "dimension_minus_base": dim - 2,
            "fiber_matches": fiber == dim - 2,
            "normal_asserted": normal,
        },
    )


def dimension_bound_check(model, I, J, domains=None):
    """dim C/(IC + JC) >= dim A/I + dim B/J - dim R at the origin."""
    Ic, Jc = model.embed_left(I), model.embed_right(J)
    joint = local_dimension(Ic + Jc)
    d1 = local_dimension(_into(I, model.left_ring))
    d2 = local_dimension(_into(J, model.right_ring))
    bound = d1 + d2 - len(model.base_vars)
    report = CheckReport(
        "dimension_bound",
        joint >= bound,
        {"joint_dimension": joint, "dims": [d1, d2], "bound": bound, "domains_asserted": domains},
    )
    if joint < bound:
        raise AssertionFailed(f"joint dimension {joint} is below {bound}", report)
    return report


def case1_degeneration_check(I, J, pi):
    """χ^A(A/I, A/J) against χ over A/(π) when π kills A/I and is regular on A/J."""
    A = I.ring
    J = Ideal(A, J.generators)
    pi = A(pi)
    if len(pi) != 1 or pi.lead_coeff != 1 or sum(pi.lead_exp) != 1:
        raise PreconditionError(f"{pi} is not a variable")
    if pi not in I:
        raise PreconditionError(f"{pi} does not lie in {I}")
    if quotient_by_element(J, pi) != J:
        raise PreconditionError(f"{pi} is a zero divisor modulo {J}")
    name = pi.variables_used()[0]
    small = RingContext(A.field, tuple(v for v in A.variables if v != name))
    k = A.index(name)

    def drop(f):
        terms = {e[:k] + e[k + 1:]: c for e, c in f.terms.items() if not e[k]}
        return Polynomial(small, terms)

    lhs = chi(I, J).chi
    rhs = chi(Ideal(small, [drop(g) for g in I.generators]), Ideal(small, [drop(g) for g in J.generators])).chi
    report = CheckReport("case1_degeneration", lhs == rhs, {"chi_A": lhs, "chi_quotient": rhs})
    if lhs != rhs:
        raise AssertionFailed(f"χ over A is {lhs} but {rhs} modulo {pi}", report)
    return report
