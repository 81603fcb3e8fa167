"""Monomial orders, ring contexts and exact multivariate polynomials.

A polynomial is a map from exponent tuples to nonzero coefficients.  Terms
are stored in a dict whose insertion order is the ring's monomial order,
descending, so the leading term is the first item.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from numbers import Integral, Rational

from .errors import PreconditionError, RingMismatch
from .field import QQ, Field


def _grevlex(e):
    return (sum(e),) + tuple(-a for a in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """A global monomial order.

    ``kind`` is one of ``grevlex``, ``lex``, ``block`` (grevlex on the first
    ``block`` variables, then grevlex on the rest), ``weighted`` (weight
    vector ``weights`` refined by grevlex) or ``matrix`` (rows of
    ``weights`` compared in turn, refined by grevlex).
    """

    kind: str = "grevlex"
    block: int = 0
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block", "weighted", "matrix"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind in ("weighted", "matrix") and not self.weights:
            raise ValueError(f"{self.kind} order needs weights")

    def key(self, e):
        """Sort key: a larger key is a larger monomial."""
        kind = self.kind
        if kind == "grevlex":
            return _grevlex(e)
        if kind == "lex":
            return tuple(e)
        if kind == "block":
            k = self.block
            return _grevlex(e[:k]) + _grevlex(e[k:])
        if kind == "weighted":
            return (sum(w * a for w, a in zip(self.weights, e)),) + _grevlex(e)
        return tuple(sum(w * a for w, a in zip(row, e)) for row in self.weights) + _grevlex(e)


GREVLEX = MonomialOrder()


@dataclass(frozen=True)
class RingContext:
    field: Field = QQ
    variables: tuple = ()
    order: MonomialOrder = GREVLEX
    base_vars: tuple = ()
    _keys: dict = dc_field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "base_vars", tuple(self.base_vars))
        if len(set(self.variables)) != len(self.variables):
            raise PreconditionError(f"duplicate variable names in {self.variables}")
        if len(self.base_vars) > 2:
            raise PreconditionError("at most two base variables are supported")
        if self.variables[: len(self.base_vars)] != self.base_vars:
            raise PreconditionError("base variables must be a prefix of the variable list")

    @property
    def nvars(self):
        return len(self.variables)

    def key(self, e):
        k = self._keys.get(e)
        if k is None:
            k = self._keys[e] = self.order.key(e)
        return k

    def index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise PreconditionError(f"unknown variable {name!r}") from None

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1}, _canonical=True)

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def with_order(self, order):
        return RingContext(self.field, self.variables, order, self.base_vars)

    def with_field(self, field):
        return RingContext(field, self.variables, self.order, self.base_vars)

    def __call__(self, obj):
        """Coerce a polynomial (same variables), scalar or string into this ring."""
        if isinstance(obj, Polynomial):
            if obj.ring == self:
                return obj
            if obj.ring.variables == self.variables:
                return Polynomial(self, obj.terms)
            return obj.rename(self)
        if isinstance(obj, str):
            from .parse import parse_polynomial

            return parse_polynomial(obj, self)
        return self.const(obj)

    def __str__(self):
        base = f" base={','.join(self.base_vars)}" if self.base_vars else ""
        return f"{self.field}[{','.join(self.variables)}]{base}"


def ring(variables, field=QQ, order=GREVLEX, base=()):
    """Build a ring from a comma separated string or a sequence of names."""
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    if isinstance(base, str):
        base = [v.strip() for v in base.split(",") if v.strip()]
    return RingContext(field, tuple(variables), order, tuple(base))


def _norm(field, c):
    p = field.characteristic
    if p:
        if isinstance(c, Fraction):
            return field(c)
        return c % p
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"non-exact coefficient {c!r}")


class Polynomial:
    """Immutable exact polynomial in a :class:`RingContext`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms, *, _canonical=False):
        self.ring = ring
        self._hash = None
        if _canonical:
            self.terms = terms
            return
        field = ring.field
        n = ring.nvars
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has wrong length for {ring}")
            c = _norm(field, c)
            if c:
                clean[e] = c
        self.terms = {e: clean[e] for e in sorted(clean, key=ring.key, reverse=True)}

    # -- basic access ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lead_exp(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return next(iter(self.terms))

    @property
    def lead_coeff(self):
        return self.terms[self.lead_exp]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self):
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(self.lead_exp))

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return [self.ring.variables[i] for i in sorted(used)]

    def monic(self):
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lead_coeff)
        return self * inv

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (Integral, Rational)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (Integral, Rational)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    # -- structure -------------------------------------------------------
    def homogeneous_component(self, d):
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d}, _canonical=True)

    def divide_by_monomial(self, e):
        """Exact division by the monomial with exponent ``e``."""
        out = {}
        for f, c in self.terms.items():
            q = tuple(a - b for a, b in zip(f, e))
            if min(q, default=0) < 0:
                raise ValueError("monomial does not divide polynomial")
            out[q] = c
        return Polynomial(self.ring, out, _canonical=True)

    def evaluate(self, point):
        total = 0
        for e, c in self.terms.items():
            t = c
            for a, x in zip(e, point):
                if a:
                    t = t * x**a
            total += t
        return _norm(self.ring.field, total)

    def rename(self, target):
        """Re-express in ``target`` by variable name (missing names must be unused)."""
        idx = []
        for i, v in enumerate(self.ring.variables):
            if v in target.variables:
                idx.append(target.variables.index(v))
            else:
                idx.append(None)
        n = target.nvars
        terms = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, a in enumerate(e):
                if a:
                    if idx[i] is None:
                        raise RingMismatch(f"variable {self.ring.variables[i]} not in {target}")
                    new[idx[i]] = a
            terms[tuple(new)] = c
        return Polynomial(target, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
            )
            neg = False
            if self.ring.field.characteristic == 0 and c < 0:
                neg, c = True, -c
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Polynomial({self}, {self.ring})"


def lowest_form(f):
    """Homogeneous component of ``f`` of minimal total degree."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no lowest form")
    return f.homogeneous_component(f.min_degree())


def substitute(f, mapping, target):
    """Apply the ring map sending each variable of ``f.ring`` to ``mapping[name]``.

    Images are coerced into ``target``; every variable occurring in ``f``
    must be mapped.
    """
    images = []
    for i, v in enumerate(f.ring.variables):
        if v in mapping:
            images.append(target(mapping[v]))
        else:
            images.append(None)
    powers = {}

    def power(i, a):
        key = (i, a)
        if key not in powers:
            powers[key] = images[i] ** a
        return powers[key]

    result = target.zero()
    acc = {}
    for e, c in f.terms.items():
        term = target.const(c)
        for i, a in enumerate(e):
            if a:
                if images[i] is None:
                    raise PreconditionError(f"variable {f.ring.variables[i]} is not mapped")
                term = term * power(i, a)
        for te, tc in term.terms.items():
            acc[te] = acc.get(te, 0) + tc
    if acc:
        result = Polynomial(target, acc)
    return result

