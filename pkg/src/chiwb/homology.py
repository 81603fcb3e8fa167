"""Presented modules, free resolutions, Tor, Koszul homology and χ.

Matrices are lists of sparse column vectors (see :mod:`chiwb._engine`)
together with a row count.  Every free module may optionally be taken
modulo a fixed ideal ``E`` of the polynomial ring (``modulus``), which is
how computations over a quotient ring B = P/E are carried out.
"""

from itertools import combinations
from math import comb

from . import _engine as eng
from .errors import (
    AssertionFailed,
    InfiniteLength,
    NotModuleFinite,
    PreconditionError,
    RingMismatch,
    SupportNotAtOrigin,
)
from .groebner import Ideal, intersection, local_dimension, support_at_origin
from .hilbert import module_series
from .poly import MonomialOrder, Polynomial, RingContext
from .reports import CheckReport, MultiplicityReport


def _zero_exp(ring):
    return (0,) * ring.nvars


def _unit_vector(ring, pos):
    return {(pos, _zero_exp(ring)): 1}


def _entry(v, a):
    return {e: c for (p, e), c in v.items() if p == a}


def _find_unit(cols):
    for b, v in enumerate(cols):
        counts = {}
        for p, _ in v:
            counts[p] = counts.get(p, 0) + 1
        for (p, e), c in v.items():
            if counts[p] == 1 and not any(e):
                return p, b, c
    return None


def _drop_row(v, a):
    return {((p - 1 if p > a else p), e): c for (p, e), c in v.items()}


def _prune_once(cols, ring):
    """Split off one unit entry of ``cols``; returns (cols, row, col) or None.

    Columns that become zero are kept so that indices stay aligned.
    """
    hit = _find_unit(cols)
    if hit is None:
        return None
    a, b, c = hit
    p = ring.field.characteristic
    inv = ring.field.inv(c)
    pivot = cols[b]
    out = []
    for j, v in enumerate(cols):
        if j == b:
            continue
        m = _entry(v, a)
        if m:
            factor = {e: (x * inv % p if p else x * inv) for e, x in m.items()}
            v = eng.add(v, eng.mul_poly(pivot, factor, p), p, -1)
        out.append(_drop_row(v, a))
    return out, a, b


def _drop_column(cols, a):
    return cols[:a] + cols[a + 1:]


def _tensor_vec(v, width, k):
    return {(p * width + k, e): c for (p, e), c in v.items()}


def _as_vec(ring, poly, pos=0):
    return eng.poly_to_vec(ring(poly).terms, pos)


class PresentedModule:
    """Cokernel of a relation matrix: ``ring^rank / (relation columns)``."""

    def __init__(self, ring, rank, relations=(), modulus=()):
        self.ring = ring
        self.rank = rank
        self.relations = [dict(v) for v in relations if v]
        for v in self.relations:
            if any(p >= rank for p, _ in v):
                raise ValueError("relation column longer than the module rank")
        self.modulus = tuple(modulus)
        self._gb = None
        self._resolution = None

    @classmethod
    def from_ideal(cls, I, modulus=()):
        return cls(I.ring, 1, [_as_vec(I.ring, g) for g in I.generators], modulus)

    @classmethod
    def from_matrix(cls, ring, rows, modulus=()):
        """``rows`` is a rank x ncols nested list of polynomials (or strings)."""
        rank = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = []
        for j in range(ncols):
            v = {}
            for i in range(rank):
                v.update(_as_vec(ring, rows[i][j], i))
            cols.append(v)
        return cls(ring, rank, cols, modulus)

    @classmethod
    def zero(cls, ring):
        return cls(ring, 0, [])

    @classmethod
    def free(cls, ring, rank):
        return cls(ring, rank, [])

    def all_relations(self):
        """Relation columns together with the modulus times each basis vector."""
        extra = [
            eng.poly_to_vec(g.terms, i) for i in range(self.rank) for g in self.modulus
        ]
        return self.relations + extra

    def groebner(self):
        if self._gb is None:
            self._gb = eng.groebner(self.all_relations(), self.ring, rank_one=False)
        return self._gb

    def matrix(self):
        """The relation matrix as a nested list of polynomials."""
        return [
            [Polynomial(self.ring, _entry(v, i)) for v in self.relations]
            for i in range(self.rank)
        ]

    def contains(self, vec):
        return not eng.reduce_full(vec, self.groebner(), self.ring)

    def is_zero(self):
        zero = _zero_exp(self.ring)
        leads = {lt for lt, _ in self.groebner()}
        return all((i, zero) in leads for i in range(self.rank))

    def hilbert_series(self):
        return module_series(self.groebner(), self.rank, self.ring.nvars)

    def k_dimension(self):
        if self.rank == 0:
            return 0
        return self.hilbert_series().total()

    def annihilator(self):
        """ann(M) as the intersection of (relations : e_j) over the generators."""
        out = Ideal(self.ring, [self.ring.one()])
        rels = self.all_relations()
        for j in range(self.rank):
            syz = eng.syzygies([_unit_vector(self.ring, j)] + rels, self.rank, self.ring)
            colon = Ideal(self.ring, [Polynomial(self.ring, _entry(v, 0)) for v in syz])
            out = colon if j == 0 else intersection(out, colon)
        return out

    def vanishes_at_origin(self):
        """The localization at the origin is zero: ann(M) is not inside m."""
        if self.rank == 0 or self.is_zero():
            return True
        return not self.annihilator().is_in_maximal_ideal()

    def minimal_presentation(self):
        """Drop generators killed by unit relations; zero gets rank 0."""
        cols, rank = list(self.relations), self.rank
        cols = [v for v in cols if v]
        while True:
            step = _prune_once(cols, self.ring)
            if step is None:
                break
            cols, _, _ = step
            cols = [v for v in cols if v]
            rank -= 1
        if rank == 0:
            return PresentedModule.zero(self.ring)
        m = PresentedModule(self.ring, rank, cols, self.modulus)
        if m.is_zero():
            return PresentedModule.zero(self.ring)
        return PresentedModule(self.ring, rank, [v for _, v in m.groebner()], self.modulus)

    def __repr__(self):
        return f"PresentedModule(rank={self.rank}, relations={len(self.relations)}, ring={self.ring})"


class FreeComplex:
    """F_0 <- F_1 <- ... with ``differentials[i-1]`` the columns of d_i."""

    def __init__(self, ring, ranks, differentials, modulus=(), exact=True):
        self.ring = ring
        self.ranks = list(ranks)
        self.differentials = [list(d) for d in differentials]
        self.modulus = tuple(modulus)
        self.exact = exact
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ValueError("need one differential per consecutive pair of ranks")

    @property
    def length(self):
        return len(self.ranks) - 1

    def differential(self, i):
        """Nested-list matrix of d_i : F_i -> F_{i-1}."""
        cols = self.differentials[i - 1]
        return [[Polynomial(self.ring, _entry(v, r)) for v in cols] for r in range(self.ranks[i - 1])]

    def is_complex(self):
        """d_{i-1} o d_i = 0 for every i (modulo the modulus, if any)."""
        p = self.ring.field.characteristic
        mod = Ideal(self.ring, self.modulus) if self.modulus else None
        for i in range(2, self.length + 1):
            outer, inner = self.differentials[i - 2], self.differentials[i - 1]
            for v in inner:
                acc = {}
                for (pos, e), c in v.items():
                    acc = eng.add(acc, eng.mul_poly(outer[pos], {e: c}, p), p)
                if mod is None:
                    if acc:
                        return False
                else:
                    for r in range(self.ranks[i - 2]):
                        if Polynomial(self.ring, _entry(acc, r)) not in mod:
                            return False
        return True

    def __repr__(self):
        return f"FreeComplex(ranks={self.ranks})"


def syzygies(matrix, ring=None, modulus=()):
    """Generators of the kernel of a matrix, as a nested list (columns = syzygies).

    ``matrix`` is a nested list of polynomials (rows); with ``modulus`` the
    kernel is computed over the quotient ring by that ideal.
    """
    if ring is None:
        ring = next(p.ring for row in matrix for p in row if isinstance(p, Polynomial))
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    cols = []
    for j in range(ncols):
        v = {}
        for i in range(nrows):
            entry = ring(matrix[i][j])
            if entry.ring.variables != ring.variables:
                raise RingMismatch("matrix entries from different rings")
            v.update(eng.poly_to_vec(entry.terms, i))
        cols.append(v)
    extra = [eng.poly_to_vec(ring(g).terms, i) for i in range(nrows) for g in modulus]
    syz = eng.syzygies(cols, nrows, ring, extra)
    return [[Polynomial(ring, _entry(s, j)) for s in syz] for j in range(ncols)]


def _module_syzygies(cols, nrows, ring, modulus):
    extra = [eng.poly_to_vec(g.terms, i) for i in range(nrows) for g in modulus]
    return eng.syzygies(cols, nrows, ring, extra)


def free_resolution(M, length=None):
    """A free resolution of M, pruned of unit entries as it is built.

    Over a polynomial ring the construction stops once a kernel vanishes,
    which happens within ``nvars`` steps for graded input; ``length`` caps
    the number of differentials (default ``nvars + 1``, enough to read off
    every Tor group).  Over a quotient ring (``M.modulus``) the resolution
    may be infinite and ``length`` is the truncation point.
    """
    ring = M.ring
    cap = ring.nvars + 1 if length is None else length
    if M._resolution is not None and M._resolution[0] >= cap:
        return _truncate(M._resolution[1], cap)
    modulus = M.modulus
    ranks = [M.rank]
    diffs = []
    cols = [v for v in M.relations if v]
    exact = True
    order = None
    while cols:
        if len(diffs) >= cap:
            exact = False
            break
        syz = None
        if not modulus:
            basis, syz = eng.schreyer(cols, ring, order)
            cols = [g for _, g in basis]
            leads = [lt for lt, _ in basis]
        while True:
            step = _prune_once(cols, ring)
            if step is None:
                break
            cols, a, b = step
            ranks[-1] -= 1
            if diffs:
                diffs[-1] = _drop_column(diffs[-1], a)
            if syz is not None:
                # relations of the pruned columns: drop coordinate b
                syz = [_drop_row({t: c for t, c in v.items() if t[0] != b}, b) for v in syz]
                del leads[b]
        for b in reversed([j for j, v in enumerate(cols) if not v]):
            del cols[b]
            if syz is not None:
                syz = [_drop_row({t: c for t, c in v.items() if t[0] != b}, b) for v in syz]
                del leads[b]
        if not cols:
            break
        diffs.append(cols)
        ranks.append(len(cols))
        if syz is None:
            syz = _module_syzygies(cols, ranks[-2], ring, modulus)
        else:
            order = ("schreyer", order, tuple(leads))
        cols = [v for v in syz if v]
    C = FreeComplex(ring, ranks, diffs, modulus, exact)
    M._resolution = (cap, C)
    return C


def _truncate(C, cap):
    if C.length <= cap:
        return C
    return FreeComplex(C.ring, C.ranks[: cap + 1], C.differentials[:cap], C.modulus, False)


def _homology_data(C, N, i):
    """Submodules K (cycles) and B (boundaries) of F_i ⊗ F' for H_i(C ⊗ N)."""
    ring = C.ring
    width = N.rank
    U = N.all_relations()
    if i > C.length or C.ranks[i] == 0 or width == 0:
        return 0, [], []
    rank_i = C.ranks[i] * width
    if i == 0:
        K = [_unit_vector(ring, j) for j in range(rank_i)]
    else:
        d = C.differentials[i - 1]
        cols = [_tensor_vec(v, width, k) for v in d for k in range(width)]
        extra = [_tensor_vec(u, width, l) for l in range(C.ranks[i - 1]) for u in U]
        K = eng.syzygies(cols, C.ranks[i - 1] * width, ring, extra)
    B = [_tensor_vec(u, width, l) for l in range(C.ranks[i]) for u in U]
    if i < C.length:
        B += [_tensor_vec(v, width, k) for v in C.differentials[i] for k in range(width)]
    return rank_i, K, B


def homology_length(C, N, i):
    """k-dimension of H_i(C ⊗ N), as the difference of two Hilbert series."""
    rank, K, B = _homology_data(C, N, i)
    if rank == 0:
        return 0
    n = C.ring.nvars
    GB = eng.groebner(B, C.ring, rank_one=False)
    GK = eng.groebner(K, C.ring, rank_one=False)
    diff = module_series(GB, rank, n) - module_series(GK, rank, n)
    try:
        return diff.total()
    except InfiniteLength:
        raise InfiniteLength(f"H_{i} has infinite length") from None


def homology(C, N, i):
    """H_i(C ⊗ N) as a presented module (generators = cycles mod boundaries)."""
    ring = C.ring
    rank, K, B = _homology_data(C, N, i)
    if rank == 0 or not K:
        return PresentedModule.zero(ring)
    GB = eng.groebner(B, ring, rank_one=False)
    gens = [v for _, v in eng.groebner(K, ring, rank_one=False)]
    gens = [g for g in gens if eng.reduce_full(g, GB, ring)]
    if not gens:
        return PresentedModule.zero(ring)
    syz = eng.syzygies(gens + B, rank, ring)
    m = len(gens)
    rels = [{(p, e): c for (p, e), c in s.items() if p < m} for s in syz]
    return PresentedModule(ring, m, rels).minimal_presentation()


def _check_same_ring(M, N):
    if M.ring.variables != N.ring.variables or M.ring.field != N.ring.field:
        raise RingMismatch(f"{M.ring} vs {N.ring}")


def tor_setup(M, N, length):
    """(F, other): a resolution of M or of N with the other module.

    Tor is symmetric, so H_i(F ⊗ other) is Tor_i(M, N) either way; the
    side whose resolution is cheaper to tensor is chosen.
    """
    F = free_resolution(M, length)
    G = free_resolution(N, length)
    if _work(G, M) < _work(F, N):
        return G, M
    return F, N


def tor(M, N, i):
    """Tor_i(M, N) as H_i(F ⊗ N), F resolving M or N (see tor_setup)."""
    _check_same_ring(M, N)
    return homology(*tor_setup(M, N, i + 1), i)


def tor_length(M, N, i):
    _check_same_ring(M, N)
    return homology_length(*tor_setup(M, N, i + 1), i)


def k_dimension(M):
    return M.k_dimension()


def _as_module(X):
    return X if isinstance(X, PresentedModule) else PresentedModule.from_ideal(X)


def _work(F, N):
    """Rough cost of the homology of F ⊗ N: term counts of both sides."""
    size = sum(len(v) for d in F.differentials for v in d)
    return size * (1 + sum(len(v) for v in N.relations))


def chi(I, J):
    """Serre's alternating sum of Tor lengths for A/I and A/J at the origin."""
    if I.ring.variables != J.ring.variables or I.ring.field != J.ring.field:
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    J = Ideal(I.ring, J.generators)
    if not (I.is_in_maximal_ideal() and J.is_in_maximal_ideal()):
        raise SupportNotAtOrigin("both ideals must lie in the maximal ideal of the origin")
    S = I + J
    if not support_at_origin(S):
        raise SupportNotAtOrigin(f"V({S}) is not the origin")
    n = I.ring.nvars
    M, N = PresentedModule.from_ideal(I), PresentedModule.from_ideal(J)
    F, N = tor_setup(M, N, n + 1)
    top = min(F.length, n)
    lengths = [homology_length(F, N, i) for i in range(top + 1)]
    total = sum((-1) ** i * t for i, t in enumerate(lengths))
    d1, d2 = local_dimension(I), local_dimension(J)
    flags = {
        "decent": d1 + d2 <= n,
        "vanishing_case": d1 + d2 < n,
        "positivity_case": d1 + d2 == n,
    }
    return MultiplicityReport((d1, d2), lengths, total, classification=flags, witnesses={"sum": S})


def koszul_complex(seq, ring=None):
    """Koszul complex on ``seq``; F_i has basis the i-subsets in lex order."""
    seq = list(seq)
    if ring is None:
        ring = seq[0].ring
    seq = [ring(f) for f in seq]
    r = len(seq)
    subsets = [list(combinations(range(r), i)) for i in range(r + 1)]
    index = [{s: k for k, s in enumerate(level)} for level in subsets]
    diffs = []
    for i in range(1, r + 1):
        cols = []
        for S in subsets[i]:
            v = {}
            for pos, j in enumerate(S):
                T = S[:pos] + S[pos + 1:]
                sign = -1 if pos % 2 else 1
                v = eng.add(v, eng.poly_to_vec(seq[j].terms, index[i - 1][T]), ring.field.characteristic, sign)
            cols.append(v)
        diffs.append(cols)
    return FreeComplex(ring, [comb(r, i) for i in range(r + 1)], diffs)


def koszul_homology(seq, M, i):
    M = _as_module(M)
    return homology(koszul_complex(seq, M.ring), M, i)


def koszul_homology_length(seq, M, i):
    M = _as_module(M)
    return homology_length(koszul_complex(seq, M.ring), M, i)


def koszul_euler(seq, M):
    """Σ (-1)^i dim_k H_i(seq; M); H_0 must have finite length."""
    M = _as_module(M)
    K = koszul_complex(seq, M.ring)
    h0 = homology_length(K, M, 0)
    rest = [homology_length(K, M, i) for i in range(1, K.length + 1)]
    return h0 + sum((-1) ** (i + 1) * t for i, t in enumerate(rest))


def _module_finite(ext, k):
    """Every extension variable has a pure power as a lead term (w block first)."""
    leads = ext.lead_exponents()
    for j in range(k):
        if not any(e[j] and not any(a for i, a in enumerate(e) if i != j) for e in leads):
            return False
    return True


def flat_base_change_check(I, J, ext):
    """Compare χ over A with χ over B = A[w]/ext for a finite flat extension.

    ``ext`` is an ideal of a ring whose variables are the extension
    variables followed by the variables of A.  Lengths over B are measured
    as k-dimensions, and Tor over B is summed up to dim A.
    """
    A = I.ring
    P = ext.ring
    k = P.nvars - A.nvars
    if k < 0 or P.variables[k:] != A.variables or P.field != A.field:
        raise PreconditionError("extension ring must be (new variables) followed by the base variables")
    block = P.with_order(MonomialOrder("block", block=k))
    E = ext.in_ring(block)
    if not _module_finite(E, k):
        raise NotModuleFinite(f"{ext} is not module-finite over {A}")
    base = chi(I, J)
    Pg = RingContext(P.field, P.variables)
    Eg = [Pg(g.rename(Pg)) for g in ext.generators]
    r = Ideal(Pg, Eg + [Pg.gen(x) for x in A.variables])
    r = PresentedModule.from_ideal(r).k_dimension()
    IB = [Pg(g.rename(Pg)) for g in I.generators]
    JB = [Pg(g.rename(Pg)) for g in J.generators]
    M = PresentedModule(Pg, 1, [eng.poly_to_vec(g.terms) for g in IB], Eg)
    N = PresentedModule(Pg, 1, [eng.poly_to_vec(g.terms) for g in JB], Eg)
    n = A.nvars
    F = free_resolution(M, n + 1)
    lengths = [homology_length(F, N, i) for i in range(min(F.length, n) + 1)]
    chi_b = sum((-1) ** i * t for i, t in enumerate(lengths))
    holds = chi_b == r * base.chi
    report = CheckReport(
        "flat_base_change",
        holds,
        {"r": r, "chi_A": base.chi, "chi_B": chi_b, "tor_lengths_B": lengths},
    )
    if not holds:
        raise AssertionFailed(f"chi_B = {chi_b} but r * chi_A = {r * base.chi}", report)
    return report
