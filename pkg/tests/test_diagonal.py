import random

import pytest

from chiwb import (
    FF,
    Ideal,
    PreconditionError,
    SupportNotAtOrigin,
    build_tensor_model,
    case1_degeneration_check,
    chi,
    completed_tor,
    diagonal_decompose,
    dimension_bound_check,
    r_flatness_check,
    ring,
)
from chiwb.corpus import _random_poly, diagonal_instance
from chiwb.groebner import quotient_by_element
from chiwb.homology import PresentedModule, koszul_homology

F = FF(32003)


def st_model(field=F):
    return build_tensor_model(("s", "t"), ("x",), ("y",), field)


def test_tensor_model_rings():
    model = build_tensor_model(("s",), ("x", "z"), ("y", "w"))
    assert model.big_ring.variables == ("s", "x", "z", "y", "w")
    assert model.left_ring.variables == ("s", "x", "z")
    assert model.right_ring.variables == ("s", "y", "w")
    assert model.m == 2
    assert len(model.diagonal.generators) == 2


def test_tensor_model_rejects_bad_input():
    with pytest.raises(PreconditionError):
        build_tensor_model(("s", "t", "u"), ("x",), ("y",))
    with pytest.raises(PreconditionError):
        build_tensor_model(("s",), ("x",), ("x",))


def test_tensor_model_without_diagonal():
    model = build_tensor_model((), ("x", "z"), ("y",))
    assert model.diagonal is None
    A = model.left_ring
    with pytest.raises(PreconditionError):
        diagonal_decompose(model, Ideal(A, [A("x")]), Ideal(model.right_ring, [model.right_ring("y")]))


def test_to_right_and_identify_round_trip():
    model = st_model()
    A = model.left_ring
    I = Ideal(A, [A("x^2 - s*t"), A("t*x + 3")])
    J = model.to_right(I)
    assert J.ring.variables == ("s", "t", "y")
    assert str(J.generators[0]) == str(model.right_ring("y^2 - s*t"))
    assert model.identify(J) == I


def test_completed_tor_examples():
    model = build_tensor_model((), ("x",), ("y",))
    A, B = model.left_ring, model.right_ring
    T = completed_tor(model, Ideal(A, [A("x")]), Ideal(B, [B("y")]), 0)
    assert T.k_dimension() == 1
    model = st_model()
    A, B = model.left_ring, model.right_ring
    assert completed_tor(model, Ideal(A, [A("s"), A("x")]), Ideal(B, [B("t")]), 1).is_zero()
    assert completed_tor(model, Ideal(A, [A("s"), A("x")]), Ideal(B, [B("t"), B("y")]), 2).is_zero()


def test_completed_tor_detects_a_shared_base_variable():
    model = st_model()
    A, B = model.left_ring, model.right_ring
    # s kills both sides, so Tor_1 over C contains the class of s
    T = completed_tor(model, Ideal(A, [A("s")]), Ideal(B, [B("s")]), 1)
    assert not T.vanishes_at_origin()


def test_diagonal_decompose_examples():
    model = build_tensor_model((), ("x",), ("y",))
    A, B = model.left_ring, model.right_ring
    report = diagonal_decompose(model, Ideal(A, [A("x^2")]), Ideal(B, []))
    assert report.chi_via_diagonal == report.chi_direct == 2
    assert report.e_values == [2]
    model = st_model()
    A, B = model.left_ring, model.right_ring
    report = diagonal_decompose(model, Ideal(A, [A("s"), A("x")]), Ideal(B, [B("t")]))
    assert (report.chi_via_diagonal, report.e_values) == (1, [1, 0, 0])
    report = diagonal_decompose(model, Ideal(A, [A("s"), A("x")]), Ideal(B, [B("s"), B("t")]))
    assert (report.chi_via_diagonal, report.chi_direct) == (0, 0)
    assert report.e_values == [1, 1, 0]
    assert report.to_dict()["module_ranks"][0] == 1


def test_diagonal_decompose_needs_support_at_origin():
    model = build_tensor_model(("s", "t"), ("x",), ("y",))
    A, B = model.left_ring, model.right_ring
    with pytest.raises(SupportNotAtOrigin):
        diagonal_decompose(model, Ideal(A, [A("x")]), Ideal(B, [B("y")]))


def test_r_flatness_examples():
    model = st_model()
    A = model.left_ring
    report = r_flatness_check(model, Ideal(A, []))
    assert report.holds and report.values["fiber_dimension"] == 1
    report = r_flatness_check(model, Ideal(A, [A("t - s*x")]))
    assert not report.holds
    assert not report.values["H1_vanishes"]
    assert report.values["fiber_dimension"] == 1
    assert report.values["dimension_minus_base"] == 0
    report = r_flatness_check(model, Ideal(A, [A("x")]), normal=True)
    assert report.holds and report.values["fiber_dimension"] == 0
    assert report.values["normal_asserted"] is True
    with pytest.raises(PreconditionError):
        r_flatness_check(build_tensor_model(("s",), ("x",), ("y",)), Ideal(ring("s,x"), []))


def test_dimension_bound_examples():
    model = st_model()
    A, B = model.left_ring, model.right_ring
    report = dimension_bound_check(model, Ideal(A, [A("x")]), Ideal(B, [B("y")]))
    assert (report.values["joint_dimension"], report.values["bound"]) == (2, 2)
    report = dimension_bound_check(model, Ideal(A, [A("s"), A("x")]), Ideal(B, [B("t"), B("y")]))
    assert (report.values["joint_dimension"], report.values["bound"]) == (0, 0)
    report = dimension_bound_check(model, Ideal(A, []), Ideal(B, []))
    assert (report.values["joint_dimension"], report.values["bound"]) == (4, 4)


def test_case1_degeneration_examples():
    R = ring("s,x")
    report = case1_degeneration_check(Ideal(R, [R("s"), R("x^2")]), Ideal(R, [R("x^3 + s")]), "s")
    assert report.values == {"chi_A": 0, "chi_quotient": 0}
    report = case1_degeneration_check(Ideal(R, [R("s")]), Ideal(R, [R("x")]), "s")
    assert report.values == {"chi_A": 1, "chi_quotient": 1}
    with pytest.raises(PreconditionError):
        case1_degeneration_check(Ideal(R, [R("x")]), Ideal(R, [R("x + s")]), "s")
    with pytest.raises(PreconditionError):
        case1_degeneration_check(Ideal(R, [R("s")]), Ideal(R, [R("s*x")]), "s")
    with pytest.raises(PreconditionError):
        case1_degeneration_check(Ideal(R, [R("s")]), Ideal(R, [R("x")]), "2*s")


def _left_ideal(rng, A):
    """x^a plus base multiples, sometimes with an extra generator."""
    s, t, x = A.gens()
    f = x ** rng.randint(1, 3) + s * _random_poly(rng, A, A.variables, 2, 2) + t * _random_poly(rng, A, A.variables, 1, 1)
    gens = [f]
    kind = rng.choice(("principal", "killed", "free"))
    if kind == "killed":
        gens.append(rng.choice((s, t, s * x, t - s * x)))
    elif kind == "free":
        gens.append(x ** rng.randint(1, 2) * _random_poly(rng, A, ("s", "t"), 1, 1))
    return Ideal(A, gens)


def _right_ideal(rng, B):
    s, t, y = B.gens()
    g = y ** rng.randint(1, 3) + s * _random_poly(rng, B, B.variables, 1, 2) + t * rng.randint(0, 3)
    gens = [g]
    if rng.random() < 0.5:
        gens.append(rng.choice((s, t, s * y + t)))
    return Ideal(B, gens)


def _pairs(seed, count):
    rng = random.Random(seed)
    model = st_model()
    return [(model, _left_ideal(rng, model.left_ring), _right_ideal(rng, model.right_ring)) for _ in range(count)]


@pytest.mark.parametrize("model, I, J", _pairs("depth", 20))
def test_regular_base_sequence_kills_higher_tor(model, I, J):
    A = model.left_ring
    M = PresentedModule.from_ideal(I)
    regular = all(koszul_homology([A("s"), A("t")], M, i).vanishes_at_origin() for i in (1, 2))
    if regular:
        for q in (1, 2):
            assert completed_tor(model, I, J, q).vanishes_at_origin()


def test_regular_base_sequence_cases_occur():
    flags = [r_flatness_check(model, I).holds for model, I, _ in _pairs("depth", 20)]
    assert any(flags) and not all(flags)


@pytest.mark.parametrize("model, I, J", _pairs("nzd", 20))
def test_base_nonzerodivisor_kills_tor_two(model, I, J):
    A = model.left_ring
    if quotient_by_element(I, A("s")) == I:
        assert completed_tor(model, I, J, 2).vanishes_at_origin()


def test_base_nonzerodivisor_cases_occur():
    hits = sum(quotient_by_element(I, model.left_ring("s")) == I for model, I, _ in _pairs("nzd", 20))
    assert 0 < hits < 20


def _prime_pairs(count):
    """I = (l1, x-monic), J = (l2, y-monic) with distinct base lines l1, l2."""
    rng = random.Random("primes")
    model = st_model()
    A, B = model.left_ring, model.right_ring
    out = []
    for _ in range(count):
        a, b = rng.randint(-5, 5), rng.randint(-5, 5)
        while a == b:
            b = rng.randint(-5, 5)
        l1 = A("s") + a * A("t")
        l2 = B("s") + b * B("t")
        f = A("x") ** rng.randint(1, 3) + A("t") * _random_poly(rng, A, A.variables, 1, 2)
        g = B("y") ** rng.randint(1, 3) + B("t") * _random_poly(rng, B, B.variables, 1, 2)
        out.append((model, Ideal(A, [l1, f]), Ideal(B, [l2, g])))
    return out


@pytest.mark.parametrize("model, I, J", _prime_pairs(10))
def test_distinct_base_lines_kill_tor_one(model, I, J):
    T = completed_tor(model, I, J, 1)
    assert T.minimal_presentation().rank == 0


@pytest.mark.parametrize("model, I, J", _pairs("support", 10))
def test_completed_tor_is_killed_by_both_ideals(model, I, J):
    Ic, Jc = model.embed_left(I), model.embed_right(J)
    S = Ic + Jc
    for q in (0, 1, 2):
        ann = completed_tor(model, I, J, q).annihilator()
        power = S
        for _ in range(10):
            if ann.contains_ideal(power):
                break
            power = power * S
        assert ann.contains_ideal(power)


def _diagonal_cases(base_size, count):
    rng = random.Random(f"diag:{base_size}")
    return [diagonal_instance(rng, base_size) for _ in range(count)]


@pytest.mark.parametrize("model, I, J", _diagonal_cases(0, 8) + _diagonal_cases(2, 8))
def test_diagonal_identity_on_random_pairs(model, I, J):
    report = diagonal_decompose(model, I, model.to_right(J))
    assert report.chi_via_diagonal == report.chi_direct == chi(I, J).chi

