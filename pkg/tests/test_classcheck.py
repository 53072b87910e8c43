import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanforge.classcheck import (
    MAX_ORDER,
    FunctionHandle,
    bernstein_check,
    claims_corpus,
    cm_check,
    cm_order_check,
    h_alpha_claim_check,
    lcm_check,
    named_function,
    negative_controls,
    run_claim,
    stieltjes_density_check,
)
from meanforge.errors import DomainError
from meanforge.means import MeanPair, mean

EXP_NEG = FunctionHandle(lambda t: math.exp(-t), (-math.inf, math.inf), name="exp(-t)")
CORPUS = claims_corpus()
CONTROLS = negative_controls()


def test_examples():
    assert cm_check(EXP_NEG).passed
    assert cm_check(named_function("h:0.5")).passed
    v = cm_check(named_function("identity"), max_order=2)
    assert not v.passed and v.status == "fail" and v.witness[1] == 1
    shift_a = FunctionHandle(lambda t: mean("arithmetic", MeanPair(2 + t, 1 + t)), (-1, math.inf))
    assert bernstein_check(shift_a, grid=[-0.95, 0.0, 3.0]).passed
    shift_l = FunctionHandle(lambda t: mean("logarithmic", MeanPair(2 + t, 1 + t)), (-1, math.inf))
    assert bernstein_check(shift_l, grid=[-0.95, 0.0, 3.0]).passed
    v = bernstein_check(EXP_NEG)
    assert not v.passed and v.witness[1] == 0
    assert lcm_check(named_function("recip-linear")).passed
    v = lcm_check(named_function("exp-pos"))
    assert not v.passed and v.witness[1] == 1


@pytest.mark.parametrize("claim", CORPUS, ids=[c.name for c in CORPUS])
def test_claims_pass_at_order_eight(claim):
    v = run_claim(claim)
    assert v.passed, (v.worst_margin, v.witness)
    assert v.worst_margin >= -v.margin_tol


@pytest.mark.parametrize("claim", CONTROLS, ids=[c.name + "/" + c.klass for c in CONTROLS])
def test_negative_controls_fail_with_witness(claim):
    v = run_claim(claim)
    assert not v.passed and v.status == "fail"
    t, k = v.witness
    assert math.isfinite(t) and isinstance(k, int)


@pytest.mark.parametrize("claim", [c for c in CORPUS if c.klass != "stieltjes"],
                         ids=[c.name for c in CORPUS if c.klass != "stieltjes"])
def test_order_stability(claim):
    assert all(run_claim(claim, max_order=n).passed for n in range(MAX_ORDER + 1))


@pytest.mark.parametrize("step", [1e-2, 1e-3])
def test_step_robustness(step):
    assert all(run_claim(c, step=step).passed for c in CORPUS)
    assert not any(run_claim(c, step=step).passed for c in CONTROLS)


def test_verdict_invariant_pass_iff_margin():
    for c in CORPUS + CONTROLS:
        v = run_claim(c)
        if c.klass != "stieltjes":
            assert v.passed == (v.worst_margin >= -v.margin_tol)


def test_inconclusive_within_noise_floor():
    def wiggle(size):
        return FunctionHandle(lambda t: 1.0 + (size if abs(t - 1.01) < 1e-9 else 0.0),
                              (0.0, math.inf))

    v = cm_check(wiggle(2.2e-16), max_order=1, grid=[1.0], step=0.01, margin_tol=0.0)
    assert v.status == "inconclusive" and not v.passed
    v = cm_check(wiggle(1e-6), max_order=1, grid=[1.0], step=0.01, margin_tol=0.0)
    assert v.status == "fail"


def test_exact_derivatives_are_checked():
    wrong = FunctionHandle(lambda t: math.exp(-t), (0.0, math.inf),
                           derivative=lambda t, k: math.exp(-t), exact_order=3)
    v = cm_check(wrong, max_order=3)
    assert not v.passed and v.witness[1] == 1


def test_cm_order_reports_lower_order():
    ident = FunctionHandle(lambda t: mean("identric", MeanPair(2 + t, 1 + t)), (-1, math.inf))
    v = cm_order_check(ident, 1, grid=[-0.95, 0.0, 1.0, 5.0])
    assert v.passed and v.details["lower_order_cm"] is False
    v = cm_order_check(EXP_NEG, 1)
    assert not v.passed


def test_stieltjes_check_and_routing():
    for alpha in (0.5, 0.9):
        v = stieltjes_density_check(alpha)
        assert v.passed and v.details["max_rel_residual"] <= 1e-8
    with pytest.raises(DomainError):
        stieltjes_density_check(-0.5)
    v = h_alpha_claim_check(-0.5)
    assert v.passed and v.class_name == "Bernstein"
    assert h_alpha_claim_check(0.5).class_name == "Stieltjes"
    with pytest.raises(DomainError):
        h_alpha_claim_check(0.0)


def test_domain_errors():
    with pytest.raises(DomainError):
        cm_check(EXP_NEG, max_order=9)
    with pytest.raises(DomainError):
        cm_check(named_function("identity"), grid=[-1.0])
    with pytest.raises(DomainError):
        lcm_check(FunctionHandle(lambda t: -1.0, (0.0, math.inf)))
    with pytest.raises(DomainError):
        named_function("nope")


# --- properties -------------------------------------------------------------------

exps = st.lists(st.tuples(st.floats(min_value=0.1, max_value=5.0),
                          st.floats(min_value=0.0, max_value=3.0)), min_size=1, max_size=4)


@settings(max_examples=50, deadline=None)
@given(exps)
def test_exponential_mixtures_are_cm(terms):
    f = FunctionHandle(lambda t: sum(c * math.exp(-a * t) for c, a in terms), (0.0, math.inf))
    assert cm_check(f, grid=[0.1, 1.0, 3.0]).status != "fail"


@settings(max_examples=50, deadline=None)
@given(exps)
def test_bernstein_from_exponential_mixtures(terms):
    # a + bt + sum c (1 - exp(-a t)) is a Bernstein function
    f = FunctionHandle(lambda t: 0.5 + 0.1 * t + sum(c * -math.expm1(-a * t) for c, a in terms),
                       (0.0, math.inf))
    assert bernstein_check(f, grid=[0.1, 1.0, 3.0]).status != "fail"


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.1, max_value=3.0), st.floats(min_value=0.5, max_value=5.0))
def test_growing_functions_fail_cm(p, c):
    f = FunctionHandle(lambda t: c * (1 + t) ** p, (0.0, math.inf))
    assert not cm_check(f, max_order=2, grid=[0.5, 2.0]).passed
