import time
from fractions import Fraction

from torocoh.bundle import make_instance
from torocoh.classify import (
    VERDICT_TORUS,
    VERDICT_WILD,
    VERDICT_ZERO,
    ClassifyOptions,
    classify,
)
from torocoh.scalars.descriptors import FloatTagged, QuadraticIrrational, Rational
from torocoh.worked_examples import EXAMPLES

ZERO, ONE = Rational(0), Rational(1)


def _run(name, **kw):
    P, d = EXAMPLES[name]()
    return classify(P, d, ClassifyOptions(**kw))


def test_half_shift_case_I_i():
    res = _run("10.1")
    assert res.case == "I_i" and res.grade == "certified"
    assert res.verdicts == {1: VERDICT_ZERO}
    assert res.sigma0 is None


def test_alpha_shift_case_I_ii():
    res = _run("10.2", external_facts=True)
    assert res.case == "I_ii" and res.verdicts == {1: VERDICT_TORUS}
    assert res.sigma0 == (0, 1, 0)
    assert any("C(1,1) = 1" in n for n in res.notes)


def test_factorial_lacunary_undetermined():
    res = _run("10.3")
    assert res.case == "undetermined"
    assert res.condition.witnesses  # the failed refutation is kept for inspection


def test_supergap_case_II():
    res = _run("supergap")
    assert res.case == "II" and res.grade == "certified"
    assert res.verdicts == {1: VERDICT_WILD}


def test_witness_rule_override_on_factorial_data_stays_undetermined():
    # the super-gap q-family does not match the factorial series
    res = _run("10.3", witness_rule="supergap")
    assert res.case == "undetermined"


def test_trivial_bundle():
    P, d = make_instance(2, 1, [[(ZERO, QuadraticIrrational(0, 1, 2))], [(ZERO, ONE)]],
                         [ZERO, ZERO], [Rational(3)])
    assert classify(P, d).case == "trivial_bundle"


def test_failing_irrationality_is_reported():
    P, d = make_instance(2, 1, [[(Rational(Fraction(1, 2)), ONE)], [(Rational(Fraction(1, 3)), ZERO)]],
                         [ZERO, ZERO], [Rational(Fraction(1, 5))])
    res = classify(P, d)
    assert res.case == "undetermined" and res.irrationality.status == "certified_fails"


def test_float_data_needs_accept_evidence():
    tag = FloatTagged("1.4142135623730951", Fraction(1, 10 ** 15))
    P, d = make_instance(2, 1, [[(ZERO, tag)], [(ZERO, ONE)]], [ZERO, ZERO], [Rational(Fraction(1, 2))])
    strict = classify(P, d, ClassifyOptions(radius=6))
    assert strict.case == "undetermined" and strict.grade == "evidence"
    loose = classify(P, d, ClassifyOptions(radius=6, accept_evidence=True))
    assert loose.case == "I_i" and loose.grade == "evidence"


def test_rational_plus_sqrt_instance_with_m_2():
    s = QuadraticIrrational
    S = [[(ZERO, ONE), (s(0, 1, 3), ZERO)],
         [(s(Fraction(1, 2), 1, 3), ZERO), (ZERO, ONE)],
         [(s(0, 2, 3), ZERO), (Rational(Fraction(1, 7)), ZERO)]]
    P, d = make_instance(3, 2, S, [ZERO, ZERO, ZERO], [s(0, 1, 3), Rational(Fraction(1, 2))])
    res = classify(P, d)
    assert res.case in ("I_i", "I_ii") and res.grade == "certified"
    assert set(res.verdicts) == {1, 2}


def test_examples_run_fast():
    for name in EXAMPLES:
        start = time.monotonic()
        _run(name)
        assert time.monotonic() - start < 10
