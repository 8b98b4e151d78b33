import random
from fractions import Fraction as F

import pytest

from svh.algebra import (
    AlgebraSpec,
    BasisElement,
    BracketRule,
    CoeffPoly,
    LinearCombo,
    Window,
    bracket,
    check_leibniz,
    enumerate_basis,
)
from svh.dsl import parse_algebra
from svh.errors import DuplicateRule, InvalidAlgebra, UnknownFamily
from svh.presets import schrodinger_spec, twisted_sv_spec, witt_spec


def L(n):
    return BasisElement("L", n)


def Y(n):
    return BasisElement("Y", n)


def M(n):
    return BasisElement("M", n)


def test_generator_brackets():
    spec = twisted_sv_spec()
    assert bracket(spec, L(1), L(-1)) == LinearCombo({L(0): F(-2)})
    assert bracket(spec, L(2), Y(3)) == LinearCombo({Y(5): F(2)})
    assert bracket(spec, M(1), M(2)).is_zero()
    assert bracket(spec, Y(1), Y(2)) == LinearCombo({M(3): F(1)})


def test_closure_derived_brackets():
    spec = twisted_sv_spec()
    # [x, y] = -[y, x] for pairs only written one way round
    assert bracket(spec, Y(3), L(2)) == LinearCombo({Y(5): F(-2)})
    assert bracket(spec, M(2), L(1)) == LinearCombo({M(3): F(-2)})


def test_bilinearity_and_grading_random():
    spec = twisted_sv_spec()
    rng = random.Random(11)
    elems = [BasisElement(f, i) for f in spec.families for i in range(-3, 4)]
    for _ in range(25):
        a = LinearCombo({rng.choice(elems): F(rng.randint(-3, 3)) for _ in range(2)})
        b = LinearCombo({rng.choice(elems): F(rng.randint(-3, 3)) for _ in range(2)})
        c = LinearCombo({rng.choice(elems): F(rng.randint(-3, 3)) for _ in range(2)})
        assert bracket(spec, a + b, c) == bracket(spec, a, c) + bracket(spec, b, c)
        assert bracket(spec, a, b + c) == bracket(spec, a, b) + bracket(spec, a, c)
        s = F(rng.randint(-4, 4), rng.randint(1, 3))
        assert bracket(spec, s * a, b) == s * bracket(spec, a, b)
    for x in elems:
        for y in elems:
            assert bracket(spec, x, x).is_zero()
            assert bracket(spec, x, y) == F(-1) * bracket(spec, y, x)
            for el, _ in bracket(spec, x, y).items():
                assert el.index == x.index + y.index


def test_enumerate_basis():
    spec = twisted_sv_spec()
    assert len(enumerate_basis(spec, 1)) == 9
    deg0 = enumerate_basis(spec, 5, 0)
    assert deg0 == [L(0), Y(0), M(0)]
    one_fam = parse_algebra("algebra a\nfamilies A\n")
    assert enumerate_basis(one_fam, 0) == [BasisElement("A", 0)]


@pytest.mark.parametrize("spec_fn", [twisted_sv_spec, witt_spec, schrodinger_spec])
def test_leibniz_holds_on_presets(spec_fn):
    report = check_leibniz(spec_fn(), 6)
    assert report.ok
    assert report.checked > 0


def test_leibniz_abelian_trivial():
    spec = parse_algebra("algebra abelian\nfamilies A B\n")
    report = check_leibniz(spec, 3)
    assert report.ok
    assert report.skipped == 0


def test_leibniz_detects_corrupted_rule():
    # [L, M] coefficient changed from m to 1; closure still applies.
    spec = parse_algebra(
        "algebra corrupted\n"
        "families L Y M\n"
        "closure antisymmetric\n"
        "bracket L L -> (m - n) L\n"
        "bracket L Y -> (m - n/2) Y\n"
        "bracket L M -> 1 M\n"
        "bracket Y Y -> (m - n) M\n"
    )
    report = check_leibniz(spec, 3)
    assert not report.ok
    offenders = {v[0]: (v[1], v[2]) for v in report.violations}
    triple = (L(1), L(2), M(0))
    assert triple in offenders
    left, right = offenders[triple]
    assert left == LinearCombo({M(3): F(1)})
    assert right == LinearCombo({M(3): F(2)})


def test_window_validation():
    with pytest.raises(ValueError):
        Window(-1)
    assert Window.of(3).contains(-3)
    assert not Window.of(3).contains(4)


def test_coeffpoly_arithmetic_and_eval():
    n, m = CoeffPoly.var_n(), CoeffPoly.var_m()
    p = (m - n * F(1, 2)) * 2 + CoeffPoly.const(1)
    assert p.evaluate(2, 3) == 2 * (3 - 1) + 1
    assert (n**2).evaluate(-3, 0) == 9
    assert (p - p).is_zero()
    assert (n * m).swapped() == n * m
    assert (n - m).swapped() == m - n


def test_duplicate_rule_rejected():
    rule = BracketRule("A", "A", ((CoeffPoly.var_m() - CoeffPoly.var_n(), "A"),))
    with pytest.raises(DuplicateRule):
        AlgebraSpec("x", ["A"], [rule, rule])


def test_unknown_family_rejected():
    rule = BracketRule("A", "B", ((CoeffPoly.const(1), "A"),))
    with pytest.raises(UnknownFamily):
        AlgebraSpec("x", ["A"], [rule])
    spec = AlgebraSpec("x", ["A"], [])
    with pytest.raises(UnknownFamily):
        bracket(spec, BasisElement("Q", 0), BasisElement("A", 0))


def test_closure_consistency_enforced():
    # diagonal rule must be odd under argument swap when closure is set
    bad = BracketRule("A", "A", ((CoeffPoly.var_m(), "A"),))
    with pytest.raises(InvalidAlgebra):
        AlgebraSpec("x", ["A"], [bad], closure_antisymmetric=True)
    ok = BracketRule("A", "A", ((CoeffPoly.var_m() - CoeffPoly.var_n(), "A"),))
    AlgebraSpec("x", ["A"], [ok], closure_antisymmetric=True)
