"""Shipped algebras and reference objects.

The twisted Schroedinger-Virasoro algebra (families L, Y, M), its
Schroedinger subalgebra (Y, M) and the Witt subalgebra (L) are built from
the rule DSL, together with the Virasoro cocycle, the degree-0 form with
value (n^3 - n)/12 at (L_n, L_-n), and a suite of exact pattern checks that
recognizes scalar multiples of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import AlgebraSpec, BasisElement, Window
from .cocycles import BilinearForm
from .dsl import parse_algebra

_ZERO = Fraction(0)

TWISTED_SV_DSL = """\
algebra twisted-sv
families L Y M
closure antisymmetric
bracket L L -> (m - n) L
bracket L Y -> (m - n/2) Y
bracket L M -> m M
bracket Y Y -> (m - n) M
"""

WITT_DSL = """\
algebra witt
families L
closure antisymmetric
bracket L L -> (m - n) L
"""

SCHRODINGER_DSL = """\
algebra schrodinger
families Y M
closure antisymmetric
bracket Y Y -> (m - n) M
"""


@lru_cache(maxsize=None)
def twisted_sv_spec() -> AlgebraSpec:
    """The twisted Schroedinger-Virasoro algebra on families L, Y, M."""
    return parse_algebra(TWISTED_SV_DSL)


@lru_cache(maxsize=None)
def witt_spec() -> AlgebraSpec:
    """The Witt algebra: [L_n, L_m] = (m - n) L_{n+m}."""
    return parse_algebra(WITT_DSL)


@lru_cache(maxsize=None)
def schrodinger_spec() -> AlgebraSpec:
    """The twisted Schroedinger subalgebra on families Y, M."""
    return parse_algebra(SCHRODINGER_DSL)


PRESETS = {
    "twisted-sv": twisted_sv_spec,
    "witt": witt_spec,
    "schrodinger": schrodinger_spec,
}


def preset_spec(name: str) -> AlgebraSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; available: {sorted(PRESETS)}") from None


def virasoro_form(w: Window | int, algebra: str = "twisted-sv") -> BilinearForm:
    """Degree-0 form with value (n^3 - n)/12 at (L_n, L_-n), zero elsewhere."""
    w = Window.of(w)
    entries = {}
    for n in w.indices():
        value = Fraction(n**3 - n, 12)
        if value != 0:
            entries[(BasisElement("L", n), BasisElement("L", -n))] = value
    return BilinearForm(algebra, w, entries, 0)


@dataclass
class LemmaVerdict:
    """Result of one pattern check; failures list (pair, actual, expected)."""

    name: str
    passed: bool
    failures: list[tuple[tuple[BasisElement, BasisElement], Fraction, Fraction]]


@dataclass
class LemmaReport:
    """Verdicts of the canonical-pattern checks on an inner window.

    All checks pass exactly when the form equals c * virasoro_form on pairs
    with both indices inside the inner bound; `c` is the extracted scalar
    (None when the L-L entries do not follow the cubic pattern).
    """

    verdicts: list[LemmaVerdict]
    c: Fraction | None
    c1: Fraction | None = None  # only set by the pre-normalization variant

    @property
    def all_pass(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def verdict_map(self) -> dict[str, bool]:
        return {v.name: v.passed for v in self.verdicts}


def _check_zero(form: BilinearForm, name, left_fam, right_fam, bound, expected=None):
    failures = []
    for n in range(-bound, bound + 1):
        pair = (BasisElement(left_fam, n), BasisElement(right_fam, -n))
        actual = form.evaluate(*pair)
        want = expected(n) if expected is not None else _ZERO
        if actual != want:
            failures.append((pair, actual, want))
    return LemmaVerdict(name, not failures, failures)


def lemma_assertions(
    form: BilinearForm, inner: Window | int, pre_normalization: bool = False
) -> LemmaReport:
    """Check a degree-0 form against the canonical cocycle pattern.

    With ``pre_normalization=True`` the L-M, M-L and Y-Y diagonals are
    allowed to carry the one-parameter pattern n*c1 (resp. 2n*c1) that the
    normalizer's final coboundary subtraction removes; c1 is read from the
    (L_1, M_-1) entry.
    """
    bound = Window.of(inner).n
    if bound > form.window.n:
        raise ValueError(f"inner bound {bound} exceeds the window {form.window.n}")

    verdicts = []
    verdicts.append(_check_zero(form, "mm_zero", "M", "M", bound))
    verdicts.append(_check_zero(form, "ym_zero", "Y", "M", bound))
    verdicts.append(_check_zero(form, "my_zero", "M", "Y", bound))
    verdicts.append(_check_zero(form, "ly_zero", "L", "Y", bound))
    verdicts.append(_check_zero(form, "yl_zero", "Y", "L", bound))

    c1 = None
    if pre_normalization:
        if bound >= 1:
            c1 = form.evaluate(BasisElement("L", 1), BasisElement("M", -1))
        else:
            c1 = _ZERO
        k = c1
        verdicts.append(_check_zero(form, "lm_c1", "L", "M", bound, lambda n: n * k))
        verdicts.append(_check_zero(form, "ml_c1", "M", "L", bound, lambda n: n * k))
        verdicts.append(_check_zero(form, "yy_c1", "Y", "Y", bound, lambda n: 2 * n * k))
    else:
        verdicts.append(_check_zero(form, "lm_zero", "L", "M", bound))
        verdicts.append(_check_zero(form, "ml_zero", "M", "L", bound))
        verdicts.append(_check_zero(form, "yy_zero", "Y", "Y", bound))

    # L-L diagonal must follow one scalar multiple of the odd cubic pattern.
    c: Fraction | None = _ZERO
    if bound >= 2:
        c = form.evaluate(BasisElement("L", 2), BasisElement("L", -2)) / Fraction(6, 12)
    failures = []
    for n in range(-bound, bound + 1):
        pair = (BasisElement("L", n), BasisElement("L", -n))
        actual = form.evaluate(*pair)
        want = c * Fraction(n**3 - n, 12)
        if actual != want:
            failures.append((pair, actual, want))
    ll = LemmaVerdict("ll_cubic", not failures, failures)
    verdicts.append(ll)
    if not ll.passed:
        c = None

    return LemmaReport(verdicts=verdicts, c=c, c1=c1)
