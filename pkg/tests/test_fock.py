import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fockmult import (
    Cyclic,
    FockVector,
    IncompatibleWindowError,
    NonNegIntegers,
    OutOfWindowError,
    SymbolParseError,
    TruncationOverflowError,
    UnsupportedOperationError,
    apply_U,
    convolve_left,
    convolve_right,
    delta,
    inner,
    parse_polynomial,
    polynomial_json_text,
    polynomial_to_json,
    random_polynomial,
    window,
)
from oracles import brute_convolve

# -- vector space basics --------------------------------------------------------


def test_delta_and_getitem(zp):
    w = window(zp, 3)
    d = delta(w, 2)
    assert d[2] == 1 and d[0] == 0
    assert d.support() == (2,)


def test_inner_linear_first_slot(zp):
    w = window(zp, 1)
    f = delta(w, 0)
    assert inner(f.scale(1j), f) == 1j
    assert inner(f, f.scale(1j)) == -1j


def test_norm_and_degree(zp):
    w = window(zp, 4)
    f = FockVector(w, {0: 3, 4: 4})
    assert f.norm() == 5.0
    assert f.degree() == 4
    assert FockVector(w, {}).degree() == 0


def test_add_sub_scale(zp):
    w = window(zp, 2)
    f = FockVector(w, {0: 1, 1: 2})
    g = FockVector(w, {1: -2, 2: 1j})
    assert (f + g).coeffs == {0: 1, 2: 1j}  # exact-zero pruning
    assert (f - f).support() == ()
    assert f.scale(2)[1] == 4
    assert (2 * f)[1] == (f * 2)[1] == 4


def test_mixed_windows_rejected(zp):
    f = delta(window(zp, 1), 0)
    g = delta(window(zp, 2), 0)
    with pytest.raises(IncompatibleWindowError):
        f + g


def test_rebase(zp):
    w1, w4 = window(zp, 1), window(zp, 4)
    f = FockVector(w1, {1: 2j})
    up = f.rebase(w4)
    assert up.window is w4 or up.window == w4
    assert up[1] == 2j
    assert up.rebase(w1) == f
    tall = FockVector(w4, {3: 1})
    with pytest.raises(OutOfWindowError):
        tall.rebase(w1)


def test_out_of_window_coefficient_rejected(zp):
    with pytest.raises(OutOfWindowError):
        FockVector(window(zp, 1), {2: 1.0})


def test_canonical_iteration_order(zz):
    w = window(zz, 2)
    f = FockVector(w, {2: 1, -2: 1, 0: 1})
    assert f.support() == (-2, 0, 2)


# -- convolution ------------------------------------------------------------------


def test_convolve_cyclic_wraps(z3):
    w = window(z3, 0)
    assert convolve_left(delta(w, 2), delta(w, 2), w) == delta(w, 1)


def test_convolve_binomial(zp):
    w = window(zp, 2)
    f = FockVector(w, {0: 1, 1: 1})
    sq = convolve_left(f, f, w)
    assert sq.coeffs == {0: 1, 1: 2, 2: 1}


def test_convolve_free_concatenates(free2):
    w = window(free2, 3)
    out = convolve_left(delta(w, (1,)), delta(w, (2, 1)), w)
    assert out == delta(w, (1, 2, 1))


def test_convolve_overflow_is_hard_error(zp):
    w = window(zp, 2)
    f = FockVector(w, {2: 1})
    with pytest.raises(TruncationOverflowError):
        convolve_left(f, f, w)


def test_convolve_right_order(free2):
    w = window(free2, 2)
    t = window(free2, 3)
    f, p = delta(w, (1,)), delta(w, (2, 2))
    assert convolve_right(f, p, t) == delta(t, (1, 2, 2))
    assert convolve_left(p, f, t) == delta(t, (2, 2, 1))


def test_convolve_matches_brute_force(z3, zp, v2, free2, rng):
    for spec, lvl in [(z3, 0), (zp, 2), (v2, 1), (free2, 2)]:
        w = window(spec, lvl)
        t = window(spec, 2 * lvl if lvl else 0)
        for _ in range(10):
            f = random_polynomial(rng, w, max_terms=3)
            g = random_polynomial(rng, w, max_terms=3)
            got = convolve_left(f, g, t)
            want = brute_convolve(spec, f.coeffs, g.coeffs)
            assert set(got.support()) == set(want)
            for k, v in want.items():
                assert got[k] == pytest.approx(v, abs=1e-15)


def test_convolution_associative(zp, free2, rng):
    for spec, lvl in [(zp, 3), (free2, 2)]:
        w = window(spec, lvl)
        t = window(spec, 3 * lvl)
        for _ in range(10):
            f = random_polynomial(rng, w, max_terms=3)
            g = random_polynomial(rng, w, max_terms=3)
            h = random_polynomial(rng, w, max_terms=3)
            lhs = convolve_left(convolve_left(f, g, t), h, t)
            rhs = convolve_left(f, convolve_left(g, h, t), t)
            assert (lhs - rhs).norm() < 1e-13


def test_abelian_commutation(z3, zp, v2, zz, rng):
    for spec, lvl in [(z3, 0), (zp, 3), (v2, 2), (zz, 2)]:
        w = window(spec, lvl)
        t = window(spec, 2 * lvl if lvl else 0)
        f = random_polynomial(rng, w, max_terms=4)
        g = random_polynomial(rng, w, max_terms=4)
        assert (convolve_left(f, g, t) - convolve_left(g, f, t)).norm() < 1e-13


def test_unit_is_identity(free2, rng):
    w = window(free2, 2)
    one = delta(w, ())
    f = random_polynomial(rng, w)
    assert convolve_left(one, f, w) == f
    assert convolve_right(f, one, w) == f


# -- the U involution ----------------------------------------------------------


def test_u_on_cyclic(z3):
    w = window(z3, 0)
    assert apply_U(delta(w, 1)) == delta(w, 2)


def test_u_conjugates_and_inverts(zz):
    w = window(zz, 2)
    f = FockVector(w, {2: 1 + 1j})
    assert apply_U(f).coeffs == {-2: 1 - 1j}


def test_u_is_involution_on_random(c5, rng):
    w = window(c5, 0)
    for _ in range(20):
        f = random_polynomial(rng, w)
        assert apply_U(apply_U(f)) == f
        assert apply_U(f).norm() == pytest.approx(f.norm(), abs=1e-15)


def test_u_needs_group(zp):
    with pytest.raises(UnsupportedOperationError):
        apply_U(delta(window(zp, 1), 0))


# -- polynomial parsing -----------------------------------------------------------


def test_parse_polynomial_minimal_window(zp):
    f = parse_polynomial(zp, '[{"elem":{"int":3},"re":1.5,"im":-2}]')
    assert f.window.level == 3
    assert f[3] == 1.5 - 2j


def test_parse_polynomial_explicit_level(zp):
    f = parse_polynomial(zp, [{"elem": {"int": 1}, "re": 1}], level=5)
    assert f.window.level == 5


def test_parse_polynomial_level_below_degree(zp):
    with pytest.raises(SymbolParseError):
        parse_polynomial(zp, [{"elem": {"int": 4}, "re": 1}], level=2)


def test_parse_polynomial_im_optional_and_terms_sum(z3):
    f = parse_polynomial(
        z3, '[{"elem":{"int":1},"re":1},{"elem":{"int":1},"im":1}]'
    )
    assert f[1] == 1 + 1j


def test_parse_polynomial_rejects_garbage(zp):
    with pytest.raises(SymbolParseError):
        parse_polynomial(zp, "not json")
    with pytest.raises(SymbolParseError):
        parse_polynomial(zp, '{"elem":{"int":1}}')  # not a list
    with pytest.raises(SymbolParseError):
        parse_polynomial(zp, '[{"re":1}]')  # missing elem


def test_polynomial_json_round_trip(free2, rng):
    w = window(free2, 2)
    f = random_polynomial(rng, w, max_terms=5)
    back = parse_polynomial(free2, polynomial_to_json(f), level=2)
    assert back == f


def test_polynomial_text_preserves_17_digits(zp):
    w = window(zp, 1)
    f = FockVector(w, {0: 1 / 3, 1: math.sqrt(2) * 1j})
    text = polynomial_json_text(f)
    back = parse_polynomial(zp, text, level=1)
    assert back == f
    assert json.loads(text)  # well-formed


def test_empty_polynomial(zp):
    f = parse_polynomial(zp, "[]")
    assert f.support() == () and f.degree() == 0


def test_random_polynomial_is_seed_deterministic(free2):
    w = window(free2, 2)
    a = random_polynomial(np.random.default_rng(42), w, max_terms=4)
    b = random_polynomial(np.random.default_rng(42), w, max_terms=4)
    assert a == b


def test_random_polynomial_normalize(zp):
    w = window(zp, 6)
    f = random_polynomial(np.random.default_rng(1), w, normalize=True)
    assert f.norm() == pytest.approx(1.0, abs=1e-12)


# -- algebra laws as properties ---------------------------------------------------

coeff = st.complex_numbers(
    min_magnitude=0, max_magnitude=4, allow_nan=False, allow_infinity=False
)


@given(st.lists(st.tuples(st.integers(0, 3), coeff), max_size=4),
       st.lists(st.tuples(st.integers(0, 3), coeff), max_size=4))
@settings(max_examples=60)
def test_convolution_is_bilinear_in_scaling(fa, ga):
    spec = NonNegIntegers()
    w = window(spec, 3)
    t = window(spec, 6)
    f = FockVector(w, {})
    for k, c in fa:
        f = f + FockVector(w, {k: c})
    g = FockVector(w, {})
    for k, c in ga:
        g = g + FockVector(w, {k: c})
    lhs = convolve_left(f.scale(2j), g, t)
    rhs = convolve_left(f, g, t).scale(2j)
    assert (lhs - rhs).norm() < 1e-12


@given(st.integers(0, 4), st.integers(0, 4))
def test_deltas_convolve_to_delta(a, b):
    spec = NonNegIntegers()
    w = window(spec, 4)
    t = window(spec, 8)
    assert convolve_left(delta(w, a), delta(w, b), t) == delta(t, a + b)
