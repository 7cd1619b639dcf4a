import random

import pytest

from artinring import koszul as kz
from artinring import resolve, series
from artinring.generator import LevelSpec, sample_level_ideal
from artinring.poly import parse_poly
from artinring.quotient import build_quotient, truncate
from artinring.series import IntSeries

P = 32003


def level_ring(e, s, c, seed=1):
    return build_quotient(P, e, sample_level_ideal(LevelSpec(P, e, s, c, seed=seed)))


def gorenstein_223():
    return build_quotient(P, 2, sample_level_ideal(LevelSpec(P, 2, 3, 1, seed=5)))


def monomial_ring(e, texts):
    names = "xyzuv"[:e]
    return build_quotient(P, e, [parse_poly(t, names, P) for t in texts])


# ---------------------------------------------------------------- arithmetic

def test_poly_strips_and_degree():
    a = IntSeries.poly([1, 2, 0, 0])
    assert a.coeffs == (1, 2)
    assert a.degree() == 1
    assert IntSeries.poly([]).degree() == -1


def test_product_against_convolution():
    rng = random.Random(7)
    for _ in range(20):
        a = [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 6))]
        b = [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 6))]
        prod = IntSeries.poly(a) * IntSeries.poly(b)
        for k in range(len(a) + len(b)):
            want = sum(a[i] * b[k - i]
                       for i in range(len(a)) if 0 <= k - i < len(b))
            assert prod.coeff(k) == want


def test_divide_round_trip():
    rng = random.Random(11)
    for _ in range(20):
        a = [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 7))]
        b = [rng.choice([1, -1])] + [rng.randrange(-9, 10)
                                     for _ in range(rng.randrange(0, 5))]
        sa, sb = IntSeries.poly(a), IntSeries.poly(b)
        q = (sa * sb).divide(sb, 10)
        assert all(q.coeff(i) == sa.coeff(i) for i in range(11))


def test_geometric_series():
    g = IntSeries.poly([1]).divide(IntSeries.poly([1, -1]), 8)
    assert g.coeffs == (1,) * 9


def test_divide_requires_unit():
    with pytest.raises(ValueError):
        IntSeries.poly([1]).divide(IntSeries.poly([2, 1]), 4)


def test_order_propagation():
    a = IntSeries.truncated([1, 1, 1], 2)
    b = IntSeries.poly([1, 5])
    assert (a * b).order == 2
    assert (a + b).order == 2
    assert a.shift(3).order == 5
    with pytest.raises(ValueError):
        (a * b).coeff(3)


def test_text_format():
    d = IntSeries.poly([1, 0, -5, -5, 0, 1])
    assert d.text() == "1 - 5*z^2 - 5*z^3 + z^5"
    t = IntSeries.truncated([1, 3, 8], 2)
    assert t.text() == "1 + 3*z + 8*z^2 + O(z^3)"


# -------------------------------------------------------------- denominators

def test_denominator_351_frozen():
    r = level_ring(3, 5, 1)
    d = series.denominator_dR(r)
    assert d.coeffs == (1, 0, -5, -5, 0, 1)
    exp = series.one_plus_z_power(3).divide(d, 8)
    assert exp.coeffs == (1, 3, 8, 21, 55, 144, 377, 987, 2584)


def test_denominator_352_no_extra_term():
    # v = 4 here, so s < 2v-1 and the denominator is the Golod one
    r = level_ring(3, 5, 2)
    d = series.denominator_dR(r)
    assert d.coeffs == (1, 0, -9, -10, -2)
    assert d.coeffs == series.golod_denominator(r).coeffs


def test_hypothesis_even_socle_degree():
    r = level_ring(3, 4, 2)
    probs = series.hypothesis_problems(r)
    assert "socle degree is even" in probs
    with pytest.raises(ValueError, match="hypotheses not met"):
        series.denominator_dR(r)


def test_hypothesis_small_socle_degree():
    assert series.hypothesis_problems(gorenstein_223()) == [
        "socle degree below 5"]


def test_hypothesis_not_compressed():
    r = monomial_ring(2, ["y^2", "x^5"])
    assert series.hypothesis_problems(r) == ["ring is not compressed"]


def test_hypothesis_socle_at_next_to_top():
    r = monomial_ring(2, ["x^2", "x*y^4", "y^6"])
    assert "socle meets degree s-1" in series.hypothesis_problems(r)


# ---------------------------------------------------------------- verifiers

def test_golod_report_352():
    rep = series.verify_golod_ring(level_ring(3, 5, 2), 4)
    assert rep["pass"] and rep["complete"]
    assert rep["betti"] == [1, 3, 12, 38, 140]
    assert rep["denominator"] == [1, 0, -9, -10, -2]


def test_golod_report_351_fails():
    # main-theorem case: the Golod bound is strict from i = 4 on
    rep = series.verify_golod_ring(level_ring(3, 5, 1), 4)
    assert not rep["pass"]
    assert rep["betti"][4] == 55 and rep["bound"][4] == 56


def test_main_theorem_351():
    rep = series.verify_main_theorem(level_ring(3, 5, 1), 6)
    assert rep["applicable"] and rep["case"] == "s = 2t-1"
    assert rep["pass"]
    assert rep["betti_direct"] == [1, 3, 8, 21, 55, 144, 377]
    assert rep["direct_depth"] == 6 and not rep["direct_truncated"]
    assert rep["phi_kernel"] == [0, 1, 0, 1]
    assert rep["identity_pass"]


def test_main_theorem_352_golod_case():
    rep = series.verify_main_theorem(level_ring(3, 5, 2), 4)
    assert rep["case"] == "s < 2t-1"
    assert rep["matches_golod_denominator"]
    assert rep["pass"]


def test_main_theorem_inapplicable():
    rep = series.verify_main_theorem(gorenstein_223(), 4)
    assert rep["applicable"] is False and rep["pass"] is None


def test_module_rationality_free_module():
    r = level_ring(3, 5, 1)
    rep = series.verify_module_rationality(r, resolve.free_module_over(r), 6)
    assert rep["pass"] and rep["margin"] == 1
    assert rep["product"] == [1, 0, -5, -5, 0, 1, 0]


def test_module_rationality_power():
    r = level_ring(3, 5, 1)
    rep = series.verify_module_rationality(r, resolve.window_module(r, 2, r.s), 6)
    assert rep["pass"]
    assert all(v == 0 for v in rep["tail"].values())


def test_quotient_socle_351():
    rep = series.verify_quotient_socle(level_ring(3, 5, 1), 5)
    assert rep["applicable"]
    assert rep["quotient_module_series"]["pass"]
    assert rep["quotient_module_series"]["betti_quotient"] == [1, 1, 3, 8, 21, 55]
    assert rep["change_of_rings_series"]["pass"]
    assert rep["koszul_homology_shift"]["pass"]
    assert rep["koszul_homology_shift"]["koszul_totals_quotient"] == [1, 6, 8, 3]
    assert rep["quotient_golod"]["pass"]
    assert rep["pass"]


def test_denominator_comparison_351():
    rep = series.denominator_comparison(level_ring(3, 5, 1), 6)
    assert not rep["same_polynomial"]
    assert rep["golod_expansion"][4] == 56
    assert rep["d_R_expansion"][4] == 55
    assert not rep["expansions_agree"] and not rep["coincidence"]


def test_denominator_comparison_352():
    rep = series.denominator_comparison(level_ring(3, 5, 2), 6)
    assert rep["same_polynomial"] and rep["expansions_agree"]
    assert not rep["coincidence"]


def test_expansion_matches_koszul_table_prefix():
    # low Betti numbers are forced: b_1 = e, b_2 = binom(e,2) + mu(I)
    for seed in (1, 2, 3):
        r = level_ring(3, 5, 1, seed=seed)
        d = series.denominator_dR(r)
        exp = series.one_plus_z_power(3).divide(d, 3)
        mu = kz.tor_over_Q(r).total(1)
        assert exp.coeff(1) == 3
        assert exp.coeff(2) == 3 + mu
