"""Named inequality checks against hand-derived closed forms.

Every frozen constant below is computed from the defining formulas with
math.exp/cosh only, never through the code paths under test.
"""

import math

import numpy as np
import pytest

from wickbench import (
    ChaosExpansion,
    ConvolutionMeasure,
    DiscreteMeasure,
    ExpCombo,
    HolderParams,
    InequalityReport,
    CHECK_REGISTRY,
    ab_matrix_check,
    beckner_deficit,
    char_gram_psd_check,
    classic_beckner_coeff_check,
    covariance_gap,
    function_from_json,
    g_lambda_bound_check,
    holder_check,
    left_positivity,
    oracle_triangle,
    run_check,
    strong_positivity_check,
)

E1 = ExpCombo.exponential([1.0])
RHO0 = ConvolutionMeasure.standard(1)
SYM = DiscreteMeasure(1, [[1.0], [-1.0]], [0.5, 0.5])
RHO_SYM = ConvolutionMeasure(SYM)


def test_report_shapes():
    r = InequalityReport.from_sides("demo", {}, 1.0, 3.0, 1e-9)
    assert r.gap == 2.0 and r.passed
    n = r.negated()
    assert n.gap == -2.0 and not n.passed
    assert n.lhs == 3.0 and n.rhs == 1.0
    psd = InequalityReport.from_min_eig("demo", {}, -1e-12, 1e-10)
    assert psd.passed and psd.rhs == -1e-12
    ident = InequalityReport.from_mismatch("demo", {}, 5e-13, 1e-12)
    assert ident.passed and ident.gap == -5e-13
    d = r.as_dict()
    assert d["pass"] is True and d["method"] == {"lhs": "exact", "rhs": "exact"}
    assert r.method == "exact"


def test_beckner_deficit_gaussian_case():
    rep = beckner_deficit(E1, RHO0, 0.5)
    assert rep.lhs == pytest.approx(math.e - math.exp(0.5), rel=1e-13)
    assert rep.rhs == pytest.approx(0.5 * math.e, rel=1e-13)
    assert rep.gap == pytest.approx(math.exp(0.5) - 0.5 * math.e, rel=1e-12)
    assert rep.passed
    assert rep.params["integrals"]["f_sq"] == pytest.approx(math.e, rel=1e-14)


def test_beckner_deficit_convolution_case():
    rep = beckner_deficit(E1, RHO_SYM, 0.5)
    c2 = math.cosh(2.0)
    assert rep.lhs == pytest.approx((math.e - math.exp(0.5)) * c2, rel=1e-13)
    assert rep.rhs == pytest.approx(0.5 * math.e * c2, rel=1e-13)
    assert rep.gap == pytest.approx((math.exp(0.5) - 0.5 * math.e) * c2, rel=1e-12)


def test_beckner_deficit_alpha_one_is_exactly_zero():
    for f in (E1, ExpCombo.exponential([0.3, -1.2], 2.0) + ExpCombo.exponential([0.9, 0.1], -0.5)):
        rho = RHO_SYM if f.dim == 1 else ConvolutionMeasure.standard(2)
        rep = beckner_deficit(f, rho, 1.0)
        assert rep.lhs == 0.0
        assert rep.rhs == 0.0
        assert rep.gap == 0.0


def test_beckner_deficit_chaos_route():
    f = ChaosExpansion.basis((1,))
    rep = beckner_deficit(f, RHO0, 0.3)
    # int f^2 = 1, int f o_a f = a, dirichlet = 1
    assert rep.lhs == pytest.approx(0.7, rel=1e-14)
    assert rep.rhs == pytest.approx(0.7, rel=1e-14)
    assert rep.passed
    with pytest.raises(ValueError):
        beckner_deficit(f, RHO0, 1.5)


def test_left_positivity_values():
    rep = left_positivity(E1, RHO0, 0.5)
    assert rep.gap == pytest.approx(math.e - math.exp(0.5), rel=1e-13)
    exact = left_positivity(E1, RHO_SYM, 1.0)
    assert exact.gap == 0.0
    chaos = left_positivity(ChaosExpansion.basis((1,)), RHO0, 0.25)
    assert chaos.gap == pytest.approx(0.75, rel=1e-14)


def test_ab_matrix_values():
    rows = ab_matrix_check([[0.0], [1.0]], RHO0, 0.0)
    by_name = {r.check: r for r in rows}
    assert set(by_name) == {"ab_matrix_a", "ab_matrix_b", "ab_matrix_hadamard"}
    # a_jk = 1 - e^s + s e^s on s = [[0,0],[0,1]] is diag(0, 1)
    assert by_name["ab_matrix_a"].rhs == pytest.approx(0.0, abs=1e-14)
    # b is the all-ones matrix for the point mass at the origin
    assert by_name["ab_matrix_b"].rhs == pytest.approx(0.0, abs=1e-14)
    assert all(r.passed for r in rows)


def test_ab_matrix_alpha_one_vanishes():
    rows = ab_matrix_check([[0.7], [-0.3], [1.1]], RHO_SYM, 1.0)
    a_row = next(r for r in rows if r.check == "ab_matrix_a")
    assert a_row.rhs == 0.0  # the matrix itself is identically zero


def test_ab_matrix_random_psd():
    rng = np.random.default_rng(97)
    for _ in range(25):
        dim = int(rng.integers(1, 4))
        hs = rng.uniform(-1.5, 1.5, size=(int(rng.integers(1, 6)), dim))
        atoms = rng.uniform(-1.5, 1.5, size=(int(rng.integers(1, 5)), dim))
        nu = DiscreteMeasure(dim, atoms, rng.dirichlet(np.ones(len(atoms))))
        alpha = int(rng.integers(0, 11)) / 10
        rows = ab_matrix_check(hs, ConvolutionMeasure(nu), alpha)
        assert all(r.rhs >= -1e-10 for r in rows)


def test_char_gram_psd_check():
    rep = char_gram_psd_check(SYM, [[0.0], [1.0]])
    assert rep.rhs == pytest.approx(1.0 - math.cos(1.0), rel=1e-12)
    assert rep.passed


def test_holder_equality_on_conjugate_family():
    for k in range(1, 11):
        alpha = k / 10
        hp = HolderParams.conjugate_family(alpha)
        f = ExpCombo.exponential([0.9, -0.6])
        rep = holder_check(f, f, hp)
        assert rep.method_lhs == "exact" and rep.method_rhs == "exact"
        assert abs(rep.gap) <= 1e-10, f"alpha={alpha}: gap {rep.gap}"


def test_holder_strict_case():
    hp = HolderParams.conjugate_family(0.5)
    rep = holder_check(E1, ExpCombo.exponential([-1.0]), hp)
    assert rep.lhs == pytest.approx(math.exp(-0.5), rel=1e-13)
    assert rep.rhs == pytest.approx(math.exp(2.0), rel=1e-13)
    assert rep.passed


def test_holder_classical_endpoint():
    # alpha = 1, p = q = 2, r = 1: Cauchy-Schwarz with equality on f = g
    hp = HolderParams(p=2.0, q=2.0, r=1.0, alpha=1.0)
    rep = holder_check(E1, E1, hp)
    assert rep.lhs == pytest.approx(math.e, rel=1e-13)
    assert rep.rhs == pytest.approx(math.e, rel=1e-13)
    assert abs(rep.gap) <= 1e-12 * math.e


def test_holder_rejects_inadmissible():
    with pytest.raises(ValueError):
        holder_check(E1, E1, HolderParams(p=3.0, q=3.0, r=2.0, alpha=1.0))


def test_holder_quadrature_route():
    f = ExpCombo.exponential([0.4]) + ExpCombo.exponential([-0.3], 0.5)
    hp = HolderParams.conjugate_family(0.5)  # p = q = 3: no exact route
    rep = holder_check(f, f, hp)
    assert rep.method_rhs == "quadrature"
    assert rep.tolerance == 1e-6
    assert rep.passed


def test_classic_beckner_values():
    h3 = ChaosExpansion.basis((3,))
    rep = classic_beckner_coeff_check(h3, 0.4)
    assert rep.lhs == pytest.approx(6.0 * (1.0 - 0.4**3), rel=1e-15)
    assert rep.rhs == pytest.approx(18.0 * 0.6, rel=1e-15)
    assert rep.passed


def test_classic_beckner_first_chaos_equality():
    f = ChaosExpansion(2, {(1, 0): 0.8, (0, 1): -1.4})
    for alpha in (0.0, 0.3, 0.9, 1.0):
        rep = classic_beckner_coeff_check(f, alpha)
        assert rep.gap == 0.0


def test_classic_beckner_random_nonnegative():
    rng = np.random.default_rng(101)
    for _ in range(50):
        coeffs = {}
        for _ in range(rng.integers(1, 10)):
            deg = int(rng.integers(0, 9))
            m = tuple(int(x) for x in rng.multinomial(deg, [0.5, 0.5]))
            coeffs[m] = float(rng.uniform(-1, 1))
        f = ChaosExpansion(2, coeffs)
        alpha = int(rng.integers(0, 11)) / 10
        assert classic_beckner_coeff_check(f, alpha).gap >= -1e-12


def test_strong_positivity():
    nu = DiscreteMeasure(1, [[2.0], [-2.0]], [0.5, 0.5])
    rep = strong_positivity_check(ConvolutionMeasure(nu), 0.25, E1)
    assert rep.rhs == pytest.approx(math.cosh(4.0), rel=1e-13)
    assert rep.passed
    one = strong_positivity_check(RHO_SYM, 0.5, ExpCombo.one(1))
    assert one.rhs == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(ValueError):
        strong_positivity_check(RHO_SYM, 0.5, ExpCombo.exponential([1.0], -1.0))


def test_covariance_gap_point_masses():
    d1 = DiscreteMeasure.dirac([1.0])
    rep = covariance_gap(d1, d1, ExpCombo.one(1))
    assert rep.rhs == pytest.approx(math.e - 2.0, rel=1e-14)
    rep2 = covariance_gap(d1, SYM, ExpCombo.one(1))
    assert rep2.rhs == pytest.approx(math.cosh(1.0) - 1.0, rel=1e-14)


def test_covariance_gap_vanishes_on_centered_factor():
    # nu2 = delta_0 makes every s_ij = 0, so the gap is exactly 0
    rep = covariance_gap(SYM, DiscreteMeasure.dirac([0.0]), ExpCombo.exponential([0.7]))
    assert rep.rhs == 0.0
    with pytest.raises(ValueError):
        covariance_gap(SYM, SYM, ExpCombo.exponential([1.0], -2.0))
    with pytest.raises(ValueError):
        covariance_gap(SYM, DiscreteMeasure.dirac([0.0, 0.0]), ExpCombo.one(1))


def test_covariance_gap_nonnegative_random():
    rng = np.random.default_rng(103)
    for _ in range(40):
        dim = int(rng.integers(1, 4))
        def rand_nu():
            k = int(rng.integers(1, 5))
            return DiscreteMeasure(dim, rng.uniform(-1.5, 1.5, size=(k, dim)),
                                   rng.dirichlet(np.ones(k)))
        phi = ExpCombo.exponential(rng.uniform(-1, 1, size=dim), float(rng.uniform(0.1, 2)))
        assert covariance_gap(rand_nu(), rand_nu(), phi).rhs >= -1e-10


def test_g_lambda_bound_check():
    rep = g_lambda_bound_check(RHO_SYM, 1.0)
    assert rep.lhs == pytest.approx(math.sqrt(math.cosh(1.0)), rel=1e-14)
    assert rep.rhs == pytest.approx(math.exp(0.5), rel=1e-14)
    assert rep.passed
    solo = g_lambda_bound_check(ConvolutionMeasure(DiscreteMeasure.dirac([1.2])), 1.4)
    assert abs(solo.gap) <= 1e-9  # equality case


def test_oracle_triangle_small():
    f = ExpCombo.exponential([0.5], 1.5)
    rows = oracle_triangle(f, RHO_SYM, 0.5, quad_order=25, mc_seed=4, mc_count=30_000)
    assert len(rows) == 6
    assert all(r.passed for r in rows)
    routes = {(r.params["integral"], r.params["route"]) for r in rows}
    assert routes == {(i, r) for i in ("f_sq", "alpha_prod", "dirichlet")
                      for r in ("quadrature", "mc")}
    with pytest.raises(ValueError):
        oracle_triangle(f, RHO_SYM, -0.2)


def test_registry_and_run_check():
    assert len(CHECK_REGISTRY) == 11
    rows = run_check("beckner_deficit", {
        "alpha": 0.5,
        "f": {"kind": "exp", "dim": 1, "terms": [{"coef": 1.0, "h": [1.0]}]},
        "nu": {"dim": 1, "atoms": [[0.0]], "weights": [1.0]},
    })
    assert len(rows) == 1
    assert rows[0].gap == pytest.approx(math.exp(0.5) - 0.5 * math.e, rel=1e-12)
    with pytest.raises(ValueError):
        run_check("no_such_check", {})


def test_run_check_tolerance_override():
    params = {
        "alpha": 0.5,
        "f": {"kind": "exp", "dim": 1, "terms": [{"coef": 1.0, "h": [1.0]}]},
        "nu": {"dim": 1, "atoms": [[0.0]], "weights": [1.0]},
    }
    strict = run_check("beckner_deficit", params, tols={"exact": 1e-15})[0]
    assert strict.tolerance == 1e-15


def test_function_from_json_sniffing():
    exp_fn = function_from_json({"dim": 1, "terms": [{"coef": 1.0, "h": [0.5]}]})
    assert isinstance(exp_fn, ExpCombo)
    chaos_fn = function_from_json({"dim": 1, "terms": [{"m": [2], "c": 1.0}]})
    assert isinstance(chaos_fn, ChaosExpansion)
    with pytest.raises(ValueError):
        function_from_json({"kind": "mystery", "dim": 1, "terms": []})
