"""Black-hole sector: mode structure, radial solutions, horizon Green's
function, and the geometric subtraction terms."""

import math

import numpy as np
import pytest

from stringhorizon.blackhole import (DeficitGeometry, HorizonSeparation,
                                     ModeIndex, chi_radial_green,
                                     exponent_fit, g_sing, geodesic_distance,
                                     geodesic_distance_expansion,
                                     horizon_green, horizon_green_closed,
                                     lambda_of, radial_solutions)
from stringhorizon.errors import DomainError
from stringhorizon.specfun import legendre_P_axis, legendre_Q

GEO = DeficitGeometry(alpha=1.0, M=1.0)
GEO_S = DeficitGeometry(alpha=0.75, M=1.0)


def test_geometry_invariants():
    g = DeficitGeometry(alpha=0.8, M=2.5)
    assert g.kappa * 4.0 * g.M == pytest.approx(1.0, abs=0.0)
    assert g.tau_period == pytest.approx(2.0 * math.pi / g.kappa, rel=1e-15)
    with pytest.raises(DomainError):
        DeficitGeometry(alpha=1.2, M=1.0)
    with pytest.raises(DomainError):
        DeficitGeometry(alpha=0.5, M=-1.0)


def test_lambda_of():
    assert lambda_of(3, 2, 1.0) == pytest.approx(3.0)
    assert lambda_of(3, 2, 0.5) == pytest.approx(5.0)
    assert lambda_of(5, 0, 0.31) == pytest.approx(5.0)
    with pytest.raises(IndexError):
        lambda_of(1, 2, 1.0)


def test_lambda_monotone_in_alpha():
    alphas = np.linspace(0.2, 1.0, 9)
    for (l, m) in [(3, 2), (5, 1), (4, 4)]:
        lams = [lambda_of(l, m, a) for a in alphas]
        assert all(x >= y - 1e-12 for x, y in zip(lams, lams[1:]))
    assert lambda_of(4, 0, 0.3) == lambda_of(4, 0, 1.0)


def test_mode_index():
    mi = ModeIndex(n=2, l=3, m=-2)
    assert mi.lam(0.5) == pytest.approx(5.0)
    with pytest.raises(IndexError):
        ModeIndex(n=0, l=1, m=2)


# ----------------------------------------------------------------------
# radial solutions, n != 0
# ----------------------------------------------------------------------

@pytest.mark.parametrize("n,lam", [(1, 0.0), (2, 1.0), (3, 3.0), (2, 2.5)])
def test_radial_wronskian_constancy(n, lam):
    pair = radial_solutions(n, lam, GEO_S)
    target = -2.0 * abs(n)
    assert pair.wronskian_scale == pytest.approx(target, rel=1e-8)
    assert pair.wronskian_spread < 1e-6
    # explicit spot checks across [1.01, 5]
    for eta in (1.01, 1.5, 2.0, 5.0):
        w = (eta * eta - 1.0) * (pair.p(eta) * pair.dq(eta)
                                 - pair.dp(eta) * pair.q(eta))
        assert w == pytest.approx(target, rel=1e-6)


@pytest.mark.parametrize("n,lam", [(1, 0.0), (2, 1.0), (3, 3.0)])
def test_frobenius_exponent_fits(n, lam):
    pair = radial_solutions(n, lam, GEO_S)
    assert exponent_fit(pair.p) == pytest.approx(n / 2.0, abs=1e-3)
    assert exponent_fit(pair.q) == pytest.approx(-n / 2.0, abs=1e-3)


def test_p_leading_coefficient_normalized():
    # p(1+d) -> d^{|n|/2} (1 + O(d)): 3-point fit of the coefficient
    pair = radial_solutions(1, 0.0, GEO)
    ds = np.array([4e-6, 8e-6, 1.6e-5])
    vals = np.array([pair.p(1.0 + d) * d ** -0.5 for d in ds])
    design = np.stack([np.ones(3), ds * np.log(ds), ds], axis=1)
    c = np.linalg.solve(design, vals)[0]
    assert c == pytest.approx(1.0, abs=1e-6)


def test_q_leading_coefficient_normalized():
    # q(1+d) d^{|n|/2} -> 1, fitted away from the normalization points
    pair = radial_solutions(2, 1.0, GEO)
    ds = np.array([8e-6, 1.6e-5, 3.2e-5])
    vals = np.array([pair.q(1.0 + d) * d ** 1.0 for d in ds])
    design = np.stack([np.ones(3), ds * np.log(ds), ds], axis=1)
    c = np.linalg.solve(design, vals)[0]
    assert c == pytest.approx(1.0, abs=1e-6)


def test_radial_outer_boundary_insensitive():
    a = radial_solutions(2, 1.0, GEO, eta_max=20.0)
    b = radial_solutions(2, 1.0, GEO, eta_max=40.0)
    assert a.q(1.5) == pytest.approx(b.q(1.5), rel=1e-8)
    assert a.p(1.5) == pytest.approx(b.p(1.5), rel=1e-10)


def test_radial_domain_errors():
    with pytest.raises(DomainError):
        radial_solutions(0, 1.0, GEO)
    pair = radial_solutions(1, 0.0, GEO)
    with pytest.raises(DomainError):
        pair.p(1.0)
    with pytest.raises(DomainError):
        pair.q(25.0)


def test_nonzero_modes_vanish_on_horizon():
    # p(1+d) ~ d^{|n|/2} -> 0: observed halving order within 0.05 of |n|/2
    for (n, lam) in [(1, 0.0), (2, 1.0), (3, 3.0)]:
        pair = radial_solutions(n, lam, GEO)
        q_ext = pair.q(2.0)
        c1 = pair.p(1.0 + 1e-5) * q_ext
        c2 = pair.p(1.0 + 5e-6) * q_ext
        order = math.log2(c1 / c2)
        assert order == pytest.approx(n / 2.0, abs=0.05)
        assert abs(c2) < abs(c1)


# ----------------------------------------------------------------------
# radial Green's function
# ----------------------------------------------------------------------

def test_chi_radial_green_n0_closed_form():
    g = DeficitGeometry(alpha=0.8, M=1.0)
    val = chi_radial_green(0, 0.0, 1.5, 2.0, g)
    assert val == pytest.approx(math.log(3.0) / (2.0 * 0.8), rel=1e-12)


def test_chi_radial_green_n0_matches_classical_legendre():
    # alpha = 1, integer lambda: radial solutions are classical P_l, Q_l
    for lam in (0.0, 1.0, 2.0):
        val = chi_radial_green(0, lam, 1.3, 2.2, GEO)
        ref = legendre_P_axis(lam, 1.3) * legendre_Q(lam, 2.2)
        assert val == pytest.approx(ref, rel=1e-10)
    assert legendre_P_axis(2.0, 1.3) == pytest.approx(
        0.5 * (3.0 * 1.3 ** 2 - 1.0), rel=1e-12)


def test_chi_radial_green_n0_satisfies_ode():
    # plug-in residual of the homogeneous equation away from eta';
    # Richardson-improved central differences push the h^2 operator error
    # below the 1e-8 target
    lam, g = 1.5, GEO_S

    def chi(e):
        return chi_radial_green(0, lam, e, 3.0, g)

    def resid(eta, h):
        d1 = (chi(eta + h) - chi(eta - h)) / (2 * h)
        d2 = (chi(eta + h) - 2 * chi(eta) + chi(eta - h)) / h ** 2
        return ((eta ** 2 - 1.0) * d2 + 2.0 * eta * d1
                - lam * (lam + 1.0) * chi(eta))

    for eta in (1.4, 2.0, 2.5):
        h = 5e-4
        improved = (4.0 * resid(eta, h / 2) - resid(eta, h)) / 3.0
        assert abs(improved) < 1e-8 * max(1.0, abs(lam * (lam + 1) * chi(eta)))


def test_chi_radial_green_jump_condition(rng):
    # derivative jump at eta = eta' equals -1/(alpha M (eta^2 - 1))
    g = DeficitGeometry(alpha=0.65, M=1.3)
    h = 1e-6
    # n = 0 branch: one-sided derivatives on each side of the diagonal
    for eta_p in (1.4, 2.1):
        lam = rng.uniform(0.0, 3.0)
        right = (chi_radial_green(0, lam, eta_p + 2 * h, eta_p, g)
                 - chi_radial_green(0, lam, eta_p + h, eta_p, g)) / h
        left = (chi_radial_green(0, lam, eta_p - h, eta_p, g)
                - chi_radial_green(0, lam, eta_p - 2 * h, eta_p, g)) / h
        expected = -1.0 / (g.alpha * g.M * (eta_p ** 2 - 1.0))
        assert right - left == pytest.approx(expected, rel=1e-4)
    # n != 0 branch analytically via the solution pair
    for _ in range(10):
        n = int(rng.integers(1, 4))
        lam = rng.uniform(0.0, 4.0)
        eta_p = rng.uniform(1.3, 4.0)
        pair = radial_solutions(n, lam, g)
        jump = (pair.p(eta_p) * pair.dq(eta_p)
                - pair.dp(eta_p) * pair.q(eta_p)) / (2.0 * n * g.alpha * g.M)
        expected = -1.0 / (g.alpha * g.M * (eta_p ** 2 - 1.0))
        assert jump == pytest.approx(expected, rel=1e-6)


# ----------------------------------------------------------------------
# horizon Green's function
# ----------------------------------------------------------------------

def test_horizon_green_candelas_closed_form():
    # alpha = 1: (1/(32 pi^2 M^2)) / (eta - cos gamma)
    eta = 1.4
    for (th, dphi) in [(0.9, 0.0), (1.2, 0.7)]:
        val = horizon_green(th, th, dphi, eta, GEO, tol=1e-9)
        cos_gamma = math.cos(th) ** 2 + math.sin(th) ** 2 * math.cos(dphi)
        ref = 1.0 / (32.0 * math.pi ** 2 * (eta - cos_gamma))
        assert val == pytest.approx(ref, rel=1e-8)


def test_horizon_green_matches_generalized_closed_form():
    val = horizon_green(0.9, 1.2, 0.8, 1.3, GEO_S, tol=1e-9)
    ref = horizon_green_closed(0.9, 1.2, 0.8, 1.3, GEO_S)
    assert val == pytest.approx(ref, rel=1e-7)


def test_horizon_green_symmetries():
    v0 = horizon_green_closed(0.9, 1.2, 0.8, 1.3, GEO_S)
    assert horizon_green_closed(1.2, 0.9, 0.8, 1.3, GEO_S) == pytest.approx(
        v0, rel=1e-12)
    assert horizon_green_closed(0.9, 1.2, -0.8, 1.3, GEO_S) == pytest.approx(
        v0, rel=1e-12)


# ----------------------------------------------------------------------
# geometric subtraction
# ----------------------------------------------------------------------

def test_geodesic_distance_leading_behavior():
    g = DeficitGeometry(alpha=1.0, M=1.0)
    for eps in (1e-8, 1e-6):
        s = geodesic_distance(eps, g)
        assert s / math.sqrt(2.0 * eps) == pytest.approx(2.0, rel=1e-4)


def test_geodesic_distance_expansion_error():
    g = DeficitGeometry(alpha=1.0, M=1.0)
    s_exact = geodesic_distance(0.01, g)
    s_two = geodesic_distance_expansion(0.01, g)
    assert abs(s_exact - s_two) < 1e-5
    # the bracketed series remainder is O(eps^2), so the absolute expansion
    # error scales like sqrt(eps) * eps^2: halving ratio 2^(5/2)
    e1 = abs(geodesic_distance(0.02, g) - geodesic_distance_expansion(0.02, g))
    e2 = abs(geodesic_distance(0.01, g) - geodesic_distance_expansion(0.01, g))
    assert e1 / e2 == pytest.approx(2.0 ** 2.5, rel=0.05)


def test_geodesic_distance_scaling():
    for k in (2.0, 5.0):
        s1 = geodesic_distance(0.01, DeficitGeometry(alpha=1.0, M=1.0))
        sk = geodesic_distance(0.01 * k, DeficitGeometry(alpha=1.0, M=k))
        assert sk == pytest.approx(k * s1, rel=1e-10)


def test_g_sing_value():
    g = DeficitGeometry(alpha=1.0, M=1.0)
    expected = 1.0 / (0.32 * math.pi ** 2) - 1.0 / (192.0 * math.pi ** 2)
    assert g_sing(0.01, g) == pytest.approx(expected, rel=1e-14)


def test_g_sing_consistency_with_geodesic():
    # 1/(4 pi^2 s^2) - g_sing = O(eps): the ratio to eps approaches a
    # finite slope under halving
    g = DeficitGeometry(alpha=1.0, M=1.0)

    def d(eps):
        s = geodesic_distance(eps, g)
        return 1.0 / (4.0 * math.pi ** 2 * s * s) - g_sing(eps, g)

    slopes = [d(e) / e for e in (4e-3, 2e-3, 1e-3)]
    assert slopes[0] == pytest.approx(slopes[-1], rel=0.05)
    assert all(math.isfinite(s) for s in slopes)


def test_g_sing_mass_homogeneity():
    # the constant term scales like M^-2
    c1 = g_sing(1e-3, DeficitGeometry(alpha=1.0, M=1.0)) \
        - 1.0 / (32.0 * math.pi ** 2 * 1.0 * 1e-3)
    c2 = g_sing(1e-3, DeficitGeometry(alpha=1.0, M=2.0)) \
        - 1.0 / (32.0 * math.pi ** 2 * 2.0 * 1e-3)
    assert c1 / c2 == pytest.approx(4.0, rel=1e-12)


def test_horizon_separation_type():
    hs = HorizonSeparation(epsilon=0.01, theta=math.pi / 3, M=1.0)
    assert hs.eta == pytest.approx(1.01)
    assert math.cosh(hs.chi) == pytest.approx(1.0 + hs.cosh_chi_minus_1,
                                              rel=1e-12)
    with pytest.raises(DomainError):
        HorizonSeparation(epsilon=0.2, theta=1.0, M=1.0)
