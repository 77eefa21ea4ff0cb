"""Residual harness: every summation identity stated as LHS - RHS over a
parameter grid, with certified truncation.

Pass criterion: the residual is relative when |RHS| > 1 and absolute
otherwise, and a case passes iff residual <= tol + certified_tail (tail
scaled the same way).  Reports are deterministic: the same case list with
the same truncation settings produces bit-identical records.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import eval_legendre, gammaln

from . import specfun
from .blackhole import lambda_of
from .conespace import (_spheroidal_coefficients, _toroidal_coefficients,
                        generalized_heine_rhs, heine_double_sum, linet_kernel)
from .errors import DomainError, QuadratureError, StringHorizonError
from .summation import abel_limit, geometric_tail, lmax_for_rate, sum_m_bands

__all__ = [
    "IdentityCase",
    "check_heine_classic",
    "check_heine_generalized",
    "check_app5",
    "check_linet_sum",
    "check_toroidal_addition",
    "check_spheroidal_sum",
    "check_norm_integral",
    "spheroidal_ratio_audit",
    "CHECKS",
    "run_cases",
]


@dataclass(frozen=True)
class IdentityCase:
    """One identity evaluation: parameters, truncation, and residuals."""

    name: str
    params: dict
    lmax: int | None
    mmax: int | None
    tol: float
    lhs: float
    rhs: float
    residual_abs: float
    residual_rel: float
    residual: float
    certified_tail: float
    passed: bool
    note: str = ""

    def to_record(self) -> dict:
        return asdict(self)


def _make_case(name, params, tol, lhs, rhs, tail, lmax=None, mmax=None,
               note="") -> IdentityCase:
    res_abs = abs(lhs - rhs)
    res_rel = res_abs / abs(rhs) if rhs != 0.0 else math.inf
    scale = max(1.0, abs(rhs))
    residual = res_abs / scale
    tail_scaled = tail / scale
    return IdentityCase(
        name=name, params=dict(params), lmax=lmax, mmax=mmax, tol=tol,
        lhs=float(lhs), rhs=float(rhs), residual_abs=float(res_abs),
        residual_rel=float(res_rel), residual=float(residual),
        certified_tail=float(tail_scaled),
        passed=bool(residual <= tol + tail_scaled), note=note)


# ----------------------------------------------------------------------
# classic and generalized Heine
# ----------------------------------------------------------------------

def check_heine_classic(zeta: float, psi: float, lmax: int | None = None,
                        tol: float = 1e-8) -> IdentityCase:
    """sum_l (2l+1) P_l(psi) Q_l(zeta) = 1/(zeta - psi), |psi| < zeta."""
    if zeta <= 1.0 + 1e-12:
        raise DomainError(f"zeta must exceed 1, got {zeta}")
    if abs(psi) >= min(1.0, zeta):
        raise DomainError(f"validity needs |psi| < min(1, zeta), got {psi}")
    xi = math.acosh(zeta)
    count = (lmax if lmax is not None else lmax_for_rate(xi, tol)) + 1
    ls = np.arange(count)
    p = eval_legendre(ls, psi)
    q = specfun.legendre_Q_sequence(0.0, zeta, count)
    terms = (2.0 * ls + 1.0) * p * q
    lhs = float(terms.sum())
    tail = geometric_tail(terms[-3:], xi)
    rhs = 1.0 / (zeta - psi)
    return _make_case("heine_classic", {"zeta": zeta, "psi": psi}, tol,
                      lhs, rhs, tail, lmax=count - 1)


def check_heine_generalized(alpha: float, theta: float, theta_p: float,
                            dphi: float, chi: float,
                            lmax: int | None = None, mmax: int | None = None,
                            tol: float = 1e-6) -> IdentityCase:
    """Double sum of (2lam+1) gammaRatio P P Q_lam(zeta) against
    sinh(chi/alpha) / [sin sin' sinh(chi) (cosh(chi/alpha) - cos dphi)]."""
    if chi <= 0.0:
        raise DomainError(f"chi must be positive, got {chi}")
    cc = math.cos(theta) * math.cos(theta_p)
    ss = math.sin(theta) * math.sin(theta_p)
    zeta = cc + ss * math.cosh(chi)
    if zeta <= 1.0 + 1e-6:
        raise DomainError(
            f"zeta = {zeta:.6f} <= 1: no Euclidean pair has these (theta, theta', chi); "
            "chi must exceed arccosh((1 - cos th cos th')/(sin th sin th'))")
    lhs, tail, lmax_used, mmax_used = heine_double_sum(
        alpha, theta, theta_p, dphi, zeta, tol=tol, lmax=lmax, mmax=mmax)
    rhs = generalized_heine_rhs(alpha, theta, theta_p, dphi, chi)
    params = {"alpha": alpha, "theta": theta, "theta_p": theta_p,
              "dphi": dphi, "chi": chi}
    return _make_case("heine_generalized", params, tol, lhs, rhs, tail,
                      lmax=lmax_used, mmax=mmax_used)


# ----------------------------------------------------------------------
# appendix identities
# ----------------------------------------------------------------------

def _abel_count(h0: float, levels: int, margin: float = 26.0) -> int:
    h_min = h0 * 0.5 ** (levels - 1)
    return int(margin / h_min)


def _app5_coefficients(alpha, m, theta, theta_p, count):
    mu = abs(m) / alpha
    p1 = specfun.ferrers_P_sequence(mu, mu, math.cos(theta), count)
    p2 = specfun.ferrers_P_sequence(mu, mu, math.cos(theta_p), count)
    lam = mu + np.arange(count)
    # log-assembled: the gamma ratio alone leaves float range on long chains
    lgr = gammaln(lam + mu + 1.0) - gammaln(lam - mu + 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sign(p1) * np.sign(p2) * np.exp(
            lgr + np.log(np.abs(p1)) + np.log(np.abs(p2)))
    return np.where(np.isfinite(out), out, 0.0)


def check_app5(alpha: float, m: int, theta: float, theta_p: float,
               lmax: int | None = None, tol: float = 1e-6) -> IdentityCase:
    """sum_l gammaRatio P_lam^{-mu}(cos th) P_lam^{-mu}(cos th') =
    Q_{mu-1/2}((1 - cos th cos th')/(sin th sin th')) / (pi sqrt(sin sin')).

    The l-sum decays only like 1/lam (coincident radii), so it is evaluated
    as an Abel limit with Richardson extrapolation.
    """
    if abs(theta - theta_p) < 1e-3:
        raise DomainError("theta = theta' makes both sides divergent")
    mu = abs(m) / alpha
    h0, levels = 0.08, 7
    count = lmax + 1 if lmax is not None else _abel_count(h0, levels)
    coeffs = _app5_coefficients(alpha, m, theta, theta_p, count)
    lhs, err = abel_limit(coeffs, h0=h0, levels=levels)
    ss = math.sin(theta) * math.sin(theta_p)
    coshxi = (1.0 - math.cos(theta) * math.cos(theta_p)) / ss
    q = specfun.legendre_Qhat_axis((mu - 0.5, 0.0), coshxi)
    rhs = q / (math.pi * math.sqrt(ss))
    params = {"alpha": alpha, "m": m, "theta": theta, "theta_p": theta_p}
    return _make_case("app5", params, tol, lhs, rhs, err + 1e-12,
                      lmax=count - 1)


def _linet_rhs(alpha, theta, theta_p, dphi, quad_tol=1e-10):
    """Image term + F_alpha integral of the r -> r' Linet identity."""
    cc = math.cos(theta) * math.cos(theta_p)
    ss = math.sin(theta) * math.sin(theta_p)
    cos_ag = cc + ss * math.cos(alpha * dphi)
    coshxi = (1.0 - cc) / ss
    first = 1.0 / math.sqrt(2.0 * (1.0 - cos_ag))
    if alpha == 1.0:
        return first
    def integrand(u):
        if u > 600.0:
            return 0.0
        return linet_kernel(u, dphi, alpha) / math.sqrt(coshxi + math.cosh(u))
    val, err = quad(integrand, 0.0, np.inf, epsabs=1e-13, epsrel=1e-11,
                    limit=400)
    if err > 1e-9:
        raise QuadratureError(f"Linet u-integral error {err:.2e}")
    return first + val / (2.0 * math.pi * alpha * math.sqrt(2.0 * ss))


def _linet_lhs_offdiag(alpha, theta, theta_p, dphi, tol):
    """(1/alpha) sum_m e^{i m dphi} [Abel limit of the l-sum], theta != theta'."""
    h0, levels = 0.08, 7
    count = _abel_count(h0, levels)
    tails = [0.0]

    def band(m):
        coeffs = _app5_coefficients(alpha, m, theta, theta_p, count)
        val, err = abel_limit(coeffs, h0=h0, levels=levels)
        tails.append(err)
        weight = 1.0 if m == 0 else 2.0 * math.cos(m * dphi)
        return weight * val

    value, mtail, bands = sum_m_bands(band, tol)
    return value / alpha, (sum(tails) + mtail) / alpha, bands


def _linet_lhs_diag(alpha, theta, dphi, tol):
    """theta = theta' limit of the double sum: exact resummation of the
    m-sum via the Heine integral representation,
    sum_m e^{im dphi} Q_{|m|/alpha - 1/2}(cosh xi -> 1) ->
    int_0^oo sinh(t/a) / [(cosh(t/a) - cos dphi) 2 sinh(t/2)] dt."""
    if 2.0 * math.sin(0.5 * dphi) ** 2 < 1e-10:
        raise DomainError("diagonal Linet check needs dphi away from 0")
    beta = 1.0 / alpha
    cpsi = math.cos(dphi)

    def integrand(t):
        if t == 0.0:
            return 1.0 / (alpha * (1.0 - cpsi))
        if t > 600.0:
            return 0.0
        e = math.exp(-beta * t)
        ratio = (1.0 - e * e) / (1.0 + e * e - 2.0 * cpsi * e)
        return ratio / (2.0 * math.sinh(0.5 * t))

    val, err = quad(integrand, 0.0, np.inf, epsabs=1e-13, epsrel=1e-11,
                    limit=400)
    if err > 1e-9:
        raise QuadratureError(f"diagonal resummation error {err:.2e}")
    s2 = math.sin(theta) ** 2
    return val / (math.pi * alpha * s2 ** 0.5), err, None


def check_linet_sum(alpha: float, theta: float, theta_p: float, dphi: float,
                    tol: float = 1e-6) -> IdentityCase:
    """(1/alpha) double mode sum at r = r' against Linet's image +
    F_alpha-integral form; valid for alpha > 1/2 and the pair inside the
    single-image window |dphi| < 2 pi - pi/alpha."""
    if not 0.5 < alpha <= 1.0:
        raise DomainError(f"Linet identity requires alpha in (1/2, 1], got {alpha}")
    dphi = math.remainder(dphi, 2.0 * math.pi)
    if abs(dphi) >= 2.0 * math.pi - math.pi / alpha - 1e-9:
        raise DomainError(
            "pair outside the single-image window |dphi| < 2 pi - pi/alpha")
    note = ""
    if abs(theta - theta_p) < 1e-3:
        lhs, tail, bands = _linet_lhs_diag(alpha, theta, dphi, tol)
        note = "theta=theta' diagonal: m-sum resummed by the Heine integral"
    else:
        lhs, tail, bands = _linet_lhs_offdiag(alpha, theta, theta_p, dphi, tol)
    rhs = _linet_rhs(alpha, theta, theta_p, dphi)
    params = {"alpha": alpha, "theta": theta, "theta_p": theta_p, "dphi": dphi}
    return _make_case("linet", params, tol, lhs, rhs, tail + 1e-12,
                      mmax=bands, note=note)


def check_toroidal_addition(alpha: float, m: int, w: float, w_p: float,
                            eta: float, eta_p: float,
                            nmax: int | None = None,
                            tol: float = 1e-6) -> IdentityCase:
    """sum_n e^{in (eta-eta')} G(n+mu+1/2)/G(n-mu+1/2) P_{n-1/2}^{-mu}(cosh w<)
    Qhat_{n-1/2}^{-mu}(cosh w>) against
    Q_{mu-1/2}(chi) / sqrt(sinh w sinh w'),
    cosh chi = (cosh w cosh w' - cos(eta-eta')) / (sinh w sinh w').

    The chi argument is the cylindrical-Q argument expressed through the
    toroidal map; it depends on (w, w', eta - eta') only, so the
    (cosh w - cos eta) factors printed alongside the source mode sum cancel
    from the addition theorem.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if w <= 0.0 or w_p <= 0.0:
        raise DomainError("toroidal coordinates must be positive")
    mu = abs(m) / alpha
    deta = math.remainder(eta - eta_p, 2.0 * math.pi)
    w_lt, w_gt = min(w, w_p), max(w, w_p)
    rate = w_gt - w_lt
    chi = (math.cosh(w) * math.cosh(w_p) - math.cos(deta)) \
        / (math.sinh(w) * math.sinh(w_p))
    if chi <= 1.0 + 1e-12:
        raise DomainError("coincident toroidal pair; RHS divergent")
    if rate > 1e-3:
        count = (nmax if nmax is not None else lmax_for_rate(rate, tol)) + 1
        c = _toroidal_coefficients(alpha, m, w_lt, w_gt, count)
        cosns = np.cos(np.arange(count) * deta)
        terms = c * cosns
        terms[1:] *= 2.0
        lhs = float(terms.sum())
        tail = geometric_tail(c[-3:], rate)
        note = ""
    else:
        if abs(deta) < 1e-6:
            raise DomainError("w = w' with deta = 0 is coincident")
        count = nmax + 1 if nmax is not None else 12000
        c = _toroidal_coefficients(alpha, m, w_lt, w_gt, count)
        coeffs = c * np.cos(np.arange(count) * deta)
        coeffs[1:] *= 2.0
        lhs, tail = abel_limit(coeffs, h0=0.1, levels=6)
        note = "w = w': n-sum evaluated as an Abel limit"
    rhs = specfun.legendre_Qhat_axis((mu - 0.5, 0.0), chi) \
        / math.sqrt(math.sinh(w) * math.sinh(w_p))
    params = {"alpha": alpha, "m": m, "w": w, "w_p": w_p,
              "eta": eta, "eta_p": eta_p}
    return _make_case("toroidal_addition", params, tol, lhs, rhs, tail,
                      lmax=count - 1, note=note)


def _spheroidal_chi(theta, theta_p, s1, s2):
    num = (math.cosh(s1) ** 2 + math.cosh(s2) ** 2
           - math.sin(theta) ** 2 - math.sin(theta_p) ** 2
           - 2.0 * math.cosh(s1) * math.cosh(s2)
           * math.cos(theta) * math.cos(theta_p))
    den = 2.0 * math.sinh(s1) * math.sinh(s2) * math.sin(theta) * math.sin(theta_p)
    return num / den


def _spheroidal_lhs_rhs(alpha, m, theta, theta_p, sigma_lt, sigma_gt,
                        lmax, tol):
    if sigma_gt - sigma_lt < 1e-3:
        raise DomainError("sigma< and sigma> too close; l-sum has no decay")
    rate = sigma_gt - sigma_lt
    count = (lmax if lmax is not None else lmax_for_rate(rate, tol)) + 1
    c = _spheroidal_coefficients(alpha, m, theta, theta_p, sigma_lt, sigma_gt,
                                 count)
    lhs = float(c.sum())
    tail = geometric_tail(c[-3:], rate)
    mu = abs(m) / alpha
    chi = _spheroidal_chi(theta, theta_p, sigma_lt, sigma_gt)
    rhs = specfun.legendre_Qhat_axis((mu - 0.5, 0.0), chi) \
        / (math.pi * alpha * math.sqrt(math.sinh(sigma_lt) * math.sinh(sigma_gt)
                                       * math.sin(theta) * math.sin(theta_p)))
    return lhs, rhs, tail, count


def check_spheroidal_sum(alpha: float, m: int, theta: float, theta_p: float,
                         sigma_lt: float, sigma_gt: float,
                         lmax: int | None = None,
                         tol: float = 1e-6) -> IdentityCase:
    """Four-Legendre-product l-sum against the printed closed form
    (1/(pi alpha)) Q_{mu-1/2}(chi)/sqrt(sinh s sinh s' sin th sin th').

    The printed constant carries a spurious 1/alpha (the ratio audit
    measures LHS/RHS = alpha); at alpha = 1 the identity holds as printed.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    lhs, rhs, tail, count = _spheroidal_lhs_rhs(alpha, m, theta, theta_p,
                                                sigma_lt, sigma_gt, lmax, tol)
    params = {"alpha": alpha, "m": m, "theta": theta, "theta_p": theta_p,
              "sigma_lt": sigma_lt, "sigma_gt": sigma_gt}
    return _make_case("spheroidal_sum", params, tol, lhs, rhs, tail,
                      lmax=count - 1)


_AUDIT_POINTS = [
    (0, 0.7, 1.1, 0.8, 1.5), (1, 0.7, 1.1, 0.8, 1.5), (2, 0.9, 1.3, 0.7, 1.4),
    (0, 0.5, 2.1, 0.6, 1.2), (1, 1.2, 1.8, 0.9, 1.7), (0, 1.0, 1.4, 1.0, 1.8),
    (2, 0.8, 2.0, 0.5, 1.1), (1, 0.6, 1.0, 1.1, 2.0), (3, 0.9, 1.5, 0.8, 1.6),
    (0, 1.4, 2.2, 0.7, 1.3),
]


def spheroidal_ratio_audit(alpha: float, tol: float = 1e-8) -> IdentityCase:
    """LHS/RHS of the printed spheroidal identity over 10 parameter points:
    passes when the ratio is constant; flagged when the constant is not 1."""
    ratios = []
    for (m, th, thp, s1, s2) in _AUDIT_POINTS:
        lhs, rhs, _, _ = _spheroidal_lhs_rhs(alpha, m, th, thp, s1, s2,
                                             None, 1e-10)
        ratios.append(lhs / rhs)
    ratios = np.asarray(ratios)
    mean = float(np.mean(ratios))
    spread = float(np.ptp(ratios) / abs(mean))
    flagged = abs(mean - 1.0) > 1e-6
    note = f"ratio LHS/RHS = {mean:.12g}"
    if flagged:
        note += " [FLAGGED: constant factor differs from 1]"
    return IdentityCase(
        name="spheroidal_ratio_audit", params={"alpha": alpha},
        lmax=None, mmax=None, tol=tol, lhs=mean, rhs=mean,
        residual_abs=spread, residual_rel=spread, residual=spread,
        certified_tail=0.0, passed=bool(spread <= tol), note=note)


def check_norm_integral(alpha: float, m: int, l: int, l_p: int,
                        tol: float = 1e-8) -> IdentityCase:
    """Quadrature of int P_lam^{-mu} P_lam'^{-mu} d(cos th) against
    delta_{l l'} (2/(2 lam + 1)) Gamma(lam-mu+1)/Gamma(lam+mu+1)."""
    lam = lambda_of(l, m, alpha)
    lam_p = lambda_of(l_p, m, alpha)
    mu = abs(m) / alpha

    def integrand(t):
        x = math.cos(t)
        return (specfun.ferrers_P((lam, mu), x)
                * specfun.ferrers_P((lam_p, mu), x) * math.sin(t))

    val, err = quad(integrand, 0.0, math.pi, epsabs=1e-12, epsrel=1e-11,
                    limit=200)
    if err > 1e-10:
        raise QuadratureError(f"normalization quadrature error {err:.2e}")
    if l == l_p:
        rhs = (2.0 / (2.0 * lam + 1.0)) \
            * math.exp(gammaln(lam - mu + 1.0) - gammaln(lam + mu + 1.0))
    else:
        rhs = 0.0
    params = {"alpha": alpha, "m": m, "l": l, "l_p": l_p}
    return _make_case("norm_integral", params, tol, val, rhs, err)


# ----------------------------------------------------------------------
# manifest runner
# ----------------------------------------------------------------------

CHECKS = {
    "heine_classic": check_heine_classic,
    "heine_generalized": check_heine_generalized,
    "app5": check_app5,
    "linet": check_linet_sum,
    "toroidal_addition": check_toroidal_addition,
    "spheroidal_sum": check_spheroidal_sum,
    "spheroidal_ratio_audit": spheroidal_ratio_audit,
    "norm_integral": check_norm_integral,
}


def run_case(case: dict, tol_override: float | None = None) -> dict:
    """Run one manifest entry; returns the record dict (with an `error`
    field instead of residuals when the check raises)."""
    name = case["check"]
    params = dict(case.get("params", {}))
    if tol_override is not None:
        params["tol"] = tol_override
    try:
        result = CHECKS[name](**params)
        return result.to_record()
    except StringHorizonError as exc:
        return {"name": name, "params": params, "passed": False,
                "error": f"{type(exc).__name__}: {exc}"}


def run_cases(cases, tol_override: float | None = None,
              parallelism: int = 1) -> list[dict]:
    """Run manifest entries (concurrently if asked) and return records in
    manifest order."""
    if parallelism <= 1:
        return [run_case(c, tol_override) for c in cases]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        futures = [pool.submit(run_case, c, tol_override) for c in cases]
        return [f.result() for f in futures]
