"""Green's functions on flat space threaded by a cosmic string.

The 4D Euclidean and 3D Laplace Green's functions are provided in every
representation used by the identity harness: closed form, spherical mode
sum, cylindrical Q-sum, Bessel k-integral, axisymmetric potential integral,
Linet's image-plus-integral form (alpha > 1/2), and the toroidal and
prolate-spheroidal mode sums.  Pairwise agreement of these representations
is the content of the summation identities checked in `identities`.

Azimuthal convention: phi has period 2*pi and the metric carries
alpha^2 rho^2 dphi^2, so the cone angle deficit is encoded in alpha alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln, gammasgn, ive, kve

from . import specfun
from .errors import (CoincidenceError, DomainError, QuadratureError,
                     SlowConvergenceError)
from .specfun import arccosh1p
from .summation import (abel_limit, geometric_tail, lmax_for_rate,
                        sum_m_bands)

__all__ = [
    "ConePoint",
    "SeparationInvariants",
    "g4_closed",
    "g4_modesum_spherical",
    "bessel_integral_lhs",
    "g3_spherical_sum",
    "g3_cylindrical_Qsum",
    "g3_axisym_integral",
    "g3_linet",
    "g3_toroidal_sum",
    "g3_spheroidal_sum",
    "heine_double_sum",
    "generalized_heine_rhs",
    "linet_kernel",
]

_CHARTS = ("spherical", "cylindrical", "toroidal", "spheroidal")
COINCIDENCE_TOL = 1e-7  # minimum chart-invariant separation


@dataclass(frozen=True)
class ConePoint:
    """Point on the cone in one of four charts.

    spherical   (r, theta, phi)      r > 0, theta in (0, pi)
    cylindrical (rho, z, phi)        rho > 0
    toroidal    (w, eta, phi)        w > 0, eta in [0, 2pi); unit focal ring
    spheroidal  (sigma, theta, phi)  sigma > 0, theta in (0, pi); unit focus

    tau is the optional Euclidean time (4D Green's functions only).
    """

    chart: str
    coords: tuple
    tau: float | None = None

    def __post_init__(self):
        if self.chart not in _CHARTS:
            raise DomainError(f"unknown chart {self.chart!r}")
        a, b, c = self.coords
        if not 0.0 <= c < 2.0 * math.pi:
            raise DomainError(f"phi must lie in [0, 2pi), got {c}")
        if self.chart == "spherical":
            if a <= 0.0 or not 0.0 < b < math.pi:
                raise DomainError(f"invalid spherical coords {self.coords}")
        elif self.chart == "cylindrical":
            if a <= 0.0:
                raise DomainError(f"rho must be positive, got {a}")
        elif self.chart == "toroidal":
            if a <= 0.0 or not 0.0 <= b < 2.0 * math.pi:
                raise DomainError(f"invalid toroidal coords {self.coords}")
        elif self.chart == "spheroidal":
            if a <= 0.0 or not 0.0 < b < math.pi:
                raise DomainError(f"invalid spheroidal coords {self.coords}")

    # -- chart conversions (cylindrical is the hub) --------------------

    def to_cylindrical(self) -> "ConePoint":
        a, b, phi = self.coords
        if self.chart == "cylindrical":
            return self
        if self.chart == "spherical":
            rho, z = a * math.sin(b), a * math.cos(b)
        elif self.chart == "toroidal":
            d = math.cosh(a) - math.cos(b)
            rho, z = math.sinh(a) / d, math.sin(b) / d
        else:  # spheroidal
            rho, z = math.sinh(a) * math.sin(b), math.cosh(a) * math.cos(b)
        return ConePoint("cylindrical", (rho, z, phi), self.tau)

    def to_spherical(self) -> "ConePoint":
        if self.chart == "spherical":
            return self
        rho, z, phi = self.to_cylindrical().coords
        r = math.hypot(rho, z)
        theta = math.atan2(rho, z)
        return ConePoint("spherical", (r, theta, phi), self.tau)

    def to_toroidal(self) -> "ConePoint":
        if self.chart == "toroidal":
            return self
        rho, z, phi = self.to_cylindrical().coords
        d1sq = (rho + 1.0) ** 2 + z * z
        d2sq = (rho - 1.0) ** 2 + z * z
        if d2sq <= 0.0:
            raise DomainError("point on the focal ring; toroidal chart singular")
        w = 0.5 * math.log(d1sq / d2sq)
        eta = math.atan2(2.0 * z, rho * rho + z * z - 1.0) % (2.0 * math.pi)
        if w <= 0.0:
            raise DomainError("toroidal chart needs w > 0")
        return ConePoint("toroidal", (w, eta, phi), self.tau)

    def to_spheroidal(self) -> "ConePoint":
        if self.chart == "spheroidal":
            return self
        rho, z, phi = self.to_cylindrical().coords
        A = rho * rho + z * z + 1.0
        u2 = 0.5 * (A + math.sqrt(max(A * A - 4.0 * z * z, 0.0)))
        u = math.sqrt(u2)
        if u <= 1.0:
            raise DomainError("point on the focal segment; spheroidal chart singular")
        sigma = math.acosh(u)
        theta = math.acos(min(1.0, max(-1.0, z / u)))
        return ConePoint("spheroidal", (sigma, theta, phi), self.tau)

    def scaled(self, s: float) -> "ConePoint":
        """Point at s times the Euclidean position (same phi, tau scaled)."""
        rho, z, phi = self.to_cylindrical().coords
        tau = None if self.tau is None else s * self.tau
        return ConePoint("cylindrical", (s * rho, s * z, phi), tau)


def _pair_cyl(x: ConePoint, xp: ConePoint):
    a, b = x.to_cylindrical(), xp.to_cylindrical()
    rho1, z1, phi1 = a.coords
    rho2, z2, phi2 = b.coords
    dphi = math.remainder(phi1 - phi2, 2.0 * math.pi)
    t1 = 0.0 if a.tau is None else a.tau
    t2 = 0.0 if b.tau is None else b.tau
    return rho1, z1, rho2, z2, dphi, t1 - t2


def _separation2(x: ConePoint, xp: ConePoint, alpha: float, with_tau: bool) -> float:
    rho1, z1, rho2, z2, dphi, dtau = _pair_cyl(x, xp)
    d2 = (z1 - z2) ** 2 + (rho1 - rho2) ** 2 \
        + 2.0 * rho1 * rho2 * alpha * alpha * (1.0 - math.cos(dphi))
    if with_tau:
        d2 += dtau * dtau
    return d2


def _guard_separation(x: ConePoint, xp: ConePoint, alpha: float, with_tau: bool):
    if _separation2(x, xp, alpha, with_tau) < COINCIDENCE_TOL ** 2:
        raise CoincidenceError("point pair closer than the coincidence guard")


@dataclass(frozen=True)
class SeparationInvariants:
    """The (zeta, chi, cos_gamma) triple of a point pair.

    zeta = (dtau^2 + r^2 + r'^2) / (2 r r') and
    cosh(chi) = (zeta - cos(theta)cos(theta')) / (sin(theta)sin(theta'));
    the triple satisfies
    zeta = cos_gamma + (cosh chi - cos dphi) sin(theta) sin(theta').
    """

    zeta: float
    chi: float
    cos_gamma: float

    @classmethod
    def from_points(cls, x: ConePoint, xp: ConePoint) -> "SeparationInvariants":
        rho1, z1, rho2, z2, dphi, dtau = _pair_cyl(x, xp)
        r1, r2 = math.hypot(rho1, z1), math.hypot(rho2, z2)
        zeta = (dtau * dtau + r1 * r1 + r2 * r2) / (2.0 * r1 * r2)
        dcosh = (dtau * dtau + (z1 - z2) ** 2 + (rho1 - rho2) ** 2) / (2.0 * rho1 * rho2)
        chi = arccosh1p(dcosh)
        cg = (z1 * z2 + rho1 * rho2 * math.cos(dphi)) / (r1 * r2)
        return cls(zeta=zeta, chi=chi, cos_gamma=cg)


# ----------------------------------------------------------------------
# gamma-ratio helpers (vectorized; denominator poles give vanishing terms)
# ----------------------------------------------------------------------

def _gamma_ratio_vec(a, b) -> np.ndarray:
    """Gamma(a)/Gamma(b) elementwise; a must stay off poles, poles of b
    give 0 (the mode-sum terms they multiply vanish)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        lg = gammaln(a) - gammaln(b)
        sg = gammasgn(a) * gammasgn(b)
        out = sg * np.exp(lg)
    return np.where(np.isfinite(out), out, 0.0)


# ----------------------------------------------------------------------
# the generalized-Heine double sum and its closed form
# ----------------------------------------------------------------------

def heine_double_sum(alpha: float, theta: float, theta_p: float, dphi: float,
                     zeta: float, tol: float = 1e-8,
                     lmax: int | None = None, mmax: int | None = None):
    """sum_m e^{i m dphi} sum_l (2 lam + 1) [G(lam+mu+1)/G(lam-mu+1)]
    P_lam^{-mu}(cos th) P_lam^{-mu}(cos th') Q_lam(zeta),
    lam = l - |m| + |m|/alpha, mu = |m|/alpha.

    Returns (value, certified_tail, lmax_used, mmax_used).
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if zeta <= 1.0 + 1e-6:
        raise DomainError(
            f"heine_double_sum needs zeta > 1 + 1e-6, got zeta = {zeta}")
    x1, x2 = math.cos(theta), math.cos(theta_p)
    xi = math.acosh(zeta)               # Q_lam(zeta) ~ e^{-lam xi}
    count = (lmax if lmax is not None else lmax_for_rate(xi, tol)) + 1
    tails = [0.0]
    used = {"l": count - 1, "m": 0}

    def band(m: int) -> float:
        mu = m / alpha
        p1 = specfun.ferrers_P_sequence(mu, mu, x1, count)
        p2 = specfun.ferrers_P_sequence(mu, mu, x2, count)
        q = specfun.legendre_Q_sequence(mu, zeta, count)
        lam = mu + np.arange(count)
        # assembled in logs: the gamma ratio alone overflows at large mu
        # even though the full product is tiny
        lgr = gammaln(lam + mu + 1.0) - gammaln(lam - mu + 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = lgr + np.log(np.abs(p1)) + np.log(np.abs(p2)) + np.log(q)
            terms = ((2.0 * lam + 1.0) * np.sign(p1) * np.sign(p2)
                     * np.exp(logs))
        terms = np.where(np.isfinite(terms), terms, 0.0)
        tails.append(geometric_tail(terms[-3:], xi))
        weight = 1.0 if m == 0 else 2.0 * math.cos(m * dphi)
        return weight * float(terms.sum())

    max_bands = (mmax + 1) if mmax is not None else 400
    value, mtail, bands = sum_m_bands(band, tol, max_bands=max_bands,
                                      require_settle=mmax is None)
    used["m"] = bands
    return value, sum(tails) + mtail, used["l"], used["m"]


def generalized_heine_rhs(alpha: float, theta: float, theta_p: float,
                          dphi: float, chi: float) -> float:
    """sinh(chi/alpha) / [sin th sin th' sinh chi (cosh(chi/alpha) - cos dphi)],
    written in cancellation-free form."""
    if chi <= 0.0:
        raise DomainError(f"chi must be positive, got {chi}")
    ss = math.sin(theta) * math.sin(theta_p)
    denom = 2.0 * math.sinh(0.5 * chi / alpha) ** 2 + 2.0 * math.sin(0.5 * dphi) ** 2
    if denom < 1e-14:
        raise CoincidenceError("generalized Heine kernel at a null-separated image")
    ratio = math.sinh(chi / alpha) / math.sinh(chi)
    return ratio / (ss * denom)


# ----------------------------------------------------------------------
# 4D Green's function
# ----------------------------------------------------------------------

def g4_closed(x: ConePoint, xp: ConePoint, alpha: float) -> float:
    """Closed form of the 4D Euclidean Green's function on the cone."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    _guard_separation(x, xp, alpha, with_tau=True)
    rho1, z1, rho2, z2, dphi, dtau = _pair_cyl(x, xp)
    dcosh = (dtau * dtau + (z1 - z2) ** 2 + (rho1 - rho2) ** 2) / (2.0 * rho1 * rho2)
    chi = arccosh1p(dcosh)
    denom = 2.0 * math.sinh(0.5 * chi / alpha) ** 2 + 2.0 * math.sin(0.5 * dphi) ** 2
    if denom < 1e-14:
        raise CoincidenceError("null-separated image: cosh(chi/alpha) = cos(dphi)")
    if chi < 1e-8:
        ratio = (1.0 / alpha) * (1.0 + chi * chi * (1.0 / (alpha * alpha) - 1.0) / 6.0)
    else:
        ratio = math.sinh(chi / alpha) / math.sinh(chi)
    return ratio / (8.0 * math.pi ** 2 * alpha * rho1 * rho2 * denom)


def g4_modesum_spherical(x: ConePoint, xp: ConePoint, alpha: float,
                         tol: float = 1e-8, lmax: int | None = None,
                         mmax: int | None = None) -> float:
    """Spherical-polar mode sum of the 4D Green's function (omega integral
    already performed, leaving Q_lambda(zeta))."""
    _guard_separation(x, xp, alpha, with_tau=True)
    s1, s2 = x.to_spherical(), xp.to_spherical()
    r1, th1, _ = s1.coords
    r2, th2, _ = s2.coords
    dphi = _pair_cyl(x, xp)[4]
    inv = SeparationInvariants.from_points(x, xp)
    value, tail, _, _ = heine_double_sum(alpha, th1, th2, dphi, inv.zeta,
                                         tol=tol, lmax=lmax, mmax=mmax)
    return value / (8.0 * math.pi ** 2 * alpha * r1 * r2)


def bessel_integral_lhs(lam: float, r_lt: float, r_gt: float, dtau: float,
                        tol: float = 1e-10) -> float:
    """integral_0^oo cos(omega dtau) I_{lam+1/2}(omega r<) K_{lam+1/2}(omega r>) domega.

    Equals Q_lam(zeta) / (2 sqrt(r r')) for lam > -1.  Oscillation-aware:
    the Fourier weight is handed to QUADPACK's cycle-splitting rule.
    """
    if lam <= -1.0 + 1e-6:
        raise DomainError(f"integral diverges as lambda -> -1; got {lam}")
    if not 0.0 < r_lt <= r_gt:
        raise DomainError(f"need 0 < r< <= r>, got {r_lt}, {r_gt}")
    order = lam + 0.5
    gap = r_gt - r_lt

    def f(w):
        if w == 0.0:
            return 0.0
        # scaled product: I_nu(a) K_nu(b) = ive(nu,a) kve(nu,b) e^{a-b}
        return float(ive(order, w * r_lt) * kve(order, w * r_gt)
                     * math.exp(-w * gap))

    if dtau == 0.0:
        val, err = quad(f, 0.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=400)
    else:
        val, err = quad(f, 0.0, np.inf, weight="cos", wvar=abs(dtau),
                        epsabs=1e-13, limit=400, limlst=300)
    if err > tol * max(1.0, abs(val)):
        raise QuadratureError(
            f"omega-integral error {err:.2e} exceeds tolerance {tol}")
    return val


# ----------------------------------------------------------------------
# 3D representations
# ----------------------------------------------------------------------

def g3_spherical_sum(x: ConePoint, xp: ConePoint, alpha: float,
                     tol: float = 1e-8, lmax: int | None = None) -> float:
    """3D mode sum in spherical polars: terms (r</r>)^lam decay geometrically,
    so nearly equal radii are rejected (the identity harness handles the
    r -> r' limit by Abel summation instead)."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    _guard_separation(x, xp, alpha, with_tau=False)
    s1, s2 = x.to_spherical(), xp.to_spherical()
    r1, th1, _ = s1.coords
    r2, th2, _ = s2.coords
    dphi = _pair_cyl(x, xp)[4]
    r_lt, r_gt = min(r1, r2), max(r1, r2)
    rate = math.log(r_gt / r_lt)
    if rate < 1e-3:
        raise SlowConvergenceError(
            "radii too close for the spherical mode sum; no geometric decay")
    count = (lmax if lmax is not None else lmax_for_rate(rate, tol)) + 1
    logratio = math.log(r_lt / r_gt)
    x1, x2 = math.cos(th1), math.cos(th2)

    def band(m: int) -> float:
        mu = m / alpha
        p1 = specfun.ferrers_P_sequence(mu, mu, x1, count)
        p2 = specfun.ferrers_P_sequence(mu, mu, x2, count)
        lam = mu + np.arange(count)
        lgr = gammaln(lam + mu + 1.0) - gammaln(lam - mu + 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = (lgr + lam * logratio - math.log(r_gt)
                    + np.log(np.abs(p1)) + np.log(np.abs(p2)))
            terms = np.sign(p1) * np.sign(p2) * np.exp(logs)
        terms = np.where(np.isfinite(terms), terms, 0.0)
        weight = 1.0 if m == 0 else 2.0 * math.cos(m * dphi)
        return weight * float(terms.sum())

    value, _, _ = sum_m_bands(band, tol)
    return value / (4.0 * math.pi * alpha)


def _qsum_u(x: ConePoint, xp: ConePoint):
    rho1, z1, rho2, z2, dphi, _ = _pair_cyl(x, xp)
    du = ((z1 - z2) ** 2 + (rho1 - rho2) ** 2) / (2.0 * rho1 * rho2)
    return rho1, rho2, dphi, 1.0 + du


def g3_cylindrical_Qsum(x: ConePoint, xp: ConePoint, alpha: float,
                        tol: float = 1e-8) -> float:
    """3D Green's function as the azimuthal sum of Q_{|m|/alpha - 1/2}(u),
    u = ((z-z')^2 + rho^2 + rho'^2) / (2 rho rho')."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    _guard_separation(x, xp, alpha, with_tau=False)
    rho1, rho2, dphi, u = _qsum_u(x, xp)
    if u <= 1.0 + 1e-12:
        raise CoincidenceError("u = 1: pair on the same azimuthal circle")

    def band(m: int) -> float:
        mu = m / alpha
        q = specfun.legendre_Qhat_axis((mu - 0.5, 0.0), u)
        weight = 1.0 if m == 0 else 2.0 * math.cos(m * dphi)
        return weight * q

    value, _, _ = sum_m_bands(band, tol)
    return value / (4.0 * math.pi ** 2 * alpha * math.sqrt(rho1 * rho2))


def g3_axisym_integral(x: ConePoint, xp: ConePoint, alpha: float,
                       tol: float = 1e-8) -> float:
    """3D Green's function from general axisymmetric potential theory:
    per-m integrals of sin^{2 mu} Psi over the half-period."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    _guard_separation(x, xp, alpha, with_tau=False)
    rho1, z1, rho2, z2, dphi, _ = _pair_cyl(x, xp)
    base = (z1 - z2) ** 2 + rho1 * rho1 + rho2 * rho2
    lr = math.log(rho1 * rho2)

    def band(m: int) -> float:
        mu = m / alpha

        def integrand(psi):
            s = math.sin(psi)
            D = base - 2.0 * rho1 * rho2 * math.cos(psi)
            return math.exp(mu * (lr + 2.0 * math.log(s)) - (mu + 0.5) * math.log(D)) \
                if s > 0.0 else 0.0

        val, err = quad(integrand, 0.0, math.pi, epsabs=1e-13, epsrel=1e-11,
                        limit=200)
        if err > max(1e-12, tol * abs(val)) * 10.0:
            raise QuadratureError(f"axisymmetric integral m={m}: error {err:.2e}")
        weight = 1.0 if m == 0 else 2.0 * math.cos(m * dphi)
        return weight * val

    value, _, _ = sum_m_bands(band, tol)
    return value / (4.0 * math.pi ** 2 * alpha)


def linet_kernel(u: float, psi: float, alpha: float) -> float:
    """F_alpha(u, psi) over a common denominator:
    2 sin(pi/a) [cos(pi/a) - cosh(u/a) cos(psi)] /
    [(cosh(u/a) - cos(psi - pi/a)) (cosh(u/a) - cos(psi + pi/a))].

    Evaluated through sech(u/a) so large u never overflows."""
    y = u / alpha
    spa, cpa = math.sin(math.pi / alpha), math.cos(math.pi / alpha)
    # vi = 1/cosh(y), computed overflow-free
    e = math.exp(-abs(y))
    vi = 2.0 * e / (1.0 + e * e)
    num = 2.0 * spa * (cpa * vi - math.cos(psi)) * vi
    den = ((1.0 - math.cos(psi - math.pi / alpha) * vi)
           * (1.0 - math.cos(psi + math.pi / alpha) * vi))
    return num / den


def _linet_images(dphi: float, alpha: float) -> list[float]:
    """Image angles alpha*(dphi + 2 pi n) with |dphi + 2 pi n| < pi/alpha."""
    out = []
    for n in (-1, 0, 1):
        ang = dphi + 2.0 * math.pi * n
        margin = math.pi / alpha - abs(ang)
        if abs(margin) < 1e-9:
            raise DomainError(
                "pair sits on a null image (|dphi + 2 pi n| = pi/alpha)")
        if margin > 0.0:
            out.append(alpha * ang)
    return out


def g3_linet(x: ConePoint, xp: ConePoint, alpha: float,
             tol: float = 1e-8) -> float:
    """Linet's representation (alpha > 1/2): direct image(s) plus the
    F_alpha integral."""
    if not 0.5 < alpha <= 1.0:
        raise DomainError(f"g3_linet requires alpha in (1/2, 1], got {alpha}")
    _guard_separation(x, xp, alpha, with_tau=False)
    rho1, z1, rho2, z2, dphi, _ = _pair_cyl(x, xp)
    base = (z1 - z2) ** 2 + rho1 * rho1 + rho2 * rho2
    total = 0.0
    for ang in _linet_images(dphi, alpha):
        sigma = math.sqrt(base - 2.0 * rho1 * rho2 * math.cos(ang))
        total += 1.0 / (4.0 * math.pi * sigma)
    if alpha == 1.0:
        return total  # F_1 vanishes identically

    def integrand(u):
        if u > 600.0:   # kernel ~ e^{-u/alpha}, R ~ e^{u/2}: far below eps
            return 0.0
        R = math.sqrt(base + 2.0 * rho1 * rho2 * math.cosh(u))
        return linet_kernel(u, dphi, alpha) / R

    val, err = quad(integrand, 0.0, np.inf, epsabs=1e-13, epsrel=1e-11,
                    limit=400)
    if err > max(1e-12, tol * abs(val)) * 10.0:
        raise QuadratureError(f"Linet u-integral error {err:.2e}")
    return total + val / (8.0 * math.pi ** 2 * alpha)


# -- toroidal ----------------------------------------------------------

def _toroidal_coefficients(alpha, m, w_lt, w_gt, count):
    """c_n = G(n+mu+1/2)/G(n-mu+1/2) P_{n-1/2}^{-mu}(cosh w<) Qhat_{n-1/2}^{-mu}(cosh w>)
    for n = 0..count-1 (even in n).

    Written as G(n+mu+1/2) * P * Qtilde with the entire Qtilde chain: the
    G(n-mu+1/2) poles of the ratio cancel against Qhat's gamma factor, so
    half-odd-integer orders mu are regular here.  Scaled chains keep long
    sums finite."""
    mu = m / alpha
    x_lt, x_gt = math.cosh(w_lt), math.cosh(w_gt)
    p = specfun.legendre_P_axis_sequence(-0.5, mu, x_lt, count, log_scale=w_lt)
    qb = specfun.legendre_Qbar_axis_sequence(-0.5, mu, x_gt, count,
                                             log_scale=-w_gt)
    n = np.arange(count, dtype=float)
    # gr * Qhat = [G(n+mu+1/2)/G(n+1)] * Qbar  (the G(n-mu+1/2) factors cancel)
    g = np.exp(gammaln(n + mu + 0.5) - gammaln(n + 1.0))
    return g * p * qb * np.exp(-n * (w_gt - w_lt))


def g3_toroidal_sum(x: ConePoint, xp: ConePoint, alpha: float,
                    tol: float = 1e-8) -> float:
    """3D Green's function as the toroidal-harmonic double sum."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    _guard_separation(x, xp, alpha, with_tau=False)
    t1, t2 = x.to_toroidal(), xp.to_toroidal()
    w1, eta1, _ = t1.coords
    w2, eta2, _ = t2.coords
    dphi = _pair_cyl(x, xp)[4]
    deta = math.remainder(eta1 - eta2, 2.0 * math.pi)
    w_lt, w_gt = min(w1, w2), max(w1, w2)
    rate = w_gt - w_lt
    pref = math.sqrt((math.cosh(w1) - math.cos(eta1)) * (math.cosh(w2) - math.cos(eta2)))

    def band(m: int) -> float:
        if rate > 1e-3:
            count = lmax_for_rate(rate, tol) + 1
            c = _toroidal_coefficients(alpha, m, w_lt, w_gt, count)
            weights = np.full(count, 2.0)
            weights[0] = 1.0
            nsum = float(np.dot(weights * np.cos(np.arange(count) * deta), c))
        else:
            if abs(deta) < 1e-6:
                raise SlowConvergenceError(
                    "toroidal n-sum has no decay and no oscillation (w=w', deta=0)")
            count = 12000
            c = _toroidal_coefficients(alpha, m, w_lt, w_gt, count)
            coeffs = c * np.cos(np.arange(count) * deta)
            coeffs[1:] *= 2.0
            nsum, _ = abel_limit(coeffs, h0=0.1, levels=6)
        weight = 1.0 if m == 0 else 2.0 * math.cos(m * dphi)
        return weight * nsum

    value, _, _ = sum_m_bands(band, tol)
    return pref * value / (4.0 * math.pi ** 2 * alpha)


# -- prolate spheroidal ------------------------------------------------

def _spheroidal_coefficients(alpha, m, th1, th2, s_lt, s_gt, count):
    """(2 lam + 1) gr^2 P^{-mu}_lam(cos th) P^{-mu}_lam(cos th')
    P^{-mu}_lam(cosh s<) Qhat^{-mu}_lam(cosh s>), lam = mu + k.
    Assembled with scaled axis chains so long sums stay finite."""
    mu = m / alpha
    p1 = specfun.ferrers_P_sequence(mu, mu, math.cos(th1), count)
    p2 = specfun.ferrers_P_sequence(mu, mu, math.cos(th2), count)
    pa = specfun.legendre_P_axis_sequence(mu, mu, math.cosh(s_lt), count,
                                          log_scale=s_lt)
    qb = specfun.legendre_Qbar_axis_sequence(mu, mu, math.cosh(s_gt), count,
                                             log_scale=-s_gt)
    lam = mu + np.arange(count)
    # gr^2 * Qhat = [G(lam+mu+1)^2 / (G(lam-mu+1) G(lam+3/2))] * Qbar
    lg = (2.0 * gammaln(lam + mu + 1.0) - gammaln(lam - mu + 1.0)
          - gammaln(lam + 1.5))
    k = np.arange(count, dtype=float)
    with np.errstate(over="raise"):
        coef = np.exp(lg - k * (s_gt - s_lt))
    return (2.0 * lam + 1.0) * coef * p1 * p2 * pa * qb


def g3_spheroidal_sum(x: ConePoint, xp: ConePoint, alpha: float,
                      tol: float = 1e-8) -> float:
    """3D Green's function as the prolate-spheroidal mode sum (the
    four-Legendre-product series)."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    _guard_separation(x, xp, alpha, with_tau=False)
    p1, p2 = x.to_spheroidal(), xp.to_spheroidal()
    s1, th1, _ = p1.coords
    s2, th2, _ = p2.coords
    dphi = _pair_cyl(x, xp)[4]
    s_lt, s_gt = min(s1, s2), max(s1, s2)
    rate = s_gt - s_lt
    if rate < 1e-3:
        raise SlowConvergenceError(
            "sigma coordinates too close for the spheroidal mode sum")
    count = lmax_for_rate(rate, tol) + 1

    def band(m: int) -> float:
        c = _spheroidal_coefficients(alpha, m, th1, th2, s_lt, s_gt, count)
        weight = 1.0 if m == 0 else 2.0 * math.cos(m * dphi)
        return weight * float(c.sum())

    value, _, _ = sum_m_bands(band, tol)
    return value / (4.0 * math.pi * alpha)
