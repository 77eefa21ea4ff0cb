"""One Green's function, six representations.

The 3D Laplace Green's function on flat space threaded by a cosmic string
can be written as a spherical mode sum, an azimuthal Q-sum, an
axisymmetric-potential integral, Linet's image-plus-integral form, and
toroidal / prolate-spheroidal harmonic sums.  They must all agree --
checking that agreement is how every summation identity in this package
is certified.
"""

import math
import time

from stringhorizon import (ConePoint, bessel_integral_lhs,
                           g3_axisym_integral, g3_cylindrical_Qsum, g3_linet,
                           g3_spherical_sum, g3_spheroidal_sum,
                           g3_toroidal_sum, g4_closed, g4_modesum_spherical,
                           legendre_Q)

x = ConePoint("spherical", (1.0, 1.1, 0.3))
xp = ConePoint("spherical", (1.7, 0.7, 1.2))
alpha = 0.7

print(f"pair: r=(1.0, 1.7), theta=(1.1, 0.7), dphi=0.9, alpha={alpha}\n")
reps = [g3_spherical_sum, g3_cylindrical_Qsum, g3_axisym_integral,
        g3_linet, g3_toroidal_sum, g3_spheroidal_sum]
vals = {}
for rep in reps:
    t0 = time.perf_counter()
    vals[rep.__name__] = rep(x, xp, alpha, tol=1e-9)
    dt = time.perf_counter() - t0
    print(f"  {rep.__name__:22s} = {vals[rep.__name__]:.14f}   ({dt*1e3:.1f} ms)")
ref = vals["g3_cylindrical_Qsum"]
print(f"  max mutual deviation: "
      f"{max(abs(v-ref) for v in vals.values())/ref:.2e}\n")

# at alpha = 1 everything is the Coulomb kernel
c1, c2 = x.to_cylindrical(), xp.to_cylindrical()
d2 = ((c1.coords[1] - c2.coords[1]) ** 2 + c1.coords[0] ** 2
      + c2.coords[0] ** 2
      - 2 * c1.coords[0] * c2.coords[0] * math.cos(c1.coords[2] - c2.coords[2]))
print(f"alpha=1: spherical sum {g3_spherical_sum(x, xp, 1.0):.12f} vs "
      f"Coulomb {1/(4*math.pi*math.sqrt(d2)):.12f}")

# at alpha = 1/2 the cone is two flat images
half = g3_spherical_sum(x, xp, 0.5, tol=1e-10)
imgs = 0.0
for k in range(2):
    ang = 0.5 * ((c1.coords[2] - c2.coords[2]) + 2 * math.pi * k)
    d = math.sqrt((c1.coords[1] - c2.coords[1]) ** 2 + c1.coords[0] ** 2
                  + c2.coords[0] ** 2
                  - 2 * c1.coords[0] * c2.coords[0] * math.cos(ang))
    imgs += 1.0 / (4.0 * math.pi * d)
print(f"alpha=1/2: mode sum {half:.12f} vs two-image sum {imgs:.12f}\n")

# the 4D (Euclidean) function has a closed form; the mode sum rebuilds it
x4 = ConePoint("spherical", (1.0, 1.1, 0.3), tau=0.2)
xp4 = ConePoint("spherical", (1.6, 0.8, 1.1), tau=-0.1)
gm = g4_modesum_spherical(x4, xp4, 0.8, tol=1e-9)
gc = g4_closed(x4, xp4, 0.8)
print(f"4D mode sum {gm:.14e} vs closed form {gc:.14e} "
      f"(dev {abs(gm-gc)/gc:.1e})")

# the frequency integral that collapses the 4D sum to Q_lambda
val = bessel_integral_lhs(0.6, 1.0, 1.5, 0.7)
zeta = (0.7 ** 2 + 1.0 + 1.5 ** 2) / (2 * 1.5)
print(f"\nomega-integral of I K products: {val:.12f} vs "
      f"Q_0.6(zeta)/(2 sqrt(r r')) = "
      f"{legendre_Q(0.6, zeta)/(2*math.sqrt(1.5)):.12f}")
