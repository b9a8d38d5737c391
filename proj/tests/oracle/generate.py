"""Reference values for the unit tests, computed with mpmath at 30 digits.

Each value comes from a route that does not share code with the library:
direct quadrature of the Levy integrals, Taylor coefficients of the pgf,
Talbot inversion, and a root finder on the closed-form exponent series.
Run: python3 tests/oracle/generate.py
"""

import mpmath as mp

mp.mp.dps = 30


def theta_coeffs(alpha, c, ck):
    ct = 2 * mp.pi * alpha / mp.log(c)
    return ct, ck


def theta(x, ct, ck):
    s = ck[0]
    for k in range(1, len(ck)):
        s += 2 * mp.re(ck[k] * mp.exp(1j * k * ct * x))
    return s


def theta_prime(x, ct, ck):
    s = 0
    for k in range(1, len(ck)):
        s += 2 * mp.re(1j * k * ct * ck[k] * mp.exp(1j * k * ct * x))
    return s


def levy_density(t, alpha, ct, ck):
    lt = mp.log(t)
    return t ** (-alpha - 1) * (alpha * theta(lt, ct, ck) - theta_prime(lt, ct, ck))


def quad_log(f, a=0):
    # Break points at powers of ten keep mpmath's tanh-sinh accurate.
    pts = [mp.mpf(a)] + [mp.mpf(10) ** e for e in range(-12, 7) if mp.mpf(10) ** e > a] + [mp.inf]
    return mp.quad(f, pts)


def report(name, value):
    print(f"{name} = {mp.nstr(value, 20)}")


# --- special functions
report("gamma(0.3+0.7i).re", mp.re(mp.gamma(mp.mpc(0.3, 0.7))))
report("gamma(0.3+0.7i).im", mp.im(mp.gamma(mp.mpc(0.3, 0.7))))
report("gamma(-1.5+2i).re", mp.re(mp.gamma(mp.mpc(-1.5, 2))))
report("gamma(-1.5+2i).im", mp.im(mp.gamma(mp.mpc(-1.5, 2))))
report("loggamma(10+5i).re", mp.re(mp.loggamma(mp.mpc(10, 5))))
report("loggamma(10+5i).im", mp.im(mp.loggamma(mp.mpc(10, 5))))
report("gamma(1/3)", mp.gamma(mp.mpf(1) / 3))

# --- default perturbed theta: alpha 0.75, c 2, c1 = 0.05 c0
a = mp.mpf("0.75")
c0 = 1 / mp.gamma(mp.mpf("0.25"))
ct, ck = theta_coeffs(a, 2, [c0, mp.mpf("0.05") * c0])
w = lambda t: levy_density(t, a, ct, ck)
report("default levy_tail(3)", 3 ** (-a) * theta(mp.log(3), ct, ck))
report("default levy_density(0.5)", w(mp.mpf("0.5")))


def psi_quad(x):
    return quad_log(lambda t: -mp.expm1(-x * t) * w(t))


for x in ["0.01", "1", "10", "100"]:
    report(f"default psi_tilde({x})", psi_quad(mp.mpf(x)))

psi1 = psi_quad(1)
for j in range(1, 4):
    pj = quad_log(lambda t: t ** j / mp.factorial(j) * mp.exp(-t) * w(t)) / psi1
    report(f"default sibuya p_{j}", pj)

# generator on the gaussian bump e^{-(x-1)^2} at x = 1
f = lambda x: mp.exp(-(x - 1) ** 2)
report("default generator gaussian x=1", quad_log(lambda y: (f(1) - f(1 - y)) * w(y)))

# rho density: inverse Laplace transform of 1/psi_tilde via the series
omega = [ck[k] * mp.gamma(1j * k * ct - a + 1) for k in range(len(ck))]


def psi_series(s):
    v = omega[0] * s ** a
    for k in range(1, len(omega)):
        v += omega[k] * s ** (a - 1j * k * ct) + mp.conj(omega[k]) * s ** (a + 1j * k * ct)
    return v


for y in ["0.3", "1"]:
    report(f"default rho({y})", mp.invertlaplace(lambda s: 1 / psi_series(s), mp.mpf(y), method="talbot"))

# --- alpha 1.5, c = e^{4 pi}, c1 = 0.3 c0
A = mp.mpf("1.5")
C0 = -1 / mp.gamma(1 - A)
ctz, ckz = theta_coeffs(A, mp.exp(4 * mp.pi), [C0, mp.mpf("0.3") * C0])
wz = lambda t: levy_density(t, A, ctz, ckz)


def zeta_quad(x):
    # e^{-xt} - 1 + xt written without cancellation for small xt
    def g(t):
        u = x * t
        r = mp.exp(-u) - 1 + u if u > mp.mpf("1e-3") else u ** 2 / 2 - u ** 3 / 6 + u ** 4 / 24 - u ** 5 / 120
        return r * wz(t)

    return quad_log(g)


for x in ["0.5", "3"]:
    report(f"alpha1.5 zeta({x})", zeta_quad(mp.mpf(x)))

az = [-ckz[k] * mp.gamma(1 - A + 1j * k * ctz) for k in range(len(ckz))]


def zeta_series(z):
    v = az[0] * z ** A
    for k in range(1, len(az)):
        v += az[k] * z ** (A - 1j * k * ctz) + mp.conj(az[k]) * z ** (A + 1j * k * ctz)
    return v


xi2 = mp.findroot(lambda x: mp.re(zeta_series(x)) - 2, 1.5)
report("alpha1.5 xi(2)", xi2)

# g(x) = e^{-x/alpha} xi(e^x) and d_n = (1/P) int_0^P g(x) e^{i n D x} dx
P = mp.log(mp.exp(4 * mp.pi))
D = 2 * mp.pi / P


def xi(s):
    return mp.findroot(lambda x: mp.re(zeta_series(x)) - s, s ** (1 / A))


def g(x):
    return mp.exp(-x / A) * xi(mp.exp(x))


mp.mp.dps = 20
nodes = 64
gs = [g(P * j / nodes) for j in range(nodes)]
for n in range(0, 3):
    dn = sum(gs[j] * mp.exp(2j * mp.pi * n * j / nodes) for j in range(nodes)) / nodes
    report(f"alpha1.5 d_{n}.re", mp.re(dn))
    report(f"alpha1.5 d_{n}.im", mp.im(dn))
    tn = dn / mp.gamma(1j * n * D - 1 / A + 1)
    report(f"alpha1.5 tau_{n}.re", mp.re(tn))
    report(f"alpha1.5 tau_{n}.im", mp.im(tn))
mp.mp.dps = 30

# density p(x, 1) = (1/pi) int_0^inf Re e^{-i xi x + zeta(i xi)} d xi
for x in ["-3", "0", "1"]:
    xv = mp.mpf(x)
    val = mp.quad(lambda s: mp.re(mp.exp(-1j * s * xv + zeta_series(1j * s))), [0, 2, 5, 10, 20, 40, 80]) / mp.pi
    report(f"alpha1.5 p({x},1)", val)
for x in ["-3", "0", "1"]:
    xv = mp.mpf(x)
    val = mp.quad(lambda s: mp.re(mp.exp(-1j * s * xv + (1j * s) ** A)), [0, 2, 5, 10, 20, 40, 80]) / mp.pi
    report(f"stable1.5 p({x},1)", val)
