#!/usr/bin/env python3
"""Generate data/golden/fixtures.csv.

Every derived value below is computed here in 40-digit arithmetic (mpmath),
by a route that does not share code with the C++ library: quadrature instead
of series, bracketing instead of Newton, numeric differentiation instead of
analytic jets, plain normal equations instead of the LDLT path. Printed values
are copied with the tolerance the exercise allows.

Usage: generate_golden.py [output.csv]
"""

import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

pi = mp.pi
GR = pi / 200
DEG = pi / 180
DMGR = GR * mp.mpf("1e-4")

CLARKE = (mp.mpf("6378249.2"), mp.mpf("0.0068034877"))
GRS = (mp.mpf("6378137"), mp.mpf("0.00669438"))
EARTH_R = mp.mpf(6378000)

rows = []


def add(case, key, value, tol, prov="derived"):
    rows.append((case, key, value, tol, prov))


def fmt(x):
    x = mp.mpf(x)
    if x == 0:
        return "0"
    return mp.nstr(x, 17, min_fixed=-4, max_fixed=12, strip_zeros=True)


# ---------------------------------------------------------------- ellipsoid

def N_(ell, phi):
    a, e2 = ell
    return a / mp.sqrt(1 - e2 * mp.sin(phi) ** 2)


def rho_(ell, phi):
    a, e2 = ell
    return a * (1 - e2) / (1 - e2 * mp.sin(phi) ** 2) ** mp.mpf(1.5)


def iso_lat(ell, phi):
    e = mp.sqrt(ell[1])
    s = mp.sin(phi)
    return mp.log(mp.tan(pi / 4 + phi / 2)) - e / 2 * mp.log((1 + e * s) / (1 - e * s))


def iso_lat_inverse(ell, L):
    # fixed point phi = 2 atan(exp(L) ((1+e s)/(1-e s))^(e/2)) - pi/2
    e = mp.sqrt(ell[1])
    phi = 2 * mp.atan(mp.exp(L)) - pi / 2
    for _ in range(200):
        s = mp.sin(phi)
        nxt = 2 * mp.atan(mp.exp(L) * ((1 + e * s) / (1 - e * s)) ** (e / 2)) - pi / 2
        if abs(nxt - phi) < mp.mpf("1e-35"):
            return nxt
        phi = nxt
    raise RuntimeError("isometric inverse did not converge")


def arc(ell, phi):
    return mp.quad(lambda t: rho_(ell, t), [0, phi])


# ---------------------------------------------------------------- geocore

add("geocore.N.clarke36", "N", N_(CLARKE, 36 * DEG), 1e-6)
add("geocore.rho.clarke45", "rho", rho_(CLARKE, 45 * DEG), 1e-6)
add("geocore.geocentric.clarke45", "omega_rad", mp.atan((1 - CLARKE[1]) * mp.tan(45 * DEG)), 1e-14)
# isometric latitude as the integral of rho / (N cos phi)
Liso = mp.quad(lambda t: rho_(CLARKE, t) / (N_(CLARKE, t) * mp.cos(t)), [0, 40 * GR])
add("geocore.isometric.clarke40gr", "L", Liso, 1e-13)
add("geocore.isometric.clarke40gr", "inverse_gr", iso_lat_inverse(CLARKE, Liso) / GR, 1e-10)
add("geocore.wallis.8", "W8", mp.quad(lambda t: mp.sin(t) ** 8, [0, 1]), 1e-14)

Q = arc(GRS, pi / 2)
add("geocore.arc.grs.quarter", "Q", Q, 1e-3)


def arc_order(ell, tol):
    # smallest n with a(1-e2) sum_{k>n} C_k e2^k W_2k(pi/2) < tol, C_k = binomial(-3/2, k)(-1)^k
    a, e2 = ell
    terms = []
    for k in range(60):
        ck = mp.rf(mp.mpf(1.5), k) / mp.factorial(k)
        w = mp.quad(lambda t: mp.sin(t) ** (2 * k), [0, pi / 2])
        terms.append(a * (1 - e2) * ck * e2 ** k * w)
    n = 0
    while mp.fsum(terms[n + 1:]) >= tol:
        n += 1
    return n


add("geocore.arc.grs.quarter", "order", arc_order(GRS, mp.mpf("1e-3")), 0)
phi5 = mp.findroot(lambda p: arc(GRS, p) - 5e6, (mp.mpf(0.7), mp.mpf(0.9)), solver="anderson")
add("geocore.arcinv.grs.5e6", "phi_rad", phi5, 2e-10)
add("geocore.jacobi.clarke", "lambda_H_rad", 2 * pi - CLARKE[1] * pi, 1e-12, "paper")
add("geocore.jacobi.clarke", "lambda_H_60_rad", mp.mpf(0.3) + 2 * pi - CLARKE[1] * pi * mp.sin(60 * DEG), 1e-12)
add("geocore.clairaut.torus", "C", 3 * mp.sin(pi / 4), 1e-14, "paper")

# ---------------------------------------------------------------- cartgeo


def cart_to_geo_fixed_point(ell, x, y, z):
    a, e2 = ell
    p = mp.sqrt(x * x + y * y)
    phi = mp.atan(z / p)
    for _ in range(500):
        N = N_(ell, phi)
        nxt = mp.atan((z + N * e2 * mp.sin(phi)) / p)
        if abs(nxt - phi) < mp.mpf("1e-38"):
            phi = nxt
            break
        phi = nxt
    N = N_(ell, phi)
    return phi, mp.atan2(y, x), p / mp.cos(phi) - N


P3 = (mp.mpf("4300244.860"), mp.mpf("1062094.681"), mp.mpf("4574775.629"))
phi3, lam3, h3 = cart_to_geo_fixed_point(GRS, *P3)
for m in ("iter1", "iter2", "iter3", "finite"):
    cid = "cartgeo.p3." + m
    add(cid, "phi_gr", phi3 / GR, 1e-9)
    add(cid, "lambda_gr", lam3 / GR, 1e-9)
    add(cid, "h", h3, 1e-4)
    if m != "finite":
        add(cid, "within_bound", 1, 0)


def bound_by_counting(k, spread, eps):
    i = 0
    while mp.mpf(k) ** i * mp.mpf(spread) > mp.mpf(eps) * (1 + mp.mpf("1e-9")):
        i += 1
    return i


add("cartgeo.bound", "k05", bound_by_counting("0.5", 1, "1e-6"), 0)
add("cartgeo.bound", "k01", bound_by_counting("0.1", 1, "1e-6"), 0)
add("cartgeo.bound", "done", bound_by_counting("0.5", "1e-6", "1e-3"), 0)
roots = sorted(mp.re(r) for r in mp.polyroots([1, 0, -7, 6]))
for i, r in enumerate(roots, 1):
    add("cartgeo.cubic", f"r{i}", r, 1e-12)
add("cartgeo.series.coeffs", "a3", 1, 1e-15, "paper")
add("cartgeo.series.coeffs", "a4", 1, 1e-15, "paper")
add("cartgeo.series.midlat", "phi_rad", pi / 4, 5e-9)

# ---------------------------------------------------------------- diffgeo

add("diffgeo.helix", "kappa", mp.mpf(3) / 25, 1e-12, "paper")
add("diffgeo.helix", "tau", mp.mpf(4) / 25, 1e-12, "paper")
add("diffgeo.helix", "length_2pi", mp.quad(lambda t: mp.sqrt(9 + 16), [0, 2 * pi]), 1e-8)


def curve(t):
    return mp.matrix([t ** 2, t ** 3, mp.mpf(9) / 16 * t ** 4])


def dcurve(t, n):
    return mp.matrix([mp.diff(lambda s, i=i: curve(s)[i], t, n) for i in range(3)])


def cross(u, v):
    return mp.matrix([u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]])


def dot(u, v):
    return mp.fsum(u[i] * v[i] for i in range(len(u)))


r1, r2, r3 = dcurve(1, 1), dcurve(1, 2), dcurve(1, 3)
c12 = cross(r1, r2)
kappa = mp.norm(c12) / mp.norm(r1) ** 3
tau = dot(c12, r3) / mp.norm(c12) ** 2
nvec = cross(c12, r1)
nvec = nvec / mp.norm(nvec)
centre = curve(1) + nvec / kappa
add("diffgeo.curve.p1", "kappa", kappa, 1e-12)
add("diffgeo.curve.p1", "tau", tau, 1e-12)
for i, k in enumerate(("cx", "cy", "cz")):
    add("diffgeo.curve.p1", k, centre[i], 1e-10)
add("diffgeo.curve.p1", "s01", mp.quad(lambda t: mp.norm(dcurve(t, 1)), [0, 1]), 1e-9)


def surface_partials(f, u, v):
    ru = mp.matrix([mp.diff(lambda s, i=i: f(s, v)[i], u) for i in range(3)])
    rv = mp.matrix([mp.diff(lambda s, i=i: f(u, s)[i], v) for i in range(3)])
    ruu = mp.matrix([mp.diff(lambda s, i=i: f(s, v)[i], u, 2) for i in range(3)])
    rvv = mp.matrix([mp.diff(lambda s, i=i: f(u, s)[i], v, 2) for i in range(3)])
    ruv = mp.matrix([mp.diff(lambda s, t, i=i: f(s, t)[i], (u, v), (1, 1)) for i in range(3)])
    return ru, rv, ruu, ruv, rvv


def forms(f, u, v):
    ru, rv, ruu, ruv, rvv = surface_partials(f, u, v)
    n = cross(ru, rv)
    n = n / mp.norm(n)
    E, F, G = dot(ru, ru), dot(ru, rv), dot(rv, rv)
    L, M, N = dot(n, ruu), dot(n, ruv), dot(n, rvv)
    det = E * G - F * F
    return E, F, G, (L * N - M * M) / det, (E * N + G * L - 2 * F * M) / (2 * det)


quad_patch = lambda u, v: mp.matrix([u * u + v, u + v * v, u * v])
E, F, G, _, _ = forms(quad_patch, mp.mpf(1), mp.mpf(1))
add("diffgeo.quadratic.11", "E", E, 1e-12)
add("diffgeo.quadratic.11", "F", F, 1e-12)
add("diffgeo.quadratic.11", "G", G, 1e-12)

u0, v0 = mp.mpf("0.3"), mp.mpf("-0.7")
add("diffgeo.enneper", "E", (1 + u0 ** 2 + v0 ** 2) ** 2, 1e-12, "paper")
add("diffgeo.enneper", "G", (1 + u0 ** 2 + v0 ** 2) ** 2, 1e-12, "paper")
add("diffgeo.enneper", "H", 0, 1e-9, "paper")

pseudo = lambda u, v: mp.matrix([mp.sin(u) * mp.cos(v), mp.sin(u) * mp.sin(v), mp.cos(u) + mp.log(mp.tan(u / 2))])
pseudo_th = lambda u, v: mp.matrix([mp.tanh(u) * mp.cos(v), mp.tanh(u) * mp.sin(v), mp.sech(u) + mp.log(mp.tanh(u / 2))])
add("diffgeo.pseudosphere", "K_log", forms(pseudo, mp.mpf(1), mp.mpf("0.5"))[3], 1e-9)
add("diffgeo.pseudosphere", "K_th", forms(pseudo_th, mp.mpf(1), mp.mpf("0.3"))[3], 1e-9)

monge = lambda f: (lambda x, y: mp.matrix([x, y, f(x, y)]))
_, _, _, Kp, Hp = forms(monge(lambda x, y: (x * x + y * y) / 2), mp.mpf(0), mp.mpf(0))
_, _, _, Ks, Hs = forms(monge(lambda x, y: x * y), mp.mpf(0), mp.mpf(0))
# normal taken upward, so H of the paraboloid is positive
add("diffgeo.graph", "K_parab", Kp, 1e-6)
add("diffgeo.graph", "H_parab", abs(Hp), 1e-6)
add("diffgeo.graph", "K_saddle", Ks, 1e-6)
add("diffgeo.graph", "H_saddle", Hs, 1e-6)

# Gaussian curvature of the ellipsoid is 1/(rho N) at every point
add("diffgeo.orthoK.ellipsoid", "K_rhoN", 1, 1e-6)

# ---------------------------------------------------------------- sphastro

a_, b_ = pi / 3, pi / 4
c_ = mp.acos(mp.cos(a_) * mp.cos(b_))
add("sphastro.right", "c_rad", c_, 1e-12)
add("sphastro.right", "A_rad", mp.asin(mp.sin(a_) / mp.sin(c_)), 1e-12)

A3, B3, C3 = mp.mpf("80.16433") * GR, mp.mpf("55.77351") * GR, mp.mpf("64.06261") * GR
R3 = mp.mpf(6371000)
bs, cs = mp.mpf("20135.7") / R3, mp.mpf("22143.5") / R3
as_ = mp.acos(mp.cos(bs) * mp.cos(cs) + mp.sin(bs) * mp.sin(cs) * mp.cos(A3))
s_ = (as_ + bs + cs) / 2
eps3 = 4 * mp.atan(mp.sqrt(mp.tan(s_ / 2) * mp.tan((s_ - as_) / 2) * mp.tan((s_ - bs) / 2) * mp.tan((s_ - cs) / 2)))
add("sphastro.ex3", "alpha_gr", mp.mpf("200.00045"), 1e-9, "paper")
add("sphastro.ex3", "eps_dmgr", eps3 / DMGR, 1e-6)
add("sphastro.ex3", "f_dmgr", (A3 + B3 + C3 - pi - eps3) / DMGR, 1e-6)


def square_side_oracle(alpha):
    # diagonal d splits the square into two triangles a, a, d with angles alpha, alpha/2, alpha/2
    cd = (mp.cos(alpha) + mp.cos(alpha / 2) ** 2) / mp.sin(alpha / 2) ** 2
    ca2 = (cd - mp.cos(alpha)) / (1 - mp.cos(alpha))
    return mp.acos(mp.sqrt(ca2)), mp.acos(cd)


add("sphastro.square", "a_2pi3", mp.acos(mp.mpf(1) / 3), 1e-12, "paper")
sa, sd = square_side_oracle(mp.mpf("0.6") * pi)
add("sphastro.square", "a_06pi", sa, 1e-12)
add("sphastro.square", "d_06pi", sd, 1e-12)

# Cassini-Soldner by rotating the unit vector so the central meridian becomes the equator
ph, la = 30 * DEG, 40 * DEG
x, y, z = mp.cos(ph) * mp.cos(la), mp.cos(ph) * mp.sin(la), mp.sin(ph)
add("sphastro.cassini", "L_deg", mp.atan2(z, x) / DEG, 1e-10)
add("sphastro.cassini", "H_deg", mp.asin(y) / DEG, 1e-10)

add("sphastro.set", "AH_deg", mp.acos(-mp.tan(56 * DEG) * mp.tan(5 * DEG)) / DEG, 1e-10)


def alt_az(phi, delta, H):
    """Zenith distance and azimuth (from north, clockwise) by the cosine/sine rules."""
    cz = mp.sin(phi) * mp.sin(delta) + mp.cos(phi) * mp.cos(delta) * mp.cos(H)
    z = mp.acos(cz)
    sA = -mp.cos(delta) * mp.sin(H) / mp.sin(z)
    cA = (mp.sin(delta) - mp.sin(phi) * cz) / (mp.cos(phi) * mp.sin(z))
    az = mp.atan2(sA, cA)
    if az < 0:
        az += 2 * pi
    return z, az


phi, dec = 56 * DEG, 5 * DEG
ah = mp.findroot(lambda H: alt_az(phi, dec, H)[0] - 80 * DEG, (mp.mpf(1.0), mp.mpf(1.8)), solver="bisect")
add("sphastro.trig1", "AH_deg", ah / DEG, 1e-9)
add("sphastro.trig1", "Az_deg", alt_az(phi, dec, ah)[1] / DEG, 1e-9)

ah_h = (mp.mpf(6) * 3600 + 37 * 60 + mp.mpf("19.72") - (2 * 3600 + 13 * 60 + mp.mpf("52.90"))) / 3600
z2, az2 = alt_az(38 * DEG, 89 * DEG, ah_h * 15 * DEG)
add("sphastro.p2", "AH_h", ah_h, 1e-12)
add("sphastro.p2", "Az_deg", az2 / DEG, 1e-9)
add("sphastro.p2", "z_deg", z2 / DEG, 1e-9)

# sidereal chain in integer seconds plus the rate excess
sec = 20 * 3600 + 35 * 60 + 28 + 21 * 3600 + 20 * 60 + 57
sec = mp.mpf(sec) + 21 * 3600 * mp.mpf("0.0027379")
hsl = (sec / 3600) % 24
ah3 = (hsl - mp.mpf(40) / 60) % 24
z3, az3 = alt_az(mp.mpf("43.521") * DEG, 41 * DEG, ah3 * 15 * DEG)
add("sphastro.p3", "HSL_h", hsl, 1e-9)
add("sphastro.p3", "AH_h", ah3, 1e-9)
add("sphastro.p3", "z_deg", z3 / DEG, 1e-9)
add("sphastro.p3", "Az_deg", az3 / DEG, 1e-9)

phip = 36 + mp.mpf(54) / 60
add("sphastro.polaris", "h1_deg", 90 - (89 - phip), 1e-10)
add("sphastro.polaris", "h2_deg", phip + 89 - 90, 1e-10)
add("sphastro.shadow", "equinox", mp.tan(47 * DEG), 1e-12)
add("sphastro.shadow", "HC_eq_HA", 1, 1e-12)

# ---------------------------------------------------------------- projmaps

ep2 = CLARKE[1] / (1 - CLARKE[1])


def utm_coeffs(phi):
    a, e2 = CLARKE
    N = N_(CLARKE, phi)
    c, s, t = mp.cos(phi), mp.sin(phi), mp.tan(phi)
    a1 = N * c
    a2 = a1 / 2 * s
    a3 = a1 * c * c / 6 * (1 - t * t + ep2 * c * c)
    g = a * (1 - e2) * (mp.mpf("1.0051353") * phi - mp.mpf("0.0025731") * mp.sin(2 * phi))
    return a1, a2, a3, g


add("utm.p1.pointA", "X", mp.mpf("157833.48"), 0.02, "paper")
add("utm.p1.pointA", "Y", mp.mpf("4078512.97"), 0.02, "paper")
a1, a2, a3, g = utm_coeffs(mp.mpf("40.9193") * GR)
dlB = mp.findroot(lambda d: a1 * d + a3 * d ** 3 - mp.mpf("160595.98"), (mp.mpf(0), mp.mpf(0.1)), solver="bisect")
add("utm.p1.pointB", "lambda_gr", 10 + dlB / GR, 1e-9)
add("utm.a8", "term_m", 0, 1e-4)

phm = 2 * GR
lm = mp.asin(mp.tan(phm))
add("projmaps.mercator", "X", 1000 * lm, 1e-9)
add("projmaps.mercator", "Y", 1000 * mp.asinh(mp.tan(phm)), 1e-9)
rp = 2 * 1000 * mp.cos(30 * DEG) / (1 + mp.sin(30 * DEG))
add("projmaps.polar", "X", rp * mp.sin(50 * DEG), 1e-9)
add("projmaps.polar", "Y", -rp * mp.cos(50 * DEG), 1e-9)

phi0 = 36 * DEG
cg = mp.sqrt(1 + ep2 * mp.cos(phi0) ** 4)
Rg = CLARKE[0] * mp.sqrt(1 - CLARKE[1]) / (1 - CLARKE[1] * mp.sin(phi0) ** 2)
psi0 = mp.atan(mp.tan(phi0) * mp.sqrt((1 - CLARKE[1]) / (1 - CLARKE[1] * mp.sin(phi0) ** 2)))
bshift = mp.log(mp.tan(pi / 4 + psi0 / 2)) - cg * iso_lat(CLARKE, phi0)
psi37 = 2 * mp.atan(mp.exp(cg * iso_lat(CLARKE, 37 * DEG) + bshift)) - pi / 2
add("projmaps.gauss", "c", cg, 1e-12)
add("projmaps.gauss", "R", Rg, 1e-6)
add("projmaps.gauss", "psi37_deg", psi37 / DEG, 1e-9)


class Lambert:
    def __init__(self, phi0_gr, k0):
        self.phi0 = mp.mpf(phi0_gr) * GR
        self.lam0 = 11 * GR
        self.n = mp.sin(self.phi0)
        self.r0 = mp.mpf(k0) * N_(CLARKE, self.phi0) / mp.tan(self.phi0)
        self.L0 = iso_lat(CLARKE, self.phi0)

    def forward(self, phi, lam):
        r = self.r0 * mp.exp(-self.n * (iso_lat(CLARKE, phi) - self.L0))
        th = self.n * (lam - self.lam0)
        return 500000 + r * mp.sin(th), 300000 + self.r0 - r * mp.cos(th)

    def inverse(self, X, Y):
        dx, dy = X - 500000, self.r0 - (Y - 300000)
        r = mp.sqrt(dx * dx + dy * dy)
        L = self.L0 - mp.log(r / self.r0) / self.n
        return iso_lat_inverse(CLARKE, L), self.lam0 + mp.atan2(dx, dy) / self.n

    def gamma(self, lam):
        return self.n * (lam - self.lam0)


def reduce_rigorous(dp, ha, hb, R=EARTH_R):
    dp, ha, hb = mp.mpf(dp), mp.mpf(ha), mp.mpf(hb)
    d0 = mp.sqrt((dp ** 2 - (hb - ha) ** 2) / ((1 + ha / R) * (1 + hb / R)))
    return d0, 2 * R * mp.asin(d0 / (2 * R))


nord = Lambert(40, "0.999625544")
sud = Lambert(37, "0.999625769")
XA, YA = nord.forward(mp.mpf("40.9193") * GR, mp.mpf("11.9656") * GR)
G1 = mp.mpf("55.7631") * GR - nord.gamma(mp.mpf("11.9656") * GR) - mp.mpf("1.52") * DMGR
add("lambert.ex1", "X", XA, 1e-6)
add("lambert.ex1", "Y", YA, 1e-6)
add("lambert.ex1", "G_gr", G1 / GR, 1e-9)
add("lambert.ex1", "Dr", mp.mpf("5421.32") * (1 - mp.mpf("9e-5")), 1e-6)


def grid_from_slope(dp):
    _, de = reduce_rigorous(dp, 1000, 1200)
    return de * (1 + mp.mpf("8e-5"))


dp_ex2 = mp.findroot(lambda d: grid_from_slope(d) - mp.mpf("5427.380"), (mp.mpf(5400), mp.mpf(5460)), solver="bisect")
add("lambert.ex2", "Dp", dp_ex2, 1e-6)

_, de_p1 = reduce_rigorous("20130.858", "235.07", "507.75")
dr_p1 = de_p1 * mp.mpf("0.999850371")
phiA, lamA, lamAa = mp.mpf("41.44903") * GR, mp.mpf("10.72453") * GR, mp.mpf("10.72574") * GR
azg = mp.mpf("89.68499") * GR + (lamA - lamAa) * mp.sin(phiA)
gam = nord.gamma(lamA)
G = azg - gam - mp.mpf("0.00188") * GR
add("lambert.p1", "De", de_p1, 1e-6)
add("lambert.p1", "Dr", dr_p1, 1e-6)
add("lambert.p1", "Azg_gr", azg / GR, 1e-9)
add("lambert.p1", "gamma_gr", gam / GR, 1e-9)
add("lambert.p1", "G_gr", G / GR, 1e-9)
add("lambert.p1", "XB", mp.mpf("478022.43") + dr_p1 * mp.sin(G), 1e-6)
add("lambert.p1", "YB", mp.mpf("444702.22") + dr_p1 * mp.cos(G), 1e-6)

_, de_p2 = reduce_rigorous("16483.873", "1319.79", "1025.34")
dr_p2 = de_p2 * (1 - mp.mpf("14e-5"))
gam2 = sud.gamma(mp.mpf("9.3474734") * GR)
G2 = (mp.mpf("297.56225") * GR - gam2 + mp.mpf("13.7") * DMGR) % (2 * pi)
XB2 = mp.mpf("363044.79") + dr_p2 * mp.sin(G2)
YB2 = mp.mpf("407020.09") + dr_p2 * mp.cos(G2)
phB, laB = sud.inverse(XB2, YB2)
add("lambert.p2", "De", de_p2, 1e-6)
add("lambert.p2", "Dr", dr_p2, 1e-6)
add("lambert.p2", "gamma_gr", gam2 / GR, 1e-9)
add("lambert.p2", "G_gr", G2 / GR, 1e-9)
add("lambert.p2", "XB", XB2, 1e-6)
add("lambert.p2", "YB", YB2, 1e-6)
add("lambert.p2", "phiB_gr", phB / GR, 1e-9)
add("lambert.p2", "lambdaB_gr", laB / GR, 1e-9)

# ---------------------------------------------------------------- reduce

d0, de = reduce_rigorous("20130.858", "235.07", "507.75")
dp, ha, hb = mp.mpf("20130.858"), mp.mpf("235.07"), mp.mpf("507.75")
de_corr = dp - (hb - ha) ** 2 / (2 * dp) - dp * (ha + hb) / 2 / EARTH_R + dp ** 3 / (24 * EARTH_R ** 2)
add("reduce.ex1", "D0", d0, 1e-6)
add("reduce.ex1", "De", de, 1e-6)
add("reduce.ex1", "De_corr", de_corr, 1e-6)
add("reduce.ex1", "Dr", de * mp.mpf("0.999850371"), 1e-6)

d0, de = reduce_rigorous("15498.823", "128.26", "231.84")
dp, ra, i_ = mp.mpf("15498.823"), EARTH_R + mp.mpf("128.26"), mp.mpf("0.3523") * GR
ob = mp.sqrt(ra ** 2 + dp ** 2 + 2 * ra * dp * mp.sin(i_))
theta = mp.acos((ra ** 2 + ob ** 2 - dp ** 2) / (2 * ra * ob))
d0_site = 2 * EARTH_R * mp.sin(theta / 2)
de_mean = (de + EARTH_R * theta) / 2
add("reduce.ex2", "D0", d0, 1e-6)
add("reduce.ex2", "D0_site", d0_site, 1e-6)
add("reduce.ex2", "De_mean", de_mean, 1e-6)
add("reduce.ex2", "Dr", de_mean * mp.mpf("0.999648744"), 1e-6)

_, de = reduce_rigorous("16483.873", "1319.79", "1025.34")
add("reduce.ex3", "De", de, 1e-6)
add("reduce.ex3", "Dr", de * (1 - mp.mpf("14e-5")), 1e-6)

# ---------------------------------------------------------------- orbits

GM = mp.mpf("3.986005e14")
a_o = mp.mpf(6371000) + (mp.mpf(1100e3) + mp.mpf(800e3)) / 2
e_o = mp.mpf(300000) / 14642000
T_o = 2 * pi * mp.sqrt(a_o ** 3 / GM)
add("orbits.p1", "a", 7321000, 1e-9)
add("orbits.p1", "e", e_o, 1e-15)
add("orbits.p1", "T", T_o, 1e-6)
r_pass = mp.mpf(6371000 + 812000)
E_pass = mp.findroot(lambda E: a_o * (1 - e_o * mp.cos(E)) - r_pass, (mp.mpf(0), pi), solver="bisect")
nu_pass = mp.acos((mp.cos(E_pass) - e_o) / (1 - e_o * mp.cos(E_pass)))
add("orbits.p1.pass", "E_rad", E_pass, 1e-12)
add("orbits.p1.pass", "nu_rad", nu_pass, 1e-12)
add("orbits.p1.pass", "t", (E_pass - e_o * mp.sin(E_pass)) * T_o / (2 * pi), 1e-6)
ek = mp.mpf("0.0205")
add("orbits.kepler", "E_rad", mp.findroot(lambda E: E - ek * mp.sin(E) - 1, (mp.mpf(0), mp.mpf(2)), solver="bisect"), 1e-13)
add("orbits.anomaly", "nu_rad", 2 * pi / 3, 1e-13)
AU = mp.mpf("149597870e3")
rp_h, ra_h = mp.mpf("0.53") * AU, mp.mpf("35.1") * AU
e_h = (ra_h - rp_h) / (ra_h + rp_h)
add("orbits.halley", "e", e_h, 1e-13)
# angular momentum: r_p v_p = r_a v_a
add("orbits.halley", "ratio", rp_h / ra_h, 1e-12)
GMs = mp.mpf("6.672e-11") * mp.mpf("1.9891e30")
add("orbits.halley", "T_years", 2 * pi * mp.sqrt(((ra_h + rp_h) / 2) ** 3 / GMs) / (mp.mpf("365.25") * 86400), 1e-8)
add("orbits.geo", "T", 2 * pi * mp.sqrt(mp.mpf(42164e3) ** 3 / GM), 1e-6)

# ---------------------------------------------------------------- lsq


def wls(A, L, P):
    At = A.T
    N = At * P * A
    Ni = mp.inverse(N)
    X = Ni * (At * P * L)
    V = A * X - L
    n, u = A.rows, A.cols
    s2 = (V.T * P * V)[0] / (n - u) if n > u else mp.mpf(0)
    return X, V, N, Ni, s2


for k, v in zip(("X1", "X2", "X3"), ("0.62971", "-0.90962", "0.94782")):
    add("lsq.p5.solution", k, mp.mpf(v), 1e-3, "paper")
# The printed N is not A^T P A of the printed A and P (N11 3.35605 vs 3.35391);
# the fixture pins the recomputed matrix, the printed one is compared in acceptance.
A5 = mp.matrix([[1, 0, 0], [0, 1, 0], ["1.00375", "-0.83924", "0.00143"],
                ["-1.00571", "1.20285", "-0.66128"], ["0.00094", "-0.36239", "0.65918"]])
P5 = mp.diag([mp.mpf(v) for v in ("0.277", "0.160", "1.524", "1.524", "1.524")])
N5 = A5.T * P5 * A5
for k, (i, j) in zip(("N11", "N12", "N13", "N22", "N23", "N33"), ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))):
    add("lsq.p5.normal", k, N5[i, j], 1e-12)
add("lsq.p5.rhs", "L3", mp.mpf("0.97981"), 1e-4, "paper")

t = [6, 10, 14, 18]
d = ["761.3", "759.1", "758.4", "763.1"]
D = ["762.3", "759.5", "758.7", "763.0"]
A = mp.matrix([[ti, 1] for ti in t])
L = mp.matrix([mp.mpf(Di) - mp.mpf(di) for Di, di in zip(D, d)])
P = mp.eye(4) / mp.mpf("0.14") ** 2
X, V, N, Ni, s2 = wls(A, L, P)
add("lsq.aneroid", "alpha", X[0], 1e-12)
add("lsq.aneroid", "gamma", X[1], 1e-10)
add("lsq.aneroid", "s2", s2, 1e-10)
add("lsq.aneroid", "sigma_alpha", mp.sqrt(s2 * Ni[0, 0]), 1e-12)


def leveling(obs, fixed):
    nodes = sorted({o[0] for o in obs} | {o[1] for o in obs})
    unk = [n for n in nodes if n not in fixed]
    col = {n: i for i, n in enumerate(unk)}
    A = mp.zeros(len(obs), len(unk))
    L = mp.zeros(len(obs), 1)
    P = mp.zeros(len(obs), len(obs))
    for i, (fr, to, dh, dist) in enumerate(obs):
        l = mp.mpf(dh)
        if to in fixed:
            l -= fixed[to]
        else:
            A[i, col[to]] += 1
        if fr in fixed:
            l += fixed[fr]
        else:
            A[i, col[fr]] -= 1
        L[i] = l
        P[i, i] = 1 / mp.mpf(dist)
    X, V, N, Ni, s2 = wls(A, L, P)
    return {n: X[col[n]] for n in unk}, {n: col[n] for n in unk}, Ni, s2


lv2 = [("A", "C", "1.878", "6.44"), ("A", "D", "3.831", "3.22"), ("C", "D", "1.954", "3.22"),
       ("A", "B", "0.332", "6.44"), ("B", "D", "3.530", "3.22"), ("B", "C", "1.545", "6.44")]
H, col, Ni, s2 = leveling(lv2, {"A": mp.mpf("3.048")})
for n in ("B", "C", "D"):
    add("lsq.level.p2", "H" + n, H[n], 1e-9)
for n in ("B", "C", "D"):
    add("lsq.level.p2", "s" + n, mp.sqrt(s2 * Ni[col[n], col[n]]), 1e-9)
ic, id_ = col["C"], col["D"]
add("lsq.level.p2", "sCD", mp.sqrt(s2 * (Ni[ic, ic] + Ni[id_, id_] - 2 * Ni[ic, id_])), 1e-9)
add("lsq.level.p2", "mm_per_km", 1000 * mp.sqrt(s2), 1e-7)

lv1 = [("B", "A", "0.509", 1), ("D", "B", "1.058", 1), ("C", "A", "3.362", 1), ("C", "D", "1.783", 1), ("C", "B", "2.829", 1)]
H, col, Ni, s2 = leveling(lv1, {"A": mp.mpf(0)})
for n in ("B", "C", "D"):
    add("lsq.level.p1", "H" + n, H[n], 1e-9)
add("lsq.level.p1", "s2", s2, 1e-12)


def triangle_oracle():
    # unknowns: sides in mm; observations: sides (mm) and plane angles (dmgr)
    obs = mp.matrix([mp.mpf(v) * 1000 for v in ("333.841", "525.847", "414.815")] +
                    [mp.mpf(v) * GR / DMGR for v in ("43.77160", "98.39043", "57.83858")])
    sig = [5, 10, 5] + [mp.mpf("3.1")] * 3
    P = mp.diag([1 / s ** 2 for s in sig])

    def model(x):
        a, b, c = x
        A = mp.acos((b * b + c * c - a * a) / (2 * b * c))
        B = mp.acos((a * a + c * c - b * b) / (2 * a * c))
        C = mp.acos((a * a + b * b - c * c) / (2 * a * b))
        return [a, b, c, A / DMGR, B / DMGR, C / DMGR]

    def jac(x):
        J = mp.zeros(6, 3)
        for j in range(3):
            for i in range(6):
                J[i, j] = mp.diff(lambda s: model([s if k == j else x[k] for k in range(3)])[i], x[j])
        return J

    x = [obs[0], obs[1], obs[2]]
    for _ in range(30):
        J = jac(x)
        r = obs - mp.matrix(model(x))
        dx = mp.inverse(J.T * P * J) * (J.T * P * r)
        x = [x[k] + dx[k] for k in range(3)]
        if mp.norm(dx) < mp.mpf("1e-30"):
            break
    J = jac(x)
    Qll = J * mp.inverse(J.T * P * J) * J.T
    v = mp.matrix(model(x)) - obs
    s2 = (v.T * P * v)[0] / 3
    return x, model(x), Qll, s2


xt, mt, Qll, s2t = triangle_oracle()
for k, i in (("a", 0), ("b", 1), ("c", 2)):
    add("lsq.triangle.ex5", k, xt[i] / 1000, 1e-8)
for k, i in (("A_gr", 3), ("B_gr", 4), ("C_gr", 5)):
    add("lsq.triangle.ex5", k, mt[i] * DMGR / GR, 1e-9)
add("lsq.triangle.ex5", "s2", s2t, 1e-8)
add("lsq.triangle.ex5", "w_A", 1 / Qll[3, 3], 1e-9)
add("lsq.triangle.ex5", "w_a", 1 / Qll[0, 0], 1e-9)


def directions_oracle():
    # parametric: reading(S->T) = az(S->T) - o_S; az(T->S) = az(S->T) + pi; o_A = 0.
    sets = {"A": [("B", "0"), ("C", "74.16667")],
            "B": [("D", "0"), ("C", "82.46080"), ("A", "170.62531")],
            "C": [("A", "0"), ("B", "37.67099"), ("D", "85.08302")],
            "D": [("C", "0"), ("B", "70.12809")]}
    obs = [(s, t, mp.mpf(v) * GR) for s in sets for t, v in sets[s]]
    lines = sorted({tuple(sorted((s, t))) for s, t, _ in obs})
    stations = list(sets)
    ucols = {ln: i for i, ln in enumerate(lines)}
    ocols = {s: len(lines) + i - 1 for i, s in enumerate(stations) if i > 0}
    # approximate azimuths from station A's orientation and the first reading seen
    orient = {"A": mp.mpf(0)}
    az = {}
    for _ in range(10):
        for s, t, v in obs:
            ln = tuple(sorted((s, t)))
            fwd = (s, t) == ln
            if s in orient and ln not in az:
                az[ln] = v + orient[s] if fwd else v + orient[s] - pi
            elif s not in orient and ln in az:
                orient[s] = (az[ln] if fwd else az[ln] + pi) - v
    n, u = len(obs), len(lines) + len(stations) - 1
    A = mp.zeros(n, u)
    L = mp.zeros(n, 1)
    for i, (s, t, v) in enumerate(obs):
        ln = tuple(sorted((s, t)))
        a0 = az[ln] if (s, t) == ln else az[ln] + pi
        A[i, ucols[ln]] = 1
        if s in ocols:
            A[i, ocols[s]] = -1
        w = v - (a0 - orient[s])
        w = (w + pi) % (2 * pi) - pi
        L[i] = w
    X, V, N, Ni, s2 = wls(A, L, mp.eye(n))
    Qll = A * Ni * A.T
    adj = {(s, t): v + V[i] for i, (s, t, v) in enumerate(obs)}
    pos = {(s, t): i for i, (s, t, _) in enumerate(obs)}

    def angle(st, fr, to):
        return (adj[(st, to)] - adj[(st, fr)]) % (2 * pi)

    def weight(st, fr, to):
        i, j = pos[(st, to)], pos[(st, fr)]
        return 1 / (Qll[i, i] + Qll[j, j] - 2 * Qll[i, j])

    return s2, angle, weight


s2d, ang, wgt = directions_oracle()
add("lsq.directions.p1", "s2_dmgr2", s2d / DMGR ** 2, 1e-6)
add("lsq.directions.p1", "s2_ratio", s2d / (mp.mpf("6.2") * DMGR) ** 2, 1e-8)
add("lsq.directions.p1", "w_CBA", wgt("B", "C", "A"), 1e-9)
add("lsq.directions.p1", "CBA_gr", ang("B", "C", "A") / GR, 1e-5)
add("lsq.directions.p1", "BCD_gr", ang("C", "B", "D") / GR, 1e-5)

add("lsq.newton", "u", 3, 1e-10, "paper")
add("lsq.newton", "v", -18, 1e-10, "paper")

S1 = [("4300244.860", "1062094.681", "4574775.629"), ("4277737.502", "1115558.251", "4582961.996"),
      ("4276816.431", "1081197.897", "4591886.356"), ("4315183.431", "1135854.241", "4542857.520"),
      ("4285934.717", "1110917.314", "4576361.689"), ("4217271.349", "1193915.699", "4618635.464"),
      ("4292630.700", "1079310.256", "4579117.105")]
S2 = [("4300245.018", "1062094.592", "4574775.510"), ("4277737.661", "1115558.164", "4582961.878"),
      ("4276816.590", "1081197.809", "4591886.238"), ("4315183.590", "1135854.153", "4542857.402"),
      ("4285934.876", "1110917.227", "4576361.571"), ("4217271.512", "1193915.612", "4618635.348"),
      ("4292630.858", "1079310.168", "4579116.986")]


def bw_rows(x, y, z):
    # X2 - X1 = T + s X1 + r x X1; unknowns tx ty tz s rx ry rz
    return [[1, 0, 0, x, 0, z, -y],
            [0, 1, 0, y, -z, 0, x],
            [0, 0, 1, z, y, -x, 0]]


Abw, Lbw = [], []
for p1, p2 in zip(S1, S2):
    x1 = [mp.mpf(v) for v in p1]
    x2 = [mp.mpf(v) for v in p2]
    Abw += bw_rows(*x1)
    Lbw += [x2[i] - x1[i] for i in range(3)]
Abw = mp.matrix(Abw)
Lbw = mp.matrix(Lbw)
Xbw, Vbw, _, _, _ = wls(Abw, Lbw, mp.eye(21))
for k, i in (("tx", 0), ("ty", 1), ("tz", 2)):
    add("lsq.bw.fit", k, Xbw[i], 1e-4)
add("lsq.bw.fit", "scale_ppm", Xbw[3] * 10 ** 6, 1e-5)
for k, i in (("rx", 4), ("ry", 5), ("rz", 6)):
    add("lsq.bw.fit", k, Xbw[i], 1e-11)
add("lsq.bw.fit", "rms", mp.sqrt(mp.fsum(v ** 2 for v in Vbw) / 21), 1e-7)

targets = [("A", ("4351694.594", "1056274.819", "4526994.706")), ("B", ("4319956.455", "1095408.043", "4548544.867")),
           ("C", ("4303467.472", "1110727.257", "4560823.460")), ("D", ("4202413.995", "1221146.648", "4625014.614"))]
for name, p in targets:
    x1 = [mp.mpf(v) for v in p]
    R = bw_rows(*x1)
    for ax, row in zip("xyz", R):
        q = x1["xyz".index(ax)] + mp.fsum(row[j] * Xbw[j] for j in range(7))
        add("lsq.bw.apply", f"{name}_{ax}", q, 1e-3)

# ---------------------------------------------------------------- write

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[2] / "data/golden/fixtures.csv"
with open(out, "w", newline="\n") as f:
    f.write("# Golden values for `geodesy_cli fixtures run`.\n")
    f.write("# Generated by tools/oracles/generate_golden.py (mpmath, 40 digits); do not edit by hand.\n")
    f.write("# provenance: paper = printed in the exercise, checked with its own tolerance;\n")
    f.write("#             derived = computed by the independent oracle in this script.\n")
    f.write("id,key,expected,tolerance,provenance\n")
    for case, key, value, tol, prov in rows:
        f.write(f"{case},{key},{fmt(value)},{mp.nstr(mp.mpf(tol), 3)},{prov}\n")
print(f"wrote {len(rows)} rows for {len({r[0] for r in rows})} cases to {out}")
