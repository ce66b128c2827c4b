"""Reference value for the reciprocal scattered G_zz, computed independently of
the C++ library with mpmath tanh-sinh quadrature along the real q axis.

Writes scattered_reciprocal.json next to this file.
"""
import json
import pathlib

import mpmath as mp

mp.mp.dps = 30

C = mp.mpf(299792458)
HBAR = mp.mpf("1.054571817e-34")
E = mp.mpf("1.602176634e-19")
EPS0 = mp.mpf("8.8541878128e-12")

F_THZ = 15
EPS_R = 4
MU_C = mp.mpf("0.1") * E
TAU = mp.mpf("0.35e-12")

omega = 2 * mp.pi * F_THZ * mp.mpf(10) ** 12
k = omega * mp.sqrt(EPS_R) / C


def sigma(w):
    intra = 1j * E**2 * MU_C / (mp.pi * HBAR**2 * (w + 1j / TAU))
    x = HBAR * w
    step = 1 if x > 2 * MU_C else 0
    inter = E**2 / (4 * HBAR) * (step + 1j / mp.pi * mp.log(abs((x - 2 * MU_C) / (x + 2 * MU_C))))
    return intra + inter


SIG = sigma(omega)


def p_of(q):
    d = mp.mpc(q) ** 2 - k**2
    p = mp.sqrt(d)
    if mp.re(p) < 0 or (mp.re(p) == 0 and mp.im(p) > 0):
        p = -p
    return p


def refl(q):
    p = p_of(q)
    # identical half-spaces: (p2 - p1 + s) / (p2 + p1 + s) with s = i sigma p^2 / (omega eps0 eps2)
    s = 1j * SIG * p * p / (omega * EPS0 * EPS_R)
    return s / (2 * p + s)


def integrand(q, rho, h):
    p = p_of(q)
    return q**3 * mp.exp(-p * h) / (2 * p) * refl(q) * mp.besselj(0, q * rho) / (2 * mp.pi)


def scattered(rho, h):
    q_spp = 1j * omega * 2 * EPS_R * EPS0 / SIG
    qr = mp.re(q_spp)
    pts = [0, k, (k + qr) / 2, qr * mp.mpf("0.98"), qr, qr * mp.mpf("1.02"), 2 * qr, 4 * qr, 8 * qr, 16 * qr, 40 / h * 2]
    pts = sorted(set(pts))
    total = mp.mpc(0)
    for a, b in zip(pts[:-1], pts[1:]):
        n = max(1, int(mp.ceil((b - a) * rho / (4 * mp.pi))))
        sub = [a + (b - a) * i / n for i in range(n + 1)]
        total += mp.quad(lambda q: integrand(q, rho, h), sub)
    return total


lam = 2 * mp.pi / mp.re(1j * omega * 2 * EPS_R * EPS0 / SIG)
if __name__ == "__main__":
    cases = []
    for rho_l, h_l in [(2, 0.5), (0.5, 0.5), (1, 2.0 / 3.0)]:
        g = scattered(rho_l * lam, h_l * lam)
        cases.append({"rho_over_lambda": rho_l, "z_plus_zp_over_lambda": h_l,
                      "re": float(mp.re(g)), "im": float(mp.im(g))})
    out = {"frequency_thz": F_THZ, "eps_r": EPS_R, "mu_c_ev": 0.1, "tau_ps": 0.35,
           "lambda_m": float(lam), "cases": cases}
    path = pathlib.Path(__file__).with_name("scattered_reciprocal.json")
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(json.dumps(out, indent=2))
