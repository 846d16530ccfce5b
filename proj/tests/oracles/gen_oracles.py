#!/usr/bin/env python3
"""Regenerates tests/oracles/oracles.hpp from mpmath at high precision.

Run from the repository root: python3 tests/oracles/gen_oracles.py
"""
import os

import mpmath as mp

mp.mp.dps = 60
OUT = os.path.join(os.path.dirname(__file__), "oracles.hpp")


def f17(x):
    return repr(float(x))


def tau_coeffs(M):
    # Delta = q prod (1 - q^n)^24, with prod (1-q^n)^3 from Jacobi's identity
    cube = [0] * M
    m = 0
    while m * (m + 1) // 2 < M:
        cube[m * (m + 1) // 2] += (-1) ** m * (2 * m + 1)
        m += 1
    p = cube
    for _ in range(3):  # cube^8 by repeated squaring: ^2, ^4, ^8
        p = mul(p, p, M)
    return [0] + p[: M - 1]  # c_n is the coefficient of q^n


def mul(a, b, M):
    out = [0] * M
    nz = [(i, x) for i, x in enumerate(b) if x]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in nz:
            if i + j >= M:
                break
            out[i + j] += x * y
    return out


def g_coeffs(M):
    # theta(z) eta(4z)^6 = theta * q prod (1 - q^{4n})^6
    cube = [0] * M
    m = 0
    while 4 * (m * (m + 1) // 2) < M:
        cube[4 * (m * (m + 1) // 2)] += (-1) ** m * (2 * m + 1)
        m += 1
    six = mul(cube, cube, M)
    shifted = [0] + six[: M - 1]
    theta = [0] * M
    n = 0
    while n * n < M:
        theta[n * n] += 1 if n == 0 else 2
        n += 1
    return mul(theta, shifted, M)


def twisted_L_delta(s, c, p, q, ptilde):
    """L_{p/q}(s) for Delta from the unrotated incomplete-gamma expansion."""
    k = 12
    w = s + mp.mpf(k - 1) / 2
    s1 = mp.mpf(0)
    s2 = mp.mpf(0)
    for n in range(1, len(c)):
        if c[n] == 0:
            continue
        z = 2 * mp.pi * n / q
        if z > 400:
            break
        s1 += c[n] * mp.expjpi(2 * mp.mpf(n * p) / q) * z ** (-w) * mp.gammainc(w, z)
        s2 += c[n] * mp.expjpi(-2 * mp.mpf(n * ptilde) / q) * z ** (-(k - w)) * mp.gammainc(k - w, z)
    qlam = s1 + (1j) ** k * s2  # q^w Lambda(w)
    return qlam * (2 * mp.pi) ** w / (mp.gamma(w) * mp.mpf(q) ** w)


def main():
    lines = ["#pragma once", "", "// Generated by tests/oracles/gen_oracles.py (mpmath, 60 digits).", "",
             "namespace twistzero::oracle {", ""]

    def emit(name, typ, rows):
        lines.append(f"inline constexpr {typ} {name}[] = {{")
        for r in rows:
            lines.append("    {" + ", ".join(f17(x) for x in r) + "},")
        lines.append("};")
        lines.append("")

    lines.append("struct CplxPair {\n  double in_re, in_im, re, im;\n};\n")
    lines.append("struct TailCase {\n  double w_re, w_im, z_re, z_im, re, im;\n};\n")
    lines.append("struct RealCase {\n  double s_re, s_im, x, re, im;\n};\n")

    gamma_pts = [(0.5, 0), (1, 0), (5.5, 0), (-2.5, 0), (0.25, 3), (6, 10), (-3.7, 0.2), (1.5, 40), (0.5, -7)]
    emit("kGamma", "CplxPair",
         [(a, b, mp.re(v), mp.im(v)) for a, b in gamma_pts for v in [mp.gamma(mp.mpc(a, b))]])

    lg_pts = [(6, 100), (6, 400), (0.5, 1000), (30, 5), (6.5, -250)]
    emit("kLogGammaReal", "CplxPair",
         [(a, b, mp.re(mp.loggamma(mp.mpc(a, b))), 0.0) for a, b in lg_pts])

    tail_cases = []
    for (wr, wi, zr, zi) in [(3, 0, 0.5, 0), (3, 0, 10, 0), (6, 2, 1.2566, 0), (6, 2, 30, 0),
                             (6, 40, 1.2566, 0), (6, 40, 60, 0), (-6, -40, 60, 0), (0.5, 3, 0.2, 0.7),
                             (-2, 1e-14, 0.1, 0), (-2, 0, 0.1, 0), (-2, 0, 3, 0), (0, 0, 0.05, 0),
                             (6, 100, 0.4 * mp.cos(1.5), 0.4 * mp.sin(1.5)),
                             (6, 100, 50 * mp.cos(1.5), 50 * mp.sin(1.5)),
                             (-5, -100, 20 * mp.cos(1.5), 20 * mp.sin(1.5)),
                             (3.5, 200, 100 * mp.cos(1.54), 100 * mp.sin(1.54)),
                             (2.25, -30, 5 * mp.cos(-1.2), 5 * mp.sin(-1.2))]:
        w = mp.mpc(wr, wi)
        z = mp.mpc(zr, zi)
        v = z ** (-w) * mp.gammainc(w, z)
        tail_cases.append((wr, wi, zr, zi, mp.re(v), mp.im(v)))
    emit("kTail", "TailCase", tail_cases)

    upper = []
    for (sr, si, x) in [(2.5, 0, 1.0), (2.5, 0, 20.0), (0.5, 4, 0.3), (6, -10, 8.0), (-1.5, 0, 2.0)]:
        v = mp.gammainc(mp.mpc(sr, si), x)
        upper.append((sr, si, x, mp.re(v), mp.im(v)))
    emit("kUpperGamma", "RealCase", upper)

    gd = []
    for (sr, si, d) in [(6, 0, 0), (6, 5, 0), (2.5, 20, 1), (0.5, 100, 0), (3, 0, 1), (7, 0, 0)]:
        s = mp.mpc(sr, si)
        v = 2 * (1j) ** d * (2 * mp.pi) ** (-s) * mp.gamma(s) * mp.cos(mp.pi * (s - d) / 2)
        gd.append((sr, si, d, mp.re(v), mp.im(v)))
    emit("kGDelta", "RealCase", gd)

    c = tau_coeffs(400)
    lines.append("inline constexpr long long kTau[] = {" + ", ".join(str(x) for x in c[1:41]) + "};")
    lines.append("")
    g = g_coeffs(41)
    lines.append("inline constexpr long long kGCoeffs[] = {" + ", ".join(str(x) for x in g[1:41]) + "};")
    lines.append("")

    # Delta twisted by 1/5 (p~ = 1)
    lvals = []
    for (sr, si) in [(0.5, 0), (0.5, 1), (0.5, 5), (0.5, 10), (0.5, 14.5), (0.5, 25), (0.5, 40),
                     (2, 3), (-1, 2), (0.75, -6)]:
        v = twisted_L_delta(mp.mpc(sr, si), c, 1, 5, 1)
        lvals.append((sr, si, mp.re(v), mp.im(v)))
    emit("kDeltaTwist15", "CplxPair", lvals)

    # direct Dirichlet sum for g twisted by 1/16 at Re s = nu/2 + 2
    M = 20000
    gc = g_coeffs(M + 1)
    nu = mp.mpf(7) / 2
    dvals = []
    for (sr, si) in [(3.75, 0), (3.75, 2)]:
        s = mp.mpc(sr, si)
        tot = mp.mpc(0)
        for n in range(1, M + 1):
            if gc[n]:
                tot += gc[n] * mp.mpf(n) ** (-(nu - 1) / 2) * mp.expjpi(2 * mp.mpf(n) / 16) * mp.mpf(n) ** (-s)
        dvals.append((sr, si, mp.re(tot), mp.im(tot)))
    emit("kGTwist116", "CplxPair", dvals)

    lines.append("}  // namespace twistzero::oracle")
    with open(OUT, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
