#!/usr/bin/env python3
"""Regenerate the shipped zero tables under data/zeros/.

Ordinates of the Riemann zeta zeros come from mpmath.zetazero (Gram-point
verified). Ordinates of L(s, chi_d) for real primitive characters are
located as sign changes of the real Hardy-type function

    Z(t) = exp(i*theta(t)) * L(1/2 + i t, chi),
    theta(t) = (t/2) log(q/pi) + Im log Gamma((1/2 + a + i t)/2),

then refined with a bracketing solver. The scan count is compared against
the smooth zero-counting main term as a completeness sanity check.

Usage: gen_zero_tables.py zeta N OUT | lfunc D TMAX OUT
"""
import sys
import mpmath as mp

mp.mp.dps = 25


def kronecker(d, n):
    # (d/n) for n >= 1, via mpmath-free reciprocity
    if n == 0:
        return 1 if abs(d) == 1 else 0
    if n == 1:
        return 1
    res = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            res = -res
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def zeta_table(count, out):
    zs = [mp.zetazero(k).imag for k in range(1, count + 2)]
    height = (zs[count - 1] + zs[count]) / 2
    with open(out, "w") as f:
        f.write("# component: zeta\n")
        f.write("# ordinates of the first %d nontrivial zeros (mpmath.zetazero)\n" % count)
        f.write("# completeness_height: %s\n" % mp.nstr(height, 12))
        for g in zs[:count]:
            f.write(mp.nstr(g, 15, strip_zeros=False) + "\n")


def lfunc_table(d, tmax, out, step=0.04):
    q = abs(d)
    chi = [kronecker(d, n) for n in range(q)]
    a = 0 if d > 0 else 1

    def Z(t):
        t = mp.mpf(t)
        theta = t / 2 * mp.log(q / mp.pi) + mp.im(mp.loggamma((0.5 + a + 1j * t) / 2))
        v = mp.exp(1j * theta) * mp.dirichlet(mp.mpc(0.5, t), chi)
        return mp.re(v)

    zeros = []
    t0 = mp.mpf("0.001")
    z0 = Z(t0)
    prev = None
    t = t0
    while t < tmax:
        t1 = t + step
        z1 = Z(t1)
        if z0 == 0 or z0 * z1 < 0:
            zeros.append(mp.findroot(Z, (t, t1), solver="anderson"))
        elif prev is not None:
            # two close zeros hiding inside a grid cell: |Z| dips without a sign change
            zp, tp = prev
            if abs(z0) < abs(zp) and abs(z0) < abs(z1) and abs(z0) < 0.05:
                sub = [tp + k * step / 20 for k in range(41)]
                vals = [Z(s) for s in sub]
                for k in range(40):
                    if vals[k] * vals[k + 1] < 0:
                        r = mp.findroot(Z, (sub[k], sub[k + 1]), solver="anderson")
                        if all(abs(r - w) > 1e-8 for w in zeros):
                            zeros.append(r)
        prev = (z0, t)
        t, z0 = t1, z1
    zeros.sort()
    smooth = tmax / (2 * mp.pi) * mp.log(q * tmax / (2 * mp.pi * mp.e))
    sys.stderr.write("d=%d found %d zeros below %s, smooth main term %.2f\n"
                     % (d, len(zeros), tmax, float(smooth)))
    with open(out, "w") as f:
        f.write("# component: L(s, chi_%d)\n" % d)
        f.write("# ordinates located as sign changes of the Hardy Z-function (mpmath)\n")
        f.write("# completeness_height: %s\n" % mp.nstr(mp.mpf(tmax), 12))
        for g in zeros:
            f.write(mp.nstr(g, 15, strip_zeros=False) + "\n")


if __name__ == "__main__":
    if sys.argv[1] == "zeta":
        zeta_table(int(sys.argv[2]), sys.argv[3])
    else:
        lfunc_table(int(sys.argv[2]), float(sys.argv[3]), sys.argv[4])
