"""Pure-Python reference kernels.

Same contracts as the compiled versions in _fast.pyx, with arbitrary-precision
integers throughout.  Matrices are flat row-major lists of ints.
"""


def mat_mul_w1(a, b, n, p, q, mod):
    # n x p times p x q over Z/mod
    out = [0] * (n * q)
    for i in range(n):
        ao = i * p
        oo = i * q
        for j in range(q):
            s = 0
            for l in range(p):
                s += a[ao + l] * b[l * q + j]
            out[oo + j] = s % mod
    return out


def mat_mul_w2(a, b, n, p, q, mod, c0, c1):
    # entries are pairs (x, y) = x + y*g with g*g = -c0 - c1*g, coefficients mod `mod`
    out = [0] * (n * q * 2)
    for i in range(n):
        for j in range(q):
            sx = 0
            sy = 0
            for l in range(p):
                ai = (i * p + l) * 2
                bi = (l * q + j) * 2
                ax = a[ai]
                ay = a[ai + 1]
                bx = b[bi]
                by = b[bi + 1]
                yy = ay * by
                sx += ax * bx - c0 * yy
                sy += ax * by + ay * bx - c1 * yy
            oi = (i * q + j) * 2
            out[oi] = sx % mod
            out[oi + 1] = sy % mod
    return out


def cyc_mat_mul(a, b, n, p, q, prime, power):
    # Entries are integer coefficient vectors of length deg = power*(prime-1)
    # in the power basis of Z[x]/(Phi(x)), Phi = sum_{i<prime} x^(i*power),
    # i.e. the cyclotomic integers of conductor prime*power (power = prime^(k-1)).
    deg = power * (prime - 1)
    order = power * prime
    out = [0] * (n * q * deg)
    for i in range(n):
        for j in range(q):
            acc = [0] * order
            for l in range(p):
                ao = (i * p + l) * deg
                bo = (l * q + j) * deg
                for s in range(deg):
                    av = a[ao + s]
                    if av:
                        for t in range(deg):
                            bv = b[bo + t]
                            if bv:
                                e = s + t
                                if e >= order:
                                    e -= order
                                acc[e] += av * bv
            for e in range(deg, order):
                v = acc[e]
                if v:
                    base = e - deg
                    for ii in range(prime - 1):
                        acc[ii * power + base] -= v
            oo = (i * q + j) * deg
            for s in range(deg):
                out[oo + s] = acc[s]
    return out
