"""Brute-force reference computations over F_p, independent of the library's linear algebra.

Everything here works on raw structure-constant lists and enumerates field
elements directly; nothing calls rref, kernels or closures from the package.
"""

from __future__ import annotations

import itertools


def elements(p, n):
    return list(itertools.product(range(p), repeat=n))


def mul(c, p, u, v):
    n = len(c)
    out = [0] * n
    for i in range(n):
        for j in range(n):
            if u[i] and v[j]:
                for k in range(n):
                    out[k] += u[i] * v[j] * c[i][j][k]
    return tuple(x % p for x in out)


def add(p, u, v):
    return tuple((a + b) % p for a, b in zip(u, v))


def sub(p, u, v):
    return tuple((a - b) % p for a, b in zip(u, v))


def is_associative_elementwise(c, p):
    n = len(c)
    els = elements(p, n)
    return all(mul(c, p, mul(c, p, x, y), z) == mul(c, p, x, mul(c, p, y, z)) for x in els for y in els for z in els)


def count_associative_tables(p, n):
    count = 0
    for flat in itertools.product(range(p), repeat=n ** 3):
        c = [[[flat[(i * n + j) * n + k] for k in range(n)] for j in range(n)] for i in range(n)]
        if is_associative_elementwise(c, p):
            count += 1
    return count


def generated_ideal(c, p, gens):
    """Set of elements of the two-sided ideal generated by ``gens`` (closure by saturation)."""
    n = len(c)
    els = elements(p, n)
    cur = {tuple([0] * n)} | set(gens)
    while True:
        new = set(cur)
        for a in cur:
            for b in cur:
                new.add(add(p, a, b))
            for x in els:
                new.add(mul(c, p, x, a))
                new.add(mul(c, p, a, x))
            for s in range(p):
                new.add(tuple(s * t % p for t in a))
        if new == cur:
            return cur
        cur = new


def commutator_ideal_elements(c, p):
    n = len(c)
    els = elements(p, n)
    gens = {sub(p, mul(c, p, a, b), mul(c, p, b, a)) for a in els for b in els}
    return generated_ideal(c, p, gens)


def apply(m, v, p):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) % p for i in range(len(m)))


def all_square_matrices(p, n):
    for flat in itertools.product(range(p), repeat=n * n):
        yield [list(flat[i * n:(i + 1) * n]) for i in range(n)]


def weak_actor_size(c, p):
    """|{(phi, psi) : x phi(x') = psi(x) x' for all elements x, x'}|."""
    n = len(c)
    els = elements(p, n)
    mats = list(all_square_matrices(p, n))
    count = 0
    for phi in mats:
        for psi in mats:
            if all(mul(c, p, x, apply(phi, y, p)) == mul(c, p, apply(psi, x, p), y) for x in els for y in els):
                count += 1
    return count


def count_actions(cb, cx, p):
    """Actions of B on X checked elementwise: l, r given on basis, extended linearly."""
    nb, nx = len(cb), len(cx)
    bels, xels = elements(p, nb), elements(p, nx)
    mats = list(all_square_matrices(p, nx))

    def lin(fam, b):
        m = [[0] * nx for _ in range(nx)]
        for coeff, f in zip(b, fam):
            for i in range(nx):
                for j in range(nx):
                    m[i][j] = (m[i][j] + coeff * f[i][j]) % p
        return m

    count = 0
    for l in itertools.product(mats, repeat=nb):
        for r in itertools.product(mats, repeat=nb):
            def bx(b, x):
                return apply(lin(l, b), x, p)

            def xb(x, b):
                return apply(lin(r, b), x, p)

            ok = True
            for b in bels:
                for b2 in bels:
                    bb = mul(cb, p, b, b2)
                    for x in xels:
                        if bx(bb, x) != bx(b, bx(b2, x)) or xb(x, bb) != xb(xb(x, b), b2):
                            ok = False
                        elif bx(b, xb(x, b2)) != xb(bx(b, x), b2):
                            ok = False
                        if not ok:
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                for b in bels:
                    for x in xels:
                        for x2 in xels:
                            if (
                                bx(b, mul(cx, p, x, x2)) != mul(cx, p, bx(b, x), x2)
                                or mul(cx, p, x, bx(b, x2)) != mul(cx, p, xb(x, b), x2)
                                or mul(cx, p, x, xb(x2, b)) != xb(mul(cx, p, x, x2), b)
                            ):
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        break
            if ok:
                count += 1
    return count


def classically_central_elementwise(c, p, alpha):
    """alpha given as a matrix (rows = target coords)."""
    n = len(c)
    els = elements(p, n)
    ker = [k for k in els if not any(apply(alpha, k, p))]
    return all(mul(c, p, a, k) == mul(c, p, k, a) for a in els for k in ker)


def homs_count(ca, cb, p, surjective=False):
    na, nb = len(ca), len(cb)
    aels = elements(p, na)
    count = 0
    for flat in itertools.product(range(p), repeat=na * nb):
        m = [list(flat[i * na:(i + 1) * na]) for i in range(nb)]
        if all(apply(m, mul(ca, p, x, y), p) == mul(cb, p, apply(m, x, p), apply(m, y, p)) for x in aels for y in aels):
            if surjective and len({apply(m, x, p) for x in aels}) != p ** nb:
                continue
            count += 1
    return count
