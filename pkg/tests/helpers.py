"""Independent oracles: brute-force and exact reference computations
deliberately kept apart from the library code paths they check."""

import math
from fractions import Fraction
from itertools import product

from griforge import Poly, centered, eval_in_field


def schoolbook_rem(a, f, m):
    """Long-division remainder of a by the monic f, centered mod m."""
    r = [c % m for c in a]
    while r and r[-1] % m == 0:
        r.pop()
    while len(r) >= len(f):
        lead = r[-1]
        shift = len(r) - len(f)
        for j in range(len(f)):
            r[shift + j] = (r[shift + j] - lead * f[j]) % m
        while r and r[-1] % m == 0:
            r.pop()
    return tuple(centered(c, m) for c in r)


def schoolbook_mul(a, b, m):
    """Convolution product, centered mod m."""
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    while out and out[-1] % m == 0:
        out.pop()
    return tuple(centered(c, m) for c in out)


def exhaustive_irreducible(f: Poly) -> bool:
    """Trial division by every monic polynomial of degree <= n/2 over F_p."""
    fbar = f.reduce_mod_p()
    p = fbar.modulus.p
    n = fbar.degree
    coeffs = [c % p for c in fbar.coeffs]
    for d in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            if not schoolbook_rem(coeffs, g, p):
                return False
    return True


def field_roots(g: Poly, field):
    """All roots of g in the field, by exhaustive evaluation."""
    return [a for a in field.elements() if eval_in_field(g, a).is_zero]


def ring_horner(g: Poly, a):
    """Evaluate g at a ring element with plain element arithmetic."""
    acc = a.ctx.zero()
    for c in reversed(g.coeffs):
        acc = acc * a + a.ctx.elem([c])
    return acc


def transpose(mat):
    return [list(col) for col in zip(*mat)]


def solve_exact(a, b):
    """Solve a @ x = b over Q; a square. Returns Fractions or None if singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def det_fraction(mat) -> Fraction:
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                c = a[r][col] * inv
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return det


def transform_between(original, reduced):
    """Integer U with U @ original = reduced, or None.

    original must be square and nonsingular; solves column systems
    exactly over Q and checks integrality.
    """
    at = transpose(original)
    rows = []
    for v in reduced:
        x = solve_exact(at, v)
        if x is None or any(f.denominator != 1 for f in x):
            return None
        rows.append([int(f) for f in x])
    return rows


def gram_det(rows) -> Fraction:
    gram = [[sum(x * y for x, y in zip(r1, r2)) for r2 in rows] for r1 in rows]
    return det_fraction(gram)


def exact_gso(rows):
    """Exact Gram-Schmidt: (mu, norms_sq) over Fraction."""
    r = len(rows)
    star = []
    nsq = []
    mu = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        v = [Fraction(x) for x in rows[i]]
        for j in range(i):
            m = sum((Fraction(x) * y for x, y in zip(rows[i], star[j])), Fraction(0)) / nsq[j]
            mu[i][j] = m
            v = [vi - m * sj for vi, sj in zip(v, star[j])]
        star.append(v)
        nsq.append(sum((x * x for x in v), Fraction(0)))
    return mu, nsq


def is_lll_reduced(rows, delta: Fraction) -> bool:
    """Size-reduction and Lovasz condition, checked exactly."""
    mu, nsq = exact_gso(rows)
    half = Fraction(1, 2)
    for i in range(len(rows)):
        for j in range(i):
            if abs(mu[i][j]) > half:
                return False
    for i in range(1, len(rows)):
        if nsq[i] < (delta - mu[i][i - 1] ** 2) * nsq[i - 1]:
            return False
    return True


def enumerate_shortest(basis):
    """Exact shortest nonzero lattice vector by depth-first enumeration.

    Uses the supplied basis only for the search tree; every candidate
    norm comparison is exact, so the result is the true minimum of the
    lattice the basis generates.
    """
    r = len(basis)
    mu, nsq = exact_gso(basis)
    assert all(n > 0 for n in nsq), "basis must be linearly independent"
    best = sum(x * x for x in basis[0])
    best_vec = tuple(basis[0])
    coeff = [0] * r

    def rec(level, partial):
        nonlocal best, best_vec
        if level < 0:
            if any(coeff):
                vec = tuple(
                    sum(coeff[i] * basis[i][t] for i in range(r))
                    for t in range(len(basis[0]))
                )
                val = sum(x * x for x in vec)
                if 0 < val < best:
                    best = val
                    best_vec = vec
            return
        center = -sum(mu[i][level] * coeff[i] for i in range(level + 1, r))
        budget = Fraction(best) - partial
        if budget < 0:
            return
        width = math.sqrt(float(budget / nsq[level])) if budget > 0 else 0.0
        cf = float(center)
        for x in range(math.floor(cf - width) - 1, math.ceil(cf + width) + 2):
            d = Fraction(x) - center
            add = d * d * nsq[level]
            if add <= budget:
                coeff[level] = x
                rec(level - 1, partial + add)
        coeff[level] = 0

    rec(r - 1, Fraction(0))
    return best_vec, int(best)
