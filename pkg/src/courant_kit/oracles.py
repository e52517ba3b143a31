"""Independent reference computations.

Plain Python lists and loops, no numpy and no shared helpers with the
main code paths.  These exist to cross-check the vectorised machinery.
"""

from fractions import Fraction
from itertools import product


def jacobiator(mu):
    """J[i][j][k][m] = coefficient of e_m in [e_i,[e_j,e_k]] + c.p."""
    n = len(mu)

    def br(x, y):
        out = [Fraction(0)] * n
        for a in range(n):
            if x[a] == 0:
                continue
            for b in range(n):
                if y[b] == 0:
                    continue
                for c in range(n):
                    out[c] += x[a] * y[b] * Fraction(mu[a][b][c])
        return out

    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    J = {}
    for i, j, k in product(range(n), repeat=3):
        ei, ej, ek = basis[i], basis[j], basis[k]
        t1 = br(ei, br(ej, ek))
        t2 = br(ej, br(ek, ei))
        t3 = br(ek, br(ei, ej))
        J[(i, j, k)] = [t1[m] + t2[m] + t3[m] for m in range(n)]
    return J


def is_jacobi(mu) -> bool:
    return all(all(v == 0 for v in vals) for vals in jacobiator(mu).values())


def first_jacobi_failure(mu):
    for key in sorted(jacobiator(mu)):
        if any(v != 0 for v in jacobiator(mu)[key]):
            return key
    return None


def integer_rank(rows):
    """Rank by fraction-free elimination on a list of lists."""
    from math import lcm
    mat = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        mat.append([int(x * den) for x in r])
    if not mat:
        return 0
    ncols = len(mat[0])
    rank, prev = 0, 1
    for c in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][c]
        for i in range(rank + 1, len(mat)):
            f = mat[i][c]
            mat[i] = [(mat[i][j] * p - mat[rank][j] * f) // prev for j in range(ncols)]
        prev = p
        rank += 1
    return rank


def leibniz_coboundary_rows(bracket, left, right, k):
    """Coboundary d_k as a list of rows, by evaluating the defining formula
    on every basis cochain and every argument tuple."""
    n = len(bracket)
    m = len(left[0])

    def evaluate(cochain, args):
        # cochain: dict tuple -> list of length m; args: list of coefficient vectors
        out = [Fraction(0)] * m
        for idx in product(range(n), repeat=len(args)):
            coef = Fraction(1)
            for a, i in zip(args, idx):
                coef *= a[i]
                if coef == 0:
                    break
            if coef == 0:
                continue
            val = cochain.get(idx)
            if val is not None:
                for w in range(m):
                    out[w] += coef * val[w]
        return out

    def bracket_vec(x, y):
        out = [Fraction(0)] * n
        for a, b, c in product(range(n), repeat=3):
            out[c] += x[a] * y[b] * Fraction(bracket[a][b][c])
        return out

    def lact(x, v):
        out = [Fraction(0)] * m
        for a, c, d in product(range(n), range(m), range(m)):
            out[d] += x[a] * v[c] * Fraction(left[a][c][d])
        return out

    def ract(v, y):
        out = [Fraction(0)] * m
        for c, b, d in product(range(m), range(n), range(m)):
            out[d] += v[c] * y[b] * Fraction(right[c][b][d])
        return out

    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    columns = []
    for J in product(range(n), repeat=k):
        for w in range(m):
            cochain = {J: [Fraction(int(t == w)) for t in range(m)]}
            col = []
            for g in product(range(n), repeat=k + 1):
                gs = [basis[i] for i in g]
                tot = [Fraction(0)] * m
                for i in range(1, k + 1):
                    rest = gs[:i - 1] + gs[i:]
                    v = lact(gs[i - 1], evaluate(cochain, rest))
                    s = (-1) ** (i + 1)
                    tot = [t + s * x for t, x in zip(tot, v)]
                v = ract(evaluate(cochain, gs[:k]), gs[k])
                s = (-1) ** (k + 1)
                tot = [t + s * x for t, x in zip(tot, v)]
                for i in range(1, k + 2):
                    for j in range(i + 1, k + 2):
                        args = gs[:i - 1] + gs[i:j - 1] + [bracket_vec(gs[i - 1], gs[j - 1])] + gs[j:]
                        v = evaluate(cochain, args)
                        s = (-1) ** i
                        tot = [t + s * x for t, x in zip(tot, v)]
                col.extend(tot)
            columns.append(col)
    if not columns:
        return []
    return [list(r) for r in zip(*columns)]


def leibniz_cohomology_dim(bracket, left, right, k):
    n, m = len(bracket), len(left[0])
    dk = leibniz_coboundary_rows(bracket, left, right, k)
    kernel = m * n ** k - integer_rank(dk)
    image = integer_rank(leibniz_coboundary_rows(bracket, left, right, k - 1)) if k > 0 else 0
    return kernel - image


def gl_data(n):
    """gl(n) bracket, and the jet-coefficient actions, from first principles.

    Basis E_ab (index a*n+b) with E_ab e_c = delta_bc e_a.  On jets the left
    action is the matrix action and the right action is zero.
    """
    N = n * n
    br = [[[0] * N for _ in range(N)] for _ in range(N)]
    for a, b, c, d in product(range(n), repeat=4):
        i, j = a * n + b, c * n + d
        if b == c:
            br[i][j][a * n + d] += 1
        if d == a:
            br[i][j][c * n + b] -= 1
    left = [[[0] * n for _ in range(n)] for _ in range(N)]
    for a, b in product(range(n), repeat=2):
        left[a * n + b][b][a] = 1
    right = [[[0] * n for _ in range(N)] for _ in range(n)]
    return br, left, right
