"""Independent reference implementations used only by the tests.

They share no code with the package: dense Fraction elimination for rank,
a face-by-face coboundary for Betti numbers, and exhaustive enumeration.
"""

from fractions import Fraction
from itertools import combinations


def dense_rank(rows):
    A = [[Fraction(v) for v in r] for r in rows]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def all_faces(maximal):
    out = set()
    for s in maximal:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return out


def betti_oracle(simplices):
    """Betti numbers over Q of the complex with the given (closed) simplex set."""
    simplices = set(simplices)
    if not simplices:
        return []
    top = max(len(s) for s in simplices) - 1
    by = [sorted(s for s in simplices if len(s) == d + 1) for d in range(top + 1)]
    ranks = []
    for d in range(top):
        idx = {s: i for i, s in enumerate(by[d])}
        mat = []
        for s in by[d + 1]:
            row = [0] * len(by[d])
            for i in range(len(s)):
                row[idx[s[:i] + s[i + 1:]]] = (-1) ** i
            mat.append(row)
        ranks.append(dense_rank(mat))
    out = []
    for d in range(top + 1):
        out.append(len(by[d]) - (ranks[d] if d < top else 0) - (ranks[d - 1] if d else 0))
    return out


def pad(v, n):
    v = list(v)
    return (v + [0] * n)[:n]


def symmetric_eigen_signs_bruteforce(M):
    """(pos, neg, zero) eigenvalue counts of a symmetric matrix.

    Characteristic polynomial coefficients are sums of principal minors
    (cofactor expansion); Descartes' rule is exact for real-rooted polynomials.
    """
    n = len(M)

    def det(A):
        if not A:
            return Fraction(1)
        if len(A) == 1:
            return Fraction(A[0][0])
        return sum((-1) ** j * A[0][j] * det([row[:j] + row[j + 1:] for row in A[1:]]) for j in range(len(A)) if A[0][j])

    # det(λI - M) = Σ_k (-1)^k E_k λ^{n-k}, E_k = sum of k x k principal minors
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        E = sum(det([[M[i][j] for j in S] for i in S]) for S in combinations(range(n), k))
        coeffs[n - k] = (-1) ** k * E
    zero = next(i for i, c in enumerate(coeffs) if c != 0)
    rest = [c for c in coeffs[zero:]]

    def var(seq):
        s = [c for c in seq if c != 0]
        return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))

    pos = var(rest)
    neg = var([c if i % 2 == 0 else -c for i, c in enumerate(rest)])
    return pos, neg, zero
