"""Small exact linear-algebra helpers over Q (Fraction) and Z (int)."""
from fractions import Fraction
from math import gcd


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [dot(row, v) for row in A]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def primitive(v):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector with the same direction."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def row_reduce(A):
    """Reduced row echelon form over Q.  Returns (rref rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(A):
    if not A:
        return 0
    return len(row_reduce(A)[1])


def solve(A, b):
    """Unique solution of a square nonsingular system A x = b over Q."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = row_reduce(aug)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [R[i][n] for i in range(n)]


def inverse(A):
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def determinant(A):
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det


def as_fraction_str(x):
    """Render an exact number: ints stay ints, Fractions become 'p/q' strings."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return x
