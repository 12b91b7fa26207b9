"""Arbitrary-precision integer matrix algebra.

Hermite and Smith normal forms with transformation matrices, lattice
membership, saturation, and presentations of finitely generated abelian
groups Z^s / L.  Matrices are plain lists of rows of Python ints.
"""
from dataclasses import dataclass
from math import gcd

from ._linalg import identity, inverse, matmul, matvec, transpose
from .errors import InputError

IntMatrix = list  # list[list[int]], row-major


def xgcd(a, b):
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _copy(M):
    return [list(row) for row in M]


def _check_rect(M, name="matrix"):
    if M and len({len(row) for row in M}) != 1:
        raise InputError(f"{name} is not rectangular")


def hermite_normal_form(M):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular and U*M == H.  H is in row echelon form;
    every pivot is positive and the entries above a pivot lie in [0, pivot).
    """
    _check_rect(M)
    m = len(M)
    n = len(M[0]) if m else 0
    H = _copy(M)
    U = identity(m)
    p = 0
    for j in range(n):
        if p == m:
            break
        for i in range(p + 1, m):
            b = H[i][j]
            if b == 0:
                continue
            a = H[p][j]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            rp, ri = H[p], H[i]
            H[p] = [x * u + y * v for u, v in zip(rp, ri)]
            H[i] = [-bg * u + ag * v for u, v in zip(rp, ri)]
            up, ui = U[p], U[i]
            U[p] = [x * u + y * v for u, v in zip(up, ui)]
            U[i] = [-bg * u + ag * v for u, v in zip(up, ui)]
        piv = H[p][j]
        if piv == 0:
            continue
        if piv < 0:
            H[p] = [-v for v in H[p]]
            U[p] = [-v for v in U[p]]
            piv = -piv
        for i in range(p):
            q = H[i][j] // piv
            if q:
                H[i] = [u - q * v for u, v in zip(H[i], H[p])]
                U[i] = [u - q * v for u, v in zip(U[i], U[p])]
        p += 1
    return H, U


def smith_normal_form(M):
    """Smith normal form D = U*M*V with U, V unimodular.

    The diagonal is non-negative with d_1 | d_2 | ...; zero entries come last.
    """
    _check_rect(M)
    m = len(M)
    n = len(M[0]) if m else 0
    D = _copy(M)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [u + q * v for u, v in zip(D[dst], D[src])]
        U[dst] = [u + q * v for u, v in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            line = [(abs(D[i][t]), 0, i) for i in range(t + 1, m) if D[i][t]]
            line += [(abs(D[t][j]), 1, j) for j in range(t + 1, n) if D[t][j]]
            if line:
                small = min(line)
                if small[0] < abs(D[t][t]):
                    if small[1] == 0:
                        swap_rows(t, small[2])
                    else:
                        swap_cols(t, small[2])
                p = D[t][t]
                for i in range(t + 1, m):
                    if D[i][t]:
                        add_row(i, t, -(D[i][t] // p))
                for j in range(t + 1, n):
                    if D[t][j]:
                        add_col(j, t, -(D[t][j] // p))
                continue
            p = D[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
    return D, U, V


def _diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def lattice_solve(M, b):
    """Some integer x with M x = b, or None when b is not in the column lattice of M."""
    _check_rect(M)
    m = len(M)
    n = len(M[0]) if m else 0
    if len(b) != m:
        raise InputError(f"dimension mismatch: matrix has {m} rows, vector has {len(b)} entries")
    if m == 0:
        return [0] * n
    D, U, V = smith_normal_form(M)
    c = matvec(U, b)
    diag = _diagonal(D)
    y = [0] * n
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d:
            return None
        else:
            y[i] = c[i] // d
    return matvec(V, y) if n else []


def integer_kernel(M, ncols=None):
    """Basis (rows, in Hermite form) of {x in Z^n : M x = 0}."""
    if not M:
        return identity(ncols or 0)
    n = len(M[0])
    D, U, V = smith_normal_form(M)
    rk = sum(1 for d in _diagonal(D) if d)
    rows = [[V[i][j] for i in range(n)] for j in range(rk, n)]
    return lattice_basis(rows) if rows else []


def lattice_basis(vectors):
    """Hermite-normalized basis (rows) of the lattice spanned by the given vectors."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    H, _ = hermite_normal_form(vectors)
    return [row for row in H if any(row)]


def saturation(vectors):
    """Basis of (R-span of vectors) intersected with Z^n, Hermite-normalized."""
    B = lattice_basis(vectors)
    if not B:
        return []
    D, U, V = smith_normal_form(B)
    Vinv = [[int(x) for x in row] for row in inverse(V)]
    return lattice_basis(Vinv[: len(B)])


def lattice_index(vectors):
    """Index of the lattice spanned by ``vectors`` inside its saturation."""
    B = lattice_basis(vectors)
    if not B:
        return 1
    D, _, _ = smith_normal_form(B)
    idx = 1
    for d in _diagonal(D):
        idx *= d
    return idx


def coordinates(basis, x):
    """Integer y with sum_k y_k * basis[k] == x, or None."""
    return lattice_solve(transpose(basis, len(x)), list(x))


def coset_representative(v, basis):
    """Canonical representative of v modulo the lattice spanned by ``basis`` rows.

    Reduces against the Hermite basis so that every pivot coordinate lands in
    [0, pivot); equal cosets give equal representatives.
    """
    v = list(v)
    for row in lattice_basis(basis):
        j = next(k for k, x in enumerate(row) if x)
        q = v[j] // row[j]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


@dataclass(frozen=True)
class AbelianPresentation:
    """Z^s / L  ~=  Z/d_1 + ... + Z/d_k + Z^f.

    ``projection`` has one row per coordinate (torsion coordinates first);
    ``section`` has one column per coordinate and lifts back to Z^s.
    """

    invariant_factors: tuple
    free_rank: int
    projection: tuple
    section: tuple

    @property
    def ncoords(self):
        return len(self.invariant_factors) + self.free_rank

    @property
    def ambient_rank(self):
        return len(self.section)

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def order(self):
        if self.free_rank:
            return None
        o = 1
        for d in self.invariant_factors:
            o *= d
        return o

    def reduce(self, c):
        c = tuple(c)
        if len(c) != self.ncoords:
            raise InputError(f"class has {len(c)} coordinates, group needs {self.ncoords}")
        k = len(self.invariant_factors)
        return tuple(x % d for x, d in zip(c[:k], self.invariant_factors)) + c[k:]

    def project(self, v):
        if len(v) != self.ambient_rank:
            raise InputError(f"vector has {len(v)} entries, expected {self.ambient_rank}")
        return self.reduce(tuple(matvec(self.projection, v)) if self.projection else ())

    def lift(self, c):
        c = self.reduce(c)
        return [sum(row[j] * c[j] for j in range(len(c))) for row in self.section]

    def add(self, c1, c2):
        return self.reduce(tuple(a + b for a, b in zip(c1, c2)))

    def scale(self, j, c):
        return self.reduce(tuple(j * a for a in c))

    def element_order(self, c):
        """Order of c; None when c has infinite order."""
        c = self.reduce(c)
        k = len(self.invariant_factors)
        if any(c[k:]):
            return None
        o = 1
        for x, d in zip(c, self.invariant_factors):
            part = d // gcd(x, d)
            o = o * part // gcd(o, part)
        return o

    def zero(self):
        return (0,) * self.ncoords

    def torsion_elements(self):
        """All elements of the torsion subgroup, in lexicographic order."""
        out = [()]
        for d in self.invariant_factors:
            out = [c + (x,) for c in out for x in range(d)]
        return [c + (0,) * self.free_rank for c in out]

    def describe(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def quotient_presentation(L, s=None, orient=None):
    """Presentation of Z^s modulo the column span of the s-row matrix ``L``.

    ``orient``: optional vector of Z^s; each free coordinate is sign-flipped so
    that the projection of ``orient`` is non-negative there (a tie keeps the
    first non-zero entry of the projection row positive).
    """
    if s is None:
        s = len(L)
    if L and len(L) != s:
        raise InputError("sublattice matrix must have s rows")
    k = len(L[0]) if L else 0
    if k == 0:
        D, U = [[] for _ in range(s)], identity(s)
        diag = []
    else:
        D, U, _ = smith_normal_form(L)
        diag = _diagonal(D)
    rk = sum(1 for d in diag if d)
    Uinv = [[int(x) for x in row] for row in inverse(U)] if s else []
    torsion_idx = [i for i in range(rk) if diag[i] >= 2]
    free_idx = list(range(rk, s))
    proj = [list(U[i]) for i in torsion_idx + free_idx]
    sec_cols = [[Uinv[r][i] for r in range(s)] for i in torsion_idx + free_idx]
    nt = len(torsion_idx)
    for t in range(nt, len(proj)):
        row = proj[t]
        val = sum(a * b for a, b in zip(row, orient)) if orient is not None else 0
        flip = val < 0 or (val == 0 and next((x for x in row if x), 0) < 0)
        if flip:
            proj[t] = [-x for x in row]
            sec_cols[t] = [-x for x in sec_cols[t]]
    # keep torsion projections small: reduce rows modulo their factor
    for t, i in enumerate(torsion_idx):
        proj[t] = [x % diag[i] for x in proj[t]]
    section = tuple(tuple(sec_cols[c][r] for c in range(len(sec_cols))) for r in range(s))
    return AbelianPresentation(
        invariant_factors=tuple(diag[i] for i in torsion_idx),
        free_rank=len(free_idx),
        projection=tuple(tuple(r) for r in proj),
        section=section,
    )


__all__ = [
    "AbelianPresentation",
    "IntMatrix",
    "coordinates",
    "coset_representative",
    "hermite_normal_form",
    "integer_kernel",
    "lattice_basis",
    "lattice_index",
    "lattice_solve",
    "quotient_presentation",
    "saturation",
    "smith_normal_form",
    "xgcd",
    "matmul",
]
