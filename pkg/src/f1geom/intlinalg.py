"""Exact integer and rational linear algebra.

Matrices are plain lists of lists of Python ints (or Fractions for the
rational helpers), so everything is arbitrary precision and there is no
floating point anywhere.  This is the arithmetic bedrock for lattice
computations: Smith normal form, integer kernels and solves, and
invariant factors of subgroups and quotients of finitely generated
abelian groups.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A or not B:
        return []
    n, m, k = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(m)) for j in range(k)] for i in range(n)]


def mat_vec(A, x):
    return [sum(row[j] * x[j] for j in range(len(x))) for row in A]


def transpose(A):
    if not A:
        return []
    return [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]


def smith_normal_form(A: list[list[int]]):
    """Compute U, D, V with U @ A @ V = D diagonal and d1 | d2 | ... .

    U and V are unimodular; the diagonal entries are normalized to be
    nonnegative.  Row/column pivoting picks the smallest nonzero entry,
    which keeps intermediate entries small at the scales we work at.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [row[:] for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    k = 0
    while k < min(m, n):
        # locate smallest nonzero pivot in the trailing block
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if D[i][j] != 0 and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        while True:
            # clear column k below the pivot
            done = True
            for i in range(k + 1, m):
                if D[i][k] != 0:
                    q = D[i][k] // D[k][k]
                    add_row(i, k, -q)
                    if D[i][k] != 0:
                        swap_rows(i, k)
                        done = False
            for j in range(k + 1, n):
                if D[k][j] != 0:
                    q = D[k][j] // D[k][k]
                    add_col(j, k, -q)
                    if D[k][j] != 0:
                        swap_cols(j, k)
                        done = False
            if done:
                break
        if D[k][k] < 0:
            negate_row(k)
        k += 1

    # enforce the divisibility chain d_k | d_{k+1}
    changed = True
    while changed:
        changed = False
        for i in range(min(m, n) - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a != 0 and b % a != 0:
                # fold row i+1 into the 2x2 block and rediagonalize
                add_col(i, i + 1, 1)
                while True:
                    if D[i][i] != 0:
                        q = D[i + 1][i] // D[i][i]
                        add_row(i + 1, i, -q)
                    if D[i + 1][i] == 0:
                        break
                    swap_rows(i, i + 1)
                # row ops may have reintroduced an off-diagonal entry
                if D[i][i + 1] != 0:
                    q = D[i][i + 1] // D[i][i]
                    add_col(i + 1, i, -q)
                if D[i][i] < 0:
                    negate_row(i)
                if D[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    return U, D, V


def diagonal_of(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def matrix_rank(A) -> int:
    _, D, _ = smith_normal_form(A)
    return sum(1 for d in diagonal_of(D) if d != 0)


def kernel_basis(A: list[list[int]]) -> list[list[int]]:
    """Integer basis of {x : A x = 0}.  The returned lattice is saturated."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [col[:] for col in identity_matrix(n)]
    _, D, V = smith_normal_form(A)
    diag = diagonal_of(D)
    basis = []
    for j in range(n):
        if j >= len(diag) or diag[j] == 0:
            basis.append([V[i][j] for i in range(n)])
    return basis


def unimodular_inverse(U: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix."""
    n = len(U)
    M = [[Fraction(U[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = Fraction(1) / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    out = [[M[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


def solve_integer(A: list[list[int]], b: list[int]):
    """One integer solution x of A x = b, or None if none exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [0] * n
    U, D, V = smith_normal_form(A)
    c = mat_vec(U, b)
    diag = diagonal_of(D)
    y = [0] * n
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return mat_vec(V, y)


def column_lattice_basis(A: list[list[int]]) -> list[list[int]]:
    """Basis (as column vectors) of the lattice spanned by the columns of A."""
    m = len(A)
    if m == 0 or not A[0]:
        return []
    U, D, _ = smith_normal_form(A)
    Uinv = unimodular_inverse(U)
    basis = []
    for i, d in enumerate(diagonal_of(D)):
        if d != 0:
            basis.append([Uinv[r][i] * d for r in range(m)])
    return basis


def subgroup_invariants(vectors: list[list[int]], free_rank: int, torsion: list[int]):
    """Isomorphism type of the subgroup of Z^r (+) Z/d_1 (+) ... generated
    by the given vectors (length r + len(torsion) each).

    Returns (rank, factors) with factors in divisibility order, 1s dropped.
    The subgroup is (L + K)/K for L the lattice of lifts and K the torsion
    relation lattice, computed by expressing K in a basis of L + K.
    """
    r, t = free_rank, len(torsion)
    m = r + t
    if not vectors and t == 0:
        return 0, []
    cols = [list(v) for v in vectors]
    krels = []
    for j, d in enumerate(torsion):
        rel = [0] * m
        rel[r + j] = d
        krels.append(rel)
    stacked = transpose(cols + krels) if (cols or krels) else []
    basis = column_lattice_basis(stacked)  # basis of M = L + K
    s = len(basis)
    if s == 0:
        return 0, []
    B = transpose(basis)  # m x s
    coeffs = []
    for rel in krels:
        c = solve_integer(B, rel)
        assert c is not None
        coeffs.append(c)
    if not coeffs:
        return s, []
    C = transpose(coeffs)  # s x t
    _, D, _ = smith_normal_form(C)
    diag = diagonal_of(D)
    nonzero = [d for d in diag if d != 0]
    rank = s - len(nonzero)
    factors = [d for d in nonzero if d > 1]
    return rank, factors


def quotient_invariants(ambient_rank: int, sub_basis: list[list[int]]):
    """Isomorphism type of Z^n / (lattice spanned by sub_basis vectors)."""
    if not sub_basis:
        return ambient_rank, []
    A = transpose([list(v) for v in sub_basis])
    _, D, _ = smith_normal_form(A)
    diag = diagonal_of(D)
    nonzero = [d for d in diag if d != 0]
    rank = ambient_rank - len(nonzero)
    factors = [d for d in nonzero if d > 1]
    return rank, factors


# --- rational helpers (Fractions) -------------------------------------------

def rat_rank(rows: list[list]) -> int:
    M = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = Fraction(1) / M[rank][col]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


def rat_solve(cols: list[list], b: list):
    """Solve sum_j x_j cols[j] = b exactly; None if inconsistent.

    The columns need not be independent; one solution is returned.
    """
    m = len(b)
    n = len(cols)
    M = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(b[i])] for i in range(m)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = Fraction(1) / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(m):
            if r != row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b_ for a, b_ in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
    for r in range(row, m):
        if M[r][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = M[r][n]
    return x


def primitive_vector(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector (same ray)."""
    from math import lcm

    fracs = [Fraction(x) for x in v]
    denom = lcm(*[f.denominator for f in fracs]) if fracs else 1
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in ints)


def dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))
