"""Small exact integer linear algebra: Smith normal form and integer kernels."""

from fractions import Fraction


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M, ncols=None):
    """Smith normal form of an integer matrix.

    Returns ``(D, U, V)`` with ``U * M * V == D``, ``U`` and ``V`` unimodular and
    the nonzero diagonal entries of ``D`` positive with each dividing the next.
    ``ncols`` is needed when ``M`` has no rows.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    A = [list(map(int, row)) for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            rest = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def rank_of(D):
    return sum(1 for d in diagonal(D) if d)


def integer_kernel(M, ncols=None):
    """Z-basis (list of column vectors) of {v in Z^n : M v = 0}."""
    D, _, V = smith_normal_form(M, ncols)
    n = len(V)
    r = rank_of(D) if D else 0
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def solve_rational(M, b):
    """One rational solution of M x = b, or None. Gaussian elimination over Q."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(M, b)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(A[i][n] for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = A[i][n]
    return x


def rational_rank(M):
    m = len(M)
    if not m:
        return 0
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(r + 1, m):
            if A[i][c]:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    return r


def lattice_coordinates(basis, v):
    """Integer coordinates of ``v`` in the lattice spanned by ``basis`` (columns)."""
    if not basis:
        if any(v):
            raise ValueError("vector not in the zero lattice")
        return []
    M = [[b[i] for b in basis] for i in range(len(v))]
    x = solve_rational(M, v)
    if x is None or any(c.denominator != 1 for c in x):
        raise ValueError("vector not in lattice")
    return [int(c) for c in x]
