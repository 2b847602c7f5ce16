"""Small exact linear algebra over a coefficient field (lists of lists)."""

__all__ = ["rref", "rank", "nullspace", "solve_linear", "determinant", "minors",
           "smith_normal_form"]


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols, zero=0, one=1):
    """Basis of {v : rows * v = 0}."""
    M, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(piv):
            v[p] = -M[i][f]
        basis.append(v)
    return basis


def solve_linear(rows, rhs):
    """One solution of rows * v = rhs, or None if inconsistent."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    M, piv = rref(aug, n + 1)
    if n in piv:
        return None
    zero = rhs[0] * 0 if rhs else 0
    v = [zero] * n
    for i, p in enumerate(piv):
        v[p] = M[i][n]
    return v


def determinant(M):
    """Determinant by fraction-free cofactor expansion (small matrices only)."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else M[0][0] * 0


def minors(M, k):
    """All k x k minors of M (rows choose k, columns choose k)."""
    from itertools import combinations
    rows, cols = len(M), len(M[0]) if M else 0
    out = []
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            out.append(determinant([[M[r][c] for c in cs] for r in rs]))
    return out


def smith_normal_form(M):
    """Smith normal form of an integer matrix: (U, D, V) with U*M*V = D."""
    n, m = len(M), len(M[0])
    A = [list(r) for r in M]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(X, i, j):
        X[i], X[j] = X[j], X[i]

    def swap_cols(X, i, j):
        for r in X:
            r[i], r[j] = r[j], r[i]

    def add_row(X, src, dst, k):
        X[dst] = [a + k * b for a, b in zip(X[dst], X[src])]

    def add_col(X, src, dst, k):
        for r in X:
            r[dst] += k * r[src]

    for t in range(min(n, m)):
        while True:
            piv = None
            for i in range(t, n):
                for j in range(t, m):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return U, A, V
            i, j = piv
            swap_rows(A, t, i)
            swap_rows(U, t, i)
            swap_cols(A, t, j)
            swap_cols(V, t, j)
            done = True
            for i in range(t + 1, n):
                k = A[i][t] // A[t][t]
                if k:
                    add_row(A, t, i, -k)
                    add_row(U, t, i, -k)
                if A[i][t]:
                    done = False
            for j in range(t + 1, m):
                k = A[t][j] // A[t][t]
                if k:
                    add_col(A, t, j, -k)
                    add_col(V, t, j, -k)
                if A[t][j]:
                    done = False
            if done:
                bad = [(i, j) for i in range(t + 1, n) for j in range(t + 1, m) if A[i][j] % A[t][t]]
                if not bad:
                    break
                i, j = bad[0]
                add_row(A, i, t, 1)
                add_row(U, i, t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V
