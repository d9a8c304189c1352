"""Dense linear algebra over the prime field F_p on lists of ints."""

from __future__ import annotations


def rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of ``rows`` mod ``p`` (zero rows dropped)."""
    m = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        prow = [x * inv % p for x in m[rank]]
        m[rank] = prow
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return m[:rank], pivots


def nullspace(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis of ``{x : mat @ x = 0}`` mod ``p``."""
    if not mat:
        return []
    ncols = len(mat[0])
    red, pivots = rref(mat, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis


def matvec(mat: list[list[int]], v: list[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in mat]


def charpoly(mat: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial ``det(xI - mat)`` mod ``p``, lowest degree first.

    Reduces to upper Hessenberg form by similarity, then runs the usual
    three-term recurrence over leading principal blocks.
    """
    n = len(mat)
    h = [[x % p for x in row] for row in mat]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(h[j + 1][j], -1, p)
        for k in range(j + 2, n):
            if h[k][j]:
                u = h[k][j] * inv % p
                h[k] = [(a - u * b) % p for a, b in zip(h[k], h[j + 1])]
                for row in h:
                    row[j + 1] = (row[j + 1] + u * row[k]) % p
    polys = [[1]]
    for m in range(n):
        # p_{m+1} = (x - h[m][m]) p_m - sum_i h[i][m] * prod_{k=i+1..m} h[k][k-1] * p_i
        nxt = [0] + polys[m]
        for i, c in enumerate(polys[m]):
            nxt[i] = (nxt[i] - h[m][m] * c) % p
        prod = 1
        for i in range(m - 1, -1, -1):
            prod = prod * h[i + 1][i] % p
            if not prod:
                break
            coef = h[i][m] * prod % p
            if coef:
                for t, c in enumerate(polys[i]):
                    nxt[t] = (nxt[t] - coef * c) % p
        polys.append(nxt)
    return polys[n]


def roots(poly: list[int], p: int) -> list[int]:
    """All roots in F_p by exhaustive evaluation (p is small here)."""
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out
