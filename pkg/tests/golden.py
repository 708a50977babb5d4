"""Reference parity blocks for the (6,3,4) and (4,2,3) codes, written out row by row.

Each row is a list of terms ``(col, kind, u)``: kind "d" is ``lam[i,u]**t``
and kind "x" is ``lam[i,0]**t - lam[i,u]**t``.
"""

# (6,3,4) over GF(13), c = 2
EX634_LAMBDA_EXP = [[0, 1], [4, 5], [8, 9], [2, 3], [6, 7], [10, 11]]

EX634_BLOCKS = {
    0: [[(0, "d", 0), (4, "x", 1)], [(1, "d", 0), (5, "x", 1)], [(2, "d", 0), (6, "x", 1)],
        [(3, "d", 0), (7, "x", 1)], [(4, "d", 1)], [(5, "d", 1)], [(6, "d", 1)], [(7, "d", 1)]],
    1: [[(0, "d", 0), (2, "x", 1)], [(1, "d", 0), (3, "x", 1)], [(2, "d", 1)], [(3, "d", 1)],
        [(4, "d", 0), (6, "x", 1)], [(5, "d", 0), (7, "x", 1)], [(6, "d", 1)], [(7, "d", 1)]],
    2: [[(0, "d", 0), (1, "x", 1)], [(1, "d", 1)], [(2, "d", 0), (3, "x", 1)], [(3, "d", 1)],
        [(4, "d", 0), (5, "x", 1)], [(5, "d", 1)], [(6, "d", 0), (7, "x", 1)], [(7, "d", 1)]],
    3: [[(0, "d", 0)], [(1, "d", 0)], [(2, "d", 0)], [(3, "d", 0)],
        [(4, "d", 1)], [(5, "d", 1)], [(6, "d", 1)], [(7, "d", 1)]],
    4: [[(0, "d", 0)], [(1, "d", 0)], [(2, "d", 1)], [(3, "d", 1)],
        [(4, "d", 0)], [(5, "d", 0)], [(6, "d", 1)], [(7, "d", 1)]],
    5: [[(0, "d", 0)], [(1, "d", 1)], [(2, "d", 0)], [(3, "d", 1)],
        [(4, "d", 0)], [(5, "d", 1)], [(6, "d", 0)], [(7, "d", 1)]],
}

# (4,2,3) base of the s=2 transform
EX423_LAMBDA_EXP = [[0, 1], [2, 3], [1, 0], [3, 2]]

EX423_BLOCKS = {
    0: [[(0, "d", 0), (2, "x", 1)], [(1, "d", 0), (3, "x", 1)], [(2, "d", 1)], [(3, "d", 1)]],
    1: [[(0, "d", 0), (1, "x", 1)], [(1, "d", 1)], [(2, "d", 0), (3, "x", 1)], [(3, "d", 1)]],
    2: [[(0, "d", 0)], [(1, "d", 0)], [(2, "d", 1)], [(3, "d", 1)]],
    3: [[(0, "d", 0)], [(1, "d", 1)], [(2, "d", 0)], [(3, "d", 1)]],
}


def render(F, lam_row, rows, t):
    """Dense block from a transcription, for one parity group t."""
    import numpy as np

    N = len(rows)
    M = np.zeros((N, N), dtype=np.int64)
    for a, terms in enumerate(rows):
        for col, kind, u in terms:
            if kind == "d":
                M[a, col] = F.pow(int(lam_row[u]), t)
            else:
                M[a, col] = F.sub(F.pow(int(lam_row[0]), t), F.pow(int(lam_row[u]), t))
    return M
