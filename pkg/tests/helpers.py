from lieeig.fields import QQ
from lieeig.linalg import Matrix, Subspace


def M(rows, F=QQ):
    return Matrix(F, [[F(x) for x in r] for r in rows])


def unit(n, i, j, F=QQ):
    return Matrix.unit(F, n, i, j)


def ident(n, F=QQ):
    return Matrix.identity(F, n)


def span(vectors, n, F=QQ):
    return Subspace.span(F, n, [[F(x) for x in v] for v in vectors])


def e(n, i, F=QQ):
    return tuple(F.one if j == i else F.zero for j in range(n))


ROT = [[0, -1], [1, 0]]

# e(2) with [X, U] = -V and [X, V] = U
E2_X = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
E2_U = [[0, 0, 1], [0, 0, 0], [0, 0, 0]]
E2_V = [[0, 0, 0], [0, 0, 1], [0, 0, 0]]


def diag_rot_5():
    return M([[0, -1, 0], [1, 0, 0], [0, 0, 5]])
