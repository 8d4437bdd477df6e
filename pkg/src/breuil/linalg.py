"""Dense matrices over S_m, stored as tuples of row tuples of SElem."""
from __future__ import annotations

from itertools import permutations

from .errors import NotAUnit
from .padic import PadicConfig
from .ring import SElem, s_inverse, s_one, s_zero

ADJUGATE_MAX_RANK = 4


def as_matrix(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def shape(A) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def mat_zero(cfg: PadicConfig, r: int, c: int, prec: int | None = None) -> tuple:
    z = s_zero(cfg, prec)
    return tuple(tuple(z for _ in range(c)) for _ in range(r))


def mat_identity(cfg: PadicConfig, d: int, prec: int | None = None) -> tuple:
    return mat_scalar(cfg, d, s_one(cfg, prec))


def mat_scalar(cfg: PadicConfig, d: int, s: SElem) -> tuple:
    z = s_zero(cfg, s.prec)
    return tuple(tuple(s if i == j else z for j in range(d)) for i in range(d))


def mat_prec(A) -> int:
    return min(x.prec for row in A for x in row)


def mat_reduce(A, prec: int) -> tuple:
    return tuple(tuple(x.reduce(min(prec, x.prec)) for x in row) for row in A)


def mat_transpose(A) -> tuple:
    return tuple(zip(*A)) if A else ()


def mat_add(A, B) -> tuple:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A, B) -> tuple:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_neg(A) -> tuple:
    return tuple(tuple(-a for a in r) for r in A)


def mat_scale(A, s) -> tuple:
    return tuple(tuple(s * a for a in r) for r in A)


def dot(u, v):
    it = iter(zip(u, v))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def mat_mul(A, B) -> tuple:
    Bt = mat_transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def mat_vec(A, v) -> tuple:
    return tuple(dot(row, v) for row in A)


def vec_mat(v, A) -> tuple:
    return tuple(dot(v, col) for col in mat_transpose(A))


def column(A, j: int) -> tuple:
    return tuple(row[j] for row in A)


def from_columns(cols) -> tuple:
    return mat_transpose(tuple(tuple(c) for c in cols))


def block(A, B, C, D) -> tuple:
    """The block matrix [[A, B], [C, D]]."""
    top = tuple(tuple(ra) + tuple(rb) for ra, rb in zip(A, B))
    bottom = tuple(tuple(rc) + tuple(rd) for rc, rd in zip(C, D))
    return top + bottom


def submatrix(A, rows, cols) -> tuple:
    return tuple(tuple(A[i][j] for j in cols) for i in rows)


def permute(A, row_perm, col_perm) -> tuple:
    return submatrix(A, row_perm, col_perm)


def mat_equal(A, B) -> bool:
    return shape(A) == shape(B) and all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def mat_det(A) -> SElem:
    d = len(A)
    if d == 0:
        raise ValueError("empty matrix")
    if d <= ADJUGATE_MAX_RANK:
        total = None
        for perm in permutations(range(d)):
            term = A[0][perm[0]]
            for i in range(1, d):
                term = term * A[i][perm[i]]
            term = term if _perm_sign(perm) > 0 else -term
            total = term if total is None else total + term
        return total
    det, _ = _eliminate(A, want_inverse=False)
    if det is None:
        # no unit pivot: expand along the first row instead
        total = None
        for j in range(d):
            term = A[0][j] * mat_det(_minor(A, 0, j))
            term = term if j % 2 == 0 else -term
            total = term if total is None else total + term
        return total
    return det


def is_invertible(A) -> bool:
    return mat_det(A).is_unit()


def _minor(A, i, j):
    return tuple(tuple(x for c, x in enumerate(row) if c != j) for r, row in enumerate(A) if r != i)


def mat_adjugate(A) -> tuple:
    d = len(A)
    if d == 1:
        return ((s_one(A[0][0].cfg, A[0][0].prec),),)
    cof = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            m = mat_det(_minor(A, i, j))
            cof[i][j] = m if (i + j) % 2 == 0 else -m
    return mat_transpose(cof)


def mat_inverse(A) -> tuple:
    """Inverse over the local ring S_m: adjugate for small ranks, unit-pivot
    Gaussian elimination otherwise."""
    d = len(A)
    if d <= ADJUGATE_MAX_RANK:
        det = mat_det(A)
        if not det.is_unit():
            raise NotAUnit("determinant is not a unit")
        return mat_scale(mat_adjugate(A), s_inverse(det))
    return _eliminate(A, want_inverse=True)[1]


def _eliminate(A, want_inverse: bool):
    d = len(A)
    cfg = A[0][0].cfg
    prec = mat_prec(A)
    M = [list(r) for r in mat_reduce(A, prec)]
    inv = [list(r) for r in mat_identity(cfg, d, prec)]
    det = s_one(cfg, prec)
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col].is_unit()), None)
        if piv is None:
            if want_inverse:
                raise NotAUnit("matrix is not invertible over S")
            return None, None
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            det = -det
        pinv = s_inverse(M[col][col])
        det = det * M[col][col]
        M[col] = [x * pinv for x in M[col]]
        inv[col] = [x * pinv for x in inv[col]]
        for r in range(d):
            if r != col and not M[r][col].is_zero():
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
                inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
    return det, as_matrix(inv)

