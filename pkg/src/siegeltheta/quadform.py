"""Integral quadratic forms: signature decomposition, cosets, lattice enumeration.

A form is a symmetric invertible integer matrix A.  decompose() produces the
normalized eigen-split A = A+ + A- with majorant M = A+ - A- (the matrix
absolute value of A) and a scaling matrix S with S^T A S = diag(I_r, -I_s).
When M is rational the split is upgraded to exact arithmetic, which is what
makes the symbolic zero-residual checks on the fixture forms possible.

coset_reps() enumerates A^-1 Z^(m x n) / Z^(m x n) column-wise from the Smith
normal form of A.  lattice_points() enumerates an ellipsoid q(v + c) <= R^2
around a real center by depth-first pruning on the Cholesky factorization of
the Gram matrix, in a deterministic order.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .errors import ResourceCapError
from .exactlinalg import det_bareiss, frac_matrix, identity_frac, mat_inverse, mat_mul, smith_normal_form

# ==== form basics ===========================================================


def as_form_array(A) -> np.ndarray:
    a = np.asarray(A)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("a quadratic form must be a square matrix")
    ai = np.rint(np.asarray(a, dtype=float)).astype(np.int64)
    if not np.array_equal(np.asarray(a, dtype=float), ai.astype(float)):
        raise ValueError("a quadratic form must have integer entries")
    if not np.array_equal(ai, ai.T):
        raise ValueError("a quadratic form must be symmetric")
    return ai


def form_det(A) -> int:
    return det_bareiss(as_form_array(A).tolist())


def is_even(A) -> bool:
    """True when every diagonal entry is even, so q(v) = v^T A v / 2 is integral."""
    a = as_form_array(A)
    return all(int(a[i, i]) % 2 == 0 for i in range(a.shape[0]))


def is_unimodular(A) -> bool:
    return abs(form_det(A)) == 1


class QuadForm:
    """A symmetric invertible integer matrix with cached invariants."""

    def __init__(self, A):
        self.A = as_form_array(A)
        self.m = self.A.shape[0]
        self.det = int(det_bareiss(self.A.tolist()))
        if self.det == 0:
            raise ValueError("form is degenerate")
        eigs = np.linalg.eigvalsh(self.A.astype(float))
        self.r = int(np.sum(eigs > 0))
        self.s = int(np.sum(eigs < 0))

    @property
    def is_even(self) -> bool:
        return is_even(self.A)

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1


# ==== eigen decomposition ===================================================


class QuadFormDecomposition:
    """Normalized split of an invertible symmetric integer form.

    Float fields always exist; the *_exact fields (Fraction matrices) exist
    exactly when the matrix absolute value of A is rational, and None
    otherwise.  proj_plus / proj_minus satisfy U = U+ + U- with
    tr(U+-^T A U+-) = tr(U^T A+- U).
    """

    def __init__(self, form, r, s, S, iota, aplus, aminus, M, exact=None):
        self.form = form
        self.r = r
        self.s = s
        self.S = S
        self.iota = iota
        self.aplus = aplus
        self.aminus = aminus
        self.M = M
        # exact: dict with keys aplus, aminus, M, Minv, proj_plus, proj_minus
        self.exact = exact

    @property
    def A(self):
        return self.form.A

    @property
    def m(self):
        return self.form.m

    def has_exact_split(self) -> bool:
        return self.exact is not None

    def proj_plus_matrix(self):
        return self.exact["proj_plus"] if self.exact else (np.linalg.inv(self.M) @ self.aplus).tolist()

    def proj_minus_matrix(self):
        if self.exact:
            return self.exact["proj_minus"]
        return (-(np.linalg.inv(self.M) @ self.aminus)).tolist()


def _rationalize_matrix(Mf: np.ndarray, max_den: int = 10**6):
    return [[Fraction(x).limit_denominator(max_den) for x in row] for row in Mf.tolist()]


def decompose(A) -> QuadFormDecomposition:
    """Eigen-normalized decomposition of a symmetric invertible integer form.

    Columns of S are eigenvectors scaled by abs(eigenvalue)^(-1/2), positive
    eigenvalues first, so S^T A S = diag(I_r, -I_s).  A+ (A-) restricts the
    form to the positive (negative) eigenspace; the majorant M = A+ - A- is
    positive definite and equals (S^-1)^T S^-1.
    """
    form = A if isinstance(A, QuadForm) else QuadForm(A)
    a = form.A.astype(float)
    eigvals, eigvecs = np.linalg.eigh(a)
    if np.any(np.abs(eigvals) < 1e-9):
        raise ValueError("form is numerically singular")
    order = np.argsort(-eigvals)  # positives first, descending
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]
    r, s = form.r, form.s
    S = eigvecs / np.sqrt(np.abs(eigvals))
    iota = np.diag(np.concatenate([np.ones(r), -np.ones(s)]).astype(int))
    Sinv = np.linalg.inv(S)
    aplus = eigvecs[:, :r] @ np.diag(eigvals[:r]) @ eigvecs[:, :r].T
    aminus = eigvecs[:, r:] @ np.diag(eigvals[r:]) @ eigvecs[:, r:].T
    M = Sinv.T @ Sinv

    exact = _try_exact_split(form)
    return QuadFormDecomposition(form, r, s, S, iota, aplus, aminus, M, exact)


def _try_exact_split(form: QuadForm):
    """Exact A = A+ + A- split whenever the matrix absolute value is rational.

    The candidate for M = (A^2)^(1/2) is obtained by rationalizing the float
    result and then verified exactly: M^2 == A^2, M symmetric, M positive
    definite.  All fixture forms used by the exact-mode checks pass this.
    """
    a = form.A.astype(float)
    eigvals, eigvecs = np.linalg.eigh(a)
    Mf = eigvecs @ np.diag(np.abs(eigvals)) @ eigvecs.T
    Mf = (Mf + Mf.T) / 2
    Mrat = _rationalize_matrix(Mf)
    m = form.m
    for i in range(m):
        for j in range(i):
            if Mrat[i][j] != Mrat[j][i]:
                return None
    A2 = (form.A @ form.A).tolist()
    M2 = mat_mul(Mrat, Mrat)
    for i in range(m):
        for j in range(m):
            if M2[i][j] != A2[i][j]:
                return None
    # positive definiteness: exact leading principal minors
    for k in range(1, m + 1):
        sub = [[Mrat[i][j] for j in range(k)] for i in range(k)]
        if _frac_det(sub) <= 0:
            return None
    arat = frac_matrix(form.A.tolist())
    aplus = [[(arat[i][j] + Mrat[i][j]) / 2 for j in range(m)] for i in range(m)]
    aminus = [[(arat[i][j] - Mrat[i][j]) / 2 for j in range(m)] for i in range(m)]
    minv = mat_inverse(Mrat)
    proj_plus = mat_mul(minv, aplus)
    proj_minus = [[-x for x in row] for row in mat_mul(minv, aminus)]
    # projector sanity, exact
    ident = identity_frac(m)
    psum = [[proj_plus[i][j] + proj_minus[i][j] for j in range(m)] for i in range(m)]
    if psum != ident:
        return None
    return {
        "M": Mrat,
        "Minv": minv,
        "aplus": aplus,
        "aminus": aminus,
        "proj_plus": proj_plus,
        "proj_minus": proj_minus,
    }


def _frac_det(mat) -> Fraction:
    m = [row[:] for row in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def project(dec: QuadFormDecomposition, U):
    """Split U into (U+, U-) with U = U+ + U-, per the decomposition's eigenspaces."""
    Ua = np.asarray(U, dtype=float)
    pp = np.array(dec.proj_plus_matrix(), dtype=float)
    pm = np.array(dec.proj_minus_matrix(), dtype=float)
    return pp @ Ua, pm @ Ua


# ==== cosets ================================================================


class CosetRep:
    """One representative J of A^-1 Z^(m x n) / Z^(m x n), entries in [0, 1)."""

    __slots__ = ("J",)

    def __init__(self, J):
        self.J = tuple(tuple(Fraction(x) for x in row) for row in J)

    @property
    def m(self):
        return len(self.J)

    @property
    def n(self):
        return len(self.J[0])

    def to_floats(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.J], dtype=float)

    def __eq__(self, other):
        return isinstance(other, CosetRep) and self.J == other.J

    def __hash__(self):
        return hash(self.J)

    def __repr__(self):
        return "CosetRep(%s)" % (self.J,)


def coset_column_reps(A):
    """Representatives of A^-1 Z^m / Z^m as Fraction column vectors in [0,1)."""
    a = as_form_array(A)
    m = a.shape[0]
    d, u, v = smith_normal_form(a.tolist())
    if any(x == 0 for x in d):
        raise ValueError("form is degenerate")
    cols = []
    for ks in itertools.product(*(range(di) for di in d)):
        w = [Fraction(k, di) for k, di in zip(ks, d)]
        col = [sum(Fraction(v[i][j]) * w[j] for j in range(m)) % 1 for i in range(m)]
        cols.append(tuple(col))
    return cols


def coset_reps(A, n: int, cap: int = 100_000):
    """All m x n matrices J with columns in A^-1 Z^m / Z^m, abs(det A)^n of them."""
    a = as_form_array(A)
    count = abs(form_det(a)) ** n
    if count > cap:
        raise ResourceCapError("coset count %d exceeds the cap %d" % (count, cap))
    cols = coset_column_reps(a)
    reps = []
    for combo in itertools.product(cols, repeat=n):
        J = [[combo[j][i] for j in range(n)] for i in range(a.shape[0])]
        reps.append(CosetRep(J))
    return reps


# ==== lattice enumeration ===================================================


def _cholesky_data(G: np.ndarray):
    """Pivots d_i and mixing coefficients mu from G = L L^T.

    q(x) = sum_i d_i (x_i + sum_{j>i} mu[i][j] x_j)^2 with d_i = L[i,i]^2 and
    mu[i][j] = L[j,i] / L[i,i].
    """
    try:
        L = np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise ValueError("Gram matrix is not positive definite") from exc
    d = np.diag(L) ** 2
    mu = (L / np.diag(L)).T  # mu[i, j] = L[j, i] / L[i, i], used for j > i
    return d, mu


def lattice_blocks(G, center, R2: float, point_cap=None, block_size: int = 8192):
    """Yield (k, N) int64 arrays of all v in Z^N with q(v + center) <= R2.

    Depth-first search from the last coordinate down to the first, with the
    innermost level emitted in bulk.  Candidate rows pass a final filter
    through the quadratic form itself with a small slack above R2, so
    boundary points are never lost to rounding in the per-level interval
    bounds; a handful of just-outside points may be admitted (harmless for
    tail-certified sums; lattice_points refilters exactly).  Order is
    deterministic: ascending in each coordinate, last coordinate outermost.
    """
    G = np.asarray(G, dtype=float)
    c = np.asarray(center, dtype=float).reshape(-1)
    N = G.shape[0]
    if G.shape != (N, N) or c.shape != (N,):
        raise ValueError("Gram/center shape mismatch")
    if R2 < 0:
        return
    d, mu = _cholesky_data(G)
    margin = 1e-9

    buffer = []
    buffered = 0
    count = 0

    def q_values(rows: np.ndarray) -> np.ndarray:
        x = rows + c
        return np.einsum("ij,jk,ik->i", x, G, x)

    def flush():
        nonlocal buffer, buffered, count
        if not buffer:
            return None
        rows = np.concatenate(buffer, axis=0)
        buffer = []
        buffered = 0
        keep = rows[q_values(rows) <= R2 + margin * (1.0 + abs(R2))]
        if keep.shape[0]:
            count += keep.shape[0]
            if point_cap is not None and count > point_cap:
                raise ResourceCapError(
                    "lattice enumeration exceeded the %d point cap" % point_cap
                )
            return keep
        return None

    # shifts[i] accumulates sum_{j>i} mu[i][j] (v_j + c_j) for the current stack
    shifts = np.zeros(N)
    stack_v = np.zeros(N, dtype=np.int64)

    def descend(level: int, used: float):
        nonlocal buffered
        rem = R2 - used + margin * (1.0 + abs(R2))
        if rem < 0:
            return
        half = math.sqrt(rem / d[level]) if rem > 0 else 0.0
        mid = c[level] + shifts[level]
        lo = math.ceil(-mid - half - 1e-12)
        hi = math.floor(-mid + half + 1e-12)
        if lo > hi:
            return
        if level == 0:
            vals = np.arange(lo, hi + 1, dtype=np.int64)
            rows = np.tile(stack_v, (vals.shape[0], 1))
            rows[:, 0] = vals
            buffer.append(rows)
            buffered += rows.shape[0]
            if buffered >= block_size:
                out = flush()
                if out is not None:
                    yield out
            return
        for v in range(lo, hi + 1):
            x_lev = v + c[level]  # raw coordinate entering the shallower shifts
            y = x_lev + shifts[level]
            stack_v[level] = v
            add = d[level] * y * y
            prev = shifts[:level].copy()
            shifts[:level] += mu[:level, level] * x_lev
            yield from descend(level - 1, used + add)
            shifts[:level] = prev
        stack_v[level] = 0

    yield from descend(N - 1, 0.0)
    out = flush()
    if out is not None:
        yield out


def lattice_points(G, center, R2, point_cap=None):
    """Stream of integer vectors v with (v + center)^T G (v + center) <= R2.

    The block enumeration prunes in floating point with a little slack; each
    candidate is refiltered here in exact rational arithmetic, so the emitted
    set is exact whenever G, center, and R2 are exactly representable
    (integers, Fractions, or dyadic floats).  Boundary ties q = R2 are kept.
    """
    Gmat = np.asarray(G)
    N = Gmat.shape[0]
    cvals = center.tolist() if isinstance(center, np.ndarray) else list(center)
    Gf = [[Fraction(x) for x in row] for row in Gmat.tolist()]
    cf = [Fraction(x) for x in cvals]
    R2f = Fraction(R2)
    for block in lattice_blocks(Gmat, [float(x) for x in cf], float(R2f), point_cap=point_cap):
        for row in block:
            x = [cf[i] + int(row[i]) for i in range(N)]
            q = sum(Gf[i][j] * x[i] * x[j] for i in range(N) for j in range(N) if x[i] and x[j])
            if q <= R2f:
                yield row.copy()


# ==== named fixtures ========================================================

# Gram matrix of the E8 root lattice in a simple-root basis (even, unimodular,
# positive definite; chain 1-3-4-5-6-7-8 with node 2 attached to node 4).
_E8 = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
]

_H2 = [[0, 1], [1, 0]]

FIXTURES = ("e8", "h2", "h2+e8", "diag:2,-2")


def named_form(name: str) -> np.ndarray:
    """Resolve a fixture name: e8, h2, h2+e8, or diag:a,b,... patterns."""
    key = name.strip().lower()
    if key == "e8":
        return np.array(_E8, dtype=np.int64)
    if key == "h2":
        return np.array(_H2, dtype=np.int64)
    if key == "h2+e8":
        out = np.zeros((10, 10), dtype=np.int64)
        out[:2, :2] = _H2
        out[2:, 2:] = _E8
        return out
    if key.startswith("diag:"):
        try:
            entries = [int(x) for x in key[5:].split(",")]
        except ValueError as exc:
            raise ValueError("bad diagonal fixture %r" % name) from exc
        if not entries or any(x == 0 for x in entries):
            raise ValueError("diagonal fixture needs nonzero entries")
        return np.diag(np.array(entries, dtype=np.int64))
    raise ValueError("unknown form fixture %r (known: %s, diag:a,b,...)" % (name, ", ".join(FIXTURES[:3])))
