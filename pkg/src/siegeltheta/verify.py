"""Executable checks for the operator identities and transformation laws.

Every check returns a CheckReport rather than raising: the algebraic
identities (eigenvalue equation, commutators) are tested in exact arithmetic
and must come out identically zero, while the analytic laws (translation,
inversion, Fourier, Poisson) compare certified truncated evaluations or
quadratures against closed forms within an explicit tolerance.

Conventions, fixed throughout:
  * e(w) = exp(2 pi i w);
  * the Fourier transform is taken against the form, with a positive pairing:
    fhat(V) = int f(U) e(tr(V^T A U)) dU, so that Poisson summation reads
    sum_{U in Z^{m x n}} f(U) = sum_{V in A^{-1} Z^{m x n}} fhat(V);
  * fractional powers of determinants go through the principal branch of the
    eigenvalue logarithms (see siegel.det_power), and half-integral powers of
    i and -1 are written as exp of the exponent times the principal logarithm.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .exactlinalg import mat_inverse, mat_mul
from .polyalg import (
    MatPoly,
    euler_entry,
    eval_batch,
    exp_trace_laplace,
    exp_trace_laplace_weighted,
    laplace_entry,
    trace_laplace,
    vigneras_residual,
)
from .quadform import coset_reps, decompose, named_form
from .scalars import PiScalar
from .siegel import SiegelPoint, det_power, random_siegel_point
from .theta import (
    ThetaSpec,
    borcherds_poly,
    build_coeff,
    certified_lattice_sum,
    point_cap_from_env,
    theta_eval,
    theta_eval_borcherds,
    theta_spec,
)


class CheckReport:
    """Outcome of one identity check."""

    __slots__ = ("name", "passed", "residual", "tolerance", "lhs", "rhs", "metadata")

    def __init__(self, name, residual, tolerance, lhs=None, rhs=None, metadata=None):
        self.name = name
        self.residual = float(residual)
        self.tolerance = float(tolerance)
        self.passed = self.residual <= self.tolerance
        self.lhs = lhs
        self.rhs = rhs
        self.metadata = metadata or {}

    def as_dict(self) -> dict:
        def enc(v):
            if v is None:
                return None
            v = complex(v)
            return {"re": v.real, "im": v.imag}

        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "metadata": self.metadata,
        }

    def __repr__(self):
        flag = "ok" if self.passed else "FAIL"
        return "CheckReport(%s: %s, residual=%.3e <= %.1e)" % (
            self.name, flag, self.residual, self.tolerance)


# ==== exact rational phase bookkeeping ======================================


def _frac_rows(M):
    return [[Fraction(x) for x in row] for row in M]


def _transpose(M):
    return [list(col) for col in zip(*M)]


def _trace(M) -> Fraction:
    return sum((M[i][i] for i in range(len(M))), Fraction(0))


def e_of_fraction(x) -> complex:
    """e(x) for rational x, reduced mod 1 before any float is formed."""
    x = Fraction(x)
    x -= math.floor(x)
    return cmath.exp(2j * math.pi * float(x))


def _diag_part(M):
    size = len(M)
    return [[M[i][i] if i == j else Fraction(0) for j in range(size)] for i in range(size)]


def _ones(rows, cols):
    return [[Fraction(1)] * cols for _ in range(rows)]


def translation_data(spec: ThetaSpec, S):
    """Exact phase argument and shifted characteristic for Z -> Z + S."""
    Sf = [[Fraction(int(x)) for x in row] for row in np.asarray(S).tolist()]
    m, n = spec.m, spec.n
    A = _frac_rows(spec.A.tolist())
    H = [list(row) for row in spec.H]
    K = [list(row) for row in spec.K]
    phase = -_trace(mat_mul(mat_mul(mat_mul(_transpose(H), A), H), Sf)) / 2
    S0 = _diag_part(Sf)
    A0 = _diag_part(A)
    phase -= _trace(mat_mul(mat_mul(mat_mul(S0, _ones(n, m)), A0), H)) / 2
    shift = mat_mul(mat_inverse(A), mat_mul(A0, mat_mul(_ones(m, n), S0)))
    HS = mat_mul(H, Sf)
    Ktil = [[K[a][j] + HS[a][j] + shift[a][j] / 2 for j in range(n)] for a in range(m)]
    return phase, Ktil


def check_translation(spec: ThetaSpec, Z: SiegelPoint, S, eps: float = 1e-12,
                      tol: float = 1e-10, point_cap=None) -> CheckReport:
    """theta(Z + S) against the exact phase times theta with shifted K."""
    Sarr = np.asarray(S, dtype=float)
    if Sarr.shape != (spec.n, spec.n) or not np.array_equal(Sarr, Sarr.T) \
            or not np.array_equal(Sarr, np.round(Sarr)):
        raise ValueError("S must be an integer symmetric matrix of the point's size")
    Sarr = Sarr.astype(np.int64)
    phase, Ktil = translation_data(spec, Sarr)
    lhs = theta_eval(spec, Z.translate(Sarr), eps, point_cap)
    rhs = theta_eval(spec.with_characteristics(K=Ktil), Z, eps, point_cap)
    rhs_val = e_of_fraction(phase) * rhs.value
    residual = abs(lhs.value - rhs_val)
    return CheckReport(
        "translation", residual, tol, lhs.value, rhs_val,
        {"eps": eps, "phase": str(phase), "terms": lhs.terms + rhs.terms,
         "tail_budget": lhs.tail_bound + rhs.tail_bound})


def inversion_prefactor(spec: ThetaSpec, Z: SiegelPoint) -> complex:
    m, n = spec.m, spec.n
    dec = spec.dec
    alpha, beta = spec.coeff.alpha, spec.coeff.beta
    power = (dec.r - dec.s) / 2.0 + alpha - beta
    pref = cmath.exp(-1j * math.pi * m * n / 4.0)
    pref *= cmath.exp(1j * math.pi * ((dec.s / 2.0 + beta) * n + beta * dec.s))
    pref *= abs(float(dec.form.det)) ** (-n / 2.0)
    pref *= det_power(Z.Z, power)
    A = _frac_rows(spec.A.tolist())
    hak = _trace(mat_mul(mat_mul(_transpose([list(r) for r in spec.H]), A),
                         [list(r) for r in spec.K]))
    return pref * e_of_fraction(hak)


def check_inversion(spec: ThetaSpec, Z: SiegelPoint, eps: float = 1e-10,
                    tol: float = 1e-8, point_cap=None, coset_cap: int = 100_000) -> CheckReport:
    """theta(-Z^-1) against the coset sum with the branch-locked prefactor."""
    lhs = theta_eval(spec, Z.inverse_point(), eps, point_cap)
    reps = coset_reps(spec.A, spec.n, cap=coset_cap)
    acc_re = []
    acc_im = []
    acc_gross = []
    terms = lhs.terms
    tails = lhs.tail_bound
    negH = [[-x for x in row] for row in spec.H]
    for rep in reps:
        HJ = [[rep.J[a][j] + spec.K[a][j] for j in range(spec.n)] for a in range(spec.m)]
        part = theta_eval(spec.with_characteristics(H=HJ, K=negH), Z, eps, point_cap)
        acc_re.append(part.value.real)
        acc_im.append(part.value.imag)
        acc_gross.append(part.gross)
        terms += part.terms
        tails += part.tail_bound
    pref = inversion_prefactor(spec, Z)
    rhs_val = pref * complex(math.fsum(acc_re), math.fsum(acc_im))
    scale = max(lhs.gross, abs(pref) * math.fsum(acc_gross))
    residual = abs(lhs.value - rhs_val) / scale if scale > 0 else 0.0
    return CheckReport(
        "inversion", residual, tol, lhs.value, rhs_val,
        {"eps": eps, "cosets": len(reps), "terms": terms, "tail_budget": tails,
         "absolute_residual": abs(lhs.value - rhs_val)})


def check_borcherds_form(spec: ThetaSpec, Z: SiegelPoint, eps: float = 1e-13,
                         tol: float = 1e-12, point_cap=None) -> CheckReport:
    """det(Y)^(s/2+beta) times the unslashed form against the definition."""
    lhs = theta_eval(spec, Z, eps, point_cap)
    rhs = theta_eval_borcherds(spec, Z, eps, point_cap)
    expo = spec.dec.s / 2.0 + spec.coeff.beta
    dety = float(np.linalg.det(Z.Y)) ** expo
    rhs_val = dety * rhs.value
    scale = max(lhs.gross, dety * rhs.gross)
    residual = abs(lhs.value - rhs_val) / scale if scale > 0 else 0.0
    return CheckReport(
        "borcherds_form", residual, tol, lhs.value, rhs_val,
        {"eps": eps, "terms": lhs.terms + rhs.terms})


# ==== exact operator checks =================================================


def check_vigneras(f, A=None, lam=None, tol: float = 0.0) -> CheckReport:
    """Residual of the eigenvalue equation; exact zero unless told otherwise."""
    if isinstance(f, ThetaSpec):
        spec = f
        f = spec.coeff.f
        A = [[int(x) for x in row] for row in spec.A.tolist()]
        lam = spec.coeff.lam
    res = vigneras_residual(f, A, lam)
    norm = 0.0 if res.is_zero() else res.norm()
    return CheckReport("vigneras", norm, tol, metadata={"lam": str(lam)})


def _random_matpoly(m, n, degree, rng, mixed: bool = False) -> MatPoly:
    """Four random monomials, of total degree exactly degree (or up to it)."""
    p = MatPoly.zero(m, n)
    for _ in range(4):
        mono = MatPoly.one(m, n)
        steps = int(rng.integers(degree + 1)) if mixed else degree
        for _ in range(steps):
            mono = mono * MatPoly.variable(m, n, int(rng.integers(m)), int(rng.integers(n)))
        p = p + mono * int(rng.integers(1, 5))
    return p


def _random_sym_invertible(m, rng):
    while True:
        B = rng.integers(-3, 4, size=(m, m))
        A = B + B.T
        if abs(np.linalg.det(A.astype(float))) > 0.5:
            return [[int(x) for x in row] for row in A.tolist()]


def check_commutator(m: int = 2, n: int = 2, degree: int = 4, kmax: int = 2,
                     n_forms: int = 3, polys_per_form: int = 1, seed: int = 0) -> CheckReport:
    """[E_ij, (tr Delta_A)^k] = -2k (Delta_A)_ij (tr Delta_A)^(k-1), exactly.

    Random inhomogeneous polynomials of total degree up to degree, all
    k <= kmax, all (i, j) entries, over n_forms random invertible symmetric
    integer forms.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    checked = 0
    for _ in range(n_forms):
        A = _random_sym_invertible(m, rng)
        for _ in range(polys_per_form):
            f = _random_matpoly(m, n, degree, rng, mixed=True)
            flows = [f]
            for _ in range(kmax):
                flows.append(trace_laplace(flows[-1], A))
            for k in range(1, kmax + 1):
                minus2k = PiScalar.from_parts(Fraction(-2 * k), 0, 0)
                for i in range(n):
                    for j in range(n):
                        ef = euler_entry(f, i, j)
                        for _ in range(k):
                            ef = trace_laplace(ef, A)
                        comm = euler_entry(flows[k], i, j) - ef
                        want = laplace_entry(flows[k - 1], A, i, j) * minus2k
                        diff = comm - want
                        checked += 1
                        if not diff.is_zero():
                            worst = max(worst, diff.coeff_norm())
    return CheckReport("commutator", worst, 0.0,
                       metadata={"m": m, "n": n, "degree": degree, "kmax": kmax,
                                 "forms": n_forms, "identities": checked})


# ==== quadrature against closed forms =======================================


def _tensor_quad(fn, dim: int, L: float, N: int) -> complex:
    x, w = np.polynomial.legendre.leggauss(N)
    x = L * x
    w = L * w
    if dim == 1:
        return complex(np.sum(w * fn(x.reshape(-1, 1))))
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    pts = np.stack([X1.ravel(), X2.ravel()], axis=1)
    vals = fn(pts).reshape(N, N)
    return complex(np.einsum("i,j,ij->", w, w, vals))


def _refined_quad(fn, dim: int, L: float, quad_eps: float, start: int = 24):
    N = start
    prev = _tensor_quad(fn, dim, L, N)
    while N < 512:
        N *= 2
        cur = _tensor_quad(fn, dim, L, N)
        if abs(cur - prev) < quad_eps:
            return cur, N, abs(cur - prev)
        prev = cur
    return prev, N, float("nan")


def _gaussian_box(Cp: float, deg: int, lam: float, dim: int, eps: float) -> float:
    """Half-width L with the majorant integral outside the box below eps.

    The integrand is dominated by Cp max(1, |u|)^deg exp(-pi lam |u|^2); half
    of the decay absorbs the polynomial growth, the other half is integrated.
    """
    b = math.pi * lam / 2.0
    K = max(1.0, (deg / (2.0 * b * math.e)) ** (deg / 2.0)) if deg > 0 else 1.0
    one_dim = math.sqrt(2.0 / lam)
    L = 2.0
    while L < 60.0:
        tail = dim * Cp * K * one_dim ** dim * math.erfc(math.sqrt(b) * L)
        if tail < eps:
            return L
        L += 1.0
    return L


def check_gauss_transform(p: MatPoly, V, tol: float = 1e-8,
                          quad_eps: float = 1e-10) -> CheckReport:
    """int p(U+V) exp(-pi tr(U^T U)) dU against the heat-flowed value at V."""
    m, n = p.m, p.n
    dim = m * n
    if dim > 2:
        raise ValueError("quadrature checks are limited to two real dimensions")
    Vf = np.asarray(V, dtype=float).reshape(m, n)
    eye = [[int(i == j) for j in range(m)] for i in range(m)]
    closed = exp_trace_laplace(p, eye, PiScalar.from_parts(Fraction(1, 4), 0, -1)).eval(Vf)
    shift = Vf.T.reshape(-1)

    def fn(pts):
        U = (pts + shift).reshape(-1, n, m).transpose(0, 2, 1)
        vals = eval_batch(p, U)
        expo = -math.pi * np.sum(pts * pts, axis=1)
        return vals * np.exp(expo)

    Cp = p.coeff_norm() * (1.0 + float(np.linalg.norm(Vf))) ** p.degree()
    L = _gaussian_box(Cp, p.degree(), 1.0, dim, quad_eps / 10.0)
    got, nodes, drift = _refined_quad(fn, dim, L, quad_eps)
    residual = abs(got - closed)
    return CheckReport("gauss_transform", residual, tol, got, closed,
                       {"box": L, "nodes": nodes, "drift": drift})


def _fz_closure(spec: ThetaSpec, Z: SiegelPoint):
    """f_Z as a numeric batch closure U -> f_Z(U) plus its polynomial factor.

    f_Z(U) = p_Z(U) e(tr(U^T A U Z)/2), with p_Z the Y^(-1)-weighted heat
    flow of the source polynomial and, for an indefinite form, the split
    Gaussian exp(2 pi tr(U^T A- U Y)) included.  The absolute value is
    bounded by |p_Z(U)| exp(-pi tr(U^T M U Y)).
    """
    Y = Z.Y
    pB = borcherds_poly(spec, Y)
    Af = spec.A.astype(float)
    aminus = spec.dec.aminus
    Zmat = Z.Z
    indefinite = spec.dec.s > 0

    def fn(U):
        vals = eval_batch(pB, U)
        Q = np.matmul(np.transpose(U, (0, 2, 1)), np.matmul(Af, U))
        tau = 0.5 * np.einsum("xij,ji->x", Q, Zmat)
        out = vals * np.exp(2j * math.pi * tau)
        if indefinite:
            gq = np.einsum("xaj,ab,xbk,kj->x", U, aminus, U, Y)
            out = out * np.exp(2.0 * math.pi * gq)
        return out

    return fn, pB


def fourier_closed_form(spec: ThetaSpec, Z: SiegelPoint, V, form: str = "eigen") -> complex:
    """The closed form of the transform of f_Z, evaluated at V."""
    m, n = spec.m, spec.n
    dec = spec.dec
    V = np.asarray(V, dtype=float).reshape(m, n)
    Zmat = Z.Z
    Zinv = np.linalg.inv(Zmat)
    deta = float(dec.form.det)
    if form == "plain":
        if dec.s != 0:
            raise ValueError("the plain closed form needs a positive definite A")
        p = spec.coeff.f
        heat = exp_trace_laplace_weighted(
            p, [[int(x) for x in row] for row in spec.A.tolist()],
            [[PiScalar.from_number(complex(x)) for x in row] for row in Zinv.tolist()],
            PiScalar.from_parts(0, Fraction(1, 4), -1))
        quad = -0.5 * complex(np.trace(V.T @ spec.A.astype(float) @ V @ Zinv))
        return (deta ** (-n / 2.0) * det_power(-1j * Zmat, -m / 2.0)
                * cmath.exp(2j * math.pi * quad) * heat.eval(-V @ Zinv))
    if form != "eigen":
        raise ValueError("form must be 'plain' or 'eigen'")
    W = SiegelPoint(-Zinv)
    fz, _ = _fz_closure(spec, W)
    fval = complex(fz(V.reshape(1, m, n))[0])
    alpha, beta = spec.coeff.alpha, spec.coeff.beta
    pref = cmath.exp(-1j * math.pi * m * n / 4.0)
    if dec.s == 0:
        pref *= deta ** (-n / 2.0) * det_power(W.Z, m / 2.0 + alpha)
    else:
        pref *= cmath.exp(1j * math.pi * beta * dec.s)
        pref *= abs(deta) ** (-n / 2.0)
        pref *= det_power(W.Z, dec.r / 2.0 + alpha)
        pref *= det_power(np.conj(Zmat), -(dec.s / 2.0 + beta))
    return pref * fval


def check_fourier(spec: ThetaSpec, Z: SiegelPoint, V, form: str = "eigen",
                  tol: float = 1e-6, quad_eps: float = 1e-8) -> CheckReport:
    """Quadrature of the transform integral against its closed form."""
    m, n = spec.m, spec.n
    dim = m * n
    if dim > 2:
        raise ValueError("quadrature checks are limited to two real dimensions")
    V = np.asarray(V, dtype=float).reshape(m, n)
    Af = spec.A.astype(float)
    AV = Af @ V

    if form == "plain":
        if spec.dec.s != 0:
            raise ValueError("the plain transform needs a positive definite A")
        poly = spec.coeff.f
        Zmat = Z.Z

        def base(U):
            vals = eval_batch(poly, U)
            Q = np.matmul(np.transpose(U, (0, 2, 1)), np.matmul(Af, U))
            tau = 0.5 * np.einsum("xij,ji->x", Q, Zmat)
            return vals * np.exp(2j * math.pi * tau)

        bound_poly = poly
    else:
        base, bound_poly = _fz_closure(spec, Z)

    def fn(pts):
        U = pts.reshape(-1, n, m).transpose(0, 2, 1)
        pair = np.einsum("aj,xaj->x", AV, U)
        return base(U) * np.exp(2j * math.pi * pair)

    lam = float(np.min(np.linalg.eigvalsh(spec.dec.M)) * np.min(np.linalg.eigvalsh(Z.Y)))
    L = _gaussian_box(bound_poly.coeff_norm(), bound_poly.degree(), lam, dim, quad_eps / 10.0)
    got, nodes, drift = _refined_quad(fn, dim, L, quad_eps)
    closed = fourier_closed_form(spec, Z, V, form)
    residual = abs(got - closed)
    return CheckReport("fourier_" + form, residual, tol, got, closed,
                       {"box": L, "nodes": nodes, "drift": drift})


def check_poisson(spec: ThetaSpec, Z: SiegelPoint, eps: float = 1e-10,
                  tol: float = 1e-8, point_cap=None) -> CheckReport:
    """Both sides of Poisson summation for f_Z, each with a certified tail.

    The left side is the lattice sum of f_Z itself (the characteristics play
    no role here, so they are zeroed); the right side sums the closed-form
    transform over V in A^-1 Z^{m x n}, reparametrized by the integer matrix
    W = A V so that both sides run over plain integer lattices.
    """
    cap = point_cap_from_env(point_cap)
    m, n = spec.m, spec.n
    zero = [[0] * n for _ in range(m)]
    spec0 = spec.with_characteristics(H=zero, K=zero)
    lhs = theta_eval_borcherds(spec0, Z, eps, cap)

    W = SiegelPoint(-np.linalg.inv(Z.Z))
    Ytil = W.Y
    fz, pB = _fz_closure(spec0, W)
    alpha, beta = spec.coeff.alpha, spec.coeff.beta
    dec = spec.dec
    deta = float(dec.form.det)
    pref = cmath.exp(-1j * math.pi * m * n / 4.0)
    if dec.s == 0:
        pref *= deta ** (-n / 2.0) * det_power(W.Z, m / 2.0 + alpha)
    else:
        pref *= cmath.exp(1j * math.pi * beta * dec.s)
        pref *= abs(deta) ** (-n / 2.0)
        pref *= det_power(W.Z, dec.r / 2.0 + alpha)
        pref *= det_power(np.conj(Z.Z), -(dec.s / 2.0 + beta))

    Ainv = np.linalg.inv(spec.A.astype(float))
    GW = np.kron(Ytil, Ainv.T @ dec.M @ Ainv)
    sig2 = 1.0 / float(np.min(np.linalg.eigvalsh(dec.M)) * np.min(np.linalg.eigvalsh(Ytil)))

    def summand(rows):
        Wm = rows.astype(float).reshape(-1, n, m).transpose(0, 2, 1)
        Vm = np.einsum("ab,xbj->xaj", Ainv, Wm)
        return fz(Vm)

    total, tail, used, _, _, gross = certified_lattice_sum(
        GW, np.zeros(m * n), eps, pB.coeff_norm(), pB.degree(), sig2, summand, cap)
    rhs_val = pref * total
    scale = max(lhs.gross, abs(pref) * gross)
    residual = abs(lhs.value - rhs_val) / scale if scale > 0 else 0.0
    return CheckReport(
        "poisson", residual, tol, lhs.value, rhs_val,
        {"eps": eps, "terms_lhs": lhs.terms, "terms_rhs": used,
         "tail_budget": lhs.tail_bound + abs(pref) * tail,
         "absolute_residual": abs(lhs.value - rhs_val)})


# ==== suites ================================================================


def _suite_specs(forms, genus):
    out = []
    for name in forms:
        A = named_form(name) if isinstance(name, str) else np.asarray(name)
        dec = decompose(A)
        m = dec.m
        half = [[Fraction(1, 2) if a == 0 else Fraction(0) for _ in range(genus)] for a in range(m)]
        third = [[Fraction(1, 3) if a == m - 1 else Fraction(0) for _ in range(genus)] for a in range(m)]
        label = name if isinstance(name, str) else "custom"
        if dec.s == 0 or genus > 1:
            coeff = build_coeff(dec, MatPoly.one(m, genus),
                                None if dec.s == 0 else MatPoly.one(m, genus))
        else:
            coeff = build_coeff(dec, MatPoly.variable(m, 1, 0, 0), MatPoly.one(m, 1))
        out.append((label, ThetaSpec(dec, coeff, half, third)))
    return out


def run_suite(suite: str, forms=None, genus: int = 1, seed: int = 0,
              eps: float = 1e-10, point_cap=None) -> list:
    """Run a named family of checks; returns a list of CheckReports."""
    if forms is None:
        forms = ("diag:2", "diag:2,-2", "h2")
    rng = np.random.default_rng(seed)
    reports = []

    if suite in ("operators", "all"):
        for label, spec in _suite_specs(forms, genus):
            rep = check_vigneras(spec)
            rep.metadata["form"] = label
            reports.append(rep)
        reports.append(check_commutator(m=2, n=genus, degree=3, kmax=2, n_forms=2, seed=seed))
    if suite in ("translation", "all"):
        for label, spec in _suite_specs(forms, genus):
            B = rng.integers(-2, 3, size=(genus, genus))
            rep = check_translation(spec, random_siegel_point(genus, rng), B + B.T,
                                    eps=min(eps, 1e-12), point_cap=point_cap)
            rep.metadata["form"] = label
            reports.append(rep)
    if suite in ("inversion", "all"):
        for label, spec in _suite_specs(forms, genus):
            rep = check_inversion(spec, SiegelPoint(np.eye(genus) * 1j), eps=eps,
                                  point_cap=point_cap)
            rep.metadata["form"] = label
            reports.append(rep)
            rep = check_borcherds_form(spec, random_siegel_point(genus, rng),
                                       point_cap=point_cap)
            rep.metadata["form"] = label
            reports.append(rep)
    if suite in ("fourier", "all"):
        sp = theta_spec([[2]], P_plus=_random_matpoly(1, 1, 2, rng))
        Z1 = SiegelPoint(np.array([[(1 + 3j) / 5]]))
        reports.append(check_fourier(sp, Z1, [[0.5]], form="plain"))
        reports.append(check_fourier(sp, Z1, [[0.5]], form="eigen"))
        if genus == 1:
            small = [f for f in forms if isinstance(f, str) and named_form(f).shape[0] <= 2]
            for label, spec in _suite_specs(small, 1):
                rep = check_fourier(spec, SiegelPoint(np.array([[0.3 + 1.1j]])),
                                    [[0.5]] if spec.m == 1 else [[0.5], [0.25]])
                rep.metadata["form"] = label
                reports.append(rep)
        reports.append(check_gauss_transform(_random_matpoly(1, 2, 3, rng), [[0.7, -0.3]]))
    if suite in ("poisson", "all"):
        for label, spec in _suite_specs(forms, genus):
            if spec.m * genus > 8:
                continue
            rep = check_poisson(spec, SiegelPoint(np.eye(genus) * 1j), eps=eps,
                                point_cap=point_cap)
            rep.metadata["form"] = label
            reports.append(rep)
    if not reports:
        raise ValueError("unknown suite %r" % suite)
    return reports
