"""Property checks comparing closed forms, duality maps and the brute-force oracle.

Each ``*_residual`` function measures one identity on one tensor (or one
(n, r) pair) and returns worst-case residuals. ``run_suite`` sweeps them over
seeded random tensors and compares against the fixed thresholds below.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .curvature import (
    CurvatureTensor,
    apply_operator,
    dual_tensor,
    nakano_matrix,
    operator_matrix,
    quadratic_form_complex,
)
from .forms import (
    BundleForm,
    fiber_dim,
    hodge_star,
    inner_product,
    lambda_closed_form,
    lefschetz,
    map_matrix,
    star_inverse,
    star_matrix,
    tilde_map,
)
from .generators import GRAM_PSD, HERMITIAN, random_form_vector, random_tensor, rng_for
from .positivity import (
    DEFAULT_TOL,
    POSITIVE,
    SEMI_POSITIVE,
    hermitian_spectrum,
    nakano_class,
    theorem_chain_report,
)

THRESHOLDS = {
    "oracle_equivalence": 1e-10,  # relative to 1 + max|c|
    "quadratic_form": 1e-10,  # relative to 1 + max|c| |u|^2
    "quadratic_form_imag": 1e-12,
    "negation_spectrum": 1e-9,
    "negation_quadratic": 1e-10,
    "star_matrix": 1e-10,
    "star_spectrum": 1e-9,
    "star_inverse_pairing": 1e-8,
    "star_involution": 1e-12,
    "nakano_slot_identity": 1e-13,
    "lambda_adjoint": 1e-12,
    "lefschetz_commutator": 1e-12,
    "hodge_identity": 1e-12,
}

INVERTIBLE_GAP = 1e-6


def bidegrees(n: int):
    return [(p, q) for p in range(n + 1) for q in range(n + 1)]


def _unit_form(n, r, p, q, rng, dual=False) -> BundleForm:
    v = random_form_vector(fiber_dim(n, r, p, q), rng)
    nrm = np.linalg.norm(v)
    return BundleForm.from_vector(v / nrm if nrm else v, n, r, p, q, dual)


def _maxabs(M) -> float:
    M = np.asarray(M)
    return float(np.max(np.abs(M))) if M.size else 0.0


def oracle_residual(c: CurvatureTensor) -> float:
    """max_{p,q} ||operator_matrix - commutator_matrix||_max / (1 + max|c|)."""
    worst = 0.0
    for p, q in bidegrees(c.n):
        diff = operator_matrix(c, p, q).matrix - oracle.commutator_matrix(c, p, q).matrix
        worst = max(worst, _maxabs(diff))
    return worst / (1.0 + c.max_abs())


def quadratic_residuals(c: CurvatureTensor, p, q, rng, count: int) -> tuple[float, float]:
    """Worst (relative mismatch, |imag part|) of the direct quadratic form against <A u, u>."""
    rel = imag = 0.0
    if fiber_dim(c.n, c.r, p, q) == 0:
        return rel, imag
    for _ in range(count):
        u = _unit_form(c.n, c.r, p, q, rng)
        direct = quadratic_form_complex(c, u)
        via_apply = inner_product(apply_operator(c, u), u)
        scale = 1.0 + c.max_abs() * u.norm() ** 2
        rel = max(rel, abs(direct - via_apply) / scale)
        imag = max(imag, abs(direct.imag))
    return rel, imag


def negation_residuals(c: CurvatureTensor, p, q, rng, count: int) -> tuple[float, float]:
    """Eigenvalue gap of A^{n-q,n-p} against -A^{p,q}, and the tilde quadratic identity."""
    n = c.n
    A = operator_matrix(c, p, q).matrix
    B = operator_matrix(c, n - q, n - p).matrix
    ea, eb = hermitian_spectrum(A), hermitian_spectrum(B)
    gap = _maxabs(np.sort(eb) - np.sort(-ea))
    qrel = 0.0
    if A.size:
        for _ in range(count):
            u = _unit_form(n, c.r, p, q, rng)
            ut = tilde_map(u)
            lhs = inner_product(apply_operator(c, u), u)
            rhs = -inner_product(apply_operator(c, ut), ut)
            qrel = max(qrel, abs(lhs - rhs) / (1.0 + c.max_abs() * u.norm() ** 2))
    return gap, qrel


def star_residuals(c: CurvatureTensor, p, q, rng, count: int) -> dict:
    """Star intertwining *A_E = A_{E*}* as matrices, spectra, and inverse pairing."""
    n, r = c.n, c.r
    cd = dual_tensor(c)
    A = operator_matrix(c, p, q).matrix
    Ad = operator_matrix(cd, n - p, n - q, dual=True).matrix
    S = star_matrix(n, r, p, q)  # *u = S conj(u)
    out = {
        "matrix": _maxabs(S @ A.conj() - Ad @ S),
        "spectrum": _maxabs(hermitian_spectrum(A) - hermitian_spectrum(Ad)),
        "inverse": 0.0,
        "inverse_tested": False,
    }
    if A.size and np.min(np.abs(hermitian_spectrum(A))) > INVERTIBLE_GAP:
        out["inverse_tested"] = True
        Ainv, Adinv = np.linalg.inv(A), np.linalg.inv(Ad)
        for _ in range(count):
            u = _unit_form(n, r, p, q, rng)
            su = hodge_star(u).vector()
            lhs = np.vdot(u.vector(), Ainv @ u.vector())
            rhs = np.vdot(su, Adinv @ su)
            out["inverse"] = max(out["inverse"], abs(lhs - rhs) / max(1.0, abs(lhs)))
    return out


def star_involution_residual(n: int, r: int, rng=None, count: int = 3) -> float:
    """*_{E*} *_E = (-1)^{p+q} on every bidegree, as matrices and on random forms."""
    worst = 0.0
    for p, q in bidegrees(n):
        S1 = star_matrix(n, r, p, q)
        S2 = map_matrix(hodge_star, n, r, n - p, n - q, dual=True)
        sign = -1 if (p + q) % 2 else 1
        worst = max(worst, _maxabs(S2 @ S1.conj() - sign * np.eye(S1.shape[1])))
        if rng is not None:
            for _ in range(count):
                u = _unit_form(n, r, p, q, rng)
                back = star_inverse(hodge_star(u), (p, q))
                worst = max(worst, _maxabs(back.coeffs - u.coeffs))
    return worst


def nakano_slot_residual(c: CurvatureTensor) -> float:
    """A^{n,1} against the Nakano matrix; the slot (N, {k}, lam) is already (k, lam)."""
    return _maxabs(operator_matrix(c, c.n, 1).matrix - nakano_matrix(c))


def lambda_residuals(n: int, r: int) -> tuple[float, float]:
    """(closed-form Lambda vs oracle adjoint of L, [L, Lambda] - (p+q-n) id) over all bidegrees."""
    adj = comm = 0.0
    for p, q in bidegrees(n):
        closed = map_matrix(lambda_closed_form, n, r, p, q)
        adj = max(adj, _maxabs(closed - oracle.lambda_matrix(n, r, p, q).matrix))
        L_closed = map_matrix(lefschetz, n, r, p, q)
        adj = max(adj, _maxabs(L_closed - oracle.lefschetz_matrix(n, r, p, q).matrix))
        C = oracle.lefschetz_lambda_commutator(n, r, p, q)
        comm = max(comm, _maxabs(C - (p + q - n) * np.eye(C.shape[0])))
    return adj, comm


def hodge_identity_residual(n: int, r: int, rng, count: int = 2) -> float:
    """u ^ *v against <u, v> dV, with the wedge and dV both from the oracle."""
    vol = oracle.volume_coefficient(n)
    worst = 0.0
    for p, q in bidegrees(n):
        for _ in range(count):
            u = _unit_form(n, r, p, q, rng)
            v = _unit_form(n, r, p, q, rng)
            lhs = oracle.pairing_top(u, hodge_star(v))
            worst = max(worst, abs(lhs - inner_product(u, v) * vol))
    return worst


@dataclass
class PropertyResult:
    name: str
    residual: float
    threshold: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"[{mark}] {self.name:<24} worst={self.residual:.3e}  threshold={self.threshold:.1e}{extra}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "threshold": self.threshold,
            "passed": self.passed,
            "detail": self.detail,
        }


def _result(name, residual, key=None, threshold=None, detail=""):
    thr = THRESHOLDS[key or name] if threshold is None else threshold
    return PropertyResult(name, float(residual), thr, bool(residual <= thr), detail)


def run_suite(n: int, r: int, trials: int, seed: int, tol: float = DEFAULT_TOL, forms_per_cell: int = 4):
    """Run every property over ``trials`` seeded random Hermitian tensors of shape (n, r)."""
    tensors = [random_tensor(n, r, (seed, n, r, t), HERMITIAN) for t in range(trials)]
    rng = rng_for((seed, n, r, 10**6))

    oracle_w = quad_w = imag_w = 0.0
    neg_spec = neg_qf = 0.0
    st_mat = st_spec = st_inv = 0.0
    inv_count = 0
    slot_w = 0.0
    chain_fail = []
    for c in tensors:
        oracle_w = max(oracle_w, oracle_residual(c))
        slot_w = max(slot_w, nakano_slot_residual(c))
        for p, q in bidegrees(n):
            a, b = quadratic_residuals(c, p, q, rng, forms_per_cell)
            quad_w, imag_w = max(quad_w, a), max(imag_w, b)
            a, b = negation_residuals(c, p, q, rng, forms_per_cell)
            neg_spec, neg_qf = max(neg_spec, a), max(neg_qf, b)
            s = star_residuals(c, p, q, rng, forms_per_cell)
            st_mat, st_spec, st_inv = max(st_mat, s["matrix"]), max(st_spec, s["spectrum"]), max(st_inv, s["inverse"])
            inv_count += s["inverse_tested"]
        rep = theorem_chain_report(c, tol)
        if not rep.ok:
            chain_fail.extend(rep.violations)

    gram_bad = 0
    for t in range(trials):
        cls = nakano_class(random_tensor(n, r, (seed, n, r, t, 1), GRAM_PSD), tol).cls
        if cls not in (POSITIVE, SEMI_POSITIVE):
            gram_bad += 1

    lam_adj, lam_comm = lambda_residuals(n, r)
    results = [
        _result("oracle_equivalence", oracle_w),
        _result("quadratic_form", quad_w),
        _result("quadratic_form_imag", imag_w),
        _result("negation_spectrum", neg_spec),
        _result("negation_quadratic", neg_qf),
        _result("star_matrix", st_mat),
        _result("star_spectrum", st_spec),
        _result("star_inverse_pairing", st_inv, detail=f"{inv_count} invertible cells"),
        _result("star_involution", star_involution_residual(n, r, rng)),
        _result("nakano_slot_identity", slot_w),
        _result("nakano_chain", len(chain_fail), threshold=0, detail="; ".join(chain_fail[:3])),
        _result("lambda_adjoint", lam_adj),
        _result("lefschetz_commutator", lam_comm),
        _result("hodge_identity", hodge_identity_residual(n, r, rng)),
        _result("gram_closure", gram_bad, threshold=0, detail=f"{trials} gram_psd tensors"),
    ]
    return results
