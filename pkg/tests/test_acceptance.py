"""Acceptance criteria 1-10 at their stated counts and tolerances.

Each test records one PASS/FAIL line; the lines are repeated in the
"acceptance criteria" section of the pytest terminal summary.
"""
import time

import numpy as np
import pytest

from curvop import oracle
from curvop.curvature import (
    apply_operator,
    dual_tensor,
    nakano_matrix,
    operator_matrix,
    quadratic_form_complex,
)
from curvop.forms import (
    BundleForm,
    fiber_dim,
    hodge_star,
    inner_product,
    lambda_closed_form,
    map_matrix,
    star_matrix,
    tilde_map,
)
from curvop.generators import GRAM_PSD, HERMITIAN, fubini_study_tensor, random_tensor, rng_for
from curvop.positivity import (
    NEGATIVE,
    POSITIVE,
    SEMI_POSITIVE,
    dual_nakano_class,
    griffiths_min,
    hermitian_spectrum,
    nakano_class,
    theorem_chain_report,
)

CELLS = [(n, r) for n in (1, 2, 3) for r in (1, 2)]


def bidegrees(n):
    return [(p, q) for p in range(n + 1) for q in range(n + 1)]


def unit_form(n, r, p, q, rng, dual=False):
    v = rng.standard_normal(fiber_dim(n, r, p, q)) + 1j * rng.standard_normal(fiber_dim(n, r, p, q))
    return BundleForm.from_vector(v / np.linalg.norm(v), n, r, p, q, dual)


def tensors(n, r, count, tag, mode=HERMITIAN):
    return [random_tensor(n, r, (tag, n, r, t), mode) for t in range(count)]


def maxabs(M):
    M = np.asarray(M)
    return float(np.abs(M).max()) if M.size else 0.0


def test_c01_oracle_equivalence(acceptance_log):
    t0 = time.perf_counter()
    worst, count = 0.0, 0
    for n, r in CELLS:
        for c in tensors(n, r, 50, 1):
            scale = 1.0 + c.max_abs()
            for p, q in bidegrees(n):
                diff = operator_matrix(c, p, q).matrix - oracle.commutator_matrix(c, p, q).matrix
                worst = max(worst, maxabs(diff) / scale)
            count += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 60
    acceptance_log(1, "closed form vs commutator oracle", ok,
                   f"{count} tensors, worst rel residual {worst:.2e} (<= 1e-10), {elapsed:.1f}s (< 60s)")
    assert worst <= 1e-10
    assert elapsed < 60


def test_c02_quadratic_form_cross_check(acceptance_log):
    rng = rng_for(2)
    rel = imag = 0.0
    pairs = 0
    for n, r in CELLS:
        pool = tensors(n, r, 200, 2)
        for p, q in bidegrees(n):
            for c in pool:
                u = unit_form(n, r, p, q, rng)
                direct = quadratic_form_complex(c, u)
                via = inner_product(apply_operator(c, u), u)
                rel = max(rel, abs(direct - via) / (1.0 + c.max_abs() * u.norm() ** 2))
                imag = max(imag, abs(direct.imag))
                pairs += 1
    ok = rel <= 1e-10 and imag <= 1e-12
    acceptance_log(2, "direct quadratic form vs <Au,u>", ok,
                   f"{pairs} pairs, worst rel {rel:.2e} (<= 1e-10), worst |imag| {imag:.2e} (<= 1e-12)")
    assert rel <= 1e-10 and imag <= 1e-12


def test_c03_spectral_negation(acceptance_log):
    rng = rng_for(3)
    gap = qrel = 0.0
    for n, r in CELLS:
        for c in tensors(n, r, 50, 3):
            for p, q in bidegrees(n):
                ea = hermitian_spectrum(operator_matrix(c, p, q).matrix)
                eb = hermitian_spectrum(operator_matrix(c, n - q, n - p).matrix)
                gap = max(gap, maxabs(np.sort(eb) - np.sort(-ea)))
        c = tensors(n, r, 1, 31)[0]
        for p, q in bidegrees(n):
            for _ in range(100):
                u = unit_form(n, r, p, q, rng)
                ut = tilde_map(u)
                lhs = inner_product(apply_operator(c, u), u)
                rhs = -inner_product(apply_operator(c, ut), ut)
                qrel = max(qrel, abs(lhs - rhs) / (1.0 + c.max_abs() * u.norm() ** 2))
    ok = gap <= 1e-9 and qrel <= 1e-10
    acceptance_log(3, "eigenvalues of A^{n-q,n-p} negate those of A^{p,q}", ok,
                   f"worst eigen gap {gap:.2e} (<= 1e-9), worst tilde identity rel {qrel:.2e} (<= 1e-10)")
    assert ok


def test_c04_star_intertwining(acceptance_log):
    rng = rng_for(4)
    mat = spec = inv = 0.0
    tested = 0
    for n, r in CELLS:
        for c in tensors(n, r, 50, 4):
            cd = dual_tensor(c)
            for p, q in bidegrees(n):
                A = operator_matrix(c, p, q).matrix
                Ad = operator_matrix(cd, n - p, n - q, dual=True).matrix
                S = star_matrix(n, r, p, q)  # *u = S conj(u)
                mat = max(mat, maxabs(S @ A.conj() - Ad @ S))
                ea = hermitian_spectrum(A)
                spec = max(spec, maxabs(ea - hermitian_spectrum(Ad)))
                if A.size and np.abs(ea).min() > 1e-6:
                    tested += 1
                    Ainv, Adinv = np.linalg.inv(A), np.linalg.inv(Ad)
                    for _ in range(2):
                        u = unit_form(n, r, p, q, rng)
                        su = hodge_star(u).vector()
                        lhs = np.vdot(u.vector(), Ainv @ u.vector())
                        rhs = np.vdot(su, Adinv @ su)
                        inv = max(inv, abs(lhs - rhs) / max(1.0, abs(lhs)))
    ok = mat <= 1e-10 and spec <= 1e-9 and inv <= 1e-8 and tested > 0
    acceptance_log(4, "star intertwines E and E*", ok,
                   f"matrix {mat:.2e} (<= 1e-10), spectra {spec:.2e} (<= 1e-9), "
                   f"inverse pairing {inv:.2e} (<= 1e-8) over {tested} invertible cells")
    assert ok


def test_c05_star_involution(acceptance_log):
    worst = 0.0
    for n, r in CELLS:
        for p, q in bidegrees(n):
            S1 = star_matrix(n, r, p, q)
            S2 = map_matrix(hodge_star, n, r, n - p, n - q, dual=True)
            worst = max(worst, maxabs(S2 @ S1.conj() - (-1) ** (p + q) * np.eye(S1.shape[1])))
    ok = worst <= 1e-12
    acceptance_log(5, "*_{E*} *_E = (-1)^{p+q}", ok, f"worst residual {worst:.2e} (<= 1e-12)")
    assert ok


def test_c06_nakano_slot_identity(acceptance_log):
    worst = 0.0
    count = 0
    for n in (1, 2, 3):
        for r in (1, 2, 3):
            for c in tensors(n, r, 100, 6):
                worst = max(worst, maxabs(operator_matrix(c, n, 1).matrix - nakano_matrix(c)))
                count += 1
    ok = worst <= 1e-13
    acceptance_log(6, "A^{n,1} equals the Nakano matrix", ok,
                   f"{count} tensors, worst residual {worst:.2e} (<= 1e-13)")
    assert ok


def test_c07_nakano_chain(acceptance_log):
    violations, notes, disagreements = [], [], 0
    count = 0
    for n in (2, 3):
        for r in (1, 2):
            for mode in (HERMITIAN, GRAM_PSD):
                for c in tensors(n, r, 50, 7, mode):
                    rep = theorem_chain_report(c)
                    violations += rep.violations
                    notes += rep.notes
                    disagreements += not rep.chain_agrees
                    count += 1
    ok = not violations
    detail = f"{count} tensors, {len(violations)} violations, {disagreements} boundary disagreements"
    if notes:
        detail += f" (first: {notes[0]})"
    acceptance_log(7, "five-member Nakano chain agrees", ok, detail)
    assert ok, violations[:3]


@pytest.mark.parametrize("n", [2, 3])
def test_c08_fubini_study(acceptance_log, n):
    c = fubini_study_tensor(n)
    nak, dnak = nakano_class(c), dual_nakano_class(c)
    m0 = n * (n - 1) // 2
    want = np.array([0.0] * m0 + [2.0] * (n * n - m0))
    want_dual = np.array([-(n + 1.0)] + [-1.0] * (n * n - 1))
    gap = maxabs(nak.spectrum - want)
    gap_dual = maxabs(dnak.spectrum - want_dual)
    g = griffiths_min(c).value
    ok = (
        gap <= 1e-9
        and gap_dual <= 1e-9
        and nak.cls == SEMI_POSITIVE
        and dnak.cls == POSITIVE
        and nakano_class(dual_tensor(c)).cls == NEGATIVE
        and g >= 1 - 1e-6
    )
    acceptance_log(8, f"Fubini-Study n={n}", ok,
                   f"Nakano {nak.cls} (gap {gap:.1e}), dual Nakano {dnak.cls} (gap {gap_dual:.1e}), "
                   f"Griffiths min {g:.9f} (>= 1 - 1e-6)")
    assert ok


def test_c09_lambda_consistency(acceptance_log):
    adj = comm = 0.0
    for n, r in CELLS:
        for p, q in bidegrees(n):
            closed = map_matrix(lambda_closed_form, n, r, p, q)
            adj = max(adj, maxabs(closed - oracle.lambda_matrix(n, r, p, q).matrix))
    for n in (1, 2, 3):
        for p, q in bidegrees(n):
            C = oracle.lefschetz_lambda_commutator(n, 1, p, q)
            comm = max(comm, maxabs(C - (p + q - n) * np.eye(C.shape[0])))
    ok = adj <= 1e-12 and comm <= 1e-12
    acceptance_log(9, "Lambda is the adjoint of L; [L,Lambda] = (p+q-n)", ok,
                   f"adjoint {adj:.2e} (<= 1e-12), commutator {comm:.2e} (<= 1e-12)")
    assert ok


def test_c10_gram_closure(acceptance_log):
    bad = []
    count = 0
    for n in (1, 2, 3):
        for r in (1, 2, 3):
            for c in tensors(n, r, 100, 10, GRAM_PSD):
                rep = nakano_class(c)
                if rep.cls not in (POSITIVE, SEMI_POSITIVE):
                    bad.append((n, r, rep.cls, float(rep.spectrum[0])))
                count += 1
    ok = not bad
    acceptance_log(10, "Gram tensors are Nakano semi-positive", ok,
                   f"{count} tensors, {len(bad)} misclassified")
    assert ok, bad[:3]
