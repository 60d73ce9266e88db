"""
Solve Helper test — certified counts for m = 2, the kernel vector y, the
point x = (1, 0), and agreement with the grid-Newton oracle.

Run:
    python tests/solve_helper/test_solve_helper.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[2] / "src"))
from inoprodvec.classify_helper import IndeterminateError, InoClassifyHelper
from inoprodvec.config_helper import Tolerances
from inoprodvec.fixture_helper import InoFixtureHelper
from inoprodvec.numeric_helper import FLOAT, GaussianRational as G
from inoprodvec.poly_helper import BiPoly, InoPolyHelper, UniPoly
from inoprodvec.root_helper import InoRootHelper
from inoprodvec.solve_helper import InoSolveHelper, RankError
from inoprodvec.subspace_helper import InoSubspaceHelper

Z = UniPoly((0, 1))


def _diagonal_resultant(k: int, l: int) -> UniPoly:
    n = k + l
    lead = 1
    for j in range(1, k + 1):
        for i in range(k + 1, n + 1):
            lead *= i + j
    R = UniPoly.constant(lead)
    for j in range(1, k + 1):
        R = R * (Z + j) ** k
    for i in range(k + 1, n + 1):
        R = R * (Z - i) ** l
    return R


def _close(u, v) -> bool:
    return InoSolveHelper.projective_distance(u, InoSolveHelper.normalize(v)) < 1e-12


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

def test_diagonal_two_by_two_solutions():
    cert = InoSolveHelper.certify(InoFixtureHelper.diagonal(1, 1))
    assert cert.count == 2
    assert cert.verdict.is_in_u
    assert cert.bound_applies
    assert not cert.chart_at_infinity
    xs = [s.x for s in cert.solutions]
    ys = [s.y for s in cert.solutions]
    assert _close(xs[0], [-1, 1]) and _close(ys[0], [1, 0])
    assert _close(xs[1], [2, 1]) and _close(ys[1], [0, 1])
    assert all(max(s.residual_d, s.residual_e) <= 1e-15 for s in cert.solutions)


def test_diagonal_family():
    for n in range(2, 6):
        for k in range(n + 1):
            l = n - k
            pair = InoFixtureHelper.diagonal(k, l)
            P = InoSubspaceHelper.det_poly_2xn(InoSubspaceHelper.build_linear_system(pair))
            R = InoPolyHelper.resultant_w(P, InoPolyHelper.conjugate_poly(P))
            assert R == _diagonal_resultant(k, l), (k, l)
            assert R.degree == k * k + l * l
            cert = InoSolveHelper.certify(pair)
            assert cert.count == n, (k, l, cert.count)
            assert cert.verdict.is_in_u
            assert cert.resultant_degree == k * k + l * l
            roots = sorted((s.x[0] / s.x[1] for s in cert.solutions), key=lambda c: c.real)
            expected = [complex(-j) for j in range(k, 0, -1)] + [complex(i) for i in range(k + 1, n + 1)]
            assert all(abs(a - b) < 1e-12 for a, b in zip(roots, expected))


def test_hakye_count():
    cert = InoSolveHelper.certify(InoFixtureHelper.hakye_2x4(3, 1))
    assert cert.verdict.is_in_u
    assert cert.resultant_degree == 10
    assert cert.k2l2_bound == 10
    assert cert.count == 10
    assert cert.count <= cert.k2l2_bound
    assert not cert.chart_at_infinity
    for s in cert.solutions:
        assert max(s.residual_d, s.residual_e) <= 1e-9


def test_example_4_6_pipeline():
    pair = InoFixtureHelper.example_4_6()
    cert = InoSolveHelper.certify(pair)
    assert cert.count is not None and cert.count <= 5
    assert cert.chart_at_infinity
    at_inf = [s for s in cert.solutions if s.at_infinity]
    assert len(at_inf) == 1
    assert _close(at_inf[0].x, [1, 0])
    L = InoSubspaceHelper.build_linear_system(pair)
    assert InoSubspaceHelper.chart_point_check(L, [1, 0]) == 3

    P = InoSubspaceHelper.det_poly_2xn(L)
    R = InoPolyHelper.resultant_w(P, InoPolyHelper.conjugate_poly(P))
    T = R.exquo(Z * Z)
    z0 = G(-4) / G(19, 3)
    value = T(z0)
    assert value != 0
    scale = sum(abs(c) * abs(z0) ** i for i, c in enumerate(T.coeffs))
    assert abs(value) > 1e-6 * scale

    assert cert.range_obstruction.obstructed
    assert "dimension of D is 6" in cert.range_obstruction.explanation


def test_rank_defect_gives_unbounded_count():
    from inoprodvec.subspace_helper import SubspacePair

    pair = SubspacePair.create(
        2, 3,
        [[[1, 0, 0], [1, 0, 0]], [[0, 1, 0], [0, 1, 0]]],
        [[[0, 0, 1], [0, 0, -3]]],
    )
    cert = InoSolveHelper.certify(pair)
    assert cert.count is None
    assert "dimension >= 2" in cert.caveat
    assert not cert.bound_applies
    assert cert.range_obstruction is None


def test_resultant_identically_zero_count():
    from inoprodvec.subspace_helper import SubspacePair

    pair = SubspacePair.create(2, 2, [[[1, 2], [3, G(1, 1)]]], [[[1, 2], [3, G(1, -1)]]])
    res = InoSolveHelper.count_product_vectors_2xn(pair)
    assert res["success"]
    cert = res["certificate"]
    assert cert.count is None
    assert cert.verdict.reason == "ResultantIdenticallyZero"


def test_m3_is_a_domain_error():
    res = InoSolveHelper.count_product_vectors_2xn(InoFixtureHelper.random_pair(3, 3, 2, 2, 1))
    assert not res["success"]
    assert res["error_kind"] == "domain"


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

def test_null_space_y():
    y = InoSolveHelper.null_space_y([[G(3), G(0)], [G(0), G(0)]])
    assert _close(y, [0, 1])
    y = InoSolveHelper.null_space_y([[1.0, 1.0], [2.0, 2.0]])
    assert _close(y, [1, -1])


def test_null_space_y_rank_errors():
    try:
        InoSolveHelper.null_space_y([[G(1), G(0)], [G(0), G(1)]])
        assert False, "expected RankError"
    except RankError as e:
        assert e.defect == "full"
    try:
        InoSolveHelper.null_space_y([[0.0, 0.0], [0.0, 0.0]])
        assert False, "expected RankError"
    except RankError as e:
        assert e.defect == "deficient"
        assert e.rank == 0


def test_normalize():
    v = InoSolveHelper.normalize([0, -2j, 0])
    assert v == (0j, 1 + 0j, 0j)
    try:
        InoSolveHelper.normalize([0, 0])
        assert False, "expected ProdVecError"
    except ValueError:
        pass


def test_dedup_is_idempotent():
    sols = list(InoSolveHelper.certify(InoFixtureHelper.diagonal(2, 1)).solutions)
    doubled = sols + sols[:2]
    once = InoSolveHelper.dedup(doubled)
    assert len(once) == len(sols)
    assert InoSolveHelper.dedup(once) == once


def test_conjugate_consistency():
    tol = Tolerances()
    P = BiPoly([[-1], [1]], field=FLOAT)
    assert InoSolveHelper.conjugate_consistent(P, 1 + 1e-12, tol)
    assert not InoSolveHelper.conjugate_consistent(P, 1.5, tol)
    try:
        InoSolveHelper.conjugate_consistent(P, 1 + 5e-8, tol)
        assert False, "expected IndeterminateError"
    except IndeterminateError:
        pass
    exact = BiPoly([[-2, 1], [-2, 1]])
    assert InoSolveHelper.conjugate_consistent(exact, G(-1), tol)
    assert not InoSolveHelper.conjugate_consistent(exact, G(0, 1), tol)


def test_polish_conjugate_root():
    P = BiPoly([[G(-1, -2)], [1]]).approx()
    z = InoSolveHelper.polish_conjugate_root(P, 1.1 + 2.1j)
    assert abs(z - (1 + 2j)) < 1e-14


def test_rejected_roots_come_in_conjugate_pairs():
    tol = Tolerances()
    rejected = 0
    for seed in range(40, 60):
        elim = InoClassifyHelper.eliminate(InoFixtureHelper.random_pair(2, 3, 1, 2, seed), tol)
        if elim.resultant_zero:
            continue
        Pf, Qf = elim.P.approx(), elim.Q.approx()
        centers = [c.center for c in elim.roots]
        for cluster in elim.roots:
            if cluster.multiplicity != 1:
                continue
            z = cluster.center
            try:
                if InoSolveHelper.conjugate_consistent(elim.P, z, tol):
                    continue
            except IndeterminateError:
                continue
            # the common root w of P(z, .) and Q(z, .)
            ws = [c.center for c in InoRootHelper.roots(Pf.substitute_z(z), tol.cluster)]
            w = min(ws, key=lambda v: abs(Qf.eval(z, v)) / Qf.eval_scale(z, v))
            partner = w.conjugate()
            assert min(abs(c - partner) for c in centers) <= 1e-6 * max(1.0, abs(partner)), (seed, z, w)
            rejected += 1
    assert rejected > 0


def test_certificate_is_deterministic():
    pair = InoFixtureHelper.random_pair(2, 3, 2, 1, 17)
    a = InoSolveHelper.certify(pair).to_json()
    b = InoSolveHelper.certify(pair).to_json()
    assert a == b


def test_solutions_are_genuine():
    for seed in range(10):
        pair = InoFixtureHelper.random_pair(2, 3, 1, 2, 300 + seed)
        cert = InoSolveHelper.certify(pair)
        for s in cert.solutions:
            assert max(s.residual_d, s.residual_e) <= 1e-9
            assert s.rank_certificate.value != 0


# ---------------------------------------------------------------------------
# Segre degree and the oracle
# ---------------------------------------------------------------------------

def test_segre_counts():
    for n in range(2, 9):
        for seed in range(20):
            cert = InoSolveHelper.certify(InoFixtureHelper.random_pair(2, n, 0, n, seed))
            assert cert.count == n == InoClassifyHelper.segre_degree(2, n), (n, seed, cert.count)
    assert InoSolveHelper.certify(InoFixtureHelper.random_pair(2, 2, 0, 2, 1)).count == 2


def test_oracle_agreement():
    cells = [(n, k) for n in (2, 3, 4) for k in range(n + 1)]
    checked = 0
    seed = 1000
    while checked < 50:
        n, k = cells[seed % len(cells)]
        pair = InoFixtureHelper.random_pair(2, n, k, n - k, seed)
        seed += 1
        cert = InoSolveHelper.certify(pair)
        if not cert.verdict.is_in_u or cert.count is None:
            continue
        assert cert.count <= cert.k2l2_bound
        assert InoSolveHelper.brute_force_count_2xn(pair) == cert.count, (n, k, seed - 1)
        for s in cert.solutions:
            assert max(s.residual_d, s.residual_e) <= 1e-9
        checked += 1


if __name__ == "__main__":
    test_diagonal_two_by_two_solutions()
    test_diagonal_family()
    test_hakye_count()
    test_example_4_6_pipeline()
    test_rank_defect_gives_unbounded_count()
    test_resultant_identically_zero_count()
    test_m3_is_a_domain_error()
    test_null_space_y()
    test_null_space_y_rank_errors()
    test_normalize()
    test_dedup_is_idempotent()
    test_conjugate_consistency()
    test_polish_conjugate_root()
    test_rejected_roots_come_in_conjugate_pairs()
    test_certificate_is_deterministic()
    test_solutions_are_genuine()
    test_segre_counts()
    test_oracle_agreement()
    print("All tests passed!")
