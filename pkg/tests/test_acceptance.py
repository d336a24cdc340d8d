"""Acceptance suite: one test per criterion, every tolerance pinned here.

Each test prints a single PASS line (visible with pytest -s); any exact
check failing aborts the test through a plain assert.
"""

import random
import time
from fractions import Fraction as F

from bianchi import (
    GroupElem,
    Point,
    ProjPoint,
    certificate_bound,
    context,
    count_principal_points,
    fit_growth,
    in_fundamental_domain,
    intricacy_bound_sq,
    iter_bounded_elements,
    point_complexity_bound,
    reduce_form,
    reduce_point,
    sandwich_check,
    sharpness_witness,
    solve_bezout_bounded,
)
from bianchi.counting import CountRow, CountTable, _scan_columns
from bianchi.hermitian import act, is_reduced
from helpers import random_coprime_pair, random_definite_form, random_group_elem
from oracles import exhaustive_group_counts, quaternion_apply

REDUCTION_DS = (1, 2, 3, 5, 7, 11, 19)
BEZOUT_DS = (1, 2, 3, 5, 7, 11)
FORM_DS = (1, 2, 3, 5)
GROWTH_DS = (1, 2, 3)
GROWTH_GRID = [16, 36, 64, 100, 144, 196, 256, 324, 400, 484, 576]
SLOPE_WINDOW = (3.5, 4.5)


def _sample_point(ctx, rng) -> Point:
    # |z| <= 10 by exact rejection, s anywhere in [1/100, 100]
    while True:
        z = ctx.field(
            F(rng.randint(-70, 70), rng.randint(1, 10)),
            F(rng.randint(-70, 70), rng.randint(1, 10)),
        )
        if z.norm_sq() <= 100:
            break
    s = F(rng.randint(1, 100), rng.randint(1, 100))
    return Point(z, s)


def _report(num: int, detail: str) -> None:
    print(f"CRITERION {num}: PASS — {detail}")


def test_criterion_01_reduction_soundness():
    rng = random.Random(101)
    start = time.time()
    checked = 0
    for d in REDUCTION_DS:
        ctx = context(d)
        for _ in range(500):
            p = _sample_point(ctx, rng)
            cert = reduce_point(ctx, p)
            assert cert.gamma.apply(p) == cert.image
            assert in_fundamental_domain(ctx, cert.image)
            checked += 1
    elapsed = time.time() - start
    assert elapsed < 60, f"runtime target exceeded: {elapsed:.1f}s"
    _report(1, f"{checked} reductions landed in the domain exactly ({elapsed:.1f}s)")


def test_criterion_02_certificate_bound():
    rng = random.Random(101)  # same stream: the same points as criterion 1
    checked = 0
    for d in REDUCTION_DS:
        ctx = context(d)
        bound = certificate_bound(ctx)
        for _ in range(500):
            p = _sample_point(ctx, rng)
            cert = reduce_point(ctx, p)
            assert cert.bound_ok
            dsq = p.complexity_sq()
            assert bound * (dsq * dsq) >= cert.height_sq
            checked += 1
    _report(2, f"height_sq <= (16C^2)^2 D^4 exactly on {checked} points")


def test_criterion_03_sharpness_family():
    ctx = context(1)
    for n in range(2, 101):
        sigma, p = sharpness_witness(ctx, n)
        assert sigma.apply(p) == Point(ctx.field(0, 0), F(n * n))
        assert sigma.height_sq() == (n * n - 1) ** 2
        assert p.complexity_sq() == 4 * n * n
        assert F(n * n - 1, 4 * n * n) > F(1, 8)
    _report(3, "witness identities exact for n = 2..100, ratio > 1/8")


def test_criterion_04_bounded_bezout_suite():
    rng = random.Random(404)
    checked = 0
    for d in BEZOUT_DS:
        ctx = context(d)
        for _ in range(1000):
            x, y = random_coprime_pair(ctx, rng)
            u, v = solve_bezout_bounded(x, y)
            assert x * u + y * v == ctx.one
            assert ctx.c_sq * y.norm() >= u.norm()
            assert ctx.c_sq * x.norm() >= v.norm()
            checked += 1
    _report(4, f"{checked} bounded Bezout pairs, identity and both bounds exact")


def test_criterion_05_form_reduction_suite():
    rng = random.Random(505)
    checked = 0
    for d in FORM_DS:
        ctx = context(d)
        bound = certificate_bound(ctx)
        for _ in range(1000):
            f = random_definite_form(ctx, rng)
            assert point_complexity_bound(f)
            res = reduce_form(ctx, f)
            assert is_reduced(ctx, res.reduced)
            assert res.reduced.discriminant() == f.discriminant()
            assert res.reduced.is_positive_definite()
            dsq = f.to_point().complexity_sq()
            assert bound * (dsq * dsq) >= res.certificate.height_sq
            hf = F(f.height_sq(), f.discriminant())
            assert bound * (hf * hf) >= res.certificate.height_sq
            checked += 1
    _report(5, f"{checked} forms reduced with both height bounds exact")


def test_criterion_06_equivariance():
    rng = random.Random(606)
    checked = 0
    for d in FORM_DS:
        ctx = context(d)
        for _ in range(500):
            g = random_group_elem(ctx, rng)
            f = random_definite_form(ctx, rng)
            assert act(g, f).to_point() == g.apply(f.to_point())
            checked += 1
    _report(6, f"point of act(g, f) equals g applied to point of f, {checked} pairs")


def test_criterion_07_counting_oracle():
    start = time.time()
    cases = [(1, 1), (1, 2), (1, 4), (2, 1), (2, 4), (3, 1), (3, 4)]
    for d, t_sq in cases:
        ctx = context(d)
        n, n_tilde, _, _ = _scan_columns(ctx, t_sq)
        n_oracle, n_tilde_oracle = exhaustive_group_counts(d, t_sq)
        assert n == n_oracle, (d, t_sq, n, n_oracle)
        assert n_tilde == n_tilde_oracle
    elapsed = time.time() - start
    assert elapsed < 300, f"oracle runtime target exceeded: {elapsed:.1f}s"
    _report(7, f"enumerations equal the exhaustive oracle on {len(cases)} cases ({elapsed:.1f}s)")


def test_criterion_08_schanuel_small_case():
    assert count_principal_points(context(1), 1) == 6
    _report(8, "six principal points of height 1 over d = 1")


def test_criterion_09_growth_law():
    for d in GROWTH_DS:
        ctx = context(d)
        start = time.time()
        rows = []
        for t_sq in GROWTH_GRID:
            rep = sandwich_check(ctx, t_sq)
            assert rep.lower_ok, f"lower sandwich failed at d={d}, T^2={t_sq}"
            assert rep.upper_ok, f"upper sandwich failed at d={d}, T^2={t_sq}"
            rows.append(CountRow(rep.t_sq, rep.n, rep.n_tilde, rep.x))
        fit = fit_growth(CountTable(d, rows))
        assert SLOPE_WINDOW[0] <= fit.slope_n <= SLOPE_WINDOW[1], (d, fit)
        elapsed = time.time() - start
        assert elapsed < 1800, f"runtime target exceeded for d={d}: {elapsed:.0f}s"
        _report(
            9,
            f"d={d}: slope {fit.slope_n:.3f} in [3.5, 4.5], sandwich exact on "
            f"{len(GROWTH_GRID)} heights ({elapsed:.0f}s)",
        )


def test_criterion_10_action_formula_cross_check():
    rng = random.Random(1010)
    checked = 0
    for d in FORM_DS:
        ctx = context(d)
        for _ in range(500):
            m = random_group_elem(ctx, rng)
            z = ctx.field(
                F(rng.randint(-40, 40), rng.randint(1, 8)),
                F(rng.randint(-40, 40), rng.randint(1, 8)),
            )
            p = Point(z, F(rng.randint(1, 60), rng.randint(1, 60)))
            assert m.apply(p) == quaternion_apply(m, p)
            checked += 1
    _report(10, f"coordinate formula equals the quaternion oracle on {checked} cases")


def test_criterion_11_intricacy_spot_check():
    rng = random.Random(1111)
    ctx = context(1)
    done = 0
    while done < 20:
        z = ctx.field(
            F(rng.randint(-12, 12), rng.randint(1, 4)),
            F(rng.randint(-12, 12), rng.randint(1, 4)),
        )
        p = Point(z, F(rng.randint(1, 16), rng.randint(1, 16)))
        cert = reduce_point(ctx, p)
        if cert.height_sq > 100:
            continue
        done += 1
        assert intricacy_bound_sq(ctx, p) == cert.height_sq
        # exhaustive search: the smallest height whose element lands in the
        # domain must exist and not exceed the certificate height
        best = None
        bound = 4
        while best is None:
            bound = min(max(bound * 4, 4), cert.height_sq)
            for m in sorted(
                iter_bounded_elements(ctx, bound), key=lambda g: g.height_sq()
            ):
                if in_fundamental_domain(ctx, m.apply(p)):
                    best = m.height_sq()
                    break
            if bound >= cert.height_sq:
                break
        assert best is not None, "certificate element itself must qualify"
        assert best <= cert.height_sq
    _report(11, "exhaustive search confirms 20 certificates bound the intricacy")
