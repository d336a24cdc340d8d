from fractions import Fraction as F

import pytest

from bianchi import (
    CountRow,
    CountTable,
    GroupElem,
    ProjPoint,
    build_table,
    context,
    count_bounded_elements,
    count_column_dominant,
    count_principal_points,
    fit_growth,
    iter_bounded_elements,
    lift,
    max_height_sq_within,
    sandwich_check,
)
from oracles import exhaustive_group_counts, exhaustive_point_count


def test_counts_match_exhaustive_oracle():
    for d, t_sq in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (5, 2), (7, 2)]:
        ctx = context(d)
        n, nt = exhaustive_group_counts(d, t_sq)
        assert count_bounded_elements(ctx, t_sq) == n
        assert count_column_dominant(ctx, t_sq) == nt
        assert sum(1 for _ in iter_bounded_elements(ctx, t_sq)) == n


def test_counts_with_workers_agree():
    ctx = context(1)
    assert count_bounded_elements(ctx, 9, workers=2) == count_bounded_elements(ctx, 9)


def test_identity_always_counted():
    for d in (1, 2, 3, 5, 11):
        assert count_bounded_elements(context(d), 1) >= 1
    with pytest.raises(ValueError):
        count_bounded_elements(context(1), 0)


def test_point_count_examples():
    assert count_principal_points(context(1), 1) == 6
    assert count_principal_points(context(2), 1) == 4


def test_point_count_matches_orbit_oracle():
    for d, t_sq in [(1, 1), (1, 4), (2, 4), (3, 2), (5, 4)]:
        assert count_principal_points(context(d), t_sq) == exhaustive_point_count(d, t_sq)


def test_enumerated_set_is_closed_under_inverse_transpose():
    for d, t_sq in [(1, 2), (2, 4), (3, 2)]:
        ctx = context(d)
        elems = set(iter_bounded_elements(ctx, t_sq))
        for m in elems:
            assert m.inverse() in elems
            assert m.transpose() in elems


def test_column_dominant_membership():
    for d, t_sq in [(1, 2), (2, 4)]:
        ctx = context(d)
        count = 0
        for m in iter_bounded_elements(ctx, t_sq):
            col = max(m.alpha.norm(), m.gamma.norm())
            if m.height_sq() == col:
                count += 1
                assert m.first_column().height_sq() == m.height_sq()
        assert count == count_column_dominant(ctx, t_sq)


def test_connecting_element_bound():
    # two elements with the same boundary column and column-dominant height
    # differ by an upper-triangular element with |mu|^2 <= 4
    for d, t_sq in [(1, 2), (2, 4), (3, 2)]:
        ctx = context(d)
        groups: dict = {}
        for m in iter_bounded_elements(ctx, t_sq):
            if m.height_sq() != max(m.alpha.norm(), m.gamma.norm()):
                continue
            key = None
            for other_key, bucket in groups.items():
                if m.first_column() == bucket[0].first_column():
                    key = other_key
                    break
            if key is None:
                groups[len(groups)] = [m]
            else:
                groups[key].append(m)
        for bucket in groups.values():
            for a in bucket:
                for b in bucket:
                    conn = a.inverse().compose(b)
                    assert conn.gamma.is_zero()
                    assert conn.beta.norm() <= 4


def test_lift_examples():
    ctx = context(1)
    assert lift(ctx, ProjPoint(ctx.one, ctx.zero)) == GroupElem.identity(1)
    assert lift(ctx, ProjPoint(ctx.zero, ctx.one)) == GroupElem.inversion(1)
    m = lift(ctx, ProjPoint(ctx.alg(3), ctx.alg(2)))
    assert m.first_column() == ProjPoint(ctx.alg(3), ctx.alg(2))
    assert ctx.c_sq * ProjPoint(ctx.alg(3), ctx.alg(2)).height_sq() >= m.height_sq()


def test_lift_section_property(rng):
    from helpers import random_coprime_pair

    for d in (1, 2, 3, 5):
        ctx = context(d)
        for _ in range(40):
            x, y = random_coprime_pair(ctx, rng, span=6, nonzero=False)
            q = ProjPoint(x, y)
            m = lift(ctx, q)
            assert m.first_column() == q
            assert ctx.c_sq * q.height_sq() >= m.height_sq()
            # non-coprime representatives of the same point lift identically
            k = ctx.alg(2, 1)
            assert lift(ctx, ProjPoint(x * k, y * k)).first_column() == q


def test_lift_rejects_nonprincipal():
    c5 = context(5)
    with pytest.raises(ValueError):
        lift(c5, ProjPoint(c5.alg(2), c5.alg(1, 1)))


def test_shrunken_height_cutoff():
    for d in (1, 2, 3, 5):
        ctx = context(d)
        for t_sq in (1, 4, 25, 100):
            n_star = max_height_sq_within(ctx, t_sq)
            assert ctx.c_sq * n_star <= t_sq
            assert ctx.c_sq * (n_star + 1) > t_sq


def test_sandwich_examples():
    rep = sandwich_check(context(1), 25)
    assert rep.lower_ok and rep.upper_ok
    rep = sandwich_check(context(2), 16)
    assert rep.lower_ok and rep.upper_ok
    rep = sandwich_check(context(3), 1)
    assert rep.n >= 1 and rep.lower_ok and rep.upper_ok


def test_monotonicity():
    for d in (1, 2):
        ctx = context(d)
        table = build_table(ctx, [1, 2, 4, 9, 16])
        ns = [r.n for r in table.rows]
        nts = [r.n_tilde for r in table.rows]
        xs = [r.x for r in table.rows]
        assert ns == sorted(ns) and nts == sorted(nts) and xs == sorted(xs)
        for r in table.rows:
            assert r.n <= 4 * r.n_tilde


def test_fit_growth_synthetic():
    rows = [CountRow(t * t, t**4, t**4, t**4) for t in (2, 3, 4, 5, 6)]
    fit = fit_growth(CountTable(1, rows))
    assert abs(fit.slope_n - 4.0) < 1e-9
    assert abs(fit.slope_x - 4.0) < 1e-9
    rows = [CountRow(t * t, 7 * t**4, t**4, 3 * t**4) for t in (2, 3, 4, 5, 6)]
    fit = fit_growth(CountTable(1, rows))
    assert abs(fit.slope_n - 4.0) < 1e-9
    with pytest.raises(ValueError):
        fit_growth(CountTable(1, rows[:3]))
    shuffled = [rows[0], rows[2], rows[1], rows[3], rows[4]]
    with pytest.raises(ValueError):
        fit_growth(CountTable(1, shuffled))


def test_small_growth_fit_is_sane():
    ctx = context(1)
    table = build_table(ctx, [16, 25, 36, 49, 64])
    fit = fit_growth(table)
    assert 3.0 < fit.slope_n < 5.0
    assert table.fitted_exponent == fit.slope_n
