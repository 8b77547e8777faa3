"""Cross-check suites for the map enumeration pipeline.

Each suite recomputes one slice of the package through at least two
independent routes and reports per-check results.  The reports are plain
dicts so the command line tool can serialize them directly:

    {"suite": name, "passed": bool, "checks": [
        {"name": str, "passed": bool, "detail": str}, ...]}

A failing check carries the first discrepancy found in its detail field.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cache

from . import reference_tables as rt
from . import transforms as tr
from .closed import (
    bernardi_fusy,
    cylinder_11_series,
    discriminant_root,
    fully_simple_torus_form,
    fully_simple_torus_row,
    fully_simple_torus_series,
    ordinary_torus_form,
    ordinary_torus_row,
    ordinary_torus_series,
    phi,
    phi_from_coefficients,
)
from .curve import DiskCurve, solve_disk_curve
from .hurwitz import (
    MomentVector,
    NLaurent,
    FS_FROM_ORDINARY,
    ORDINARY_FROM_FS,
    STRICT,
    WEAK,
    aut_size,
    cayley_oracle,
    char_table,
    class_size,
    connected_hurwitz,
    content_eval,
    gue_cumulant_genus,
    gue_moment,
    hurwitz_number,
    partitions,
    transition,
    weingarten_class,
)
from .oracle import CONNECTED, FULLY_SIMPLE, ORDINARY as MAP_ORDINARY, \
    SIMPLE as MAP_SIMPLE, enumerate_maps
from .recursion import AmplitudeCache, EXCHANGED, ORDINARY
from .series import USeries, t_coeffs
from .zpoly import LocalSeries

__all__ = [
    "SUITES",
    "run_suite",
    "quad_curve",
    "quad_cache",
    "sparse_potential",
    "composition_is_identity",
    "pants_identity_holds",
    "C_SERIES",
]

SUITES = ("tables", "bijections", "closed-forms", "oracle", "hurwitz", "all")

# first coefficients of the quadrangulation radius c(t)
C_SERIES = [
    Fraction(1),
    Fraction(3, 2),
    Fraction(63, 8),
    Fraction(891, 16),
    Fraction(57915, 128),
]

_ORDER = 18


@cache
def quad_curve(order: int = _ORDER) -> DiskCurve:
    """The quadrangulation disk curve, shared across suites."""
    return solve_disk_curve({4: USeries.t(order)}, order)


@cache
def quad_cache(order: int = _ORDER) -> AmplitudeCache:
    return AmplitudeCache(quad_curve(order))


def sparse_potential(rng: random.Random, order: int) -> dict:
    """A random potential with up to three small rational weights."""
    potential = {}
    for deg in rng.sample((3, 4, 5), rng.randint(1, 3)):
        q = Fraction(rng.randint(1, 4), rng.randint(5, 11))
        potential[deg] = USeries.t(order).scale(q)
    return potential


def _check(name: str, passed: bool, detail: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "detail": "" if passed else detail}


def _rows_equal(name: str, pairs) -> dict:
    for label, got, want in pairs:
        got = [Fraction(v) for v in got]
        want = [Fraction(v) for v in want]
        if got != want:
            return _check(name, False, f"{label}: got {got}, want {want}")
    return _check(name, True)


def _local_agrees(a: LocalSeries, b: LocalSeries) -> bool:
    h = min(a.horizon, b.horizon)
    lo = min(a.val, b.val, h)
    return all(a.coeff(m).agrees_with(b.coeff(m)) for m in range(lo, h))


# -- tables ---------------------------------------------------------------


def _boundary_tables(curve: DiskCurve, k_max: int = 9) -> dict:
    disks = tr.ordinary_disks(curve, 2 * k_max)
    fsd = tr.fully_simple_disks(disks)
    cyl = tr.ordinary_cylinders(curve, k_max)
    simple = tr.simple_cylinders(cyl, fsd, k_max)
    mixed = tr.mixed_cylinders(cyl, fsd, k_max)
    fscyl = tr.fully_simple_cylinders(simple, fsd, k_max)
    return {"W": disks, "X": fsd, "W2": cyl, "Y2": simple,
            "Y11": mixed, "X2": fscyl}


def _tables_checks() -> list[dict]:
    cv = quad_curve()
    tabs = _boundary_tables(cv)
    checks = [
        _rows_equal("ordinary disk rows", (
            (l, tabs["W"].row((l,), rt.Q_MAX), row)
            for l, row in rt.ORDINARY_DISKS.items())),
        _rows_equal("fully simple disk rows", (
            (k, tabs["X"].row((k,), rt.Q_MAX), row)
            for k, row in rt.FULLY_SIMPLE_DISKS.items())),
        _rows_equal("ordinary cylinder rows", (
            (key, tabs["W2"].row(key, rt.Q_MAX), row)
            for key, row in rt.ORDINARY_CYLINDERS.items())),
        _rows_equal("mixed cylinder rows", (
            (key, tabs["Y11"].row(key, rt.Q_MAX), row)
            for key, row in rt.MIXED_CYLINDERS.items())),
        _rows_equal("simple cylinder rows", (
            (key, tabs["Y2"].row(key, rt.Q_MAX), row)
            for key, row in rt.SIMPLE_CYLINDERS.items())),
        _rows_equal("fully simple cylinder rows", (
            (key, tabs["X2"].row(key, rt.Q_MAX), row)
            for key, row in rt.FULLY_SIMPLE_CYLINDERS.items())),
        _rows_equal("genus-1 ordinary rows", (
            (l, ordinary_torus_row(l, rt.Q_MAX), row)
            for l, row in rt.ORDINARY_TORI.items())),
        _rows_equal("genus-1 fully simple rows", (
            (l, fully_simple_torus_row(l, rt.Q_MAX), row)
            for l, row in rt.FULLY_SIMPLE_TORI.items())),
    ]
    rerun = tr.ordinary_cylinders(solve_disk_curve({4: USeries.t(_ORDER)}, _ORDER), 4)
    stable = all(
        rerun.row(key, rt.Q_MAX) == tabs["W2"].row(key, rt.Q_MAX)
        for key in ((4, 4), (3, 1), (2, 2)))
    checks.append(_check("recomputation is deterministic", stable,
                         "fresh curve produced different cylinder rows"))
    return checks


# -- bijections -----------------------------------------------------------


def composition_is_identity(curve: DiskCurve, l_max: int) -> bool:
    """X(W(x)) = x at large x, as the equivalent statement on power series.

    With W(x) = sum_l F_l x^(-l-1) and X(w) = Hhat(w)/w the claim is
    Hhat(W(x)) = x W(x); both sides live in v = 1/x.
    """
    disks = tr.ordinary_disks(curve, l_max)
    hs_tab = tr.fully_simple_disks(disks)
    fs = [disks.table[(l,)] for l in range(l_max + 1)]
    hs = [hs_tab.table[(k,)] for k in range(l_max + 1)]
    w_of_x = LocalSeries(1, fs, l_max + 2)
    hhat = LocalSeries(0, hs, l_max + 1)
    return _local_agrees(hhat.compose(w_of_x), LocalSeries(0, fs, l_max + 1))


def _bijection_checks(curves: int = 20) -> list[dict]:
    cv = quad_curve()
    tabs = _boundary_tables(cv)
    checks = [_check("functional inverse on the quadrangulation curve",
                     composition_is_identity(cv, 9))]

    rng = random.Random(916)
    bad = []
    for i in range(curves):
        potential = sparse_potential(rng, 16)
        cvi = solve_disk_curve(potential, 16)
        if not composition_is_identity(cvi, 8):
            bad.append((i, sorted(potential)))
    checks.append(_check(f"functional inverse on {curves} random potentials",
                         not bad, f"failing curves {bad}"))

    back = tr.ordinary_from_fully_simple(tabs["X"])
    round_trip = all(
        back.value((l,)).agrees_with(tabs["W"].value((l,)))
        for l in range(tabs["X"].cutoff + 1))
    checks.append(_check("disk round trip returns the ordinary table", round_trip))

    chain_bad = []
    for key in rt.SIMPLE_CYLINDERS:
        f = tabs["W2"].row(key, rt.Q_MAX)
        gm = tabs["Y11"].row(key, rt.Q_MAX)
        gs = tabs["Y2"].row(key, rt.Q_MAX)
        h = tabs["X2"].row(key, rt.Q_MAX)
        for q in range(rt.Q_MAX + 1):
            if not f[q] >= gm[q] >= gs[q] >= h[q] >= 0:
                chain_bad.append((key, q, (f[q], gm[q], gs[q], h[q])))
    checks.append(_check("count dominance ordinary >= mixed >= simple >= fully simple",
                         not chain_bad, f"first violations {chain_bad[:3]}"))

    degenerate = all(
        tabs["Y11"].value((l, other)).agrees_with(tabs["W2"].value((l, other)))
        and tabs["Y2"].value((l, other)).agrees_with(tabs["Y11"].value((other, l)))
        for l in (1, 2) for other in range(1, 10 - l, 2))
    checks.append(_check("length one and two boundaries are already simple",
                         degenerate))

    pairs = []
    for k, row in rt.FULLY_SIMPLE_DISKS.items():
        got = [bernardi_fusy(q, (k,)).rat for q in range(rt.Q_MAX + 1)]
        pairs.append(((k,), got, row))
    for key, row in rt.FULLY_SIMPLE_CYLINDERS.items():
        got = [bernardi_fusy(q, key).rat for q in range(rt.Q_MAX + 1)]
        pairs.append((key, got, row))
    checks.append(_rows_equal("closed product formula matches the fully simple tables",
                              pairs))
    return checks


# -- closed forms ---------------------------------------------------------


def _disk_closed_form_checks() -> list[dict]:
    cv = quad_curve()
    c = cv.gamma
    t = USeries.t(cv.order)
    s = discriminant_root(cv.order)
    ok_c = t_coeffs(c, 4) == C_SERIES
    ok_sq = (c * c * t.scale(6) + s).agrees_with(USeries.const(1, cv.order))
    detail = f"c(t) starts {t_coeffs(c, 4)}"
    checks = [_check("radius series 6 t c^2 = 1 - sqrt(1 - 12t)",
                     ok_c and ok_sq, detail)]
    w = cv.w_zpoly
    ok_w = (w.lo == -3 and w.hi == -1 and w.coeff(-2).is_zero()
            and w.coeff(-1).agrees_with(c.inverse())
            and w.coeff(-3).agrees_with(-(t * c * c * c))
            and cv.alpha.is_zero())
    checks.append(_check("w(z) = 1/(cz) - t c^3/z^3 identically", ok_w))
    return checks


def pants_identity_holds(curve: DiskCurve, cache: AmplitudeCache | None = None,
                         triples=None) -> tuple[bool, str]:
    """Both three-boundary amplitudes against the derivative formula.

    The sum of the two (0, 3) amplitudes equals
    sum_i d_i [ B(z_i, z_j) B(z_i, z_k) / (dx(z_i) dw(z_i)) ],
    checked at exact rational sample points with B the pair kernel
    dz dz' / (z - z')^2.
    """
    if cache is None:
        cache = AmplitudeCache(curve)
    side_a = cache.amplitude(ORDINARY, 0, 3)
    side_b = cache.amplitude(EXCHANGED, 0, 3)
    xp = curve.x_zpoly.derivative()
    wp = curve.w_zpoly.derivative()
    xpp = xp.derivative()
    wpp = wp.derivative()
    if triples is None:
        triples = (
            (Fraction(2), Fraction(3), Fraction(5)),
            (Fraction(1, 2), Fraction(7), Fraction(-3)),
            (Fraction(5, 2), Fraction(-7, 3), Fraction(4)),
        )
    for pts in triples:
        lhs = side_a.eval_at(pts) + side_b.eval_at(pts)
        rhs = USeries.zero(curve.order)
        for i in range(3):
            a = pts[i]
            b, c = (pts[j] for j in range(3) if j != i)
            at = USeries.const(a, curve.order)
            pa = xp.eval_at(at) * wp.eval_at(at)
            ppa = xpp.eval_at(at) * wp.eval_at(at) + xp.eval_at(at) * wpp.eval_at(at)
            inv = pa.inverse()
            dab, dac = a - b, a - c
            rhs = rhs + (-(ppa * inv * inv)).scale(1 / (dab**2 * dac**2)) \
                + inv.scale(Fraction(-2) / (dab**3 * dac**2)
                            + Fraction(-2) / (dab**2 * dac**3))
        if not lhs.agrees_with(rhs):
            return False, f"mismatch at sample points {pts}"
    return True, ""


def _closed_form_checks() -> list[dict]:
    checks = _disk_closed_form_checks()
    cv = quad_curve()
    amps = quad_cache()

    ok_o = amps.amplitude(ORDINARY, 1, 1).rational_form().equals(
        ordinary_torus_form(cv))
    ok_f = amps.amplitude(EXCHANGED, 1, 1).rational_form().equals(
        fully_simple_torus_form(cv))
    checks.append(_check("torus amplitudes match their closed rational forms",
                         ok_o and ok_f,
                         f"ordinary ok: {ok_o}, exchanged ok: {ok_f}"))

    lhs = ordinary_torus_series(2, _ORDER)
    rhs = cylinder_11_series(_ORDER) + fully_simple_torus_series(2, _ORDER)
    checks.append(_check(
        "two-boundary torus splits as the (1,1) cylinder plus its fully simple part",
        lhs.agrees_with(rhs)))

    tabs = _boundary_tables(cv, 6)
    deriv_bad = []
    for l in (2, 4, 6):
        f_row = tabs["W"].row((l,), rt.Q_MAX)
        pair_row = tabs["W2"].row((l, 4), rt.Q_MAX - 1)
        for q in range(rt.Q_MAX):
            if 4 * (q + 1) * f_row[q + 1] != pair_row[q]:
                deriv_bad.append((l, q))
    checks.append(_check("marking a quadrangle matches a length-four boundary",
                         not deriv_bad, f"failures at {deriv_bad}"))

    ok_pants, pants_detail = pants_identity_holds(cv, amps)
    checks.append(_check("three-boundary amplitudes sum to the derivative formula",
                         ok_pants, pants_detail))

    from .recursion import extract_fullysimple
    tri_bad = []
    triples = [(k1, k2, k3)
               for k1 in range(1, 5) for k2 in range(k1, 5)
               for k3 in range(k2, 5)]
    for key in triples:
        row = extract_fullysimple(cv, 0, key, 4, cache=amps)
        want = [bernardi_fusy(q, key).rat for q in range(5)]
        if row != want:
            tri_bad.append((key, row, want))
    checks.append(_check("three-boundary counts match the closed product formula",
                         not tri_bad, f"first failures {tri_bad[:2]}"))

    phi_bad = []
    for m in range(5):
        direct = t_coeffs(phi(m, _ORDER), 6)
        if phi_from_coefficients(m, 6) != direct:
            phi_bad.append(m)
    checks.append(_check("phi expansion agrees with its coefficient formula",
                         not phi_bad, f"failing m {phi_bad}"))
    return checks


# -- oracle ---------------------------------------------------------------


def _oracle_checks() -> list[dict]:
    checks = []
    census_pairs = []
    for q in range(3):
        cen = enumerate_maps((2,), (4,) * q)
        census_pairs.append((("F_2", q), [cen.count(0, MAP_ORDINARY, CONNECTED)],
                             [rt.ORDINARY_DISKS[2][q]]))
        census_pairs.append((("F^1_2", q), [cen.count(1, MAP_ORDINARY, CONNECTED)],
                             [rt.ORDINARY_TORI[2][q]]))
        cen2 = enumerate_maps((1, 1), (4,) * q)
        census_pairs.append((("H_11", q), [cen2.count(0, FULLY_SIMPLE, CONNECTED)],
                             [rt.FULLY_SIMPLE_CYLINDERS[(1, 1)][q]]))
    for q in range(2):
        cen = enumerate_maps((2, 2), (4,) * q)
        census_pairs.append((("G_22", q), [cen.count(0, MAP_SIMPLE, CONNECTED)],
                             [rt.SIMPLE_CYLINDERS[(2, 2)][q]]))
    checks.append(_rows_equal("half-edge censuses match the series tables",
                              census_pairs))

    odd_ok = all(
        enumerate_maps(bnd, degs).count(g, MAP_ORDINARY, CONNECTED) == 0
        for bnd, degs in (((3,), ()), ((2, 1), (4,)), ((5,), (4,)))
        for g in (0, 1))
    checks.append(_check("odd half-edge totals admit no gluings", odd_ok))

    genus_ok = True
    detail = ""
    for q in range(2):
        cen = enumerate_maps((2, 2), (4,) * q)
        table = cen.genus_table(MAP_ORDINARY, CONNECTED)
        total = sum(table.values())
        by_counts = sum(cen.count(g, MAP_ORDINARY, CONNECTED)
                        for g in range(4))
        if total != by_counts:
            genus_ok = False
            detail = f"q={q}: {table} sums to {total}, counts give {by_counts}"
    checks.append(_check("genus tables are consistent with per-genus counts",
                         genus_ok, detail))
    return checks


# -- hurwitz --------------------------------------------------------------


def _hurwitz_checks() -> list[dict]:
    checks = []
    import math
    ortho_bad = []
    for size in range(1, 7):
        table = char_table(size)
        parts = table.parts
        for a in parts:
            for b in parts:
                got = sum(class_size(m) * table.chi(a, m) * table.chi(b, m)
                          for m in parts)
                if got != (math.factorial(size) if a == b else 0):
                    ortho_bad.append((size, a, b))
    checks.append(_check("character rows are orthogonal", not ortho_bad,
                         f"failures {ortho_bad[:3]}"))

    walk_bad = []
    for size in range(1, 6):
        parts = partitions(size)
        for kind in (STRICT, WEAK):
            for k in range(4):
                for mu in parts:
                    for lam in parts:
                        if cayley_oracle(kind, k, mu, lam) != \
                                hurwitz_number(kind, k, mu, lam):
                            walk_bad.append((kind, k, mu, lam))
    checks.append(_check("character sums match the transposition walk counts",
                         not walk_bad, f"failures {walk_bad[:3]}"))

    inv_bad = []
    one = NLaurent.const(1, 8)
    for total in range(1, 6):
        for nu in partitions(total):
            es = NLaurent({k: content_eval("e", k, nu)
                           for k in range(total + 1)}, 10**9)
            hs = NLaurent({k: (-1) ** k * content_eval("h", k, nu)
                           for k in range(9)}, 8)
            if not (es * hs).agrees_with(one):
                inv_bad.append(nu)
    checks.append(_check("content generating functions are mutually inverse",
                         not inv_bad, f"failures {inv_bad}"))

    size = 3
    cutoff = 6
    table = {mu: NLaurent({-1: Fraction(2), 0: Fraction(1, 3), 2: Fraction(5)},
                          10**9)
             for mu in partitions(size)}
    mv = MomentVector(size, table)
    back = transition(ORDINARY_FROM_FS, transition(FS_FROM_ORDINARY, mv,
                                                   cutoff + size), cutoff)
    trip_ok = all(back.get(mu).agrees_with(mv.get(mu).truncate(cutoff))
                  for mu in partitions(size))
    checks.append(_check("moment transitions invert each other", trip_ok))

    wg_bad = []
    for big_n in (Fraction(7), Fraction(11, 2)):
        for total in (2, 4):
            for lam in partitions(total):
                got = sum((weingarten_class(total, mu, lam, big_n)
                           * gue_moment(mu, big_n)
                           for mu in partitions(total)), Fraction(0))
                want = big_n ** Fraction(-total // 2) \
                    if all(p == 2 for p in lam) else Fraction(0)
                if got != want:
                    wg_bad.append((lam, big_n))
    checks.append(_check("Weingarten pairing lands on the distinct-index rule",
                         not wg_bad, f"failures {wg_bad}"))

    elsv_bad = []
    for total in (2, 4, 6):
        for mu in partitions(total):
            if any(p % 2 for p in mu):
                continue
            census = gue_cumulant_genus(mu)
            for genus in range(2):
                lhs = aut_size(mu) * connected_hurwitz(mu, genus)
                if lhs != census.get(genus, 0):
                    elsv_bad.append((mu, genus))
    checks.append(_check("connected walk counts match the gluing census",
                         not elsv_bad, f"failures {elsv_bad}"))
    return checks


_SUITE_RUNNERS = {
    "tables": _tables_checks,
    "bijections": _bijection_checks,
    "closed-forms": _closed_form_checks,
    "oracle": _oracle_checks,
    "hurwitz": _hurwitz_checks,
}


def run_suite(suite: str) -> dict:
    """Run one named suite ("all" chains every suite) and report."""
    if suite == "all":
        checks = []
        for name in SUITES[:-1]:
            checks.extend(_SUITE_RUNNERS[name]())
    elif suite in _SUITE_RUNNERS:
        checks = _SUITE_RUNNERS[suite]()
    else:
        raise ValueError(f"unknown verify suite {suite!r}; "
                         f"choose from {', '.join(SUITES)}")
    return {"suite": suite,
            "passed": all(c["passed"] for c in checks),
            "checks": checks}
