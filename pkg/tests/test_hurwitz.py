"""Character tables, monotone walk counts, Weingarten sums, transitions."""
import random
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial, prod

import pytest

from fsmaps.hurwitz import (
    FS_FROM_ORDINARY,
    MomentVector,
    NLaurent,
    ORDINARY_FROM_FS,
    SIMPLE,
    STRICT,
    WEAK,
    aut_size,
    cayley_oracle,
    char_table,
    class_size,
    connected_hurwitz,
    content_eval,
    gue_cumulant_genus,
    gue_entry_moment,
    gue_moment,
    gue_moment_series,
    hook_dimension,
    hurwitz_number,
    partitions,
    schur_at_ones,
    transition,
    weingarten,
    weingarten_class,
)


def test_partition_helpers():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert class_size((2, 2)) == 3
    assert aut_size((2, 2)) == 8
    for total in range(1, 7):
        for mu in partitions(total):
            assert class_size(mu) * aut_size(mu) == factorial(total)
    assert sum(class_size(mu) for mu in partitions(6)) == factorial(6)


def test_small_character_values():
    t2 = char_table(2)
    assert [t2.chi((2,), m) for m in t2.parts] == [1, 1]
    assert [t2.chi((1, 1), m) for m in t2.parts] == [-1, 1]
    assert char_table(3).chi((2, 1), (3,)) == -1
    assert char_table(4).dimension((2, 2)) == 2 == hook_dimension((2, 2))


def test_character_rows_with_known_formulas():
    # trivial, sign, and standard representation rows have closed values
    size = 5
    table = char_table(size)
    for mu in table.parts:
        fixed = sum(1 for p in mu if p == 1)
        assert table.chi((size,), mu) == 1
        assert table.chi((1,) * size, mu) == (-1) ** (size - len(mu))
        assert table.chi((size - 1, 1), mu) == fixed - 1


def test_hook_dimensions_match_identity_column():
    for size in range(1, 8):
        table = char_table(size)
        for lam in table.parts:
            assert table.dimension(lam) == hook_dimension(lam)


def test_orthogonality_both_directions():
    for size in (4, 6, 8):
        table = char_table(size)
        parts = table.parts
        for a in parts:
            for b in parts:
                row = sum(class_size(m) * table.chi(a, m) * table.chi(b, m)
                          for m in parts)
                assert row == (factorial(size) if a == b else 0)
        for m1 in parts:
            for m2 in parts:
                col = sum(table.chi(lam, m1) * table.chi(lam, m2)
                          for lam in parts)
                want = factorial(size) // class_size(m1) if m1 == m2 else 0
                assert col == want


def test_char_table_cap():
    with pytest.raises(ValueError, match="exceeds cap"):
        char_table(11)


def test_content_eval_examples():
    assert content_eval("e", 1, (2,)) == 1
    assert content_eval("e", 1, (1, 1)) == -1
    assert content_eval("e", 2, (2,)) == 0
    for k in range(6):
        assert content_eval("h", k, (2,)) == 1
    # both families against direct monomial sums on the contents of (3, 1)
    values = [0, 1, 2, -1]
    for k in range(5):
        e_brute = sum(prod(c) for c in combinations(values, k))
        h_brute = sum(prod(c) for c in combinations_with_replacement(values, k))
        assert content_eval("e", k, (3, 1)) == e_brute
        assert content_eval("h", k, (3, 1)) == h_brute
    assert content_eval("p", 0, (3, 1)) == 1
    assert content_eval("p", 2, (3, 1)) == 6
    with pytest.raises(ValueError, match="unknown content kind"):
        content_eval("m", 1, (2,))


def test_hurwitz_number_anchors():
    for total in range(1, 6):
        for mu in partitions(total):
            for lam in partitions(total):
                want = Fraction(1, aut_size(mu)) if mu == lam else 0
                assert hurwitz_number(STRICT, 0, mu, lam) == want
    assert hurwitz_number(STRICT, 1, (1, 1), (2,)) == Fraction(1, 2)
    for k in range(5):
        assert hurwitz_number(WEAK, k, (2,), (1, 1)) == Fraction(1 - (-1) ** k, 4)
    with pytest.raises(ValueError, match="sizes differ"):
        hurwitz_number(STRICT, 1, (2,), (3,))


def test_walk_oracle_spot_values():
    assert cayley_oracle(STRICT, 0, (2,), (2,)) == Fraction(1, 2)
    assert cayley_oracle(STRICT, 1, (1, 1), (2,)) == Fraction(1, 2)
    for k in range(5):
        assert cayley_oracle(WEAK, k, (2,), (1, 1)) == Fraction(1 - (-1) ** k, 4)
    with pytest.raises(ValueError, match="walk oracle limited"):
        cayley_oracle(STRICT, 1, (7,), (7,))
    with pytest.raises(ValueError, match="walk oracle limited"):
        cayley_oracle(WEAK, 6, (2,), (2,))
    with pytest.raises(ValueError, match="unknown walk kind"):
        cayley_oracle("loose", 1, (2,), (2,))


def test_walk_oracle_matches_characters():
    for total in range(1, 6):
        parts = partitions(total)
        for kind in (STRICT, WEAK):
            for k in range(4):
                for lam in parts:
                    for mu in parts:
                        assert cayley_oracle(kind, k, mu, lam) == \
                            hurwitz_number(kind, k, mu, lam), (kind, k, mu, lam)
    for k in range(4):
        for lam in partitions(4):
            for mu in partitions(4):
                assert cayley_oracle(SIMPLE, k, mu, lam) == \
                    hurwitz_number(SIMPLE, k, mu, lam)


def test_schur_at_ones():
    big_n = Fraction(7)
    assert schur_at_ones((1,), big_n) == 7
    assert schur_at_ones((2,), big_n) == Fraction(7 * 8, 2)
    assert schur_at_ones((1, 1), big_n) == Fraction(7 * 6, 2)
    with pytest.raises(ValueError, match="content pole"):
        schur_at_ones((1, 1, 1), Fraction(2))


def test_weingarten_closed_forms():
    assert weingarten(1, (1,), Fraction(9)) == Fraction(1, 9)
    for big_n in (Fraction(3), Fraction(7), Fraction(11, 2)):
        assert weingarten(2, (1, 1), big_n) == 1 / (big_n**2 - 1)
        assert weingarten(2, (2,), big_n) == -1 / (big_n * (big_n**2 - 1))
        denom = big_n * (big_n**2 - 1) * (big_n**2 - 4)
        assert weingarten(3, (1, 1, 1), big_n) == (big_n**2 - 2) / denom
        assert weingarten(3, (2, 1), big_n) == -big_n / denom
        assert weingarten(3, (3,), big_n) == 2 / denom
    with pytest.raises(ValueError, match="content pole"):
        weingarten(2, (1, 1), 1)
    with pytest.raises(ValueError, match="not a partition"):
        weingarten(2, (3,), Fraction(5))


def test_weingarten_class_reproduces_distinct_cycle_moments():
    # pairing the class kernel against GUE trace moments must land on
    # the delta rule N^(-L/2) for all-two shapes, at exact sample N
    for big_n in (Fraction(7), Fraction(11, 2)):
        for total in (2, 4):
            for lam in partitions(total):
                direct = sum(
                    (weingarten_class(total, mu, lam, big_n)
                     * gue_moment(mu, big_n) for mu in partitions(total)),
                    Fraction(0))
                want = big_n ** Fraction(-total // 2) \
                    if all(p == 2 for p in lam) else Fraction(0)
                assert direct == want, (lam, big_n)


def test_nlaurent_arithmetic():
    a = NLaurent({0: Fraction(1), 2: Fraction(3)}, 5)
    b = NLaurent({-1: Fraction(2), 1: Fraction(1)}, 5)
    assert (a + b).coeffs == {-1: 2, 0: 1, 1: 1, 2: 3}
    ab = a * b
    # b carries a positive power, so only powers <= 4 survive honestly
    assert ab.cutoff == 4
    assert ab.coeffs == {-1: 2, 1: 7, 3: 3}
    assert a.shift(2).coeffs == {2: 1, 4: 3}
    assert a.shift(2).cutoff == 7
    with pytest.raises(ValueError):
        a.coeff(6)
    with pytest.raises(ValueError):
        a.truncate(9)
    assert a.truncate(2).coeffs == {0: 1, 2: 3}
    assert NLaurent.const(5).coeff(0) == 5
    assert a.agrees_with(NLaurent({0: Fraction(1), 2: Fraction(3), 7: Fraction(9)}, 6))


def test_content_series_inverse():
    # sum_k e_k N^-k times sum_k (-1)^k h_k N^-k collapses to 1
    cutoff = 10
    one = NLaurent.const(1, cutoff)
    for total in range(1, 7):
        for nu in partitions(total):
            es = NLaurent(
                {k: content_eval("e", k, nu) for k in range(total + 1)}, 10**9)
            hs = NLaurent(
                {k: (-1) ** k * content_eval("h", k, nu)
                 for k in range(cutoff + 1)}, cutoff)
            assert (es * hs).agrees_with(one), nu


def test_transition_worked_example():
    mv = MomentVector(2, {
        (2,): gue_moment_series((2,)),
        (1, 1): gue_moment_series((1, 1)),
    })
    out = transition(FS_FROM_ORDINARY, mv, 12)
    assert out.get((2,)).coeffs == {1: 1}
    assert out.get((2,)).coeff(7) == 0
    assert out.get((1, 1)).is_zero()


def test_transition_single_box():
    mv = MomentVector(1, {(1,): NLaurent({-1: Fraction(5), 3: Fraction(2)}, 10**9)})
    out = transition(FS_FROM_ORDINARY, mv, 9)
    assert out.get((1,)).coeffs == {0: 5, 4: 2}


def test_transition_round_trip_random():
    rng = random.Random(20260822)
    for total in (2, 3, 4):
        cutoff = 8
        table = {}
        for mu in partitions(total):
            coeffs = {
                k: Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                for k in range(-2, 5)
            }
            table[mu] = NLaurent(coeffs, 10**9)
        mv = MomentVector(total, table)
        fs = transition(FS_FROM_ORDINARY, mv, cutoff + total)
        back = transition(ORDINARY_FROM_FS, fs, cutoff)
        for mu in partitions(total):
            got = back.get(mu)
            assert got.cutoff >= cutoff
            assert got.agrees_with(mv.get(mu).truncate(cutoff)), (total, mu)
    with pytest.raises(ValueError, match="unknown transition direction"):
        transition("sideways", mv, 4)


def test_gue_moments():
    big_n = Fraction(6)
    assert gue_moment((2,), big_n) == 6
    assert gue_moment((1, 1), big_n) == 1
    assert gue_moment((3,), big_n) == 0
    assert gue_moment((2, 2), big_n) == 38  # N^2 + 2 at N = 6
    assert gue_moment_series((6,)).coeffs == {-1: 5, 1: 10}
    with pytest.raises(ValueError, match="capped"):
        gue_moment((14,), big_n)


def test_gue_entry_moments_follow_delta_rule():
    assert gue_entry_moment((2,)).coeffs == {1: 1}
    assert gue_entry_moment((2, 2)).coeffs == {2: 1}
    assert gue_entry_moment((2, 2, 2)).coeffs == {3: 1}
    assert gue_entry_moment((4,)).is_zero()
    assert gue_entry_moment((2, 1, 1)).is_zero()
    assert gue_entry_moment((3,)).is_zero()


def test_connected_anchors():
    assert connected_hurwitz((2,), 0) == Fraction(1, 2)
    assert connected_hurwitz((2,), 1) == 0
    # two two-stars glue into a connected sphere in two ways
    assert connected_hurwitz((2, 2), 0) == Fraction(1, 4)
    assert aut_size((2, 2)) * connected_hurwitz((2, 2), 0) == \
        gue_cumulant_genus((2, 2))[0]
    assert connected_hurwitz((6,), 0) == Fraction(5, 6)
    assert connected_hurwitz((6,), 1) == Fraction(5, 3)
    assert connected_hurwitz((3,), 0) == 0


def test_connected_against_census_small():
    for total in (2, 4, 6):
        for mu in partitions(total):
            if any(p % 2 for p in mu):
                continue
            census = gue_cumulant_genus(mu)
            for genus in range(2):
                lhs = aut_size(mu) * connected_hurwitz(mu, genus)
                assert lhs == census.get(genus, Fraction(0)), (mu, genus)


def test_connected_with_supplied_table():
    def e_table(sub, k):
        return hurwitz_number(STRICT, k, sub, (2,) * (sum(sub) // 2))
    for mu in ((2, 2), (4, 2), (6,)):
        for genus in range(2):
            assert connected_hurwitz(mu, genus, e_table) == \
                connected_hurwitz(mu, genus)

    def broken(sub, k):
        raise KeyError((sub, k))
    with pytest.raises(KeyError):
        connected_hurwitz((2, 2), 0, broken)
    with pytest.raises(ValueError, match="genus must be nonnegative"):
        connected_hurwitz((2,), -1)
