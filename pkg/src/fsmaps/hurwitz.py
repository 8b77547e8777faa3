"""Symmetric group side of the map enumeration: characters, monotone
transposition walks, Weingarten sums, and the moment transition.

Boundary data lives in partitions of L.  Double monotone Hurwitz numbers
are computed from characters evaluated on content multisets; a direct
walk enumeration over transposition sequences provides an independent
oracle on small symmetric groups.  The transition routines convert
between ordinary trace moments and distinct-index cycle moments as
truncated Laurent series in 1/N, and the GUE helpers supply exact test
data for both sides.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial, prod

from .zpoly import EXACT

STRICT = "strict"
WEAK = "weak"
SIMPLE = "simple"
_KINDS = (STRICT, WEAK, SIMPLE)

FS_FROM_ORDINARY = "fs-from-ordinary"
ORDINARY_FROM_FS = "ordinary-from-fs"

CHAR_CAP = 10
ORACLE_SIZE_CAP = 6
ORACLE_STEP_CAP = 5
GUE_CAP = 12

__all__ = [
    "STRICT",
    "WEAK",
    "SIMPLE",
    "FS_FROM_ORDINARY",
    "ORDINARY_FROM_FS",
    "CHAR_CAP",
    "partitions",
    "class_size",
    "aut_size",
    "cycle_type",
    "CharTable",
    "char_table",
    "content_eval",
    "hurwitz_number",
    "cayley_oracle",
    "schur_at_ones",
    "weingarten",
    "weingarten_class",
    "NLaurent",
    "MomentVector",
    "transition",
    "gue_moment",
    "gue_moment_series",
    "gue_entry_moment",
    "gue_cumulant_genus",
    "connected_hurwitz",
]


def _as_partition(parts) -> tuple[int, ...]:
    out = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p < 1 for p in out):
        raise ValueError("partition parts must be positive")
    return out


@cache
def partitions(total: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of total, parts weakly decreasing, largest first."""
    if total < 0:
        raise ValueError("cannot partition a negative total")

    def gen(rest: int, bound: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, bound), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(total, total))


def class_size(mu) -> int:
    """|C_mu|: permutations in S_|mu| with cycle type mu."""
    mu = _as_partition(mu)
    mult: dict[int, int] = {}
    for p in mu:
        mult[p] = mult.get(p, 0) + 1
    centralizer = prod(p**m * factorial(m) for p, m in mult.items())
    return factorial(sum(mu)) // centralizer


def aut_size(mu) -> int:
    """|Aut mu| = |mu|!/|C_mu|, the centralizer order of the class."""
    mu = _as_partition(mu)
    return factorial(sum(mu)) // class_size(mu)


# ---------------------------------------------------------------------------
# characters


def _beta_numbers(lam: tuple[int, ...]) -> tuple[int, ...]:
    length = len(lam)
    return tuple(lam[i] + (length - 1 - i) for i in range(length))


def _partition_from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    length = len(beta)
    lam = [beta[i] - (length - 1 - i) for i in range(length)]
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


@cache
def _character(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """chi_lam on the class mu, by removing one border strip per part."""
    if not mu:
        return 1
    k = mu[0]
    rest = mu[1:]
    beta = _beta_numbers(lam)
    occupied = set(beta)
    total = 0
    for b in beta:
        if b - k < 0 or b - k in occupied:
            continue
        height = sum(1 for other in beta if b - k < other < b)
        moved = [other for other in beta if other != b] + [b - k]
        total += (-1) ** height * _character(_partition_from_beta(moved), rest)
    return total


def _hooks(lam: tuple[int, ...]) -> list[list[int]]:
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    return [
        [lam[i] - (j + 1) + conj[j] - i for j in range(lam[i])]
        for i in range(len(lam))
    ]


def hook_dimension(lam) -> int:
    lam = _as_partition(lam)
    if not lam:
        return 1
    return factorial(sum(lam)) // prod(h for row in _hooks(lam) for h in row)


class CharTable:
    """Exact character table of S_L, rows and columns both partitions."""

    __slots__ = ("size", "parts", "_values")

    def __init__(self, size: int, parts: tuple, values: dict):
        self.size = size
        self.parts = parts
        self._values = values

    def chi(self, lam, mu) -> int:
        key = (_as_partition(lam), _as_partition(mu))
        try:
            return self._values[key]
        except KeyError:
            raise ValueError(f"not partitions of {self.size}: {key}") from None

    def dimension(self, lam) -> int:
        return self.chi(lam, (1,) * self.size)

    def __repr__(self):
        return f"CharTable(L={self.size}, {len(self.parts)} classes)"


def char_table(size: int, cap: int = CHAR_CAP) -> CharTable:
    """Build the S_size table; refuses sizes past cap since the partition
    count and strip recursion both blow up."""
    if size < 0:
        raise ValueError("symmetric group size must be nonnegative")
    if size > cap:
        raise ValueError(f"character table size {size} exceeds cap {cap}")
    parts = partitions(size)
    values = {(lam, mu): _character(lam, mu) for lam in parts for mu in parts}
    return CharTable(size, parts, values)


# ---------------------------------------------------------------------------
# content functions


def contents(nu) -> list[int]:
    """Multiset j - i over the cells of nu, rows and columns 1-based."""
    nu = _as_partition(nu)
    return [j - i for i, p in enumerate(nu) for j in range(p)]


def content_eval(kind: str, k: int, nu) -> Fraction:
    """Elementary, complete homogeneous, or power sum of the contents.

    Padding the multiset with zeros changes nothing here: e and h gain
    only zero-valued monomials, and the power sums skip k = 0 (the lone
    padding-sensitive case) by returning the empty-product value 1.
    """
    if k < 0:
        raise ValueError("symmetric function degree must be nonnegative")
    values = contents(nu)
    if kind == "e":
        if k > len(values):
            return Fraction(0)
        coeffs = [Fraction(1)] + [Fraction(0)] * k
        for v in values:
            for j in range(min(k, len(coeffs) - 1), 0, -1):
                coeffs[j] += v * coeffs[j - 1]
        return coeffs[k]
    if kind == "h":
        coeffs = [Fraction(1)] + [Fraction(0)] * k
        for v in values:
            for j in range(1, k + 1):
                coeffs[j] += v * coeffs[j - 1]
        return coeffs[k]
    if kind == "p":
        if k == 0:
            return Fraction(1)
        return Fraction(sum(v**k for v in values))
    raise ValueError(f"unknown content kind {kind!r}")


def _content_weight(kind: str, k: int, nu) -> Fraction:
    if kind == STRICT:
        return content_eval("e", k, nu)
    if kind == WEAK:
        return content_eval("h", k, nu)
    if kind == SIMPLE:
        return content_eval("p", 1, nu) ** k
    raise ValueError(f"unknown walk kind {kind!r}")


def hurwitz_number(kind: str, k: int, mu, lam) -> Fraction:
    """Double monotone Hurwitz number from the character sum.

    strict weights each representation by e_k of its contents, weak by
    h_k, simple by the k-th power of the content sum.  Normalized by
    1/(|Aut mu| |Aut lam|), matching the walk count of cayley_oracle.
    """
    mu = _as_partition(mu)
    lam = _as_partition(lam)
    if sum(mu) != sum(lam):
        raise ValueError("partition sizes differ")
    size = sum(mu)
    table = char_table(size)
    acc = Fraction(0)
    for nu in table.parts:
        weight = _content_weight(kind, k, nu)
        if weight:
            acc += table.chi(nu, mu) * weight * table.chi(nu, lam)
    return acc / (aut_size(mu) * aut_size(lam))


# ---------------------------------------------------------------------------
# transposition walk oracle


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        n, cur = 0, start
        while not seen[cur]:
            seen[cur] = True
            cur = perm[cur]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def _class_representative(lam: tuple[int, ...], size: int) -> tuple[int, ...]:
    perm = list(range(size))
    at = 0
    for part in lam:
        for i in range(part):
            perm[at + i] = at + (i + 1) % part
        at += part
    return tuple(perm)


@cache
def _walk_distribution(kind: str, k: int, lam: tuple[int, ...]) -> dict:
    """Count monotone transposition walks ending at a fixed lam-rep,
    keyed by the cycle type of the residual permutation.

    A walk is (tau_1, ..., tau_k) with larger legs increasing (strictly,
    weakly, or unconstrained); composing tau_1 o ... o tau_k o sigma to
    the representative pins sigma, so each walk is tallied once under
    the type of sigma.
    """
    size = sum(lam)
    rep = _class_representative(lam, size)
    counts: dict[tuple[int, ...], int] = {}

    def settle(pi: tuple[int, ...]) -> None:
        inv = [0] * size
        for i, image in enumerate(pi):
            inv[image] = i
        sigma = tuple(inv[r] for r in rep)
        t = cycle_type(sigma)
        counts[t] = counts.get(t, 0) + 1

    def walk(steps: int, floor: int, pi: tuple[int, ...]) -> None:
        if steps == k:
            settle(pi)
            return
        for leg in range(floor, size):
            for low in range(leg):
                nxt = list(pi)
                nxt[low], nxt[leg] = pi[leg], pi[low]
                if kind == STRICT:
                    walk(steps + 1, leg + 1, tuple(nxt))
                else:
                    walk(steps + 1, leg if kind == WEAK else 1, tuple(nxt))

    walk(0, 1, tuple(range(size)))
    return counts


def cayley_oracle(kind: str, k: int, mu, lam) -> Fraction:
    """Walk-count route to the same number, for small sizes only."""
    if kind not in _KINDS:
        raise ValueError(f"unknown walk kind {kind!r}")
    mu = _as_partition(mu)
    lam = _as_partition(lam)
    if sum(mu) != sum(lam):
        raise ValueError("partition sizes differ")
    if sum(mu) > ORACLE_SIZE_CAP or k > ORACLE_STEP_CAP:
        raise ValueError(
            f"walk oracle limited to size {ORACLE_SIZE_CAP} and "
            f"{ORACLE_STEP_CAP} steps")
    counts = _walk_distribution(kind, k, lam)
    return Fraction(counts.get(mu, 0), aut_size(lam))

# the tau_1 o ... o tau_k o sigma convention: pi is built left to right,
# so sigma = pi^{-1} o rep, computed in settle() above


# ---------------------------------------------------------------------------
# Weingarten sums


def schur_at_ones(lam, big_n: Fraction) -> Fraction:
    """s_lam(1_N) by the hook content product, exact in rational N."""
    lam = _as_partition(lam)
    value = Fraction(1)
    for i, row in enumerate(_hooks(lam)):
        for j, hook in enumerate(row):
            top = big_n + (j - i)
            if top == 0:
                raise ValueError(
                    f"s_{lam}(1_N) vanishes at N = {big_n}: content pole")
            value *= Fraction(top, hook)
    return value


def weingarten(size: int, beta, big_n) -> Fraction:
    """Unitary Weingarten value on the class beta of S_size."""
    beta = _as_partition(beta)
    if sum(beta) != size:
        raise ValueError(f"class {beta} is not a partition of {size}")
    big_n = Fraction(big_n)
    table = char_table(size)
    acc = Fraction(0)
    for lam in table.parts:
        dim = table.dimension(lam)
        acc += Fraction(dim * dim * table.chi(lam, beta)) / schur_at_ones(lam, big_n)
    return acc / factorial(size) ** 2


def weingarten_class(size: int, c_class, beta, big_n) -> Fraction:
    """Class-summed Weingarten kernel: |C| chi(C) chi(beta) chi(id)/s(1_N).

    Pairing this kernel against ordinary trace moments over all classes C
    produces the distinct-index cycle moments; see the module tests.
    """
    c_class = _as_partition(c_class)
    beta = _as_partition(beta)
    if sum(c_class) != size or sum(beta) != size:
        raise ValueError(f"classes must partition {size}")
    big_n = Fraction(big_n)
    table = char_table(size)
    csize = class_size(c_class)
    acc = Fraction(0)
    for lam in table.parts:
        acc += (
            Fraction(csize * table.chi(lam, c_class) * table.chi(lam, beta)
                     * table.dimension(lam))
            / schur_at_ones(lam, big_n)
        )
    return acc / factorial(size) ** 2


# ---------------------------------------------------------------------------
# Laurent data in 1/N


class NLaurent:
    """Truncated Laurent series sum_k c_k N^(-k), kept for k <= cutoff.

    Negative keys are positive powers of N.  The cutoff tracks how far
    the coefficients are trustworthy; arithmetic propagates it the same
    way the u-series order does.
    """

    __slots__ = ("coeffs", "cutoff")

    def __init__(self, coeffs: dict, cutoff: int):
        self.coeffs = {k: Fraction(c) for k, c in coeffs.items()
                       if c and k <= cutoff}
        self.cutoff = cutoff

    @staticmethod
    def zero(cutoff: int = EXACT) -> "NLaurent":
        return NLaurent({}, cutoff)

    @staticmethod
    def const(value, cutoff: int = EXACT) -> "NLaurent":
        return NLaurent({0: Fraction(value)}, cutoff)

    @staticmethod
    def monomial(value, k: int, cutoff: int = EXACT) -> "NLaurent":
        return NLaurent({k: Fraction(value)}, cutoff)

    def coeff(self, k: int) -> Fraction:
        if k > self.cutoff:
            raise ValueError(f"coefficient N^-{k} beyond cutoff {self.cutoff}")
        return self.coeffs.get(k, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def floor_key(self) -> int:
        return min(self.coeffs, default=0)

    def __neg__(self):
        return NLaurent({k: -c for k, c in self.coeffs.items()}, self.cutoff)

    def __add__(self, other):
        cutoff = min(self.cutoff, other.cutoff)
        keys = set(self.coeffs) | set(other.coeffs)
        return NLaurent(
            {k: self.coeffs.get(k, 0) + other.coeffs.get(k, 0) for k in keys},
            cutoff)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return NLaurent.zero(min(self.cutoff, other.cutoff))
        cutoff = min(self.cutoff + other.floor_key,
                     other.cutoff + self.floor_key)
        out: dict[int, Fraction] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                if k <= cutoff:
                    out[k] = out.get(k, Fraction(0)) + c1 * c2
        return NLaurent(out, cutoff)

    def scale(self, value) -> "NLaurent":
        value = Fraction(value)
        return NLaurent({k: c * value for k, c in self.coeffs.items()},
                        self.cutoff)

    def shift(self, j: int) -> "NLaurent":
        """Multiply by N^-j (j may be negative)."""
        return NLaurent({k + j: c for k, c in self.coeffs.items()},
                        self.cutoff + j)

    def truncate(self, cutoff: int) -> "NLaurent":
        if cutoff > self.cutoff:
            raise ValueError(
                f"cannot extend cutoff {self.cutoff} to {cutoff}")
        return NLaurent(self.coeffs, cutoff)

    def agrees_with(self, other: "NLaurent") -> bool:
        horizon = min(self.cutoff, other.cutoff)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0)
                   for k in keys if k <= horizon)

    def __repr__(self):
        if not self.coeffs:
            return f"NLaurent(0; <= {self.cutoff})"
        body = " + ".join(f"({c})N^{-k}" for k, c in sorted(self.coeffs.items()))
        return f"NLaurent({body}; <= {self.cutoff})"


class MomentVector:
    """One NLaurent per partition of the common size."""

    __slots__ = ("size", "cutoff", "table")

    def __init__(self, size: int, table: dict):
        need = set(partitions(size))
        table = {_as_partition(mu): v for mu, v in table.items()}
        if set(table) != need:
            missing = sorted(need - set(table))
            raise ValueError(f"moment table incomplete, missing {missing}")
        self.size = size
        self.table = table
        self.cutoff = min(v.cutoff for v in table.values())

    def get(self, mu) -> NLaurent:
        return self.table[_as_partition(mu)]

    def agrees_with(self, other: "MomentVector") -> bool:
        if self.size != other.size:
            return False
        return all(self.table[mu].agrees_with(other.table[mu])
                   for mu in self.table)

    def __repr__(self):
        return f"MomentVector(L={self.size}, cutoff={self.cutoff})"


def transition(direction: str, moments: MomentVector, cutoff: int) -> MomentVector:
    """Convert trace moments to distinct-index cycle moments or back.

    fs-from-ordinary:  <P_lam>/|Aut lam| = sum_mu N^-L sum_k (-N)^-k
    [H_k]_{lam,mu} <p_mu>; ordinary-from-fs uses N^+L N^-k [E_k] instead.
    The k-sums run high enough that every retained power of 1/N is
    final: step k only touches powers from L + k (or k - L) upward.
    """
    size = moments.size
    parts = partitions(size)
    floor = min(m.floor_key for m in moments.table.values())
    out = {}
    if direction == FS_FROM_ORDINARY:
        k_top = cutoff - size - floor
        sign, base_shift, weight_kind = -1, size, WEAK
    elif direction == ORDINARY_FROM_FS:
        k_top = cutoff + size - floor
        sign, base_shift, weight_kind = 1, -size, STRICT
    else:
        raise ValueError(f"unknown transition direction {direction!r}")
    for target in parts:
        acc = NLaurent.zero()
        for k in range(max(k_top, 0) + 1):
            step = NLaurent.zero()
            for mu in parts:
                weight = hurwitz_number(weight_kind, k, target, mu)
                if weight:
                    step = step + moments.get(mu).scale(weight)
            if not step.is_zero():
                acc = acc + step.scale(Fraction(sign) ** k).shift(base_shift + k)
        out[target] = acc.scale(aut_size(target)).truncate(
            min(acc.cutoff, cutoff))
    return MomentVector(size, out)


# ---------------------------------------------------------------------------
# GUE data


def _stars_permutation(mu: tuple[int, ...]) -> tuple[int, ...]:
    return _class_representative(mu, sum(mu))


def _involutions(n: int):
    """Fixed-point-free pairings of range(n), as image tuples."""
    if n % 2:
        return
    alpha = [-1] * n

    def fill(low: int):
        while low < n and alpha[low] >= 0:
            low += 1
        if low == n:
            yield tuple(alpha)
            return
        for mate in range(low + 1, n):
            if alpha[mate] < 0:
                alpha[low], alpha[mate] = mate, low
                yield from fill(low + 1)
                alpha[mate] = -1
        alpha[low] = -1

    yield from fill(0)


@cache
def _gue_power_counts(mu: tuple[int, ...]) -> dict:
    """Pairing tally of <prod Tr M^mu_i>, keyed by the power of 1/N.

    Each pairing alpha of the star half-edges contributes N^(F - E) with
    F the cycle count of sigma o alpha; the key stored is E - F.
    """
    total = sum(mu)
    sigma = _stars_permutation(mu)
    edges = total // 2
    counts: dict[int, int] = {}
    for alpha in _involutions(total):
        faces = len(cycle_type(tuple(sigma[a] for a in alpha)))
        key = edges - faces
        counts[key] = counts.get(key, 0) + 1
    return counts


def gue_moment(mu, big_n) -> Fraction:
    """<prod_i Tr M^mu_i> for the GUE with covariance 1/N, exact."""
    mu = _as_partition(mu)
    if sum(mu) > GUE_CAP:
        raise ValueError(f"GUE pairing sum capped at total degree {GUE_CAP}")
    if sum(mu) % 2:
        return Fraction(0)
    big_n = Fraction(big_n)
    return sum((big_n**-k * n for k, n in _gue_power_counts(mu).items()),
               Fraction(0))


def gue_moment_series(mu, cutoff: int = EXACT) -> NLaurent:
    """The same moment as exact Laurent data in 1/N."""
    mu = _as_partition(mu)
    if sum(mu) > GUE_CAP:
        raise ValueError(f"GUE pairing sum capped at total degree {GUE_CAP}")
    if sum(mu) % 2:
        return NLaurent.zero(cutoff)
    return NLaurent(dict(_gue_power_counts(mu)), cutoff)


def gue_entry_moment(lam, cutoff: int = EXACT) -> NLaurent:
    """<P_lam> for the GUE: the cycle product over fixed distinct indices.

    Wick pairing with distinct indices leaves a single surviving pairing
    when every part is a 2-cycle and none otherwise, so the value is
    N^(-L/2) pinned to all parts equal to 2.  The pairing loop is kept
    as written rather than reduced to the delta so that it stays an
    independent check of that reduction.
    """
    lam = _as_partition(lam)
    total = sum(lam)
    if total > GUE_CAP:
        raise ValueError(f"GUE pairing sum capped at total degree {GUE_CAP}")
    if total % 2:
        return NLaurent.zero(cutoff)
    phi = _stars_permutation(lam)
    hits = 0
    for alpha in _involutions(total):
        if all(alpha[phi[h]] == h for h in range(total)):
            hits += 1
    return NLaurent.monomial(hits, total // 2, cutoff)


def gue_cumulant_genus(mu) -> dict[int, Fraction]:
    """Connected per-genus counts, straight from the gluing census."""
    from .oracle import gue_census

    return gue_census(_as_partition(mu))


# ---------------------------------------------------------------------------
# connected numbers


def _ordered_splittings(mu: tuple[int, ...], blocks: int):
    """Ordered tuples of nonempty sub-partitions concatenating to mu.

    Tuples of multisets, each generated once: equal parts are distributed
    by composition of their multiplicity, so swapping equal parts never
    produces a second copy.
    """
    distinct = sorted(set(mu), reverse=True)

    def spread(idx: int, loads: tuple[tuple[int, ...], ...]):
        if idx == len(distinct):
            if all(loads):
                yield tuple(tuple(sorted(b, reverse=True)) for b in loads)
            return
        part = distinct[idx]
        for comp in _compositions(mu.count(part), blocks):
            grown = tuple(loads[i] + (part,) * comp[i] for i in range(blocks))
            yield from spread(idx + 1, grown)

    yield from spread(0, ((),) * blocks)


def _compositions(total: int, slots: int):
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def _all_two_target(size: int) -> tuple[int, ...]:
    if size % 2:
        raise ValueError("no all-two partition of an odd total")
    return (2,) * (size // 2)


@cache
def _connected_strict(mu: tuple[int, ...], k: int) -> Fraction:
    if sum(mu) % 2:
        return Fraction(0)
    total = hurwitz_number(STRICT, k, mu, _all_two_target(sum(mu)))
    for blocks in range(2, len(mu) + 1):
        correction = Fraction(0)
        for split in _ordered_splittings(mu, blocks):
            for ks in _compositions(k, blocks):
                term = Fraction(1)
                for sub, kk in zip(split, ks):
                    term *= _connected_strict(sub, kk)
                    if not term:
                        break
                correction += term
        total -= correction / factorial(blocks)
    return total


def connected_hurwitz(mu, genus: int, e_table=None) -> Fraction:
    """Connected strict double Hurwitz number against the all-two class.

    The walk length is pinned by the Euler relation k = 2g - 2 + l(mu)
    + |mu|/2; disconnected contributions are removed by summing over
    ordered splittings with 1/s!.  A custom e_table(sub_mu, k) may be
    supplied to rerun the subtraction against outside data.
    """
    mu = _as_partition(mu)
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    if sum(mu) % 2:
        return Fraction(0)
    k = 2 * genus - 2 + len(mu) + sum(mu) // 2
    if k < 0:
        return Fraction(0)
    if e_table is None:
        return _connected_strict(mu, k)
    return _connected_with_table(mu, k, e_table)


def _connected_with_table(mu: tuple[int, ...], k: int, e_table) -> Fraction:
    memo: dict[tuple, Fraction] = {}

    def conn(sub: tuple[int, ...], kk: int) -> Fraction:
        key = (sub, kk)
        if key in memo:
            return memo[key]
        total = e_table(sub, kk)
        for blocks in range(2, len(sub) + 1):
            correction = Fraction(0)
            for split in _ordered_splittings(sub, blocks):
                for ks in _compositions(kk, blocks):
                    term = Fraction(1)
                    for piece, kpiece in zip(split, ks):
                        term *= conn(piece, kpiece)
                        if not term:
                            break
                    correction += term
            total -= correction / factorial(blocks)
        memo[key] = total
        return total

    return conn(mu, k)
