"""Transvection words: elimination into products of t_ij(a), schedules of
index pairs, symbolic entry polynomials, unitriangular normal forms and the
lower central series of UT_n."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DetNotOne, NotField, NotInvertible, NotUnitriangular, ScheduleTooShort
from .matgroup import (
    DEFAULT_CAP,
    GroupSet,
    Matrix,
    closure,
    commutator,
    det,
    diag_elem,
    enumerate_group,
    mat_mul,
    membership,
    transvection,
)
from .ring import RingSpec

Letter = tuple  # (i, j, alpha), 1-based indices


@dataclass(frozen=True)
class TransvectionWord:
    spec: RingSpec
    n: int
    letters: tuple = ()
    diag: tuple | None = None  # (index, unit value) of a d_index(value) factor
    diag_pos: int | None = None  # number of letters before the diagonal factor

    def __post_init__(self):
        for (i, j, _a) in self.letters:
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"invalid letter indices ({i}, {j})")
        if self.diag is not None and self.diag_pos is None:
            object.__setattr__(self, "diag_pos", len(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for (i, j, _a) in self.letters]

    @property
    def alphas(self) -> list:
        return [a for (_i, _j, a) in self.letters]


def eval_word(w: TransvectionWord) -> Matrix:
    acc = Matrix.identity(w.spec, w.n)
    for k, (i, j, a) in enumerate(w.letters):
        if w.diag is not None and k == w.diag_pos:
            acc = mat_mul(acc, diag_elem(w.spec, w.n, w.diag[0], w.diag[1]))
        acc = mat_mul(acc, transvection(w.spec, w.n, i, j, a))
    if w.diag is not None and w.diag_pos >= len(w.letters):
        acc = mat_mul(acc, diag_elem(w.spec, w.n, w.diag[0], w.diag[1]))
    return acc


# -- elimination ------------------------------------------------------------


def published_bound(n: int) -> int:
    """Upper bound on the length of words produced by :func:`decompose_sl`."""
    return (n - 1) * (n + 3)


def _eliminate(a: Matrix) -> list[Letter]:
    """Row operations E_1, ..., E_k (as letters) with E_k ... E_1 a = I.

    Only transvections are used: a zero pivot is repaired by adding the lowest
    row below with a nonzero entry, and the pivot is then normalised to 1 with
    the help of the next row.
    """
    spec, n = a.spec, a.n
    z, one = spec.zero, spec.one
    m = a.rows()
    ops: list[Letter] = []

    def add_row(dst: int, src: int, coef) -> None:
        # left multiplication by t_{dst,src}(coef)
        if coef == z:
            return
        m[dst] = [spec.add(x, spec.mul(coef, y)) for x, y in zip(m[dst], m[src])]
        ops.append((dst + 1, src + 1, coef))

    for c in range(n):
        if c < n - 1:
            if m[c][c] == z:
                r = next((r for r in range(c + 1, n) if m[r][c] != z), None)
                if r is None:
                    raise NotInvertible("matrix is singular")
                add_row(c, r, one)
            p = m[c][c]
            if p != one:
                if m[c + 1][c] == z:
                    add_row(c + 1, c, one)
                add_row(c, c + 1, spec.div(spec.sub(one, p), m[c + 1][c]))
        elif m[c][c] != one:
            raise DetNotOne("determinant is not 1")
        for r in range(n):
            if r != c and m[r][c] != z:
                add_row(r, c, spec.neg(m[r][c]))
    return ops


def decompose_sl(a: Matrix) -> TransvectionWord:
    spec = a.spec
    if not spec.is_field:
        raise NotField(f"{spec} is not a field")
    if det(a) != spec.one:
        raise DetNotOne("determinant is not 1")
    ops = _eliminate(a)
    # a = E_1^-1 E_2^-1 ... E_k^-1 and t_ij(c)^-1 = t_ij(-c)
    letters = tuple((i, j, spec.neg(c)) for (i, j, c) in ops)
    return TransvectionWord(spec, a.n, letters)


def decompose_gl(a: Matrix) -> TransvectionWord:
    """a = x_1 ... x_r d_n(beta) with beta = det(a)."""
    spec, n = a.spec, a.n
    if not spec.is_field:
        raise NotField(f"{spec} is not a field")
    beta = det(a)
    if not spec.is_unit(beta):
        raise NotInvertible("matrix is singular")
    core = mat_mul(a, diag_elem(spec, n, n, spec.inv(beta)))
    w = decompose_sl(core)
    return TransvectionWord(spec, n, w.letters, diag=(n, beta), diag_pos=len(w.letters))


# -- schedules --------------------------------------------------------------


@dataclass(frozen=True)
class SigmaSchedule:
    """A fixed sequence of index pairs, repeated ``w`` times."""

    pairs: tuple
    w: int = 1
    name: str = ""

    def __post_init__(self):
        for (i, j) in self.pairs:
            if i == j:
                raise ValueError(f"schedule pair ({i}, {j}) has i == j")
        if self.w < 0:
            raise ValueError("repetition count must be >= 0")

    @property
    def slots(self) -> tuple:
        return tuple(self.pairs) * self.w

    @property
    def m(self) -> int:
        return len(self.pairs) * self.w


def row_major_schedule(n: int, w: int) -> SigmaSchedule:
    pairs = tuple((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)
    return SigmaSchedule(pairs, w, name=f"row-major x{w}")


def elimination_schedule(n: int) -> SigmaSchedule:
    """The pair pattern :func:`decompose_sl` emits, in order; every word it
    produces embeds into this schedule."""
    pairs: list[tuple[int, int]] = []
    for c in range(1, n):
        pairs += [(c, r) for r in range(c + 1, n + 1)]
        pairs += [(c + 1, c), (c, c + 1)]
        pairs += [(r, c) for r in range(1, n + 1) if r != c]
    pairs += [(r, n) for r in range(1, n)]
    return SigmaSchedule(tuple(pairs), 1, name="elimination")


def embedding_count(w: TransvectionWord, s: SigmaSchedule) -> int | None:
    """Number of schedule slots consumed by the greedy embedding, or None."""
    letters = list(w.pairs)
    k = 0
    for pos, pair in enumerate(s.slots):
        if k < len(letters) and letters[k] == pair:
            k += 1
            if k == len(letters):
                return pos + 1
    return 0 if not letters else None


def sigma_pad(w: TransvectionWord, s: SigmaSchedule) -> TransvectionWord:
    """One letter per schedule slot, zero where the word has nothing to say.

    Greedy leftmost matching finds an embedding whenever one exists."""
    if w.diag is not None:
        raise ValueError("words with a diagonal factor cannot be scheduled")
    z = w.spec.zero
    out: list[Letter] = []
    k = 0
    for (i, j) in s.slots:
        if k < len(w.letters) and w.letters[k][:2] == (i, j):
            out.append(w.letters[k])
            k += 1
        else:
            out.append((i, j, z))
    if k < len(w.letters):
        raise ScheduleTooShort(f"word of length {len(w)} does not embed into a schedule of {s.m} slots")
    return TransvectionWord(w.spec, w.n, tuple(out))


def scheduled_word(spec: RingSpec, n: int, s: SigmaSchedule, alphas: Sequence) -> TransvectionWord:
    slots = s.slots
    if len(alphas) != len(slots):
        raise ValueError(f"need {len(slots)} parameters, got {len(alphas)}")
    return TransvectionWord(spec, n, tuple((i, j, spec.elem(a)) for (i, j), a in zip(slots, alphas)))


# -- entry polynomials ------------------------------------------------------


class IntPoly:
    """Integer polynomial in a_1..a_m; monomials are sorted tuples of variable
    indices (every product of scheduled transvections is multilinear)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls({(): c})

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.terms == other.terms

    def __add__(self, other: "IntPoly") -> "IntPoly":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return IntPoly(t)

    def times_var(self, var: int) -> "IntPoly":
        return IntPoly({tuple(sorted(k + (var,))): v for k, v in self.terms.items()})

    def evaluate(self, spec: RingSpec, values: Sequence):
        """Evaluate with ``values[k-1]`` substituted for a_k."""
        total = spec.zero
        for mono, c in self.terms.items():
            term = spec.elem(c)
            for v in mono:
                term = spec.mul(term, values[v - 1])
            total = spec.add(total, term)
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            body = "*".join(f"a{v}" for v in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)


def entry_polynomials(s: SigmaSchedule, n: int) -> dict[tuple[int, int], IntPoly]:
    """P_ij with P_ij(a) = entry (i, j) of t_{i1 j1}(a_1) ... t_{im jm}(a_m)."""
    P = [[IntPoly.const(1) if i == j else IntPoly() for j in range(n)] for i in range(n)]
    for k, (p, q) in enumerate(s.slots, start=1):
        # right multiplication by t_pq(a_k): column q += a_k * column p
        for i in range(n):
            if P[i][p - 1].terms:
                P[i][q - 1] = P[i][q - 1] + P[i][p - 1].times_var(k)
    return {(i + 1, j + 1): P[i][j] for i in range(n) for j in range(n)}


# -- unitriangular normal form ----------------------------------------------


def ut_order(n: int) -> list[tuple[int, int]]:
    """Pairs in the normal-form order: level by level, each level from
    (n-m, n) down to (1, 1+m)."""
    out = []
    for m in range(1, n):
        out += [(i, i + m) for i in range(n - m, 0, -1)]
    return out


def ut_normal_form(a: Matrix) -> dict[tuple[int, int], object]:
    if not membership(a, "UT"):
        raise NotUnitriangular("matrix is not upper unitriangular")
    spec, n = a.spec, a.n
    coeffs: dict = {}
    h = a
    for m in range(1, n):
        level = [(i, i + m) for i in range(n - m, 0, -1)]
        factor = Matrix.identity(spec, n)
        for (i, j) in level:
            coeffs[(i, j)] = h[i, j]
            factor = mat_mul(factor, transvection(spec, n, i, j, h[i, j]))
        # inverse of a product of commuting-modulo-higher-levels factors
        inv = Matrix.identity(spec, n)
        for (i, j) in reversed(level):
            inv = mat_mul(inv, transvection(spec, n, i, j, spec.neg(coeffs[(i, j)])))
        h = mat_mul(inv, h)
    if not h.is_identity():
        raise AssertionError("normal form did not terminate at the identity")
    return coeffs


def ut_from_coefficients(spec: RingSpec, n: int, coeffs: dict) -> Matrix:
    acc = Matrix.identity(spec, n)
    for (i, j) in ut_order(n):
        acc = mat_mul(acc, transvection(spec, n, i, j, coeffs.get((i, j), spec.zero)))
    return acc


# -- lower central series ---------------------------------------------------


def ut_level(group: GroupSet, k: int) -> frozenset:
    """UT_n^k: elements of UT_n with k-1 zero superdiagonals."""
    n, z = group.n, group.spec.zero
    return frozenset(
        x for x in group.elements if all(x[i, i + m] == z for m in range(1, k) for i in range(1, n - m + 1))
    )


def lower_central_series(spec: RingSpec, n: int, cap: int = DEFAULT_CAP) -> list[GroupSet]:
    """gamma_1 = UT_n, gamma_{k+1} = <[x, y] : x in UT_n, y in gamma_k> by brute force."""
    g = enumerate_group(spec, n, "UT", cap=cap)
    series = [g]
    current = g
    while len(current) > 1:
        comms = {commutator(x, y) for x in g.elements for y in current.elements}
        els = closure(sorted(comms), spec, n)
        current = GroupSet(spec, n, els, label=f"gamma_{len(series) + 1}", generators=tuple(sorted(comms)))
        series.append(current)
        if len(series) > n + 1:
            raise AssertionError("lower central series failed to terminate")
    return series


# -- width ------------------------------------------------------------------


@dataclass
class WidthReport:
    spec: RingSpec
    n: int
    elements: int
    max_length: int
    bound: int
    round_trip_failures: int
    schedule: SigmaSchedule
    schedule_failures: int
    length_histogram: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.round_trip_failures == 0 and self.schedule_failures == 0 and self.max_length <= self.bound


def width_report(spec: RingSpec, n: int, cap: int = DEFAULT_CAP, elements: Iterable[Matrix] | None = None) -> WidthReport:
    if not spec.is_field:
        raise NotField(f"{spec} is not a field")
    els = list(elements) if elements is not None else sorted(enumerate_group(spec, n, "SL", cap=cap).elements)
    sched = elimination_schedule(n)
    hist: dict[int, int] = {}
    worst = fails = sched_fails = 0
    for g in els:
        w = decompose_sl(g)
        hist[len(w)] = hist.get(len(w), 0) + 1
        worst = max(worst, len(w))
        if eval_word(w) != g:
            fails += 1
        if embedding_count(w, sched) is None:
            sched_fails += 1
    return WidthReport(spec, n, len(els), worst, published_bound(n), fails, sched, sched_fails, dict(sorted(hist.items())))
