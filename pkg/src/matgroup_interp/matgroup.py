"""Matrices over a RingSpec, the named elements t_ij(a), d_i(a), d(a), the
classical matrix groups as explicit finite sets, centers and quotients.

Indices in the public constructors are 1-based, matching the usual
t_ij notation. Internally entries are a flat row-major tuple.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import BadIndex, NonUnit, NotInvertible, SpecMismatch, TooLarge
from .report import Report
from .ring import PRIME_FIELD, RATIONALS, RingSpec, is_prime, units

DEFAULT_CAP = 200_000

GROUP_KINDS = ("GL", "SL", "T", "UT", "D", "scalar", "K")


class Matrix:
    """Immutable n x n matrix with canonical entries, hashable by value."""

    __slots__ = ("spec", "n", "entries", "_hash")

    def __init__(self, spec: RingSpec, n: int, entries: Sequence):
        if n < 2:
            raise BadIndex(f"matrix dimension must be >= 2, got {n}")
        if len(entries) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(entries)}")
        self.spec = spec
        self.n = n
        self.entries = tuple(entries)
        self._hash = hash(self.entries)

    @classmethod
    def from_rows(cls, spec: RingSpec, rows: Sequence[Sequence]) -> "Matrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        return cls(spec, n, [spec.elem(x) for r in rows for x in r])

    @classmethod
    def identity(cls, spec: RingSpec, n: int) -> "Matrix":
        z, o = spec.zero, spec.one
        return cls(spec, n, [o if i == j else z for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]):
        """1-based entry access: ``m[1, 3]``."""
        i, j = ij
        return self.entries[(i - 1) * self.n + (j - 1)]

    def rows(self) -> list[list]:
        n = self.n
        return [list(self.entries[i * n : (i + 1) * n]) for i in range(n)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.entries == other.entries and self.n == other.n and (
            self.spec is other.spec or self.spec == other.spec
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Matrix") -> bool:
        return self.entries < other.entries

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.spec.fmt(x) for x in r) for r in self.rows())
        return f"Matrix[{self.spec}]({body})"

    def __mul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def inverse(self) -> "Matrix":
        return mat_inv(self)

    def is_identity(self) -> bool:
        n, z, o = self.n, self.spec.zero, self.spec.one
        e = self.entries
        return all(e[i * n + j] == (o if i == j else z) for i in range(n) for j in range(n))

    def scale(self, alpha) -> "Matrix":
        s = self.spec
        return Matrix(s, self.n, [s.mul(alpha, x) for x in self.entries])


# -- named elements ---------------------------------------------------------


def _check_pair(n: int, i: int, j: int) -> None:
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise BadIndex(f"need 1 <= i != j <= {n}, got ({i}, {j})")


def transvection(spec: RingSpec, n: int, i: int, j: int, alpha=1) -> Matrix:
    """t_ij(alpha) = I + alpha * e_ij."""
    _check_pair(n, i, j)
    e = list(Matrix.identity(spec, n).entries)
    e[(i - 1) * n + (j - 1)] = spec.elem(alpha)
    return Matrix(spec, n, e)


def diag_full(spec: RingSpec, alphas: Sequence) -> Matrix:
    n = len(alphas)
    vals = [spec.elem(a) for a in alphas]
    for a in vals:
        if not spec.is_unit(a):
            raise NonUnit(f"diagonal entry {a} is not a unit in {spec}")
    z = spec.zero
    return Matrix(spec, n, [vals[i] if i == j else z for i in range(n) for j in range(n)])


def diag_elem(spec: RingSpec, n: int, i: int, alpha) -> Matrix:
    """d_i(alpha): identity with alpha at position (i, i)."""
    if not 1 <= i <= n:
        raise BadIndex(f"diagonal index {i} out of range 1..{n}")
    vals = [spec.one] * n
    vals[i - 1] = alpha
    return diag_full(spec, vals)


def scalar_elem(spec: RingSpec, n: int, alpha) -> Matrix:
    """d(alpha) = alpha * I_n."""
    return diag_full(spec, [alpha] * n)


# -- arithmetic -------------------------------------------------------------


def _same_space(a: Matrix, b: Matrix) -> None:
    if a.n != b.n or (a.spec is not b.spec and a.spec != b.spec):
        raise SpecMismatch(f"cannot combine {a.n}x{a.n} over {a.spec} with {b.n}x{b.n} over {b.spec}")


@lru_cache(maxsize=None)
def _product_kernel(n: int, modular: bool) -> Callable:
    """Unrolled n x n product over flat tuples, compiled once per (n, kind)."""
    terms = []
    for i in range(n):
        for j in range(n):
            s = "+".join(f"a[{i * n + k}]*b[{k * n + j}]" for k in range(n))
            terms.append(f"({s})%m" if modular else f"({s})")
    src = f"def _k(a, b, m):\n    return ({', '.join(terms)},)\n"
    ns: dict = {}
    exec(src, ns)
    return ns["_k"]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    spec = a.spec
    if a.n != b.n or (spec is not b.spec and spec != b.spec):
        _same_space(a, b)
    modular = spec.kind != RATIONALS
    out = _product_kernel(a.n, modular)(a.entries, b.entries, spec.modulus)
    return Matrix(spec, a.n, out)


def mat_prod(ms: Iterable[Matrix], spec: RingSpec | None = None, n: int | None = None) -> Matrix:
    """Left-to-right product; the empty product needs ``spec`` and ``n``."""
    acc = None
    for m in ms:
        acc = m if acc is None else mat_mul(acc, m)
    if acc is None:
        if spec is None or n is None:
            raise ValueError("empty product needs spec and n")
        return Matrix.identity(spec, n)
    return acc


def _det_laplace(spec: RingSpec, rows: list[list]) -> object:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return spec.sub(spec.mul(rows[0][0], rows[1][1]), spec.mul(rows[0][1], rows[1][0]))
    total = spec.zero
    for j in range(n):
        a = rows[0][j]
        if a == spec.zero:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = spec.mul(a, _det_laplace(spec, minor))
        total = spec.sub(total, term) if j % 2 else spec.add(total, term)
    return total


def _det_bareiss(rows: list[list]) -> object:
    """Fraction-free elimination; exact for integer/rational entries."""
    from fractions import Fraction

    # clear denominators so Bareiss runs over the integers
    den = 1
    for r in rows:
        for x in r:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    a = [[int(Fraction(x) * den) for x in r] for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], den**n)


def _det_field_elim(spec: RingSpec, rows: list[list]) -> object:
    a = [list(r) for r in rows]
    n = len(a)
    d = spec.one
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != spec.zero), None)
        if piv is None:
            return spec.zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = spec.neg(d)
        d = spec.mul(d, a[k][k])
        inv = spec.inv(a[k][k])
        for i in range(k + 1, n):
            if a[i][k] != spec.zero:
                f = spec.mul(a[i][k], inv)
                a[i] = [spec.sub(x, spec.mul(f, y)) for x, y in zip(a[i], a[k])]
    return d


def det(a: Matrix):
    """Determinant: Bareiss over Q, cofactor expansion over finite rings for
    n <= 4, field elimination above that (cofactors again for non-fields)."""
    spec = a.spec
    rows = a.rows()
    if spec.kind == RATIONALS:
        return _det_bareiss(rows)
    if a.n <= 4 or not spec.is_field:
        return _det_laplace(spec, rows)
    return _det_field_elim(spec, rows)


@lru_cache(maxsize=1 << 16)
def mat_inv(a: Matrix) -> Matrix:
    spec, n = a.spec, a.n
    if spec.is_field:
        m = [r + [spec.one if i == j else spec.zero for j in range(n)] for i, r in enumerate(a.rows())]
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k] != spec.zero), None)
            if piv is None:
                raise NotInvertible("matrix is singular")
            m[k], m[piv] = m[piv], m[k]
            inv = spec.inv(m[k][k])
            m[k] = [spec.mul(inv, x) for x in m[k]]
            for i in range(n):
                if i != k and m[i][k] != spec.zero:
                    f = m[i][k]
                    m[i] = [spec.sub(x, spec.mul(f, y)) for x, y in zip(m[i], m[k])]
        return Matrix(spec, n, [x for r in m for x in r[n:]])
    d = det(a)
    if not spec.is_unit(d):
        raise NotInvertible(f"determinant {d} is not a unit in {spec}")
    dinv = spec.inv(d)
    rows = a.rows()
    out = [spec.zero] * (n * n)
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1 :] for k, r in enumerate(rows) if k != i]
            c = _det_laplace(spec, minor)
            if (i + j) % 2:
                c = spec.neg(c)
            out[j * n + i] = spec.mul(dinv, c)  # adjugate is the transposed cofactor matrix
    return Matrix(spec, n, out)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """[a, b] = a^-1 b^-1 a b."""
    _same_space(a, b)
    return mat_mul(mat_mul(mat_inv(a), mat_inv(b)), mat_mul(a, b))


def conjugate(a: Matrix, b: Matrix) -> Matrix:
    """a^b = b^-1 a b."""
    _same_space(a, b)
    return mat_mul(mat_mul(mat_inv(b), a), b)


def mat_pow(a: Matrix, k: int) -> Matrix:
    if k < 0:
        return mat_pow(mat_inv(a), -k)
    result = Matrix.identity(a.spec, a.n)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


# -- membership -------------------------------------------------------------


def is_diagonal(a: Matrix) -> bool:
    n, z = a.n, a.spec.zero
    return all(a.entries[i * n + j] == z for i in range(n) for j in range(n) if i != j)


def is_upper_triangular(a: Matrix) -> bool:
    n, z = a.n, a.spec.zero
    return all(a.entries[i * n + j] == z for i in range(n) for j in range(i))


def diagonal(a: Matrix) -> list:
    return [a.entries[i * a.n + i] for i in range(a.n)]


def membership(a: Matrix, which: str) -> bool:
    spec = a.spec
    if which == "GL":
        return spec.is_unit(det(a))
    if which == "SL":
        return det(a) == spec.one
    if which == "T":
        return is_upper_triangular(a) and all(spec.is_unit(x) for x in diagonal(a))
    if which == "UT":
        return is_upper_triangular(a) and all(x == spec.one for x in diagonal(a))
    if which == "D":
        return is_diagonal(a) and all(spec.is_unit(x) for x in diagonal(a))
    if which == "scalar":
        d = diagonal(a)
        return is_diagonal(a) and spec.is_unit(d[0]) and all(x == d[0] for x in d)
    if which == "K":
        # UT_n semidirect B_n: upper triangular, unit diagonal, last diagonal entry 1
        return membership(a, "T") and a.entries[-1] == spec.one
    raise ValueError(f"unknown group kind {which!r}")


# -- group orders -----------------------------------------------------------


def _factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def gl_order(q_or_spec, n: int) -> int:
    """|GL_n(Z/m)| via CRT and the prime-power lifting formula."""
    m = q_or_spec.size if isinstance(q_or_spec, RingSpec) else q_or_spec
    total = 1
    for p, k in _factorize(m).items():
        base = 1
        for i in range(n):
            base *= p**n - p**i
        total *= base * p ** ((k - 1) * n * n)
    return total


def predicted_order(spec: RingSpec, n: int, which: str) -> int:
    q = spec.size
    u = len(units(spec))
    tri = q ** (n * (n - 1) // 2)
    if which == "GL":
        return gl_order(q, n)
    if which == "SL":
        return gl_order(q, n) // u
    if which == "T":
        return u**n * tri
    if which == "UT":
        return tri
    if which == "D":
        return u**n
    if which == "scalar":
        return u
    if which == "K":
        return u ** (n - 1) * tri
    raise ValueError(f"unknown group kind {which!r}")


def group_generators(spec: RingSpec, n: int, which: str) -> list[Matrix]:
    us = [x for x in units(spec) if x != spec.one]
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    upper = [(i, j) for (i, j) in pairs if i < j]
    if which == "GL":
        return [transvection(spec, n, i, j) for i, j in pairs] + [diag_elem(spec, n, 1, u) for u in us]
    if which == "SL":
        return [transvection(spec, n, i, j) for i, j in pairs]
    if which == "T":
        return [transvection(spec, n, i, j) for i, j in upper] + [
            diag_elem(spec, n, k, u) for k in range(1, n + 1) for u in us
        ]
    if which == "UT":
        return [transvection(spec, n, i, j) for i, j in upper]
    if which == "D":
        return [diag_elem(spec, n, k, u) for k in range(1, n + 1) for u in us]
    if which == "scalar":
        return [scalar_elem(spec, n, u) for u in us]
    if which == "K":
        return [transvection(spec, n, i, j) for i, j in upper] + [
            diag_elem(spec, n, k, u) for k in range(1, n) for u in us
        ]
    raise ValueError(f"unknown group kind {which!r}")


def random_element(spec: RingSpec, n: int, which: str, rng) -> Matrix:
    """Seeded random GL or SL element by rejection sampling.

    Over Q entries are integers in [-9, 9]; SL samples are rescaled in the
    last column by det^-1."""
    if which not in ("GL", "SL"):
        raise ValueError("random sampling supports GL and SL")
    draw = (lambda: rng.randint(-9, 9)) if not spec.is_finite else (lambda: rng.randrange(spec.modulus))
    while True:
        a = Matrix.from_rows(spec, [[draw() for _ in range(n)] for _ in range(n)])
        d = det(a)
        if spec.is_unit(d):
            break
    if which == "SL":
        a = mat_mul(a, diag_elem(spec, n, n, spec.inv(d)))
    return a


# -- explicit finite groups -------------------------------------------------


@dataclass
class GroupSet:
    spec: RingSpec
    n: int
    elements: frozenset
    label: str = ""
    generators: tuple = ()
    closure_flag: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    @property
    def identity(self) -> Matrix:
        return Matrix.identity(self.spec, self.n)

    def check_closure(self, exhaustive: bool | None = None) -> bool:
        """Verify the set is a subgroup. Exhaustive pairwise products for small
        sets; otherwise the set must equal the subgroup generated by a greedy
        generating subset, which is an equivalent criterion for finite sets."""
        if exhaustive is None:
            exhaustive = len(self.elements) <= 400
        els = self.elements
        if self.identity not in els:
            return False
        if any(mat_inv(x) not in els for x in els):
            return False
        if exhaustive:
            ok = all(mat_mul(x, y) in els for x in els for y in els)
        else:
            ok = is_generated_subgroup(els, self.spec, self.n)
        self.closure_flag = ok
        return ok


def closure(gens: Sequence[Matrix], spec: RingSpec, n: int, limit: int | None = None) -> frozenset:
    """Subgroup generated by ``gens`` (breadth-first right multiplication)."""
    ident = Matrix.identity(spec, n)
    seen = {ident}
    queue = deque([ident])
    gens = [g for g in gens if g != ident]
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mat_mul(g, s)
            if h not in seen:
                seen.add(h)
                queue.append(h)
                if limit is not None and len(seen) > limit:
                    raise TooLarge(f"closure exceeded {limit} elements", predicted=None)
    return frozenset(seen)


def is_generated_subgroup(els: frozenset, spec: RingSpec, n: int) -> bool:
    ident = Matrix.identity(spec, n)
    if ident not in els:
        return False
    gens: list[Matrix] = []
    current: frozenset = frozenset({ident})
    for x in sorted(els):
        if x in current:
            continue
        gens.append(x)
        try:
            current = closure(gens, spec, n, limit=len(els))
        except TooLarge:
            return False
        if not current <= els:
            return False
    return current == els


def enumerate_group(spec: RingSpec, n: int, which: str, cap: int = DEFAULT_CAP) -> GroupSet:
    if which not in GROUP_KINDS:
        raise ValueError(f"unknown group kind {which!r}")
    predicted = predicted_order(spec, n, which)
    if predicted > cap:
        raise TooLarge(f"{which}_{n}({spec}) has {predicted} elements, cap is {cap}", predicted=predicted)
    gens = group_generators(spec, n, which)
    els = closure(gens, spec, n, limit=predicted)
    if len(els) != predicted:
        raise AssertionError(f"enumerated {len(els)} elements, predicted {predicted}")
    return GroupSet(spec, n, els, label=f"{which}_{n}({spec})", generators=tuple(gens), closure_flag=True)


def center_of(g: GroupSet) -> GroupSet:
    """Brute-force center: elements commuting with every generator (or every
    element when no generating set is recorded)."""
    test = g.generators if g.generators else tuple(g.elements)
    els = frozenset(x for x in g.elements if all(mat_mul(x, t) == mat_mul(t, x) for t in test))
    return GroupSet(g.spec, g.n, els, label=f"Z({g.label})", generators=(), closure_flag=False)


def analytic_center(spec: RingSpec, n: int, which: str) -> GroupSet:
    us = units(spec)
    if which == "T":
        # scalars times t_1n(b) with b fixed by every unit; b = 0 over a field
        # with more than two elements, but not over e.g. Z/6 or GF(2)
        fixed = [b for b in spec.elements() if all(spec.mul(u, b) == b for u in us)]
        els = frozenset(
            mat_mul(scalar_elem(spec, n, a), transvection(spec, n, 1, n, b)) for a in us for b in fixed
        )
        return GroupSet(spec, n, els, label=f"Z(T_{n}({spec}))")
    if which in ("GL", "D", "scalar"):
        if which == "D":
            return enumerate_group(spec, n, "D")
        alphas = us
    elif which == "SL":
        alphas = [u for u in us if spec.pow(u, n) == spec.one]
    elif which == "UT":
        els = frozenset(transvection(spec, n, 1, n, a) for a in spec.elements())
        return GroupSet(spec, n, els, label=f"Z(UT_{n}({spec}))")
    elif which == "K":
        return GroupSet(spec, n, frozenset({Matrix.identity(spec, n)}), label=f"Z(K_{n}({spec}))")
    else:
        raise ValueError(f"unknown group kind {which!r}")
    els = frozenset(scalar_elem(spec, n, a) for a in alphas)
    return GroupSet(spec, n, els, label=f"Z({which}_{n}({spec}))")


@dataclass
class QuotientGroup:
    """G / N realised by canonical (lexicographically least) coset representatives."""

    base: GroupSet
    normal: GroupSet
    rep_of: dict = field(repr=False, default_factory=dict)

    @property
    def elements(self) -> frozenset:
        return frozenset(self.rep_of.values())

    def __len__(self) -> int:
        return len(self.elements)

    def product(self, a: Matrix, b: Matrix) -> Matrix:
        return self.rep_of[mat_mul(a, b)]

    def inverse(self, a: Matrix) -> Matrix:
        return self.rep_of[mat_inv(a)]


def quotient_by_center(g: GroupSet, center: GroupSet | None = None) -> QuotientGroup:
    z = center if center is not None else center_of(g)
    zs = sorted(z.elements)
    rep_of: dict = {}
    for x in g.elements:
        if x in rep_of:
            continue
        coset = [mat_mul(x, c) for c in zs]
        r = min(coset)
        for y in coset:
            rep_of[y] = r
    return QuotientGroup(g, z, rep_of)


def isogeny_kernel(spec: RingSpec, n: int) -> list[tuple[Matrix, Matrix]]:
    """Kernel of (h, z) -> hz on SL_n x Z(GL_n): pairs (wI, w^-1 I) with w^n = 1."""
    if spec.kind != PRIME_FIELD:
        from .errors import NotField

        raise NotField(f"isogeny kernel is defined here for finite fields, not {spec}")
    pairs = []
    for w in units(spec):
        h = scalar_elem(spec, n, w)
        if det(h) != spec.one:
            continue
        z = scalar_elem(spec, n, spec.inv(w))
        if mat_mul(h, z).is_identity():
            pairs.append((h, z))
    return pairs


# -- Steinberg relations ----------------------------------------------------


def steinberg_suite(spec: RingSpec, n: int) -> Report:
    """Exhaustively check the Steinberg relations, the derived sign relation and
    the diagonal conjugation / commutator formulas over all parameters."""
    rep = Report("steinberg", {"ring": str(spec), "n": n})
    R = spec.elements()
    us = units(spec)
    idx = range(1, n + 1)
    t: dict = {(i, j, a): transvection(spec, n, i, j, a) for i in idx for j in idx if i != j for a in R}
    ident = Matrix.identity(spec, n)

    def tally(name, anchor, cases: Iterable[bool]):
        total = fails = 0
        for ok in cases:
            total += 1
            fails += not ok
        rep.add(name, anchor, {"failures": 0}, {"failures": fails, "cases": total}, fails == 0)

    pairs = [(i, j) for i in idx for j in idx if i != j]

    tally(
        "rel1_additivity",
        "t_ij(a) t_ij(b) = t_ij(a+b)",
        (t[i, j, a] * t[i, j, b] == t[i, j, spec.add(a, b)] for (i, j) in pairs for a in R for b in R),
    )
    tally(
        "rel2_commutator",
        "[t_ik(a), t_kl(b)] = t_il(ab), i != l",
        (
            commutator(t[i, k, a], t[k, l, b]) == t[i, l, spec.mul(a, b)]
            for i in idx
            for k in idx
            for l in idx
            if i != k and k != l and i != l
            for a in R
            for b in R
        ),
    )
    tally(
        "rel3_commuting",
        "[t_ik(a), t_jl(b)] = 1, i != l, j != k",
        (
            commutator(t[i, k, a], t[j, l, b]) == ident
            for (i, k) in pairs
            for (j, l) in pairs
            if i != l and j != k
            for a in R
            for b in R
        ),
    )
    tally(
        "derived_sign_relation",
        "[t_ij(a), t_ki(b)] = t_kj(-ab), j != k",
        (
            commutator(t[i, j, a], t[k, i, b]) == t[k, j, spec.neg(spec.mul(a, b))]
            for (i, j) in pairs
            for k in idx
            if k != i and k != j
            for a in R
            for b in R
        ),
    )

    def diag_cases(formula: Callable[[Matrix, Matrix, Sequence, int, int, object], bool]):
        for alphas in product(us, repeat=n):
            d = diag_full(spec, alphas)
            d_inv = mat_inv(d)
            for (i, j) in pairs:
                for b in R:
                    yield formula(d, d_inv, alphas, i, j, b)

    def conj_formula(d, d_inv, al, i, j, b):
        lhs = mat_mul(mat_mul(d_inv, t[i, j, b]), d)
        return lhs == t[i, j, spec.mul(spec.mul(spec.inv(al[i - 1]), b), al[j - 1])]

    def comm_formula(d, d_inv, al, i, j, b):
        lhs = commutator(t[i, j, b], d)
        rhs = t[i, j, spec.sub(spec.mul(spec.mul(spec.inv(al[i - 1]), b), al[j - 1]), b)]
        return lhs == rhs

    tally("diag_conjugation", "diag(a)^-1 t_ij(b) diag(a) = t_ij(a_i^-1 b a_j)", diag_cases(conj_formula))
    tally("diag_commutator", "[t_ij(b), diag(a)] = t_ij(a_i^-1 b a_j - b)", diag_cases(comm_formula))
    return rep.finish()
