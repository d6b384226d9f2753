"""The ring R read off inside a linear group.

Carrier T_ik = {t_ik(a)}; x (+) y = xy and x (x) y = [x1, y1] where
x1 in T_ij, y1 in T_jk satisfy [x1, t_jk(1)] = x and [t_ij(1), y1] = y.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import BadIndices, NotField, NotInCarrier, WitnessCheckFailed
from .matgroup import (
    Matrix,
    commutator,
    enumerate_group,
    mat_inv,
    mat_mul,
    membership,
    random_element,
    scalar_elem,
    transvection,
)
from .report import Report
from .ring import RingSpec, units
from .wordcalc import SigmaSchedule, decompose_sl, elimination_schedule, entry_polynomials, sigma_pad

HOSTS = ("GL", "SL", "T", "UT")


@dataclass(eq=False)
class InterpretedRing:
    spec: RingSpec
    n: int
    which: str = "SL"
    carrier: tuple = None
    aux: int | None = None
    _add: dict = field(default_factory=dict, repr=False)
    _mul: dict = field(default_factory=dict, repr=False)
    _zero: Matrix | None = field(default=None, repr=False)
    _one: Matrix | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.which not in HOSTS:
            raise ValueError(f"unsupported host {self.which!r}")
        if self.n < 3:
            raise BadIndices("interpretation needs n >= 3")
        if self.carrier is None:
            self.carrier = (1, self.n)
        i, k = self.carrier
        if i == k or not (1 <= i <= self.n and 1 <= k <= self.n):
            raise BadIndices(f"bad carrier ({i}, {k})")
        if self.aux is None:
            if self.upper_only:
                cands = [j for j in range(i + 1, k)]
            else:
                cands = [j for j in range(1, self.n + 1) if j not in (i, k)]
            if not cands:
                raise BadIndices(f"no auxiliary index for carrier ({i}, {k}) in a triangular host")
            self.aux = cands[0]
        j = self.aux
        if j in (i, k) or not 1 <= j <= self.n:
            raise BadIndices(f"bad auxiliary index {j}")
        if self.upper_only and not i < j < k:
            raise BadIndices("triangular hosts need i < j < k")

    @property
    def upper_only(self) -> bool:
        return self.which in ("T", "UT")

    def t(self, i: int, j: int, a) -> Matrix:
        if self.upper_only and i > j:
            raise BadIndices(f"t_{i}{j} does not lie in the triangular host")
        return transvection(self.spec, self.n, i, j, a)

    # -- carrier --------------------------------------------------------

    def encode(self, a) -> Matrix:
        return transvection(self.spec, self.n, *self.carrier, self.spec.elem(a))

    def in_carrier(self, x: Matrix) -> bool:
        return x.spec == self.spec and x.n == self.n and x == self.encode(x[self.carrier])

    def decode(self, x: Matrix):
        if not self.in_carrier(x):
            raise NotInCarrier(f"matrix is not in T_{self.carrier[0]}{self.carrier[1]}")
        return x[self.carrier]

    @property
    def zero(self) -> Matrix:
        if self._zero is None:
            self._zero = Matrix.identity(self.spec, self.n)
        return self._zero

    @property
    def one(self) -> Matrix:
        if self._one is None:
            self._one = self.encode(self.spec.one)
        return self._one

    def elements(self) -> list[Matrix]:
        return [self.encode(a) for a in self.spec.elements()]

    # -- operations (tables memoise the group computation) --------------

    def add(self, x: Matrix, y: Matrix) -> Matrix:
        key = (x, y)
        hit = self._add.get(key)
        if hit is None:
            hit = interp_add(self, x, y)
            if self.spec.is_finite:
                self._add[key] = hit
        return hit

    def mul(self, x: Matrix, y: Matrix) -> Matrix:
        key = (x, y)
        hit = self._mul.get(key)
        if hit is None:
            hit = interp_mul(self, x, y)
            if self.spec.is_finite:
                self._mul[key] = hit
        return hit

    def neg(self, x: Matrix) -> Matrix:
        return mat_inv(x)


def _check_carrier(r: InterpretedRing, *xs: Matrix) -> None:
    for x in xs:
        if not r.in_carrier(x):
            raise NotInCarrier(f"matrix is not in T_{r.carrier[0]}{r.carrier[1]}")


def interp_add(r: InterpretedRing, x: Matrix, y: Matrix) -> Matrix:
    _check_carrier(r, x, y)
    return mat_mul(x, y)


def interp_mul(r: InterpretedRing, x: Matrix, y: Matrix) -> Matrix:
    _check_carrier(r, x, y)
    i, k = r.carrier
    j = r.aux
    x1 = r.t(i, j, x[i, k])
    y1 = r.t(j, k, y[i, k])
    if commutator(x1, r.t(j, k, r.spec.one)) != x:
        raise WitnessCheckFailed("[x1, t_jk(1)] != x")
    if commutator(r.t(i, j, r.spec.one), y1) != y:
        raise WitnessCheckFailed("[t_ij(1), y1] != y")
    out = commutator(x1, y1)
    if not r.in_carrier(out):
        raise WitnessCheckFailed("product left the carrier")
    return out


# -- triangular hosts: enlarged witness sets -------------------------------


def _tprime_witnesses(r: InterpretedRing, pair: tuple, a, limit: int | None, rng: random.Random) -> list[Matrix]:
    """Elements s * t_pair(a) * t_carrier(c) for scalars s and ring elements c."""
    spec, n = r.spec, r.n
    i, k = r.carrier
    if spec.is_finite:
        combos = list(product(units(spec), spec.elements()))
        if limit is not None and len(combos) > limit:
            combos = rng.sample(combos, limit)
    else:
        combos = [(spec.elem(rng.choice([1, -1, 2, -2, 3])), spec.elem(rng.randint(-9, 9))) for _ in range(limit or 8)]
    out = []
    for s, c in combos:
        out.append(mat_mul(mat_mul(scalar_elem(spec, n, s), r.t(*pair, a)), r.t(i, k, c)))
    return out


def tn_witness_products(
    r: InterpretedRing, x: Matrix, y: Matrix, limit: int | None = 64, seed: int = 0
) -> list[Matrix]:
    """[x1, y1] for every sampled pair of witnesses from the enlarged sets."""
    if not r.upper_only:
        raise ValueError("enlarged witness sets apply to triangular hosts")
    _check_carrier(r, x, y)
    rng = random.Random(seed)
    i, k = r.carrier
    j = r.aux
    one = r.spec.one
    xs = _tprime_witnesses(r, (i, j), x[i, k], limit, rng)
    if r.n == 3:
        ys = _tprime_witnesses(r, (j, k), y[i, k], limit, rng)
    else:
        ys = [r.t(j, k, y[i, k])]
    tjk, tij = r.t(j, k, one), r.t(i, j, one)
    for x1 in xs:
        if commutator(x1, tjk) != x:
            raise WitnessCheckFailed("enlarged witness fails [x1, t_jk(1)] = x")
    for y1 in ys:
        if commutator(tij, y1) != y:
            raise WitnessCheckFailed("enlarged witness fails [t_ij(1), y1] = y")
    return [commutator(x1, y1) for x1 in xs for y1 in ys]


def tn_variant_mul(r: InterpretedRing, x: Matrix, y: Matrix, limit: int | None = 64, seed: int = 0) -> Matrix:
    prods = tn_witness_products(r, x, y, limit, seed)
    first = prods[0]
    if any(p != first for p in prods):
        raise WitnessCheckFailed("witnesses gave different commutators")
    if first != interp_mul(r, x, y):
        raise WitnessCheckFailed("enlarged witnesses disagree with the direct product")
    return first


# -- connecting isomorphisms -----------------------------------------------


def _check_pair(n: int, p: tuple) -> None:
    a, b = p
    if a == b or not (1 <= a <= n and 1 <= b <= n):
        raise BadIndices(f"bad index pair {p}")


def _same_row(r: InterpretedRing, x: Matrix, i: int, j: int, m: int) -> Matrix:
    # t_ij(a) -> [t_ij(a), t_jm(1)] = t_im(a)
    return commutator(x, r.t(j, m, r.spec.one))


def _same_col(r: InterpretedRing, x: Matrix, i: int, j: int, k: int) -> Matrix:
    # t_ij(a) -> [t_ki(1), t_ij(a)] = t_kj(a)
    return commutator(r.t(k, i, r.spec.one), x)


def connecting_iso(r: InterpretedRing, src: tuple, dst: tuple, x: Matrix) -> Matrix:
    """t_ij(a) -> t_km(a) using commutators with unit transvections only."""
    n = r.n
    _check_pair(n, src)
    _check_pair(n, dst)
    i, j = src
    k, m = dst
    if x != transvection(r.spec, n, i, j, x[i, j]):
        raise NotInCarrier(f"matrix is not in T_{i}{j}")
    if (i, j) == (k, m):
        return x
    if i == k:
        return _same_row(r, x, i, j, m)
    if j == m:
        return _same_col(r, x, i, j, k)
    if m != i:
        return _same_col(r, _same_row(r, x, i, j, m), i, m, k)
    # m == i: the route through T_im is unavailable
    if k != j:
        return _same_row(r, _same_col(r, x, i, j, k), k, j, m)
    # (i, j) -> (j, i): detour through a third index
    l = next(t for t in range(1, n + 1) if t not in (i, j))
    y = _same_row(r, x, i, j, l)
    y = _same_col(r, y, i, l, j)
    return _same_row(r, y, j, l, i)


# -- matrices over the interpreted ring ------------------------------------


@dataclass(frozen=True)
class CarrierMatrix:
    ring: InterpretedRing = field(compare=False, hash=False)
    entries: tuple  # n*n carrier elements, row-major

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[(i - 1) * self.ring.n + (j - 1)]

    def decode(self) -> Matrix:
        r = self.ring
        return Matrix(r.spec, r.n, [r.decode(x) for x in self.entries])

    def __matmul__(self, other: "CarrierMatrix") -> "CarrierMatrix":
        return carrier_product(self, other)


def carrier_product(a: CarrierMatrix, b: CarrierMatrix) -> CarrierMatrix:
    """Matrix product using only (+) and (x) on carrier elements."""
    r = a.ring
    n = r.n
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = r.zero
            for s in range(1, n + 1):
                acc = r.add(acc, r.mul(a[i, s], b[s, j]))
            out.append(acc)
    return CarrierMatrix(r, tuple(out))


def _times_int(r: InterpretedRing, x: Matrix, c: int) -> Matrix:
    if c == 1:
        return x
    acc = r.zero
    y = x if c > 0 else r.neg(x)
    for _ in range(abs(c)):
        acc = r.add(acc, y)
    return acc


@lru_cache(maxsize=32)
def _polys(s: SigmaSchedule, n: int):
    return entry_polynomials(s, n)


def lambda_map(g: Matrix, s: SigmaSchedule | None = None, r: InterpretedRing | None = None) -> CarrierMatrix:
    spec, n = g.spec, g.n
    if not spec.is_field:
        raise NotField(f"{spec} is not a field")
    if s is None:
        s = elimination_schedule(n)
    if r is None:
        r = interpreted_sl(spec, n)
    word = sigma_pad(decompose_sl(g), s)
    # carrier-encoded parameters: each letter moved into the carrier
    alphas = [
        connecting_iso(r, (i, j), r.carrier, transvection(spec, n, i, j, a)) for (i, j, a) in word.letters
    ]
    polys = _polys(s, n)
    mono_cache: dict = {(): r.one}

    def monomial(mono: tuple) -> Matrix:
        hit = mono_cache.get(mono)
        if hit is None:
            hit = r.mul(monomial(mono[:-1]), alphas[mono[-1] - 1])
            mono_cache[mono] = hit
        return hit

    entries = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = r.zero
            for mono, c in sorted(polys[(i, j)].terms.items()):
                acc = r.add(acc, _times_int(r, monomial(mono), c))
            entries.append(acc)
    return CarrierMatrix(r, tuple(entries))


def mu_map(spec: RingSpec, n: int, a) -> Matrix:
    if not spec.is_field:
        raise NotField(f"{spec} is not a field")
    return transvection(spec, n, 1, n, spec.elem(a))


_SL_RINGS: dict = {}


def interpreted_sl(spec: RingSpec, n: int) -> InterpretedRing:
    """Shared (1, n)-carrier interpretation in SL_n, so operation tables are reused."""
    key = (spec, n)
    if key not in _SL_RINGS:
        _SL_RINGS[key] = InterpretedRing(spec, n, "SL", (1, n))
    return _SL_RINGS[key]


# -- verification -----------------------------------------------------------


def ring_iso_check(r: InterpretedRing) -> Report:
    spec = r.spec
    rep = Report("ring_iso", {"ring": str(spec), "n": r.n, "host": r.which, "carrier": list(r.carrier), "aux": r.aux})
    R = spec.elements()
    enc = {a: r.encode(a) for a in R}
    T = list(enc.values())

    rep.add("carrier_size", "|T_ik| = |R|", len(R), len(set(T)))
    rep.add("decode_encode", "decode(t_ik(a)) = a", 0, sum(r.decode(enc[a]) != a for a in R))

    bad_add = bad_mul = 0
    for a in R:
        for b in R:
            if r.add(enc[a], enc[b]) != enc[spec.add(a, b)]:
                bad_add += 1
            if r.mul(enc[a], enc[b]) != enc[spec.mul(a, b)]:
                bad_mul += 1
    rep.add("hom_add", "t(a+b) = t(a) (+) t(b)", 0, bad_add)
    rep.add("hom_mul", "t(ab) = t(a) (x) t(b)", 0, bad_mul)

    add, mul, zero, one = r.add, r.mul, r.zero, r.one
    closed = sum(not r.in_carrier(add(x, y)) or not r.in_carrier(mul(x, y)) for x in T for y in T)
    rep.add("closure", "(+), (x) stay in T_ik", 0, closed)
    rep.add("add_comm", "x (+) y = y (+) x", 0, sum(add(x, y) != add(y, x) for x in T for y in T))
    rep.add("mul_comm", "x (x) y = y (x) x", 0, sum(mul(x, y) != mul(y, x) for x in T for y in T))
    rep.add("add_zero", "x (+) 0 = x", 0, sum(add(x, zero) != x for x in T))
    rep.add("mul_one", "x (x) 1 = x", 0, sum(mul(x, one) != x for x in T))
    rep.add("add_inverse", "x (+) (-x) = 0", 0, sum(add(x, r.neg(x)) != zero for x in T))
    assoc_a = assoc_m = distrib = 0
    for x in T:
        for y in T:
            xy_a, xy_m = add(x, y), mul(x, y)
            for z in T:
                assoc_a += add(xy_a, z) != add(x, add(y, z))
                assoc_m += mul(xy_m, z) != mul(x, mul(y, z))
                distrib += mul(x, add(y, z)) != add(mul(x, y), mul(x, z))
    rep.add("add_assoc", "(x (+) y) (+) z = x (+) (y (+) z)", 0, assoc_a)
    rep.add("mul_assoc", "(x (x) y) (x) z = x (x) (y (x) z)", 0, assoc_m)
    rep.add("distributive", "x (x) (y (+) z) = x(x)y (+) x(x)z", 0, distrib)
    return rep.finish()


def lambda_check(spec: RingSpec, n: int, elements: list[Matrix] | None = None, pairs: int | None = None, seed: int = 0) -> Report:
    """Homomorphism, injectivity and decoding checks for lambda.

    With ``pairs`` None every ordered pair of ``elements`` is tested;
    otherwise that many seeded random pairs are drawn."""
    rep = Report("lambda", {"ring": str(spec), "n": n, "pairs": pairs, "seed": seed})
    r = interpreted_sl(spec, n)
    s = elimination_schedule(n)
    if elements is None and pairs is None:
        elements = sorted(enumerate_group(spec, n, "SL").elements)
    cache: dict = {}

    def lam(g):
        hit = cache.get(g)
        if hit is None:
            hit = cache[g] = lambda_map(g, s, r)
        return hit

    rng = random.Random(seed)
    if pairs is None:
        todo = ((g, h) for g in elements for h in elements)
        total = len(elements) ** 2
    elif elements is None:
        todo = ((random_element(spec, n, "SL", rng), random_element(spec, n, "SL", rng)) for _ in range(pairs))
        total = pairs
    else:
        todo = ((rng.choice(elements), rng.choice(elements)) for _ in range(pairs))
        total = pairs
    bad = 0
    for g, h in todo:
        if lam(mat_mul(g, h)).entries != carrier_product(lam(g), lam(h)).entries:
            bad += 1
    rep.add("homomorphism", "lambda(gh) = lambda(g) . lambda(h)", {"failures": 0}, {"failures": bad, "pairs": total},
            passed=bad == 0)
    decoded_bad = sum(lam(g).decode() != g for g in cache)
    rep.add("decodes_to_g", "decode(lambda(g)) = g", 0, decoded_bad)
    images = {lam(g).entries for g in cache}
    rep.add("injective", "distinct g give distinct lambda(g)", len(cache), len(images))
    in_sl = sum(not membership(lam(g).decode(), "SL") for g in cache)
    rep.add("image_in_sl", "lambda(g) decodes into SL_n", 0, in_sl)
    return rep.finish()


def mu_check(spec: RingSpec, n: int) -> Report:
    rep = Report("mu", {"ring": str(spec), "n": n})
    r = interpreted_sl(spec, n)
    R = spec.elements()
    bad_add = sum(mu_map(spec, n, spec.add(a, b)) != r.add(mu_map(spec, n, a), mu_map(spec, n, b)) for a in R for b in R)
    bad_mul = sum(mu_map(spec, n, spec.mul(a, b)) != r.mul(mu_map(spec, n, a), mu_map(spec, n, b)) for a in R for b in R)
    rep.add("mu_add", "mu(a+b) = mu(a) (+) mu(b)", 0, bad_add)
    rep.add("mu_mul", "mu(ab) = mu(a) (x) mu(b)", 0, bad_mul)
    rep.add("mu_injective", "mu is injective", len(R), len({mu_map(spec, n, a) for a in R}))
    return rep.finish()
