"""Finite abelian groups and symmetric 2-cocycles.

Groups are written additively here; a cocycle f: B x B -> A is normalized
(f(0, x) = f(x, 0) = 0) and satisfies f(x+y, z) + f(x, y) = f(x, y+z) + f(y, z).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from math import gcd, prod
from typing import Callable, Mapping, Sequence

from .errors import BadSplit, InvalidCocycle, NotCoboundary, TooLarge
from .fingroup import FiniteGroup
from .report import Report

ENUM_CAP = 250_000


@dataclass(frozen=True)
class FinAbGroup:
    orders: tuple

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(m) for m in self.orders))
        if any(m < 1 for m in self.orders):
            raise ValueError("cyclic orders must be >= 1")

    @classmethod
    def cyclic(cls, m: int) -> "FinAbGroup":
        return cls((m,))

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.orders)

    def elements(self) -> list[tuple]:
        return list(product(*(range(m) for m in self.orders)))

    def canon(self, x) -> tuple:
        if isinstance(x, int):
            x = (x,)
        if len(x) != len(self.orders):
            raise ValueError(f"element {x} has wrong length for orders {self.orders}")
        return tuple(v % m for v, m in zip(x, self.orders))

    def add(self, x: tuple, y: tuple) -> tuple:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.orders))

    def neg(self, x: tuple) -> tuple:
        return tuple((-a) % m for a, m in zip(x, self.orders))

    def sub(self, x: tuple, y: tuple) -> tuple:
        return tuple((a - b) % m for a, b, m in zip(x, y, self.orders))

    def gens(self) -> list[tuple]:
        k = len(self.orders)
        return [tuple(1 if t == i else 0 for t in range(k)) for i in range(k) if self.orders[i] > 1]

    def times(self, c: int, x: tuple) -> tuple:
        return tuple((c * a) % m for a, m in zip(x, self.orders))

    def fmt(self, x: tuple) -> str:
        return "(" + ",".join(str(v) for v in x) + ")"

    def __mul__(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.orders + other.orders)


@dataclass(frozen=True, eq=False)
class Cocycle:
    domain: FinAbGroup
    codomain: FinAbGroup
    table: Mapping  # (x, y) -> a, total on domain x domain
    symmetric: bool = True

    @classmethod
    def from_function(cls, B: FinAbGroup, A: FinAbGroup, fn: Callable, symmetric: bool = True) -> "Cocycle":
        els = B.elements()
        return cls(B, A, {(x, y): A.canon(fn(x, y)) for x in els for y in els}, symmetric)

    @classmethod
    def trivial(cls, B: FinAbGroup, A: FinAbGroup) -> "Cocycle":
        return cls.from_function(B, A, lambda x, y: A.zero)

    def __call__(self, x, y) -> tuple:
        return self.table[(x, y)]

    def key(self) -> tuple:
        return tuple(self.table[(x, y)] for x in self.domain.elements() for y in self.domain.elements())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cocycle)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.key()))

    def add(self, other: "Cocycle") -> "Cocycle":
        _same(self, other)
        A = self.codomain
        return Cocycle(self.domain, A, {k: A.add(v, other.table[k]) for k, v in self.table.items()},
                       self.symmetric and other.symmetric)

    def neg(self) -> "Cocycle":
        A = self.codomain
        return Cocycle(self.domain, A, {k: A.neg(v) for k, v in self.table.items()}, self.symmetric)

    def sub(self, other: "Cocycle") -> "Cocycle":
        return self.add(other.neg())

    def is_trivial(self) -> bool:
        z = self.codomain.zero
        return all(v == z for v in self.table.values())


def _same(f: Cocycle, g: Cocycle) -> None:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("cocycles have different domain or codomain")


# -- checks -----------------------------------------------------------------


def cocycle_violations(f: Cocycle, limit: int = 20) -> dict:
    B, A = f.domain, f.codomain
    els = B.elements()
    z = A.zero
    out: dict = {"missing": [], "normalization": [], "cocycle": [], "symmetry": []}
    for x in els:
        for y in els:
            if (x, y) not in f.table:
                out["missing"].append((x, y))
    if out["missing"]:
        return out
    for x in els:
        if f(B.zero, x) != z or f(x, B.zero) != z:
            out["normalization"].append(x)
    for x in els:
        for y in els:
            fxy = f(x, y)
            if f.symmetric and fxy != f(y, x):
                out["symmetry"].append((x, y))
            xy = B.add(x, y)
            for w in els:
                if A.add(f(xy, w), fxy) != A.add(f(x, B.add(y, w)), f(y, w)):
                    if len(out["cocycle"]) < limit:
                        out["cocycle"].append((x, y, w))
                    else:
                        break
    return out


def cocycle_check(f: Cocycle) -> Report:
    rep = Report("cocycle_check", {"domain": list(f.domain.orders), "codomain": list(f.codomain.orders),
                                   "symmetric": f.symmetric})
    v = cocycle_violations(f)
    rep.add("total", "f defined on all of B x B", [], v["missing"])
    rep.add("normalized", "f(1,x) = f(x,1) = 1", [], v["normalization"])
    rep.add("cocycle_identity", "f(xy,z)f(x,y) = f(x,yz)f(y,z)", [], v["cocycle"])
    if f.symmetric:
        rep.add("symmetric", "f(x,y) = f(y,x)", [], v["symmetry"])
    return rep.finish()


def is_valid(f: Cocycle) -> bool:
    return not any(cocycle_violations(f, limit=1).values())


# -- coboundaries -----------------------------------------------------------


def coboundary_from(B: FinAbGroup, A: FinAbGroup, psi: Mapping) -> Cocycle:
    """g(x, y) = psi(x + y) - psi(x) - psi(y)."""
    psi = {B.canon(k): A.canon(v) for k, v in psi.items()}
    if psi.get(B.zero, A.zero) != A.zero:
        raise ValueError("psi must send the identity to the identity")
    get = lambda x: psi.get(x, A.zero)
    return Cocycle.from_function(B, A, lambda x, y: A.sub(A.sub(get(B.add(x, y)), get(x)), get(y)))


def _propagate(f: Cocycle, on_gens: dict) -> dict | None:
    """Extend psi from generators by psi(x + e) = psi(x) + psi(e) + f(x, e)."""
    B, A = f.domain, f.codomain
    psi = {B.zero: A.zero}
    frontier = [B.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for e, pe in on_gens.items():
                y = B.add(x, e)
                val = A.add(A.add(psi[x], pe), f(x, e))
                if y not in psi:
                    psi[y] = val
                    nxt.append(y)
                elif psi[y] != val:
                    return None
        frontier = nxt
    return psi


def is_coboundary(f: Cocycle, cap: int = ENUM_CAP) -> dict:
    """Return psi with f = d(psi); raise NotCoboundary if none exists.

    psi is pinned down by its values on the standard generators of B, so the
    search runs over |A|^(number of cyclic factors) candidates."""
    B, A = f.domain, f.codomain
    if not is_valid(f):
        raise InvalidCocycle("table is not a normalized 2-cocycle")
    gens = B.gens()
    if A.order ** len(gens) > cap:
        raise TooLarge(f"{A.order ** len(gens)} candidate witnesses exceed cap {cap}", predicted=A.order ** len(gens))
    for x in B.elements():
        for y in B.elements():
            if f(x, y) != f(y, x):
                raise NotCoboundary("asymmetric cocycle on an abelian group is never a coboundary")
    for vals in product(A.elements(), repeat=len(gens)):
        psi = _propagate(f, dict(zip(gens, vals)))
        if psi is not None and coboundary_from(B, A, psi) == f:
            return psi
    raise NotCoboundary("no psi with f = d(psi)")


def is_coboundary_bruteforce(f: Cocycle, cap: int = ENUM_CAP) -> dict | None:
    """Reference search over every normalized psi: B -> A."""
    B, A = f.domain, f.codomain
    rest = [x for x in B.elements() if x != B.zero]
    if A.order ** len(rest) > cap:
        raise TooLarge("brute-force witness search too large", predicted=A.order ** len(rest))
    for vals in product(A.elements(), repeat=len(rest)):
        psi = dict(zip(rest, vals))
        psi[B.zero] = A.zero
        if coboundary_from(B, A, psi) == f:
            return psi
    return None


def cohomologous(f1: Cocycle, f2: Cocycle) -> tuple[bool, dict | None]:
    _same(f1, f2)
    try:
        return True, is_coboundary(f1.sub(f2))
    except NotCoboundary:
        return False, None


# -- Ext --------------------------------------------------------------------


@dataclass
class ExtResult:
    domain: FinAbGroup
    codomain: FinAbGroup
    order: int
    representatives: list
    symmetric_count: int
    coboundary_count: int

    @property
    def predicted(self) -> int:
        return ext_order_formula(self.domain, self.codomain)


def ext_order_formula(B: FinAbGroup, A: FinAbGroup) -> int:
    return prod(gcd(m, n) for m in B.orders for n in A.orders)


def symmetric_cocycles(B: FinAbGroup, A: FinAbGroup, cap: int = ENUM_CAP) -> list[Cocycle]:
    """All normalized symmetric 2-cocycles B x B -> A."""
    rest = [x for x in B.elements() if x != B.zero]
    pairs = [(x, y) for i, x in enumerate(rest) for y in rest[i:]]
    if A.order ** len(pairs) > cap:
        raise TooLarge(f"{A.order ** len(pairs)} symmetric tables exceed cap {cap}", predicted=A.order ** len(pairs))
    out = []
    zero_rows = {(B.zero, x): A.zero for x in B.elements()} | {(x, B.zero): A.zero for x in B.elements()}
    for vals in product(A.elements(), repeat=len(pairs)):
        table = dict(zero_rows)
        for (x, y), v in zip(pairs, vals):
            table[(x, y)] = v
            table[(y, x)] = v
        f = Cocycle(B, A, table, True)
        if is_valid(f):
            out.append(f)
    return out


def coboundary_group(B: FinAbGroup, A: FinAbGroup, cap: int = ENUM_CAP) -> set[Cocycle]:
    rest = [x for x in B.elements() if x != B.zero]
    if A.order ** len(rest) > cap:
        raise TooLarge("coboundary enumeration too large", predicted=A.order ** len(rest))
    out = set()
    for vals in product(A.elements(), repeat=len(rest)):
        out.add(coboundary_from(B, A, dict(zip(rest, vals))))
    return out


def ext_group(B: FinAbGroup, A: FinAbGroup, cap: int = ENUM_CAP) -> ExtResult:
    """Symmetric cocycles modulo coboundaries, by explicit coset decomposition."""
    S = symmetric_cocycles(B, A, cap)
    Bd = coboundary_group(B, A, cap)
    seen: set = set()
    reps = []
    for f in S:
        if f in seen:
            continue
        coset = {f.add(g) for g in Bd}
        seen |= coset
        reps.append(min(coset, key=lambda c: c.key()))
    reps.sort(key=lambda c: c.key())
    return ExtResult(B, A, len(reps), reps, len(S), len(Bd))


# -- extensions -------------------------------------------------------------


def extension_group(f: Cocycle) -> FiniteGroup:
    """E(f) on B x A with (b1, a1)(b2, a2) = (b1 b2, a1 a2 f(b1, b2))."""
    if not is_valid(f):
        raise InvalidCocycle("extension needs a normalized 2-cocycle")
    B, A = f.domain, f.codomain
    els = [(b, a) for b in B.elements() for a in A.elements()]
    return FiniteGroup(els, lambda x, y: (B.add(x[0], y[0]), A.add(A.add(x[1], y[1]), f(x[0], y[0]))))


def extension_iso_check(f1: Cocycle, f2: Cocycle, psi: Mapping) -> bool:
    """With f1 - f2 = d(psi), (b, a) -> (b, a - psi(b)) maps E(f1) onto E(f2)."""
    B, A = f1.domain, f1.codomain
    E1, E2 = extension_group(f1), extension_group(f2)
    phi = {(b, a): (b, A.sub(a, psi[b])) for (b, a) in E1.elements}
    if len(set(phi.values())) != E1.order:
        return False
    for x in E1.elements:
        for y in E1.elements:
            xy = E1.elements[E1.table[E1.index[x], E1.index[y]]]
            if phi[xy] != E2.elements[E2.table[E2.index[phi[x]], E2.index[phi[y]]]]:
                return False
    return True


# -- splittings -------------------------------------------------------------


def _span(B: FinAbGroup, gens: Sequence) -> set:
    out = {B.zero}
    frontier = [B.zero]
    gens = [B.canon(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = B.add(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def _split_projections(B: FinAbGroup, t_gens: Sequence, b_gens: Sequence) -> tuple[set, set, dict]:
    T, Bf = _span(B, t_gens), _span(B, b_gens)
    if T & Bf != {B.zero} or len(T) * len(Bf) != B.order:
        raise BadSplit("factors do not decompose the group as a direct product")
    proj = {}
    for t in T:
        for b in Bf:
            proj[B.add(t, b)] = (t, b)
    return T, Bf, proj


def _restrict(f: Cocycle, sub: set, proj: dict, part: int) -> Cocycle:
    """f restricted to sub x sub, pulled back along the projection onto sub."""
    B, A = f.domain, f.codomain
    return Cocycle.from_function(B, A, lambda x, y: f(proj[x][part], proj[y][part]), f.symmetric)


@dataclass
class CotResult:
    is_cot: bool
    torsion_part: Cocycle
    free_part: Cocycle
    witness: dict | None
    split_cohomologous: bool
    decomposition: dict = field(default_factory=dict)


def cot_check(f: Cocycle, t_gens: Sequence, b_gens: Sequence,
              codomain_split: tuple[Sequence, Sequence] | None = None) -> CotResult:
    """Coboundary-on-torsion test for a domain split as T x B (generator lists)."""
    B, A = f.domain, f.codomain
    T, Bf, proj = _split_projections(B, t_gens, b_gens)
    f1 = _restrict(f, T, proj, 0)
    f2 = _restrict(f, Bf, proj, 1)
    try:
        witness = {x: v for x, v in is_coboundary(f1).items() if x in T}
        cot = True
    except NotCoboundary:
        witness, cot = None, False
    same, _ = cohomologous(f, f1.add(f2))
    decomposition = {}
    if codomain_split is not None:
        TA, BA, pa = _split_projections(A, *codomain_split)
        pick = lambda g, part: Cocycle.from_function(B, A, lambda x, y: pa[g(x, y)][part], g.symmetric)
        decomposition = {"g1": pick(f1, 0), "g2": pick(f1, 1), "h1": pick(f2, 0), "h2": pick(f2, 1)}
    return CotResult(cot, f1, f2, witness, same, decomposition)


# -- product domains --------------------------------------------------------


@dataclass
class BnFactorization:
    factors: list  # f_i on the i-th cyclic factor
    product_cohomologous: bool
    product_witness: dict | None
    fn: Cocycle
    fn_cohomologous_to_inverse: bool
    fn_witness: dict | None
    diag: dict


def bn_factorize(f: Cocycle, diag: Mapping | None = None, seed: int = 0) -> BnFactorization:
    """Factor f on prod_i B_i (all factors equal) and re-derive f_n ~ f^-1.

    f_n is read off inside E(f): with Delta(a) = (a, ..., a) and
    d_n(a) = diag(a) * s(Delta(a))^-1, d_n(a) d_n(b) = d_n(ab) f_n(a, b)."""
    B, A = f.domain, f.codomain
    if len(set(B.orders)) != 1:
        raise ValueError("factorization needs identical cyclic factors")
    m, k = B.orders[0], len(B.orders)
    C = FinAbGroup((m,))

    def inject(i: int, x: tuple) -> tuple:
        return tuple(x[0] if t == i else 0 for t in range(k))

    factors = [Cocycle.from_function(C, A, lambda x, y, i=i: f(inject(i, x), inject(i, y))) for i in range(k)]
    prod_f = Cocycle.from_function(
        B, A, lambda x, y: _sum(A, (factors[i]((x[i],), (y[i],)) for i in range(k)))
    )
    same, w1 = cohomologous(f, prod_f)

    rng = random.Random(seed)
    if diag is None:
        diag = {c: A.canon(tuple(rng.randrange(n) for n in A.orders)) for c in C.elements()}
        diag[C.zero] = A.zero
    diag = {C.canon(c): A.canon(v) for c, v in diag.items()}

    def delta(c: tuple) -> tuple:
        return (c[0],) * k

    def emul(x, y):
        return (B.add(x[0], y[0]), A.add(A.add(x[1], y[1]), f(x[0], y[0])))

    def einv(x):
        return (B.neg(x[0]), A.neg(A.add(x[1], f(x[0], B.neg(x[0])))))

    def dn(c):
        return emul((B.zero, diag[c]), einv((delta(c), A.zero)))

    def fn_val(x, y):
        lhs = emul(dn(x), dn(y))
        r = emul(lhs, einv(dn(C.add(x, y))))
        if r[0] != B.zero:
            raise AssertionError("d_n relation left the central subgroup")
        return r[1]

    fn = Cocycle.from_function(C, A, fn_val)
    f_diag = Cocycle.from_function(C, A, lambda x, y: f(delta(x), delta(y)))
    same_n, w2 = cohomologous(fn, f_diag.neg())
    return BnFactorization(factors, same, w1, fn, same_n, w2, diag)


def _sum(A: FinAbGroup, vals) -> tuple:
    acc = A.zero
    for v in vals:
        acc = A.add(acc, v)
    return acc


# -- standard examples ------------------------------------------------------


def carry_cocycle(m: int, A: FinAbGroup, value=1, factor: int = 0, domain: FinAbGroup | None = None) -> Cocycle:
    """The carry cocycle of Z/m^2 -> Z/m pushed into A, on one cyclic factor:
    f(x, y) = value if x_i + y_i >= m else 0."""
    B = domain or FinAbGroup((m,))
    if B.orders[factor] != m:
        raise ValueError("factor order mismatch")
    v = A.canon(value)
    return Cocycle.from_function(B, A, lambda x, y: v if x[factor] + y[factor] >= m else A.zero)
