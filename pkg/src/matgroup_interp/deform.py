"""Abelian deformations of T_n and GL_n over prime fields.

T_n(R, f, Z) has elements (u, (z, b)) with u in UT_n, z in Z and b in
B_n = (R^x)^(n-1). The torus (z, b) multiplies through the cocycle f and
b acts on UT_n by conjugation with D_b = diag(b, 1), written u^b = D_b^-1 u D_b.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .cohom import Cocycle, FinAbGroup, cohomologous, is_valid
from .errors import BadRingSpec, InconsistentContext, InvalidCocycle, NotTrivialCocycle, TooLarge
from .fingroup import FiniteGroup
from .matgroup import (
    Matrix,
    diag_elem,
    diag_full,
    enumerate_group,
    mat_inv,
    mat_mul,
    random_element,
    scalar_elem,
)
from .report import Report
from .ring import PRIME_FIELD, RingSpec, primitive_root


class UnitLog:
    """Discrete logarithm on GF(q)^x relative to the smallest primitive root."""

    def __init__(self, spec: RingSpec):
        if spec.kind != PRIME_FIELD:
            raise BadRingSpec("deformations are built over prime fields")
        self.spec = spec
        self.g = primitive_root(spec)
        self.m = spec.modulus - 1
        self.exp = [pow(self.g, k, spec.modulus) for k in range(self.m)]
        self.log = {u: k for k, u in enumerate(self.exp)}

    def group(self, copies: int) -> FinAbGroup:
        return FinAbGroup((self.m,) * copies)

    def to_log(self, b: Sequence[int]) -> tuple:
        return tuple(self.log[x] for x in b)

    def from_log(self, k: Sequence[int]) -> tuple:
        return tuple(self.exp[x % self.m] for x in k)


# -- T_n(R, f, Z) ------------------------------------------------------------


@dataclass(frozen=True)
class DeformedTorusElem:
    z: tuple
    b: tuple


@dataclass(frozen=True)
class DeformedTnElem:
    u: Matrix
    t: DeformedTorusElem


@dataclass(eq=False)
class TnDeformation:
    spec: RingSpec
    n: int
    Z: FinAbGroup
    f: Cocycle
    _units: UnitLog = field(init=False, repr=False)
    _D: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._units = UnitLog(self.spec)
        expected = self._units.group(self.n - 1)
        if self.f.domain != expected or self.f.codomain != self.Z:
            raise InvalidCocycle(f"cocycle must map {expected.orders} x {expected.orders} -> {self.Z.orders}")
        if not is_valid(self.f):
            raise InvalidCocycle("f is not a normalized 2-cocycle")
        if any(self.f(x, y) != self.f(y, x) for (x, y) in self.f.table):
            raise InvalidCocycle("f must be symmetric")

    @classmethod
    def trivial(cls, spec: RingSpec, n: int, Z: FinAbGroup) -> "TnDeformation":
        B = UnitLog(spec).group(n - 1)
        return cls(spec, n, Z, Cocycle.trivial(B, Z))

    @property
    def B(self) -> FinAbGroup:
        return self.f.domain

    @property
    def units(self) -> UnitLog:
        return self._units

    def D(self, b: tuple) -> tuple[Matrix, Matrix]:
        hit = self._D.get(b)
        if hit is None:
            d = diag_full(self.spec, list(b) + [1])
            hit = self._D[b] = (d, mat_inv(d))
        return hit

    def act(self, b: tuple, u: Matrix) -> Matrix:
        d, d_inv = self.D(b)
        return mat_mul(mat_mul(d_inv, u), d)

    def identity(self) -> DeformedTnElem:
        return DeformedTnElem(Matrix.identity(self.spec, self.n), DeformedTorusElem(self.Z.zero, (1,) * (self.n - 1)))

    def torus_elements(self) -> list[DeformedTorusElem]:
        return [DeformedTorusElem(z, self._units.from_log(k)) for k in self.B.elements() for z in self.Z.elements()]

    def elements(self, cap: int = 4096) -> list[DeformedTnElem]:
        size = self.order
        if size > cap:
            raise TooLarge(f"deformation of order {size} exceeds cap {cap}", predicted=size)
        ut = sorted(enumerate_group(self.spec, self.n, "UT").elements)
        return [DeformedTnElem(u, t) for u in ut for t in self.torus_elements()]

    @property
    def order(self) -> int:
        q = self.spec.modulus
        return q ** (self.n * (self.n - 1) // 2) * self.B.order * self.Z.order

    def group(self, cap: int = 4096) -> FiniteGroup:
        return FiniteGroup(self.elements(cap), lambda x, y: tn_product(self, x, y), cap=cap)


def torus_product(d: TnDeformation, x: DeformedTorusElem, y: DeformedTorusElem) -> DeformedTorusElem:
    lg = d.units
    k1, k2 = lg.to_log(x.b), lg.to_log(y.b)
    z = d.Z.add(d.Z.add(x.z, y.z), d.f(k1, k2))
    return DeformedTorusElem(z, tuple(d.spec.mul(a, c) for a, c in zip(x.b, y.b)))


def tn_product(d: TnDeformation, x: DeformedTnElem, y: DeformedTnElem) -> DeformedTnElem:
    return DeformedTnElem(mat_mul(x.u, d.act(x.t.b, y.u)), torus_product(d, x.t, y.t))


def tn_center(d: TnDeformation, group: FiniteGroup | None = None) -> list[DeformedTnElem]:
    G = group or d.group()
    return G.to_elements(G.center())


def expected_center(d: TnDeformation) -> set:
    I = Matrix.identity(d.spec, d.n)
    one = (1,) * (d.n - 1)
    return {DeformedTnElem(I, DeformedTorusElem(z, one)) for z in d.Z.elements()}


def embedded_ut(d: TnDeformation) -> set:
    one = (1,) * (d.n - 1)
    return {
        DeformedTnElem(u, DeformedTorusElem(d.Z.zero, one))
        for u in enumerate_group(d.spec, d.n, "UT").elements
    }


def group_axiom_report(d: TnDeformation, G: FiniteGroup | None = None) -> Report:
    G = G or d.group()
    rep = Report("tn_deformation", {"ring": str(d.spec), "n": d.n, "Z": list(d.Z.orders),
                                    "f_trivial": d.f.is_trivial()})
    ax = G.check_axioms()
    rep.add("order", "|UT_n| |B_n| |Z|", d.order, G.order)
    rep.add("associativity", "(xy)z = x(yz) for all triples", 0, ax["associativity_failures"])
    rep.add("identity", "identity element exists", True, ax["identity"])
    rep.add("inverses", "every element has an inverse", True, ax["inverses"])
    rep.add("center_is_Z", "Z(T_n(R,f,Z)) = Z", sorted(map(_key, expected_center(d))),
            sorted(map(_key, tn_center(d, G))))
    derived = set(G.to_elements(G.derived_subgroup()))
    rep.add("derived_is_UT", "derived subgroup = UT_n", len(embedded_ut(d)), len(derived),
            passed=derived == embedded_ut(d))
    return rep.finish()


def _key(x: DeformedTnElem):
    return (x.u.entries, x.t.z, x.t.b)


def trivial_collapse_iso(d: TnDeformation) -> dict:
    """(u, (z, b)) -> u D_b^-1 (g^z I) for f trivial and Z = Z/(q-1)."""
    if not d.f.is_trivial():
        raise NotTrivialCocycle("collapse needs the trivial cocycle")
    if d.Z.orders != (d.units.m,):
        raise ValueError(f"Z must be cyclic of order {d.units.m} to match the scalars")
    lg = d.units
    return {
        x: mat_mul(mat_mul(x.u, d.D(x.t.b)[1]), scalar_elem(d.spec, d.n, lg.exp[x.t.z[0]]))
        for x in d.elements()
    }


def collapse_report(d: TnDeformation) -> Report:
    phi = trivial_collapse_iso(d)
    target = enumerate_group(d.spec, d.n, "T").elements
    rep = Report("trivial_collapse", {"ring": str(d.spec), "n": d.n})
    image = set(phi.values())
    rep.add("bijective", "image = T_n(R), injective", len(target), len(image), passed=image == target and len(phi) == len(image))
    els = list(phi)
    bad = sum(phi[tn_product(d, x, y)] != mat_mul(phi[x], phi[y]) for x in els for y in els)
    rep.add("homomorphism", "phi(xy) = phi(x) phi(y)", {"failures": 0}, {"failures": bad, "pairs": len(els) ** 2},
            passed=bad == 0)
    rep.add("identity", "phi(1) = I", True, phi[d.identity()].is_identity())
    return rep.finish()


def deformation_distinguisher(d1: TnDeformation, d2: TnDeformation) -> dict:
    out: dict = {}
    if d1.f.domain == d2.f.domain and d1.f.codomain == d2.f.codomain:
        same, psi = cohomologous(d1.f, d2.f)
        out["cohomologous"] = same
        out["witness"] = psi
    else:
        out["cohomologous"] = None
    G1, G2 = d1.group(), d2.group()
    out["order_multisets"] = (G1.order_multiset(), G2.order_multiset())
    inv1 = (G1.order, len(G1.center()), len(G1.derived_subgroup()))
    inv2 = (G2.order, len(G2.center()), len(G2.derived_subgroup()))
    out["invariants"] = (inv1, inv2)
    if out["order_multisets"][0] != out["order_multisets"][1]:
        out["verdict"] = "group-nonisomorphic via element-order multiset"
    elif inv1 != inv2:
        out["verdict"] = "group-nonisomorphic via center/derived orders"
    elif out["cohomologous"]:
        out["verdict"] = "extension-equivalent"
    else:
        out["verdict"] = "extension-inequivalent"
    return out


# -- GL_n(L, h, B) ------------------------------------------------------------


@dataclass(frozen=True)
class GlDeformElem:
    b: tuple  # element of B
    c: Matrix  # element of H_1 = SL_n * Z
    k: int  # coset index: a = d_1(g^k), k mod r


@dataclass(eq=False)
class GlDeformContext:
    """Finite stand-in for GL deformations over GF(q).

    The foundation is GL_n(GF(q)) itself: H_1 = {det in (F^x)^n}, the quotient
    A/A^n is Z/r with r = gcd(n, q-1), a(k) = d_1(g^k) and
    p(k1, k2) = a(k1) a(k2) a(k1 + k2 mod r)^-1."""

    spec: RingSpec
    n: int
    Bgrp: FinAbGroup
    h: Cocycle
    p: dict | None = None
    _a: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.units = UnitLog(self.spec)
        self.r = gcd(self.n, self.units.m)
        Q = FinAbGroup((self.r,))
        if self.h.domain != Q or self.h.codomain != self.Bgrp:
            raise InconsistentContext(f"h must map Z/{self.r} x Z/{self.r} -> B")
        if not is_valid(self.h) or any(self.h(x, y) != self.h(y, x) for (x, y) in self.h.table):
            raise InconsistentContext("h must be a normalized symmetric 2-cocycle")
        for k in range(self.r):
            a = diag_elem(self.spec, self.n, 1, self.units.exp[k])
            self._a[k] = (a, mat_inv(a))
        if self.p is None:
            self.p = {
                (k1, k2): mat_mul(mat_mul(self._a[k1][0], self._a[k2][0]), self._a[(k1 + k2) % self.r][1])
                for k1 in range(self.r)
                for k2 in range(self.r)
            }
        self._check_p()

    def _check_p(self) -> None:
        r = self.r
        for k1 in range(r):
            for k2 in range(r):
                v = self.p.get((k1, k2))
                if v is None:
                    raise InconsistentContext(f"p undefined at ({k1}, {k2})")
                if v != self.p[(k2, k1)]:
                    raise InconsistentContext("p must be symmetric")
                if not self.in_sigma_z(v):
                    raise InconsistentContext("p must take values in Sigma_1 * Z")

    def sigma1(self, alpha) -> Matrix:
        s = self.spec
        return diag_full(s, [s.pow(alpha, self.n - 1)] + [s.inv(alpha)] * (self.n - 1))

    def in_sigma_z(self, x: Matrix) -> bool:
        s = self.spec
        us = self.units.exp
        return any(mat_mul(scalar_elem(s, self.n, lam), self.sigma1(al)) == x for lam in us for al in us)

    def in_h1(self, c: Matrix) -> bool:
        from .matgroup import det

        return det(c) in {self.spec.pow(u, self.n) for u in self.units.exp}

    def identity(self) -> GlDeformElem:
        return GlDeformElem(self.Bgrp.zero, Matrix.identity(self.spec, self.n), 0)

    def to_foundation(self, x: GlDeformElem) -> Matrix:
        return mat_mul(x.c, self._a[x.k][0])

    @property
    def h1_order(self) -> int:
        from .matgroup import gl_order

        return gl_order(self.spec, self.n) // self.r

    @property
    def order(self) -> int:
        return self.Bgrp.order * self.h1_order * self.r

    def elements(self, cap: int = 4096) -> list[GlDeformElem]:
        if self.order > cap:
            raise TooLarge(f"deformation of order {self.order} exceeds cap {cap}", predicted=self.order)
        h1 = sorted(c for c in enumerate_group(self.spec, self.n, "GL").elements if self.in_h1(c))
        return [GlDeformElem(b, c, k) for b in self.Bgrp.elements() for c in h1 for k in range(self.r)]

    def random_element(self, rng: random.Random) -> GlDeformElem:
        s = random_element(self.spec, self.n, "SL", rng)
        lam = rng.choice(self.units.exp)
        b = tuple(rng.randrange(m) for m in self.Bgrp.orders)
        return GlDeformElem(b, mat_mul(s, scalar_elem(self.spec, self.n, lam)), rng.randrange(self.r))


def gl_deform_product(ctx: GlDeformContext, x: GlDeformElem, y: GlDeformElem) -> GlDeformElem:
    """(b1, c1 a1)(b2, c2 a2) = (b1 b2 h(a1, a2), c1 c2^a1 p(a1, a2) a1 a2); c^a = a c a^-1."""
    B = ctx.Bgrp
    a1, a1_inv = ctx._a[x.k]
    b = B.add(B.add(x.b, y.b), ctx.h((x.k,), (y.k,)))
    c = mat_mul(mat_mul(x.c, mat_mul(mat_mul(a1, y.c), a1_inv)), ctx.p[(x.k, y.k)])
    return GlDeformElem(b, c, (x.k + y.k) % ctx.r)


def gl_deform_report(ctx: GlDeformContext, samples: int = 2000, seed: int = 0, cap: int = 4096) -> Report:
    """Group axioms, exhaustively when the order fits the cap, else on seeded samples."""
    rep = Report("gl_deformation", {"ring": str(ctx.spec), "n": ctx.n, "B": list(ctx.Bgrp.orders), "r": ctx.r,
                                    "h_trivial": ctx.h.is_trivial()})
    mul = lambda x, y: gl_deform_product(ctx, x, y)
    e = ctx.identity()
    if ctx.order <= cap:
        G = FiniteGroup(ctx.elements(cap), mul, cap=cap)
        ax = G.check_axioms()
        rep.parameters["mode"] = "exhaustive"
        rep.add("order", "|B| |H_1| r", ctx.order, G.order)
        rep.add("associativity", "(xy)z = x(yz)", 0, ax["associativity_failures"])
        rep.add("identity", "(1, 1 1) is neutral", True, G.elements[G.identity_index()] == e)
        rep.add("inverses", "every element has an inverse", True, ax["inverses"])
        els = G.elements
        pairs = ((x, y) for x in els for y in els)
        if ctx.Bgrp.order == 1:
            image = {ctx.to_foundation(x) for x in els}
            gl = enumerate_group(ctx.spec, ctx.n, "GL").elements
            rep.add("foundation_bijection", "(c, a) -> c a is onto GL_n", len(gl), len(image), passed=image == gl)
    else:
        rng = random.Random(seed)
        triples = [(ctx.random_element(rng), ctx.random_element(rng), ctx.random_element(rng)) for _ in range(samples)]
        rep.parameters["mode"] = f"sampled ({samples} triples, seed {seed})"
        bad = sum(mul(mul(x, y), z) != mul(x, mul(y, z)) for x, y, z in triples)
        rep.add("associativity", "(xy)z = x(yz)", 0, bad)
        rep.add("identity", "(1, 1 1) is neutral", 0, sum(mul(e, x) != x or mul(x, e) != x for x, _, _ in triples))
        rep.add("closure", "products stay in B x H_1 x Z/r",
                0, sum(not ctx.in_h1(mul(x, y).c) for x, y, _ in triples))
        pairs = ((x, y) for x, y, _ in triples)
    if ctx.Bgrp.order == 1 or ctx.h.is_trivial():
        bad = sum(ctx.to_foundation(mul(x, y)) != mat_mul(ctx.to_foundation(x), ctx.to_foundation(y)) for x, y in pairs)
        rep.add("foundation_product", "untwisted product = product in GL_n", 0, bad)
    return rep.finish()
