"""Commutator-defined subgroups evaluated by enumeration, isolators, and the
index computations around G / (G' Z(G)) for GL_n over prime fields."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import CharTwo, NotField, NotNormal, TooLarge
from .matgroup import (
    DEFAULT_CAP,
    GroupSet,
    Matrix,
    center_of,
    closure,
    commutator,
    det,
    diag_elem,
    diag_full,
    enumerate_group,
    gl_order,
    isogeny_kernel,
    mat_inv,
    mat_mul,
    mat_pow,
    scalar_elem,
    transvection,
)
from .report import Report
from .ring import RingSpec, nth_power_classes, roots_of_unity, units


@dataclass
class SubgroupSet:
    host: GroupSet
    elements: frozenset
    label: str = ""
    note: str = ""
    extra: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def as_groupset(self) -> GroupSet:
        return GroupSet(self.host.spec, self.host.n, self.elements, label=self.label)

    def is_subgroup(self) -> bool:
        return self.as_groupset().check_closure()


def _commutes(x: Matrix, y: Matrix) -> bool:
    return mat_mul(x, y) == mat_mul(y, x)


def _require_odd_char(spec: RingSpec) -> None:
    if spec.neg(spec.one) == spec.one:
        raise CharTwo(f"d_i(-1) is the identity over {spec}")


def centralizer(host: GroupSet, s) -> SubgroupSet:
    s = list(s)
    els = frozenset(x for x in host.elements if all(_commutes(x, a) for a in s))
    return SubgroupSet(host, els, label=f"C({host.label})")


def center(host: GroupSet) -> SubgroupSet:
    z = center_of(host)
    return SubgroupSet(host, z.elements, label=f"Z({host.label})")


# -- derived subgroup -------------------------------------------------------


def conjugacy_classes(host: GroupSet) -> tuple[list[frozenset], dict]:
    """Classes as orbits under conjugation by the recorded generators."""
    gens = list(host.generators) or sorted(host.elements)
    pairs = [(g, mat_inv(g)) for g in gens]
    class_of: dict = {}
    classes: list[frozenset] = []
    for x in sorted(host.elements):
        if x in class_of:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g, gi in pairs:
                    c = mat_mul(mat_mul(gi, y), g)
                    if c not in orbit:
                        orbit.add(c)
                        nxt.append(c)
            frontier = nxt
        k = len(classes)
        classes.append(frozenset(orbit))
        for y in orbit:
            class_of[y] = k
    return classes, class_of


def derived_subgroup(host: GroupSet, width: int | None = None) -> SubgroupSet:
    """Products of at most ``width`` commutators, grown until stable.

    Every set involved is a union of conjugacy classes, so products are only
    formed from one representative per class."""
    classes, class_of = conjugacy_classes(host)
    comm_classes: set[int] = set()
    for cls in classes:
        x = min(cls)
        xi = mat_inv(x)
        for y in cls:  # [x, g] = x^-1 x^g
            comm_classes.add(class_of[mat_mul(xi, y)])
    comm = frozenset().union(*(classes[k] for k in comm_classes))
    current = set(comm_classes)
    steps = 1
    stable = False
    sizes = [len(comm)]
    while width is None or steps < width:
        grown = set(current)
        for k in current:
            x = min(classes[k])
            for c in comm:
                grown.add(class_of[mat_mul(x, c)])
        if grown == current:
            stable = True
            break
        current = grown
        steps += 1
        sizes.append(sum(len(classes[k]) for k in current))
    if not stable and width is not None:
        # one more step to see whether it would still grow
        probe = set(current)
        for k in current:
            x = min(classes[k])
            probe.update(class_of[mat_mul(x, c)] for c in comm)
        stable = probe == current
    els = frozenset().union(*(classes[k] for k in current))
    return SubgroupSet(host, els, label=f"[{host.label}, {host.label}]",
                       extra={"width": steps, "stable": stable, "sizes": sizes})


# -- formulas on T_n and K_n ------------------------------------------------


def dn_formula(host: GroupSet) -> SubgroupSet:
    """{x : [x, d_i(-1)] = 1 for all i}."""
    spec, n = host.spec, host.n
    _require_odd_char(spec)
    m1 = spec.neg(spec.one)
    ds = [diag_elem(spec, n, i, m1) for i in range(1, n + 1)]
    els = frozenset(x for x in host.elements if all(commutator(x, d).is_identity() for d in ds))
    return SubgroupSet(host, els, label="D_n formula")


def bn_formula(host: GroupSet) -> SubgroupSet:
    """{x : [x, d_i(-1)] = 1 for i < n} inside K_n."""
    spec, n = host.spec, host.n
    _require_odd_char(spec)
    m1 = spec.neg(spec.one)
    ds = [diag_elem(spec, n, i, m1) for i in range(1, n)]
    els = frozenset(x for x in host.elements if all(commutator(x, d).is_identity() for d in ds))
    return SubgroupSet(host, els, label="B_n formula")


def dk_formula(host: GroupSet, k: int) -> SubgroupSet:
    """{x in B_n : [x, t_ij(1)] = 1 for all i, j != k}, with t_ij taken in the host."""
    spec, n = host.spec, host.n
    if not 1 <= k < n:
        raise ValueError(f"k must lie in 1..{n - 1}; K_n has no d_{n} factor")
    bn = bn_formula(host)
    ts = [
        transvection(spec, n, i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j and k not in (i, j) and transvection(spec, n, i, j) in host.elements
    ]
    els = frozenset(x for x in bn.elements if all(_commutes(x, t) for t in ts))
    return SubgroupSet(host, els, label=f"d_{k} formula")


def analytic_bn(spec: RingSpec, n: int) -> frozenset:
    us = units(spec)
    from itertools import product

    return frozenset(diag_full(spec, list(b) + [spec.one]) for b in product(us, repeat=n - 1))


def analytic_dk(spec: RingSpec, n: int, k: int) -> frozenset:
    return frozenset(diag_elem(spec, n, k, u) for u in units(spec))


# -- Delta_1 ------------------------------------------------------------------


def _phi(x: Matrix) -> bool:
    """Conjugation by x maps t_1j, t_i1 into their root subgroups and fixes the rest."""
    spec, n = x.spec, x.n
    xi = mat_inv(x)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            t = transvection(spec, n, i, j)
            c = mat_mul(mat_mul(xi, t), x)
            if 1 in (i, j):
                if c != transvection(spec, n, i, j, c[i, j]):
                    return False
            elif c != t:
                return False
    return True


def delta1_formula(host: GroupSet | None = None, spec: RingSpec | None = None, n: int | None = None,
                   cap: int = DEFAULT_CAP) -> SubgroupSet:
    """Evaluate the Delta_1 formula on a GL_n host; hosts beyond the cap are
    searched inside D_n (which contains d_1(F^x) Z) and the restriction is noted."""
    note = ""
    if host is None:
        try:
            host = enumerate_group(spec, n, "GL", cap=cap)
            search = host.elements
        except TooLarge:
            host = GroupSet(spec, n, frozenset(), label=f"GL_{n}({spec})")
            search = enumerate_group(spec, n, "D", cap=cap).elements
            note = "restricted to D_n"
    else:
        search = host.elements
    els = frozenset(x for x in search if _phi(x))
    return SubgroupSet(host, els, label="Delta_1 formula", note=note)


def analytic_delta1(spec: RingSpec, n: int) -> frozenset:
    us = units(spec)
    return frozenset(mat_mul(diag_elem(spec, n, 1, a), scalar_elem(spec, n, z)) for a in us for z in us)


# -- isolators ----------------------------------------------------------------


def _check_normal(host: GroupSet, m: frozenset) -> None:
    gens = list(host.generators) or sorted(host.elements)
    for g in gens:
        gi = mat_inv(g)
        for x in m:
            if mat_mul(mat_mul(gi, x), g) not in m:
                raise NotNormal("subgroup is not normal in the host")


def isolator(host: GroupSet, m, mode: str = "fixed", exponent: int | None = None) -> SubgroupSet:
    """fixed: {g : g^e in M}; any: {g : g^k in M for some k >= 1}."""
    m = frozenset(m.elements if isinstance(m, (SubgroupSet, GroupSet)) else m)
    _check_normal(host, m)
    if mode == "fixed":
        e = exponent if exponent is not None else host.n
        els = frozenset(g for g in host.elements if mat_pow(g, e) in m)
        label = f"Is_{e}"
    elif mode == "any":
        out = set()
        for g in host.elements:
            x = g
            while True:
                if x in m:
                    out.add(g)
                    break
                if x.is_identity():  # powers cycle without meeting M
                    break
                x = mat_mul(x, g)
        els = frozenset(out)
        label = "Is_any"
    else:
        raise ValueError("mode must be 'fixed' or 'any'")
    return SubgroupSet(host, els, label=label)


# -- index computations ------------------------------------------------------


def _det_subgroup(spec: RingSpec, gens) -> frozenset:
    out = {spec.one}
    frontier = [spec.one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = spec.mul(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def in_sl_times_center(a: Matrix) -> bool:
    """a in SL_n Z  iff  a = s (lam I) with det s = 1 for some scalar lam."""
    spec, n = a.spec, a.n
    for lam in units(spec):
        if det(mat_mul(a, scalar_elem(spec, n, spec.inv(lam)))) == spec.one:
            return True
    return False


def coset_count_sl_z(spec: RingSpec, n: int) -> int:
    """Number of cosets of SL_n Z in GL_n, by comparing the transversal d_1(F^x)."""
    reps: list[Matrix] = []
    for a in units(spec):
        d = diag_elem(spec, n, 1, a)
        if not any(in_sl_times_center(mat_mul(d, mat_inv(r))) for r in reps):
            reps.append(d)
    return len(reps)


def a4_sequence_report(spec: RingSpec, n: int, cap: int = DEFAULT_CAP) -> Report:
    if spec.kind != "prime_field":
        raise NotField(f"{spec} is not a prime field")
    q = spec.modulus
    rep = Report("a4", {"ring": str(spec), "n": n})
    _, power_index = nth_power_classes(spec, n)
    oracle = gcd(n, q - 1)
    rep.add("power_class_index", "|F^x / (F^x)^n| = gcd(n, q-1)", oracle, power_index)
    rep.add("coset_count", "|G / (G' Z)| by coset counting", oracle, coset_count_sl_z(spec, n))
    kern = isogeny_kernel(spec, n)
    rep.add("isogeny_kernel", "|ker(SL_n x Z -> G)| = gcd(n, q-1)", oracle, len(kern))
    rep.add("roots_of_unity", "|{w : w^n = 1}|", oracle, len(roots_of_unity(spec, n)))

    gl = gl_order(spec, n)
    try:
        G = enumerate_group(spec, n, "GL", cap=cap)
    except TooLarge:
        G = None
    if G is not None:
        rep.parameters["mode"] = "enumeration"
        d = derived_subgroup(G)
        sl = frozenset(x for x in G.elements if det(x) == spec.one)
        rep.add("derived_is_sl", "G' = SL_n", len(sl), len(d), passed=d.elements == sl)
        Z = center(G).elements
        gz = frozenset(mat_mul(x, z) for x in d.elements for z in Z)
        rep.add("index_G_mod_GZ", "|G| / |G' Z|", oracle, len(G) // len(gz))
        is_gz = isolator(G, gz, "fixed", n)
        is_d = isolator(G, d.elements, "fixed", n)
        is_d_z = frozenset(mat_mul(x, z) for x in is_d.elements for z in Z)
        chain = [len(G), len(is_gz), len(is_d_z), len(is_d), len(d)]
        any_d = isolator(G, d.elements, "any")
        rep.add("any_exponent_isolator", "finite groups are torsion: Is_any(G') = G", len(G), len(any_d))
        delta = delta1_formula(G)
        gen = closure(sorted(delta.elements) + list(_sl_gens(spec, n)), spec, n)
        rep.add("generated_by_delta1_and_derived", "<Delta_1, G'> = G", len(G), len(gen))
    else:
        # every group in the chain contains SL_n, so it is determined by its determinant image
        rep.parameters["mode"] = "determinant quotient (host exceeds cap)"
        us = units(spec)
        nth = frozenset(spec.pow(u, n) for u in us)
        mu = frozenset(u for u in us if spec.pow(u, n) == spec.one)
        sl = gl // (q - 1)
        img_is_gz = frozenset(u for u in us if spec.pow(u, n) in nth)
        img_is_d_z = _det_subgroup(spec, list(mu) + list(nth))
        chain = [gl, sl * len(img_is_gz), sl * len(img_is_d_z), sl * len(mu), sl]
        rep.add("index_G_mod_GZ", "|F^x| / |(F^x)^n|", oracle, (q - 1) // len(nth))
    rep.add("chain_monotone", "G >= Is(G'Z) >= Is(G')Z >= Is(G') >= G'", True,
            all(a >= b and a % b == 0 for a, b in zip(chain, chain[1:])))
    rep.add("chain_top", "G = Is(G'Z)", chain[0], chain[1])
    rep.add("chain_orders", "orders along the chain (informational)", None, chain, passed=True)
    rep.add("chain_indices", "successive indices (informational)", None,
            [a // b for a, b in zip(chain, chain[1:])], passed=True)
    return rep.finish()


def _sl_gens(spec: RingSpec, n: int):
    return [transvection(spec, n, i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def d1_power_identity(spec: RingSpec, n: int) -> Report:
    """d_1(a^n) = diag(a) prod_{i>=2} d_1(a) d_i(a^-1) for every unit a."""
    rep = Report("d1_power_identity", {"ring": str(spec), "n": n})
    bad = []
    us = units(spec)
    for a in us:
        lhs = diag_elem(spec, n, 1, spec.pow(a, n))
        rhs = scalar_elem(spec, n, a)
        ai = spec.inv(a)
        for i in range(2, n + 1):
            rhs = mat_mul(rhs, mat_mul(diag_elem(spec, n, 1, a), diag_elem(spec, n, i, ai)))
        if lhs != rhs:
            bad.append(a)
    rep.add("identity_holds", "d_1(a^n) = diag(a) prod d_1(a) d_i(a^-1)", {"failures": []},
            {"failures": bad, "units": len(us)}, passed=not bad)
    return rep.finish()
