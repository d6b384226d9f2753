"""Finite groups given by an element list and a product, stored as a Cayley table."""

from __future__ import annotations

from collections import Counter
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import TooLarge

TABLE_CAP = 4096


class NotClosed(ValueError):
    pass


class FiniteGroup:
    def __init__(self, elements: Sequence[Hashable], mul: Callable, cap: int = TABLE_CAP):
        if len(elements) > cap:
            raise TooLarge(f"group of order {len(elements)} exceeds table cap {cap}", predicted=len(elements))
        self.elements = list(elements)
        self.index = {x: k for k, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        N = len(self.elements)
        table = np.empty((N, N), dtype=np.int32)
        for a, x in enumerate(self.elements):
            row = table[a]
            for b, y in enumerate(self.elements):
                k = self.index.get(mul(x, y))
                if k is None:
                    raise NotClosed(f"product of elements {a} and {b} leaves the set")
                row[b] = k
        self.table = table
        self._identity: int | None = None
        self._inverse: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    # -- axioms ---------------------------------------------------------

    def identity_index(self) -> int | None:
        if self._identity is None:
            ar = np.arange(self.order)
            for e in range(self.order):
                if (self.table[e] == ar).all() and (self.table[:, e] == ar).all():
                    self._identity = e
                    break
        return self._identity

    def inverse_indices(self) -> np.ndarray | None:
        if self._inverse is None:
            e = self.identity_index()
            if e is None:
                return None
            hits = self.table == e
            if not (hits.sum(axis=1) == 1).all():
                return None
            inv = hits.argmax(axis=1)
            if not (self.table[inv, np.arange(self.order)] == e).all():
                return None
            self._inverse = inv
        return self._inverse

    def associativity_failures(self, rows: Iterable[int] | None = None) -> int:
        """Count triples (a, b, c) with (ab)c != a(bc); vectorised one a at a time."""
        T = self.table
        bad = 0
        for a in rows if rows is not None else range(self.order):
            bad += int((T[T[a, :], :] != T[a, T]).sum())
        return bad

    def check_axioms(self) -> dict:
        e = self.identity_index()
        return {
            "closure": True,  # enforced when the table was built
            "associativity_failures": self.associativity_failures(),
            "identity": e is not None,
            "inverses": e is not None and self.inverse_indices() is not None,
        }

    def is_group(self) -> bool:
        ax = self.check_axioms()
        return ax["identity"] and ax["inverses"] and ax["associativity_failures"] == 0

    # -- structure ------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse_indices()[a])

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def center(self) -> list[int]:
        T = self.table
        return [a for a in range(self.order) if (T[a, :] == T[:, a]).all()]

    def element_orders(self) -> list[int]:
        e = self.identity_index()
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != e:
                x = int(self.table[x, a])
                k += 1
            out.append(k)
        return out

    def order_multiset(self) -> dict[int, int]:
        return dict(sorted(Counter(self.element_orders()).items()))

    def generated(self, gens: Iterable[int]) -> list[int]:
        e = self.identity_index()
        gens = list(dict.fromkeys(gens))
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def commutator(self, a: int, b: int) -> int:
        inv = self.inverse_indices()
        T = self.table
        return int(T[T[inv[a], inv[b]], T[a, b]])

    def commutator_set(self) -> set[int]:
        inv = self.inverse_indices()
        T = self.table
        left = T[inv[:, None], inv[None, :]]  # a^-1 b^-1
        return set(np.unique(T[left, T]).tolist())

    def derived_subgroup(self) -> list[int]:
        return self.generated(self.commutator_set())

    def to_elements(self, idx: Iterable[int]) -> list:
        return [self.elements[k] for k in idx]
