"""Finite groups presented by their multiplication tables.

Elements are the indices ``0..order-1``; ``table[a, b]`` is the index of ``a·b``.
Tables are validated eagerly, so every downstream check may assume a genuine
group.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np
from sympy import isprime
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import DihedralGroup, SymmetricGroup

from coe_rigidity.errors import InvalidGroupTable, NoSuchElement

# Beyond this order automorphisms are found by generator-image search instead
# of testing every bijection.
BRUTE_FORCE_AUT_MAX_ORDER = 8


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    """A finite group given by a validated multiplication table.

    Attributes:
        table: Square ``int64`` array, read-only after construction.
        identity: Index of the identity element.
        name: Display name, e.g. ``"S3"`` or ``"Z/3"``.
        labels: Optional per-element display labels.
    """

    table: np.ndarray
    identity: int = 0
    name: str = ""
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        arr = np.array(self.table, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "table", arr)
        _validate_group(arr, self.identity)
        if self.labels and len(self.labels) != arr.shape[0]:
            raise InvalidGroupTable(f"{len(self.labels)} labels for {arr.shape[0]} elements")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroupTable):
            return NotImplemented
        return self.identity == other.identity and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.identity, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroupTable(name={self.name!r}, order={self.order})"

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmax(self.table == self.identity, axis=1).astype(np.int64)
        inv.setflags(write=False)
        return inv

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def mul(self, a: Any, b: Any) -> Any:
        """Product ``a·b``; accepts indices or index arrays."""
        return self.table[a, b]

    def inverse(self, a: Any) -> Any:
        return self.inverses[a]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = int(self.inverses[a]), -n
        result, base = self.identity, a
        while n:
            if n & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            n >>= 1
        return result

    def element_order(self, a: int) -> int:
        x, n = a, 1
        while x != self.identity:
            x = int(self.table[x, a])
            n += 1
        return n

    def commuting_failure(self) -> tuple[int, int] | None:
        """First pair (a, b) with ab ≠ ba, or None for abelian groups."""
        bad = np.argwhere(self.table != self.table.T)
        if bad.size == 0:
            return None
        return int(bad[0][0]), int(bad[0][1])

    @property
    def is_abelian(self) -> bool:
        return self.commuting_failure() is None

    def subgroup_generated(self, gens: list[int] | set[int] | frozenset[int]) -> frozenset[int]:
        members = {self.identity}
        frontier = deque([self.identity])
        gens = list(gens)
        while frontier:
            x = frontier.popleft()
            for g in gens:
                y = int(self.table[x, g])
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return frozenset(members)

    def is_subgroup(self, subset: set[int] | frozenset[int]) -> bool:
        if self.identity not in subset:
            return False
        idx = np.fromiter(sorted(subset), dtype=np.int64)
        products = self.table[np.ix_(idx, idx)]
        return bool(np.isin(products, idx).all())

    def right_coset(self, subgroup: frozenset[int], g: int) -> frozenset[int]:
        """The right coset H·g."""
        return frozenset(int(self.table[h, g]) for h in subgroup)

    def digest(self) -> str:
        payload = json.dumps({"identity": self.identity, "table": self.table.tolist()})
        return hashlib.sha256(payload.encode()).hexdigest()

    def is_automorphism(self, perm: np.ndarray) -> bool:
        return bool(np.array_equal(perm[self.table], self.table[perm[:, None], perm[None, :]]))

    def automorphisms(self) -> list[tuple[int, ...]]:
        """All automorphisms as image tuples, sorted (the identity map comes first)."""
        if self.order <= BRUTE_FORCE_AUT_MAX_ORDER:
            return self._automorphisms_brute_force()
        return self._automorphisms_by_generators()

    def _automorphisms_brute_force(self) -> list[tuple[int, ...]]:
        others = [a for a in self.elements if a != self.identity]
        found = []
        for images in itertools.permutations(others):
            perm = np.empty(self.order, dtype=np.int64)
            perm[self.identity] = self.identity
            perm[others] = images
            if self.is_automorphism(perm):
                found.append(tuple(int(v) for v in perm))
        return sorted(found)

    def _automorphisms_by_generators(self) -> list[tuple[int, ...]]:
        gens: list[int] = []
        span = frozenset([self.identity])
        for a in self.elements:
            if a not in span:
                gens.append(a)
                span = self.subgroup_generated(gens)
        orders = [self.element_order(g) for g in gens]
        candidates = [[a for a in self.elements if self.element_order(a) == n] for n in orders]

        found = []
        for images in itertools.product(*candidates):
            perm = self._extend_homomorphism(gens, images)
            if perm is not None and self.is_automorphism(perm):
                found.append(tuple(int(v) for v in perm))
        return sorted(found)

    def _extend_homomorphism(self, gens: list[int], images: tuple[int, ...]) -> np.ndarray | None:
        perm = np.full(self.order, -1, dtype=np.int64)
        perm[self.identity] = self.identity
        frontier = deque([self.identity])
        while frontier:
            x = frontier.popleft()
            for g, img in zip(gens, images, strict=True):
                y = int(self.table[x, g])
                value = int(self.table[perm[x], img])
                if perm[y] < 0:
                    perm[y] = value
                    frontier.append(y)
                elif perm[y] != value:
                    return None
        if len(set(perm.tolist())) != self.order:
            return None
        return perm

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"order": self.order, "identity": self.identity, "table": self.table.tolist()}
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> FiniteGroupTable:
        table = data["table"]
        if len(table) != data["order"]:
            raise InvalidGroupTable(f"declared order {data['order']} but table has {len(table)} rows")
        return cls(table=np.array(table, dtype=np.int64), identity=int(data["identity"]), name=data.get("name", ""))

    # Factories

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroupTable:
        if n < 1:
            raise ValueError(f"cyclic group order must be positive, got {n}")
        idx = np.arange(n, dtype=np.int64)
        return cls(table=np.add.outer(idx, idx) % n, identity=0, name=f"Z/{n}")

    @classmethod
    def trivial(cls) -> FiniteGroupTable:
        return cls(table=np.zeros((1, 1), dtype=np.int64), identity=0, name="trivial")

    @classmethod
    def from_permutations(cls, perms: list[Permutation], name: str) -> FiniteGroupTable:
        """Table of a permutation group; elements sorted by array form, so the identity is 0."""
        ordered = sorted(perms, key=lambda p: p.array_form)
        index = {tuple(p.array_form): i for i, p in enumerate(ordered)}
        table = [[index[tuple((p * q).array_form)] for q in ordered] for p in ordered]
        labels = tuple(str(p.cyclic_form) for p in ordered)
        return cls(table=np.array(table, dtype=np.int64), identity=0, name=name, labels=labels)

    @classmethod
    def symmetric(cls, n: int) -> FiniteGroupTable:
        return cls.from_permutations(list(SymmetricGroup(n).generate()), name=f"S{n}")

    @classmethod
    def dihedral(cls, n: int) -> FiniteGroupTable:
        """Dihedral group of order 2n (symmetries of an n-gon), n ≥ 3."""
        if n < 3:
            raise ValueError(f"dihedral group needs n >= 3, got {n}")
        return cls.from_permutations(list(DihedralGroup(n).generate()), name=f"D{n}")

    @classmethod
    def named(cls, name: str) -> FiniteGroupTable:
        """Resolve ``"Z/n"``, ``"Sn"``, ``"Dn"`` or ``"trivial"``."""
        if name == "trivial":
            return cls.trivial()
        match = re.fullmatch(r"(Z/|S|D)(\d+)", name)
        if match is None:
            raise ValueError(f"Unknown group '{name}'. Available: Z/<n>, S<n>, D<n>, trivial")
        family, n = match.group(1), int(match.group(2))
        if family == "Z/":
            return cls.cyclic(n)
        if family == "S":
            return cls.symmetric(n)
        return cls.dihedral(n)


def _validate_group(table: np.ndarray, identity: int) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise InvalidGroupTable(f"table must be a nonempty square array, got shape {table.shape}")
    n = table.shape[0]
    if not 0 <= identity < n:
        raise InvalidGroupTable(f"identity index {identity} out of range")
    if table.min() < 0 or table.max() >= n:
        raise InvalidGroupTable("entries must be element indices")

    idx = np.arange(n)
    if not (np.array_equal(table[identity], idx) and np.array_equal(table[:, identity], idx)):
        raise InvalidGroupTable("identity row or column is not the identity map", (identity,))

    has_right = (table == identity).any(axis=1)
    has_left = (table == identity).any(axis=0)
    if not (has_right.all() and has_left.all()):
        missing = int(np.argmin(has_right & has_left))
        raise InvalidGroupTable("element without a two-sided inverse", (missing,))

    left = table[table]  # [a, b, c] = (ab)c
    right = table[idx[:, None, None], table[None, :, :]]  # [a, b, c] = a(bc)
    bad = np.argwhere(left != right)
    if bad.size:
        raise InvalidGroupTable("not associative", tuple(int(v) for v in bad[0]))


def center(group: FiniteGroupTable) -> frozenset[int]:
    """Elements commuting with every element, by exhaustive check."""
    commutes = group.table == group.table.T
    return frozenset(int(a) for a in np.flatnonzero(commutes.all(axis=1)))


def prime_order_element(group: FiniteGroupTable, p: int) -> int:
    """Smallest index of an element of order exactly p."""
    if not isprime(p):
        raise ValueError(f"p must be prime, got {p}")
    if group.order % p:
        raise NoSuchElement(p, group.order)
    for a in group.elements:
        if group.element_order(a) == p:
            return a
    raise NoSuchElement(p, group.order)


def restrict(group: FiniteGroupTable, subgroup: frozenset[int], name: str = "") -> tuple[FiniteGroupTable, list[int]]:
    """Table of a subgroup on its own indices, plus the embedding list ``new index -> old index``."""
    if not group.is_subgroup(subgroup):
        raise ValueError(f"{sorted(subgroup)} is not a subgroup of {group.name or 'the group'}")
    members = [group.identity] + sorted(a for a in subgroup if a != group.identity)
    position = {a: i for i, a in enumerate(members)}
    table = [[position[int(group.table[a, b])] for b in members] for a in members]
    return FiniteGroupTable(table=np.array(table, dtype=np.int64), identity=0, name=name), members
