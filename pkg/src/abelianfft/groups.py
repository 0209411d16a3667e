"""Finite abelian groups as products of cyclic factors: elements, characters, subgroups, cosets."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

import numpy as np

Coords = tuple[int, ...]

# Element indices must fit in a signed 64-bit integer so numpy index math stays exact.
MAX_ORDER = 2**63 - 1


@dataclass(frozen=True)
class AbelianGroup:
    """The product Z_m1 x ... x Z_mr with componentwise addition.

    Elements are coordinate tuples (a_1, ..., a_r) with 0 <= a_i < m_i.  The
    element index is mixed-radix with the FIRST factor most significant, so
    Z_2 x Z_3 orders its elements (0,0), (0,1), (0,2), (1,0), (1,1), (1,2).
    """

    moduli: Coords

    def __post_init__(self) -> None:
        if not isinstance(self.moduli, tuple):
            object.__setattr__(self, "moduli", tuple(self.moduli))
        if len(self.moduli) == 0:
            raise ValueError("a group needs at least one cyclic factor")
        for m in self.moduli:
            if not isinstance(m, int) or m < 1:
                raise ValueError(f"modulus {m!r} is not a positive integer")
        order = prod(self.moduli)
        if order > MAX_ORDER:
            raise ValueError(f"group order {order} exceeds the 64-bit index limit {MAX_ORDER}")

    @cached_property
    def order(self) -> int:
        return prod(self.moduli)

    @cached_property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def weights(self) -> Coords:
        """Mixed-radix place value of each coordinate (first factor most significant)."""
        out = []
        acc = 1
        for m in reversed(self.moduli):
            out.append(acc)
            acc *= m
        return tuple(reversed(out))

    @cached_property
    def lcm(self) -> int:
        """Least common multiple of the factor orders: every character is an lcm-th root of unity."""
        acc = 1
        for m in self.moduli:
            acc = acc * m // gcd(acc, m)
        return acc

    @cached_property
    def char_weights(self) -> Coords:
        """Per-factor multiplier lcm/m_i used to express character phases over a common denominator."""
        return tuple(self.lcm // m for m in self.moduli)

    @cached_property
    def coords_table(self) -> np.ndarray:
        """Coordinates of every element by index, shape (order, rank).  Read-only."""
        table = np.empty((self.order, self.rank), dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        for i, (m, w) in enumerate(zip(self.moduli, self.weights)):
            table[:, i] = (idx // w) % m
        table.setflags(write=False)
        return table

    def validate_coords(self, a: Sequence[int]) -> Coords:
        a = tuple(a)
        if len(a) != self.rank:
            raise ValueError(f"element {a} has {len(a)} coordinates, expected {self.rank}")
        for x, m in zip(a, self.moduli):
            if not isinstance(x, (int, np.integer)) or not 0 <= x < m:
                raise ValueError(f"coordinate {x!r} out of range for modulus {m}")
        return tuple(int(x) for x in a)

    def index_of(self, a: Sequence[int]) -> int:
        a = self.validate_coords(a)
        return sum(x * w for x, w in zip(a, self.weights))

    def coords_of(self, index: int) -> Coords:
        if not 0 <= index < self.order:
            raise ValueError(f"element index {index} out of range for group of order {self.order}")
        return tuple((index // w) % m for m, w in zip(self.moduli, self.weights))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Coords:
        a = self.validate_coords(a)
        b = self.validate_coords(b)
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Sequence[int]) -> Coords:
        a = self.validate_coords(a)
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def add_index(self, i: int, j: int) -> int:
        return self.index_of(self.add(self.coords_of(i), self.coords_of(j)))

    def neg_index(self, i: int) -> int:
        return self.index_of(self.neg(self.coords_of(i)))

    def elements(self) -> Iterator[Coords]:
        for i in range(self.order):
            yield self.coords_of(i)

    def spec_string(self) -> str:
        return "x".join(f"Z{m}" for m in self.moduli)


def make_group(moduli: Sequence[int]) -> AbelianGroup:
    """Build the product group with the given cyclic factor orders."""
    return AbelianGroup(tuple(moduli))


_FACTOR_RE = re.compile(r"^[Zz](\d+)(?:\^(\d+))?$")


def parse_group_spec(text: str) -> AbelianGroup:
    """Parse a group description like "Z4", "Z2xZ3" or "Z2^3"."""
    cleaned = text.replace(" ", "")
    if not cleaned:
        raise ValueError("empty group description")
    moduli: list[int] = []
    for token in re.split(r"[xX]", cleaned):
        m = _FACTOR_RE.match(token)
        if m is None:
            raise ValueError(f"bad group factor {token!r} in {text!r} (expected Z<m> or Z<m>^<k>)")
        base = int(m.group(1))
        power = int(m.group(2)) if m.group(2) else 1
        if base < 1:
            raise ValueError(f"bad group factor {token!r}: modulus must be >= 1")
        if power < 1:
            raise ValueError(f"bad group factor {token!r}: exponent must be >= 1")
        moduli.extend([base] * power)
    return make_group(moduli)


def element_add(group: AbelianGroup, a: Sequence[int], b: Sequence[int]) -> Coords:
    """Componentwise sum a + b reduced modulo the factor orders."""
    return group.add(a, b)


def element_neg(group: AbelianGroup, a: Sequence[int]) -> Coords:
    """The inverse -a reduced modulo the factor orders."""
    return group.neg(a)


def character_phase(group: AbelianGroup, label: Sequence[int], arg: Sequence[int]) -> int:
    """Integer numerator p in [0, lcm) such that chi_label(arg) = exp(2 pi i p / lcm)."""
    label = group.validate_coords(label)
    arg = group.validate_coords(arg)
    total = 0
    for a, b, w in zip(label, arg, group.char_weights):
        total += a * b * w
    return total % group.lcm


def character_eval(group: AbelianGroup, label: Sequence[int], arg: Sequence[int]) -> complex:
    """chi_label(arg) = exp(2 pi i sum_i a_i b_i / m_i), evaluated from an exact integer phase."""
    return complex(np.exp(2j * np.pi * character_phase(group, label, arg) / group.lcm))


def character_is_trivial_on(group: AbelianGroup, label: Sequence[int], arg: Sequence[int]) -> bool:
    """Exact test of chi_label(arg) == 1, done in integer arithmetic."""
    return character_phase(group, label, arg) == 0


def character_phases(group: AbelianGroup, label: int | Sequence[int]) -> np.ndarray:
    """Integer phase numerators of chi_label over every element, in index order."""
    coords = group.coords_of(label) if isinstance(label, (int, np.integer)) else group.validate_coords(label)
    mult = np.array([c * w for c, w in zip(coords, group.char_weights)], dtype=np.int64)
    return (group.coords_table @ mult) % group.lcm


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by the sorted element indices of its members."""

    parent: AbelianGroup
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(set(int(i) for i in self.members)))
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("a subgroup cannot be empty")
        for i in members:
            if not 0 <= i < self.parent.order:
                raise ValueError(f"member index {i} out of range for group of order {self.parent.order}")
        if members[0] != 0:
            raise ValueError("a subgroup must contain the identity element 0")
        member_set = frozenset(members)
        for i in members:
            if self.parent.neg_index(i) not in member_set:
                raise ValueError(f"member {i} has no inverse in the set: not closed under negation")
        closure = _closure(self.parent, (g for g in members))
        if closure != member_set:
            missing = sorted(closure - member_set)[:4]
            raise ValueError(f"member set is not closed under addition (missing {missing})")
        if self.parent.order % len(members) != 0:
            raise ValueError(f"subgroup size {len(members)} does not divide group order {self.parent.order}")

    @cached_property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, index: int) -> bool:
        return index in self.member_set

    def generators(self) -> tuple[int, ...]:
        """A small generating set of member indices, chosen greedily."""
        gens: list[int] = []
        have: set[int] = {0}
        for i in self.members:
            if i not in have:
                gens.append(i)
                have = _extend_closure(self.parent, have, i)
        return tuple(gens)


def _extend_closure(group: AbelianGroup, members: set[int], gen: int) -> set[int]:
    # Closure of members + {gen} when members is already closed: union of shifts by multiples of gen.
    out = set(members)
    shift = gen
    while shift != 0:
        out.update(group.add_index(x, shift) for x in members)
        shift = group.add_index(shift, gen)
    return out


def _closure(group: AbelianGroup, gens: Iterable[int]) -> set[int]:
    out: set[int] = {0}
    for g in gens:
        if g not in out:
            out = _extend_closure(group, out, g)
    return out


def subgroup_from_generators(group: AbelianGroup, generators: Iterable[Sequence[int]]) -> Subgroup:
    """The smallest subgroup containing the given elements (coordinate tuples)."""
    idxs = [group.index_of(g) for g in generators]
    return Subgroup(group, tuple(sorted(_closure(group, idxs))))


def trivial_subgroup(group: AbelianGroup) -> Subgroup:
    return Subgroup(group, (0,))


def full_subgroup(group: AbelianGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


@dataclass(frozen=True)
class CosetDecomposition:
    """Cosets of a subgroup: representatives plus, per element, its coset and its offset within it.

    Representatives are the minimal element index of each coset, listed in
    increasing order.  For element e: e = representatives[coset_of[e]] + H.members[slot_of[e]].
    """

    group: AbelianGroup
    subgroup: Subgroup
    representatives: tuple[int, ...]
    coset_of: np.ndarray
    slot_of: np.ndarray


def coset_decompose(group: AbelianGroup, subgroup: Subgroup) -> CosetDecomposition:
    """Partition the group into cosets of the subgroup."""
    if subgroup.parent != group:
        raise ValueError("subgroup belongs to a different group")
    coset_of = np.full(group.order, -1, dtype=np.int64)
    slot_of = np.full(group.order, -1, dtype=np.int64)
    reps: list[int] = []
    for e in range(group.order):
        if coset_of[e] >= 0:
            continue
        c = len(reps)
        reps.append(e)
        for slot, h in enumerate(subgroup.members):
            x = group.add_index(e, h)
            if coset_of[x] >= 0:
                raise ValueError("coset overlap: member set is not a subgroup")
            coset_of[x] = c
            slot_of[x] = slot
    coset_of.setflags(write=False)
    slot_of.setflags(write=False)
    return CosetDecomposition(group, subgroup, tuple(reps), coset_of, slot_of)


def annihilator(group: AbelianGroup, elements: Subgroup | Iterable[int]) -> Subgroup:
    """All x with chi_e(x) = 1 for every e in the given set, decided in exact integer arithmetic.

    The character pairing is symmetric, so this serves both directions: labels
    annihilating a subgroup, and the subgroup pinned down by a set of labels.
    """
    if isinstance(elements, Subgroup):
        if elements.parent != group:
            raise ValueError("subgroup belongs to a different group")
        idxs: Iterable[int] = elements.generators()
    else:
        idxs = sorted(set(int(i) for i in elements))
    mask = np.ones(group.order, dtype=bool)
    for e in idxs:
        mask &= character_phases(group, e) == 0
    members = tuple(int(i) for i in np.nonzero(mask)[0])
    return Subgroup(group, members)


def enumerate_subgroups(group: AbelianGroup) -> list[Subgroup]:
    """Every subgroup, found by closure extension layer by layer.  Desk-scale orders only."""
    seen: dict[tuple[int, ...], Subgroup] = {}
    trivial = trivial_subgroup(group)
    seen[trivial.members] = trivial
    frontier = [trivial]
    while frontier:
        next_frontier: list[Subgroup] = []
        for sub in frontier:
            base = set(sub.members)
            for g in range(1, group.order):
                if g in base:
                    continue
                closure = tuple(sorted(_extend_closure(group, base, g)))
                if closure not in seen:
                    bigger = Subgroup(group, closure)
                    seen[closure] = bigger
                    next_frontier.append(bigger)
        frontier = next_frontier
    return sorted(seen.values(), key=lambda s: (s.order, s.members))
