"""Small finite groups: construction, conjugacy data, subgroup detection and
the classification of 2-groups without a C4 x C2 subgroup.

Groups are realised concretely (residues, coordinate tuples, permutations or
small matrices) with elements indexed 0..n-1, index 0 the identity.  All
queries are pure; a group is immutable once built, so instances can be shared
freely.  The fourteen groups of order 16 ship as a built-in catalogue, which
is exactly the granularity the 2-group classification check needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

from .exactnum import factorize

_ORDER_CAP = 10**5


class ResourceLimitError(RuntimeError):
    """A construction would exceed the configured size cap."""


# ---------------------------------------------------------------------------
# group specifications


@dataclass(frozen=True)
class GroupSpec:
    """Constructor tag plus parameters; see the builder functions below."""

    kind: str
    params: tuple = ()

    def describe(self) -> str:
        k, p = self.kind, self.params
        if k == "cyclic":
            return f"C{p[0]}"
        if k == "dihedral":
            return f"D{p[0]}"
        if k == "semidihedral":
            return f"SD{p[0]}"
        if k == "quaternion":
            return f"Q{p[0]}"
        if k == "elem_abelian":
            return f"C{p[0]}^{p[1]}"
        if k == "direct_product":
            return "x".join(s.describe() for s in p)
        if k == "perm":
            return f"perm group on {max(max(g) for g in p) + 1} points"
        if k == "o16":
            return ORDER16_NAMES[p[0] - 1]
        return k


def cyclic(n: int) -> GroupSpec:
    return GroupSpec("cyclic", (n,))


def dihedral(order: int) -> GroupSpec:
    if order < 4 or order % 2:
        raise ValueError("dihedral groups need even order >= 4")
    return GroupSpec("dihedral", (order,))


def semidihedral(order: int) -> GroupSpec:
    if order < 16 or order & (order - 1):
        raise ValueError("semidihedral groups need 2-power order >= 16")
    return GroupSpec("semidihedral", (order,))


def quaternion(order: int) -> GroupSpec:
    if order < 8 or order & (order - 1):
        raise ValueError("generalized quaternion groups need 2-power order >= 8")
    return GroupSpec("quaternion", (order,))


def elem_abelian(p: int, rank: int) -> GroupSpec:
    return GroupSpec("elem_abelian", (p, rank))


def direct_product(*specs: GroupSpec) -> GroupSpec:
    return GroupSpec("direct_product", tuple(specs))


def perm_group(*generators: Sequence[int]) -> GroupSpec:
    return GroupSpec("perm", tuple(tuple(g) for g in generators))


def order16(catalog_id: int) -> GroupSpec:
    if not 1 <= catalog_id <= 14:
        raise ValueError("order-16 catalogue ids run from 1 to 14")
    return GroupSpec("o16", (catalog_id,))


ORDER16_NAMES = [
    "C16", "C4xC4", "(C2xC2):C4", "C4:C4", "C8xC2", "C8:C2mod",
    "D16", "SD16", "Q16", "C4xC2xC2", "D8xC2", "Q8xC2", "D8*C4", "C2^4",
]


def parse_group_spec(text: str) -> GroupSpec:
    """Parse the textual spec syntax: ``c4xc2``, ``d16``, ``sd16``, ``q8``,
    ``e2^3``, ``o16:7``, ``perm:[(1,2,3)(4,5);(1,2)]``."""
    text = text.strip().lower()
    if text.startswith("perm:"):
        return _parse_perm_spec(text[5:])
    if text.startswith("o16:"):
        return order16(int(text[4:]))
    factors = text.split("x")
    specs = []
    for part in factors:
        m = re.fullmatch(r"([a-z]+)(\d+)(?:\^(\d+))?", part)
        if not m:
            raise ValueError(f"cannot parse group spec {part!r}")
        head, num, rank = m.group(1), int(m.group(2)), m.group(3)
        if head == "c":
            specs.append(cyclic(num))
        elif head == "d":
            specs.append(dihedral(num))
        elif head == "sd":
            specs.append(semidihedral(num))
        elif head == "q":
            specs.append(quaternion(num))
        elif head == "e":
            if rank is None:
                raise ValueError(f"elementary-abelian spec needs a rank: {part!r}")
            specs.append(elem_abelian(num, int(rank)))
        else:
            raise ValueError(f"unknown group family {head!r}")
    return specs[0] if len(specs) == 1 else direct_product(*specs)


def _parse_perm_spec(text: str) -> GroupSpec:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("perm spec must look like perm:[(1,2)(3,4);(1,3)]")
    gens = []
    for chunk in text[1:-1].split(";"):
        cycles = re.findall(r"\(([^()]*)\)", chunk)
        points = [int(x) for cyc in cycles for x in cyc.split(",") if x.strip()]
        degree = max(points) if points else 1
        perm = list(range(degree))
        for cyc in cycles:
            pts = [int(x) - 1 for x in cyc.split(",") if x.strip()]
            for a, b in zip(pts, pts[1:] + pts[:1]):
                perm[a] = b
        gens.append(tuple(perm))
    degree = max(len(g) for g in gens)
    gens = [tuple(list(g) + list(range(len(g), degree))) for g in gens]
    return perm_group(*gens)


# ---------------------------------------------------------------------------
# the realised group


class FiniteGroup:
    """A concrete finite group over an element carrier set."""

    def __init__(self, name: str, elements: list, op: Callable, generators: Optional[list] = None):
        self.name = name
        self.elements = elements
        self.order = len(elements)
        self._op = op
        self._index = {x: i for i, x in enumerate(elements)}
        self.generators = generators  # element indices, if known
        self._orders: Optional[list[int]] = None
        self._inverses: Optional[list[int]] = None
        self._classes: Optional["ConjClassPartition"] = None

    # -- core operations ------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        return self._index[self._op(self.elements[i], self.elements[j])]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse(i), -k)
        result = 0
        base = i
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def inverse(self, i: int) -> int:
        if self._inverses is None:
            self._inverses = [-1] * self.order
        if self._inverses[i] < 0:
            self._inverses[i] = self.power(i, self.element_order(i) - 1)
        return self._inverses[i]

    def element_order(self, i: int) -> int:
        if self._orders is None:
            self._orders = [0] * self.order
        if not self._orders[i]:
            k, x = 1, i
            while x != 0:
                x = self.mul(x, i)
                k += 1
            self._orders[i] = k
        return self._orders[i]

    def exponent(self) -> int:
        e = 1
        for i in range(self.order):
            o = self.element_order(i)
            e = e * o // gcd(e, o)
        return e

    def is_abelian(self) -> bool:
        probe = self.generators if self.generators else range(self.order)
        probe = list(probe)
        return all(self.mul(a, b) == self.mul(b, a) for a in probe for b in probe)

    def cyclic_subgroup(self, i: int) -> frozenset[int]:
        out = {0}
        x = i
        while x != 0:
            out.add(x)
            x = self.mul(x, i)
        return frozenset(out)

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inverse(g))

    def center(self) -> list[int]:
        probe = self.generators if self.generators else range(self.order)
        probe = list(probe)
        return [x for x in range(self.order)
                if all(self.mul(x, g) == self.mul(g, x) for g in probe)]

    def conjugacy(self) -> "ConjClassPartition":
        if self._classes is None:
            self._classes = _compute_classes(self)
        return self._classes

    def __repr__(self):
        return f"FiniteGroup({self.name}, order {self.order})"


def _bfs_closure(identity, gens: list, op: Callable, limit: int = _ORDER_CAP) -> list:
    elements = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = op(x, g)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    new.append(y)
                    if len(elements) > limit:
                        raise ResourceLimitError(f"group closure exceeds {limit} elements")
        frontier = new
    return elements


# ---------------------------------------------------------------------------
# builders


def _build_cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(f"C{n}", list(range(n)), lambda a, b: (a + b) % n,
                       generators=[1 % n] if n > 1 else [])


def _build_dihedral(order: int) -> FiniteGroup:
    n = order // 2

    def op(x, y):
        (i, s), (j, t) = x, y
        return ((i + (j if s == 0 else -j)) % n, s ^ t)

    elems = [(i, s) for s in (0, 1) for i in range(n)]
    g = FiniteGroup(f"D{order}", elems, op)
    g.generators = [g._index[(1 % n, 0)], g._index[(0, 1)]]
    return g


def _build_semidihedral(order: int) -> FiniteGroup:
    n = order // 2
    e = n // 2 - 1  # h^a = h^e

    def op(x, y):
        (i, s), (j, t) = x, y
        return ((i + j * (e if s else 1)) % n, s ^ t)

    elems = [(i, s) for s in (0, 1) for i in range(n)]
    g = FiniteGroup(f"SD{order}", elems, op)
    g.generators = [g._index[(1, 0)], g._index[(0, 1)]]
    return g


def _build_quaternion(order: int) -> FiniteGroup:
    n = order // 2

    def op(x, y):
        (i, s), (j, t) = x, y
        if s == 0:
            return ((i + j) % n, t)
        if t == 0:
            return ((i - j) % n, 1)
        return ((i - j + n // 2) % n, 0)

    elems = [(i, s) for s in (0, 1) for i in range(n)]
    g = FiniteGroup(f"Q{order}", elems, op)
    g.generators = [g._index[(1, 0)], g._index[(0, 1)]]
    return g


def _build_elem_abelian(p: int, rank: int) -> FiniteGroup:
    import itertools

    elems = list(itertools.product(range(p), repeat=rank))

    def op(x, y):
        return tuple((a + b) % p for a, b in zip(x, y))

    g = FiniteGroup(f"C{p}^{rank}", elems, op)
    g.generators = [g._index[tuple(1 if i == j else 0 for i in range(rank))] for j in range(rank)]
    return g


def _build_direct_product(specs: tuple[GroupSpec, ...]) -> FiniteGroup:
    import itertools

    parts = [group_build(s) for s in specs]
    total = 1
    for part in parts:
        total *= part.order
    if total > _ORDER_CAP:
        raise ResourceLimitError("direct product exceeds the order cap")
    elems = list(itertools.product(*[p.elements for p in parts]))
    ops = [p._op for p in parts]

    def op(x, y):
        return tuple(o(a, b) for o, a, b in zip(ops, x, y))

    name = "x".join(p.name for p in parts)
    g = FiniteGroup(name, elems, op)
    gens = []
    for pi, part in enumerate(parts):
        if part.generators is None:
            gens = None
            break
        for gen in part.generators:
            tup = tuple(part.elements[gen] if i == pi else parts[i].elements[0]
                        for i in range(len(parts)))
            gens.append(g._index[tup])
    g.generators = gens
    return g


def _build_perm(gens: tuple[tuple[int, ...], ...]) -> FiniteGroup:
    degree = max(len(g) for g in gens)
    gens = [tuple(list(g) + list(range(len(g), degree))) for g in gens]
    identity = tuple(range(degree))

    def op(a, b):
        return tuple(a[b[i]] for i in range(degree))

    elems = _bfs_closure(identity, list(gens), op)
    g = FiniteGroup(f"perm<{degree}>", elems, op)
    g.generators = [g._index[x] for x in gens]
    return g


def _build_pauli16() -> FiniteGroup:
    """The central product D8 * C4 of order 16, realised inside GL(2,5)
    (2 squares to -1 mod 5, so scalar 2I plays the primitive 4th root)."""

    def matmul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) % 5 for j in range(2))
            for i in range(2)
        )

    X = ((0, 1), (1, 0))
    Z = ((1, 0), (0, 4))
    iI = ((2, 0), (0, 2))
    identity = ((1, 0), (0, 1))
    elems = _bfs_closure(identity, [X, Z, iI], matmul)
    assert len(elems) == 16
    g = FiniteGroup("D8*C4", elems, matmul)
    g.generators = [g._index[X], g._index[Z], g._index[iI]]
    return g


def _build_o16(catalog_id: int) -> FiniteGroup:
    if catalog_id == 1:
        return _build_cyclic(16)
    if catalog_id == 2:
        return _build_direct_product((cyclic(4), cyclic(4)))
    if catalog_id == 3:
        # (C2 x C2) : C4, the C4 swapping the two C2 coordinates
        def op(x, y):
            (v1, c1), (v2, c2) = x, y
            w = v2 if c1 % 2 == 0 else (v2[1], v2[0])
            return (((v1[0] + w[0]) % 2, (v1[1] + w[1]) % 2), (c1 + c2) % 4)

        elems = [((a, b), c) for c in range(4) for a in (0, 1) for b in (0, 1)]
        g = FiniteGroup("(C2xC2):C4", elems, op)
        g.generators = [g._index[((1, 0), 0)], g._index[((0, 0), 1)]]
        return g
    if catalog_id == 4:
        # C4 : C4 with inversion action
        def op(x, y):
            (i, j), (k, l) = x, y
            return ((i + (k if j % 2 == 0 else -k)) % 4, (j + l) % 4)

        elems = [(i, j) for j in range(4) for i in range(4)]
        g = FiniteGroup("C4:C4", elems, op)
        g.generators = [g._index[(1, 0)], g._index[(0, 1)]]
        return g
    if catalog_id == 5:
        return _build_direct_product((cyclic(8), cyclic(2)))
    if catalog_id == 6:
        # modular group of order 16: h^a = h^5
        def op(x, y):
            (i, s), (j, t) = x, y
            return ((i + j * (5 if s else 1)) % 8, s ^ t)

        elems = [(i, s) for s in (0, 1) for i in range(8)]
        g = FiniteGroup("C8:C2mod", elems, op)
        g.generators = [g._index[(1, 0)], g._index[(0, 1)]]
        return g
    if catalog_id == 7:
        return _build_dihedral(16)
    if catalog_id == 8:
        return _build_semidihedral(16)
    if catalog_id == 9:
        return _build_quaternion(16)
    if catalog_id == 10:
        return _build_direct_product((cyclic(4), cyclic(2), cyclic(2)))
    if catalog_id == 11:
        return _build_direct_product((dihedral(8), cyclic(2)))
    if catalog_id == 12:
        return _build_direct_product((quaternion(8), cyclic(2)))
    if catalog_id == 13:
        return _build_pauli16()
    if catalog_id == 14:
        return _build_elem_abelian(2, 4)
    raise ValueError("order-16 catalogue ids run from 1 to 14")


@lru_cache(maxsize=None)
def group_build(spec: GroupSpec) -> FiniteGroup:
    """Realise a GroupSpec; the result is cached and must not be mutated."""
    kind = spec.kind
    if kind == "cyclic":
        return _build_cyclic(*spec.params)
    if kind == "dihedral":
        return _build_dihedral(*spec.params)
    if kind == "semidihedral":
        return _build_semidihedral(*spec.params)
    if kind == "quaternion":
        return _build_quaternion(*spec.params)
    if kind == "elem_abelian":
        return _build_elem_abelian(*spec.params)
    if kind == "direct_product":
        return _build_direct_product(spec.params)
    if kind == "perm":
        return _build_perm(spec.params)
    if kind == "o16":
        return _build_o16(spec.params[0])
    raise ValueError(f"unknown group spec kind {kind!r}")


# ---------------------------------------------------------------------------
# conjugacy classes and power maps


@dataclass(frozen=True)
class ConjClass:
    name: str
    rep: int
    members: tuple[int, ...]
    size: int
    rep_order: int


@dataclass
class ConjClassPartition:
    group: FiniteGroup
    classes: list[ConjClass]
    class_of: list[int]  # element index -> class position

    def class_by_name(self, name: str) -> ConjClass:
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(name)

    def index_of(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name == name:
                return i
        raise KeyError(name)

    def power_class(self, class_idx: int, k: int) -> int:
        rep = self.classes[class_idx].rep
        return self.class_of[self.group.power(rep, k)]

    def inverse_class(self, class_idx: int) -> int:
        return self.class_of[self.group.inverse(self.classes[class_idx].rep)]

    def power_map(self, p: int) -> list[int]:
        return [self.power_class(i, p) for i in range(len(self.classes))]

    def names(self) -> list[str]:
        return [c.name for c in self.classes]


def _suffix(i: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    out = ""
    i += 1
    while i:
        i, rem = divmod(i - 1, 26)
        out = letters[rem] + out
    return out


def _compute_classes(G: FiniteGroup) -> ConjClassPartition:
    conjugators = G.generators if G.generators else list(range(G.order))
    seen = [False] * G.order
    raw: list[list[int]] = []
    for start in range(G.order):
        if seen[start]:
            continue
        orbit = {start}
        frontier = [start]
        seen[start] = True
        while frontier:
            new = []
            for x in frontier:
                for g in conjugators:
                    y = G.conjugate(g, x)
                    if y not in orbit:
                        orbit.add(y)
                        seen[y] = True
                        new.append(y)
            frontier = new
        raw.append(sorted(orbit))
    raw.sort(key=lambda members: (G.element_order(members[0]), members[0]))
    by_order: dict[int, int] = {}
    classes: list[ConjClass] = []
    class_of = [0] * G.order
    for members in raw:
        order = G.element_order(members[0])
        idx = by_order.get(order, 0)
        by_order[order] = idx + 1
        name = f"{order}{_suffix(idx)}"
        classes.append(ConjClass(name, members[0], tuple(members), len(members), order))
        for m in members:
            class_of[m] = len(classes) - 1
    part = ConjClassPartition(G, classes, class_of)
    # sampled well-definedness check of the squaring map
    for c in part.classes:
        targets = {part.class_of[G.power(m, 2)] for m in c.members[:3]}
        assert len(targets) == 1, "power map depends on the representative"
    return part


def conjugacy_classes(G: FiniteGroup) -> ConjClassPartition:
    return G.conjugacy()


# ---------------------------------------------------------------------------
# subgroup detection


@dataclass(frozen=True)
class Embedding:
    """Injective homomorphism witness from a realised target into G."""

    target: FiniteGroup
    group: FiniteGroup
    images: tuple[int, ...]  # images of the target generators
    element_map: tuple[int, ...]  # target element index -> G element index


def contains_c4xc2(G: FiniteGroup) -> Optional[tuple[int, int]]:
    """Exhaustive search for x, y with |x| = 4, |y| = 2, xy = yx, y not in <x>."""
    order4 = [i for i in range(G.order) if G.element_order(i) == 4]
    order2 = [i for i in range(G.order) if G.element_order(i) == 2]
    for x in order4:
        pow_x = G.cyclic_subgroup(x)
        for y in order2:
            if y in pow_x:
                continue
            if G.mul(x, y) == G.mul(y, x):
                return (x, y)
    return None


_TARGET_SPECS: dict[str, GroupSpec] = {
    "c4xc2": direct_product(cyclic(4), cyclic(2)),
    "c2xc2": elem_abelian(2, 2),
    "c2^3": elem_abelian(2, 3),
    "q8": quaternion(8),
    "d8": dihedral(8),
}


def _check_embedding(G: FiniteGroup, T: FiniteGroup, images: dict[int, int]) -> Optional[tuple[int, ...]]:
    """Verify a generator assignment extends to an injective homomorphism;
    returns the full element map or None."""
    emap = [-1] * T.order
    emap[0] = 0
    frontier = [0]
    gens = T.generators
    while frontier:
        new = []
        for t in frontier:
            for gen in gens:
                t2 = T.mul(t, gen)
                g2 = G.mul(emap[t], images[gen])
                if emap[t2] == -1:
                    emap[t2] = g2
                    new.append(t2)
                elif emap[t2] != g2:
                    return None
        frontier = new
    if len(set(emap)) != T.order:
        return None
    for a in range(T.order):
        for b in range(T.order):
            if emap[T.mul(a, b)] != G.mul(emap[a], emap[b]):
                return None
    return tuple(emap)


def find_embedding(G: FiniteGroup, target: GroupSpec) -> Optional[Embedding]:
    """Exhaustive search for a subgroup of G isomorphic to the target
    (supported targets: C4xC2, C2xC2, C2^3, Q8, D8)."""
    key = None
    for name, spec in _TARGET_SPECS.items():
        if spec == target:
            key = name
    if key is None:
        raise ValueError(f"unsupported embedding target {target!r}")
    T = group_build(target)
    order2 = [i for i in range(G.order) if G.element_order(i) == 2]
    order4 = [i for i in range(G.order) if G.element_order(i) == 4]

    def attempt(images_list):
        images = dict(zip(T.generators, images_list))
        emap = _check_embedding(G, T, images)
        if emap is not None:
            return Embedding(T, G, tuple(images_list), emap)
        return None

    if key == "c4xc2":
        for x in order4:
            px = G.cyclic_subgroup(x)
            for y in order2:
                if y not in px and G.mul(x, y) == G.mul(y, x):
                    e = attempt([x, y])
                    if e:
                        return e
    elif key == "c2xc2":
        for x in order2:
            for y in order2:
                if y != x and G.mul(x, y) == G.mul(y, x):
                    e = attempt([x, y])
                    if e:
                        return e
    elif key == "c2^3":
        for ix, x in enumerate(order2):
            for iy in range(ix + 1, len(order2)):
                y = order2[iy]
                if G.mul(x, y) != G.mul(y, x):
                    continue
                span = {0, x, y, G.mul(x, y)}
                for z in order2[iy + 1:]:
                    if z in span:
                        continue
                    if G.mul(x, z) == G.mul(z, x) and G.mul(y, z) == G.mul(z, y):
                        e = attempt([x, y, z])
                        if e:
                            return e
    elif key in ("q8", "d8"):
        for h in order4:
            ph = G.cyclic_subgroup(h)
            h_inv = G.inverse(h)
            pool = order4 if key == "q8" else order2
            for a in pool:
                if a in ph:
                    continue
                if G.conjugate(a, h) != h_inv:
                    continue
                if key == "q8" and G.mul(a, a) != G.mul(h, h):
                    continue
                e = attempt([h, a])
                if e:
                    return e
    return None


# ---------------------------------------------------------------------------
# classification of 2-groups avoiding C4 x C2


FAMILY_TAGS = ("elem_abelian", "cyclic", "quaternion", "dihedral", "semidihedral")


def classify_2group(P: FiniteGroup) -> str:
    """Detect which of the five structural families a 2-group belongs to
    (counting involutions, locating a maximal cyclic subgroup and testing the
    defining relations); returns "other" when none fits."""
    if P.order & (P.order - 1):
        raise ValueError("group order is not a power of 2")
    if all(P.element_order(i) <= 2 for i in range(P.order)):
        return "elem_abelian"
    max_elt = max(range(P.order), key=lambda i: (P.element_order(i), -i))
    n = P.element_order(max_elt)
    if n == P.order:
        return "cyclic"
    if 2 * n != P.order:
        return "other"
    h = max_elt
    subgroup = P.cyclic_subgroup(h)
    h_inv = P.inverse(h)
    half_turn = P.power(h, n // 2)
    sd_target = P.power(h, n // 2 - 1) if n >= 8 else None
    for a in range(1, P.order):
        if a in subgroup:
            continue
        conj = P.conjugate(a, h)
        a2 = P.mul(a, a)
        if a2 == 0 and conj == h_inv:
            return "dihedral"
        if a2 == half_turn and conj == h_inv:
            return "quaternion"
        if sd_target is not None and a2 == 0 and conj == sd_target:
            return "semidihedral"
    return "other"


def two_group_catalogue(max_order: int = 64) -> list[tuple[str, GroupSpec]]:
    """The built-in 2-group catalogue: all groups of order <= 16 (fourteen of
    order 16), family members and a few non-family spot checks up to 64."""
    entries: list[tuple[str, GroupSpec]] = [
        ("C2", cyclic(2)),
        ("C4", cyclic(4)), ("C2^2", elem_abelian(2, 2)),
        ("C8", cyclic(8)), ("C4xC2", direct_product(cyclic(4), cyclic(2))),
        ("C2^3", elem_abelian(2, 3)), ("D8", dihedral(8)), ("Q8", quaternion(8)),
    ]
    entries += [(ORDER16_NAMES[i - 1], order16(i)) for i in range(1, 15)]
    entries += [
        ("C32", cyclic(32)), ("D32", dihedral(32)), ("SD32", semidihedral(32)),
        ("Q32", quaternion(32)), ("C2^5", elem_abelian(2, 5)),
        ("C4xC8", direct_product(cyclic(4), cyclic(8))),
        ("D16xC2", direct_product(dihedral(16), cyclic(2))),
        ("C64", cyclic(64)), ("D64", dihedral(64)), ("SD64", semidihedral(64)),
        ("Q64", quaternion(64)), ("C2^6", elem_abelian(2, 6)),
        ("C8xC8", direct_product(cyclic(8), cyclic(8))),
    ]
    out = []
    for name, spec in entries:
        order = _spec_order(spec)
        if order <= max_order:
            out.append((name, spec))
    return out


def _spec_order(spec: GroupSpec) -> int:
    if spec.kind == "cyclic":
        return spec.params[0]
    if spec.kind in ("dihedral", "semidihedral", "quaternion"):
        return spec.params[0]
    if spec.kind == "elem_abelian":
        return spec.params[0] ** spec.params[1]
    if spec.kind == "direct_product":
        total = 1
        for s in spec.params:
            total *= _spec_order(s)
        return total
    if spec.kind == "o16":
        return 16
    return group_build(spec).order


@dataclass
class LemmaReport:
    """Outcome of the brute-force 2-group classification check."""

    max_order: int
    passed: bool
    checked: list[dict] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)


def verify_lemma_2groups(max_order: int = 64) -> LemmaReport:
    """For every catalogued 2-group of order <= max_order, check that the
    absence of a C4 x C2 subgroup (by exhaustive pair search) coincides with
    membership in the five families {elementary-abelian, cyclic, quaternion,
    dihedral, semidihedral}."""
    if max_order < 2 or max_order & (max_order - 1) or max_order > 64:
        raise ValueError("max_order must be a power of 2 between 2 and 64")
    report = LemmaReport(max_order=max_order, passed=True)
    for name, spec in two_group_catalogue(max_order):
        G = group_build(spec)
        witness = contains_c4xc2(G)
        tag = classify_2group(G)
        consistent = (witness is None) == (tag in FAMILY_TAGS)
        report.checked.append({
            "group": name,
            "order": G.order,
            "classification": tag,
            "has_c4xc2": witness is not None,
            "consistent": consistent,
        })
        if not consistent:
            report.passed = False
            report.counterexamples.append(name)
    return report
