"""Desk-scale permutation groups with fully materialized element sets.

Everything here works by explicit element enumeration: closures are BFS over
generator products, conjugacy classes and orbits are union-find, stabilizers
are filters. No stabilizer chains. That keeps results exact, deterministic
and easy to audit, and is the right tradeoff for the group orders this
package targets (closure budget defaults to 10**6 elements).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .budgets import DEFAULT, Budgets
from .errors import BudgetExceeded, DegreeMismatch, ParseError


class Permutation:
    """Immutable permutation of {0, ..., degree-1}, stored as an image tuple."""

    __slots__ = ("degree", "images")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "degree", len(images))

    @classmethod
    def _unsafe(cls, images: tuple) -> "Permutation":
        # internal fast path: caller guarantees images is a valid bijection
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        object.__setattr__(p, "degree", len(images))
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._unsafe(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-indexed cycles; points absent from all cycles are fixed."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < degree:
                    raise ValueError(f"point {pt} out of range for degree {degree}")
                if pt in seen:
                    raise ValueError(f"point {pt} appears in two cycles")
                seen.add(pt)
            for i, pt in enumerate(cyc):
                images[pt] = cyc[(i + 1) % len(cyc)]
        return cls._unsafe(tuple(images))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (p * q)(i) = p(q(i)): q acts first
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        s = self.images
        return Permutation._unsafe(tuple(s[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation._unsafe(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == img for i, img in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each rotated to start at its minimum, sorted by start."""
        out = []
        seen = [False] * self.degree
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            pt = self.images[start]
            while pt != start:
                seen[pt] = True
                cyc.append(pt)
                pt = self.images[pt]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        """Number of cycles on the full domain, fixed points included."""
        n = 0
        seen = [False] * self.degree
        imgs = self.images
        for start in range(self.degree):
            if seen[start]:
                continue
            n += 1
            pt = start
            while not seen[pt]:
                seen[pt] = True
                pt = imgs[pt]
        return n

    def fixed_point_count(self) -> int:
        return sum(1 for i, img in enumerate(self.images) if i == img)

    def moved_count(self) -> int:
        return self.degree - self.fixed_point_count()

    def cycle_string(self) -> str:
        """1-indexed disjoint cycle notation; identity prints as ``()``."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-indexed cycle notation like ``(1 2 3)(4 5)``.

    Points within a cycle are whitespace-separated. Fixed points may be
    omitted; ``()`` is the identity. When degree is None it is inferred as
    the largest point mentioned (so an identity needs an explicit degree).
    """
    cycles: list[list[int]] = []
    cur: list[int] | None = None
    num: str = ""
    max_pt = 0

    def flush_number(col: int):
        nonlocal num
        if not num:
            return
        if cur is None:
            raise ParseError("number outside of a cycle", col)
        cur.append(int(num))
        num = ""

    for i, ch in enumerate(text):
        col = i + 1
        if ch.isdigit():
            if cur is None:
                raise ParseError("number outside of a cycle", col)
            num += ch
        elif ch == "(":
            if cur is not None:
                raise ParseError("nested '('", col)
            cur = []
        elif ch == ")":
            flush_number(col)
            if cur is None:
                raise ParseError("unmatched ')'", col)
            if cur:
                cycles.append(cur)
            cur = None
        elif ch.isspace():
            flush_number(col)
        else:
            raise ParseError(f"unexpected character {ch!r}", col)
    if cur is not None:
        raise ParseError("unclosed '('", len(text))

    for cyc in cycles:
        for pt in cyc:
            if pt < 1:
                raise ParseError(f"points are 1-indexed, got {pt}")
            max_pt = max(max_pt, pt)
    if degree is None:
        if max_pt == 0:
            raise ParseError("cannot infer degree of an identity; pass degree explicitly")
        degree = max_pt
    elif max_pt > degree:
        raise ParseError(f"point {max_pt} exceeds degree {degree}")
    try:
        return Permutation.from_cycles([[p - 1 for p in c] for c in cycles], degree)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_generators(text: str, degree: int | None = None) -> list[Permutation]:
    """Parse a comma-separated list of cycle-notation permutations.

    All permutations share one degree: the explicit one, or the largest point
    seen anywhere in the list.
    """
    parts = [p.strip() for p in text.split(",")]
    if not any(parts):
        raise ParseError("empty generator list")
    if degree is None:
        degree = 0
        for part in parts:
            for tok in part.replace("(", " ").replace(")", " ").split():
                if not tok.isdigit():
                    raise ParseError(f"unexpected token {tok!r} in {part!r}")
                degree = max(degree, int(tok))
        if degree == 0:
            raise ParseError("cannot infer degree; no points mentioned")
    return [parse_permutation(part, degree) for part in parts]


def _closure(generators: Sequence[Permutation], limit: int) -> set[Permutation]:
    """BFS product closure; always contains the identity."""
    ident = Permutation.identity(generators[0].degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for b in frontier:
            for g in generators:
                c = g * b
                if c not in seen:
                    if len(seen) >= limit:
                        raise BudgetExceeded(
                            f"group order exceeds budget {limit} during closure")
                    seen.add(c)
                    fresh.append(c)
        frontier = fresh
    return seen


class PermGroup:
    """Finite permutation group given by generators; elements materialized lazily.

    The element tuple is sorted by image tuples, so all downstream
    enumerations (classes, stabilizers, orbit representatives) are
    deterministic. ``family`` optionally tags how the group was constructed,
    e.g. ("cyclic", (5,)); counting code uses it to dispatch closed forms.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None,
                 family: tuple[str, tuple] | None = None,
                 budgets: Budgets = DEFAULT):
        generators = tuple(generators)
        if not generators:
            if degree is None:
                raise ValueError("need generators or an explicit degree")
            generators = (Permutation.identity(degree),)
        degrees = {g.degree for g in generators}
        if len(degrees) != 1:
            raise DegreeMismatch(f"mixed generator degrees {sorted(degrees)}")
        if degree is not None and degree != generators[0].degree:
            raise DegreeMismatch(f"degree {degree} vs generator degree {generators[0].degree}")
        self.generators = generators
        self.degree = generators[0].degree
        self.family = family
        self.budgets = budgets
        self._elements: tuple[Permutation, ...] | None = None
        self._elemset: frozenset[Permutation] | None = None

    @classmethod
    def from_elements(cls, elements: Iterable[Permutation], degree: int | None = None,
                      family: tuple[str, tuple] | None = None,
                      budgets: Budgets = DEFAULT) -> "PermGroup":
        """Wrap an explicit, already-closed element set; finds a small generating set.

        The greedy walk adds the smallest element not yet generated, so the
        generating set (and everything derived from it) is deterministic.
        """
        elems = sorted(set(elements))
        if not elems:
            raise ValueError("empty element set")
        if degree is None:
            degree = elems[0].degree
        gens: list[Permutation] = []
        known: set[Permutation] = {Permutation.identity(degree)}
        for x in elems:
            if x not in known:
                gens.append(x)
                known = _closure(gens, limit=len(elems))
        if len(known) != len(elems):
            raise ValueError("element set is not closed under products")
        grp = cls(gens or [Permutation.identity(degree)], degree=degree,
                  family=family, budgets=budgets)
        grp._elements = tuple(elems)
        grp._elemset = frozenset(elems)
        return grp

    @property
    def elements(self) -> tuple[Permutation, ...]:
        if self._elements is None:
            closed = _closure(self.generators, limit=self.budgets.max_group_order)
            self._elements = tuple(sorted(closed))
            self._elemset = frozenset(closed)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, p: Permutation) -> bool:
        self.elements
        return p in self._elemset

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def spec_string(self) -> str:
        """Stable textual form; family spec if tagged, else explicit generators."""
        if self.family is not None:
            name, params = self.family
            if params:
                return f"{name}:{','.join(str(p) for p in params)}"
            return name
        gens = ",".join(g.cycle_string() for g in self.generators)
        return f"gens:{self.degree},{gens}"

    def __repr__(self) -> str:
        return f"PermGroup({self.spec_string()!r}, degree={self.degree})"


def closure_elements(generators: Sequence[Permutation],
                     budgets: Budgets = DEFAULT) -> PermGroup:
    """Group generated by the given permutations, elements fully materialized."""
    grp = PermGroup(generators, budgets=budgets)
    grp.elements
    return grp


class UnionFind:
    """Plain union-find over 0..n-1 with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def orbits(group: PermGroup, points: Iterable[int] | None = None) -> tuple[tuple[int, ...], ...]:
    """Orbit partition of the domain (or of the orbits meeting ``points``).

    Only generators are applied, so this never materializes the group.
    """
    d = group.degree
    uf = UnionFind(d)
    for g in group.generators:
        for i, img in enumerate(g.images):
            uf.union(i, img)
    buckets: dict[int, list[int]] = {}
    for i in range(d):
        buckets.setdefault(uf.find(i), []).append(i)
    parts = sorted(tuple(sorted(v)) for v in buckets.values())
    if points is not None:
        wanted = set(points)
        parts = [p for p in parts if wanted.intersection(p)]
    return tuple(parts)


def is_transitive(group: PermGroup) -> bool:
    return len(orbits(group)) == 1


def is_semiregular(group: PermGroup) -> bool:
    """True when every point stabilizer is trivial (no nonidentity element fixes a point)."""
    return all(g.fixed_point_count() == 0 for g in group.elements if not g.is_identity())


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    if not 0 <= point < group.degree:
        raise ValueError(f"point {point} out of range")
    return PermGroup.from_elements(
        [g for g in group.elements if g(point) == point], degree=group.degree)


def coloring_stabilizer(group: PermGroup, coloring: Sequence[int]) -> PermGroup:
    """Subgroup preserving a coloring of the domain: {h : c(h(i)) = c(i) for all i}."""
    if len(coloring) != group.degree:
        raise DegreeMismatch(f"coloring length {len(coloring)} vs degree {group.degree}")
    keep = []
    for g in group.elements:
        imgs = g.images
        if all(coloring[imgs[i]] == coloring[i] for i in range(group.degree)):
            keep.append(g)
    return PermGroup.from_elements(keep, degree=group.degree)


def conjugacy_classes(group: PermGroup) -> list[tuple[Permutation, ...]]:
    """Conjugacy classes as sorted element tuples, ordered by smallest member.

    Union-find over elements, uniting x with g*x*g^-1 for each generator g;
    generator conjugations suffice because they generate all conjugations.
    """
    elems = group.elements
    index = {g: i for i, g in enumerate(elems)}
    uf = UnionFind(len(elems))
    conj = [(g, g.inverse()) for g in group.generators]
    for i, x in enumerate(elems):
        for g, ginv in conj:
            uf.union(i, index[g * x * ginv])
    buckets: dict[int, list[Permutation]] = {}
    for i, x in enumerate(elems):
        buckets.setdefault(uf.find(i), []).append(x)
    return sorted((tuple(v) for v in buckets.values()), key=lambda c: c[0])


def class_count(group: PermGroup) -> int:
    """Number of conjugacy classes."""
    return len(conjugacy_classes(group))


def centralizer_order(group: PermGroup, x: Permutation) -> int:
    return sum(1 for g in group.elements if g * x == x * g)


def _class_closed_subgroup(base: frozenset[Permutation], extra: Sequence[Permutation],
                           limit: int) -> frozenset[Permutation]:
    gens = sorted(base.union(extra))
    return frozenset(_closure(gens, limit=limit))


def normal_subgroups(group: PermGroup, budgets: Budgets = DEFAULT) -> list[frozenset[Permutation]]:
    """All normal subgroups, as element sets.

    Every normal subgroup is a union of conjugacy classes and is generated by
    the classes it contains, so the lattice is exactly the join-closure of
    class closures: grow each known normal subgroup by one whole class at a
    time until nothing new appears.
    """
    if group.order > budgets.max_normal_order:
        raise BudgetExceeded(
            f"normal subgroup enumeration refused: order {group.order} > "
            f"{budgets.max_normal_order}")
    classes = conjugacy_classes(group)
    trivial = frozenset({group.identity})
    found = {trivial}
    queue = [trivial]
    while queue:
        base = queue.pop()
        for cls in classes:
            if cls[0] in base:
                continue
            grown = _class_closed_subgroup(base, cls, limit=group.order)
            if grown not in found:
                if len(found) >= budgets.max_subgroup_count:
                    raise BudgetExceeded("normal subgroup lattice larger than safety cap")
                found.add(grown)
                queue.append(grown)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _subset_transitive(elements: frozenset[Permutation], degree: int) -> bool:
    return len({g(0) for g in elements}) == degree


def _subset_semiregular(elements: frozenset[Permutation]) -> bool:
    return all(g.fixed_point_count() == 0 for g in elements if not g.is_identity())


def minimal_block_partition(group: PermGroup, point: int) -> tuple[tuple[int, ...], ...]:
    """Finest block system in which 0 and ``point`` share a block.

    Union-find pair propagation: whenever a ~ b is known, g(a) ~ g(b) must
    hold for every generator g; iterate to the fixpoint.
    """
    d = group.degree
    uf = UnionFind(d)
    uf.union(0, point)
    queue = [(0, point)]
    while queue:
        a, b = queue.pop()
        for g in group.generators:
            x, y = g(a), g(b)
            if uf.union(x, y):
                queue.append((x, y))
    buckets: dict[int, list[int]] = {}
    for i in range(d):
        buckets.setdefault(uf.find(i), []).append(i)
    return tuple(sorted(tuple(sorted(v)) for v in buckets.values()))


def _join_partitions(p1, p2, degree: int) -> tuple[tuple[int, ...], ...]:
    uf = UnionFind(degree)
    for part in (p1, p2):
        for block in part:
            for other in block[1:]:
                uf.union(block[0], other)
    buckets: dict[int, list[int]] = {}
    for i in range(degree):
        buckets.setdefault(uf.find(i), []).append(i)
    return tuple(sorted(tuple(sorted(v)) for v in buckets.values()))


def all_block_systems(group: PermGroup) -> list[tuple[tuple[int, ...], ...]]:
    """Every nontrivial proper block system of a transitive group.

    For a transitive action each congruence is the join of the minimal
    congruences identifying 0 with another point of its block, so the full
    congruence lattice is the join-closure of the minimal partitions.
    Exposed mainly for debugging block decompositions.
    """
    d = group.degree
    minimal = set()
    for q in range(1, d):
        part = minimal_block_partition(group, q)
        if 1 < len(part) < d:
            minimal.add(part)
    systems = set(minimal)
    frontier = list(minimal)
    while frontier:
        part = frontier.pop()
        for other in minimal:
            joined = _join_partitions(part, other, d)
            if 1 < len(joined) < d and joined not in systems:
                systems.add(joined)
                frontier.append(joined)
    return sorted(systems, key=lambda p: (len(p), p))


def is_primitive(group: PermGroup) -> bool:
    """Transitive with no nontrivial proper block system."""
    if not is_transitive(group):
        return False
    d = group.degree
    if d == 1:
        return True
    return all(len(minimal_block_partition(group, q)) == 1 for q in range(1, d))


@dataclass(frozen=True)
class StructureReport:
    transitive: bool
    semiregular: bool
    primitive: bool
    semiprimitive: bool
    normal_subgroup_count: int


def structure_classify(group: PermGroup, budgets: Budgets = DEFAULT) -> StructureReport:
    """Transitivity, semiregularity, primitivity, semiprimitivity.

    Semiprimitive: transitive and every normal subgroup is transitive or
    semiregular. Uses the full normal subgroup lattice, so it inherits that
    enumeration's budget.
    """
    transitive = is_transitive(group)
    semiregular = is_semiregular(group)
    primitive = is_primitive(group)
    normals = normal_subgroups(group, budgets)
    semiprimitive = transitive and all(
        _subset_transitive(n, group.degree) or _subset_semiregular(n) for n in normals)
    return StructureReport(
        transitive=transitive,
        semiregular=semiregular,
        primitive=primitive,
        semiprimitive=semiprimitive,
        normal_subgroup_count=len(normals),
    )


def subgroups(group: PermGroup, budgets: Budgets = DEFAULT) -> list[frozenset[Permutation]]:
    """Every subgroup, as an element set; refuses groups over the lattice budget.

    Walk the lattice by extending each known subgroup with one more element.
    Every subgroup is reachable this way from the trivial one.
    """
    if group.order > budgets.max_subgroup_order:
        raise BudgetExceeded(
            f"subgroup lattice refused: order {group.order} > {budgets.max_subgroup_order}")
    elems = group.elements
    trivial = frozenset({group.identity})
    seen = {trivial: ()}
    queue = [trivial]
    while queue:
        sub = queue.pop()
        gens = seen[sub]
        for x in elems:
            if x in sub:
                continue
            grown = frozenset(_closure(list(gens) + [x], limit=group.order))
            if grown not in seen:
                if len(seen) >= budgets.max_subgroup_count:
                    raise BudgetExceeded("subgroup lattice larger than safety cap")
                seen[grown] = gens + (x,)
                queue.append(grown)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class NumericInvariants:
    mu: int          # minimal degree: fewest points moved by a nonidentity element
    b: int           # minimal base size
    max_sigma: int   # largest cycle count (fixed points included) of a nonidentity element
    e: int | None    # max class count over all subgroups, when requested


def _min_base_size(group: PermGroup) -> int:
    """Smallest number of points whose pointwise stabilizer is trivial.

    Iterative deepening over ascending point tuples, pruning points that do
    not shrink the running stabilizer (such points are globally redundant
    because pointwise stabilizers are intersections).
    """
    elems = list(group.elements)
    d = group.degree

    def dfs(stab: list[Permutation], start: int, depth: int) -> bool:
        if depth == 0:
            return False
        for x in range(start, d):
            sub = [g for g in stab if g(x) == x]
            if len(sub) == 1:
                return True
            if len(sub) < len(stab) and dfs(sub, x + 1, depth - 1):
                return True
        return False

    if len(elems) == 1:
        return 0
    for depth in range(1, d + 1):
        if dfs(elems, 0, depth):
            return depth
    raise AssertionError("faithful permutation group must have a base")


def numeric_invariants(group: PermGroup, want_e: bool = False,
                       budgets: Budgets = DEFAULT) -> NumericInvariants:
    """mu, minimal base size, max cycle count, and optionally e = max subgroup class count."""
    if group.order == 1:
        raise ValueError("numeric invariants need a nontrivial group")
    nonid = [g for g in group.elements if not g.is_identity()]
    mu = min(g.moved_count() for g in nonid)
    max_sigma = max(g.cycle_count() for g in nonid)
    b = _min_base_size(group)
    e = None
    if want_e:
        e = max(class_count(PermGroup.from_elements(s, degree=group.degree))
                for s in subgroups(group, budgets))
    return NumericInvariants(mu=mu, b=b, max_sigma=max_sigma, e=e)


def max_cycle_count(group: PermGroup) -> int:
    """max_sigma alone, for callers that do not need the full invariant set."""
    if group.order == 1:
        raise ValueError("max cycle count needs a nontrivial group")
    return max(g.cycle_count() for g in group.elements if not g.is_identity())
