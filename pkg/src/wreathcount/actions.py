"""Derived actions and group constructors.

Covers cycle statistics, the induced action on ell-subsets, the product
action on tuples of subsets, explicit wreath product groups, the named group
family constructors used by the CLI, and block decompositions of imprimitive
groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .budgets import DEFAULT, Budgets
from .errors import BudgetExceeded, DegreeMismatch, ParseError, UnknownFamily
from .permgroup import (
    PermGroup,
    Permutation,
    all_block_systems,
    closure_elements,
    is_primitive,
    is_transitive,
    parse_generators,
)


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, as a mapping length -> multiplicity."""

    alpha: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.alpha)

    @property
    def degree(self) -> int:
        return sum(length * mult for length, mult in self.alpha)

    def sigma(self) -> int:
        return sum(mult for _, mult in self.alpha)

    def fixed(self) -> int:
        return dict(self.alpha).get(1, 0)

    def keys(self):  # lets Mapping-style consumers accept a CycleType directly
        return self.as_dict().keys()

    def __getitem__(self, length: int) -> int:
        return self.as_dict()[length]


def sigma(p: Permutation) -> int:
    """Cycle count of p on its full domain, fixed points included."""
    return p.cycle_count()


def cycle_type(p: Permutation) -> CycleType:
    counts: dict[int, int] = {}
    for cyc in p.cycles(include_fixed=True):
        counts[len(cyc)] = counts.get(len(cyc), 0) + 1
    return CycleType(tuple(sorted(counts.items())))


def cycle_type_class_size(ct: CycleType) -> int:
    """Size of the conjugacy class in the symmetric group with this cycle type."""
    m = ct.degree
    denom = 1
    for length, mult in ct.alpha:
        denom *= length ** mult * math.factorial(mult)
    return math.factorial(m) // denom


# ---------------------------------------------------------------------------
# ell-subset action, in colexicographic order.
#
# Subsets {s_1 < s_2 < ... < s_l} of {0..m-1} are ranked colexicographically:
# rank = sum_i C(s_i, i), which unranks in O(l) binomial probes and keeps the
# point labelling independent of m.


def subset_rank(subset: Sequence[int]) -> int:
    return sum(math.comb(s, i + 1) for i, s in enumerate(sorted(subset)))


def subset_unrank(rank: int, ell: int, m: int) -> tuple[int, ...]:
    out = []
    rem = rank
    for i in range(ell, 0, -1):
        # largest s with C(s, i) <= rem
        s = i - 1
        while math.comb(s + 1, i) <= rem:
            s += 1
        out.append(s)
        rem -= math.comb(s, i)
    if out and out[0] >= m:
        raise ValueError(f"rank {rank} out of range for C({m},{ell})")
    return tuple(reversed(out))


def subsets_action_lift(p: Permutation, ell: int, budgets: Budgets = DEFAULT) -> Permutation:
    """Permutation induced by p on the ell-subsets of its domain."""
    m = p.degree
    if not 1 <= ell <= m:
        raise ValueError(f"need 1 <= ell <= {m}, got {ell}")
    n = math.comb(m, ell)
    if n > budgets.max_lift_degree:
        raise BudgetExceeded(f"lifted degree C({m},{ell}) = {n} > {budgets.max_lift_degree}")
    images = [0] * n
    for subset in combinations(range(m), ell):
        images[subset_rank(subset)] = subset_rank([p(x) for x in subset])
    return Permutation._unsafe(tuple(images))


def sigma_prime(p: Permutation, ell: int, budgets: Budgets = DEFAULT) -> int:
    """Cycle count of the induced action of p on ell-subsets."""
    return subsets_action_lift(p, ell, budgets).cycle_count()


def fix_subsets_direct(p: Permutation, ell: int, budgets: Budgets = DEFAULT) -> int:
    """Number of ell-subsets fixed setwise by p, by direct enumeration."""
    m = p.degree
    if not 0 <= ell <= m:
        raise ValueError(f"need 0 <= ell <= {m}")
    if math.comb(m, ell) > budgets.max_lift_degree:
        raise BudgetExceeded(f"C({m},{ell}) exceeds lift budget")
    count = 0
    for subset in combinations(range(m), ell):
        if set(map(p, subset)) == set(subset):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Product action of S_m wr S_t on t-tuples of ell-subsets.


@dataclass(frozen=True)
class ProductActionElement:
    """Coordinate permutations plus a top permutation of the coordinates."""

    coords: tuple[Permutation, ...]
    top: Permutation

    def __post_init__(self):
        if self.top.degree != len(self.coords):
            raise DegreeMismatch("top degree must equal the number of coordinates")


def product_action_build(coords: Sequence[Permutation], top: Permutation,
                         m: int, ell: int, budgets: Budgets = DEFAULT) -> Permutation:
    """Permutation of the C(m,ell)^t tuples realized by (coords, top).

    A point is a t-tuple (w_1, ..., w_t) of subset ranks, encoded in mixed
    radix with coordinate 0 most significant. The image tuple takes, at
    position j, coords[top^-1(j)] applied to w_{top^-1(j)}.
    """
    t = len(coords)
    elem = ProductActionElement(tuple(coords), top)
    base = math.comb(m, ell)
    for c in elem.coords:
        if c.degree != base:
            raise DegreeMismatch(
                f"coordinate degree {c.degree} != C({m},{ell}) = {base}")
    degree = base ** t
    if degree > budgets.max_lift_degree:
        raise BudgetExceeded(f"product action degree {degree} > {budgets.max_lift_degree}")
    topinv = top.inverse()
    images = [0] * degree
    for point in range(degree):
        # decode tuple, most significant = coordinate 0
        w = []
        rem = point
        for _ in range(t):
            rem, digit = divmod(rem, base)
            w.append(digit)
        w.reverse()
        img = 0
        for j in range(t):
            src = topinv(j)
            img = img * base + elem.coords[src](w[src])
        images[point] = img
    return Permutation._unsafe(tuple(images))


def gamma(p: Permutation) -> int:
    """Cycle count of a product-action permutation; coincides with sigma."""
    return p.cycle_count()


# ---------------------------------------------------------------------------
# Explicit wreath products Z_k wr H for the brute-force oracle.


class WreathGroup:
    """The abstract group Z_k wr H with every element materialized.

    Elements are pairs (v, h) with v in (Z_k)^n and h in H; the product is
    (v, h)(w, g) = (v + h.w, h g) where (h.w)_i = w_{h^-1(i)}. Only meant as
    an oracle: order is k**n * |H| and everything is stored.
    """

    def __init__(self, k: int, top: PermGroup, budgets: Budgets = DEFAULT):
        if k < 1:
            raise ValueError("k must be >= 1")
        n = top.degree
        size = k ** n * top.order
        if size > budgets.max_group_order:
            raise BudgetExceeded(
                f"wreath group order {size} exceeds budget {budgets.max_group_order}")
        self.k = k
        self.top = top
        self.n = n
        self.order = size
        vectors = self._all_vectors()
        self.elements = tuple((v, h) for v in vectors for h in top.elements)

    def _all_vectors(self) -> list[tuple[int, ...]]:
        vecs: list[tuple[int, ...]] = [()]
        for _ in range(self.n):
            vecs = [v + (d,) for v in vecs for d in range(self.k)]
        return sorted(vecs)

    @property
    def identity(self):
        return ((0,) * self.n, self.top.identity)

    def multiply(self, a, b):
        (v, h), (w, g) = a, b
        hinv = h.inverse()
        moved = tuple((v[i] + w[hinv(i)]) % self.k for i in range(self.n))
        return (moved, h * g)

    def inverse(self, a):
        # (v,h)^-1 = (w, h^-1) with w_i = -v_{h(i)}: then v + h.w = 0
        v, h = a
        w = tuple((-v[h(i)]) % self.k for i in range(self.n))
        return (w, h.inverse())

    def generators(self):
        """Base unit vectors plus lifted top generators; generates the whole group."""
        gens = []
        for i in range(self.n):
            if self.k > 1:
                vec = tuple(1 if j == i else 0 for j in range(self.n))
                gens.append((vec, self.top.identity))
        zero = (0,) * self.n
        for g in self.top.generators:
            gens.append((zero, g))
        return gens


def build_wreath_group(k: int, top: PermGroup, budgets: Budgets = DEFAULT) -> WreathGroup:
    return WreathGroup(k, top, budgets)


# ---------------------------------------------------------------------------
# Named families.


def _cyclic_gen(n: int) -> Permutation:
    return Permutation._unsafe(tuple((i + 1) % n for i in range(n)))


def _symmetric_gens(n: int) -> list[Permutation]:
    if n == 1:
        return [Permutation.identity(1)]
    gens = [Permutation.from_cycles([[0, 1]], n)]
    if n > 2:
        gens.append(_cyclic_gen(n))
    return gens


def _alternating_gens(n: int) -> list[Permutation]:
    if n < 3:
        return [Permutation.identity(max(n, 1))]
    three = Permutation.from_cycles([[0, 1, 2]], n)
    if n == 3:
        return [three]
    if n % 2 == 1:
        return [three, _cyclic_gen(n)]
    # even n: the n-cycle is odd; use the (n-1)-cycle fixing 0 instead
    return [three, Permutation.from_cycles([list(range(1, n))], n)]


def _dihedral_gens(n: int) -> list[Permutation]:
    if n < 3:
        raise UnknownFamily("dihedral needs degree >= 3")
    rot = _cyclic_gen(n)
    refl = Permutation._unsafe(tuple((n - i) % n for i in range(n)))
    return [rot, refl]


def _wreath_cyclic_gens(m: int) -> list[Permutation]:
    # C2 wr C_m on 2m points: pair blocks {2i, 2i+1}, first-pair swap plus block rotation
    n = 2 * m
    swap = Permutation.from_cycles([[0, 1]], n)
    if m == 1:
        return [swap]
    rot = Permutation._unsafe(tuple((i + 2) % n for i in range(n)))
    return [swap, rot]


# regular quaternion group of order 8, indexed 1,-1,i,-i,j,-j,k,-k
_QUATERNION_GENS = (
    Permutation((2, 3, 1, 0, 6, 7, 5, 4)),   # left multiplication by i
    Permutation((4, 5, 7, 6, 1, 0, 2, 3)),   # left multiplication by j
)


def _int_params(params: Sequence[str], count: int, name: str) -> list[int]:
    if len(params) != count:
        raise UnknownFamily(f"{name} takes {count} parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UnknownFamily(f"{name} parameters must be integers: {params}")


def family(name: str, params: Sequence[str] = (), budgets: Budgets = DEFAULT) -> PermGroup:
    """Construct a named group family; see the CLI help for the grammar."""
    params = tuple(str(p) for p in params)
    tag = tuple(params)
    if name == "cyclic":
        (n,) = _int_params(params, 1, name)
        if n < 1:
            raise UnknownFamily("cyclic needs n >= 1")
        gens = [_cyclic_gen(n)] if n > 1 else [Permutation.identity(1)]
        grp = PermGroup(gens, family=(name, tag), budgets=budgets)
    elif name == "symmetric":
        (n,) = _int_params(params, 1, name)
        if n < 1:
            raise UnknownFamily("symmetric needs n >= 1")
        grp = PermGroup(_symmetric_gens(n), family=(name, tag), budgets=budgets)
    elif name == "alternating":
        (n,) = _int_params(params, 1, name)
        if n < 1:
            raise UnknownFamily("alternating needs n >= 1")
        grp = PermGroup(_alternating_gens(n), family=(name, tag), budgets=budgets)
    elif name == "dihedral":
        (n,) = _int_params(params, 1, name)
        grp = PermGroup(_dihedral_gens(n), family=(name, tag), budgets=budgets)
    elif name == "subsets" or name == "subsets-alt":
        m, ell = _int_params(params, 2, name)
        if not (m >= 2 and 1 <= ell <= m - 1):
            raise UnknownFamily(f"need m >= 2 and 1 <= ell <= m-1, got {m},{ell}")
        base = _symmetric_gens(m) if name == "subsets" else _alternating_gens(m)
        gens = [subsets_action_lift(g, ell, budgets) for g in base]
        grp = PermGroup(gens, family=(name, tag), budgets=budgets)
    elif name == "product":
        m, ell, t = _int_params(params, 3, name)
        if not (m >= 2 and 1 <= ell <= m - 1 and t >= 1):
            raise UnknownFamily(f"need m >= 2, 1 <= ell <= m-1, t >= 1, got {m},{ell},{t}")
        base = math.comb(m, ell)
        ident = Permutation.identity(base)
        top_ident = Permutation.identity(t)
        gens = []
        for g in _symmetric_gens(m):
            lifted = subsets_action_lift(g, ell, budgets)
            coords = [lifted] + [ident] * (t - 1)
            gens.append(product_action_build(coords, top_ident, m, ell, budgets))
        for tau in _symmetric_gens(t):
            if tau.is_identity():
                continue
            gens.append(product_action_build([ident] * t, tau, m, ell, budgets))
        grp = PermGroup(gens, family=(name, tag), budgets=budgets)
    elif name == "wreath-cyclic":
        (m,) = _int_params(params, 1, name)
        if m < 1:
            raise UnknownFamily("wreath-cyclic needs m >= 1")
        grp = PermGroup(_wreath_cyclic_gens(m), family=(name, tag), budgets=budgets)
    elif name == "quaternion":
        if params:
            raise UnknownFamily("quaternion takes no parameters")
        grp = PermGroup(list(_QUATERNION_GENS), family=(name, ()), budgets=budgets)
    elif name == "gens":
        if not params:
            raise UnknownFamily("gens needs at least one permutation")
        rest = list(params)
        degree = None
        if rest[0].strip().isdigit():
            degree = int(rest.pop(0))
            if not rest:
                raise UnknownFamily("gens needs at least one permutation after the degree")
        try:
            gens = parse_generators(",".join(rest), degree)
        except ParseError as exc:
            raise UnknownFamily(f"bad generator list: {exc}") from exc
        grp = PermGroup(gens, family=(name, tag), budgets=budgets)
    else:
        raise UnknownFamily(f"unknown family {name!r}")
    return grp


def parse_group_spec(spec: str, budgets: Budgets = DEFAULT) -> PermGroup:
    """Parse ``name`` or ``name:p1,p2,...`` into a group."""
    spec = spec.strip()
    if not spec:
        raise UnknownFamily("empty group spec")
    name, _, raw = spec.partition(":")
    params = [p for p in raw.split(",")] if raw else []
    return family(name.strip(), [p.strip() for p in params], budgets)


# ---------------------------------------------------------------------------
# Block decompositions.


@dataclass(frozen=True)
class BlockDecomposition:
    """A block system with primitive quotient, plus kernel and quotient groups."""

    r: int
    blocks: tuple[tuple[int, ...], ...]
    kernel: PermGroup
    quotient: PermGroup


def induced_block_permutation(h: Permutation, blocks: Sequence[Sequence[int]]) -> Permutation:
    """Permutation of block indices induced by h; blocks must be h-invariant as a system."""
    index = {}
    for bi, block in enumerate(blocks):
        for pt in block:
            index[pt] = bi
    images = [index[h(block[0])] for block in blocks]
    return Permutation(images)


def block_cycle_count(h: Permutation, blocks: Sequence[Sequence[int]]) -> int:
    """Cycle count of h on the block set."""
    return induced_block_permutation(h, blocks).cycle_count()


def block_decomposition(group: PermGroup, budgets: Budgets = DEFAULT) -> BlockDecomposition | None:
    """Coarsest useful block system of a transitive group, or None if primitive.

    Among all block systems whose quotient action is primitive, picks the one
    with the fewest blocks r > 1; ties break toward the lexicographically
    smallest block containing 0, then the smallest partition.
    """
    if not is_transitive(group):
        raise ValueError("block decomposition needs a transitive group")
    systems = all_block_systems(group)
    if not systems:
        return None

    def block_of_zero(part):
        return next(b for b in part if 0 in b)

    candidates = []
    for part in systems:
        quotient_gens = [induced_block_permutation(g, part) for g in group.generators]
        quotient = closure_elements(quotient_gens, budgets)
        if is_primitive(quotient):
            candidates.append((len(part), block_of_zero(part), part, quotient))
    # a coarsest system always has a primitive quotient, so candidates is nonempty
    candidates.sort(key=lambda c: (c[0], c[1], c[2]))
    r, _, blocks, quotient = candidates[0]

    kernel_elems = []
    for h in group.elements:
        if induced_block_permutation(h, blocks).is_identity():
            kernel_elems.append(h)
    kernel = PermGroup.from_elements(kernel_elems, degree=group.degree)
    if kernel.order * quotient.order != group.order:
        raise AssertionError("kernel/quotient orders do not multiply to the group order")
    return BlockDecomposition(r=r, blocks=blocks, kernel=kernel, quotient=quotient)
