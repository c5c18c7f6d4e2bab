"""Evaluators for the inequalities and decompositions backing the counts.

Every evaluator returns a BoundReport (or a structured report) rather than a
bare bool: the report records both sides, whether arithmetic was exact or
binary64, and echoes its inputs. Comparisons are exact whenever every
exponent in the expression is an integer; only fractional exponents fall
back to floats, with a relative tolerance of 1e-9 and an explicit
"indeterminate" verdict inside the tolerance band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import combinatorics
from .actions import (
    block_decomposition,
    cycle_type_class_size,
    induced_block_permutation,
    subsets_action_lift,
)
from .budgets import DEFAULT, Budgets
from .classcount import (
    auto_count,
    burnside_orbit_count,
    clifford_count,
    coloring_orbit_reps,
    decode_coloring,
)
from .errors import (
    BudgetExceeded,
    DivisibilityViolation,
    Infeasible,
    NotSemiprimitive,
)
from .permgroup import (
    PermGroup,
    class_count,
    coloring_stabilizer,
    is_semiregular,
    numeric_invariants,
    structure_classify,
    subgroups,
)

_TOL = Fraction(1, 10 ** 9)

# maximum-subgroup-class-count substitutes, by how their value is formed
E_SOURCES = ("exact-lattice", "five-pow-n-third", "five-pow-n-minus-one")


@dataclass
class BoundReport:
    name: str
    lhs: object            # int | Fraction | float | None
    rhs: object
    holds: object          # True | False | "indeterminate"
    mode: str              # "exact" | "float"
    inputs: dict = field(default_factory=dict)
    e_source: str | None = None
    asymptotic: bool = False
    note: str = ""

    def to_json_dict(self) -> dict:
        def render(x):
            if x is None or isinstance(x, float):
                return x
            if isinstance(x, Fraction):
                return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
            return str(x)

        out = {
            "name": self.name,
            "lhs": render(self.lhs),
            "rhs": render(self.rhs),
            "holds": self.holds,
            "mode": self.mode,
            "inputs": {k: render(v) if isinstance(v, (int, Fraction)) else v
                       for k, v in sorted(self.inputs.items())},
        }
        if self.e_source is not None:
            out["e_source"] = self.e_source
        if self.asymptotic:
            out["asymptotic"] = True
        if self.note:
            out["note"] = self.note
        return out


def _tolerant_less(lhs, rhs, strict: bool = True):
    """Compare exact lhs against possibly-float rhs with 1e-9 relative tolerance."""
    if isinstance(rhs, float):
        if math.isinf(rhs):
            return rhs > 0
        r = Fraction(rhs)
    else:
        r = Fraction(rhs)
    l = Fraction(lhs)
    if abs(l - r) <= _TOL * max(Fraction(1), abs(r)):
        return "indeterminate"
    return l < r if strict else l <= r


# ---------------------------------------------------------------------------
# The main class-count upper bound k(G) < k**n/|H| + 2*e*k**max_sigma.


def _resolve_e(group: PermGroup, e_source: str, budgets: Budgets):
    n = group.degree
    if e_source == "exact-lattice":
        e = numeric_invariants(group, want_e=True, budgets=budgets).e
        return e, "exact"
    if e_source == "five-pow-n-third":
        if n % 3 == 0:
            return 5 ** (n // 3), "exact"
        return 5.0 ** (n / 3), "float"
    if e_source == "five-pow-n-minus-one":
        return 5 ** (n - 1), "exact"
    raise ValueError(f"e_source must be one of {E_SOURCES}, got {e_source!r}")


def count_upper_bound(group: PermGroup, k: int, e_source: str = "exact-lattice",
                      budgets: Budgets = DEFAULT) -> BoundReport:
    """k(G) < k**n/|H| + 2*e*k**max_sigma, with e = max subgroup class count.

    rhs is an exact rational whenever e is exact. lhs is the auto-dispatched
    count; when that is infeasible within budgets the verdict is
    indeterminate and the bracket lands in the note.
    """
    if group.order == 1:
        raise ValueError("bound needs a nontrivial group")
    n = group.degree
    inv = numeric_invariants(group)
    e, e_mode = _resolve_e(group, e_source, budgets)
    main = Fraction(k ** n, group.order)
    if e_mode == "exact":
        rhs: object = main + 2 * e * k ** inv.max_sigma
        mode = "exact"
    else:
        rhs = float(main) + 2.0 * e * float(k ** inv.max_sigma)
        mode = "float"
    inputs = {"k": k, "n": n, "order": group.order, "max_sigma": inv.max_sigma, "e": e}
    try:
        lhs = auto_count(group, k, budgets).value
    except (Infeasible, BudgetExceeded) as exc:
        return BoundReport("count-upper-bound", None, rhs, "indeterminate", mode,
                           inputs, e_source=e_source, note=f"count not computed: {exc}")
    holds = (lhs < rhs) if mode == "exact" else _tolerant_less(lhs, rhs)
    return BoundReport("count-upper-bound", lhs, rhs, holds, mode,
                       inputs, e_source=e_source)


# ---------------------------------------------------------------------------
# Predicates.


def _leq_two_pow_quarter_sqrt(order: int, n: int):
    """Decide order <= 2**(sqrt(n)/4), exactly when integer brackets settle it.

    Equivalent to 16*log2(order)**2 <= n. With c = floor(log2(order)) the
    integer brackets decide every case except when n falls strictly between
    16c^2 and 16(c+1)^2 for a non-power-of-two order; that narrow band falls
    back to binary64.
    """
    if order == 1:
        return True, "exact"
    c = order.bit_length() - 1
    if order == 1 << c:
        return 16 * c * c <= n, "exact"
    if 16 * (c + 1) * (c + 1) <= n:
        return True, "exact"
    if 16 * c * c >= n:
        return False, "exact"
    x = 16.0 * math.log2(order) ** 2
    if abs(x - n) <= 1e-9 * max(1.0, abs(float(n))):
        return "indeterminate", "float"
    return x <= n, "float"


def predicates(group: PermGroup, k: int, budgets: Budgets = DEFAULT) -> list[BoundReport]:
    """The unconditional inequalities and hypothesis predicates for (H, k)."""
    if group.order == 1:
        raise ValueError("predicates need a nontrivial group")
    n = group.degree
    order = group.order
    inv = numeric_invariants(group)
    base: dict = {"k": k, "n": n, "order": order, "max_sigma": inv.max_sigma}
    reports = []

    # minimal degree times base size covers the domain (transitive groups)
    transitive = len({g(0) for g in group.elements}) == n
    reports.append(BoundReport(
        "min-degree-base-product", inv.mu * inv.b, n, inv.mu * inv.b >= n, "exact",
        dict(base, mu=inv.mu, b=inv.b),
        note="" if transitive else "guaranteed only for transitive groups"))

    # fixed point ratio: fpr(h) <= 1 - 1/log2|H| for all h != 1,
    # i.e. 2**n <= |H|**(n - fix); worst case has fix = n - mu
    if order > 1:
        reports.append(BoundReport(
            "fixed-point-ratio", 2 ** n, order ** inv.mu,
            2 ** n <= order ** inv.mu, "exact", dict(base, mu=inv.mu)))

    # sigma(h) <= (n + fix(h))/2 for every h, as 2*sigma - fix <= n
    worst = max(2 * g.cycle_count() - g.fixed_point_count() for g in group.elements)
    reports.append(BoundReport(
        "cycle-count-half-bound", worst, n, worst <= n, "exact", dict(base)))

    # max_sigma <= n - log_k(2*k*n*|H|^2), exactly: 2*k*n*|H|^2 <= k**(n - max_sigma)
    if k >= 2:
        lhs = 2 * k * n * order * order
        rhs = k ** (n - inv.max_sigma)
        reports.append(BoundReport(
            "log-margin-condition", lhs, rhs, lhs <= rhs, "exact", dict(base)))
    else:
        reports.append(BoundReport(
            "log-margin-condition", None, None, False, "exact", dict(base),
            note="condition needs k >= 2"))

    # no element moving exactly two points
    has_transposition = any(g.moved_count() == 2 for g in group.elements)
    reports.append(BoundReport(
        "no-transposition", int(has_transposition), 0, not has_transposition,
        "exact", dict(base)))

    # |H| <= 2**(sqrt(n)/4); vacuous at desk scale for transitive groups
    holds, mode = _leq_two_pow_quarter_sqrt(order, n)
    reports.append(BoundReport(
        "small-order-condition", order, 2.0 ** (math.sqrt(n) / 4), holds, mode,
        dict(base), asymptotic=True))

    return reports


# ---------------------------------------------------------------------------
# Subset-action orbit counts and the large-base bounds.


def _lift_cycle_lengths(m: int, ell: int, parts: tuple[int, ...],
                        budgets: Budgets) -> dict[int, int]:
    """Cycle length multiset of the ell-subset lift of a permutation with given type."""
    from .permgroup import Permutation

    images = []
    start = 0
    for length in parts:
        images.extend(range(start + 1, start + length))
        images.append(start)
        start += length
    rep = Permutation._unsafe(tuple(images))
    lift = subsets_action_lift(rep, ell, budgets)
    lengths: dict[int, int] = {}
    for cyc in lift.cycles(include_fixed=True):
        lengths[len(cyc)] = lengths.get(len(cyc), 0) + 1
    return lengths


def subset_orbit_count_exact(m: int, ell: int, k: int,
                             budgets: Budgets = DEFAULT) -> int:
    """n(S_m, k-colorings of the ell-subsets), exactly, via per-cycle-type Burnside."""
    if math.comb(m, ell) > budgets.max_lift_degree:
        raise BudgetExceeded(f"C({m},{ell}) exceeds lift budget")
    fact = math.factorial(m)
    total = 0
    for part in combinatorics.partition_enum(m):
        ct = cycle_type_from_parts(part.parts)
        size = cycle_type_class_size(ct)
        sp = sum(_lift_cycle_lengths(m, ell, part.parts, budgets).values())
        total += size * k ** sp
    if total % fact:
        raise DivisibilityViolation("subset-action Burnside sum not divisible by m!")
    return total // fact


def cycle_type_from_parts(parts: Sequence[int]):
    from .actions import CycleType

    counts: dict[int, int] = {}
    for p in parts:
        counts[p] = counts.get(p, 0) + 1
    return CycleType(tuple(sorted(counts.items())))


def subset_orbit_bound(m: int, ell: int, k: int, budgets: Budgets = DEFAULT) -> BoundReport:
    """n(S_m, B) < 2*max(k**(7/8 * C), (m!)**-0.58 * k**C) with C = C(m,ell).

    The guarantee is asymptotic in m, so the verdict is observational. rhs is
    binary64 (fractional exponents); lhs is the exact Burnside count.
    """
    if not (1 <= ell and 2 * ell < m):
        raise ValueError("need 1 <= ell < m/2")
    c = math.comb(m, ell)
    log2_rhs_a = 0.875 * c * math.log2(k) if k > 1 else 0.0
    log2_rhs_b = c * math.log2(k) - 0.58 * math.log2(math.factorial(m)) if k > 1 else None
    if k == 1:
        rhs = 2.0
    else:
        best = max(log2_rhs_a, log2_rhs_b)
        rhs = math.inf if best > 1020 else 2.0 * 2.0 ** best
    inputs = {"m": m, "ell": ell, "k": k, "subset_count": c}
    try:
        lhs = subset_orbit_count_exact(m, ell, k, budgets)
    except BudgetExceeded as exc:
        return BoundReport("subset-orbit-bound", None, rhs, "indeterminate", "float",
                           inputs, asymptotic=True, note=str(exc))
    return BoundReport("subset-orbit-bound", lhs, rhs, _tolerant_less(lhs, rhs),
                       "float", inputs, asymptotic=True)


def product_orbit_identity(m: int, ell: int, t: int, k: int,
                           budgets: Budgets = DEFAULT) -> BoundReport:
    """n((S_m)^t, tuples of colorings) = n(S_m, colorings)**t, both sides exact.

    The direct power acts coordinatewise on t-tuples of k-colorings of the
    ell-subsets, equivalently on colorings of t disjoint copies of the
    subset domain. The lhs enumerates that group explicitly and runs
    Burnside on it; the rhs raises the single-factor cycle-type count to the
    t-th power. holds=False signals an implementation bug.

    Note the identity is about tuples of colorings, not colorings of the
    product-action domain: already for m=3, t=2, k=2 the latter space has
    36 orbits while the tuple space has 4**2 = 16.
    """
    from .permgroup import Permutation

    if t < 1:
        raise ValueError("t must be >= 1")
    c = math.comb(m, ell)
    if t * c > budgets.max_lift_degree or math.factorial(m) ** t > budgets.max_group_order:
        raise BudgetExceeded(f"product Burnside refused: t*C({m},{ell}) or (m!)^{t} too large")
    if k ** (t * c) > budgets.max_coloring_space:
        raise BudgetExceeded("tuple coloring space too large for the exact check")

    from .actions import _symmetric_gens

    gens = []
    for i in range(t):
        for g in _symmetric_gens(m):
            lifted = subsets_action_lift(g, ell, budgets)
            images = list(range(t * c))
            for w in range(c):
                images[i * c + w] = i * c + lifted(w)
            gens.append(Permutation(images))
    power_group = PermGroup(gens, budgets=budgets)
    lhs = burnside_orbit_count(power_group, k)
    rhs = subset_orbit_count_exact(m, ell, k, budgets) ** t
    inputs = {"m": m, "ell": ell, "t": t, "k": k}
    return BoundReport("product-orbit-identity", lhs, rhs, lhs == rhs, "exact", inputs)


def large_base_count_bound(m: int, ell: int, t: int, k: int,
                           budgets: Budgets = DEFAULT) -> BoundReport:
    """k(G) < 5**(m*t) * (2**t * n((S_m)^t, B_t) + k**(2n/3)) for product-action groups.

    The n(...) term is computed exactly through the product identity;
    k**(2n/3) is exact when 3 | 2n. The verdict compares against the exact
    count of the full product-action family when that fits the budgets.
    """
    n = math.comb(m, ell) ** t
    nterm = subset_orbit_count_exact(m, ell, k, budgets) ** t
    outer = 5 ** (m * t)
    inputs = {"m": m, "ell": ell, "t": t, "k": k, "n": n, "n_term": nterm}
    if (2 * n) % 3 == 0:
        rhs: object = outer * (2 ** t * nterm + k ** (2 * n // 3))
        mode = "exact"
    else:
        rhs = float(outer) * (float(2 ** t * nterm) + float(k) ** (2 * n / 3))
        mode = "float"
    try:
        from .actions import family

        grp = family("product", (str(m), str(ell), str(t)), budgets)
        lhs = auto_count(grp, k, budgets).value
    except (BudgetExceeded, Infeasible) as exc:
        return BoundReport("large-base-count-bound", None, rhs, "indeterminate", mode,
                           inputs, asymptotic=True, note=f"count not computed: {exc}")
    holds = (lhs < rhs) if mode == "exact" else _tolerant_less(lhs, rhs)
    return BoundReport("large-base-count-bound", lhs, rhs, holds, mode,
                       inputs, asymptotic=True)


def large_base_match(group_or_spec) -> tuple[int, int, int] | None:
    """(m, ell, t) when the group was built as a large-base family, else None.

    Matching is by construction metadata only: subsets:m,ell and
    subsets-alt:m,ell (t = 1) or product:m,ell,t, requiring m >= 5 and
    1 <= ell < m/2.
    """
    if isinstance(group_or_spec, PermGroup):
        fam = group_or_spec.family
    else:
        spec = str(group_or_spec).strip()
        name, _, raw = spec.partition(":")
        fam = (name.strip(), tuple(p.strip() for p in raw.split(",")) if raw else ())
    if fam is None:
        return None
    name, params = fam
    try:
        if name in ("subsets", "subsets-alt"):
            m, ell = int(params[0]), int(params[1])
            t = 1
        elif name == "product":
            m, ell, t = int(params[0]), int(params[1]), int(params[2])
        else:
            return None
    except (IndexError, ValueError):
        return None
    if m >= 5 and 1 <= ell and 2 * ell < m and t >= 1:
        return (m, ell, t)
    return None


# ---------------------------------------------------------------------------
# Semiprimitive decomposition report.


@dataclass
class SemiprimitiveReport:
    r: int
    blocks: tuple[tuple[int, ...], ...]
    kernel_order: int
    quotient_order: int
    kernel_semiregular: bool
    cycle_bound_holds: bool          # sigma(h) <= (n/r) * sigma_blocks(h) for all h
    alpha_bound_holds: bool          # max_sigma/n <= max(1/2, max over h not in K)
    orbit_count: int                 # n(H, k-colorings of the domain)
    quotient_orbit_count: int        # n(H/K, k**(n/r)-colorings of the blocks)
    chain_rhs: object
    chain_holds: object
    chain_mode: str
    e_k: int | None
    e_k_quotient_bound_holds: bool | None
    e_k_five_eighths_holds: bool | None
    note: str = ""

    def to_json_dict(self) -> dict:
        def render(x):
            if isinstance(x, Fraction):
                return f"{x.numerator}/{x.denominator}"
            if isinstance(x, (int, type(None), float, bool, str)):
                return x
            return str(x)

        return {k: render(v) for k, v in self.__dict__.items() if k != "blocks"} | {
            "blocks": [list(b) for b in self.blocks]}


def semiprimitive_report(group: PermGroup, k: int,
                         budgets: Budgets = DEFAULT) -> SemiprimitiveReport:
    """Block decomposition checks for a transitive, imprimitive, semiprimitive group.

    Verifies that the block kernel K is semiregular, that cycle counts on the
    domain are bounded by (n/r) times cycle counts on the blocks, and that
    the orbit-count chain
        n(H, X-colorings) < n(H/K, blocks) + k**n/|H| + n*k**(n/2)/|H|
    holds with exact rational arithmetic (k**(n/2) exact iff n is even).
    """
    report = structure_classify(group, budgets)
    if not report.transitive:
        raise NotSemiprimitive("group is not transitive")
    if not report.semiprimitive:
        raise NotSemiprimitive("group is not semiprimitive")
    if report.primitive:
        raise NotSemiprimitive("group is primitive; no proper block system to decompose")

    decomp = block_decomposition(group, budgets)
    assert decomp is not None
    n = group.degree
    r = decomp.r
    kernel = decomp.kernel
    quotient = decomp.quotient
    kernel_set = frozenset(kernel.elements)

    kernel_semiregular = is_semiregular(kernel)

    per_block = n // r
    cycle_bound = True
    max_quot_sigma = 0
    for h in group.elements:
        induced = induced_block_permutation(h, decomp.blocks)
        if h.cycle_count() > per_block * induced.cycle_count():
            cycle_bound = False
        if h not in kernel_set:
            max_quot_sigma = max(max_quot_sigma, induced.cycle_count())

    from .permgroup import max_cycle_count

    alpha = Fraction(max_cycle_count(group), n)
    alpha_bound = alpha <= max(Fraction(1, 2), Fraction(max_quot_sigma, r))

    lhs = burnside_orbit_count(group, k)
    quot_count = burnside_orbit_count(quotient, k ** per_block)
    term2 = Fraction(k ** n, group.order)
    if n % 2 == 0:
        chain_rhs: object = quot_count + term2 + Fraction(n * k ** (n // 2), group.order)
        chain_mode = "exact"
        chain_holds: object = lhs < chain_rhs
    else:
        chain_rhs = float(quot_count) + float(term2) + n * float(k) ** (n / 2) / group.order
        chain_mode = "float"
        chain_holds = _tolerant_less(lhs, chain_rhs)

    # e_K: largest class count among coloring stabilizers meeting K trivially
    e_k: int | None = None
    note = ""
    try:
        reps = coloring_orbit_reps(group, k, budgets)
        for enc, size in reps:
            if size == group.order:
                e_k = max(e_k or 1, 1)
                continue
            stab = coloring_stabilizer(group, decode_coloring(enc, k, n))
            if len(kernel_set.intersection(stab.elements)) == 1:
                e_k = max(e_k or 1, class_count(stab))
    except BudgetExceeded as exc:
        note = f"e_K skipped: {exc}"

    e_k_quot = None
    if e_k is not None and quotient.order <= budgets.max_subgroup_order:
        best = max(class_count(PermGroup.from_elements(s, degree=quotient.degree))
                   for s in subgroups(quotient, budgets))
        e_k_quot = e_k <= best
    e_k_58 = None
    if e_k is not None and not group.is_abelian():
        e_k_58 = Fraction(e_k) <= Fraction(5, 8) * group.order

    return SemiprimitiveReport(
        r=r, blocks=decomp.blocks, kernel_order=kernel.order,
        quotient_order=quotient.order, kernel_semiregular=kernel_semiregular,
        cycle_bound_holds=cycle_bound, alpha_bound_holds=alpha_bound,
        orbit_count=lhs, quotient_orbit_count=quot_count, chain_rhs=chain_rhs,
        chain_holds=chain_holds, chain_mode=chain_mode, e_k=e_k,
        e_k_quotient_bound_holds=e_k_quot, e_k_five_eighths_holds=e_k_58, note=note)


# ---------------------------------------------------------------------------
# Scans.


@dataclass(frozen=True)
class ScanRow:
    param: str
    k: int
    n: int
    order: int
    value: int | None
    bound: str
    holds: object          # True | False | "skipped"
    mode: str

    def csv_fields(self) -> list[str]:
        return [self.param, str(self.k), str(self.n), str(self.order),
                "" if self.value is None else str(self.value),
                self.bound, str(self.holds).lower(), self.mode]


SCAN_CSV_HEADER = "param,k,n,order,value,bound,holds,mode"


def rows_to_csv(rows: Sequence[ScanRow]) -> str:
    lines = [SCAN_CSV_HEADER]
    for row in rows:
        lines.append(",".join(row.csv_fields()))
    return "\n".join(lines) + "\n"


def counterexample_scan(m_values: Sequence[int], k: int = 2,
                        budgets: Budgets = DEFAULT) -> list[ScanRow]:
    """Exact counts for H = wreath-cyclic:m against the 5**m/m and k**n markers.

    Two rows per m: whether k(G) >= 5**m/m, and whether k(G) > k**n. The
    first is what makes these groups counterexamples to small count bounds;
    the second's failure at small m is expected (the guarantee is asymptotic).
    """
    from .actions import family

    rows = []
    for m in m_values:
        grp = family("wreath-cyclic", (str(m),), budgets)
        n = 2 * m
        order = (2 ** m) * m  # known for this family, avoids materializing it
        param = f"wreath-cyclic:{m}"
        try:
            value = clifford_count(grp, k, budgets).value
        except BudgetExceeded:
            for tag, bound in ((f"{param}|5^m/m", Fraction(5 ** m, m)),
                               (f"{param}|k^n", k ** n)):
                rows.append(ScanRow(tag, k, n, order, None,
                                    _fraction_text(bound), "skipped", "exact"))
            continue
        assert value >= -(-k ** n // order)  # ceil lower bound
        five = Fraction(5 ** m, m)
        rows.append(ScanRow(f"{param}|5^m/m", k, n, grp.order, value,
                            _fraction_text(five), value >= five, "exact"))
        rows.append(ScanRow(f"{param}|k^n", k, n, grp.order, value,
                            str(k ** n), value > k ** n, "exact"))
    return rows


def _fraction_text(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


def fixed_subset_fraction_probe(m_values: Sequence[int],
                                budgets: Budgets = DEFAULT) -> list[tuple[int, tuple | None]]:
    """Search for counterexamples to: sigma(pi) <= 3m/4 implies fix on
    ell-subsets < (3/4)C(m,ell) for all 1 <= ell < m/2.

    The claim is only guaranteed for large m, so this probes rather than
    asserts. Exhaustive over cycle types (both sides depend only on the
    type). Returns (m, witness) pairs with witness = (parts, ell) for the
    first counterexample found, or None when the instance is clean.
    """
    results = []
    for m in m_values:
        witness = None
        for part in combinatorics.partition_enum(m):
            if 4 * part.num_parts > 3 * m:
                continue
            ct = part.multiplicities()
            for ell in range(1, (m + 1) // 2):
                if 2 * ell >= m:
                    break
                fix = combinatorics.fix_subsets_formula(ct, ell, budgets)
                if 4 * fix >= 3 * math.comb(m, ell):
                    witness = (part.parts, ell)
                    break
            if witness:
                break
        results.append((m, witness))
    return results
