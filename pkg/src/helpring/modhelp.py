"""Subgroup admissibility by scalar products: can a finite group U embed in
the normalized units compatibly with a host character table?

A candidate is an assignment of one solved partial-augmentation chain per
conjugacy class of U (conjugate units share partial augmentations, so classes
are the right granularity).  Assignments must respect the power maps of U,
Berman-Higman centrality (a size-1 host class can absorb at most one
singleton U-class), and value-level inverse symmetry (the aggregated value at
the class of u^-1 is the conjugate of the value at u).

Every surviving assignment is then filtered through the scalar-product test:
for each aggregated host row and every ordinary irreducible character psi of
U the number

    (1/|U|) sum_(u in U) chi(u) psi(u^-1)

must be a non-negative integer, and must additionally be even when the host
row is afforded by a real representation while psi has Frobenius-Schur
indicator -1.  With the symbolic odd parameter m, each filter cuts the exact
set of odd m for which it can hold; a certificate of infeasibility therefore
covers every odd m at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .chartab import CharacterRow, CharacterTable, dixon_table, fs_indicator
from .exactnum import (
    Cyclotomic,
    OddAffine,
    OddMSet,
    as_odd_affine,
    divisors,
)
from .grpcore import FiniteGroup, GroupSpec, group_build
from .help_engine import (
    ChainSolution,
    EpsVector,
    HelpProblem,
    aggregated_value,
    check_chain,
    solve_eps,
)

Value = Union[Cyclotomic, OddAffine]


# ---------------------------------------------------------------------------
# values of the form A + B*m with cyclotomic parts


@dataclass(frozen=True)
class MValue:
    """const + slope * m with exact cyclotomic const and slope."""

    const: Cyclotomic
    slope: Cyclotomic

    @staticmethod
    def of(v) -> "MValue":
        if isinstance(v, MValue):
            return v
        if isinstance(v, OddAffine):
            return MValue(Cyclotomic.from_rational(v.const), Cyclotomic.from_rational(v.slope))
        if isinstance(v, Cyclotomic):
            return MValue(v, Cyclotomic.zero())
        return MValue(Cyclotomic.from_rational(Fraction(v)), Cyclotomic.zero())

    def __add__(self, other):
        other = MValue.of(other)
        return MValue(self.const + other.const, self.slope + other.slope)

    def __mul__(self, other):
        other = MValue.of(other)
        if not self.slope.is_zero() and not other.slope.is_zero():
            raise TypeError("the odd parameter must stay linear")
        return MValue(
            self.const * other.const,
            self.const * other.slope + self.slope * other.const,
        )

    def scaled(self, c: Fraction) -> "MValue":
        return MValue(self.const * c, self.slope * c)

    def as_odd_affine(self) -> Optional[OddAffine]:
        cr, sr = self.const.as_rational(), self.slope.as_rational()
        if cr is None or sr is None:
            return None
        return OddAffine(cr, sr)

    def literal(self) -> str:
        aff = self.as_odd_affine()
        if aff is not None:
            return aff.literal()
        return f"({self.const.literal()}) + ({self.slope.literal()})*m"


def _zero_mset(diff: OddAffine) -> OddMSet:
    """Odd m with diff(m) = 0."""
    if diff.slope == 0:
        return OddMSet.all_odd() if diff.const == 0 else OddMSet.empty()
    m_star = -diff.const / diff.slope
    if m_star.denominator == 1 and m_star > 0 and m_star % 2 == 1:
        return OddMSet.singleton(int(m_star))
    return OddMSet.empty()


def nonneg_integer_mset(value: MValue, denom: int) -> OddMSet:
    """Odd m for which value(m)/denom is a non-negative integer."""
    aff = value.as_odd_affine()
    if aff is not None:
        return OddMSet.nonneg_integer(aff, denom)
    # irrational parts must cancel exactly: compare coordinates beyond 1
    n = 1
    for part in (value.const, value.slope):
        n = n * part.conductor // _gcd(n, part.conductor)
    coords_c = value.const._dense_at(n)
    coords_s = value.slope._dense_at(n)
    mset = OddMSet.all_odd()
    for e in range(1, len(coords_c)):
        a, b = coords_c[e], coords_s[e]
        if a == 0 and b == 0:
            continue
        mset = mset & _zero_mset(OddAffine(a, b))
        if mset.is_empty():
            return mset
    rational = OddAffine(coords_c[0], coords_s[0])
    return mset & OddMSet.nonneg_integer(rational, denom)


def even_mset(value: MValue, denom: int) -> OddMSet:
    """Odd m for which value(m)/denom is an even integer."""
    aff = value.as_odd_affine()
    if aff is not None:
        return OddMSet.integrality(aff, 2 * denom)
    # irrational parts pin m to at most one value, where the value equals its
    # rational part; evenness is then a congruence on that part
    base = nonneg_integer_mset(value, denom)
    rational = OddAffine(value.const.rational_part(), value.slope.rational_part())
    return base & OddMSet.integrality(rational, 2 * denom)


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


# ---------------------------------------------------------------------------
# target groups and assignments


@dataclass
class TargetGroup:
    """A candidate subgroup: realised group, its ordinary table, class data."""

    group: FiniteGroup
    table: CharacterTable
    spec: Optional[GroupSpec] = None

    @staticmethod
    def of(spec: GroupSpec) -> "TargetGroup":
        G = group_build(spec)
        return TargetGroup(G, dixon_table(G), spec)

    def class_names(self) -> list[str]:
        return self.table.class_names()

    def class_order(self, name: str) -> int:
        return self.table.classes[self.table.class_index(name)].rep_order

    def class_size(self, name: str) -> int:
        return self.table.classes[self.table.class_index(name)].size

    def inverse_class(self, name: str) -> str:
        o = self.class_order(name)
        return self.table.power_class_any(name, o - 1) if o > 1 else name

    def power_class(self, name: str, k: int) -> str:
        return self.table.power_class_any(name, k)

    def element_orders(self) -> set[int]:
        return {c.rep_order for c in self.table.classes}


@dataclass(frozen=True)
class Assignment:
    """Chains per U-class, with the intersected admissible m set."""

    by_class: tuple[tuple[str, ChainSolution], ...]
    mset: OddMSet

    def chain(self, name: str) -> ChainSolution:
        for k, v in self.by_class:
            if k == name:
                return v
        raise KeyError(name)

    def eps_of(self, name: str) -> EpsVector:
        return self.chain(name).top()

    def describe(self) -> dict[str, dict[str, int]]:
        return {k: v.top().as_dict() for k, v in self.by_class}


@dataclass(frozen=True)
class InfeasibilityWitness:
    host_row: str
    target_row: Optional[str]
    value: str  # literal of the offending scalar product (times 1/denominator)
    denominator: int
    reason: str
    branch: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] = ()


@dataclass
class Certificate:
    feasible: bool
    assignments: list[Assignment] = field(default_factory=list)
    witnesses: list[InfeasibilityWitness] = field(default_factory=list)

    def first_witness(self) -> Optional[InfeasibilityWitness]:
        return self.witnesses[0] if self.witnesses else None


# ---------------------------------------------------------------------------
# the scalar-product machinery


def aggregated_row(
    host: CharacterTable,
    row: CharacterRow,
    assignment: dict[str, ChainSolution],
) -> dict[str, MValue]:
    """chi-hat: the aggregated host value on every U-class."""
    out = {}
    for name, chain in assignment.items():
        out[name] = MValue.of(aggregated_value(host, row, chain.top()))
    return out


def subgroup_multiplicity(
    target: TargetGroup,
    chi_hat: dict[str, MValue],
    psi: CharacterRow,
) -> MValue:
    """(1/|U|) sum over u in U of chi_hat(u) psi(u^-1), exact."""
    total = MValue.of(0)
    for cls in target.table.classes:
        inv_name = target.inverse_class(cls.name)
        psi_val = psi.values[target.table.class_index(inv_name)]
        total = total + (chi_hat[cls.name] * MValue.of(psi_val)).scaled(Fraction(cls.size))
    return total.scaled(Fraction(1, target.group.order))


def parity_required(host_row: CharacterRow, target: TargetGroup, psi: CharacterRow) -> bool:
    """The evenness constraint applies when the host row is real-afforded and
    psi is not (Frobenius-Schur indicator -1)."""
    return host_row.real and fs_indicator(target.table, psi) == -1


# ---------------------------------------------------------------------------
# search


def solve_per_order(
    host: CharacterTable,
    orders: set[int],
    m: Optional[int] = None,
    use_congruences: bool = True,
) -> dict[int, list[ChainSolution]]:
    """Chains for every element order a target subgroup will need."""
    out = {}
    for o in sorted(orders):
        out[o] = solve_eps(
            HelpProblem(o, host, m=m, use_congruences=use_congruences)
        ).top_level()
    return out


def _subchain(chain: ChainSolution, order: int) -> ChainSolution:
    eps = tuple((k, v) for k, v in chain.eps if order % k == 0)
    return ChainSolution(order, eps, chain.mset)


def search_assignments(
    target: TargetGroup,
    host: CharacterTable,
    per_order: dict[int, list[ChainSolution]],
    m: Optional[int] = None,
) -> Certificate:
    """Exhaustive branch over class-chain assignments with all filters.

    Returns every surviving assignment, or per-branch first-fail witnesses
    when none survives.  An infeasible certificate in symbolic mode covers
    every odd m.
    """
    n = target.group.order
    for row in host.rows:
        if not row.usable_for_order(n):
            raise ValueError(
                f"host row {row.name} has modular characteristic dividing |U| = {n}"
            )
    for o in sorted(target.element_orders()):
        if o not in per_order:
            raise LookupError(f"missing per-order solutions for element order {o}")
    table = target.table
    classes = sorted(
        table.classes, key=lambda c: (-c.rep_order, c.name)
    )  # high orders first: their subchains force the power classes
    identity = table.classes[table.identity_index()].name
    host_identity = host.classes[host.identity_index()].name
    base_mset = OddMSet.all_odd() if m is None else OddMSet.singleton(m)
    host_centrals = set(host.central_class_names()) - {host_identity}

    unit_chain = ChainSolution(
        1, ((1, EpsVector.indicator(host_identity)),), OddMSet.all_odd()
    )
    certificate = Certificate(feasible=False)

    def branch_key(assign: dict[str, ChainSolution]):
        return tuple(sorted((k, v.top().entries) for k, v in assign.items()))

    def value_filters(assign: dict[str, ChainSolution], mset: OddMSet):
        # Berman-Higman at the leaf: each nonidentity size-1 host class may be
        # hit by at most one U-class, and only by a singleton one
        for h in host_centrals:
            hits = [name for name, chain in assign.items() if chain.top().get(h)]
            if len(hits) > 1 or any(
                table.classes[table.class_index(name)].size != 1 for name in hits
            ):
                return None, InfeasibilityWitness(
                    "<centrality>", None,
                    f"host class {h} absorbed by {sorted(hits)}",
                    target.group.order, "central-collision", branch_key(assign))
        for row in host.rows:
            chi_hat = aggregated_row(host, row, assign)
            # inverse symmetry: chi(u^-1) = conjugate of chi(u)
            for cls in table.classes:
                inv_name = target.inverse_class(cls.name)
                expected = _conjugate_aggregate(host, row, assign[cls.name].top())
                diff_mset = _values_equal_mset(chi_hat[inv_name], expected)
                mset = mset & diff_mset
                if mset.is_empty():
                    return None, InfeasibilityWitness(
                        row.name, None,
                        f"value at {inv_name} differs from the conjugate at {cls.name}",
                        target.group.order, "inverse-symmetry", branch_key(assign))
            for psi in table.rows:
                value = subgroup_multiplicity(target, chi_hat, psi)
                cond = nonneg_integer_mset(value, 1)
                new = mset & cond
                if new.is_empty():
                    return None, InfeasibilityWitness(
                        row.name, psi.name, value.literal(),
                        target.group.order, "non-negative-integer", branch_key(assign))
                mset = new
                if parity_required(row, target, psi):
                    new = mset & even_mset(value, 1)
                    if new.is_empty():
                        return None, InfeasibilityWitness(
                            row.name, psi.name, value.literal(),
                            target.group.order, "parity", branch_key(assign))
                    mset = new
        return mset, None

    def dfs(pos: int, assign: dict[str, ChainSolution], mset: OddMSet):
        if pos == len(classes):
            final, witness = value_filters(assign, mset)
            if witness is not None:
                certificate.witnesses.append(witness)
                return
            certificate.feasible = True
            certificate.assignments.append(
                Assignment(tuple(sorted(assign.items())), final)
            )
            return
        cls = classes[pos]
        if cls.name in assign:
            dfs(pos + 1, assign, mset)
            return
        if cls.name == identity:
            assign[cls.name] = unit_chain
            dfs(pos + 1, assign, mset)
            del assign[cls.name]
            return
        o = cls.rep_order
        for chain in per_order[o]:
            new_mset = mset & chain.mset
            if new_mset.is_empty():
                continue
            # Berman-Higman: a central host class absorbs at most one
            # singleton class of U
            top = chain.top()
            central_hits = [h for h in host_centrals if top.get(h)]
            if central_hits:
                if cls.size != 1:
                    continue
                collision = False
                for other, other_chain in assign.items():
                    if other == cls.name:
                        continue
                    if any(other_chain.top().get(h) for h in central_hits):
                        collision = True
                if collision:
                    continue
            # force the chains of the power classes
            forced: dict[str, ChainSolution] = {cls.name: chain}
            ok = True
            for d in divisors(o):
                if d in (1, o):
                    continue
                pow_name = target.power_class(cls.name, d)
                sub = _subchain(chain, o // d)
                if pow_name in assign:
                    if assign[pow_name].eps != sub.eps:
                        ok = False
                        break
                elif pow_name in forced:
                    if forced[pow_name].eps != sub.eps:
                        ok = False
                        break
                else:
                    forced[pow_name] = sub
            if not ok:
                continue
            for k, v in forced.items():
                assign[k] = v
            dfs(pos + 1, assign, new_mset)
            for k in forced:
                del assign[k]

    dfs(0, {}, base_mset)
    certificate.assignments.sort(key=lambda a: tuple(
        (k, v.top().entries) for k, v in a.by_class))
    if certificate.feasible:
        certificate.witnesses.clear()
    return certificate


def _conjugate_aggregate(host: CharacterTable, row: CharacterRow, eps: EpsVector) -> MValue:
    """sum of eps_x * chi(x^-1): the value the class of u^-1 must take."""
    total = MValue.of(0)
    for name, coeff in eps.entries:
        inv_name = host.power_class_any(
            name, host.classes[host.class_index(name)].rep_order - 1
        ) if host.classes[host.class_index(name)].rep_order > 1 else name
        v = row.values[host.class_index(inv_name)]
        total = total + MValue.of(v).scaled(Fraction(coeff))
    return total


def _values_equal_mset(a: MValue, b: MValue) -> OddMSet:
    diff = MValue(a.const - b.const, a.slope - b.slope)
    aff = diff.as_odd_affine()
    if aff is not None:
        return _zero_mset(aff)
    # cyclotomic difference: require exact cancellation coordinatewise
    mset = OddMSet.all_odd()
    n = 1
    for part in (diff.const, diff.slope):
        n = n * part.conductor // _gcd(n, part.conductor)
    cc = diff.const._dense_at(n)
    ss = diff.slope._dense_at(n)
    for e in range(len(cc)):
        mset = mset & _zero_mset(OddAffine(cc[e], ss[e]))
        if mset.is_empty():
            break
    return mset


# ---------------------------------------------------------------------------
# convenience wrappers


def subgroup_certificate(
    host: CharacterTable,
    target_spec: GroupSpec,
    m: Optional[int] = None,
    use_congruences: bool = True,
) -> Certificate:
    """Solve the cyclic levels and run the full subgroup search."""
    target = TargetGroup.of(target_spec)
    per_order = solve_per_order(host, target.element_orders(), m, use_congruences)
    return search_assignments(target, host, per_order, m)


def genuine_assignment(
    target: TargetGroup,
    host_group: FiniteGroup,
    host_table: CharacterTable,
    element_map: Sequence[int],
) -> dict[str, ChainSolution]:
    """The assignment induced by an honest embedding of the target group into
    a host group: indicator chains of the image elements."""
    part = host_group.conjugacy()
    tpart = target.group.conjugacy()
    out: dict[str, ChainSolution] = {}
    for i, cls in enumerate(tpart.classes):
        u = cls.rep
        g = element_map[u]
        o = target.group.element_order(u)
        eps = []
        for d in divisors(o):
            image = host_group.power(g, o // d)
            name = part.classes[part.class_of[image]].name
            eps.append((d, EpsVector.indicator(name)))
        out[target.table.classes[i].name] = ChainSolution(
            o, tuple(eps), OddMSet.all_odd()
        )
    return out


def verify_assignment(
    target: TargetGroup,
    host: CharacterTable,
    assignment: dict[str, ChainSolution],
    m: Optional[int] = None,
) -> Certificate:
    """Run every filter on a single prescribed assignment (no search); used
    to confirm that genuine subgroups are never excluded."""
    problem_mset = OddMSet.all_odd() if m is None else OddMSet.singleton(m)
    mset = problem_mset
    for name, chain in assignment.items():
        chain_mset = check_chain(
            HelpProblem(chain.order, host, m=m),
            {d: v for d, v in chain.eps},
        )
        mset = mset & chain_mset
        if mset.is_empty():
            return Certificate(False, witnesses=[InfeasibilityWitness(
                "<chain>", None, f"chain of class {name} fails the cyclic constraints",
                target.group.order, "cyclic-level")])
    for row in host.rows:
        chi_hat = aggregated_row(host, row, assignment)
        for psi in target.table.rows:
            value = subgroup_multiplicity(target, chi_hat, psi)
            mset = mset & nonneg_integer_mset(value, 1)
            if parity_required(row, target, psi):
                mset = mset & even_mset(value, 1)
            if mset.is_empty():
                return Certificate(False, witnesses=[InfeasibilityWitness(
                    row.name, psi.name, value.literal(), target.group.order,
                    "non-negative-integer")])
    return Certificate(True, assignments=[Assignment(tuple(sorted(assignment.items())), mset)])
