"""The cyclic HeLP solver: partial-augmentation constraints for a torsion
unit of given order against a host character table.

For a unit u of order n the engine works up the divisor lattice: the
partial-augmentation vectors of u^d (order n/d) are solved first, and each
chain of lower-level solutions induces a constraint system for the top
level.  Constraints per character row chi are the eigenvalue multiplicities

    mu_l(u, chi) = (1/n) sum_(d|n) Tr_(Q(zeta_(n/d))/Q)( chi(u^d) zeta_(n/d)^(-l) )

which must be integers in [0, chi(1)], plus the congruences of
Cohn-Livingstone type in their two standard shapes (sum of the top-order
augmentations is 1 mod p, lower-order ones are 0 mod p), plus the vanishing
rules (class order must divide n; central classes carry 0 unless the unit
is that central element, which is enumerated as its own candidate).

Integer enumeration is bounded through an exact LP relaxation and refuses
unbounded systems rather than truncating.  With the symbolic odd parameter
m, every candidate is labelled with the exact set of odd m for which it
satisfies all constraints (an OddMSet); a solution "holds" when that set is
all odd m, and certificates of emptiness are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .chartab import CharacterRow, CharacterTable
from .exactnum import (
    Cyclotomic,
    E,
    OddAffine,
    OddMSet,
    as_odd_affine,
    divisors,
    rational_trace,
)
from .intsolve import Constraint, UnboundedSystem, enumerate_integer_points

Value = Union[Cyclotomic, OddAffine]


class HelpRefusal(RuntimeError):
    """The system cannot be solved soundly (unbounded or m-inhomogeneous)."""


@dataclass(frozen=True)
class EpsVector:
    """Integer partial augmentations indexed by class name, summing to 1."""

    entries: tuple[tuple[str, int], ...]

    @staticmethod
    def of(mapping: dict[str, int]) -> "EpsVector":
        entries = tuple(sorted((k, v) for k, v in mapping.items() if v))
        total = sum(v for _, v in entries)
        if total != 1:
            raise ValueError(f"partial augmentations sum to {total}, not 1")
        return EpsVector(entries)

    @staticmethod
    def indicator(class_name: str) -> "EpsVector":
        return EpsVector(((class_name, 1),))

    def get(self, name: str) -> int:
        for k, v in self.entries:
            if k == name:
                return v
        return 0

    def support(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.entries)

    def is_indicator(self) -> bool:
        return len(self.entries) == 1 and self.entries[0][1] == 1

    def as_dict(self) -> dict[str, int]:
        return dict(self.entries)

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self.entries)
        return f"EpsVector({{{inner}}})"


@dataclass(frozen=True)
class HelpProblem:
    """A unit order, a host table and the solver options."""

    order: int
    table: CharacterTable
    m: Optional[int] = None  # None: symbolic odd m; otherwise a concrete odd value
    use_multiplicities: bool = True
    use_congruences: bool = True

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("unit order must be positive")
        if self.m is not None and (self.m < 1 or self.m % 2 == 0):
            raise ValueError("concrete m must be an odd positive integer")


@dataclass(frozen=True)
class ChainSolution:
    """Partial augmentations of u^d for every divisor order d | order."""

    order: int
    eps: tuple[tuple[int, EpsVector], ...]  # (divisor order, vector), ascending
    mset: OddMSet

    def at_order(self, o: int) -> EpsVector:
        for k, v in self.eps:
            if k == o:
                return v
        raise KeyError(o)

    def top(self) -> EpsVector:
        return self.at_order(self.order)

    def as_dict(self) -> dict[int, EpsVector]:
        return dict(self.eps)

    def holds_for_all_m(self) -> bool:
        return self.mset.is_all_odd()


@dataclass
class SolutionSet:
    problem: HelpProblem
    by_order: dict[int, list[ChainSolution]] = field(default_factory=dict)

    def top_level(self) -> list[ChainSolution]:
        return self.by_order.get(self.problem.order, [])

    def top_vectors(self) -> list[EpsVector]:
        seen = []
        for chain in self.top_level():
            vec = chain.top()
            if vec not in seen:
                seen.append(vec)
        return seen


def is_trivial_chain(chain: ChainSolution) -> bool:
    """True iff every level is the 0/1 indicator of a single class: the
    certificate of rational conjugacy to a group element."""
    return all(vec.is_indicator() for _, vec in chain.eps)


# ---------------------------------------------------------------------------
# vanishing rules


def forced_zero_classes(n: int, table: CharacterTable) -> set[str]:
    """Classes that cannot carry partial augmentation for a unit of order n
    (with the unit not equal to a central class element): class order not
    dividing n, plus all size-1 classes."""
    out = set()
    identity = table.classes[table.identity_index()].name
    for cls in table.classes:
        if n % cls.rep_order != 0:
            out.add(cls.name)
        elif cls.size == 1 and (cls.name != identity or n > 1):
            out.add(cls.name)
    if n == 1:
        out = {c.name for c in table.classes if c.name != identity}
    return out


# ---------------------------------------------------------------------------
# multiplicity constraints


def _root_trace(k: int, e: int) -> Fraction:
    """Tr_(Q(zeta_k)/Q)(zeta_k^e) by the Moebius closed form."""
    from math import gcd

    from .exactnum import euler_phi, moebius

    d = k // gcd(e % k if k > 1 else 0, k) if k > 1 else 1
    if k == 1:
        return Fraction(1)
    return Fraction(moebius(d) * (euler_phi(k) // euler_phi(d)))


def _trace_part(value: Value, k: int, l: int) -> OddAffine:
    """Tr_(Q(zeta_k)/Q)(value * zeta_k^(-l)) as an OddAffine; note the trace
    is over Q(zeta_k), scaled by the field index when the product happens to
    lie in a smaller cyclotomic field."""
    from .exactnum import euler_phi

    e = (-l) % k if k > 1 else 0
    if isinstance(value, OddAffine):
        return value * _root_trace(k, e)
    w = value * E(k, e)
    scale = euler_phi(k) // euler_phi(w.conductor)
    return as_odd_affine(rational_trace(w) * scale)


def lp_multiplicity(chi_on_powers: dict[int, Value], n: int, l: int) -> OddAffine:
    """The eigenvalue multiplicity mu_l for known values chi(u^d), d | n:
    grouping the full discrete Fourier sum (1/n) sum_t chi(u^t) zeta_n^(-lt)
    by gcd(t, n) = d turns each group into a rational trace over Q(zeta_(n/d))."""
    total = OddAffine(0, 0)
    for d in divisors(n):
        k = n // d
        total = total + _trace_part(chi_on_powers[d], k, l % k if k > 1 else 0)
    return total / n


def aggregated_value(table: CharacterTable, row: CharacterRow, eps: EpsVector):
    """chi(u) = sum over classes of eps_x chi(x), exact."""
    acc = None
    for name, coeff in eps.entries:
        v = row.values[table.class_index(name)]
        if v is None:
            raise ValueError(f"row {row.name} undefined on class {name}")
        term = v * coeff
        acc = term if acc is None else acc + term
    if acc is None:
        return Cyclotomic.zero()
    return acc


# ---------------------------------------------------------------------------
# congruences


@dataclass(frozen=True)
class Congruence:
    coeffs: tuple[tuple[str, int], ...]
    residue: int
    modulus: int

    def satisfied_by(self, eps: EpsVector) -> bool:
        total = sum(c * eps.get(name) for name, c in self.coeffs)
        return total % self.modulus == self.residue % self.modulus


def cl_congruences(n: int, table: CharacterTable) -> list[Congruence]:
    """The two congruence shapes used for prime-power orders n = p^k:
    the top-order partial augmentations sum to 1 mod p and each class of
    order a proper divisor > 1 carries 0 mod p.  For non-prime-power n the
    list is empty (a notice, not an error)."""
    from .exactnum import factorize

    fact = factorize(n)
    if len(fact) != 1:
        return []
    (p, _), = fact.items()
    out = []
    top = tuple((c.name, 1) for c in table.classes if c.rep_order == n)
    if top:
        out.append(Congruence(top, 1, p))
    for cls in table.classes:
        if 1 < cls.rep_order < n and n % cls.rep_order == 0:
            out.append(Congruence(((cls.name, 1),), 0, p))
    return out


# ---------------------------------------------------------------------------
# constraint assembly for one level


@dataclass
class _MuExpr:
    """mu_l as an affine expression over the active variables."""

    row: CharacterRow
    l: int
    const: OddAffine
    coeffs: list[OddAffine]  # per active variable
    degree: OddAffine

    def value_at(self, point: Sequence[int]) -> OddAffine:
        total = self.const
        for c, x in zip(self.coeffs, point):
            if x:
                total = total + c * x
        return total

    def mset_at(self, point: Sequence[int]) -> OddMSet:
        v = self.value_at(point)
        upper = self.degree - v
        return (
            OddMSet.integrality(v, 1)
            & OddMSet.nonneg(v)
            & OddMSet.nonneg(upper)
        )


def _usable_rows(table: CharacterTable, n: int, use_multiplicities: bool) -> list[CharacterRow]:
    if not use_multiplicities:
        return []
    out = []
    for row in table.rows:
        if not row.usable_for_order(n):
            continue
        if any(v is None for v in row.values):
            # rows undefined on some class are usable only if every class of
            # order dividing n is defined
            bad = False
            for cls, v in zip(table.classes, row.values):
                if v is None and n % cls.rep_order == 0:
                    bad = True
            if bad:
                continue
        out.append(row)
    return out


def _level_mu_exprs(
    table: CharacterTable,
    o: int,
    active: list[str],
    lower: dict[int, EpsVector],
    rows: list[CharacterRow],
) -> list[_MuExpr]:
    exprs = []
    for row in rows:
        # constant contribution of the proper power levels
        chi_lower = {}
        for d in divisors(o):
            if d == 1:
                continue
            chi_lower[d] = aggregated_value(table, row, lower[o // d])
        degree = as_odd_affine(table.degree(row))
        for l in range(o):
            const = OddAffine(0, 0)
            for d, value in chi_lower.items():
                k = o // d
                const = const + _trace_part(value, k, l % k if k > 1 else 0)
            coeffs = []
            for name in active:
                v = row.values[table.class_index(name)]
                coeffs.append(_trace_part(v, o, l) / o)
            exprs.append(_MuExpr(row, l, const / o, coeffs, degree))
    return exprs


def _reduce_inequality(expr: _MuExpr, m: Optional[int]):
    """Turn 0 <= mu <= degree into a rational two-sided constraint for the
    LP/enumeration box.  Symbolic mode requires the expression to be
    homogeneous in m (all constant or all slope), which holds whenever the
    host row is; otherwise the system is refused."""
    parts = [expr.const, expr.degree] + expr.coeffs
    if m is not None:
        vals = [p.eval_at(m) for p in parts]
        const, degree, coeffs = vals[0], vals[1], vals[2:]
        return Constraint.of(coeffs, lo=-const, hi=degree - const)
    if all(p.slope == 0 for p in parts):
        return Constraint.of([p.const for p in expr.coeffs],
                             lo=-expr.const.const, hi=(expr.degree - expr.const).const)
    if all(p.const == 0 for p in parts):
        # divide by m > 0: the inequality is m-free
        return Constraint.of([p.slope for p in expr.coeffs],
                             lo=-expr.const.slope, hi=(expr.degree - expr.const).slope)
    raise HelpRefusal(
        f"row {expr.row.name} mixes constant and m-linear values; "
        "symbolic bounds are not available, pass a concrete m"
    )


# ---------------------------------------------------------------------------
# the solver


def solve_eps(problem: HelpProblem) -> SolutionSet:
    """Exhaustive integer solution chains for all divisor orders of the unit
    order.  Raises HelpRefusal when no character rows bound the system."""
    table = problem.table
    n = problem.order
    result = SolutionSet(problem)
    base_mset = OddMSet.all_odd() if problem.m is None else OddMSet.singleton(problem.m)
    identity = table.classes[table.identity_index()].name
    result.by_order[1] = [
        ChainSolution(1, ((1, EpsVector.indicator(identity)),), base_mset)
    ]
    for o in sorted(divisors(n)):
        if o == 1:
            continue
        result.by_order[o] = _solve_level(problem, o, result)
    return result


def _merge_lower_chains(o: int, solved: SolutionSet) -> list[dict[int, EpsVector]]:
    """All consistent assignments of solutions to the proper divisor orders."""
    proper = [d for d in divisors(o) if d != o]
    maximal = [o // p for p in _prime_divisors(o)]
    merged: list[dict[int, EpsVector]] = [{}]
    for d in maximal:
        new = []
        for base in merged:
            for chain in solved.by_order[d]:
                cand = dict(base)
                ok = True
                for k, v in chain.eps:
                    if k in cand and cand[k] != v:
                        ok = False
                        break
                    cand[k] = v
                if ok:
                    new.append(cand)
        merged = new
    complete = [c for c in merged if all(d in c for d in proper)]
    # drop duplicates while keeping deterministic order
    seen = set()
    out = []
    for c in complete:
        key = tuple(sorted((k, v.entries) for k, v in c.items()))
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def _prime_divisors(n: int) -> list[int]:
    from .exactnum import factorize

    return sorted(factorize(n))


def _lower_mset(lower: dict[int, EpsVector], solved: SolutionSet, o: int) -> OddMSet:
    """The m-set already accumulated by the lower chain: the intersection of
    the msets of the maximal sub-chains matching this assignment."""
    mset = OddMSet.all_odd()
    for d in (o // p for p in _prime_divisors(o)):
        for chain in solved.by_order[d]:
            if all(chain.at_order(k) == lower[k] for k, _ in chain.eps):
                mset = mset & chain.mset
                break
    return mset


def _solve_level(problem: HelpProblem, o: int, solved: SolutionSet) -> list[ChainSolution]:
    table = problem.table
    rows = _usable_rows(table, o, problem.use_multiplicities)
    congruences = cl_congruences(o, table) if problem.use_congruences else []
    forced = forced_zero_classes(o, table)
    active = [c.name for c in table.classes
              if o % c.rep_order == 0 and c.name not in forced]
    centrals = [c for c in table.classes if c.size == 1 and c.rep_order == o]
    out: list[ChainSolution] = []
    for lower in _merge_lower_chains(o, solved):
        lower_mset = _lower_mset(lower, solved, o)
        if lower_mset.is_empty():
            continue
        exprs = _level_mu_exprs(table, o, active, lower, rows)

        def chain_for(vec: EpsVector) -> Optional[ChainSolution]:
            for cong in congruences:
                if not cong.satisfied_by(vec):
                    return None
            mset = lower_mset
            for row in rows:
                values = {
                    d: aggregated_value(table, row, vec if d == 1 else lower[o // d])
                    for d in divisors(o)
                }
                degree = as_odd_affine(table.degree(row))
                for l in range(o):
                    mu = lp_multiplicity(values, o, l)
                    mset = (
                        mset
                        & OddMSet.integrality(mu, 1)
                        & OddMSet.nonneg(mu)
                        & OddMSet.nonneg(degree - mu)
                    )
                    if mset.is_empty():
                        return None
            eps_map = dict(lower)
            eps_map[o] = vec
            return ChainSolution(o, tuple(sorted(eps_map.items())), mset)

        # candidates where the unit is a central group element
        for cls in centrals:
            expected = True
            for d in divisors(o):
                if d == 1 or d == o:
                    continue
                target = table.power_class_any(cls.name, d)
                if lower[o // d] != EpsVector.indicator(target):
                    expected = False
            if o > 1:
                d = o
                target = table.power_class_any(cls.name, o)
                if lower[1] != EpsVector.indicator(target):
                    expected = False
            if expected:
                chain = chain_for(EpsVector.indicator(cls.name))
                if chain is not None:
                    out.append(chain)
        # the main branch: centrals forced to zero
        if active:
            if not rows:
                raise HelpRefusal(
                    f"no usable character rows bound the order-{o} system"
                )
            constraints = [Constraint.of([1] * len(active), lo=1, hi=1)]
            for expr in exprs:
                constraints.append(_reduce_inequality(expr, problem.m))
            try:
                points = list(enumerate_integer_points(constraints, len(active)))
            except UnboundedSystem as err:
                raise HelpRefusal(
                    f"order-{o} system is unbounded ({err}); "
                    "add character rows or disable the order"
                ) from None
            for point in points:
                vec = EpsVector.of(dict(zip(active, point)))
                chain = chain_for(vec)
                if chain is not None:
                    out.append(chain)
    out.sort(key=lambda ch: tuple(v.entries for _, v in ch.eps))
    return out


def check_chain(problem: HelpProblem, eps_by_order: dict[int, EpsVector]) -> OddMSet:
    """The exact set of odd m for which a full divisor chain satisfies every
    constraint (used to certify genuine group elements without enumeration)."""
    table = problem.table
    n = problem.order
    mset = OddMSet.all_odd() if problem.m is None else OddMSet.singleton(problem.m)
    for o in sorted(divisors(n)):
        if o == 1:
            continue
        vec = eps_by_order[o]
        rows = _usable_rows(table, o, problem.use_multiplicities)
        for row in rows:
            values = {d: aggregated_value(table, row, eps_by_order[o // d]) for d in divisors(o)}
            degree = as_odd_affine(table.degree(row))
            for l in range(o):
                mu = lp_multiplicity(values, o, l)
                mset = mset & OddMSet.integrality(mu, 1) & OddMSet.nonneg(mu) & OddMSet.nonneg(degree - mu)
                if mset.is_empty():
                    return mset
        if problem.use_congruences:
            for cong in cl_congruences(o, table):
                if not cong.satisfied_by(vec):
                    return OddMSet.empty()
    return mset
