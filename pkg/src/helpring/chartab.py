"""Character tables: data model, exact computation for small groups, and the
line-oriented ``.ctab`` text format.

Tables either come out of :func:`dixon_table` (complete ordinary tables of
realised groups, exact cyclotomic values) or out of ``.ctab`` files (host
tables whose entries may carry the odd parameter m, sizes and order possibly
unknown).  Rows can be flagged as Brauer rows; the marker ``odd`` stands for
an unspecified odd characteristic, usable against units of 2-power order.

The table computation follows Burnside/Dixon: the class-sum matrices are
split into common eigenspaces over a prime field F_p with p = 1 mod exp(G)
and p larger than twice any character degree, and the eigenvalue
multiplicities are then transported back to exact roots of unity.  Those
multiplicities are integers below p, so the lift is unambiguous; row norms
and the degree sum are re-verified exactly on every computed table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .exactnum import (
    Cyclotomic,
    E,
    OddAffine,
    cyclo_make,
    cyclo_sum,
    factorize,
    is_prime,
    parse_value,
    value_literal,
)
from .grpcore import ConjClassPartition, FiniteGroup, ResourceLimitError

Value = Union[Cyclotomic, OddAffine]


class TableError(ValueError):
    """Malformed table data (syntax or semantic)."""


@dataclass(frozen=True)
class ClassData:
    name: str
    rep_order: int
    size: Union[int, OddAffine, None]  # None: unknown
    power_map: tuple[tuple[int, str], ...] = ()  # (prime, class name)

    def power_target(self, p: int) -> Optional[str]:
        for prime, target in self.power_map:
            if prime == p:
                return target
        return None


@dataclass(frozen=True)
class CharacterRow:
    name: str
    values: tuple  # one Value (or None: undefined) per class
    brauer_p: Union[int, str, None] = None  # None: ordinary; int p; "odd"
    real: bool = False

    @property
    def ordinary(self) -> bool:
        return self.brauer_p is None

    def usable_for_order(self, n: int) -> bool:
        """Brauer rows require the unit order to be coprime to p; the marker
        "odd" admits exactly the 2-power orders."""
        if self.brauer_p is None:
            return True
        if self.brauer_p == "odd":
            return n & (n - 1) == 0
        return math.gcd(self.brauer_p, n) == 1


@dataclass(frozen=True)
class CharacterTable:
    name: str
    order: Union[int, OddAffine, None]
    classes: tuple[ClassData, ...]
    rows: tuple[CharacterRow, ...]

    # -- lookups -------------------------------------------------------------

    def class_names(self) -> list[str]:
        return [c.name for c in self.classes]

    def class_index(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name == name:
                return i
        raise KeyError(f"no class named {name!r}")

    def identity_index(self) -> int:
        for i, c in enumerate(self.classes):
            if c.rep_order == 1:
                return i
        raise TableError("table has no identity class")

    def value(self, row: CharacterRow, class_name: str):
        return row.values[self.class_index(class_name)]

    def degree(self, row: CharacterRow):
        return row.values[self.identity_index()]

    def row_by_name(self, name: str) -> CharacterRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(f"no character named {name!r}")

    def central_class_names(self) -> list[str]:
        return [c.name for c in self.classes if c.size == 1]

    def power_class(self, name: str, p: int) -> str:
        target = self.classes[self.class_index(name)].power_target(p)
        if target is None:
            raise TableError(f"class {name} carries no power map for {p}")
        return target

    def power_class_any(self, name: str, k: int) -> str:
        """Class of rep^k, derived from the prime power maps."""
        cls = self.classes[self.class_index(name)]
        k %= cls.rep_order
        if k == 0:
            return self.classes[self.identity_index()].name
        current = name
        for prime, mult in factorize(k).items():
            for _ in range(mult):
                current = self.power_class(current, prime)
        return current

    def is_complete_ordinary(self) -> bool:
        return (
            isinstance(self.order, int)
            and all(isinstance(c.size, int) for c in self.classes)
            and all(r.ordinary for r in self.rows)
            and len(self.rows) == len(self.classes)
        )

    def validate(self) -> None:
        if not self.classes:
            raise TableError("table needs at least one class")
        names = self.class_names()
        if len(set(names)) != len(names):
            raise TableError("duplicate class names")
        self.identity_index()
        if isinstance(self.order, int) and all(isinstance(c.size, int) for c in self.classes):
            total = sum(c.size for c in self.classes)
            if total != self.order:
                raise TableError(
                    f"class sizes sum to {total}, group order is {self.order}"
                )
        for c in self.classes:
            for p, target in c.power_map:
                if target not in names:
                    raise TableError(f"power map of {c.name} hits unknown class {target}")
                expected = c.rep_order // math.gcd(c.rep_order, p)
                actual = self.classes[self.class_index(target)].rep_order
                if actual != expected:
                    raise TableError(
                        f"power map {c.name} -> {target} violates element orders"
                    )
        for r in self.rows:
            if len(r.values) != len(self.classes):
                raise TableError(f"row {r.name} has {len(r.values)} values for {len(self.classes)} classes")


# ---------------------------------------------------------------------------
# ordinary table computation


_DIXON_CAP = 10**4


def dixon_table(G: FiniteGroup, force: bool = False) -> CharacterTable:
    """Complete ordinary character table of a realised group, exact values.

    Groups above 10^4 elements are refused unless force=True.  Rows are
    sorted by degree, then by a deterministic value ordering.
    """
    if G.order > _DIXON_CAP and not force:
        raise ResourceLimitError(f"group of order {G.order} needs force=True")
    part = G.conjugacy()
    if G.is_abelian():
        rows = _abelian_rows(G, part)
    else:
        rows = _dixon_rows(G, part)
    rows.sort(key=_row_sort_key)
    named = tuple(
        CharacterRow(f"X{i+1}", values, None, _is_real_row(values))
        for i, values in enumerate(rows)
    )
    exponent = G.exponent()
    primes = sorted(set(factorize(exponent)) | {2})
    classes = tuple(
        ClassData(
            c.name,
            c.rep_order,
            c.size,
            tuple((p, part.classes[part.power_class(i, p)].name) for p in primes),
        )
        for i, c in enumerate(part.classes)
    )
    table = CharacterTable(G.name, G.order, classes, named)
    table.validate()
    _verify_row_norms(table)
    return table


def _is_real_row(values) -> bool:
    return all(v.conjugate() == v for v in values)


def _row_sort_key(values):
    deg = values[0].as_rational()
    return (deg, tuple(_value_key(v) for v in values))


def _value_key(v):
    if v is None:
        return (-1,)
    if isinstance(v, OddAffine):
        return (0, v.const.numerator, v.const.denominator, v.slope.numerator, v.slope.denominator)
    return (v.conductor, tuple((e, c.numerator, c.denominator) for e, c in v.terms))


def _abelian_rows(G: FiniteGroup, part: ConjClassPartition) -> list[tuple]:
    """Characters of an abelian group by extending along a generating chain.

    Characters are tracked as exponent maps x -> a with chi(x) = zeta_e^a;
    each new generator g of relative order L extends a character in exactly
    L ways, the solutions b of L*b = a_(g^L) mod e.
    """
    e = G.exponent()
    subgroup = [0]
    position = {0: 0}
    chars: list[list[int]] = [[0]]
    gens = list(G.generators) if G.generators else list(range(G.order))
    for g in gens:
        if g in position:
            continue
        power, L = g, 1
        while power not in position:
            power = G.mul(power, g)
            L += 1
        old = list(subgroup)
        new_chars = []
        for chi in chars:
            a = chi[position[power]]  # exponent at g^L, known in the old layer
            assert a % L == 0
            for t in range(L):
                b = a // L + t * (e // L)  # L*b = a mod e
                extended = list(chi)
                for s in range(1, L):
                    for h in old:
                        extended.append((chi[position[h]] + s * b) % e)
                new_chars.append(extended)
        for s in range(1, L):
            gs = G.power(g, s)
            for h in old:
                x = G.mul(h, gs)
                position[x] = len(subgroup)
                subgroup.append(x)
        chars = new_chars
    assert len(chars) == G.order
    rows = []
    for chi in chars:
        values = tuple(E(e, chi[position[c.rep]]) for c in part.classes)
        rows.append(values)
    return rows


def _smallest_dixon_prime(e: int, order: int) -> int:
    p = e + 1
    while True:
        if is_prime(p) and p > 2 * math.isqrt(order) + 1 and order % p:
            return p
        p += e


def _primitive_root(p: int) -> int:
    factors = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError


def _dixon_rows(G: FiniteGroup, part: ConjClassPartition) -> list[tuple]:
    k = len(part.classes)
    e = G.exponent()
    p = _smallest_dixon_prime(e, G.order)
    reps = [c.rep for c in part.classes]
    class_of = part.class_of

    # class-sum matrices: M_j[i][l] = #{x in C_j : x^-1 g_l in C_i}
    matrices = []
    for j in range(k):
        M = [[0] * k for _ in range(k)]
        for x in part.classes[j].members:
            xinv = G.inverse(x)
            for l in range(k):
                M[class_of[G.mul(xinv, reps[l])]][l] += 1
        matrices.append(M)

    def mat_vec(M, v):
        return [sum(M[i][l] * v[l] for l in range(k)) % p for i in range(k)]

    def echelonize(vectors):
        rows = [list(v) for v in vectors]
        pivots = []
        r = 0
        for col in range(k):
            piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = pow(rows[r][col], -1, p)
            rows[r] = [(x * inv) % p for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
            pivots.append(col)
            r += 1
        return rows[:r], pivots

    spaces = [echelonize([[1 if i == j else 0 for i in range(k)] for j in range(k)])]
    for j in range(1, k):
        if all(len(basis) == 1 for basis, _ in spaces):
            break
        M = matrices[j]
        next_spaces = []
        for basis, pivots in spaces:
            dim = len(basis)
            if dim == 1:
                next_spaces.append((basis, pivots))
                continue
            images = [mat_vec(M, b) for b in basis]
            # the subspace is M-invariant and echelonised: coordinates of an
            # image sit at the pivot columns, image of basis[b] = sum_i R[i][b] basis[i]
            R = [[images[b][pc] % p for b in range(dim)] for pc in pivots]
            for b in range(dim):
                recon = [0] * k
                for i in range(dim):
                    f = R[i][b]
                    if f:
                        recon = [(x + f * y) % p for x, y in zip(recon, basis[i])]
                assert recon == [x % p for x in images[b]], "subspace not invariant"
            for lam in range(p):
                A = [[(R[i][b] - (lam if i == b else 0)) % p for b in range(dim)] for i in range(dim)]
                kern = _kernel_mod_p(A, p)
                if not kern:
                    continue
                vectors = []
                for coeffs in kern:
                    vec = [0] * k
                    for i, f in enumerate(coeffs):
                        if f:
                            vec = [(x + f * y) % p for x, y in zip(vec, basis[i])]
                    vectors.append(vec)
                next_spaces.append(echelonize(vectors))
        spaces = next_spaces
    assert all(len(basis) == 1 for basis, _ in spaces), "class matrices failed to split"

    inv_class = [part.inverse_class(i) for i in range(k)]
    sizes = [c.size for c in part.classes]
    g0 = _primitive_root(p)
    z = pow(g0, (p - 1) // e, p)

    rows = []
    for basis, _ in spaces:
        v = basis[0]
        norm = pow(v[0], -1, p)  # omega at the identity class is 1
        omega = [(x * norm) % p for x in v]
        s = sum(omega[l] * omega[inv_class[l]] * pow(sizes[l], -1, p) for l in range(k)) % p
        d_sq = (G.order * pow(s, -1, p)) % p
        deg = next(d for d in range(1, math.isqrt(G.order) + 1) if (d * d) % p == d_sq)
        chi_bar = [(deg * omega[l] * pow(sizes[l], -1, p)) % p for l in range(k)]
        values = []
        for l in range(k):
            o_c = part.classes[l].rep_order
            zc = pow(z, e // o_c, p)
            inv_oc = pow(o_c, -1, p)
            terms = []
            for i in range(o_c):
                total = 0
                for t in range(o_c):
                    total += chi_bar[class_of[G.power(reps[l], t)]] * pow(zc, (-i * t) % o_c, p)
                a_i = (total * inv_oc) % p
                assert a_i <= deg, "eigenvalue multiplicity exceeded the degree bound"
                if a_i:
                    terms.append((i, a_i))
            values.append(cyclo_make(o_c, terms))
        rows.append(tuple(values))
    return rows


def _kernel_mod_p(A, p):
    """Basis of the kernel of the square matrix A over F_p (deterministic)."""
    n = len(A)
    rows = [list(r) for r in A]
    pivots = {}
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots[col] = r
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for col, ri in pivots.items():
            vec[col] = (-rows[ri][fc]) % p
        basis.append(vec)
    return basis


def _verify_row_norms(table: CharacterTable) -> None:
    """Exact sanity check: every computed row has norm 1 and degrees square-sum
    to the group order."""
    order = table.order
    total = 0
    for row in table.rows:
        deg = table.degree(row).as_rational()
        total += deg * deg
        norm = cyclo_sum(
            cls.size * val * val.conjugate()
            for cls, val in zip(table.classes, row.values)
        )
        if norm.as_rational() != order:
            raise TableError(f"row {row.name} fails the norm-1 check")
    if total != order:
        raise TableError("degrees do not square-sum to the group order")


def inner_product(table: CharacterTable, row_a: CharacterRow, row_b: CharacterRow) -> Cyclotomic:
    """Exact ordinary scalar product (1/|G|) sum |C| a(C) conj(b(C))."""
    if not isinstance(table.order, int):
        raise TableError("scalar products need a complete integer-order table")
    total = cyclo_sum(
        cls.size * va * vb.conjugate()
        for cls, va, vb in zip(table.classes, row_a.values, row_b.values)
    )
    return total * Fraction(1, table.order)


# ---------------------------------------------------------------------------
# Frobenius-Schur indicator and induction


def fs_indicator(table: CharacterTable, row: CharacterRow) -> int:
    """(1/|G|) sum_g chi(g^2), evaluated exactly through the squaring map."""
    if not row.ordinary:
        raise TableError("the indicator is defined for ordinary rows")
    if not isinstance(table.order, int) or not all(isinstance(c.size, int) for c in table.classes):
        raise TableError("indicator needs integer order and class sizes")
    total = cyclo_sum(
        cls.size * row.values[table.class_index(table.power_class(cls.name, 2))]
        for cls in table.classes
    )
    value = (total * Fraction(1, table.order)).as_rational()
    if value not in (-1, 0, 1):
        raise TableError(f"indicator of {row.name} is {value}, not in -1..1")
    return int(value)


def induce_by_fusion(
    sub: CharacterTable,
    row: CharacterRow,
    fusion: dict[str, str],
    index: Union[int, OddAffine],
    host_classes: Sequence[ClassData],
) -> CharacterRow:
    """Induced values on a host: index * (sum of subgroup values over the
    classes fusing into each host class); host classes missing the subgroup
    get 0.  Covers normal subgroups of odd index with no fusion splitting,
    where the induced value is just index times the original one."""
    host_names = [c.name for c in host_classes]
    for sub_name, host_name in fusion.items():
        if host_name not in host_names:
            raise TableError(f"fusion target {host_name} is not a host class")
        sub_cls = sub.classes[sub.class_index(sub_name)]
        host_cls = host_classes[host_names.index(host_name)]
        if sub_cls.rep_order != host_cls.rep_order:
            raise TableError(
                f"fusion {sub_name} -> {host_name} changes the element order"
            )
    values = []
    for host_cls in host_classes:
        fused = [s for s, h in fusion.items() if h == host_cls.name]
        if not fused:
            values.append(OddAffine(0, 0) if isinstance(index, OddAffine) else Cyclotomic.zero())
            continue
        acc = None
        for s in fused:
            v = sub.value(row, s)
            acc = v if acc is None else acc + v
        values.append(index * _affine_or_value(acc) if isinstance(index, OddAffine) else index * acc)
    return CharacterRow(row.name, tuple(values), row.brauer_p, row.real)


def _affine_or_value(v):
    if isinstance(v, OddAffine):
        return v
    r = v.as_rational()
    if r is None:
        raise TableError("parametric induction needs rational subgroup values")
    return Fraction(r)


# ---------------------------------------------------------------------------
# .ctab parsing and writing


def parse_ctab(text: str) -> CharacterTable:
    """Parse the .ctab format:

        GROUP <name> ORDER <int|affine|?>
        CLASS <name> REPORDER <int> SIZE <int|affine|?> [POW <p>=<class> ...]
        CHAR <name> [REAL] [BRAUER <p|odd>] VALUES <expr> ; ... ; <expr>

    Expressions use the E(n)/m literal grammar; '.' marks undefined entries.
    """
    name: Optional[str] = None
    order: Union[int, OddAffine, None] = None
    classes: list[ClassData] = []
    rows: list[CharacterRow] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, rest = line.split(None, 1)
        except ValueError:
            raise TableError(f"line {lineno}: incomplete directive {line!r}")
        try:
            if head == "GROUP":
                parts = rest.split()
                if len(parts) != 3 or parts[1] != "ORDER":
                    raise TableError("expected GROUP <name> ORDER <value>")
                name = parts[0]
                order = _parse_count(parts[2])
            elif head == "CLASS":
                classes.append(_parse_class_line(rest))
            elif head == "CHAR":
                rows.append(_parse_char_line(rest, len(classes)))
            else:
                raise TableError(f"unknown directive {head!r}")
        except TableError as err:
            raise TableError(f"line {lineno}: {err}") from None
    if name is None:
        raise TableError("missing GROUP line")
    if not classes:
        raise TableError("table has no CLASS lines")
    table = CharacterTable(name, order, tuple(classes), tuple(rows))
    table.validate()
    return table


def _parse_count(token: str):
    if token == "?":
        return None
    value = parse_value(token)
    if isinstance(value, OddAffine):
        return value
    r = value.as_rational()
    if r is None or r.denominator != 1:
        raise TableError(f"expected an integer or affine count, got {token!r}")
    return int(r)


def _parse_class_line(rest: str) -> ClassData:
    parts = rest.split()
    if len(parts) < 5 or parts[1] != "REPORDER" or parts[3] != "SIZE":
        raise TableError("expected CLASS <name> REPORDER <int> SIZE <value> [POW ...]")
    name = parts[0]
    rep_order = int(parts[2])
    size = _parse_count(parts[4])
    power_map: list[tuple[int, str]] = []
    tail = parts[5:]
    if tail:
        if tail[0] != "POW":
            raise TableError(f"unexpected token {tail[0]!r} in CLASS line")
        for chunk in tail[1:]:
            if "=" not in chunk:
                raise TableError(f"bad POW entry {chunk!r}")
            prime, target = chunk.split("=", 1)
            power_map.append((int(prime), target))
    return ClassData(name, rep_order, size, tuple(power_map))


def _parse_char_line(rest: str, n_classes: int) -> CharacterRow:
    parts = rest.split()
    if not parts:
        raise TableError("empty CHAR line")
    name = parts[0]
    real = False
    brauer: Union[int, str, None] = None
    i = 1
    while i < len(parts) and parts[i] != "VALUES":
        if parts[i] == "REAL":
            real = True
            i += 1
        elif parts[i] == "BRAUER":
            if i + 1 >= len(parts):
                raise TableError("BRAUER needs a characteristic")
            token = parts[i + 1]
            brauer = token if token == "odd" else int(token)
            i += 2
        else:
            raise TableError(f"unexpected token {parts[i]!r} in CHAR line")
    if i >= len(parts):
        raise TableError("CHAR line has no VALUES")
    blob = rest.split("VALUES", 1)[1]
    chunks = [c.strip() for c in blob.split(";")]
    if len(chunks) != n_classes:
        raise TableError(f"row {name}: {len(chunks)} values for {n_classes} classes")
    values = []
    for chunk in chunks:
        if chunk == ".":
            values.append(None)
        else:
            values.append(parse_value(chunk))
    return CharacterRow(name, tuple(values), brauer, real)


def write_ctab(table: CharacterTable) -> str:
    lines = [f"GROUP {table.name} ORDER {_count_literal(table.order)}"]
    for c in table.classes:
        line = f"CLASS {c.name} REPORDER {c.rep_order} SIZE {_count_literal(c.size)}"
        if c.power_map:
            line += " POW " + " ".join(f"{p}={t}" for p, t in c.power_map)
        lines.append(line)
    for r in table.rows:
        flags = ""
        if r.real:
            flags += " REAL"
        if r.brauer_p is not None:
            flags += f" BRAUER {r.brauer_p}"
        body = " ; ".join("." if v is None else value_literal(v) for v in r.values)
        lines.append(f"CHAR {r.name}{flags} VALUES {body}")
    return "\n".join(lines) + "\n"


def _count_literal(v) -> str:
    if v is None:
        return "?"
    if isinstance(v, OddAffine):
        return v.literal().replace(" ", "")
    return str(v)


def tables_equivalent(a: CharacterTable, b: CharacterTable) -> bool:
    """Whether two complete tables agree up to a permutation of rows and a
    class-data-preserving permutation of columns."""
    if len(a.classes) != len(b.classes) or len(a.rows) != len(b.rows):
        return False
    if a.order != b.order:
        return False
    k = len(a.classes)
    candidates = []
    for ca in a.classes:
        match = [j for j, cb in enumerate(b.classes)
                 if (cb.rep_order, cb.size) == (ca.rep_order, ca.size)]
        if not match:
            return False
        candidates.append(match)
    order = sorted(range(k), key=lambda i: len(candidates[i]))
    rows_b = sorted(tuple(_value_key(v) for v in r.values) for r in b.rows)
    assignment = [-1] * k

    def rows_match() -> bool:
        permuted = sorted(
            tuple(_value_key(r.values[_inv(assignment, j)]) for j in range(k))
            for r in a.rows
        )
        return permuted == rows_b

    def powers_ok(i: int, j: int) -> bool:
        for p, target in a.classes[i].power_map:
            tb = b.classes[j].power_target(p)
            ti = a.class_index(target)
            if tb is not None and assignment[ti] != -1 and assignment[ti] != b.class_index(tb):
                return False
        return True

    def dfs(pos: int) -> bool:
        if pos == k:
            return rows_match()
        i = order[pos]
        for j in candidates[i]:
            if j in assignment:
                continue
            assignment[i] = j
            if powers_ok(i, j) and dfs(pos + 1):
                return True
            assignment[i] = -1
        return False

    return dfs(0)


def _inv(assignment: list[int], j: int) -> int:
    return assignment.index(j)


# ---------------------------------------------------------------------------
# tables shipped with the package


@lru_cache(maxsize=None)
def load_table(filename: str) -> CharacterTable:
    """Load one of the packaged .ctab files (e.g. ``table1.ctab``)."""
    from importlib import resources

    data = resources.files("helpring.data").joinpath(filename).read_text()
    return parse_ctab(data)
