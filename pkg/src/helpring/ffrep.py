"""Explicit finite-field representations and their Brauer character values.

Three matrix actions are built from scratch:

* ``trace0_conj(q)``: GL(2,q) conjugating the 2x2 matrices of trace zero, a
  3-dimensional action whose kernel is the scalar group;
* ``cubics(q, unitary)``: SL(3,q) or SU(3,q) acting by substitution on the
  homogeneous cubics in three commuting variables (10-dimensional; in the
  unitary case entries live in F_{q^2} and the form has identity Gram
  matrix);
* ``hermitian4(q)`` for square q = r^2: GL(2,q) acting on the 4-dimensional
  space of twisted-hermitian matrices by A * H = sigma(A)^t H A together
  with an order-4 twist extending the action to the non-split double cover
  of PSL(2,q); for r = 1 mod 4 the twist forces an extension of scalars
  from F_r to F_q that is carried out on the fixed basis.

Character values are extracted by eigenvalue lifting: an evaluated element
has small multiplicative order n, so its eigenvalues are n-th roots of unity
in F_q or a quadratic extension; each eigenspace dimension is computed by
exact kernel computation and the eigenvalues are transported to complex
roots of unity along a fixed discrete-log context.  Values at the identity
equal the dimension, values of inverse elements are complex conjugates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .chartab import CharacterRow, CharacterTable, ClassData, load_table
from .exactnum import Cyclotomic, E, OddAffine, cyclo_sum
from .ffield import (
    FieldElement,
    FiniteField,
    field_make,
    max_2power_element,
    subfield_embedding,
)

Matrix = tuple[tuple[FieldElement, ...], ...]


# ---------------------------------------------------------------------------
# small exact matrix helpers over a finite field


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, mid, m = len(A), len(B), len(B[0])
    return tuple(
        tuple(
            _dot(A[i], tuple(B[k][j] for k in range(mid)))
            for j in range(m)
        )
        for i in range(n)
    )


def _dot(row, col):
    acc = row[0] * col[0]
    for a, b in zip(row[1:], col[1:]):
        acc = acc + a * b
    return acc


def mat_identity(F: FiniteField, n: int) -> Matrix:
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def mat_scale(c: FieldElement, A: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in A)


def mat_pow(A: Matrix, k: int) -> Matrix:
    F = A[0][0].field
    result = mat_identity(F, len(A))
    base = A
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def mat_det(A: Matrix) -> FieldElement:
    n = len(A)
    F = A[0][0].field
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    det = F.zero
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in A[1:])
        term = A[0][j] * mat_det(minor)
        det = det + term if j % 2 == 0 else det - term
    return det


def mat_inverse(A: Matrix) -> Matrix:
    n = len(A)
    F = A[0][0].field
    rows = [list(row) + [F.one if i == j else F.zero for j in range(n)]
            for i, row in enumerate(A)]
    for col in range(n):
        piv = next(i for i in range(col, n) if not rows[i][col].is_zero())
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for i in range(n):
            if i != col and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


def mat_order(A: Matrix, cap: int = 1024) -> int:
    F = A[0][0].field
    ident = mat_identity(F, len(A))
    power = A
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = mat_mul(power, A)
    raise ValueError("matrix order exceeds the cap; element is not small torsion")


def kernel_dimension(A: Matrix) -> int:
    n = len(A)
    rows = [list(r) for r in A]
    rank = 0
    for col in range(len(rows[0])):
        piv = next((i for i in range(rank, n) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(n):
            if i != rank and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return len(rows[0]) - rank


def frobenius_matrix(A: Matrix, r: int) -> Matrix:
    return tuple(tuple(x**r for x in row) for row in A)


def mat_transpose(A: Matrix) -> Matrix:
    return tuple(tuple(A[i][j] for i in range(len(A))) for j in range(len(A[0])))


# ---------------------------------------------------------------------------
# lifting eigenvalues to exact roots of unity


@dataclass
class LiftContext:
    """Transport of the multiplicative group of a finite field into complex
    roots of unity: x -> zeta_(Q-1)^dlog(x) for a fixed primitive element."""

    field: FiniteField

    def lift(self, x: FieldElement) -> Cyclotomic:
        return E(self.field.q - 1, self.field.dlog(x))


def eigen_data(action: "MatrixAction", g) -> list[tuple[Cyclotomic, int]]:
    """Pairs (lifted eigenvalue, multiplicity) of the matrix of g; requires g
    semisimple of order coprime to the characteristic (true for the torsion
    handled here: x^n - 1 is squarefree and must split in F or F^2)."""
    M = action.matrix_of(g)
    F = action.field
    n = mat_order(M)
    if n % F.p == 0:
        raise ValueError("element order divisible by the characteristic")
    if (F.q - 1) % n == 0:
        K, embed = F, lambda x: x
    elif (F.q * F.q - 1) % n == 0:
        K = field_make(F.p, 2 * F.k)
        embed = subfield_embedding(F, K)
    else:
        raise ValueError(f"order-{n} eigenvalues do not split over a quadratic extension")
    MK = tuple(tuple(embed(x) for x in row) for row in M)
    w = K.primitive_element() ** ((K.q - 1) // n)
    ident = mat_identity(K, len(MK))
    lift = LiftContext(K)
    out = []
    total = 0
    root = K.one
    for j in range(n):
        shifted = tuple(
            tuple(MK[i][l] - (root if i == l else K.zero) for l in range(len(MK)))
            for i in range(len(MK))
        )
        mult = kernel_dimension(shifted)
        if mult:
            out.append((lift.lift(root), mult))
            total += mult
        root = root * w
    if total != len(M):
        raise ValueError("matrix is not diagonalizable over the quadratic extension")
    return out


def brauer_value(action: "MatrixAction", g) -> Cyclotomic:
    """Exact Brauer character value: the sum of lifted eigenvalues."""
    return cyclo_sum(root * mult for root, mult in eigen_data(action, g))


# ---------------------------------------------------------------------------
# the actions


class MatrixAction:
    """Base: a verified linear action with an explicit matrix per element."""

    kind: str
    field: FiniteField  # field of the action matrices
    dim: int

    def matrix_of(self, g) -> Matrix:
        raise NotImplementedError

    def _verify(self, sample_elements: Sequence, center: Sequence, right_action: bool = False):
        """Identity acts as identity, composition respected on seeded random
        pairs, declared central elements act trivially."""
        F = self.field
        ident = mat_identity(F, self.dim)
        assert self.matrix_of(self._identity_element()) == ident
        rng = random.Random(20240 + self.dim)
        pool = list(sample_elements)
        for _ in range(50):
            A = pool[rng.randrange(len(pool))]
            B = pool[rng.randrange(len(pool))]
            AB = mat_mul(A, B)
            left = self.matrix_of(AB)
            right = (
                mat_mul(self.matrix_of(B), self.matrix_of(A))
                if right_action
                else mat_mul(self.matrix_of(A), self.matrix_of(B))
            )
            assert left == right, f"{self.kind}: composition law fails"
        for z in center:
            assert self.matrix_of(z) == ident, f"{self.kind}: declared kernel acts nontrivially"

    def _identity_element(self):
        raise NotImplementedError


class Trace0Conj(MatrixAction):
    """Conjugation of GL(2,q) on trace-zero 2x2 matrices; basis
    (diag(1,-1), E12, E21)."""

    kind = "trace0_conj"

    def __init__(self, q: int):
        self.group_field = _field_of_order(q)
        self.field = self.group_field
        self.dim = 3
        F = self.field
        self._basis = (
            ((F.one, F.zero), (F.zero, -F.one)),
            ((F.zero, F.one), (F.zero, F.zero)),
            ((F.zero, F.zero), (F.one, F.zero)),
        )
        samples = _sample_invertible(F, 2, 12)
        center = [mat_scale(F.element_from_int(v), mat_identity(F, 2))
                  for v in range(2, 5) if not F.element_from_int(v).is_zero()]
        self._verify(samples, center)

    def _identity_element(self):
        return mat_identity(self.field, 2)

    def matrix_of(self, g: Matrix) -> Matrix:
        ginv = mat_inverse(g)
        cols = []
        for X in self._basis:
            img = mat_mul(mat_mul(g, X), ginv)
            cols.append((img[0][0], img[0][1], img[1][0]))
        return mat_transpose(tuple(cols))


_CUBIC_MONOMIALS = [
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
]


class Cubics(MatrixAction):
    """SL(3,q) / SU(3,q) substituting in homogeneous cubic forms; the basis
    is the ten degree-3 monomials in x, y, z (lexicographic)."""

    kind = "cubics"

    def __init__(self, q: int, unitary: bool):
        self.unitary = unitary
        self.q0 = q
        self.group_field = _field_of_order(q * q if unitary else q)
        self.field = self.group_field
        self.dim = 10
        F = self.field
        samples = _sample_invertible(F, 3, 10)
        center = []
        for v in range(1, F.q):
            lam = F.element_from_int(v)
            if lam**3 == F.one:
                center.append(mat_scale(lam, mat_identity(F, 3)))
        self._verify(samples, center)

    def _identity_element(self):
        return mat_identity(self.field, 3)

    def check_membership(self, g: Matrix) -> None:
        F = self.field
        assert mat_det(g) == F.one, "determinant is not 1"
        if self.unitary:
            gram = mat_mul(frobenius_matrix(mat_transpose(g), self.q0), g)
            assert gram == mat_identity(F, 3), "matrix does not preserve the unitary form"

    def matrix_of(self, g: Matrix) -> Matrix:
        F = self.field
        inv = mat_inverse(g)
        # variable i becomes the linear form sum_j inv[i][j] var_j
        forms = [tuple(inv[i][j] for j in range(3)) for i in range(3)]
        cols = []
        for (a, b, c) in _CUBIC_MONOMIALS:
            poly = {(0, 0, 0): F.one}
            for var, mult in ((0, a), (1, b), (2, c)):
                for _ in range(mult):
                    poly = _poly_mul_linear(poly, forms[var], F)
            cols.append(tuple(poly.get(mon, F.zero) for mon in _CUBIC_MONOMIALS))
        return mat_transpose(tuple(cols))


def _poly_mul_linear(poly, form, F):
    out = {}
    for (e1, e2, e3), coeff in poly.items():
        for var, fc in enumerate(form):
            if fc.is_zero():
                continue
            key = (e1 + (var == 0), e2 + (var == 1), e3 + (var == 2))
            cur = out.get(key)
            out[key] = coeff * fc if cur is None else cur + coeff * fc
    return out


TWIST = "twist"  # token for the order-4 generator extending PSL(2,q)


class Hermitian4(MatrixAction):
    """The 4-dimensional twisted-hermitian action for square q = r^2.

    The space is H = {[[a, c], [sigma(c), b]] : a, b in F_r, c in F_q} with
    basis (H_a, H_b, H_1, H_delta); GL(2,q) acts by A * H = sigma(A)^t H A
    (a right action).  The twist g*sigma acts for r = 3 mod 4 directly on H,
    and for r = 1 mod 4 only after extension of scalars to F_q, scaled by
    alpha^(-1) so that its fourth power is the identity.
    """

    kind = "hermitian4"

    def __init__(self, q: int):
        r = _integer_sqrt_exact(q)
        if r is None:
            raise ValueError("the twisted-hermitian action needs a square q")
        self.r = r
        Fq = _field_of_order(q)
        Fr = _field_of_order(r)
        self.group_field = Fq
        self.field = Fq  # matrices are stored over F_q in both branches
        self.scalar_field = Fr if r % 4 == 3 else Fq
        self.dim = 4
        self._embed_r = subfield_embedding(Fr, Fq)
        self._subfield_image = {self._embed_r(x).coeffs for x in Fr.elements()}
        # delta: the smallest element of F_q outside F_r
        delta = next(
            Fq.element_from_int(v) for v in range(Fq.q)
            if Fq.element_from_int(v).coeffs not in self._subfield_image
        )
        self.delta = delta
        self.sigma_delta = delta**r
        self.alpha = max_2power_element(Fq)
        self._dec_matrix = self._decomposition_matrix()
        samples = _sample_invertible(Fq, 2, 10)
        center = [mat_scale(lam, mat_identity(Fq, 2))
                  for lam in (Fq.element_from_int(v) for v in range(1, Fq.q))
                  if not lam.is_zero() and lam * lam**r == Fq.one]
        self._verify(samples, center, right_action=True)
        self._verify_twist()

    def _identity_element(self):
        return mat_identity(self.field, 2)

    # -- coordinates ---------------------------------------------------------

    def _decomposition_matrix(self):
        # solve u + v*delta = w12, u + v*sigma(delta) = w21 for (u, v)
        det = self.delta - self.sigma_delta
        inv = det.inverse()
        return inv

    def _c_coords(self, w12: FieldElement, w21: FieldElement):
        inv = self._dec_matrix
        v = (w12 - w21) * inv
        u = w12 - v * self.delta
        return u, v

    def _entry_matrix(self, a, b, c1, cdelta):
        """The 2x2 matrix of coordinates (a, b, c1, cdelta)."""
        c = c1 + cdelta * self.delta
        sc = c1 + cdelta * self.sigma_delta
        return ((a, c), (sc, b))

    def _coords_of(self, w11, w22, w12, w21):
        u, v = self._c_coords(w12, w21)
        return (w11, w22, u, v)

    def _basis_matrices(self):
        F = self.field
        return [
            (F.one, F.zero, F.zero, F.zero),
            (F.zero, F.one, F.zero, F.zero),
            (F.zero, F.zero, F.one, F.zero),
            (F.zero, F.zero, F.zero, F.one),
        ]

    # -- the action ------------------------------------------------------------

    def matrix_of(self, g) -> Matrix:
        if isinstance(g, str) and g == TWIST:
            return self._twist_matrix()
        cols = []
        r = self.r
        gs = frobenius_matrix(mat_transpose(g), r)
        for coords in self._basis_matrices():
            H = self._entry_matrix(*coords)
            img = mat_mul(mat_mul(gs, H), g)
            cols.append(self._coords_of(img[0][0], img[1][1], img[0][1], img[1][0]))
        return mat_transpose(tuple(cols))

    def twist_generator(self) -> Matrix:
        """The matrix g whose composite with the field automorphism is the
        order-4 outer element: diag(1, alpha) for r = 3 mod 4 and
        [[0, alpha], [-1, 0]] for r = 1 mod 4."""
        F = self.field
        if self.r % 4 == 3:
            return ((F.one, F.zero), (F.zero, self.alpha))
        return ((F.zero, self.alpha), (-F.one, F.zero))

    def _semilinearity_matrix(self) -> Matrix:
        """The composite "act by g, then apply sigma entrywise", i.e.
        H -> g^t sigma(H) sigma(g), on the coordinate space."""
        g = self.twist_generator()
        sg = frobenius_matrix(g, self.r)
        gT = mat_transpose(g)
        cols = []
        for coords in self._basis_matrices():
            H = self._entry_matrix(*coords)
            img = mat_mul(mat_mul(gT, frobenius_matrix(H, self.r)), sg)
            cols.append(self._coords_of(img[0][0], img[1][1], img[0][1], img[1][0]))
        return mat_transpose(tuple(cols))

    def _twist_matrix(self) -> Matrix:
        W = self._semilinearity_matrix()
        if self.r % 4 == 3:
            return W
        # r = 1 mod 4: the semilinearity to the fourth is the scalar alpha^4,
        # normalising by alpha^-1 yields an element of order 4
        return mat_scale(self.alpha.inverse(), W)

    def _verify_twist(self):
        F = self.field
        W = self._semilinearity_matrix()
        T = self._twist_matrix()
        if self.r % 4 == 1:
            expected = mat_scale(self.alpha**4, mat_identity(F, 4))
            assert mat_pow(W, 4) == expected, "fourth power of the semilinearity is not alpha^4"
        assert mat_pow(T, 4) == mat_identity(F, 4), "twist is not of order 4"
        assert mat_pow(T, 2) != mat_identity(F, 4)
        if self.r % 4 == 3:
            for row in T:
                for x in row:
                    assert x.coeffs in self._subfield_image, "twist does not preserve the F_r-structure"
        # the square of the twist is exactly the action of diag(i, -i)
        i4 = self.alpha ** (self.alpha.multiplicative_order() // 4)
        two_a = ((i4, F.zero), (F.zero, -i4))
        assert mat_pow(T, 2) == self.matrix_of(two_a), "twist square is not the involution action"
        # the twist normalises the inner action: T^-1 M_A T = M_(g sigma(A) g^-1)
        g = self.twist_generator()
        ginv = mat_inverse(g)
        Tinv = mat_inverse(T)
        rng = random.Random(77)
        checked = 0
        while checked < 8:
            A = tuple(
                tuple(F.element_from_int(rng.randrange(F.q)) for _ in range(2))
                for _ in range(2)
            )
            d = mat_det(A)
            if d.is_zero() or not _is_square(d):
                continue
            s = next(x for v in range(1, F.q)
                     for x in [F.element_from_int(v)] if x * x == d)
            A = mat_scale(s.inverse(), A)
            lhs = mat_mul(mat_mul(Tinv, self.matrix_of(A)), T)
            conj = mat_mul(mat_mul(g, frobenius_matrix(A, self.r)), ginv)
            assert lhs == self.matrix_of(conj), "twist fails to normalise the inner action"
            checked += 1


def _integer_sqrt_exact(q: int) -> Optional[int]:
    r = int(q**0.5)
    for cand in (r - 1, r, r + 1):
        if cand > 0 and cand * cand == q:
            return cand
    return None


def _field_of_order(q: int) -> FiniteField:
    from .exactnum import factorize

    fact = factorize(q)
    if len(fact) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = fact.items()
    if p == 2:
        raise ValueError("only odd characteristic is supported")
    return field_make(p, k)


def _sample_invertible(F: FiniteField, n: int, count: int) -> list[Matrix]:
    rng = random.Random(911 + F.q * n)
    out = []
    while len(out) < count:
        cand = tuple(
            tuple(F.element_from_int(rng.randrange(F.q)) for _ in range(n))
            for _ in range(n)
        )
        if not mat_det(cand).is_zero():
            out.append(cand)
    return out


def action_build(kind: str, q: int, unitary: bool = False) -> MatrixAction:
    """Build and self-verify one of the named actions."""
    if kind == "trace0_conj":
        return Trace0Conj(q)
    if kind == "cubics":
        return Cubics(q, unitary)
    if kind == "hermitian4":
        return Hermitian4(q)
    raise ValueError(f"unknown action kind {kind!r}")


# ---------------------------------------------------------------------------
# class representatives in the matrix groups


def _nonsquare(F: FiniteField) -> FieldElement:
    squares = {(x * x).coeffs for x in F.elements() if not x.is_zero()}
    for v in range(1, F.q):
        x = F.element_from_int(v)
        if x.coeffs not in squares:
            return x
    raise AssertionError("every field of odd order has a nonsquare")


def _is_square(x: FieldElement) -> bool:
    if x.is_zero():
        return True
    return x ** ((x.field.q - 1) // 2) == x.field.one


def _singer_matrix(F: FiniteField, beta_order: int) -> Matrix:
    """Multiplication by an element beta of the given order in F_{q^2},
    written as a 2x2 matrix over F_q in the basis (1, t) of the extension.
    Its determinant is the norm beta^(q+1)."""
    K = field_make(F.p, 2 * F.k)
    embed = subfield_embedding(F, K)
    beta = K.primitive_element() ** ((K.q - 1) // beta_order)
    t = K.gen()
    cols = [_decompose_over_subfield(K, embed, F, t, beta * b) for b in (K.one, t)]
    M = mat_transpose(tuple(cols))
    assert mat_order(M) == beta_order
    return M


def _decompose_over_subfield(K: FiniteField, embed, F: FiniteField,
                             t: FieldElement, x: FieldElement):
    """Write x in K as u + v*t with u, v in the embedded copy of F (exact
    linear solve over F_p)."""
    p = K.p
    fbasis = [F.element_from_int(p**i) for i in range(F.k)]  # 1, theta, ...
    cols = []
    for b in (K.one, t):
        for fb in fbasis:
            cols.append((embed(fb) * b).coeffs)
    m = len(cols)
    rows = [[cols[j][i] for j in range(m)] + [x.coeffs[i]] for i in range(K.k)]
    sol = _solve_mod_p(rows, p, m)
    u = F.zero
    v = F.zero
    for i, fb in enumerate(fbasis):
        u = u + fb * sol[i]
        v = v + fb * sol[F.k + i]
    assert embed(u) + embed(v) * t == x
    return u, v


def _solve_mod_p(rows, p, ncols):
    n = len(rows)
    pivots = []
    r = 0
    for col in range(ncols):
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
        pivots.append(col)
        r += 1
    sol = [0] * ncols
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1] % p
    return sol


# ---------------------------------------------------------------------------
# class representatives


def psl_representatives(q: int, fourA_in_psl: bool) -> dict[str, Matrix]:
    """Representatives (as 2x2 matrices over F_q, taken modulo scalars) of the
    classes 1a, 2a, 4a, 2b of a group between PSL(2,q) and PGL(2,q):

    * 2a: the involution class inside PSL(2,q);
    * 2b: an involution outside PSL(2,q);
    * 4a: an order-4 class inside PSL (possible for q = +-1 mod 8) or
      outside PSL (possible for q = +-3 mod 8).
    """
    F = _field_of_order(q)
    reps: dict[str, Matrix] = {"1a": mat_identity(F, 2)}
    reps["2a"] = ((F.zero, -F.one), (F.one, F.zero))
    if q % 4 == 1:
        nu = _nonsquare(F)
        reps["2b"] = ((F.zero, nu), (F.one, F.zero))
    else:
        reps["2b"] = ((F.zero, F.one), (F.one, F.zero))
    if fourA_in_psl:
        if q % 8 not in (1, 7):
            raise ValueError(f"q = {q} has no order-4 elements inside PSL(2,q)")
        if (q - 1) % 8 == 0:
            beta = F.primitive_element() ** ((F.q - 1) // 8)
            reps["4a"] = ((beta, F.zero), (F.zero, beta.inverse()))
        else:
            reps["4a"] = _singer_matrix(F, 8)
    else:
        if q % 8 not in (3, 5):
            raise ValueError(f"q = {q}: order-4 elements lie inside PSL(2,q)")
        if (q - 1) % 4 == 0:
            i4 = F.primitive_element() ** ((F.q - 1) // 4)
            reps["4a"] = ((F.one, F.zero), (F.zero, i4))
        else:
            reps["4a"] = _singer_matrix(F, 8)
    _check_projective_orders(F, reps, fourA_in_psl)
    return reps


def _projective_order(M: Matrix) -> int:
    """Order of the image of M in PGL(2,q)."""
    F = M[0][0].field
    power = M
    for k in range(1, 2 * F.q * F.q):
        if power[0][1].is_zero() and power[1][0].is_zero() and power[0][0] == power[1][1]:
            return k
        power = mat_mul(power, M)
    raise AssertionError


def _in_psl(M: Matrix) -> bool:
    """The image of M in PGL(2,q) lies in PSL(2,q) iff det(M) is a square."""
    return _is_square(mat_det(M))


def _check_projective_orders(F, reps, fourA_in_psl):
    assert _projective_order(reps["2a"]) == 2 and _in_psl(reps["2a"])
    assert _projective_order(reps["2b"]) == 2 and not _in_psl(reps["2b"])
    assert _projective_order(reps["4a"]) == 4
    assert _in_psl(reps["4a"]) == fourA_in_psl


# ---------------------------------------------------------------------------
# rows of the shipped host tables, regenerated from first principles


def _affine_row(name: str, rationals, brauer_p, real=True) -> CharacterRow:
    return CharacterRow(
        name,
        tuple(OddAffine(0, Fraction(v)) for v in rationals),
        brauer_p,
        real,
    )


def _const_row(name: str, values, real=True) -> CharacterRow:
    return CharacterRow(
        name,
        tuple(Cyclotomic.from_rational(Fraction(v)) for v in values),
        None,
        real,
    )


def _rational_value(z: Cyclotomic) -> Fraction:
    r = z.as_rational()
    assert r is not None, "expected a rational character value"
    return r


def psl_values(q: int, fourA_in_psl: bool) -> CharacterTable:
    """The sign row and the two 3m-dimensional rows on (1a, 2a, 4a, 2b),
    computed from the trace-zero conjugation action at concrete q and scaled
    by the odd index m."""
    action = action_build("trace0_conj", q)
    reps = psl_representatives(q, fourA_in_psl)
    order = ["1a", "2a", "4a", "2b"]
    chi3 = {c: _rational_value(brauer_value(action, reps[c])) for c in order}
    assert chi3["1a"] == 3
    chi_signs = {"1a": 1, "2a": 1, "4a": 1 if fourA_in_psl else -1, "2b": -1}
    p = action.field.p
    rows = (
        _const_row("chi", [chi_signs[c] for c in order]),
        _affine_row("psi+", [chi3[c] for c in order], p),
        _affine_row("psi-", [chi3[c] * chi_signs[c] for c in order], p),
    )
    template = load_table("table1.ctab" if fourA_in_psl else "table2.ctab")
    return CharacterTable(f"psl-branch q={q}", None, template.classes, rows)


def qgroup_values(q: int, unitary: bool = False) -> CharacterTable:
    """The determinant row of the Q branch on (1a, 2a, 2b, 4a): values of the
    determinant at the representatives, scaled by the odd index m."""
    F = _field_of_order(q * q if unitary else q)
    one, zero = F.one, F.zero
    reps = {
        "1a": mat_identity(F, 2),
        "2a": ((-one, zero), (zero, -one)),
        "2b": ((one, zero), (zero, -one)),
        "4a": ((zero, -one), (one, zero)),
    }
    if unitary:
        for M in reps.values():
            gram = mat_mul(frobenius_matrix(mat_transpose(M), q), M)
            assert gram == mat_identity(F, 2), "representative is not unitary"
    lift = LiftContext(F)
    order = ["1a", "2a", "2b", "4a"]
    det_values = {c: _rational_value(lift.lift(mat_det(reps[c]))) for c in order}
    assert det_values == {"1a": 1, "2a": 1, "2b": -1, "4a": 1}
    template = load_table("table4.ctab")
    rows = (_affine_row("chi", [det_values[c] for c in order], F.p),)
    return CharacterTable(f"q-branch q={q}", None, template.classes, rows)


def dgroup_values(q: int) -> CharacterTable:
    """The three rows of the D branch on (1a, 2a, 4a, 4b) at concrete square
    q, scaled by the odd index m.

    4b is the order-4 class outside PSL(2,q) (the twist); the sign character
    fixes the labelling: it is 1 on 4a and -1 on 4b.
    """
    r = _integer_sqrt_exact(q)
    if r is None:
        raise ValueError("the D branch needs a square prime power q")
    herm = action_build("hermitian4", q)
    trace0 = action_build("trace0_conj", q)
    F = herm.field
    alpha = herm.alpha
    i4 = alpha ** (alpha.multiplicative_order() // 4)
    beta = F.primitive_element() ** ((F.q - 1) // 8)
    reps_psl = {
        "1a": mat_identity(F, 2),
        "2a": ((i4, F.zero), (F.zero, -i4)),
        "4a": ((beta, F.zero), (F.zero, beta.inverse())),
    }
    assert mat_det(reps_psl["2a"]) == F.one and mat_det(reps_psl["4a"]) == F.one
    assert _projective_order(reps_psl["2a"]) == 2
    assert _projective_order(reps_psl["4a"]) == 4
    eta = {c: _rational_value(brauer_value(herm, m)) for c, m in reps_psl.items()}
    eta["4b"] = _rational_value(brauer_value(herm, TWIST))
    chi0 = {c: _rational_value(brauer_value(trace0, m)) for c, m in reps_psl.items()}
    order = ["1a", "2a", "4a", "4b"]
    psi = {c: 2 * chi0[c] for c in reps_psl}
    psi["4b"] = Fraction(0)  # induced from PSL(2,q), vanishes outside
    chi_signs = {"1a": 1, "2a": 1, "4a": 1, "4b": -1}
    rows = (
        _const_row("chi", [chi_signs[c] for c in order]),
        _affine_row("psi", [psi[c] for c in order], F.p),
        _affine_row("eta", [eta[c] for c in order], F.p),
    )
    template = load_table("table5.ctab")
    return CharacterTable(f"d-branch q={q}", None, template.classes, rows)


def qd_values(q: int) -> CharacterTable:
    """The 10m-dimensional row of the QD branch on (1a, 2a, 4a): eigenvalue
    counts of the cubics action at the two explicit representatives.  The
    branch is unitary (SU(3,q)) for q = 1 mod 4 and plain (SL(3,q)) for
    q = 3 mod 4."""
    unitary = q % 4 == 1
    action = action_build("cubics", q, unitary)
    F = action.field
    one, zero = F.one, F.zero
    A = ((one, zero, zero), (zero, -one, zero), (zero, zero, -one))
    B = ((one, zero, zero), (zero, zero, one), (zero, -one, zero))
    action.check_membership(A)
    action.check_membership(B)
    values = {
        "1a": Fraction(10),
        "2a": _rational_value(brauer_value(action, A)),
        "4a": _rational_value(brauer_value(action, B)),
    }
    assert values["2a"] == -2 and values["4a"] == 0
    template = load_table("table3.ctab")
    rows = (_affine_row("chi", [values[c] for c in ["1a", "2a", "4a"]], F.p),)
    return CharacterTable(f"qd-branch q={q}", None, template.classes, rows)
