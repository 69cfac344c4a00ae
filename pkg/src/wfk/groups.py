"""Finite groups as multiplication tables: conjugacy data, exact character
tables over cyclotomic fields, class-function arithmetic and convolution.

Built-in constructors cover the finite subgroups of SL2(C) (cyclic, binary
dihedral, binary tetrahedral/octahedral/icosahedral), symmetric groups and
direct products.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .budget import CONVOLUTION_PAIR_BUDGET, BudgetExceeded, check_budget
from .exact import CycNum, cyc
from . import linalg

_ASSOC_FULL_LIMIT = 512
_SAMPLE_TRIPLES = 4096


class ClosureBoundExceeded(RuntimeError):
    """Generated matrix group did not close within the configured bound."""


class NonInvertibleMatrix(ValueError):
    """A generator matrix is not invertible (or not determinant 1)."""


class GroupMismatch(ValueError):
    """Operands live on different groups."""


class DiagonalizationFailure(RuntimeError):
    """The character-table engine could not complete; signals a bug."""


# ---------------------------------------------------------------------------
# core containers
# ---------------------------------------------------------------------------

class FiniteGroup:
    """Multiplication-table group with elements 0..order-1.

    `mult[a][b]` is the index of a*b.  Instances are immutable after
    construction; conjugacy data, character table and convolution structure
    constants are cached lazily.
    """

    def __init__(self, mult, identity=None, inverse=None, labels=None,
                 matrix_model=None, name="group", validate=True,
                 perm_actions=None, product_factors=None):
        self.mult = [list(row) for row in mult]
        self.order = len(self.mult)
        self.name = name
        self.element_labels = list(labels) if labels is not None else None
        self.matrix_model = matrix_model
        self.perm_actions = perm_actions or []
        self.product_factors = product_factors
        self.identity = self._find_identity() if identity is None else identity
        self.inverse = list(inverse) if inverse is not None else self._find_inverses()
        self._np = None
        self._conjugacy = None
        self._chartable = None
        self._structure = None
        if validate:
            self._validate()

    # -- plumbing ------------------------------------------------------------

    def _find_identity(self) -> int:
        for e in range(self.order):
            row = self.mult[e]
            if all(row[b] == b for b in range(self.order)):
                return e
        raise ValueError("multiplication table has no identity")

    def _find_inverses(self) -> list[int]:
        e = self.identity
        inv = [-1] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.mult[a][b] == e:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise ValueError(f"element {a} has no inverse")
        return inv

    def np_mult(self) -> np.ndarray:
        if self._np is None:
            self._np = np.array(self.mult, dtype=np.int32)
        return self._np

    def _validate(self) -> None:
        n = self.order
        e = self.identity
        if any(len(row) != n for row in self.mult):
            raise ValueError("multiplication table is not square")
        if any(self.mult[e][b] != b or self.mult[b][e] != b for b in range(n)):
            raise ValueError("identity law fails")
        if any(self.mult[a][self.inverse[a]] != e for a in range(n)):
            raise ValueError("inverse law fails")
        m = self.np_mult()
        if n <= _ASSOC_FULL_LIMIT:
            for a in range(n):
                if not np.array_equal(m[m[a], :], m[a, m]):
                    raise ValueError(f"associativity fails at element {a}")
        else:
            rng = random.Random(0)
            for _ in range(_SAMPLE_TRIPLES):
                a, b, c = (rng.randrange(n) for _ in range(3))
                if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]]:
                    raise ValueError("associativity fails on sampled triple")
        if self.matrix_model is not None:
            self._validate_matrix_model()

    def _validate_matrix_model(self) -> None:
        mats = self.matrix_model
        if len(mats) != self.order:
            raise ValueError("matrix model size mismatch")
        one = CycNum.from_rational(1)
        for mat in mats if self.order <= 24 else [mats[i] for i in
                                                  random.Random(1).sample(range(self.order), 24)]:
            d = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
            if d != one:
                raise NonInvertibleMatrix("matrix model entry with determinant != 1")
        rng = random.Random(2)
        pairs = (itertools.product(range(self.order), repeat=2)
                 if self.order <= 24
                 else [(rng.randrange(self.order), rng.randrange(self.order))
                       for _ in range(256)])
        for a, b in pairs:
            if _mat_mul(mats[a], mats[b]) != [list(r) for r in mats[self.mult[a][b]]]:
                raise ValueError("matrix model does not match the multiplication table")

    # -- group basics --------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mult[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        out = 1
        for rep in self.conjugacy().class_reps:
            o = self.element_order(rep)
            out = out * o // gcd(out, o)
        return out

    def is_abelian(self) -> bool:
        m = self.np_mult()
        return bool(np.array_equal(m, m.T))

    def conjugacy(self) -> "ConjugacyData":
        if self._conjugacy is None:
            self._conjugacy = conjugacy_classes(self)
        return self._conjugacy

    def character_table(self) -> "CharacterTable":
        if self._chartable is None:
            self._chartable = character_table(self)
        return self._chartable

    def to_json(self) -> dict:
        data = {"order": self.order, "mult": self.mult}
        if self.element_labels is not None:
            data["labels"] = self.element_labels
        if self.matrix_model is not None:
            data["matrices"] = [[[x.to_json() for x in row] for row in mat]
                                for mat in self.matrix_model]
        return data

    @staticmethod
    def from_json(data: dict) -> "FiniteGroup":
        mats = None
        if "matrices" in data and data["matrices"] is not None:
            mats = [[[CycNum.from_json(x) for x in row] for row in mat]
                    for mat in data["matrices"]]
        return FiniteGroup(data["mult"], labels=data.get("labels"), matrix_model=mats)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


class ConjugacyData:
    """Conjugacy classes, centralizer orders and the inverse-class involution."""

    def __init__(self, class_of, class_reps, class_sizes, centralizer_orders,
                 inverse_class):
        self.class_of = class_of
        self.class_reps = class_reps
        self.class_sizes = class_sizes
        self.centralizer_orders = centralizer_orders
        self.inverse_class = inverse_class

    def __len__(self):
        return len(self.class_reps)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyData:
    """Classes by conjugation orbits; centralizer orders from the class equation."""
    n = G.order
    m = G.np_mult()
    inv = np.array(G.inverse, dtype=np.int32)
    arange = np.arange(n)
    class_of = [-1] * n
    reps, sizes = [], []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        gx = m[arange, x]          # g*x for all g
        orbit = m[gx, inv]         # (g*x)*g^-1
        members = np.unique(orbit)
        cls = len(reps)
        for y in members.tolist():
            class_of[y] = cls
        reps.append(x)
        sizes.append(int(members.size))
    assert sum(sizes) == n
    cents = [n // s for s in sizes]
    inverse_class = [class_of[G.inverse[r]] for r in reps]
    return ConjugacyData(class_of, reps, sizes, cents, inverse_class)


def power_class(G: FiniteGroup, c: int, k: int) -> int:
    """Class of g^k for g in class c."""
    cd = G.conjugacy()
    g = cd.class_reps[c]
    k %= G.element_order(g)
    x = G.identity
    for _ in range(k):
        x = G.mult[x][g]
    return cd.class_of[x]


# ---------------------------------------------------------------------------
# class functions
# ---------------------------------------------------------------------------

class ClassFunction:
    """Exact class function: one CycNum per conjugacy class."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        vals = [cyc(v) for v in values]
        if len(vals) != len(group.conjugacy()):
            raise ValueError("one value per conjugacy class required")
        self.values = tuple(vals)

    def _check(self, other: "ClassFunction") -> None:
        if self.group is not other.group:
            raise GroupMismatch("class functions on different groups")

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def scale(self, s):
        return ClassFunction(self.group, [a * s for a in self.values])

    def pointwise(self, other: "ClassFunction") -> "ClassFunction":
        """Tensor-product character: multiply values classwise."""
        self._check(other)
        return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])

    def adams(self, k: int) -> "ClassFunction":
        """Adams operation: value at c becomes the value at the class of g^k."""
        G = self.group
        return ClassFunction(G, [self.values[power_class(G, c, k)]
                                 for c in range(len(self.values))])

    def at_identity(self):
        return self.values[self.group.conjugacy().class_of[self.group.identity]]

    def __eq__(self, other):
        return (isinstance(other, ClassFunction) and self.group is other.group
                and all(a == b for a, b in zip(self.values, other.values)))

    def __repr__(self):
        return f"ClassFunction({[str(v) for v in self.values]})"


def inner_product(f: ClassFunction, g: ClassFunction) -> CycNum:
    """<f,g> = (1/|G|) sum_x f(x) g(x^-1), evaluated classwise."""
    f._check(g)
    G = f.group
    cd = G.conjugacy()
    total = cyc(0)
    for c in range(len(cd)):
        w = Fraction(cd.class_sizes[c], G.order)
        total = total + f.values[c] * g.values[cd.inverse_class[c]] * w
    return total


def _structure_constants(G: FiniteGroup):
    """N[F][(D,E)] = #{(d,e) in D x E : d e = rep_F}, cached on the group."""
    if G._structure is not None:
        return G._structure
    cd = G.conjugacy()
    r = len(cd)
    maxpair = max(cd.class_sizes) ** 2
    if maxpair > CONVOLUTION_PAIR_BUDGET:
        raise BudgetExceeded(
            f"class-pair product {maxpair} exceeds {CONVOLUTION_PAIR_BUDGET}")
    table = [dict() for _ in range(r)]
    for f_idx in range(r):
        z = cd.class_reps[f_idx]
        row = table[f_idx]
        for x in range(G.order):
            d = cd.class_of[x]
            e = cd.class_of[G.mult[G.inverse[x]][z]]
            row[(d, e)] = row.get((d, e), 0) + 1
    G._structure = table
    return table


def convolution(f: ClassFunction, g: ClassFunction) -> ClassFunction:
    """(f*g)(x) = sum_y f(x y^-1) g(y), via class-sum structure constants."""
    f._check(g)
    G = f.group
    table = _structure_constants(G)
    r = len(G.conjugacy())
    out = []
    for f_idx in range(r):
        acc = cyc(0)
        for (d, e), count in table[f_idx].items():
            fv = f.values[d]
            gv = g.values[e]
            if fv == 0 or gv == 0:
                continue
            acc = acc + fv * gv * count
        out.append(acc)
    return ClassFunction(G, out)


def class_indicator(G: FiniteGroup, c: int) -> ClassFunction:
    """The function equal to 1 on class c and 0 elsewhere (class sum, as a function)."""
    r = len(G.conjugacy())
    return ClassFunction(G, [1 if i == c else 0 for i in range(r)])


def regular_character(G: FiniteGroup) -> ClassFunction:
    cd = G.conjugacy()
    e_cls = cd.class_of[G.identity]
    return ClassFunction(G, [G.order if c == e_cls else 0 for c in range(len(cd))])


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [1] * len(G.conjugacy()))


def defining_character(G: FiniteGroup) -> ClassFunction:
    """Trace of the 2x2 matrix model."""
    if G.matrix_model is None:
        raise ValueError("group has no matrix model")
    cd = G.conjugacy()
    return ClassFunction(G, [G.matrix_model[rep][0][0] + G.matrix_model[rep][1][1]
                             for rep in cd.class_reps])


# ---------------------------------------------------------------------------
# character tables
# ---------------------------------------------------------------------------

class CharacterTable:
    """Irreducible characters (rows) over Q(zeta_e), e the group exponent."""

    def __init__(self, group: FiniteGroup, rows: list[ClassFunction]):
        self.group = group
        self.irreducibles = rows
        self.degrees = [int(r.at_identity().as_rational()) for r in rows]

    def __len__(self):
        return len(self.irreducibles)

    def to_json(self) -> dict:
        return {
            "degrees": self.degrees,
            "table": [[v.to_json() for v in row.values] for row in self.irreducibles],
        }


def _canonical_key(values, exponent: int):
    out = []
    for v in values:
        emb = v.embed(exponent)
        out.append(tuple((c.numerator, c.denominator) for c in emb.coeffs))
    return tuple(out)


def _as_int(x: CycNum) -> int:
    r = x.as_rational()
    if r.denominator != 1:
        raise DiagonalizationFailure(f"expected integer, got {r}")
    return r.numerator


def character_table(G: FiniteGroup) -> CharacterTable:
    """Exact character table.

    Abelian groups are handled by simultaneous eigenspace splitting of the
    regular representation (class sums are the elements, eigenvalues are
    roots of unity).  Nonabelian groups are handled by exact tensor
    decomposition: a pool of known characters (trivial, conjugation,
    permutation actions, matrix-model trace, linear characters lifted from
    the abelianization) is closed under products, Adams operations and
    Sym^2/Lambda^2 while norm-1 remainders are split off.
    """
    if G.product_factors is not None:
        return _product_table(G)
    if G.is_abelian():
        rows = _abelian_table(G)
    else:
        rows = _peel_table(G)
    e = G.exponent()
    rows.sort(key=lambda cf: (int(cf.at_identity().as_rational()),
                              _canonical_key(cf.values, e)))
    table = CharacterTable(G, rows)
    _check_table(G, table)
    return table


def _check_table(G: FiniteGroup, table: CharacterTable) -> None:
    r = len(G.conjugacy())
    if len(table) != r:
        raise DiagonalizationFailure(f"found {len(table)} of {r} irreducibles")
    if sum(d * d for d in table.degrees) != G.order:
        raise DiagonalizationFailure("degree squares do not sum to |G|")
    for i, a in enumerate(table.irreducibles):
        for j in range(i, r):
            expected = 1 if i == j else 0
            if inner_product(a, table.irreducibles[j]) != expected:
                raise DiagonalizationFailure(f"rows {i},{j} not orthonormal")


def _abelian_generators(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    reached = {G.identity}
    for x in range(G.order):
        if x in reached:
            continue
        gens.append(x)
        grown = True
        while grown:
            grown = False
            for a in list(reached):
                for b in (G.mult[x][a], *[G.mult[g][a] for g in gens]):
                    if b not in reached:
                        reached.add(b)
                        grown = True
        if len(reached) == G.order:
            break
    return gens


def _abelian_table(G: FiniteGroup) -> list[ClassFunction]:
    """Simultaneous eigensplitting of the regular representation.

    Eigenvalues of multiplication by an order-o element are o-th roots of
    unity, so the candidate set is finite and the split is fully exact.
    """
    n = G.order
    e = G.exponent()
    one, zero = cyc(1), cyc(0)
    spaces = [[[one if i == j else zero for j in range(n)] for i in range(n)]]
    for g in _abelian_generators(G):
        o = G.element_order(g)
        roots = [CycNum.zeta(e, (e // o) * k) for k in range(o)]
        perm = [G.mult[g][j] for j in range(n)]  # e_j -> e_{g j}
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            found = 0
            for lam in roots:
                # kernel of (rho(g) - lam) restricted to span(basis)
                cols = []
                for w in basis:
                    img = [zero] * n
                    for j, c in enumerate(w):
                        if not (c == 0):
                            img[perm[j]] = img[perm[j]] + c
                    cols.append([img[i] - lam * w[i] for i in range(n)])
                mat = [[cols[k][i] for k in range(len(basis))] for i in range(n)]
                eigvecs = []
                for coeffs in linalg.nullspace(mat, one, zero):
                    vec = [zero] * n
                    for k, ck in enumerate(coeffs):
                        if not (ck == 0):
                            for i in range(n):
                                vec[i] = vec[i] + ck * basis[k][i]
                    eigvecs.append(vec)
                if eigvecs:
                    new_spaces.append(eigvecs)
                    found += len(eigvecs)
            if found != len(basis):
                raise DiagonalizationFailure("abelian eigensplit lost dimensions")
        spaces = new_spaces
    rows = []
    cd = G.conjugacy()
    for basis in spaces:
        if len(basis) != 1:
            raise DiagonalizationFailure("abelian splitting did not reach lines")
        v = basis[0]
        j0 = next(j for j, c in enumerate(v) if not (c == 0))
        # (rho(g)v)_i = v_{g^{-1} i}, so the eigenvalue is read off at i = j0
        values = [v[G.mult[G.inverse[rep]][j0]] / v[j0] for rep in cd.class_reps]
        rows.append(ClassFunction(G, values))
    return rows


def _conjugation_character(G: FiniteGroup) -> ClassFunction:
    cd = G.conjugacy()
    return ClassFunction(G, list(cd.centralizer_orders))


def _perm_character(G: FiniteGroup, action) -> ClassFunction:
    cd = G.conjugacy()
    vals = []
    for rep in cd.class_reps:
        row = action[rep]
        vals.append(sum(1 for p, q in enumerate(row) if p == q))
    return ClassFunction(G, vals)


def _commutator_subgroup(G: FiniteGroup) -> list[int]:
    n = G.order
    comms = set()
    for a in range(n):
        ai = G.inverse[a]
        for b in range(n):
            comms.add(G.mult[G.mult[a][b]][G.mult[ai][G.inverse[b]]])
    # close under multiplication
    members = set(comms) | {G.identity}
    frontier = list(members)
    while frontier:
        x = frontier.pop()
        for y in list(members):
            for z in (G.mult[x][y], G.mult[y][x]):
                if z not in members:
                    members.add(z)
                    frontier.append(z)
    return sorted(members)


def _linear_characters(G: FiniteGroup) -> list[ClassFunction]:
    """Lift the characters of G/[G,G]."""
    N = _commutator_subgroup(G)
    nset = set(N)
    coset_of = {}
    cosets = []
    for x in range(G.order):
        if x in coset_of:
            continue
        idx = len(cosets)
        members = sorted(G.mult[x][h] for h in N)
        for y in members:
            coset_of[y] = idx
        cosets.append(members[0])
    q = len(cosets)
    mult = [[coset_of[G.mult[cosets[i]][cosets[j]]] for j in range(q)] for i in range(q)]
    Q = FiniteGroup(mult, name=f"{G.name}/derived", validate=False)
    rows = _abelian_table(Q)
    cdQ = Q.conjugacy()
    cd = G.conjugacy()
    out = []
    for row in rows:
        vals = [row.values[cdQ.class_of[coset_of[rep]]] for rep in cd.class_reps]
        out.append(ClassFunction(G, vals))
    return out


def _peel_table(G: FiniteGroup) -> list[ClassFunction]:
    cd = G.conjugacy()
    r = len(cd)
    e = G.exponent()
    e_cls = cd.class_of[G.identity]

    irr: list[ClassFunction] = []
    seen: set = set()
    stash: list[ClassFunction] = []
    queue: deque[ClassFunction] = deque()

    def enqueue(cf: ClassFunction) -> None:
        key = _canonical_key(cf.values, e)
        if key not in seen:
            seen.add(key)
            queue.append(cf)

    def peel(cf: ClassFunction) -> ClassFunction:
        rem = cf
        for g in irr:
            m = inner_product(rem, g)
            mi = _as_int(m)
            if mi:
                rem = rem - g.scale(mi)
        return rem

    def add_irreducible(cf: ClassFunction) -> None:
        d = _as_int(cf.at_identity())
        if d < 0:
            cf = -cf
        irr.append(cf)
        # previously stalled remainders may now split further
        while stash:
            enqueue(stash.pop())

    # seeds
    enqueue(trivial_character(G))
    enqueue(_conjugation_character(G))
    for action in G.perm_actions:
        enqueue(_perm_character(G, action))
    if G.matrix_model is not None:
        enqueue(defining_character(G))
    for lin in _linear_characters(G):
        enqueue(lin)
    enqueue(regular_character(G))

    rounds = 0
    while sum(d * d for d in (int(x.at_identity().as_rational()) for x in irr)) < G.order:
        while queue:
            cf = queue.popleft()
            rem = peel(cf)
            if all(v == 0 for v in rem.values):
                continue
            norm = _as_int(inner_product(rem, rem))
            if norm == 1:
                add_irreducible(rem)
            else:
                stash.append(rem)
        done = sum(d * d for d in (int(x.at_identity().as_rational()) for x in irr))
        if done == G.order:
            break
        if len(irr) == r - 1:
            # the last irreducible is linearly determined by the regular character
            t = peel(regular_character(G))
            d2 = G.order - done
            d = isqrt(d2)
            if d * d != d2:
                raise DiagonalizationFailure("missing degree is not a perfect square")
            add_irreducible(ClassFunction(G, [v / d for v in t.values]))
            continue
        if _two_unknown_completion(G, irr, stash, done):
            continue
        rounds += 1
        if rounds > 12:
            raise DiagonalizationFailure(f"peeling stalled with {len(irr)} of {r}")
        # generation round: close the pool under products and Adams operations
        for a in list(irr):
            for b in list(irr):
                enqueue(a.pointwise(b))
            for s in list(stash):
                enqueue(a.pointwise(s))
        for a in list(irr) + list(stash):
            for k in range(2, min(e, 12)):
                enqueue(a.adams(k))
            sym = ClassFunction(G, [(a.values[c] * a.values[c] +
                                     a.values[power_class(G, c, 2)]) * Fraction(1, 2)
                                    for c in range(r)])
            alt = ClassFunction(G, [(a.values[c] * a.values[c] -
                                     a.values[power_class(G, c, 2)]) * Fraction(1, 2)
                                    for c in range(r)])
            enqueue(sym)
            enqueue(alt)
        while stash:
            enqueue(stash.pop())
    if len(irr) != r:
        raise DiagonalizationFailure(f"found {len(irr)} of {r} irreducibles")
    return irr


def _two_unknown_completion(G, irr, stash, done) -> bool:
    """Resolve a stall with exactly two missing irreducibles of distinct degree."""
    cd = G.conjugacy()
    r = len(cd)
    if len(irr) != r - 2:
        return False
    sums = [s for s in stash if _as_int(inner_product(s, s)) == 2]
    if not sums:
        return False
    s = sums[0]
    big_d = G.order - done
    s_e = _as_int(s.at_identity())
    # degrees da + db = +-s(e), da^2 + db^2 = big_d
    for sign in (1, -1):
        tot = sign * s_e
        disc = 2 * big_d - tot * tot
        if disc < 0:
            continue
        root = isqrt(disc)
        if root * root != disc or (tot + root) % 2:
            continue
        da, db = (tot + root) // 2, (tot - root) // 2
        if da <= 0 or db <= 0 or da == db:
            continue
        t = s if sign == 1 else -s
        from_reg = None
        reg = regular_character(G)
        rem = reg
        for g in irr:
            rem = rem - g.scale(_as_int(inner_product(reg, g)))
        from_reg = rem  # = da*alpha + db*beta
        alpha = ClassFunction(G, [(x - db * y) * Fraction(1, da - db)
                                  for x, y in zip(from_reg.values, t.values)])
        if _as_int(inner_product(alpha, alpha)) == 1 and _as_int(alpha.at_identity()) > 0:
            beta = t - alpha
            if _as_int(inner_product(beta, beta)) == 1:
                irr.append(alpha)
                irr.append(beta)
                stash.remove(s)
                return True
    return False


def _product_table(G: FiniteGroup) -> CharacterTable:
    """Character table of a direct product as the tensor of the factor tables."""
    A, B = G.product_factors
    ta, tb = A.character_table(), B.character_table()
    cd = G.conjugacy()
    cda, cdb = A.conjugacy(), B.conjugacy()
    nb = B.order
    rows = []
    for fa in ta.irreducibles:
        for fb in tb.irreducibles:
            vals = []
            for rep in cd.class_reps:
                a, b = divmod(rep, nb)
                vals.append(fa.values[cda.class_of[a]] * fb.values[cdb.class_of[b]])
            rows.append(ClassFunction(G, vals))
    e = G.exponent()
    rows.sort(key=lambda cf: (int(cf.at_identity().as_rational()),
                              _canonical_key(cf.values, e)))
    table = CharacterTable(G, rows)
    _check_table(G, table)
    return table


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _mat_mul(a, b):
    return [[a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]]]


def _mat_key(m):
    return tuple(x.key() for row in m for x in row)


def build_from_generators(gens, bound: int = 1000, name: str = "matrix-group") -> FiniteGroup:
    """Breadth-first closure of 2x2 determinant-1 cyclotomic matrices."""
    one = cyc(1)
    lcm_cond = 1
    for g in gens:
        for row in g:
            for x in row:
                c = cyc(x).conductor
                lcm_cond = lcm_cond * c // gcd(lcm_cond, c)
    embed = lambda m: [[cyc(x).embed(lcm_cond) for x in row] for row in m]
    idm = embed([[1, 0], [0, 1]])
    gens = [embed(g) for g in gens]
    for g in gens:
        d = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        if d.is_zero():
            raise NonInvertibleMatrix("generator has determinant 0")
        if d != one:
            raise NonInvertibleMatrix("generator determinant is not 1")
    elements = [idm]
    index = {_mat_key(idm): 0}
    parent: list[tuple[int, int]] = [(-1, -1)]  # (parent index, generator index)
    frontier = deque([0])
    while frontier:
        i = frontier.popleft()
        for gi, g in enumerate(gens):
            prod = _mat_mul(elements[i], g)
            key = _mat_key(prod)
            if key not in index:
                if len(elements) >= bound:
                    raise ClosureBoundExceeded(f"closure exceeded {bound} elements")
                index[key] = len(elements)
                elements.append(prod)
                parent.append((i, gi))
                frontier.append(index[key])
    n = len(elements)
    # right multiplication by each generator, as a permutation of element indices
    right = [[index[_mat_key(_mat_mul(elements[x], g))] for x in range(n)] for g in gens]
    # every element is parent * generator, so columns of the table fill in BFS order:
    # (a * parent_j) * gen = table column of j
    mult = [[0] * n for _ in range(n)]
    for a in range(n):
        mult[a][0] = a
    for j in range(1, n):
        p, gi = parent[j]
        rg = right[gi]
        col_p = p
        for a in range(n):
            mult[a][j] = rg[mult[a][col_p]]
    return FiniteGroup(mult, identity=0, matrix_model=elements, name=name)


def _cached_builtin(fn):
    cache: dict = {}

    def wrapper(*args):
        if args not in cache:
            cache[args] = fn(*args)
        return cache[args]

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_cached_builtin
def trivial_group() -> FiniteGroup:
    one = cyc(1)
    zero = cyc(0)
    return FiniteGroup([[0]], identity=0,
                       matrix_model=[[[one, zero], [zero, one]]], name="trivial")


@_cached_builtin
def cyclic_group(k: int) -> FiniteGroup:
    """Z/k as diag(zeta_k, zeta_k^-1) in SL2."""
    if k == 1:
        return trivial_group()
    return build_from_generators(
        [[[CycNum.zeta(k), cyc(0)], [cyc(0), CycNum.zeta(k, k - 1)]]],
        bound=k + 1, name=f"cyclic-{k}")


@_cached_builtin
def binary_dihedral(m: int) -> FiniteGroup:
    """Binary dihedral (dicyclic) group of order 4m."""
    a = [[CycNum.zeta(2 * m), cyc(0)], [cyc(0), CycNum.zeta(2 * m, 2 * m - 1)]]
    b = [[cyc(0), cyc(1)], [cyc(-1), cyc(0)]]
    return build_from_generators([a, b], bound=4 * m + 1, name=f"binary-dihedral-{m}")


@_cached_builtin
def binary_tetrahedral() -> FiniteGroup:
    i = CycNum.zeta(4)
    half = Fraction(1, 2)
    qi = [[i, cyc(0)], [cyc(0), -i]]
    omega = [[(i - 1) * half, (i + 1) * half], [(i - 1) * half, (-i - 1) * half]]
    return build_from_generators([qi, omega], bound=25, name="binary-tetrahedral")


@_cached_builtin
def binary_octahedral() -> FiniteGroup:
    i = CycNum.zeta(4).embed(8)
    half = Fraction(1, 2)
    qi = [[i, cyc(0)], [cyc(0), -i]]
    omega = [[(i - 1) * half, (i + 1) * half], [(i - 1) * half, (-i - 1) * half]]
    tau = [[CycNum.zeta(8), cyc(0)], [cyc(0), CycNum.zeta(8, 7)]]
    return build_from_generators([qi, omega, tau], bound=49, name="binary-octahedral")


@_cached_builtin
def binary_icosahedral() -> FiniteGroup:
    eps = [CycNum.zeta(5, j) for j in range(5)]
    root5 = eps[1] - eps[2] - eps[3] + eps[4]  # sqrt(5)
    s = [[eps[3], cyc(0)], [cyc(0), eps[2]]]
    t = [[(eps[4] - eps[1]) / root5, (eps[2] - eps[3]) / root5],
         [(eps[2] - eps[3]) / root5, (eps[1] - eps[4]) / root5]]
    return build_from_generators([s, t], bound=121, name="binary-icosahedral")


@_cached_builtin
def symmetric_group(n: int) -> FiniteGroup:
    """S_n on 0..n-1 with the natural permutation action attached."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mult = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    action = [list(p) for p in perms]
    return FiniteGroup(mult, labels=[str(p) for p in perms],
                       perm_actions=[action], name=f"S{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    na, nb = A.order, B.order
    mult = [[0] * (na * nb) for _ in range(na * nb)]
    for a1 in range(na):
        for b1 in range(nb):
            row = mult[a1 * nb + b1]
            ra, rb = A.mult[a1], B.mult[b1]
            for a2 in range(na):
                for b2 in range(nb):
                    row[a2 * nb + b2] = ra[a2] * nb + rb[b2]
    return FiniteGroup(mult, name=f"{A.name}x{B.name}", product_factors=(A, B))


_BUILTIN_DOC = {
    "trivial": trivial_group,
    "cyclic": cyclic_group,
    "binary-dihedral": binary_dihedral,
    "binary-tetrahedral": binary_tetrahedral,
    "binary-octahedral": binary_octahedral,
    "binary-icosahedral": binary_icosahedral,
    "symmetric": symmetric_group,
}


def builtin_group(spec: str) -> FiniteGroup:
    """Parse 'builtin:cyclic:3', 'cyclic:3', 'binary-icosahedral', ..."""
    parts = spec.split(":")
    if parts and parts[0] == "builtin":
        parts = parts[1:]
    if not parts or parts[0] not in _BUILTIN_DOC:
        raise ValueError(f"unknown builtin group {spec!r}")
    ctor = _BUILTIN_DOC[parts[0]]
    if len(parts) == 1:
        return ctor()
    return ctor(int(parts[1]))
