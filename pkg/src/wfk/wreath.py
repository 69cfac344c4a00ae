"""Wreath products G_n = Gamma^n x| S_n: types, classes, class functions,
Frobenius induction/restriction and the Heisenberg operators p_k(gamma).

Elements are pairs (g, s) with g an n-tuple of Gamma-indices and s a
permutation tuple (s[i] is the image of i).  Conjugacy classes are indexed by
partition-valued functions on the conjugacy classes of Gamma ("types").
Class-function operators evaluate Frobenius sums class-by-class with exact
centralizer weights; literal element loops are kept as oracles.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from .budget import BudgetExceeded, check_budget
from .exact import CycNum, cyc
from .groups import ClassFunction, FiniteGroup, GroupMismatch, inner_product

# ---------------------------------------------------------------------------
# partitions and types
# ---------------------------------------------------------------------------


def partitions_of(n: int) -> list[tuple[int, ...]]:
    """All partitions of n as weakly decreasing tuples."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            rec(remaining - p, p, prefix + [p])

    rec(n, n, [])
    return out


def partition_multiplicities(parts: tuple[int, ...]) -> dict[int, int]:
    m: dict[int, int] = {}
    for p in parts:
        m[p] = m.get(p, 0) + 1
    return m


class TypeFunction:
    """Partition-valued function on the conjugacy classes of Gamma.

    Stored as a sorted tuple of (class index, partition) pairs; classes with
    the empty partition are omitted, so equal types compare equal.
    """

    __slots__ = ("classes",)

    def __init__(self, pairs):
        cleaned = tuple(sorted((c, tuple(sorted(p, reverse=True)))
                               for c, p in pairs if len(p) > 0))
        object.__setattr__(self, "classes", cleaned)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("TypeFunction is immutable")

    def size(self) -> int:
        return sum(sum(p) for _, p in self.classes)

    def partition(self, c: int) -> tuple[int, ...]:
        for ci, p in self.classes:
            if ci == c:
                return p
        return ()

    def union(self, other: "TypeFunction") -> "TypeFunction":
        merged: dict[int, list[int]] = {}
        for c, p in self.classes + other.classes:
            merged.setdefault(c, []).extend(p)
        return TypeFunction(merged.items())

    def inverse(self, inverse_class) -> "TypeFunction":
        """Type of a^-1: relabel each class by its inverse class."""
        return TypeFunction((inverse_class[c], p) for c, p in self.classes)

    def total_length(self) -> int:
        return sum(len(p) for _, p in self.classes)

    def __eq__(self, other):
        return isinstance(other, TypeFunction) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __repr__(self):
        inner = ", ".join(f"{c}:{list(p)}" for c, p in self.classes)
        return f"Type({inner})"

    def to_json(self) -> dict:
        return {"classes": {str(c): list(p) for c, p in self.classes}}

    @staticmethod
    def from_json(data: dict) -> "TypeFunction":
        return TypeFunction((int(c), tuple(p)) for c, p in data["classes"].items())


def enumerate_types(G: FiniteGroup, n: int) -> list[TypeFunction]:
    """All types of total size n over the classes of G, duplicate-free."""
    r = len(G.conjugacy())
    out: list[TypeFunction] = []

    def rec(c, remaining, acc):
        if c == r - 1:
            for p in partitions_of(remaining):
                out.append(TypeFunction(acc + [(c, p)]))
            return
        for k in range(remaining, -1, -1):
            for p in partitions_of(k):
                rec(c + 1, remaining - k, acc + [(c, p)])

    if r == 0:
        return [TypeFunction([])] if n == 0 else []
    rec(0, n, [])
    return out


def centralizer_order(G: FiniteGroup, rho: TypeFunction) -> int:
    """Z_rho = prod_c zeta_c^{l(rho(c))} prod_r r^{m_r} m_r!  (gated in the
    test suite against literal centralizer counts in the explicit group)."""
    cd = G.conjugacy()
    z = 1
    for c, parts in rho.classes:
        zc = cd.centralizer_orders[c]
        z *= zc ** len(parts)
        for r, m in partition_multiplicities(parts).items():
            z *= (r ** m) * _factorial(m)
    return z


def _factorial(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# wreath elements
# ---------------------------------------------------------------------------

class WreathElement(NamedTuple):
    g: tuple[int, ...]
    s: tuple[int, ...]


def perm_inverse(s: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(s)
    for i, si in enumerate(s):
        inv[si] = i
    return tuple(inv)


def wreath_mult(G: FiniteGroup, a: WreathElement, b: WreathElement) -> WreathElement:
    """(g,s)(h,t) = (g . s(h), st) with s(h)_i = h_{s^-1(i)}."""
    sinv = perm_inverse(a.s)
    g = tuple(G.mult[a.g[i]][b.g[sinv[i]]] for i in range(len(a.g)))
    s = tuple(a.s[b.s[i]] for i in range(len(a.s)))
    return WreathElement(g, s)


def wreath_inverse(G: FiniteGroup, a: WreathElement) -> WreathElement:
    sinv = perm_inverse(a.s)
    g = tuple(G.inverse[a.g[a.s[i]]] for i in range(len(a.g)))
    return WreathElement(g, sinv)


def wreath_identity(G: FiniteGroup, n: int) -> WreathElement:
    return WreathElement((G.identity,) * n, tuple(range(n)))


def _cycles(s: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(s)
    cycles = []
    for start in range(len(s)):
        if seen[start]:
            continue
        cyc_ = [start]
        seen[start] = True
        j = s[start]
        while j != start:
            cyc_.append(j)
            seen[j] = True
            j = s[j]
        cycles.append(cyc_)
    return cycles


def type_of(G: FiniteGroup, n: int, a: WreathElement) -> TypeFunction:
    """Cycle decomposition plus cycle-products: the conjugacy invariant."""
    cd = G.conjugacy()
    acc: dict[int, list[int]] = {}
    for cyc_ in _cycles(a.s):
        prod = G.identity
        for i in cyc_:  # g_{i_r} ... g_{i_1} applied left to right on indices
            prod = G.mult[a.g[i]][prod]
        acc.setdefault(cd.class_of[prod], []).append(len(cyc_))
    return TypeFunction(acc.items())


def representative_of_type(G: FiniteGroup, n: int, rho: TypeFunction) -> WreathElement:
    """Canonical element: consecutive cycles, class representative on the
    first letter of each cycle."""
    cd = G.conjugacy()
    g = [G.identity] * n
    s = list(range(n))
    pos = 0
    for c, parts in rho.classes:
        for r in parts:
            letters = list(range(pos, pos + r))
            for i in range(r):
                s[letters[i]] = letters[(i + 1) % r]
            g[letters[0]] = cd.class_reps[c]
            pos += r
    assert pos == rho.size() <= n
    return WreathElement(tuple(g), tuple(s))


# ---------------------------------------------------------------------------
# symbolic level view and the explicit group
# ---------------------------------------------------------------------------

class WreathLevel:
    """Symbolic view of Gamma_n: types, sizes and on-demand element loops."""

    def __init__(self, G: FiniteGroup, n: int):
        self.group = G
        self.n = n
        self.order = (G.order ** n) * _factorial(n)
        self.types = enumerate_types(G, n)
        self.type_index = {t: i for i, t in enumerate(self.types)}
        self._class_elements: dict[TypeFunction, list[WreathElement]] = {}

    def z(self, rho: TypeFunction) -> int:
        return centralizer_order(self.group, rho)

    def class_size(self, rho: TypeFunction) -> int:
        z = self.z(rho)
        assert self.order % z == 0
        return self.order // z

    def elements(self) -> Iterator[WreathElement]:
        G = self.group
        for s in itertools.permutations(range(self.n)):
            for g in itertools.product(range(G.order), repeat=self.n):
                yield WreathElement(g, s)

    def class_elements(self, rho: TypeFunction) -> list[WreathElement]:
        """Conjugation orbit of the canonical representative."""
        if rho in self._class_elements:
            return self._class_elements[rho]
        check_budget(self.order, f"class orbit in level {self.n}")
        G = self.group
        rep = representative_of_type(G, self.n, rho)
        seen = {rep}
        for y in self.elements():
            x = wreath_mult(G, wreath_mult(G, y, rep), wreath_inverse(G, y))
            seen.add(x)
        out = sorted(seen)
        assert len(out) == self.class_size(rho)
        self._class_elements[rho] = out
        return out


_LEVEL_CACHE: dict[tuple[int, int], WreathLevel] = {}
_GROUP_REFS: list[FiniteGroup] = []


def wreath_level(G: FiniteGroup, n: int) -> WreathLevel:
    key = (id(G), n)
    if key not in _LEVEL_CACHE:
        _GROUP_REFS.append(G)
        _LEVEL_CACHE[key] = WreathLevel(G, n)
    return _LEVEL_CACHE[key]


_EXPLICIT_TABLE_LIMIT = 8000  # mult-table memory ceiling
_BUILD_CACHE: dict[tuple[int, int], FiniteGroup] = {}


def build_wreath(G: FiniteGroup, n: int) -> FiniteGroup:
    """Explicit multiplication-table model of Gamma_n, with the natural
    permutation actions attached and the element list stored on the result."""
    key = (id(G), n)
    if key in _BUILD_CACHE:
        return _BUILD_CACHE[key]
    order = (G.order ** n) * _factorial(n)
    check_budget(order, f"build_wreath({G.name}, {n})")
    check_budget(order, "explicit wreath table", limit=_EXPLICIT_TABLE_LIMIT)
    perms = list(itertools.permutations(range(n)))
    gparts = list(itertools.product(range(G.order), repeat=n))
    nP, nG = len(perms), len(gparts)
    # element index layout: elem (g, s) at s_idx * nG + g_idx; itertools.product
    # varies the last coordinate fastest, so g_idx = sum g_i |Gamma|^(n-1-i)
    elem_list = [WreathElement(gparts[i % nG], perms[i // nG]) for i in range(order)]

    gm = G.np_mult()
    H = np.array(gparts, dtype=np.int64).reshape(nG, max(n, 1))
    perm_index = {p: i for i, p in enumerate(perms)}
    comp = np.array([[perm_index[tuple(p[q[i]] for i in range(n))] for q in perms]
                     for p in perms], dtype=np.int64)
    weights = np.array([G.order ** (n - 1 - i) for i in range(n)], dtype=np.int64)

    mult = np.empty((order, order), dtype=np.int64)
    cols_t = np.arange(nP, dtype=np.int64)
    for si, s in enumerate(perms):
        sinv = perm_inverse(s)
        Hperm = H[:, list(sinv)] if n else H      # s(h) for every h-block
        res_perm = comp[si]                       # index of s*t for every t
        for gi, g in enumerate(gparts):
            row_elem = si * nG + gi
            if n:
                garr = np.array(g, dtype=np.int64)
                prod_g = gm[garr[None, :], Hperm]  # (nG, n)
                gnums = prod_g.astype(np.int64) @ weights
            else:
                gnums = np.zeros(1, dtype=np.int64)
            block = res_perm[:, None] * nG + gnums[None, :]  # (nP, nG)
            mult[row_elem] = block.reshape(-1)
    table = mult.tolist()
    # natural action on n x |Gamma| points and the lifted S_n action
    points = [(i, x) for i in range(n) for x in range(G.order)]
    pt_index = {p: k for k, p in enumerate(points)}
    natural = []
    top = []
    for a in elem_list:
        row = [0] * len(points)
        for (i, x), k in pt_index.items():
            row[k] = pt_index[(a.s[i], G.mult[a.g[a.s[i]]][x])]
        natural.append(row)
        top.append(list(a.s) + list(range(n, len(points))))
    W = FiniteGroup(table, name=f"{G.name}_wr_S{n}",
                    perm_actions=[natural, top] if n >= 1 else [])
    W.wreath_elements = elem_list
    W.wreath_base = G
    W.wreath_n = n
    _BUILD_CACHE[key] = W
    return W


def wreath_class_types(W: FiniteGroup) -> list[TypeFunction]:
    """Type of each conjugacy class of an explicit wreath group."""
    G, n = W.wreath_base, W.wreath_n
    cd = W.conjugacy()
    return [type_of(G, n, W.wreath_elements[rep]) for rep in cd.class_reps]


# ---------------------------------------------------------------------------
# wreath class functions
# ---------------------------------------------------------------------------

class WreathClassFunction:
    """Class function on Gamma_n stored by type; zero values are pruned."""

    __slots__ = ("group", "n", "values")

    def __init__(self, group: FiniteGroup, n: int, values: dict):
        self.group = group
        self.n = n
        vals = {}
        for rho, v in values.items():
            cv = cyc(v)
            if not cv.is_zero():
                vals[rho] = cv
        self.values = vals

    def value(self, rho: TypeFunction) -> CycNum:
        return self.values.get(rho, cyc(0))

    def _check(self, other: "WreathClassFunction"):
        # an identically-zero function is a universal zero across levels
        if self.group is not other.group or (
                self.n != other.n and self.values and other.values):
            raise GroupMismatch("wreath class functions on different levels")

    def __add__(self, other):
        self._check(other)
        if not self.values:
            return other
        if not other.values:
            return self
        keys = set(self.values) | set(other.values)
        return WreathClassFunction(
            self.group, self.n, {k: self.value(k) + other.value(k) for k in keys})

    def __neg__(self):
        return WreathClassFunction(self.group, self.n,
                                   {k: -v for k, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return WreathClassFunction(self.group, self.n,
                                   {k: v * s for k, v in self.values.items()})

    def pointwise(self, other):
        self._check(other)
        if not self.values or not other.values:
            return WreathClassFunction(self.group, self.n, {})
        return WreathClassFunction(
            self.group, self.n,
            {k: v * other.value(k) for k, v in self.values.items() if k in other.values})

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        if not isinstance(other, WreathClassFunction):
            return NotImplemented
        if self.group is not other.group:
            return False
        if not self.values and not other.values:
            return True
        if self.n != other.n:
            return False
        keys = set(self.values) | set(other.values)
        return all(self.value(k) == other.value(k) for k in keys)

    def __repr__(self):
        return f"WCF(n={self.n}, {self.values})"


def wcf_zero(G: FiniteGroup, n: int) -> WreathClassFunction:
    return WreathClassFunction(G, n, {})


def wcf_indicator(G: FiniteGroup, n: int, rho: TypeFunction) -> WreathClassFunction:
    return WreathClassFunction(G, n, {rho: 1})


def wreath_pairing(f: WreathClassFunction, g: WreathClassFunction) -> CycNum:
    """<f,g> = sum_rho Z_rho^-1 f(rho) g(rho*)."""
    f._check(g)
    cd = f.group.conjugacy()
    total = cyc(0)
    for rho, v in f.values.items():
        w = g.value(rho.inverse(cd.inverse_class))
        if not w.is_zero():
            total = total + v * w * Fraction(1, centralizer_order(f.group, rho))
    return total


def wcf_from_class_function(W: FiniteGroup, f: ClassFunction) -> WreathClassFunction:
    types = wreath_class_types(W)
    return WreathClassFunction(W.wreath_base, W.wreath_n,
                               {t: f.values[c] for c, t in enumerate(types)})


def wcf_to_class_function(W: FiniteGroup, f: WreathClassFunction) -> ClassFunction:
    types = wreath_class_types(W)
    return ClassFunction(W, [f.value(t) for t in types])


# ---------------------------------------------------------------------------
# sigma, induction, restriction, Heisenberg operators
# ---------------------------------------------------------------------------

def sigma_n(G: FiniteGroup, n: int, gamma: ClassFunction) -> WreathClassFunction:
    """Supported on n-cycle types; value n*gamma(c) on the type [c -> (n)]."""
    if gamma.group is not G:
        raise GroupMismatch("gamma must be a class function on the base group")
    vals = {}
    for c in range(len(G.conjugacy())):
        rho = TypeFunction([(c, (n,))])
        vals[rho] = gamma.values[c] * n
    return WreathClassFunction(G, n, vals)


def _splits(rho: TypeFunction, n: int, G: FiniteGroup):
    """All (alpha, beta) with alpha u beta = rho and |alpha| = n."""
    per_class = []
    for c, parts in rho.classes:
        mults = sorted(partition_multiplicities(parts).items())
        choices = []
        ranges = [range(m + 1) for _, m in mults]
        for takes in itertools.product(*ranges):
            alpha = []
            beta = []
            for (r, m), k in zip(mults, takes):
                alpha.extend([r] * k)
                beta.extend([r] * (m - k))
            choices.append((c, tuple(alpha), tuple(beta)))
        per_class.append(choices)
    for combo in itertools.product(*per_class):
        alpha = TypeFunction((c, a) for c, a, _ in combo)
        if alpha.size() != n:
            continue
        beta = TypeFunction((c, b) for c, _, b in combo)
        yield alpha, beta


def induce(G: FiniteGroup, n: int, m: int, f: WreathClassFunction,
           g: WreathClassFunction) -> WreathClassFunction:
    """Frobenius induction of f (x) g from Gamma_n x Gamma_m to Gamma_{n+m}.

    (Ind h)(x) = (1/|H|) sum_{y : y^-1 x y in H} h(y^-1 x y), evaluated
    class-by-class: classes of H are pairs of types fusing into their union,
    with exact weight Z_rho / (Z_alpha Z_beta).
    """
    if f.n != n or g.n != m:
        raise GroupMismatch("levels do not match the stated degrees")
    out: dict[TypeFunction, CycNum] = {}
    for rho in wreath_level(G, n + m).types:
        z_rho = centralizer_order(G, rho)
        acc = cyc(0)
        for alpha, beta in _splits(rho, n, G):
            fv = f.value(alpha)
            if fv.is_zero():
                continue
            gv = g.value(beta)
            if gv.is_zero():
                continue
            w = Fraction(z_rho, centralizer_order(G, alpha) * centralizer_order(G, beta))
            acc = acc + fv * gv * w
        if not acc.is_zero():
            out[rho] = acc
    return WreathClassFunction(G, n + m, out)


def induce_bruteforce(G: FiniteGroup, n: int, m: int, f: WreathClassFunction,
                      g: WreathClassFunction) -> WreathClassFunction:
    """Literal element-loop Frobenius sum; the oracle for `induce`."""
    N = n + m
    lvl = wreath_level(G, N)
    check_budget(lvl.order, "brute-force induction")
    h_order = (G.order ** n) * _factorial(n) * (G.order ** m) * _factorial(m)
    out = {}
    for rho in lvl.types:
        x = representative_of_type(G, N, rho)
        total = cyc(0)
        for y in lvl.elements():
            z = wreath_mult(G, wreath_mult(G, wreath_inverse(G, y), x), y)
            if all(z.s[i] < n for i in range(n)):
                left = WreathElement(z.g[:n], z.s[:n])
                right = WreathElement(z.g[n:], tuple(v - n for v in z.s[n:]))
                fv = f.value(type_of(G, n, left))
                if fv.is_zero():
                    continue
                gv = g.value(type_of(G, m, right))
                if gv.is_zero():
                    continue
                total = total + fv * gv
        if not total.is_zero():
            out[rho] = total * Fraction(1, h_order)
    return WreathClassFunction(G, N, out)


def restrict(G: FiniteGroup, n: int, m: int,
             h: WreathClassFunction) -> dict[tuple[TypeFunction, TypeFunction], CycNum]:
    """Restriction to Gamma_n x Gamma_m as a function on pairs of types."""
    if h.n != n + m:
        raise GroupMismatch("level mismatch in restriction")
    out = {}
    for alpha in enumerate_types(G, n):
        for beta in enumerate_types(G, m):
            v = h.value(alpha.union(beta))
            if not v.is_zero():
                out[(alpha, beta)] = v
    return out


class HeisenbergOperator:
    """p_k(gamma): creation (k>0) by induction against sigma_k(gamma),
    annihilation (k<0) by restriction paired against sigma_{-k}(gamma)."""

    def __init__(self, G: FiniteGroup, k: int, gamma: ClassFunction):
        if k == 0:
            raise ValueError("mode 0 is not a Heisenberg operator")
        self.group = G
        self.k = k
        self.gamma = gamma

    def apply(self, f: WreathClassFunction) -> WreathClassFunction:
        G, k = self.group, self.k
        if f.group is not G:
            raise GroupMismatch("operator and argument on different base groups")
        cd = G.conjugacy()
        if k > 0:
            return induce(G, k, f.n, sigma_n(G, k, self.gamma), f)
        npos = -k
        if f.n < npos:
            return wcf_zero(G, 0)
        out: dict[TypeFunction, CycNum] = {}
        for beta in wreath_level(G, f.n - npos).types:
            acc = cyc(0)
            for c in range(len(cd)):
                gc = self.gamma.values[c]
                if gc.is_zero():
                    continue
                cyc_type = TypeFunction([(cd.inverse_class[c], (npos,))])
                v = f.value(cyc_type.union(beta))
                if v.is_zero():
                    continue
                acc = acc + gc * v * Fraction(1, cd.centralizer_orders[c])
            if not acc.is_zero():
                out[beta] = acc
        return WreathClassFunction(G, f.n - npos, out)


def heisenberg_p(G: FiniteGroup, k: int, gamma: ClassFunction) -> HeisenbergOperator:
    return HeisenbergOperator(G, k, gamma)


def p_minus_adjoint(G: FiniteGroup, n: int, gamma: ClassFunction,
                    f: WreathClassFunction) -> WreathClassFunction:
    """p_{-n}(gamma) computed purely as the adjoint of p_n(gamma): solve
    <result, h> = <f, p_n h> over the indicator basis of the target level."""
    if f.n < n:
        return wcf_zero(G, 0)
    target = wreath_level(G, f.n - n).types
    up = heisenberg_p(G, n, gamma)
    out = {}
    for rho in target:
        h = wcf_indicator(G, f.n - n, rho)
        val = wreath_pairing(f, up.apply(h))
        # <e_rho, e_rho> = 1/Z_rho at the inverse type; solve for the coefficient
        z = centralizer_order(G, rho)
        cd = G.conjugacy()
        out[rho.inverse(cd.inverse_class)] = val * z
    return WreathClassFunction(G, f.n - n, out)


# ---------------------------------------------------------------------------
# eta/epsilon characters and the weighted form
# ---------------------------------------------------------------------------

def eta_eps_characters(G: FiniteGroup, n: int, gamma: ClassFunction,
                       signed: bool) -> WreathClassFunction:
    """Value at rho: prod over cycles of gamma(cycle-product class), times
    sign(s) = (-1)^(n - #cycles) when signed.  The multiplicative rule is the
    extension used for virtual characters."""
    out = {}
    for rho in wreath_level(G, n).types:
        v = cyc(1)
        for c, parts in rho.classes:
            gc = gamma.values[c]
            for _ in parts:
                v = v * gc
        if signed and (n - rho.total_length()) % 2:
            v = -v
        if not v.is_zero():
            out[rho] = v
    return WreathClassFunction(G, n, out)


def weighted_form(G: FiniteGroup, n: int, f: WreathClassFunction,
                  g: WreathClassFunction, xi: ClassFunction) -> CycNum:
    """<f,g>_xi = <eta_n(xi) (x) f, g> on Gamma_n."""
    eta = eta_eps_characters(G, n, xi, signed=False)
    return wreath_pairing(eta.pointwise(f), g)


def heisenberg_check(G: FiniteGroup, modes: int, levels: int):
    """[p_k(gamma), p_l(gamma')] = -k d_{k,-l} <gamma, gamma'> Id, checked on
    the indicator basis of every level <= `levels` for all |k|, |l| <= modes
    and all pairs of irreducible characters."""
    from .report import VerificationReport

    report = VerificationReport(f"heisenberg({G.name}, modes<={modes}, levels<={levels})")
    gammas = G.character_table().irreducibles
    mode_list = [k for k in range(-modes, modes + 1) if k != 0]
    for gi, ga in enumerate(gammas):
        for gj, gb in enumerate(gammas):
            scal = inner_product(ga, gb)
            for k in mode_list:
                for l in mode_list:
                    pk = heisenberg_p(G, k, ga)
                    pl = heisenberg_p(G, l, gb)
                    for m in range(levels + 1):
                        for rho in wreath_level(G, m).types:
                            f = wcf_indicator(G, m, rho)
                            br = pk.apply(pl.apply(f)) - pl.apply(pk.apply(f))
                            expected = f.scale(-k * scal) if k == -l else wcf_zero(G, m)
                            report.add(
                                f"[p_{k}(g{gi}), p_{l}(g{gj})] level {m} {rho}",
                                br.values, expected.values, br == expected)
    return report
