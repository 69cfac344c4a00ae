"""The characteristic map: the isometric ring isomorphism from wreath-product
class functions to the colored Fock space, plus the convolution operators it
transports (the cubic identity, the convolution Virasoro bracket, filtered
convolution and its boundary-operator correspondence).

Every identity here is checked between two independent code paths: Frobenius
sums and table convolution on the group side versus symbolic mode algebra on
the Fock side; only the exact scalar layer is shared.
"""

from __future__ import annotations

from fractions import Fraction

from .budget import check_budget
from .exact import CycNum, cyc
from .groups import ClassFunction, FiniteGroup, GroupMismatch, convolution, trivial_group
from .fock import ColorSpace, FockOperator, FockVector, annihilate, create, vacuum
from .report import VerificationReport
from .wreath import (
    TypeFunction,
    WreathClassFunction,
    centralizer_order,
    representative_of_type,
    type_of,
    wcf_indicator,
    wcf_zero,
    wreath_inverse,
    wreath_level,
    wreath_mult,
)


class ZeroPrefactor(ValueError):
    """The bracket prefactor vanishes for this (mode, character, class) probe."""


# ---------------------------------------------------------------------------
# the colored Fock space of a base group
# ---------------------------------------------------------------------------

def colored_space(G: FiniteGroup) -> ColorSpace:
    """One even color per conjugacy class; contraction kappa(c, c') =
    zeta_c when c' is the inverse class of c, else 0."""
    cd = G.conjugacy()
    r = len(cd)
    kappa = [[cd.centralizer_orders[c] if cd.inverse_class[c] == b else 0
              for b in range(r)] for c in range(r)]
    return ColorSpace([f"c{c}" for c in range(r)], [0] * r, kappa,
                      name=f"colors({G.name})")


def type_monomial(rho: TypeFunction) -> tuple:
    return tuple(sorted((r, c) for c, parts in rho.classes for r in parts))


def monomial_type(mono: tuple) -> TypeFunction:
    acc: dict[int, list[int]] = {}
    for r, c in mono:
        acc.setdefault(c, []).append(r)
    return TypeFunction(acc.items())


def ch(G: FiniteGroup, n: int, f: WreathClassFunction) -> FockVector:
    """ch(f) = sum_rho Z_rho^-1 f(rho) p_rho: an isometry onto weight n."""
    space = colored_space(G)
    terms = {}
    for rho, v in f.values.items():
        terms[type_monomial(rho)] = v * Fraction(1, centralizer_order(G, rho))
    return FockVector(space, terms)


def ch_inverse(G: FiniteGroup, n: int, v: FockVector) -> WreathClassFunction:
    vals = {}
    for mono, coeff in v.terms.items():
        rho = monomial_type(mono)
        vals[rho] = cyc(coeff) * centralizer_order(G, rho)
    return WreathClassFunction(G, n, vals)


def colored_pairing(G: FiniteGroup, u: FockVector, v: FockVector) -> CycNum:
    """<p_rho, p_sigma> = Z_rho when sigma is the inverse type of rho, else 0."""
    cd = G.conjugacy()
    total = cyc(0)
    for mono, cu in u.terms.items():
        rho = monomial_type(mono)
        star = type_monomial(rho.inverse(cd.inverse_class))
        cv = v.terms.get(star, 0)
        if cv != 0:
            total = total + cyc(cu) * cv * centralizer_order(G, rho)
    return total


def colored_creation_op(G: FiniteGroup, k: int, gamma: ClassFunction) -> FockOperator:
    """Multiplication by p_{-k}(gamma) = sum_c (gamma(c)/zeta_c) a_{-k}(c)."""
    cd = G.conjugacy()
    space = colored_space(G)
    coeffs = [gamma.values[c] * Fraction(1, cd.centralizer_orders[c])
              for c in range(len(cd))]

    def fn(v: FockVector) -> FockVector:
        out = FockVector(space, {})
        for c, cf in enumerate(coeffs):
            if not cf.is_zero():
                out = out + create(space, k, c, v).scale(cf)
        return out

    return FockOperator(fn, None, f"p[-{k}]")


def colored_annihilation_op(G: FiniteGroup, k: int, gamma: ClassFunction) -> FockOperator:
    """Contraction of the generator (k, c') with weight k * gamma(c'^-1)."""
    cd = G.conjugacy()
    space = colored_space(G)
    weights = [gamma.values[cd.inverse_class[b]] for b in range(len(cd))]
    return FockOperator(lambda v: annihilate(space, k, weights, 0, v), None, f"p[{k}]")


def fock_side_p(G: FiniteGroup, k: int, gamma: ClassFunction) -> FockOperator:
    """The Fock image of the wreath Heisenberg operator p_k(gamma)."""
    if k > 0:
        return colored_creation_op(G, k, gamma)
    if k < 0:
        return colored_annihilation_op(G, -k, gamma)
    raise ValueError("mode 0")


def exponential_classes(G: FiniteGroup, gamma: ClassFunction, signed: bool,
                        cutoff: int) -> list[FockVector]:
    """Weight coefficients of exp(sum_k c_k p_{-k}(gamma) z^k)|0> with
    c_k = (-1)^(k-1)/k when signed, else 1/k."""
    space = colored_space(G)
    coeffs = {k: (Fraction((-1) ** (k - 1), k) if signed else Fraction(1, k))
              for k in range(1, cutoff + 1)}
    ops = {k: colored_creation_op(G, k, gamma) for k in coeffs}
    by_weight = [vacuum(space)] + [FockVector(space, {}) for _ in range(cutoff)]
    term = [vacuum(space)] + [FockVector(space, {}) for _ in range(cutoff)]
    for j in range(1, cutoff + 1):
        new = [FockVector(space, {}) for _ in range(cutoff + 1)]
        for w0 in range(cutoff):
            if term[w0].is_zero():
                continue
            for k, ck in coeffs.items():
                if w0 + k > cutoff:
                    continue
                piece = ops[k].apply(term[w0]).scale(Fraction(ck, j))
                new[w0 + k] = new[w0 + k] + piece
        term = new
        for w in range(cutoff + 1):
            by_weight[w] = by_weight[w] + term[w]
    return by_weight


def verify_heisenberg_transport(G: FiniteGroup, n_cutoff: int) -> VerificationReport:
    """ch(p_k(gamma) f) = (Fock action) ch(f) over indicator bases with all
    levels kept within n_cutoff."""
    from .wreath import heisenberg_p

    report = VerificationReport(f"heisenberg-transport({G.name}, cutoff={n_cutoff})")
    gammas = G.character_table().irreducibles
    for k in range(1, n_cutoff + 1):
        for sign in (1, -1):
            mode = sign * k
            for gi, gamma in enumerate(gammas):
                op_group = heisenberg_p(G, mode, gamma)
                op_fock = fock_side_p(G, mode, gamma)
                for m in range(0, n_cutoff - k + 1):
                    src_level = m if mode > 0 else m + k
                    if src_level > n_cutoff - max(mode, 0):
                        continue
                    for rho in wreath_level(G, src_level).types:
                        f = wcf_indicator(G, src_level, rho)
                        lhs_w = op_group.apply(f)
                        lhs = ch(G, lhs_w.n, lhs_w) if not lhs_w.is_zero() else None
                        rhs = op_fock.apply(ch(G, src_level, f))
                        equal = (rhs.is_zero() if lhs is None else lhs == rhs)
                        report.add(f"p_{mode}(gamma{gi}) on {rho}", lhs, rhs, equal)
    return report


# ---------------------------------------------------------------------------
# convolution operators on the group side
# ---------------------------------------------------------------------------

def k_class_type(G: FiniteGroup, c: int, i: int, n: int) -> TypeFunction | None:
    """Type of K_i(c, n): c gets the one-part partition (i+1), the identity
    class the partition (1^(n-i-1)); None when the class is empty."""
    if n - i - 1 < 0:
        return None
    cd = G.conjugacy()
    e_cls = cd.class_of[G.identity]
    pairs: dict[int, list[int]] = {}
    pairs.setdefault(c, []).append(i + 1)
    pairs.setdefault(e_cls, []).extend([1] * (n - i - 1))
    return TypeFunction(pairs.items())


def convolve_by_class(G: FiniteGroup, n: int, kappa: TypeFunction,
                      f: WreathClassFunction) -> WreathClassFunction:
    """(K * f)(x) = sum_{y in K} f(x y^-1), evaluated per class of Gamma_n."""
    lvl = wreath_level(G, n)
    members = lvl.class_elements(kappa)
    out = {}
    for rho in lvl.types:
        z = representative_of_type(G, n, rho)
        acc = cyc(0)
        for y in members:
            v = f.value(type_of(G, n, wreath_mult(G, z, wreath_inverse(G, y))))
            if not v.is_zero():
                acc = acc + v
        if not acc.is_zero():
            out[rho] = acc
    return WreathClassFunction(G, n, out)


def delta_op(G: FiniteGroup, n: int, c: int, i: int = 1):
    """Delta_i(K_c) on class functions of Gamma_n: convolution with K_i(c,n)."""
    if i not in (0, 1, 2):
        raise ValueError("only i = 0, 1, 2 are exposed")
    kappa = k_class_type(G, c, i, n)

    def fn(f: WreathClassFunction) -> WreathClassFunction:
        if f.is_zero():
            return f
        if f.n != n:
            raise GroupMismatch(f"operator built for level {n}, got {f.n}")
        if kappa is None:
            return wcf_zero(G, n)
        return convolve_by_class(G, n, kappa, f)

    return fn


def delta1(G: FiniteGroup, n: int, c: int):
    return delta_op(G, n, c, 1)


def delta1_explicit_group(W: FiniteGroup, c: int, i: int = 1) -> ClassFunction:
    """K_i(c, n) as a class-sum operator on an explicit wreath group: returns
    the indicator class function to convolve with (groups.convolution path)."""
    from .wreath import wreath_class_types
    G, n = W.wreath_base, W.wreath_n
    kappa = k_class_type(G, c, i, n)
    types = wreath_class_types(W)
    vals = [1 if (kappa is not None and t == kappa) else 0 for t in types]
    return ClassFunction(W, vals)


# ---------------------------------------------------------------------------
# the cubic identity (single color)
# ---------------------------------------------------------------------------

def cubic_formula(cutoff: int) -> FockOperator:
    """(1/2) sum_{n,m>0} (p_n p_m p_{-n-m} + p_{n+m} p_{-n} p_{-m}) in
    creation-positive labels, on the one-color space with kappa = 1."""
    T = trivial_group()
    space = colored_space(T)

    def fn(v: FockVector) -> FockVector:
        w = v.weight()
        out = FockVector(space, {})
        # split: annihilate a part n+m, create n and m
        for total in range(2, w + 1):
            killed = annihilate(space, total, [1], 0, v)
            if killed.is_zero():
                continue
            for n in range(1, total // 2 + 1):
                m = total - n
                piece = create(space, n, 0, create(space, m, 0, killed))
                # ordered double sum: (n,m) and (m,n) both occur unless n = m
                factor = Fraction(1, 2) * (1 if n == m else 2)
                out = out + piece.scale(factor)
        # join: annihilate parts n and m, create n+m
        for mono, coeff in v.terms.items():
            parts = [r for r, _ in mono]
            for a in range(len(parts)):
                for b in range(a + 1, len(parts)):
                    rest = [parts[t] for t in range(len(parts)) if t not in (a, b)]
                    joined = tuple(sorted((p, 0) for p in rest + [parts[a] + parts[b]]))
                    out = out + FockVector(space, {joined: coeff * parts[a] * parts[b]})
        return out

    return FockOperator(fn, max_weight=cutoff, name="cubic")


def verify_conv_cubic(n_max: int) -> VerificationReport:
    """ch-transported Delta_1 equals the cubic operator on every class of S_n."""
    T = trivial_group()
    report = VerificationReport(f"conv-cubic(n<={n_max})")
    for n in range(1, n_max + 1):
        op = delta1(T, n, 0)
        cubic = cubic_formula(n)
        for rho in wreath_level(T, n).types:
            f = wcf_indicator(T, n, rho)
            lhs = ch(T, n, op(f))
            rhs = cubic.apply(ch(T, n, f))
            report.add(f"S_{n} class {rho}", lhs, rhs, lhs == rhs)
    return report


# ---------------------------------------------------------------------------
# the convolution Virasoro bracket
# ---------------------------------------------------------------------------

class _GroupOp:
    """Linear operator on wreath class functions; applications are resolved
    through a per-indicator cache so nested brackets stay affordable."""

    def __init__(self, fn):
        self.fn = fn
        self._columns: dict = {}

    def _column(self, group, level, rho):
        key = (id(group), level, rho)
        if key not in self._columns:
            self._columns[key] = self.fn(wcf_indicator(group, level, rho))
        return self._columns[key]

    def __call__(self, f: WreathClassFunction) -> WreathClassFunction:
        if f.is_zero():
            return f
        out = wcf_zero(f.group, f.n)
        for rho, v in f.values.items():
            col = self._column(f.group, f.n, rho)
            if not col.is_zero():
                out = out + col.scale(v)
        return out

    def bracket(self, other):
        return _GroupOp(lambda f: self(other(f)) - other(self(f)))

    def scale(self, s):
        return _GroupOp(lambda f: self(f).scale(s))

    def __sub__(self, other):
        return _GroupOp(lambda f: self(f) - other(f))

    def __add__(self, other):
        return _GroupOp(lambda f: self(f) + other(f))


def _delta1_any_level(G: FiniteGroup, c: int) -> _GroupOp:
    def fn(f: WreathClassFunction) -> WreathClassFunction:
        if f.is_zero():
            return f
        return delta1(G, f.n, c)(f)

    return _GroupOp(fn)


def _p_op(G: FiniteGroup, k: int, gamma: ClassFunction) -> _GroupOp:
    from .wreath import heisenberg_p
    op = heisenberg_p(G, k, gamma)
    return _GroupOp(op.apply)


def fw_l_operator(G: FiniteGroup, c: int, n: int, gamma: ClassFunction,
                  degree: int, dop: _GroupOp | None = None) -> _GroupOp:
    """L_n(gamma) extracted from [Delta_1(K_c), p_n(gamma)] by the exact
    prefactor n |Gamma|^2 gamma(c^-1) / (zeta_c d_gamma^2)."""
    cd = G.conjugacy()
    gval = gamma.values[cd.inverse_class[c]]
    if n == 0 or gval.is_zero():
        raise ZeroPrefactor(f"prefactor vanishes for mode {n}, class {c}")
    pref = (cyc(n) * (G.order ** 2) * gval
            / (cd.centralizer_orders[c] * degree ** 2))
    if dop is None:
        dop = _delta1_any_level(G, c)
    pop = _p_op(G, n, gamma)
    inv = pref.inverse()
    return dop.bracket(pop).scale(inv)


def fw_virasoro_check(G: FiniteGroup, c: int, n_modes: int = 1,
                      m_levels: int = 4) -> VerificationReport:
    """Residuals of the Virasoro relations for the bracket-extracted L_n, with
    L_0 := (1/2)[L_1, L_-1]; checked on indicator bases of levels <= m_levels."""
    report = VerificationReport(
        f"fw-virasoro({G.name}, class {c}, modes<={n_modes}, levels<={m_levels})")
    table = G.character_table()
    dop = _delta1_any_level(G, c)
    ls = {}
    skipped = []
    for gi, gamma in enumerate(table.irreducibles):
        d = table.degrees[gi]
        for n in range(-n_modes, n_modes + 1):
            if n == 0:
                continue
            try:
                ls[(gi, n)] = fw_l_operator(G, c, n, gamma, d, dop)
            except ZeroPrefactor:
                skipped.append((gi, n))
    for gi, _ in enumerate(table.irreducibles):
        if (gi, 1) in ls and (gi, -1) in ls:
            ls[(gi, 0)] = ls[(gi, 1)].bracket(ls[(gi, -1)]).scale(Fraction(1, 2))
    for (gi, n) in skipped:
        report.add(f"mode {n} gamma{gi}", "skipped", "skipped", True,
                   note="zero prefactor; probe skipped")

    def check(op, expected, label):
        for m in range(0, m_levels + 1):
            for rho in wreath_level(G, m).types:
                f = wcf_indicator(G, m, rho)
                lhs = op(f)
                rhs = expected(f)
                report.add(f"{label} at level {m} on {rho}", lhs.values,
                           rhs.values, lhs == rhs)

    pairs = [(n, m) for n in range(-n_modes, n_modes + 1)
             for m in range(-n_modes, n_modes + 1)]
    gammas = range(len(table.irreducibles))
    for gi in gammas:
        for gj in gammas:
            for n, m in pairs:
                if (gi, n) not in ls or (gj, m) not in ls:
                    continue
                if (n, m) == (1, -1) and gi == gj:
                    continue  # definitional for L_0
                br = ls[(gi, n)].bracket(ls[(gj, m)])
                if gi != gj or n == m:
                    expected = _GroupOp(lambda f: f.scale(0))
                elif (gi, n + m) in ls:
                    target = ls[(gi, n + m)]
                    expected = _GroupOp(
                        lambda f, t=target, nn=n, mm=m: t(f).scale(nn - mm))
                elif n + m == 0:
                    central = -Fraction(n ** 3 - n, 12)
                    expected = _GroupOp(lambda f, s=central: f.scale(s))
                else:
                    continue
                check(br, expected, f"[L_{n}(g{gi}), L_{m}(g{gj})]")
    return report


def transfer_bracket(G: FiniteGroup, a: ClassFunction, n: int,
                     b: ClassFunction, level: int):
    """[Delta_1(a), p_n(b)] on level `level`, with Delta_1 extended linearly
    over the class-sum coefficients of a."""
    cd = G.conjugacy()
    ops = []
    for c in range(len(cd)):
        if not a.values[c].is_zero():
            ops.append((a.values[c], _delta1_any_level(G, c)))
    pop = _p_op(G, n, b)

    def fn(f):
        out = wcf_zero(G, f.n)
        for coeff, dop in ops:
            out = out + dop.bracket(pop)(f).scale(coeff)
        return out

    return _GroupOp(fn)


# ---------------------------------------------------------------------------
# filtered convolution and the boundary correspondence
# ---------------------------------------------------------------------------

class GradedClassFunction:
    """Homogeneous class function on S_n with degree n - (number of parts)."""

    def __init__(self, wcf: WreathClassFunction, degree: int):
        for rho in wcf.values:
            if wcf.n - rho.total_length() != degree:
                raise ValueError("class function is not degree-homogeneous")
        self.wcf = wcf
        self.degree = degree

    @staticmethod
    def indicator(n: int, rho: TypeFunction) -> "GradedClassFunction":
        T = trivial_group()
        return GradedClassFunction(wcf_indicator(T, n, rho),
                                   n - rho.total_length())

    def __eq__(self, other):
        return (isinstance(other, GradedClassFunction)
                and self.degree == other.degree and self.wcf == other.wcf)

    def __repr__(self):
        return f"Graded(deg={self.degree}, {self.wcf.values})"


def filtered_convolution(f: GradedClassFunction,
                         g: GradedClassFunction) -> GradedClassFunction:
    """Convolution projected to filtration degree deg f + deg g."""
    T = trivial_group()
    n = f.wcf.n
    if g.wcf.n != n:
        raise GroupMismatch("filtered convolution needs equal symmetric groups")
    check_budget(_fact(n), "filtered convolution", limit=5100)
    lvl = wreath_level(T, n)
    target = f.degree + g.degree
    out = {}
    for rho in lvl.types:
        if n - rho.total_length() != target:
            continue
        z = representative_of_type(T, n, rho)
        acc = cyc(0)
        for sigma, gv in g.wcf.values.items():
            for y in lvl.class_elements(sigma):
                fv = f.wcf.value(type_of(T, n, wreath_mult(T, z, wreath_inverse(T, y))))
                if not fv.is_zero():
                    acc = acc + fv * gv
        if not acc.is_zero():
            out[rho] = acc
    return GradedClassFunction(WreathClassFunction(T, n, out), target)


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def transposition_type(n: int) -> TypeFunction | None:
    T = trivial_group()
    return k_class_type(T, T.conjugacy().class_of[0], 1, n)


LEHN_SORGER_SIGN = -1  # fixed by the n = 2 case, then tested for all n


def lehn_sorger_check(n_max: int) -> VerificationReport:
    """The filtered convolution by the transposition class, transported by ch,
    equals the join-form boundary operator up to the recorded global sign."""
    from .fock import join_boundary

    T = trivial_group()
    report = VerificationReport(f"lehn-sorger(n<={n_max})")
    space = colored_space(T)
    boundary = join_boundary(space)
    for n in range(1, n_max + 1):
        tcls = transposition_type(n)
        for rho in wreath_level(T, n).types:
            f = GradedClassFunction.indicator(n, rho)
            if tcls is None:
                lhs = FockVector(space, {})
            else:
                t_ind = GradedClassFunction.indicator(n, tcls)
                cup = filtered_convolution(t_ind, f)
                lhs = ch(T, n, cup.wcf)
            rhs = boundary.apply(ch(T, n, f.wcf)).scale(LEHN_SORGER_SIGN)
            report.add(f"S_{n} class {rho}", lhs, rhs, lhs == rhs)
    return report
