"""Declarative check suites over the whole library.

One registered check per library invariant: bracket axioms,
equivariance statements, commuting squares, span containments, and
dimension equalities.  Every check is exhaustive over its declared
spanning set, exact, and deterministic; a failing report always
carries a witness small enough to re-evaluate by hand, shrunk by
greedily dropping terms while the failure persists.
"""

from __future__ import annotations

import itertools
import time
from fractions import Fraction

from . import dpois
from .coalg import builtin
from .freealg import (ONE_WORD, CyclicClass, TensorElement, TruncatedAlgebra,
                      word_elem)
from .gca import GCElement
from .linalg import (RowReducer, TrackedReducer, euler_check, homology,
                     homology_dense, vec_add, vec_scale)
from .operad import OperadCalculus, builtin_operad, validate_operad
from .reps import LieRepAlgebra, MatrixRepAlgebra, polynomial_complex

F = Fraction


# ---------------------------------------------------------------------------
# report plumbing


class CheckSpec:
    """A named, parameterized, self-contained check."""

    def __init__(self, name, module, kind, runner, params=None):
        self.name = name
        self.module = module
        self.kind = kind
        self.runner = runner
        self.params = dict(params or {})

    def run(self) -> "CheckReport":
        t0 = time.perf_counter()
        ok, witness, count = self.runner(**self.params)
        millis = int((time.perf_counter() - t0) * 1000)
        return CheckReport(self, ok, witness, count, millis)


class CheckReport:
    def __init__(self, spec, ok, witness, count, millis):
        self.spec = spec
        self.ok = bool(ok)
        self.witness = witness
        self.count = int(count)
        self.millis = millis

    @property
    def status(self):
        return "pass" if self.ok else "fail"

    def as_dict(self) -> dict:
        out = {"name": self.spec.name, "module": self.spec.module,
               "kind": self.spec.kind, "status": self.status,
               "count": self.count, "millis": self.millis}
        if not self.ok:
            out["witness"] = jsonable(self.witness)
        return out

    def __repr__(self):
        return f"<CheckReport {self.spec.name}: {self.status}>"


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {repr(k) if not isinstance(k, str) else k: jsonable(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (TensorElement, GCElement)):
        return jsonable(x.terms)
    if isinstance(x, CyclicClass):
        return jsonable(x.rep.terms)
    return x


def shrink_witness(elements, fails):
    """Drop terms from each element while `fails(elements)` persists."""
    elems = [dict(e) for e in elements]
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(elems):
            if len(e) <= 1:
                continue
            for k in sorted(e, key=repr):
                trial = {kk: vv for kk, vv in e.items() if kk != k}
                cand = elems[:i] + [trial] + elems[i + 1:]
                if fails(cand):
                    elems[i] = trial
                    changed = True
                    break
            if changed:
                break
    return elems


# ---------------------------------------------------------------------------
# shared fixtures (built lazily, cached per process)

_ALGEBRAS: dict = {}


def algebra(name: str, W: int = 6) -> TruncatedAlgebra:
    key = (name, W)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = TruncatedAlgebra(builtin(name), W)
    return _ALGEBRAS[key]


BUILTIN_PAIR = ("E1_symplectic_pair(1)", "E2_two_stage")


def cyclic_basis(A, weight):
    red = RowReducer(A.order)
    out = []
    for word in A.words(weight):
        cls = A.project_cyclic(word_elem(*word))
        if cls and red.add(dict(cls.rep.terms)):
            out.append(cls)
    return out


def lambda_classes(A, p, weights):
    red = RowReducer(A.order)
    out = []
    for w in weights:
        for _tag, vec in A.lambda_span(p, w).generators.items():
            if vec and red.add(dict(vec)):
                out.append(CyclicClass(A, TensorElement(dict(vec))))
    return out


def drop_unit(f: GCElement) -> GCElement:
    return GCElement({m: c for m, c in f.terms.items() if m})


def sign(e: int) -> Fraction:
    return F(-1) if e % 2 else F(1)


# ---------------------------------------------------------------------------
# freealg checks


def check_cobar_squares_to_zero(W=4):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name, W)
        for w in range(1, W):
            for word in A.words(w):
                count += 1
                dd = A.differential(A.differential(word_elem(*word)))
                if dd.terms:
                    return False, {"algebra": name, "word": word,
                                   "dd": jsonable(dd)}, count
    return True, None, count


def check_cyclic_rotation_invariance(W=4):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name, W)
        for wa in range(1, W):
            for wb in range(1, W - wa + 1):
                for a in A.words(wa):
                    for b in A.words(wb):
                        count += 1
                        ab = A.project_cyclic(word_elem(*(a + b)))
                        ba = A.project_cyclic(word_elem(*(b + a)))
                        sgn = sign(A.word_degree(a) * A.word_degree(b))
                        if ab.rep.terms != ba.rep.scale(sgn).terms:
                            return False, {"algebra": name, "a": a, "b": b}, \
                                count
    return True, None, count


def check_sym_power_pbw(W=4):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name, W)
        for w in range(1, W + 1):
            count += 1
            joint = RowReducer(A.order)
            total = 0
            for p in range(1, w + 1):
                span = A.sym_power_span(p, w)
                total += span.rank
                for vec in span.generators.values():
                    joint.add(dict(vec))
            words = len(A.letters) ** w
            if not (joint.rank == total == words):
                return False, {"algebra": name, "weight": w,
                               "joint": joint.rank, "sum": total,
                               "words": words}, count
    return True, None, count


def check_hodge_lambda_decomposition(W=4):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name, W)
        for w in range(1, W + 1):
            count += 1
            joint = RowReducer(A.order)
            total = 0
            for p in range(1, w + 1):
                span = A.lambda_span(p, w)
                for _tag, vec in span.generators.items():
                    if vec:
                        joint.add(dict(vec))
                total += span.rank
            if not (joint.rank == total == A.cyclic_dimension(w)):
                return False, {"algebra": name, "weight": w,
                               "joint": joint.rank, "sum": total,
                               "cyclic": A.cyclic_dimension(w)}, count
    return True, None, count


def check_lie_subcomplex(W=4):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name, W)
        for w in range(1, W):
            tgt = A.lie_span(w + 1)
            for tag, vec in A.lie_span(w).generators.items():
                count += 1
                img = A.differential(TensorElement(dict(vec)))
                if not tgt.contains(dict(img.terms)):
                    return False, {"algebra": name, "weight": w,
                                   "generator": jsonable(tag)}, count
    return True, None, count


# ---------------------------------------------------------------------------
# dpois checks


def _algebra_list(algebras):
    if algebras is None:
        return [(name, algebra(name)) for name in BUILTIN_PAIR]
    return list(algebras)


def check_bracket_skew(max_weight=5, algebras=None):
    count = 0
    for name, A in _algebra_list(algebras):
        classes = [c for w in range(1, max_weight + 1)
                   for c in cyclic_basis(A, w)]
        for a in classes:
            for b in classes:
                count += 1
                e = (A.degree_of(a.rep) + A.s) * (A.degree_of(b.rep) + A.s)
                lhs = dpois.bracket_cyclic(A, a, b)
                rhs = dpois.bracket_cyclic(A, b, a)
                if lhs.rep.add(rhs.rep, sign(e)).terms:

                    def fails(elems):
                        x = CyclicClass(A, TensorElement(elems[0]))
                        y = CyclicClass(A, TensorElement(elems[1]))
                        l2 = dpois.bracket_cyclic(A, x, y)
                        r2 = dpois.bracket_cyclic(A, y, x)
                        return bool(l2.rep.add(r2.rep, sign(e)).terms)

                    w = shrink_witness([a.rep.terms, b.rep.terms], fails)
                    return False, {"algebra": name, "a": jsonable(w[0]),
                                   "b": jsonable(w[1])}, count
    return True, None, count


def check_bracket_jacobi(max_weight=4, algebras=None):
    count = 0
    for name, A in _algebra_list(algebras):
        classes = [c for w in range(1, max_weight + 1)
                   for c in cyclic_basis(A, w)]

        def defect(a, b, c):
            e = (A.degree_of(a.rep) + A.s) * (A.degree_of(b.rep) + A.s)
            t1 = dpois.bracket_cyclic(A, a, dpois.bracket_cyclic(A, b, c))
            t2 = dpois.bracket_cyclic(A, dpois.bracket_cyclic(A, a, b), c)
            t3 = dpois.bracket_cyclic(A, b, dpois.bracket_cyclic(A, a, c))
            return t1.rep.add(t2.rep, F(-1)).add(t3.rep, -sign(e))

        for a in classes:
            for b in classes:
                for c in classes:
                    count += 1
                    if defect(a, b, c).terms:

                        def fails(elems):
                            xs = [CyclicClass(A, TensorElement(e2))
                                  for e2 in elems]
                            return bool(defect(*xs).terms)

                        w = shrink_witness(
                            [a.rep.terms, b.rep.terms, c.rep.terms], fails)
                        return False, {"algebra": name,
                                       "triple": jsonable(w)}, count
    return True, None, count


def check_action_lie_axiom(max_total=5, algebras=None):
    count = 0
    for name, A in _algebra_list(algebras):
        for wc in range(1, max_total):
            classes = cyclic_basis(A, wc)
            for wr in range(1, max_total - wc + 1):
                words = [word_elem(*word) for word in A.words(wr)]
                for a in classes:
                    for b in classes:
                        e = (A.degree_of(a.rep) + A.s) * \
                            (A.degree_of(b.rep) + A.s)
                        ab = dpois.bracket_cyclic(A, a, b)
                        for r in words:
                            count += 1
                            lhs = dpois.act_on_R(A, ab, r)
                            rhs = dpois.act_on_R(
                                A, a, dpois.act_on_R(A, b, r)).add(
                                dpois.act_on_R(A, b, dpois.act_on_R(A, a, r)),
                                -sign(e))
                            if lhs.terms != rhs.terms:
                                return False, {"algebra": name,
                                               "a": jsonable(a),
                                               "b": jsonable(b),
                                               "r": jsonable(r)}, count
    return True, None, count


def check_bracket_chain_map(max_weight=3):
    A = algebra("E2_two_stage")
    classes = [c for w in range(1, max_weight + 1) for c in cyclic_basis(A, w)]

    def d_cls(c):
        return A.project_cyclic(A.differential(c.rep))

    count = 0
    for a in classes:
        for b in classes:
            count += 1
            da = A.degree_of(a.rep)
            lhs = d_cls(dpois.bracket_cyclic(A, a, b))
            rhs = dpois.bracket_cyclic(A, d_cls(a), b).add(
                dpois.bracket_cyclic(A, a, d_cls(b)), sign(da + A.s))
            if lhs != rhs:
                return False, {"a": jsonable(a), "b": jsonable(b)}, count
    return True, None, count


def check_lambda2_closure(max_weight=4, max_p=3):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name)
        lam2 = lambda_classes(A, 2, (2, 3, 4))
        for p in range(1, max_p + 1):
            for w in range(p, max_weight + 1):
                span = A.lambda_span(p, w)
                targets = [CyclicClass(A, TensorElement(dict(vec)))
                           for _t, vec in span.generators.items() if vec]
                for a in lam2:
                    wa = len(next(iter(a.rep.terms)))
                    for s in targets:
                        count += 1
                        br = dpois.bracket_cyclic(A, a, s)
                        if not br.rep.terms:
                            continue
                        target_span = A.lambda_span(p, wa + w - 2)
                        if not target_span.contains(dict(br.rep.terms)):
                            return False, {"algebra": name, "p": p,
                                           "alpha": jsonable(a),
                                           "s": jsonable(s)}, count
    return True, None, count


def check_derivative_equivariance(max_weight=3):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name)
        lam2 = lambda_classes(A, 2, (2,))
        targets = [c for w in range(2, max_weight + 1)
                   for c in cyclic_basis(A, w)]
        for alpha in lam2:
            for g in targets:
                count += 1
                lhs = dpois.cyclic_derivative(
                    A, dpois.bracket_cyclic(A, alpha, g))
                rhs = dpois.act_on_omega1(
                    A, alpha, dpois.cyclic_derivative(A, g))
                if lhs != rhs:
                    return False, {"algebra": name, "alpha": jsonable(alpha),
                                   "target": jsonable(g)}, count
    return True, None, count


# ---------------------------------------------------------------------------
# reps checks


def check_trace_equivariance(max_weight=4):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name)
        for n in (1, 2):
            M = MatrixRepAlgebra(A, n)
            for w in range(1, max_weight + 1):
                for alpha in cyclic_basis(A, w):
                    tr = M.trace_class(alpha)
                    for wu in (1, 2):
                        for word in A.words(wu):
                            count += 1
                            u = TensorElement({word: F(1)})
                            lhs = M.pi(dpois.act_on_R(A, alpha, u))
                            rhs = {k: M.alg.bracket(tr, e)
                                   for k, e in M.pi(u).items()}
                            if lhs != {k: e for k, e in rhs.items() if e}:
                                return False, {"algebra": name, "n": n,
                                               "alpha": jsonable(alpha),
                                               "word": word}, count
    return True, None, count


def check_trace_dg_lie_map(max_weight=4):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name)
        classes = [c for w in range(1, max_weight + 1)
                   for c in cyclic_basis(A, w)]
        for n in (1, 2):
            M = MatrixRepAlgebra(A, n)
            for a in classes:
                count += 1
                ta = M.trace_class(a)
                if M.trace(A.differential(a.rep)) != M.alg.differential(ta):
                    return False, {"algebra": name, "n": n,
                                   "class": jsonable(a),
                                   "identity": "chain_map"}, count
                for b in classes:
                    count += 1
                    lhs = M.trace_class(dpois.bracket_cyclic(A, a, b))
                    rhs = M.alg.bracket(ta, M.trace_class(b))
                    if lhs != drop_unit(rhs):
                        return False, {"algebra": name, "n": n,
                                       "a": jsonable(a), "b": jsonable(b),
                                       "identity": "bracket"}, count
    return True, None, count


def _lie_setups():
    for name in BUILTIN_PAIR:
        for g in ("sl2", "gl2"):
            yield name, g, LieRepAlgebra(algebra(name), builtin(g))


def check_universal_rep_module_map():
    count = 0
    for name, g, L in _lie_setups():
        A = L.A
        K = L.killing_tensor()
        for a in lambda_classes(A, 2, (2, 3)):
            tra = L.drinfeld_trace(K, a)
            for w in (1, 2):
                for bw in A.bracket_words(w):
                    l = A.bracket_word_expansion(bw)
                    if not l:
                        continue
                    count += 1
                    act = dpois.act_on_R(A, a, l)
                    lhs = L.pi(act) if act else {}
                    rhs = {k: L.alg.bracket(tra, e)
                           for k, e in L.pi(l).items()}
                    if lhs != {k: e for k, e in rhs.items() if e}:
                        return False, {"algebra": name, "g": g,
                                       "alpha": jsonable(a),
                                       "bracket_word": bw}, count
    return True, None, count


def check_drinfeld_trace_lie_homomorphism():
    count = 0
    for name, g, L in _lie_setups():
        A = L.A
        K = L.killing_tensor()
        lam2 = lambda_classes(A, 2, (2, 3))
        for a in lam2:
            for b in lam2:
                count += 1
                br = dpois.bracket_cyclic(A, a, b)
                lhs = L.drinfeld_trace(K, br) if br else GCElement()
                rhs = L.alg.bracket(L.drinfeld_trace(K, a),
                                    L.drinfeld_trace(K, b))
                if lhs != rhs:
                    return False, {"algebra": name, "g": g,
                                   "a": jsonable(a), "b": jsonable(b)}, count
    return True, None, count


def check_drinfeld_trace_module_map():
    count = 0
    for name, g, L in _lie_setups():
        A = L.A
        K = L.killing_tensor()
        lam2 = lambda_classes(A, 2, (2, 3))
        for P in L.lie.invariant_polynomials:
            p = P[0]
            for a in lam2:
                tra = L.drinfeld_trace(K, a)
                for w in range(p, 4):
                    for s in lambda_classes(A, p, (w,)):
                        count += 1
                        br = dpois.bracket_cyclic(A, a, s)
                        lhs = L.drinfeld_trace(P, br) if br else GCElement()
                        rhs = L.alg.bracket(tra, L.drinfeld_trace(P, s))
                        if lhs != rhs:
                            return False, {"algebra": name, "g": g, "p": p,
                                           "alpha": jsonable(a),
                                           "s": jsonable(s)}, count
    return True, None, count


def check_theta_trace_square():
    count = 0
    for name, g, L in _lie_setups():
        A = L.A
        for P in L.lie.invariant_polynomials:
            p = P[0]
            for w in range(p, 4):
                for a in lambda_classes(A, p, (w,)):
                    count += 1
                    lhs = L.theta_trace(P, dpois.cyclic_derivative(A, a))
                    rhs = L.alg.kahler_differential(L.drinfeld_trace(P, a))
                    if lhs != rhs:
                        return False, {"algebra": name, "g": g, "p": p,
                                       "class": jsonable(a)}, count
    return True, None, count


def check_oneform_trace_square(max_weight=3):
    count = 0
    for name in BUILTIN_PAIR:
        A = algebra(name)
        for n in (1, 2):
            M = MatrixRepAlgebra(A, n)
            for w in range(1, max_weight + 1):
                for alpha in cyclic_basis(A, w):
                    count += 1
                    lhs = M.omega1_trace(dpois.cyclic_derivative(A, alpha))
                    rhs = M.alg.kahler_differential(M.trace_class(alpha))
                    if lhs != rhs:
                        return False, {"algebra": name, "n": n,
                                       "class": jsonable(alpha)}, count
    return True, None, count


# ---------------------------------------------------------------------------
# operadcore checks

OPERAD_NAMES = ("Ass", "Com", "Lie")
_PATTERNS = {
    "even": ({"x": 0, "y": 0}, {("x", "y"): F(1), ("y", "x"): F(-1)}),
    "mixed": ({"x": 1, "y": 2}, {("x", "y"): F(1), ("y", "x"): F(-1)}),
}


def _operad_classes(calc, arities=(1, 2)):
    out = []
    for m in arities:
        for b in calc.op.basis[m]:
            for word in itertools.product(calc.letters, repeat=m + 1):
                if calc.cyclic_canonical({(m, b, word): F(1)}):
                    out.append((m, b, word))
    return out


def check_operad_tau_relations(M=4, operads=None):
    if operads is None:
        operads = [(name, builtin_operad(name, M)) for name in OPERAD_NAMES]
    count = 0
    for name, op in operads:
        report = validate_operad(op)
        count += 1
        if not report.ok:
            return False, {"operad": name,
                           "failures": jsonable(report.failures[:3])}, count
    return True, None, count


def check_operadic_bracket_jacobi(M=4):
    count = 0
    for name in OPERAD_NAMES:
        for pattern, (degrees, pairing) in _PATTERNS.items():
            s = 2 - sum(degrees.values())
            calc = OperadCalculus(builtin_operad(name, M), degrees, pairing)
            classes = _operad_classes(calc)
            deg = lambda lab: sum(degrees[l] for l in lab[2])
            for la in classes:
                for lb in classes:
                    count += 1
                    e = (deg(la) + s) * (deg(lb) + s)
                    lhs = calc.p_bracket({la: F(1)}, {lb: F(1)})
                    rhs = calc.p_bracket({lb: F(1)}, {la: F(1)})
                    if vec_add(lhs, rhs, sign(e)):
                        return False, {"operad": name, "pattern": pattern,
                                       "identity": "skew",
                                       "pair": jsonable([la, lb])}, count
            for la in classes:
                for lb in classes:
                    for lc in classes:
                        if la[0] + lb[0] + lc[0] - 2 > M:
                            continue
                        count += 1
                        e = (deg(la) + s) * (deg(lb) + s)
                        t1 = calc.p_bracket(
                            {la: F(1)},
                            calc.p_bracket({lb: F(1)}, {lc: F(1)}))
                        t2 = calc.p_bracket(
                            calc.p_bracket({la: F(1)}, {lb: F(1)}),
                            {lc: F(1)})
                        t3 = vec_scale(
                            calc.p_bracket(
                                {lb: F(1)},
                                calc.p_bracket({la: F(1)}, {lc: F(1)})),
                            sign(e))
                        if vec_add(vec_add(t1, t2, F(-1)), t3, F(-1)):
                            return False, {"operad": name, "pattern": pattern,
                                           "identity": "jacobi",
                                           "triple": jsonable([la, lb, lc])}, \
                                count
    return True, None, count


def check_cyclic_dimension_match(M=4):
    count = 0
    for name in OPERAD_NAMES:
        for pattern, (degrees, pairing) in _PATTERNS.items():
            calc = OperadCalculus(builtin_operad(name, M), degrees, pairing)
            for m in range(1, M + 1):
                count += 1
                d = calc.cyclic_dimension(m)
                o = calc.cyclic_dimension_oracle(m)
                if F(d) != o:
                    return False, {"operad": name, "pattern": pattern,
                                   "arity": m, "reduced": d,
                                   "averaged": jsonable(o)}, count
    return True, None, count


def check_ass_specialization(M=4):
    A = algebra("E2_two_stage")
    calc = OperadCalculus(builtin_operad("Ass", M), dict(A.deg),
                          dict(A.pairing))
    classes = _operad_classes(calc)

    def perm_koszul_sign(perm, degs):
        s = 1
        for p in range(len(perm)):
            for q in range(p + 1, len(perm)):
                if perm[p] > perm[q] and degs[perm[p] - 1] % 2 \
                        and degs[perm[q] - 1] % 2:
                    s = -s
        return F(s)

    def spec_free(vec):
        out = {}
        for (m, mu, word), c in vec.items():
            degs = [A.deg[l] for l in word]
            w = tuple(word[a - 1] for a in mu)
            v = out.get(w, F(0)) + perm_koszul_sign(mu, degs) * c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return TensorElement(out)

    def spec_cyc(vec):
        out = TensorElement()
        for (m, mu, word), c in vec.items():
            degs = [A.deg[l] for l in word[:-1]]
            w = tuple(word[a - 1] for a in mu) + (word[-1],)
            out = out.add(TensorElement(
                {w: perm_koszul_sign(mu, degs) * c}))
        return A.project_cyclic(out)

    count = 0
    for lab in classes:
        count += 1
        mine = {}
        for (lr, v), c in calc.cyclic_derivative({lab: F(1)}).items():
            for w, cc in spec_free({lr: c}).terms.items():
                mine[(w, v)] = mine.get((w, v), F(0)) + cc
        mine = {k: v for k, v in mine.items() if v}
        theirs = dpois.cyclic_derivative(A, spec_cyc({lab: F(1)}))
        if mine != {k: c for k, c in theirs.items() if c}:
            return False, {"operation": "cyclic_derivative",
                           "class": jsonable(lab)}, count
    frees = [(2, b, word) for b in calc.op.basis[2]
             for word in itertools.product(calc.letters, repeat=2)]
    for la in classes:
        for lb in classes:
            count += 1
            mine = spec_cyc(calc.p_bracket({la: F(1)}, {lb: F(1)}))
            theirs = dpois.bracket_cyclic(A, spec_cyc({la: F(1)}),
                                          spec_cyc({lb: F(1)}))
            if mine.rep.terms != theirs.rep.terms:
                return False, {"operation": "bracket",
                               "pair": jsonable([la, lb])}, count
        for lf in frees:
            count += 1
            mine = spec_free(calc.p_action({la: F(1)}, {lf: F(1)}))
            theirs = dpois.act_on_R(A, spec_cyc({la: F(1)}),
                                    spec_free({lf: F(1)}))
            if mine.terms != theirs.terms:
                return False, {"operation": "action",
                               "pair": jsonable([la, lf])}, count
    return True, None, count


# ---------------------------------------------------------------------------
# registry


def registry() -> list:
    specs = [
        CheckSpec("cobar_squares_to_zero", "freealg", "identity",
                  check_cobar_squares_to_zero),
        CheckSpec("cyclic_rotation_invariance", "freealg", "identity",
                  check_cyclic_rotation_invariance),
        CheckSpec("sym_power_pbw", "freealg", "dimension-equality",
                  check_sym_power_pbw),
        CheckSpec("hodge_lambda_decomposition", "freealg",
                  "dimension-equality", check_hodge_lambda_decomposition),
        CheckSpec("lie_subcomplex", "freealg", "span-containment",
                  check_lie_subcomplex),
        CheckSpec("bracket_skew", "dpois", "identity", check_bracket_skew),
        CheckSpec("bracket_jacobi", "dpois", "identity",
                  check_bracket_jacobi),
        CheckSpec("action_lie_axiom", "dpois", "identity",
                  check_action_lie_axiom),
        CheckSpec("bracket_chain_map", "dpois", "identity",
                  check_bracket_chain_map),
        CheckSpec("lambda2_closure", "dpois", "span-containment",
                  check_lambda2_closure),
        CheckSpec("derivative_equivariance", "dpois", "identity",
                  check_derivative_equivariance),
        CheckSpec("trace_equivariance", "reps", "identity",
                  check_trace_equivariance),
        CheckSpec("trace_dg_lie_map", "reps", "identity",
                  check_trace_dg_lie_map),
        CheckSpec("universal_rep_module_map", "reps", "identity",
                  check_universal_rep_module_map),
        CheckSpec("drinfeld_trace_lie_homomorphism", "reps", "identity",
                  check_drinfeld_trace_lie_homomorphism),
        CheckSpec("drinfeld_trace_module_map", "reps", "identity",
                  check_drinfeld_trace_module_map),
        CheckSpec("theta_trace_square", "reps", "square-commutes",
                  check_theta_trace_square),
        CheckSpec("oneform_trace_square", "reps", "square-commutes",
                  check_oneform_trace_square),
        CheckSpec("operad_tau_relations", "operadcore", "identity",
                  check_operad_tau_relations),
        CheckSpec("operadic_bracket_jacobi", "operadcore", "identity",
                  check_operadic_bracket_jacobi),
        CheckSpec("cyclic_dimension_match", "operadcore",
                  "dimension-equality", check_cyclic_dimension_match),
        CheckSpec("ass_specialization", "operadcore", "identity",
                  check_ass_specialization),
    ]
    return specs


def run_suite(specs=None, modules=None, jobs=1) -> list:
    """Run checks (each pure) and assemble reports in a fixed order."""
    if specs is None:
        specs = registry()
    if modules is not None:
        specs = [s for s in specs if s.module in set(modules)]
    ordered = sorted(specs, key=lambda s: (s.module, s.name))
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda s: s.run(), ordered))
    return [spec.run() for spec in ordered]


def suite_json(reports) -> dict:
    return {"suite": "cycpois", "checks": [r.as_dict() for r in reports]}


# ---------------------------------------------------------------------------
# homology cross-checks


def homology_crosscheck(target: str, *, builtin_name="E2_two_stage",
                        W=4, n=2, D=3, g="sl2", p=2) -> CheckReport:
    if target == "cobar":
        A = TruncatedAlgebra(builtin(builtin_name), W)
        cx = A.cobar_complex()
        params = {"builtin": builtin_name, "W": W}
    elif target == "Rn":
        A = TruncatedAlgebra(builtin(builtin_name), W)
        cx = polynomial_complex(MatrixRepAlgebra(A, n, D).alg)
        params = {"builtin": builtin_name, "W": W, "n": n, "D": D}
    elif target == "Lg":
        A = TruncatedAlgebra(builtin(builtin_name), W)
        cx = polynomial_complex(LieRepAlgebra(A, builtin(g), D).alg)
        params = {"builtin": builtin_name, "W": W, "g": g, "D": D}
    elif target == "cone":
        A = TruncatedAlgebra(builtin(builtin_name), W)
        cx = dpois.hochschild_cone(A, p)
        params = {"builtin": builtin_name, "W": W, "p": p}
    else:
        raise ValueError(f"unknown homology target {target!r}")
    spec = CheckSpec(f"homology_crosscheck_{target}", "verify",
                     "dimension-equality", lambda: (True, None, 0), {})
    spec.params = params
    t0 = time.perf_counter()
    lo, hi = cx.space.degree_range()
    degrees = range(lo, hi + 1)
    primary = homology(cx, degrees, allow_truncated=True)
    oracle = homology_dense(cx, degrees, allow_truncated=True)
    euler = euler_check(cx, degrees, primary)
    ok = primary.dims == oracle and euler
    witness = None if ok else {"primary": jsonable(primary.dims),
                               "oracle": jsonable(oracle),
                               "euler": euler}
    report = CheckReport(spec, ok, witness,
                         sum(cx.space.dim(d) for d in degrees),
                         int((time.perf_counter() - t0) * 1000))
    report.dims = primary.dims
    report.unsound = sorted(cx.unsound)
    return report


def trace_on_homology(A: TruncatedAlgebra, alpha: CyclicClass, *, n=2, D=3):
    """Homology class of the matrix trace of a cyclic cycle.

    Returns (coordinates on the homology basis of the representation
    complex, CheckReport); the coordinates are verified independent of
    the chosen cyclic representative.
    """
    if A.project_cyclic(A.differential(alpha.rep)).rep.terms:
        raise ValueError("input class is not a cycle")
    M = MatrixRepAlgebra(A, n, D)
    t0 = time.perf_counter()

    def coords_of(cls):
        t = M.trace_class(cls)
        if not t.terms:
            return {}
        cx = polynomial_complex(M.alg)
        deg = M.alg.degree_of(t)
        if deg is None:
            raise ValueError("trace image not homogeneous")
        if M.alg.differential(t).terms:
            raise ValueError("trace image is not a cycle")
        hom = homology(cx, [deg], allow_truncated=True)
        tracked = TrackedReducer(cx.space.order)
        for i, z in enumerate(hom.reps[deg]):
            tracked.add(z, ("h", i))
        for lab in cx.space.labels_in_degree(deg + 1):
            img = cx.diff.apply({lab: F(1)})
            if img:
                tracked.add(img, ("b", lab))
        combo = tracked.express(dict(t.terms))
        if combo is None:
            raise ValueError("trace image escapes the computed homology")
        return {tag[1]: c for tag, c in combo.items() if tag[0] == "h"}

    coords = coords_of(alpha)
    # representative independence: perturb by a rotation relation
    for word in list(alpha.rep.terms)[:1]:
        rot, sgn = A.rotate(word)
        pert = alpha.rep.add(word_elem(*word)).add(
            TensorElement({rot: sgn}), F(-1))
        if coords_of(CyclicClass(A, pert)) != coords:
            raise AssertionError("trace class depends on the representative")
    spec = CheckSpec("trace_on_homology", "verify", "identity",
                     lambda: (True, None, 0), {})
    report = CheckReport(spec, True, None, 1,
                         int((time.perf_counter() - t0) * 1000))
    return coords, report


def bracket_on_homology(A: TruncatedAlgebra, alpha: CyclicClass,
                        beta: CyclicClass) -> CyclicClass:
    """Bracket of two cycles, asserted representative-independent."""
    for cls in (alpha, beta):
        if A.project_cyclic(A.differential(cls.rep)).rep.terms:
            raise ValueError("input class is not a cycle")
    return dpois.bracket_cyclic(A, alpha, beta, check=True)
