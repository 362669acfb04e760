"""Double bracket induced by the cyclic pairing and its consequences.

The double bracket on T(V) is pinned down by two rules and extended
recursively, so every Koszul sign in the calculus lives in exactly two
places below (_peel and _swap):

* on letters, {{u,w}} = <u,w> 1 (x) 1;
* right Leibniz {{a, wc}} = {{a,w}}c + (-1)^{(|a|+s)|w|} w{{a,c}} in the
  outer bimodule structure, with s = n+2 the bracket shift;
* graded skew {{a,b}} = -(-1)^{(|a|+s)(|b|+s)} tau {{b,a}} with
  tau(p (x) q) = (-1)^{|p||q|} q (x) p.

The axiom suites (skew, Jacobi, Lie action, chain map) certify the
convention; none of the identities is assumed.
"""

from __future__ import annotations

from fractions import Fraction

from .freealg import CyclicClass, Span, TensorElement, TruncatedAlgebra, ONE_WORD
from .linalg import vec_add

F = Fraction


# ---------------------------------------------------------------------------
# double bracket: dict (word, word) -> Fraction


def _dd_add(a: dict, b: dict, coeff=F(1)) -> dict:
    return vec_add(a, b, coeff)


def double_bracket_words(A: TruncatedAlgebra, a: tuple, b: tuple) -> dict:
    cache = getattr(A, "_dd_cache", None)
    if cache is None:
        cache = A._dd_cache = {}
    key = (a, b)
    out = cache.get(key)
    if out is None:
        out = _dd(A, a, b)
        cache[key] = out
    return out


def _dd(A: TruncatedAlgebra, a: tuple, b: tuple) -> dict:
    if not a or not b:
        return {}
    if len(b) > 1:
        # right Leibniz: {{a, w*rest}} = {{a,w}}*rest + +-w*{{a,rest}}
        w, rest = b[0], b[1:]
        out: dict = {}
        # {{a,w}} * rest : append to the second tensor factor
        for (p, q), c in double_bracket_words(A, a, (w,)).items():
            if len(q + rest) <= A.W:
                out = _dd_add(out, {(p, q + rest): c})
        # (-1)^{(|a|+s)|w|} w * {{a,rest}} : prepend to the first factor
        da = A.word_degree(a)
        sgn = F(-1) if ((da + A.s) * A.deg[w]) % 2 else F(1)
        for (p, q), c in double_bracket_words(A, a, rest).items():
            if len((w,) + p) <= A.W:
                out = _dd_add(out, {((w,) + p, q): sgn * c})
        return out
    if len(a) == 1:
        val = A.pair(a[0], b[0])
        return {(ONE_WORD, ONE_WORD): val} if val else {}
    # b is a single letter, a is longer: swap via graded skew, after
    # which the peeling branch above applies
    da = A.word_degree(a)
    db = A.word_degree(b)
    sgn = F(-1) if ((da + A.s) * (db + A.s)) % 2 else F(1)
    out: dict = {}
    for (p, q), c in double_bracket_words(A, b, a).items():
        flip = F(-1) if (A.word_degree(p) * A.word_degree(q)) % 2 else F(1)
        out = _dd_add(out, {(q, p): -sgn * flip * c})
    return out


def double_bracket(A: TruncatedAlgebra, a: TensorElement, b: TensorElement) -> dict:
    out: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            out = _dd_add(out, double_bracket_words(A, wa, wb), ca * cb)
    return out


def bracket_R(A: TruncatedAlgebra, a: TensorElement, b: TensorElement) -> TensorElement:
    """Multiplication after the double bracket."""
    out: dict = {}
    truncated = False
    for (p, q), c in double_bracket(A, a, b).items():
        w = p + q
        if len(w) > A.W:
            truncated = True
            continue
        out[w] = out.get(w, F(0)) + c
    return TensorElement(out, truncated)


def bracket_cyclic(A: TruncatedAlgebra, alpha: CyclicClass, beta: CyclicClass,
                   check: bool = False) -> CyclicClass:
    out = A.project_cyclic(bracket_R(A, alpha.rep, beta.rep))
    if check:
        # representative independence: perturb by a rotation relation
        for word in list(alpha.rep.terms)[:1]:
            rot, sgn = A.rotate(word)
            pert = alpha.rep.add(TensorElement({word: F(1)})).add(
                TensorElement({rot: sgn}), F(-1))
            out2 = A.project_cyclic(bracket_R(A, pert, beta.rep))
            if out2 != out:
                raise AssertionError("bracket_cyclic representative dependence")
    return out


def act_on_R(A: TruncatedAlgebra, alpha: CyclicClass, r: TensorElement) -> TensorElement:
    return bracket_R(A, alpha.rep, r)


# ---------------------------------------------------------------------------
# one-forms: R (x) V, with ambient bimodule R (x) V (x) R


def oneform_add(a: dict, b: dict, coeff=F(1)) -> dict:
    return vec_add(a, b, coeff)


def cyclic_derivative_raw(A: TruncatedAlgebra, elem: TensorElement) -> dict:
    """Norm map then split of the last letter; vanishes on commutators."""
    out: dict = {}
    for word, coeff in elem.terms.items():
        if not word:
            continue
        cur, sgn = word, F(1)
        for _ in range(len(word)):
            key = (cur[:-1], cur[-1])
            out[key] = out.get(key, F(0)) + sgn * coeff
            cur, s2 = A.rotate(cur)
            sgn = sgn * s2
    return {k: v for k, v in out.items() if v}


def cyclic_derivative(A: TruncatedAlgebra, alpha: CyclicClass) -> dict:
    return cyclic_derivative_raw(A, alpha.rep)


def beta(A: TruncatedAlgebra, omega: dict) -> TensorElement:
    """r (x) v -> rv - (-1)^{|r||v|} vr."""
    out = TensorElement()
    for (word, v), coeff in omega.items():
        left = TensorElement({word + (v,): coeff}) if len(word) + 1 <= A.W else TensorElement()
        sgn = F(-1) if (A.word_degree(word) * A.deg[v]) % 2 else F(1)
        right = TensorElement({(v,) + word: sgn * coeff}) if len(word) + 1 <= A.W else TensorElement()
        out = out.add(left).add(right, F(-1))
    return out


# ambient two-sided forms: dict (word, letter, word) -> Fraction


def de_rham_d(A: TruncatedAlgebra, elem: TensorElement) -> dict:
    """d(u1...uk) = sum_i (u1...u_{i-1}) (x) u_i (x) (u_{i+1}...uk)."""
    out: dict = {}
    for word, coeff in elem.terms.items():
        for i in range(len(word)):
            key = (word[:i], word[i], word[i + 1:])
            out[key] = out.get(key, F(0)) + coeff
    return {k: v for k, v in out.items() if v}


def biform_project(A: TruncatedAlgebra, biform: dict) -> dict:
    """b (x) v (x) c -> (-1)^{|c|(|b|+|v|)} (cb) (x) v in R (x) V."""
    out: dict = {}
    for (b, v, c), coeff in biform.items():
        if len(c) + len(b) > A.W:
            continue
        sgn = F(-1) if (A.word_degree(c) * (A.word_degree(b) + A.deg[v])) % 2 else F(1)
        key = (c + b, v)
        out[key] = out.get(key, F(0)) + sgn * coeff
    return {k: x for k, x in out.items() if x}


def biform_mul(A: TruncatedAlgebra, left: TensorElement, biform: dict,
               right: TensorElement) -> dict:
    out: dict = {}
    for (b, v, c), coeff in biform.items():
        for wl, cl in left.terms.items():
            for wr, cr in right.terms.items():
                if len(wl) + len(b) > A.W or len(c) + len(wr) > A.W:
                    continue
                key = (wl + b, v, c + wr)
                out[key] = out.get(key, F(0)) + coeff * cl * cr
    return {k: x for k, x in out.items() if x}


def act_on_biform(A: TruncatedAlgebra, alpha: CyclicClass, biform: dict) -> dict:
    """{a, b (x) v (x) c} termwise, with a the canonical representative."""
    out: dict = {}
    for wa, ca in alpha.rep.terms.items():
        da = A.word_degree(wa)
        for (b, v, c), coeff in biform.items():
            cf = ca * coeff
            # {a,b} (x) v (x) c
            ab = bracket_R(A, TensorElement({wa: F(1)}), TensorElement({b: F(1)}))
            for w2, c2 in ab.terms.items():
                key = (w2, v, c)
                out[key] = out.get(key, F(0)) + cf * c2
            # +- b (x) v (x) {a,c}
            sgn = F(-1) if ((da + A.s) * (A.word_degree(b) + A.deg[v])) % 2 else F(1)
            ac = bracket_R(A, TensorElement({wa: F(1)}), TensorElement({c: F(1)}))
            for w2, c2 in ac.terms.items():
                key = (b, v, w2)
                out[key] = out.get(key, F(0)) + sgn * cf * c2
            # +- b (d{a,v}) c
            sgn2 = F(-1) if ((da + A.s) * A.word_degree(b)) % 2 else F(1)
            av = bracket_R(A, TensorElement({wa: F(1)}), TensorElement({(v,): F(1)}))
            if av:
                mid = biform_mul(A, TensorElement({b: F(1)}),
                                 de_rham_d(A, av), TensorElement({c: F(1)}))
                out = vec_add(out, mid, sgn2 * cf)
    return {k: x for k, x in out.items() if x}


def act_on_omega1(A: TruncatedAlgebra, alpha: CyclicClass, omega: dict) -> dict:
    """Action on R (x) V via the ambient formula followed by descent."""
    lifted = {(word, v, ONE_WORD): coeff for (word, v), coeff in omega.items()}
    return biform_project(A, act_on_biform(A, alpha, lifted))


def omega1_differential(A: TruncatedAlgebra, omega: dict) -> dict:
    """Induced differential on R (x) V:
    d(r (x) v) = dr (x) v + (-1)^{|r|} project(r * d_DR(dv))."""
    out: dict = {}
    for (word, v), coeff in omega.items():
        dr = A.differential(TensorElement({word: F(1)}))
        for w2, c2 in dr.terms.items():
            key = (w2, v)
            out[key] = out.get(key, F(0)) + coeff * c2
        dv = A.d_gen[v]
        if dv:
            sgn = F(-1) if A.word_degree(word) % 2 else F(1)
            mid = biform_mul(A, TensorElement({word: F(1)}), de_rham_d(A, dv),
                             TensorElement({ONE_WORD: F(1)}))
            out = vec_add(out, biform_project(A, mid), sgn * coeff)
    return {k: x for k, x in out.items() if x}


# ---------------------------------------------------------------------------
# necklace oracle: independent closed-form implementation for even letters


def necklace_bracket_oracle(A: TruncatedAlgebra, alpha: CyclicClass,
                            beta_: CyclicClass) -> CyclicClass:
    """{na, nb} = sum <v_i,w_j> n(w_1..w_{j-1} v_{i+1}..v_n v_1..v_{i-1}
    w_{j+1}..w_m), valid sign-free when every letter has degree 0."""
    assert all(A.deg[l] == 0 for l in A.letters)
    out = TensorElement()
    for wa, ca in alpha.rep.terms.items():
        for wb, cb in beta_.rep.terms.items():
            for i, vi in enumerate(wa):
                for j, wj in enumerate(wb):
                    val = A.pair(vi, wj)
                    if not val:
                        continue
                    word = wb[:j] + wa[i + 1:] + wa[:i] + wb[j + 1:]
                    if len(word) > A.W:
                        continue
                    out = out.add(TensorElement({word: val * ca * cb}))
    return A.project_cyclic(out)


# ---------------------------------------------------------------------------
# mapping cone of beta restricted to a Hodge piece


def hochschild_cone(A: TruncatedAlgebra, p: int):
    """Cone of beta: theta^(p) -> Sym^p over all weights <= W.

    Basis labels are ("t", weight, tag) for theta generators (degree
    shifted up by one) and ("s", weight, tag) for Sym^p generators.
    """
    from .linalg import ChainComplex, GradedSpace, LinearMap

    theta_list = []
    sym_list = []
    degrees: dict = {}
    for w in range(0, A.W + 1):
        if w >= 1:
            th = A.theta_span(p, w)
            red = Span(None)
            for tag, vec in th.generators.items():
                if red.reducer.add(vec, tag):
                    deg = {A.word_degree(word) + A.deg[v] for (word, v) in vec}
                    assert len(deg) == 1
                    lab = ("t", w, tag)
                    degrees[lab] = deg.pop() + 1
                    theta_list.append((lab, vec))
        sym = A.sym_power_span(p, w)
        red2 = Span(None)
        for tag, vec in sym.generators.items():
            if red2.reducer.add(vec, tag):
                deg = {A.word_degree(word) for word in vec}
                assert len(deg) == 1
                lab = ("s", w, tag)
                degrees[lab] = deg.pop()
                sym_list.append((lab, vec))
    space = GradedSpace(degrees)

    # to express images we need tracked bases of the chosen labels
    th_tracked = Span(None)
    for lab, vec in theta_list:
        th_tracked.add(lab, vec)
    sym_tracked = Span(None)
    for lab, vec in sym_list:
        sym_tracked.add(lab, vec)

    def express_theta(vec: dict) -> dict:
        if not vec:
            return {}
        combo = th_tracked.express(vec)
        if combo is None:
            raise ValueError("differential leaves the theta span")
        return combo

    def express_sym(vec: dict) -> dict:
        if not vec:
            return {}
        combo = sym_tracked.express(vec)
        if combo is None:
            raise ValueError("image leaves the Sym span")
        return combo

    images: dict = {}
    for lab, vec in theta_list:
        # total weight of r (x) v is len(r)+1; drop overflow (quotient
        # complex truncation, same as for plain words)
        d_th = {k: c for k, c in omega1_differential(A, vec).items()
                if len(k[0]) + 1 <= A.W}
        img = vec_add({}, express_theta(d_th), F(-1))
        b = beta(A, vec)
        img = vec_add(img, express_sym(b.terms))
        if img:
            images[lab] = img
    for lab, vec in sym_list:
        d_s = A.differential(TensorElement(vec))
        img = express_sym(d_s.terms)
        if img:
            images[lab] = img
    diff = LinearMap(space, space, images, degree=-1)
    unsound = set()
    for d in A.overflow_degrees():
        unsound.add(d)
        unsound.add(d + 1)
    return ChainComplex(space, diff, unsound=unsound)
