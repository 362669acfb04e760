"""Representation algebras of a truncated tensor algebra.

Associative side: the coordinate algebra of n-dimensional modules, with
the universal representation pi_n, the trace of cyclic classes, and the
induced trace of one-forms.  Lie side: the coordinate algebra of
g-valued representations, with pi_g and the invariant-polynomial traces
on symmetric/theta spans.

Conventions (locked by the equivariance test suites):
  * generators x^(v)_(i,j) carry the degree of v; the bracket is
    {x^(v)_(a,b), x^(w)_(c,d)} = delta_ad delta_bc <v,w>, the trace-form
    pattern Tr(e_ba e_dc);
  * on the Lie side pi_g(v) = sum_a x_(a,v) (x) xi_a with bracket
    {x_(a,u), x_(b,w)} = kappa^{-1}_ab <u,w>, and invariant tensors are
    evaluated directly on the xi-indices of pi_g factors;
  * differentials are defined by the chain-map property along pi (so
    d^2 = 0 and d-compatibility of the bracket are genuine checks,
    performed on construction).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .coalg import LieAlgebraData
from .freealg import (ONE_WORD, CyclicClass, Span, TensorElement,
                      TruncatedAlgebra, word_elem)
from .gca import GCAlgebra, GCElement, poisson_from_pairing
from .linalg import ChainComplex, GradedSpace, LinearMap, vec_add

F = Fraction


# ---------------------------------------------------------------------------
# shared helpers


def substitute(alg: GCAlgebra, f: GCElement, images: dict) -> GCElement:
    """Extend a generator substitution multiplicatively."""
    out = GCElement()
    for m, c in f.terms.items():
        prod = alg.unit(c)
        for g in m:
            prod = alg.multiply(prod, images[g])
        out = out.add(prod)
    return out


def enumerate_monomials(alg: GCAlgebra, cap: int) -> list:
    """All canonical monomials of length <= cap (odd gens squarefree)."""
    out = [()]
    for g in alg.degrees:
        mult = 1 if alg.deg(g) % 2 else cap
        new = []
        for m in out:
            for k in range(mult + 1):
                if len(m) + k <= cap:
                    new.append(m + (g,) * k)
        out = new
    return out


def polynomial_complex(alg: GCAlgebra) -> ChainComplex:
    """Chain complex of the polynomial algebra truncated at degree D.

    Monomials longer than D form a subcomplex (the differential never
    lowers polynomial degree), so the truncation is a quotient complex;
    internal degrees touched by length-(D+1) monomials are unsound.
    """
    if alg.D is None:
        raise ValueError("polynomial_complex needs a truncation degree D")
    monos = enumerate_monomials(alg, alg.D)
    space = GradedSpace({m: alg.monomial_degree(m) for m in monos})
    images = {}
    for m in monos:
        img = alg.differential(GCElement({m: F(1)}))
        if img:
            images[m] = img.terms
    unsound = set()
    for m in enumerate_monomials(alg, alg.D + 1):
        if len(m) == alg.D + 1:
            d = alg.monomial_degree(m)
            unsound.add(d)
            unsound.add(d - 1)
    return ChainComplex(space, LinearMap(space, space, images, degree=-1),
                        unsound=unsound)


def _express_by_weight(vec: dict, weight_of, span_of_weight) -> dict:
    """Express a vector, grouped by weight, in the given spans."""
    by_w: dict = {}
    for key, c in vec.items():
        by_w.setdefault(weight_of(key), {})[key] = c
    combo: dict = {}
    for w, sub in by_w.items():
        expr = span_of_weight(w).express(sub)
        if expr is None:
            raise ValueError(f"element of weight {w} is outside the span")
        combo = vec_add(combo, expr)
    return combo


# ---------------------------------------------------------------------------
# associative side


class MatrixRepAlgebra:
    """Coordinate algebra of n-dimensional representations."""

    def __init__(self, A: TruncatedAlgebra, n: int, D=None):
        self.A = A
        self.n = n
        idx = range(1, n + 1)
        degrees = {(v, i, j): A.deg[v]
                   for v in A.letters for i in idx for j in idx}
        self._alg = GCAlgebra(degrees, shift=A.s, D=D)
        self.alg = self._alg
        pairing = {}
        for v in A.letters:
            for w in A.letters:
                val = A.pair(v, w)
                if not val:
                    continue
                for i in idx:
                    for j in idx:
                        pairing[((v, i, j), (w, j, i))] = val
        d_gen = {}
        for v in A.letters:
            dv = A.differential(word_elem(v))
            if dv:
                for (i, j), entry in self.pi(dv).items():
                    if entry:
                        d_gen[(v, i, j)] = entry
        self._alg.d_gen = d_gen
        self.alg = poisson_from_pairing(self._alg, pairing, A.s)
        self._alg = self.alg

    # -- universal representation -----------------------------------------
    def _matmul(self, M: dict, N: dict) -> dict:
        idx = range(1, self.n + 1)
        out = {}
        for i in idx:
            for j in idx:
                acc = GCElement()
                for k in idx:
                    a, b = M.get((i, k)), N.get((k, j))
                    if a and b:
                        acc = acc.add(self.alg.multiply(a, b))
                if acc:
                    out[(i, j)] = acc
        return out

    def pi(self, r: TensorElement) -> dict:
        """Matrix of pi_n(r): dict (i, j) -> GCElement."""
        idx = range(1, self.n + 1)
        gen_mats = {v: {(i, j): self.alg.element(((v, i, j),))
                        for i in idx for j in idx} for v in self.A.letters}
        out: dict = {}
        for word, coeff in r.terms.items():
            M = {(i, i): self.alg.unit(coeff) for i in idx}
            for v in word:
                M = self._matmul(M, gen_mats[v])
            for k, e in M.items():
                out[k] = out.get(k, GCElement()).add(e)
        return {k: e for k, e in out.items() if e}

    def trace(self, r: TensorElement) -> GCElement:
        M = self.pi(r)
        out = GCElement()
        for i in range(1, self.n + 1):
            e = M.get((i, i))
            if e:
                out = out.add(e)
        return out

    def trace_class(self, alpha: CyclicClass) -> GCElement:
        return self.trace(alpha.rep)

    # -- one-forms ---------------------------------------------------------
    def omega1_trace(self, omega: dict) -> dict:
        """Trace of r (x) v: sum_ij (pi r)_ij d x^(v)_(j,i)."""
        out: dict = {}
        for (word, v), coeff in omega.items():
            M = self.pi(TensorElement({word: coeff}))
            for (i, j), entry in M.items():
                out = vec_add(out, self.alg.form_mul(
                    entry, {(ONE_WORD, (v, j, i)): F(1)}))
        return out

    def pi_oneform(self, biform: dict) -> dict:
        """Matrix of Kahler forms for an element of R (x) V (x) R."""
        idx = range(1, self.n + 1)
        out: dict = {}
        for (b, v, c), coeff in biform.items():
            Mb = self.pi(TensorElement({b: coeff}))
            Mc = self.pi(TensorElement({c: F(1)}))
            for i in idx:
                for j in idx:
                    acc: dict = {}
                    for k in idx:
                        left = Mb.get((i, k))
                        if not left:
                            continue
                        for l in idx:
                            right = Mc.get((l, j))
                            if not right:
                                continue
                            mid = self.alg.form_mul(
                                left, {(ONE_WORD, (v, k, l)): F(1)})
                            acc = vec_add(acc, self.alg.form_rmul(mid, right))
                    if acc:
                        out[(i, j)] = vec_add(out.get((i, j), {}), acc)
        return {k: w for k, w in out.items() if w}

    # -- GL spot checks ----------------------------------------------------
    def conjugation_images(self, g: list, ginv: list) -> dict:
        """Generator images of X^v -> g^{-1} X^v g."""
        idx = range(1, self.n + 1)
        images = {}
        for v in self.A.letters:
            for i in idx:
                for j in idx:
                    acc = GCElement()
                    for k in idx:
                        for l in idx:
                            c = ginv[i - 1][k - 1] * g[l - 1][j - 1]
                            if c:
                                acc = acc.add(
                                    self.alg.element(((v, k, l),), c))
                    images[(v, i, j)] = acc
        return images


# ---------------------------------------------------------------------------
# Lie side


class LieRepAlgebra:
    """Coordinate algebra of g-valued representations."""

    def __init__(self, A: TruncatedAlgebra, lie: LieAlgebraData, D=None):
        bad = lie.validate()
        if bad:
            raise ValueError(f"invalid Lie data: {bad[0]}")
        self.A = A
        self.lie = lie
        self.kinv = lie.kappa_inverse()
        degrees = {(a, v): A.deg[v] for a in lie.basis for v in A.letters}
        self._alg = GCAlgebra(degrees, shift=A.s, D=D)
        self.alg = self._alg
        pairing = {}
        for a in lie.basis:
            for b in lie.basis:
                kv = self.kinv.get((a, b))
                if not kv:
                    continue
                for u in A.letters:
                    for w in A.letters:
                        val = A.pair(u, w)
                        if val:
                            pairing[((a, u), (b, w))] = kv * val
        d_gen = {}
        for v in A.letters:
            dv = A.differential(word_elem(v))
            if dv:
                for beta, entry in self.pi(dv).items():
                    if entry:
                        d_gen[(beta, v)] = entry
        self._alg.d_gen = d_gen
        self.alg = poisson_from_pairing(self._alg, pairing, A.s)
        self._alg = self.alg

    # -- universal representation -----------------------------------------
    def _pi_letter(self, v) -> dict:
        return {a: self.alg.element(((a, v),)) for a in self.lie.basis}

    def _br(self, Fd: dict, Gd: dict) -> dict:
        out: dict = {}
        for a, fa in Fd.items():
            for b, gb in Gd.items():
                struct = self.lie.bracket(a, b)
                if not struct:
                    continue
                prod = self.alg.multiply(fa, gb)
                if not prod:
                    continue
                for c, sc in struct.items():
                    out[c] = out.get(c, GCElement()).add(prod.scale(sc))
        return {k: e for k, e in out.items() if e}

    def pi_bw(self, bw: tuple) -> dict:
        """pi_g of a left-normed bracket word: dict basis -> GCElement."""
        if len(bw) == 1:
            return self._pi_letter(bw[0])
        return self._br(self._pi_letter(bw[0]), self.pi_bw(bw[1:]))

    def pi(self, l: TensorElement) -> dict:
        """pi_g of an element of the free-Lie span (checked)."""
        combo = _express_by_weight(l.terms, len,
                                   lambda w: self.A.lie_span(w))
        out: dict = {}
        for bw, c in combo.items():
            for beta, entry in self.pi_bw(bw).items():
                out[beta] = out.get(beta, GCElement()).add(entry.scale(c))
        return {k: e for k, e in out.items() if e}

    # -- invariant tensors -------------------------------------------------
    def check_invariant(self, P) -> None:
        """Raise unless the symmetric tensor is ad-invariant."""
        p, table = P
        B = self.lie.basis
        for z in B:
            for args in itertools.combinations_with_replacement(B, p):
                total = F(0)
                for i in range(p):
                    adz = self.lie.bracket(z, args[i])
                    for c, sc in adz.items():
                        rep = args[:i] + (c,) + args[i + 1:]
                        total += sc * self.lie.eval_polynomial(table, rep)
                if total:
                    raise ValueError(
                        f"tensor not ad-invariant at {z!r} on {args!r}")

    def killing_tensor(self):
        """kappa as an invariant quadratic tensor."""
        table: dict = {}
        for (a, b), v in self.lie.kappa.items():
            table[tuple(sorted((a, b)))] = v
        return (2, table)

    # -- traces ------------------------------------------------------------
    def _eval_factors(self, P, factors: tuple) -> GCElement:
        p, table = P
        if p != len(factors):
            raise ValueError("tensor arity does not match factor count")
        pis = [self.pi_bw(bw) for bw in factors]
        out = GCElement()
        for betas in itertools.product(self.lie.basis, repeat=p):
            c = self.lie.eval_polynomial(table, betas)
            if not c:
                continue
            prod = self.alg.unit(c)
            for fd, b in zip(pis, betas):
                f = fd.get(b)
                if f is None:
                    prod = None
                    break
                prod = self.alg.multiply(prod, f)
            if prod:
                out = out.add(prod)
        return out

    def drinfeld_trace_sym(self, P, s: TensorElement) -> GCElement:
        """Trace of an element of a symmetric-power span."""
        self.check_invariant(P)
        combo = _express_by_weight(
            s.terms, len, lambda w: self.A.sym_power_span(P[0], w))
        out = GCElement()
        for factors, c in combo.items():
            out = out.add(self._eval_factors(P, factors).scale(c))
        return out

    def drinfeld_trace(self, P, alpha: CyclicClass) -> GCElement:
        """Trace of a lambda-class (any symmetric lift gives the same)."""
        self.check_invariant(P)
        combo = _express_by_weight(
            alpha.rep.terms, len, lambda w: self.A.lambda_span(P[0], w))
        out = GCElement()
        for factors, c in combo.items():
            out = out.add(self._eval_factors(P, factors).scale(c))
        return out

    def theta_trace(self, P, t: dict) -> dict:
        """Trace theta^(p) -> Kahler forms, P of arity p + 1."""
        self.check_invariant(P)
        p = P[0] - 1
        combo = _express_by_weight(
            t, lambda key: len(key[0]) + 1,
            lambda w: self.A.theta_span(p, w))
        out: dict = {}
        for ((factors, v), c) in combo.items():
            pis = [self.pi_bw(bw) for bw in factors]
            for betas in itertools.product(self.lie.basis, repeat=p + 1):
                pc = self.lie.eval_polynomial(P[1], betas)
                if not pc:
                    continue
                prod = self.alg.unit(pc * c)
                for fd, b in zip(pis, betas[:p]):
                    f = fd.get(b)
                    if f is None:
                        prod = None
                        break
                    prod = self.alg.multiply(prod, f)
                if prod:
                    out = vec_add(out, self.alg.form_mul(
                        prod, {(ONE_WORD, (betas[p], v)): F(1)}))
        return {k: x for k, x in out.items() if x}
