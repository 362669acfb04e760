"""Arity-truncated cyclic binary quadratic operads and the bracket
calculus on free-algebra cyclic quotients.

Operads are stored as explicit structure tensors per arity: a basis,
the right symmetric-group action on Coxeter generators, the cyclic
action tau of order m + 1, and partial compositions.  The builtins:

  * Ass(m): permutation words (a_1 .. a_m), meaning the monomial
    x_{a_1} ... x_{a_m}; tau acts through the necklace relabelling of
    {0 (output), 1, ..., m} by l -> l + 1 mod m + 1;
  * Com(m): one basis element, trivial actions;
  * Lie(m): left-normed multilinear brackets fixing the last slot,
    dimension (m - 1)!; all structure derived by expanding commutators
    into Ass words and solving back (the expansion is its own oracle).

The free-algebra layer puts a graded letter set V with a skew pairing
on top and realizes cyclic-quotient classes as coinvariants of the
diagonal symmetric-group action, with canonical forms computed by
reduction against the relation span.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .linalg import RowReducer, TrackedReducer, vec_add, vec_scale

F = Fraction


# ---------------------------------------------------------------------------
# operad data


class CyclicOperadData:
    """Structure tensors of a cyclic operad, truncated at arity M.

    basis[m]: list of labels.  coxeter[(m, j)]: label -> vec, the action
    of the transposition (j, j+1), 1 <= j < m.  tau[m]: label -> vec.
    comp[(m, i, l)]: (label, label) -> vec over basis[m + l - 1].
    """

    def __init__(self, name, M, basis, coxeter, tau, comp):
        self.name = name
        self.M = M
        self.basis = {m: list(b) for m, b in basis.items()}
        self.coxeter = coxeter
        self.tau = tau
        self.comp = comp

    def dim(self, m) -> int:
        return len(self.basis.get(m, []))

    def apply_matrix(self, matrix: dict, vec: dict) -> dict:
        out: dict = {}
        for b, c in vec.items():
            out = vec_add(out, matrix[b], c)
        return out

    def act_tau(self, m, vec, power=1) -> dict:
        for _ in range(power % (m + 1)):
            vec = self.apply_matrix(self.tau[m], vec)
        return vec

    def act_coxeter(self, m, j, vec) -> dict:
        return self.apply_matrix(self.coxeter[(m, j)], vec)

    def act_perm(self, m, perm, vec) -> dict:
        """Action of an input permutation, given as a tuple with
        perm[i-1] = image of input i; decomposed into transpositions."""
        perm = list(perm)
        # bubble-sort perm to the identity, applying (j, j+1) each swap
        work = list(perm)
        for a in range(m):
            for j in range(1, m):
                if work[j - 1] > work[j]:
                    work[j - 1], work[j] = work[j], work[j - 1]
                    vec = self.act_coxeter(m, j, vec)
        return vec

    def compose(self, m, i, l, mu_vec: dict, nu_vec: dict) -> dict:
        table = self.comp[(m, i, l)]
        out: dict = {}
        for b1, c1 in mu_vec.items():
            for b2, c2 in nu_vec.items():
                out = vec_add(out, table[(b1, b2)], c1 * c2)
        return out


class OperadValidationReport:
    def __init__(self):
        self.failures = []

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, identity, witness):
        self.failures.append((identity, witness))


def validate_operad(op: CyclicOperadData) -> OperadValidationReport:
    """tau order, tau-composition relations, associativity, and input
    equivariance of the partial compositions, on all basis tuples."""
    rep = OperadValidationReport()
    for m in op.basis:
        for b in op.basis[m]:
            v = {b: F(1)}
            # apply tau singly: act_tau reduces powers mod m + 1, which
            # would make this check vacuous
            w = dict(v)
            for _ in range(m + 1):
                w = op.apply_matrix(op.tau[m], w)
            if w != v:
                rep.fail("tau_order", (m, b))
    # tau relations with compositions
    for m in op.basis:
        for l in op.basis:
            if m + l - 1 not in op.basis or m < 1:
                continue
            for b1 in op.basis[m]:
                for b2 in op.basis[l]:
                    mu, nu = {b1: F(1)}, {b2: F(1)}
                    for i in range(1, m):
                        lhs = op.act_tau(m + l - 1,
                                         op.compose(m, i, l, mu, nu))
                        rhs = op.compose(m, i + 1, l, op.act_tau(m, mu), nu)
                        if lhs != rhs:
                            rep.fail("tau_inner_composition", (m, i, l, b1, b2))
                    lhs = op.act_tau(m + l - 1, op.compose(m, m, l, mu, nu))
                    rhs = op.compose(l, 1, m, op.act_tau(l, nu),
                                     op.act_tau(m, mu))
                    if lhs != rhs:
                        rep.fail("tau_last_composition", (m, l, b1, b2))
    # associativity
    for m in op.basis:
        for l in op.basis:
            for k in op.basis:
                if m + l + k - 2 not in op.basis or m + l - 1 not in op.basis:
                    continue
                for b1 in op.basis[m]:
                    for b2 in op.basis[l]:
                        for b3 in op.basis[k]:
                            mu, nu, rho = ({b1: F(1)}, {b2: F(1)}, {b3: F(1)})
                            for i in range(1, m + 1):
                                # nested: (mu o_i nu) o_{i-1+j} rho
                                for j in range(1, l + 1):
                                    lhs = op.compose(
                                        m + l - 1, i - 1 + j, k,
                                        op.compose(m, i, l, mu, nu), rho)
                                    rhs = op.compose(
                                        m, i, l + k - 1, mu,
                                        op.compose(l, j, k, nu, rho))
                                    if lhs != rhs:
                                        rep.fail("associativity_nested",
                                                 (m, l, k, i, j, b1, b2, b3))
                                # parallel: slots i < p of mu
                                for p in range(i + 1, m + 1):
                                    lhs = op.compose(
                                        m + l - 1, p + l - 1, k,
                                        op.compose(m, i, l, mu, nu), rho)
                                    mid = op.compose(m, p, k, mu, rho)
                                    rhs = op.compose(m + k - 1, i, l,
                                                     mid, nu)
                                    if lhs != rhs:
                                        rep.fail("associativity_parallel",
                                                 (m, l, k, i, p, b1, b2, b3))
    # equivariance in the nu slot: mu o_i (s_j nu) = s_{i+j-1}(mu o_i nu)
    for m in op.basis:
        for l in op.basis:
            if m + l - 1 not in op.basis:
                continue
            for b1 in op.basis[m]:
                for b2 in op.basis[l]:
                    mu, nu = {b1: F(1)}, {b2: F(1)}
                    for i in range(1, m + 1):
                        for j in range(1, l):
                            lhs = op.compose(m, i, l, mu,
                                             op.act_coxeter(l, j, nu))
                            rhs = op.act_coxeter(
                                m + l - 1, i + j - 1,
                                op.compose(m, i, l, mu, nu))
                            if lhs != rhs:
                                rep.fail("equivariance_inner",
                                         (m, i, l, j, b1, b2))
    return rep


# ---------------------------------------------------------------------------
# builtins


def _ass_word_tau(m, word):
    """Necklace relabelling l -> l + 1 mod m + 1 of (0, word)."""
    labels = (0,) + word
    new = tuple((l + 1) % (m + 1) for l in labels)
    z = new.index(0)
    rot = new[z:] + new[:z]
    return rot[1:]


def _ass(M) -> CyclicOperadData:
    basis = {m: [p for p in itertools.permutations(range(1, m + 1))]
             for m in range(1, M + 1)}
    coxeter = {}
    tau = {}
    comp = {}
    for m in range(1, M + 1):
        for j in range(1, m):
            sw = {j: j + 1, j + 1: j}
            coxeter[(m, j)] = {
                w: {tuple(sw.get(a, a) for a in w): F(1)} for w in basis[m]}
        tau[m] = {w: {_ass_word_tau(m, w): F(1)} for w in basis[m]}
    for m in range(1, M + 1):
        for l in range(1, M + 1):
            if m + l - 1 > M:
                continue
            for i in range(1, m + 1):
                table = {}
                for w1 in basis[m]:
                    for w2 in basis[l]:
                        out = []
                        for a in w1:
                            if a < i:
                                out.append(a)
                            elif a > i:
                                out.append(a + l - 1)
                            else:
                                out.extend(b + i - 1 for b in w2)
                        table[(w1, w2)] = {tuple(out): F(1)}
                comp[(m, i, l)] = table
    return CyclicOperadData("Ass", M, basis, coxeter, tau, comp)


def _com(M) -> CyclicOperadData:
    basis = {m: ["c"] for m in range(1, M + 1)}
    coxeter = {(m, j): {"c": {"c": F(1)}}
               for m in range(1, M + 1) for j in range(1, m)}
    tau = {m: {"c": {"c": F(1)}} for m in range(1, M + 1)}
    comp = {(m, i, l): {("c", "c"): {"c": F(1)}}
            for m in range(1, M + 1) for l in range(1, M + 1)
            if m + l - 1 <= M for i in range(1, m + 1)}
    return CyclicOperadData("Com", M, basis, coxeter, tau, comp)


def _lie_expand(label) -> dict:
    """Expansion of the left-normed bracket [[..[x_a, x_b], ..], x_z]
    into Ass permutation words."""
    out = {(label[0],): F(1)}
    for b in label[1:]:
        new: dict = {}
        for w, c in out.items():
            new[w + (b,)] = new.get(w + (b,), F(0)) + c
            new[(b,) + w] = new.get((b,) + w, F(0)) - c
        out = {k: v for k, v in new.items() if v}
    return out


def _lie(M) -> CyclicOperadData:
    ass = _ass(M)
    basis = {m: [(1,) + p for p in itertools.permutations(range(2, m + 1))]
             for m in range(1, M + 1)}
    solvers = {}
    for m in range(1, M + 1):
        tr = TrackedReducer()
        for b in basis[m]:
            tr.add(_lie_expand(b), b)
        solvers[m] = tr

    def solve_back(m, ass_vec):
        combo = solvers[m].express(ass_vec)
        assert combo is not None, "expansion left the multilinear Lie span"
        return combo

    coxeter = {}
    tau = {}
    comp = {}
    for m in range(1, M + 1):
        for j in range(1, m):
            coxeter[(m, j)] = {
                b: solve_back(m, ass.act_coxeter(m, j, _lie_expand(b)))
                for b in basis[m]}
        tau[m] = {b: solve_back(m, ass.act_tau(m, _lie_expand(b)))
                  for b in basis[m]}
    for m in range(1, M + 1):
        for l in range(1, M + 1):
            if m + l - 1 > M:
                continue
            for i in range(1, m + 1):
                table = {}
                for b1 in basis[m]:
                    for b2 in basis[l]:
                        av = ass.compose(m, i, l, _lie_expand(b1),
                                         _lie_expand(b2))
                        table[(b1, b2)] = solve_back(m + l - 1, av)
                comp[(m, i, l)] = table
    return CyclicOperadData("Lie", M, basis, coxeter, tau, comp)


def builtin_operad(name: str, M: int) -> CyclicOperadData:
    if M < 1 or M > 5:
        raise ValueError(f"unsupported arity bound {M}")
    if name == "Ass":
        return _ass(M)
    if name == "Com":
        return _com(M)
    if name == "Lie":
        return _lie(M)
    raise ValueError(f"unknown operad {name!r}")


# ---------------------------------------------------------------------------
# free-algebra calculus over a graded letter set


class OperadCalculus:
    """Cyclic-quotient calculus for the free P-algebra on graded
    letters with a skew pairing.

    Free-algebra elements: vectors over (m, basis, word) with word a
    length-m letter tuple, canonical modulo the diagonal action.
    Cyclic classes: vectors over the same shape with length-(m+1)
    words, canonical modulo the diagonal action of the full symmetric
    group on m + 1 slots (through tau and the Coxeter generators).
    """

    def __init__(self, op: CyclicOperadData, degrees: dict, pairing: dict):
        self.op = op
        self.degrees = dict(degrees)
        self.letters = list(degrees)
        self.pairing = {k: F(v) for k, v in pairing.items() if v}
        self._free_red: dict = {}
        self._cyc_red: dict = {}

    def deg(self, word) -> int:
        return sum(self.degrees[v] for v in word)

    def _swap_sign(self, word, j) -> Fraction:
        return F(-1) if (self.degrees[word[j - 1]] * self.degrees[word[j]]) % 2 \
            else F(1)

    # -- canonical forms ---------------------------------------------------
    def _free_reducer(self, m) -> RowReducer:
        red = self._free_red.get(m)
        if red is None:
            red = RowReducer()
            for b in self.op.basis[m]:
                for word in itertools.product(self.letters, repeat=m):
                    for j in range(1, m):
                        bvec = self.op.act_coxeter(m, j, {b: F(1)})
                        sw = word[:j - 1] + (word[j], word[j - 1]) + word[j + 1:]
                        sgn = self._swap_sign(word, j)
                        rel = {(m, b, word): F(1)}
                        for b2, c in bvec.items():
                            rel = vec_add(rel, {(m, b2, sw): c}, -sgn)
                        if rel:
                            red.add(rel)
            self._free_red[m] = red
        return red

    def _cyc_reducer(self, m) -> RowReducer:
        red = self._cyc_red.get(m)
        if red is None:
            red = RowReducer()
            for b in self.op.basis[m]:
                for word in itertools.product(self.letters, repeat=m + 1):
                    for j in range(1, m):
                        bvec = self.op.act_coxeter(m, j, {b: F(1)})
                        sw = word[:j - 1] + (word[j], word[j - 1]) + word[j + 1:]
                        sgn = self._swap_sign(word, j)
                        rel = {(m, b, word): F(1)}
                        for b2, c in bvec.items():
                            rel = vec_add(rel, {(m, b2, sw): c}, -sgn)
                        if rel:
                            red.add(rel)
                    # tau: rotate the last slot to the front
                    bvec = self.op.act_tau(m, {b: F(1)})
                    rot = (word[-1],) + word[:-1]
                    sgn = F(-1) if (self.degrees[word[-1]] *
                                    self.deg(word[:-1])) % 2 else F(1)
                    rel = {(m, b, word): F(1)}
                    for b2, c in bvec.items():
                        rel = vec_add(rel, {(m, b2, rot): c}, -sgn)
                    if rel:
                        red.add(rel)
            self._cyc_red[m] = red
        return red

    def free_canonical(self, vec: dict) -> dict:
        out: dict = {}
        by_m: dict = {}
        for (m, b, word), c in vec.items():
            by_m.setdefault(m, {})[(m, b, word)] = c
        for m, sub in by_m.items():
            out = vec_add(out, self._free_reducer(m).reduce(sub))
        return out

    def cyclic_canonical(self, vec: dict) -> dict:
        out: dict = {}
        by_m: dict = {}
        for (m, b, word), c in vec.items():
            by_m.setdefault(m, {})[(m, b, word)] = c
        for m, sub in by_m.items():
            out = vec_add(out, self._cyc_reducer(m).reduce(sub))
        return out

    # -- dimensions --------------------------------------------------------
    def cyclic_dimension(self, m: int, degree=None) -> int:
        labels = [(m, b, word) for b in self.op.basis[m]
                  for word in itertools.product(self.letters, repeat=m + 1)
                  if degree is None or self.deg(word) == degree]
        red = self._cyc_reducer(m)
        count = 0
        seen = RowReducer()
        for lab in labels:
            res = red.reduce({lab: F(1)})
            if res and seen.add(res):
                count += 1
        return count

    def cyclic_dimension_oracle(self, m: int, degree=None) -> Fraction:
        """Burnside average of traces of the diagonal action."""
        import math
        total = F(0)
        for sigma in itertools.permutations(range(m + 1)):
            # character on P(m): decompose sigma = tau^a . pi, pi(0) = 0
            a = sigma[0]
            tau_inv_a = tuple((l - a) % (m + 1) for l in range(m + 1))
            pi = tuple(tau_inv_a[sigma[i]] for i in range(m + 1))
            chi = F(0)
            for b in self.op.basis[m]:
                v = self.op.act_perm(m, pi[1:], {b: F(1)})
                v = self.op.act_tau(m, v, a)
                chi += v.get(b, F(0))
            if not chi:
                continue
            # signed character on words: slot i holds label i-1's factor
            tr = F(0)
            for word in itertools.product(self.letters, repeat=m + 1):
                if degree is not None and self.deg(word) != degree:
                    continue
                # diagonal action sends slot for label l to slot sigma(l)
                new = [None] * (m + 1)
                for l in range(m + 1):
                    new[sigma[l]] = word[l]
                if tuple(new) != word:
                    continue
                # Koszul sign of the induced permutation of graded slots
                perm = [sigma[l] for l in range(m + 1)]
                sgn = 1
                for p in range(m + 1):
                    for q in range(p + 1, m + 1):
                        if perm[p] > perm[q] and \
                                self.degrees[word[p]] % 2 and \
                                self.degrees[word[q]] % 2:
                            sgn = -sgn
                tr += sgn
            total += chi * tr
        return total / math.factorial(m + 1)

    # -- cyclic derivative and bracket ------------------------------------
    def cyclic_derivative(self, alpha: dict) -> dict:
        """R_cyc -> R (x) V by the norm of the diagonal cyclic action."""
        out: dict = {}
        for (m, b, word), coeff in alpha.items():
            vec = {b: F(1)}
            cur = word
            sgn = F(1)
            for _ in range(m + 1):
                for b2, c in vec.items():
                    k = ((m, b2, cur[:-1]), cur[-1])
                    out[k] = out.get(k, F(0)) + coeff * sgn * c
                # apply tau once more (rotate last slot to front)
                vec = self.op.act_tau(m, vec)
                s = F(-1) if (self.degrees[cur[-1]] *
                              self.deg(cur[:-1])) % 2 else F(1)
                sgn = sgn * s
                cur = (cur[-1],) + cur[:-1]
        # canonicalize the R part
        canon: dict = {}
        for ((m, b, w), v), c in out.items():
            red = self.free_canonical({(m, b, w): c})
            for lab, c2 in red.items():
                canon[(lab, v)] = canon.get((lab, v), F(0)) + c2
        return {k: c for k, c in canon.items() if c}

    def project_pair(self, x, y) -> dict:
        """p: R (x) R -> R_cyc on labels x = (n, mu, vs), y = (l, nu, ws)."""
        n, bmu, vs = x
        l, bnu, ws = y
        if n == 0 or l == 0:
            return {}
        ydeg = self.deg(ws)
        sgn = F(-1) if (self.degrees[vs[0]] *
                        ((self.deg(vs[1:]) + ydeg) % 2)) % 2 else F(1)
        mu_rot = self.op.act_tau(n, {bmu: F(1)}, n)  # tau^{-1} = tau^n
        res = self.op.compose(n, n, l, mu_rot, {bnu: F(1)})
        word = vs[1:] + ws + (vs[0],)
        return self.cyclic_canonical(
            {(n + l - 1, b, word): sgn * c for b, c in res.items()})

    def p_bracket(self, alpha: dict, beta: dict) -> dict:
        da = self.cyclic_derivative(alpha)
        db = self.cyclic_derivative(beta)
        out: dict = {}
        for (xk, v), cv in da.items():
            for (yk, w), cw in db.items():
                pr = self.pairing.get((v, w))
                if not pr:
                    continue
                sgn = F(-1) if (self.degrees[w] * self.deg(yk[2])) % 2 else F(1)
                out = vec_add(out, self.project_pair(xk, yk),
                              sgn * cv * cw * pr)
        return {k: c for k, c in out.items() if c}

    def p_action(self, alpha: dict, x: dict) -> dict:
        """Derivation action of a cyclic class on the free algebra."""
        da = self.cyclic_derivative(alpha)
        out: dict = {}
        for ((n, bmu, avs), v), cv in da.items():
            adeg = self.deg(avs)
            for (mx, bnu, ws), cx in x.items():
                for j in range(1, mx + 1):
                    pr = self.pairing.get((v, ws[j - 1]))
                    if not pr:
                        continue
                    pre = ws[:j - 1]
                    post = ws[j:]
                    sgn = F(-1) if (((self.degrees[ws[j - 1]] + adeg) %
                                     2) * self.deg(pre)) % 2 else F(1)
                    res = self.op.compose(mx, j, n, {bnu: F(1)},
                                          {bmu: F(1)})
                    word = pre + avs + post
                    piece = {(mx + n - 1, b, word): c
                             for b, c in res.items()}
                    out = vec_add(out, self.free_canonical(piece),
                                  sgn * cv * cx * pr)
        return {k: c for k, c in out.items() if c}
