"""Weight-truncated free graded algebra on the shifted reduced coalgebra.

R = T(V) with V the degree-shifted reduced part (|v| = |c| - 1), carrying
the differential induced by the coalgebra differential and reduced
coproduct.  Words of length > W are dropped; because the quadratic part
of the differential raises weight, the weight-<=W part is a quotient
complex and the differential still squares to zero exactly.

The cyclic quotient (modulo constants and graded commutators) is handled
by canonical forms: per weight we row-reduce the span of
word - (signed rotation) and take residues.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .linalg import (
    GradedSpace,
    LabelOrder,
    LinearMap,
    RowReducer,
    TrackedReducer,
    vec_add,
    vec_scale,
)

F = Fraction


class TensorElement:
    """Sparse element of T(V): dict word-tuple -> Fraction."""

    __slots__ = ("terms", "truncated")

    def __init__(self, terms=None, truncated=False):
        self.terms = {w: c for w, c in (terms or {}).items() if c}
        self.truncated = truncated

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __repr__(self):
        return f"TensorElement({self.terms!r})"

    def add(self, other: "TensorElement", coeff: Fraction = F(1)) -> "TensorElement":
        return TensorElement(vec_add(self.terms, other.terms, coeff),
                             self.truncated or other.truncated)

    def scale(self, coeff: Fraction) -> "TensorElement":
        return TensorElement(vec_scale(self.terms, coeff), self.truncated)


def word_elem(*letters) -> TensorElement:
    return TensorElement({tuple(letters): F(1)})


ONE_WORD = ()


class CyclicClass:
    """Canonical-form element of the cyclic quotient of T(V)."""

    __slots__ = ("algebra", "rep")

    def __init__(self, algebra, rep: TensorElement):
        self.algebra = algebra
        self.rep = rep

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        return (isinstance(other, CyclicClass)
                and self.algebra is other.algebra
                and self.rep == other.rep)

    def __repr__(self):
        return f"CyclicClass({self.rep.terms!r})"

    def add(self, other: "CyclicClass", coeff=F(1)) -> "CyclicClass":
        return CyclicClass(self.algebra, self.rep.add(other.rep, coeff))

    def scale(self, coeff) -> "CyclicClass":
        return CyclicClass(self.algebra, self.rep.scale(coeff))


class Span:
    """A subspace with tracked generators (tag -> raw vector)."""

    def __init__(self, order=None):
        self.reducer = TrackedReducer(order)
        self.generators: dict = {}

    def add(self, tag, vec: dict):
        if vec:
            self.generators[tag] = vec
            self.reducer.add(vec, tag)

    @property
    def rank(self) -> int:
        return self.reducer.rank

    def contains(self, vec: dict) -> bool:
        return self.reducer.contains(vec)

    def express(self, vec: dict):
        return self.reducer.express(vec)


class TruncatedAlgebra:
    """T(V) up to weight W for V = shifted reduced coalgebra."""

    def __init__(self, coalgebra, W: int):
        self.coalgebra = coalgebra
        self.W = int(W)
        self.letters = list(coalgebra.reduced.labels)
        self.deg = {l: coalgebra.deg(l) - 1 for l in self.letters}
        self.n = coalgebra.pairing_degree
        self.s = self.n + 2  # bracket degree shift
        # induced pairing on V: <s a, s b> = (-1)^{|a|-1} <a,b>_C, the
        # sign read off the shifted degree of the first argument; this
        # normalization gives the symplectic pair <x,y> = +1
        self.pairing = {}
        for (a, b), val in coalgebra.pairing.items():
            sgn = F(-1) if (coalgebra.deg(a) - 1) % 2 else F(1)
            self.pairing[(a, b)] = sgn * val
        # cobar differential on generators: -shift(d_C) + split via coproduct
        self.d_gen = {}
        for v in self.letters:
            out: dict = {}
            for t, c in coalgebra.d(v).items():
                out[(t,)] = out.get((t,), F(0)) - c
            for (p, q), c in coalgebra.delta(v).items():
                sgn = F(-1) if coalgebra.deg(p) % 2 else F(1)
                out[(p, q)] = out.get((p, q), F(0)) + sgn * c
            self.d_gen[v] = TensorElement(out)
        self.order = LabelOrder()
        self.order.key(ONE_WORD)
        for w in range(1, self.W + 1):
            for word in itertools.product(self.letters, repeat=w):
                self.order.key(word)
        self._cyclic_reducers: dict = {}
        self._lie: dict = {}
        self._sym: dict = {}
        self._lambda: dict = {}
        self._theta: dict = {}

    # -- basic bookkeeping -------------------------------------------------
    def word_degree(self, word) -> int:
        return sum(self.deg[l] for l in word)

    def pair(self, u, w) -> Fraction:
        return self.pairing.get((u, w), F(0))

    def words(self, weight: int):
        if weight > self.W:
            raise ValueError(f"weight {weight} exceeds truncation {self.W}")
        return itertools.product(self.letters, repeat=weight)

    def degree_of(self, elem: TensorElement):
        ds = {self.word_degree(w) for w in elem.terms}
        if len(ds) == 1:
            return ds.pop()
        return None

    # -- algebra operations ------------------------------------------------
    def multiply(self, a: TensorElement, b: TensorElement) -> TensorElement:
        out: dict = {}
        truncated = a.truncated or b.truncated
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                w = wa + wb
                if len(w) > self.W:
                    truncated = True
                    continue
                out[w] = out.get(w, F(0)) + ca * cb
        return TensorElement(out, truncated)

    def differential(self, a: TensorElement) -> TensorElement:
        out = TensorElement()
        for word, coeff in a.terms.items():
            sign = F(1)
            for i, letter in enumerate(word):
                dv = self.d_gen[letter]
                if dv:
                    prefix = TensorElement({word[:i]: sign * coeff})
                    term = self.multiply(self.multiply(prefix, dv),
                                         TensorElement({word[i + 1:]: F(1)}))
                    out = out.add(term)
                if self.deg[letter] % 2:
                    sign = -sign
        return out

    # -- cyclic quotient ---------------------------------------------------
    def rotate(self, word) -> tuple:
        """One signed rotation: returns (new_word, sign)."""
        if len(word) < 2:
            return word, F(1)
        head, rest = word[0], word[1:]
        sgn = F(-1) if (self.deg[head] * self.word_degree(rest)) % 2 else F(1)
        return rest + (head,), sgn

    def _cyclic_reducer(self, weight: int) -> RowReducer:
        red = self._cyclic_reducers.get(weight)
        if red is None:
            red = RowReducer(self.order)
            if weight == 0:
                red.add({ONE_WORD: F(1)})
            else:
                for word in self.words(weight):
                    rot, sgn = self.rotate(word)
                    red.add(vec_add({word: F(1)}, {rot: sgn}, F(-1)))
            self._cyclic_reducers[weight] = red
        return red

    def project_cyclic(self, a: TensorElement) -> CyclicClass:
        by_weight: dict = {}
        for word, coeff in a.terms.items():
            by_weight.setdefault(len(word), {})[word] = coeff
        out: dict = {}
        for weight, vec in by_weight.items():
            res = self._cyclic_reducer(weight).reduce(vec)
            out = vec_add(out, res)
        return CyclicClass(self, TensorElement(out, a.truncated))

    def cyclic_dimension(self, weight: int) -> int:
        total = len(self.letters) ** weight if weight else 1
        return total - self._cyclic_reducer(weight).rank

    # -- free Lie machinery ------------------------------------------------
    def bracket_word_expansion(self, bw: tuple) -> TensorElement:
        """Left-normed commutator [b1,[b2,...[b_{k-1},b_k]...]] in T(V)."""
        if len(bw) == 1:
            return word_elem(bw[0])
        inner = self.bracket_word_expansion(bw[1:])
        a = word_elem(bw[0])
        da = self.deg[bw[0]]
        di = self.word_degree(bw[1:])
        sgn = F(-1) if (da * di) % 2 else F(1)
        return self.multiply(a, inner).add(self.multiply(inner, a), -sgn)

    def bracket_words(self, weight: int) -> list:
        return [bw for bw in itertools.product(self.letters, repeat=weight)]

    def lie_span(self, weight: int) -> Span:
        span = self._lie.get(weight)
        if span is None:
            span = Span(self.order)
            for bw in self.bracket_words(weight):
                span.add(bw, self.bracket_word_expansion(bw).terms)
            self._lie[weight] = span
        return span

    def symmetrized_product(self, factors: tuple) -> TensorElement:
        """(1/p!) sum over orders with Koszul signs of bracket-word factors."""
        p = len(factors)
        if p == 0:
            return TensorElement({ONE_WORD: F(1)})
        expansions = [self.bracket_word_expansion(bw) for bw in factors]
        degs = [self.word_degree(bw) for bw in factors]
        out = TensorElement()
        for perm in itertools.permutations(range(p)):
            sgn = _koszul_perm_sign(perm, degs)
            prod = TensorElement({ONE_WORD: sgn})
            for i in perm:
                prod = self.multiply(prod, expansions[i])
            out = out.add(prod)
        import math
        return out.scale(F(1, math.factorial(p)))

    def _factor_tuples(self, p: int, weight: int):
        """Multisets of p bracket words with weights summing to `weight`."""
        all_bws = []
        for w in range(1, weight - p + 2):
            all_bws.extend(self.bracket_words(w))
        for combo in itertools.combinations_with_replacement(all_bws, p):
            if sum(len(bw) for bw in combo) == weight:
                yield combo

    def sym_power_span(self, p: int, weight: int) -> Span:
        key = (p, weight)
        span = self._sym.get(key)
        if span is None:
            span = Span(self.order)
            if p == 0:
                if weight == 0:
                    span.add((), {ONE_WORD: F(1)})
            else:
                for factors in self._factor_tuples(p, weight):
                    span.add(factors, self.symmetrized_product(factors).terms)
            self._sym[key] = span
        return span

    def lambda_span(self, p: int, weight: int) -> Span:
        key = (p, weight)
        span = self._lambda.get(key)
        if span is None:
            span = Span(self.order)
            sym = self.sym_power_span(p, weight)
            for factors, vec in sym.generators.items():
                cls = self.project_cyclic(TensorElement(vec))
                span.add(factors, cls.rep.terms)
            self._lambda[key] = span
        return span

    def theta_span(self, p: int, weight: int) -> Span:
        """Sym^p tensor V inside R (x) V, at total weight `weight`."""
        key = (p, weight)
        span = self._theta.get(key)
        if span is None:
            span = Span()
            sym = self.sym_power_span(p, weight - 1)
            for factors, vec in sym.generators.items():
                for v in self.letters:
                    span.add((factors, v),
                             {(word, v): c for word, c in vec.items()})
            self._theta[key] = span
        return span

    # -- complexes ---------------------------------------------------------
    def word_space(self) -> GradedSpace:
        degrees = {ONE_WORD: 0}
        for w in range(1, self.W + 1):
            for word in self.words(w):
                degrees[word] = self.word_degree(word)
        return GradedSpace(degrees)

    def overflow_degrees(self) -> set:
        """Internal degrees of weight-(W+1) words: homology touching
        these (or one below) is affected by the truncation."""
        degs = set()
        for word in itertools.product(self.letters, repeat=self.W + 1):
            d = self.word_degree(word)
            degs.add(d)
            degs.add(d - 1)
        return degs

    def cobar_complex(self):
        from .linalg import ChainComplex
        space = self.word_space()
        images = {}
        for word in space.labels:
            img = self.differential(TensorElement({word: F(1)}))
            if img:
                images[word] = img.terms
        diff = LinearMap(space, space, images, degree=-1)
        return ChainComplex(space, diff, unsound=self.overflow_degrees())


def _koszul_perm_sign(perm, degs) -> Fraction:
    """Sign of permuting graded symbols of the given degrees into order perm."""
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j] and degs[perm[i]] % 2 and degs[perm[j]] % 2:
                sign = -sign
    return F(sign)


def free_lie_dimension_oracle(num_generators: int, weight: int) -> int:
    """Witt formula for evenly-graded generators: (1/w) sum mu(d) k^{w/d}."""

    def mobius(n: int) -> int:
        result = 1
        d = 2
        while d * d <= n:
            if n % d == 0:
                n //= d
                if n % d == 0:
                    return 0
                result = -result
            d += 1
        if n > 1:
            result = -result
        return result

    total = 0
    for d in range(1, weight + 1):
        if weight % d == 0:
            total += mobius(d) * num_generators ** (weight // d)
    assert total % weight == 0
    return total // weight
