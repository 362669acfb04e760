"""Free graded-commutative polynomial algebras with differential and
Poisson bracket.

Monomials are tuples of generator labels in a fixed order; sorting a
product into canonical form picks up the Koszul sign (one -1 per swap of
two odd generators) and kills squares of odd generators.  Differential
and bracket are stored on generators only; everything else is a
derivation/biderivation closure, so correctness reduces to finite
generator checks (performed by `poisson_from_pairing` and the CE
constructor).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .linalg import vec_add, vec_scale

F = Fraction


class GCElement:
    """Sparse map canonical-monomial -> Fraction."""

    __slots__ = ("terms", "truncated")

    def __init__(self, terms=None, truncated=False):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self.truncated = truncated

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, GCElement) and self.terms == other.terms

    def __repr__(self):
        return f"GCElement({self.terms!r})"

    def add(self, other, coeff=F(1)):
        return GCElement(vec_add(self.terms, other.terms, coeff),
                         self.truncated or other.truncated)

    def scale(self, coeff):
        return GCElement(vec_scale(self.terms, coeff), self.truncated)


UNIT = ()


class GCAlgebra:
    """Free graded-commutative algebra on labelled generators.

    degrees: label -> int.  d_gen: label -> GCElement (degree -1).
    bracket_gen: (label, label) -> Fraction, a constant bracket of
    degree `shift`; Jacobi is then automatic for the biderivation
    extension.  D bounds monomial length (None = unbounded).
    """

    def __init__(self, degrees: dict, d_gen=None, bracket_gen=None,
                 shift: int = 0, D=None):
        self.degrees = dict(degrees)
        self.gen_order = {g: i for i, g in enumerate(self.degrees)}
        self.d_gen = {k: v for k, v in (d_gen or {}).items() if v}
        self.bracket_gen = {k: F(v) for k, v in (bracket_gen or {}).items() if v}
        self.shift = int(shift)
        self.D = D

    def deg(self, g) -> int:
        return self.degrees[g]

    def monomial_degree(self, m) -> int:
        return sum(self.degrees[g] for g in m)

    def degree_of(self, f: GCElement):
        ds = {self.monomial_degree(m) for m in f.terms}
        if len(ds) == 1:
            return ds.pop()
        return None

    # -- canonicalization --------------------------------------------------
    def canonical(self, gens: tuple) -> tuple:
        """(sorted monomial, sign) or (None, 0) when an odd gen repeats."""
        gens = list(gens)
        sign = 1
        # insertion sort, counting odd-odd transpositions
        for i in range(1, len(gens)):
            j = i
            while j > 0 and self.gen_order[gens[j - 1]] > self.gen_order[gens[j]]:
                if self.deg(gens[j - 1]) % 2 and self.deg(gens[j]) % 2:
                    sign = -sign
                gens[j - 1], gens[j] = gens[j], gens[j - 1]
                j -= 1
        for a, b in zip(gens, gens[1:]):
            if a == b and self.deg(a) % 2:
                return None, 0
        return tuple(gens), sign

    def element(self, gens: tuple, coeff=F(1)) -> GCElement:
        m, sign = self.canonical(gens)
        if m is None or not coeff:
            return GCElement()
        if self.D is not None and len(m) > self.D:
            return GCElement({}, truncated=True)
        return GCElement({m: coeff * sign})

    def unit(self, coeff=F(1)) -> GCElement:
        return GCElement({UNIT: coeff})

    def multiply(self, a: GCElement, b: GCElement) -> GCElement:
        out = GCElement({}, a.truncated or b.truncated)
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                term = self.element(ma + mb, ca * cb)
                out = out.add(term)
                out.truncated = out.truncated or term.truncated
        return out

    # -- differential ------------------------------------------------------
    def differential(self, f: GCElement) -> GCElement:
        out = GCElement()
        for m, coeff in f.terms.items():
            sign = F(1)
            for i, g in enumerate(m):
                dg = self.d_gen.get(g)
                if dg:
                    rest_l = GCElement({m[:i]: sign * coeff})
                    rest_r = GCElement({m[i + 1:]: F(1)})
                    out = out.add(self.multiply(self.multiply(rest_l, dg), rest_r))
                if self.deg(g) % 2:
                    sign = -sign
        return out

    def check_d_squared(self):
        """Witness generator with d(d g) != 0, or None."""
        for g in self.degrees:
            if self.differential(self.differential(self.element((g,)))):
                return g
        return None

    # -- Poisson bracket ---------------------------------------------------
    def bracket(self, a: GCElement, b: GCElement) -> GCElement:
        out = GCElement()
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                out = out.add(self._bracket_mon(ma, mb), ca * cb)
        return out

    def _bracket_mon(self, ma: tuple, mb: tuple) -> GCElement:
        if not ma or not mb:
            return GCElement()
        if len(mb) > 1:
            # Leibniz in the second argument
            h, rest = mb[0], mb[1:]
            da = self.monomial_degree(ma)
            t1 = self.multiply(self._bracket_mon(ma, (h,)), GCElement({rest: F(1)}))
            sgn = F(-1) if ((da + self.shift) * self.deg(h)) % 2 else F(1)
            t2 = self.multiply(self.element((h,)), self._bracket_mon(ma, rest))
            return t1.add(t2, sgn)
        if len(ma) == 1:
            val = self.bracket_gen.get((ma[0], mb[0]), F(0))
            return GCElement({UNIT: val}) if val else GCElement()
        # swap via graded skew with shift
        da = self.monomial_degree(ma)
        db = self.monomial_degree(mb)
        sgn = F(-1) if ((da + self.shift) * (db + self.shift)) % 2 else F(1)
        return self._bracket_mon(mb, ma).scale(-sgn)

    # -- Kahler forms ------------------------------------------------------
    # forms are dicts (monomial, generator) -> Fraction meaning f * dg

    def form_add(self, a: dict, b: dict, coeff=F(1)) -> dict:
        return vec_add(a, b, coeff)

    def form_scale(self, a: dict, coeff) -> dict:
        return vec_scale(a, coeff)

    def form_mul(self, f: GCElement, w: dict) -> dict:
        out: dict = {}
        for (m, g), c in w.items():
            prod = self.multiply(f, GCElement({m: c}))
            for m2, c2 in prod.terms.items():
                key = (m2, g)
                out[key] = out.get(key, F(0)) + c2
        return {k: v for k, v in out.items() if v}

    def form_rmul(self, w: dict, h: GCElement) -> dict:
        """(f dg) * h = (-1)^{|g||h|} (f h) dg, per monomial of h."""
        out: dict = {}
        for (m, g), c in w.items():
            for mh, ch in h.terms.items():
                sgn = F(-1) if (self.deg(g) * self.monomial_degree(mh)) % 2 else F(1)
                prod = self.multiply(GCElement({m: sgn * c * ch}),
                                     GCElement({mh: F(1)}))
                for m2, c2 in prod.terms.items():
                    key = (m2, g)
                    out[key] = out.get(key, F(0)) + c2
        return {k: v for k, v in out.items() if v}

    def kahler_differential(self, f: GCElement) -> dict:
        """Leibniz extension of g -> dg; moves each generator to the end."""
        out: dict = {}
        for m, coeff in f.terms.items():
            for i, g in enumerate(m):
                suffix_deg = self.monomial_degree(m[i + 1:])
                sgn = F(-1) if (self.deg(g) * suffix_deg) % 2 else F(1)
                rest = self.element(m[:i] + m[i + 1:], sgn * coeff)
                for m2, c2 in rest.terms.items():
                    key = (m2, g)
                    out[key] = out.get(key, F(0)) + c2
        return {k: v for k, v in out.items() if v}

    def form_differential(self, w: dict) -> dict:
        """d_alg on forms: delta(f dg) = (delta f) dg + (-1)^{|f|} f d(delta g)."""
        out: dict = {}
        for (m, g), c in w.items():
            df = self.differential(GCElement({m: c}))
            for m2, c2 in df.terms.items():
                key = (m2, g)
                out[key] = out.get(key, F(0)) + c2
            dg = self.d_gen.get(g)
            if dg:
                sgn = F(-1) if self.monomial_degree(m) % 2 else F(1)
                piece = self.form_mul(GCElement({m: sgn * c}),
                                      self.kahler_differential(dg))
                out = vec_add(out, piece)
        return {k: v for k, v in out.items() if v}

    def form_bracket(self, eta: GCElement, w: dict) -> dict:
        """Poisson action on forms:
        {eta, f dg} = {eta,f} dg + (-1)^{(|eta|+s)|f|} f d{eta,g}."""
        d_eta = self.degree_of(eta)
        out: dict = {}
        for (m, g), c in w.items():
            br = self.bracket(eta, GCElement({m: c}))
            for m2, c2 in br.terms.items():
                key = (m2, g)
                out[key] = out.get(key, F(0)) + c2
            brg = self.bracket(eta, self.element((g,)))
            if brg:
                sgn = F(-1) if ((d_eta + self.shift) * self.monomial_degree(m)) % 2 else F(1)
                piece = self.form_mul(GCElement({m: sgn * c}),
                                      self.kahler_differential(brg))
                out = vec_add(out, piece)
        return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg construction


class LieCobracketData:
    """Cobracket data on a graded space: label -> dict (a,b) -> coeff,
    co-antisymmetric; plus an internal differential of degree -1."""

    def __init__(self, degrees: dict, cobracket: dict, differential: dict):
        self.degrees = dict(degrees)
        self.cobracket = {k: dict(v) for k, v in cobracket.items() if v}
        self.differential = {k: dict(v) for k, v in differential.items() if v}

    def validate_coantisymmetry(self) -> list:
        bad = []
        for g, terms in self.cobracket.items():
            flipped: dict = {}
            for (a, b), c in terms.items():
                sgn = F(-1) if (self.degrees[a] * self.degrees[b]) % 2 else F(1)
                flipped[(b, a)] = flipped.get((b, a), F(0)) - sgn * c
            flipped = {k: v for k, v in flipped.items() if v}
            if flipped != terms:
                bad.append(g)
        return bad


def ce_algebra(data: LieCobracketData, shift: int = 0, D=None) -> GCAlgebra:
    """Chevalley-Eilenberg algebra: Sym on the shifted space with the
    differential combining the internal part and the cobracket.

    d(x_g) = -x_{dg} + (1/2) sum +- x_{g'} x_{g''}; the graded-commutative
    product merges the two cobracket orderings, and d^2 = 0 on generators
    certifies co-Jacobi/co-Leibniz of the input (witness raised on
    failure).
    """
    bad = data.validate_coantisymmetry()
    if bad:
        raise ValueError(f"cobracket not co-antisymmetric at {bad[0]!r}")
    degrees = {g: d - 1 for g, d in data.degrees.items()}
    alg = GCAlgebra(degrees, shift=shift, D=D)
    d_gen = {}
    for g in degrees:
        out = GCElement()
        for t, c in data.differential.get(g, {}).items():
            out = out.add(alg.element((t,), -c))
        for (a, b), c in data.cobracket.get(g, {}).items():
            sgn = F(-1) if (data.degrees[a] - 1) % 2 else F(1)
            out = out.add(alg.element((a, b), sgn * c * F(1, 2)))
        if out:
            d_gen[g] = out
    alg.d_gen = d_gen
    w = alg.check_d_squared()
    if w is not None:
        raise ValueError(f"chevalley-eilenberg differential does not square "
                         f"to zero at {w!r} (co-Jacobi failure)")
    return alg


def poisson_from_pairing(alg: GCAlgebra, pairing: dict, shift: int) -> GCAlgebra:
    """Install a constant bracket table; verify shifted antisymmetry,
    homogeneity, and d-compatibility on generator pairs (the latter is
    exactly where cyclicity of the input pairing is consumed)."""
    for (a, b), val in pairing.items():
        if not val:
            continue
        if alg.deg(a) + alg.deg(b) != -shift:
            raise ValueError(f"pairing not homogeneous of degree {shift} at ({a!r},{b!r})")
        sgn = F(-1) if ((alg.deg(a) + shift) * (alg.deg(b) + shift)) % 2 else F(1)
        if pairing.get((b, a), F(0)) != -sgn * val:
            raise ValueError(f"pairing not shifted-antisymmetric at ({a!r},{b!r})")
    out = GCAlgebra(alg.degrees, alg.d_gen, pairing, shift=shift, D=alg.D)
    for a in alg.degrees:
        for b in alg.degrees:
            ea, eb = out.element((a,)), out.element((b,))
            lhs = out.differential(out.bracket(ea, eb))
            sgn = F(-1) if (out.deg(a) + shift) % 2 else F(1)
            rhs = out.bracket(out.differential(ea), eb).add(
                out.bracket(ea, out.differential(eb)), sgn)
            if lhs != rhs:
                raise ValueError(f"bracket not compatible with differential "
                                 f"at generator pair ({a!r}, {b!r})")
    return out
