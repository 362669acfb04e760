"""Cyclic DG coalgebras and finite-dimensional Lie algebra data.

A cyclic coalgebra here is the reduced part of a coaugmented conilpotent
DG coalgebra together with a graded-symmetric pairing of degree n,
meaning <a,b> is supported on |a|+|b| = -n.  The validator checks the
eight defining identities elementwise and reports witnesses instead of
raising.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .linalg import (
    GradedSpace,
    LinearMap,
    LabelOrder,
    TrackedReducer,
    dense_rank,
    vec_add,
    vec_scale,
)

F = Fraction

IDENTITY_NAMES = [
    "coassociative",
    "conilpotent",
    "co_leibniz",
    "pairing_symmetric",
    "pairing_homogeneous",
    "cyclicity",
    "d_compatible",
    "cocommutative",
]


class CyclicCoalgebra:
    """Reduced part of a coaugmented DG coalgebra with a cyclic pairing.

    coproduct maps a basis label to a dict (a1, a2) -> Fraction; the
    differential has degree -1; pairing is a dict (a, b) -> Fraction
    storing all nonzero values (both orders).
    """

    def __init__(self, name, degrees, coproduct, differential, pairing,
                 pairing_degree, cocommutative=False):
        self.name = name
        self.reduced = GradedSpace(degrees)
        self.coproduct = {k: dict(v) for k, v in coproduct.items() if v}
        self.differential = {k: dict(v) for k, v in differential.items() if v}
        self.pairing = {k: F(v) for k, v in pairing.items() if v}
        self.pairing_degree = int(pairing_degree)
        self.cocommutative = bool(cocommutative)

    # -- elementwise access ------------------------------------------------
    def deg(self, label) -> int:
        return self.reduced.degrees[label]

    def pair(self, a, b) -> Fraction:
        return self.pairing.get((a, b), F(0))

    def delta(self, label) -> dict:
        return self.coproduct.get(label, {})

    def d(self, label) -> dict:
        return self.differential.get(label, {})

    def d_vec(self, v: dict) -> dict:
        out: dict = {}
        for lab, c in v.items():
            out = vec_add(out, self.d(lab), c)
        return out

    def to_data(self) -> dict:
        return {
            "name": self.name,
            "generators": [{"name": str(l), "degree": self.deg(l)}
                           for l in self.reduced.labels],
            "n": self.pairing_degree,
            "cocommutative": self.cocommutative,
            "coproduct": [{"of": str(k), "left": str(a), "right": str(b),
                           "coeff": str(c)}
                          for k, terms in self.coproduct.items()
                          for (a, b), c in terms.items()],
            "differential": [{"of": str(k), "to": str(t), "coeff": str(c)}
                             for k, terms in self.differential.items()
                             for t, c in terms.items()],
            "pairing": [{"left": str(a), "right": str(b), "coeff": str(c)}
                        for (a, b), c in self.pairing.items()],
        }

    def structurally_equal(self, other: "CyclicCoalgebra") -> bool:
        return (self.reduced.degrees == other.reduced.degrees
                and self.coproduct == other.coproduct
                and self.differential == other.differential
                and self.pairing == other.pairing
                and self.pairing_degree == other.pairing_degree
                and self.cocommutative == other.cocommutative)


class ValidationReport:
    def __init__(self):
        self.failures: dict = {name: [] for name in IDENTITY_NAMES}
        self.structural: list = []

    @property
    def ok(self) -> bool:
        return not self.structural and all(not v for v in self.failures.values())

    def failed_identities(self) -> list:
        return [k for k, v in self.failures.items() if v]

    def to_data(self) -> dict:
        return {"ok": self.ok,
                "structural": [str(s) for s in self.structural],
                "failures": {k: [repr(w) for w in v]
                             for k, v in self.failures.items() if v}}


def _delta13(c: CyclicCoalgebra, label, side: str) -> dict:
    """(delta x id) or (id x delta) applied after delta; keys (a,b,c)."""
    out: dict = {}
    for (a, b), coeff in c.delta(label).items():
        inner, fixed = (a, b) if side == "left" else (b, a)
        for (p, q), c2 in c.delta(inner).items():
            # no Koszul sign: delta has degree 0
            key = (p, q, fixed) if side == "left" else (fixed, p, q)
            out[key] = out.get(key, F(0)) + coeff * c2
    return {k: v for k, v in out.items() if v}


def validate(c: CyclicCoalgebra, cyclic_sign: int = 1) -> ValidationReport:
    """Check the eight cyclic-DG-coalgebra identities.

    cyclic_sign is the residual +-1 in the cyclicity identity after the
    Koszul factors below; the default makes all builtins pass.
    """
    rep = ValidationReport()
    labels = c.reduced.labels
    # structural: differential degree -1, coproduct degree 0, entries known
    for k, terms in c.differential.items():
        for t in terms:
            if c.deg(t) != c.deg(k) - 1:
                rep.structural.append(("differential_degree", k, t))
    for k, terms in c.coproduct.items():
        for (a, b) in terms:
            if c.deg(a) + c.deg(b) != c.deg(k):
                rep.structural.append(("coproduct_degree", k, (a, b)))
    for k in c.differential:
        if c.d_vec(c.d(k)):
            rep.structural.append(("d_squared", k))

    # 1. coassociativity
    for lab in labels:
        if _delta13(c, lab, "left") != _delta13(c, lab, "right"):
            rep.failures["coassociative"].append(lab)

    # 2. conilpotence: iterating (delta x id^k) dies within dim steps
    for lab in labels:
        layer = {(lab,): F(1)}
        for _ in range(len(labels) + 1):
            nxt: dict = {}
            for word, coeff in layer.items():
                for (a, b), c2 in c.delta(word[0]).items():
                    key = (a, b) + word[1:]
                    nxt[key] = nxt.get(key, F(0)) + coeff * c2
            layer = {k: v for k, v in nxt.items() if v}
            if not layer:
                break
        if layer:
            rep.failures["conilpotent"].append(lab)

    # 3. co-Leibniz: delta(d x) = (d x 1 + 1 x d) delta(x), Koszul sign
    for lab in labels:
        lhs: dict = {}
        for t, coeff in c.d(lab).items():
            for (a, b), c2 in c.delta(t).items():
                lhs[(a, b)] = lhs.get((a, b), F(0)) + coeff * c2
        rhs: dict = {}
        for (a, b), coeff in c.delta(lab).items():
            for t, c2 in c.d(a).items():
                rhs[(t, b)] = rhs.get((t, b), F(0)) + coeff * c2
            sgn = F(-1) if c.deg(a) % 2 else F(1)
            for t, c2 in c.d(b).items():
                rhs[(a, t)] = rhs.get((a, t), F(0)) + sgn * coeff * c2
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            rep.failures["co_leibniz"].append(lab)

    # 4. graded symmetry of the pairing
    for (a, b), val in c.pairing.items():
        sgn = F(-1) if (c.deg(a) * c.deg(b)) % 2 else F(1)
        if c.pair(b, a) != sgn * val:
            rep.failures["pairing_symmetric"].append((a, b))

    # 5. homogeneity: support on |a|+|b| = -n
    for (a, b), val in c.pairing.items():
        if val and c.deg(a) + c.deg(b) != -c.pairing_degree:
            rep.failures["pairing_homogeneous"].append((a, b))

    # 6. cyclicity: sum <v',w> v'' = sign * sum <v,w''> w'
    #    Koszul: pairing the inner leg past the outer one
    for v in labels:
        for w in labels:
            lhs: dict = {}
            for (a, b), coeff in c.delta(v).items():
                val = c.pair(a, w)
                if val:
                    sgn = F(-1) if (c.deg(b) * c.deg(w)) % 2 else F(1)
                    lhs[b] = lhs.get(b, F(0)) + sgn * coeff * val
            rhs: dict = {}
            for (a, b), coeff in c.delta(w).items():
                val = c.pair(v, b)
                if val:
                    sgn = F(-1) if (c.deg(v) * c.deg(a)) % 2 else F(1)
                    rhs[a] = rhs.get(a, F(0)) + sgn * coeff * val
            lhs = {k: x for k, x in lhs.items() if x}
            rhs = {k: cyclic_sign * x for k, x in rhs.items() if x}
            if lhs != rhs:
                rep.failures["cyclicity"].append((v, w))

    # 7. d-compatibility: <du,v> + (-1)^{|u|} <u,dv> = 0
    for u in labels:
        for v in labels:
            total = F(0)
            for t, coeff in c.d(u).items():
                total += coeff * c.pair(t, v)
            sgn = F(-1) if c.deg(u) % 2 else F(1)
            for t, coeff in c.d(v).items():
                total += sgn * coeff * c.pair(u, t)
            if total:
                rep.failures["d_compatible"].append((u, v))

    # 8. cocommutativity (only when flagged)
    if c.cocommutative:
        for lab in labels:
            flipped: dict = {}
            for (a, b), coeff in c.delta(lab).items():
                sgn = F(-1) if (c.deg(a) * c.deg(b)) % 2 else F(1)
                flipped[(b, a)] = flipped.get((b, a), F(0)) + sgn * coeff
            if {k: v for k, v in flipped.items() if v} != c.delta(lab):
                rep.failures["cocommutative"].append(lab)

    return rep


def solve_cyclic_pairings(c: CyclicCoalgebra, n: int) -> list:
    """Basis of the space of valid degree-n cyclic pairings.

    The symmetry, cyclicity and d-compatibility conditions are linear in
    the pairing coefficients, so this is one kernel computation over the
    degree-compatible unknowns.
    """
    labels = c.reduced.labels
    unknowns = [(a, b) for a in labels for b in labels
                if c.deg(a) + c.deg(b) == -n]
    if not unknowns:
        return []
    src = GradedSpace({u: 0 for u in unknowns})
    order = LabelOrder()
    rows: dict = {u: {} for u in unknowns}

    def add_constraint(key, combo):
        order.key(key)
        for u, coeff in combo.items():
            rows[u][key] = rows[u].get(key, F(0)) + coeff

    for (a, b) in unknowns:
        sgn = F(-1) if (c.deg(a) * c.deg(b)) % 2 else F(1)
        combo = {(a, b): F(1)}
        if (b, a) in rows:
            combo = vec_add(combo, {(b, a): sgn}, F(-1))
        else:
            pass  # partner absent means it is forced 0; keep p_ab = 0
        if combo:
            add_constraint(("sym", a, b), combo)
    for v in labels:
        for w in labels:
            per_target: dict = {}
            for (a, b), coeff in c.delta(v).items():
                if (a, w) in rows:
                    sgn = F(-1) if (c.deg(b) * c.deg(w)) % 2 else F(1)
                    t = per_target.setdefault(b, {})
                    t[(a, w)] = t.get((a, w), F(0)) + sgn * coeff
            for (a, b), coeff in c.delta(w).items():
                if (v, b) in rows:
                    sgn = F(-1) if (c.deg(v) * c.deg(a)) % 2 else F(1)
                    t = per_target.setdefault(a, {})
                    t[(v, b)] = t.get((v, b), F(0)) - sgn * coeff
            for tgt, combo in per_target.items():
                combo = {k: x for k, x in combo.items() if x}
                if combo:
                    add_constraint(("cyc", v, w, tgt), combo)
    for u in labels:
        for v in labels:
            combo: dict = {}
            for t, coeff in c.d(u).items():
                if (t, v) in rows:
                    combo[(t, v)] = combo.get((t, v), F(0)) + coeff
            sgn = F(-1) if c.deg(u) % 2 else F(1)
            for t, coeff in c.d(v).items():
                if (u, t) in rows:
                    combo[(u, t)] = combo.get((u, t), F(0)) + sgn * coeff
            combo = {k: x for k, x in combo.items() if x}
            if combo:
                add_constraint(("dcomp", u, v), combo)

    tgt_labels: dict = {}
    for u in unknowns:
        for key in rows[u]:
            tgt_labels[key] = 0
    tgt = GradedSpace(tgt_labels)
    f = LinearMap(src, tgt, {u: rows[u] for u in unknowns})
    kernel = f.kernel_basis()
    out = []
    for vec in kernel:
        pairing = {k: v for k, v in vec.items() if v}
        out.append(pairing)
    return out


# ---------------------------------------------------------------------------
# Lie algebra data


class LieAlgebraData:
    """Finite-dimensional Lie algebra in degree 0 with invariant data.

    brackets: dict (i, j) -> vec over basis labels.  kappa: dict
    (i, j) -> Fraction (symmetric, nondegenerate, ad-invariant).
    invariant_polynomials: list of (p, table) with table mapping sorted
    p-tuples of basis labels to the value of the symmetric tensor.
    """

    def __init__(self, name, basis, brackets, kappa, invariant_polynomials):
        self.name = name
        self.basis = list(basis)
        self.space = GradedSpace({b: 0 for b in basis})
        self.brackets = {k: dict(v) for k, v in brackets.items() if v}
        self.kappa = {k: F(v) for k, v in kappa.items() if v}
        self.invariant_polynomials = list(invariant_polynomials)

    def bracket(self, i, j) -> dict:
        return self.brackets.get((i, j), {})

    def bracket_vec(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, ci in u.items():
            for j, cj in v.items():
                out = vec_add(out, self.bracket(i, j), ci * cj)
        return out

    def k(self, i, j) -> Fraction:
        return self.kappa.get((i, j), F(0))

    def kappa_inverse(self) -> dict:
        """Dict (i, j) -> Fraction with sum_j kinv[i,j] k(j,l) = delta_il."""
        n = len(self.basis)
        idx = {b: i for i, b in enumerate(self.basis)}
        import copy
        mat = [[self.k(a, b) for b in self.basis] for a in self.basis]
        aug = [row + [F(1) if i == j else F(0) for j in range(n)]
               for i, row in enumerate(mat)]
        # plain Gauss-Jordan on the augmented matrix
        for col in range(n):
            piv = next(i for i in range(col, n) if aug[i][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = F(1) / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    cc = aug[i][col]
                    aug[i] = [x - cc * y for x, y in zip(aug[i], aug[col])]
        out = {}
        for i, a in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                v = aug[i][n + j]
                if v:
                    out[(a, b)] = v
        return out

    def eval_polynomial(self, table: dict, args: tuple) -> Fraction:
        return table.get(tuple(sorted(args)), F(0))

    def validate(self) -> list:
        """Return a list of failed-identity witnesses (empty = valid)."""
        bad = []
        B = self.basis
        for i in B:
            for j in B:
                lhs = self.bracket(i, j)
                rhs = vec_scale(self.bracket(j, i), F(-1))
                if lhs != rhs:
                    bad.append(("antisymmetry", i, j))
        for i in B:
            for j in B:
                for l in B:
                    acc = self.bracket_vec({i: F(1)}, self.bracket(j, l))
                    acc = vec_add(acc, self.bracket_vec({j: F(1)}, self.bracket(l, i)))
                    acc = vec_add(acc, self.bracket_vec({l: F(1)}, self.bracket(i, j)))
                    if acc:
                        bad.append(("jacobi", i, j, l))
        for i in B:
            for j in B:
                if self.k(i, j) != self.k(j, i):
                    bad.append(("kappa_symmetric", i, j))
        for x in B:
            for y in B:
                for z in B:
                    s = F(0)
                    for t, c in self.bracket(x, y).items():
                        s += c * self.k(t, z)
                    for t, c in self.bracket(x, z).items():
                        s += c * self.k(y, t)
                    if s:
                        bad.append(("kappa_ad_invariant", x, y, z))
        mat = [[self.k(a, b) for b in B] for a in B]
        if dense_rank(mat) != len(B):
            bad.append(("kappa_nondegenerate",))
        for p, table in self.invariant_polynomials:
            for args in _tuples(B, p):
                for z in B:
                    s = F(0)
                    for pos in range(p):
                        for t, c in self.bracket(z, args[pos]).items():
                            s += c * self.eval_polynomial(
                                table, args[:pos] + (t,) + args[pos + 1:])
                    if s:
                        bad.append(("polynomial_ad_invariant", p, z, args))
        return bad


def _tuples(basis, p):
    if p == 0:
        yield ()
        return
    for rest in _tuples(basis, p - 1):
        for b in basis:
            yield rest + (b,)


# ---------------------------------------------------------------------------
# builtins


def _e1(g: int) -> CyclicCoalgebra:
    degrees = {}
    pairing = {}
    for i in range(1, g + 1):
        x, y = f"x{i}", f"y{i}"
        degrees[x] = 1
        degrees[y] = 1
        pairing[(x, y)] = F(1)
        pairing[(y, x)] = F(-1)
    return CyclicCoalgebra(f"E1_symplectic_pair({g})", degrees, {}, {},
                           pairing, -2, cocommutative=True)


def _e2() -> CyclicCoalgebra:
    return CyclicCoalgebra(
        "E2_two_stage",
        {"a": 2, "b": 4},
        {"b": {("a", "a"): F(1)}},
        {},
        {("a", "b"): F(1), ("b", "a"): F(1)},
        -6,
        cocommutative=True,
    )


def _matrix_lie(name, basis, matrices, polys):
    """Lie data from explicit matrices: brackets, trace form, sym-trace P's."""
    dim = len(matrices[basis[0]])

    def mul(A, B):
        return [[sum(A[i][k] * B[k][j] for k in range(dim)) for j in range(dim)]
                for i in range(dim)]

    def sub(A, B):
        return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]

    def tr(A):
        return sum(A[i][i] for i in range(dim))

    # express a matrix in the given basis by solving exactly
    tracked = TrackedReducer()
    for b in basis:
        vec = {(i, j): matrices[b][i][j] for i in range(dim)
               for j in range(dim) if matrices[b][i][j]}
        tracked.add(vec, b)
    brackets = {}
    for a in basis:
        for b in basis:
            m = sub(mul(matrices[a], matrices[b]), mul(matrices[b], matrices[a]))
            vec = {(i, j): m[i][j] for i in range(dim)
                   for j in range(dim) if m[i][j]}
            combo = tracked.express(vec)
            assert combo is not None
            brackets[(a, b)] = combo
    kappa = {}
    for a in basis:
        for b in basis:
            v = tr(mul(matrices[a], matrices[b]))
            if v:
                kappa[(a, b)] = F(v)
    inv = []
    import itertools
    for p in polys:
        table = {}
        for args in itertools.combinations_with_replacement(basis, p):
            total = F(0)
            for perm in itertools.permutations(args):
                prod = matrices[perm[0]]
                for m in perm[1:]:
                    prod = mul(prod, matrices[m])
                total += tr(prod)
            import math
            val = total / math.factorial(p)
            if val:
                table[tuple(sorted(args))] = val
        inv.append((p, table))
    return LieAlgebraData(name, basis, brackets, kappa, inv)


def _sl2() -> LieAlgebraData:
    basis = ["e", "h", "f"]
    brackets = {
        ("h", "e"): {"e": F(2)}, ("e", "h"): {"e": F(-2)},
        ("h", "f"): {"f": F(-2)}, ("f", "h"): {"f": F(2)},
        ("e", "f"): {"h": F(1)}, ("f", "e"): {"h": F(-1)},
    }
    kappa = {("h", "h"): F(8), ("e", "f"): F(4), ("f", "e"): F(4)}
    p2 = {tuple(sorted(k)): v for k, v in kappa.items()}
    return LieAlgebraData("sl2", basis, brackets, kappa, [(2, p2)])


def _gl2() -> LieAlgebraData:
    basis = ["e11", "e12", "e21", "e22"]
    mats = {
        "e11": [[F(1), F(0)], [F(0), F(0)]],
        "e12": [[F(0), F(1)], [F(0), F(0)]],
        "e21": [[F(0), F(0)], [F(1), F(0)]],
        "e22": [[F(0), F(0)], [F(0), F(1)]],
    }
    return _matrix_lie("gl2", basis, mats, [1, 2, 3])


def builtin(name: str):
    if name.startswith("E1_symplectic_pair(") and name.endswith(")"):
        g = int(name[len("E1_symplectic_pair("):-1])
        return _e1(g)
    if name == "E2_two_stage":
        return _e2()
    if name == "sl2":
        return _sl2()
    if name == "gl2":
        return _gl2()
    raise KeyError(f"unknown builtin {name!r}")


# ---------------------------------------------------------------------------
# file input


def _coeff(x) -> Fraction:
    if isinstance(x, str):
        return F(x)
    if isinstance(x, int):
        return F(x)
    raise ValueError(f"coefficient must be an exact rational string, got {x!r}")


def coalgebra_from_data(data: dict) -> CyclicCoalgebra:
    degrees = {g["name"]: int(g["degree"]) for g in data["generators"]}
    coproduct: dict = {}
    for e in data.get("coproduct", []):
        terms = coproduct.setdefault(e["of"], {})
        key = (e["left"], e["right"])
        terms[key] = terms.get(key, F(0)) + _coeff(e.get("coeff", 1))
    differential: dict = {}
    for e in data.get("differential", []):
        terms = differential.setdefault(e["of"], {})
        terms[e["to"]] = terms.get(e["to"], F(0)) + _coeff(e.get("coeff", 1))
    pairing = {}
    for e in data.get("pairing", []):
        pairing[(e["left"], e["right"])] = _coeff(e.get("coeff", 1))
    return CyclicCoalgebra(
        data.get("name", "unnamed"), degrees, coproduct, differential,
        pairing, int(data["n"]), bool(data.get("cocommutative", False)))


def load_coalgebra(path) -> CyclicCoalgebra:
    path = Path(path)
    if path.suffix == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:  # python < 3.11
            import tomli as tomllib
        data = tomllib.loads(path.read_text())
    else:
        data = json.loads(path.read_text())
    return coalgebra_from_data(data)
