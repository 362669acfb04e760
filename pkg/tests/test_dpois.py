import itertools
import random
from fractions import Fraction

import pytest

from cycpois.coalg import builtin
from cycpois.dpois import (
    act_on_biform,
    act_on_omega1,
    act_on_R,
    beta,
    biform_project,
    bracket_cyclic,
    bracket_R,
    cyclic_derivative,
    cyclic_derivative_raw,
    double_bracket_words,
    hochschild_cone,
    necklace_bracket_oracle,
    omega1_differential,
)
from cycpois.freealg import TensorElement, TruncatedAlgebra, word_elem
from cycpois.linalg import homology, homology_dense, vec_add

F = Fraction


@pytest.fixture(scope="module")
def E1():
    return TruncatedAlgebra(builtin("E1_symplectic_pair(1)"), 6)


@pytest.fixture(scope="module")
def E2():
    return TruncatedAlgebra(builtin("E2_two_stage"), 6)


def cyclic_basis(A, weight):
    """Independent canonical classes of the given weight."""
    from cycpois.linalg import RowReducer
    red = RowReducer(A.order)
    out = []
    for word in A.words(weight):
        cls = A.project_cyclic(word_elem(*word))
        if cls and red.add(dict(cls.rep.terms)):
            out.append(cls)
    return out


def sign(k):
    return F(-1) if k % 2 else F(1)


# ---------------------------------------------------------------------------
# frozen examples


def test_double_bracket_letters(E1):
    assert double_bracket_words(E1, ("x1",), ("y1",)) == {((), ()): F(1)}
    assert double_bracket_words(E1, ("x1",), ()) == {}
    assert double_bracket_words(E1, ("x1",), ("x1",)) == {}


def test_double_bracket_spec_example(E1):
    # {{(x,y),(x)}} = -(1 (x) x)
    out = double_bracket_words(E1, ("x1", "y1"), ("x1",))
    assert out == {((), ("x1",)): F(-1)}


def test_double_bracket_closed_formula(E1, E2):
    # the recursion reproduces the closed double-sum formula
    # sum_{i,j} +-<v_i,w_j> (w_1..w_{j-1} v_{i+1}..v_n) (x) (v_1..v_{i-1} w_{j+1}..w_m)
    # checked termwise for even letters where all signs are +1
    rng = random.Random(0)
    words = [w for k in (1, 2, 3) for w in itertools.product(E1.letters, repeat=k)]
    for _ in range(20):
        a = rng.choice(words)
        b = rng.choice(words)
        expected = {}
        for i, vi in enumerate(a):
            for j, wj in enumerate(b):
                val = E1.pair(vi, wj)
                if val:
                    key = (b[:j] + a[i + 1:], a[:i] + b[j + 1:])
                    expected[key] = expected.get(key, F(0)) + val
        expected = {k: v for k, v in expected.items() if v}
        assert double_bracket_words(E1, a, b) == expected


def test_bracket_cyclic_example(E1):
    xy = E1.project_cyclic(word_elem("x1", "y1"))
    x = E1.project_cyclic(word_elem("x1"))
    out = bracket_cyclic(E1, xy, x, check=True)
    assert out == x.scale(F(-1))


def test_bracket_with_zero(E1):
    xy = E1.project_cyclic(word_elem("x1", "y1"))
    zero = E1.project_cyclic(TensorElement())
    assert not bracket_cyclic(E1, xy, zero)


def test_act_on_R_examples(E1):
    xy = E1.project_cyclic(word_elem("x1", "y1"))
    assert act_on_R(E1, xy, word_elem("x1")).terms == {("x1",): F(-1)}
    assert not act_on_R(E1, xy, TensorElement({(): F(1)}))


def test_act_on_R_leibniz(E1, E2):
    rng = random.Random(1)
    for A in (E1, E2):
        words = [w for k in (1, 2) for w in itertools.product(A.letters, repeat=k)]
        for _ in range(10):
            alpha = A.project_cyclic(word_elem(*rng.choice(words), *rng.choice(words)))
            r = word_elem(*rng.choice(words))
            t = word_elem(*rng.choice(words))
            da = A.word_degree(next(iter(alpha.rep.terms))) if alpha else 0
            lhs = act_on_R(A, alpha, A.multiply(r, t))
            rhs = A.multiply(act_on_R(A, alpha, r), t)
            sgn = sign((da + A.s) * A.degree_of(r))
            rhs = rhs.add(A.multiply(r, act_on_R(A, alpha, t)), sgn)
            assert lhs.terms == rhs.terms


def test_cyclic_derivative_examples(E1):
    xy = E1.project_cyclic(word_elem("x1", "y1"))
    out = cyclic_derivative(E1, xy)
    assert out == {(("y1",), "x1"): F(1), (("x1",), "y1"): F(1)}
    x = E1.project_cyclic(word_elem("x1"))
    assert cyclic_derivative(E1, x) == {((), "x1"): F(1)}


def test_cyclic_derivative_kills_commutators(E1, E2):
    rng = random.Random(2)
    for A in (E1, E2):
        words = [w for k in (1, 2) for w in itertools.product(A.letters, repeat=k)]
        for _ in range(15):
            r = word_elem(*rng.choice(words))
            s = word_elem(*rng.choice(words))
            sgn = sign(A.degree_of(r) * A.degree_of(s))
            comm = A.multiply(r, s).add(A.multiply(s, r), -sgn)
            assert cyclic_derivative_raw(A, comm) == {}


def test_cyclic_derivative_matches_on_representatives(E1, E2):
    # raw derivative agrees on any representative of a class
    for A in (E1, E2):
        for word in A.words(3):
            raw = cyclic_derivative_raw(A, word_elem(*word))
            canon = cyclic_derivative(A, A.project_cyclic(word_elem(*word)))
            assert raw == canon


def test_beta_examples(E1):
    assert not beta(E1, {((), "x1"): F(1)})
    out = beta(E1, {(("x1",), "y1"): F(1)})
    assert out.terms == {("x1", "y1"): F(1), ("y1", "x1"): F(-1)}


def test_beta_after_derivative_vanishes(E1, E2):
    for A in (E1, E2):
        for w in (2, 3, 4):
            for cls in cyclic_basis(A, w):
                assert not beta(A, cyclic_derivative(A, cls))


def test_derivative_lands_in_theta(E1, E2):
    # cyclic derivative of lambda^(p+1) lies in theta^(p)
    for A in (E1, E2):
        for w in (2, 3, 4):
            for p in range(1, w):
                lam = A.lambda_span(p + 1, w)
                th = A.theta_span(p, w)
                for vec in lam.generators.values():
                    cls = A.project_cyclic(TensorElement(vec))
                    der = cyclic_derivative(A, cls)
                    assert th.contains(der)


def test_beta_theta_lands_in_sym(E1, E2):
    for A in (E1, E2):
        for w in (2, 3):
            for p in range(0, w):
                th = A.theta_span(p, w)
                sym = A.sym_power_span(p, w)
                for vec in th.generators.values():
                    assert sym.contains(beta(A, vec).terms)


# ---------------------------------------------------------------------------
# bracket axioms


def test_skew_symmetry(E1, E2):
    for A in (E1, E2):
        classes = [c for w in (1, 2, 3) for c in cyclic_basis(A, w)]
        for a in classes:
            for b in classes:
                da = A.degree_of(a.rep)
                db = A.degree_of(b.rep)
                lhs = bracket_cyclic(A, a, b)
                rhs = bracket_cyclic(A, b, a)
                sgn = sign((da + A.s) * (db + A.s))
                assert lhs == rhs.scale(-sgn)


def test_jacobi(E1, E2):
    for A in (E1, E2):
        classes = [c for w in (1, 2) for c in cyclic_basis(A, w)]
        for a in classes:
            for b in classes:
                for c in classes:
                    da = A.degree_of(a.rep)
                    db = A.degree_of(b.rep)
                    lhs = bracket_cyclic(A, a, bracket_cyclic(A, b, c))
                    r1 = bracket_cyclic(A, bracket_cyclic(A, a, b), c)
                    r2 = bracket_cyclic(A, b, bracket_cyclic(A, a, c))
                    sgn = sign((da + A.s) * (db + A.s))
                    assert lhs == r1.add(r2, sgn)


def test_lie_action_axiom(E1, E2):
    for A in (E1, E2):
        classes = [c for w in (1, 2) for c in cyclic_basis(A, w)]
        words = [word_elem(*w) for k in (1, 2)
                 for w in itertools.product(A.letters, repeat=k)]
        for a in classes:
            for b in classes:
                da = A.degree_of(a.rep)
                db = A.degree_of(b.rep)
                sgn = sign((da + A.s) * (db + A.s))
                ab = bracket_cyclic(A, a, b)
                for r in words:
                    lhs = act_on_R(A, ab, r)
                    rhs = act_on_R(A, a, act_on_R(A, b, r)).add(
                        act_on_R(A, b, act_on_R(A, a, r)), -sgn)
                    assert lhs.terms == rhs.terms


def test_chain_map_bracket(E2):
    # d{a,b} = {da,b} + (-1)^{|a|+s} {a,db}
    A = E2
    classes = [c for w in (1, 2, 3) for c in cyclic_basis(A, w)]

    def d_cls(c):
        return A.project_cyclic(A.differential(c.rep))

    for a in classes:
        for b in classes:
            da = A.degree_of(a.rep)
            lhs = d_cls(bracket_cyclic(A, a, b))
            rhs = bracket_cyclic(A, d_cls(a), b).add(
                bracket_cyclic(A, a, d_cls(b)), sign(da + A.s))
            assert lhs == rhs


# ---------------------------------------------------------------------------
# necklace oracle


def test_necklace_oracle_agrees(E1):
    A = E1
    rng = random.Random(3)
    classes = [c for w in (1, 2, 3) for c in cyclic_basis(A, w)]
    for a in classes:
        for b in classes:
            assert bracket_cyclic(A, a, b) == necklace_bracket_oracle(A, a, b)
    # and on random combinations
    for _ in range(10):
        a = classes[rng.randrange(len(classes))].scale(F(rng.randint(-3, 3)))
        b = classes[rng.randrange(len(classes))]
        assert bracket_cyclic(A, a, b) == necklace_bracket_oracle(A, a, b)


def test_necklace_weight2_table(E1):
    A = E1
    xx = A.project_cyclic(word_elem("x1", "x1"))
    yy = A.project_cyclic(word_elem("y1", "y1"))
    xy = A.project_cyclic(word_elem("x1", "y1"))
    # classical genus-1 necklace relations
    assert bracket_cyclic(A, xy, xx) == xx.scale(F(-2))
    assert bracket_cyclic(A, xy, yy) == yy.scale(F(2))
    assert not bracket_cyclic(A, xx, yy).add(xy.scale(F(-4)))


# ---------------------------------------------------------------------------
# one-form action


def test_act_on_omega1_zero_case(E1):
    x = E1.project_cyclic(word_elem("x1"))
    # {x, x} = 0 and <x,x> = 0: acting on 1 (x) x (x) 1 gives 0
    assert act_on_omega1(E1, x, {((), "x1"): F(1)}) == {}


def test_act_on_omega1_example(E1):
    xy = E1.project_cyclic(word_elem("x1", "y1"))
    out = act_on_omega1(E1, xy, {((), "x1"): F(1)})
    assert out == {((), "x1"): F(-1)}


def test_act_descends(E1, E2):
    # projecting before or after acting agrees
    rng = random.Random(4)
    for A in (E1, E2):
        classes = [c for w in (2,) for c in cyclic_basis(A, w)]
        words1 = list(itertools.product(A.letters, repeat=1))
        words2 = list(itertools.product(A.letters, repeat=2))
        for _ in range(12):
            alpha = classes[rng.randrange(len(classes))]
            b = rng.choice(words1 + words2)
            c = rng.choice(words1 + words2)
            v = rng.choice(A.letters)
            biform = {(b, v, c): F(1)}
            direct = biform_project(A, act_on_biform(A, alpha, biform))
            descended = act_on_omega1(A, alpha, biform_project(A, biform))
            assert direct == descended


def test_act_commutes_with_beta(E1, E2):
    for A in (E1, E2):
        classes = [c for w in (2, 3) for c in cyclic_basis(A, w)]
        oneforms = [{((l1,), l2): F(1)} for l1 in A.letters for l2 in A.letters]
        for alpha in classes:
            for om in oneforms:
                lhs = beta(A, act_on_omega1(A, alpha, om))
                rhs = act_on_R(A, alpha, beta(A, om))
                assert lhs.terms == rhs.terms


def test_derivative_equivariance(E1, E2):
    # deriving then acting on one-forms = acting then deriving
    for A in (E1, E2):
        lam2 = [A.project_cyclic(TensorElement(v))
                for v in A.lambda_span(2, 2).generators.values()]
        targets = [c for w in (2, 3) for c in cyclic_basis(A, w)]
        for alpha in lam2:
            if not alpha:
                continue
            for g in targets:
                lhs = cyclic_derivative(A, bracket_cyclic(A, alpha, g))
                rhs = act_on_omega1(A, alpha, cyclic_derivative(A, g))
                assert lhs == rhs


def test_omega1_differential_chain_map(E2):
    # the cyclic derivative is a chain map: d_omega after derivative =
    # derivative after induced differential on classes
    A = E2
    for w in (2, 3, 4):
        for cls in cyclic_basis(A, w):
            lhs = omega1_differential(A, cyclic_derivative(A, cls))
            rhs = cyclic_derivative(A, A.project_cyclic(A.differential(cls.rep)))
            assert lhs == rhs


def test_omega1_differential_squares_to_zero(E2):
    A = E2
    for w in (1, 2, 3):
        for word in A.words(w):
            for v in A.letters:
                om = {(word, v): F(1)}
                assert omega1_differential(A, omega1_differential(A, om)) == {}


def test_beta_chain_map(E2):
    A = E2
    for w in (1, 2, 3):
        for word in A.words(w):
            for v in A.letters:
                om = {(word, v): F(1)}
                lhs = A.differential(beta(A, om))
                rhs = beta(A, omega1_differential(A, om))
                assert lhs.terms == rhs.terms


# ---------------------------------------------------------------------------
# cones


def test_hochschild_cone_e1_rank_bookkeeping():
    A = TruncatedAlgebra(builtin("E1_symplectic_pair(1)"), 3)
    for p in (1, 2):
        cx = hochschild_cone(A, p)
        assert cx.check_square_zero() is None
        # zero differential on E1: cone differential is just beta
        h = homology(cx, sorted({cx.space.degrees[l] for l in cx.space.labels}),
                     allow_truncated=True)
        # dims = (dim theta - rank beta) + (dim sym - rank beta) per degree;
        # with everything in degree theta+1... E1 is concentrated so just
        # compare engines
        hd = homology_dense(cx, sorted(h.dims), allow_truncated=True)
        assert hd == h.dims


def test_hochschild_cone_too_large_p():
    A = TruncatedAlgebra(builtin("E1_symplectic_pair(1)"), 2)
    cx = hochschild_cone(A, 5)
    assert not cx.space.labels


def test_hochschild_cone_e2():
    A = TruncatedAlgebra(builtin("E2_two_stage"), 4)
    cx = hochschild_cone(A, 1)
    assert cx.check_square_zero() is None
    degs = sorted({cx.space.degrees[l] for l in cx.space.labels})
    h = homology(cx, degs, allow_truncated=True)
    hd = homology_dense(cx, degs, allow_truncated=True)
    assert hd == h.dims
    from cycpois.linalg import euler_check
    assert euler_check(cx, degs, h)
