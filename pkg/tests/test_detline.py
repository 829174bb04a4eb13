"""Determinant lines, Knudsen-Mumford scalars, Z2-graded Lemma-1 scalars."""

import random
from fractions import Fraction

import pytest

from twistcoh.detline import (BasedComplex, DetElement, GradedLine, Z2Complex,
                              invert, km_scalar, lemma1_scalar, tensor,
                              tensor_swapped, unit_element)
from twistcoh.exactlin import Matrix
from twistcoh.subspaces import standard_basis


def el(coord, grade, bid="e"):
    return DetElement(GradedLine(grade, bid), Fraction(coord))


class TestDetElements:
    def test_tensor_and_swap(self):
        a = el(2, 1, "a")
        b = el(3, 1, "b")
        t = tensor(a, b)
        assert t.coordinate == 6 and t.grade == 2
        s = tensor_swapped(a, b)
        assert s.coordinate == -6

    def test_unit(self):
        a = el(7, 3)
        t = tensor(a, unit_element())
        assert t.coordinate == 7 and t.grade == 3

    def test_inverse_pairing(self):
        a = el(5, 2)
        b = el(Fraction(1, 5), -2)
        t = tensor(a, b)
        assert t.coordinate == 1 and t.grade == 0

    def test_invert(self):
        a = el(2, 3)
        ia = invert(a)
        assert ia.coordinate == Fraction(1, 2) and ia.grade == -3
        assert invert(ia).coordinate == a.coordinate
        assert invert(ia).grade == a.grade
        u = unit_element()
        assert invert(u).coordinate == 1 and invert(u).grade == 0

    def test_zero_coordinate_rejected(self):
        with pytest.raises(ValueError):
            el(0, 1)


def two_term(matrix, lo=0):
    n = matrix.cols
    m = matrix.rows
    return BasedComplex({lo: n, lo + 1: m}, {lo: matrix})


class TestKmScalar:
    def test_acyclic_diagonal(self):
        cx = two_term(Matrix([[2, 0], [0, 3]]))
        tau = km_scalar(cx, {0: [], 1: []})
        assert abs(tau) == 6

    def test_zero_differential_reference_bases(self):
        cx = BasedComplex({0: 2, 1: 3}, {0: Matrix.zero(3, 2)})
        bases = {0: standard_basis(2), 1: standard_basis(3)}
        assert km_scalar(cx, bases) == 1

    def test_odd_degree_scaled_basis(self):
        cx = BasedComplex({1: 1}, {})
        tau = km_scalar(cx, {1: [(Fraction(2),)]})
        assert abs(tau) == 2

    def test_non_cocycle_rejected(self):
        cx = two_term(Matrix([[1]]))
        with pytest.raises(ValueError):
            km_scalar(cx, {0: [(Fraction(1),)], 1: []})

    def test_wrong_count_rejected(self):
        cx = BasedComplex({0: 2}, {})
        with pytest.raises(ValueError):
            km_scalar(cx, {0: standard_basis(2)[:1]})


def random_complex(rng, max_len=4, max_dim=4):
    """A random bounded based complex, built from random compositions."""
    length = rng.randint(2, max_len)
    dims = {i: rng.randint(0, max_dim) for i in range(length)}
    diffs = {}
    # build d as B @ A with A random so that d o d = 0 can be arranged
    # degreewise: pick random subspace images.
    prev = None
    for i in range(length - 1):
        rows, cols = dims[i + 1], dims[i]
        m = Matrix([[Fraction(rng.randint(-2, 2)) for _ in range(cols)]
                    for _ in range(rows)]) if rows and cols \
            else Matrix.zero(rows, cols)
        if prev is not None and rows and prev.rows:
            # force d_i o d_{i-1} = 0 by projecting columns of prev away:
            # instead, just compose with the kernel projector of m.
            pass
        diffs[i] = m
        prev = m
    return dims, diffs


def complex_with_known_cohomology(rng):
    """0 -> Q^a -> Q^(a+h1) -> Q^h2 x ... via block matrices, exact by
    construction: d0 = [I_a; 0], d1 = 0."""
    a = rng.randint(0, 3)
    h1 = rng.randint(0, 2)
    h2 = rng.randint(0, 2)
    d0 = Matrix({(i, i): 1 for i in range(a)}, rows=a + h1, cols=a)
    dims = {0: a, 1: a + h1, 2: h2}
    diffs = {0: d0, 1: Matrix.zero(h2, a + h1)}
    return BasedComplex(dims, diffs)


class TestKmInvariance:
    def test_section_choice_invariance(self):
        rng = random.Random(21)
        for _ in range(20):
            cx = complex_with_known_cohomology(rng)
            bases = cx.default_cohomology_bases()
            base_tau = km_scalar(cx, bases)
            # randomize the section in degree 0: mix by a random
            # invertible matrix and add random kernel vectors
            d0 = cx.diff(0)
            _, kernel, _, pivots = d0.column_space_analysis()
            sec = [standard_basis(cx.dim(0))[j] for j in pivots]
            r = len(sec)
            if r == 0:
                continue
            m = None
            while m is None or m.determinant() == 0:
                m = Matrix([[Fraction(rng.randint(-2, 2)) for _ in range(r)]
                            for _ in range(r)])
            mixed = [tuple(sum(m[k, j] * sec[k][i] for k in range(r))
                           for i in range(cx.dim(0)))
                     for j in range(r)]
            if kernel:
                kv = kernel[rng.randrange(len(kernel))]
                mixed[0] = tuple(x + y for x, y in zip(mixed[0], kv))
            tau = km_scalar(cx, bases, sections={0: mixed})
            assert tau == base_tau

    def test_representative_lift_invariance(self):
        # changing a cohomology representative by a coboundary must not
        # change the scalar
        rng = random.Random(22)
        for _ in range(20):
            cx = complex_with_known_cohomology(rng)
            bases = cx.default_cohomology_bases()
            base_tau = km_scalar(cx, bases)
            d0 = cx.diff(0)
            if not bases[1] or cx.dim(0) == 0:
                continue
            x = tuple(Fraction(rng.randint(-2, 2)) for _ in range(cx.dim(0)))
            shift = d0.apply(x)
            newb = dict(bases)
            newb[1] = [tuple(a + b for a, b in zip(bases[1][0], shift))] + \
                list(bases[1][1:])
            assert km_scalar(cx, newb) == base_tau

    def test_reference_basis_change_scaling(self):
        # changing the reference basis in degree i by T multiplies the
        # scalar by det(T)^((-1)^i)
        rng = random.Random(23)
        for _ in range(15):
            cx = complex_with_known_cohomology(rng)
            bases = cx.default_cohomology_bases()
            tau = km_scalar(cx, bases)
            i = rng.choice([0, 1, 2])
            n = cx.dim(i)
            if n == 0:
                continue
            t = None
            while t is None or t.determinant() == 0:
                t = Matrix([[Fraction(rng.randint(-2, 2)) for _ in range(n)]
                            for _ in range(n)])
            tinv = t.inverse()
            dims = dict(cx.dims)
            diffs = {}
            for j in range(0, 2):
                d = cx.diff(j)
                if j == i:
                    d = d @ t
                if j + 1 == i:
                    d = tinv @ d
                diffs[j] = d
            newb = dict(bases)
            if i in newb:
                newb[i] = [tinv.apply(v) for v in bases[i]]
            cx2 = BasedComplex(dims, diffs)
            tau2 = km_scalar(cx2, newb)
            expected = tau * (t.determinant() if i % 2 == 0
                              else 1 / t.determinant())
            assert tau2 == expected

    def test_functoriality_under_isomorphism(self):
        # an isomorphism of based complexes changes the scalar by the
        # alternating product of the basis-change determinants
        rng = random.Random(24)
        for _ in range(10):
            cx = complex_with_known_cohomology(rng)
            bases = cx.default_cohomology_bases()
            tau = km_scalar(cx, bases)
            fs = {}
            for i in cx.degrees():
                n = cx.dim(i)
                f = None
                while f is None or (n and f.determinant() == 0):
                    f = Matrix([[Fraction(rng.randint(-2, 2))
                                 for _ in range(n)] for _ in range(n)]) \
                        if n else Matrix.zero(0, 0)
                fs[i] = f
            diffs = {i: fs[i + 1] @ cx.diff(i) @ fs[i].inverse()
                     for i in range(cx.degree_range[0], cx.degree_range[1])}
            cx2 = BasedComplex(dict(cx.dims), diffs)
            newb = {i: [fs[i].apply(v) for v in bases.get(i, [])]
                    for i in cx.degrees()}
            tau2 = km_scalar(cx2, newb)
            factor = Fraction(1)
            for i in cx.degrees():
                det = fs[i].determinant() if cx.dim(i) else Fraction(1)
                factor *= det if (i % 2) else 1 / det
            assert tau2 == tau / factor


class TestLemma1:
    def test_zero_differentials(self):
        z = Z2Complex(2, 2, Matrix.zero(2, 2), Matrix.zero(2, 2))
        ev, od = standard_basis(2), standard_basis(2)
        assert lemma1_scalar(z, ev, od) == 1

    def test_even_to_odd_isomorphism(self):
        z = Z2Complex(1, 1, Matrix([[2]]), Matrix.zero(1, 1))
        assert abs(lemma1_scalar(z, [], [])) == 2

    def test_circle_twisted(self):
        # MW complex of the circle with rho(g) = 3: even = C^0, odd = C^1,
        # d_eo the invertible twisted coboundary (|det| = 2), d_oe = 0.
        d_eo = Matrix([[-1, 1, 0], [-1, 0, 1], [0, -1, 3]])
        z = Z2Complex(3, 3, d_eo, Matrix.zero(3, 3))
        assert abs(lemma1_scalar(z, [], [])) == 2

    def test_matches_km_on_two_term_collapse(self):
        # parity collapse of 0 -> Q^2 -> Q^2 -> 0: the Lemma-1 route and
        # the Z-graded KM route agree up to a sign that is pinned here.
        m = Matrix([[2, 1], [0, 3]])
        cx = two_term(m)
        tau_km = km_scalar(cx, {0: [], 1: []})
        z = Z2Complex(2, 2, m, Matrix.zero(2, 2))
        tau_l1 = lemma1_scalar(z, [], [])
        assert abs(tau_km) == abs(tau_l1) == 6
        # frozen relative sign for this configuration
        assert tau_l1 == tau_km

    def test_internal_basis_of_a_invariance(self):
        # lemma1_scalar must not depend on how the image space A is based;
        # we vary it by pre-composing d_oe with a random automorphism of
        # the odd space, which changes pivots but not the isomorphism.
        rng = random.Random(31)
        d_eo = Matrix([[0, 0], [0, 0]])
        d_oe = Matrix([[1, 2], [0, 0]])
        z = Z2Complex(2, 2, d_eo, d_oe)
        ev, od = z.default_cohomology_bases()
        base = lemma1_scalar(z, ev, od)
        for _ in range(10):
            # an automorphism of C^od preserving ker(d_oe) changes the
            # internal pivot basis of A = im(d_oe) when composed in
            u = Matrix([[1, 0], [Fraction(rng.randint(-3, 3)), 1]])
            z2 = Z2Complex(2, 2, d_eo, d_oe @ u)
            ev2, od2 = z2.default_cohomology_bases()
            got = lemma1_scalar(z2, ev2, od2)
            # same complex up to re-basing the odd side by u
            assert abs(got) == abs(base * u.determinant())

    def test_non_closed_rep_rejected(self):
        z = Z2Complex(1, 1, Matrix([[1]]), Matrix.zero(1, 1))
        with pytest.raises(ValueError):
            lemma1_scalar(z, [(Fraction(1),)], [])
