"""Graded determinant lines and torsion scalars of based complexes.

A determinant line is never materialized as an exterior power: an element
is a single rational coordinate relative to a declared ordered reference
basis, together with an integer grade.  The two workhorses are

* ``km_scalar`` -- the scalar of the canonical isomorphism from the
  determinant of a bounded based complex to the determinant of its
  cohomology, relative to supplied cocycle representatives, and
* ``lemma1_scalar`` -- the analogous scalar for a Z2-graded complex,
  computed through the associated 4-term complex.

Both use Milnor-style alternating exponents; the concrete sign is frozen
by regression tests and all derived identities hold up to +-1.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import Matrix, rat
from .subspaces import extend_basis, standard_basis


@dataclass(frozen=True)
class GradedLine:
    grade: int
    basis_id: str

    def inverse(self):
        return GradedLine(-self.grade, f"({self.basis_id})^-1")

    def tensor(self, other):
        return GradedLine(self.grade + other.grade,
                          f"{self.basis_id}*{other.basis_id}")


@dataclass(frozen=True)
class DetElement:
    line: GradedLine
    coordinate: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coordinate", rat(self.coordinate))
        if self.coordinate == 0:
            raise ValueError("determinant-line elements are nonzero")

    @property
    def grade(self):
        return self.line.grade

    def to_json(self):
        from .exactlin import format_rat
        return {"grade": self.line.grade,
                "coordinate": format_rat(self.coordinate),
                "basis_id": self.line.basis_id}


def unit_element():
    return DetElement(GradedLine(0, "k"), Fraction(1))


def tensor(a: DetElement, b: DetElement) -> DetElement:
    """Tensor product; coordinates multiply, grades add."""
    return DetElement(a.line.tensor(b.line), a.coordinate * b.coordinate)


def swap_sign(a: DetElement, b: DetElement) -> int:
    """Koszul sign picked up when reordering a (x) b to b (x) a."""
    return -1 if (a.grade % 2 and b.grade % 2) else 1


def tensor_swapped(a: DetElement, b: DetElement) -> DetElement:
    """b (x) a expressed against the reference ordering of a (x) b."""
    return DetElement(a.line.tensor(b.line),
                      swap_sign(a, b) * a.coordinate * b.coordinate)


def invert(a: DetElement) -> DetElement:
    return DetElement(a.line.inverse(), 1 / a.coordinate)


class BasedComplex:
    """Bounded complex of based Q-vector spaces, differentials raising
    degree by one.  ``dims[i]`` is the dimension in degree i and
    ``diff[i]`` the matrix of d: C^i -> C^{i+1}; the reference basis of
    each degree is the standard coordinate basis in the declared order.
    """

    def __init__(self, dims, diffs, basis_ids=None, check=True):
        self.dims = dict(dims)
        self.diffs = dict(diffs)
        degs = sorted(self.dims)
        self.degree_range = (degs[0], degs[-1]) if degs else (0, -1)
        self.basis_ids = dict(basis_ids) if basis_ids else {
            i: f"C^{i}" for i in self.dims}
        if check:
            self._validate()

    def _validate(self):
        lo, hi = self.degree_range
        for i in range(lo, hi + 1):
            self.dims.setdefault(i, 0)
        for i, m in self.diffs.items():
            if m.cols != self.dim(i) or m.rows != self.dim(i + 1):
                raise ValueError(f"differential at degree {i} has wrong shape")
        for i in range(lo, hi):
            a = self.diff(i)
            b = self.diff(i + 1)
            if not (b @ a).is_zero():
                raise ValueError(f"d o d != 0 at degree {i}")

    def dim(self, i):
        return self.dims.get(i, 0)

    def diff(self, i):
        m = self.diffs.get(i)
        if m is None:
            return Matrix.zero(self.dim(i + 1), self.dim(i))
        return m

    def degrees(self):
        lo, hi = self.degree_range
        return range(lo, hi + 1)

    def cohomology_dims(self):
        out = {}
        for i in self.degrees():
            rk_in = self.diff(i - 1).rank() if self.dim(i - 1) else 0
            rk_out = self.diff(i).rank() if self.dim(i) else 0
            out[i] = self.dim(i) - rk_out - rk_in
        return out

    def default_cohomology_bases(self):
        """Pivot-based cocycle representatives per degree.

        For each degree the kernel of the outgoing differential is
        extended over the image of the incoming one, candidates taken in
        the deterministic kernel-basis order.
        """
        out = {}
        for i in self.degrees():
            n = self.dim(i)
            if n == 0:
                out[i] = []
                continue
            kernel = self.diff(i).kernel_basis()
            _, _, image, _ = self.diff(i - 1).column_space_analysis()
            out[i] = extend_basis(image, kernel, n)
        return out


def _km_pieces(cx: BasedComplex, cohomology_bases, sections=None):
    """Transition determinants of the Knudsen-Mumford chain, per degree.

    ``sections`` optionally overrides, per degree i, the vectors b_i whose
    images d(b_i) are used as the basis of im(d_i); the default picks the
    standard basis vectors at the pivot columns.  The resulting scalar
    does not depend on this choice (property-tested).
    """
    lo, hi = cx.degree_range
    section = {}   # degree i -> list of vectors b_i with d(b_i) a basis of im
    image = {}     # degree i -> list of vectors d(b_{i-1}) in C^i
    for i in range(lo, hi + 1):
        d = cx.diff(i)
        if sections is not None and i in sections:
            section[i] = [tuple(v) for v in sections[i]]
            if len(section[i]) != d.rank():
                raise ValueError(f"section at degree {i} has wrong size")
        else:
            _, _, _, pivots = d.column_space_analysis()
            section[i] = [standard_basis(cx.dim(i))[j] for j in pivots]
        image[i + 1] = [d.apply(b) for b in section[i]]
    dets = {}
    for i in range(lo, hi + 1):
        n = cx.dim(i)
        hb = list(cohomology_bases.get(i, []))
        d = cx.diff(i)
        for h in hb:
            if not all(x == 0 for x in d.apply(h)):
                raise ValueError(f"cohomology vector at degree {i} "
                                 "is not a cocycle")
        cols = list(image.get(i, [])) + hb + section[i]
        if len(cols) != n:
            raise ValueError(
                f"degree {i}: got {len(hb)} cohomology vectors, expected "
                f"{n - len(image.get(i, [])) - len(section[i])}")
        if n == 0:
            dets[i] = Fraction(1)
            continue
        det = Matrix.from_columns(cols, nrows=n).determinant()
        if det == 0:
            raise ValueError(f"degree {i}: supplied vectors do not project "
                             "to a cohomology basis")
        dets[i] = det
    return dets


def km_scalar(cx: BasedComplex, cohomology_bases, sections=None) -> Fraction:
    """Scalar tau with KM(reference det element) = tau * (cohomology det
    element), for the supplied cocycle representatives.

    Computed as the alternating product of the transition determinants
    [d(b_{i-1}) | h_i | b_i : reference basis of C^i] with exponent
    (-1)^{i+1}; independent of the section and lift choices.
    """
    dets = _km_pieces(cx, cohomology_bases, sections)
    tau = Fraction(1)
    for i, det in dets.items():
        tau *= det if (i % 2) else 1 / det
    return tau


class Z2Complex:
    """Finite Z2-graded complex: d_eo: even -> odd, d_oe: odd -> even."""

    def __init__(self, even_dim, odd_dim, d_eo, d_oe,
                 even_id="C^ev", odd_id="C^od", check=True):
        self.even_dim = even_dim
        self.odd_dim = odd_dim
        self.d_eo = d_eo
        self.d_oe = d_oe
        self.even_id = even_id
        self.odd_id = odd_id
        if d_eo.cols != even_dim or d_eo.rows != odd_dim:
            raise ValueError("d_eo has wrong shape")
        if d_oe.cols != odd_dim or d_oe.rows != even_dim:
            raise ValueError("d_oe has wrong shape")
        if check:
            if not (self.d_eo @ self.d_oe).is_zero() or \
               not (self.d_oe @ self.d_eo).is_zero():
                raise ValueError("Z2 differential does not square to zero")

    def cohomology_dims(self):
        h_ev = self.even_dim - self.d_eo.rank() - self.d_oe.rank()
        h_od = self.odd_dim - self.d_oe.rank() - self.d_eo.rank()
        return h_ev, h_od

    def default_cohomology_bases(self):
        ev = extend_basis(self.d_oe.column_space_analysis()[2],
                          self.d_eo.kernel_basis(), self.even_dim)
        od = extend_basis(self.d_eo.column_space_analysis()[2],
                          self.d_oe.kernel_basis(), self.odd_dim)
        return ev, od


def four_term_complex(z: Z2Complex):
    """The based complex 0 -> A -> C^ev -> C^od -> C^od/B -> 0 in degrees
    1..4, where A = im(d_oe), B = ker(d_oe), and C^od/B is based by the
    classes of the pivot columns of d_oe so that the induced map to A is
    the identity on bases.
    """
    rank_oe, _, a_basis, pivots = z.d_oe.column_space_analysis()
    incl = Matrix.from_columns(a_basis, nrows=z.even_dim)
    # projection to C^od/B in the chosen basis: coordinates of d_oe(x)
    # in the A-basis
    proj_rows = []
    if rank_oe:
        cols = [z.d_oe.col(j) for j in range(z.odd_dim)]
        for x_col in cols:
            c = incl.solve(x_col)
            proj_rows.append(c)
        proj = Matrix(proj_rows).transpose()
    else:
        proj = Matrix.zero(0, z.odd_dim)
    dims = {1: rank_oe, 2: z.even_dim, 3: z.odd_dim, 4: rank_oe}
    diffs = {1: incl, 2: z.d_eo, 3: proj}
    ids = {1: "A", 2: z.even_id, 3: z.odd_id, 4: "C^od/B"}
    return BasedComplex(dims, diffs, basis_ids=ids)


def lemma1_scalar(z: Z2Complex, even_reps, odd_reps) -> Fraction:
    """Scalar of the canonical isomorphism det C -> det H(C, d) for a
    Z2-graded complex, against the supplied closed representatives.
    """
    cx = four_term_complex(z)
    for v in even_reps:
        if not all(x == 0 for x in z.d_eo.apply(v)):
            raise ValueError("even representative is not closed")
    for v in odd_reps:
        if not all(x == 0 for x in z.d_oe.apply(v)):
            raise ValueError("odd representative is not closed")
    bases = {1: [], 2: list(even_reps), 3: list(odd_reps), 4: []}
    return km_scalar(cx, bases)
