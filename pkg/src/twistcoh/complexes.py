"""Standard complexes used by the pipeline and the test fixtures."""

from itertools import combinations

from .simplicial import OrderedComplex, ScalarCochain


def full_simplex(n):
    """The full n-simplex on vertices 0..n."""
    verts = list(range(n + 1))
    return OrderedComplex.from_maximal(verts, [tuple(verts)])


def boundary_simplex(n):
    """The boundary of the n-simplex: a triangulated (n-1)-sphere."""
    verts = list(range(n + 1))
    maximal = list(combinations(verts, n))
    return OrderedComplex.from_maximal(verts, maximal)


def circle():
    return boundary_simplex(2)


def product_complex(K1: OrderedComplex, K2: OrderedComplex):
    """Ordered simplicial product (staircase triangulation).

    Vertices are pairs ordered lexicographically; simplexes are the
    chains in the product order whose projections are simplexes of the
    factors.  Triangulates |K1| x |K2|.
    """
    pairs = [(a, b) for a in range(len(K1.vertex_labels))
             for b in range(len(K2.vertex_labels))]
    labels = [f"{K1.vertex_labels[a]}.{K2.vertex_labels[b]}"
              for a, b in pairs]
    pair_index = {p: i for i, p in enumerate(pairs)}

    maximal = []
    top1 = K1.dim
    top2 = K2.dim
    for s1 in K1.simplex_list(top1):
        for s2 in K2.simplex_list(top2):
            maximal.extend(_staircases(s1, s2, pair_index))
    return OrderedComplex.from_maximal(labels, maximal)


def _staircases(s1, s2, pair_index):
    """Maximal monotone staircases through the grid s1 x s2."""
    p, q = len(s1) - 1, len(s2) - 1
    out = []

    def walk(i, j, path):
        if i == p and j == q:
            out.append(tuple(pair_index[(s1[a], s2[b])] for a, b in path))
            return
        if i < p:
            walk(i + 1, j, path + [(i + 1, j)])
        if j < q:
            walk(i, j + 1, path + [(i, j + 1)])

    walk(0, 0, [(0, 0)])
    return out


def s1_x_s2():
    """Product triangulation of (boundary of a triangle) x (boundary of a
    tetrahedron); 12 vertices, 36 top simplexes."""
    return product_complex(boundary_simplex(2), boundary_simplex(3))


def unit_top_cocycle(K: OrderedComplex, degree=None):
    """The orientation cocycle in top degree on the boundary of a simplex:
    value (-1)^i on the face omitting vertex i.  Closed because there is
    nothing above top degree; generates the top cohomology."""
    if degree is None:
        degree = K.dim
    values = {}
    all_verts = tuple(range(len(K.vertex_labels)))
    for s in K.simplex_list(degree):
        omitted = [v for v in all_verts if v not in s]
        if len(omitted) != 1:
            raise ValueError("unit cocycle needs a simplex-boundary complex")
        values[s] = (-1) ** omitted[0]
    return ScalarCochain(K, degree, values)


def orientation_cocycle(K: OrderedComplex):
    """Top-degree cocycle dual to a fundamental cycle.

    For a closed orientable triangulated manifold the kernel of the top
    boundary matrix is one-dimensional; its (+-1) coefficients give a
    top cochain pairing nonzero with the fundamental cycle.  Top-degree
    cochains are closed for dimension reasons.
    """
    top = K.dim
    kernel = K.boundary_matrix(top).kernel_basis()
    if len(kernel) != 1:
        raise ValueError("top boundary kernel is not one-dimensional; "
                         "not a closed orientable pseudomanifold")
    z = kernel[0]
    lead = next(x for x in z if x != 0)
    z = [x / abs(lead) for x in z]
    if any(abs(x) != 1 for x in z):
        raise ValueError("fundamental cycle is not +-1 on top simplexes")
    values = {s: z[i] for i, s in enumerate(K.simplex_list(top))}
    return ScalarCochain(K, top, values)
