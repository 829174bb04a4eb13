"""Finite ordered simplicial complexes with local coefficients.

Vertices carry a fixed total order (their position in the vertex list);
simplexes are strictly increasing tuples of vertex indices, listed per
dimension in lexicographic order.  That order is part of the
reproducibility contract: reference bases, holonomy and cup products all
depend on it.

The universal cover is never materialized.  A representation of the
fundamental group is turned into an edge transport (a flat connection on
ordered edges) through the spanning-tree edge-path presentation, and the
twisted cochain complex is built from the transport.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .exactlin import Matrix, rat


class OrderedComplex:
    """Finite simplicial complex closed under faces, vertices totally
    ordered by their position in ``vertex_labels``."""

    def __init__(self, vertex_labels, simplices_by_dim):
        self.vertex_labels = list(vertex_labels)
        self.label_index = {v: i for i, v in enumerate(self.vertex_labels)}
        if len(self.label_index) != len(self.vertex_labels):
            raise ValueError("duplicate vertex labels")
        self.simplices = {q: sorted(set(map(tuple, s)))
                          for q, s in simplices_by_dim.items() if s}
        self._index = {q: {s: i for i, s in enumerate(lst)}
                       for q, lst in self.simplices.items()}
        self._check()

    @classmethod
    def from_maximal(cls, vertex_labels, maximal):
        labels = list(vertex_labels)
        idx = {v: i for i, v in enumerate(labels)}
        by_dim = {}
        for simplex in maximal:
            verts = tuple(sorted(idx[v] for v in simplex))
            if len(set(verts)) != len(verts):
                raise ValueError(f"repeated vertex in simplex {simplex}")
            for q in range(len(verts)):
                for face in combinations(verts, q + 1):
                    by_dim.setdefault(q, set()).add(face)
        for i in range(len(labels)):
            by_dim.setdefault(0, set()).add((i,))
        return cls(labels, by_dim)

    def _check(self):
        for q, lst in self.simplices.items():
            for s in lst:
                if list(s) != sorted(set(s)):
                    raise ValueError(f"simplex {s} is not strictly increasing")
                if any(not 0 <= v < len(self.vertex_labels) for v in s):
                    raise ValueError(f"simplex {s} has unknown vertices")
                if q >= 1:
                    for face in combinations(s, q):
                        if face not in self._index.get(q - 1, {}):
                            raise ValueError(f"face {face} of {s} missing")

    @property
    def dim(self):
        return max(self.simplices) if self.simplices else -1

    def n_simplices(self, q):
        return len(self.simplices.get(q, []))

    def simplex_list(self, q):
        return self.simplices.get(q, [])

    def index_of(self, simplex):
        q = len(simplex) - 1
        return self._index[q][tuple(simplex)]

    def has_simplex(self, simplex):
        q = len(simplex) - 1
        return tuple(simplex) in self._index.get(q, {})

    def labels_of(self, simplex):
        return tuple(self.vertex_labels[v] for v in simplex)

    def edges(self):
        return self.simplices.get(1, [])

    def is_connected(self):
        n = len(self.vertex_labels)
        if n == 0:
            return True
        adj = {i: [] for i in range(n)}
        for u, v in self.edges():
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        todo = deque([0])
        while todo:
            u = todo.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == n

    def boundary_matrix(self, q):
        """Simplicial boundary C_q -> C_{q-1} with trivial coefficients."""
        rows = self.n_simplices(q - 1)
        cols = self.n_simplices(q)
        entries = {}
        for j, s in enumerate(self.simplex_list(q)):
            for i in range(q + 1):
                face = s[:i] + s[i + 1:]
                r = self._index[q - 1][face]
                entries[(r, j)] = entries.get((r, j), 0) + (-1) ** i
        return Matrix(entries, rows=rows, cols=cols)


def chain_complex(K: OrderedComplex):
    """Simplicial chain complex over Q as a BasedComplex.

    Homological degree q is stored at complex degree -q so that the
    differentials raise the stored degree; H^{-q} of the result is H_q.
    """
    from .detline import BasedComplex
    dims = {-q: K.n_simplices(q) for q in range(K.dim + 1)}
    diffs = {-q: K.boundary_matrix(q) for q in range(1, K.dim + 1)}
    ids = {-q: f"C_{q}" for q in range(K.dim + 1)}
    return BasedComplex(dims, diffs, basis_ids=ids)


def homology_dims(K: OrderedComplex):
    cx = chain_complex(K)
    return {q: d for q, d in
            ((-i, v) for i, v in cx.cohomology_dims().items())}


# -- subdivision ----------------------------------------------------------


def barycentric_subdivision(K: OrderedComplex):
    """First barycentric subdivision.

    Returns (K', carrier) where K' has one vertex per simplex of K
    (ordered by dimension, then lexicographically), simplexes are flags
    of proper faces, and carrier maps each K'-simplex to the smallest
    K-simplex containing it (the top of the flag).
    """
    bary_list = []
    for q in range(K.dim + 1):
        bary_list.extend(K.simplex_list(q))
    bary_index = {s: i for i, s in enumerate(bary_list)}
    labels = [K.labels_of(s) for s in bary_list]

    maximal = []
    top = K.dim
    for q in range(top + 1):
        for s in K.simplex_list(q):
            if q < top and any(set(s) < set(t)
                               for t in K.simplex_list(q + 1)):
                continue
            maximal.append(s)

    def flags_of(simplex):
        out = []
        for perm in permutations(simplex):
            chain = [tuple(sorted(perm[:k + 1])) for k in range(len(perm))]
            out.append(tuple(bary_index[c] for c in chain))
        return out

    by_dim = {}
    for s in maximal:
        for flag in flags_of(s):
            flag = tuple(sorted(flag))
            for q in range(len(flag)):
                for face in combinations(flag, q + 1):
                    by_dim.setdefault(q, set()).add(face)
    K2 = OrderedComplex(labels, by_dim)
    carrier = {}
    for q, lst in K2.simplices.items():
        for s in lst:
            carrier[s] = bary_list[max(s)]
    return K2, carrier


@dataclass
class SimplicialMap:
    """Vertex map inducing a simplicial map src -> dst."""

    src: OrderedComplex
    dst: OrderedComplex
    vertex_map: list

    def __post_init__(self):
        for q in range(self.src.dim + 1):
            for s in self.src.simplex_list(q):
                img = tuple(sorted(set(self.vertex_map[v] for v in s)))
                if not self.dst.has_simplex(img):
                    raise ValueError(
                        f"image of {s} is not a simplex of the target")

    def image(self, simplex):
        """Image as a (simplex, sign) pair; sign 0 when degenerate."""
        img = [self.vertex_map[v] for v in simplex]
        if len(set(img)) != len(img):
            return None, 0
        sign = 1
        arr = list(img)
        for i in range(len(arr)):
            for j in range(i + 1, len(arr)):
                if arr[i] > arr[j]:
                    arr[i], arr[j] = arr[j], arr[i]
                    sign = -sign
        return tuple(arr), sign

    def chain_map_matrix(self, q):
        rows = self.dst.n_simplices(q)
        cols = self.src.n_simplices(q)
        entries = {}
        for j, s in enumerate(self.src.simplex_list(q)):
            img, sign = self.image(s)
            if sign:
                entries[(self.dst.index_of(img), j)] = sign
        return Matrix(entries, rows=rows, cols=cols)

    def compose(self, inner):
        """self o inner (inner: J -> src)."""
        if inner.dst is not self.src:
            raise ValueError("maps are not composable")
        vm = [self.vertex_map[inner.vertex_map[v]]
              for v in range(len(inner.src.vertex_labels))]
        return SimplicialMap(inner.src, self.dst, vm)


def approx_identity(K2: OrderedComplex, K: OrderedComplex, carrier):
    """Simplicial approximation of the identity |K'| -> |K| sending each
    barycenter to the largest vertex of its carrier simplex."""
    vm = []
    for i in range(len(K2.vertex_labels)):
        sigma = carrier[(i,)]
        vm.append(max(sigma))
    return SimplicialMap(K2, K, vm)


# -- fundamental group and representations --------------------------------


@dataclass
class Pi1Presentation:
    """Edge-path presentation from a spanning tree.

    Generators are the non-tree edges (u, v), u < v; holonomy words are
    tuples of (generator index, +-1).
    """

    complex: OrderedComplex
    base: int
    tree_edges: frozenset
    generators: list
    relators: list

    def holonomy_word(self, u, v):
        if u == v:
            return ()
        a, b = (u, v) if u < v else (v, u)
        if (a, b) in self.tree_edges:
            return ()
        gi = self._gen_index[(a, b)]
        word = ((gi, 1),)
        if u > v:
            word = ((gi, -1),)
        return word

    def __post_init__(self):
        self._gen_index = {e: i for i, e in enumerate(self.generators)}


def fundamental_group(K: OrderedComplex, base=0):
    """Spanning-tree presentation of pi_1(K, base).

    The tree is grown breadth-first from the base in vertex order; the
    relators come from the 2-simplexes.
    """
    if not K.is_connected():
        raise ValueError("fundamental group of a disconnected complex")
    n = len(K.vertex_labels)
    adj = {i: [] for i in range(n)}
    for u, v in K.edges():
        adj[u].append(v)
        adj[v].append(u)
    for i in adj:
        adj[i].sort()
    tree = set()
    seen = {base}
    todo = deque([base])
    while todo:
        u = todo.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                tree.add((min(u, w), max(u, w)))
                todo.append(w)
    generators = [e for e in K.edges() if e not in tree]
    pres = Pi1Presentation(K, base, frozenset(tree), generators, [])
    relators = []
    for (a, b, c) in K.simplex_list(2):
        word = (pres.holonomy_word(a, b) + pres.holonomy_word(b, c)
                + tuple((g, -e) for g, e in reversed(pres.holonomy_word(a, c))))
        word = _reduce_word(word)
        if word:
            relators.append(word)
    pres.relators = relators
    return pres


def _reduce_word(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


class Representation:
    """Matrices for the generators of a Pi1Presentation, acting as a flat
    edge transport on the complex."""

    def __init__(self, presentation: Pi1Presentation, dim, matrices,
                 check=True):
        self.presentation = presentation
        self.complex = presentation.complex
        self.dim = dim
        self.matrices = list(matrices)
        self._cache = {}
        if len(self.matrices) != len(presentation.generators):
            raise ValueError(
                f"need {len(presentation.generators)} generator matrices, "
                f"got {len(self.matrices)}")
        if check:
            self.validate()

    @classmethod
    def trivial(cls, K: OrderedComplex, dim=1):
        pres = fundamental_group(K)
        mats = [Matrix.identity(dim) for _ in pres.generators]
        return cls(pres, dim, mats)

    @classmethod
    def rank_one(cls, K: OrderedComplex, values):
        """One 1x1 matrix (a nonzero rational) per generator."""
        pres = fundamental_group(K)
        mats = [Matrix([[rat(v)]]) for v in values]
        return cls(pres, 1, mats)

    def validate(self):
        for i, m in enumerate(self.matrices):
            if m.rows != self.dim or m.cols != self.dim:
                raise ValueError(f"generator matrix {i} has wrong shape")
            if m.determinant() == 0:
                raise ValueError(f"generator matrix {i} is singular")
        ident = Matrix.identity(self.dim)
        for word in self.presentation.relators:
            if self.evaluate_word(word) != ident:
                raise ValueError(
                    "representation does not satisfy a relator; it does not "
                    "factor through the fundamental group")

    def evaluate_word(self, word):
        out = Matrix.identity(self.dim)
        for g, e in word:
            m = self.matrices[g] if e == 1 else self.matrices[g].inverse()
            out = out @ m
        return out

    def edge_matrix(self, u, v):
        """Transport rho(hol(u -> v)) along the ordered edge (u, v)."""
        key = (u, v)
        if key not in self._cache:
            self._cache[key] = self.evaluate_word(
                self.presentation.holonomy_word(u, v))
        return self._cache[key]

    def is_unimodular(self):
        return all(abs(m.determinant()) == 1 for m in self.matrices)

    def nontrivial_dets(self):
        return [m.determinant() for m in self.matrices
                if abs(m.determinant()) != 1]


class PullbackTransport:
    """Edge transport on the source of a simplicial map, pulled back from
    a transport on the target (rho o f_*)."""

    def __init__(self, smap: SimplicialMap, base_transport):
        self.map = smap
        self.base = base_transport
        self.complex = smap.src
        self.dim = base_transport.dim

    def edge_matrix(self, u, v):
        fu = self.map.vertex_map[u]
        fv = self.map.vertex_map[v]
        if fu == fv:
            return Matrix.identity(self.dim)
        return self.base.edge_matrix(fu, fv)

    def is_unimodular(self):
        for u, v in self.complex.edges():
            if abs(self.edge_matrix(u, v).determinant()) != 1:
                return False
        return True


class GaugedTransport:
    """Transport conjugated by vertex potentials; models a different
    choice of fundamental domain (spanning tree / base vertex)."""

    def __init__(self, base_transport, potentials):
        self.base = base_transport
        self.complex = base_transport.complex
        self.dim = base_transport.dim
        self.potentials = potentials
        self._inv = [m.inverse() for m in potentials]

    def edge_matrix(self, u, v):
        return self._inv[u] @ self.base.edge_matrix(u, v) @ \
            self.potentials[v]

    def is_unimodular(self):
        for u, v in self.complex.edges():
            if abs(self.edge_matrix(u, v).determinant()) != 1:
                return False
        return True


def retree(transport, tree_edges, base):
    """Gauge the transport so that the given spanning tree has identity
    holonomy (a different embedding of the fundamental domain)."""
    K = transport.complex
    n = len(K.vertex_labels)
    adj = {i: [] for i in range(n)}
    for u, v in tree_edges:
        adj[u].append(v)
        adj[v].append(u)
    pot = [None] * n
    pot[base] = Matrix.identity(transport.dim)
    todo = deque([base])
    while todo:
        u = todo.popleft()
        for w in adj[u]:
            if pot[w] is None:
                pot[w] = pot[u] @ transport.edge_matrix(u, w)
                todo.append(w)
    if any(p is None for p in pot):
        raise ValueError("edge set does not span the complex")
    return GaugedTransport(transport, pot)


def random_spanning_tree(K: OrderedComplex, rng):
    edges = list(K.edges())
    rng.shuffle(edges)
    parent = list(range(len(K.vertex_labels)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append((u, v))
    return tree


# -- twisted cochains ------------------------------------------------------


class ScalarCochain:
    """Cochain with trivial (rational scalar) coefficients."""

    def __init__(self, K: OrderedComplex, degree, values=None):
        self.complex = K
        self.degree = degree
        self.values = {}
        if values:
            for s, v in values.items():
                s = tuple(s)
                v = rat(v)
                if not K.has_simplex(s):
                    raise ValueError(f"{s} is not a simplex")
                if len(s) - 1 != degree:
                    raise ValueError(f"{s} does not have degree {degree}")
                if v:
                    self.values[s] = v

    def __call__(self, simplex):
        return self.values.get(tuple(simplex), Fraction(0))

    def is_zero(self):
        return not self.values

    def vector(self):
        return tuple(self(s) for s in self.complex.simplex_list(self.degree))

    def coboundary(self):
        K = self.complex
        out = {}
        for s in K.simplex_list(self.degree + 1):
            acc = Fraction(0)
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                acc += (-1) ** i * self(face)
            if acc:
                out[s] = acc
        return ScalarCochain(K, self.degree + 1, out)

    def is_closed(self):
        if self.degree + 1 > self.complex.dim:
            return True
        return self.coboundary().is_zero()

    def cup_scalar(self, other):
        """Alexander-Whitney cup product of two scalar cochains."""
        K = self.complex
        r, s = self.degree, other.degree
        out = {}
        for simplex in K.simplex_list(r + s):
            front = simplex[:r + 1]
            back = simplex[r:]
            v = self(front) * other(back)
            if v:
                out[simplex] = v
        return ScalarCochain(K, r + s, out)


def twisted_cochain_complex(K: OrderedComplex, transport):
    """Cochain complex of K with local coefficients given by the edge
    transport; reference basis is (simplex, coefficient coordinate) in
    lexicographic order, simplex-major."""
    from .detline import BasedComplex
    d = transport.dim
    dims = {q: d * K.n_simplices(q) for q in range(K.dim + 1)}
    diffs = {}
    for q in range(K.dim):
        rows = dims[q + 1]
        cols = dims[q]
        entries = {}
        faces_q = K._index[q]
        for i, s in enumerate(K.simplex_list(q + 1)):
            for j in range(q + 2):
                face = s[:j] + s[j + 1:]
                c = faces_q[face]
                if j == 0:
                    block = transport.edge_matrix(s[0], s[1])
                    for a in range(d):
                        for b in range(d):
                            v = block[a, b]
                            if v:
                                entries[(i * d + a, c * d + b)] = \
                                    entries.get((i * d + a, c * d + b),
                                                Fraction(0)) + v
                else:
                    sgn = (-1) ** j
                    for a in range(d):
                        key = (i * d + a, c * d + a)
                        entries[key] = entries.get(key, Fraction(0)) + sgn
        diffs[q] = Matrix({k: v for k, v in entries.items() if v},
                          rows=rows, cols=cols)
    ids = {q: f"mu_{q}" for q in range(K.dim + 1)}
    return BasedComplex(dims, diffs, basis_ids=ids)


class TwistedCochain:
    """Degree-q cochain with values in Q^d, stored as the coordinate
    vector over the (simplex, coefficient) reference basis."""

    def __init__(self, K, dim_coeff, degree, vector):
        self.complex = K
        self.dim_coeff = dim_coeff
        self.degree = degree
        self.vector = tuple(rat(x) for x in vector)
        want = dim_coeff * K.n_simplices(degree)
        if len(self.vector) != want:
            raise ValueError("cochain vector has wrong length")

    def value(self, simplex):
        i = self.complex.index_of(simplex)
        d = self.dim_coeff
        return self.vector[i * d:(i + 1) * d]


def transport_along(transport, path):
    """Product of edge transports along consecutive vertices of a path."""
    out = Matrix.identity(transport.dim)
    for u, v in zip(path, path[1:]):
        out = out @ transport.edge_matrix(u, v)
    return out


def cup_operator(K, transport, theta: ScalarCochain, s):
    """Matrix of (theta cup .): C^s(K, E) -> C^{r+s}(K, E).

    The coefficient of the back face is transported to the front vertex
    along the leading path of the simplex.
    """
    r = theta.degree
    d = transport.dim
    rows = d * K.n_simplices(r + s) if r + s <= K.dim else 0
    cols = d * K.n_simplices(s)
    if rows == 0:
        return Matrix.zero(0, cols)
    entries = {}
    for i, simplex in enumerate(K.simplex_list(r + s)):
        front = simplex[:r + 1]
        tv = theta(front)
        if not tv:
            continue
        back = simplex[r:]
        c = K.index_of(back)
        block = transport_along(transport, front)
        for a in range(d):
            for b in range(d):
                v = tv * block[a, b]
                if v:
                    entries[(i * d + a, c * d + b)] = v
    return Matrix(entries, rows=rows, cols=cols)


def cup(theta: ScalarCochain, c: TwistedCochain, transport):
    """theta cup c; degrees beyond dim K give the (empty) zero cochain."""
    K = c.complex
    s = c.degree
    if theta.degree + s > K.dim:
        return TwistedCochain(K, c.dim_coeff, theta.degree + s, ())
    op = cup_operator(K, transport, theta, s)
    return TwistedCochain(K, c.dim_coeff, theta.degree + s,
                          op.apply(c.vector))
