"""Deterministic subspace calculus on top of exactlin.

A subspace of Q^n is handled as a list of spanning row vectors; the
canonical form is the reduced row echelon basis, so equality of subspaces
is equality of canonical bases.
"""

from fractions import Fraction

from .exactlin import Matrix, vec_is_zero


def standard_basis(n):
    return [tuple(Fraction(1 if i == j else 0) for j in range(n))
            for i in range(n)]


def echelon_span(vectors, ambient):
    """Canonical (RREF) basis of the span of the given row vectors."""
    vecs = [v for v in vectors if not vec_is_zero(v)]
    if not vecs:
        return []
    m = Matrix(vecs)
    rrefm, pivots = m._echelon()
    return [rrefm[i] for i in range(len(pivots))]


def span_dim(vectors, ambient):
    return len(echelon_span(vectors, ambient))


def in_span(vectors, v, ambient):
    if vec_is_zero(v):
        return True
    if not vectors:
        return False
    return span_dim(list(vectors) + [v], ambient) == span_dim(vectors, ambient)


def spans_equal(u_vecs, v_vecs, ambient):
    return echelon_span(u_vecs, ambient) == echelon_span(v_vecs, ambient)


def extend_basis(base_vectors, candidates, ambient):
    """Greedily pick candidates independent modulo span(base_vectors).

    Returns the picked vectors, in candidate order (the deterministic
    pivot-based quotient representatives used throughout).
    """
    chosen = []
    current = echelon_span(base_vectors, ambient)
    dim = len(current)
    pool = list(base_vectors)
    for v in candidates:
        trial = echelon_span(pool + chosen + [v], ambient)
        if len(trial) > dim:
            chosen.append(v)
            dim = len(trial)
    return chosen


def annihilator(vectors, ambient):
    """Row vectors p with p . u = 0 for every spanning vector u."""
    if not vectors:
        return standard_basis(ambient)
    return Matrix(vectors).kernel_basis()


def intersect(u_vecs, v_vecs, ambient):
    """Canonical basis of span(u) intersect span(v)."""
    if not u_vecs or not v_vecs:
        return []
    a = Matrix.from_columns(list(u_vecs), nrows=ambient)
    b = Matrix.from_columns(list(v_vecs), nrows=ambient)
    stacked = a.hstack(b)
    out = []
    for k in stacked.kernel_basis():
        x = k[:a.cols]
        out.append(a.apply(x))
    return echelon_span(out, ambient)


def subspace_sum(u_vecs, v_vecs, ambient):
    return echelon_span(list(u_vecs) + list(v_vecs), ambient)


def preimage(m, vectors):
    """Canonical basis of {x : m @ x in span(vectors)}."""
    ann = annihilator(vectors, m.rows)
    if not ann:
        return echelon_span(standard_basis(m.cols), m.cols)
    pm = Matrix(ann) @ m
    return echelon_span(pm.kernel_basis(), m.cols)


def coords_in(basis_vectors, v, ambient):
    """Coordinates of v in the given basis, or None if outside the span."""
    if not basis_vectors:
        return () if vec_is_zero(v) else None
    m = Matrix.from_columns(list(basis_vectors), nrows=ambient)
    x = m.solve(v)
    if x is None:
        return None
    if m.apply(x) != tuple(v):
        return None
    return x


def quotient_coords(denominator_vectors, rep_vectors, v, ambient):
    """Coordinates of the class of v w.r.t. the representative classes.

    Requires v to lie in span(denominator + reps); returns only the
    representative part of the solution.
    """
    full = list(denominator_vectors) + list(rep_vectors)
    x = coords_in(full, v, ambient)
    if x is None:
        return None
    return tuple(x[len(denominator_vectors):])
