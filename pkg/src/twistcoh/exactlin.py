"""Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (arbitrary-precision, always in lowest
terms, positive denominator).  Matrices are immutable and every
basis-producing routine uses one fixed pivoting rule -- per column, left to
right, take the first nonzero entry scanning remaining rows top-down -- so
that repeated runs produce identical output.

Rank-only queries are routed through a sparse integer elimination that may
pick pivots differently (rank does not depend on pivoting), but its result
is still deterministic for a given input.
"""

from fractions import Fraction
from math import gcd


def rat(x) -> Fraction:
    """Coerce ints, strings like '-3/4', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def format_rat(x: Fraction) -> str:
    """Serialize as 'p/q', omitting '/q' when the denominator is 1."""
    return str(Fraction(x))


def parse_rat(s: str) -> Fraction:
    return Fraction(s.strip())


def vec(entries):
    return tuple(rat(x) for x in entries)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    c = rat(c)
    return tuple(c * a for a in u)


def vec_is_zero(u):
    return all(a == 0 for a in u)


class Matrix:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "_rows", "_ech")

    def __init__(self, entries, rows=None, cols=None):
        if rows is None:
            data = tuple(tuple(rat(x) for x in r) for r in entries)
            self._rows = data
            self.rows = len(data)
            self.cols = len(data[0]) if data else 0
            if any(len(r) != self.cols for r in data):
                raise ValueError("ragged rows")
        else:
            # entries is a dict {(i, j): value}
            self.rows = rows
            self.cols = cols
            grid = [[Fraction(0)] * cols for _ in range(rows)]
            for (i, j), v in entries.items():
                grid[i][j] = rat(v)
            self._rows = tuple(tuple(r) for r in grid)
        self._ech = None

    @staticmethod
    def zero(rows, cols):
        return Matrix({}, rows=rows, cols=cols)

    @staticmethod
    def identity(n):
        return Matrix({(i, i): 1 for i in range(n)}, rows=n, cols=n)

    @staticmethod
    def from_columns(columns, nrows=None):
        if not columns:
            if nrows is None:
                raise ValueError("need nrows for an empty column list")
            return Matrix.zero(nrows, 0)
        nrows = len(columns[0])
        return Matrix([[columns[j][i] for j in range(len(columns))]
                       for i in range(nrows)])

    @staticmethod
    def from_rows(row_vectors, ncols=None):
        if not row_vectors:
            if ncols is None:
                raise ValueError("need ncols for an empty row list")
            return Matrix.zero(0, ncols)
        return Matrix(row_vectors)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def col(self, j):
        if not 0 <= j < self.cols:
            raise IndexError(j)
        return tuple(r[j] for r in self._rows)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def transpose(self):
        return Matrix([self.col(j) for j in range(self.cols)])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self._rows == other._rows)

    def __hash__(self):
        return hash(self._rows)

    def __add__(self, other):
        self._check_same_shape(other)
        return Matrix([vec_add(a, b) for a, b in zip(self._rows, other._rows)])

    def __sub__(self, other):
        self._check_same_shape(other)
        return Matrix([vec_sub(a, b) for a, b in zip(self._rows, other._rows)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = rat(c)
        return Matrix([[c * x for x in r] for r in self._rows])

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in product")
            ot = other.transpose()._rows
            out = []
            for r in self._rows:
                nz = [(k, x) for k, x in enumerate(r) if x != 0]
                out.append(tuple(sum((x * oc[k] for k, x in nz), Fraction(0))
                                 for oc in ot))
            return Matrix(out) if out else Matrix.zero(0, other.cols)
        raise TypeError("matmul expects a Matrix")

    def apply(self, v):
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in apply")
        nzv = [(k, x) for k, x in enumerate(v) if x != 0]
        return tuple(sum((r[k] * x for k, x in nzv), Fraction(0))
                     for r in self._rows)

    def is_zero(self):
        return all(vec_is_zero(r) for r in self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(format_rat(x) for x in r) for r in self._rows)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    # -- elimination ----------------------------------------------------

    def _echelon(self):
        """Row-reduced form with the fixed pivot rule; cached.

        Returns (rref rows as list of tuples, pivot column list).
        """
        if self._ech is not None:
            return self._ech
        m = [list(r) for r in self._rows]
        pivots = []
        prow = 0
        for c in range(self.cols):
            sel = None
            for r in range(prow, self.rows):
                if m[r][c] != 0:
                    sel = r
                    break
            if sel is None:
                continue
            m[prow], m[sel] = m[sel], m[prow]
            pv = m[prow][c]
            if pv != 1:
                m[prow] = [x / pv for x in m[prow]]
            for r in range(self.rows):
                if r != prow and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [a - f * b for a, b in zip(m[r], m[prow])]
            pivots.append(c)
            prow += 1
            if prow == self.rows:
                break
        self._ech = ([tuple(r) for r in m], pivots)
        return self._ech

    def rank(self):
        return len(self._echelon()[1])

    def column_space_analysis(self):
        """(rank, kernel_basis, image_basis, pivot_columns).

        kernel_basis: one vector per free column, entry 1 at the free
        column and the negated reduced coefficients at pivot columns.
        image_basis: the original matrix columns at the pivot indices.
        """
        rrefm, pivots = self._echelon()
        pivset = set(pivots)
        kernel = []
        for f in range(self.cols):
            if f in pivset:
                continue
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -rrefm[r][f]
            kernel.append(tuple(v))
        image = [self.col(j) for j in pivots]
        return len(pivots), kernel, image, list(pivots)

    def kernel_basis(self):
        return self.column_space_analysis()[1]

    def solve(self, b):
        """One exact solution of self @ x = b, or None.

        Free coordinates are set to 0 (pivot convention).
        """
        if len(b) != self.rows:
            raise ValueError("right-hand side length mismatch")
        if self.rows == 0:
            return tuple(Fraction(0) for _ in range(self.cols))
        aug = Matrix([list(r) + [rat(bv)] for r, bv in zip(self._rows, b)])
        rrefm, pivots = aug._echelon()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = rrefm[r][self.cols]
        return tuple(x)

    def determinant(self):
        """Exact determinant via integer Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        # scale rows to integers
        m = []
        scale = Fraction(1)
        for r in self._rows:
            den = 1
            for x in r:
                den = den * x.denominator // gcd(den, x.denominator)
            scale *= den
            m.append([int(x * den) for x in r])
        sign = 1
        prev = 1
        for k in range(n - 1):
            sel = None
            for r in range(k, n):
                if m[r][k] != 0:
                    sel = r
                    break
            if sel is None:
                return Fraction(0)
            if sel != k:
                m[k], m[sel] = m[sel], m[k]
                sign = -sign
            pk = m[k][k]
            for i in range(k + 1, n):
                mik = m[i][k]
                row_i = m[i]
                row_k = m[k]
                for j in range(k + 1, n):
                    row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
                row_i[k] = 0
            prev = pk
        return Fraction(sign * m[n - 1][n - 1]) / scale

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = self.hstack(Matrix.identity(n))
        rrefm, pivots = aug._echelon()
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([r[n:] for r in rrefm[:n]])

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        if self.rows == 0:
            return Matrix.zero(0, self.cols + other.cols)
        return Matrix([list(a) + list(b)
                       for a, b in zip(self._rows, other._rows)])

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        if self.rows + other.rows == 0:
            return Matrix.zero(0, self.cols)
        return Matrix(list(self._rows) + list(other._rows))


# -- sparse integer rank engine -----------------------------------------


def _strip_row(row):
    g = 0
    for v in row.values():
        g = gcd(g, v if v >= 0 else -v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def sparse_rank(rows, ncols=None):
    """Rank of a sparse rational matrix given as row dicts {col: value}.

    Values may be Fractions or ints; rows are scaled to integers first.
    Pivots are chosen to limit fill-in (smallest row, then least-used
    column, deterministic tie-breaks), which cannot change the rank.
    """
    work = []
    for r in rows:
        den = 1
        for v in r.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        ir = {}
        for c, v in r.items():
            iv = int(v * den) if isinstance(v, Fraction) else v * den
            if iv:
                ir[c] = iv
        if ir:
            work.append(_strip_row(ir))
    rank = 0
    col_rows = {}
    for idx, r in enumerate(work):
        for c in r:
            col_rows.setdefault(c, set()).add(idx)
    active = set(range(len(work)))
    while active:
        # pivot row: fewest nonzeros, then lowest index
        prow_idx = min(active, key=lambda i: (len(work[i]), i))
        prow = work[prow_idx]
        if not prow:
            active.discard(prow_idx)
            continue
        pcol = min(prow, key=lambda c: (len(col_rows.get(c, ())), c))
        pval = prow[pcol]
        rank += 1
        active.discard(prow_idx)
        touched = [i for i in col_rows.get(pcol, ()) if i in active]
        for i in touched:
            row = work[i]
            f = row[pcol]
            new = {}
            for c, v in row.items():
                if c == pcol:
                    continue
                w = v * pval - prow.get(c, 0) * f
                if w:
                    new[c] = w
                elif c in prow:
                    col_rows[c].discard(i)
            for c in prow:
                if c != pcol and c not in row:
                    w = -prow[c] * f
                    new[c] = w
                    col_rows.setdefault(c, set()).add(i)
            new = _strip_row(new)
            work[i] = new
            col_rows[pcol].discard(i)
            if not new:
                active.discard(i)
        for c in prow:
            col_rows.get(c, set()).discard(prow_idx)
    return rank


class SparseMatrix:
    """Row-dict sparse matrix of Fractions, for the large chain operators.

    Semantics match the dense ``Matrix``; only operations that never
    depend on pivot choices (products, rank, row selection) are offered.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        self.data = [dict() for _ in range(rows)] if data is None else data

    def add_entry(self, i, j, v):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        row = self.data[i]
        w = row.get(j, Fraction(0)) + rat(v)
        if w:
            row[j] = w
        else:
            row.pop(j, None)

    def get(self, i, j):
        return self.data[i].get(j, Fraction(0))

    def nnz(self):
        return sum(len(r) for r in self.data)

    def is_zero(self):
        return all(not r for r in self.data)

    def rank(self):
        return sparse_rank(self.data, self.cols)

    def row_submatrix(self, row_indices):
        sel = list(row_indices)
        return SparseMatrix(len(sel), self.cols,
                            [dict(self.data[i]) for i in sel])

    def col_submatrix(self, col_indices):
        keep = {c: k for k, c in enumerate(col_indices)}
        out = []
        for r in self.data:
            out.append({keep[c]: v for c, v in r.items() if c in keep})
        return SparseMatrix(self.rows, len(keep), out)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        off = self.cols
        out = []
        for a, b in zip(self.data, other.data):
            row = dict(a)
            for c, v in b.items():
                row[c + off] = v
            out.append(row)
        return SparseMatrix(self.rows, self.cols + other.cols, out)

    def __matmul__(self, other):
        if not isinstance(other, SparseMatrix):
            raise TypeError("matmul expects a SparseMatrix")
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        out = []
        for r in self.data:
            acc = {}
            for k, x in r.items():
                for c, y in other.data[k].items():
                    w = acc.get(c, Fraction(0)) + x * y
                    if w:
                        acc[c] = w
                    else:
                        acc.pop(c, None)
            out.append(acc)
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, v):
        out = []
        for r in self.data:
            out.append(sum((x * v[c] for c, x in r.items()), Fraction(0)))
        return tuple(out)

    def transpose(self):
        out = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self.data):
            for c, v in r.items():
                out[c][i] = v
        return SparseMatrix(self.cols, self.rows, out)

    def to_dense(self):
        flat = {}
        for i, r in enumerate(self.data):
            for c, v in r.items():
                flat[(i, c)] = v
        return Matrix(flat, rows=self.rows, cols=self.cols)

    @staticmethod
    def from_dense(m):
        out = SparseMatrix(m.rows, m.cols)
        for i in range(m.rows):
            for j in range(m.cols):
                v = m[i, j]
                if v:
                    out.data[i][j] = v
        return out
