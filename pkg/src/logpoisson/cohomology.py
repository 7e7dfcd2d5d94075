"""Degree-truncated exact linear algebra over the cochain complexes.

The complexes are infinite dimensional over Q; we compute per-degree
cohomology dimensions through the total-degree filtration F_d (cochains
whose coefficients have total degree at most d).  The differentials are
not graded, so images are computed from sources up to degree D + buffer
and then intersected with F_d by exact row reduction; a stabilization
flag records whether an entry survives enlarging the buffer.

All elimination is exact.  Sparse vectors are keyed by
(degree, component tuple, monomial), so the natural tuple order is
degree-compatible and "reduce at the largest key" yields a basis whose
pivot degrees read off the filtered intersection dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Optional, Sequence

from .complexes import Cochain, LieRinehartData, differential
from .poly import Poly, monomials_of_degree

# a coordinate of the sliced cochain space
Key = tuple[int, tuple[int, ...], tuple[int, ...]]
Vector = dict[Key, Fraction]


@dataclass(frozen=True)
class SliceWindow:
    """Reporting degree D plus the extra source degrees used for images.

    buffer=None means the per-complex default: the maximal degree shift
    of the differential (clamped at zero) plus two.
    """

    max_degree: int
    buffer: Optional[int] = None

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        if self.buffer is not None and self.buffer < 0:
            raise ValueError("buffer must be nonnegative")

    def resolve_buffer(self, data: LieRinehartData) -> int:
        if self.buffer is not None:
            return self.buffer
        return max(data.degree_shift(), 0) + 2


def cochain_basis_keys(data: LieRinehartData, k: int, max_degree: int) -> list[Key]:
    """Deterministic basis of the k-cochains with coefficients of total
    degree <= max_degree, ordered by (degree, tuple, monomial)."""
    if k > data.r or max_degree < 0:
        return []
    keys = []
    for d in range(max_degree + 1):
        for tup in combinations(range(data.r), k):
            for mono in monomials_of_degree(data.nvars, d):
                keys.append((d, tup, mono))
    keys.sort()
    return keys


def basis_cochain(data: LieRinehartData, key: Key) -> Cochain:
    _, tup, mono = key
    return Cochain(len(tup), data.r, data.nvars,
                   {tup: Poly.monomial(data.nvars, mono)})


def cochain_to_vector(c: Cochain) -> Vector:
    vec: Vector = {}
    for tup, poly in c.comps.items():
        for mono, coeff in poly.terms.items():
            vec[(sum(mono), tup, mono)] = coeff
    return vec


def vector_to_cochain(vec: Vector, k: int, data: LieRinehartData) -> Cochain:
    comps: dict[tuple[int, ...], dict] = {}
    for (_, tup, mono), coeff in vec.items():
        comps.setdefault(tup, {})[mono] = coeff
    return Cochain(k, data.r, data.nvars,
                   {t: Poly(data.nvars, terms) for t, terms in comps.items()})


def _column(data: LieRinehartData, key: Key) -> Vector:
    return cochain_to_vector(differential(data, basis_cochain(data, key)))


def _scale_primitive(vec: Vector) -> Vector:
    # clear denominators and divide by the content, keeping entries integer
    if not vec:
        return vec
    lcm = 1
    for c in vec.values():
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    scaled = {k: c * lcm for k, c in vec.items()}
    g = 0
    for c in scaled.values():
        g = gcd(g, int(c))
    if g > 1:
        scaled = {k: c / g for k, c in scaled.items()}
    return scaled


class Echelon:
    """Row space in reduced form, each row pivoted at its largest key."""

    def __init__(self):
        self.rows: dict[Key, Vector] = {}

    def reduce(self, vec: Vector) -> Vector:
        vec = dict(vec)
        while vec:
            top = max(vec)
            row = self.rows.get(top)
            if row is None:
                return vec
            factor = vec[top] / row[top]
            for key, val in row.items():
                nv = vec.get(key, Fraction(0)) - factor * val
                if nv:
                    vec[key] = nv
                else:
                    vec.pop(key, None)
        return vec

    def insert(self, vec: Vector) -> Optional[Key]:
        """Reduce and store; returns the new pivot key, or None when the
        vector was already in the row space."""
        vec = self.reduce(vec)
        if not vec:
            return None
        self.rows[max(vec)] = _scale_primitive(vec)
        return max(vec)

    @property
    def rank(self) -> int:
        return len(self.rows)


@dataclass
class SliceMatrix:
    """The differential restricted to a degree slice of the source."""

    k: int
    source_degree: int
    shift: int
    source_keys: list[Key]
    columns: dict[Key, Vector]

    def rank(self) -> int:
        ech = Echelon()
        for key in self.source_keys:
            ech.insert(self.columns[key])
        return ech.rank

    def kernel_dim(self) -> int:
        return len(self.source_keys) - self.rank()


def slice_matrix(data: LieRinehartData, k: int, source_degree: int) -> SliceMatrix:
    """Matrix of the differential from k-cochains of degree <= source_degree;
    target coefficients live in degree <= source_degree + shift."""
    keys = cochain_basis_keys(data, k, source_degree)
    cols = {key: _column(data, key) for key in keys}
    return SliceMatrix(k, source_degree, data.degree_shift(), keys, cols)


def _kernel_cumulative(data: LieRinehartData, k: int, max_degree: int) -> list[int]:
    """dim(ker d^k intersect F_d) for d = 0..max_degree.

    Restricting the differential to sources of degree <= d just selects
    columns, so the kernel dimension is columns minus incremental rank.
    """
    ech = Echelon()
    sources = 0
    out = []
    keys = cochain_basis_keys(data, k, max_degree)
    pos = 0
    for d in range(max_degree + 1):
        while pos < len(keys) and keys[pos][0] == d:
            ech.insert(_column(data, keys[pos]))
            sources += 1
            pos += 1
        out.append(sources - ech.rank)
    return out


def _image_cumulative(data: LieRinehartData, k: int, max_degree: int,
                      buffers: Sequence[int]) -> dict[int, list[int]]:
    """dim(im d^{k-1} intersect F_d) for d = 0..max_degree, for each of
    the given source buffers, from a single elimination pass.

    Pivoting at the largest (degree-compatible) key makes the span of the
    processed columns readable per degree: the intersection with F_d has
    one basis row per pivot of degree <= d.
    """
    buffers = sorted(set(buffers))
    if k == 0:
        return {b: [0] * (max_degree + 1) for b in buffers}
    ech = Echelon()
    pivot_degrees: list[int] = []
    results: dict[int, list[int]] = {}

    def snapshot() -> list[int]:
        counts = [0] * (max_degree + 1)
        for pd in pivot_degrees:
            if pd <= max_degree:
                counts[pd] += 1
        total = 0
        out = []
        for d in range(max_degree + 1):
            total += counts[d]
            out.append(total)
        return out

    keys = cochain_basis_keys(data, k - 1, max_degree + buffers[-1])
    pos = 0
    for b in buffers:
        limit = max_degree + b
        while pos < len(keys) and keys[pos][0] <= limit:
            piv = ech.insert(_column(data, keys[pos]))
            if piv is not None:
                pivot_degrees.append(piv[0])
            pos += 1
        results[b] = snapshot()
    return results


@dataclass(frozen=True)
class DegreeDim:
    degree: int
    dim: int
    cumulative: int
    stabilized: bool


def cohomology_dims(data: LieRinehartData, k: int, window: SliceWindow) -> list[DegreeDim]:
    """Per-degree dimensions of the k-th cohomology through the filtration.

    The entry at degree d is dim H_{<=d} - dim H_{<=d-1} where
    H_{<=d} = (ker d^k in F_d) / (im d^{k-1} in F_d); the kernel is exact,
    the image uses sources up to D + buffer.  An entry is flagged
    stabilized when it is unchanged under buffer + 1.
    """
    if not 0 <= k <= data.r:
        raise ValueError(f"cochain degree {k} outside 0..{data.r}")
    D = window.max_degree
    buffer = window.resolve_buffer(data)
    ker = _kernel_cumulative(data, k, D)
    images = _image_cumulative(data, k, D, [buffer, buffer + 1])
    rows = []
    prev = {buffer: 0, buffer + 1: 0}
    for d in range(D + 1):
        cum = {b: ker[d] - images[b][d] for b in prev}
        dim = {b: cum[b] - prev[b] for b in prev}
        rows.append(DegreeDim(d, dim[buffer], cum[buffer],
                              dim[buffer] == dim[buffer + 1]))
        prev = cum
    return rows


@dataclass(frozen=True)
class CohomologyTable:
    """Per (k, degree) dimensions with stabilization flags."""

    complex_name: str
    max_degree: int
    buffer: int
    rows: dict[int, tuple[DegreeDim, ...]]

    def dims(self, k: int) -> list[int]:
        return [r.dim for r in self.rows[k]]

    def cumulative(self, k: int) -> int:
        return self.rows[k][-1].cumulative if self.rows[k] else 0

    def entry(self, k: int, d: int) -> DegreeDim:
        return self.rows[k][d]

    @property
    def ks(self) -> list[int]:
        return sorted(self.rows)


def compute_table(data: LieRinehartData, ks: Iterable[int],
                  window: SliceWindow) -> CohomologyTable:
    buffer = window.resolve_buffer(data)
    rows = {k: tuple(cohomology_dims(data, k, window)) for k in ks}
    return CohomologyTable(data.name or "complex", window.max_degree, buffer, rows)


@dataclass(frozen=True)
class TableDiff:
    equal: bool
    mismatches: tuple[tuple[int, int, int, int], ...]  # (k, d, dim1, dim2)


def compare_tables(first: CohomologyTable, second: CohomologyTable) -> TableDiff:
    """Per-entry equality of two tables over the same window.

    Buffers are complex-specific plumbing and may differ; the reporting
    degree and the k range must agree.
    """
    if first.max_degree != second.max_degree:
        raise ValueError("tables use different reporting degrees")
    if first.ks != second.ks:
        raise ValueError("tables cover different cochain degrees")
    bad = []
    for k in first.ks:
        for d in range(first.max_degree + 1):
            a, b = first.entry(k, d).dim, second.entry(k, d).dim
            if a != b:
                bad.append((k, d, a, b))
    return TableDiff(not bad, tuple(bad))


class _TrackingEchelon:
    """Echelon that remembers how each stored row combines the inputs."""

    def __init__(self):
        self.rows: dict[Key, tuple[Vector, dict]] = {}

    def reduce(self, vec: Vector, combo: dict) -> tuple[Vector, dict]:
        vec = dict(vec)
        combo = dict(combo)
        while vec:
            top = max(vec)
            entry = self.rows.get(top)
            if entry is None:
                return vec, combo
            row, rcombo = entry
            factor = vec[top] / row[top]
            for key, val in row.items():
                nv = vec.get(key, Fraction(0)) - factor * val
                if nv:
                    vec[key] = nv
                else:
                    vec.pop(key, None)
            for key, val in rcombo.items():
                nv = combo.get(key, Fraction(0)) - factor * val
                if nv:
                    combo[key] = nv
                else:
                    combo.pop(key, None)
        return vec, combo

    def insert(self, vec: Vector, combo: dict) -> bool:
        vec, combo = self.reduce(vec, combo)
        if not vec:
            return False
        self.rows[max(vec)] = (vec, combo)
        return True


def find_primitive(data: LieRinehartData, cochain: Cochain,
                   window: SliceWindow) -> Optional[Cochain]:
    """Solve d(v) = cochain over sources of degree <= D + buffer.

    Returns a witness cochain, or None when no primitive exists in the
    window.  None is inconclusive: a primitive of higher degree could
    still exist.  The input must be exactly closed.
    """
    if not differential(data, cochain).is_zero():
        raise ValueError("cochain is not closed")
    k = cochain.k
    if k == 0:
        raise ValueError("0-cochains have no primitives")
    target = cochain_to_vector(cochain)
    if not target:
        return Cochain.zero(k - 1, data.r, data.nvars)
    D = window.max_degree
    buffer = window.resolve_buffer(data)
    ech = _TrackingEchelon()
    for key in cochain_basis_keys(data, k - 1, D + buffer):
        ech.insert(_column(data, key), {key: Fraction(1)})
    residual, combo = ech.reduce(target, {})
    if residual:
        return None
    witness: Vector = {key: -c for key, c in combo.items()}
    return vector_to_cochain(witness, k - 1, data)
