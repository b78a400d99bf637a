"""GF(2) linear algebra on packed-integer bit vectors.

A length-n binary vector is stored as a Python int with bit q holding
qubit q, so qubit 0 is the lowest bit.  In string form qubit 0 is the
leftmost character: ``BitVec.from_string("0110")`` has support {1, 2}.
Python ints give free wide XOR and popcount; enumeration-heavy kernels
switch to numpy uint64 arrays when n <= 64.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, LengthMismatch

DEFAULT_BUDGET = 1 << 26
_NUMPY_SPAN_MIN = 1 << 12  # below this a plain Python loop is cheaper


class BitVec:
    """Immutable binary vector of fixed length n."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError("negative length")
        if bits < 0 or bits >> n:
            raise ValueError(f"bits out of range for length {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("BitVec is immutable")

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVec":
        return cls(n, (1 << n) - 1)

    @classmethod
    def unit(cls, n: int, q: int) -> "BitVec":
        return cls(n, 1 << q)

    @classmethod
    def from_string(cls, s: str) -> "BitVec":
        if set(s) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {s!r}")
        bits = 0
        for q, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << q
        return cls(len(s), bits)

    @classmethod
    def from_bits(cls, seq: Iterable[int]) -> "BitVec":
        bits = 0
        n = 0
        for q, b in enumerate(seq):
            if b & 1:
                bits |= 1 << q
            n = q + 1
        return cls(n, bits)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "BitVec":
        bits = 0
        for q in support:
            bits |= 1 << q
        return cls(n, bits)

    def _check(self, other: "BitVec") -> None:
        if self.n != other.n:
            raise LengthMismatch(f"length {self.n} vs {other.n}")

    def __xor__(self, other: "BitVec") -> "BitVec":
        self._check(other)
        return BitVec(self.n, self.bits ^ other.bits)

    def __and__(self, other: "BitVec") -> "BitVec":
        self._check(other)
        return BitVec(self.n, self.bits & other.bits)

    def dot(self, other: "BitVec") -> int:
        """Inner product mod 2."""
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def bit(self, q: int) -> int:
        return (self.bits >> q) & 1

    __getitem__ = bit

    def support(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.n) if (self.bits >> q) & 1)

    def concat(self, other: "BitVec") -> "BitVec":
        """[self, other]: self occupies qubits 0..n-1, other the rest."""
        return BitVec(self.n + other.n, self.bits | (other.bits << self.n))

    def to01(self) -> str:
        return "".join("1" if (self.bits >> q) & 1 else "0" for q in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVec) and self.n == other.n and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"BitVec('{self.to01()}')"


class BitMat:
    """Immutable ordered list of equal-length rows, used as a code basis."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[BitVec] = ()):
        rows = tuple(rows)
        if n <= 0 and rows:
            n = rows[0].n
        if n <= 0:
            raise ValueError("matrix needs a positive length")
        for r in rows:
            if r.n != n:
                raise LengthMismatch(f"row length {r.n} vs {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("BitMat is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVec], n: int | None = None) -> "BitMat":
        if n is None:
            if not rows:
                raise ValueError("cannot infer length from empty rows")
            n = rows[0].n
        return cls(n, rows)

    @classmethod
    def from_strings(cls, strings: Sequence[str], n: int | None = None) -> "BitMat":
        rows = [BitVec.from_string(s) for s in strings]
        return cls.from_rows(rows, n)

    @classmethod
    def empty(cls, n: int) -> "BitMat":
        return cls(n, ())

    @classmethod
    def identity(cls, n: int) -> "BitMat":
        return cls(n, [BitVec.unit(n, q) for q in range(n)])

    def row_ints(self) -> list[int]:
        return [r.bits for r in self.rows]

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[BitVec]:
        return iter(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, BitMat) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"BitMat({[r.to01() for r in self.rows]})"


def _lsb(x: int) -> int:
    return (x & -x).bit_length() - 1


def _rref_ints(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(2).  Returns (rows, pivots), both
    sorted by ascending pivot column."""
    pivrows: dict[int, int] = {}
    for r in rows:
        cur = r
        while cur:
            p = _lsb(cur)
            if p in pivrows:
                cur ^= pivrows[p]
            else:
                pivrows[p] = cur
                break
    pivots = sorted(pivrows)
    # back-eliminate so each pivot column is zero in every other row
    for p in reversed(pivots):
        row = pivrows[p]
        for q in pivots:
            if q < p and (pivrows[q] >> p) & 1:
                pivrows[q] ^= row
    return [pivrows[p] for p in pivots], pivots


def rref(m: BitMat) -> tuple[BitMat, tuple[int, ...]]:
    """Canonicalize m: independent rows, ascending pivots, idempotent."""
    rows, pivots = _rref_ints(m.row_ints())
    return BitMat(m.n, [BitVec(m.n, r) for r in rows]), tuple(pivots)


def rank(m: BitMat) -> int:
    return len(rref(m)[1])


class Reducer:
    """Canonical-form reducer against a fixed RREF basis."""

    __slots__ = ("n", "rows", "pivots")

    def __init__(self, m: BitMat):
        canon, pivots = rref(m)
        self.n = m.n
        self.rows = canon.row_ints()
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce_int(self, x: int) -> int:
        for row, p in zip(self.rows, self.pivots):
            if (x >> p) & 1:
                x ^= row
        return x

    def reduce(self, v: BitVec) -> BitVec:
        if v.n != self.n:
            raise LengthMismatch(f"length {v.n} vs {self.n}")
        return BitVec(self.n, self.reduce_int(v.bits))

    def contains_int(self, x: int) -> bool:
        return self.reduce_int(x) == 0

    def contains(self, v: BitVec) -> bool:
        if v.n != self.n:
            raise LengthMismatch(f"length {v.n} vs {self.n}")
        return self.contains_int(v.bits)


def contains(space: BitMat, v: BitVec) -> bool:
    """True iff v lies in the row space of ``space``."""
    return Reducer(space).contains(v)


def dual_basis(m: BitMat) -> BitMat:
    """Canonical basis of the orthogonal complement {v : m v^T = 0}."""
    canon, pivots = rref(m)
    n = m.n
    piv_set = set(pivots)
    rows = canon.row_ints()
    out = []
    for f in range(n):
        if f in piv_set:
            continue
        v = 1 << f
        for row, p in zip(rows, pivots):
            if (row >> f) & 1:
                v |= 1 << p
        out.append(v)
    dual_rows, _ = _rref_ints(out)
    return BitMat(n, [BitVec(n, r) for r in dual_rows])


def quotient_basis(sup: BitMat, sub: BitMat) -> BitMat:
    """Canonical complement basis of rowspace(sup) modulo rowspace(sub).

    Every returned row is already in canonical coset form (reduced against
    sub), and any GF(2) combination of the rows stays canonical.
    """
    red = Reducer(sub)
    sup_red = Reducer(sup)
    for r in sub.row_ints():
        if not sup_red.contains_int(r):
            raise ValueError("sub is not contained in sup")
    reduced = [red.reduce_int(r) for r in sup_red.rows]
    rows, _ = _rref_ints([r for r in reduced if r])
    return BitMat(sup.n, [BitVec(sup.n, r) for r in rows])


def coset_reps(sup: BitMat, sub: BitMat, budget: int = DEFAULT_BUDGET) -> list[BitVec]:
    """One canonical representative per coset of rowspace(sub) in
    rowspace(sup), ordered by binary counting over the complement basis.
    The representative is the reduction of the coset against sub's RREF;
    the first entry is always 0."""
    comp = quotient_basis(sup, sub)
    k = comp.num_rows
    if 1 << k > budget:
        raise BudgetExceeded(f"2^{k} coset representatives", required_log2=k)
    ints = comp.row_ints()
    reps = [0]
    for i in range(1, 1 << k):
        prev = reps[i ^ (1 << _lsb(i))]
        reps.append(prev ^ ints[_lsb(i)])
    return [BitVec(sup.n, r) for r in reps]


def span_ints(basis: Sequence[int], budget: int = DEFAULT_BUDGET) -> list[int]:
    """All 2^m elements of the span, Gray-free binary order."""
    m = len(basis)
    if 1 << m > budget:
        raise BudgetExceeded(f"2^{m} span enumeration", required_log2=m)
    out = [0]
    for b in basis:
        out.extend([x ^ b for x in out])
    return out


def span_array(basis: Sequence[int], n: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Span as a uint64 numpy array; requires n <= 64."""
    if n > 64:
        raise ValueError("span_array supports n <= 64 only")
    m = len(basis)
    if 1 << m > budget:
        raise BudgetExceeded(f"2^{m} span enumeration", required_log2=m)
    arr = np.zeros(1 << m, dtype=np.uint64)
    size = 1
    for b in basis:
        arr[size : 2 * size] = arr[:size] ^ np.uint64(b)
        size *= 2
    return arr


def signed_weight_counts(
    basis: Sequence[int],
    weight_shift: int,
    sign_mask: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
) -> list[int]:
    """Signed weight enumerator of a shifted span.

    Returns W[w] = sum over span elements c of (-1)^{parity(c & sign_mask)}
    restricted to weight(c ^ weight_shift) == w.  Exact integers.
    """
    m = len(basis)
    if 1 << m > budget:
        raise BudgetExceeded(f"2^{m} coset enumeration", required_log2=m)
    if n <= 64 and 1 << m >= _NUMPY_SPAN_MIN:
        span = span_array(basis, n, budget)
        w = np.bitwise_count(span ^ np.uint64(weight_shift)).astype(np.int64)
        s = (np.bitwise_count(span & np.uint64(sign_mask)) & np.uint8(1)).astype(bool)
        pos = np.bincount(w[~s], minlength=n + 1)
        neg = np.bincount(w[s], minlength=n + 1)
        return [int(p) - int(q) for p, q in zip(pos, neg)]
    counts = [0] * (n + 1)
    for c in span_ints(basis, budget):
        w = (c ^ weight_shift).bit_count()
        if (c & sign_mask).bit_count() & 1:
            counts[w] -= 1
        else:
            counts[w] += 1
    return counts


def restrict_to_hyperplane(m: BitMat, w0: BitVec) -> tuple[BitMat, BitVec]:
    """Intersect the row space with the hyperplane orthogonal to w0.

    Returns the shrunk canonical basis together with the removed direction,
    reduced to its canonical representative modulo the shrunk basis.
    Raises when every row is already orthogonal to w0."""
    if w0.n != m.n:
        raise LengthMismatch(f"length {w0.n} vs {m.n}")
    canon, _ = rref(m)
    rows = canon.row_ints()
    hot = [i for i, r in enumerate(rows) if (r & w0.bits).bit_count() & 1]
    if not hot:
        raise ValueError("row space is already orthogonal to w0")
    pivot = rows[hot[0]]
    new_rows = [r if i not in hot else r ^ pivot for i, r in enumerate(rows)]
    new_rows.pop(hot[0])
    new_mat, _ = rref(BitMat(m.n, [BitVec(m.n, r) for r in new_rows]))
    removed = Reducer(new_mat).reduce(BitVec(m.n, pivot))
    return new_mat, removed


def invert_matrix(rows: Sequence[int], k: int) -> list[int]:
    """Inverse of an invertible k x k GF(2) matrix given as row ints."""
    if len(rows) != k:
        raise ValueError("matrix must be square")
    aug = [rows[i] | (1 << (k + i)) for i in range(k)]
    reduced, pivots = _rref_ints(aug)
    if list(pivots) != list(range(k)):
        raise ValueError("matrix is singular")
    return [reduced[i] >> k for i in range(k)]


@dataclass(frozen=True)
class WeightResult:
    """Either an exact minimum weight or a lower bound (``exact=False``
    means the true minimum is >= value)."""

    value: int
    exact: bool = True

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


def _combo_ints(n: int, w: int) -> Iterator[int]:
    for positions in itertools.combinations(range(n), w):
        v = 0
        for q in positions:
            v |= 1 << q
        yield v


def _vector_reduce(arr: np.ndarray, red: Reducer) -> np.ndarray:
    out = arr.copy()
    for row, p in zip(red.rows, red.pivots):
        mask = (out >> np.uint64(p)) & np.uint64(1)
        out ^= mask * np.uint64(row)
    return out


def _exact_min_weight(red_big: Reducer, red_small: Reducer, n: int, budget: int) -> int:
    if n <= 64 and 1 << red_big.dim >= _NUMPY_SPAN_MIN:
        span = span_array(red_big.rows, n, budget)
        reduced = _vector_reduce(span, red_small)
        weights = np.bitwise_count(span[reduced != 0])
        return int(weights.min())
    best = None
    for v in span_ints(red_big.rows, budget):
        if red_small.contains_int(v):
            continue
        w = v.bit_count()
        if best is None or w < best:
            best = w
    assert best is not None
    return best


def _bounded_min_weight(
    red_big: Reducer, red_small: Reducer, n: int, w_max: int
) -> int | None:
    use_numpy = n <= 64
    for w in range(1, w_max + 1):
        if use_numpy:
            combos = np.fromiter(_combo_ints(n, w), dtype=np.uint64)
            if combos.size == 0:
                continue
            in_big = _vector_reduce(combos, red_big) == 0
            cands = combos[in_big]
            if cands.size:
                in_small = _vector_reduce(cands, red_small) == 0
                if bool(np.any(~in_small)):
                    return w
        else:
            for v in _combo_ints(n, w):
                if red_big.contains_int(v) and not red_small.contains_int(v):
                    return w
    return None


def min_weight_excluding(
    big: BitMat,
    small: BitMat,
    w_max: int = 6,
    budget: int = DEFAULT_BUDGET,
) -> WeightResult:
    """Minimum Hamming weight over rowspace(big) \\ rowspace(small).

    A witness found by the bounded search over all length-n vectors of
    weight <= w_max is already the exact minimum; tiny spans are enumerated
    directly, and when neither finds the answer a full span enumeration
    runs if it fits the budget, else the lower-bound flag comes back.
    """
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    red_big = Reducer(big)
    red_small = Reducer(small)
    for r in small.row_ints():
        if not red_big.contains_int(r):
            raise ValueError("small is not contained in big")
    if red_big.dim == red_small.dim:
        raise ValueError("empty difference: big and small span the same space")
    n = big.n
    dim = red_big.dim
    if 1 << dim <= min(_NUMPY_SPAN_MIN, budget):
        return WeightResult(_exact_min_weight(red_big, red_small, n, budget), True)
    found = _bounded_min_weight(red_big, red_small, n, w_max)
    if found is not None:
        return WeightResult(found, True)
    if 1 << dim <= budget:
        return WeightResult(_exact_min_weight(red_big, red_small, n, budget), True)
    return WeightResult(w_max + 1, False)
