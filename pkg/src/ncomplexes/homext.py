"""Morphisms, projective resolutions and Ext between N-complexes.

Projectives are direct sums of ``M_s^{N-1}``; in the positive category these
are the ones with ``s >= 0``.  ``M_s^{N-1}`` represents evaluation at degree
``s``, so a map out of a free complex is the choice of one element of the
target per generator.  Covers, resolutions and the Hom complex used for Ext
are all built on that fact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exactla import Matrix, PrimeField, _rref_array, kernel_basis, kron, multiply, rank, solve_right
from .ncomplex import ComplexError, Indec, NComplex

__all__ = [
    "hom_dim",
    "is_positive",
    "is_injective_positive",
    "FreeComplex",
    "Cover",
    "Resolution",
    "projective_cover",
    "projective_resolution",
    "ext_dim",
]


def hom_dim(A: NComplex, B: NComplex) -> int:
    """Dimension of the space of chain maps ``A -> B``.

    Unknowns are the matrices ``f_i : A_i -> B_i``; each degree contributes
    the equations ``f_{i+1} dA_i = dB_i f_i``.
    """
    A.same_kind(B)
    A.require_valid()
    B.require_valid()
    f = A.field
    offsets: dict[int, int] = {}
    n = 0
    for i in A.degrees():
        if A.dim(i) and B.dim(i):
            offsets[i] = n
            n += A.dim(i) * B.dim(i)
    if n == 0:
        return 0
    blocks = []
    for i in range(A.lo - 1, A.hi + 1):
        rows = B.dim(i + 1) * A.dim(i)
        if rows == 0:
            continue
        eq = np.zeros((rows, n), dtype=np.int64)
        if i + 1 in offsets:
            o = offsets[i + 1]
            blk = kron(Matrix.identity(f, B.dim(i + 1)), A.d(i).T)
            eq[:, o:o + blk.cols] += blk.array
        if i in offsets:
            o = offsets[i]
            blk = kron(B.d(i), Matrix.identity(f, A.dim(i)))
            eq[:, o:o + blk.cols] -= blk.array
        blocks.append(eq)
    if not blocks:
        return n
    system = Matrix(f, np.vstack(blocks))
    return n - rank(system)


def is_positive(M: NComplex) -> bool:
    return M.trimmed().lo >= 0 or M.is_zero()


def is_injective_positive(e: Indec, N: int) -> bool:
    """Whether ``M_i^l`` is an injective object of the positive category."""
    i, l = e
    if i < 0 or not 0 <= l <= N - 1:
        return False
    return i == 0 or l == N - 1


def _require_positive(*Ms: NComplex):
    for M in Ms:
        if not is_positive(M):
            raise ComplexError("operation requires a positive complex (zero in negative degrees)")


@dataclass(frozen=True)
class FreeComplex:
    """``sum_g M_{s_g}^{N-1}`` with its generators in a fixed order.

    At degree ``t`` the basis is ``d^{t - s_g} g`` for every generator with
    ``s_g <= t <= s_g + N - 1``, in generator order.
    """

    complex: NComplex
    starts: tuple[int, ...]

    def basis(self, t: int) -> list[int]:
        N = self.complex.N
        return [k for k, s in enumerate(self.starts) if s <= t <= s + N - 1]

    def position(self, t: int) -> dict[int, int]:
        return {k: r for r, k in enumerate(self.basis(t))}


def free_complex(field: PrimeField, N: int, starts) -> FreeComplex:
    starts = tuple(sorted(starts))
    if not starts:
        return FreeComplex(NComplex.zero(field, N), ())
    lo, hi = starts[0], starts[-1] + N - 1
    shell = FreeComplex(NComplex.zero(field, N), starts)
    dims = [len(shell.basis(t)) for t in range(lo, hi + 1)]
    maps = []
    for t in range(lo, hi):
        src, dst = shell.basis(t), shell.position(t + 1)
        a = np.zeros((len(dst), len(src)), dtype=np.int64)
        for c, k in enumerate(src):
            if k in dst:
                a[dst[k], c] = 1
        maps.append(Matrix(field, a))
    return FreeComplex(NComplex(N, field, lo, dims, maps), starts)


@dataclass(frozen=True)
class Cover:
    """A projective cover ``epi : P -> M`` and the kernel of ``epi``.

    ``epi`` and ``kernel_inclusion`` map each degree to a matrix; the kernel
    complex is expressed in the basis given by the columns of
    ``kernel_inclusion[t]``.
    """

    free: FreeComplex
    epi: dict[int, Matrix]
    kernel: NComplex
    kernel_inclusion: dict[int, Matrix]

    @property
    def P(self) -> NComplex:
        return self.free.complex


def _top_representatives(M: NComplex, s: int) -> list[np.ndarray]:
    """Standard basis vectors of ``M_s`` completing a basis of ``Im d_{s-1}``."""
    n = M.dim(s)
    im = M.d(s - 1).array
    stacked = np.hstack([im, np.eye(n, dtype=np.int64)])
    _, piv = _rref_array(stacked, M.field.p)
    out = []
    for c in piv:
        if c >= im.shape[1]:
            v = np.zeros(n, dtype=np.int64)
            v[c - im.shape[1]] = 1
            out.append(v)
    return out


def projective_cover(M: NComplex, positive: bool = True) -> Cover:
    """Minimal free complex mapping onto ``M``, with one generator per top element.

    The number of generators at ``s`` is ``dim M_s - rank d_{s-1}``.  Each
    generator goes to a chosen top representative ``x`` and ``d^k`` of the
    generator goes to ``d^k x``.
    """
    M.require_valid()
    if positive:
        _require_positive(M)
    f, N = M.field, M.N
    starts, tops = [], []
    for s in M.degrees():
        for x in _top_representatives(M, s):
            starts.append(s)
            tops.append(x)
    free = free_complex(f, N, starts)
    P = free.complex
    epi: dict[int, Matrix] = {}
    for t in P.degrees():
        cols = [multiply(M.composite(starts[k], t - starts[k]), Matrix(f, tops[k].reshape(-1, 1))).array[:, 0]
                for k in free.basis(t)]
        a = np.array(cols, dtype=np.int64).T.reshape(M.dim(t), len(cols))
        epi[t] = Matrix(f, a)
    for t in M.degrees():
        if rank(epi.get(t, Matrix.zeros(f, M.dim(t), 0))) != M.dim(t):
            raise ComplexError(f"cover fails to be surjective at degree {t}")
    incl = {t: kernel_basis(epi[t]) for t in P.degrees()}
    kdims = [incl[t].cols for t in P.degrees()]
    kmaps = []
    for t in range(P.lo, P.hi):
        image = multiply(P.d(t), incl[t])
        x = solve_right(incl[t + 1], image)
        if x is None:
            raise ComplexError(f"kernel is not a subcomplex at degree {t}")
        kmaps.append(x)
    K = NComplex(N, f, P.lo, kdims, kmaps) if starts else NComplex.zero(f, N)
    return Cover(free, epi, K, incl)


@dataclass(frozen=True)
class Resolution:
    """``... -> P_1 -> P_0 -> M -> 0``.

    ``maps[0]`` is the augmentation ``P_0 -> M``; ``maps[n]`` for ``n >= 1``
    is ``P_n -> P_{n-1}``.  Each is a dict from degree to matrix.
    """

    target: NComplex
    free: tuple[FreeComplex, ...]
    maps: tuple[dict[int, Matrix], ...]

    @property
    def modules(self) -> list[NComplex]:
        return [F.complex for F in self.free]

    def map_at(self, n: int, t: int) -> Matrix:
        src = self.modules[n]
        tgt = self.target if n == 0 else self.modules[n - 1]
        return self.maps[n].get(t, Matrix.zeros(src.field, tgt.dim(t), src.dim(t)))

    def syzygy_ranks_ok(self) -> bool:
        """Exactness at every ``P_n`` and surjectivity onto the target, by rank counting."""
        for t in self.target.degrees():
            if rank(self.map_at(0, t)) != self.target.dim(t):
                return False
        for n in range(len(self.free) - 1):
            for t in self.modules[n].degrees():
                into = rank(self.map_at(n + 1, t))
                out = rank(self.map_at(n, t))
                if into + out != self.modules[n].dim(t):
                    return False
        return True


def projective_resolution(M: NComplex, length: int) -> Resolution:
    """Free resolution ``P_0, ..., P_length`` built from iterated covers."""
    M.require_valid()
    _require_positive(M)
    return _resolve(M, length)


@lru_cache(maxsize=512)
def _resolve(M: NComplex, length: int) -> Resolution:
    frees, maps = [], []
    current = M
    prev_incl = None
    for n in range(length + 1):
        cov = projective_cover(current)
        frees.append(cov.free)
        if n == 0:
            maps.append(dict(cov.epi))
        else:
            maps.append({t: multiply(prev_incl[t], e) for t, e in cov.epi.items() if t in prev_incl})
        prev_incl = cov.kernel_inclusion
        current = cov.kernel
    return Resolution(M, tuple(frees), tuple(maps))


def _hom_coboundary(res: Resolution, B: NComplex, k: int) -> Matrix:
    """Matrix of ``Hom(P_k, B) -> Hom(P_{k+1}, B)``, precomposition with ``P_{k+1} -> P_k``.

    ``Hom(P_k, B)`` is identified with ``sum_g B_{s_g}`` by evaluating on generators.
    """
    f = B.field
    src, dst = res.free[k], res.free[k + 1]
    col_off, n = [], 0
    for s in src.starts:
        col_off.append(n)
        n += B.dim(s)
    row_off, m = [], 0
    for s in dst.starts:
        row_off.append(m)
        m += B.dim(s)
    out = np.zeros((m, n), dtype=np.int64)
    for h, sh in enumerate(dst.starts):
        if B.dim(sh) == 0:
            continue
        bd = res.map_at(k + 1, sh)
        col = dst.position(sh)[h]
        for g, r in src.position(sh).items():
            c = bd[r, col]
            if c == 0:
                continue
            sg = src.starts[g]
            if B.dim(sg) == 0:
                continue
            blk = B.composite(sg, sh - sg).array * c % f.p
            out[row_off[h]:row_off[h] + B.dim(sh), col_off[g]:col_off[g] + B.dim(sg)] += blk
    return Matrix(f, out)


def ext_dim(A: NComplex, B: NComplex, n: int) -> int:
    """``dim Ext^n(A, B)`` in the category of positive N-complexes."""
    if n < 0:
        raise ValueError("Ext degree must be non-negative")
    A.same_kind(B)
    A.require_valid()
    B.require_valid()
    _require_positive(A, B)
    res = _resolve(A, n + 1)
    cochains = sum(B.dim(s) for s in res.free[n].starts)
    out_rank = rank(_hom_coboundary(res, B, n))
    in_rank = rank(_hom_coboundary(res, B, n - 1)) if n >= 1 else 0
    return cochains - out_rank - in_rank
