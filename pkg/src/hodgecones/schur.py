"""Young diagrams, Schur-module dimensions and GL2 decompositions.

Everything in the Hodge-class algebra of A^e is counted by Young diagrams
with even rows: a diagram contributes one irreducible GL_e-module whose
dimension is given by the Weyl formula.  For e = 2 (the A x A case) the
building blocks are the modules det(W)^l (x) Sym^m W, labelled here by the
pair (l, m); the decomposition of the k-th exterior power of n copies of W
into those labels is what drives the block structure of the symmetric
matrices attached to cycle classes.

Diagrams are plain tuples of weakly decreasing positive row lengths,
enumerated in lexicographically decreasing order so output is deterministic.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb


IrredLabel = tuple[int, int]  # (l, m): det(W)^l (x) Sym^m W, dimension m + 1
YoungDiagram = tuple[int, ...]


def _even_partitions(boxes: int, max_rows: int, max_first: int):
    """Yield weakly decreasing tuples of even positive parts summing to ``boxes``.

    Parts are bounded by ``max_first`` and there are at most ``max_rows`` of
    them, in lexicographically decreasing order.
    """
    if boxes == 0:
        yield ()
        return
    if max_rows == 0:
        return
    first = min(boxes, max_first)
    first -= first % 2
    for part in range(first, 0, -2):
        for rest in _even_partitions(boxes - part, max_rows - 1, part):
            yield (part,) + rest


def enumerate_hodge_diagrams(n: int, e: int, k: int) -> list[YoungDiagram]:
    """Diagrams with 2k boxes, even rows, at most e rows, first row <= 2n."""
    return list(_even_partitions(2 * k, e, 2 * n))


def enumerate_sym_diagrams(e: int, k: int) -> list[YoungDiagram]:
    """Diagrams with 2k boxes, even rows, at most e rows (no first-row cap)."""
    return list(_even_partitions(2 * k, e, 2 * k))


def ideal_slice_diagrams(e: int, k: int, kmin: int) -> list[YoungDiagram]:
    """Diagrams with 2k boxes, even rows, at most e rows, first row >= 2*kmin."""
    return [d for d in enumerate_sym_diagrams(e, k) if d and d[0] >= 2 * kmin]


def schur_dim(diagram: YoungDiagram, e: int) -> int:
    """Dimension of the GL_e Schur module of ``diagram`` (Weyl formula).

    Returns 0 when the diagram has more than e rows.
    """
    if len(diagram) > e:
        return 0
    lam = list(diagram) + [0] * (e - len(diagram))
    num = 1
    den = 1
    for i in range(e):
        for j in range(i + 1, e):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


@lru_cache(maxsize=None)
def tensor_power_decomposition(m: int) -> dict[IrredLabel, int]:
    """Decompose the m-th tensor power of W (dim W = 2) into (l, m-2l) labels.

    The multiplicity of det^i (x) Sym^(m-2i) W is C(m,i) - C(m,i-1)
    (ballot-number count).  The total dimension identity sum = 2^m is
    asserted on every call path.
    """
    out: dict[IrredLabel, int] = {}
    for i in range(m // 2 + 1):
        mult = comb(m, i) - (comb(m, i - 1) if i else 0)
        if mult > 0:
            out[(i, m - 2 * i)] = mult
    assert sum(mult * (m - 2 * i + 1) for (i, _), mult in out.items()) == 2**m
    return out


@lru_cache(maxsize=None)
def wedge_decomposition(n: int, k: int) -> dict[IrredLabel, int]:
    """Decompose the k-th exterior power of W^(+n) (dim W = 2) into labels.

    A basis vector of the exterior power picks a_i in {0, 1, 2} factors from
    the i-th copy of W with sum k; the slots with a_i = 2 each contribute a
    det(W), so the s-two compositions contribute C(n,s)*C(n-s, k-2s) copies
    of det^s (x) W^(k-2s), which is then split by
    :func:`tensor_power_decomposition`.
    """
    if not 0 <= k <= 2 * n:
        raise ValueError(f"need 0 <= k <= 2n, got k={k}, n={n}")
    out: dict[IrredLabel, int] = {}
    for s in range(k // 2 + 1):
        copies = comb(n, s) * comb(n - s, k - 2 * s)
        if copies == 0:
            continue
        for (i, m), mult in tensor_power_decomposition(k - 2 * s).items():
            label = (s + i, m)
            out[label] = out.get(label, 0) + copies * mult
    total = sum(mult * (m + 1) for (_, m), mult in out.items())
    assert total == comb(2 * n, k), (n, k, total)
    return dict(sorted(out.items()))


def hodge_dimension_by_diagrams(n: int, e: int, k: int) -> int:
    """Dimension of the degree-k Hodge-class space of A^e via diagram counts."""
    return sum(schur_dim(d, e) for d in enumerate_hodge_diagrams(n, e, k))
