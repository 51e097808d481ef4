"""Dense linear-map semantics of ZX diagrams.

Spiders become generalized Kronecker deltas (Z) or their Hadamard
conjugates (X); Hadamard edges are absorbed into one endpoint's axis.
Global scalars are not tracked, and the unnormalized Hadamard
``[[1, 1], [1, -1]]`` is used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

import numpy as np

from ..diagram import Diagram, EdgeType, VertexKind

H = np.array([[1, 1], [1, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)

DEFAULT_MAX_BOUNDARY = 12
DEFAULT_MAX_RANK = 16


class OracleBudgetError(RuntimeError):
    """The diagram is too large for dense evaluation."""


def _apply_on_axis(t: np.ndarray, m: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(m, t, axes=([1], [axis])), 0, axis)


def _spider(kind: VertexKind, phase_frac, degree: int) -> np.ndarray:
    weight = np.exp(1j * np.pi * float(phase_frac))
    if degree == 0:
        return np.array(1 + weight, dtype=complex)
    t = np.zeros((2,) * degree, dtype=complex)
    t[(0,) * degree] = 1
    t[(1,) * degree] = weight
    if kind is VertexKind.X:
        for ax in range(degree):
            t = _apply_on_axis(t, H, ax)
    return t


def _contract(tensors: list[tuple[np.ndarray, list[int]]], max_rank: int):
    """Greedy pairwise contraction; each label appears on at most two tensors."""
    tensors = list(tensors)
    while len(tensors) > 1:
        best = None
        for i in range(len(tensors)):
            li = set(tensors[i][1])
            for j in range(i + 1, len(tensors)):
                lj = tensors[j][1]
                shared = li.intersection(lj)
                if not shared:
                    continue
                rank = len(li) + len(lj) - 2 * len(shared)
                key = (rank, -len(shared), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j, shared)
        if best is None:
            # disconnected pieces: outer product of the two smallest
            order = sorted(range(len(tensors)), key=lambda k: tensors[k][0].ndim)
            i, j = sorted(order[:2])
            shared = set()
            rank = tensors[i][0].ndim + tensors[j][0].ndim
        else:
            (rank, *_), i, j, shared = best
        if rank > max_rank:
            raise OracleBudgetError(f"intermediate tensor rank {rank} exceeds cap {max_rank}")
        (a, la), (b, lb) = tensors[i], tensors[j]
        ax_a = [la.index(s) for s in shared]
        ax_b = [lb.index(s) for s in shared]
        c = np.tensordot(a, b, axes=(ax_a, ax_b))
        lc = [s for s in la if s not in shared] + [s for s in lb if s not in shared]
        tensors.pop(j)
        tensors[i] = (c, lc)
    return tensors[0] if tensors else (np.array(1, dtype=complex), [])


def tensor_of_diagram(
    d: Diagram,
    max_boundary: int = DEFAULT_MAX_BOUNDARY,
    max_rank: int = DEFAULT_MAX_RANK,
) -> np.ndarray:
    """Matrix of shape ``(2**len(outputs), 2**len(inputs))``, up to scalar.

    Index order: first boundary in each list is the most significant bit.
    """
    n_in, n_out = len(d.inputs), len(d.outputs)
    if n_in + n_out > max_boundary:
        raise OracleBudgetError(f"{n_in + n_out} boundary wires exceed the limit {max_boundary}")
    fresh = count()
    open_label = {b: next(fresh) for b in d.inputs + d.outputs}
    # label of each (vertex, neighbour) half-edge, and per-spider H flags
    half: dict[tuple[int, int], int] = {}
    hadamard_side: set[tuple[int, int]] = set()
    tensors: list[tuple[np.ndarray, list[int]]] = []
    for u, v, et in d.edges():
        bu, bv = d.is_boundary(u), d.is_boundary(v)
        if bu and bv:
            tensors.append((H if et is EdgeType.HADAMARD else I2, [open_label[u], open_label[v]]))
            continue
        if bu or bv:
            b, s = (u, v) if bu else (v, u)
            half[(s, b)] = open_label[b]
            if et is EdgeType.HADAMARD:
                hadamard_side.add((s, b))
            continue
        lab = next(fresh)
        half[(u, v)] = half[(v, u)] = lab
        if et is EdgeType.HADAMARD:
            hadamard_side.add((u, v))
    for v in d.spiders():
        nbrs = d.neighbors(v)
        t = _spider(d.kind(v), d.phase(v).as_fraction(), len(nbrs))
        if t.ndim > max_rank:
            raise OracleBudgetError(f"spider {v} of degree {t.ndim} exceeds cap {max_rank}")
        for ax, w in enumerate(nbrs):
            if (v, w) in hadamard_side:
                t = _apply_on_axis(t, H, ax)
        tensors.append((t, [half[(v, w)] for w in nbrs]))
    t, labels = _contract(tensors, max_rank)
    order = [open_label[b] for b in d.outputs + d.inputs]
    if sorted(labels) != sorted(order):
        raise AssertionError("open indices do not match the boundary")
    t = np.transpose(t, [labels.index(lab) for lab in order]) if order else t
    return np.asarray(t).reshape(2 ** n_out, 2 ** n_in)


@dataclass(frozen=True)
class ScalarFit:
    equal: bool
    scalar: complex
    residual: float


ZERO_THRESHOLD = 1e-10


def compare_up_to_scalar(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> ScalarFit:
    """Best ``lam`` with ``a ~ lam * b`` and the max-norm residual after normalization.

    Both maps are first scaled to unit max-norm, so ``tol`` is relative.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na, nb = np.abs(a).max(initial=0.0), np.abs(b).max(initial=0.0)
    a_zero, b_zero = na < ZERO_THRESHOLD, nb < ZERO_THRESHOLD
    if a_zero or b_zero:
        return ScalarFit(a_zero and b_zero, 0j, 0.0 if a_zero and b_zero else 1.0)
    an, bn = a / na, b / nb
    idx = np.unravel_index(np.argmax(np.abs(bn)), bn.shape)
    lam = an[idx] / bn[idx]
    residual = float(np.abs(an - lam * bn).max())
    return ScalarFit(residual <= tol * max(float(np.abs(an).max()), 1.0), complex(lam * na / nb), residual)


def equal_up_to_scalar(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    return compare_up_to_scalar(a, b, tol).equal
