"""Discrete sup-convolutions on the simplex lattice.

The n-fold sup-convolution averages n copies of f over all ways to
write n*z as a sum of n lattice points:

    conv(z) = max (f(x_1) + ... + f(x_n)) / n
              over lattice x_i with x_1 + ... + x_n = n z.

Restricting the witnesses to lattice points makes this a pointwise
lower bound for the continuum sup-convolution; at the resolutions used
by the verification harness the bound is tight on the cell interiors
that drive the exact integral identities.

Computed by dynamic programming on integer coordinate vectors: stage j
holds, for every integer vector w with sum j*N, the best achievable
f-sum over j lattice points summing to w.  Stage sizes are the lattice
sizes of dilated simplices, so the whole run is polynomial in N**k.
"""

from __future__ import annotations

from ._rational import Rat
from .envelope import SampledFunction


def sup_convolve_n(f: SampledFunction, n: int) -> SampledFunction:
    """n-fold discrete sup-convolution, exact."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n == 1:
        return f
    pts = f.lattice.int_points
    vals = f.values
    dim = len(pts[0])
    stage = dict(zip(pts, vals))
    for _ in range(n - 1):
        new_stage = {}
        for w_prev, acc in stage.items():
            for p, fv in zip(pts, vals):
                w = tuple(w_prev[i] + p[i] for i in range(dim))
                cand = acc + fv
                cur = new_stage.get(w)
                if cur is None or cand > cur:
                    new_stage[w] = cand
        stage = new_stage
    n_rat = Rat(n)
    out = tuple(stage[tuple(c * n for c in p)] / n_rat for p in pts)
    return SampledFunction(f.lattice, out)


def sup_convolve_pair(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    """Two-function sup-convolution max (f(x) + g(y))/2 over x + y = 2z.

    f and g must be sampled on the same lattice.  Equals
    sup_convolve_n(f, 2) when f and g coincide.
    """
    if f.lattice != g.lattice:
        raise ValueError("functions live on different lattices")
    pts = f.lattice.int_points
    index = {p: i for i, p in enumerate(pts)}
    dim = len(pts[0])
    half = Rat(1, 2)
    out = []
    for c in pts:
        doubled = tuple(2 * v for v in c)
        best = None
        for j, d in enumerate(pts):
            e = tuple(doubled[i] - d[i] for i in range(dim))
            if any(v < 0 for v in e):
                continue
            idx = index.get(e)
            if idx is None:
                continue
            cand = f.values[j] + g.values[idx]
            if best is None or cand > best:
                best = cand
        out.append(best * half)
    return SampledFunction(f.lattice, tuple(out))
