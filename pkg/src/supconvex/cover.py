"""Covering constructions that certify lower-bound constants.

Two covering arguments live here.

First, the scaled-corner cover: for n >= k+1 the standard simplex T is
exactly the union of the translates (k*T + v)/n over shift vectors v
with sum n-k.  Counting translates gives the closed-form asymptotic
lower bound on the smoothing constant.

Second, the good-translate calculus.  A translate T' = o + T/n^level of
T is "good with constant C" when the n-fold sup-convolution machinery
forces conv values of at least (1 - epsilon*C)-quality on it; the two
production rules are

- corner contraction: from T' good with C, the translate pulled toward
  vertex i, offset ((n-1)e_i + o)/n at level+1, is good with
  1 + C/n^(k+1);
- blending: from same-level T', T'' good with C', C'', the Minkowski
  combination offset ((n-1)o' + o'')/n at the same level is good with
  1 + ((n-1)C' + C'')/n.

Offsets produced by blending carry denominators beyond n^level, so
offsets are stored as exact rationals with whatever denominator the
derivation produced.  A closure enumerates derivable translates level
by level (deduplicating by offset, keeping the smallest constant, with
a node budget); a cover certificate then selects a family A of level-l
translates covering T with |A| < n^(l(k+1)), which yields the positive
derived constant (1 - |A|/n^(l(k+1))) / sum of constants.

Cover certification subdivides T into hypersimplex cells and requires
every cell to sit inside one chosen translate.  Some coverable regions
need cells finer than the translate scale (a reversed middle cell never
fits in an upright translate of its own size), so certification may
refine the cell resolution a bounded number of times before giving up;
a cell with a vertex or barycenter outside every candidate translate is
a proof that no refinement can help, and the search reports failure.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._rational import ONE, ZERO, Rat
from .geometry import BaryPoint, Simplex, _check_dim, standard_simplex
from .subdivision import cell_vertices, enumerate_shifts, subdivide


@dataclass(frozen=True)
class GoodTranslate:
    """Translate offset + T/n^level, good with the given constant."""

    k: int
    n: int
    level: int
    offset: tuple
    constant: object
    derivation: tuple

    def __post_init__(self):
        if any(o < 0 for o in self.offset):
            raise ValueError("offset must be componentwise nonnegative")
        if sum(self.offset, ZERO) != 1 - self.scale:
            raise ValueError("offset total inconsistent with scale")

    @property
    def scale(self):
        return Rat(1, self.n**self.level)

    def contains_point(self, p: BaryPoint) -> bool:
        """p in offset + scale*T reduces to p >= offset componentwise
        (coordinate sums already match)."""
        return all(c >= o for c, o in zip(p.coords, self.offset))


@dataclass(frozen=True)
class ClosureResult:
    translates: tuple  # all levels, ordered by (level, offset)
    truncated: bool

    def at_level(self, level: int):
        return tuple(t for t in self.translates if t.level == level)


def _root_translate(k: int, n: int) -> GoodTranslate:
    return GoodTranslate(k, n, 0, tuple(ZERO for _ in range(k + 1)), ZERO, ("root",))


def _corner_child(t: GoodTranslate, i: int) -> GoodTranslate:
    n = t.n
    offset = tuple(
        (Rat(n - 1) * (ONE if j == i else ZERO) + o) / n for j, o in enumerate(t.offset)
    )
    constant = 1 + t.constant / Rat(n) ** (t.k + 1)
    return GoodTranslate(t.k, n, t.level + 1, offset, constant, ("corner", i, t.derivation))


def _blend(a: GoodTranslate, b: GoodTranslate) -> GoodTranslate:
    if a.level != b.level:
        raise ValueError("blending requires equal levels")
    n = a.n
    offset = tuple((Rat(n - 1) * oa + ob) / n for oa, ob in zip(a.offset, b.offset))
    constant = 1 + (Rat(n - 1) * a.constant + b.constant) / n
    return GoodTranslate(a.k, n, a.level, offset, constant, ("blend", a.derivation, b.derivation))


def replay_derivation(k: int, n: int, derivation) -> GoodTranslate:
    """Rebuild a translate from its derivation trace alone."""
    tag = derivation[0]
    if tag == "root":
        return _root_translate(k, n)
    if tag == "corner":
        return _corner_child(replay_derivation(k, n, derivation[2]), derivation[1])
    if tag == "blend":
        return _blend(replay_derivation(k, n, derivation[1]), replay_derivation(k, n, derivation[2]))
    raise ValueError(f"unknown derivation tag {tag!r}")


def closure_good(
    k: int, n: int, max_level: int, blend_rounds: int = 2, budget: int = 4000
) -> ClosureResult:
    """Enumerate derivable good translates up to max_level.

    Per offset the smallest known constant is kept.  Enumeration is
    deterministic: corner children of all previous-level translates,
    then a fixed number of blend rounds over the sorted current level.
    When the node budget is hit the result is returned with
    truncated=True rather than failing.
    """
    _check_dim(k)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    levels = [{(ZERO,) * (k + 1): _root_translate(k, n)}]
    truncated = False
    total = 1
    for _ in range(max_level):
        current: dict = {}

        def consider(t: GoodTranslate) -> None:
            old = current.get(t.offset)
            if old is None or t.constant < old.constant:
                current[t.offset] = t

        for parent in levels[-1].values():
            for i in range(k + 1):
                consider(_corner_child(parent, i))
        for _ in range(blend_rounds):
            if total + len(current) > budget:
                truncated = True
                break
            snapshot = [current[o] for o in sorted(current)]
            fresh = []
            for a in snapshot:
                for b in snapshot:
                    if a.offset == b.offset:
                        continue
                    fresh.append(_blend(a, b))
            for t in fresh:
                consider(t)
        total += len(current)
        levels.append(current)
        if total > budget:
            truncated = True
            break
    flat = []
    for level_map in levels:
        for offset in sorted(level_map):
            flat.append(level_map[offset])
    return ClosureResult(tuple(flat), truncated)


@dataclass(frozen=True)
class CoverCertificate:
    """A family of equal-level good translates covering T.

    count < n^(level*(k+1)) is enforced, so derived_constant > 0.
    """

    k: int
    n: int
    level: int
    family: tuple
    cert_resolution: int
    sum_constants: object
    derived_constant: object

    @property
    def count(self) -> int:
        return len(self.family)


def find_cover(k: int, n: int, level: int, translates=None, max_refine: int = 2):
    """Select a covering family among level-`level` good translates.

    Certification subdivides T at resolution n^(level+r) for
    r = 0..max_refine and requires each cell inside a single chosen
    translate; a greedy set cover picks the family.  Returns None when
    no admissible cover exists (some point provably uncovered, or the
    family is not smaller than the trivial count).
    """
    if level < 1:
        raise ValueError("cover level must be >= 1")
    if translates is None:
        translates = closure_good(k, n, level).at_level(level)
    pool = sorted(
        (t for t in translates if t.level == level),
        key=lambda t: (t.constant, t.offset),
    )
    if not pool:
        return None
    bound = n ** (level * (k + 1))
    for extra in range(max_refine + 1):
        resolution = n ** (level + extra)
        cells = subdivide(k, resolution)
        cell_tests = []
        for cell in cells:
            verts = cell_vertices(cell)
            d = len(verts)
            bary = BaryPoint(
                tuple(sum((v.coords[i] for v in verts), ZERO) / d for i in range(k + 1))
            )
            cell_tests.append((verts, bary))
        coverage = []
        for t in pool:
            covered = frozenset(
                idx
                for idx, (verts, _) in enumerate(cell_tests)
                if all(t.contains_point(v) for v in verts)
            )
            coverage.append(covered)
        all_cells = frozenset(range(len(cells)))
        union = frozenset().union(*coverage) if coverage else frozenset()
        if union != all_cells:
            for idx in sorted(all_cells - union):
                verts, bary = cell_tests[idx]
                for p in list(verts) + [bary]:
                    if not any(t.contains_point(p) for t in pool):
                        return None  # provably uncoverable, refinement useless
            continue  # coverable but cells too coarse; refine
        uncovered = set(all_cells)
        chosen = []
        chosen_idx = set()
        while uncovered:
            best_i = None
            best_gain = 0
            for i, cov in enumerate(coverage):
                if i in chosen_idx:
                    continue
                gain = len(cov & uncovered)
                if gain > best_gain:
                    best_gain = gain
                    best_i = i
            if best_i is None:  # pragma: no cover - union covers all cells
                return None
            chosen_idx.add(best_i)
            chosen.append(pool[best_i])
            uncovered -= coverage[best_i]
        if len(chosen) >= bound:
            return None
        total_constant = sum((t.constant for t in chosen), ZERO)
        derived = (1 - Rat(len(chosen), bound)) / total_constant
        assert derived > 0
        return CoverCertificate(
            k, n, level, tuple(chosen), resolution, total_constant, derived
        )
    return None


def best_cover(k: int, n: int, max_level: int, blend_rounds: int = 2, budget: int = 4000):
    """First level admitting a cover certificate, with its closure.

    Returns (closure, certificate or None).
    """
    closure = closure_good(k, n, max_level, blend_rounds=blend_rounds, budget=budget)
    for level in range(1, max_level + 1):
        cert = find_cover(k, n, level, translates=closure.at_level(level))
        if cert is not None:
            return closure, cert
    return closure, None


def scaled_simplex_cover(k: int, n: int):
    """The translates (k*T + v)/n over shifts v with sum n-k.

    For n >= k+1 these cover T exactly; coverage is verified on the
    resolution n*k lattice before returning.  There are C(n, k) of
    them, which is what the asymptotic lower bound counts.
    """
    _check_dim(k)
    if n < k + 1:
        raise ValueError(f"cover needs n >= k+1, got k={k}, n={n}")
    base = standard_simplex(k).vertices
    shifts = enumerate_shifts(k, n - k)
    simplices = []
    for v in shifts:
        verts = tuple(
            BaryPoint(tuple((Rat(k) * e.coords[j] + v[j]) / n for j in range(k + 1)))
            for e in base
        )
        simplices.append(Simplex(verts))
    from .geometry import lattice

    for p in lattice(k, n * k).points:
        covered = any(
            all(n * c - s >= 0 for c, s in zip(p.coords, v)) for v in shifts
        )
        if not covered:  # pragma: no cover - coverage is guaranteed for n >= k+1
            raise ArithmeticError(f"lattice point {tuple(p.coords)} uncovered")
    return tuple(simplices)
