"""Dimensions of morphism spaces in mesh categories.

Two independent routes compute ``dim k(window)(x, y)``:

* :func:`starting_function` -- the fast additive recurrence that knits hom
  dimensions forward, clipping at zero;
* :class:`MeshTransporter` / :func:`hom_dim_oracle` -- exact rational linear
  algebra: the space spanned by paths modulo the subspace generated by the
  mesh sums, built level by level (dimension = path count minus the rank of
  the relation rows).

The two must agree everywhere; the test suite enforces this, the library
never cross-checks at runtime.  The transporter additionally carries the
arrow matrices of the quotient functor, which is what composition tests
(radical-square, completeness) are made of.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .dynkin import DynkinTree, loewy_number
from .errors import WindowTooSmall
from .linalg import RationalEchelon
from .ztquiver import Configuration, Pt, QuiverWindow, build_window


class HomTable:
    """Hom dimensions from a fixed source point over a window."""

    def __init__(self, source: Pt, window: QuiverWindow, dims: dict[Pt, int]):
        self.source = source
        self.window = window
        self.dims = dims

    def __getitem__(self, p: Pt) -> int:
        return self.dims.get(p, 0)

    def support(self) -> list[Pt]:
        return sorted(p for p, d in self.dims.items() if d > 0)

    def basis_paths(self, target: Pt) -> list[list[Pt]]:
        """Lexicographically smallest paths spanning hom(source, target)."""
        tr = MeshTransporter(self.window, self.source)
        return tr.basis_paths(target)


def starting_function(
    tree: DynkinTree, x: Pt, window: QuiverWindow | None = None, config=None
) -> HomTable:
    """Hom dimensions from ``x`` by the knitting recurrence.

    Points are processed in level order; each non-projective point ``z``
    gets ``max(0, sum over in-neighbors - value at tau z)``, a projective
    ``c*`` simply copies the value at ``c``.
    """
    if window is None:
        L = loewy_number(tree)
        window = build_window(tree, config, x.slice, x.slice + L + 1)
    if x not in window.points:
        raise WindowTooSmall(f"window does not contain the source {x}")
    svals: dict[Pt, int] = {}
    for p in sorted(window.points, key=lambda p: (window.level[p], p)):
        if p == x:
            svals[p] = 1
        elif window.level[p] <= window.level[x]:
            svals[p] = 0
        elif p.proj:
            svals[p] = svals.get(Pt(p.slice, p.vertex), 0)
        else:
            total = sum(svals.get(w, 0) for w in window.in_nb[p])
            tz = window.tau.get(p)
            back = svals.get(tz, 0) if tz is not None else 0
            svals[p] = max(0, total - back)
    return HomTable(x, window, svals)


class MeshTransporter:
    """The functor ``hom(source, -)`` realized as explicit vector spaces.

    For every window point ``p`` a basis of the quotient of the path space
    by the mesh relations is fixed, and every arrow ``w -> p`` carries the
    induced rational matrix.  Classes of concrete paths are obtained by
    multiplying those matrices; a class is a plain list of Fractions.
    """

    def __init__(self, window: QuiverWindow, source: Pt):
        if source not in window.points:
            raise WindowTooSmall(f"window does not contain the source {source}")
        self.window = window
        self.source = source
        self.dims: dict[Pt, int] = {}
        self.arrow_matrix: dict[tuple[Pt, Pt], list[list[Fraction]]] = {}
        lvl = window.level
        for p in sorted(window.points, key=lambda q: (lvl[q], q)):
            if p == source:
                self.dims[p] = 1
                continue
            if lvl[p] <= lvl[source]:
                self.dims[p] = 0
                continue
            ins = [w for w in sorted(window.in_nb[p]) if self.dims.get(w, 0) > 0]
            widths = [self.dims[w] for w in ins]
            total = sum(widths)
            if total == 0:
                self.dims[p] = 0
                continue
            offsets = {}
            run = 0
            for w, d in zip(ins, widths):
                offsets[w] = run
                run += d
            ech = RationalEchelon()
            tz = None if p.proj else window.tau.get(p)
            if tz is not None and self.dims.get(tz, 0) > 0:
                dtz = self.dims[tz]
                for j in range(dtz):
                    row: dict[int, Fraction] = {}
                    unit = [Fraction(0)] * dtz
                    unit[j] = Fraction(1)
                    for w in ins:
                        mat = self.arrow_matrix.get((tz, w))
                        if mat is None:
                            continue
                        img = [sum((r[c] * unit[c] for c in range(dtz)), Fraction(0)) for r in mat]
                        for i, v in enumerate(img):
                            if v:
                                row[offsets[w] + i] = v
                    ech.insert(row)
            free_cols = [c for c in range(total) if c not in _pivot_cols(ech)]
            self.dims[p] = len(free_cols)
            for w in ins:
                mat = []
                for c_local in range(self.dims[w]):
                    col = {offsets[w] + c_local: Fraction(1)}
                    reduced = _reduce_full(ech, col)
                    mat.append([reduced.get(c, Fraction(0)) for c in free_cols])
                # mat currently holds columns; transpose to rows
                self.arrow_matrix[(w, p)] = [
                    [mat[c][r] for c in range(self.dims[w])] for r in range(len(free_cols))
                ]

    def dim(self, p: Pt) -> int:
        return self.dims.get(p, 0)

    def apply_arrow(self, a: Pt, b: Pt, vec: list[Fraction]) -> list[Fraction]:
        mat = self.arrow_matrix.get((a, b))
        if mat is None:
            return [Fraction(0)] * self.dims.get(b, 0)
        return [sum((row[j] * vec[j] for j in range(len(vec))), Fraction(0)) for row in mat]

    def path_class(self, path: list[Pt]) -> list[Fraction]:
        """The class of a concrete path starting at the source."""
        assert path and path[0] == self.source
        vec = [Fraction(1)]
        for a, b in zip(path, path[1:]):
            vec = self.apply_arrow(a, b, vec)
            if not any(vec):
                return vec
        return vec

    def transport(self, vec: list[Fraction], path: list[Pt]) -> list[Fraction]:
        """Push a class at ``path[0]`` along a path."""
        for a, b in zip(path, path[1:]):
            vec = self.apply_arrow(a, b, vec)
            if not any(vec):
                return vec
        return vec

    def nonzero_path(self, target: Pt) -> list[Pt] | None:
        """The lexicographically smallest path with nonzero class, if any."""
        if self.dim(target) == 0:
            return None
        ok = {p for p, d in self.dims.items() if d > 0}
        reaches: set[Pt] = {target}
        frontier = [target]
        while frontier:
            p = frontier.pop()
            for w in self.window.in_nb[p]:
                if w in ok and w not in reaches:
                    reaches.add(w)
                    frontier.append(w)
        stack = [(self.source, [self.source], [Fraction(1)])]
        while stack:
            p, path, vec = stack.pop()
            if p == target:
                return path
            succ = sorted((q for q in self.window.out_nb[p] if q in reaches), reverse=True)
            for q in succ:
                nvec = self.apply_arrow(p, q, vec)
                if any(nvec):
                    stack.append((q, path + [q], nvec))
        return None

    def basis_paths(self, target: Pt) -> list[list[Pt]]:
        """Greedy lex-ordered paths forming a basis of hom(source, target)."""
        want = self.dim(target)
        if want == 0:
            return []
        found: list[list[Pt]] = []
        ech = RationalEchelon()
        ok = {p for p, d in self.dims.items() if d > 0}
        reaches: set[Pt] = {target}
        frontier = [target]
        while frontier:
            p = frontier.pop()
            for w in self.window.in_nb[p]:
                if w in ok and w not in reaches:
                    reaches.add(w)
                    frontier.append(w)

        def rec(p: Pt, path: list[Pt], vec: list[Fraction]) -> bool:
            if p == target:
                if ech.insert({i: v for i, v in enumerate(vec) if v}):
                    found.append(list(path))
                return len(found) == want
            for q in sorted(w for w in self.window.out_nb[p] if w in reaches):
                nvec = self.apply_arrow(p, q, vec)
                if any(nvec):
                    if rec(q, path + [q], nvec):
                        return True
            return False

        rec(self.source, [self.source], [Fraction(1)])
        return found


def _pivot_cols(ech: RationalEchelon) -> set[int]:
    return set(ech.pivots)


def _reduce_full(ech: RationalEchelon, row: dict[int, Fraction]) -> dict[int, Fraction]:
    row = {c: Fraction(v) for c, v in row.items() if v}
    done = -1
    while True:
        cands = [c for c in row if c > done and c in ech.pivots]
        if not cands:
            return row
        c = min(cands)
        piv = ech.pivots[c]
        factor = row[c] / piv[c]
        for col, v in piv.items():
            new = row.get(col, Fraction(0)) - factor * v
            if new:
                row[col] = new
            else:
                row.pop(col, None)
        done = c


def hom_dim_oracle(window: QuiverWindow, x: Pt, y: Pt) -> int:
    """dim of the path space modulo mesh relations, by exact linear algebra.

    Paths never leave the slice band between their endpoints, so the
    interval between two window points always lies inside the window;
    WINDOW_TOO_SMALL only means an endpoint is missing.
    """
    if x not in window.points or y not in window.points:
        raise WindowTooSmall("both points must lie in the window")
    return MeshTransporter(window, x).dim(y)


def precedes(window: QuiverWindow, x: Pt, y: Pt) -> bool:
    """True when a path x -> y exists in the window."""
    if x == y:
        return True
    seen = {x}
    stack = [x]
    ymax = window.level.get(y)
    while stack:
        p = stack.pop()
        for q in window.out_nb[p]:
            if q == y:
                return True
            if window.level[q] < ymax and q not in seen:
                seen.add(q)
                stack.append(q)
    return False


# ---------------------------------------------------------------------------
# the Nakayama automorphism of the stable quiver


@lru_cache(maxsize=None)
def _nu_inverse_table(tree: DynkinTree) -> dict[int, tuple[int, int]]:
    """For each vertex v: nu^{-1}(0, v) as (slice, vertex)."""
    L = loewy_number(tree)
    table = {}
    for v in tree.vertices:
        src = Pt(0, v)
        hom = starting_function(tree, src)
        lvl = hom.window.level
        want = lvl[src] + L - 1
        cands = [p for p in hom.support() if lvl[p] == want and not p.proj]
        assert len(cands) == 1, f"nu^-1({src}) not unique: {cands}"
        table[v] = (cands[0].slice, cands[0].vertex)
    return table


def nu_inverse(tree: DynkinTree, p: Pt) -> Pt:
    """nu^{-1} on the stable quiver; on projectives it shifts by tau^{-L}."""
    if p.proj:
        return Pt(p.slice + loewy_number(tree), p.vertex, True)
    j, w = _nu_inverse_table(tree)[p.vertex]
    return Pt(p.slice + j, w)


def nakayama(tree: DynkinTree, p: Pt) -> Pt:
    """The Nakayama automorphism nu; nu(x) precedes x and nu^2 = tau^(L-1)."""
    if p.proj:
        return Pt(p.slice - loewy_number(tree), p.vertex, True)
    for v in tree.vertices:
        j, w = _nu_inverse_table(tree)[v]
        if w == p.vertex:
            return Pt(p.slice - j, v)
    raise AssertionError("nu table is not a bijection")


# ---------------------------------------------------------------------------
# the quiver of the infinite selfinjective category attached to a configuration


class ProjectiveQuiver:
    """Arrows and hom data among the projectives of a window.

    An arrow p -> q exists when hom(p, q) is one-dimensional and no
    composite through a third projective realizes it (radical square test).
    All hom spaces between distinct projectives are at most one-dimensional;
    this is asserted.
    """

    def __init__(self, config: Configuration, i_lo: int, i_hi: int):
        tree = config.tree
        L = loewy_number(tree)
        self.config = config
        self.tree = tree
        self.window = build_window(tree, config, i_lo - 1, i_hi + L + 2)
        self.nodes = tuple(Pt(i, x, True) for i, x in config.lifts(i_lo, i_hi))
        self.transporters: dict[Pt, MeshTransporter] = {}
        self.hom: dict[tuple[Pt, Pt], int] = {}
        for p in self.nodes:
            tr = MeshTransporter(self.window, p)
            self.transporters[p] = tr
            for q in self.nodes:
                if q == p:
                    continue
                d = tr.dim(q)
                assert d <= 1, f"hom({p},{q}) = {d} > 1 between projectives"
                if d:
                    self.hom[(p, q)] = d
        self._rep_paths: dict[tuple[Pt, Pt], list[Pt]] = {}
        self.arrows: list[tuple[Pt, Pt]] = []
        for (p, q), _ in sorted(self.hom.items()):
            if not self._factors(p, q):
                self.arrows.append((p, q))
        self.out_nb: dict[Pt, list[Pt]] = {p: [] for p in self.nodes}
        self.in_nb: dict[Pt, list[Pt]] = {p: [] for p in self.nodes}
        for a, b in self.arrows:
            self.out_nb[a].append(b)
            self.in_nb[b].append(a)

    def rep_path(self, p: Pt, q: Pt) -> list[Pt] | None:
        key = (p, q)
        if key not in self._rep_paths:
            self._rep_paths[key] = self.transporters[p].nonzero_path(q)
        return self._rep_paths[key]

    def composite_nonzero(self, p: Pt, r: Pt, q: Pt) -> bool:
        """Is the composite hom(p,r) o hom(r,q) nonzero in the mesh category?"""
        first = self.rep_path(p, r)
        second = self.rep_path(r, q)
        if first is None or second is None:
            return False
        tr = self.transporters[p]
        vec = tr.path_class(first)
        vec = tr.transport(vec, second)
        return any(vec)

    def _factors(self, p: Pt, q: Pt) -> bool:
        for r in self.nodes:
            if r in (p, q):
                continue
            if (p, r) in self.hom and (r, q) in self.hom and self.composite_nonzero(p, r, q):
                return True
        return False

    def path_nonzero(self, vertices: list[Pt]) -> bool:
        """Is the composite along a chain of projectives nonzero?"""
        p = vertices[0]
        tr = self.transporters[p]
        vec: list[Fraction] | None = None
        at = p
        for q in vertices[1:]:
            seg = self.rep_path(at, q)
            if seg is None:
                return False
            vec = tr.path_class(seg) if vec is None else tr.transport(vec, seg)
            if not any(vec):
                return False
            at = q
        return vec is not None and any(vec)


def complete_morphisms(config: Configuration, fund: list[Pt]) -> list[tuple[Pt, Pt]]:
    """All pairs (p, q) of the fundamental set carrying a complete morphism.

    A nonzero p -> q is complete inside the subcategory when composing with
    any of its arrows out of q, or into p, kills it.  Convexity guarantees
    that testing the quiver arrows of the ambient category with both ends in
    the set is enough.
    """
    from .present import _validated_fundamental  # local to avoid an import cycle

    pq, fund = _validated_fundamental(config, fund)
    out: list[tuple[Pt, Pt]] = []
    fund_set = set(fund)
    for p in fund:
        for q in fund:
            if q == p or (p, q) not in pq.hom:
                continue
            ok = True
            for z in pq.out_nb[q]:
                if z in fund_set and pq.composite_nonzero(p, q, z):
                    ok = False
                    break
            if ok:
                for w in pq.in_nb[p]:
                    if w in fund_set and pq.composite_nonzero(w, p, q):
                        ok = False
                        break
            if ok:
                out.append((p, q))
    return sorted(out)
