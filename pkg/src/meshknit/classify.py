"""Enumeration machinery for configurations.

Type A is counted by pedigrees (Catalan many); type D and the exceptional
trees are reached by one-point extensions from the next smaller tree, and
every family can be cross-checked against a brute-force search for periodic
point sets satisfying the two combinatorial axioms

* C1 -- every point admits a nonzero morphism into the set, and
* C2 -- distinct members admit none between each other.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .dynkin import DynkinTree, loewy_number, make_tree, tree_automorphisms
from .errors import NotAPedigreeVector, WrongFamily
from .knitting import dims_on_section, knit_and_knot
from .mesh import starting_function
from .ztquiver import (
    Configuration,
    Pt,
    Residue,
    equioriented_section,
    extend_automorphism,
    glide_map,
)


# ---------------------------------------------------------------------------
# pedigrees


@dataclass(frozen=True)
class Pedigree:
    """A rooted tree where every node has at most one beta- and one
    alpha-child; these are the quivers of the algebras carrying an
    equioriented section in type A."""

    beta: "Pedigree | None" = None
    alpha: "Pedigree | None" = None

    @property
    def size(self) -> int:
        return 1 + (self.beta.size if self.beta else 0) + (self.alpha.size if self.alpha else 0)


@lru_cache(maxsize=None)
def enumerate_pedigrees(n: int) -> tuple[Pedigree, ...]:
    """All pedigrees with n nodes, ordered by beta-subtree size, then shape."""
    assert n >= 1
    if n == 1:
        return (Pedigree(),)
    out = []
    for b in range(n):
        a = n - 1 - b
        for left in enumerate_pedigrees(b) if b else (None,):
            for right in enumerate_pedigrees(a) if a else (None,):
                out.append(Pedigree(left, right))
    return tuple(out)


def pedigree_count(n: int) -> int:
    """Independent oracle: the recursion P(n) = sum P(i) P(n-1-i), P(0) = 1."""
    table = [1]
    for m in range(1, n + 1):
        table.append(sum(table[i] * table[m - 1 - i] for i in range(m)))
    return table[n]


def _inorder_depths(p: Pedigree, depth: int, out: list[int]) -> None:
    if p.beta:
        _inorder_depths(p.beta, depth + 1, out)
    out.append(depth)
    if p.alpha:
        _inorder_depths(p.alpha, depth + 1, out)


def pedigree_dimension_vector(p: Pedigree) -> tuple[int, ...]:
    """Dimensions of the thin walk modules along the equioriented section.

    The in-order traversal (beta subtree, node, alpha subtree) realizes the
    lexicographic order on the walks from the root; each dimension counts
    the nodes the walk passes through.
    """
    out: list[int] = []
    _inorder_depths(p, 0, out)
    return tuple(d + 1 for d in out)


def pedigree_from_dims(dims) -> Pedigree:
    """Reconstruct the unique pedigree with the given section dimensions.

    The root is the unique entry equal to 1; the prefix (shifted down by
    one) is the beta subtree, the suffix the alpha subtree.
    """
    dims = tuple(dims)
    if not dims or any(d < 1 for d in dims):
        raise NotAPedigreeVector(f"{dims} is not a pedigree vector")
    ones = [i for i, d in enumerate(dims) if d == 1]
    if len(ones) != 1:
        raise NotAPedigreeVector(f"{dims} must contain the value 1 exactly once")
    k = ones[0]
    left = tuple(d - 1 for d in dims[:k])
    right = tuple(d - 1 for d in dims[k + 1 :])
    beta = pedigree_from_dims(left) if left else None
    alpha = pedigree_from_dims(right) if right else None
    return Pedigree(beta, alpha)


# ---------------------------------------------------------------------------
# combinatorial configuration axioms


@lru_cache(maxsize=None)
def _stable_support(tree: DynkinTree, vertex: int) -> tuple[Pt, ...]:
    """Support of the hom functor from (0, vertex) in the stable quiver."""
    table = starting_function(tree, Pt(0, vertex))
    return tuple(p for p in table.support() if not p.proj)


@lru_cache(maxsize=None)
def _residue_reach(tree: DynkinTree) -> dict[Residue, frozenset[Residue]]:
    """For each fundamental-domain point, the residues its homs can hit."""
    L = loewy_number(tree)
    out = {}
    for x in tree.vertices:
        support = _stable_support(tree, x)
        for i in range(L):
            out[(i, x)] = frozenset(((i + p.slice) % L, p.vertex) for p in support)
    return out


def check_combinatorial_configuration(tree: DynkinTree, residues) -> tuple[bool, str | None]:
    """Verify axioms C1 and C2 on a periodic residue set.

    Returns ``(True, None)`` or ``(False, "C1" | "C2")`` naming the first
    axiom that fails.  Periodicity makes one fundamental domain of test
    points sufficient for C1, and one of sources sufficient for C2.
    """
    L = loewy_number(tree)
    E = frozenset((i % L, x) for i, x in residues)
    reach = _residue_reach(tree)
    for e in sorted(E):
        if (reach[e] & E) - {e}:
            return False, "C2"
        # distinct lifts of one residue never see each other: path lengths
        # inside a hom support stay below L, a full period away needs 2L
        assert not any(
            p.vertex == e[1] and p.slice > 0 and p.slice % L == 0
            for p in _stable_support(tree, e[1])
        )
    for i in range(L):
        for x in tree.vertices:
            if not (reach[(i, x)] & E):
                return False, "C1"
    return True, None


# ---------------------------------------------------------------------------
# the two enumeration methods


def _acting_maps(tree: DynkinTree):
    """The finite set acting on residue sets: tau powers composed with the
    graph automorphisms; for even A the flip only lifts to the glide
    reflection, so the glide replaces it."""
    L = loewy_number(tree)
    maps = []
    if tree.family == "A" and tree.rank % 2 == 0 and tree.rank >= 2:
        bases = [("", extend_automorphism(tree, tree_automorphisms(tree)[0]))]
        bases.append(("rho", glide_map(tree)))
    else:
        bases = [("", extend_automorphism(tree, aut)) for aut in tree_automorphisms(tree)]
    for k in range(L):
        for tag, base in bases:

            def shifted(i, x, base=base, k=k):
                j, y = base(i, x)
                return (j - k) % L, y

            maps.append((f"tau^{k}{'*' + tag if tag else ''}", shifted))
    return maps


def _close_under_symmetry(tree: DynkinTree, seeds) -> set[frozenset[Residue]]:
    maps = _acting_maps(tree)
    out: set[frozenset[Residue]] = set()
    todo = list(seeds)
    while todo:
        res = todo.pop()
        if res in out:
            continue
        out.add(res)
        for _, m in maps:
            img = frozenset(m(i, x) for i, x in res)
            if img not in out:
                todo.append(img)
    return out


def _pattern_vectors(tree: DynkinTree) -> list[tuple[int, ...]]:
    """Dimension vectors seeding the patterns method, on the all-zero section.

    For A this is the complete list (pedigree vectors).  For D and E the
    vectors come from one-point extensions of the next smaller tree: the
    vector of a smaller-tree pattern, plus a new entry one above the value
    at the attaching vertex, which plants a configuration point right
    behind the new branch end.
    """
    n = tree.rank
    if tree.family == "A":
        return [pedigree_dimension_vector(p) for p in enumerate_pedigrees(n)]
    if tree.family == "D":
        # drop fork vertex n-1: the chain 1..n-2 plus n is an equioriented
        # A_{n-1} section, vertex n sitting in the last chain slot
        out = []
        for p in enumerate_pedigrees(n - 1):
            bv = pedigree_dimension_vector(p)
            out.append(tuple(bv[: n - 2]) + (1 + bv[n - 3], bv[n - 2]))
        return sorted(set(out))
    # E trees: drop the end of the longest branch; what remains is the next
    # smaller tree carrying its own all-zero section
    sub_tree = {6: make_tree("D", 5), 7: make_tree("E", 6), 8: make_tree("E", 7)}[n]
    vmap = {
        6: {1: 1, 2: 2, 3: 3, 4: 4, 5: 6},
        7: {1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 6: 7},
        8: {1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 6: 6, 7: 8},
    }[n]
    new_vertex = sub_tree.rank
    sub_vecs = sorted(
        {
            dims_on_section(c, equioriented_section(sub_tree))
            for c in enumerate_configurations(sub_tree, method="patterns")
        }
    )
    out = []
    for sv in sub_vecs:
        d = [0] * n
        for sub_v, our_v in vmap.items():
            d[our_v - 1] = sv[sub_v - 1]
        d[new_vertex - 1] = 1 + d[new_vertex - 2]
        out.append(tuple(d))
    return sorted(set(out))


def _enumerate_patterns(tree: DynkinTree) -> set[frozenset[Residue]]:
    section = equioriented_section(tree)
    vectors = _pattern_vectors(tree)
    threads = int(os.environ.get("MESHKNIT_THREADS", "1") or "1")
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            seeds = set(pool.map(lambda v: knit_and_knot(tree, section, v).residues, vectors))
    else:
        seeds = {knit_and_knot(tree, section, vec).residues for vec in vectors}
    if tree.family == "A":
        return seeds  # already complete: patterns biject with configurations
    return _close_under_symmetry(tree, seeds)


def _enumerate_bruteforce(tree: DynkinTree) -> set[frozenset[Residue]]:
    """Independent-set search over the pair-exclusion graph of one
    fundamental domain, filtered by the covering axiom C1."""
    L = loewy_number(tree)
    universe = [(i, x) for i in range(L) for x in tree.vertices]
    index = {u: k for k, u in enumerate(universe)}
    m = len(universe)
    reach = _residue_reach(tree)

    conflict = [0] * m
    for u in universe:
        for v in reach[u]:
            if v != u:
                conflict[index[u]] |= 1 << index[v]
                conflict[index[v]] |= 1 << index[u]

    covered_by = [0] * m  # covered_by[u] = residues whose support contains u
    for u in universe:
        for v in reach[u]:
            covered_by[index[u]] |= 1 << index[v]

    results: set[frozenset[Residue]] = set()
    want = tree.rank
    full = (1 << m) - 1

    def dfs(start: int, chosen: list[int], chosen_mask: int, banned: int):
        if len(chosen) == want:
            if all(covered_by[k] & chosen_mask for k in range(m)):
                results.add(frozenset(universe[k] for k in chosen))
            return
        avail = full & ~banned & ~((1 << start) - 1)
        if bin(avail).count("1") + len(chosen) < want:
            return
        pool = chosen_mask | avail
        for k in range(m):
            if not (covered_by[k] & pool):
                return
        for k in range(start, m):
            bit = 1 << k
            if avail & bit:
                dfs(k + 1, chosen + [k], chosen_mask | bit, banned | bit | conflict[k])

    dfs(0, [], 0, 0)
    return results


def enumerate_configurations(tree: DynkinTree, method: str = "patterns") -> list[Configuration]:
    """All configurations of the tree, by knitting patterns or brute force.

    Both methods return the same set; the test suite cross-validates them.
    Brute force over E7/E8 takes minutes and must be opted into by setting
    MESHKNIT_ALLOW_SLOW=1.
    """
    if method == "patterns":
        residue_sets = _enumerate_patterns(tree)
    elif method == "bruteforce":
        if tree.family == "E" and tree.rank >= 7 and os.environ.get("MESHKNIT_ALLOW_SLOW") != "1":
            raise WrongFamily("brute force over E7/E8 takes minutes; set MESHKNIT_ALLOW_SLOW=1")
        residue_sets = _enumerate_bruteforce(tree)
    else:
        raise ValueError(f"unknown method {method!r}")
    return [Configuration(tree, res) for res in sorted(residue_sets, key=sorted)]


# ---------------------------------------------------------------------------
# corner analysis and symmetry classes


def dn_corner_count(config: Configuration) -> tuple[int, list[Residue]]:
    """Number of high points (fork vertices) per fundamental domain.

    Defined for D_n with n >= 5 only; the count is 2 or 3, two-cornered
    configurations carry both high points on one slice, three-cornered ones
    on pairwise distinct slices.
    """
    tree = config.tree
    if tree.family != "D" or tree.rank < 5:
        raise WrongFamily("corner counts are defined for D_n with n >= 5 only")
    n = tree.rank
    high = sorted((i, x) for i, x in config.residues if x >= n - 1)
    h = len(high)
    assert h in (2, 3), f"high point count {h} outside the classification"
    slices = [i for i, _ in high]
    if h == 2:
        assert slices[0] == slices[1], "two-cornered high points must share a slice"
    else:
        assert len(set(slices)) == 3, "three-cornered high points must differ in slice"
    return h, high


@dataclass
class ConfigurationClass:
    representative: Configuration
    orbit_size: int
    stabilizer: tuple[str, ...]

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)


def configurations_up_to_aut(tree: DynkinTree, configs=None) -> list[ConfigurationClass]:
    """Orbit representatives under tau shifts, graph automorphisms and (for
    even A) the glide reflection; the representative of each class is its
    lexicographically least member."""
    if configs is None:
        configs = enumerate_configurations(tree)
    maps = _acting_maps(tree)
    seen: set[frozenset[Residue]] = set()
    out = []
    for cfg in sorted(configs, key=lambda c: c.canonical_key()):
        if cfg.residues in seen:
            continue
        orbit = set()
        for _, m in maps:
            orbit.add(frozenset(m(i, x) for i, x in cfg.residues))
        seen |= orbit
        rep = Configuration(tree, min(orbit, key=lambda r: tuple(sorted(r))))
        stab = tuple(
            name
            for name, m in maps
            if frozenset(m(i, x) for i, x in rep.residues) == rep.residues
        )
        assert len(orbit) * len(stab) == len(maps), "orbit-stabilizer mismatch"
        out.append(ConfigurationClass(rep, len(orbit), stab))
    return out


def period(config: Configuration) -> int:
    """Smallest e with tau^e C = C; divides the storage modulus."""
    return config.period()
