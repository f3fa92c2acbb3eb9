"""Finite non-unital categories, their Δ-set nerves, and bi-Δ-sets.

A non-unital category carries source/target maps and an associative
partial composition, with no identity morphisms required.  Its nerve has
no degeneracies, hence is a Δ-set.  Simplicial categories (Δ-sets of
objects and morphisms, degreewise composition) produce bi-Δ-sets whose
total-complex homology stands in for the homology of the classifying
space; the vertical differential is twisted by (-1)^p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .delta import DeltaMorphism, DeltaSet, check_identities
from .homology import ChainComplex, HomologyProfile, homology


class CategoryStructureError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteNonUnitalCategory:
    """Objects, morphisms, src/tgt, and a partial composition table.

    comp maps (f, g) with tgt(f) = src(g) to the composite 'f then g'
    (so src(comp) = src(f), tgt(comp) = tgt(g)).  The table may be
    partial when the category is a truncation of a larger one.
    """

    objects: tuple
    morphisms: tuple
    src: Mapping[Hashable, Hashable]
    tgt: Mapping[Hashable, Hashable]
    comp: Mapping[tuple, Hashable]
    name: str = "C"

    def __post_init__(self):
        objs = set(self.objects)
        for m in self.morphisms:
            if m not in self.src or m not in self.tgt:
                raise CategoryStructureError(f"morphism {m} lacks src/tgt")
            if self.src[m] not in objs or self.tgt[m] not in objs:
                raise CategoryStructureError(f"morphism {m} has unknown endpoint")
        mors = set(self.morphisms)
        for (f, g), h in self.comp.items():
            if f not in mors or g not in mors or h not in mors:
                raise CategoryStructureError(f"composition {f},{g}->{h} uses unknown morphism")

    def composable(self, f, g) -> bool:
        return self.tgt[f] == self.src[g]


@dataclass(frozen=True)
class CategoryReport:
    ok: bool
    issues: tuple = ()  # (kind, witness)

    def __bool__(self):
        return self.ok


def check_category(c: FiniteNonUnitalCategory, allow_partial: bool = False) -> CategoryReport:
    """Source/target bookkeeping of composites and associativity on all
    composable triples; witnesses reported on failure.

    With allow_partial=False, a composable pair missing from the table is
    a structural error; with allow_partial=True (truncated categories)
    the checks quantify over defined composites only.
    """
    issues = []
    for f, g in itertools.product(c.morphisms, repeat=2):
        if not c.composable(f, g):
            if (f, g) in c.comp:
                issues.append(("comp-on-noncomposable", (f, g)))
            continue
        if (f, g) not in c.comp:
            if not allow_partial:
                raise CategoryStructureError(f"composable pair ({f}, {g}) has no composite")
            continue
        h = c.comp[(f, g)]
        if c.src[h] != c.src[f] or c.tgt[h] != c.tgt[g]:
            issues.append(("endpoint", (f, g, h)))
    for f, g, h in itertools.product(c.morphisms, repeat=3):
        fg = c.comp.get((f, g))
        gh = c.comp.get((g, h))
        if fg is None or gh is None:
            continue
        left = c.comp.get((fg, h))
        right = c.comp.get((f, gh))
        if left is not None and right is not None and left != right:
            issues.append(("associativity", (f, g, h, left, right)))
        elif allow_partial and (left is None) != (right is None):
            issues.append(("associativity-domain", (f, g, h)))
        elif not allow_partial and (left is None or right is None):
            raise CategoryStructureError(f"triple ({f}, {g}, {h}) has no composite")
    return CategoryReport(not issues, tuple(issues))


def nerve(c: FiniteNonUnitalCategory, max_degree: int = 3) -> DeltaSet:
    """Δ-set nerve: degree-k generators are composable k-strings all of
    whose consecutive multi-composites are defined (so every face exists);
    d_0/d_k drop the ends, inner d_i compose."""
    gens: dict[int, tuple] = {0: tuple(sorted(c.objects, key=repr))}
    faces = {}
    strings = {1: [(f,) for f in sorted(c.morphisms, key=repr)]}
    gens[1] = tuple(strings[1])
    for f in c.morphisms:
        faces[(1, (f,), 0)] = c.tgt[f]
        faces[(1, (f,), 1)] = c.src[f]
    for k in range(2, max_degree + 1):
        level = []
        for s in strings[k - 1]:
            for g in sorted(c.morphisms, key=repr):
                t = s + (g,)
                if c.tgt[s[-1]] != c.src[g]:
                    continue
                if _string_closed(c, t):
                    level.append(t)
        strings[k] = level
        gens[k] = tuple(level)
        for t in level:
            faces[(k, t, 0)] = t[1:]
            faces[(k, t, k)] = t[:-1]
            for i in range(1, k):
                faces[(k, t, i)] = t[: i - 1] + (c.comp[(t[i - 1], t[i])],) + t[i + 1 :]
    x = DeltaSet({k: v for k, v in gens.items() if v}, faces, name=f"N({c.name})")
    rep = check_identities(x)
    if not rep:
        raise CategoryStructureError(f"nerve face identities fail: {rep.witness}")
    return x


def _string_closed(c: FiniteNonUnitalCategory, t: tuple) -> bool:
    """All composites of consecutive runs of the string are defined."""
    # composite[i][j] = product of t[i..j]; filled by increasing length
    n = len(t)
    comp = {(i, i): t[i] for i in range(n)}
    for length in range(2, n + 1):
        for i in range(0, n - length + 1):
            j = i + length - 1
            a = comp.get((i, j - 1))
            if a is None:
                return False
            prod = c.comp.get((a, t[j]))
            if prod is None:
                return False
            comp[(i, j)] = prod
    return True


# ---------------------------------------------------------------------------
# simplicial categories and bi-Δ-sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplicialCategory:
    """Non-unital category object in Δ-sets: degreewise categories whose
    structure maps commute with the face maps."""

    objects: DeltaSet
    morphisms: DeltaSet
    src: DeltaMorphism
    tgt: DeltaMorphism
    comp: Mapping[tuple, Hashable]  # (p, f, g) -> composite p-morphism
    name: str = "C"

    def level(self, p: int) -> FiniteNonUnitalCategory:
        return FiniteNonUnitalCategory(
            self.objects.gens(p),
            self.morphisms.gens(p),
            {f: self.src.mapping[(p, f)] for f in self.morphisms.gens(p)},
            {f: self.tgt.mapping[(p, f)] for f in self.morphisms.gens(p)},
            {(f, g): h for (q, f, g), h in self.comp.items() if q == p},
            name=f"{self.name}_{p}",
        )


@dataclass(frozen=True)
class BiDeltaSet:
    """Bigraded generators with commuting horizontal and vertical faces."""

    generators: Mapping[tuple, tuple]  # (p, q) -> gens
    h_faces: Mapping[tuple, Hashable]  # (p, q, g, i) -> gen at (p-1, q)
    v_faces: Mapping[tuple, Hashable]  # (p, q, g, i) -> gen at (p, q-1)
    name: str = "B"

    def gens(self, p: int, q: int) -> tuple:
        return self.generators.get((p, q), ())

    def check(self) -> bool:
        for (p, q), gs in self.generators.items():
            for g in gs:
                if p >= 2:
                    for i, j in itertools.combinations(range(p + 1), 2):
                        a = self.h_faces[(p - 1, q, self.h_faces[(p, q, g, j)], i)]
                        b = self.h_faces[(p - 1, q, self.h_faces[(p, q, g, i)], j - 1)]
                        if a != b:
                            return False
                if q >= 2:
                    for i, j in itertools.combinations(range(q + 1), 2):
                        a = self.v_faces[(p, q - 1, self.v_faces[(p, q, g, j)], i)]
                        b = self.v_faces[(p, q - 1, self.v_faces[(p, q, g, i)], j - 1)]
                        if a != b:
                            return False
                if p >= 1 and q >= 1:
                    for i in range(p + 1):
                        for j in range(q + 1):
                            a = self.v_faces[(p - 1, q, self.h_faces[(p, q, g, i)], j)]
                            b = self.h_faces[(p, q - 1, self.v_faces[(p, q, g, j)], i)]
                            if a != b:
                                return False
        return True


def nerve_simplicial(c: SimplicialCategory, max_q: int = 3) -> BiDeltaSet:
    """Bi-Δ-set nerve: (p, q)-generators are q-strings of composable
    p-morphisms; horizontal faces apply the morphism Δ-set faces
    entrywise, vertical faces are the nerve faces of the level category."""
    degrees = sorted(set(c.objects.generators) | set(c.morphisms.generators))
    levels = {}
    for p in degrees:
        lev = c.level(p)
        rep = check_category(lev, allow_partial=True)
        if not rep:
            raise CategoryStructureError((p, rep.issues[0]))
        levels[p] = lev
    nerves = {p: nerve(levels[p], max_degree=max_q) for p in degrees}
    generators = {}
    h_faces = {}
    v_faces = {}
    for p in degrees:
        for q in sorted(nerves[p].generators):
            gs = nerves[p].gens(q)
            if gs:
                generators[(p, q)] = gs
            for g in gs:
                for j in range(q + 1):
                    if q > 0:
                        v_faces[(p, q, g, j)] = nerves[p].face(q, g, j)
                if p == 0:
                    continue
                for i in range(p + 1):
                    if q == 0:
                        h_faces[(p, q, g, i)] = c.objects.face(p, g, i)
                    else:
                        img = tuple(c.morphisms.face(p, f, i) for f in g)
                        h_faces[(p, q, g, i)] = img
    b = BiDeltaSet(generators, h_faces, v_faces, name=f"N({c.name})")
    for key, img in b.h_faces.items():
        p, q = key[0] - 1, key[1]
        if img not in b.gens(p, q):
            raise CategoryStructureError(
                f"horizontal face leaves the nerve at {key}: a face of a "
                f"composable string is not composable"
            )
    if not b.check():
        raise CategoryStructureError("bi-Δ-set identities fail")
    return b


def constant_simplicial_category(c: FiniteNonUnitalCategory) -> SimplicialCategory:
    """A category made simplicially discrete (objects/morphisms in degree 0)."""
    o = DeltaSet({0: tuple(sorted(c.objects, key=repr))}, {}, name=f"{c.name}-obj")
    m = DeltaSet({0: tuple(sorted(c.morphisms, key=repr))}, {}, name=f"{c.name}-mor")
    src = DeltaMorphism(m, o, {(0, f): c.src[f] for f in c.morphisms})
    tgt = DeltaMorphism(m, o, {(0, f): c.tgt[f] for f in c.morphisms})
    comp = {(0, f, g): h for (f, g), h in c.comp.items()}
    return SimplicialCategory(o, m, src, tgt, comp, name=c.name)


def total_complex(b: BiDeltaSet) -> ChainComplex:
    """Total complex of the double complex of a bi-Δ-set.

    d(g at (p,q)) = Σ_i (-1)^i d^h_i g  +  (-1)^p Σ_j (-1)^j d^v_j g.
    """
    keys = sorted(b.generators)
    index = {}
    ranks: dict[int, int] = {}
    for (p, q) in keys:
        for g in b.gens(p, q):
            n = p + q
            index[(p, q, g)] = (n, ranks.get(n, 0))
            ranks[n] = ranks.get(n, 0) + 1
    boundaries: dict[int, dict[int, dict[int, int]]] = {}
    for (p, q) in keys:
        n = p + q
        if n == 0:
            continue
        for g in b.gens(p, q):
            col: dict[int, int] = {}
            if p > 0:
                for i in range(p + 1):
                    r = index[(p - 1, q, b.h_faces[(p, q, g, i)])][1]
                    col[r] = col.get(r, 0) + (-1) ** i
            if q > 0:
                sign = (-1) ** p
                for j in range(q + 1):
                    r = index[(p, q - 1, b.v_faces[(p, q, g, j)])][1]
                    col[r] = col.get(r, 0) + sign * (-1) ** j
            col = {r: v for r, v in col.items() if v}
            if col:
                boundaries.setdefault(n, {})[index[(p, q, g)][1]] = col
    for n in range(max(ranks, default=-1) + 1):
        ranks.setdefault(n, 0)
        boundaries.setdefault(n, {})
    boundaries.pop(0, None)
    return ChainComplex(ranks, boundaries)


def total_homology(b: BiDeltaSet) -> HomologyProfile:
    return homology(total_complex(b))


# ---------------------------------------------------------------------------
# demo: a truncated category of combinatorial 1-cobordisms
# ---------------------------------------------------------------------------

LOOP_CAP = 3


def _compose_pairings(a_pts, b_pts, c_pts, pair1, loops1, pair2, loops2):
    """Glue two 1-cobordisms along the middle 0-manifold.

    Points are ('i', k) / ('o', k); the middle object's points appear as
    outputs of the first pairing and inputs of the second.  Follows the
    glued arcs and counts new closed loops.
    """
    adj: dict[tuple, set] = {}

    def edge(u, v):
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    for u, v in pair1:
        edge(("1",) + u, ("1",) + v)
    for u, v in pair2:
        edge(("2",) + u, ("2",) + v)
    for k in range(b_pts):
        edge(("1", "o", k), ("2", "i", k))
    ends = [("1", "i", k) for k in range(a_pts)] + [("2", "o", k) for k in range(c_pts)]
    seen = set()
    new_pairs = []
    for e in ends:
        if e in seen:
            continue
        prev, cur = None, e
        while True:
            seen.add(cur)
            nxt = next(u for u in adj[cur] if u != prev)
            prev, cur = cur, nxt
            if cur in ends:
                seen.add(cur)
                break
        left = ("i", e[2]) if e[0] == "1" else ("o", e[2])
        right = ("i", cur[2]) if cur[0] == "1" else ("o", cur[2])
        new_pairs.append(tuple(sorted((left, right))))
    loops = loops1 + loops2
    visited = set(seen)
    for u in adj:
        if u in visited:
            continue
        # trace the cycle through u
        prev, cur = None, u
        while True:
            visited.add(cur)
            nxt = next(x for x in adj[cur] if x != prev)
            prev, cur = cur, nxt
            if cur == u:
                break
        loops += 1
    return frozenset(new_pairs), loops


def _matchings(a_pts, c_pts):
    pts = [("i", k) for k in range(a_pts)] + [("o", k) for k in range(c_pts)]
    if len(pts) % 2:
        return []
    out = []

    def rec(rest, acc):
        if not rest:
            out.append(frozenset(acc))
            return
        u = rest[0]
        for t in range(1, len(rest)):
            v = rest[t]
            rec(rest[1:t] + rest[t + 1 :], acc + [tuple(sorted((u, v)))])

    rec(pts, [])
    return out


def demo_cobordism_category() -> FiniteNonUnitalCategory:
    """Objects: the empty 0-manifold E and the two-point 0-manifold P.
    Morphisms: 1-cobordisms (perfect matching on the boundary points plus
    a closed-loop count <= LOOP_CAP); composition glues matchings and adds
    loops, and is left undefined when the result exceeds the cap."""
    objects = ("E", "P")
    npts = {"E": 0, "P": 2}
    morphisms = []
    data = {}
    src = {}
    tgt = {}
    for a in objects:
        for c in objects:
            for pairing in sorted(_matchings(npts[a], npts[c]), key=repr):
                for loops in range(LOOP_CAP + 1):
                    if a == "E" and c == "E" and not pairing and loops == 0:
                        continue  # the empty cobordism would be a strict unit
                    m = (a, c, pairing, loops)
                    morphisms.append(m)
                    data[m] = (a, c, pairing, loops)
                    src[m] = a
                    tgt[m] = c
    by_data = {d: m for m, d in data.items()}
    comp = {}
    for f in morphisms:
        for g in morphisms:
            if tgt[f] != src[g]:
                continue
            a, b = src[f], tgt[f]
            c = tgt[g]
            pairing, loops = _compose_pairings(
                npts[a], npts[b], npts[c], data[f][2], data[f][3], data[g][2], data[g][3]
            )
            if loops > LOOP_CAP:
                continue
            key = (a, c, pairing, loops)
            if key in by_data:
                comp[(f, g)] = by_data[key]
    return FiniteNonUnitalCategory(
        tuple(objects), tuple(morphisms), src, tgt, comp, name="Cob1"
    )


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def _tok(x) -> str:
    return "".join(str(x).split())


def dumps(c: FiniteNonUnitalCategory) -> str:
    lines = [f"category {c.name}"]
    toks = {}
    for o in c.objects:
        toks[o] = _tok(o)
        lines.append(f"obj {toks[o]}")
    for m in c.morphisms:
        toks[m] = _tok(m)
        lines.append(f"mor {toks[m]} {toks[c.src[m]]} {toks[c.tgt[m]]}")
    if len(set(toks.values())) != len(toks):
        raise CategoryStructureError("token collision in category dump")
    for (f, g), h in sorted(c.comp.items(), key=repr):
        lines.append(f"cmp {toks[f]} {toks[g]} {toks[h]}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> FiniteNonUnitalCategory:
    name = "C"
    objects = []
    morphisms = []
    src = {}
    tgt = {}
    comp = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "category":
            name = " ".join(parts[1:]) or "C"
        elif parts[0] == "obj" and len(parts) == 2:
            objects.append(parts[1])
        elif parts[0] == "mor" and len(parts) == 4:
            morphisms.append(parts[1])
            src[parts[1]] = parts[2]
            tgt[parts[1]] = parts[3]
        elif parts[0] == "cmp" and len(parts) == 4:
            comp[(parts[1], parts[2])] = parts[3]
        else:
            raise CategoryStructureError(f"unexpected line {line!r}")
    return FiniteNonUnitalCategory(
        tuple(objects), tuple(morphisms), src, tgt, comp, name
    )


def load(path) -> FiniteNonUnitalCategory:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dump(c: FiniteNonUnitalCategory, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(c))
