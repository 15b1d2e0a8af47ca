"""Truncated simplicial sets, nerves, bisimplicial diagonals, and homology.

Simplices are hashable tokens (strings, or tuples for structured carriers
like nerve strings); all face and degeneracy maps are explicit dictionaries,
so simplicial identities are exhaustively checkable.  Homology runs over the
normalized integer chain complex through the exact Smith-form kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

from .errors import InputError
from .fincat import (
    FiniteCategory,
    Functor,
    Groupoid,
    automorphism_group,
    is_group_isomorphism,
    opposite,
)
from .snf import (
    SmithForm,
    normalize_factors,
    smith_normal_form,
    sparse_invariant_factors,
)

Token = Hashable


def _tkey(t: Token):
    return repr(t)


@dataclass(frozen=True)
class TruncatedSimplicialSet:
    """Simplicial set truncated at dimension ``dim``.

    faces[(n, i)] is the i-th face map in degree n (1 <= n <= dim,
    0 <= i <= n); degeneracies[(n, i)] is the i-th degeneracy out of degree n
    (0 <= n < dim, 0 <= i <= n).
    """

    dim: int
    simplices: tuple[frozenset, ...]
    faces: dict[tuple[int, int], dict]
    degeneracies: dict[tuple[int, int], dict]

    def face(self, n: int, i: int, x: Token) -> Token:
        return self.faces[(n, i)][x]

    def degeneracy(self, n: int, i: int, x: Token) -> Token:
        return self.degeneracies[(n, i)][x]

    def degenerate(self, n: int) -> frozenset:
        """Simplices of degree n in the image of some degeneracy."""
        if n == 0:
            return frozenset()
        out = set()
        for i in range(n):
            out.update(self.degeneracies[(n - 1, i)].values())
        return frozenset(out)

    def nondegenerate(self, n: int) -> tuple:
        deg = self.degenerate(n)
        return tuple(sorted((x for x in self.simplices[n] if x not in deg), key=_tkey))


def validate_simplicial(s: TruncatedSimplicialSet) -> list[str]:
    report: list[str] = []
    if s.dim < 0 or len(s.simplices) != s.dim + 1:
        return ["simplex tuple does not match truncation degree"]
    for n in range(1, s.dim + 1):
        for i in range(n + 1):
            fm = s.faces.get((n, i))
            if fm is None or set(fm) != set(s.simplices[n]):
                report.append(f"face ({n},{i}) missing or wrongly indexed")
            elif not set(fm.values()) <= set(s.simplices[n - 1]):
                report.append(f"face ({n},{i}) escapes degree {n-1}")
    for n in range(0, s.dim):
        for i in range(n + 1):
            dm = s.degeneracies.get((n, i))
            if dm is None or set(dm) != set(s.simplices[n]):
                report.append(f"degeneracy ({n},{i}) missing or wrongly indexed")
            elif not set(dm.values()) <= set(s.simplices[n + 1]):
                report.append(f"degeneracy ({n},{i}) escapes degree {n+1}")
    if report:
        return report
    # d_i d_j = d_{j-1} d_i (i < j)
    for n in range(2, s.dim + 1):
        for x in s.simplices[n]:
            for j in range(1, n + 1):
                for i in range(j):
                    if s.face(n - 1, i, s.face(n, j, x)) != s.face(
                        n - 1, j - 1, s.face(n, i, x)
                    ):
                        report.append(f"d{i} d{j} fails in degree {n}")
    # s_i s_j = s_{j+1} s_i (i <= j)
    for n in range(0, s.dim - 1):
        for x in s.simplices[n]:
            for j in range(n + 1):
                for i in range(j + 1):
                    if s.degeneracy(n + 1, i, s.degeneracy(n, j, x)) != s.degeneracy(
                        n + 1, j + 1, s.degeneracy(n, i, x)
                    ):
                        report.append(f"s{i} s{j} fails in degree {n}")
    # mixed identities
    for n in range(1, s.dim):
        for x in s.simplices[n]:
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = s.face(n + 1, i, s.degeneracy(n, j, x))
                    if i < j:
                        rhs = s.degeneracy(n - 1, j - 1, s.face(n, i, x))
                    elif i in (j, j + 1):
                        rhs = x
                    else:
                        rhs = s.degeneracy(n - 1, j, s.face(n, i - 1, x))
                    if lhs != rhs:
                        report.append(f"d{i} s{j} fails in degree {n}")
    return report


@dataclass(frozen=True)
class SimplicialMap:
    domain: TruncatedSimplicialSet
    codomain: TruncatedSimplicialSet
    components: tuple[dict, ...]

    def apply(self, n: int, x: Token) -> Token:
        return self.components[n][x]


def validate_simplicial_map(f: SimplicialMap) -> list[str]:
    report: list[str] = []
    if f.domain.dim != f.codomain.dim:
        return ["domain and codomain truncations differ"]
    d = f.domain.dim
    if len(f.components) != d + 1:
        return ["component tuple does not match truncation"]
    for n in range(d + 1):
        comp = f.components[n]
        if set(comp) != set(f.domain.simplices[n]):
            report.append(f"component {n} wrongly indexed")
        elif not set(comp.values()) <= set(f.codomain.simplices[n]):
            report.append(f"component {n} escapes the codomain")
    if report:
        return report
    for n in range(1, d + 1):
        for x in f.domain.simplices[n]:
            for i in range(n + 1):
                if f.apply(n - 1, f.domain.face(n, i, x)) != f.codomain.face(
                    n, i, f.apply(n, x)
                ):
                    report.append(f"face {i} not preserved in degree {n}")
    for n in range(d):
        for x in f.domain.simplices[n]:
            for i in range(n + 1):
                if f.apply(n + 1, f.domain.degeneracy(n, i, x)) != f.codomain.degeneracy(
                    n, i, f.apply(n, x)
                ):
                    report.append(f"degeneracy {i} not preserved in degree {n}")
    return report


def identity_simplicial_map(s: TruncatedSimplicialSet) -> SimplicialMap:
    return SimplicialMap(
        domain=s,
        codomain=s,
        components=tuple({x: x for x in s.simplices[n]} for n in range(s.dim + 1)),
    )


def compose_simplicial_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    return SimplicialMap(
        domain=f.domain,
        codomain=g.codomain,
        components=tuple(
            {x: g.components[n][f.components[n][x]] for x in f.components[n]}
            for n in range(f.domain.dim + 1)
        ),
    )


# ---------------------------------------------------------------------------
# nerves


def _string_vertex(c: FiniteCategory, t: tuple, i: int) -> str:
    """The i-th object along a composable string token."""
    if len(t) == 1 and t[0] in set(c.objects):
        return t[0]
    if i == 0:
        return c.source(t[0])
    return c.target(t[i - 1])


def nerve(c: FiniteCategory, d: int) -> TruncatedSimplicialSet:
    """Composable strings of morphisms, truncated at degree d.

    Degree-0 simplices are (object,) tuples; a degree-n simplex is the tuple
    of its n arrows read source to target.
    """
    if d < 1:
        raise InputError("truncation degree must be at least 1")
    simplices: list[frozenset] = [frozenset((u,) for u in c.objects)]
    for n in range(1, d + 1):
        prev = simplices[n - 1]
        cur = set()
        if n == 1:
            for m in c.morphisms:
                cur.add((m,))
        else:
            for t in prev:
                tail = c.target(t[-1])
                for m in c.out_of(tail):
                    cur.add(t + (m,))
        simplices.append(frozenset(cur))
    faces: dict[tuple[int, int], dict] = {}
    degeneracies: dict[tuple[int, int], dict] = {}
    for n in range(1, d + 1):
        for i in range(n + 1):
            fm = {}
            for t in simplices[n]:
                if n == 1:
                    fm[t] = (c.target(t[0]),) if i == 0 else (c.source(t[0]),)
                elif i == 0:
                    fm[t] = t[1:]
                elif i == n:
                    fm[t] = t[:-1]
                else:
                    fm[t] = t[: i - 1] + (c.compose(t[i], t[i - 1]),) + t[i + 1 :]
            faces[(n, i)] = fm
    for n in range(0, d):
        for i in range(n + 1):
            dm = {}
            for t in simplices[n]:
                v = _string_vertex(c, t, i)
                ident = c.identity[v]
                if n == 0:
                    dm[t] = (ident,)
                else:
                    dm[t] = t[:i] + (ident,) + t[i:]
            degeneracies[(n, i)] = dm
    return TruncatedSimplicialSet(
        dim=d, simplices=tuple(simplices), faces=faces, degeneracies=degeneracies
    )


def nerve_map(f: Functor, d: int) -> SimplicialMap:
    """The simplicial map of nerves induced by a functor."""
    dom = nerve(f.domain, d)
    cod = nerve(f.codomain, d)
    comps = []
    for n in range(d + 1):
        if n == 0:
            comps.append({t: (f.on_object(t[0]),) for t in dom.simplices[0]})
        else:
            comps.append(
                {t: tuple(f.on_morphism(m) for m in t) for t in dom.simplices[n]}
            )
    return SimplicialMap(domain=dom, codomain=cod, components=tuple(comps))


def standard_simplex(k: int, d: int) -> TruncatedSimplicialSet:
    """The k-simplex, truncated at d; tokens are monotone vertex tuples."""
    import itertools

    simplices = []
    for n in range(d + 1):
        simplices.append(
            frozenset(
                tuple(t)
                for t in itertools.combinations_with_replacement(range(k + 1), n + 1)
            )
        )
    faces = {}
    for n in range(1, d + 1):
        for i in range(n + 1):
            faces[(n, i)] = {t: t[:i] + t[i + 1 :] for t in simplices[n]}
    degeneracies = {}
    for n in range(0, d):
        for i in range(n + 1):
            degeneracies[(n, i)] = {t: t[: i + 1] + t[i:] for t in simplices[n]}
    return TruncatedSimplicialSet(
        dim=d, simplices=tuple(simplices), faces=faces, degeneracies=degeneracies
    )


def disjoint_union_ssets(
    pieces: list[TruncatedSimplicialSet], tags: list[str]
) -> tuple[TruncatedSimplicialSet, list[SimplicialMap]]:
    """Coproduct with tagged tokens, plus the injection maps."""
    d = pieces[0].dim
    if any(p.dim != d for p in pieces):
        raise InputError("pieces have different truncations")
    simplices = tuple(
        frozenset((tag, x) for p, tag in zip(pieces, tags) for x in p.simplices[n])
        for n in range(d + 1)
    )
    faces = {}
    for n in range(1, d + 1):
        for i in range(n + 1):
            faces[(n, i)] = {
                (tag, x): (tag, p.face(n, i, x))
                for p, tag in zip(pieces, tags)
                for x in p.simplices[n]
            }
    degeneracies = {}
    for n in range(0, d):
        for i in range(n + 1):
            degeneracies[(n, i)] = {
                (tag, x): (tag, p.degeneracy(n, i, x))
                for p, tag in zip(pieces, tags)
                for x in p.simplices[n]
            }
    total = TruncatedSimplicialSet(
        dim=d, simplices=simplices, faces=faces, degeneracies=degeneracies
    )
    injections = [
        SimplicialMap(
            domain=p,
            codomain=total,
            components=tuple({x: (tag, x) for x in p.simplices[n]} for n in range(d + 1)),
        )
        for p, tag in zip(pieces, tags)
    ]
    return total, injections


# ---------------------------------------------------------------------------
# bisimplicial sets and the interchange comparison


@dataclass(frozen=True)
class BisimplicialSet:
    """Bidegree-indexed simplices with commuting horizontal/vertical structure."""

    dim: int
    simplices: dict[tuple[int, int], frozenset]
    h_faces: dict[tuple[int, int, int], dict]
    h_degeneracies: dict[tuple[int, int, int], dict]
    v_faces: dict[tuple[int, int, int], dict]
    v_degeneracies: dict[tuple[int, int, int], dict]


def validate_bisimplicial(b: BisimplicialSet) -> list[str]:
    report: list[str] = []
    d = b.dim
    for m in range(d + 1):
        for n in range(d + 1):
            if (m, n) not in b.simplices:
                report.append(f"no simplices at bidegree ({m},{n})")
    if report:
        return report
    # horizontal structure is simplicial at each fixed vertical degree
    for n in range(d + 1):
        sub = TruncatedSimplicialSet(
            dim=d,
            simplices=tuple(b.simplices[(m, n)] for m in range(d + 1)),
            faces={
                (m, i): b.h_faces[(m, n, i)] for m in range(1, d + 1) for i in range(m + 1)
            },
            degeneracies={
                (m, i): b.h_degeneracies[(m, n, i)]
                for m in range(d)
                for i in range(m + 1)
            },
        )
        report.extend(f"horizontal at v={n}: {r}" for r in validate_simplicial(sub))
    for m in range(d + 1):
        sub = TruncatedSimplicialSet(
            dim=d,
            simplices=tuple(b.simplices[(m, n)] for n in range(d + 1)),
            faces={
                (n, i): b.v_faces[(m, n, i)] for n in range(1, d + 1) for i in range(n + 1)
            },
            degeneracies={
                (n, i): b.v_degeneracies[(m, n, i)]
                for n in range(d)
                for i in range(n + 1)
            },
        )
        report.extend(f"vertical at h={m}: {r}" for r in validate_simplicial(sub))
    if report:
        return report
    # the two directions commute
    for m in range(d + 1):
        for n in range(d + 1):
            for x in b.simplices[(m, n)]:
                for i in range(m + 1):
                    for j in range(n + 1):
                        if m >= 1 and n >= 1:
                            if b.v_faces[(m - 1, n, j)][b.h_faces[(m, n, i)][x]] != \
                               b.h_faces[(m, n - 1, i)][b.v_faces[(m, n, j)][x]]:
                                report.append(f"h-face/v-face clash at ({m},{n})")
                        if m >= 1 and n < d:
                            if b.v_degeneracies[(m - 1, n, j)][b.h_faces[(m, n, i)][x]] != \
                               b.h_faces[(m, n + 1, i)][b.v_degeneracies[(m, n, j)][x]]:
                                report.append(f"h-face/v-degeneracy clash at ({m},{n})")
                        if m < d and n >= 1:
                            if b.v_faces[(m + 1, n, j)][b.h_degeneracies[(m, n, i)][x]] != \
                               b.h_degeneracies[(m, n - 1, i)][b.v_faces[(m, n, j)][x]]:
                                report.append(f"h-degeneracy/v-face clash at ({m},{n})")
                        if m < d and n < d:
                            if b.v_degeneracies[(m + 1, n, j)][b.h_degeneracies[(m, n, i)][x]] != \
                               b.h_degeneracies[(m, n + 1, i)][b.v_degeneracies[(m, n, j)][x]]:
                                report.append(f"degeneracy clash at ({m},{n})")
    return report


def diagonal(b: BisimplicialSet) -> TruncatedSimplicialSet:
    """n-simplices are the (n,n)-bisimplices; both structures apply at once."""
    d = b.dim
    simplices = tuple(b.simplices[(n, n)] for n in range(d + 1))
    faces = {}
    for n in range(1, d + 1):
        for i in range(n + 1):
            faces[(n, i)] = {
                x: b.v_faces[(n - 1, n, i)][b.h_faces[(n, n, i)][x]]
                for x in b.simplices[(n, n)]
            }
    degeneracies = {}
    for n in range(d):
        for i in range(n + 1):
            degeneracies[(n, i)] = {
                x: b.v_degeneracies[(n + 1, n, i)][b.h_degeneracies[(n, n, i)][x]]
                for x in b.simplices[(n, n)]
            }
    return TruncatedSimplicialSet(
        dim=d, simplices=simplices, faces=faces, degeneracies=degeneracies
    )


def interchange_comparison(
    c: FiniteCategory, d: int
) -> tuple[BisimplicialSet, SimplicialMap, SimplicialMap]:
    """The two-sided string bisimplicial set and its comparison maps.

    Bidegree (m,n) holds composable strings of m+n+1 arrows; the horizontal
    structure works on the first m arrows read in reverse, the vertical on
    the last n, and the middle arrow is absorbed by the innermost faces.
    Returns the bisimplicial set with the diagonal-level maps to the nerve of
    the opposite category (left part) and to the nerve (right part).
    """
    strings: dict[int, tuple] = {}
    for length in range(1, 2 * d + 2):
        strings[length] = tuple(sorted(c.strings(length), key=_tkey))
    simplices = {
        (m, n): frozenset(strings[m + n + 1]) for m in range(d + 1) for n in range(d + 1)
    }
    h_faces: dict[tuple[int, int, int], dict] = {}
    h_degeneracies: dict[tuple[int, int, int], dict] = {}
    v_faces: dict[tuple[int, int, int], dict] = {}
    v_degeneracies: dict[tuple[int, int, int], dict] = {}
    for m in range(d + 1):
        for n in range(d + 1):
            cur = simplices[(m, n)]
            if m >= 1:
                for i in range(m + 1):
                    fm = {}
                    for t in cur:
                        if i == m:
                            fm[t] = t[1:]
                        else:
                            # drop the object between arrows t[m-i-1] and t[m-i]
                            pos = m - i - 1
                            fm[t] = t[:pos] + (c.compose(t[pos + 1], t[pos]),) + t[pos + 2 :]
                    h_faces[(m, n, i)] = fm
            if m < d:
                for i in range(m + 1):
                    dm = {}
                    for t in cur:
                        pos = m - i
                        v = c.source(t[pos])
                        dm[t] = t[:pos] + (c.identity[v],) + t[pos:]
                    h_degeneracies[(m, n, i)] = dm
            if n >= 1:
                for j in range(n + 1):
                    fm = {}
                    for t in cur:
                        if j == n:
                            fm[t] = t[:-1]
                        else:
                            pos = m + j
                            fm[t] = t[:pos] + (c.compose(t[pos + 1], t[pos]),) + t[pos + 2 :]
                    v_faces[(m, n, j)] = fm
            if n < d:
                for j in range(n + 1):
                    dm = {}
                    for t in cur:
                        pos = m + j
                        v = c.target(t[pos])
                        dm[t] = t[: pos + 1] + (c.identity[v],) + t[pos + 1 :]
                    v_degeneracies[(m, n, j)] = dm
    big = BisimplicialSet(
        dim=d,
        simplices=simplices,
        h_faces=h_faces,
        h_degeneracies=h_degeneracies,
        v_faces=v_faces,
        v_degeneracies=v_degeneracies,
    )
    diag = diagonal(big)
    cop = nerve(opposite(c), d)
    cn = nerve(c, d)
    left_comps = []
    right_comps = []
    for n in range(d + 1):
        lm = {}
        rm = {}
        for t in diag.simplices[n]:
            if n == 0:
                lm[t] = (c.source(t[0]),)
                rm[t] = (c.target(t[0]),)
            else:
                lm[t] = tuple(reversed(t[:n]))
                rm[t] = t[n + 1 :]
        left_comps.append(lm)
        right_comps.append(rm)
    left = SimplicialMap(domain=diag, codomain=cop, components=tuple(left_comps))
    right = SimplicialMap(domain=diag, codomain=cn, components=tuple(right_comps))
    return big, left, right


# ---------------------------------------------------------------------------
# homology over the normalized integer chain complex


@dataclass(frozen=True)
class HomologyResult:
    """Invariant factors of H_0..H_top (0 marks an infinite cyclic factor)."""

    factors: tuple[tuple[int, ...], ...]
    components: int


def pi0_sset(s: TruncatedSimplicialSet) -> dict:
    """Vertex -> least vertex of its edge-path component."""
    parent = {v: v for v in s.simplices[0]}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in s.simplices[1]:
        a = find(s.face(1, 1, e))
        b = find(s.face(1, 0, e))
        if a != b:
            lo, hi = (a, b) if _tkey(a) < _tkey(b) else (b, a)
            parent[hi] = lo
    return {v: find(v) for v in s.simplices[0]}


def boundary_entries(
    s: TruncatedSimplicialSet, n: int, normalized: bool = True
) -> tuple[dict[tuple[int, int], int], int, int]:
    """Sparse boundary matrix from degree n to degree n-1 as (entries, rows, cols)."""
    basis_n = s.nondegenerate(n) if normalized else tuple(sorted(s.simplices[n], key=_tkey))
    basis_m = (
        s.nondegenerate(n - 1) if normalized else tuple(sorted(s.simplices[n - 1], key=_tkey))
    )
    row = {x: i for i, x in enumerate(basis_m)}
    entries: dict[tuple[int, int], int] = {}
    for j, x in enumerate(basis_n):
        for i in range(n + 1):
            y = s.face(n, i, x)
            r = row.get(y)
            if r is None:
                continue  # degenerate face vanishes in the normalized complex
            key = (r, j)
            entries[key] = entries.get(key, 0) + (1 if i % 2 == 0 else -1)
    return entries, len(basis_m), len(basis_n)


def homology(
    s: TruncatedSimplicialSet, top: int, normalized: bool = True
) -> HomologyResult:
    """H_0..H_top of the integer chain complex.

    Requires top <= dim - 1 so that the boundaries out of degree top+1 are
    available; under that condition the truncated answer agrees with the
    homology of any simplicial set this one truncates.
    """
    if top > s.dim - 1:
        raise InputError("truncation too low for the requested degree")
    sizes = []
    for n in range(top + 2):
        basis = s.nondegenerate(n) if normalized else tuple(s.simplices[n])
        sizes.append(len(basis))
    rank: dict[int, int] = {0: 0}
    torsion: dict[int, list[int]] = {0: []}
    for n in range(1, top + 2):
        entries, _r, _c = boundary_entries(s, n, normalized)
        rk, factors = sparse_invariant_factors(entries, _r, _c)
        rank[n] = rk
        torsion[n] = [f for f in factors if f > 1]
    out = []
    for n in range(top + 1):
        free = sizes[n] - rank[n] - rank[n + 1]
        out.append(normalize_factors(torsion[n + 1], free))
    components = len(set(pi0_sset(s).values()))
    return HomologyResult(factors=tuple(out), components=components)


# ---------------------------------------------------------------------------
# weak-equivalence evidence


@dataclass(frozen=True)
class EvidenceReport:
    """Sectionwise weak-equivalence evidence for one simplicial map.

    A pass means: bijective on path components and isomorphic homology
    invariant factors through the requested degree; when both sides are
    nerves of groupoids and the groupoid check ran, additionally the induced
    map on automorphism groups is an isomorphism at one vertex per component.
    The homology comparison is of abstract isomorphism type only, so a pass
    is necessary for a weak equivalence, and sufficient exactly on the
    groupoid-nerve path.
    """

    passed: bool
    pi0_bijective: bool
    homology_matches: tuple[bool, ...]
    domain_homology: tuple[tuple[int, ...], ...]
    codomain_homology: tuple[tuple[int, ...], ...]
    groupoid_check: bool | None
    notes: tuple[str, ...] = ()


def we_evidence(
    f: SimplicialMap,
    top: int,
    domain_groupoid: Groupoid | None = None,
    codomain_groupoid: Groupoid | None = None,
) -> EvidenceReport:
    """Homology-and-components evidence that f is a weak equivalence."""
    if top > min(f.domain.dim, f.codomain.dim) - 1:
        raise InputError("truncation too low for the requested evidence degree")
    notes: list[str] = []
    rep_d = pi0_sset(f.domain)
    rep_c = pi0_sset(f.codomain)
    reps = sorted(set(rep_d.values()), key=_tkey)
    induced = {r: rep_c[f.apply(0, r)] for r in reps}
    injective = len(set(induced.values())) == len(reps)
    surjective = set(induced.values()) == set(rep_c.values())
    pi0_ok = injective and surjective

    hd = homology(f.domain, top)
    hc = homology(f.codomain, top)
    matches = tuple(hd.factors[n] == hc.factors[n] for n in range(top + 1))

    groupoid_ok: bool | None = None
    if domain_groupoid is not None and codomain_groupoid is not None:
        groupoid_ok = True
        for v in reps:
            x = v[0]
            fx = f.apply(0, v)[0]
            ga = automorphism_group(domain_groupoid, x)
            gb = automorphism_group(codomain_groupoid, fx)
            mapping = {m: f.apply(1, (m,))[0] for m in ga.elements}
            if not is_group_isomorphism(ga, gb, mapping):
                groupoid_ok = False
                notes.append(f"automorphism comparison fails at component of {x!r}")
    passed = pi0_ok and all(matches) and groupoid_ok is not False
    return EvidenceReport(
        passed=passed,
        pi0_bijective=pi0_ok,
        homology_matches=matches,
        domain_homology=hd.factors,
        codomain_homology=hc.factors,
        groupoid_check=groupoid_ok,
        notes=tuple(notes),
    )


# re-exported: the integer kernel lives alongside the homology code
__all__ = [
    "BisimplicialSet",
    "EvidenceReport",
    "HomologyResult",
    "SimplicialMap",
    "SmithForm",
    "TruncatedSimplicialSet",
    "boundary_entries",
    "compose_simplicial_maps",
    "diagonal",
    "disjoint_union_ssets",
    "homology",
    "identity_simplicial_map",
    "interchange_comparison",
    "nerve",
    "nerve_map",
    "pi0_sset",
    "smith_normal_form",
    "standard_simplex",
    "validate_bisimplicial",
    "validate_simplicial",
    "validate_simplicial_map",
    "we_evidence",
]
