"""Cohomology of finite categories with finitely generated abelian coefficients.

The cochain complex is the cosimplicial replacement: degree-n cochains are
tuples of coefficient elements indexed by composable n-strings, with the
twisted face-zero differential.  Torsion coefficients are handled by the
mapping cone of the relation inclusion, which is a free complex computing
the same cohomology; every kernel computation then runs through the sparse
invariant-factor routine.  Stack cohomology of a presheaf of groupoids is
the cohomology of the total category of its construction, which for the
trivial topology is the derived limit the site theory asks for; nontrivial
topologies are refused in exact mode and served by the Cech approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import CapExceeded, InputError, RefusedMode, ValidationFailure
from .fibred import (
    MorphismOfPresheavesOfCategories,
    PresheafOfGroupoids,
    grothendieck_construct,
    is_sectionwise_equivalence,
    total_functor,
)
from .fincat import FiniteCategory, Functor, build_category
from .site import GrothendieckTopology, Sieve, is_trivial_topology
from .snf import (
    Matrix,
    kernel_basis,
    matrix,
    normalize_factors,
    quotient_invariants,
    snf_diagonal,
    sparse_invariant_factors,
)


@dataclass(frozen=True)
class FgAbelianGroup:
    """Invariant-factor form of a finitely generated abelian group.

    factors is a divisibility chain with 0 denoting an infinite cyclic
    summand; unit factors are never stored.  Equality of groups is equality
    of factor tuples.
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        tor = [f for f in self.factors if f != 0]
        free = sum(1 for f in self.factors if f == 0)
        canonical = normalize_factors(tor, free)
        if tuple(self.factors) != canonical:
            raise InputError(f"factors {self.factors} not in canonical form {canonical}")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FgAbelianGroup":
        """Canonicalize an arbitrary list of cyclic orders (0 = infinite)."""
        orders = [int(o) for o in orders]
        k = len(orders)
        diag = snf_diagonal(
            [[orders[i] if j == i else 0 for j in range(k)] for i in range(k)]
        )
        tor = [d for d in diag if d > 1]
        free = sum(1 for o in orders if o == 0)
        return cls(factors=normalize_factors(tor, free))

    @property
    def rank(self) -> int:
        return sum(1 for f in self.factors if f == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f != 0)

    @property
    def generator_count(self) -> int:
        return len(self.factors)

    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        parts = ["Z"] * self.rank + [f"Z/{f}" for f in self.torsion]
        return " + ".join(parts)


ZZ = FgAbelianGroup(factors=(0,))
TRIVIAL_GROUP = FgAbelianGroup(factors=())


def zmod(n: int) -> FgAbelianGroup:
    return FgAbelianGroup.from_orders([n])


@dataclass(frozen=True)
class AbelianPresheaf:
    """Contravariant functor to f.g. abelian groups with chosen generators.

    group[x] fixes the generators (one per invariant factor, in order); the
    matrix at m: a -> b maps the generators of group[b] into group[a],
    i.e. shape (gens(a), gens(b)).  Functoriality holds modulo relations.
    """

    base: FiniteCategory
    group: dict[str, FgAbelianGroup]
    restriction: dict[str, Matrix]


def _entry_ok(value: int, modulus: int) -> bool:
    return value == 0 if modulus == 0 else value % modulus == 0


def _matrices_equal_mod(a: Matrix, b: Matrix, target: FgAbelianGroup) -> bool:
    if len(a) != len(b):
        return False
    for i, (ra, rb) in enumerate(zip(a, b)):
        if len(ra) != len(rb):
            return False
        mod = target.factors[i] if i < len(target.factors) else 0
        for x, y in zip(ra, rb):
            if not _entry_ok(x - y, mod):
                return False
    return True


def validate_abelian_presheaf(f: AbelianPresheaf) -> list[str]:
    report: list[str] = []
    c = f.base
    for x in c.objects:
        if x not in f.group:
            report.append(f"no coefficient group at {x}")
    for m in c.morphisms:
        if m not in f.restriction:
            report.append(f"no restriction matrix for {m}")
    if report:
        return report
    for m, (a, b) in c.morphisms.items():
        mat = f.restriction[m]
        ga, gb = f.group[a], f.group[b]
        if len(mat) != ga.generator_count or any(
            len(r) != gb.generator_count for r in mat
        ):
            report.append(f"matrix for {m} has wrong shape")
            continue
        # relations must map into relations
        for j, dj in enumerate(gb.factors):
            if dj == 0:
                continue
            for i, di in enumerate(ga.factors):
                if not _entry_ok(dj * mat[i][j], di):
                    report.append(f"matrix for {m} does not respect relations")
                    break
            else:
                continue
            break
    if report:
        return report
    for x in c.objects:
        ident = f.restriction[c.identity[x]]
        n = f.group[x].generator_count
        eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        if not _matrices_equal_mod(ident, eye, f.group[x]):
            report.append(f"identity matrix at {x} is not the identity")
    for (g, h), gh in c.composition.items():
        # contravariant: (g.h)^* = h^* g^*
        a = c.source(h)
        lhs = _matmul(f.restriction[h], f.restriction[g])
        if not _matrices_equal_mod(lhs, f.restriction[gh], f.group[a]):
            report.append(f"functoriality fails on ({g}, {h})")
    return report


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def constant_abelian_presheaf(c: FiniteCategory, g: FgAbelianGroup) -> AbelianPresheaf:
    n = g.generator_count
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return AbelianPresheaf(
        base=c, group={x: g for x in c.objects}, restriction={m: eye for m in c.morphisms}
    )


def restrict_abelian_along(t: Functor, f: AbelianPresheaf) -> AbelianPresheaf:
    """Coefficients pulled back along a functor into the coefficient base."""
    if f.base != t.codomain:
        raise InputError("coefficients do not live on the functor's codomain")
    return AbelianPresheaf(
        base=t.domain,
        group={x: f.group[t.on_object(x)] for x in t.domain.objects},
        restriction={m: f.restriction[t.on_morphism(m)] for m in t.domain.morphisms},
    )


# ---------------------------------------------------------------------------
# the cochain complex


@dataclass(frozen=True)
class CochainComplex:
    """A free complex of finite rank with consecutive differentials composing to zero.

    When the coefficients carry torsion the complex stored here is the
    mapping cone of the relation inclusion (quasi-isomorphic to the complex
    of presented groups), which starts one slot below the cochains proper;
    offset records that shift.  string_counts is the underlying string
    enumeration per cochain degree.
    """

    ranks: tuple[int, ...]
    differentials: tuple[dict[tuple[int, int], int], ...]
    string_counts: tuple[int, ...]
    degrees: int
    offset: int = 0


def _strings_by_degree(
    c: FiniteCategory, top: int, normalized: bool, max_strings: int
) -> list[list[tuple[str, ...]]]:
    out: list[list[tuple[str, ...]]] = []
    for n in range(top + 1):
        cur = []
        for t in c.strings(n, nondegenerate=normalized):
            cur.append(t)
            if len(cur) > max_strings:
                raise CapExceeded(
                    f"more than {max_strings} strings in degree {n}"
                )
        out.append(sorted(cur))
    return out


def _first_object(c: FiniteCategory, t: tuple[str, ...]) -> str:
    if len(t) == 1 and t[0] in set(c.objects):
        return t[0]
    return c.source(t[0])


def _string_faces(
    c: FiniteCategory, t: tuple[str, ...]
) -> list[tuple[str, ...]]:
    """Faces of an n-string (n >= 1), vertex-deletion order."""
    n = len(t)
    out = []
    for i in range(n + 1):
        if n == 1:
            out.append((c.target(t[0]),) if i == 0 else (c.source(t[0]),))
        elif i == 0:
            out.append(t[1:])
        elif i == n:
            out.append(t[:-1])
        else:
            out.append(t[: i - 1] + (c.compose(t[i], t[i - 1]),) + t[i + 1 :])
    return out


def cochain_complex(
    c: FiniteCategory,
    f: AbelianPresheaf,
    n_max: int,
    normalized: bool = True,
    max_strings: int = 200_000,
) -> CochainComplex:
    """Cosimplicial-replacement cochain complex, as a free mapping cone.

    Degree-n cochains assign to each n-string an element of the coefficient
    group at the string's first object; the differential applies the first
    arrow's restriction to the zeroth face and alternates signs on the rest.
    The returned complex computes H^0..H^{n_max}.
    """
    bad = validate_abelian_presheaf(f)
    if bad:
        raise ValidationFailure("; ".join(bad))
    # the mapping-cone route needs the matrices to compose strictly, not just
    # modulo relations; every presheaf built here (constants, pullbacks,
    # slice restrictions) is strict, and a strict model can be demanded of
    # callers without loss for the coefficients in scope
    for (g, h), gh in c.composition.items():
        if _matmul(f.restriction[h], f.restriction[g]) != f.restriction[gh]:
            raise ValidationFailure(
                "restriction matrices compose only modulo relations; "
                "re-present the coefficients with strictly functorial matrices"
            )
    has_torsion = any(f.group[x].torsion for x in c.objects)
    # the cone needs relations one degree above the last differential
    top = n_max + 2 if has_torsion else n_max + 1
    strings = _strings_by_degree(c, top, normalized, max_strings)

    gen_offsets: list[dict[tuple[str, ...], int]] = []
    gen_ranks: list[int] = []
    rel_offsets: list[dict[tuple[tuple[str, ...], int], int]] = []
    rel_ranks: list[int] = []
    for n in range(top + 1):
        off: dict[tuple[str, ...], int] = {}
        pos = 0
        for t in strings[n]:
            off[t] = pos
            pos += f.group[_first_object(c, t)].generator_count
        gen_offsets.append(off)
        gen_ranks.append(pos)
        roff: dict[tuple[tuple[str, ...], int], int] = {}
        rpos = 0
        for t in strings[n]:
            g = f.group[_first_object(c, t)]
            for i, d in enumerate(g.factors):
                if d != 0:
                    roff[(t, i)] = rpos
                    rpos += 1
        rel_offsets.append(roff)
        rel_ranks.append(rpos)

    def base_differential(n: int) -> dict[tuple[int, int], int]:
        """Entries of D^n: strings_n-cochains -> strings_{n+1}-cochains."""
        entries: dict[tuple[int, int], int] = {}
        for tau in strings[n + 1]:
            x0 = _first_object(c, tau)
            kx0 = f.group[x0].generator_count
            rbase = gen_offsets[n + 1][tau]
            faces = _string_faces(c, tau)
            # face 0 is twisted by the restriction along the first arrow
            sigma = faces[0]
            if sigma in gen_offsets[n]:
                m1 = tau[0]
                mat = f.restriction[m1]
                cbase = gen_offsets[n][sigma]
                for i in range(kx0):
                    for j in range(len(mat[i])):
                        vv = mat[i][j]
                        if vv:
                            key = (rbase + i, cbase + j)
                            entries[key] = entries.get(key, 0) + vv
            for idx in range(1, n + 2):
                sigma = faces[idx]
                if sigma not in gen_offsets[n]:
                    continue  # degenerate face vanishes in the normalized complex
                sgn = 1 if idx % 2 == 0 else -1
                cbase = gen_offsets[n][sigma]
                for i in range(kx0):
                    key = (rbase + i, cbase + i)
                    entries[key] = entries.get(key, 0) + sgn
        return {k: v for k, v in entries.items() if v}

    base_diffs = [base_differential(n) for n in range(top)]

    if not has_torsion:
        ranks = tuple(gen_ranks[: n_max + 2])
        diffs = tuple(base_diffs[: n_max + 1])
        _check_dd_zero(ranks, diffs)
        return CochainComplex(
            ranks=ranks,
            differentials=diffs,
            string_counts=tuple(len(strings[n]) for n in range(n_max + 2)),
            degrees=n_max,
        )

    # mapping cone: T^n = C^n (free part) + relations of degree n+1
    def rel_matrix(n: int) -> dict[tuple[int, int], int]:
        """rho_n: relation columns into the free cochains of degree n."""
        entries = {}
        for (t, i), col in rel_offsets[n].items():
            d = f.group[_first_object(c, t)].factors[i]
            entries[(gen_offsets[n][t] + i, col)] = d
        return entries

    def rel_lift(n: int) -> dict[tuple[int, int], int]:
        """r^n with D^n rho_n = rho_{n+1} r^n (exact division by the factors)."""
        entries: dict[tuple[int, int], int] = {}
        dn = base_diffs[n]
        by_col: dict[int, list[tuple[int, int]]] = {}
        for (r, cc), v in dn.items():
            by_col.setdefault(cc, []).append((r, v))
        row_rel = {
            off: f.group[_first_object(c, t)].factors[i]
            for (t, i), off2 in rel_offsets[n + 1].items()
            for off in [gen_offsets[n + 1][t] + i]
        }
        rel_row_index = {
            gen_offsets[n + 1][t] + i: col for (t, i), col in rel_offsets[n + 1].items()
        }
        for (t, i), col in rel_offsets[n].items():
            d = f.group[_first_object(c, t)].factors[i]
            src_row = gen_offsets[n][t] + i
            for r, v in by_col.get(src_row, []):
                num = d * v
                if r in rel_row_index:
                    dr = row_rel[r]
                    if num % dr != 0:
                        raise ValidationFailure("restriction does not respect relations")
                    q = num // dr
                    if q:
                        entries[(rel_row_index[r], col)] = entries.get(
                            (rel_row_index[r], col), 0
                        ) + q
                elif num != 0:
                    raise ValidationFailure("restriction does not respect relations")
        return {k: v for k, v in entries.items() if v}

    # bottom slot: the degree-0 relations map into T^0 = F^0 (+) R^1
    ranks = [rel_ranks[0]]
    for n in range(n_max + 2):
        ranks.append(gen_ranks[n] + rel_ranks[n + 1])
    diffs = []
    bottom: dict[tuple[int, int], int] = {}
    for (r, cc), v in rel_matrix(0).items():
        bottom[(r, cc)] = v
    for (r, cc), v in rel_lift(0).items():
        bottom[(gen_ranks[0] + r, cc)] = -v
    diffs.append(bottom)
    for n in range(n_max + 1):
        entries: dict[tuple[int, int], int] = {}
        for (r, cc), v in base_diffs[n].items():
            entries[(r, cc)] = v
        rho = rel_matrix(n + 1)
        for (r, cc), v in rho.items():
            entries[(r, gen_ranks[n] + cc)] = v
        lift = rel_lift(n + 1)
        for (r, cc), v in lift.items():
            entries[(gen_ranks[n + 1] + r, gen_ranks[n] + cc)] = -v
        diffs.append(entries)
    ranks_t = tuple(ranks)
    diffs_t = tuple(diffs)
    _check_dd_zero(ranks_t, diffs_t)
    return CochainComplex(
        ranks=ranks_t,
        differentials=diffs_t,
        string_counts=tuple(len(strings[n]) for n in range(n_max + 2)),
        degrees=n_max,
        offset=1,
    )


def _check_dd_zero(ranks: tuple[int, ...], diffs: tuple[dict, ...]) -> None:
    for n in range(len(diffs) - 1):
        prod: dict[tuple[int, int], int] = {}
        by_col: dict[int, list[tuple[int, int]]] = {}
        for (r, cc), v in diffs[n + 1].items():
            by_col.setdefault(cc, []).append((r, v))
        for (mid, cc), v in diffs[n].items():
            for r, w in by_col.get(mid, []):
                key = (r, cc)
                prod[key] = prod.get(key, 0) + w * v
        if any(v != 0 for v in prod.values()):
            raise ValidationFailure(f"differentials do not compose to zero at degree {n}")


def cohomology_of_complex(cc: CochainComplex) -> list[FgAbelianGroup]:
    """H^0..H^degrees by ranks and invariant factors of the differentials."""
    rank: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    for n, entries in enumerate(cc.differentials):
        rows = cc.ranks[n + 1] if n + 1 < len(cc.ranks) else 0
        rk, factors = sparse_invariant_factors(dict(entries), rows, cc.ranks[n])
        rank[n] = rk
        torsion[n] = [f for f in factors if f > 1]
    out = []
    for n in range(cc.degrees + 1):
        idx = n + cc.offset
        free = cc.ranks[idx] - rank[idx] - (rank[idx - 1] if idx >= 1 else 0)
        tor = torsion[idx - 1] if idx >= 1 else []
        out.append(FgAbelianGroup(factors=normalize_factors(tor, free)))
    return out


def compatible_family_group(c: FiniteCategory, f: AbelianPresheaf) -> FgAbelianGroup:
    """Direct computation of H^0: families fixed by every restriction.

    Independent of the cochain machinery: solves the kernel-with-relations
    problem by dense Smith-form lattice arithmetic on the degree-0 data.
    """
    bad = validate_abelian_presheaf(f)
    if bad:
        raise ValidationFailure("; ".join(bad))
    objs = sorted(c.objects)
    offset = {}
    pos = 0
    for x in objs:
        offset[x] = pos
        pos += f.group[x].generator_count
    total = pos
    # rows: one block per non-identity morphism (constraint F(m) a_tgt = a_src)
    rows: list[list[int]] = []
    row_mods: list[int] = []
    for m in sorted(c.morphisms):
        if c.is_identity(m):
            continue
        a, b = c.morphisms[m]
        mat = f.restriction[m]
        for i in range(f.group[a].generator_count):
            row = [0] * total
            for j in range(f.group[b].generator_count):
                row[offset[b] + j] += mat[i][j]
            row[offset[a] + i] -= 1
            rows.append(row)
            row_mods.append(f.group[a].factors[i])
    # kernel of [A | R] where R carries the relation moduli of each constraint row
    rel_cols = [k for k, d in enumerate(row_mods) if d != 0]
    ncols = total + len(rel_cols)
    block = []
    for k, row in enumerate(rows):
        ext = list(row) + [0] * len(rel_cols)
        block.append(ext)
    for pos_idx, k in enumerate(rel_cols):
        block[k][total + pos_idx] = row_mods[k]
    if not rows:
        block = []
    ker = kernel_basis(matrix(block)) if block else tuple(
        tuple(1 if i == j else 0 for i in range(total)) for j in range(total)
    )
    # project kernel vectors to the section coordinates
    num_cols = [tuple(v[:total]) for v in ker]
    num = tuple(tuple(col[i] for col in num_cols) for i in range(total)) if num_cols else tuple(() for _ in range(total))
    # denominator: the relation lattice of the degree-0 groups
    den_cols = []
    for x in objs:
        for i, d in enumerate(f.group[x].factors):
            if d != 0:
                col = [0] * total
                col[offset[x] + i] = d
                den_cols.append(tuple(col))
    den = tuple(tuple(col[i] for col in den_cols) for i in range(total)) if den_cols else tuple(() for _ in range(total))
    if total == 0:
        return TRIVIAL_GROUP
    return FgAbelianGroup(factors=quotient_invariants(num, den))


# ---------------------------------------------------------------------------
# stack cohomology, Cech approximation, invariance harness


def stack_cohomology(
    topology: GrothendieckTopology,
    g: PresheafOfGroupoids,
    f: AbelianPresheaf,
    n_max: int,
    normalized: bool = True,
    max_strings: int = 200_000,
) -> list[FgAbelianGroup]:
    """H^0..H^n_max of the fibred site with abelian coefficients (exact mode).

    Exact mode covers the trivial topology, where the site cohomology is the
    derived limit over the total category; a nontrivial topology is refused
    with a pointer to the Cech approximation.
    """
    if topology.site != g.site:
        raise InputError("topology does not live on the site of the groupoid presheaf")
    if not is_trivial_topology(topology):
        raise RefusedMode(
            "exact stack cohomology is limited to the trivial topology; "
            "use cech_cohomology for a chosen covering sieve"
        )
    fs = grothendieck_construct(g)
    if f.base != fs.total:
        raise InputError("coefficients do not live on the total category")
    cc = cochain_complex(fs.total, f, n_max, normalized=normalized, max_strings=max_strings)
    return cohomology_of_complex(cc)


def cech_cohomology(
    t: GrothendieckTopology,
    u: str,
    s: Sieve,
    f: AbelianPresheaf,
    n_max: int,
    normalized: bool = True,
    max_strings: int = 200_000,
) -> list[FgAbelianGroup]:
    """Cohomology of the full slice subcategory spanned by a covering sieve.

    H^0 is the matching-family group of the sieve; higher degrees give the
    Cech approximation for nontrivial topologies.
    """
    c = t.site
    if s not in t.covering(u):
        raise InputError(f"the sieve is not a covering sieve of {u}")
    if f.base != c:
        raise InputError("coefficients do not live on the site")
    members = sorted(s.members)
    arrows: dict[str, tuple[str, str]] = {}
    underlying: dict[str, str] = {}
    for m1 in members:
        for m2 in members:
            for gamma in c.hom(c.source(m1), c.source(m2)):
                if c.compose(m2, gamma) == m1 and not (
                    m1 == m2 and c.is_identity(gamma)
                ):
                    name = f"({gamma}|{m1}>{m2})"
                    arrows[name] = (m1, m2)
                    underlying[name] = gamma
    compose: dict[tuple[str, str], str] = {}
    for n2, (mb, mc) in arrows.items():
        for n1, (ma, mb1) in arrows.items():
            if mb1 != mb:
                continue
            gamma = c.compose(underlying[n2], underlying[n1])
            if c.is_identity(gamma) and ma == mc:
                compose[(n2, n1)] = f"id_{ma}"
            else:
                compose[(n2, n1)] = f"({gamma}|{ma}>{mc})"
    sub = build_category(members, arrows, compose)
    for m1 in members:
        underlying[f"id_{m1}"] = c.identity[c.source(m1)]
    group = {m: f.group[c.source(m)] for m in members}
    restriction: dict[str, Matrix] = {
        name: f.restriction[underlying[name]] for name in sub.morphisms
    }
    coeffs = AbelianPresheaf(base=sub, group=group, restriction=restriction)
    cc = cochain_complex(sub, coeffs, n_max, normalized=normalized, max_strings=max_strings)
    return cohomology_of_complex(cc)


@dataclass(frozen=True)
class InvarianceReport:
    passed: bool
    degrees: int
    source: tuple[FgAbelianGroup, ...]
    target: tuple[FgAbelianGroup, ...]

    def mismatches(self) -> tuple[int, ...]:
        return tuple(
            n for n in range(self.degrees + 1) if self.source[n] != self.target[n]
        )


def invariance_report(
    m: MorphismOfPresheavesOfCategories,
    f: AbelianPresheaf,
    n_max: int,
    max_strings: int = 200_000,
) -> InvarianceReport:
    """Compare stack cohomology across a sectionwise equivalence (trivial topology).

    Computes the cohomology of the codomain's total category with the given
    coefficients and of the domain's with coefficients pulled back along the
    induced functor; a pass is equality of invariant factors in every degree
    up to n_max.
    """
    if not is_sectionwise_equivalence(m):
        raise RefusedMode(
            "the comparison hypothesis fails: the morphism is not a sectionwise equivalence"
        )
    fs_h = grothendieck_construct(m.codomain)
    if f.base != fs_h.total:
        raise InputError("coefficients do not live on the codomain's total category")
    t = total_functor(m)
    f_pulled = restrict_abelian_along(t, f)
    ch = cohomology_of_complex(
        cochain_complex(fs_h.total, f, n_max, max_strings=max_strings)
    )
    cg = cohomology_of_complex(
        cochain_complex(t.domain, f_pulled, n_max, max_strings=max_strings)
    )
    return InvarianceReport(
        passed=all(ch[n] == cg[n] for n in range(n_max + 1)),
        degrees=n_max,
        source=tuple(cg),
        target=tuple(ch),
    )
