"""Sites fibred over presheaves of categories.

The total category of the construction has objects (U|x) with U an object of
the base site and x an object of the fibre category at U, and morphisms (a|f)
with the twisted composition law (a|f)(g|h) = (a.g | g*(f).h).  Covering
sieves of the fibred site are the sieves containing a preimage of a base
cover.  Presheaves on the total category are equivalent to enriched diagrams,
and this module implements both directions of that equivalence together with
the restriction / left Kan adjunctions between diagram categories.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, ValidationFailure
from .fincat import (
    CONTRAVARIANT,
    COVARIANT,
    FiniteCategory,
    Functor,
    Groupoid,
    SetValuedFunctor,
    colim_set,
    comma_data,
    compose_functors,
    identity_functor,
    is_fully_faithful,
    is_essentially_surjective,
    opposite_functor,
    pair_name,
    validate_category,
    validate_functor,
    validate_groupoid,
    validate_set_functor,
)
from .site import (
    GrothendieckTopology,
    Presheaf,
    Sieve,
    all_sieves,
    make_presheaf,
)


def _well_defined_set(amap: dict, key, val, what: str) -> None:
    if key in amap and amap[key] != val:
        raise ValidationFailure(f"{what}: conflicting images for {key}")
    amap[key] = val


@dataclass(frozen=True)
class PresheafOfCategories:
    """Contravariant assignment of a finite category to each site object.

    restriction[alpha] for alpha: V -> U is a functor value[U] -> value[V];
    functoriality is strict.
    """

    site: FiniteCategory
    value: dict[str, FiniteCategory]
    restriction: dict[str, Functor]


@dataclass(frozen=True)
class PresheafOfGroupoids(PresheafOfCategories):
    """A presheaf of categories whose values are groupoids."""


def validate_presheaf_of_categories(a: PresheafOfCategories) -> list[str]:
    report: list[str] = []
    c = a.site
    bad = validate_category(c)
    if bad:
        return [f"site: {b}" for b in bad]
    for u in c.objects:
        if u not in a.value:
            report.append(f"no fibre category at {u}")
            continue
        bad = validate_category(a.value[u])
        report.extend(f"fibre at {u}: {b}" for b in bad)
    for alpha, (v, u) in c.morphisms.items():
        r = a.restriction.get(alpha)
        if r is None:
            report.append(f"no restriction functor for {alpha}")
            continue
        if r.domain != a.value[u] or r.codomain != a.value[v]:
            report.append(f"restriction along {alpha} has wrong endpoints")
            continue
        report.extend(f"restriction along {alpha}: {b}" for b in validate_functor(r))
    if report:
        return report
    for u in c.objects:
        if a.restriction[c.identity[u]].object_map != {
            x: x for x in a.value[u].objects
        } or a.restriction[c.identity[u]].morphism_map != {
            m: m for m in a.value[u].morphisms
        }:
            report.append(f"restriction along the identity of {u} is not the identity")
    for (g, f), gf in c.composition.items():
        lhs = compose_functors(a.restriction[f], a.restriction[g])
        r = a.restriction[gf]
        if lhs.object_map != r.object_map or lhs.morphism_map != r.morphism_map:
            report.append(f"restriction functoriality fails on ({g}, {f})")
    if isinstance(a, PresheafOfGroupoids):
        for u in c.objects:
            if not isinstance(a.value[u], Groupoid):
                report.append(f"fibre at {u} carries no groupoid structure")
            else:
                report.extend(
                    f"fibre at {u}: {b}" for b in validate_groupoid(a.value[u])
                )
    return report


def constant_presheaf_of_categories(
    site: FiniteCategory, fibre: FiniteCategory
) -> PresheafOfCategories:
    cls = PresheafOfGroupoids if isinstance(fibre, Groupoid) else PresheafOfCategories
    return cls(
        site=site,
        value={u: fibre for u in site.objects},
        restriction={m: identity_functor(fibre) for m in site.morphisms},
    )


def object_presheaf(a: PresheafOfCategories) -> Presheaf:
    """The presheaf of objects of the fibres."""
    return make_presheaf(
        a.site,
        value={u: tuple(sorted(a.value[u].objects)) for u in a.site.objects},
        action={
            m: {
                x: a.restriction[m].on_object(x)
                for x in a.value[a.site.target(m)].objects
            }
            for m in a.site.morphisms
        },
    )


def morphism_presheaf(a: PresheafOfCategories) -> Presheaf:
    """The presheaf of morphisms of the fibres."""
    return make_presheaf(
        a.site,
        value={u: tuple(sorted(a.value[u].morphisms)) for u in a.site.objects},
        action={
            m: {
                f: a.restriction[m].on_morphism(f)
                for f in a.value[a.site.target(m)].morphisms
            }
            for m in a.site.morphisms
        },
    )


# ---------------------------------------------------------------------------
# the construction itself


@dataclass(frozen=True)
class FibredSite:
    """Total category of the construction, with its projection to the base.

    object_pair maps a total object id back to (U, x); morphism_pair maps a
    total morphism id to (alpha, f).  The topology field is attached by
    induced_topology and is None straight out of the construction.
    """

    base: PresheafOfCategories
    total: FiniteCategory
    projection: Functor
    object_pair: dict[str, tuple[str, str]]
    morphism_pair: dict[str, tuple[str, str]]
    topology: GrothendieckTopology | None = None

    def object_id(self, u: str, x: str) -> str:
        return pair_name(u, x)


def grothendieck_construct(a: PresheafOfCategories) -> FibredSite:
    """Build the total category over the presheaf of categories.

    Morphisms (U|x) <- (V|y) are pairs (alpha: V -> U, f: y -> alpha*(x));
    composition follows the twisted law.  Morphism ids are the bare pairs
    (alpha|f) when those determine the morphism, and carry the target fibre
    object as a third component otherwise (restrictions that are not
    injective on objects make the bare pair ambiguous).
    """
    bad = validate_presheaf_of_categories(a)
    if bad:
        raise ValidationFailure("; ".join(bad))
    c = a.site
    objects = []
    object_pair: dict[str, tuple[str, str]] = {}
    for u in sorted(c.objects):
        for x in sorted(a.value[u].objects):
            name = pair_name(u, x)
            objects.append(name)
            object_pair[name] = (u, x)

    # a morphism is determined by (alpha, f, x); detect whether (alpha, f)
    # alone is unambiguous across the whole construction
    triples: list[tuple[str, str, str]] = []
    pair_count: dict[tuple[str, str], int] = {}
    for alpha in sorted(c.morphisms):
        v, u = c.morphisms[alpha]
        r = a.restriction[alpha]
        for x in sorted(a.value[u].objects):
            rx = r.on_object(x)
            for f in a.value[v].into(rx):
                triples.append((alpha, f, x))
                pair_count[(alpha, f)] = pair_count.get((alpha, f), 0) + 1
    ambiguous = any(n > 1 for n in pair_count.values())

    def mor_id(alpha: str, f: str, x: str) -> str:
        if ambiguous:
            return f"({alpha}|{f}|{x})"
        return pair_name(alpha, f)

    morphisms: dict[str, tuple[str, str]] = {}
    morphism_pair: dict[str, tuple[str, str]] = {}
    triple_of: dict[str, tuple[str, str, str]] = {}
    for alpha, f, x in triples:
        v, u = c.morphisms[alpha]
        y = a.value[v].source(f)
        name = mor_id(alpha, f, x)
        morphisms[name] = (pair_name(v, y), pair_name(u, x))
        morphism_pair[name] = (alpha, f)
        triple_of[name] = (alpha, f, x)

    identity = {
        pair_name(u, x): mor_id(c.identity[u], a.value[u].identity[x], x)
        for u in c.objects
        for x in a.value[u].objects
    }

    composition: dict[tuple[str, str], str] = {}
    for m2, (alpha, f, x) in triple_of.items():
        v = c.source(alpha)
        src2 = morphisms[m2][0]
        for m1, (gamma, g, y) in triple_of.items():
            if morphisms[m1][1] != src2:
                continue
            w = c.source(gamma)
            ag = c.compose(alpha, gamma)
            gf = a.restriction[gamma].on_morphism(f)
            composition[(m2, m1)] = mor_id(ag, a.value[w].compose(gf, g), x)

    total = FiniteCategory(
        objects=tuple(objects),
        morphisms=morphisms,
        identity=identity,
        composition=composition,
    )
    projection = Functor(
        domain=total,
        codomain=c,
        object_map={n: p[0] for n, p in object_pair.items()},
        morphism_map={n: p[0] for n, p in morphism_pair.items()},
    )
    return FibredSite(
        base=a,
        total=total,
        projection=projection,
        object_pair=object_pair,
        morphism_pair=morphism_pair,
    )


def preimage_sieve(fs: FibredSite, total_object: str, s: Sieve) -> Sieve:
    """The sieve of all total morphisms whose projection lies in s."""
    u, _x = fs.object_pair[total_object]
    if s.base_object != u:
        raise InputError("sieve does not live under the given total object")
    members = frozenset(
        m
        for m in fs.total.into(total_object)
        if fs.morphism_pair[m][0] in s.members
    )
    return Sieve(base_object=total_object, members=members)


def induced_topology(
    fs: FibredSite,
    base_topology: GrothendieckTopology,
    max_sieves: int = 100_000,
) -> GrothendieckTopology:
    """Topology on the total category generated by preimages of base covers.

    A sieve covers (U|x) exactly when it contains the preimage of some
    covering sieve of U.  (For groupoid fibres every such sieve is itself a
    preimage; with non-invertible fibre morphisms properly larger covering
    sieves occur, and dropping them would break the local character axiom.)
    """
    if base_topology.site != fs.base.site:
        raise InputError("topology does not live on the base site")
    covers: dict[str, frozenset[Sieve]] = {}
    for tot in fs.total.objects:
        u, _x = fs.object_pair[tot]
        gens = [preimage_sieve(fs, tot, s) for s in base_topology.covering(u)]
        out = set()
        for r in all_sieves(fs.total, tot, cap=max_sieves):
            if any(g.members <= r.members for g in gens):
                out.add(r)
        covers[tot] = frozenset(out)
    return GrothendieckTopology(site=fs.total, covers=covers)


def with_topology(fs: FibredSite, t: GrothendieckTopology) -> FibredSite:
    return FibredSite(
        base=fs.base,
        total=fs.total,
        projection=fs.projection,
        object_pair=fs.object_pair,
        morphism_pair=fs.morphism_pair,
        topology=t,
    )


# ---------------------------------------------------------------------------
# enriched diagrams and the equivalence with presheaves on the total category


@dataclass(frozen=True)
class EnrichedSetDiagram:
    """Sectionwise contravariant set diagram on the fibres, tied together by
    site restrictions.

    value is indexed by (U, x); cat_action[(U, gamma)] for gamma: x -> y in
    the fibre at U maps value[(U, y)] to value[(U, x)]; site_action[(alpha, x)]
    for alpha: V -> U maps value[(U, x)] to value[(V, alpha*(x))].
    """

    base: PresheafOfCategories
    value: dict[tuple[str, str], tuple[str, ...]]
    cat_action: dict[tuple[str, str], dict[str, str]]
    site_action: dict[tuple[str, str], dict[str, str]]


def validate_enriched(x: EnrichedSetDiagram) -> list[str]:
    a = x.base
    c = a.site
    report: list[str] = []
    for u in c.objects:
        fib = a.value[u]
        for ob in fib.objects:
            if (u, ob) not in x.value:
                report.append(f"no value at ({u}, {ob})")
        for gamma in fib.morphisms:
            if (u, gamma) not in x.cat_action:
                report.append(f"no fibre action for ({u}, {gamma})")
    for alpha, (v, u) in c.morphisms.items():
        for ob in a.value[u].objects:
            if (alpha, ob) not in x.site_action:
                report.append(f"no site action for ({alpha}, {ob})")
    if report:
        return report
    for u in c.objects:
        fib = a.value[u]
        # each section is a contravariant set functor on the fibre
        section = SetValuedFunctor(
            base=fib,
            variance=CONTRAVARIANT,
            value={ob: x.value[(u, ob)] for ob in fib.objects},
            action={g: x.cat_action[(u, g)] for g in fib.morphisms},
        )
        report.extend(f"section at {u}: {b}" for b in validate_set_functor(section))
    for alpha, (v, u) in c.morphisms.items():
        r = a.restriction[alpha]
        for ob in a.value[u].objects:
            amap = x.site_action[(alpha, ob)]
            if set(amap) != set(x.value[(u, ob)]):
                report.append(f"site action for ({alpha}, {ob}) has wrong domain")
                continue
            if not set(amap.values()) <= set(x.value[(v, r.on_object(ob))]):
                report.append(f"site action for ({alpha}, {ob}) has wrong codomain")
    if report:
        return report
    # strict functoriality of the site actions
    for u in c.objects:
        for ob in a.value[u].objects:
            amap = x.site_action[(c.identity[u], ob)]
            if any(amap[e] != e for e in x.value[(u, ob)]):
                report.append(f"identity site action at ({u}, {ob}) not the identity")
    for (g, f), gf in c.composition.items():
        u = c.target(g)
        rg = x.base.restriction[g]
        for ob in a.value[u].objects:
            one = x.site_action[(gf, ob)]
            g_then_f = {
                e: x.site_action[(f, rg.on_object(ob))][x.site_action[(g, ob)][e]]
                for e in x.value[(u, ob)]
            }
            if one != g_then_f:
                report.append(f"site functoriality fails on ({g}, {f}) at {ob}")
    # the commuting square tying fibre actions to site actions
    for alpha, (v, u) in c.morphisms.items():
        r = a.restriction[alpha]
        for gamma, (xx, yy) in a.value[u].morphisms.items():
            lhs = {
                e: x.site_action[(alpha, xx)][x.cat_action[(u, gamma)][e]]
                for e in x.value[(u, yy)]
            }
            rhs = {
                e: x.cat_action[(v, r.on_morphism(gamma))][x.site_action[(alpha, yy)][e]]
                for e in x.value[(u, yy)]
            }
            if lhs != rhs:
                report.append(
                    f"enriched square fails for {alpha} and {gamma}"
                )
    return report


def presheaf_to_enriched(fs: FibredSite, f: Presheaf) -> EnrichedSetDiagram:
    """Read a presheaf on the total category as an enriched diagram.

    The fibre action of gamma is the action of (1|gamma); the site action of
    alpha at x is the action of (alpha|1) into (U|x).
    """
    if f.base != fs.total:
        raise InputError("presheaf does not live on the total category")
    bad = validate_set_functor(f)
    if bad:
        raise ValidationFailure("; ".join(bad))
    a = fs.base
    c = a.site
    rev = {(alpha_f[0], alpha_f[1], fs.object_pair[fs.total.target(m)][1]): m
           for m, alpha_f in fs.morphism_pair.items()}

    def total_mor(alpha: str, g: str, x: str) -> str:
        return rev[(alpha, g, x)]

    value = {
        fs.object_pair[n]: tuple(f.value[n]) for n in fs.total.objects
    }
    cat_action = {}
    for u in c.objects:
        fib = a.value[u]
        for gamma, (xx, yy) in fib.morphisms.items():
            m = total_mor(c.identity[u], gamma, yy)
            cat_action[(u, gamma)] = dict(f.action[m])
    site_action = {}
    for alpha, (v, u) in c.morphisms.items():
        r = a.restriction[alpha]
        for x in a.value[u].objects:
            m = total_mor(alpha, a.value[v].identity[r.on_object(x)], x)
            site_action[(alpha, x)] = dict(f.action[m])
    return EnrichedSetDiagram(
        base=a, value=value, cat_action=cat_action, site_action=site_action
    )


def enriched_to_presheaf(fs: FibredSite, x: EnrichedSetDiagram) -> Presheaf:
    """Reassemble the presheaf; (alpha|gamma) acts as (1|gamma) after (alpha|1)."""
    if x.base != fs.base:
        raise InputError("diagram does not live over the construction's base")
    bad = validate_enriched(x)
    if bad:
        raise ValidationFailure("; ".join(bad))
    a = fs.base
    c = a.site
    value = {n: tuple(x.value[fs.object_pair[n]]) for n in fs.total.objects}
    action: dict[str, dict[str, str]] = {}
    for m in fs.total.morphisms:
        alpha, gamma = fs.morphism_pair[m]
        v = c.source(alpha)
        u, ob = fs.object_pair[fs.total.target(m)]
        site = x.site_action[(alpha, ob)]
        fib = x.cat_action[(v, gamma)]
        action[m] = {e: fib[site[e]] for e in x.value[(u, ob)]}
    return make_presheaf(fs.total, value, action)


def presheaf_enriched_roundtrip(
    fs: FibredSite, x: Presheaf | EnrichedSetDiagram
) -> Presheaf | EnrichedSetDiagram:
    """Convert between the two representations (each inverse to the other)."""
    if isinstance(x, EnrichedSetDiagram):
        return enriched_to_presheaf(fs, x)
    return presheaf_to_enriched(fs, x)


def constant_enriched_diagram(
    a: PresheafOfCategories, elems: tuple[str, ...] = ("*",)
) -> EnrichedSetDiagram:
    ident = {e: e for e in elems}
    return EnrichedSetDiagram(
        base=a,
        value={(u, x): tuple(elems) for u in a.site.objects for x in a.value[u].objects},
        cat_action={
            (u, g): dict(ident) for u in a.site.objects for g in a.value[u].morphisms
        },
        site_action={
            (alpha, x): dict(ident)
            for alpha in a.site.morphisms
            for x in a.value[a.site.target(alpha)].objects
        },
    )


# ---------------------------------------------------------------------------
# over-presheaves and the object-restriction adjunction


@dataclass(frozen=True)
class OverPresheaf:
    """A presheaf together with a structure map into a base presheaf."""

    total: Presheaf
    base: Presheaf
    over: dict[str, dict[str, str]]  # per site object: element -> base element


def validate_over_presheaf(p: OverPresheaf) -> list[str]:
    report = validate_set_functor(p.total)
    report += validate_set_functor(p.base)
    if report:
        return report
    c = p.total.base
    if p.base.base != c:
        return ["total and base live on different sites"]
    for u in c.objects:
        fib = p.over.get(u)
        if fib is None or set(fib) != set(p.total.value[u]):
            report.append(f"structure map at {u} has wrong domain")
            continue
        if not set(fib.values()) <= set(p.base.value[u]):
            report.append(f"structure map at {u} has wrong codomain")
    if report:
        return report
    for m, (v, u) in c.morphisms.items():
        for e in p.total.value[u]:
            if p.over[v][p.total.act(m, e)] != p.base.act(m, p.over[u][e]):
                report.append(f"structure map not natural along {m}")
    return report


def object_restriction(x: EnrichedSetDiagram) -> OverPresheaf:
    """Forget the fibre actions, keeping only the object-indexed sets.

    The result is the over-object form: sections at U are the disjoint union
    of the value sets over the objects of the fibre at U, mapping down to the
    presheaf of fibre objects.
    """
    a = x.base
    c = a.site
    base = object_presheaf(a)
    value = {
        u: tuple(
            pair_name(ob, e)
            for ob in sorted(a.value[u].objects)
            for e in x.value[(u, ob)]
        )
        for u in c.objects
    }
    action: dict[str, dict[str, str]] = {}
    for alpha, (v, u) in c.morphisms.items():
        r = a.restriction[alpha]
        amap = {}
        for ob in a.value[u].objects:
            for e in x.value[(u, ob)]:
                amap[pair_name(ob, e)] = pair_name(
                    r.on_object(ob), x.site_action[(alpha, ob)][e]
                )
        action[alpha] = amap
    total = make_presheaf(c, value, action)
    over = {
        u: {pair_name(ob, e): ob for ob in a.value[u].objects for e in x.value[(u, ob)]}
        for u in c.objects
    }
    return OverPresheaf(total=total, base=base, over=over)


def free_enrichment(a: PresheafOfCategories, x0: OverPresheaf) -> EnrichedSetDiagram:
    """Left adjoint of object_restriction.

    The value at (U, y) consists of pairs (e, f) where f is a fibre morphism
    out of y and e an element of x0 sitting over the target of f; fibre
    morphisms act by precomposition, site restrictions componentwise.  The
    underlying object-presheaf is the pullback of sections against fibre
    morphisms, placed over the source object.
    """
    c = a.site
    if x0.base.value != object_presheaf(a).value:
        raise InputError("over-presheaf does not sit over the fibre objects")
    value: dict[tuple[str, str], tuple[str, ...]] = {}
    for u in c.objects:
        fib = a.value[u]
        for y in fib.objects:
            elems = []
            for f in sorted(fib.out_of(y)):
                tgt = fib.target(f)
                for e in x0.total.value[u]:
                    if x0.over[u][e] == tgt:
                        elems.append(pair_name(e, f))
            value[(u, y)] = tuple(elems)
    cat_action: dict[tuple[str, str], dict[str, str]] = {}
    for u in c.objects:
        fib = a.value[u]
        for gamma, (yy, zz) in fib.morphisms.items():
            amap = {}
            for token in value[(u, zz)]:
                e, f = _split_pair(token)
                amap[token] = pair_name(e, fib.compose(f, gamma))
            cat_action[(u, gamma)] = amap
    site_action: dict[tuple[str, str], dict[str, str]] = {}
    for alpha, (v, u) in c.morphisms.items():
        r = a.restriction[alpha]
        for y in a.value[u].objects:
            amap = {}
            for token in value[(u, y)]:
                e, f = _split_pair(token)
                amap[token] = pair_name(x0.total.act(alpha, e), r.on_morphism(f))
            site_action[(alpha, y)] = amap
    return EnrichedSetDiagram(
        base=a, value=value, cat_action=cat_action, site_action=site_action
    )


def _split_pair(token: str) -> tuple[str, str]:
    if not (token.startswith("(") and token.endswith(")")):
        raise InputError(f"not a pair token: {token}")
    depth = 0
    for i, ch in enumerate(token):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|" and depth == 1:
            return token[1:i], token[i + 1 : -1]
    raise InputError(f"not a pair token: {token}")


def enrichment_unit(a: PresheafOfCategories, x0: OverPresheaf) -> dict[str, dict[str, str]]:
    """Unit x0 -> object_restriction(free_enrichment(x0)), per site object."""
    out: dict[str, dict[str, str]] = {}
    for u in a.site.objects:
        fib = a.value[u]
        out[u] = {
            e: pair_name(x0.over[u][e], pair_name(e, fib.identity[x0.over[u][e]]))
            for e in x0.total.value[u]
        }
    return out


def enrichment_counit(x: EnrichedSetDiagram) -> dict[tuple[str, str], dict[str, str]]:
    """Counit free_enrichment(object_restriction(x)) -> x, per (U, y)."""
    a = x.base
    out: dict[tuple[str, str], dict[str, str]] = {}
    for u in a.site.objects:
        fib = a.value[u]
        for y in fib.objects:
            amap = {}
            for f in fib.out_of(y):
                tgt = fib.target(f)
                for e in x.value[(u, tgt)]:
                    amap[pair_name(pair_name(tgt, e), f)] = x.cat_action[(u, f)][e]
            out[(u, y)] = amap
    return out


# ---------------------------------------------------------------------------
# morphisms of presheaves of categories; restriction and left Kan extension


@dataclass(frozen=True)
class MorphismOfPresheavesOfCategories:
    domain: PresheafOfCategories
    codomain: PresheafOfCategories
    components: dict[str, Functor]

    def component(self, u: str) -> Functor:
        return self.components[u]


def validate_morphism_of_presheaves(m: MorphismOfPresheavesOfCategories) -> list[str]:
    report: list[str] = []
    if m.domain.site != m.codomain.site:
        return ["domain and codomain live on different sites"]
    c = m.domain.site
    for u in c.objects:
        comp = m.components.get(u)
        if comp is None:
            report.append(f"no component at {u}")
            continue
        if comp.domain != m.domain.value[u] or comp.codomain != m.codomain.value[u]:
            report.append(f"component at {u} has wrong endpoints")
            continue
        report.extend(f"component at {u}: {b}" for b in validate_functor(comp))
    if report:
        return report
    for alpha, (v, u) in c.morphisms.items():
        lhs = compose_functors(m.components[v], m.domain.restriction[alpha])
        rhs = compose_functors(m.codomain.restriction[alpha], m.components[u])
        if lhs.object_map != rhs.object_map or lhs.morphism_map != rhs.morphism_map:
            report.append(f"naturality square fails along {alpha}")
    return report


def identity_morphism_of_presheaves(a: PresheafOfCategories) -> MorphismOfPresheavesOfCategories:
    return MorphismOfPresheavesOfCategories(
        domain=a,
        codomain=a,
        components={u: identity_functor(a.value[u]) for u in a.site.objects},
    )


def restrict_along(
    m: MorphismOfPresheavesOfCategories, x: EnrichedSetDiagram
) -> EnrichedSetDiagram:
    """Pull an enriched diagram on the codomain back along the morphism."""
    if x.base != m.codomain:
        raise InputError("diagram does not live on the codomain")
    a, b = m.domain, m.codomain
    c = a.site
    value = {
        (u, ob): tuple(x.value[(u, m.components[u].on_object(ob))])
        for u in c.objects
        for ob in a.value[u].objects
    }
    cat_action = {
        (u, g): dict(x.cat_action[(u, m.components[u].on_morphism(g))])
        for u in c.objects
        for g in a.value[u].morphisms
    }
    site_action = {
        (alpha, ob): dict(x.site_action[(alpha, m.components[c.target(alpha)].on_object(ob))])
        for alpha in c.morphisms
        for ob in a.value[c.target(alpha)].objects
    }
    return EnrichedSetDiagram(
        base=a, value=value, cat_action=cat_action, site_action=site_action
    )


def left_kan_along(
    m: MorphismOfPresheavesOfCategories, y: EnrichedSetDiagram
) -> EnrichedSetDiagram:
    """Left Kan extension of an enriched diagram along a morphism.

    Computed pointwise per section: the value at (U, b) is the colimit over
    the comma category of the opposed sectionwise functor at b.  Site actions
    carry colimit classes along the restrictions.
    """
    if y.base != m.domain:
        raise InputError("diagram does not live on the domain")
    a, b = m.domain, m.codomain
    c = a.site
    # per section: comma categories of m(U)^op over each object, and the
    # colimits of y pulled back to them
    section_data: dict[str, dict[str, tuple]] = {}
    for u in c.objects:
        op = opposite_functor(m.components[u])
        per_object: dict[str, tuple] = {}
        for ob in b.value[u].objects:
            cd = comma_data(op, ob)
            diagram = SetValuedFunctor(
                base=cd.category,
                variance=COVARIANT,
                value={
                    n: y.value[(u, cd.object_pair[n][0])]
                    for n in cd.category.objects
                },
                action={
                    mm: dict(y.cat_action[(u, cd.morphism_under[mm])])
                    for mm in cd.category.morphisms
                },
            )
            per_object[ob] = (cd, colim_set(diagram))
        section_data[u] = per_object

    value = {
        (u, ob): section_data[u][ob][1].elements
        for u in c.objects
        for ob in b.value[u].objects
    }

    def classify(u: str, ob: str, x_ob: str, h: str, e: str) -> str:
        cd, cocone = section_data[u][ob]
        return cocone.leg[pair_name(x_ob, h)][e]

    cat_action: dict[tuple[str, str], dict[str, str]] = {}
    for u in c.objects:
        fibb = b.value[u]
        for delta, (b1, b2) in fibb.morphisms.items():
            # contravariant: classes over b2 move to classes over b1 by
            # extending the comma anchor h: b2 -> m(x) with delta: b1 -> b2
            cd2, cocone2 = section_data[u][b2]
            amap: dict[str, str] = {}
            for n, (x_ob, h) in cd2.object_pair.items():
                h_new = fibb.compose(h, delta)
                for e in y.value[(u, x_ob)]:
                    _well_defined_set(
                        amap,
                        cocone2.leg[n][e],
                        classify(u, b1, x_ob, h_new, e),
                        "left Kan fibre action",
                    )
            cat_action[(u, delta)] = amap
    site_action: dict[tuple[str, str], dict[str, str]] = {}
    for alpha, (v, u) in c.morphisms.items():
        ra = a.restriction[alpha]
        rb = b.restriction[alpha]
        for ob in b.value[u].objects:
            cd, cocone = section_data[u][ob]
            amap = {}
            for n, (x_ob, h) in cd.object_pair.items():
                for e in y.value[(u, x_ob)]:
                    _well_defined_set(
                        amap,
                        cocone.leg[n][e],
                        classify(
                            v,
                            rb.on_object(ob),
                            ra.on_object(x_ob),
                            rb.on_morphism(h),
                            y.site_action[(alpha, x_ob)][e],
                        ),
                        "left Kan site action",
                    )
            site_action[(alpha, ob)] = amap
    return EnrichedSetDiagram(
        base=b, value=value, cat_action=cat_action, site_action=site_action
    )


def kan_unit(
    m: MorphismOfPresheavesOfCategories, y: EnrichedSetDiagram
) -> dict[tuple[str, str], dict[str, str]]:
    """Unit y -> restrict_along(m, left_kan_along(m, y))."""
    a, b = m.domain, m.codomain
    out: dict[tuple[str, str], dict[str, str]] = {}
    for u in a.site.objects:
        comp = m.components[u]
        for ob in a.value[u].objects:
            mob = comp.on_object(ob)
            ident = b.value[u].identity[mob]
            # e goes to the class of ((ob, id), e) in the colimit at m(ob)
            out[(u, ob)] = {
                e: _kan_classify(m, y, u, mob, ob, ident, e)
                for e in y.value[(u, ob)]
            }
    return out


def _kan_classify(m, y, u, target_ob, x_ob, h, e):
    # recompute the comma/colimit bookkeeping for the class of ((x_ob, h), e)
    op = opposite_functor(m.components[u])
    cd = comma_data(op, target_ob)
    diagram = SetValuedFunctor(
        base=cd.category,
        variance=COVARIANT,
        value={n: y.value[(u, cd.object_pair[n][0])] for n in cd.category.objects},
        action={mm: dict(y.cat_action[(u, cd.morphism_under[mm])]) for mm in cd.category.morphisms},
    )
    return colim_set(diagram).leg[pair_name(x_ob, h)][e]


def kan_counit(
    m: MorphismOfPresheavesOfCategories, x: EnrichedSetDiagram
) -> dict[tuple[str, str], dict[str, str]]:
    """Counit left_kan_along(m, restrict_along(m, x)) -> x."""
    a, b = m.domain, m.codomain
    y = restrict_along(m, x)
    out: dict[tuple[str, str], dict[str, str]] = {}
    for u in a.site.objects:
        op = opposite_functor(m.components[u])
        for ob in b.value[u].objects:
            cd = comma_data(op, ob)
            diagram = SetValuedFunctor(
                base=cd.category,
                variance=COVARIANT,
                value={n: y.value[(u, cd.object_pair[n][0])] for n in cd.category.objects},
                action={mm: dict(y.cat_action[(u, cd.morphism_under[mm])]) for mm in cd.category.morphisms},
            )
            cocone = colim_set(diagram)
            amap: dict[str, str] = {}
            for n, (x_ob, h) in cd.object_pair.items():
                # h: ob -> m(x_ob) in the fibre; x's own action brings the
                # element down from m(x_ob) to ob
                for e in y.value[(u, x_ob)]:
                    _well_defined_set(
                        amap, cocone.leg[n][e], x.cat_action[(u, h)][e], "Kan counit"
                    )
            out[(u, ob)] = amap
    return out


def total_functor(m: MorphismOfPresheavesOfCategories) -> Functor:
    """The induced functor between the total categories of the construction."""
    bad = validate_morphism_of_presheaves(m)
    if bad:
        raise ValidationFailure("; ".join(bad))
    fs_a = grothendieck_construct(m.domain)
    fs_b = grothendieck_construct(m.codomain)
    c = m.domain.site
    rev = {
        (p[0], p[1], fs_b.object_pair[fs_b.total.target(n)][1]): n
        for n, p in fs_b.morphism_pair.items()
    }
    object_map = {}
    for n, (u, x) in fs_a.object_pair.items():
        object_map[n] = pair_name(u, m.components[u].on_object(x))
    morphism_map = {}
    for n, (alpha, f) in fs_a.morphism_pair.items():
        v, u = c.morphisms[alpha]
        x = fs_a.object_pair[fs_a.total.target(n)][1]
        morphism_map[n] = rev[
            (alpha, m.components[v].on_morphism(f), m.components[u].on_object(x))
        ]
    return Functor(
        domain=fs_a.total,
        codomain=fs_b.total,
        object_map=object_map,
        morphism_map=morphism_map,
    )


def is_sectionwise_equivalence(m: MorphismOfPresheavesOfCategories) -> bool:
    """Essential surjectivity plus full faithfulness in every section."""
    return all(
        is_fully_faithful(m.components[u]) and is_essentially_surjective(m.components[u])
        for u in m.domain.site.objects
    )


# ---------------------------------------------------------------------------
# translation presheaves of categories built from diagrams of presheaves


@dataclass(frozen=True)
class PresheafDiagram:
    """An index-category-shaped diagram of presheaves with natural maps."""

    index: FiniteCategory
    value: dict[str, Presheaf]
    map: dict[str, dict[str, dict[str, str]]]  # theta -> per site object -> elements


def validate_presheaf_diagram(d: PresheafDiagram) -> list[str]:
    report = validate_category(d.index)
    if report:
        return [f"index: {b}" for b in report]
    base = next(iter(d.value.values())).base
    for i, p in d.value.items():
        if p.base != base:
            return [f"presheaf at {i} lives on a different site"]
        report.extend(f"presheaf at {i}: {b}" for b in validate_set_functor(p))
    if report:
        return report
    for theta, (i, j) in d.index.morphisms.items():
        comp = d.map.get(theta)
        if comp is None:
            report.append(f"no component for {theta}")
            continue
        for u in base.objects:
            fn = comp.get(u)
            if fn is None or set(fn) != set(d.value[i].value[u]):
                report.append(f"component of {theta} at {u} has wrong domain")
                continue
            if not set(fn.values()) <= set(d.value[j].value[u]):
                report.append(f"component of {theta} at {u} has wrong codomain")
    if report:
        return report
    for theta, (i, j) in d.index.morphisms.items():
        for alpha, (v, u) in base.morphisms.items():
            for e in d.value[i].value[u]:
                if d.map[theta][v][d.value[i].act(alpha, e)] != d.value[j].act(
                    alpha, d.map[theta][u][e]
                ):
                    report.append(f"naturality of {theta} fails along {alpha}")
    for i in d.index.objects:
        ident = d.index.identity[i]
        for u in base.objects:
            if any(d.map[ident][u][e] != e for e in d.value[i].value[u]):
                report.append(f"identity component of {ident} is not the identity")
    for (g, f), gf in d.index.composition.items():
        for u in base.objects:
            src = d.index.source(f)
            for e in d.value[src].value[u]:
                if d.map[gf][u][e] != d.map[g][u][d.map[f][u][e]]:
                    report.append(f"diagram functoriality fails on ({g}, {f})")
    return report


def make_translation_presheaf(d: PresheafDiagram) -> PresheafOfCategories:
    """The presheaf of translation categories of a diagram of presheaves.

    Sectionwise, objects are pairs (i|x) with x a section of the i-th
    presheaf; a morphism (theta|x): (i|x) -> (j|x') exists when the diagram
    map carries x to x'.
    """
    bad = validate_presheaf_diagram(d)
    if bad:
        raise ValidationFailure("; ".join(bad))
    base = next(iter(d.value.values())).base
    idx = d.index
    fibres: dict[str, FiniteCategory] = {}
    for u in base.objects:
        objs = [
            pair_name(i, x) for i in sorted(idx.objects) for x in d.value[i].value[u]
        ]
        morphisms: dict[str, tuple[str, str]] = {}
        for theta, (i, j) in idx.morphisms.items():
            for x in d.value[i].value[u]:
                morphisms[pair_name(theta, x)] = (
                    pair_name(i, x),
                    pair_name(j, d.map[theta][u][x]),
                )
        identity = {
            pair_name(i, x): pair_name(idx.identity[i], x)
            for i in idx.objects
            for x in d.value[i].value[u]
        }
        composition = {}
        for t2, (j, k) in idx.morphisms.items():
            for t1, (i, j1) in idx.morphisms.items():
                if j1 != j:
                    continue
                for x in d.value[i].value[u]:
                    x1 = d.map[t1][u][x]
                    composition[(pair_name(t2, x1), pair_name(t1, x))] = pair_name(
                        idx.compose(t2, t1), x
                    )
        fibres[u] = FiniteCategory(
            objects=tuple(objs),
            morphisms=morphisms,
            identity=identity,
            composition=composition,
        )
    restriction: dict[str, Functor] = {}
    for alpha, (v, u) in base.morphisms.items():
        object_map = {}
        morphism_map = {}
        for i in idx.objects:
            for x in d.value[i].value[u]:
                object_map[pair_name(i, x)] = pair_name(i, d.value[i].act(alpha, x))
        for theta, (i, j) in idx.morphisms.items():
            for x in d.value[i].value[u]:
                morphism_map[pair_name(theta, x)] = pair_name(
                    theta, d.value[i].act(alpha, x)
                )
        restriction[alpha] = Functor(
            domain=fibres[u],
            codomain=fibres[v],
            object_map=object_map,
            morphism_map=morphism_map,
        )
    return PresheafOfCategories(site=base, value=fibres, restriction=restriction)
