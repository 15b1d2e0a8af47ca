"""Finite categories with explicit composition tables, and their basic calculus.

Objects and morphisms are opaque string identifiers; equality everywhere is
identifier equality.  Composition is stored as a total table, so every law is
exhaustively checkable.  All values are immutable after construction and all
operations are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import InputError


@dataclass(frozen=True)
class FiniteCategory:
    """A finite category as explicit tables.

    morphisms maps a morphism name to its (source, target) pair; composition
    maps every composable pair (g, f) with target(f) == source(g) to g after f.
    """

    objects: tuple[str, ...]
    morphisms: dict[str, tuple[str, str]]
    identity: dict[str, str]
    composition: dict[tuple[str, str], str]

    def source(self, m: str) -> str:
        return self.morphisms[m][0]

    def target(self, m: str) -> str:
        return self.morphisms[m][1]

    def compose(self, g: str, f: str) -> str:
        """g after f."""
        return self.composition[(g, f)]

    @cached_property
    def _identity_set(self) -> frozenset[str]:
        return frozenset(self.identity.values())

    def is_identity(self, m: str) -> bool:
        return m in self._identity_set

    @cached_property
    def _into(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {u: [] for u in self.objects}
        for m in sorted(self.morphisms):
            out[self.target(m)].append(m)
        return {u: tuple(v) for u, v in out.items()}

    @cached_property
    def _out_of(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {u: [] for u in self.objects}
        for m in sorted(self.morphisms):
            out[self.source(m)].append(m)
        return {u: tuple(v) for u, v in out.items()}

    def into(self, u: str) -> tuple[str, ...]:
        """All morphisms with target u."""
        return self._into[u]

    def out_of(self, u: str) -> tuple[str, ...]:
        return self._out_of[u]

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return tuple(m for m in self.into(b) if self.source(m) == a)

    def strings(self, n: int, nondegenerate: bool = False) -> Iterator[tuple[str, ...]]:
        """Composable strings of n morphisms, as tuples read left to right.

        Degree 0 strings are (object,) tuples.  With nondegenerate=True,
        strings containing an identity are skipped.
        """
        if n == 0:
            for u in sorted(self.objects):
                yield (u,)
            return
        pool = sorted(self.morphisms)
        if nondegenerate:
            pool = [m for m in pool if not self.is_identity(m)]

        def extend(prefix: tuple[str, ...], k: int) -> Iterator[tuple[str, ...]]:
            if k == 0:
                yield prefix
                return
            tail = self.target(prefix[-1])
            for m in pool:
                if self.source(m) == tail:
                    yield from extend(prefix + (m,), k - 1)

        for m in pool:
            yield from extend((m,), n - 1)


def validate_category(c: FiniteCategory) -> list[str]:
    """Report of violated category laws; empty iff c is a valid category."""
    report: list[str] = []
    objset = set(c.objects)
    if len(c.objects) != len(objset):
        report.append("duplicate object identifiers")
    for m, (s, t) in c.morphisms.items():
        if s not in objset or t not in objset:
            report.append(f"morphism {m} has unknown endpoint")
    for u in c.objects:
        i = c.identity.get(u)
        if i is None or i not in c.morphisms:
            report.append(f"object {u} has no identity morphism")
        elif c.morphisms[i] != (u, u):
            report.append(f"identity of {u} is not an endomorphism of {u}")
    # totality and typing of the composition table
    for g, f in itertools.product(c.morphisms, repeat=2):
        composable = c.target(f) == c.source(g)
        present = (g, f) in c.composition
        if composable and not present:
            report.append(f"missing composite {g}.{f}")
        elif not composable and present:
            report.append(f"spurious composite {g}.{f}")
        elif present:
            h = c.composition[(g, f)]
            if h not in c.morphisms:
                report.append(f"composite {g}.{f} is not a morphism")
            elif c.morphisms[h] != (c.source(f), c.target(g)):
                report.append(f"composite {g}.{f} has wrong endpoints")
    if report:
        return report
    # unit laws
    for m, (s, t) in c.morphisms.items():
        if c.compose(m, c.identity[s]) != m:
            report.append(f"right unit law fails for {m}")
        if c.compose(c.identity[t], m) != m:
            report.append(f"left unit law fails for {m}")
    # associativity on every composable triple
    for f in c.morphisms:
        for g in c.out_of(c.target(f)):
            gf = c.compose(g, f)
            for h in c.out_of(c.target(g)):
                if c.compose(h, gf) != c.compose(c.compose(h, g), f):
                    report.append(f"associativity fails on ({h}, {g}, {f})")
    return report


@dataclass(frozen=True)
class Groupoid(FiniteCategory):
    """A finite category in which every morphism has a recorded inverse."""

    inverse: dict[str, str] = field(default_factory=dict)


def validate_groupoid(g: Groupoid) -> list[str]:
    report = validate_category(g)
    for m in g.morphisms:
        inv = g.inverse.get(m)
        if inv is None or inv not in g.morphisms:
            report.append(f"no inverse recorded for {m}")
            continue
        s, t = g.morphisms[m]
        if g.morphisms[inv] != (t, s):
            report.append(f"inverse of {m} has wrong endpoints")
            continue
        if g.compose(inv, m) != g.identity[s] or g.compose(m, inv) != g.identity[t]:
            report.append(f"inverse law fails for {m}")
    return report


def is_isomorphism(c: FiniteCategory, m: str) -> bool:
    s, t = c.morphisms[m]
    for w in c.hom(t, s):
        if c.compose(w, m) == c.identity[s] and c.compose(m, w) == c.identity[t]:
            return True
    return False


@dataclass(frozen=True)
class Functor:
    domain: FiniteCategory
    codomain: FiniteCategory
    object_map: dict[str, str]
    morphism_map: dict[str, str]

    def on_object(self, x: str) -> str:
        return self.object_map[x]

    def on_morphism(self, m: str) -> str:
        return self.morphism_map[m]


def validate_functor(f: Functor) -> list[str]:
    report: list[str] = []
    dom, cod = f.domain, f.codomain
    for x in dom.objects:
        if f.object_map.get(x) not in set(cod.objects):
            report.append(f"object {x} not mapped into codomain")
    for m, (s, t) in dom.morphisms.items():
        fm = f.morphism_map.get(m)
        if fm is None or fm not in cod.morphisms:
            report.append(f"morphism {m} not mapped into codomain")
            continue
        if cod.morphisms[fm] != (f.object_map.get(s), f.object_map.get(t)):
            report.append(f"image of {m} has wrong endpoints")
    if report:
        return report
    for x in dom.objects:
        if f.on_morphism(dom.identity[x]) != cod.identity[f.on_object(x)]:
            report.append(f"identity of {x} not preserved")
    for (g, h), gh in dom.composition.items():
        if cod.compose(f.on_morphism(g), f.on_morphism(h)) != f.on_morphism(gh):
            report.append(f"composition not preserved on ({g}, {h})")
    return report


def identity_functor(c: FiniteCategory) -> Functor:
    return Functor(
        domain=c,
        codomain=c,
        object_map={x: x for x in c.objects},
        morphism_map={m: m for m in c.morphisms},
    )


def compose_functors(g: Functor, f: Functor) -> Functor:
    if g.domain != f.codomain:
        raise InputError("functors not composable")
    return Functor(
        domain=f.domain,
        codomain=g.codomain,
        object_map={x: g.object_map[f.object_map[x]] for x in f.domain.objects},
        morphism_map={m: g.morphism_map[f.morphism_map[m]] for m in f.domain.morphisms},
    )


def opposite(c: FiniteCategory) -> FiniteCategory:
    """Same identifiers, sources and targets swapped, composition transposed."""
    morphisms = {m: (t, s) for m, (s, t) in c.morphisms.items()}
    composition = {(g, f): h for (f, g), h in c.composition.items()}
    if isinstance(c, Groupoid):
        return Groupoid(
            objects=c.objects,
            morphisms=morphisms,
            identity=dict(c.identity),
            composition=composition,
            inverse=dict(c.inverse),
        )
    return FiniteCategory(
        objects=c.objects,
        morphisms=morphisms,
        identity=dict(c.identity),
        composition=composition,
    )


def opposite_functor(f: Functor) -> Functor:
    return Functor(
        domain=opposite(f.domain),
        codomain=opposite(f.codomain),
        object_map=dict(f.object_map),
        morphism_map=dict(f.morphism_map),
    )


# ---------------------------------------------------------------------------
# comma categories


@dataclass(frozen=True)
class CommaCategory:
    """The category f/y together with its bookkeeping maps.

    object_pair maps a comma object id to (x, h: f(x) -> y); morphism_under
    maps a comma morphism id to the underlying domain morphism.
    """

    category: FiniteCategory
    object_pair: dict[str, tuple[str, str]]
    morphism_under: dict[str, str]
    projection: Functor


def comma_data(f: Functor, y: str) -> CommaCategory:
    cod = f.codomain
    dom = f.domain
    if y not in set(cod.objects):
        raise InputError(f"object {y} not in codomain")
    obj_of: dict[tuple[str, str], str] = {}
    for x in sorted(dom.objects):
        for h in cod.hom(f.on_object(x), y):
            obj_of[(x, h)] = f"({x}|{h})"
    morphisms: dict[str, tuple[str, str]] = {}
    under: dict[str, str] = {}
    mor_of: dict[tuple[str, str, str], str] = {}
    for (x, h), a in sorted(obj_of.items()):
        for (x2, h2), b in sorted(obj_of.items()):
            for m in dom.hom(x, x2):
                if cod.compose(h2, f.on_morphism(m)) == h:
                    name = f"({m}|{h}>{h2})"
                    morphisms[name] = (a, b)
                    under[name] = m
                    mor_of[(m, a, b)] = name
    identity = {
        obj_of[(x, h)]: mor_of[(dom.identity[x], obj_of[(x, h)], obj_of[(x, h)])]
        for (x, h) in obj_of
    }
    composition: dict[tuple[str, str], str] = {}
    for n2, (b, c_) in morphisms.items():
        for n1, (a, b1) in morphisms.items():
            if b1 == b:
                composition[(n2, n1)] = mor_of[(dom.compose(under[n2], under[n1]), a, c_)]
    cat = FiniteCategory(
        objects=tuple(sorted(obj_of.values())),
        morphisms=morphisms,
        identity=identity,
        composition=composition,
    )
    proj = Functor(
        domain=cat,
        codomain=dom,
        object_map={a: x for (x, h), a in obj_of.items()},
        morphism_map=dict(under),
    )
    return CommaCategory(
        category=cat, object_pair={a: (x, h) for (x, h), a in obj_of.items()},
        morphism_under=under, projection=proj,
    )


def comma_category(f: Functor, y: str) -> FiniteCategory:
    return comma_data(f, y).category


def slice_category(c: FiniteCategory, y: str) -> CommaCategory:
    """The slice c/y, realized as the comma category of the identity functor."""
    return comma_data(identity_functor(c), y)


# ---------------------------------------------------------------------------
# connected components


def pi0(c: FiniteCategory) -> dict[str, str]:
    """Map each object to the least object of its zig-zag component."""
    parent = {u: u for u in c.objects}

    def find(u: str) -> str:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            lo, hi = (ra, rb) if ra < rb else (rb, ra)
            parent[hi] = lo

    for m, (s, t) in c.morphisms.items():
        union(s, t)
    return {u: find(u) for u in c.objects}


def pi0_classes(c: FiniteCategory) -> tuple[tuple[str, ...], ...]:
    rep = pi0(c)
    classes: dict[str, list[str]] = {}
    for u in sorted(c.objects):
        classes.setdefault(rep[u], []).append(u)
    return tuple(tuple(v) for _, v in sorted(classes.items()))


# ---------------------------------------------------------------------------
# set-valued functors, colimits, pointwise left Kan extension

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


@dataclass(frozen=True)
class SetValuedFunctor:
    """Finite set-valued diagram on a finite category.

    For a covariant functor, action[m] maps value[source(m)] to
    value[target(m)]; contravariant swaps the two.
    """

    base: FiniteCategory
    variance: str
    value: dict[str, tuple[str, ...]]
    action: dict[str, dict[str, str]]

    def act(self, m: str, elem: str) -> str:
        return self.action[m][elem]


def _action_endpoints(f: SetValuedFunctor, m: str) -> tuple[str, str]:
    s, t = f.base.morphisms[m]
    return (s, t) if f.variance == COVARIANT else (t, s)


def validate_set_functor(f: SetValuedFunctor) -> list[str]:
    report: list[str] = []
    if f.variance not in (COVARIANT, CONTRAVARIANT):
        return [f"unknown variance {f.variance!r}"]
    for u in f.base.objects:
        if u not in f.value:
            report.append(f"no value at {u}")
    for m in f.base.morphisms:
        if m not in f.action:
            report.append(f"no action for {m}")
    if report:
        return report
    for m in f.base.morphisms:
        src, tgt = _action_endpoints(f, m)
        amap = f.action[m]
        if set(amap) != set(f.value[src]):
            report.append(f"action of {m} not defined on exactly the value set")
            continue
        if not set(amap.values()) <= set(f.value[tgt]):
            report.append(f"action of {m} escapes the target value set")
    if report:
        return report
    for u in f.base.objects:
        i = f.base.identity[u]
        if any(f.act(i, e) != e for e in f.value[u]):
            report.append(f"identity action at {u} is not the identity")
    for (g, h), gh in f.base.composition.items():
        if f.variance == COVARIANT:
            lhs = {e: f.act(g, f.act(h, e)) for e in f.action[h]}
        else:
            lhs = {e: f.act(h, f.act(g, e)) for e in f.action[g]}
        if lhs != f.action[gh]:
            report.append(f"functoriality fails on ({g}, {h})")
    return report


def as_covariant(f: SetValuedFunctor) -> SetValuedFunctor:
    """View a contravariant diagram as a covariant one on the opposite base.

    The value and action dictionaries carry over unchanged; only the base
    flips, so colimit and Kan extension code exists once.
    """
    if f.variance == COVARIANT:
        return f
    return SetValuedFunctor(
        base=opposite(f.base),
        variance=COVARIANT,
        value=dict(f.value),
        action=dict(f.action),
    )


@dataclass(frozen=True)
class ColimitCocone:
    """Colimit set of a covariant diagram with its cocone legs."""

    elements: tuple[str, ...]
    leg: dict[str, dict[str, str]]


def _class_name(pair: tuple[str, str]) -> str:
    return f"[{pair[0]}|{pair[1]}]"


def colim_set(f: SetValuedFunctor) -> ColimitCocone:
    """Colimit of a covariant set-valued functor as a concrete quotient."""
    if f.variance != COVARIANT:
        raise InputError("colim_set requires a covariant functor")
    pairs = [(u, e) for u in sorted(f.base.objects) for e in sorted(f.value[u])]
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            lo, hi = (ra, rb) if ra < rb else (rb, ra)
            parent[hi] = lo

    for m, (s, t) in f.base.morphisms.items():
        for e in f.value[s]:
            union((s, e), (t, f.act(m, e)))
    leg = {
        u: {e: _class_name(find((u, e))) for e in f.value[u]}
        for u in f.base.objects
    }
    elements = tuple(sorted({_class_name(find(p)) for p in pairs}))
    return ColimitCocone(elements=elements, leg=leg)


def left_kan_set(along: Functor, f: SetValuedFunctor) -> SetValuedFunctor:
    """Pointwise left Kan extension of a covariant set diagram.

    The value at b is the colimit of f pulled back to the comma category
    along/b; the action of n: b -> b' pushes comma objects forward by
    postcomposition.
    """
    if f.variance != COVARIANT:
        raise InputError("left_kan_set requires a covariant functor")
    if f.base != along.domain:
        raise InputError("diagram must live on the domain of the functor")
    cod = along.codomain
    commas = {b: comma_data(along, b) for b in cod.objects}
    cocones: dict[str, ColimitCocone] = {}
    for b in cod.objects:
        cd = commas[b]
        diagram = SetValuedFunctor(
            base=cd.category,
            variance=COVARIANT,
            value={a: f.value[cd.object_pair[a][0]] for a in cd.category.objects},
            action={m: f.action[cd.morphism_under[m]] for m in cd.category.morphisms},
        )
        cocones[b] = colim_set(diagram)
    value = {b: cocones[b].elements for b in cod.objects}
    action: dict[str, dict[str, str]] = {}
    for n, (b, b2) in cod.morphisms.items():
        cd, cd2 = commas[b], commas[b2]
        amap: dict[str, str] = {}
        for a, (x, h) in cd.object_pair.items():
            h2 = cod.compose(n, h)
            a2 = f"({x}|{h2})"
            for e in f.value[x]:
                amap[cocones[b].leg[a][e]] = cocones[b2].leg[a2][e]
        action[n] = amap
    return SetValuedFunctor(base=cod, variance=COVARIANT, value=value, action=action)


# ---------------------------------------------------------------------------
# equivalences and automorphism groups


def is_fully_faithful(f: Functor) -> bool:
    dom, cod = f.domain, f.codomain
    for a in dom.objects:
        for b in dom.objects:
            hom_ab = dom.hom(a, b)
            images = {f.on_morphism(m) for m in hom_ab}
            if len(images) != len(hom_ab):
                return False
            if images != set(cod.hom(f.on_object(a), f.on_object(b))):
                return False
    return True


def is_essentially_surjective(f: Functor) -> bool:
    cod = f.codomain
    hit = {f.on_object(x) for x in f.domain.objects}
    iso_reachable = set(hit)
    changed = True
    while changed:
        changed = False
        for m, (s, t) in cod.morphisms.items():
            if not is_isomorphism(cod, m):
                continue
            for a, b in ((s, t), (t, s)):
                if a in iso_reachable and b not in iso_reachable:
                    iso_reachable.add(b)
                    changed = True
    return iso_reachable >= set(cod.objects)


def is_equivalence(f: Functor) -> bool:
    """Brute-force test: essentially surjective and fully faithful."""
    return is_fully_faithful(f) and is_essentially_surjective(f)


@dataclass(frozen=True)
class GroupTable:
    """A finite group presented by its multiplication table."""

    elements: tuple[str, ...]
    unit: str
    mult: dict[tuple[str, str], str]

    def order_of(self, g: str) -> int:
        n, x = 1, g
        while x != self.unit:
            x = self.mult[(x, g)]
            n += 1
        return n


def automorphism_group(c: FiniteCategory, x: str) -> GroupTable:
    """The group of automorphisms of x (requires them to be closed, e.g. groupoids)."""
    elems = tuple(m for m in c.hom(x, x) if is_isomorphism(c, m))
    mult = {(g, h): c.compose(g, h) for g in elems for h in elems}
    return GroupTable(elements=elems, unit=c.identity[x], mult=mult)


def groups_isomorphic(a: GroupTable, b: GroupTable) -> bool:
    """Brute-force isomorphism search, meant for groups of order <= 8."""
    if len(a.elements) != len(b.elements):
        return False
    if sorted(a.order_of(g) for g in a.elements) != sorted(
        b.order_of(g) for g in b.elements
    ):
        return False
    others_a = [g for g in a.elements if g != a.unit]
    by_order: dict[int, list[str]] = {}
    for h in b.elements:
        by_order.setdefault(b.order_of(h), []).append(h)

    def extend(assign: dict[str, str], used: set[str]) -> bool:
        if len(assign) == len(a.elements):
            return all(
                assign[a.mult[(g, h)]] == b.mult[(assign[g], assign[h])]
                for g in a.elements
                for h in a.elements
            )
        g = others_a[len(assign) - 1]
        for h in by_order.get(a.order_of(g), []):
            if h in used:
                continue
            assign[g] = h
            used.add(h)
            ok = True
            for k in list(assign):
                gk = a.mult[(g, k)]
                kg = a.mult[(k, g)]
                if gk in assign and assign[gk] != b.mult[(h, assign[k])]:
                    ok = False
                if ok and kg in assign and assign[kg] != b.mult[(assign[k], h)]:
                    ok = False
                if not ok:
                    break
            if ok and extend(assign, used):
                return True
            del assign[g]
            used.discard(h)
        return False

    return extend({a.unit: b.unit}, {b.unit})


def is_group_isomorphism(a: GroupTable, b: GroupTable, mapping: dict[str, str]) -> bool:
    if set(mapping) != set(a.elements):
        return False
    if sorted(mapping.values()) != sorted(b.elements):
        return False
    return all(
        mapping[a.mult[(g, h)]] == b.mult[(mapping[g], mapping[h])]
        for g in a.elements
        for h in a.elements
    )


# ---------------------------------------------------------------------------
# builders


def _id_name(obj: str) -> str:
    return f"id_{obj}"


def build_category(
    objects: Iterable[str],
    arrows: dict[str, tuple[str, str]],
    compose: dict[tuple[str, str], str],
) -> FiniteCategory:
    """Assemble a category from non-identity arrows and their composites.

    Identities are created automatically (named id_<object>) and composites
    with identities are filled in.
    """
    objs = tuple(sorted(objects))
    morphisms = {_id_name(u): (u, u) for u in objs}
    for m, (s, t) in arrows.items():
        if m in morphisms:
            raise InputError(f"morphism name {m} collides with an identity")
        morphisms[m] = (s, t)
    identity = {u: _id_name(u) for u in objs}
    composition: dict[tuple[str, str], str] = {}
    for m, (s, t) in morphisms.items():
        composition[(m, identity[s])] = m
        composition[(identity[t], m)] = m
    for (g, f), h in compose.items():
        composition[(g, f)] = h
    return FiniteCategory(
        objects=objs, morphisms=morphisms, identity=identity, composition=composition
    )


def terminal_category(obj: str = "*") -> FiniteCategory:
    return build_category([obj], {}, {})


def discrete_category(objects: Iterable[str]) -> FiniteCategory:
    return build_category(objects, {}, {})


def poset_chain(names: Iterable[str]) -> FiniteCategory:
    """The total order on the given objects: names[0] -> names[1] -> ...

    Non-identity arrows are named a_<src>_<tgt> for every src < tgt.
    """
    ns = list(names)
    arrows = {}
    for i in range(len(ns)):
        for j in range(i + 1, len(ns)):
            arrows[f"a_{ns[i]}_{ns[j]}"] = (ns[i], ns[j])
    compose = {}
    for i in range(len(ns)):
        for j in range(i + 1, len(ns)):
            for k in range(j + 1, len(ns)):
                g = f"a_{ns[j]}_{ns[k]}"
                f = f"a_{ns[i]}_{ns[j]}"
                compose[(g, f)] = f"a_{ns[i]}_{ns[k]}"
    return build_category(ns, arrows, compose)


def cyclic_groupoid(k: int, obj: str = "*") -> Groupoid:
    """The cyclic group of order k as a one-object groupoid (r1 generates)."""
    if k < 1:
        raise InputError("group order must be positive")
    name = {0: _id_name(obj)}
    for i in range(1, k):
        name[i] = f"r{i}"
    morphisms = {name[i]: (obj, obj) for i in range(k)}
    composition = {
        (name[i], name[j]): name[(i + j) % k] for i in range(k) for j in range(k)
    }
    return Groupoid(
        objects=(obj,),
        morphisms=morphisms,
        identity={obj: name[0]},
        composition=composition,
        inverse={name[i]: name[(-i) % k] for i in range(k)},
    )


def codiscrete_groupoid(objects: Iterable[str]) -> Groupoid:
    """Exactly one morphism between any two objects (a contractible groupoid)."""
    return group_block_groupoid(objects, 1)


def group_block_groupoid(objects: Iterable[str], k: int) -> Groupoid:
    """Connected groupoid on the given objects with Z/k automorphism groups.

    Morphism x -> y carrying the group element i is named gi_<x>_<y>; the
    composite multiplies the labels.  k = 1 gives the codiscrete groupoid.
    """
    objs = tuple(sorted(objects))
    if k < 1:
        raise InputError("group order must be positive")

    def name(i: int, x: str, y: str) -> str:
        if i == 0 and x == y:
            return _id_name(x)
        return f"g{i}_{x}_{y}"

    morphisms = {}
    for x in objs:
        for y in objs:
            for i in range(k):
                morphisms[name(i, x, y)] = (x, y)
    composition = {}
    for x in objs:
        for y in objs:
            for z in objs:
                for i in range(k):
                    for j in range(k):
                        composition[(name(j, y, z), name(i, x, y))] = name(
                            (i + j) % k, x, z
                        )
    return Groupoid(
        objects=objs,
        morphisms=morphisms,
        identity={x: name(0, x, x) for x in objs},
        composition=composition,
        inverse={
            name(i, x, y): name((-i) % k, y, x)
            for x in objs
            for y in objs
            for i in range(k)
        },
    )


def disjoint_union_groupoid(blocks: Iterable[Groupoid], tags: Iterable[str]) -> Groupoid:
    """Disjoint union, with every identifier prefixed by its block tag."""
    objects: list[str] = []
    morphisms: dict[str, tuple[str, str]] = {}
    identity: dict[str, str] = {}
    composition: dict[tuple[str, str], str] = {}
    inverse: dict[str, str] = {}
    for g, tag in zip(blocks, tags):
        ren_o = {x: f"{tag}.{x}" for x in g.objects}
        ren_m = {m: f"{tag}.{m}" for m in g.morphisms}
        objects.extend(ren_o.values())
        for m, (s, t) in g.morphisms.items():
            morphisms[ren_m[m]] = (ren_o[s], ren_o[t])
        for x, i in g.identity.items():
            identity[ren_o[x]] = ren_m[i]
        for (a, b), c_ in g.composition.items():
            composition[(ren_m[a], ren_m[b])] = ren_m[c_]
        for m, w in g.inverse.items():
            inverse[ren_m[m]] = ren_m[w]
    return Groupoid(
        objects=tuple(sorted(objects)),
        morphisms=morphisms,
        identity=identity,
        composition=composition,
        inverse=inverse,
    )


def pair_name(a: str, b: str) -> str:
    return f"({a}|{b})"


def product_category(c: FiniteCategory, d: FiniteCategory) -> FiniteCategory:
    """The product category, objects (U|x) and morphisms (a|f) componentwise."""
    objects = tuple(
        pair_name(u, x) for u in sorted(c.objects) for x in sorted(d.objects)
    )
    morphisms = {}
    for a in sorted(c.morphisms):
        for f in sorted(d.morphisms):
            morphisms[pair_name(a, f)] = (
                pair_name(c.source(a), d.source(f)),
                pair_name(c.target(a), d.target(f)),
            )
    identity = {
        pair_name(u, x): pair_name(c.identity[u], d.identity[x])
        for u in c.objects
        for x in d.objects
    }
    composition = {}
    for (a2, a1), a in c.composition.items():
        for (f2, f1), f in d.composition.items():
            composition[(pair_name(a2, f2), pair_name(a1, f1))] = pair_name(a, f)
    return FiniteCategory(
        objects=objects, morphisms=morphisms, identity=identity, composition=composition
    )
