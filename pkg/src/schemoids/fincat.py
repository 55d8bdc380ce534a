"""Finite small categories, groupoids and functors.

A category is stored with opaque string ids for objects and morphisms, a
total composition table over the composable pairs, and the identity
assignment.  The composition convention is compose(f, g) = f∘g with
src(f) = tgt(g): g is applied first.  Validated values are immutable by
convention; every operation builds fresh structures.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class CategoryError(Exception):
    """Base for category-law violations."""


class MissingIdentity(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class UndefinedComposite(CategoryError):
    pass


class EndpointMismatch(CategoryError):
    pass


class NotInvertible(CategoryError):
    pass


class NotAFunctor(CategoryError):
    pass


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...]  # (id, src, tgt)
    identity: dict[str, str]                     # object -> identity morphism
    compose: dict[tuple[str, str], str]          # (f, g) -> f∘g with src(f) = tgt(g)
    _src: dict[str, str] = field(repr=False, default_factory=dict)
    _tgt: dict[str, str] = field(repr=False, default_factory=dict)
    _hom: dict[tuple[str, str], tuple[str, ...]] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self._src:
            src = {m: s for m, s, _ in self.morphisms}
            tgt = {m: t for m, _, t in self.morphisms}
            hom: dict[tuple[str, str], list[str]] = {}
            for m, s, t in self.morphisms:
                hom.setdefault((s, t), []).append(m)
            object.__setattr__(self, "_src", src)
            object.__setattr__(self, "_tgt", tgt)
            object.__setattr__(self, "_hom", {k: tuple(v) for k, v in hom.items()})

    def src(self, f: str) -> str:
        return self._src[f]

    def tgt(self, f: str) -> str:
        return self._tgt[f]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom.get((x, y), ())

    def comp(self, f: str, g: str) -> str:
        return self.compose[(f, g)]

    def is_identity(self, f: str) -> bool:
        return self.identity.get(self._src[f]) == f and self._src[f] == self._tgt[f]

    @property
    def morphism_ids(self) -> tuple[str, ...]:
        return tuple(m for m, _, _ in self.morphisms)

    def composable_pairs(self):
        """All (f, g) with f∘g defined, g first."""
        return self.compose.keys()

    def endomorphisms(self) -> tuple[str, ...]:
        return tuple(m for m, s, t in self.morphisms if s == t)

    def identities(self) -> frozenset[str]:
        return frozenset(self.identity.values())

    def components(self) -> list[frozenset[str]]:
        """Connected components of the object set under undirected reachability."""
        adj: dict[str, set[str]] = {x: set() for x in self.objects}
        for _, s, t in self.morphisms:
            adj[s].add(t)
            adj[t].add(s)
        seen: set[str] = set()
        comps = []
        for x in self.objects:
            if x in seen:
                continue
            stack, comp = [x], set()
            while stack:
                y = stack.pop()
                if y in comp:
                    continue
                comp.add(y)
                stack.extend(adj[y] - comp)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and self.identity == other.identity and self.compose == other.compose)

    def __repr__(self):
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


@dataclass(frozen=True, eq=False)
class Groupoid:
    base: FinCategory
    inverse: dict[str, str]

    def __eq__(self, other):
        if not isinstance(other, Groupoid):
            return NotImplemented
        return self.base == other.base and self.inverse == other.inverse


@dataclass(frozen=True, eq=False)
class Functor:
    object_map: dict[str, str]
    morphism_map: dict[str, str]
    contravariant: bool = False

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return (self.object_map == other.object_map
                and self.morphism_map == other.morphism_map
                and self.contravariant == other.contravariant)

    def __call__(self, f: str) -> str:
        return self.morphism_map[f]

    def on_object(self, x: str) -> str:
        return self.object_map[x]


def validate_category(raw: dict) -> FinCategory:
    """Validate a raw description and return a FinCategory.

    Raw format: {"objects": [...], "morphisms": [{"id","src","tgt"}...],
    "identities": {obj: mor}, "compose": [[f, g, fg], ...]}.  Composition
    entries implied by the unit laws may be omitted.
    """
    objects = tuple(str(x) for x in raw["objects"])
    if len(set(objects)) != len(objects):
        raise CategoryError("duplicate object ids")
    morphisms = tuple((str(m["id"]), str(m["src"]), str(m["tgt"])) for m in raw["morphisms"])
    mor_ids = [m for m, _, _ in morphisms]
    if len(set(mor_ids)) != len(mor_ids):
        raise CategoryError("duplicate morphism ids")
    obj_set = set(objects)
    for m, s, t in morphisms:
        if s not in obj_set or t not in obj_set:
            raise EndpointMismatch(f"morphism {m!r} has unknown endpoint")
    src = {m: s for m, s, _ in morphisms}
    tgt = {m: t for m, _, t in morphisms}

    identity = {str(k): str(v) for k, v in raw["identities"].items()}
    for x in objects:
        e = identity.get(x)
        if e is None or e not in src:
            raise MissingIdentity(f"object {x!r} has no identity morphism")
        if src[e] != x or tgt[e] != x:
            raise MissingIdentity(f"identity of {x!r} must be an endomorphism of {x!r}")

    compose: dict[tuple[str, str], str] = {}
    for f, g, fg in raw["compose"]:
        f, g, fg = str(f), str(g), str(fg)
        if f not in src or g not in src or fg not in src:
            raise UndefinedComposite(f"composition entry ({f!r}, {g!r}, {fg!r}) names unknown morphisms")
        if (f, g) in compose and compose[(f, g)] != fg:
            raise UndefinedComposite(f"conflicting entries for ({f!r}, {g!r})")
        compose[(f, g)] = fg
    # fill unit-law entries
    for m in src:
        compose.setdefault((m, identity[src[m]]), m)
        compose.setdefault((identity[tgt[m]], m), m)

    # totality and endpoints
    for f in src:
        for g in src:
            if src[f] != tgt[g]:
                if (f, g) in compose:
                    raise EndpointMismatch(f"({f!r}, {g!r}) composed but src({f!r}) != tgt({g!r})")
                continue
            fg = compose.get((f, g))
            if fg is None:
                raise UndefinedComposite(f"no composite for ({f!r}, {g!r})")
            if src[fg] != src[g] or tgt[fg] != tgt[f]:
                raise EndpointMismatch(f"composite {fg!r} of ({f!r}, {g!r}) has wrong endpoints")
    # unit laws
    for m in src:
        if compose[(m, identity[src[m]])] != m or compose[(identity[tgt[m]], m)] != m:
            raise MissingIdentity(f"unit law fails at {m!r}")
    # associativity
    for g in src:
        for f in src:
            if src[f] != tgt[g]:
                continue
            fg = compose[(f, g)]
            for e in src:
                if src[e] != tgt[f]:
                    continue
                lhs = compose[(compose[(e, f)], g)]
                rhs = compose[(e, fg)]
                if lhs != rhs:
                    raise NonAssociative(f"({e!r}∘{f!r})∘{g!r} = {lhs!r} but {e!r}∘({f!r}∘{g!r}) = {rhs!r}")
    return FinCategory(objects, morphisms, identity, compose)


def serialize(cat: FinCategory) -> dict:
    """JSON-ready description; identity-implied composition entries are kept."""
    return {
        "objects": list(cat.objects),
        "morphisms": [{"id": m, "src": s, "tgt": t} for m, s, t in cat.morphisms],
        "identities": dict(cat.identity),
        "compose": [[f, g, fg] for (f, g), fg in cat.compose.items()],
    }


def build_category(objects, morphisms, identity, compose) -> FinCategory:
    """Validate parts assembled in code (same checks as validate_category)."""
    return validate_category({
        "objects": list(objects),
        "morphisms": [{"id": m, "src": s, "tgt": t} for m, s, t in morphisms],
        "identities": dict(identity),
        "compose": [[f, g, fg] for (f, g), fg in compose.items()],
    })


def terminal_category(obj: str = "*") -> FinCategory:
    e = f"1_{obj}"
    return build_category([obj], [(e, obj, obj)], {obj: e}, {})


def one_object_group(elements, table, obj: str = "*", prefix: str = "") -> Groupoid:
    """Group as a one-object groupoid; table maps (a, b) -> a*b ('b first')."""
    elements = [str(e) for e in elements]
    unit = next(e for e in elements if all(table[(e, x)] == x and table[(x, e)] == x for x in elements))
    name = {e: prefix + e for e in elements}
    morphisms = [(name[e], obj, obj) for e in elements]
    compose = {(name[a], name[b]): name[table[(a, b)]] for a in elements for b in elements}
    cat = build_category([obj], morphisms, {obj: name[unit]}, compose)
    inverse = {}
    for a in elements:
        inv = next(b for b in elements if table[(a, b)] == unit)
        inverse[name[a]] = name[inv]
    return Groupoid(cat, inverse)


def cyclic_group_table(n: int):
    """Elements and multiplication table of Z/n, elements named '0'..'n-1'."""
    elements = [str(i) for i in range(n)]
    table = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
    return elements, table


def product(c: FinCategory, d: FinCategory) -> FinCategory:
    return product_with_projections(c, d)[0]


def product_with_projections(c: FinCategory, d: FinCategory):
    """Product category plus the two projections (used by schemoid products)."""
    pobj = lambda a, b: f"({a},{b})"
    pmor = lambda f, g: f"({f},{g})"
    objects = [pobj(a, b) for a in c.objects for b in d.objects]
    morphisms = []
    proj1: dict[str, str] = {}
    proj2: dict[str, str] = {}
    for f, fs, ft in c.morphisms:
        for g, gs, gt in d.morphisms:
            m = pmor(f, g)
            morphisms.append((m, pobj(fs, gs), pobj(ft, gt)))
            proj1[m] = f
            proj2[m] = g
    identity = {pobj(a, b): pmor(c.identity[a], d.identity[b])
                for a in c.objects for b in d.objects}
    compose = {}
    for (f1, g1), h1 in c.compose.items():
        for (f2, g2), h2 in d.compose.items():
            compose[(pmor(f1, f2), pmor(g1, g2))] = pmor(h1, h2)
    cat = build_category(objects, morphisms, identity, compose)
    obj1 = {pobj(a, b): a for a in c.objects for b in d.objects}
    obj2 = {pobj(a, b): b for a in c.objects for b in d.objects}
    return cat, Functor(obj1, proj1), Functor(obj2, proj2)


def join(c: FinCategory, d: FinCategory) -> FinCategory:
    """Join C∗D: one extra morphism w[a,b]: a -> b per a in C, b in D.

    Ids are renamed with 'L.'/'R.' prefixes so the join is always defined.
    """
    lo = lambda x: f"L.{x}"
    ro = lambda x: f"R.{x}"
    objects = [lo(x) for x in c.objects] + [ro(x) for x in d.objects]
    morphisms = ([(lo(m), lo(s), lo(t)) for m, s, t in c.morphisms]
                 + [(ro(m), ro(s), ro(t)) for m, s, t in d.morphisms])
    w = {}
    for a in c.objects:
        for b in d.objects:
            m = f"w[{a},{b}]"
            w[(a, b)] = m
            morphisms.append((m, lo(a), ro(b)))
    identity = {lo(x): lo(c.identity[x]) for x in c.objects}
    identity.update({ro(x): ro(d.identity[x]) for x in d.objects})
    compose = {(lo(f), lo(g)): lo(fg) for (f, g), fg in c.compose.items()}
    compose.update({(ro(f), ro(g)): ro(fg) for (f, g), fg in d.compose.items()})
    for a in c.objects:
        for b in d.objects:
            # alpha ∘ w[a,s] = w[a,t] for alpha: s -> t in D
            for m, s, t in d.morphisms:
                if s == b:
                    compose[(ro(m), w[(a, b)])] = w[(a, t)]
            # w[v,b] ∘ beta = w[u,b] for beta: u -> v in C
            for m, s, t in c.morphisms:
                if t == a:
                    compose[(w[(a, b)], lo(m))] = w[(s, b)]
    return build_category(objects, morphisms, identity, compose)


def disjoint_union(c: FinCategory, d: FinCategory) -> FinCategory:
    """Coproduct with the same 'L.'/'R.' renaming as join."""
    lo = lambda x: f"L.{x}"
    ro = lambda x: f"R.{x}"
    objects = [lo(x) for x in c.objects] + [ro(x) for x in d.objects]
    morphisms = ([(lo(m), lo(s), lo(t)) for m, s, t in c.morphisms]
                 + [(ro(m), ro(s), ro(t)) for m, s, t in d.morphisms])
    identity = {lo(x): lo(c.identity[x]) for x in c.objects}
    identity.update({ro(x): ro(d.identity[x]) for x in d.objects})
    compose = {(lo(f), lo(g)): lo(fg) for (f, g), fg in c.compose.items()}
    compose.update({(ro(f), ro(g)): ro(fg) for (f, g), fg in d.compose.items()})
    return build_category(objects, morphisms, identity, compose)


def opposite(c: FinCategory) -> FinCategory:
    morphisms = [(m, t, s) for m, s, t in c.morphisms]
    compose = {(g, f): fg for (f, g), fg in c.compose.items()}
    return build_category(c.objects, morphisms, c.identity, compose)


def factorization_category(c: FinCategory) -> FinCategory:
    """Category of factorizations: objects are the morphisms of C, and a
    morphism f -> g is a pair (α, β) with α∘f∘β = g, composed by
    (α', β')∘(α, β) = (α'∘α, β∘β')."""
    objects = list(c.morphism_ids)
    morphisms = []
    compose = {}
    mid = lambda a, b, f: f"({a},{b})@{f}"
    arrows = []
    for f in objects:
        for a in c.morphism_ids:
            if c.src(a) != c.tgt(f):
                continue
            af = c.comp(a, f)
            for b in c.morphism_ids:
                if c.tgt(b) != c.src(f):
                    continue
                g = c.comp(af, b)
                m = mid(a, b, f)
                morphisms.append((m, f, g))
                arrows.append((m, a, b, f, g))
    identity = {f: mid(c.identity[c.tgt(f)], c.identity[c.src(f)], f) for f in objects}
    for m2, a2, b2, f2, g2 in arrows:
        for m1, a1, b1, f1, g1 in arrows:
            if g1 != f2:
                continue
            compose[(m2, m1)] = mid(c.comp(a2, a1), c.comp(b1, b2), f1)
    return build_category(objects, morphisms, identity, compose)


def as_groupoid(c: FinCategory) -> Groupoid:
    """Inverse table if every morphism is invertible, else NotInvertible."""
    inverse = {}
    for f in c.morphism_ids:
        s, t = c.src(f), c.tgt(f)
        inv = None
        for g in c.hom(t, s):
            if c.comp(f, g) == c.identity[t] and c.comp(g, f) == c.identity[s]:
                inv = g
                break
        if inv is None:
            raise NotInvertible(f"morphism {f!r} has no inverse")
        inverse[f] = inv
    return Groupoid(c, inverse)


def is_groupoid(c: FinCategory) -> bool:
    try:
        as_groupoid(c)
        return True
    except NotInvertible:
        return False


def validate_groupoid(raw: dict) -> Groupoid:
    """Groupoid JSON = category JSON + {"inverse": {f: f^-1}}."""
    cat = validate_category(raw)
    inverse = {str(k): str(v) for k, v in raw["inverse"].items()}
    for f in cat.morphism_ids:
        g = inverse.get(f)
        if g is None:
            raise NotInvertible(f"no inverse listed for {f!r}")
        if (cat.comp(f, g) != cat.identity[cat.tgt(f)]
                or cat.comp(g, f) != cat.identity[cat.src(f)]):
            raise NotInvertible(f"listed inverse of {f!r} is wrong")
        if inverse[g] != f:
            raise NotInvertible(f"inverse is not an involution at {f!r}")
    return Groupoid(cat, inverse)


def serialize_groupoid(g: Groupoid) -> dict:
    out = serialize(g.base)
    out["inverse"] = dict(g.inverse)
    return out


def validate_functor(fun: Functor, c: FinCategory, d: FinCategory) -> Functor:
    """Check functor laws of fun: C -> D (contravariant if flagged)."""
    for x in c.objects:
        if fun.object_map.get(x) not in set(d.objects):
            raise NotAFunctor(f"object {x!r} unmapped or mapped outside the target")
        if fun.morphism_map.get(c.identity[x]) != d.identity[fun.object_map[x]]:
            raise NotAFunctor(f"identity of {x!r} not preserved")
    for m in c.morphism_ids:
        img = fun.morphism_map.get(m)
        if img is None or img not in set(d.morphism_ids):
            raise NotAFunctor(f"morphism {m!r} unmapped or mapped outside the target")
        s, t = c.src(m), c.tgt(m)
        if fun.contravariant:
            if d.src(img) != fun.object_map[t] or d.tgt(img) != fun.object_map[s]:
                raise NotAFunctor(f"endpoints of {m!r} not reversed correctly")
        else:
            if d.src(img) != fun.object_map[s] or d.tgt(img) != fun.object_map[t]:
                raise NotAFunctor(f"endpoints of {m!r} not preserved")
    for (f, g), fg in c.compose.items():
        if fun.contravariant:
            expected = d.comp(fun.morphism_map[g], fun.morphism_map[f])
        else:
            expected = d.comp(fun.morphism_map[f], fun.morphism_map[g])
        if fun.morphism_map[fg] != expected:
            raise NotAFunctor(f"composition not preserved at ({f!r}, {g!r})")
    return fun


def identity_functor(c: FinCategory) -> Functor:
    return Functor({x: x for x in c.objects}, {m: m for m in c.morphism_ids})


def compose_functors(f2: Functor, f1: Functor) -> Functor:
    """f2 after f1; variance flags multiply."""
    return Functor(
        {x: f2.object_map[y] for x, y in f1.object_map.items()},
        {m: f2.morphism_map[n] for m, n in f1.morphism_map.items()},
        contravariant=f1.contravariant != f2.contravariant,
    )
