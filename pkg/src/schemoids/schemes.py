"""Association schemes and coherent configurations as standalone data.

A configuration is a partition of X×X given as a matrix of class indices
(row = source point of the pair, i.e. relation_of[x][y] is the class of
(x, y)).  Intersection numbers follow the classical convention
p^g_{ef} = #{y : (x,y) in e, (y,z) in f} for any (x,z) in g.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .fincat import Functor, build_category
from .schemoid import Involution, QuasiSchemoid, check_association, make_partition, verify_quasi_schemoid

DESK_SCALE_LIMIT = 64


class SchemeError(Exception):
    pass


class NotTransposeClosed(SchemeError):
    pass


class NonConstantIntersection(SchemeError):
    pass


class DiagonalNotUnion(SchemeError):
    pass


class SizeLimit(SchemeError):
    pass


class InvalidGroupTable(SchemeError):
    pass


class NotAGroup(SchemeError):
    pass


@dataclass(frozen=True, eq=False)
class CoherentConfiguration:
    points: tuple[str, ...]
    classes: tuple[str, ...]
    relation_of: tuple[tuple[int, ...], ...]   # class index per (x, y), by point position
    intersection: dict[tuple[str, str, str], int]  # (e, f, g) -> p^g_{ef}
    transpose: dict[str, str]                  # class -> transposed class

    @property
    def size(self) -> int:
        return len(self.points)

    def point_index(self, x: str) -> int:
        return self.points.index(x)

    def class_of_pair(self, x: str, y: str) -> str:
        return self.classes[self.relation_of[self.points.index(x)][self.points.index(y)]]

    def p(self, e: str, f: str, g: str) -> int:
        return self.intersection.get((e, f, g), 0)

    def adjacency(self, cls: str) -> list[list[int]]:
        k = self.classes.index(cls)
        n = self.size
        return [[1 if self.relation_of[x][y] == k else 0 for y in range(n)] for x in range(n)]

    def pair_count(self, cls: str) -> int:
        k = self.classes.index(cls)
        return sum(row.count(k) for row in self.relation_of)

    @property
    def diagonal_classes(self) -> tuple[str, ...]:
        n = self.size
        return tuple(sorted({self.classes[self.relation_of[x][x]] for x in range(n)}))

    def __eq__(self, other):
        if not isinstance(other, CoherentConfiguration):
            return NotImplemented
        return (self.points == other.points and self.classes == other.classes
                and self.relation_of == other.relation_of)


@dataclass(frozen=True, eq=False)
class AssociationScheme(CoherentConfiguration):
    @property
    def diagonal_class(self) -> str:
        return self.diagonal_classes[0]


def validate_scheme(size: int, relations, points=None, classes=None):
    """Verify the configuration axioms by exhaustive counting.

    Returns an AssociationScheme when the diagonal is a single class,
    otherwise a CoherentConfiguration.
    """
    if size < 1:
        raise SchemeError("empty point set")
    rel = tuple(tuple(int(x) for x in row) for row in relations)
    if len(rel) != size or any(len(row) != size for row in rel):
        raise SchemeError("relation matrix must be size x size")
    indices = sorted({x for row in rel for x in row})
    if indices != list(range(len(indices))):
        raise SchemeError("class indices must be 0..k-1 with every class nonempty")
    if points is None:
        points = tuple(str(i) for i in range(size))
    else:
        points = tuple(str(p) for p in points)
    if classes is None:
        classes = tuple(f"R{i}" for i in indices)
    else:
        classes = tuple(str(c) for c in classes)
    if len(classes) != len(indices):
        raise SchemeError("class name count mismatch")

    # diagonal must be a union of classes
    diag = {rel[x][x] for x in range(size)}
    for k in diag:
        for x in range(size):
            for y in range(size):
                if rel[x][y] == k and x != y:
                    raise DiagonalNotUnion(
                        f"class {classes[k]!r} meets the diagonal and an off-diagonal pair")

    # transpose closure
    transpose: dict[str, str] = {}
    for k in indices:
        images = {rel[y][x] for x in range(size) for y in range(size) if rel[x][y] == k}
        if len(images) != 1:
            raise NotTransposeClosed(classes[k])
        transpose[classes[k]] = classes[images.pop()]

    # intersection numbers, verified constant over each class
    per_class_pairs: dict[int, list[tuple[int, int]]] = {k: [] for k in indices}
    for x in range(size):
        for y in range(size):
            per_class_pairs[rel[x][y]].append((x, y))
    intersection: dict[tuple[str, str, str], int] = {}
    for e in indices:
        for f in indices:
            for g in indices:
                value = None
                for (x, z) in per_class_pairs[g]:
                    count = sum(1 for y in range(size) if rel[x][y] == e and rel[y][z] == f)
                    if value is None:
                        value = count
                    elif count != value:
                        raise NonConstantIntersection(
                            f"p^{classes[g]}_{{{classes[e]},{classes[f]}}} differs between pairs "
                            f"of class {classes[g]!r}")
                if value:
                    intersection[(classes[e], classes[f], classes[g])] = value

    cls = AssociationScheme if len(diag) == 1 else CoherentConfiguration
    return cls(points, classes, rel, intersection, transpose)


def serialize_scheme(s: CoherentConfiguration) -> dict:
    return {"size": s.size, "relations": [list(row) for row in s.relation_of],
            "points": list(s.points), "classes": list(s.classes)}


def scheme_from_json(raw: dict):
    return validate_scheme(raw["size"], raw["relations"],
                           raw.get("points"), raw.get("classes"))


def hamming(n: int, q: int, limit: int = DESK_SCALE_LIMIT) -> AssociationScheme:
    """Hamming scheme H(n, q): words of length n over q symbols, classes by distance."""
    if n < 1 or q < 2:
        raise SchemeError("need n >= 1 and q >= 2")
    if q ** n > limit:
        raise SizeLimit(f"{q}^{n} points exceeds the configured limit {limit}")
    words = ["".join(str(c) for c in w) for w in iproduct(range(q), repeat=n)]
    dist = lambda u, v: sum(1 for a, b in zip(u, v) if a != b)
    rel = [[dist(u, v) for v in words] for u in words]
    # distances present can be a strict subset only when q**n is tiny; reindex
    present = sorted({x for row in rel for x in row})
    remap = {d: i for i, d in enumerate(present)}
    rel = [[remap[x] for x in row] for row in rel]
    classes = [f"R{d}" for d in present]
    return validate_scheme(len(words), rel, points=words, classes=classes)


def group_scheme(elements, table) -> AssociationScheme:
    """Scheme on a finite group with classes G_f = {(k, l) : k^-1 l = f}."""
    elements = [str(e) for e in elements]
    n = len(elements)
    tab = {(str(a), str(b)): str(v) for (a, b), v in table.items()}
    for a in elements:
        for b in elements:
            if tab.get((a, b)) not in elements:
                raise InvalidGroupTable(f"product of {a!r} and {b!r} missing or unknown")
    unit = [e for e in elements if all(tab[(e, x)] == x and tab[(x, e)] == x for x in elements)]
    if len(unit) != 1:
        raise InvalidGroupTable("no two-sided unit")
    unit = unit[0]
    inverse = {}
    for a in elements:
        invs = [b for b in elements if tab[(a, b)] == unit and tab[(b, a)] == unit]
        if not invs:
            raise InvalidGroupTable(f"{a!r} has no inverse")
        inverse[a] = invs[0]
    for a in elements:
        for b in elements:
            for c in elements:
                if tab[(tab[(a, b)], c)] != tab[(a, tab[(b, c)])]:
                    raise InvalidGroupTable("multiplication is not associative")
    index = {e: i for i, e in enumerate(elements)}
    rel = [[index[tab[(inverse[k], l)]] for l in elements] for k in elements]
    classes = [f"G[{e}]" for e in elements]
    return validate_scheme(n, rel, points=elements, classes=classes)


def orbit_configuration(perms: list[list[int]], size: int):
    """Coherent configuration of the pair orbits of a permutation group.

    perms must already form a group (closure, identity, inverses are
    verified); the result is a scheme exactly when the action is transitive.
    """
    perms = [tuple(p) for p in perms]
    for p in perms:
        if sorted(p) != list(range(size)):
            raise NotAGroup(f"{p} is not a permutation of 0..{size - 1}")
    pset = set(perms)
    if tuple(range(size)) not in pset:
        raise NotAGroup("identity permutation missing")
    for p in perms:
        for q in perms:
            if tuple(p[q[i]] for i in range(size)) not in pset:
                raise NotAGroup("set of permutations is not closed under composition")
    # inverses follow from closure and finiteness

    orbit_of: dict[tuple[int, int], int] = {}
    orbits = 0
    for x in range(size):
        for y in range(size):
            if (x, y) in orbit_of:
                continue
            stack = [(x, y)]
            while stack:
                (u, v) = stack.pop()
                if (u, v) in orbit_of:
                    continue
                orbit_of[(u, v)] = orbits
                stack.extend((p[u], p[v]) for p in perms)
            orbits += 1
    rel = [[orbit_of[(x, y)] for y in range(size)] for x in range(size)]
    classes = [f"O{k}" for k in range(orbits)]
    return validate_scheme(size, rel, classes=classes)


def is_transitive(perms: list[list[int]], size: int) -> bool:
    reached = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for p in perms:
            if p[x] not in reached:
                reached.add(p[x])
                frontier.append(p[x])
    return len(reached) == size


def pair_morphism(x: str, y: str) -> str:
    """Name of the complete-graph morphism y -> x attached to the pair (x, y)."""
    return f"({x},{y})"


def j_embed(scheme: CoherentConfiguration) -> QuasiSchemoid:
    """Complete-graph schemoid of a configuration.

    Hom(y, x) = {(x, y)}, composition (z, x)∘(x, y) = (z, y), blocks are the
    classes and T(x, y) = (y, x).  The structure constants of the result
    coincide with the intersection numbers.
    """
    pts = scheme.points
    objects = list(pts)
    morphisms = [(pair_morphism(x, y), y, x) for x in pts for y in pts]
    identity = {x: pair_morphism(x, x) for x in pts}
    compose = {}
    for z in pts:
        for x in pts:
            for y in pts:
                compose[(pair_morphism(z, x), pair_morphism(x, y))] = pair_morphism(z, y)
    cat = build_category(objects, morphisms, identity, compose)
    blocks: dict[str, list[str]] = {c: [] for c in scheme.classes}
    for x in pts:
        for y in pts:
            blocks[scheme.class_of_pair(x, y)].append(pair_morphism(x, y))
    partition = make_partition(cat, {c: ms for c, ms in blocks.items() if ms})
    t = Functor({x: x for x in pts},
                {pair_morphism(x, y): pair_morphism(y, x) for x in pts for y in pts},
                contravariant=True)
    involution = check_association(cat, partition, t)
    return verify_quasi_schemoid(cat, partition, involution)
