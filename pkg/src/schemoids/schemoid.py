"""Morphism partitions over finite categories and their verification.

The central check counts, for each block triple (σ, τ, μ), the number of
factorizations h = f∘g with f in σ, g in τ of every h in μ; the partition
is admitted exactly when that count is constant along μ (morphisms with
zero factorizations participate in the constancy requirement).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    FinCategory,
    Functor,
    Groupoid,
    as_groupoid,
    is_groupoid,
    join,
    product_with_projections,
    validate_functor,
)


class PartitionError(Exception):
    pass


class AxiomViolation(Exception):
    """Concatenation axiom fails; carries a witness (sigma, tau, mu, h1, c1, h2, c2)."""

    def __init__(self, sigma, tau, mu, h1, c1, h2, c2):
        self.witness = (sigma, tau, mu, h1, c1, h2, c2)
        super().__init__(
            f"blocks ({sigma!r}, {tau!r}) factor {h1!r} in {mu!r} {c1} times but {h2!r} {c2} times")


class LoopConditionViolated(Exception):
    pass


class NotInvolution(Exception):
    pass


class BlockNotPreserved(Exception):
    pass


class SizeMismatch(Exception):
    pass


@dataclass(frozen=True, eq=False)
class MorphismPartition:
    blocks: dict[str, frozenset[str]]
    block_of: dict[str, str]

    def __eq__(self, other):
        if not isinstance(other, MorphismPartition):
            return NotImplemented
        return self.blocks == other.blocks

    def names(self) -> tuple[str, ...]:
        return tuple(self.blocks)

    def __len__(self):
        return len(self.blocks)


def make_partition(cat: FinCategory, blocks: dict) -> MorphismPartition:
    """Validate disjointness and exact cover of mor(C)."""
    block_of: dict[str, str] = {}
    clean: dict[str, frozenset[str]] = {}
    for name, members in blocks.items():
        members = frozenset(str(m) for m in members)
        if not members:
            raise PartitionError(f"block {name!r} is empty")
        for m in members:
            if m in block_of:
                raise PartitionError(f"morphism {m!r} appears in two blocks")
            block_of[m] = str(name)
        clean[str(name)] = members
    missing = set(cat.morphism_ids) - set(block_of)
    if missing:
        raise PartitionError(f"morphisms not covered: {sorted(missing)}")
    extra = set(block_of) - set(cat.morphism_ids)
    if extra:
        raise PartitionError(f"unknown morphisms in partition: {sorted(extra)}")
    return MorphismPartition(clean, block_of)


def discrete_partition(cat: FinCategory) -> MorphismPartition:
    return make_partition(cat, {m: [m] for m in cat.morphism_ids})


def serialize_partition(p: MorphismPartition) -> dict:
    return {"blocks": {name: sorted(members) for name, members in p.blocks.items()}}


def partition_from_json(cat: FinCategory, raw: dict) -> MorphismPartition:
    return make_partition(cat, raw["blocks"])


@dataclass(frozen=True, eq=False)
class StructureConstantTable:
    entries: dict[tuple[str, str, str], int]

    def p(self, sigma: str, tau: str, mu: str) -> int:
        return self.entries.get((sigma, tau, mu), 0)

    def __eq__(self, other):
        if not isinstance(other, StructureConstantTable):
            return NotImplemented
        mine = {k: v for k, v in self.entries.items() if v}
        theirs = {k: v for k, v in other.entries.items() if v}
        return mine == theirs


@dataclass(frozen=True, eq=False)
class Involution:
    functor: Functor                  # contravariant, T^2 = id
    block_image: dict[str, str]       # sigma -> sigma*


@dataclass(frozen=True, eq=False)
class QuasiSchemoid:
    category: FinCategory
    partition: MorphismPartition
    constants: StructureConstantTable
    involution: Involution | None = None
    base_points: tuple[str, ...] | None = None

    def p(self, sigma, tau, mu):
        return self.constants.p(sigma, tau, mu)

    def block_names(self):
        return self.partition.names()

    def __repr__(self):
        return (f"QuasiSchemoid({len(self.category.objects)} objects, "
                f"{len(self.category.morphisms)} morphisms, {len(self.partition)} blocks)")


def check_concatenation(cat: FinCategory, partition: MorphismPartition) -> StructureConstantTable:
    """Count factorizations per block triple; AxiomViolation on non-constancy."""
    bo = partition.block_of
    counts: dict[tuple[str, str], dict[str, int]] = {}
    for (f, g), h in cat.compose.items():
        key = (bo[f], bo[g])
        tally = counts.setdefault(key, {})
        tally[h] = tally.get(h, 0) + 1
    entries: dict[tuple[str, str, str], int] = {}
    names = partition.names()
    for sigma in names:
        for tau in names:
            tally = counts.get((sigma, tau), {})
            for mu, members in partition.blocks.items():
                it = iter(sorted(members))
                h1 = next(it)
                c1 = tally.get(h1, 0)
                for h in it:
                    c = tally.get(h, 0)
                    if c != c1:
                        raise AxiomViolation(sigma, tau, mu, h1, c1, h, c)
                if c1:
                    entries[(sigma, tau, mu)] = c1
    return StructureConstantTable(entries)


def verify_quasi_schemoid(cat: FinCategory, partition: MorphismPartition,
                          involution: Involution | None = None,
                          base_points=None) -> QuasiSchemoid:
    constants = check_concatenation(cat, partition)
    return QuasiSchemoid(cat, partition, constants, involution,
                         tuple(base_points) if base_points is not None else None)


def is_unital(cat: FinCategory, partition: MorphismPartition):
    """True iff every block meeting the identities is made of identities.

    Returns (flag, offending block name or None).
    """
    idents = cat.identities()
    for name, members in partition.blocks.items():
        if members & idents and not members <= idents:
            return False, name
    return True, None


def check_association(cat: FinCategory, partition: MorphismPartition, t: Functor) -> Involution:
    """Verify the loop condition and the contravariant involution T.

    Conditions: every block meeting an endomorphism set lies inside the
    endomorphisms; T is a contravariant functor with T^2 = id carrying each
    block onto a block.
    """
    endos = frozenset(cat.endomorphisms())
    for name, members in partition.blocks.items():
        if members & endos and not members <= endos:
            raise LoopConditionViolated(name)
    if not t.contravariant:
        raise NotInvolution("T must be contravariant")
    validate_functor(t, cat, cat)
    for x in cat.objects:
        if t.object_map[t.object_map[x]] != x:
            raise NotInvolution(f"T^2 != id on object {x!r}")
    for m in cat.morphism_ids:
        if t.morphism_map[t.morphism_map[m]] != m:
            raise NotInvolution(f"T^2 != id on morphism {m!r}")
    block_image: dict[str, str] = {}
    bo = partition.block_of
    for name, members in partition.blocks.items():
        images = {bo[t.morphism_map[m]] for m in members}
        if len(images) != 1:
            raise BlockNotPreserved(name)
        image = images.pop()
        if len(partition.blocks[image]) != len(members):
            raise BlockNotPreserved(name)
        block_image[name] = image
    return Involution(t, block_image)


@dataclass(frozen=True)
class ThinnessReport:
    unital: bool
    per_source_bound: bool          # at most one morphism per block and source
    groupoid_with_t_inverse: bool
    semi_thin: bool
    hom_sets_bounded: bool          # |Hom(x, y)| <= 1
    thin: bool
    base_points: tuple[str, ...] | None
    phi: dict[str, str] | None      # base point -> identity block
    s0: tuple[str, ...]
    witness: str | None


def analyze_thinness(qs: QuasiSchemoid, base_points=None) -> ThinnessReport:
    """Semi-thin and thin analysis of a verified association schemoid.

    If base_points is supplied it is validated; otherwise one object per
    connected component is searched for so that v -> (block of 1_v) is a
    bijection onto the identity blocks.
    """
    cat, partition = qs.category, qs.partition
    unital, offender = is_unital(cat, partition)
    witness = None if unital else f"block {offender!r} mixes identities with other morphisms"

    per_source = True
    for name, members in partition.blocks.items():
        seen: dict[str, str] = {}
        for m in members:
            x = cat.src(m)
            if x in seen:
                per_source = False
                witness = witness or f"block {name!r} has two morphisms out of {x!r}"
                break
            seen[x] = m
        if not per_source:
            break

    groupoid_ok = False
    if qs.involution is not None:
        try:
            gpd = as_groupoid(cat)
            groupoid_ok = all(qs.involution.functor.morphism_map[f] == gpd.inverse[f]
                              for f in cat.morphism_ids)
            if not groupoid_ok:
                witness = witness or "T is not the inverse map"
        except Exception:
            witness = witness or "underlying category is not a groupoid"

    semi_thin = unital and per_source and groupoid_ok

    hom_ok = all(len(cat.hom(x, y)) <= 1 for x in cat.objects for y in cat.objects)

    idents = cat.identities()
    s0 = tuple(name for name, members in partition.blocks.items() if members & idents)

    thin = False
    v_found = None
    phi = None
    if semi_thin and hom_ok:
        comps = cat.components()
        ident_block = {x: partition.block_of[cat.identity[x]] for x in cat.objects}
        if base_points is not None:
            v = tuple(base_points)
            ok = len(v) == len(comps)
            if ok:
                for comp in comps:
                    if len([x for x in v if x in comp]) != 1:
                        ok = False
                        break
            if ok:
                images = [ident_block[x] for x in v]
                ok = len(set(images)) == len(images) and set(images) == set(s0)
            if ok:
                thin, v_found = True, v
                phi = {x: ident_block[x] for x in v}
        else:
            if len(comps) == len(s0):
                choice = _search_base_points(comps, ident_block, set(s0))
                if choice is not None:
                    thin, v_found = True, tuple(choice)
                    phi = {x: ident_block[x] for x in v_found}

    return ThinnessReport(unital, per_source, groupoid_ok, semi_thin,
                          hom_ok, thin, v_found, phi, s0, witness)


def _search_base_points(comps, ident_block, s0):
    """One object per component whose identity blocks exhaust s0, by backtracking."""
    comps = [sorted(c) for c in comps]

    def extend(i, used, acc):
        if i == len(comps):
            return acc if used == s0 else None
        for x in comps[i]:
            b = ident_block[x]
            if b in used:
                continue
            got = extend(i + 1, used | {b}, acc + [x])
            if got is not None:
                return got
        return None

    return extend(0, set(), [])


def is_basic(qs: QuasiSchemoid) -> bool:
    """Unital with a groupoid underneath."""
    return is_unital(qs.category, qs.partition)[0] and is_groupoid(qs.category)


# ---------------------------------------------------------------------------
# Products and joins of quasi-schemoids
# ---------------------------------------------------------------------------

def schemoid_product(a: QuasiSchemoid, b: QuasiSchemoid) -> QuasiSchemoid:
    """Blockwise product; involutions combine componentwise when both exist."""
    cat, p1, p2 = product_with_projections(a.category, b.category)
    blocks: dict[str, list[str]] = {}
    for m in cat.morphism_ids:
        sa = a.partition.block_of[p1.morphism_map[m]]
        sb = b.partition.block_of[p2.morphism_map[m]]
        blocks.setdefault(f"({sa},{sb})", []).append(m)
    partition = make_partition(cat, blocks)
    involution = None
    if a.involution is not None and b.involution is not None:
        ta, tb = a.involution.functor, b.involution.functor
        omap = {}
        for x in a.category.objects:
            for y in b.category.objects:
                omap[f"({x},{y})"] = f"({ta.object_map[x]},{tb.object_map[y]})"
        mmap = {m: f"({ta.morphism_map[p1.morphism_map[m]]},{tb.morphism_map[p2.morphism_map[m]]})"
                for m in cat.morphism_ids}
        involution = check_association(cat, partition, Functor(omap, mmap, contravariant=True))
    return verify_quasi_schemoid(cat, partition, involution)


def schemoid_join(a: QuasiSchemoid, b: QuasiSchemoid) -> QuasiSchemoid:
    """Join with partition S ∪ S' ∪ one singleton per connecting morphism."""
    cat = join(a.category, b.category)
    blocks: dict[str, list[str]] = {}
    for name, members in a.partition.blocks.items():
        blocks[f"L.{name}"] = [f"L.{m}" for m in members]
    for name, members in b.partition.blocks.items():
        blocks[f"R.{name}"] = [f"R.{m}" for m in members]
    for x in a.category.objects:
        for y in b.category.objects:
            blocks[f"w[{x},{y}]"] = [f"w[{x},{y}]"]
    partition = make_partition(cat, blocks)
    return verify_quasi_schemoid(cat, partition)


# ---------------------------------------------------------------------------
# Isomorphism search
# ---------------------------------------------------------------------------

def schemoid_isomorphic(a: QuasiSchemoid, b: QuasiSchemoid) -> Functor | None:
    """Functor bijective on objects and morphisms carrying blocks onto blocks.

    Backtracking with pruning by size profiles; None means exhaustion.
    """
    ca, cb = a.category, b.category
    if len(ca.objects) != len(cb.objects) or len(ca.morphisms) != len(cb.morphisms):
        return None
    sizes = lambda qs: sorted(len(m) for m in qs.partition.blocks.values())
    if sizes(a) != sizes(b):
        return None

    def obj_profile(cat, x):
        outs = sorted(len(cat.hom(x, y)) for y in cat.objects)
        ins = sorted(len(cat.hom(y, x)) for y in cat.objects)
        return tuple(outs), tuple(ins)

    prof_a = {x: obj_profile(ca, x) for x in ca.objects}
    prof_b = {y: obj_profile(cb, y) for y in cb.objects}
    if sorted(prof_a.values()) != sorted(prof_b.values()):
        return None

    block_size_a = {n: len(m) for n, m in a.partition.blocks.items()}
    block_size_b = {n: len(m) for n, m in b.partition.blocks.items()}

    objects = list(ca.objects)

    def assign_objects(i, omap, used):
        if i == len(objects):
            yield dict(omap)
            return
        x = objects[i]
        for y in cb.objects:
            if y in used or prof_a[x] != prof_b[y]:
                continue
            ok = all(len(ca.hom(x, z)) == len(cb.hom(y, omap[z]))
                     and len(ca.hom(z, x)) == len(cb.hom(omap[z], y))
                     for z in omap)
            if not ok:
                continue
            omap[x] = y
            yield from assign_objects(i + 1, omap, used | {y})
            del omap[x]

    mor_a = list(ca.morphism_ids)

    def assign_morphisms(omap):
        mmap: dict[str, str] = {}
        used: set[str] = set()
        bmap: dict[str, str] = {}
        binv: dict[str, str] = {}

        def extend(i):
            if i == len(mor_a):
                # full composition check
                for (f, g), fg in ca.compose.items():
                    if cb.comp(mmap[f], mmap[g]) != mmap[fg]:
                        return None
                return Functor(dict(omap), dict(mmap))
            f = mor_a[i]
            bf = a.partition.block_of[f]
            cands = cb.hom(omap[ca.src(f)], omap[ca.tgt(f)])
            for h in cands:
                if h in used:
                    continue
                if ca.is_identity(f) != cb.is_identity(h):
                    continue
                bh = b.partition.block_of[h]
                if block_size_a[bf] != block_size_b[bh]:
                    continue
                if bf in bmap:
                    if bmap[bf] != bh:
                        continue
                elif bh in binv:
                    continue
                fresh = bf not in bmap
                if fresh:
                    bmap[bf] = bh
                    binv[bh] = bf
                mmap[f] = h
                used.add(h)
                # partial composition consistency
                consistent = True
                for g in mmap:
                    if (f, g) in ca.compose:
                        fg = ca.comp(f, g)
                        if fg in mmap and cb.comp(mmap[f], mmap[g]) != mmap[fg]:
                            consistent = False
                            break
                    if (g, f) in ca.compose:
                        gf = ca.comp(g, f)
                        if gf in mmap and cb.comp(mmap[g], mmap[f]) != mmap[gf]:
                            consistent = False
                            break
                if consistent:
                    got = extend(i + 1)
                    if got is not None:
                        return got
                used.discard(h)
                del mmap[f]
                if fresh:
                    del bmap[bf]
                    del binv[bh]
            return None

        return extend(0)

    for omap in assign_objects(0, {}, set()):
        got = assign_morphisms(omap)
        if got is not None:
            return got
    return None
