"""Functors between groupoids and schemoids, with round-trip verification.

s_tilde sends a groupoid H to the based association schemoid on ob = mor(H)
whose blocks collect the pairs (k, l) with k^-1 l fixed; r_tilde rebuilds a
groupoid out of a semi-thin schemoid from its identity blocks and the
uniquely-factoring block composition; for thin schemoids with base points
the two constructions compose to the identity, witnessed morphism by
morphism by the explicit functor pair built here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    FinCategory,
    Functor,
    Groupoid,
    NotAFunctor,
    build_category,
    validate_functor,
)
from .schemoid import (
    Involution,
    MorphismPartition,
    QuasiSchemoid,
    analyze_thinness,
    check_association,
    discrete_partition,
    make_partition,
    verify_quasi_schemoid,
)


class BridgeError(Exception):
    pass


class NotSemiThin(BridgeError):
    pass


class NotThin(BridgeError):
    pass


class UniquenessViolation(BridgeError):
    pass


class NotBlockwise(BridgeError):
    pass


class NotBasedMorphism(NotAFunctor):
    """Base points not preserved; the recovery formula would not apply."""


def pair_name(h: str, g: str) -> str:
    return f"({h},{g})"


def s_tilde(h: Groupoid) -> QuasiSchemoid:
    """Based association schemoid of a groupoid.

    Objects are the morphisms of H; Hom(g, h) = {(h, g)} when g and h share
    a target; the block of (k, l) is determined by k^-1 l; T flips pairs.
    Blocks from distinct components stay distinct: pairs from different
    components never share the k^-1 l value.
    """
    cat_h = h.base
    mors = list(cat_h.morphism_ids)
    objects = mors
    morphisms = []
    compose = {}
    by_target: dict[str, list[str]] = {}
    for m in mors:
        by_target.setdefault(cat_h.tgt(m), []).append(m)
    for group in by_target.values():
        for k in group:
            for l in group:
                morphisms.append((pair_name(k, l), l, k))
        for k in group:
            for m in group:
                for l in group:
                    compose[(pair_name(k, m), pair_name(m, l))] = pair_name(k, l)
    identity = {m: pair_name(m, m) for m in mors}
    cat = build_category(objects, morphisms, identity, compose)

    blocks: dict[str, list[str]] = {}
    for group in by_target.values():
        for k in group:
            for l in group:
                f = cat_h.comp(h.inverse[k], l)
                blocks.setdefault(f"G[{f}]", []).append(pair_name(k, l))
    partition = make_partition(cat, blocks)
    t = Functor({m: m for m in mors},
                {pair_name(k, l): pair_name(l, k)
                 for group in by_target.values() for k in group for l in group},
                contravariant=True)
    involution = check_association(cat, partition, t)
    base_points = tuple(cat_h.identity[x] for x in cat_h.objects)
    return verify_quasi_schemoid(cat, partition, involution, base_points)


@dataclass(frozen=True, eq=False)
class SchemoidMorphismData:
    """A functor between underlying categories together with its block map."""
    functor: Functor
    block_image: dict[str, str]


def blockwise_functor(source: QuasiSchemoid, target: QuasiSchemoid,
                      functor: Functor) -> SchemoidMorphismData:
    """Validate functor laws and that each block lands inside one block."""
    validate_functor(functor, source.category, target.category)
    block_image = {}
    for name, members in source.partition.blocks.items():
        images = {target.partition.block_of[functor.morphism_map[m]] for m in members}
        if len(images) != 1:
            raise NotBlockwise(f"block {name!r} maps into {len(images)} blocks")
        block_image[name] = images.pop()
    return SchemoidMorphismData(functor, block_image)


def s_tilde_on_functor(f: Functor, k: Groupoid, h: Groupoid) -> SchemoidMorphismData:
    """Image of a groupoid functor under s_tilde, verified blockwise."""
    validate_functor(f, k.base, h.base)
    sk = s_tilde(k)
    sh = s_tilde(h)
    omap = {m: f.morphism_map[m] for m in k.base.morphism_ids}
    mmap = {}
    for (pair, src, tgt) in sk.category.morphisms:
        mmap[pair] = pair_name(f.morphism_map[tgt], f.morphism_map[src])
    fun = Functor(omap, mmap)
    return blockwise_functor(sk, sh, fun)


def k_discrete(cat: FinCategory) -> QuasiSchemoid:
    """Quasi-schemoid with the singleton partition; U(K(C)) = C."""
    return verify_quasi_schemoid(cat, discrete_partition(cat))


def forget(qs: QuasiSchemoid) -> FinCategory:
    return qs.category


# ---------------------------------------------------------------------------
# Semi-thin analysis and the groupoid reconstruction
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ThinAnalysis:
    s0: tuple[str, ...]
    source_block: dict[str, str]       # sigma -> alpha with p^sigma_{sigma alpha} = 1
    target_block: dict[str, str]       # sigma -> beta with p^sigma_{beta sigma} = 1
    hom_blocks: dict[tuple[str, str], tuple[str, ...]]
    composition: dict[tuple[str, str], str]   # (tau, sigma) -> mu(tau, sigma)
    base_points: tuple[str, ...] | None
    phi: dict[str, str] | None


def thin_analysis(qs: QuasiSchemoid, require_thin: bool = False) -> ThinAnalysis:
    """Identity blocks, per-block endpoints and the unique block composition.

    The uniqueness facts behind the construction are recomputed here rather
    than assumed; a violation raises instead of producing a bad groupoid.
    """
    report = analyze_thinness(qs, qs.base_points)
    if not report.semi_thin:
        raise NotSemiThin(report.witness or "schemoid is not semi-thin")
    if require_thin and not report.thin:
        raise NotThin("no base-point set makes v -> block(1_v) bijective")
    names = qs.block_names()
    s0 = report.s0
    source_block = {}
    target_block = {}
    for sigma in names:
        alphas = [a for a in s0 if qs.p(sigma, a, sigma) == 1]
        if len(alphas) != 1 or any(qs.p(sigma, a, sigma) != 0 for a in s0 if a != alphas[0]):
            raise UniquenessViolation(f"no unique identity block composing into {sigma!r} on the right")
        betas = [b for b in s0 if qs.p(b, sigma, sigma) == 1]
        if len(betas) != 1 or any(qs.p(b, sigma, sigma) != 0 for b in s0 if b != betas[0]):
            raise UniquenessViolation(f"no unique identity block composing into {sigma!r} on the left")
        source_block[sigma] = alphas[0]
        target_block[sigma] = betas[0]
    hom_blocks: dict[tuple[str, str], list[str]] = {}
    for sigma in names:
        hom_blocks.setdefault((source_block[sigma], target_block[sigma]), []).append(sigma)
    composition = {}
    for sigma in names:
        for tau in names:
            # tau after sigma: target of sigma must be source of tau
            if target_block[sigma] != source_block[tau]:
                continue
            mus = [mu for mu in names if qs.p(tau, sigma, mu) == 1]
            others = [mu for mu in names if qs.p(tau, sigma, mu) not in (0, 1)]
            if len(mus) != 1 or others:
                raise UniquenessViolation(f"composite of blocks ({tau!r}, {sigma!r}) not unique")
            mu = mus[0]
            if source_block[mu] != source_block[sigma] or target_block[mu] != target_block[tau]:
                raise UniquenessViolation(f"composite block of ({tau!r}, {sigma!r}) has wrong endpoints")
            composition[(tau, sigma)] = mu
    return ThinAnalysis(s0, source_block, target_block,
                        {k: tuple(v) for k, v in hom_blocks.items()},
                        composition, report.base_points, report.phi)


def r_tilde(qs: QuasiSchemoid) -> Groupoid:
    """Groupoid with objects the identity blocks and morphisms the blocks."""
    analysis = thin_analysis(qs)
    objects = list(analysis.s0)
    morphisms = [(sigma, analysis.source_block[sigma], analysis.target_block[sigma])
                 for sigma in qs.block_names()]
    identity = {alpha: alpha for alpha in analysis.s0}
    cat = build_category(objects, morphisms, identity, dict(analysis.composition))
    inverse = {sigma: qs.involution.block_image[sigma] for sigma in qs.block_names()}
    for sigma, star in inverse.items():
        if (cat.comp(sigma, star) != identity[analysis.target_block[sigma]]
                or cat.comp(star, sigma) != identity[analysis.source_block[sigma]]):
            raise UniquenessViolation(f"block involution fails to invert {sigma!r}")
    return Groupoid(cat, inverse)


def r_tilde_on_functor(f: SchemoidMorphismData, source_g: Groupoid, target_g: Groupoid) -> Functor:
    """Induced groupoid functor on the reconstructions: block -> image block."""
    omap = {alpha: f.block_image[alpha] for alpha in source_g.base.objects}
    mmap = {sigma: f.block_image[sigma] for sigma in source_g.base.morphism_ids}
    fun = Functor(omap, mmap)
    validate_functor(fun, source_g.base, target_g.base)
    return fun


def canonical_groupoid_witness(g: Groupoid) -> Functor:
    """The functor x -> G[1_x], f -> G[f] onto r_tilde(s_tilde(G)), verified
    to be an isomorphism of categories."""
    rt = r_tilde(s_tilde(g))
    omap = {x: f"G[{g.base.identity[x]}]" for x in g.base.objects}
    mmap = {f: f"G[{f}]" for f in g.base.morphism_ids}
    fun = Functor(omap, mmap)
    validate_functor(fun, g.base, rt.base)
    if sorted(omap.values()) != sorted(rt.base.objects):
        raise BridgeError("canonical witness not bijective on objects")
    if sorted(mmap.values()) != sorted(rt.base.morphism_ids):
        raise BridgeError("canonical witness not bijective on morphisms")
    return fun


# ---------------------------------------------------------------------------
# The thin round trip
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ThinRoundTrip:
    double: QuasiSchemoid        # s_tilde(r_tilde(qs))
    phi: Functor                 # qs -> double
    psi: Functor                 # double -> qs


def phi_psi_check(qs: QuasiSchemoid) -> ThinRoundTrip:
    """Explicit inverse pair between a based thin schemoid and its double.

    Verifies functoriality, that both composites are identities on objects
    and morphisms, blockwise behaviour of both functors, and that phi sends
    the base points onto the identity blocks.
    """
    analysis = thin_analysis(qs, require_thin=True)
    v = analysis.base_points
    phi_map = analysis.phi
    gpd = r_tilde(qs)
    double = s_tilde(gpd)
    cat = qs.category

    base_of = {}
    for x in cat.objects:
        comp_v = [w for w in v if _same_component(cat, x, w)]
        if len(comp_v) != 1:
            raise NotThin(f"object {x!r} sees {len(comp_v)} base points")
        base_of[x] = comp_v[0]

    # phi: x -> block of the unique morphism x -> v
    sigma_of = {}
    for x in cat.objects:
        arrows = cat.hom(x, base_of[x])
        if len(arrows) != 1:
            raise NotThin(f"Hom({x!r}, base) is not a singleton")
        sigma_of[x] = qs.partition.block_of[arrows[0]]
    phi_obj = dict(sigma_of)
    phi_mor = {}
    for m in cat.morphism_ids:
        phi_mor[m] = pair_name(sigma_of[cat.tgt(m)], sigma_of[cat.src(m)])
    phi = Functor(phi_obj, phi_mor)
    validate_functor(phi, cat, double.category)

    # psi: block sigma -> source of its unique member targeting the base point
    f_of = {}
    for sigma in qs.block_names():
        beta = analysis.target_block[sigma]
        vb = next(w for w in v if phi_map[w] == beta)
        members = [m for m in qs.partition.blocks[sigma] if cat.tgt(m) == vb]
        if len(members) != 1:
            raise NotThin(f"block {sigma!r} has {len(members)} members into its base point")
        f_of[sigma] = members[0]
    gpd_inv = _category_inverse(cat)
    psi_obj = {sigma: cat.src(f_of[sigma]) for sigma in qs.block_names()}
    psi_mor = {}
    for (m, src, tgt) in double.category.morphisms:
        # m: sigma -> tau in the double is the pair (tau, sigma)
        sigma, tau = src, tgt
        psi_mor[m] = cat.comp(gpd_inv[f_of[tau]], f_of[sigma])
    psi = Functor(psi_obj, psi_mor)
    validate_functor(psi, double.category, cat)

    for x in cat.objects:
        if psi_obj[phi_obj[x]] != x:
            raise BridgeError(f"psi(phi({x!r})) != {x!r}")
    for m in cat.morphism_ids:
        if psi_mor[phi_mor[m]] != m:
            raise BridgeError(f"psi(phi({m!r})) != {m!r}")
    for sigma in double.category.objects:
        if phi_obj[psi_obj[sigma]] != sigma:
            raise BridgeError(f"phi(psi({sigma!r})) != {sigma!r}")
    for m in double.category.morphism_ids:
        if phi_mor[psi_mor[m]] != m:
            raise BridgeError(f"phi(psi({m!r})) != {m!r}")

    blockwise_functor(qs, double, phi)
    blockwise_functor(double, qs, psi)

    if sorted(sigma_of[w] for w in v) != sorted(analysis.s0):
        raise BridgeError("phi does not carry base points onto the identity blocks")
    return ThinRoundTrip(double, phi, psi)


def _same_component(cat, x, y):
    for comp in cat.components():
        if x in comp:
            return y in comp
    return False


def _category_inverse(cat):
    from .fincat import as_groupoid
    return as_groupoid(cat).inverse


# ---------------------------------------------------------------------------
# Faithfulness round trip
# ---------------------------------------------------------------------------

def faithfulness_roundtrip(g: SchemoidMorphismData, k: Groupoid, h: Groupoid) -> Functor:
    """Recover the groupoid functor underneath a based morphism of s_tilde images.

    The object part of G acts on mor(K); base-point preservation means every
    identity of K is sent to an identity of H.  The recovered functor is
    F(x) = s(G(1_x)) and F(f) = G(1_{t(f)})^-1 ∘ G(f); s_tilde of it must
    reproduce G exactly.
    """
    ck, ch = k.base, h.base
    gmap = g.functor.object_map       # mor(K) -> mor(H)
    idents_h = ch.identities()
    for x in ck.objects:
        if gmap[ck.identity[x]] not in idents_h:
            raise NotBasedMorphism(f"base point {ck.identity[x]!r} maps to a non-identity")
    fobj = {x: ch.src(gmap[ck.identity[x]]) for x in ck.objects}
    fmor = {}
    for f in ck.morphism_ids:
        at_target = gmap[ck.identity[ck.tgt(f)]]
        fmor[f] = ch.comp(h.inverse[at_target], gmap[f])
    fun = Functor(fobj, fmor)
    validate_functor(fun, ck, ch)
    back = s_tilde_on_functor(fun, k, h)
    if back.functor.object_map != g.functor.object_map \
            or back.functor.morphism_map != g.functor.morphism_map:
        raise BridgeError("s_tilde of the recovered functor differs from the input")
    return fun
