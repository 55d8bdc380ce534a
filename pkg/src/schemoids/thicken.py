"""Categories from transitive hom-count matrices and scheme thickenings.

Given a matrix Z with z_ij counting Hom(i, j) (diagonal at least 2), a
category exists whose non-identity composites all land on a chosen frame
morphism phi_ik; every non-frame non-identity morphism is therefore
composition-irreducible.  Thickening an association scheme picks
Z = sum_l z_l R_l + I, partitions the frame by the scheme classes and the
residual copies by parallel class, and the result is a unital
quasi-schemoid; with equal thickness it carries an involution pairing
phi_ij^lambda with phi_ji^lambda.

Morphism ids follow the pattern 'phi_i_j_lambda' with lambda = 0 on the
frame, so projections and induced maps stay auditable in reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .admissible import SchemoidMorphism, from_bridge_data, schemoid_morphism
from .bridges import blockwise_functor
from .fincat import FinCategory, Functor, build_category
from .schemes import CoherentConfiguration, pair_morphism
from .schemoid import (
    Involution,
    MorphismPartition,
    QuasiSchemoid,
    check_association,
    make_partition,
    verify_quasi_schemoid,
)


class ThickenError(Exception):
    pass


class NotTransitive(ThickenError):
    pass


class DiagonalTooSmall(ThickenError):
    pass


class NotAPartition(ThickenError):
    pass


class UnequalThickness(ThickenError):
    pass


class NotSchemeMorphism(ThickenError):
    pass


@dataclass(frozen=True, eq=False)
class FramedCategory:
    category: FinCategory
    labels: tuple[str, ...]                    # object labels in matrix order
    counts: tuple[tuple[int, ...], ...]        # the hom-count matrix
    frame: dict[tuple[str, str], str]          # (i, j) -> frame morphism id
    extras: dict[tuple[str, str], tuple[str, ...]]


def check_transitive(z) -> tuple[tuple[int, ...], ...]:
    z = tuple(tuple(int(x) for x in row) for row in z)
    m = len(z)
    if any(len(row) != m for row in z):
        raise ThickenError("matrix must be square")
    if any(x < 0 for row in z for x in row):
        raise ThickenError("entries must be nonnegative")
    for i in range(m):
        for j in range(m):
            if not z[i][j]:
                continue
            for k in range(m):
                if z[j][k] and not z[i][k]:
                    raise NotTransitive(f"z[{i}][{j}] and z[{j}][{k}] positive but z[{i}][{k}] = 0")
    return z


def category_from_matrix(z, labels=None) -> FramedCategory:
    """Category with |Hom(i, j)| = z_ij whose non-identity composites collapse
    onto the frame."""
    z = check_transitive(z)
    m = len(z)
    for i in range(m):
        if z[i][i] < 2:
            raise DiagonalTooSmall(f"diagonal entry {i} is {z[i][i]}, need at least 2")
    if labels is None:
        labels = tuple(str(i) for i in range(m))
    else:
        labels = tuple(str(x) for x in labels)

    name = lambda i, j, lam: f"phi_{labels[i]}_{labels[j]}_{lam}"
    ident = lambda i: f"id_{labels[i]}"
    objects = list(labels)
    morphisms = []
    frame = {}
    extras: dict[tuple[str, str], list[str]] = {}
    for i in range(m):
        morphisms.append((ident(i), labels[i], labels[i]))
    for i in range(m):
        for j in range(m):
            if not z[i][j]:
                continue
            frame[(labels[i], labels[j])] = name(i, j, 0)
            morphisms.append((name(i, j, 0), labels[i], labels[j]))
            top = z[i][j] - 1 if i != j else z[i][i] - 2
            lams = []
            for lam in range(1, top + 1):
                morphisms.append((name(i, j, lam), labels[i], labels[j]))
                lams.append(name(i, j, lam))
            extras[(labels[i], labels[j])] = lams
    compose = {}
    by_endpoints: dict[tuple[str, str], list[str]] = {}
    for mor, s, t in morphisms:
        if mor.startswith("phi_"):
            by_endpoints.setdefault((s, t), []).append(mor)
    for (i, j), first_batch in by_endpoints.items():
        for (j2, k), second_batch in by_endpoints.items():
            if j2 != j:
                continue
            target = frame[(i, k)]
            for g in first_batch:
                for f in second_batch:
                    compose[(f, g)] = target
    cat = build_category(objects, morphisms, {labels[i]: ident(i) for i in range(m)}, compose)
    return FramedCategory(cat, labels, z, frame,
                          {k: tuple(v) for k, v in extras.items()})


def frame_irreducibility(framed: FramedCategory):
    """Every factorization of a non-frame, non-identity morphism uses an identity.

    Returns (True, None) or (False, witness).
    """
    cat = framed.category
    frame_set = set(framed.frame.values())
    for (f, g), h in cat.compose.items():
        if h in frame_set or cat.is_identity(h):
            continue
        if not (cat.is_identity(f) or cat.is_identity(g)):
            return False, (f, g, h)
    return True, None


def sigma_prime(framed: FramedCategory, residual: str | dict = "lump") -> QuasiSchemoid:
    """Singleton frame blocks, one identity block, residual per request.

    residual: 'lump' (one block), 'singletons', or an explicit block dict.
    """
    cat = framed.category
    idents = set(cat.identity.values())
    frame_set = set(framed.frame.values())
    rest = [m for m in cat.morphism_ids if m not in idents and m not in frame_set]
    blocks: dict[str, list[str]] = {"1": sorted(idents)}
    for (i, j), mor in framed.frame.items():
        blocks[f"[{mor}]"] = [mor]
    if residual == "lump":
        if rest:
            blocks["Q"] = rest
    elif residual == "singletons":
        for m in rest:
            blocks[f"[{m}]"] = [m]
    else:
        given = {str(k): [str(x) for x in v] for k, v in residual.items()}
        listed = [m for v in given.values() for m in v]
        if sorted(listed) != sorted(rest):
            raise NotAPartition("residual blocks must partition the non-frame, "
                                "non-identity morphisms")
        blocks.update(given)
    partition = make_partition(cat, blocks)
    return verify_quasi_schemoid(cat, partition)


def thicken_scheme(scheme: CoherentConfiguration, thickness) -> QuasiSchemoid:
    """The thickened schemoid of a scheme: frame blocks by class, residual
    copies collected per class as sigma~."""
    classes = list(scheme.classes)
    if isinstance(thickness, int):
        thickness = [thickness] * len(classes)
    z_of_class = {c: int(t) for c, t in zip(classes, thickness)}
    if len(thickness) != len(classes):
        raise ThickenError("one thickness per class required")
    if any(t < 1 for t in z_of_class.values()):
        raise ThickenError("thickness must be at least 1")
    n = scheme.size
    z = [[0] * n for _ in range(n)]
    for xi in range(n):
        for yi in range(n):
            cls = scheme.classes[scheme.relation_of[xi][yi]]
            z[xi][yi] = z_of_class[cls] + (1 if xi == yi else 0)
    framed = category_from_matrix(z, labels=scheme.points)
    cat = framed.category

    blocks: dict[str, list[str]] = {"1": sorted(cat.identity.values())}
    for c in classes:
        blocks[c] = []
        blocks[f"{c}~"] = []
    for (i, j), mor in framed.frame.items():
        cls = scheme.class_of_pair(j, i)   # frame morphism i -> j sits over the pair (j, i)
        blocks[cls].append(mor)
        blocks[f"{cls}~"].extend(framed.extras[(i, j)])
    blocks = {k: v for k, v in blocks.items() if v}
    partition = make_partition(cat, blocks)
    qs = verify_quasi_schemoid(cat, partition)
    return QuasiSchemoid(cat, partition, qs.constants, None, None)


def residual_scaling_laws(sc: QuasiSchemoid, scheme: CoherentConfiguration, thickness):
    """The thickened constants against the base ones:

        p^s_{t u~}  = p^s_{t u} (z_u - 1)
        p^s_{u~ t}  = (z_u - 1) p^s_{u t}
        p^s_{u~ t~} = (z_u - 1) p^s_{u t} (z_t - 1)

    over all frame blocks; returns (ok, first bad tuple or None).
    """
    classes = list(scheme.classes)
    if isinstance(thickness, int):
        thickness = [thickness] * len(classes)
    z = {c: int(t) for c, t in zip(classes, thickness)}
    names = set(sc.block_names())
    for s in classes:
        for t in classes:
            for u in classes:
                base = sc.p(t, u, s)
                if f"{u}~" in names and sc.p(t, f"{u}~", s) != base * (z[u] - 1):
                    return False, ("right", s, t, u)
                if f"{u}~" in names and sc.p(f"{u}~", t, s) != (z[u] - 1) * sc.p(u, t, s):
                    return False, ("left", s, t, u)
                if f"{u}~" in names and f"{t}~" in names \
                        and sc.p(f"{u}~", f"{t}~", s) != (z[u] - 1) * sc.p(u, t, s) * (z[t] - 1):
                    return False, ("both", s, t, u)
    return True, None


def thicken_involution(sc: QuasiSchemoid, scheme: CoherentConfiguration, thickness) -> QuasiSchemoid:
    """Involution phi_ij^lam -> phi_ji^lam; needs equal thickness."""
    classes = list(scheme.classes)
    if isinstance(thickness, int):
        thickness = [thickness] * len(classes)
    if len(set(int(t) for t in thickness)) != 1:
        raise UnequalThickness("involution needs all class thicknesses equal")
    cat = sc.category
    omap = {x: x for x in cat.objects}
    mmap = {}
    for m in cat.morphism_ids:
        if m.startswith("id_"):
            mmap[m] = m
        else:
            i, j = cat.src(m), cat.tgt(m)
            lam = m.rsplit("_", 1)[1]
            mmap[m] = f"phi_{j}_{i}_{lam}"
    t = Functor(omap, mmap, contravariant=True)
    involution = check_association(cat, sc.partition, t)
    return QuasiSchemoid(cat, sc.partition, sc.constants, involution)


def projection_phi(sc: QuasiSchemoid, scheme: CoherentConfiguration,
                   j_image: QuasiSchemoid) -> SchemoidMorphism:
    """Collapse phi_i_j_lambda onto the complete-graph morphism i -> j,
    identifying phi_ii with the identity."""
    cat = sc.category
    omap = {x: x for x in cat.objects}
    mmap = {}
    for m in cat.morphism_ids:
        if m.startswith("id_"):
            i = cat.src(m)
            mmap[m] = pair_morphism(i, i)
        else:
            i, j = cat.src(m), cat.tgt(m)
            mmap[m] = pair_morphism(j, i)   # the morphism i -> j in the complete graph
    fun = Functor(omap, mmap)
    return schemoid_morphism(sc, j_image, fun)


def sc_functor(f_points: dict, source, target, z: int):
    """Thickened image of a scheme morphism: phi_i_j_lam -> psi_fi_fj_lam.

    f_points maps source points to target points and must send every class
    into a single class.
    """
    f_points = {str(k): str(v) for k, v in f_points.items()}
    src_scheme, src_sc = source
    tgt_scheme, tgt_sc = target
    for x in src_scheme.points:
        if f_points.get(x) not in tgt_scheme.points:
            raise NotSchemeMorphism(f"point {x!r} unmapped or mapped outside the target")
    for cls in src_scheme.classes:
        images = set()
        for xi, x in enumerate(src_scheme.points):
            for yi, y in enumerate(src_scheme.points):
                if src_scheme.classes[src_scheme.relation_of[xi][yi]] == cls:
                    images.add(tgt_scheme.class_of_pair(f_points[x], f_points[y]))
        if len(images) > 1:
            raise NotSchemeMorphism(f"class {cls!r} maps into {len(images)} classes")
    cat = src_sc.category
    omap = {x: f_points[x] for x in cat.objects}
    mmap = {}
    for m in cat.morphism_ids:
        if m.startswith("id_"):
            mmap[m] = f"id_{f_points[cat.src(m)]}"
        else:
            i, j = cat.src(m), cat.tgt(m)
            lam = m.rsplit("_", 1)[1]
            mmap[m] = f"phi_{f_points[i]}_{f_points[j]}_{lam}"
    fun = Functor(omap, mmap)
    return schemoid_morphism(src_sc, tgt_sc, fun)
