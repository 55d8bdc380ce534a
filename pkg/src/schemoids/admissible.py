"""Admissible schemoid morphisms, fiber multiplicities and induced algebra maps.

A morphism phi is admissible when every morphism g of the image block of
sigma ending at an image object phi(x) is hit by some f in sigma ending at
x.  Under the gates below the fiber counts #(phi^-1(g) ∩ x sigma) are
constant per block; these multiplicities define the algebra map
s_pi -> n_pi s_phi(pi), whose homomorphism property is re-certified rather
than assumed.

Gates for the multiplicities: the target must be basic, and the source
must either be a groupoid underneath or satisfy the unique-solution
condition: within fixed blocks, f∘g = h has at most one solution once two
of f, g, h are chosen.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraMap, HomCheckFailed, SchemoidAlgebra, check_algebra_hom, schemoid_algebra
from .bridges import SchemoidMorphismData, blockwise_functor
from .fincat import Functor, compose_functors, is_groupoid
from .schemoid import QuasiSchemoid, is_basic


class AdmissibilityError(Exception):
    pass


class NonConstantFiber(AdmissibilityError):
    pass


class HypothesisNotMet(AdmissibilityError):
    pass


@dataclass(frozen=True, eq=False)
class SchemoidMorphism:
    source: QuasiSchemoid
    target: QuasiSchemoid
    functor: Functor
    block_image: dict[str, str]

    def __call__(self, m: str) -> str:
        return self.functor.morphism_map[m]


def schemoid_morphism(source: QuasiSchemoid, target: QuasiSchemoid,
                      functor: Functor) -> SchemoidMorphism:
    data = blockwise_functor(source, target, functor)
    return SchemoidMorphism(source, target, data.functor, data.block_image)


def identity_morphism(qs: QuasiSchemoid) -> SchemoidMorphism:
    from .fincat import identity_functor
    return schemoid_morphism(qs, qs, identity_functor(qs.category))


def compose_schemoid_morphisms(second: SchemoidMorphism, first: SchemoidMorphism) -> SchemoidMorphism:
    if first.target is not second.source and first.target.category != second.source.category:
        raise AdmissibilityError("morphisms do not compose")
    return schemoid_morphism(first.source, second.target,
                             compose_functors(second.functor, first.functor))


def from_bridge_data(source: QuasiSchemoid, target: QuasiSchemoid,
                     data: SchemoidMorphismData) -> SchemoidMorphism:
    return SchemoidMorphism(source, target, data.functor, data.block_image)


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    failures: tuple            # (x, sigma, g) witnesses
    multiplicities: dict[str, int] | None
    kernel: tuple[str, ...]    # blocks mapped into identity blocks of the target

    def n(self, sigma: str) -> int:
        return self.multiplicities[sigma]


def is_admissible(phi: SchemoidMorphism) -> AdmissibilityReport:
    """Surjectivity of the target-anchored fibers, with all failures collected."""
    src_cat = phi.source.category
    tgt = phi.target
    failures = []
    for sigma, members in phi.source.partition.blocks.items():
        image_block = tgt.partition.blocks[phi.block_image[sigma]]
        by_target: dict[str, set[str]] = {}
        for f in members:
            by_target.setdefault(src_cat.tgt(f), set()).add(phi(f))
        for x in src_cat.objects:
            fx = phi.functor.object_map[x]
            hit = by_target.get(x, set())
            for g in image_block:
                if tgt.category.tgt(g) == fx and g not in hit:
                    failures.append((x, sigma, g))
    kernel = tuple(sigma for sigma in phi.source.block_names()
                   if phi.block_image[sigma] in _identity_blocks(tgt))
    report = AdmissibilityReport(not failures, tuple(failures), None, kernel)
    return report


def _identity_blocks(qs: QuasiSchemoid):
    idents = qs.category.identities()
    return {name for name, members in qs.partition.blocks.items() if members <= idents}


def gate_report(phi: SchemoidMorphism) -> dict[str, bool]:
    """Sufficient hypotheses for constant fibers; advisory by default since
    constancy itself is asserted during the computation (non-basic targets
    with uniform fibers do occur, extension projections being the prime
    case)."""
    ok_p, _ = condition_P(phi.source)
    return {
        "target_basic": is_basic(phi.target),
        "source_groupoid": is_groupoid(phi.source.category),
        "source_condition_P": ok_p,
    }


def multiplicities(phi: SchemoidMorphism, enforce_gates: bool = False) -> dict[str, int]:
    """Fiber counts n_sigma, verified constant over all eligible anchors.

    Constancy is always asserted; with enforce_gates the sufficient
    hypotheses (basic target, groupoid or uniquely-factoring source) are
    required up front as well.
    """
    if enforce_gates:
        gates = gate_report(phi)
        if not gates["target_basic"]:
            raise HypothesisNotMet("target schemoid is not basic")
        if not (gates["source_groupoid"] or gates["source_condition_P"]):
            raise HypothesisNotMet("source is neither a groupoid nor uniquely factoring")
    report = is_admissible(phi)
    if not report.admissible:
        raise HypothesisNotMet(f"morphism is not admissible: {report.failures[0]}")
    src_cat = phi.source.category
    out: dict[str, int] = {}
    for sigma, members in phi.source.partition.blocks.items():
        image_block = phi.target.partition.blocks[phi.block_image[sigma]]
        counts: dict[tuple[str, str], int] = {}
        for x in src_cat.objects:
            fx = phi.functor.object_map[x]
            for g in image_block:
                if phi.target.category.tgt(g) == fx:
                    counts[(x, g)] = 0
        for f in members:
            key = (src_cat.tgt(f), phi(f))
            counts[key] += 1
        values = set(counts.values())
        if len(values) != 1:
            witnesses = sorted(counts.items(), key=lambda kv: kv[1])
            raise NonConstantFiber(f"block {sigma!r}: counts range over {sorted(values)}; "
                                   f"extremes {witnesses[0]}, {witnesses[-1]}")
        out[sigma] = values.pop()
    return out


def verify_sum_identity(phi: SchemoidMorphism, mult: dict[str, int]):
    """sum over sigma with phi(sigma) = tau of p^sigma_{pi rho} n_sigma
    equals p^tau_{phi(pi) phi(rho)} n_pi n_rho, on every block triple.

    Returns (ok, table) with one row per (pi, rho, tau).
    """
    src = phi.source
    tgt = phi.target
    table = []
    ok = True
    for pi in src.block_names():
        for rho in src.block_names():
            for tau in tgt.block_names():
                lhs = sum(src.p(pi, rho, sigma) * mult[sigma]
                          for sigma in src.block_names() if phi.block_image[sigma] == tau)
                rhs = tgt.p(phi.block_image[pi], phi.block_image[rho], tau) * mult[pi] * mult[rho]
                table.append((pi, rho, tau, lhs, rhs))
                if lhs != rhs:
                    ok = False
    return ok, table


def induced_algebra_map(phi: SchemoidMorphism, ring,
                        source_algebra: SchemoidAlgebra | None = None,
                        target_algebra: SchemoidAlgebra | None = None) -> AlgebraMap:
    """The map s_pi -> n_pi s_phi(pi), with the hom property certified."""
    mult = multiplicities(phi)
    a = source_algebra if source_algebra is not None else schemoid_algebra(phi.source, ring)
    b = target_algebra if target_algebra is not None else schemoid_algebra(phi.target, ring)
    matrix = {}
    for pi in a.basis:
        coeff = ring.from_int(mult[pi])
        if coeff != ring.zero:
            matrix[(phi.block_image[pi], pi)] = coeff
    amap = AlgebraMap(a, b, matrix)
    ok, witness = check_algebra_hom(amap, a, b)
    if not ok:
        raise HomCheckFailed(f"induced map is not a homomorphism at {witness}")
    return amap


def condition_P(qs: QuasiSchemoid):
    """At most one in-block solution of f∘g = h for every choice of two of
    f, g, h.  Returns (True, None) or (False, witness)."""
    cat = qs.category
    block_of = qs.partition.block_of
    g_solutions: dict[tuple[str, str, str], str] = {}
    f_solutions: dict[tuple[str, str, str], str] = {}
    for (f, g), h in cat.compose.items():
        key_g = (f, h, block_of[g])
        other = g_solutions.get(key_g)
        if other is not None and other != g:
            return False, ("two right factors", f, h, other, g)
        g_solutions[key_g] = g
        key_f = (g, h, block_of[f])
        other = f_solutions.get(key_f)
        if other is not None and other != f:
            return False, ("two left factors", g, h, other, f)
        f_solutions[key_f] = f
    return True, None


def image_block_closure(phi: SchemoidMorphism):
    """Blocks with a positive constant over image blocks are image blocks.

    Returns (True, None) or (False, witness (pi, rho, tau)).
    """
    image = set(phi.block_image.values())
    tgt = phi.target
    for pi in image:
        for rho in image:
            for tau in tgt.block_names():
                if tgt.p(pi, rho, tau) > 0 and tau not in image:
                    return False, (pi, rho, tau)
    return True, None
