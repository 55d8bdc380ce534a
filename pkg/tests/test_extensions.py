import pytest

from schemoids.extensions import (
    BaseMismatch,
    Cochain2,
    NotACocycle,
    NotNormalized,
    brute_force_sections,
    build_extension,
    bw_cohomology,
    bw_differentials,
    coboundary_of_1cochain,
    cochain2_from_function,
    cochain2_sub,
    cocycle_defect,
    cocycle_from_json,
    cocycle_to_json,
    extensions_equivalent,
    induced_system,
    is_normalized,
    is_split,
    lift_involution,
    lift_schemoid,
    normalize_cocycle,
    trivial_system,
    validate_natural_system,
    zero_cochain2,
)
from schemoids.fincat import cyclic_group_table, one_object_group, terminal_category
from schemoids.schemes import hamming, j_embed, validate_scheme
from schemoids.schemoid import analyze_thinness, check_concatenation, discrete_partition, is_unital, verify_quasi_schemoid

from test_schemoid import group_bullet
from oracles import bar_complex_group_cohomology


def zcat(n):
    return one_object_group(*cyclic_group_table(n)).base


def product_base():
    """j(H(2,2)) x (Z/2)-bullet as a quasi-schemoid with involution."""
    from schemoids.schemoid import schemoid_product
    return schemoid_product(j_embed(hamming(2, 2)), group_bullet(2))


def z2_cocycle_on_product(base_cat):
    """Pullback of the nontrivial group 2-cocycle of Z/2: value a.b on the
    group components of the pair of morphisms."""
    def group_part(m):
        # product morphism ids look like "((x,y),g)" with g in {0, 1}
        return int(m[:-1].rsplit(",", 1)[1])

    def fn(f, g):
        return (group_part(f) * group_part(g) % 2,)

    return fn


def test_trivial_system_validates():
    for cat in (terminal_category(), zcat(2), j_embed(hamming(2, 2)).category):
        sys_ = trivial_system(cat, 2)
        validate_natural_system(cat, 2, sys_.rank, sys_.push, sys_.pull)


def test_induced_system_validates():
    cat = zcat(2)
    # H: one object -> (Z/3)^1 with H(g) = multiplication by -1 (order 2)
    sys_ = induced_system(cat, 3, {"*": 1}, {"0": [[1]], "1": [[2]]})
    validate_natural_system(cat, 3, sys_.rank, sys_.push, sys_.pull)


def test_broken_system_detected():
    cat = zcat(2)
    sys_ = trivial_system(cat, 2)
    push = dict(sys_.push)
    push[("1", "1")] = ((0,),)  # not the required composite
    from schemoids.extensions import FunctorialityViolated
    with pytest.raises(FunctorialityViolated):
        validate_natural_system(cat, 2, sys_.rank, push, sys_.pull)


def test_terminal_cohomology_vanishes():
    cat = terminal_category()
    for sys_ in (trivial_system(cat, 2), trivial_system(cat, 3, rank=2), trivial_system(cat, 4)):
        for deg in (1, 2):
            h = bw_cohomology(cat, sys_, deg)
            assert h.is_trivial


def test_group_cohomology_z2():
    cat = zcat(2)
    sys_ = trivial_system(cat, 2)
    h2 = bw_cohomology(cat, sys_, 2)
    assert h2.invariants == (2,) and h2.order == 2
    h1 = bw_cohomology(cat, sys_, 1)
    assert h1.invariants == (2,)  # Hom(Z/2, Z/2)


def test_group_cohomology_z3_mod2():
    cat = zcat(3)
    sys_ = trivial_system(cat, 2)
    assert bw_cohomology(cat, sys_, 2).is_trivial
    assert bw_cohomology(cat, sys_, 1).is_trivial


def test_group_cohomology_matches_bar_complex():
    """Degree 1 and 2 cross-check against the independently coded bar complex."""
    for n, m, rank in ((2, 2, 1), (3, 2, 1), (2, 3, 1), (4, 2, 1), (2, 2, 2), (2, 4, 1)):
        cat = zcat(n)
        sys_ = trivial_system(cat, m, rank=rank)
        els, table = cyclic_group_table(n)
        for deg in (1, 2):
            ours = bw_cohomology(cat, sys_, deg)
            oracle = bar_complex_group_cohomology(els, table, m, deg, rank=rank)
            assert sorted(ours.invariants) == sorted(oracle), (n, m, rank, deg)


def test_rational_cohomology_rank():
    cat = zcat(2)
    sys_ = trivial_system(cat, None)
    assert bw_cohomology(cat, sys_, 2).free_rank == 0  # finite group, Q coefficients


def test_complex_assembly_asserts_dd_zero():
    cat = j_embed(hamming(2, 2)).category
    sys_ = trivial_system(cat, 2)
    cx = bw_differentials(cat, sys_)
    assert cx.dim == (4, 16, 64, 256)


def test_cocycle_normalization():
    cat = zcat(2)
    sys_ = trivial_system(cat, 2)
    raw = cochain2_from_function(sys_, lambda f, g: (1,))
    assert not is_normalized(sys_, raw)
    fixed = normalize_cocycle(sys_, raw)
    assert is_normalized(sys_, fixed)
    # normalization preserves the class
    diff = cochain2_sub(sys_, raw, fixed)
    cx = bw_differentials(cat, sys_)
    from schemoids import linalg
    assert linalg.solve_mod_p(cx.d1, cx.cochain2_vector(diff), 2) is not None


def test_build_extension_zero_cocycle_z2():
    cat = zcat(2)
    sys_ = trivial_system(cat, 2)
    ext = build_extension(cat, sys_, zero_cochain2())
    assert len(ext.total.morphisms) == 4
    s = is_split(ext)
    assert s is not None
    # zero cocycle splits via the zero section
    assert s.morphism_map["0"] == "0|0"


def test_build_extension_rejects_bad_input():
    cat = zcat(2)
    sys_ = trivial_system(cat, 2)
    bad = Cochain2({("1", "0"): (1,)})  # g∘1 entry: not normalized
    with pytest.raises(NotNormalized):
        build_extension(cat, sys_, bad)
    not_cocycle = Cochain2({("1", "1"): (1,), ("0", "0"): (0,)})
    # delta(1,1)=1 alone IS the Z/4 cocycle; check it passes instead
    ext = build_extension(cat, sys_, not_cocycle)
    assert ext is not None


def test_z4_extension_of_z2_not_split():
    """The nontrivial class of H^2(Z/2; Z/2): total category is Z/4."""
    cat = zcat(2)
    sys_ = trivial_system(cat, 2)
    delta = Cochain2({("1", "1"): (1,)})
    ext = build_extension(cat, sys_, delta)
    assert is_split(ext) is None
    assert brute_force_sections(ext) == []
    # total category is the cyclic group of order 4: every element invertible,
    # and some element has order 4
    from schemoids.fincat import as_groupoid
    g = as_groupoid(ext.total)
    orders = set()
    for e in ext.total.morphism_ids:
        k, cur = 1, e
        while not ext.total.is_identity(cur):
            cur = ext.total.comp(e, cur)
            k += 1
        orders.add(k)
    assert 4 in orders


def test_split_matches_bruteforce():
    cat = zcat(2)
    sys_ = trivial_system(cat, 2)
    for delta, expect in ((zero_cochain2(), True), (Cochain2({("1", "1"): (1,)}), False)):
        ext = build_extension(cat, sys_, delta)
        assert (is_split(ext) is not None) == expect
        assert bool(brute_force_sections(ext)) == expect


def test_appendix_toy_composition():
    """(f,a,a')∘(g,b,b') = (f∘g, a+b, ab + a' + b') in the twisted extension."""
    base = product_base()
    cat = base.category
    sys_ = trivial_system(cat, 2)
    delta = cochain2_from_function(sys_, z2_cocycle_on_product(cat))
    assert is_normalized(sys_, delta)
    ext = build_extension(cat, sys_, delta)
    for (f, g) in list(cat.compose)[:32]:
        fa, fb = int(f[:-1].rsplit(",", 1)[1]), int(g[:-1].rsplit(",", 1)[1])
        for a2 in (0, 1):
            for b2 in (0, 1):
                e1 = f"{f}|{a2}"
                e2 = f"{g}|{b2}"
                comp = ext.total.comp(e1, e2)
                base_comp = cat.comp(f, g)
                expected_fiber = (fa * fb + a2 + b2) % 2
                assert comp == f"{base_comp}|{expected_fiber}"


def test_lift_schemoid_scaling_j_h22():
    base = j_embed(hamming(2, 2))
    sys_ = trivial_system(base.category, 2)
    ext = build_extension(base.category, sys_, zero_cochain2())
    lifted = lift_schemoid(base, ext)
    assert lifted.p("R1", "R1", "R2") == 4  # 2 x base constant 2
    for (s, t, m), v in base.constants.entries.items():
        assert lifted.p(s, t, m) == 2 * v


def test_lift_discrete_on_point():
    cat = terminal_category()
    qs = verify_quasi_schemoid(cat, discrete_partition(cat))
    sys_ = trivial_system(cat, 2)
    ext = build_extension(cat, sys_, zero_cochain2())
    lifted = lift_schemoid(qs, ext)
    assert len(lifted.partition) == 1
    only = lifted.block_names()[0]
    assert len(lifted.partition.blocks[only]) == 2
    assert lifted.p(only, only, only) == 2


def test_lift_involution_j_h22():
    base = j_embed(hamming(2, 2))
    sys_ = trivial_system(base.category, 2)
    ext = build_extension(base.category, sys_, zero_cochain2())
    schemoid = lift_involution(base, ext)
    assert schemoid.involution is not None
    # T-tilde is the inverse map on all 32 morphisms
    from schemoids.fincat import as_groupoid
    inv = as_groupoid(ext.total).inverse
    for e in ext.total.morphism_ids:
        assert schemoid.involution.functor.morphism_map[e] == inv[e]


def test_lift_involution_nontrivial_cocycle():
    base = product_base()
    cat = base.category
    sys_ = trivial_system(cat, 2)
    delta = cochain2_from_function(sys_, z2_cocycle_on_product(cat))
    ext = build_extension(cat, sys_, delta)
    schemoid = lift_involution(base, ext)
    assert not is_unital(schemoid.category, schemoid.partition)[0]
    # lifted constants are 2 x base on all triples
    for s in base.block_names():
        for t in base.block_names():
            for m in base.block_names():
                assert schemoid.p(s, t, m) == 2 * base.p(s, t, m)


def test_every_extension_of_j_h22_splits():
    base = j_embed(hamming(2, 2))
    cat = base.category
    sys_ = trivial_system(cat, 2)
    cx = bw_differentials(cat, sys_)
    assert bw_cohomology(cat, sys_, 2, cx).is_trivial
    # build one nonzero normalized cocycle as a coboundary and split it
    fvals = {m: (1,) for m in cat.morphism_ids if not cat.is_identity(m)}
    delta = coboundary_of_1cochain(sys_, fvals)
    assert delta.entries, "coboundary should be nonzero"
    assert is_normalized(sys_, delta)
    ext = build_extension(cat, sys_, delta)
    section = is_split(ext)
    assert section is not None


def test_two_classes_over_product_base():
    base = product_base()
    cat = base.category
    sys_ = trivial_system(cat, 2)
    cx = bw_differentials(cat, sys_)
    h2 = bw_cohomology(cat, sys_, 2, cx)
    assert h2.invariants == (2,) and h2.order == 2
    delta1 = cochain2_from_function(sys_, z2_cocycle_on_product(cat))
    e0 = build_extension(cat, sys_, zero_cochain2())
    e1 = build_extension(cat, sys_, delta1)
    assert is_split(e0, cx) is not None
    assert is_split(e1, cx) is None
    assert extensions_equivalent(e0, e0)
    assert not extensions_equivalent(e0, e1)


def test_equivalence_coboundary_shift():
    cat = zcat(2)
    sys_ = trivial_system(cat, 2)
    fvals = {"1": (1,)}
    shift = coboundary_of_1cochain(sys_, fvals)
    delta = Cochain2({("1", "1"): (1,)})
    shifted = cochain2_sub(sys_, delta, shift)
    e1 = build_extension(cat, sys_, delta)
    e2 = build_extension(cat, sys_, normalize_cocycle(sys_, shifted))
    assert extensions_equivalent(e1, e2)


def test_base_mismatch():
    e1 = build_extension(zcat(2), trivial_system(zcat(2), 2), zero_cochain2())
    cat3 = zcat(3)
    e2 = build_extension(cat3, trivial_system(cat3, 2), zero_cochain2())
    with pytest.raises(BaseMismatch):
        extensions_equivalent(e1, e2)


def test_cocycle_json_roundtrip():
    cat = zcat(2)
    sys_ = trivial_system(cat, 2)
    delta = Cochain2({("1", "1"): (1,)})
    assert cocycle_from_json(sys_, cocycle_to_json(delta)).entries == delta.entries


def test_composite_modulus_extension():
    """Z/4 coefficients on Z/2: H^2 = Z/2, exercised through the SNF path."""
    cat = zcat(2)
    sys_ = trivial_system(cat, 4)
    h2 = bw_cohomology(cat, sys_, 2)
    assert h2.invariants == (2,)
    delta = Cochain2({("1", "1"): (2,)})  # the order-2 class times 1? value 2 mod 4
    ext = build_extension(cat, sys_, delta)
    # delta = 2 * (the generator): is it split? solve over Z/4
    got = is_split(ext)
    # the class of delta: d F = delta needs F with F(g)+F(g)-F(0)... decided by solver;
    # cross-check against brute force
    assert (got is not None) == bool(brute_force_sections(ext))
