"""Natural systems, low-degree cohomology of the factorization complex, and
linear extensions of quasi-schemoids.

A natural system assigns to every morphism f a finite free module
D_f = (Z/m)^r (or Q^r) together with pushforward maps a_* : D_f -> D_{af}
and pullback maps b^* : D_f -> D_{fb}, functorially.  Cochains live on
composable tuples; the differentials follow the alternating-sum pattern

    (d F)(f, g)    = f_* F(g) - F(fg) + g^* F(f)
    (d D)(f, g, h) = f_* D(g, h) - D(fg, h) + D(f, gh) - h^* D(f, g)

whose degree-2 instance at (f, f^-1, f) pins the sign convention; d∘d = 0
is asserted on every built complex.  Extensions twist composition by a
normalized 2-cocycle: (g, b)∘(f, a) = (g∘f, -D(g, f) + g_* a + f^* b).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from . import linalg
from .fincat import FinCategory, Functor, Groupoid, build_category, validate_functor
from .schemoid import (
    AxiomViolation,
    Involution,
    QuasiSchemoid,
    check_association,
    check_concatenation,
    make_partition,
    verify_quasi_schemoid,
)


class ExtensionError(Exception):
    pass


class FunctorialityViolated(ExtensionError):
    pass


class NotACocycle(ExtensionError):
    pass


class NotNormalized(ExtensionError):
    pass


class HypothesisFailed(ExtensionError):
    pass


class AxiomFailedAfterLift(ExtensionError):
    """Internal error: the lifted partition must satisfy the axiom."""


class BaseNotConnectedGroupoid(ExtensionError):
    pass


class SystemNotInduced(ExtensionError):
    pass


class BaseMismatch(ExtensionError):
    pass


Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def _identity_matrix(r: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def _apply(mat: Matrix, vec: Vector, modulus: int | None) -> Vector:
    out = tuple(sum(m * v for m, v in zip(row, vec)) for row in mat)
    if modulus is not None:
        out = tuple(x % modulus for x in out)
    return out


def _vec_add(u: Vector, v: Vector, modulus: int | None) -> Vector:
    out = tuple(a + b for a, b in zip(u, v))
    return tuple(x % modulus for x in out) if modulus is not None else out


def _vec_neg(u: Vector, modulus: int | None) -> Vector:
    out = tuple(-a for a in u)
    return tuple(x % modulus for x in out) if modulus is not None else out


def _vec_zero(r: int) -> Vector:
    return (0,) * r


@dataclass(frozen=True, eq=False)
class NaturalSystem:
    category: FinCategory
    modulus: int | None                      # None means rational coefficients
    rank: dict[str, int]                     # morphism -> rank of D_f
    push: dict[tuple[str, str], Matrix]      # (a, f) with src a = tgt f: D_f -> D_{af}
    pull: dict[tuple[str, str], Matrix]      # (f, b) with tgt b = src f: D_f -> D_{fb}

    def fiber_size(self, f: str) -> int:
        if self.modulus is None:
            raise ExtensionError("rational fibers are infinite")
        return self.modulus ** self.rank[f]

    def fiber_vectors(self, f: str):
        return iproduct(range(self.modulus), repeat=self.rank[f])

    def __eq__(self, other):
        if not isinstance(other, NaturalSystem):
            return NotImplemented
        if self.category != other.category or self.modulus != other.modulus \
                or self.rank != other.rank:
            return False
        m = self.modulus
        for key in self.push:
            if not linalg.mat_eq_mod([list(r) for r in self.push[key]],
                                     [list(r) for r in other.push[key]], m):
                return False
        for key in self.pull:
            if not linalg.mat_eq_mod([list(r) for r in self.pull[key]],
                                     [list(r) for r in other.pull[key]], m):
                return False
        return True


def _check_shapes(cat, rank, push, pull):
    for (a, f), mat in push.items():
        if (a, f) not in cat.compose:
            raise FunctorialityViolated(f"push key ({a!r}, {f!r}) is not composable")
        af = cat.comp(a, f)
        if len(mat) != rank[af] or any(len(row) != rank[f] for row in mat):
            raise FunctorialityViolated(f"push matrix for ({a!r}, {f!r}) has wrong shape")
    for (f, b), mat in pull.items():
        if (f, b) not in cat.compose:
            raise FunctorialityViolated(f"pull key ({f!r}, {b!r}) is not composable")
        fb = cat.comp(f, b)
        if len(mat) != rank[fb] or any(len(row) != rank[f] for row in mat):
            raise FunctorialityViolated(f"pull matrix for ({f!r}, {b!r}) has wrong shape")


def validate_natural_system(cat: FinCategory, modulus, rank, push, pull) -> NaturalSystem:
    """Verify all the functoriality squares of a raw system by matrix equality."""
    rank = {str(k): int(v) for k, v in rank.items()}
    if set(rank) != set(cat.morphism_ids):
        raise FunctorialityViolated("rank table must cover exactly the morphisms")
    push = {k: tuple(tuple(int(x) for x in row) for row in v) for k, v in push.items()}
    pull = {k: tuple(tuple(int(x) for x in row) for row in v) for k, v in pull.items()}
    for (f, g) in cat.compose:
        if (f, g) not in push:
            raise FunctorialityViolated(f"push map for ({f!r}, {g!r}) missing")
        if (f, g) not in pull:
            raise FunctorialityViolated(f"pull map for ({f!r}, {g!r}) missing")
    _check_shapes(cat, rank, push, pull)
    m = modulus
    eq = lambda a, b: linalg.mat_eq_mod([list(r) for r in a], [list(r) for r in b], m)
    mul = lambda a, b: linalg.mat_mul([list(r) for r in a], [list(r) for r in b])
    for f in cat.morphism_ids:
        if not eq(push[(cat.identity[cat.tgt(f)], f)], _identity_matrix(rank[f])):
            raise FunctorialityViolated(f"identity pushforward at {f!r} is not the identity")
        if not eq(pull[(f, cat.identity[cat.src(f)])], _identity_matrix(rank[f])):
            raise FunctorialityViolated(f"identity pullback at {f!r} is not the identity")
    for (a2, a1), a21 in cat.compose.items():
        for f in cat.morphism_ids:
            if (a1, f) not in cat.compose:
                continue
            a1f = cat.comp(a1, f)
            if not eq(push[(a21, f)], mul(push[(a2, a1f)], push[(a1, f)])):
                raise FunctorialityViolated(f"pushforwards not functorial at ({a2!r}, {a1!r}, {f!r})")
    for (b1, b2), b12 in cat.compose.items():
        for f in cat.morphism_ids:
            if (f, b1) not in cat.compose:
                continue
            fb1 = cat.comp(f, b1)
            if not eq(pull[(f, b12)], mul(pull[(fb1, b2)], pull[(f, b1)])):
                raise FunctorialityViolated(f"pullbacks not functorial at ({f!r}, {b1!r}, {b2!r})")
    for f in cat.morphism_ids:
        for a in cat.morphism_ids:
            if (a, f) not in cat.compose:
                continue
            for b in cat.morphism_ids:
                if (f, b) not in cat.compose:
                    continue
                fb = cat.comp(f, b)
                af = cat.comp(a, f)
                if not eq(mul(push[(a, fb)], pull[(f, b)]),
                          mul(pull[(af, b)], push[(a, f)])):
                    raise FunctorialityViolated(
                        f"push/pull do not commute at ({a!r}, {f!r}, {b!r})")
    return NaturalSystem(cat, modulus, rank, push, pull)


def trivial_system(cat: FinCategory, modulus: int | None, rank: int = 1) -> NaturalSystem:
    ranks = {f: rank for f in cat.morphism_ids}
    ident = _identity_matrix(rank)
    push = {key: ident for key in cat.compose}
    pull = {key: ident for key in cat.compose}
    return NaturalSystem(cat, modulus, ranks, push, pull)


def induced_system(cat: FinCategory, modulus: int | None, object_rank: dict,
                   maps: dict) -> NaturalSystem:
    """System induced from a functor into modules: D_f = H(tgt f), a_* = H(a),
    pullbacks are identities."""
    object_rank = {str(k): int(v) for k, v in object_rank.items()}
    maps = {str(k): tuple(tuple(int(x) for x in row) for row in v) for k, v in maps.items()}
    eq = lambda a, b: linalg.mat_eq_mod([list(r) for r in a], [list(r) for r in b], modulus)
    mul = lambda a, b: linalg.mat_mul([list(r) for r in a], [list(r) for r in b])
    for x in cat.objects:
        if not eq(maps[cat.identity[x]], _identity_matrix(object_rank[x])):
            raise FunctorialityViolated(f"module map at identity of {x!r} is not the identity")
    for (f, g), fg in cat.compose.items():
        if not eq(maps[fg], mul(maps[f], maps[g])):
            raise FunctorialityViolated(f"module maps not functorial at ({f!r}, {g!r})")
    rank = {f: object_rank[cat.tgt(f)] for f in cat.morphism_ids}
    push = {(a, f): maps[a] for (a, f) in cat.compose}
    pull = {(f, b): _identity_matrix(rank[f]) for (f, b) in cat.compose}
    return NaturalSystem(cat, modulus, rank, push, pull)


# ---------------------------------------------------------------------------
# Cochains
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Cochain2:
    """2-cochain: a fiber element per composable pair (f, g), f applied second."""
    entries: dict[tuple[str, str], Vector]

    def value(self, system: NaturalSystem, f: str, g: str) -> Vector:
        got = self.entries.get((f, g))
        if got is not None:
            return got
        fg = system.category.comp(f, g)
        return _vec_zero(system.rank[fg])


def zero_cochain2() -> Cochain2:
    return Cochain2({})


def cochain2_from_function(system: NaturalSystem, fn) -> Cochain2:
    entries = {}
    for (f, g) in system.category.compose:
        v = tuple(fn(f, g))
        if any(v):
            entries[(f, g)] = v
    return Cochain2(entries)


def cochain2_sub(system: NaturalSystem, a: Cochain2, b: Cochain2) -> Cochain2:
    entries = {}
    for key in set(a.entries) | set(b.entries):
        v = _vec_add(a.value(system, *key), _vec_neg(b.value(system, *key), system.modulus),
                     system.modulus)
        if any(v):
            entries[key] = v
    return Cochain2(entries)


def is_normalized(system: NaturalSystem, delta: Cochain2) -> bool:
    cat = system.category
    for (f, g), v in delta.entries.items():
        if (cat.is_identity(f) or cat.is_identity(g)) and any(
                x % system.modulus if system.modulus else x for x in v):
            return False
    return True


def coboundary_of_1cochain(system: NaturalSystem, fvals: dict) -> Cochain2:
    """d F as a 2-cochain, for F given per morphism."""
    cat = system.category
    m = system.modulus

    def fn(f, g):
        fg = cat.comp(f, g)
        val = _apply(system.push[(f, g)], fvals.get(g, _vec_zero(system.rank[g])), m)
        val = _vec_add(val, _vec_neg(fvals.get(fg, _vec_zero(system.rank[fg])), m), m)
        val = _vec_add(val, _apply(system.pull[(f, g)], fvals.get(f, _vec_zero(system.rank[f])), m), m)
        return val

    return cochain2_from_function(system, fn)


def cocycle_defect(system: NaturalSystem, delta: Cochain2):
    """First composable triple where d(delta) is nonzero, or None."""
    cat = system.category
    m = system.modulus
    for (f, g) in cat.compose:
        fg = cat.comp(f, g)
        for h in cat.morphism_ids:
            if (g, h) not in cat.compose:
                continue
            gh = cat.comp(g, h)
            val = _apply(system.push[(f, gh)], delta.value(system, g, h), m)
            val = _vec_add(val, _vec_neg(delta.value(system, fg, h), m), m)
            val = _vec_add(val, delta.value(system, f, gh), m)
            val = _vec_add(val, _vec_neg(
                _apply(system.pull[(fg, h)], delta.value(system, f, g), m), m), m)
            if any(val):
                return (f, g, h, val)
    return None


def normalize_cocycle(system: NaturalSystem, delta: Cochain2) -> Cochain2:
    """Cohomologous normalized representative (subtract d of an identity-supported
    1-cochain)."""
    cat = system.category
    fvals = {}
    for x in cat.objects:
        e = cat.identity[x]
        v = delta.value(system, e, e)
        if any(v):
            fvals[e] = v
    if not fvals:
        return delta
    return cochain2_sub(system, delta, coboundary_of_1cochain(system, fvals))


def cocycle_from_json(system: NaturalSystem, raw: dict) -> Cochain2:
    entries = {}
    for f, g, vec in raw["entries"]:
        vec = tuple(int(x) for x in (vec if isinstance(vec, list) else [vec]))
        if (str(f), str(g)) not in system.category.compose:
            raise ExtensionError(f"cocycle entry ({f!r}, {g!r}) is not a composable pair")
        if any(vec):
            entries[(str(f), str(g))] = vec
    return Cochain2(entries)


def cocycle_to_json(delta: Cochain2) -> dict:
    return {"entries": [[f, g, list(v)] for (f, g), v in sorted(delta.entries.items())]}


# ---------------------------------------------------------------------------
# The cochain complex in degrees 0..3
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BWComplex:
    system: NaturalSystem
    basis0: list                 # objects
    basis1: list                 # morphisms
    basis2: list                 # composable pairs (f, g)
    basis3: list                 # composable triples (f, g, h)
    offset0: dict
    offset1: dict
    offset2: dict
    offset3: dict
    dim: tuple[int, int, int, int]
    d0: list[list[int]]
    d1: list[list[int]]
    d2: list[list[int]]

    def cochain2_vector(self, delta: Cochain2) -> list[int]:
        vec = [0] * self.dim[2]
        for (f, g), v in delta.entries.items():
            off = self.offset2[(f, g)]
            for i, x in enumerate(v):
                vec[off + i] = x
        return vec

    def vector_to_1cochain(self, vec) -> dict:
        out = {}
        for f in self.basis1:
            off = self.offset1[f]
            r = self.system.rank[f]
            v = tuple(vec[off + i] for i in range(r))
            if any(v):
                out[f] = v
        return out


def bw_differentials(cat: FinCategory, system: NaturalSystem) -> BWComplex:
    """Assemble the degree 0..2 differentials as integer matrices and assert
    that consecutive ones compose to zero."""
    rank = system.rank
    basis0 = list(cat.objects)
    basis1 = list(cat.morphism_ids)
    basis2 = [key for key in cat.compose]
    basis3 = []
    for (f, g) in basis2:
        for h in basis1:
            if (g, h) in cat.compose:
                basis3.append((f, g, h))

    def offsets(basis, rank_of):
        off = {}
        total = 0
        for b in basis:
            off[b] = total
            total += rank_of(b)
        return off, total

    offset0, dim0 = offsets(basis0, lambda x: rank[cat.identity[x]])
    offset1, dim1 = offsets(basis1, lambda f: rank[f])
    offset2, dim2 = offsets(basis2, lambda fg: rank[cat.comp(*fg)])
    offset3, dim3 = offsets(basis3, lambda t: rank[cat.comp(cat.comp(t[0], t[1]), t[2])])

    d0 = [[0] * dim0 for _ in range(dim1)]
    for f in basis1:
        rof = offset1[f]
        sx, tx = cat.src(f), cat.tgt(f)
        _add_block(d0, rof, offset0[sx], system.push[(f, cat.identity[sx])], 1)
        _add_block(d0, rof, offset0[tx], system.pull[(cat.identity[tx], f)], -1)

    d1 = [[0] * dim1 for _ in range(dim2)]
    for (f, g) in basis2:
        rof = offset2[(f, g)]
        fg = cat.comp(f, g)
        _add_block(d1, rof, offset1[g], system.push[(f, g)], 1)
        _add_block(d1, rof, offset1[fg], _identity_matrix(rank[fg]), -1)
        _add_block(d1, rof, offset1[f], system.pull[(f, g)], 1)

    d2 = [[0] * dim2 for _ in range(dim3)]
    for (f, g, h) in basis3:
        rof = offset3[(f, g, h)]
        fg = cat.comp(f, g)
        gh = cat.comp(g, h)
        fgh = cat.comp(fg, h)
        _add_block(d2, rof, offset2[(g, h)], system.push[(f, gh)], 1)
        _add_block(d2, rof, offset2[(fg, h)], _identity_matrix(rank[fgh]), -1)
        _add_block(d2, rof, offset2[(f, gh)], _identity_matrix(rank[fgh]), 1)
        _add_block(d2, rof, offset2[(f, g)], system.pull[(fg, h)], -1)

    cx = BWComplex(system, basis0, basis1, basis2, basis3,
                   offset0, offset1, offset2, offset3,
                   (dim0, dim1, dim2, dim3), d0, d1, d2)
    _assert_zero_composite(d1, d0, system.modulus, "d1∘d0")
    _assert_zero_composite(d2, d1, system.modulus, "d2∘d1")
    return cx


def _add_block(mat, row_off, col_off, block, sign):
    for i, row in enumerate(block):
        target = mat[row_off + i]
        for j, x in enumerate(row):
            if x:
                target[col_off + j] += sign * x


def _assert_zero_composite(second, first, modulus, label):
    prod = linalg.mat_mul(second, first)
    for row in prod:
        for x in row:
            if (x % modulus if modulus else x) != 0:
                raise ExtensionError(f"{label} is not zero; differential assembly is wrong")


@dataclass(frozen=True)
class CohomologyGroup:
    invariants: tuple[int, ...]   # cyclic orders > 1
    free_rank: int                # dimension over Q when rational

    @property
    def is_trivial(self) -> bool:
        return not self.invariants and self.free_rank == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariants]
        if self.free_rank:
            parts.append(f"Q^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def bw_cohomology(cat: FinCategory, system: NaturalSystem, degree: int,
                  complex_: BWComplex | None = None) -> CohomologyGroup:
    """Cohomology of the natural-system complex in degree 1 or 2."""
    if degree not in (1, 2):
        raise ExtensionError("only degrees 1 and 2 are supported")
    cx = complex_ if complex_ is not None else bw_differentials(cat, system)
    d_n = cx.d2 if degree == 2 else cx.d1
    d_prev = cx.d1 if degree == 2 else cx.d0
    dim_n = cx.dim[degree]
    m = system.modulus
    if m is None:
        k = dim_n - linalg.rank_rational(d_n) - linalg.rank_rational(d_prev)
        return CohomologyGroup((), k)
    if linalg.is_prime(m):
        k = dim_n - linalg.rank_mod_p(d_n, m) - linalg.rank_mod_p(d_prev, m)
        return CohomologyGroup((m,) * k, 0)
    kernel = linalg.kernel_lattice_mod(d_n, m)
    cols_prev = len(d_prev[0]) if d_prev else 0
    gens = [[d_prev[i][j] for j in range(cols_prev)]
            + [m if i == j else 0 for j in range(dim_n)] for i in range(dim_n)]
    return CohomologyGroup(tuple(linalg.quotient_invariants(kernel, gens)), 0)


# ---------------------------------------------------------------------------
# Building extensions
# ---------------------------------------------------------------------------

def fiber_morphism_name(f: str, vec: Vector) -> str:
    return f"{f}|{'.'.join(str(x) for x in vec)}"


@dataclass(frozen=True, eq=False)
class ExtensionCategory:
    base: FinCategory
    system: NaturalSystem
    cocycle: Cochain2
    total: FinCategory
    projection: Functor
    fiber: dict[str, tuple[str, ...]]             # base morphism -> fiber ids
    decomposition: dict[str, tuple[str, Vector]]  # total id -> (base, vector)

    def act(self, e: str, alpha: Vector) -> str:
        f, vec = self.decomposition[e]
        return fiber_morphism_name(f, _vec_add(vec, alpha, self.system.modulus))


def build_extension(cat: FinCategory, system: NaturalSystem, delta: Cochain2) -> ExtensionCategory:
    """Total category with composition twisted by a normalized cocycle.

    The fiber over f is D_f acting by translation; fullness, the torsor
    property and the linear distributivity law are all verified on the
    result.
    """
    if system.modulus is None:
        raise ExtensionError("building a finite extension needs a finite modulus")
    if system.category != cat:
        raise BaseMismatch("system lives over a different category")
    if not is_normalized(system, delta):
        raise NotNormalized("cocycle must vanish on identity pairs")
    defect = cocycle_defect(system, delta)
    if defect is not None:
        raise NotACocycle(f"d(delta) != 0 at {defect[:3]}")
    m = system.modulus

    morphisms = []
    fiber: dict[str, list[str]] = {}
    decomposition: dict[str, tuple[str, Vector]] = {}
    for f in cat.morphism_ids:
        for vec in system.fiber_vectors(f):
            e = fiber_morphism_name(f, vec)
            morphisms.append((e, cat.src(f), cat.tgt(f)))
            fiber.setdefault(f, []).append(e)
            decomposition[e] = (f, vec)
    identity = {x: fiber_morphism_name(cat.identity[x], _vec_zero(system.rank[cat.identity[x]]))
                for x in cat.objects}
    compose = {}
    for (g, f), gf in cat.compose.items():
        d_val = delta.value(system, g, f)
        push_gf = system.push[(g, f)]
        pull_gf = system.pull[(g, f)]
        for a in system.fiber_vectors(f):
            ga = _apply(push_gf, a, m)
            for b in system.fiber_vectors(g):
                val = _vec_add(_vec_neg(d_val, m),
                               _vec_add(ga, _apply(pull_gf, b, m), m), m)
                compose[(fiber_morphism_name(g, b), fiber_morphism_name(f, a))] = \
                    fiber_morphism_name(gf, val)
    total = build_category(cat.objects, morphisms, identity, compose)
    projection = Functor({x: x for x in cat.objects},
                         {e: decomposition[e][0] for e in total.morphism_ids})
    validate_functor(projection, total, cat)

    ext = ExtensionCategory(cat, system, delta, total, projection,
                            {f: tuple(v) for f, v in fiber.items()}, decomposition)
    _verify_torsor(ext)
    _verify_distributivity(ext)
    return ext


def _verify_torsor(ext: ExtensionCategory):
    system = ext.system
    for f in ext.base.morphism_ids:
        fib = ext.fiber[f]
        if len(fib) != system.fiber_size(f):
            raise ExtensionError(f"fiber over {f!r} has the wrong size")
        # translation acts freely and transitively
        base_elt = fib[0]
        orbit = {ext.act(base_elt, alpha) for alpha in system.fiber_vectors(f)}
        if orbit != set(fib):
            raise ExtensionError(f"fiber action over {f!r} is not transitive")


def _verify_distributivity(ext: ExtensionCategory):
    # (f0 + a)(g0 + b) = f0 g0 + f_* b + g^* a over every composable base pair
    cat, system, total = ext.base, ext.system, ext.total
    m = system.modulus
    for (f, g), _fg in cat.compose.items():
        f0 = ext.fiber[f][0]
        g0 = ext.fiber[g][0]
        base_comp = total.comp(f0, g0)
        for a in system.fiber_vectors(f):
            fa = ext.act(f0, a)
            for b in system.fiber_vectors(g):
                gb = ext.act(g0, b)
                lhs = total.comp(fa, gb)
                shift = _vec_add(_apply(system.push[(f, g)], b, m),
                                 _apply(system.pull[(f, g)], a, m), m)
                if lhs != ext.act(base_comp, shift):
                    raise ExtensionError(f"distributivity fails over ({f!r}, {g!r})")


# ---------------------------------------------------------------------------
# Lifting schemoid structure
# ---------------------------------------------------------------------------

def _invertible_mod(mat: Matrix, m: int | None) -> bool:
    n = len(mat)
    if any(len(row) != n for row in mat):
        return False
    det = _det([list(r) for r in mat])
    if m is None:
        return det != 0
    return linalg.gcd(det, m) == 1


def _det(a):
    n = len(a)
    if n == 0:
        return 1
    from fractions import Fraction
    rows = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    assert det.denominator == 1
    return int(det)


def lift_schemoid(base_qs: QuasiSchemoid, ext: ExtensionCategory) -> QuasiSchemoid:
    """Preimage partition on the total category, re-verified, with the
    fiber-size scaling of the structure constants asserted."""
    system = ext.system
    if base_qs.category != ext.base:
        raise BaseMismatch("schemoid lives over a different category")
    for key, mat in list(system.push.items()) + list(system.pull.items()):
        if not _invertible_mod(mat, system.modulus):
            raise HypothesisFailed(f"transport matrix at {key} is not invertible")
    for name, members in base_qs.partition.blocks.items():
        ranks = {system.rank[ext.base.identity[ext.base.src(f)]] for f in members}
        if len(ranks) != 1:
            raise HypothesisFailed(f"source-identity ranks differ inside block {name!r}")

    blocks: dict[str, list[str]] = {}
    for e in ext.total.morphism_ids:
        f = ext.decomposition[e][0]
        blocks.setdefault(base_qs.partition.block_of[f], []).append(e)
    partition = make_partition(ext.total, blocks)
    try:
        constants = check_concatenation(ext.total, partition)
    except AxiomViolation as err:
        raise AxiomFailedAfterLift(str(err)) from err

    # scaling law: lifted p = |D_f| * base p with f in the composite block
    names = base_qs.partition.names()
    for sigma in names:
        for tau in names:
            for mu in names:
                scales = {system.fiber_size(f) for f in base_qs.partition.blocks[mu]}
                if len(scales) != 1:
                    raise HypothesisFailed(f"fiber sizes differ inside block {mu!r}")
                scale = scales.pop()
                if constants.p(sigma, tau, mu) != scale * base_qs.p(sigma, tau, mu):
                    raise AxiomFailedAfterLift(
                        f"scaling law fails at ({sigma!r}, {tau!r}, {mu!r})")
    return QuasiSchemoid(ext.total, partition, constants)


def lift_involution(base_qs: QuasiSchemoid, ext: ExtensionCategory) -> QuasiSchemoid:
    """Groupoid structure and involution on a lifted schemoid.

    Requires a connected groupoid base whose involution is the inverse map
    and an induced-type system (identity pullbacks); the inverse in the
    total category is (f, a)^-1 = (f^-1, f_*^-1(-a + delta(f, f^-1))), valid
    once the normalized-cocycle identity f_* delta(f^-1, f) = delta(f, f^-1)
    holds, which is checked for every morphism first.
    """
    from .fincat import as_groupoid

    system = ext.system
    cat = ext.base
    if base_qs.involution is None:
        raise BaseNotConnectedGroupoid("base schemoid carries no involution")
    try:
        gpd = as_groupoid(cat)
    except Exception as err:
        raise BaseNotConnectedGroupoid("base is not a groupoid") from err
    if len(cat.components()) != 1:
        raise BaseNotConnectedGroupoid("base is not connected")
    if any(base_qs.involution.functor.morphism_map[f] != gpd.inverse[f]
           for f in cat.morphism_ids):
        raise BaseNotConnectedGroupoid("base involution is not the inverse map")
    for key, mat in system.pull.items():
        if not linalg.mat_eq_mod([list(r) for r in mat],
                                 [list(r) for r in _identity_matrix(len(mat))],
                                 system.modulus):
            raise SystemNotInduced(f"pullback at {key} is not the identity")
    # the inverse formula mixes D_f with D_{1_tgt(f)}; they must agree in rank
    for f in cat.morphism_ids:
        if system.rank[f] != system.rank[cat.identity[cat.tgt(f)]]:
            raise SystemNotInduced(f"rank of D at {f!r} differs from its target identity")
    m = system.modulus
    delta = ext.cocycle

    # normalized-cocycle identity used by the inverse formula
    for f in cat.morphism_ids:
        finv = gpd.inverse[f]
        lhs = _apply(system.push[(f, finv)], delta.value(system, finv, f), m)
        rhs = delta.value(system, f, finv)
        if lhs != rhs:
            raise ExtensionError(f"inverse identity fails at {f!r}")

    lifted = lift_schemoid(base_qs, ext)
    total = ext.total
    inverse = {}
    for e in total.morphism_ids:
        f, a = ext.decomposition[e]
        finv = gpd.inverse[f]
        rhs_vec = _vec_add(_vec_neg(a, m), delta.value(system, f, finv), m)
        push_mat = [list(r) for r in system.push[(f, finv)]]
        sol = linalg.solve_mod(push_mat, list(rhs_vec), m)
        if sol is None:
            raise HypothesisFailed(f"pushforward at ({f!r}, {finv!r}) not invertible mod {m}")
        inverse[e] = fiber_morphism_name(finv, tuple(x % m for x in sol))
    for e, einv in inverse.items():
        if (total.comp(e, einv) != total.identity[total.tgt(e)]
                or total.comp(einv, e) != total.identity[total.src(e)]):
            raise ExtensionError(f"computed inverse of {e!r} fails")

    t = Functor({x: x for x in total.objects}, dict(inverse), contravariant=True)
    involution = check_association(total, lifted.partition, t)
    # compatibility with the base involution through the projection
    base_t = base_qs.involution.functor
    for e in total.morphism_ids:
        if ext.projection.morphism_map[inverse[e]] != base_t.morphism_map[ext.projection.morphism_map[e]]:
            raise ExtensionError("projection does not intertwine the involutions")
    for sigma, star in base_qs.involution.block_image.items():
        if involution.block_image[sigma] != star:
            raise ExtensionError("lifted involution permutes blocks differently from the base")
    return QuasiSchemoid(total, lifted.partition, lifted.constants, involution)


# ---------------------------------------------------------------------------
# Splitting and equivalence
# ---------------------------------------------------------------------------

def is_split(ext: ExtensionCategory, complex_: BWComplex | None = None):
    """A verified section s with q∘s = id, or None.

    Splits exactly when the cocycle is a coboundary: solve d F = delta and
    set s(f) = (f, -F(f)).
    """
    system = ext.system
    m = system.modulus
    cx = complex_ if complex_ is not None else bw_differentials(ext.base, system)
    target = cx.cochain2_vector(ext.cocycle)
    if linalg.is_prime(m):
        sol = linalg.solve_mod_p(cx.d1, target, m)
    else:
        sol = linalg.solve_mod(cx.d1, target, m)
    if sol is None:
        return None
    fvals = cx.vector_to_1cochain(sol)
    cat = ext.base
    smap = {}
    for f in cat.morphism_ids:
        v = _vec_neg(fvals.get(f, _vec_zero(system.rank[f])), m)
        smap[f] = fiber_morphism_name(f, v)
    section = Functor({x: x for x in cat.objects}, smap)
    validate_functor(section, cat, ext.total)
    for f in cat.morphism_ids:
        if ext.projection.morphism_map[smap[f]] != f:
            raise ExtensionError("section does not split the projection")
    return section


def extensions_equivalent(e1: ExtensionCategory, e2: ExtensionCategory) -> bool:
    """Equivalence over the same base and system: difference class vanishes."""
    if e1.base != e2.base:
        raise BaseMismatch("different base categories")
    if e1.system != e2.system:
        raise BaseMismatch("different natural systems")
    system = e1.system
    diff = cochain2_sub(system, e1.cocycle, e2.cocycle)
    cx = bw_differentials(e1.base, system)
    target = cx.cochain2_vector(diff)
    if linalg.is_prime(system.modulus):
        sol = linalg.solve_mod_p(cx.d1, target, system.modulus)
    else:
        sol = linalg.solve_mod(cx.d1, target, system.modulus)
    return sol is not None


def brute_force_sections(ext: ExtensionCategory, cap: int = 1 << 16):
    """All sections by exhaustive enumeration; independent of the linear path."""
    system = ext.system
    cat = ext.base
    mors = list(cat.morphism_ids)
    space = 1
    for f in mors:
        space *= system.fiber_size(f)
        if space > cap:
            raise ExtensionError("search space exceeds the cap")
    found = []
    for combo in iproduct(*[ext.fiber[f] for f in mors]):
        smap = dict(zip(mors, combo))
        ok = all(smap[cat.identity[x]] == ext.total.identity[x] for x in cat.objects)
        if ok:
            for (f, g), fg in cat.compose.items():
                if ext.total.comp(smap[f], smap[g]) != smap[fg]:
                    ok = False
                    break
        if ok:
            found.append(smap)
    return found
