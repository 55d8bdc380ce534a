"""Category algebras, schemoid (Bose-Mesner) algebras and Terwilliger algebras.

Coefficients are the rationals or a prime field; all linear algebra is
exact.  The schemoid algebra of a verified quasi-schemoid is the span of
the block sums s_sigma inside the category algebra, with multiplication
governed by the structure constants.

Unitality of the schemoid algebra is decided in the subalgebra sense: the
algebra is unital exactly when the unit of the ambient category algebra,
the sum of all identities, lies in the block-sum span.  An abstract unit
of the structure-constant tensor alone can exist over Q even for a
non-unital schemoid (a single-block group already shows this), so tensor
unit existence and subalgebra unitality are reported separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import is_prime, solve_multiplicative
from .schemoid import QuasiSchemoid, is_unital


class AlgebraError(Exception):
    pass


class DimensionMismatch(AlgebraError):
    pass


class NotTerminal(AlgebraError):
    pass


class HomCheckFailed(AlgebraError):
    pass


class Rationals:
    characteristic = 0

    def from_int(self, n):
        return Fraction(n)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def inv(self, a):
        return 1 / a

    def name(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __repr__(self):
        return "Q"


class PrimeField:
    def __init__(self, p: int):
        if not is_prime(p):
            raise AlgebraError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def from_int(self, n):
        return n % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def inv(self, a):
        return pow(a % self.p, -1, self.p)

    def name(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __repr__(self):
        return f"F{self.p}"


def ring_from_name(name: str):
    if name in ("Q", "q"):
        return Rationals()
    if name and name[0] in "Ff" and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise AlgebraError(f"unknown ring {name!r}; use Q or Fp")


def _normalize(ring, x):
    return x % ring.p if isinstance(ring, PrimeField) else x


@dataclass(frozen=True, eq=False)
class SchemoidAlgebra:
    basis: tuple[str, ...]
    tensor: dict[tuple[str, str, str], object]  # (sigma, tau, mu) -> coefficient
    ring: object
    unital: bool
    unit: dict[str, object] | None          # coordinates of sum of identities, when unital
    tensor_unit: dict[str, object] | None   # abstract two-sided unit of the tensor, if any

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def c(self, sigma, tau, mu):
        return self.tensor.get((sigma, tau, mu), self.ring.zero)

    def multiply(self, u: dict, v: dict) -> dict:
        out: dict[str, object] = {}
        for sigma, a in u.items():
            if a == self.ring.zero:
                continue
            for tau, b in v.items():
                if b == self.ring.zero:
                    continue
                ab = _normalize(self.ring, a * b)
                for mu in self.basis:
                    coeff = self.tensor.get((sigma, tau, mu))
                    if coeff:
                        out[mu] = _normalize(self.ring, out.get(mu, self.ring.zero) + ab * coeff)
        return {k: v for k, v in out.items() if v != self.ring.zero}


def category_algebra_dim(cat) -> int:
    return len(cat.morphisms)


def schemoid_algebra(qs: QuasiSchemoid, ring) -> SchemoidAlgebra:
    """Block-sum subalgebra of the category algebra, with tensor checks."""
    basis = tuple(qs.partition.names())
    tensor = {}
    for (sigma, tau, mu), p in qs.constants.entries.items():
        coeff = ring.from_int(p)
        if coeff != ring.zero:
            tensor[(sigma, tau, mu)] = coeff
    _assert_associative(basis, tensor, ring)
    unital_flag, unit, tensor_unit = _unit_analysis(qs, basis, tensor, ring)
    return SchemoidAlgebra(basis, tensor, ring, unital_flag, unit, tensor_unit)


def _assert_associative(basis, tensor, ring):
    get = lambda s, t, m: tensor.get((s, t, m), ring.zero)
    for sigma in basis:
        for tau in basis:
            for rho in basis:
                for nu in basis:
                    lhs = sum((get(sigma, tau, mu) * get(mu, rho, nu) for mu in basis),
                              ring.zero)
                    rhs = sum((get(tau, rho, mu) * get(sigma, mu, nu) for mu in basis),
                              ring.zero)
                    if _normalize(ring, lhs - rhs) != ring.zero:
                        raise AlgebraError(
                            f"tensor not associative at ({sigma}, {tau}, {rho}, {nu})")


def _unit_analysis(qs, basis, tensor, ring):
    """Two-sided tensor units, and whether the sum of identities is the unit."""
    tensor_unit = _solve_tensor_unit(basis, tensor, ring)
    unit = _identity_sum_coords(qs, basis, ring)
    if unit is not None:
        # the ambient unit acts as a unit on the span, so it must be THE
        # two-sided unit of the tensor
        if tensor_unit is None or tensor_unit != unit:
            raise AlgebraError("unit cross-check failed: identity sum lies in the "
                               "span but is not the tensor unit")
        return True, unit, tensor_unit
    return False, None, tensor_unit


def _identity_sum_coords(qs, basis, ring):
    """Expansion of sum-of-identities in the block-sum basis, or None.

    The s_sigma have disjoint supports, so the expansion exists exactly when
    every block carries a constant required coefficient (1 on identities,
    0 elsewhere).
    """
    idents = qs.category.identities()
    coords = {}
    for b in basis:
        members = qs.partition.blocks[b]
        vals = {ring.one if m in idents else ring.zero for m in members}
        if len(vals) > 1:
            return None
        v = vals.pop()
        if v != ring.zero:
            coords[b] = v
    return coords


def _solve_tensor_unit(basis, tensor, ring):
    """Intersect the left-unit and right-unit linear systems."""
    n = len(basis)
    index = {b: i for i, b in enumerate(basis)}
    rows = []
    rhs = []
    # left unit: sum_sigma c^mu_{sigma tau} u_sigma = delta_{mu tau}
    for tau in basis:
        for mu in basis:
            row = [ring.zero] * n
            for sigma in basis:
                row[index[sigma]] = tensor.get((sigma, tau, mu), ring.zero)
            rows.append(row)
            rhs.append(ring.one if mu == tau else ring.zero)
    # right unit: sum_tau c^mu_{sigma tau} u_tau = delta_{mu sigma}
    for sigma in basis:
        for mu in basis:
            row = [ring.zero] * n
            for tau in basis:
                row[index[tau]] = tensor.get((sigma, tau, mu), ring.zero)
            rows.append(row)
            rhs.append(ring.one if mu == sigma else ring.zero)
    sol = _solve_field(rows, rhs, ring)
    if sol is None:
        return None
    return {b: sol[index[b]] for b in basis if sol[index[b]] != ring.zero}


def _solve_field(rows, rhs, ring):
    """Gaussian elimination over the ring (field); one solution or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    cols = len(rows[0]) if rows else 0
    rank = 0
    pivots = []
    for col in range(cols):
        piv = next((r for r in range(rank, len(aug)) if aug[r][col] != ring.zero), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = ring.inv(aug[rank][col])
        aug[rank] = [_normalize(ring, x * inv) for x in aug[rank]]
        for r in range(len(aug)):
            if r != rank and aug[r][col] != ring.zero:
                f = aug[r][col]
                aug[r] = [_normalize(ring, x - f * y) for x, y in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(aug)):
        if aug[r][cols] != ring.zero:
            return None
    x = [ring.zero] * cols
    for r, col in enumerate(pivots):
        x[col] = aug[r][cols]
    return x


def algebra_is_unital(alg: SchemoidAlgebra, qs: QuasiSchemoid) -> bool:
    """Subalgebra unitality, cross-checked against the combinatorial test."""
    combinatorial, _ = is_unital(qs.category, qs.partition)
    if alg.unital != combinatorial:
        raise AlgebraError("unitality cross-check failed")
    return alg.unital


# ---------------------------------------------------------------------------
# Category-algebra vectors and the Terwilliger algebra
# ---------------------------------------------------------------------------

@dataclass
class CategoryAlgebraClosure:
    """Span basis of a generated subalgebra of the category algebra."""
    category: object
    ring: object
    order: tuple[str, ...]                   # morphism coordinate order
    basis: list[dict[str, object]]           # reduced vectors, sparse by morphism

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def multiply(self, u: dict, v: dict) -> dict:
        out: dict[str, object] = {}
        comp = self.category.compose
        for f, a in u.items():
            if a == self.ring.zero:
                continue
            for g, b in v.items():
                h = comp.get((f, g))
                if h is None or b == self.ring.zero:
                    continue
                out[h] = _normalize(self.ring, out.get(h, self.ring.zero) + a * b)
        return {k: x for k, x in out.items() if x != self.ring.zero}

    def contains(self, vec: dict) -> bool:
        return _reduce_against(self.basis, dict(vec), self.order, self.ring) is None


def _reduce_against(basis, vec, order, ring):
    """Reduce vec against echelon basis; None if it reduces to zero."""
    pos = {m: i for i, m in enumerate(order)}
    for b in basis:
        lead = min(b, key=lambda m: pos[m])
        coeff = vec.get(lead)
        if coeff is None or coeff == ring.zero:
            continue
        factor = _normalize(ring, coeff * ring.inv(b[lead]))
        for m, x in b.items():
            new = _normalize(ring, vec.get(m, ring.zero) - factor * x)
            if new == ring.zero:
                vec.pop(m, None)
            else:
                vec[m] = new
    vec = {k: v for k, v in vec.items() if v != ring.zero}
    return vec or None


def _echelon_insert(basis, vec, order, ring):
    residue = _reduce_against(basis, dict(vec), order, ring)
    if residue is None:
        return False
    basis.append(residue)
    pos = {m: i for i, m in enumerate(order)}
    basis.sort(key=lambda b: pos[min(b, key=lambda m: pos[m])])
    # re-echelonize fully for stable reductions
    cleaned: list[dict] = []
    for b in basis:
        r = _reduce_against(cleaned, dict(b), order, ring)
        if r is not None:
            cleaned.append(r)
            cleaned.sort(key=lambda bb: pos[min(bb, key=lambda m: pos[m])])
    basis[:] = cleaned
    return True


def span_closure(cat, ring, generators: list[dict]) -> CategoryAlgebraClosure:
    """Close the span of generators under category-algebra multiplication."""
    order = tuple(cat.morphism_ids)
    closure = CategoryAlgebraClosure(cat, ring, order, [])
    for g in generators:
        _echelon_insert(closure.basis, g, order, ring)
    cap = len(order) + 1
    for _ in range(cap):
        grew = False
        snapshot = [dict(b) for b in closure.basis]
        for u in snapshot:
            for v in snapshot:
                prod = closure.multiply(u, v)
                if prod and _echelon_insert(closure.basis, prod, order, ring):
                    grew = True
        if not grew:
            break
    return closure


def block_sum_vector(qs: QuasiSchemoid, block: str, ring) -> dict:
    return {m: ring.one for m in qs.partition.blocks[block]}


def terwilliger(qs: QuasiSchemoid, e: str, ring) -> CategoryAlgebraClosure:
    """Subalgebra generated by the block sums and the idempotents E_sigma.

    e must be a terminal object: exactly one morphism x -> e per object x.
    E_sigma sums the identities 1_x over the x whose unique morphism to e
    lies in sigma.
    """
    cat = qs.category
    to_e = {}
    for x in cat.objects:
        arrows = cat.hom(x, e)
        if len(arrows) != 1:
            raise NotTerminal(f"{e!r} is not terminal: Hom({x!r}, {e!r}) has {len(arrows)} morphisms")
        to_e[x] = arrows[0]
    generators = [block_sum_vector(qs, b, ring) for b in qs.partition.names()]
    idempotents = []
    for sigma in qs.partition.names():
        vec = {cat.identity[x]: ring.one for x in cat.objects
               if to_e[x] in qs.partition.blocks[sigma]}
        if vec:
            idempotents.append(vec)
    # sanity: the idempotents resolve the identity
    total: dict[str, object] = {}
    for vec in idempotents:
        for k, v in vec.items():
            total[k] = _normalize(ring, total.get(k, ring.zero) + v)
    expected = {cat.identity[x]: ring.one for x in cat.objects}
    if total != expected:
        raise AlgebraError("sum of E_sigma is not the sum of identities")
    return span_closure(cat, ring, generators + idempotents)


# ---------------------------------------------------------------------------
# Algebra maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgebraMap:
    source: SchemoidAlgebra
    target: SchemoidAlgebra
    matrix: dict[tuple[str, str], object]   # (target basis, source basis) -> coefficient

    def apply(self, u: dict) -> dict:
        ring = self.target.ring
        out: dict[str, object] = {}
        for s, a in u.items():
            for t in self.target.basis:
                coeff = self.matrix.get((t, s))
                if coeff:
                    out[t] = _normalize(ring, out.get(t, ring.zero) + a * coeff)
        return {k: v for k, v in out.items() if v != ring.zero}

    def is_zero(self) -> bool:
        return all(v == self.target.ring.zero for v in self.matrix.values())


def check_algebra_hom(amap: AlgebraMap, a: SchemoidAlgebra, b: SchemoidAlgebra):
    """f(xy) = f(x)f(y) on all basis pairs; unit to unit when both unital.

    Returns (True, None) or (False, witness pair).
    """
    for sigma in a.basis:
        for tau in a.basis:
            prod = a.multiply({sigma: a.ring.one}, {tau: a.ring.one})
            lhs = amap.apply(prod)
            rhs = b.multiply(amap.apply({sigma: a.ring.one}), amap.apply({tau: a.ring.one}))
            if lhs != rhs:
                return False, (sigma, tau)
    if a.unital and b.unital:
        if amap.apply(a.unit) != b.unit:
            return False, ("unit", "unit")
    return True, None


def compose_algebra_maps(second: AlgebraMap, first: AlgebraMap) -> AlgebraMap:
    ring = second.target.ring
    matrix = {}
    for t in second.target.basis:
        for s in first.source.basis:
            acc = ring.zero
            for mid in first.target.basis:
                x = second.matrix.get((t, mid))
                y = first.matrix.get((mid, s))
                if x and y:
                    acc = _normalize(ring, acc + x * y)
            if acc != ring.zero:
                matrix[(t, s)] = acc
    return AlgebraMap(first.source, second.target, matrix)


def identity_algebra_map(a: SchemoidAlgebra) -> AlgebraMap:
    return AlgebraMap(a, a, {(b, b): a.ring.one for b in a.basis})


def scaled_basis_iso(a: SchemoidAlgebra, b: SchemoidAlgebra):
    """Basis bijection beta and nonzero scalars with
    lam_sigma lam_tau c^mu_{sigma tau}(A) = lam_mu c^{beta mu}_{beta sigma, beta tau}(B).

    Returns (bijection, scalars) or None after exhausting all bijections.
    Over Q the scalar system is solved through the Smith normal form of its
    exponent matrix; over a prime field scalars are found by backtracking.
    """
    if a.dimension != b.dimension:
        raise DimensionMismatch(f"{a.dimension} != {b.dimension}")
    if a.ring != b.ring:
        raise AlgebraError("coefficient rings differ")

    basis_a, basis_b = list(a.basis), list(b.basis)
    nz_a = {k for k, v in a.tensor.items() if v != a.ring.zero}
    nz_b = {k for k, v in b.tensor.items() if v != b.ring.zero}

    def profile(basis, nz, x):
        return (sum(1 for (s, t, m) in nz if s == x),
                sum(1 for (s, t, m) in nz if t == x),
                sum(1 for (s, t, m) in nz if m == x))

    prof_a = {x: profile(basis_a, nz_a, x) for x in basis_a}
    prof_b = {x: profile(basis_b, nz_b, x) for x in basis_b}
    if sorted(prof_a.values()) != sorted(prof_b.values()):
        return None

    def zero_pattern_ok(bij):
        mapped = {(bij[s], bij[t], bij[m]) for (s, t, m) in nz_a}
        return mapped == nz_b

    def bijections(i, current, used):
        if i == len(basis_a):
            yield dict(current)
            return
        x = basis_a[i]
        for y in basis_b:
            if y in used or prof_a[x] != prof_b[y]:
                continue
            current[x] = y
            yield from bijections(i + 1, current, used | {y})
            del current[x]

    for bij in bijections(0, {}, set()):
        if not zero_pattern_ok(bij):
            continue
        scalars = _solve_scalars(a, b, bij)
        if scalars is None:
            continue
        if _verify_scaled_iso(a, b, bij, scalars):
            return bij, scalars
    return None


def _solve_scalars(a, b, bij):
    index = {x: i for i, x in enumerate(a.basis)}
    constraints = []
    targets = []
    for (s, t, m) in a.tensor:
        ca = a.tensor[(s, t, m)]
        cb = b.tensor.get((bij[s], bij[t], bij[m]), b.ring.zero)
        if ca == a.ring.zero:
            continue
        if cb == b.ring.zero:
            return None
        row = [0] * len(a.basis)
        row[index[s]] += 1
        row[index[t]] += 1
        row[index[m]] -= 1
        constraints.append(row)
        targets.append((ca, cb))
    if isinstance(a.ring, Rationals):
        ratio = [Fraction(cb) / Fraction(ca) for ca, cb in targets]
        sol = solve_multiplicative(constraints, ratio)
        if sol is None or any(x == 0 for x in sol):
            return None
        return {x: sol[index[x]] for x in a.basis}
    return _solve_scalars_prime(a, constraints, targets, index)


def _solve_scalars_prime(a, constraints, targets, index):
    p = a.ring.p
    names = list(a.basis)
    units = list(range(1, p))

    def check_partial(assign):
        for row, (ca, cb) in zip(constraints, targets):
            prod = 1
            ok = True
            for x, e in zip(names, row):
                if not e:
                    continue
                if x not in assign:
                    ok = False
                    break
                prod = prod * pow(assign[x], e, p) % p
            if ok and prod * ca % p != cb % p:
                return False
        return True

    def extend(i, assign):
        if i == len(names):
            return dict(assign)
        for u in units:
            assign[names[i]] = u
            if check_partial(assign):
                got = extend(i + 1, assign)
                if got is not None:
                    return got
            del assign[names[i]]
        return None

    return extend(0, {})


def _verify_scaled_iso(a, b, bij, lam):
    ring = a.ring
    for s in a.basis:
        for t in a.basis:
            for m in a.basis:
                lhs = _normalize(ring, lam[s] * lam[t] * a.c(s, t, m))
                rhs = _normalize(ring, lam[m] * b.c(bij[s], bij[t], bij[m]))
                if lhs != rhs:
                    return False
    return True
