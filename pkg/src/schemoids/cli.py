"""Command-line front end.

Subcommands read and write the JSON interchange formats so that workflows
pipe together, e.g.

    schemoids gen hamming 2 2 | schemoids embed-scheme - | schemoids constants -

Exit status: 0 on success, 1 on a domain error (with a machine-readable
diagnostic on stdout), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus
from .algebra import ring_from_name, scaled_basis_iso, schemoid_algebra, terwilliger
from .admissible import (
    condition_P,
    gate_report,
    induced_algebra_map,
    is_admissible,
    multiplicities,
    schemoid_morphism,
    verify_sum_identity,
)
from .bridges import canonical_groupoid_witness, phi_psi_check, r_tilde, s_tilde
from .extensions import (
    build_extension,
    bw_cohomology,
    bw_differentials,
    cocycle_from_json,
    cocycle_to_json,
    extensions_equivalent,
    induced_system,
    is_split,
    trivial_system,
    validate_natural_system,
)
from .fincat import (
    Functor,
    serialize,
    serialize_groupoid,
    validate_category,
    validate_functor,
    validate_groupoid,
)
from .schemes import (
    group_scheme,
    hamming,
    j_embed,
    orbit_configuration,
    scheme_from_json,
    serialize_scheme,
)
from .schemoid import (
    analyze_thinness,
    check_association,
    is_basic,
    is_unital,
    make_partition,
    partition_from_json,
    serialize_partition,
    verify_quasi_schemoid,
)
from .thicken import category_from_matrix, sigma_prime, thicken_involution, thicken_scheme

SCHEMA = "schemoids/1"


def read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def emit(payload, pretty=False):
    payload = {"schema": SCHEMA, **payload}
    if pretty:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(json.dumps(payload, sort_keys=True))


def serialize_functor(fun: Functor) -> dict:
    out = {"objects": dict(fun.object_map), "morphisms": dict(fun.morphism_map)}
    if fun.contravariant:
        out["contravariant"] = True
    return out


def functor_from_json(raw: dict) -> Functor:
    return Functor({str(k): str(v) for k, v in raw["objects"].items()},
                   {str(k): str(v) for k, v in raw["morphisms"].items()},
                   contravariant=bool(raw.get("contravariant", False)))


def bundle_to_json(qs) -> dict:
    out = {"kind": "bundle", "category": serialize(qs.category),
           "partition": serialize_partition(qs.partition)}
    if qs.involution is not None:
        out["involution"] = serialize_functor(qs.involution.functor)
    if qs.base_points is not None:
        out["base_points"] = list(qs.base_points)
    return out


def bundle_from_json(raw: dict):
    cat = validate_category(raw["category"])
    partition = partition_from_json(cat, raw["partition"])
    involution = None
    if raw.get("involution"):
        t = functor_from_json(raw["involution"])
        involution = check_association(cat, partition, t)
    base_points = tuple(raw["base_points"]) if raw.get("base_points") else None
    return verify_quasi_schemoid(cat, partition, involution, base_points)


def system_from_json(cat, raw: dict):
    kind = raw.get("kind", "explicit")
    modulus = raw.get("modulus")
    if kind == "trivial":
        return trivial_system(cat, modulus, int(raw.get("rank", 1)))
    if kind == "induced":
        return induced_system(cat, modulus, raw["object_ranks"], raw["maps"])
    push = {(str(a), str(f)): mat for a, f, mat in raw["push"]}
    pull = {(str(f), str(b)): mat for f, b, mat in raw["pull"]}
    return validate_natural_system(cat, modulus, raw["ranks"], push, pull)


def system_to_json(system) -> dict:
    return {
        "kind": "explicit",
        "modulus": system.modulus,
        "ranks": dict(system.rank),
        "push": [[a, f, [list(r) for r in mat]] for (a, f), mat in sorted(system.push.items())],
        "pull": [[f, b, [list(r) for r in mat]] for (f, b), mat in sorted(system.pull.items())],
    }


def extension_from_json(raw: dict):
    cat = validate_category(raw["base"])
    system = system_from_json(cat, raw["system"])
    delta = cocycle_from_json(system, raw["cocycle"])
    return build_extension(cat, system, delta)


def extension_to_json(ext) -> dict:
    return {"kind": "extension", "base": serialize(ext.base),
            "system": system_to_json(ext.system),
            "cocycle": cocycle_to_json(ext.cocycle),
            "total": serialize(ext.total),
            "projection": serialize_functor(ext.projection)}


def constants_to_json(qs) -> dict:
    table: dict[str, dict[str, int]] = {}
    for (s, t, m), v in sorted(qs.constants.entries.items()):
        if v:
            table.setdefault(f"{s},{t}", {})[m] = v
    return {"blocks": {b: sorted(ms) for b, ms in qs.partition.blocks.items()}, "p": table}


def algebra_to_json(alg) -> dict:
    product = {}
    for (s, t, m), v in sorted(alg.tensor.items()):
        product.setdefault(f"{s},{t}", {})[m] = str(v)
    unit = None
    if alg.unital:
        unit = [[b, str(c)] for b, c in sorted(alg.unit.items())]
    return {"ring": alg.ring.name(), "basis": list(alg.basis), "product": product,
            "unit": unit}


def analysis_report(qs) -> dict:
    unital, offender = is_unital(qs.category, qs.partition)
    out = {
        "kind": "analysis",
        "objects": len(qs.category.objects),
        "morphisms": len(qs.category.morphisms),
        "blocks": {b: len(ms) for b, ms in qs.partition.blocks.items()},
        "axiom": True,
        "unital": unital,
        "association": qs.involution is not None,
        "basic": is_basic(qs),
    }
    if offender:
        out["offending_block"] = offender
    if qs.involution is not None:
        out["block_involution"] = dict(qs.involution.block_image)
        report = analyze_thinness(qs, qs.base_points)
        out["semi_thin"] = report.semi_thin
        out["thin"] = report.thin
        if report.base_points:
            out["base_points"] = list(report.base_points)
        if report.witness:
            out["witness"] = report.witness
        out["identity_blocks"] = list(report.s0)
    ok_p, _ = condition_P(qs)
    out["unique_factorization"] = ok_p
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schemoids",
                                     description="exact computations with partitioned finite categories")
    parser.add_argument("--json", action="store_true", help="force JSON output (the default)")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    parser.add_argument("--seed", type=int, default=0,
                        help="recorded in reports; all searches are deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a category or bundle JSON")
    p.add_argument("input")

    p = sub.add_parser("analyze", help="full schemoid analysis of a bundle")
    p.add_argument("input")

    p = sub.add_parser("constants", help="structure-constant table of a bundle")
    p.add_argument("input")

    p = sub.add_parser("algebra", help="block-sum algebra of a bundle")
    p.add_argument("input")
    p.add_argument("--ring", default="Q")

    p = sub.add_parser("terwilliger", help="algebra generated with the dual idempotents")
    p.add_argument("input")
    p.add_argument("--object", required=True)
    p.add_argument("--ring", default="Q")

    p = sub.add_parser("embed-scheme", help="complete-graph schemoid of a scheme")
    p.add_argument("input")

    p = sub.add_parser("from-groupoid", help="pair schemoid of a groupoid")
    p.add_argument("input")

    p = sub.add_parser("to-groupoid", help="reconstruct the groupoid of a semi-thin bundle")
    p.add_argument("input")

    p = sub.add_parser("roundtrip-check", help="verify both reconstruction round trips")
    p.add_argument("input")

    p = sub.add_parser("admissible", help="admissibility report for a schemoid morphism")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("functor")
    p.add_argument("--ring", default="Q")

    p = sub.add_parser("cohomology", help="cohomology of the factorization complex")
    p.add_argument("category")
    p.add_argument("system")
    p.add_argument("--degree", type=int, default=2, choices=(1, 2))

    p = sub.add_parser("extend", help="build the extension of a cocycle")
    p.add_argument("category")
    p.add_argument("system")
    p.add_argument("cocycle")

    p = sub.add_parser("split", help="section of an extension, when one exists")
    p.add_argument("input")

    p = sub.add_parser("equivalent", help="equivalence of two extensions")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("thicken", help="thickened schemoid of a scheme or matrix")
    p.add_argument("input", nargs="?")
    p.add_argument("--z", default="1", help="comma-separated per-class thickness")
    p.add_argument("--matrix", help="hom-count matrix JSON instead of a scheme")
    p.add_argument("--residual", default="lump", choices=("lump", "singletons"))

    p = sub.add_parser("gen", help="generate a scheme")
    gsub = p.add_subparsers(dest="generator", required=True)
    g = gsub.add_parser("hamming")
    g.add_argument("n", type=int)
    g.add_argument("q", type=int)
    g.add_argument("--limit", type=int, default=64)
    g = gsub.add_parser("group-scheme")
    g.add_argument("table")
    g = gsub.add_parser("orbits")
    g.add_argument("perms")

    p = sub.add_parser("examples", help="emit a built-in example")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("--window", type=int, help="window radius for the zig-zag family")

    sub.add_parser("selftest", help="re-verify every built-in example")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty = args.pretty
    try:
        return _dispatch(args, pretty)
    except (KeyError, OSError, json.JSONDecodeError) as err:
        emit({"error": type(err).__name__, "message": str(err)}, pretty)
        return 1
    except Exception as err:  # domain errors carry their class name
        emit({"error": type(err).__name__, "message": str(err)}, pretty)
        return 1


def _dispatch(args, pretty) -> int:
    cmd = args.command
    if cmd == "validate":
        raw = read_json(args.input)
        if "category" in raw:
            qs = bundle_from_json(raw)
            emit({"valid": True, "objects": len(qs.category.objects),
                  "morphisms": len(qs.category.morphisms), "blocks": len(qs.partition)}, pretty)
        else:
            cat = validate_category(raw)
            emit({"valid": True, "objects": len(cat.objects),
                  "morphisms": len(cat.morphisms)}, pretty)
        return 0

    if cmd == "analyze":
        qs = bundle_from_json(read_json(args.input))
        emit(analysis_report(qs), pretty)
        return 0

    if cmd == "constants":
        qs = bundle_from_json(read_json(args.input))
        emit(constants_to_json(qs), pretty)
        return 0

    if cmd == "algebra":
        qs = bundle_from_json(read_json(args.input))
        alg = schemoid_algebra(qs, ring_from_name(args.ring))
        emit(algebra_to_json(alg), pretty)
        return 0

    if cmd == "terwilliger":
        qs = bundle_from_json(read_json(args.input))
        closure = terwilliger(qs, args.object, ring_from_name(args.ring))
        emit({"object": args.object, "dimension": closure.dimension,
              "ambient_dimension": len(qs.category.morphisms)}, pretty)
        return 0

    if cmd == "embed-scheme":
        scheme = scheme_from_json(read_json(args.input))
        emit(bundle_to_json(j_embed(scheme)), pretty)
        return 0

    if cmd == "from-groupoid":
        gpd = validate_groupoid(read_json(args.input))
        emit(bundle_to_json(s_tilde(gpd)), pretty)
        return 0

    if cmd == "to-groupoid":
        qs = bundle_from_json(read_json(args.input))
        gpd = r_tilde(qs)
        emit({"kind": "groupoid", **serialize_groupoid(gpd)}, pretty)
        return 0

    if cmd == "roundtrip-check":
        gpd = validate_groupoid(read_json(args.input))
        witness = canonical_groupoid_witness(gpd)
        qs = s_tilde(gpd)
        phi_psi_check(qs)
        emit({"roundtrip": "ok", "witness": serialize_functor(witness)}, pretty)
        return 0

    if cmd == "admissible":
        source = bundle_from_json(read_json(args.source))
        target = bundle_from_json(read_json(args.target))
        fun = functor_from_json(read_json(args.functor))
        phi = schemoid_morphism(source, target, fun)
        report = is_admissible(phi)
        out = {"admissible": report.admissible,
               "failures": [list(w) for w in report.failures[:10]],
               "kernel_blocks": list(report.kernel),
               "gates": gate_report(phi)}
        if report.admissible:
            try:
                mult = multiplicities(phi)
                out["multiplicities"] = mult
                ok, _ = verify_sum_identity(phi, mult)
                out["sum_identity"] = ok
                ring = ring_from_name(args.ring)
                amap = induced_algebra_map(phi, ring)
                out["algebra_map"] = {f"{t}<-{s}": str(v) for (t, s), v in sorted(amap.matrix.items())}
            except Exception as err:
                out["multiplicities_error"] = str(err)
        emit(out, pretty)
        return 0 if report.admissible else 1

    if cmd == "cohomology":
        cat = validate_category(read_json(args.category))
        system = system_from_json(cat, read_json(args.system))
        h = bw_cohomology(cat, system, args.degree)
        emit({"degree": args.degree, "invariants": list(h.invariants),
              "free_rank": h.free_rank, "group": h.describe()}, pretty)
        return 0

    if cmd == "extend":
        cat = validate_category(read_json(args.category))
        system = system_from_json(cat, read_json(args.system))
        delta = cocycle_from_json(system, read_json(args.cocycle))
        ext = build_extension(cat, system, delta)
        emit(extension_to_json(ext), pretty)
        return 0

    if cmd == "split":
        ext = extension_from_json(read_json(args.input))
        section = is_split(ext)
        if section is None:
            emit({"split": False, "section": None}, pretty)
        else:
            emit({"split": True, "section": serialize_functor(section)}, pretty)
        return 0

    if cmd == "equivalent":
        e1 = extension_from_json(read_json(args.first))
        e2 = extension_from_json(read_json(args.second))
        emit({"equivalent": extensions_equivalent(e1, e2)}, pretty)
        return 0

    if cmd == "thicken":
        if args.matrix:
            framed = category_from_matrix(read_json(args.matrix))
            qs = sigma_prime(framed, args.residual)
            emit(bundle_to_json(qs), pretty)
            return 0
        scheme = scheme_from_json(read_json(args.input))
        thickness = [int(x) for x in str(args.z).split(",")]
        if len(thickness) == 1:
            thickness = thickness[0]
        qs = thicken_scheme(scheme, thickness)
        zs = thickness if isinstance(thickness, list) else [thickness] * len(scheme.classes)
        if len(set(zs)) == 1:
            qs = thicken_involution(qs, scheme, thickness)
        emit(bundle_to_json(qs), pretty)
        return 0

    if cmd == "gen":
        if args.generator == "hamming":
            scheme = hamming(args.n, args.q, limit=args.limit)
        elif args.generator == "group-scheme":
            raw = read_json(args.table)
            elements = [str(e) for e in raw["elements"]]
            table = {}
            for i, a in enumerate(elements):
                for j, b in enumerate(elements):
                    table[(a, b)] = str(raw["table"][i][j])
            scheme = group_scheme(elements, table)
        else:
            raw = read_json(args.perms)
            scheme = orbit_configuration(raw["perms"], int(raw["size"]))
        emit({"kind": "scheme", **serialize_scheme(scheme)}, pretty)
        return 0

    if cmd == "examples":
        if args.list or not args.name:
            emit({"examples": {name: e.description for name, e in sorted(corpus.ENTRIES.items())}},
                 pretty)
            return 0
        entry = corpus.ENTRIES.get(args.name)
        if entry is None:
            raise KeyError(f"unknown example {args.name!r}")
        kwargs = {}
        if args.window is not None:
            kwargs["window"] = args.window
        obj = corpus.build(args.name, **kwargs)
        if entry.kind == "extension":
            out = extension_to_json(obj)
            out["system"] = {"kind": "trivial", "modulus": 2, "rank": 1}
            out.pop("total")
            out.pop("projection")
            emit(out, pretty)
        else:
            emit(bundle_to_json(obj), pretty)
        return 0

    if cmd == "selftest":
        failures = corpus.selftest()
        for name in sorted(corpus.ENTRIES):
            status = "FAIL" if name in failures else "ok"
            print(f"{status:4s} {name}", file=sys.stderr)
        emit({"entries": len(corpus.ENTRIES), "failures": failures}, pretty)
        return 1 if failures else 0

    raise AssertionError(f"unhandled command {cmd!r}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
