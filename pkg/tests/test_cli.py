import json

import pytest

from schemoids import cli
from schemoids.fincat import cyclic_group_table, one_object_group, serialize_groupoid


def run_json(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr().out.strip().splitlines()[-1]
    return code, json.loads(out)


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload), encoding="utf-8")
    return str(p)


def test_gen_hamming(capsys):
    code, out = run_json(capsys, "gen", "hamming", "2", "2")
    assert code == 0
    assert out["size"] == 4 and len(out["classes"]) == 3


def test_gen_group_scheme(capsys, tmp_path):
    table = write(tmp_path, "z3.json", {
        "elements": ["0", "1", "2"],
        "table": [["0", "1", "2"], ["1", "2", "0"], ["2", "0", "1"]],
    })
    code, out = run_json(capsys, "gen", "group-scheme", table)
    assert code == 0 and out["size"] == 3


def test_gen_orbits(capsys, tmp_path):
    perms = write(tmp_path, "z4.json", {
        "size": 4, "perms": [[(i + k) % 4 for i in range(4)] for k in range(4)]})
    code, out = run_json(capsys, "gen", "orbits", perms)
    assert code == 0 and len(out["classes"]) == 4


def test_pipe_embed_analyze(capsys, tmp_path):
    code, scheme = run_json(capsys, "gen", "hamming", "2", "2")
    sf = write(tmp_path, "scheme.json", scheme)
    code, bundle = run_json(capsys, "embed-scheme", sf)
    assert code == 0
    bf = write(tmp_path, "bundle.json", bundle)
    code, report = run_json(capsys, "analyze", bf)
    assert code == 0
    assert report["unital"] and report["association"] and report["basic"]
    code, consts = run_json(capsys, "constants", bf)
    assert consts["p"]["R1,R1"] == {"R0": 2, "R2": 2}
    code, alg = run_json(capsys, "algebra", bf, "--ring", "Q")
    assert alg["basis"] == ["R0", "R1", "R2"]
    assert alg["unit"] == [["R0", "1"]]
    code, alg2 = run_json(capsys, "algebra", bf, "--ring", "F2")
    assert code == 0
    code, ter = run_json(capsys, "terwilliger", bf, "--object", "00")
    assert code == 0 and ter["dimension"] >= 3


def test_validate_category(capsys, tmp_path):
    raw = write(tmp_path, "cat.json", {
        "objects": ["x"], "morphisms": [{"id": "1_x", "src": "x", "tgt": "x"}],
        "identities": {"x": "1_x"}, "compose": []})
    code, out = run_json(capsys, "validate", raw)
    assert code == 0 and out["valid"]


def test_validate_bad_category(capsys, tmp_path):
    raw = write(tmp_path, "bad.json", {
        "objects": ["x"], "morphisms": [], "identities": {}, "compose": []})
    code, out = run_json(capsys, "validate", raw)
    assert code == 1 and "error" in out


def test_groupoid_roundtrip(capsys, tmp_path):
    gpd = one_object_group(*cyclic_group_table(3))
    gf = write(tmp_path, "z3.json", serialize_groupoid(gpd))
    code, bundle = run_json(capsys, "from-groupoid", gf)
    assert code == 0
    bf = write(tmp_path, "bundle.json", bundle)
    code, back = run_json(capsys, "to-groupoid", bf)
    assert code == 0
    assert len(back["morphisms"]) == 3
    code, rep = run_json(capsys, "roundtrip-check", gf)
    assert code == 0 and rep["roundtrip"] == "ok"


def test_cohomology_and_extension_flow(capsys, tmp_path):
    gpd = one_object_group(*cyclic_group_table(2))
    from schemoids.fincat import serialize
    cf = write(tmp_path, "z2cat.json", serialize(gpd.base))
    sf = write(tmp_path, "sys.json", {"kind": "trivial", "modulus": 2, "rank": 1})
    code, h2 = run_json(capsys, "cohomology", cf, sf, "--degree", "2")
    assert code == 0 and h2["invariants"] == [2]
    cocf = write(tmp_path, "coc.json", {"entries": [["1", "1", [1]]]})
    code, ext = run_json(capsys, "extend", cf, sf, cocf)
    assert code == 0 and len(ext["total"]["morphisms"]) == 4
    ef = write(tmp_path, "ext.json", ext)
    code, sp = run_json(capsys, "split", ef)
    assert code == 0 and sp["split"] is False
    zf = write(tmp_path, "zero.json", {"entries": []})
    code, ext0 = run_json(capsys, "extend", cf, sf, zf)
    e0f = write(tmp_path, "ext0.json", ext0)
    code, sp0 = run_json(capsys, "split", e0f)
    assert sp0["split"] is True
    code, eq = run_json(capsys, "equivalent", ef, e0f)
    assert code == 0 and eq["equivalent"] is False


def test_admissible_cli(capsys, tmp_path):
    code, e1 = run_json(capsys, "examples", "e1_schemoid")
    src = write(tmp_path, "src.json", e1)
    code, base = run_json(capsys, "examples", "ex5_10_e1")
    # target bundle: the product base schemoid
    from schemoids.cli import bundle_to_json
    from schemoids.corpus import product_base_schemoid
    tgt = write(tmp_path, "tgt.json", {"schema": "x", **bundle_to_json(product_base_schemoid())})
    fun = {"objects": {}, "morphisms": {}}
    src_bundle = json.loads(open(src).read())
    for m in src_bundle["category"]["morphisms"]:
        fun["morphisms"][m["id"]] = m["id"].rsplit("|", 1)[0]
    for o in src_bundle["category"]["objects"]:
        fun["objects"][o] = o
    ff = write(tmp_path, "fun.json", fun)
    code, rep = run_json(capsys, "admissible", src, tgt, ff)
    assert code == 0
    assert rep["admissible"] and set(rep["multiplicities"].values()) == {2}
    assert rep["sum_identity"] is True


def test_thicken_cli(capsys, tmp_path):
    code, scheme = run_json(capsys, "gen", "hamming", "2", "2")
    sf = write(tmp_path, "scheme.json", scheme)
    code, bundle = run_json(capsys, "thicken", sf, "--z", "1")
    assert code == 0
    assert len(bundle["category"]["morphisms"]) == 20
    assert "involution" in bundle
    code, bundle2 = run_json(capsys, "thicken", sf, "--z", "1,2,1")
    assert code == 0 and "involution" not in bundle2
    mf = write(tmp_path, "mat.json", [[2, 1], [1, 2]])
    code, bundle3 = run_json(capsys, "thicken", "--matrix", mf, "--residual", "lump")
    assert code == 0 and len(bundle3["category"]["morphisms"]) == 6


def test_examples_listing_and_window(capsys):
    code, listing = run_json(capsys, "examples", "--list")
    assert code == 0 and "ex2_8" in listing["examples"]
    assert len(listing["examples"]) >= 10
    code, bundle = run_json(capsys, "examples", "ex2_11", "--window", "2")
    assert code == 0
    assert len(bundle["category"]["objects"]) == 10


def test_selftest(capsys):
    code, out = run_json(capsys, "selftest")
    assert code == 0 and out["failures"] == {}


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as err:
        cli.run(["no-such-command"])
    assert err.value.code == 2
