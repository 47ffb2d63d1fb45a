import io
import json
import random

import pytest

from gbs import serialize as ser
from gbs.arith import GammaSpec, TwistedSpec, parse_word_list
from gbs.cayley import InSigma, TwistedBackend, witness_search
from gbs.cli import run
from gbs.sigma import Character, complement_gamma, complement_product
from gbs.sphere import rinfty_certificate
from gbs.subgroup import canonicalize, presentation

from helpers import random_canonical


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, json.loads(out.getvalue()), err.getvalue()


def test_subgroup_index_example():
    assert call("subgroup", "index", "--group", "gamma:6", "--gens", "t1^2, t2, a^5")[:2] == (0, {"index": 10})


def test_sigma_complement_example():
    code, doc, _ = call("sigma", "complement", "--group", "gamma:30")
    assert code == 0
    assert len(doc["directions"]) == 3
    assert sorted(map(tuple, doc["directions"])) == sorted(d.coords for d in complement_gamma(GammaSpec.gamma(30)))


def test_certify_gamma_example():
    code, doc, _ = call("certify-rinfty", "--group", "gamma:6")
    assert code == 0 and doc["witness"] == [1, 1]
    assert ser.parse_certificate_doc(doc).check()


def test_certify_product_matches_complement_product():
    code, doc, _ = call("certify-rinfty", "--product", "gamma:6,gamma:10")
    assert code == 0
    parts = [(complement_gamma(GammaSpec.gamma(n)), 2) for n in (6, 10)]
    assert [tuple(p) for p in doc["points"]] == [d.coords for d in complement_product(parts)]
    assert doc["provenance"] == "sigma-complement"


def test_certify_user_points_failure():
    code, doc, _ = call("certify-rinfty", "--points", "1,0; -1,0")
    assert code == 1 and doc["error"]["failure"] == "no-hemisphere"
    code, doc, _ = call("certify-rinfty", "--points", "1,0; 0,1")
    assert code == 0 and doc["provenance"] == "user-asserted"


def test_cayley_witness_example():
    code, doc, _ = call("cayley", "witness", "--group", "twisted:2,3,1", "--chi", "-1,0", "--depth", "8")
    assert code == 0 and doc["result"] == "in-sigma"
    code, doc, _ = call("cayley", "witness", "--group", "twisted:2,3,1", "--chi", "1,0")
    assert code == 0 and doc["result"] == "unknown"


def test_infinite_index_is_a_math_failure():
    code, doc, _ = call("subgroup", "index", "--group", "gamma:6", "--gens", "t1^2, a")
    assert code == 1 and doc["error"]["failure"] == "infinite-index"


@pytest.mark.parametrize("argv", [
    ("subgroup", "index", "--group", "gamma:1", "--gens", "a"),
    ("subgroup", "index", "--group", "gamma:6", "--gens", "t1^2 x"),
    ("sigma", "restrict", "--group", "gamma:6", "--gens", "t1, t2, a", "--chi", "1/0,1"),
    ("sphere", "hull", "--normals", "1,0; 0,2", "--chart", "1,1"),
    ("nonsense",),
])
def test_input_errors_exit_2(argv):
    code, doc, _ = call(*argv)
    assert code == 2 and "error" in doc


def test_input_error_writes_diagnostic():
    code, _, err = call("subgroup", "index", "--group", "gamma:6", "--gens", "t1^2 x")
    assert code == 2 and err.startswith("gbs:")


def test_other_subcommands():
    assert call("group", "describe", "--group", "gammaS:2,3")[1]["r"] == 2
    assert call("subgroup", "normalize", "--group", "gamma:6", "--gens", "t1^2, t2, a^5")[1]["m"] == 5
    assert len(call("subgroup", "transversal", "--group", "gamma:6", "--gens", "t1^2, t2, a^5")[1]["transversal"]) == 10
    assert call("subgroup", "member", "--group", "gamma:6", "--gens", "t1^2, t2, a^5",
                "--word", "a^10")[1]["member"] is True
    assert call("subgroup", "present", "--group", "gamma:6", "--gens", "t1^2, t2, a^5")[1]["verified"]
    assert call("subgroup", "is-gamma-k", "--group", "gamma:6", "--gens", "t1^2, t2^3, a")[1] == \
        {"result": "yes", "k": 108}
    assert call("sigma", "restrict", "--group", "gamma:6", "--gens", "t1^2, t2, a", "--chi", "1/2,0")[1] == \
        {"values": ["1", "0"]}
    assert call("sigma", "extend", "--group", "gamma:6", "--gens", "t1^2, t2, a", "--chi", "1,0")[1] == \
        {"values": ["1/2", "0"]}
    assert call("sphere", "hull", "--normals", "1,0; 0,1", "--chart", "1,1")[1] == {"vertices": [[0, 1], [1, 0]]}
    assert call("sphere", "invariance", "--points", "1,0; 0,1", "--map", "0,1; 1,0")[1] == {"invariant": True}
    assert call("sphere", "invariance", "--normals", "1,0; 0,1", "--chart", "1,1",
                "--map", "1,1; 0,1")[1]["invariant"] is False
    assert call("oracle", "coset-enum", "--group", "gamma:6", "--gens", "t1^2, t2, a^5")[1] == {"index": 10}
    assert call("oracle", "coset-enum", "--group", "gamma:6", "--gens", "t1, t2",
                "--max-cosets", "50")[:2] == (0, {"overflow": True})


def test_subgroup_document_input(tmp_path):
    _, doc, _ = call("subgroup", "normalize", "--group", "gamma:6", "--gens", "t1^2, t2, a^5")
    path = tmp_path / "h.json"
    path.write_text(json.dumps(doc))
    assert call("subgroup", "index", "--subgroup", f"@{path}")[1] == {"index": 10}
    assert call("subgroup", "index", "--subgroup", json.dumps(doc))[1] == {"index": 10}


def test_documents_round_trip():
    rng = random.Random(11)
    for n in (6, 10, 12, 30, 36):
        g = GammaSpec.gamma(n)
        assert ser.parse_group_doc(ser.group_doc(g)) == g
        assert ser.parse_group(f"gamma:{n}") == g
        dirs = complement_gamma(g)
        assert ser.parse_directions_doc(ser.directions_doc(dirs)) == dirs
        cert = rinfty_certificate(dirs)
        assert ser.parse_certificate_doc(ser.certificate_doc(cert)) == cert
        for _ in range(10):
            H = random_canonical(rng, g)
            assert ser.parse_subgroup_doc(ser.subgroup_doc(H)) == H
    t = TwistedSpec(2, 3, 1)
    assert ser.parse_group_doc(ser.group_doc(t)) == t
    chi = Character((ser.parse_frac("-1/3"), ser.parse_frac("2")))
    assert ser.parse_character_doc(ser.character_doc(chi)) == chi
    res = witness_search(TwistedBackend(t), chi, 8)
    assert isinstance(res, InSigma)
    assert ser.parse_witness_doc(ser.witness_doc(res)) == res
    unknown = witness_search(TwistedBackend(t), Character((ser.parse_frac(1), ser.parse_frac(0))), 4)
    assert ser.parse_witness_doc(ser.witness_doc(unknown)) == unknown


def test_group_list_split():
    assert ser.split_group_list("gamma:6,gammaS:2,3,twisted:2,3,1") == ["gamma:6", "gammaS:2,3", "twisted:2,3,1"]


def test_presentation_document():
    H = canonicalize(parse_word_list("t1^2, t2, a^5"), GammaSpec.gamma(6))
    doc = ser.presentation_doc(presentation(H), True)
    assert doc["verified"] and len(doc["P"]) == 2
