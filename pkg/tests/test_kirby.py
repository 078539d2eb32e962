import pytest

from kirbytris.kirby import KirbyError, diagram_isomorphic
from kirbytris.kirby_text import (parse_kirby, serialize_kirby, to_json_obj)

HOPF = """
# standard alternating Hopf link, both components 0-framed
crossing c1 slots (bi1 ao1 bo1 ai1) over (ai1 ao1)
crossing c2 slots (ao2 bi2 ai2 bo2) over (bi2 bo2)
component A framing coeff 0 { c1:ai1 c2:ai2 }
component B framing coeff 0 { c1:bi1 c2:bi2 }
"""

TREFOIL = """
crossing c1 slots (c1.tr c1.tl c1.bl c1.br) over (c1.bl c1.tr)
crossing c2 slots (c2.tr c2.tl c2.bl c2.br) over (c2.bl c2.tr)
crossing c3 slots (c3.tr c3.tl c3.bl c3.br) over (c3.bl c3.tr)
component T framing blackboard 0 {
  c1:c1.bl c2:c2.br c3:c3.bl c1:c1.br c2:c2.bl c3:c3.br }
"""

UNKNOT = """
marker m slots (p q)
component U framing coeff 0 { m:p }
"""

CANCEL = """
handle h feet (a1) (b1) pairing (a1>b1)
component K framing blackboard 0 { h:a1 }
"""


def test_empty_document():
    d = parse_kirby("")
    assert len(d.handles) == 0 and len(d.components) == 0


def test_lone_handle():
    d = parse_kirby("handle h1\n")
    assert len(d.handles) == 1 and len(d.components) == 0


def test_hopf_parses_and_is_planar():
    d = parse_kirby(HOPF)
    assert len(d.components) == 2 and len(d.crossings) == 2
    smap, _ = d.planar_map()
    assert smap.counts() == (2, 4, 4)
    assert d.self_writhe("A") == 0 and d.self_writhe("B") == 0
    assert d.has_overcrossing("A") and d.has_overcrossing("B")


def test_hopf_nonalternating_undercomponent():
    text = HOPF.replace("over (bi2 bo2)", "over (ao2 ai2)")
    d = parse_kirby(text)
    assert d.has_overcrossing("A")
    assert not d.has_overcrossing("B")


def test_trefoil_writhe():
    d = parse_kirby(TREFOIL)
    assert d.self_writhe("T") == 3
    assert d.has_overcrossing("T")


def test_round_unknot():
    d = parse_kirby(UNKNOT)
    assert d.self_writhe("U") == 0
    assert not d.has_overcrossing("U")


def test_torus_wiring_rejected():
    # reflecting one crossing's rotation forces V - E + F != 2
    text = HOPF.replace("slots (ao2 bi2 ai2 bo2)", "slots (ao2 bo2 ai2 bi2)")
    with pytest.raises(KirbyError, match="planarity"):
        parse_kirby(text)


def test_dangling_slot_rejected():
    text = HOPF.replace("component B framing coeff 0 { c1:bi1 c2:bi2 }", "")
    with pytest.raises(KirbyError, match="dangling|passes"):
        parse_kirby(text)


def test_seifert_on_handle_component_rejected():
    with pytest.raises(KirbyError, match="coefficient framing"):
        parse_kirby(CANCEL.replace("blackboard 0", "coeff 0"))


def test_odd_pass_over_reversing_rejected():
    text = CANCEL.replace("handle h feet", "handle h reversing feet")
    with pytest.raises(KirbyError, match="odd"):
        parse_kirby(text)


def test_twice_through_reversing_ok():
    text = """
handle h reversing feet (a1 a2) (b1 b2) pairing (a1>b1 a2>b2)
component K framing blackboard 0 { h:a1 h:a2 }
"""
    d = parse_kirby(text)
    assert d.handle_pass_count("K", "h") == 2


def test_bad_pairing_order_rejected():
    text = """
handle h feet (a1 a2 a3) (b1 b2 b3) pairing (a1>b1 a2>b3 a3>b2)
component K framing blackboard 0 { h:a1 h:a2 h:a3 }
component L framing blackboard 0 { h:b1 }
"""
    with pytest.raises(KirbyError, match="order-preserving"):
        parse_kirby(text)


def test_roundtrip_serialization():
    for text in (HOPF, TREFOIL, UNKNOT, CANCEL, "handle h1 reversing\n"):
        d = parse_kirby(text)
        again_dsl = parse_kirby(serialize_kirby(d, "dsl"))
        again_json = parse_kirby(serialize_kirby(d, "json"))
        assert to_json_obj(d) == to_json_obj(again_dsl)
        assert to_json_obj(d) == to_json_obj(again_json)


def test_isomorphism_basic():
    d = parse_kirby(HOPF)
    assert diagram_isomorphic(d, d)
    framed = parse_kirby(HOPF.replace("component A framing coeff 0",
                                      "component A framing coeff 1"))
    assert not diagram_isomorphic(d, framed)


def test_isomorphism_relabeled():
    relabeled = (HOPF.replace("c1", "x1").replace("c2", "x2")
                 .replace("component A", "component P")
                 .replace("component B", "component Q"))
    assert diagram_isomorphic(parse_kirby(HOPF), parse_kirby(relabeled))


def test_isomorphism_mirror():
    mirrored = """
crossing c1 slots (ai1 bo1 ao1 bi1) over (ai1 ao1)
crossing c2 slots (bo2 ai2 bi2 ao2) over (bi2 bo2)
component A framing coeff 0 { c1:ai1 c2:ai2 }
component B framing coeff 0 { c1:bi1 c2:bi2 }
"""
    assert diagram_isomorphic(parse_kirby(HOPF), parse_kirby(mirrored))


def test_writhe_invariant_under_relabeling():
    d = parse_kirby(TREFOIL.replace("component T", "component ZZZ"))
    assert d.self_writhe("ZZZ") == 3


def test_insertions_on_unknot():
    d = parse_kirby(UNKNOT)
    d.insert_r2("U", 0)
    d.validate()
    assert d.self_writhe("U") == 0
    assert d.has_overcrossing("U")
    d.insert_kink("U", 0, +1)
    d.validate()
    assert d.self_writhe("U") == 1
    d.insert_kink("U", 2, -1)
    d.validate()
    assert d.self_writhe("U") == 0


def test_kink_signs():
    for sign in (+1, -1):
        d = parse_kirby(UNKNOT)
        d.insert_kink("U", 0, sign)
        d.validate()
        assert d.self_writhe("U") == sign
