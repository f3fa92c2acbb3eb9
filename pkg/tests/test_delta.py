import pytest

from plkernel import delta


def circle_one_vertex():
    return delta.DeltaSet(
        {0: ("v",), 1: ("e",)},
        {(1, "e", 0): "v", (1, "e", 1): "v"},
        name="S1",
    )


def test_standard_delta():
    x = delta.standard_delta(2)
    assert x.f_vector() == (3, 3, 1)
    assert delta.check_identities(x).ok


def test_identity_violation_witness():
    # a 2-generator whose faces do not satisfy d_i d_j = d_{j-1} d_i
    x = delta.DeltaSet(
        {0: ("a", "b", "c", "d"), 1: ("p", "q", "r")},
        {
            (1, "p", 0): "b", (1, "p", 1): "a",
            (1, "q", 0): "c", (1, "q", 1): "a",
            (1, "r", 0): "c", (1, "r", 1): "d",
        },
    )
    bad = delta.DeltaSet(
        {**x.generators, 2: ("t",)},
        {**x.faces, (2, "t", 0): "r", (2, "t", 1): "q", (2, "t", 2): "p"},
    )
    rep = delta.check_identities(bad)
    assert not rep.ok
    assert rep.witness[0] == 2 and rep.witness[1] == "t"


def test_missing_face_raises():
    with pytest.raises(delta.DeltaStructureError):
        delta.DeltaSet({0: ("v",), 1: ("e",)}, {(1, "e", 0): "v"})


def test_morphism_check():
    x = delta.standard_delta(1)
    f = delta.identity_morphism(x)
    assert f.check().ok
    g = delta.DeltaMorphism(x, x, {**f.mapping, (0, (0,)): (1,)})
    assert not g.check().ok


def test_sd_standard_delta():
    sd = delta.sd_standard_delta(2)
    assert sd.f_vector() == (7, 12, 6)
    assert delta.check_identities(sd).ok


def test_colimit_circle_from_interval():
    # glue both endpoints of an interval together
    i = delta.standard_delta(1)
    pt = delta.standard_delta(0)
    d = delta.Diagram()
    d.add_object("i", i)
    d.add_object("p", pt)
    d.add_arrow("p", "i", {(0, (0,)): (0,)})
    d.add_arrow("p", "i", {(0, (0,)): (1,)})
    col = delta.colimit(d)
    assert col.delta_set.f_vector() == (1, 1)
    assert delta.check_identities(col.delta_set).ok


def test_colimit_two_intervals_circle():
    a = delta.standard_delta(1, name="a")
    b = delta.standard_delta(1, name="b")
    p = delta.standard_delta(0, name="p")
    q = delta.standard_delta(0, name="q")
    d = delta.Diagram()
    for key, obj in (("a", a), ("b", b), ("p", p), ("q", q)):
        d.add_object(key, obj)
    d.add_arrow("p", "a", {(0, (0,)): (0,)})
    d.add_arrow("p", "b", {(0, (0,)): (0,)})
    d.add_arrow("q", "a", {(0, (0,)): (1,)})
    d.add_arrow("q", "b", {(0, (0,)): (1,)})
    col = delta.colimit(d)
    assert col.delta_set.f_vector() == (2, 2)


def test_kan_fill_in_simplex():
    x = delta.standard_delta(2)
    horn = {0: (1, 2), 2: (0, 1)}
    filler = delta.kan_fill(x, 2, 1, horn)
    assert filler == (0, 1, 2)


def test_kan_fill_absent():
    x = circle_one_vertex()
    # no 2-generator at all, so no filler exists
    assert delta.kan_fill(x, 2, 1, {0: "e", 2: "e"}) is None


def test_horn_compatibility_raises():
    x = delta.standard_delta(3)
    bad = {0: (0, 1, 2), 2: (0, 1, 2), 3: (0, 1, 2)}
    with pytest.raises(delta.IncompatibleHornError):
        delta.kan_fill(x, 3, 1, bad)


def test_file_roundtrip(tmp_path):
    x = circle_one_vertex()
    path = tmp_path / "s1.dset"
    delta.dump(x, path)
    back = delta.load(path)
    assert back.f_vector() == x.f_vector()
    assert delta.dumps(back) == delta.dumps(x)


def test_morphism_roundtrip():
    x = delta.standard_delta(1)
    f = delta.identity_morphism(x)
    text = delta.dumps_morphism(f, "idmap")
    g = delta.loads_morphism(text, {x.name: x})
    assert g.check().ok
