import pytest

from plkernel import delta, homology, nerve


def arrow_category():
    # a single morphism between two objects, no composites needed
    return nerve.FiniteNonUnitalCategory(
        objects=("A", "B"),
        morphisms=("f",),
        src={"f": "A"},
        tgt={"f": "B"},
        comp={},
        name="arrow",
    )


def chain_category():
    return nerve.FiniteNonUnitalCategory(
        objects=(0, 1, 2),
        morphisms=("f", "g", "gf"),
        src={"f": 0, "g": 1, "gf": 0},
        tgt={"f": 1, "g": 2, "gf": 2},
        comp={("f", "g"): "gf"},
        name="chain",
    )


def test_check_category_good():
    assert nerve.check_category(arrow_category()).ok
    assert nerve.check_category(chain_category()).ok


def test_check_category_missing_composite():
    c = nerve.FiniteNonUnitalCategory(
        objects=(0,), morphisms=("e",), src={"e": 0}, tgt={"e": 0}, comp={},
    )
    with pytest.raises(nerve.CategoryStructureError):
        nerve.check_category(c)
    assert nerve.check_category(c, allow_partial=True).ok


def test_check_category_bad_endpoint():
    c = nerve.FiniteNonUnitalCategory(
        objects=(0, 1, 2),
        morphisms=("f", "g"),
        src={"f": 0, "g": 1},
        tgt={"f": 1, "g": 2},
        comp={("f", "g"): "f"},
    )
    rep = nerve.check_category(c)
    assert not rep.ok
    assert any(kind == "endpoint" for kind, _ in rep.issues)


def non_associative_category():
    # composition on {e, s} over one object with comp(e, s) = e breaks
    # associativity at the triple (s, e, s)
    tables = {
        ("e", "e"): "e", ("e", "s"): "e", ("s", "e"): "s", ("s", "s"): "e",
    }
    return nerve.FiniteNonUnitalCategory(
        objects=(0,),
        morphisms=("e", "s"),
        src={"e": 0, "s": 0},
        tgt={"e": 0, "s": 0},
        comp=tables,
    )


def test_check_category_associativity_witness():
    rep = nerve.check_category(non_associative_category())
    assert not rep.ok
    kinds = {kind for kind, _ in rep.issues}
    assert "associativity" in kinds


def test_nerve_arrow():
    n = nerve.nerve(arrow_category(), max_degree=3)
    assert n.f_vector() == (2, 1)
    h = homology.homology_of_delta_set(n)
    assert h.betti_vector() == (1, 0)


def test_nerve_chain_contractible():
    n = nerve.nerve(chain_category(), max_degree=3)
    assert n.f_vector() == (3, 3, 1)
    assert delta.check_identities(n).ok
    h = homology.homology_of_delta_set(n)
    assert h.betti_vector() == (1, 0, 0)


def test_nerve_face_identity_failure_detected():
    with pytest.raises(nerve.CategoryStructureError) as exc:
        nerve.nerve(non_associative_category(), max_degree=3)
    assert "('s', 'e', 's')" in str(exc.value)


def test_demo_cobordism_category():
    c = nerve.demo_cobordism_category()
    assert len(c.objects) == 2
    assert len(c.morphisms) == 23
    assert nerve.check_category(c, allow_partial=True).ok
    cup = ("E", "P", frozenset({(("o", 0), ("o", 1))}), 0)
    cap = ("P", "E", frozenset({(("i", 0), ("i", 1))}), 0)
    assert c.comp[(cup, cap)] == ("E", "E", frozenset(), 1)


def test_bidelta_total_homology_matches_nerve():
    c = chain_category()
    sc = nerve.constant_simplicial_category(c)
    b = nerve.nerve_simplicial(sc, max_q=3)
    b.check()
    h = nerve.total_homology(b)
    hn = homology.homology_of_delta_set(nerve.nerve(c, max_degree=3))
    assert h == hn


def test_category_file_roundtrip(tmp_path):
    c = chain_category()
    path = tmp_path / "c.cat"
    nerve.dump(c, path)
    back = nerve.load(path)
    assert nerve.check_category(back).ok
    assert nerve.dumps(back) == nerve.dumps(c)


def test_demo_category_roundtrip(tmp_path):
    c = nerve.demo_cobordism_category()
    path = tmp_path / "cob.cat"
    nerve.dump(c, path)
    back = nerve.load(path)
    n1 = nerve.nerve(c, max_degree=2)
    n2 = nerve.nerve(back, max_degree=2)
    assert n1.f_vector() == n2.f_vector()
