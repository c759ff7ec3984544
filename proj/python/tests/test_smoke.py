import json

import pytest

import polarkit as pk


def test_space_summary():
    s = pk.Space("Q", 7, 3)
    assert (s.kind, s.dim, s.q, s.rank, s.theta, len(s)) == ("Q", 7, 3, 3, 28, 364)
    assert s.index_of(s.point(5)) == 5
    assert "points=364" in repr(s)


def test_errors_map_to_python_exceptions():
    with pytest.raises(pk.InvalidArgument):
        pk.Space("X", 4, 3)
    with pytest.raises(pk.InvalidArgument):
        pk.Space("Q+", 4, 3)
    with pytest.raises(pk.CapacityExceeded):
        pk.Space("W", 8, 3, point_cap=100)
    assert issubclass(pk.FormInvarianceError, pk.PolarkitError)


def test_full_point_set_is_tight_and_ovoid():
    s = pk.Space("W", 4, 3)
    r = pk.classify(pk.PointSet.all(s))
    assert r.is_intriguing
    assert (r.tight_i, r.ovoid_m, r.h2) == (10, 4, None)


def test_line_and_complement():
    s = pk.Space("W", 4, 3)
    line = pk.maximal_ts_points(s)
    r = pk.classify(line)
    assert (r.h1, r.h2, r.tight_i) == (4, 1, 1)
    assert pk.classify(line.complement()).tight_i == 9
    assert json.loads(r.to_json())["tight_i"] == 1


def test_point_sets_accept_unsorted_indices():
    s = pk.Space("W", 4, 3)
    a = pk.PointSet(s, [3, 1, 2])
    assert a.indices == [1, 2, 3]
    assert 2 in a and 0 not in a
    assert a.intersect(pk.PointSet(s, [2, 3, 9])) == pk.PointSet(s, [2, 3])


def test_adjoint_orbits():
    parts = pk.adjoint_sl3(3)
    assert parts.sorted_sizes() == [52, 312]
    tight = sorted((len(o), pk.classify(o).tight_i) for o in parts.orbits())
    assert tight == [(52, 4), (312, 24)]


def test_orbits_from_generator_json():
    s = pk.Space("W", 4, 3)
    gens = pk.classical_generators("Sp", 4, 3)
    assert len(pk.orbits(s, gens)) == 1
    empty = json.dumps({"q": 3, "d": 4, "generators": []})
    assert len(pk.orbits(s, empty)) == 40


def test_dlength_partition():
    classes = pk.dlength_partition("H", 4, 4)
    assert sorted(classes) == [2, 4]
    assert [len(classes[k]) for k in (2, 4)] == [18, 27]
    assert [pk.classify(classes[k]).ovoid_m for k in (2, 4)] == [2, 3]


def test_field_reduction_row_2():
    fr = pk.FieldReduction(2, "Q+", 4, 4, 2)
    assert (len(fr.large_space), len(fr.small_space), fr.b) == (25, 135, 2)
    m1 = fr.blow_up()
    assert pk.classify(m1).tight_i == 5
    assert fr.push_down(pk.PointSet.all(fr.large_space)) == m1
    with pytest.raises(pk.InvalidArgument):
        fr.lift_up(m1.complement())


def test_perp_residual():
    s = pk.Space("Q", 5, 3)
    m = pk.perp_residual(s, [[0, 1, 2, 0, 0]])
    r = pk.classify(m)
    assert (len(m), r.ovoid_m, r.h1, r.h2) == (10, 1, 1, 4)


def test_number_theory():
    assert pk.zsigmondy(2, 6) is None
    assert pk.zsigmondy(2, 4) == 5
    f = pk.feasibility("Q-", 6, 5, 51840)
    assert 36 in f["feasible_i"]


def test_verify_fast_targets():
    reports = pk.verify("space-W33")
    assert len(reports) == 1 and reports[0]["match"]
