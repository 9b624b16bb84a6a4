import itertools

import pytest
from hypothesis import given, strategies as st

from dsgraphoid.errors import FrameError
from dsgraphoid.frame import (
    UNIT,
    EventSet,
    Variable,
    build_frame,
    extend_set,
    project_set,
    union_frame,
)


def test_build_frame_sizes():
    assert build_frame([("X", ("x1", "x2")), ("Y", ("y1", "y2"))]).size == 4
    assert build_frame([]).size == 1
    big = build_frame([(n, tuple(f"{n.lower()}{i}" for i in (1, 2, 3))) for n in "XYZ"])
    assert big.size == 27


def test_build_frame_rejects_duplicates_and_empty_domains():
    with pytest.raises(FrameError):
        build_frame([("X", ("a",)), ("X", ("b",))])
    with pytest.raises((FrameError, ValueError)):
        Variable("X", ())
    with pytest.raises((FrameError, ValueError)):
        Variable("X", ("a", "a"))


def test_codec_is_mixed_radix_first_variable_most_significant(xy):
    assert [xy.decode(i) for i in range(4)] == [("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")]


@pytest.mark.parametrize("n", range(0, 7))
def test_codec_bijective_on_binary_frames(n):
    frame = build_frame([(f"V{i}", ("a", "b")) for i in range(n)])
    seen = set()
    for cfg in itertools.product("ab", repeat=n):
        idx = frame.encode(cfg)
        assert frame.decode(idx) == cfg
        seen.add(idx)
    assert seen == set(range(frame.size))


def test_diag_projection_on_yz(load):
    diag = load("ex-diag")
    (focal,) = [ev for ev, _ in diag.items()]
    proj = project_set(focal, {"Y", "Z"})
    assert set(proj.labels()) == {("y1", "z1"), ("y2", "z2"), ("y3", "z3")}


def test_projection_edge_cases(xy):
    empty = EventSet.empty(xy)
    assert not project_set(empty, {"X"})
    full = EventSet.full(xy)
    assert project_set(full, {"Y"}) == EventSet.full(xy.subframe({"Y"}))
    unit = project_set(EventSet.of(xy, [("x1", "y1")]), ())
    assert unit.frame == UNIT and len(unit) == 1
    assert not project_set(empty, ())
    assert project_set(full, {"X", "Y"}) == full
    with pytest.raises(FrameError):
        project_set(full, {"W"})


def test_extension_gives_nine_configurations(load):
    xy3 = load("ex-diag-xy")
    target = load("ex-diag").frame
    (focal,) = [ev for ev, _ in xy3.items()]
    ext = extend_set(focal, target)
    expected = {(f"x{i}", f"y{i}", f"z{j}") for i in (1, 2, 3) for j in (1, 2, 3)}
    assert set(ext.labels()) == expected
    assert project_set(ext, {"X", "Y"}) == focal
    assert not extend_set(EventSet.empty(xy3.frame), target)


def test_extend_requires_superset(xy):
    with pytest.raises(FrameError):
        extend_set(EventSet.full(xy), xy.subframe({"X"}))


def test_union_frame_checks_domains():
    a = build_frame([("X", ("x1", "x2"))])
    b = build_frame([("X", ("x1", "x3"))])
    with pytest.raises(FrameError):
        union_frame(a, b)


frames = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(
    lambda sizes: build_frame([(f"V{i}", tuple(f"v{i}_{j}" for j in range(s))) for i, s in enumerate(sizes)])
)


@given(frames, st.data())
def test_projection_monotone_and_cylinder_membership(frame, data):
    n = frame.size
    a_mask = data.draw(st.integers(0, (1 << n) - 1))
    b_mask = a_mask | data.draw(st.integers(0, (1 << n) - 1))
    a, b = EventSet(frame, a_mask), EventSet(frame, b_mask)
    names = data.draw(st.sets(st.sampled_from(frame.names)))
    assert project_set(a, names) <= project_set(b, names)
    pa = project_set(a, names)
    cyl = extend_set(pa, frame)
    sub = frame.subframe(names)
    idx = [frame.names.index(v) for v in sub.names]
    for i in range(n):
        cfg = frame.decode(i)
        assert (i in cyl) == (tuple(cfg[k] for k in idx) in set(pa.labels()))
    assert project_set(cyl, names) == pa
