"""Named finite spaces used as golden inputs.

Each drawing is transcribed as heights plus undirected edges; an edge
always points from the lower node to the higher one.
"""
from __future__ import annotations

from .poset import Poset, from_drawing, s1_n


def _s1(n: int) -> Poset:
    return s1_n(n)


def table_small() -> dict[str, Poset]:
    """All connected spaces with at most 4 points, keyed by |X| and |mxl|."""
    out: dict[str, Poset] = {}
    # one maximal element, drawn upside down: smaller height is higher
    out["small_1_m1"] = from_drawing({"a": 0}, [])
    out["small_2_m1"] = from_drawing({"a": 0, "b": -1}, [("a", "b")])
    out["small_3_m1_chain"] = from_drawing({"a": 0, "b": -1, "c": -2}, [("a", "b"), ("b", "c")])
    out["small_3_m1_fork"] = from_drawing({"a": 0, "b": -1, "c": -1}, [("b", "a"), ("a", "c")])
    out["small_4_m1_chain"] = from_drawing({"a": 0, "b": -1, "c": -2, "d": -3},
                                           [("a", "b"), ("b", "c"), ("c", "d")])
    out["small_4_m1_diamond"] = from_drawing({"a": 0, "b": -1, "c": -1, "d": -2},
                                             [("a", "b"), ("b", "d"), ("d", "c"), ("c", "a")])
    out["small_4_m1_hook"] = from_drawing({"a": 0, "b": -1, "c": -2, "d": -2},
                                          [("a", "b"), ("b", "c"), ("a", "d")])
    out["small_4_m1_y"] = from_drawing({"a": 0, "b": -1, "c": -2, "d": -2},
                                       [("d", "b"), ("b", "c"), ("a", "b")])
    out["small_4_m1_claw"] = from_drawing({"a": 0, "b": -1, "c": -1, "d": -1},
                                          [("b", "a"), ("a", "c"), ("a", "d")])
    # two maximal elements
    out["small_3_m2_vee"] = from_drawing({"a": 0, "b": 1, "c": 1}, [("b", "a"), ("a", "c")])
    out["small_4_m2_hook"] = from_drawing({"a": 0, "b": 1, "c": 2, "d": 2},
                                          [("a", "b"), ("b", "c"), ("a", "d")])
    out["small_4_m2_y"] = from_drawing({"a": 0, "b": 1, "c": 2, "d": 2},
                                       [("d", "b"), ("b", "c"), ("a", "b")])
    out["small_4_m2_zigzag"] = from_drawing({"a": 0, "b": 0, "c": 1, "d": 1},
                                            [("c", "a"), ("c", "b"), ("d", "b")])
    out["small_4_m2_crown"] = from_drawing({"a": 0, "b": 0, "c": 1, "d": 1},
                                           [("c", "a"), ("c", "b"), ("d", "b"), ("d", "a")])
    # three maximal elements
    out["small_4_m3_claw"] = from_drawing({"a": 0, "b": 1, "c": 1, "d": 1},
                                          [("b", "a"), ("a", "c"), ("a", "d")])
    return out


def beat_batch_counterexample() -> Poset:
    """Two minima below a, a below b, b below two maxima.

    a is an up beat point and b a down beat point; removing both at once
    leaves a circle although the space is contractible.
    """
    return from_drawing({"l0": 0, "l1": 0, "a": 1, "b": 2, "t0": 3, "t1": 3},
                        [("l0", "a"), ("l1", "a"), ("a", "b"), ("b", "t0"), ("b", "t1")])


def circle_33() -> Poset:
    return from_drawing({"a0": 1, "a1": 1, "a2": 1, "b0": 0, "b1": 0, "b2": 0},
                        [("a0", "b0"), ("b0", "a1"), ("a1", "b1"), ("b1", "a2"),
                         ("a2", "b2"), ("b2", "a0")])


def s12x4() -> Poset:
    lv = {}
    for i in range(4):
        lv[f"a{i}"] = 2
        lv[f"b{i}"] = 1
    lv.update({"c0": -1, "c1": 0, "c2": 0, "c3": -1})
    edges = []
    for i in range(4):
        edges += [(f"a{i}", f"b{i}"), (f"b{i}", f"c{i}")]
    edges += [("a0", "b1"), ("a1", "b0"), ("a2", "b3"), ("a3", "b2"),
              ("c0", "b3"), ("c3", "b0"), ("c1", "b2"), ("c2", "b1")]
    return from_drawing(lv, edges)


def _levels_3333_1():
    lv = {}
    for i in range(3):
        lv[f"a{i}"] = 3
        lv[f"b{i}"] = 2
        lv[f"d{i}"] = 1
        lv[f"c{i}"] = 0
    return lv


_BASE_3333_1 = [("b0", "a2"), ("a2", "b1"), ("b1", "a0"), ("a0", "b2"), ("b2", "a1"), ("a1", "b0"),
                ("d0", "c2"), ("c2", "d1"), ("d1", "c0"), ("c0", "d2"), ("d2", "c1"), ("c1", "d0")]


def fig_3333_1(part: str) -> Poset:
    """Connected body of six points with four outer triples."""
    edges = list(_BASE_3333_1)
    if part in ("b", "c"):
        edges += [("d0", "b1"), ("d1", "b0"), ("d1", "b1"), ("d1", "b2"), ("b1", "d2")]
    if part == "c":
        edges += [("d0", "a1"), ("b0", "c1"), ("d2", "a1"), ("b2", "c1")]
    if part == "e":
        edges += [(f"d{i}", f"b{j}") for i in range(3) for j in range(3)]
    if part not in ("a", "b", "c", "e"):
        raise KeyError(part)
    return from_drawing(_levels_3333_1(), edges)


def _levels_114():
    lv = {}
    for i in range(3):
        lv[f"a{i}"] = 1
        lv[f"c{i}"] = -3
    lv.update({"b0": -1, "b1": 0, "b2": -1, "b3": -1, "b4": -2, "b5": -1})
    return lv


def fig_3333_114(part: str) -> Poset:
    """Body split 1+1+4 (drawings (a) and (b) leave b3, b5 partly loose)."""
    edges = [("a2", "b0"), ("b0", "a1"), ("a1", "b2"), ("b2", "a0"), ("a0", "b1"), ("b1", "a2"),
             ("c2", "b0"), ("b0", "c1"), ("c1", "b2"), ("b2", "c0"), ("c0", "b4"), ("b4", "c2")]
    if part in ("b", "c"):
        edges += [("b1", "b3"), ("b3", "b4"), ("b4", "b5"), ("b5", "b1")]
    if part == "c":
        edges += [("a1", "b3"), ("b3", "c1"), ("c1", "b5"), ("b5", "a1")]
    if part not in ("a", "b", "c"):
        raise KeyError(part)
    return from_drawing(_levels_114(), edges)


def fig_3333_15(part: str) -> Poset:
    """Body split 1+5."""
    lv = {}
    for i in range(3):
        lv[f"a{i}"] = 1
        lv[f"c{i}"] = -3
    lv.update({"b0": -1, "b1": 0, "b2": 0, "c": -1, "d1": -2, "d2": -2})
    edges = [("a2", "b0"), ("b0", "a1"), ("a1", "b2"), ("b2", "a0"), ("a0", "b1"), ("b1", "a2"),
             ("c2", "b0"), ("b0", "c1"), ("c1", "d2"), ("d2", "c0"), ("c0", "d1"), ("d1", "c2")]
    if part == "b":
        edges += [("b1", "c"), ("c", "d1")]
    if part in ("c", "d"):
        edges += [("d2", "b1"), ("b1", "c"), ("c", "d1"), ("d1", "b2")]
    if part == "d":
        edges += [("c1", "c"), ("c", "a1"), ("c1", "b2"), ("d2", "a1")]
    if part not in ("a", "b", "c", "d"):
        raise KeyError(part)
    return from_drawing(lv, edges)


def fig_mis3_mpis4(part: str) -> Poset:
    """Three maximal points over four maximal body points."""
    if part == "a":
        lv = {"b0": 0, "b1": 0, "b2": 0, "b3": 0, "a0": 1, "a1": 1, "a2": 1}
        edges = [("b0", "a0"), ("b0", "a1"), ("b0", "a2"), ("a0", "b1"), ("b1", "a1"),
                 ("a1", "b3"), ("b3", "a2"), ("a2", "b2"), ("b2", "a0")]
    elif part == "b":
        lv = {"b0": 0, "b1": 0, "b2": 0, "b3": 0, "a0": 1, "a1": 1, "a2": 1}
        edges = [("a0", "b0"), ("b0", "a1"), ("a1", "b1"), ("b1", "a0"), ("a0", "b2"),
                 ("a1", "b3"), ("b2", "a2"), ("a2", "b3")]
    else:
        raise KeyError(part)
    return from_drawing(lv, edges)


def _levels_np4():
    lv = {"b0": 0.5, "b1": 0.5, "b2": 0, "b3": 0, "b4": -0.5, "b5": -0.5}
    for i in range(3):
        lv[f"a{i}"] = 1.5
        lv[f"c{i}"] = -1.5
    return lv


def fig_114_np4(part: str) -> Poset:
    """Body split 1+1+4 with four minimal body points, as drawn.

    The relations between {b0, b1} and {b4, b5} are left open in the
    drawings (a)-(c); 'd' is the completed case with b4 not below b0.
    """
    upper_b = [("a0", "b0"), ("b0", "a1"), ("a1", "b1"), ("b1", "a0"), ("a0", "b2"),
               ("a1", "b3"), ("b2", "a2"), ("a2", "b3")]
    upper_c = [("b0", "a0"), ("b0", "a1"), ("b0", "a2"), ("a0", "b1"), ("b1", "a1"),
               ("a1", "b3"), ("b3", "a2"), ("a2", "b2"), ("b2", "a0")]
    lower_a = [("c0", "b4"), ("b4", "c1"), ("c1", "b5"), ("b5", "c0"), ("c0", "b2"),
               ("c1", "b3"), ("b2", "c2"), ("c2", "b3")]
    lower_c = [("b4", "c0"), ("b4", "c1"), ("b4", "c2"), ("c0", "b5"), ("b5", "c1"),
               ("c1", "b3"), ("b3", "c2"), ("c2", "b2"), ("b2", "c0")]
    lower_b = [("c0", "b5"), ("b5", "c1"), ("c1", "b3"), ("b3", "c2"), ("c2", "b2"),
               ("b2", "c0"), ("c0", "b4"), ("c1", "b4"), ("c2", "b4")]
    if part == "a":
        edges = upper_b + lower_a
    elif part == "b":
        edges = upper_b + lower_b
    elif part == "c":
        edges = upper_c + lower_c
    elif part == "d":
        edges = upper_c + lower_c + [("b0", "b5"), ("b5", "b1"), ("b1", "b4"), ("b4", "a2"),
                                     ("c2", "b0")]
    else:
        raise KeyError(part)
    return from_drawing(_levels_np4(), edges)


def named_spaces() -> dict[str, Poset]:
    """Every named space, keyed by file stem."""
    out: dict[str, Poset] = {}
    for n in range(2, 9):
        out[f"s1_{n}"] = _s1(n)
    out.update(table_small())
    out["chain5"] = Poset.chain(5)
    out["beat_batch"] = beat_batch_counterexample()
    out["circle_33"] = circle_33()
    out["s12x4"] = s12x4()
    for part in "abce":
        out[f"fig_3333_1{part}"] = fig_3333_1(part)
    for part in "abc":
        out[f"fig_3333_114{part}"] = fig_3333_114(part)
    for part in "abcd":
        out[f"fig_3333_15{part}"] = fig_3333_15(part)
    for part in "ab":
        out[f"fig_mis3_mpis4{part}"] = fig_mis3_mpis4(part)
    for part in "abcd":
        out[f"fig_114_np4{part}"] = fig_114_np4(part)
    return out
