"""Shared builders for the test suite."""

from ordtop import FinitePoset, ProductModel, build_poset


def chain(n: int) -> FinitePoset:
    labels = [f"c{i}" for i in range(n)]
    return build_poset(labels, list(zip(labels, labels[1:])))


def antichain(n: int) -> FinitePoset:
    return build_poset([f"a{i}" for i in range(n)], [])


def diamond() -> FinitePoset:
    return build_poset(
        ["bot", "l", "r", "top"],
        [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
    )


def vshape() -> FinitePoset:
    # two bottoms under two shared tops: the bottoms have no least upper bound
    return build_poset(
        ["a", "b", "t1", "t2"],
        [("a", "t1"), ("a", "t2"), ("b", "t1"), ("b", "t2")],
    )


def discrete_model(nx: int, ny: int) -> ProductModel:
    """Antichain of pairs labeled as an nx-by-ny discrete product."""
    xs = [f"x{i}" for i in range(nx)]
    ys = [f"y{j}" for j in range(ny)]
    labels = [f"({x},{y})" for x in xs for y in ys]
    poset = build_poset(labels, [])
    labeling = {f"({x},{y})": (x, y) for x in xs for y in ys}
    return ProductModel(poset, xs, ys, labeling, ys[0])


def rooted_model() -> ProductModel:
    """Two maximal pairs, each approximated by its own bottom element."""
    poset = build_poset(
        ["a1", "a2", "(x1,y)", "(x2,y)"],
        [("a1", "(x1,y)"), ("a2", "(x2,y)")],
    )
    labeling = {"(x1,y)": ("x1", "y"), "(x2,y)": ("x2", "y")}
    return ProductModel(poset, ["x1", "x2"], ["y"], labeling, "y")
