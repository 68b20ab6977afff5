"""Smoke test for the coltrees_py extension module.

Build and install first:
    pip install --no-build-isolation ./crates/coltrees-py
then run:
    python3 python/smoke_test.py
"""

from math import comb

import coltrees_py as ct


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def main():
    a = ct.Matrix("11;10")
    assert a.size == 2 and str(a) == "11;10"
    assert ct.Matrix("[[1,1],[1,0]]") == a
    t = ct.count(a, 6)
    assert t.total == [2, 3, 10, 42, 198, 1001]
    assert t.color(2) == [1, 1, 3, 12, 55, 273]

    # one color with a loop: t(n) = C_{n-1}; big values come back as Python ints
    ones = ct.count(ct.Matrix("1"), 40).total
    assert ones == [catalan(n - 1) for n in range(1, 41)]
    assert ct.brute_force(a, 6) == [728, 273]

    assert ct.verify_equation(ct.Matrix("11;00"), "color=1", "F^2 + (x-1)*F + x") == (True, 30)
    assert ct.verify_equation(ct.Matrix("1"), "color=1", "F - x") == (False, 2)

    guess = ct.guess_hypergeometric([catalan(n - 1) for n in range(1, 25)])
    assert guess is not None
    assert ct.guess_hypergeometric(ct.count(ct.Matrix("11;00"), 24).color(1)) is None

    cat = ct.classify(2)
    assert cat.summary_line() == "10 iso, 8 strong, 8 tree"
    assert ct.Catalog.from_json(cat.to_json()).counts() == cat.counts()
    assert cat.find(ct.Matrix("01;10")) == cat.find(ct.Matrix("10;01"))

    b = ct.Matrix("111;010;001")
    assert ct.find_rewrites(b, 12) == [(2, [3], [2]), (3, [2], [3])]
    c = ct.apply_rewrite(b, 3, [2], [3])
    assert str(c) == "111;010;010"
    assert ct.strictly_equivalent(b, c, 12) is None
    assert ct.strictly_equivalent(ct.Matrix("10;00"), ct.Matrix("01;00"), 8) == 3
    # 0 means a cheap invariant separated the pair before counting
    assert ct.tree_coloring_equivalent(ct.Matrix("11;10"), ct.Matrix("11;01"), 8) == 0
    p = b.permute([3, 1, 2])
    assert p.canonical()[0] == b.canonical()[0]

    assert ct.unglove(ct.glove("(()(()))")) == "(()(()))"
    for tree in ["(1)", "(2)", "(1(1(1)(2))(2))", "(2(1(1)(2))(1(2)(1)(1)))"]:
        assert ct.tau_inv(ct.tau(tree)) == tree
    path = ct.root3_path("(3(2(1)))")
    assert ct.root3_path_inv(path) == "(3(2(1)))"
    print("coltrees_py smoke test passed")


if __name__ == "__main__":
    main()
