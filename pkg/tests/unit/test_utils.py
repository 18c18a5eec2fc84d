# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import pytest

from khoveq.utils import CheckReport, UnionFind


@pytest.mark.parametrize(
    "pairs, classes",
    [
        ([], [[1], [2], [3], [4]]),
        ([(1, 2)], [[1, 2], [3], [4]]),
        ([(4, 2), (3, 1)], [[1, 3], [2, 4]]),
        ([(4, 3), (3, 2), (2, 1)], [[1, 2, 3, 4]]),
    ],
)
def test_union_find_classes(pairs, classes):
    uf = UnionFind([4, 3, 2, 1])
    for x, y in pairs:
        uf.union(x, y)
    assert uf.classes() == classes
    assert len(uf) == len(classes)


def test_union_find_union_result():
    uf = UnionFind(range(3))
    assert uf.union(0, 1)
    assert not uf.union(1, 0)
    assert uf.find(0) == uf.find(1) != uf.find(2)


def test_check_report():
    report = CheckReport("d squared")
    assert report
    assert str(report) == "d squared: PASS"
    report.add("(0, 1): nonzero")
    assert not report
    assert str(report) == "d squared: FAIL"
    assert report.violations == ["(0, 1): nonzero"]


def test_check_report_merge():
    report = CheckReport("transfer")
    other = CheckReport("chain map", ["(1, 2): not commuting"], informational=True)
    report.merge(other)
    assert report.violations == ["chain map: (1, 2): not commuting"]
    assert report.informational
    assert str(report) == "transfer: FAIL (informational)"
