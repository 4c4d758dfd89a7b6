import random

import pytest

from blockvd.errors import InvalidInput
from blockvd.partitions import (
    Partition,
    all_partitions,
    bell_number,
    inc_is_forest,
    one_coarsenings,
    uplus,
)


def P(m, *parts):
    return Partition.from_parts(m, parts)


class TestPartition:
    def test_canonical_form_unique(self):
        a = Partition.from_parts(4, [[2, 3], [1], [0]])
        b = Partition.from_parts(4, [[0], [3, 2], [1]])
        assert a == b and a.parts == ((0,), (1,), (2, 3))

    def test_validation(self):
        with pytest.raises(InvalidInput):
            Partition.from_parts(3, [[0, 1]])
        with pytest.raises(InvalidInput):
            Partition.from_parts(3, [[0, 1], [1, 2]])
        with pytest.raises(InvalidInput):
            Partition.from_parts(2, [[0, 5]])


class TestUplus:
    def test_worked_example(self):
        # {{1},{2,3},{4}} joined with {{1,2},{3},{4}} gives {{1,2,3},{4}}
        # (shifted to 0-based ground set)
        x = P(4, [0], [1, 2], [3])
        y = P(4, [0, 1], [2], [3])
        assert uplus(x, y) == P(4, [0, 1, 2], [3])

    def test_idempotent(self):
        x = P(5, [0, 3], [1], [2, 4])
        assert uplus(x, x) == x

    def test_singletons_identity(self):
        y = P(4, [0, 2], [1, 3])
        assert uplus(Partition.singletons(4), y) == y

    def test_commutative_associative(self):
        rng = random.Random(0)
        univ = list(all_partitions(4))
        for _ in range(50):
            x, y, z = rng.choice(univ), rng.choice(univ), rng.choice(univ)
            assert uplus(x, y) == uplus(y, x)
            assert uplus(uplus(x, y), z) == uplus(x, uplus(y, z))


class TestCoarsenings:
    def test_two_singletons(self):
        x = P(2, [0], [1])
        assert set(one_coarsenings(x)) == {x, P(2, [0, 1])}

    def test_single_part(self):
        x = P(2, [0, 1])
        assert one_coarsenings(x) == [x]

    def test_counting(self):
        for p in range(1, 6):
            x = Partition.singletons(p)
            assert len(one_coarsenings(x)) == 2**p - p

    def test_all_are_coarsenings(self):
        x = P(5, [0, 1], [2], [3, 4])
        for c in one_coarsenings(x):
            # every part of x sits inside one part of c
            for part in x.parts:
                owners = [q for q in c.parts if set(part) <= set(q)]
                assert len(owners) == 1


class TestIncForest:
    def test_star(self):
        assert inc_is_forest(3, [P(3, [0], [1], [2]), P(3, [0, 1, 2])])

    def test_duplicate_part_cycle(self):
        assert not inc_is_forest(2, [P(2, [0, 1]), P(2, [0, 1])])

    def test_mixed(self):
        assert inc_is_forest(4, [P(4, [0, 1], [2, 3]), P(4, [1, 2], [0], [3])])

    def test_part_count_identity(self):
        # for connected joint incidence: acyclic iff |X1|+|X2| = m+1
        for m in range(1, 7):
            univ = list(all_partitions(m))
            for x in univ:
                for y in univ:
                    forest = inc_is_forest(m, [x, y])
                    connected = uplus(x, y).num_parts == 1
                    if connected:
                        assert forest == (x.num_parts + y.num_parts == m + 1)

    def test_one_coarsening_observation(self):
        # acyclic joint iff some 1-coarsening of x makes it connected+acyclic
        for m in range(1, 6):
            univ = list(all_partitions(m))
            for x in univ:
                coars = one_coarsenings(x)
                for y in univ:
                    lhs = inc_is_forest(m, [x, y])
                    rhs = any(
                        uplus(c, y).num_parts == 1 and inc_is_forest(m, [c, y])
                        for c in coars
                    )
                    assert lhs == rhs


class TestEnumeration:
    def test_bell_counts(self):
        for m in range(7):
            assert len(list(all_partitions(m))) == bell_number(m)

    def test_all_distinct(self):
        got = list(all_partitions(5))
        assert len(set(got)) == len(got)
