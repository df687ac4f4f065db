from itertools import product

import pytest

from transversal import core, groups
from transversal.errors import ValidationError


def klein_table():
    # C2 x C2 as a table over letter labels
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    return groups.FiniteGroup("eabc", table)


class TestFiniteGroup:
    def test_symmetric_group_order(self):
        assert groups.symmetric_group(3).order == 6
        assert groups.symmetric_group(4).order == 24

    def test_cyclic_order(self):
        assert groups.cyclic_group(5).order == 5

    def test_dihedral_order(self):
        assert groups.dihedral_group(4).order == 8

    def test_table_group(self):
        g = klein_table()
        assert g.identity == "e"
        assert g.mul("a", "b") == "c"
        assert g.inverse("a") == "a"

    def test_missing_inverse_rejected(self):
        with pytest.raises(ValidationError):
            groups.FiniteGroup("ea", [[0, 1], [1, 1]])

    def test_nonassociative_loop_rejected(self):
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ValidationError, match="associativity"):
            groups.FiniteGroup(range(5), table)

    def test_json_table_and_permutations(self):
        g = groups.group_from_json(
            {"elements": ["e", "a"], "table": [[0, 1], [1, 0]]}
        )
        assert g.order == 2
        h = groups.group_from_json({"permutations": [[2, 1, 3]], "degree": 3})
        assert h.order == 2


class TestSubgroupClosure:
    def test_empty_generators(self):
        s3 = groups.symmetric_group(3)
        assert groups.subgroup_closure(s3, []) == (s3.identity,)

    def test_transposition(self):
        s3 = groups.symmetric_group(3)
        assert len(groups.subgroup_closure(s3, [(2, 1, 3)])) == 2

    def test_two_generators_span(self):
        s3 = groups.symmetric_group(3)
        assert len(groups.subgroup_closure(s3, [(2, 1, 3), (2, 3, 1)])) == 6

    def test_unknown_generator(self):
        with pytest.raises(ValidationError):
            groups.subgroup_closure(groups.cyclic_group(3), [(9, 9, 9)])


class TestCosets:
    def test_normal_subgroup_gives_singletons(self):
        s3 = groups.symmetric_group(3)
        a3 = groups.subgroup_closure(s3, [(2, 3, 1)])
        fam = groups.coset_family(s3, a3)
        assert all(len(t) == 1 for t in fam.sets)

    def test_trivial_subgroup_matches_indices(self):
        g = klein_table()
        fam = groups.coset_family(g, ["e"])
        assert fam.sets == tuple((i,) for i in range(4))

    def test_s3_nonnormal(self):
        s3 = groups.symmetric_group(3)
        h = groups.subgroup_closure(s3, [(2, 1, 3)])
        fam = groups.coset_family(s3, h)
        assert fam.n == 3
        assert isinstance(core.hall_check(fam), core.Sdr)

    def test_not_a_subgroup_rejected(self):
        s3 = groups.symmetric_group(3)
        with pytest.raises(ValidationError):
            groups.coset_system(s3, [s3.identity, (2, 3, 1)])  # not closed


def brute_simultaneous_exists(g, subgroup) -> bool:
    """Exhaustive search over one pick per left coset."""
    system = groups.coset_system(g, subgroup)
    for choice in product(*[list(c) for c in system.left]):
        hits = [sum(1 for x in choice if x in set(rc)) for rc in system.right]
        if all(h == 1 for h in hits):
            return True
    return False


class TestSimultaneousReps:
    def test_normal_subgroup(self):
        s3 = groups.symmetric_group(3)
        a3 = groups.subgroup_closure(s3, [(2, 3, 1)])
        reps = groups.simultaneous_reps(s3, a3)
        assert groups.validate_simultaneous_reps(s3, a3, reps) == (True, None)

    def test_s3_transposition_subgroup(self):
        s3 = groups.symmetric_group(3)
        h = groups.subgroup_closure(s3, [(2, 1, 3)])
        reps = groups.simultaneous_reps(s3, h)
        assert groups.validate_simultaneous_reps(s3, h, reps) == (True, None)
        assert brute_simultaneous_exists(s3, h)

    def test_dihedral_nonnormal_order_two(self):
        d4 = groups.dihedral_group(4)
        reflection = next(
            x for x in d4.elements
            if x != d4.identity and d4.mul(x, x) == d4.identity
            and len(groups.subgroup_closure(d4, [x])) == 2
        )
        h = groups.subgroup_closure(d4, [reflection])
        reps = groups.simultaneous_reps(d4, h)
        assert len(reps) == 4
        assert groups.validate_simultaneous_reps(d4, h, reps) == (True, None)

    def test_wrong_reps_rejected_by_validator(self):
        s3 = groups.symmetric_group(3)
        h = groups.subgroup_closure(s3, [(2, 1, 3)])
        system = groups.coset_system(s3, h)
        bad = tuple(c[0] for c in system.left)
        ok, _ = groups.validate_simultaneous_reps(s3, h, bad)
        # a plain left transversal usually misses some right coset
        assert ok == brute_left_is_right(s3, h, bad)


def brute_left_is_right(g, subgroup, reps):
    system = groups.coset_system(g, subgroup)
    hits = [sum(1 for x in reps if x in set(rc)) for rc in system.right]
    return all(h == 1 for h in hits)
