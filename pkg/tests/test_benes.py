import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qswitch.benes import apply_network, benes_network, check_permutation


@pytest.mark.parametrize("n", [2, 4, 8])
def test_every_permutation_routes(n):
    for perm in itertools.permutations(range(n)):
        out = apply_network(benes_network(perm), range(n))
        assert [out[perm[x]] for x in range(n)] == list(range(n))


@given(st.permutations(list(range(16))))
def test_sixteen_ports(perm):
    out = apply_network(benes_network(perm), range(16))
    assert all(out[perm[x]] == x for x in range(16))


@pytest.mark.parametrize("n,stages", [(2, 1), (4, 3), (8, 5), (16, 7)])
def test_stage_count_and_disjoint_elements(n, stages):
    net = benes_network(list(reversed(range(n))))
    assert len(net) == stages
    for stage in net:
        lines = [x for a, b, _ in stage for x in (a, b)]
        assert sorted(lines) == list(range(n))


def test_identity_sets_nothing():
    assert not any(s for stage in benes_network(range(8)) for *_, s in stage)


@pytest.mark.parametrize("perm", [(0, 0), (0, 2), (1, 2, 0)])
def test_rejects_bad_input(perm):
    with pytest.raises(ValueError):
        benes_network(perm)


def test_check_permutation_length():
    with pytest.raises(ValueError):
        check_permutation((0, 1), 4)
