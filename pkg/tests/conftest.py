from collections import deque

import pytest
from hypothesis import settings

from dualcox.group import coxeter_group

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def bfs_reflection_lengths(group):
    """Word length in the generating set T, by breadth-first search from the identity."""
    dist = {group.identity_perm: 0}
    queue = deque([group.identity_perm])
    while queue:
        p = queue.popleft()
        for rp in group.reflection_perms:
            q = tuple(p[i] for i in rp)
            if q not in dist:
                dist[q] = dist[p] + 1
                queue.append(q)
    return dist


@pytest.fixture(scope="session")
def groups():
    return coxeter_group
