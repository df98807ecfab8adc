import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from finspace.enumeration import all_levels, as_poset, _is_connected  # noqa: E402
from finspace.poset import Poset  # noqa: E402

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def poset_from_lt(lt, prefix="v") -> Poset:
    return Poset([f"{prefix}{i}" for i in range(len(lt))], oracles.down_masks(lt))


@st.composite
def strict_orders(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    flags = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = [pr for pr, f in zip([(i, j) for i in range(n) for j in range(i + 1, n)], flags) if f]
    lt = oracles.transitive_closure(n, pairs)
    perm = draw(st.permutations(range(n)))
    out = np.zeros_like(lt)
    for i in range(n):
        for j in range(n):
            out[perm[i], perm[j]] = lt[i, j]
    return out


@st.composite
def posets(draw, min_n=1, max_n=7, connected=False):
    lt = draw(strict_orders(min_n, max_n))
    if connected:
        from hypothesis import assume
        assume(oracles.connected(lt))
    return poset_from_lt(lt)


@pytest.fixture(scope="session")
def levels7():
    return all_levels(7)


@pytest.fixture(scope="session")
def corpus7(levels7):
    """One poset per class with at most 7 points (connected or not)."""
    return [as_poset(q) for lv in levels7[1:] for q in lv]


@pytest.fixture(scope="session")
def connected7(levels7):
    return [as_poset(q) for lv in levels7[1:] for q in lv if _is_connected(q)]


@pytest.fixture(scope="session")
def brute_classes(request):
    """Class codes of all posets on n <= 6 points, from labeled brute force (cached across runs)."""
    key = "finspace/brute_classes_v1"
    data = request.config.cache.get(key, None)
    if data is None:
        data = {}
        for n in range(1, 7):
            orders = oracles.labeled_strict_orders(n)
            codes = oracles.class_codes(orders)
            conn = oracles.connected_many(orders)
            data[str(n)] = {"labeled": int(len(orders)),
                            "all": sorted(set(codes.tolist())),
                            "connected": sorted(set(codes[conn].tolist()))}
        request.config.cache.set(key, data)
    return {int(k): v for k, v in data.items()}


def class_code_of(p) -> int:
    lt = oracles.from_masks(p.down)
    return int(oracles.class_codes(lt[None, :, :])[0])
