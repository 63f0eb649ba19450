from itertools import combinations

import pytest
from hypothesis import strategies as st

from mwlab.corpus import default_family_spec, expand
from mwlab.matroid import add_loops, direct_sum, dual, graphic, mask_of, uniform

# --- acceptance-criterion bookkeeping: one PASS/FAIL line per criterion ---

_CRITERIA: dict = {}
_NOTES: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (rep.when == "call" or rep.failed):
        return
    entry = _CRITERIA.setdefault(mark.args[0], {"title": mark.args[1], "tests": []})
    entry["tests"].append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        entry = _CRITERIA[num]
        ok = all(p for _, p in entry["tests"])
        tr.write_line(f"criterion {num} {'PASS' if ok else 'FAIL'}: {entry['title']}")
        for name, passed in entry["tests"]:
            if not passed:
                tr.write_line(f"    failed: {name}")
        for note in _NOTES.get(num, []):
            tr.write_line(f"    {note}")


@pytest.fixture
def note(request):
    """Attach a line of detail to the current test's criterion summary."""
    mark = request.node.get_closest_marker("criterion")

    def add(text):
        print(text)
        if mark is not None:
            _NOTES.setdefault(mark.args[0], []).append(text)

    return add


K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


@pytest.fixture
def k4():
    return graphic(4, K4_EDGES)


@pytest.fixture(scope="session")
def corpus():
    return list(expand(default_family_spec()))


# --- brute-force oracles, independent of the library's algorithms ---

def brute_independent(M, a):
    return any(a & b == a for b in M.bases)


def brute_rank(M, a):
    """Largest independent subset of a, by enumerating subsets of a."""
    elems = [e for e in range(M.n) if a >> e & 1]
    for k in range(len(elems), -1, -1):
        for c in combinations(elems, k):
            if brute_independent(M, mask_of(c)):
                return k
    raise AssertionError("empty set must be independent")


def brute_circuits(M):
    """Dependent sets all of whose one-element deletions are independent."""
    deps = [a for a in range(1 << M.n) if not brute_independent(M, a)]
    return {a for a in deps
            if all(brute_independent(M, a & ~(1 << e)) for e in range(M.n) if a >> e & 1)}


def brute_hyperplanes(M):
    out = set()
    for a in range(1 << M.n):
        ra = brute_rank(M, a)
        if ra != M.r - 1:
            continue
        if all(brute_rank(M, a | (1 << e)) > ra for e in range(M.n) if not a >> e & 1):
            out.add(a)
    return out


def brute_nbc(M, order):
    pos = {e: k for k, e in enumerate(order)}
    broken = []
    for c in brute_circuits(M):
        els = [e for e in range(M.n) if c >> e & 1]
        least = min(els, key=pos.__getitem__)
        broken.append(c & ~(1 << least))
    return sum(1 for a in range(1 << M.n) if not any(b & a == b for b in broken))


def brute_forest_count(vertices, edges, size):
    def acyclic(es):
        parent = list(range(vertices))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for u, v in es:
            a, b = find(u), find(v)
            if a == b:
                return False
            parent[a] = b
        return True

    return sum(1 for c in combinations(edges, size) if acyclic(c))


# --- hypothesis strategies ---

@st.composite
def small_graphs(draw, max_vertices=5, max_edges=7):
    v = draw(st.integers(1, max_vertices))
    edges = draw(st.lists(st.tuples(st.integers(0, v - 1), st.integers(0, v - 1)), max_size=max_edges))
    return v, edges


@st.composite
def matroids(draw, max_n=8):
    if max_n <= 0:
        return uniform(0, 0)
    kind = draw(st.sampled_from(["uniform", "graphic", "dual", "sum", "loops"]))
    if kind == "uniform":
        n = draw(st.integers(0, min(max_n, 7)))
        return uniform(draw(st.integers(0, n)), n)
    if kind == "graphic":
        v, edges = draw(small_graphs(max_edges=min(max_n, 6)))
        return graphic(v, edges)
    if kind == "dual":
        return dual(draw(matroids(max_n=max_n)))
    if kind == "sum":
        a = draw(matroids(max_n=max_n // 2))
        b = draw(matroids(max_n=max_n - a.n))
        return direct_sum(a, b)
    base = draw(matroids(max_n=max_n - 1))
    return add_loops(base, draw(st.integers(0, max_n - base.n)))
