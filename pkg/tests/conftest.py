import pytest
from hypothesis import settings, strategies as st

from syncauto import TAU, Alphabet, FiniteAutomaton, System, build_product
from syncauto.corpus import corpus_documents, money_params, stage

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

LETTERS = ("a", "b", "c")


@st.composite
def automata(draw, max_states=4, letters=LETTERS, name="A", min_states=1):
    n = draw(st.integers(min_states, max_states))
    states = [f"q{i}" for i in range(n)]
    labels = list(letters) + [TAU]
    trans = draw(st.sets(st.tuples(st.sampled_from(states), st.sampled_from(labels), st.sampled_from(states)), max_size=8))
    initials = draw(st.sets(st.sampled_from(states), min_size=1, max_size=2))
    return FiniteAutomaton(name, Alphabet(letters), states, trans, initials)


@st.composite
def systems(draw, max_members=3, max_states=3):
    k = draw(st.integers(1, max_members))
    return System([draw(automata(max_states=max_states, name=f"A{i}")) for i in range(1, k + 1)], Alphabet(LETTERS))


@pytest.fixture(scope="session")
def money():
    return money_params()


@pytest.fixture(scope="session")
def stages(money):
    return {k: stage(k, money) for k in range(1, 8)}


@pytest.fixture(scope="session")
def corpus_automata():
    """Every plain or unfolded corpus member, plus products of at most 8 states."""
    out = {}
    for key, doc in corpus_documents().items():
        for name in doc.automata:
            out[f"{key}/{name}"] = doc.plain(name)
        product = build_product(doc.build_system())
        if len(product.states) <= 8:
            out[f"{key}/product"] = product
    return out


# ---------------------------------------------------------------- acceptance summary

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    ok = rep.passed if rep.when == "call" else not rep.failed
    prev = _CRITERIA.get(number, (title, True))
    _CRITERIA[number] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
