import pytest
from hypothesis import HealthCheck, settings

from gradedwhittaker import make_character, virasoro, w22

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def vir():
    return virasoro(level=8)


@pytest.fixture(scope="session")
def w2():
    return w22(level=8)


@pytest.fixture(scope="session")
def vir_phi(vir):
    return make_character(vir, {(1,): 1, (2,): 1})


@pytest.fixture(scope="session")
def w2_phi(w2):
    return make_character(w2, {(1, 0): 1, (2, 0): 1, (1, 1): 1, (2, 1): 1})


# -- acceptance summary ------------------------------------------------------


@pytest.fixture
def acceptance(request):
    """Record ``(criterion, ok, detail)``; one PASS/FAIL line per criterion is printed at the end."""
    store = request.config.__dict__.setdefault("_acceptance", {})

    def record(n: int, ok: bool, detail: str):
        store.setdefault(n, []).append((ok, detail))
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} | {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = getattr(config, "_acceptance", None)
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        parts = store[n]
        ok = all(p for p, _ in parts)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} | " + "; ".join(d for _, d in parts))
