import pytest

from foliation_linfty import build_universal_q, load_fixture

# the fixtures every end-to-end property is checked on
FIXTURE_NAMES = [
    "sl2",
    "sl2_augmented",
    "vanishing_order",
    "vanishing_order:full",
    "koszul",
    "koszul:S=x^2+y^2+z^2,dim=3",
    "gln_adjoint",
    "dx",
]

_cache = {}


def built(name):
    """(spec, resolution, q) for a fixture, computed once per session."""
    if name not in _cache:
        spec = load_fixture(name)
        res = spec.resolve()
        _cache[name] = (spec, res, build_universal_q(res))
    return _cache[name]


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from acceptance_registry import RESULTS

    if not RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(RESULTS):
        title, ok = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title}")
