"""Acceptance criteria 1-9 at their full sample sizes and tolerances.

Each criterion prints one ``PASS``/``FAIL`` line (visible with ``pytest -s``
and in the ``-v`` captured output on failure). Deselect with ``-m "not slow"``.
"""

import pytest

from polycenters import paperchecks

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("number", sorted(paperchecks.CHECKS), ids=lambda n: f"criterion{n}-{paperchecks.CHECKS[n].key}")
def test_criterion(number, capsys):
    res = paperchecks.CHECKS[number]()
    with capsys.disabled():
        print(f"\n{res.line()}")
        for f in res.failures[:10]:
            print(f"    {f}")
    assert res.passed, res.failures[:10]
