"""The eleven acceptance criteria, one test each, on a fixed-seed profile.

Set ``LEVELRANK_PROFILE`` to ``smoke``, ``desk`` (default) or ``extended``.
"""

import os

import pytest

from levelrank.acceptance import CRITERIA, _corpus, get_profile

PROFILE = get_profile(os.environ.get("LEVELRANK_PROFILE", "desk"))


@pytest.fixture(scope="module")
def corpus():
    return _corpus(PROFILE)


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, corpus, capsys):
    fn = CRITERIA[number]
    result = fn(PROFILE, corpus) if number in (7, 8, 9) else fn(PROFILE)
    with capsys.disabled():
        print(f"\n[profile {PROFILE.name} seed {PROFILE.seed}] {result.line()}")
    assert result.passed, result.to_json()["details"]
