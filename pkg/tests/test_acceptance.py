"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from unramtori import verify

CRITERIA = [
    (1, verify.criterion_1),
    (2, verify.criterion_2),
    (3, verify.criterion_3),
    (4, verify.criterion_4),
    (5, verify.criterion_5),
    (6, verify.criterion_6),
    (7, lambda: verify.criterion_7(seed=0)),
    (8, verify.criterion_8),
    (9, verify.criterion_9),
]


@pytest.mark.parametrize("number,check", CRITERIA, ids=[f"criterion_{n}" for n, _ in CRITERIA])
def test_criterion(number, check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.number == number
    assert result.passed, result.detail
