from __future__ import annotations

import functools

import pytest

from coxspec.diagram import build_catalog
from coxspec.exactmath import IntPolynomial
from coxspec.mckay import build_group, character_table


@functools.lru_cache(maxsize=None)
def graph(name: str):
    return build_catalog(name)


@functools.lru_cache(maxsize=None)
def group(name: str):
    return build_group(name)


@functools.lru_cache(maxsize=None)
def table(name: str):
    return character_table(group(name))


def poly(*coeffs_descending: int) -> IntPolynomial:
    """Polynomial from coefficients listed from the top degree down."""
    return IntPolynomial(list(reversed(coeffs_descending)))


LAM = IntPolynomial.x()


def chi_path(n: int) -> IntPolynomial:
    """λ^n + … + λ + 1."""
    return IntPolynomial([1] * (n + 1))


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line for an acceptance criterion, then assert."""

    def check(number: int, title: str, problems: list[str]) -> None:
        status = "PASS" if not problems else "FAIL"
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {status}: {title}")
            for p in problems[:10]:
                print(f"    - {p}")
        assert not problems, "; ".join(problems[:10])

    return check
