"""Exact real points on {x : rank A(x) <= r} for linear matrices A(x) = A0 + x1 A1 + ... + xn An."""

import json
from fractions import Fraction

from . import _core
from ._core import BudgetExceeded, GenericityError, GroebnerBudgetExceeded, ProblemError

__all__ = [
    "BudgetExceeded",
    "GenericityError",
    "GroebnerBudgetExceeded",
    "ProblemError",
    "bound",
    "check",
    "delta",
    "generate",
    "isolate_roots",
    "load",
    "solve",
]


def _text(value):
    return str(Fraction(value)) if not isinstance(value, str) else value


def _problem(problem):
    return problem if isinstance(problem, str) else json.dumps(problem)


def _values(values):
    return {k: _text(v) for k, v in (values or {}).items()}


def load(path):
    """Read a problem file into a dict."""
    with open(path) as f:
        return json.load(f)


def solve(problem, rank=None, *, seed=0, check="standard", isolate=False, width=Fraction(1, 2**60),
          coeff_range=99, gb_budget=2_000_000, threads=1, values=None):
    """Solve a problem given as a dict or JSON text. Returns the report as a dict."""
    out = _core.solve(_problem(problem), rank, seed, check, isolate, _text(width), coeff_range, gb_budget,
                      threads, _values(values))
    return json.loads(out)


def check(problem, rank=None, *, seed=0, level="standard", values=None):
    """Genericity report for a problem."""
    return json.loads(_core.check(_problem(problem), rank, seed, level, _values(values)))


def bound(m, n, r):
    """Degree bounds; integer fields are returned as Python ints."""
    out = json.loads(_core.bound(m, n, r))
    return {k: (int(v) if isinstance(v, str) else [int(x) for x in v] if isinstance(v, list) else v)
            for k, v in out.items()}


def delta(m, n, r):
    return int(_core.delta(m, n, r))


def isolate_roots(coeffs, width=Fraction(1, 1024)):
    """Isolating intervals for the real roots of a squarefree polynomial, coefficients low degree first."""
    out = json.loads(_core.isolate_roots([_text(c) for c in coeffs], _text(width)))
    return [(Fraction(lo), Fraction(hi)) for lo, hi in out]


def generate(m, n, r, *, seed=0, coeff_range=99):
    """Random dense problem as a dict."""
    return json.loads(_core.generate(m, n, r, seed, coeff_range))
