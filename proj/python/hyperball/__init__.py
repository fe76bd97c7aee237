"""Exact l-infinity geometry, finite metric checks and barycenters.

Rationals are accepted as ``Fraction``, ``int`` or ``"p/q"`` strings and
returned as ``Fraction``. Reports come back as plain dicts.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import _core

__version__ = _core.__version__

Rational = Union[Fraction, int, str]


class HyperballError(Exception):
    """A library failure. ``code`` is the error name, ``indices`` its location."""

    def __init__(self, code: str, detail: str, indices: Sequence[int] = ()):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail
        self.indices = list(indices)


def _text(value: Rational) -> str:
    if isinstance(value, str):
        return value
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def _frac(text: str) -> Fraction:
    return Fraction(text)


def _vec(values: Iterable[Rational]) -> list[str]:
    return [_text(v) for v in values]


def _mat(rows: Iterable[Iterable[Rational]]) -> list[list[str]]:
    return [_vec(r) for r in rows]


def _call(fn, *args):
    try:
        return fn(*args)
    except _core.NativeError as e:
        code, detail, indices = e.args if len(e.args) == 3 else ("Error", str(e), [])
        raise HyperballError(code, detail, indices) from None


def _json(fn, *args) -> dict:
    return json.loads(_call(fn, *args))


def run_cli(args: Sequence[str]) -> tuple[int, str, str]:
    """Runs the command-line front end in-process: (exit code, stdout, stderr)."""
    return _core.run_cli(list(args))


def is_modular(dist: Sequence[Sequence[Rational]]) -> dict:
    return _json(_core.is_modular, _mat(dist))


def graph_is_modular(n: int, edges: Sequence[tuple[int, int]], weights: Sequence[Rational] = ()) -> dict:
    return _json(_core.graph_is_modular, n, [tuple(e) for e in edges], _vec(weights))


def graph_distances(n: int, edges: Sequence[tuple[int, int]], weights: Sequence[Rational] = ()) -> list[list[Fraction]]:
    rows = _call(_core.graph_distances, n, [tuple(e) for e in edges], _vec(weights))
    return [[_frac(x) for x in r] for r in rows]


def median_set(dist: Sequence[Sequence[Rational]], x: int, y: int, z: int) -> list[int]:
    return _call(_core.median_set, _mat(dist), x, y, z)


def helly_counterexample(n: int) -> dict:
    return json.loads(_call(_core.helly_counterexample, n))


def verify_helly(instance: dict) -> dict:
    return _json(_core.verify_helly, json.dumps(instance))


def normalize_instance(instance: Union[dict, str]) -> str:
    """Parses and re-serializes an instance document in canonical form."""
    text = instance if isinstance(instance, str) else json.dumps(instance)
    return _call(_core.normalize_instance, text)


def ip_threshold(k: int) -> int:
    return _call(_core.ip_threshold, k)


def ip_constants(n: int, k: int, eps: Rational = 0) -> dict:
    params = _json(_core.ip_constants, n, k, _text(eps))
    for key in ("eps", "c"):
        params[key] = _frac(params[key])
    return params


def ip_default_eps(n: int, k: int) -> Fraction:
    return _frac(_call(_core.ip_default_eps, n, k))


def ip_lift(balls: Sequence[tuple[Sequence[Rational], Rational]], k: int, rounds: int = 30) -> dict:
    spec = [(_vec(c), _text(r)) for c, r in balls]
    out = _json(_core.ip_lift, spec, k, rounds)
    out["point"] = [_frac(x) for x in out["point"]]
    for key in ("radius", "final_violation"):
        out[key] = _frac(out[key])
    return out


def barycenter(
    points: Sequence[Sequence[Rational]],
    method: str = "iterate",
    tau: Rational = Fraction(1, 2**30),
    max_rounds: int = 200,
    backend: str = "dyadic",
) -> list[Fraction]:
    raw = _call(_core.barycenter, _mat(points), method, _text(tau), max_rounds, backend)
    return [_frac(x) for x in raw]


def linf_dist(p: Sequence[Rational], q: Sequence[Rational]) -> Fraction:
    return _frac(_call(_core.linf_dist, _vec(p), _vec(q)))


__all__ = [
    "HyperballError",
    "barycenter",
    "graph_distances",
    "graph_is_modular",
    "helly_counterexample",
    "ip_constants",
    "ip_default_eps",
    "ip_lift",
    "ip_threshold",
    "is_modular",
    "linf_dist",
    "median_set",
    "normalize_instance",
    "run_cli",
    "verify_helly",
]
