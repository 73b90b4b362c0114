"""Multi-invariants of multipartite states on psi-graphs.

Thin wrapper over the compiled ``_psigraph`` module: structured results
cross the boundary as canonical JSON strings and are returned here as
plain dicts/lists, states as numpy complex arrays.
"""

from __future__ import annotations

import json as _json
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as _np

try:  # wheel layout: the extension lives inside the package
    from . import _psigraph as _core  # type: ignore[attr-defined]
except ImportError:  # in-tree build layout: extension on sys.path
    import _psigraph as _core  # type: ignore[no-redef]

InputError = _core.InputError

__all__ = [
    "InputError",
    "cayley",
    "group_order",
    "enumerate_graphs",
    "check",
    "cuts",
    "recognize",
    "certify",
    "verify_edge",
    "coset",
    "certify_vertex",
    "verify_vertex",
    "evaluate",
    "normalized_invariant",
    "monotone_value",
    "eval_report",
    "bell_state",
    "random_state",
    "locc_test",
    "run_cli",
]


def _dumps(graph: Dict[str, Any]) -> str:
    return _json.dumps(graph)


def cayley(diagram: str) -> Dict[str, Any]:
    """Cayley psi-graph of a finite Coxeter diagram, e.g. ``"A3"``."""
    return _json.loads(_core.cayley_json(diagram))


def group_order(diagram: str) -> int:
    return _core.group_order(diagram)


def enumerate_graphs(
    n: int, q: int, connected_only: bool = True, classify: bool = False
) -> Dict[str, Any]:
    return _json.loads(_core.enumerate_json(n, q, connected_only, classify))


def check(
    graph: Dict[str, Any],
    property: str,
    seed: int = 20240901,
    samples: int = 50,
) -> Tuple[Dict[str, Any], bool]:
    """Run one property check; returns (report, holds)."""
    text, ok = _core.check_json(_dumps(graph), property, seed, samples)
    return _json.loads(text), ok


def cuts(graph: Dict[str, Any]) -> List[Dict[str, Any]]:
    """All reflecting cuts as tau/upsilon/fixed_edges objects."""
    return _json.loads(_core.cuts_json(_dumps(graph)))


def recognize(graph: Dict[str, Any]) -> Optional[str]:
    """Coxeter diagram name when the graph is a Cayley graph, else None."""
    return _core.recognize(_dumps(graph))


def certify(
    diagram: str,
    method: str = "auto",
    tol_sum: float = 1e-8,
    tol_psd: float = 1e-8,
    max_sweeps: int = 50000,
) -> Dict[str, Any]:
    text, _ = _core.certify_json(diagram, method, tol_sum, tol_psd, max_sweeps)
    return _json.loads(text)


def verify_edge(
    graph: Dict[str, Any], cert: Dict[str, Any]
) -> Tuple[Dict[str, Any], bool]:
    text, ok = _core.verify_edge_json(_dumps(graph), _json.dumps(cert))
    return _json.loads(text), ok


def coset(diagram: str, subgroup: Sequence[int] = ()) -> Dict[str, Any]:
    return _json.loads(_core.coset_json(diagram, list(subgroup)))


def certify_vertex(
    diagram: str,
    subgroup: Sequence[int] = (),
    tol_sum: float = 1e-8,
    tol_psd: float = 1e-8,
    max_sweeps: int = 50000,
) -> Dict[str, Any]:
    text, _ = _core.certify_vertex_json(
        diagram, list(subgroup), tol_sum, tol_psd, max_sweeps
    )
    return _json.loads(text)


def verify_vertex(
    diagram: str, subgroup: Sequence[int], cert: Dict[str, Any]
) -> Tuple[Dict[str, Any], bool]:
    text, ok = _core.verify_vertex_json(diagram, list(subgroup), _json.dumps(cert))
    return _json.loads(text), ok


def _amps(state: _np.ndarray) -> _np.ndarray:
    return _np.ascontiguousarray(state, dtype=_np.complex128).ravel()


def evaluate(graph: Dict[str, Any], dims: Sequence[int], state) -> complex:
    """Z(psi) by tensor contraction; ``state`` is row-major over ``dims``."""
    return _core.evaluate(_dumps(graph), list(dims), _amps(_np.asarray(state)))


def normalized_invariant(
    graph: Dict[str, Any], dims: Sequence[int], state
) -> complex:
    return _core.normalized_invariant(
        _dumps(graph), list(dims), _amps(_np.asarray(state))
    )


def monotone_value(graph: Dict[str, Any], dims: Sequence[int], state) -> float:
    return _core.monotone_value(_dumps(graph), list(dims), _amps(_np.asarray(state)))


def eval_report(graph: Dict[str, Any], dims: Sequence[int], state) -> Dict[str, Any]:
    return _json.loads(
        _core.eval_json(_dumps(graph), list(dims), _amps(_np.asarray(state)))
    )


def bell_state(d: int) -> _np.ndarray:
    """(1/sqrt d) sum_i |ii> as a (d, d) array."""
    return _np.asarray(_core.bell_amplitudes(d)).reshape(d, d)


def random_state(dims: Sequence[int], seed: int) -> _np.ndarray:
    """Normalized complex-Gaussian state shaped ``dims``."""
    return _np.asarray(_core.random_amplitudes(list(dims), seed)).reshape(tuple(dims))


def locc_test(
    graph: Dict[str, Any],
    dims: Sequence[int],
    trials: int,
    seed: int,
    kraus_min: int = 2,
    kraus_max: int = 4,
    threads: int = 1,
) -> Dict[str, Any]:
    text, _ = _core.locc_json(
        _dumps(graph), list(dims), trials, seed, kraus_min, kraus_max, threads
    )
    return _json.loads(text)


def run_cli(args: Sequence[str]) -> int:
    """Run one CLI subcommand in-process; returns the exit code."""
    return _core.run_cli(list(args))
