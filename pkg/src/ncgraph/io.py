"""JSON artifact encoding shared by the CLI and tests.

Complex matrices serialize as nested row-major arrays of [re, im] pairs;
every artifact carries a "kind" tag used for polymorphic loading.  Artifact
files keep full float precision so round-trips are loss-free; pretty-printed
numbers elsewhere are truncated to 9 significant digits.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InputFormatError
from . import channels as chmod
from . import graphs as gmod
from . import lmi
from . import spaces as spmod
from .independence import BoundsReport, IndependentSetCandidate
from .theta import ThetaResult


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def matrix_from_json(obj) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed matrix payload: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise InputFormatError("matrix payload must be rows of [re, im] pairs")
    return arr[:, :, 0] + 1j * arr[:, :, 1]


def vector_to_json(v) -> list:
    v = np.asarray(v, dtype=np.complex128)
    return [[float(x.real), float(x.imag)] for x in v]


def vector_from_json(obj) -> np.ndarray:
    arr = np.asarray(obj, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputFormatError("vector payload must be a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def graph_to_json(g: gmod.Graph) -> dict:
    return {"kind": "graph", "n": g.n, "edges": [[i, j] for i, j in g.edges]}


def space_to_json(s: spmod.OperatorSpace) -> dict:
    return {
        "kind": "operator_space",
        "dim": s.ambient_dim,
        "basis": [matrix_to_json(f) for f in s.basis],
    }


def channel_to_json(ch: chmod.QuantumChannel) -> dict:
    return {
        "kind": "channel",
        "dim_in": ch.dim_in,
        "dim_out": ch.dim_out,
        "kraus": [matrix_to_json(e) for e in ch.kraus],
    }


def classical_channel_to_json(nc: chmod.ClassicalChannel) -> dict:
    return {
        "kind": "classical_channel",
        "n_in": nc.n_in,
        "n_out": nc.n_out,
        "probs": [[float(p) for p in row] for row in nc.probs],
    }


def independent_set_to_json(cand: IndependentSetCandidate) -> dict:
    return {
        "kind": "independent_set",
        "vectors": [vector_to_json(v) for v in cand.vectors],
        "residual": float(cand.residual),
    }


def theta_result_to_json(r: ThetaResult) -> dict:
    return {
        "kind": "theta_result",
        "value": float(r.value),
        "primal": None if r.primal_value is None else float(r.primal_value),
        "dual": None if r.dual_value is None else float(r.dual_value),
        "gap": float(r.gap),
        "witness": {k: matrix_to_json(v) for k, v in r.witness.items()},
        "solver_stats": r.solver_stats,
    }


def bounds_report_to_json(rep: BoundsReport) -> dict:
    out = {
        "kind": "bounds_report",
        "alpha_lower": rep.alpha_lower,
        "alpha_upper": rep.alpha_upper,
        "theta_tilde_upper": float(rep.theta_tilde_upper),
        "pair_dim_upper": rep.pair_dim_upper,
        "alpha_hat_upper": rep.alpha_hat_upper,
        "ambient_upper": rep.ambient_upper,
        "notes": rep.notes,
    }
    if rep.witness is not None:
        out["witness"] = independent_set_to_json(rep.witness)
    return out


def lmi_to_json(p: lmi.LmiProblem) -> dict:
    """Debug dump for cross-solver verification; factored blocks densify."""
    blocks = []
    for b in p.blocks:
        if isinstance(b, lmi.KronBlock):
            fs = [
                b.assemble(e, include_f0=False)
                for e in np.eye(p.num_vars)
            ]
        else:
            fs = list(b.fs)
        blocks.append({"F0": matrix_to_json(b.f0), "Fi": [matrix_to_json(f) for f in fs]})
    return {
        "kind": "lmi",
        "c": [float(x) for x in p.objective],
        "sense": p.sense,
        "blocks": blocks,
    }


def load_obj(obj: dict):
    """Dispatch a parsed JSON artifact to its domain object."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputFormatError("artifact must be a JSON object with a 'kind' tag")
    kind = obj["kind"]
    try:
        if kind == "graph":
            return gmod.from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])
        if kind == "operator_space":
            basis = [matrix_from_json(m) for m in obj["basis"]]
            d = int(obj["dim"])
            if any(f.shape != (d, d) for f in basis):
                raise InputFormatError("basis matrices do not match the declared dimension")
            return spmod.span(basis)
        if kind == "channel":
            return chmod.make_channel([matrix_from_json(m) for m in obj["kraus"]])
        if kind == "classical_channel":
            probs = np.asarray(obj["probs"], dtype=np.float64)
            return chmod.ClassicalChannel(int(obj["n_in"]), int(obj["n_out"]), probs)
        if kind == "independent_set":
            vecs = np.array([vector_from_json(v) for v in obj["vectors"]])
            return IndependentSetCandidate(vecs, float(obj.get("residual", 0.0)))
    except InputFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed {kind} artifact: {exc}") from None
    raise InputFormatError(f"unknown artifact kind {kind!r}")


def load_file(path: str):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from None
    return load_obj(obj)


def dump_file(path: str, obj: dict) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=1)
        fh.write("\n")


def to_artifact(value) -> dict:
    if isinstance(value, gmod.Graph):
        return graph_to_json(value)
    if isinstance(value, spmod.OperatorSpace):
        return space_to_json(value)
    if isinstance(value, chmod.QuantumChannel):
        return channel_to_json(value)
    if isinstance(value, chmod.ClassicalChannel):
        return classical_channel_to_json(value)
    if isinstance(value, ThetaResult):
        return theta_result_to_json(value)
    if isinstance(value, BoundsReport):
        return bounds_report_to_json(value)
    if isinstance(value, IndependentSetCandidate):
        return independent_set_to_json(value)
    raise InputFormatError(f"no JSON encoding for {type(value).__name__}")
