"""State files and report documents.

State file (UTF-8 JSON)::

    {"dims": [4, 4, 4],
     "amps": [{"idx": [0, 1, 2], "re": 0.5, "im": 0.0}, ...],
     "normalize": false}

``idx`` is 0-based; particle labels elsewhere are 1-based.  Unknown keys
are rejected.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from . import __version__
from .analysis import (
    AnalysisTolerances,
    Category,
    ClassLabel,
    EntanglementReport,
    PairwiseGraph,
    Partiality,
    PartialityFlag,
    Partition,
    UtterWitness,
)
from .state_model import EntanglementError, ParticleSet, PureState, build_pure_state

STATE_KEYS = {"dims", "amps", "normalize"}
AMP_KEYS = {"idx", "re", "im"}
REPORT_FORMAT = "entstruct.report/1"


class StateFileError(EntanglementError):
    """Malformed state file; the message names the offending field."""


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def parse_state(doc: Any) -> PureState:
    if not isinstance(doc, dict):
        raise StateFileError("top level: expected a JSON object")
    extra = set(doc) - STATE_KEYS
    if extra:
        raise StateFileError(f"unknown field(s): {', '.join(sorted(extra))}")
    for key in ("dims", "amps"):
        if key not in doc:
            raise StateFileError(f"{key}: missing")
    dims = doc["dims"]
    if not isinstance(dims, list) or not dims or not all(
            isinstance(d, int) and not isinstance(d, bool) for d in dims):
        raise StateFileError("dims: expected a nonempty array of integers")
    for n, d in enumerate(dims):
        if d < 2:
            raise StateFileError(f"dims[{n}]: dimension {d} < 2")
    normalize = doc.get("normalize", False)
    if not isinstance(normalize, bool):
        raise StateFileError("normalize: expected true or false")
    amps = doc["amps"]
    if not isinstance(amps, list):
        raise StateFileError("amps: expected an array")

    entries = []
    for n, entry in enumerate(amps):
        where = f"amps[{n}]"
        if not isinstance(entry, dict):
            raise StateFileError(f"{where}: expected an object")
        extra = set(entry) - AMP_KEYS
        if extra:
            raise StateFileError(f"{where}: unknown field(s): {', '.join(sorted(extra))}")
        if "idx" not in entry:
            raise StateFileError(f"{where}.idx: missing")
        idx = entry["idx"]
        if not isinstance(idx, list) or not all(
                isinstance(i, int) and not isinstance(i, bool) for i in idx):
            raise StateFileError(f"{where}.idx: expected an array of integers")
        if len(idx) != len(dims):
            raise StateFileError(f"{where}.idx: {idx} has {len(idx)} entries, dims has {len(dims)}")
        for axis, (i, d) in enumerate(zip(idx, dims)):
            if not 0 <= i < d:
                raise StateFileError(
                    f"{where}.idx: {idx} out of range on particle {axis + 1} (dim {d})")
        re, im = entry.get("re", 0.0), entry.get("im", 0.0)
        for key, val in (("re", re), ("im", im)):
            if not _is_number(val):
                raise StateFileError(f"{where}.{key}: expected a number")
        entries.append((idx, complex(re, im)))
    try:
        return build_pure_state(dims, entries, normalize=normalize)
    except EntanglementError as exc:
        raise StateFileError(f"amps: {exc}") from exc


def loads_state(text: str) -> PureState:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    return parse_state(doc)


def load_state(path) -> PureState:
    with open(path, encoding="utf-8") as fh:
        return loads_state(fh.read())


def state_to_dict(state: PureState, tol: float = 0.0) -> dict:
    return {
        "dims": list(state.dims),
        "amps": [{"idx": list(idx), "re": a.real, "im": a.imag}
                 for idx, a in state.entries(tol)],
    }


def dumps_state(state: PureState) -> str:
    return json.dumps(state_to_dict(state), indent=2) + "\n"


def state_digest(state: PureState) -> str:
    """SHA-256 of the canonical state serialization."""
    canon = json.dumps(state_to_dict(state), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def _key(labels) -> str:
    return ",".join(str(i) for i in labels)


def _unkey(text: str) -> tuple[int, ...]:
    return tuple(int(i) for i in text.split(","))


def report_to_dict(report: EntanglementReport) -> dict:
    w = report.witness
    return {
        "label": report.label.category.value,
        "k": report.label.k,
        "finest_partition": [list(b.indices) for b in report.finest.blocks],
        "finest_dims": [list(b.dims) for b in report.finest.blocks],
        "particles": list(report.pairwise.labels),
        "pairwise_edges": [list(e) for e in report.pairwise.edges],
        "partiality": {
            _key(sub): {"flag": f.kind.value, "rank": f.rank, "dim": f.full_dim}
            for sub, f in report.partiality.items()
        },
        "utter": report.utter,
        "witness": None if w is None else {
            "reason": w.reason,
            "subsystem": list(w.subsystem),
            "cut": [list(w.cut[0]), list(w.cut[1])],
        },
        "tolerances": {
            "schmidt_tol": report.tolerances.schmidt_tol,
            "rank_tol": report.tolerances.rank_tol,
            "product_tol": report.tolerances.product_tol,
        },
        "diagnostics": {
            name: {_key(sub): v for sub, v in values.items()}
            for name, values in report.diagnostics.items()
        },
    }


def report_from_dict(doc: dict) -> EntanglementReport:
    w = doc["witness"]
    return EntanglementReport(
        label=ClassLabel(Category(doc["label"]), doc["k"]),
        finest=Partition(tuple(ParticleSet(tuple(b), tuple(d))
                               for b, d in zip(doc["finest_partition"], doc["finest_dims"]))),
        pairwise=PairwiseGraph(tuple(doc["particles"]),
                               tuple(tuple(e) for e in doc["pairwise_edges"])),
        partiality={
            _unkey(k): PartialityFlag(Partiality(v["flag"]), v["rank"], v["dim"])
            for k, v in doc["partiality"].items()
        },
        utter=doc["utter"],
        witness=None if w is None else UtterWitness(
            w["reason"], tuple(w["subsystem"]), (tuple(w["cut"][0]), tuple(w["cut"][1]))),
        tolerances=AnalysisTolerances(**doc["tolerances"]),
        diagnostics={
            name: {_unkey(k): v for k, v in values.items()}
            for name, values in doc["diagnostics"].items()
        },
    )


def report_document(report: EntanglementReport, state: PureState) -> dict:
    return {
        "format": REPORT_FORMAT,
        "tool_version": __version__,
        "input_digest": state_digest(state),
        "report": report_to_dict(report),
    }


def dumps_report(report: EntanglementReport, state: PureState) -> str:
    return json.dumps(report_document(report, state), indent=2, sort_keys=True) + "\n"


def render_report(report: EntanglementReport) -> str:
    lines = [f"classification: {report.label}"]
    lines.append(f"finest partition: {report.finest}  (k={report.finest.k})")
    edges = ", ".join(f"{i}-{j}" for i, j in report.pairwise.edges) or "(none)"
    lines.append(f"entangled pairs: {edges}")
    if report.partiality:
        lines.append("partiality:")
        lines.append("  subsystem  flag          rank  dim")
        for sub, f in report.partiality.items():
            lines.append(f"  {'{' + _key(sub) + '}':<9}  {f.kind.value:<12}  {f.rank:>4}  {f.full_dim:>3}")
    if report.utter:
        lines.append("utterly entangled: yes")
    else:
        w = report.witness
        if w is None:
            lines.append("utterly entangled: no")
        else:
            left, right = (_key(c) for c in w.cut)
            lines.append(f"utterly entangled: no  (witness: subsystem {{{_key(w.subsystem)}}} "
                         f"factorizes across {{{left}}}|{{{right}}}; {w.reason})")
    t = report.tolerances
    lines.append(f"tolerances: schmidt={t.schmidt_tol:g} rank={t.rank_tol:g} product={t.product_tol:g}")
    return "\n".join(lines) + "\n"
