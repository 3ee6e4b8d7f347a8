"""YAML ensemble documents.

Layout (JSON is accepted too, being a YAML subset)::

    p: 2
    q: 1
    field: exact            # or float
    tol: 1e-10              # float comparisons
    enum_cap: 10000000
    measure:
      nodes: ["-1", "0", "1"]
      masses: ["1/3", "1/3", "1/3"]
      # or: preset: {family: gauss-hermite, N: 24}
    weights:
      w1: [["1"], ["0", "1"]]       # ascending coefficients
      w2: [["1"]]
      # or: matrix: [[w, w], [w, w]]
    nvec: [1, 1]
    mvec: [2]
    chain:                  # optional overrides, keyed by signed step
      1: {nvec: [2, 2], mvec: [4]}

A weight is a coefficient list or a mapping with keys ``coeffs``,
``zeros``, ``poles`` and ``rate`` (the last only for ``field: float``).
"""

from dataclasses import dataclass
from fractions import Fraction

import yaml

from .config import DEFAULT_ENUM_CAP, DEFAULT_TOL
from .errors import MopError, SpecParseError
from .linalg import EXACT, ComplexFloat
from .measures import DiscreteMeasure, Polynomial, Weight, WeightMatrix, WeightSystem, quadrature_preset
from .mop import EnsembleSpec, MultiIndexPair, validate_chain

_TOP_KEYS = {"p", "q", "field", "tol", "enum_cap", "measure", "weights", "nvec", "mvec", "chain"}


def _marks(node, path=()):
    """Map every key path of a composed YAML tree to its start mark."""
    out = {path: node.start_mark}
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            key = k.value
            try:
                key = int(key)
            except ValueError:
                pass
            out[path + (key,)] = k.start_mark
            out.update({p: m for p, m in _marks(v, path + (key,)).items() if p != path + (key,)})
    elif isinstance(node, yaml.SequenceNode):
        for i, v in enumerate(node.value):
            out.update(_marks(v, path + (i,)))
    return out


class _Ctx:
    def __init__(self, marks):
        self.marks = marks

    def fail(self, msg, path=()):
        path = tuple(path)
        while path and path not in self.marks:
            path = path[:-1]
        mark = self.marks.get(path)
        if mark is None:
            raise SpecParseError(msg)
        raise SpecParseError(msg, mark.line + 1, mark.column + 1)


def _rational(ctx, v, path):
    if isinstance(v, bool) or not isinstance(v, (int, str, float)):
        ctx.fail(f"expected a rational string, got {v!r}", path)
    if isinstance(v, float):
        ctx.fail(f"rationals must be written as 'a/b' or integers, got float {v!r}", path)
    try:
        return Fraction(str(v).strip())
    except (ValueError, ZeroDivisionError):
        ctx.fail(f"malformed rational {v!r}", path)


def _rat_list(ctx, v, path):
    if not isinstance(v, list):
        ctx.fail(f"expected a list, got {v!r}", path)
    return [_rational(ctx, x, path + (i,)) for i, x in enumerate(v)]


def _int_list(ctx, v, path):
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        ctx.fail(f"expected a list of integers, got {v!r}", path)
    return [int(x) for x in v]


def _weight(ctx, v, path, field_name):
    if isinstance(v, list):
        return {"coeffs": [str(c) for c in _rat_list(ctx, v, path)]}
    if not isinstance(v, dict):
        ctx.fail(f"weight must be a coefficient list or mapping, got {v!r}", path)
    unknown = set(v) - {"coeffs", "zeros", "poles", "rate"}
    if unknown:
        ctx.fail(f"unknown weight keys {sorted(unknown)}", path)
    out = {"coeffs": [str(c) for c in _rat_list(ctx, v.get("coeffs", ["1"]), path + ("coeffs",))]}
    for key in ("zeros", "poles"):
        if key in v:
            out[key] = [str(c) for c in _rat_list(ctx, v[key], path + (key,))]
    if "rate" in v:
        if field_name != "float":
            ctx.fail("exponential weights need field: float", path + ("rate",))
        out["rate"] = str(_rational(ctx, v["rate"], path + ("rate",)))
    return out


def _weight_obj(d):
    return Weight(Polynomial.of([Fraction(c) for c in d["coeffs"]]),
                  tuple(Fraction(a) for a in d.get("zeros", ())),
                  tuple(Fraction(b) for b in d.get("poles", ())),
                  Fraction(d["rate"]) if "rate" in d else 0)


@dataclass(frozen=True)
class SpecDocument:
    """Normalized document contents; ``data`` uses canonical rational strings."""

    data: dict

    def __eq__(self, other):
        return isinstance(other, SpecDocument) and self.data == other.data

    @property
    def field(self):
        return EXACT if self.data["field"] == "exact" else ComplexFloat(self.data["tol"])

    @property
    def tol(self):
        return self.data["tol"]

    @property
    def enum_cap(self):
        return self.data["enum_cap"]

    def measure(self):
        m = self.data["measure"]
        if "preset" in m:
            pr = m["preset"]
            params = {k: Fraction(v) for k, v in pr.get("params", {}).items()}
            return quadrature_preset(pr["family"], pr["N"], params, self.tol)
        nodes = [Fraction(x) for x in m["nodes"]]
        masses = [Fraction(x) for x in m["masses"]]
        meas = DiscreteMeasure(tuple(nodes), tuple(masses))
        return meas if self.data["field"] == "exact" else meas.embed(self.field)

    def weights(self):
        w = self.data["weights"]
        if "matrix" in w:
            return WeightMatrix(tuple(tuple(_weight_obj(e) for e in row) for row in w["matrix"]))
        return WeightSystem(tuple(_weight_obj(e) for e in w["w1"]),
                            tuple(_weight_obj(e) for e in w["w2"]))

    def pair(self):
        return MultiIndexPair(tuple(self.data["nvec"]), tuple(self.data["mvec"]))

    def chain(self):
        raw = self.data.get("chain") or {}
        return {int(k): MultiIndexPair(tuple(v["nvec"]), tuple(v["mvec"])) for k, v in raw.items()}

    def to_spec(self):
        return EnsembleSpec(self.weights(), self.measure(), self.pair())

    def dump(self):
        return yaml.safe_dump(self.data, sort_keys=True, default_flow_style=None)


def parse(text):
    """Parse and validate a document; errors carry line and column."""
    try:
        root = yaml.compose(text)
        raw = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise SpecParseError(f"YAML syntax error: {exc.problem}",
                             mark.line + 1 if mark else None, mark.column + 1 if mark else None) from exc
    ctx = _Ctx(_marks(root) if root is not None else {})
    if not isinstance(raw, dict):
        ctx.fail("document must be a mapping")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        ctx.fail(f"unknown keys {sorted(unknown)}", (sorted(unknown)[0],))
    for key in ("p", "q", "measure", "weights", "nvec", "mvec"):
        if key not in raw:
            ctx.fail(f"missing key {key!r}")
    data = {}
    field_name = raw.get("field", "exact")
    if field_name not in ("exact", "float"):
        ctx.fail(f"field must be 'exact' or 'float', got {field_name!r}", ("field",))
    data["field"] = field_name
    try:
        data["tol"] = float(raw.get("tol", DEFAULT_TOL))
        data["enum_cap"] = int(raw.get("enum_cap", DEFAULT_ENUM_CAP))
    except (TypeError, ValueError):
        ctx.fail("tol must be a number and enum_cap an integer", ("tol",))
    for key in ("p", "q"):
        if not isinstance(raw[key], int) or raw[key] < 1:
            ctx.fail(f"{key} must be a positive integer", (key,))
        data[key] = raw[key]
    data["nvec"] = _int_list(ctx, raw["nvec"], ("nvec",))
    data["mvec"] = _int_list(ctx, raw["mvec"], ("mvec",))
    if len(data["nvec"]) != data["p"] or len(data["mvec"]) != data["q"]:
        ctx.fail("nvec must have p entries and mvec q entries", ("nvec",))
    if sum(data["nvec"]) != sum(data["mvec"]) or sum(data["nvec"]) < 1:
        ctx.fail("need |nvec| = |mvec| >= 1", ("mvec",))

    m = raw["measure"]
    if not isinstance(m, dict):
        ctx.fail("measure must be a mapping", ("measure",))
    if "preset" in m:
        pr = m["preset"]
        if not isinstance(pr, dict) or "family" not in pr or not isinstance(pr.get("N"), int):
            ctx.fail("preset needs 'family' and integer 'N'", ("measure", "preset"))
        if field_name != "float":
            ctx.fail("quadrature presets need field: float", ("measure", "preset"))
        params = {str(k): str(_rational(ctx, v, ("measure", "preset", "params", k)))
                  for k, v in (pr.get("params") or {}).items()}
        data["measure"] = {"preset": {"family": str(pr["family"]), "N": pr["N"], "params": params}}
    else:
        if "nodes" not in m or "masses" not in m:
            ctx.fail("measure needs 'nodes' and 'masses' or a 'preset'", ("measure",))
        nodes = _rat_list(ctx, m["nodes"], ("measure", "nodes"))
        masses = _rat_list(ctx, m["masses"], ("measure", "masses"))
        if len(nodes) != len(masses):
            ctx.fail("nodes and masses differ in length", ("measure", "masses"))
        seen = {}
        for i, x in enumerate(nodes):
            if x in seen:
                ctx.fail(f"node {x} is repeated (entries {seen[x]} and {i})", ("measure", "nodes", i))
            seen[x] = i
        data["measure"] = {"nodes": [str(x) for x in nodes], "masses": [str(x) for x in masses]}

    w = raw["weights"]
    if not isinstance(w, dict):
        ctx.fail("weights must be a mapping", ("weights",))
    if "matrix" in w:
        mat = w["matrix"]
        if not isinstance(mat, list) or len(mat) != data["p"] or any(
                not isinstance(r, list) or len(r) != data["q"] for r in mat):
            ctx.fail("weights.matrix must be a p x q grid", ("weights", "matrix"))
        data["weights"] = {"matrix": [[_weight(ctx, e, ("weights", "matrix", i, j), field_name)
                                       for j, e in enumerate(r)] for i, r in enumerate(mat)]}
    else:
        for key, n in (("w1", data["p"]), ("w2", data["q"])):
            if not isinstance(w.get(key), list) or len(w[key]) != n:
                ctx.fail(f"weights.{key} must list {n} weights", ("weights", key))
        data["weights"] = {key: [_weight(ctx, e, ("weights", key, i), field_name)
                                 for i, e in enumerate(w[key])] for key in ("w1", "w2")}

    if raw.get("chain"):
        ch = raw["chain"]
        if not isinstance(ch, dict):
            ctx.fail("chain must map steps to {nvec, mvec}", ("chain",))
        data["chain"] = {}
        for k, v in ch.items():
            if not isinstance(k, int) or k == 0 or not isinstance(v, dict):
                ctx.fail("chain keys are nonzero integers mapping to {nvec, mvec}", ("chain", k))
            data["chain"][k] = {"nvec": _int_list(ctx, v.get("nvec"), ("chain", k, "nvec")),
                                "mvec": _int_list(ctx, v.get("mvec"), ("chain", k, "mvec"))}

    doc = SpecDocument(data)
    try:
        doc.to_spec()
        if doc.chain():
            validate_chain(doc.chain(), doc.pair())
    except MopError as exc:
        ctx.fail(f"invalid ensemble: {exc}")
    except TypeError as exc:
        ctx.fail(f"invalid ensemble: {exc}")
    return doc


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
