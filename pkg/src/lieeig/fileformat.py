"""Problem files and reports.

Both use YAML: keys on their own lines, matrices and vectors as nested
arrays of scalar strings.  A problem file looks like::

    tower: {kind: rational-quadratic, m: -1}
    generators:
      - [["0", "-1"], ["1", "0"]]
    candidates:            # optional, each a list of spanning vectors
      - [["1", "0"]]
    decomposition: ...     # optional, same shape as candidates
    poly: ["1", "0", "1"]  # lemma-c: ascending coefficients
    n: 3                   # monoid
    options: {seed: 20240917, degree_bound: 10}
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field

import yaml

from .errors import LieEigError, ParseError, ValidationError
from .fields import FieldTower, make_tower
from .linalg import Matrix, Subspace
from .poly import DEFAULT_DEGREE_BOUND, DEFAULT_SEED, Poly

KNOWN_KEYS = {"tower", "generators", "candidates", "decomposition", "poly", "n", "options"}


@dataclass
class ProblemFile:
    tower: FieldTower | None
    generators: list = dc_field(default_factory=list)
    candidates: list | None = None
    decomposition: list | None = None
    poly: Poly | None = None
    n: int | None = None
    options: dict = dc_field(default_factory=dict)

    @property
    def seed(self) -> int:
        return int(self.options.get("seed", DEFAULT_SEED))

    @property
    def degree_bound(self) -> int:
        return int(self.options.get("degree_bound", DEFAULT_DEGREE_BOUND))


def _load_yaml(text, what: str):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"{what} is not UTF-8: {exc}") from None
    try:
        return yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        loc = f"line {mark.line + 1}, column {mark.column + 1}" if mark else None
        raise ParseError(str(exc.problem or exc), loc) from None
    except yaml.YAMLError as exc:
        raise ParseError(str(exc)) from None


def parse_tower(obj, location: str = "tower") -> FieldTower:
    if not isinstance(obj, dict):
        raise ValidationError("tower must be a mapping with a 'kind' key", location)
    try:
        return make_tower(obj)
    except LieEigError as exc:
        raise ValidationError(str(exc), location) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad tower spec: {exc}", location) from exc


def parse_scalar(F, obj, location: str):
    try:
        return F.from_data(obj)
    except ParseError as exc:
        raise ParseError(str(exc), location) from None


def parse_matrix(F, obj, location: str, n: int | None = None) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ValidationError("matrix must be a nonempty list of rows", location)
    rows = [[parse_scalar(F, x, f"{location}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)]
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValidationError(f"matrix is not square ({size} rows, row lengths {[len(r) for r in rows]})", location)
    if n is not None and size != n:
        raise ValidationError(f"matrix is {size}x{size}, expected {n}x{n}", location)
    return Matrix(F, rows)


def parse_subspace(F, obj, n: int, location: str) -> Subspace:
    if not isinstance(obj, list) or not all(isinstance(v, list) for v in obj):
        raise ValidationError("subspace must be a list of vectors", location)
    vecs = []
    for i, v in enumerate(obj):
        if len(v) != n:
            raise ValidationError(f"vector has length {len(v)}, expected {n}", f"{location}[{i}]")
        vecs.append([parse_scalar(F, x, f"{location}[{i}][{j}]") for j, x in enumerate(v)])
    return Subspace.span(F, n, vecs)


def parse_problem(data) -> ProblemFile:
    """Parse and validate a problem file (bytes or str)."""
    obj = _load_yaml(data, "problem file")
    if obj is None:
        obj = {}
    if not isinstance(obj, dict):
        raise ValidationError("problem file must be a mapping")
    unknown = sorted(set(obj) - KNOWN_KEYS)
    if unknown:
        raise ValidationError(f"unknown keys {unknown}")
    tower = parse_tower(obj["tower"]) if "tower" in obj else None
    return _fill_problem(obj, tower)


def _fill_problem(obj: dict, tower: FieldTower | None) -> ProblemFile:
    prob = ProblemFile(tower=tower)
    opts = obj.get("options") or {}
    if not isinstance(opts, dict):
        raise ValidationError("options must be a mapping", "options")
    for key in ("seed", "degree_bound"):
        if key in opts and (isinstance(opts[key], bool) or not isinstance(opts[key], int)):
            raise ValidationError("must be an integer", f"options.{key}")
    prob.options = dict(opts)
    if "n" in obj:
        if isinstance(obj["n"], bool) or not isinstance(obj["n"], int) or obj["n"] < 0:
            raise ValidationError("must be a nonnegative integer", "n")
        prob.n = obj["n"]
    needs_field = [k for k in ("generators", "candidates", "decomposition", "poly") if k in obj]
    if needs_field and tower is None:
        raise ValidationError(f"a tower is required for {needs_field}", "tower")
    if tower is None:
        return prob
    F = tower.base
    gens = obj.get("generators") or []
    if not isinstance(gens, list):
        raise ValidationError("generators must be a list of matrices", "generators")
    n = None
    for i, G in enumerate(gens):
        M = parse_matrix(F, G, f"generators[{i}]", n)
        n = M.nrows
        prob.generators.append(M)
    for key in ("candidates", "decomposition"):
        if key not in obj:
            continue
        if n is None:
            raise ValidationError("needs generators to fix the dimension", key)
        if not isinstance(obj[key], list):
            raise ValidationError("must be a list of subspaces", key)
        setattr(prob, key, [parse_subspace(F, S, n, f"{key}[{i}]") for i, S in enumerate(obj[key])])
    if "poly" in obj:
        coeffs = obj["poly"]
        if not isinstance(coeffs, list) or not coeffs:
            raise ValidationError("poly must be a nonempty list of ascending coefficients", "poly")
        prob.poly = Poly(F, [parse_scalar(F, c, f"poly[{i}]") for i, c in enumerate(coeffs)])
    return prob


def problem_to_data(prob: ProblemFile) -> dict:
    out = {}
    if prob.tower is not None:
        out["tower"] = prob.tower.spec()
    if prob.generators:
        out["generators"] = [M.to_data() for M in prob.generators]
    for key in ("candidates", "decomposition"):
        val = getattr(prob, key)
        if val is not None:
            out[key] = [S.to_data() for S in val]
    if prob.poly is not None:
        out["poly"] = prob.poly.to_data()
    if prob.n is not None:
        out["n"] = prob.n
    if prob.options:
        out["options"] = dict(prob.options)
    return out


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class Report:
    """Outcome of one CLI command.  Every field holds plain data (str, int,
    bool, list, dict) so the structured form round-trips exactly."""

    command: str
    status: str  # ok | none | not-applicable | invalid | failure
    exit_code: int
    seed: int
    degree_bound: int
    tower: dict | None = None
    algebra: dict | None = None
    classification: dict | None = None
    conditions: dict | None = None
    result: dict | None = None
    failure: dict | None = None
    trace: list = dc_field(default_factory=list)
    timing: dict | None = None

    def to_data(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None and v != []}


def dump_structured(data) -> str:
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None, allow_unicode=True, width=100)


def parse_report(data) -> Report:
    obj = _load_yaml(data, "report")
    if not isinstance(obj, dict):
        raise ParseError("report must be a mapping")
    try:
        return Report(**obj)
    except TypeError as exc:
        raise ParseError(f"bad report: {exc}") from None


def emit_report(r: Report, fmt: str = "text") -> bytes:
    if fmt == "structured":
        return dump_structured(r.to_data()).encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return render_text(r).encode("utf-8")


def _fmt_vec(v) -> str:
    return "(" + ", ".join(_fmt_scalar(x) for x in v) + ")"


def _fmt_scalar(x) -> str:
    if isinstance(x, list):
        return "[" + ", ".join(str(c) for c in x) + "]"
    return str(x)


def render_text(r: Report) -> str:
    out = [f"command: {r.command}", f"status: {r.status} (exit {r.exit_code})"]
    if r.tower:
        out.append("tower: " + ", ".join(f"{k}={v}" for k, v in r.tower.items()))
    out.append(f"seed: {r.seed}  degree bound: {r.degree_bound}")
    if r.algebra:
        out.append(f"algebra: n={r.algebra['n']}, dim={r.algebra['dim']}")
    if r.classification:
        c = r.classification
        out.append(
            f"classification: nilpotent={c['nilpotent']} solvable={c['solvable']} "
            f"supersolvable_on_basis={c['supersolvable_on_basis']} "
            f"lower central dims={c['lower_central_dims']} derived dims={c['derived_dims']}"
        )
    if r.conditions:
        c = r.conditions
        out.append(
            f"conditions: c1={c['c1_holds']} c2: n={c['c2']['n']} in_M={c['c2']['in_M']} "
            f"nilpotent={c['nilpotent']} applicable={c['applicable']}"
        )
        out.append(f"  note: {c['caveat']}")
    if r.trace:
        out.append("trace:")
        out.extend(f"  {line}" for line in r.trace)
    if r.result is not None:
        out.append("result:")
        out.extend("  " + line for line in _render_result(r.result))
    if r.failure:
        out.append(f"failure at stage {r.failure['stage']}: {r.failure['message']}")
    if r.timing:
        out.append("timing: " + ", ".join(f"{k}={v:.4f}s" for k, v in r.timing.items()))
    return "\n".join(out) + "\n"


def _render_result(res: dict) -> list[str]:
    lines = []
    for key, val in res.items():
        if key == "checks":
            lines.append("eigen-equation checks:")
            for chk in val:
                mark = "holds" if chk["holds"] else "FAILS"
                lines.append(f"  {chk['name']}·v = {_fmt_scalar(chk['value'])}·v  {mark}")
        elif key == "vector":
            lines.append(f"vector: {_fmt_vec(val)}")
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}:")
            for item in val:
                lines.append("  - " + "; ".join(f"{k}={_compact(v)}" for k, v in item.items()))
        else:
            lines.append(f"{key}: {_compact(val)}")
    return lines


def _compact(val) -> str:
    if isinstance(val, (dict, list)):
        return yaml.safe_dump(val, default_flow_style=True, width=10**6).strip()
    return str(val)
