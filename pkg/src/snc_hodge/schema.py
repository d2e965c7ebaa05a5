"""JSON input format for SNC varieties and JSON-ready conversion of results.

Scalars travel as exact strings ("3", "-1/2", "+1/2-1/3*i"); matrices as
lists of rows; vectors as flat lists; Hodge blocks as {p, q, dim, basis?}
records with ``basis`` a list of column vectors.
"""

from __future__ import annotations

import hashlib
import json

from .errors import SchemaError
from .hodge import Block, HodgeGrading, pure_type
from .linalg import Mat, Subspace, fmt, parse_scalar
from .snc import CohomologyPackage, DoubleLocus, Scenario, SncVariety

INPUT_SCHEMA = "snc-hodge/input/1"


# ---------------------------------------------------------------------------
# scalars and matrices


def _scalar(x, path: str):
    if isinstance(x, bool):
        raise SchemaError(f"{path}: expected a number, got a boolean", path=path)
    if isinstance(x, int):
        return parse_scalar(str(x))
    if isinstance(x, str):
        try:
            return parse_scalar(x)
        except (ValueError, TypeError) as exc:
            raise SchemaError(f"{path}: cannot read scalar {x!r}", path=path) from exc
    raise SchemaError(f"{path}: scalars must be strings or integers", path=path)


def _matrix(rows, path: str, shape: tuple[int, int] | None = None) -> Mat:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise SchemaError(f"{path}: expected a list of rows", path=path)
    ncols = len(rows[0]) if rows else (shape[1] if shape else 0)
    if any(len(r) != ncols for r in rows):
        raise SchemaError(f"{path}: ragged matrix", path=path)
    M = Mat.from_rows([[_scalar(x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)], ncols)
    if shape is not None and M.shape != shape:
        # an empty list stands for any matrix with a zero dimension
        if not rows and 0 in shape:
            return Mat.zeros(*shape)
        raise SchemaError(f"{path}: expected shape {shape}, got {M.shape}", path=path)
    return M


def _vector(v, path: str, n: int | None = None) -> Mat:
    if not isinstance(v, list):
        raise SchemaError(f"{path}: expected a list", path=path)
    if n is not None and len(v) != n:
        raise SchemaError(f"{path}: expected length {n}, got {len(v)}", path=path)
    return Mat.vector([_scalar(x, f"{path}[{i}]") for i, x in enumerate(v)])


def mat_out(M: Mat) -> list:
    return [[fmt(x) for x in row] for row in M.tolist()]


def vec_out(M: Mat) -> list:
    return [fmt(x) for x in M.col(0)]


# ---------------------------------------------------------------------------
# packages


def _need(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object", path=path)
    if key not in obj:
        raise SchemaError(f"{path}: missing field {key!r}", path=f"{path}.{key}")
    return obj[key]


def _parse_hodge(raw, l: int, dim: int, path: str) -> HodgeGrading:
    if raw is None:
        if l % 2 and dim:
            raise SchemaError(f"{path}: Hodge data required in odd degree {l}", path=path)
        return pure_type(l, dim) if l % 2 == 0 else HodgeGrading(l, 0)
    shift = 0
    if isinstance(raw, dict):
        shift = int(raw.get("shift", 0))
        raw = _need(raw, "blocks", path)
    blocks = []
    for i, b in enumerate(raw):
        bp = f"{path}[{i}]"
        p, q, d = int(_need(b, "p", bp)), int(_need(b, "q", bp)), int(_need(b, "dim", bp))
        space = None
        if "basis" in b:
            cols = [_vector(c, f"{bp}.basis[{j}]", dim) for j, c in enumerate(b["basis"])]
            B = Mat.from_cols([c.col(0) for c in cols], dim) if cols else Mat.zeros(dim, 0)
            try:
                space = Subspace(dim, B)
            except ValueError as exc:
                raise SchemaError(f"{bp}: {exc}", path=bp) from exc
        try:
            blocks.append(Block(p, q, d, space))
        except ValueError as exc:
            raise SchemaError(f"{bp}: {exc}", path=bp) from exc
    try:
        return HodgeGrading(l, dim, tuple(blocks), shift)
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}", path=path) from exc


def parse_package(name: str, raw: dict, path: str) -> CohomologyPackage:
    n = int(_need(raw, "n", path))
    dims = _need(raw, "dims", path)
    if not isinstance(dims, list) or len(dims) != 2 * n + 1:
        raise SchemaError(f"{path}.dims: expected {2 * n + 1} entries", path=f"{path}.dims")
    dims = tuple(int(d) for d in dims)
    praw = raw.get("pairing", {})
    pairing = {}
    for key, rows in praw.items():
        l = int(key)
        pairing[l] = _matrix(rows, f"{path}.pairing.{key}", (dims[l], dims[2 * n - l]))
    for l in range(2 * n + 1):
        if dims[l] and l not in pairing:
            if (2 * n - l) in pairing:
                pairing[l] = pairing[2 * n - l].T.scale((-1) ** (l * (2 * n - l)))
            else:
                raise SchemaError(f"{path}.pairing: missing pairing block at degree {l}", path=f"{path}.pairing", degree=l)
    cup2 = None
    if "cup2" in raw:
        cup2 = {}
        for key, tabs in raw["cup2"].items():
            l = int(key)
            if not isinstance(tabs, list) or len(tabs) != dims[2]:
                raise SchemaError(f"{path}.cup2.{key}: expected {dims[2]} tables", path=f"{path}.cup2.{key}")
            tgt = dims[l + 2] if l + 2 <= 2 * n else 0
            cup2[l] = tuple(_matrix(t, f"{path}.cup2.{key}[{b}]", (tgt, dims[l])) for b, t in enumerate(tabs))
    hraw = raw.get("hodge", {})
    hodge = tuple(_parse_hodge(hraw.get(str(l)), l, dims[l], f"{path}.hodge.{l}") for l in range(2 * n + 1))
    ample = tuple(_vector(v, f"{path}.ample[{i}]", dims[2]) for i, v in enumerate(raw.get("ample", [])))
    labels = {int(k): tuple(v) for k, v in raw.get("labels", {}).items()}
    unit = _vector(raw["unit"], f"{path}.unit", dims[0]) if "unit" in raw else (Mat.vector([1]) if dims[0] == 1 else None)
    return CohomologyPackage(name, n, dims, hodge, pairing, cup2, ample, labels, unit)


def package_out(p: CohomologyPackage) -> dict:
    out = {
        "n": p.n,
        "dims": list(p.dims),
        "pairing": {str(l): mat_out(G) for l, G in sorted(p.pairing.items()) if p.dim(l)},
        "hodge": {},
    }
    for l, H in enumerate(p.hodge):
        if not H.ambient_dim:
            continue
        blocks = []
        for b in H.blocks:
            rec = {"p": b.p, "q": b.q, "dim": b.dim}
            if b.explicit:
                rec["basis"] = [[fmt(x) for x in c] for c in b.space.basis.columns()]
            blocks.append(rec)
        out["hodge"][str(l)] = {"blocks": blocks, "shift": H.shift} if H.shift else blocks
    if p.cup2 is not None:
        out["cup2"] = {str(l): [mat_out(t) for t in tabs] for l, tabs in sorted(p.cup2.items())}
    if p.ample:
        out["ample"] = [vec_out(a) for a in p.ample]
    if p.labels:
        out["labels"] = {str(l): list(v) for l, v in sorted(p.labels.items())}
    if p.unit is not None:
        out["unit"] = vec_out(p.unit)
    return out


# ---------------------------------------------------------------------------
# scenarios


def parse_document(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise SchemaError("$: top level must be an object", path="$")
    if doc.get("schema") != INPUT_SCHEMA:
        raise SchemaError(f"$.schema: expected {INPUT_SCHEMA!r}", path="$.schema")
    n = int(_need(doc, "n", "$"))
    pk_raw = _need(doc, "packages", "$")
    packages = {name: parse_package(name, raw, f"$.packages.{name}") for name, raw in pk_raw.items()}

    def pkg(name, path):
        if name not in packages:
            raise SchemaError(f"{path}: unknown package {name!r}", path=path)
        return packages[name]

    comps = [pkg(c, f"$.components[{i}]") for i, c in enumerate(_need(doc, "components", "$"))]
    loci = []
    for t, raw in enumerate(doc.get("loci", [])):
        path = f"$.loci[{t}]"
        P = pkg(_need(raw, "package", path), f"{path}.package")
        pair = tuple(int(x) for x in _need(raw, "pair", path))
        if len(pair) != 2 or not (0 <= pair[0] < pair[1] < len(comps)):
            raise SchemaError(f"{path}.pair: need 0 <= i < j < {len(comps)}", path=f"{path}.pair")
        i, j = pair
        d1 = {int(k): _matrix(v, f"{path}.delta1.{k}", (P.dim(int(k)), comps[j].dim(int(k))))
              for k, v in raw.get("delta1", {}).items()}
        d2 = {int(k): _matrix(v, f"{path}.delta2.{k}", (P.dim(int(k)), comps[i].dim(int(k))))
              for k, v in raw.get("delta2", {}).items()}
        orient = int(raw.get("orientation", 1))
        if orient not in (1, -1):
            raise SchemaError(f"{path}.orientation: must be 1 or -1", path=f"{path}.orientation")
        loci.append(DoubleLocus(P, pair, d1, d2, orient))
    V = SncVariety(n, comps, loci, name=str(doc.get("name", "input")))

    def classes(raw, path):
        if not isinstance(raw, list) or len(raw) != len(comps):
            raise SchemaError(f"{path}: one class per component required", path=path)
        return [_vector(v, f"{path}[{i}]", c.dim(2)) for i, (v, c) in enumerate(zip(raw, comps))]

    sc = Scenario(V, scenario_id=str(doc.get("scenario_id", "custom")))
    sc.params = dict(doc.get("params", {}))
    sc.notes = list(doc.get("notes", []))
    for name, raw in doc.get("bundles", {}).items():
        sc.bundles[name] = classes(raw, f"$.bundles.{name}")
    for name, raw in doc.get("classes", {}).items():
        sc.classes[name] = classes(raw, f"$.classes.{name}")
    sc.ample_restrictions = [_vector(v, f"$.ample_restrictions[{i}]", V.dim2(2))
                             for i, v in enumerate(doc.get("ample_restrictions", []))]
    return sc


def scenario_out(sc: Scenario) -> dict:
    V = sc.variety
    packages = {}
    names = []
    for c in V.components:
        packages[c.name] = package_out(c)
        names.append(c.name)
    loci = []
    for d in V.loci:
        key = d.package.name
        if key in packages and packages[key] != package_out(d.package):
            key = f"{key}@{len(loci)}"
        packages[key] = package_out(d.package)
        loci.append({
            "package": key,
            "pair": list(d.pair),
            "delta1": {str(l): mat_out(M) for l, M in sorted(d.delta1.items())},
            "delta2": {str(l): mat_out(M) for l, M in sorted(d.delta2.items())},
            "orientation": d.orientation,
        })
    if len(set(names)) != len(names):
        raise SchemaError("component packages need distinct names")
    doc = {
        "schema": INPUT_SCHEMA,
        "name": V.name,
        "scenario_id": sc.scenario_id,
        "n": V.n,
        "packages": packages,
        "components": names,
        "loci": loci,
    }
    if sc.params:
        doc["params"] = to_jsonable(sc.params)
    if sc.notes:
        doc["notes"] = list(sc.notes)
    if sc.bundles:
        doc["bundles"] = {k: [vec_out(v) for v in vs] for k, vs in sc.bundles.items()}
    if sc.classes:
        doc["classes"] = {k: [vec_out(v) for v in vs] for k, vs in sc.classes.items()}
    if sc.ample_restrictions:
        doc["ample_restrictions"] = [vec_out(v) for v in sc.ample_restrictions]
    return doc


def parse_text(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    return parse_document(doc)


def load(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def digest(doc: dict) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


# ---------------------------------------------------------------------------
# results


def to_jsonable(obj):
    """Exact, deterministic JSON form of analysis results."""
    from gmpy2 import mpq

    from .linalg import Scalar

    if isinstance(obj, Mat):
        return mat_out(obj)
    if isinstance(obj, Subspace):
        return [[fmt(x) for x in c] for c in obj.basis.columns()]
    if isinstance(obj, (Scalar, type(mpq(0)))):
        return fmt(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return {(k if isinstance(k, str) else ",".join(map(str, k)) if isinstance(k, tuple) else str(k)): to_jsonable(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    return str(obj)
