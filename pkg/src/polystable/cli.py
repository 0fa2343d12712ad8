"""Command line interface and JSON/CSV/OFF serialization.

Exit codes: 0 success, 2 validation failure (including malformed input),
3 domain error.
"""

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from .complex import DescentData, StrictDualComplex, coequalize, face_intersection
from .errors import DescriptorError, DomainError, ValidationError
from .extended import INF, fmt_q, parse_q
from .geometry import RealizationPoint
from .polysimplex import ExtendedPolySimplex, PSMorphism
from .series import Coeff
from .skeleton import (
    StandardPairModel,
    closure_membership,
    flow,
    make_point,
    normalize_poly,
    reduction_stratum,
    seminorm_eval,
    sigma,
    star_eval,
    tau,
    trop,
)
from .strata import build_descriptor, make_chart, standard_descriptor, validate_descriptor

DEFAULT_TAUS = ["inf", "3", "1", "0"]


def _q(v):
    return parse_q(v) if isinstance(v, str) else Fraction(v)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# shapes and morphisms


def shape_to_json(E):
    return {"n": list(E.n), "r": [fmt_q(v) for v in E.r], "s": E.s}


def shape_from_json(d):
    return ExtendedPolySimplex(tuple(d["n"]), tuple(_q(v) for v in d["r"]), d.get("s", 0))


def morphism_to_json(F):
    return {
        "source": shape_to_json(F.source),
        "target": shape_to_json(F.target),
        "f": list(F.f),
        "c": [list(t) for t in F.c],
        "g": list(F.g),
    }


def morphism_from_json(d):
    return PSMorphism(
        shape_from_json(d["source"]), shape_from_json(d["target"]),
        tuple(d["f"]), tuple(tuple(t) for t in d["c"]), tuple(d["g"]),
    )


# descriptors


def descriptor_to_json(desc):
    comps = desc.components
    return {
        "kind": "abstract",
        "components": {
            "x": list(comps.x_components),
            "h": list(comps.h_components),
            "container": dict(comps.container),
        },
        "strata": [{"id": rec.id, "A": sorted(rec.A)} for rec in desc.strata],
        "order": sorted([x, y] for x, y in desc.order if x != y),
        "charts": {
            rec.id: {
                "shape": shape_to_json(rec.chart.shape),
                "alpha": [[list(pt), lab] for pt, lab in rec.chart.alpha],
                "gamma": [sorted(b) for b in rec.chart.gamma],
            }
            for rec in desc.strata
        },
    }


def _abstract_from_json(doc):
    comps = doc["components"]
    charts = doc["charts"]
    strata = []
    for rec in doc["strata"]:
        ch = charts[rec["id"]]
        chart = make_chart(
            shape_from_json(ch["shape"]),
            {tuple(pt): lab for pt, lab in ch["alpha"]},
            [frozenset(b) for b in ch["gamma"]],
        )
        strata.append((rec["id"], set(rec["A"]), chart))
    return build_descriptor(
        comps["x"], comps.get("h", []), comps.get("container", {}), strata,
        [tuple(p) for p in doc.get("order", [])],
    )


def _descriptor_from_doc(doc):
    kind = doc.get("kind")
    if kind == "standard":
        for key in ("n", "r", "d", "s"):
            if key not in doc:
                raise ValidationError([("Schema", f"missing key {key!r}")])
        return standard_descriptor(doc["n"], [_q(v) for v in doc["r"]], doc["d"], doc["s"])
    if kind == "abstract":
        return _abstract_from_json(doc)
    raise ValidationError([("Schema", f"unknown descriptor kind {kind!r}")])


def parse_descriptor(data):
    """Parse and validate a descriptor document (bytes, str or dict)."""
    try:
        doc = json.loads(data) if isinstance(data, (bytes, str)) else data
        if not isinstance(doc, dict):
            raise ValidationError([("Schema", "top level must be an object")])
        if doc.get("kind") == "descent":
            base = parse_descriptor(doc["base"])
            cx = StrictDualComplex(base, validate=False)
            witnesses = {(w["from"], w["to"]): morphism_from_json(w["morphism"])
                         for w in doc.get("witnesses", [])}
            return DescentData(cx, [list(c) for c in doc["classes"]], witnesses)
        desc = _descriptor_from_doc(doc)
    except ValidationError:
        raise
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise ValidationError([("Schema", f"{type(exc).__name__}: {exc}")]) from None
    validate_descriptor(desc).raise_if_invalid()
    return desc


# complexes


def lattice_json(cx):
    desc = cx.descriptor
    out = descriptor_to_json(desc)
    out["faces"] = [
        {"id": x, "dim": cx.dim(x), "kind": desc.by_id[x].kind, "shape": shape_to_json(cx.shape(x))}
        for x in desc.ids
    ]
    out["f_vector"] = cx.f_vector()
    out["embeddings"] = [
        {"face": y, "coface": x, "morphism": morphism_to_json(cx.face_embedding(x, y))}
        for x, y in sorted(desc.order) if x != y
    ]
    ids = desc.ids
    out["intersections"] = [
        {"x": a, "y": b, "z": sorted(face_intersection(cx, a, b))}
        for i, a in enumerate(ids) for b in ids[i + 1:]
    ]
    return out


def glued_json(gc):
    return {
        "classes": [
            {"index": k, "representative": rho, "dim": gc.dim(k),
             "members": sorted(y for y, kk in gc.class_of.items() if kk == k)}
            for k, rho in enumerate(gc.reps)
        ],
        "f_vector": gc.f_vector(),
        "embeddings": [
            {"face": kz, "coface": k, "via": z, "morphism": morphism_to_json(m)}
            for k, kz, z, m in gc.embeddings()
        ],
    }


def off_dump(cx):
    if max(cx.dim(x) for x in cx.ids) > 3:
        raise DomainError("OFF export supports complexes of dimension <= 3")
    desc = cx.descriptor
    verts = [x for x in desc.ids if cx.dim(x) == 0]
    edges = [x for x in desc.ids if cx.dim(x) == 1]
    index = {x: k for k, x in enumerate(verts)}
    lines = ["OFF", f"{len(verts)} {len(edges)}"]
    lines += [f"v {index[x]} {x}" for x in verts]
    for e in edges:
        ends = sorted(index[y] for y in desc.upper(e) if y in index)
        lines.append("e " + " ".join(map(str, ends)) + f" {e}")
    return "\n".join(lines) + "\n"


def strata_rows(desc):
    return [
        {"id": rec.id, "kind": rec.kind, "codim": desc.codim(rec.id),
         "dim": rec.chart.shape.dim, "shape": str(rec.chart.shape), "A": " ".join(sorted(rec.A))}
        for rec in desc.strata
    ]


# skeleton documents


def _coeff(d):
    return Coeff.from_json(d)


def coeff_text(c):
    if not c:
        return "0"
    return "+".join(f"{fmt_q(v)}*t^{fmt_q(e)}" for e, v in c.terms)


def model_from_json(d, closure=False):
    if "a" in d:
        a = [_coeff(v) for v in d["a"]]
    else:
        a = [Coeff.monomial(1, _q(v)) if _q(v) is not INF else Coeff() for v in d.get("r", [])]
    return StandardPairModel(tuple(d["n"]), tuple(a), d["d"], d["s"], closure)


def point_from_json(model, d, closure=False):
    return make_point(
        model,
        [[_q(v) for v in row] for row in d.get("v", [])],
        [(_coeff(c), _q(u)) for c, u in d.get("div", [])],
        [(_coeff(c), _q(u)) for c, u in d.get("ball", [])],
        closure,
    )


def point_to_json(x):
    return {
        "v": [[fmt_q(v) for v in row] for row in x.v],
        "div": [[c.to_json(), fmt_q(u)] for c, u in x.div],
        "ball": [[c.to_json(), fmt_q(u)] for c, u in x.ball],
    }


def rpoint_to_json(w):
    return {"x": [[fmt_q(v) for v in row] for row in w.x], "y": [fmt_q(v) for v in w.y]}


def rpoint_from_json(d, closure=False):
    return RealizationPoint(
        tuple(tuple(_q(v) for v in row) for row in d.get("x", [])),
        tuple(_q(v) for v in d.get("y", [])),
        closure,
    )


def poly_from_json(model, data):
    return normalize_poly(model, {tuple(mu): _coeff(c) for mu, c in data})


def sample_realization(model, rng, den=4):
    """A random point of ``Delta(n, r, s)`` with denominators dividing ``den``."""
    rows = []
    for k, r in zip(model.n[: model.p], model.r):
        cuts = sorted(rng.randint(0, den) for _ in range(k))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
        rows.append(tuple(r * Fraction(v, den) for v in parts))
    y = tuple(Fraction(rng.randint(0, 4 * den), den) for _ in range(model.s))
    return RealizationPoint(tuple(rows), y)


def trajectory_rows(x, taus):
    model = x.model
    header = ["tau"]
    for i, row in enumerate(x.v):
        header += [f"v{i}_{j}" for j in range(len(row))]
    for k in range(model.s):
        header += [f"div{k + 1}_center", f"div{k + 1}_u"]
    for k in range(model.d - model.s):
        header += [f"ball{k + 1}_center", f"ball{k + 1}_u"]
    header += [f"trop_y{k + 1}" for k in range(model.s)]
    rows = []
    taus = sorted((_q(t) for t in taus), reverse=True)
    for t in taus:
        pt = flow(x, t)
        row = [fmt_q(t)] + [fmt_q(v) for r in pt.v for v in r]
        for c, u in pt.div + pt.ball:
            row += [coeff_text(c), fmt_q(u)]
        row += [fmt_q(v) for v in trop(pt).y]
        rows.append(row)
    return header, rows


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# commands


def _load(args):
    if args.input in (None, "-"):
        return sys.stdin.buffer.read()
    with open(args.input, "rb") as fh:
        return fh.read()


def _json_doc(raw):
    try:
        return json.loads(raw)
    except ValueError as exc:
        raise ValidationError([("Schema", f"malformed JSON: {exc}")]) from None


def _cmd_strata(args, raw):
    desc = parse_descriptor(raw)
    rows = strata_rows(desc)
    if args.format == "csv":
        header = ["id", "kind", "codim", "dim", "shape", "A"]
        return csv_text(header, [[r[h] for h in header] for r in rows])
    return dumps({"strata": rows, "count": len(rows)})


def _cmd_complex(args, raw):
    cx = StrictDualComplex(parse_descriptor(raw))
    if args.format == "off":
        return off_dump(cx)
    return dumps(lattice_json(cx))


def _cmd_glue(args, raw):
    descent = parse_descriptor(raw)
    if not isinstance(descent, DescentData):
        raise ValidationError([("Schema", "glue expects a descent document")])
    validate_descriptor(descent.base.descriptor).raise_if_invalid()
    return dumps(glued_json(coequalize(descent)))


def _skeleton_inputs(args, raw):
    doc = _json_doc(raw)
    closure = args.mode == "closure"
    try:
        model = model_from_json(doc["model"], closure)
        x = point_from_json(model, doc["point"], closure) if "point" in doc else None
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise ValidationError([("Schema", f"{type(exc).__name__}: {exc}")]) from None
    return doc, model, x


def _need(x, what):
    if x is None:
        raise ValidationError([("Schema", f"missing key {what!r}")])
    return x


def _cmd_skeleton(args, raw):
    doc, model, x = _skeleton_inputs(args, raw)
    op = args.op
    if op == "trop":
        return dumps(rpoint_to_json(trop(_need(x, "point"))))
    if op == "sigma":
        if "w" in doc:
            w = rpoint_from_json(doc["w"], args.mode == "closure")
        else:
            w = sample_realization(model, random.Random(args.seed))
        return dumps({"w": rpoint_to_json(w), "point": point_to_json(sigma(model, w))})
    if op == "tau":
        return dumps(point_to_json(tau(_need(x, "point"))))
    if op == "flow":
        header, rows = trajectory_rows(_need(x, "point"), doc.get("taus", DEFAULT_TAUS))
        if args.format == "csv":
            return csv_text(header, rows)
        return dumps({"rows": [dict(zip(header, r)) for r in rows]})
    if op == "reduce":
        sid, generic = reduction_stratum(_need(x, "point"))
        return dumps({"stratum": sid, "generic": generic})
    if op == "eval":
        f = poly_from_json(model, _need(doc.get("f"), "f"))
        out = {"value": fmt_q(seminorm_eval(_need(x, "point"), f))}
        if "tau" in doc:
            out["star"] = fmt_q(star_eval(x, _q(doc["tau"]), f))
        return dumps(out)
    raise ValidationError([("Schema", f"unknown skeleton operation {op!r}")])


def _cmd_closure(args, raw):
    doc = _json_doc(raw)
    model = model_from_json(doc["model"], True)
    results = []
    for p in doc.get("points", []):
        w = rpoint_from_json(p, True)
        results.append({"point": rpoint_to_json(w), "membership": closure_membership(model, w)})
    return dumps({"results": results})


def _cmd_export(args, raw):
    if args.format == "csv":
        doc, model, x = _skeleton_inputs(args, raw)
        header, rows = trajectory_rows(_need(x, "point"), doc.get("taus", DEFAULT_TAUS))
        return csv_text(header, rows)
    cx = StrictDualComplex(parse_descriptor(raw))
    if args.format == "off":
        return off_dump(cx)
    return dumps(lattice_json(cx))


COMMANDS = {
    "strata": _cmd_strata,
    "complex": _cmd_complex,
    "glue": _cmd_glue,
    "skeleton": _cmd_skeleton,
    "closure": _cmd_closure,
    "export": _cmd_export,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input JSON file (default: stdin)")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--format", choices=["json", "csv", "off"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mode", choices=["standard", "closure"], default="standard")
    parser = argparse.ArgumentParser(
        prog="polystable", description="Dual intersection complexes and skeletons of standard pairs."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("strata", parents=[common], help="table of strata")
    sub.add_parser("complex", parents=[common], help="face-lattice JSON of the strict dual complex")
    sub.add_parser("glue", parents=[common], help="apply descent data and emit the quotient lattice")
    sk = sub.add_parser("skeleton", parents=[common], help="skeleton operations on a point")
    sk.add_argument("op", choices=["trop", "sigma", "tau", "flow", "reduce", "eval"])
    sub.add_parser("closure", parents=[common], help="closure membership queries")
    sub.add_parser("export", parents=[common], help="CSV trajectories or OFF vertex/edge dump")
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        text = COMMANDS[args.command](args, _load(args))
    except ValidationError as exc:
        stderr.write(dumps({"errors": [{"condition": c, "message": m} for c, m in exc.violations]}))
        return 2
    except (DomainError, DescriptorError) as exc:
        stderr.write(dumps({"errors": [{"condition": "Domain", "message": str(exc)}]}))
        return 3
    except (KeyError, TypeError, ValueError) as exc:
        stderr.write(dumps({"errors": [{"condition": "Schema", "message": f"{type(exc).__name__}: {exc}"}]}))
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
