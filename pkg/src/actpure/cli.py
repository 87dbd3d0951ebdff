"""Command-line interface.

Exit codes: 0 when the command ran (boolean answers are in the output),
2 for input or validation errors, 3 when a size cap or search budget is hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import (
    act_text,
    document_for,
    load_catalog,
    serialize_catalog,
    system_text,
)
from .classes import (
    ABS_PURE,
    ALMOST_PURE,
    WEAKLY_F,
    WEAKLY_P,
    ActClass,
    class_contains,
    cyclic_acts,
    membership_counterexample,
    right_ideal_acts,
)
from .core import DEFAULT_CAP, SubactHandle
from .enumeration import enumerate_acts, enumerate_extensions, enumerate_monoids
from .equations import solve_system
from .errors import ActError, ResourceError
from .preenvelope import (
    extract_retraction,
    find_min_preenvelope,
    product_preenvelope,
    reduce_via_pure_closure,
    verify_envelope,
    verify_preenvelope,
)
from .purity import is_pure, is_pure_bounded, is_pure_via_diagram, pure_closure_trace, purity_witness

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _elements(A, text):
    labels = [t for t in text.split(",") if t]
    if not labels:
        raise ActError("empty element list")
    return [A.index(l) for l in labels]


def _hom_json(h):
    return None if h is None else {"source": h.source.name, "target": h.target.name, "map": h.labelled()}


def _system_json(name, sys_):
    return None if sys_ is None else {"text": "\n".join(system_text(name, sys_)), "equations": sys_.format()}


def _class_loader(path):
    doc = load_catalog(path)
    if not doc.acts:
        raise ActError(f"{path}: no acts for an extensional class")
    return list(doc.acts.values())


def cmd_validate(args, out):
    files = []
    for path in args.files:
        doc = load_catalog(path)
        files.append(
            {"path": path, "monoids": len(doc.monoids), "acts": len(doc.acts), "systems": len(doc.systems), "homs": len(doc.homs)}
        )
    if args.json:
        return {"valid": True, "files": files}
    for f in files:
        out(f"{f['path']}: ok ({f['monoids']} monoids, {f['acts']} acts, {f['systems']} systems, {f['homs']} homs)")


def cmd_solve(args, out):
    doc = load_catalog(args.file)
    sys_ = doc.get("system", args.system)
    sol = solve_system(sys_)
    A = sys_.act
    named = None if sol is None else {v: A.elements[x] for v, x in zip(sys_.names(), sol)}
    if args.json:
        return {"system": args.system, "act": A.name, "solvable": sol is not None, "solution": named}
    if sol is None:
        out(f"{args.system}: no solution in {A.name}")
    else:
        out(f"{args.system}: solvable in {A.name}: " + ", ".join(f"{k} = {v}" for k, v in named.items()))


def cmd_check_pure(args, out):
    doc = load_catalog(args.file)
    A = doc.get("act", args.act)
    sub = SubactHandle(A, tuple(_elements(A, args.subact)))
    if args.method == "bounded":
        pure = is_pure_bounded(sub, args.vars, args.eqs)
        if args.json:
            return {"pure": pure, "method": "bounded", "max_vars": args.vars, "max_eqs": args.eqs, "witness": None, "retraction": None}
        out(f"{{{','.join(sub.labels())}}} in {A.name}: {'pure' if pure else 'NOT pure'} "
            f"(systems with <= {args.vars} vars, <= {args.eqs} equations)")
        return
    verdict = is_pure(sub) if args.method == "retraction" else is_pure_via_diagram(sub)
    witness = verdict.witness
    if args.method == "diagram" and witness is not None:
        witness = purity_witness(sub)
    if args.json:
        return {
            "pure": verdict.pure,
            "method": verdict.method,
            "witness": _system_json("witness", witness),
            "retraction": _hom_json(verdict.retraction),
        }
    out(f"{{{','.join(sub.labels())}}} in {A.name}: {'pure' if verdict.pure else 'NOT pure'} (method: {verdict.method})")
    if verdict.retraction is not None:
        out("retraction: " + ", ".join(f"{k} -> {v}" for k, v in verdict.retraction.labelled().items()))
    if witness is not None:
        out("witness (solvable in the ambient act, not in the subact):")
        for line in system_text("witness", witness):
            out("  " + line)


def cmd_pure_closure(args, out):
    doc = load_catalog(args.file)
    A = doc.get("act", args.act)
    trace = pure_closure_trace(A, _elements(A, args.seed))
    steps = [
        {
            "before": [A.elements[x] for x in st.before.members],
            "witness": st.witness.format(),
            "solution": [A.elements[x] for x in st.solution],
            "added": [A.elements[x] for x in st.added],
        }
        for st in trace.steps
    ]
    result = [A.elements[x] for x in trace.result.members]
    if args.json:
        return {"act": A.name, "seed": [A.elements[x] for x in trace.seed], "result": result, "iterations": trace.iterations, "steps": steps}
    for i, st in enumerate(steps, 1):
        out(f"step {i}: U = {{{','.join(st['before'])}}} not pure; witness " + "; ".join(st["witness"]))
        out(f"        solution {st['solution']} adds {{{','.join(st['added'])}}}")
    out(f"pure closure: {{{','.join(result)}}} ({trace.iterations} iterations)")


def _builtin_classes(A, bound):
    n = bound if bound is not None else A.size + A.monoid.order
    return [ActClass(WEAKLY_P), ActClass(WEAKLY_F), ActClass(ALMOST_PURE), ActClass(ABS_PURE, n)]


def cmd_classify(args, out):
    doc = load_catalog(args.file)
    A = doc.get("act", args.act)
    rows = []
    for cls in _builtin_classes(A, args.bound):
        member = class_contains(cls, A)
        cex = None
        if not member:
            inst, h = membership_counterexample(cls, A)
            cex = {
                "ambient": inst.ambient.name,
                "ambient_elements": list(inst.ambient.elements),
                "inner": inst.inner.labels(),
                "hom": h.labelled(),
            }
        rows.append({"class": cls.label(), "member": member, "counterexample": cex})
    if args.json:
        return {"act": A.name, "classes": rows}
    for r in rows:
        line = f"{r['class']:<22} {'yes' if r['member'] else 'no'}"
        if r["counterexample"]:
            c = r["counterexample"]
            line += (f"   (hom {c['hom']} on {{{','.join(c['inner'])}}} does not extend to "
                     f"{c['ambient']} = {{{','.join(c['ambient_elements'])}}})")
        out(line)


def cmd_ideals(args, out):
    doc = load_catalog(args.file)
    S = doc.get("monoid", args.monoid)
    ideals = [I.labels() for I in right_ideal_acts(S, args.principal)]
    if args.json:
        return {"monoid": S.name, "principal_only": args.principal, "ideals": ideals}
    for I in ideals:
        out("{" + ",".join(I) + "}")


def cmd_cyclic(args, out):
    doc = load_catalog(args.file)
    S = doc.get("monoid", args.monoid)
    items = cyclic_acts(S)
    if args.json:
        return {
            "monoid": S.name,
            "congruences": [{"classes": list(L.elements), "act": "\n".join(act_text(L))} for _, L in items],
        }
    for _, L in items:
        out(f"{L.name}: classes " + " ".join(L.elements))


def _report_json(rep):
    cex = None
    if rep.counterexample is not None:
        Cp, f = rep.counterexample
        cex = {"target": "\n".join(act_text(Cp)), "f": f.labelled()}
    return {
        "class": rep.cls.label(),
        "verify_bound": rep.verify_bound,
        "verified": rep.verified,
        "checked": rep.checked,
        "certificates": len(rep.certificates),
        "counterexample": cex,
    }


def cmd_preenvelope(args, out):
    doc = load_catalog(args.file)
    A = doc.get("act", args.act)
    cls = ActClass.parse(args.cls, _class_loader)
    if args.minimize:
        found = find_min_preenvelope(A, cls, args.target_bound, args.verify_bound)
        if found is None:
            if args.json:
                return {"found": False, "method": "minimize"}
            out(f"no verified preenvelope with target size <= {args.target_bound}")
            return
        phi, rep = found
        product_info = None
    else:
        pp = product_preenvelope(A, cls, args.target_bound)
        red = reduce_via_pure_closure(pp.product, pp.phi, cap=args.cap)
        phi = red.phi
        rep = verify_preenvelope(phi, cls, args.verify_bound)
        product_info = {"coordinates": len(pp.product.coordinates), "product_size": pp.product.size}
    retraction = extract_retraction(phi)
    result = {
        "found": True,
        "method": "minimize" if args.minimize else "product",
        "target": "\n".join(act_text(phi.target)),
        "phi": phi.labelled(),
        "injective": phi.is_injective(),
        "product": product_info,
        "report": _report_json(rep),
        "retraction": _hom_json(retraction),
    }
    if args.json:
        return result
    if product_info:
        out(f"product of {product_info['coordinates']} coordinates ({product_info['product_size']} elements), "
            f"reduced to the pure closure of the image")
    for line in act_text(phi.target):
        out(line)
    out("phi: " + ", ".join(f"{k} -> {v}" for k, v in phi.labelled().items()))
    out(f"verified at bound {args.verify_bound}: {rep.verified} ({rep.checked} maps factored)")
    out(f"monic: {phi.is_injective()}")


def cmd_verify_preenvelope(args, out):
    doc = load_catalog(args.file)
    phi = doc.get("hom", args.hom)
    cls = ActClass.parse(args.cls, _class_loader)
    if args.envelope:
        env = verify_envelope(phi, cls, args.bound)
        result = {"envelope": env.verified, "report": _report_json(env.preenvelope), "non_automorphism": _hom_json(env.non_automorphism)}
        if args.json:
            return result
        out(f"preenvelope: {env.preenvelope.verified}; envelope: {env.verified}")
        if env.non_automorphism is not None:
            out("non-bijective g with g o phi = phi: " + str(env.non_automorphism.labelled()))
        return
    rep = verify_preenvelope(phi, cls, args.bound)
    if args.json:
        return _report_json(rep)
    out(f"preenvelope (bound {args.bound}): {rep.verified} ({rep.checked} maps factored)")
    if rep.counterexample is not None:
        Cp, f = rep.counterexample
        out(f"f = {f.labelled()} into {Cp.name} does not factor:")
        for line in act_text(Cp):
            out("  " + line)


def _lookup_monoid(args):
    if args.file:
        return load_catalog(args.file).get("monoid", args.monoid)
    for k in range(1, 5):
        for S in enumerate_monoids(k):
            if S.name == args.monoid:
                return S
    raise ActError(f"unknown monoid {args.monoid!r} (give --file or an enumerated name like M3_3)")


def cmd_enumerate(args, out):
    if args.what == "monoids":
        doc = document_for(monoids=enumerate_monoids(args.order))
    elif args.what == "acts":
        S = _lookup_monoid(args)
        doc = document_for(enumerate_acts(S, args.size), monoids=[S])
    else:
        if not args.file:
            raise ActError("extensions need --file")
        base = load_catalog(args.file).get("act", args.act)
        sub = SubactHandle(base, tuple(_elements(base, args.subact)))
        exts = enumerate_extensions(sub, args.extra)
        doc = document_for([e.act for e in exts], monoids=[base.monoid])
    text = serialize_catalog(doc)
    count = len(doc.acts) if args.what != "monoids" else len(doc.monoids)
    if args.json:
        return {"what": args.what, "count": count, "catalog": text}
    out(text.rstrip("\n"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="materialization cap for products")

    p = argparse.ArgumentParser(prog="actpure", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="parse and validate catalog files")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", parents=[common], help="solve a system in its act")
    s.add_argument("file")
    s.add_argument("--system", required=True)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("check-pure", parents=[common], help="decide purity of a subact")
    s.add_argument("file")
    s.add_argument("--act", required=True)
    s.add_argument("--subact", required=True)
    s.add_argument("--method", choices=("retraction", "diagram", "bounded"), default="retraction")
    s.add_argument("--vars", type=int, default=2)
    s.add_argument("--eqs", type=int, default=4)
    s.set_defaults(func=cmd_check_pure)

    s = sub.add_parser("pure-closure", parents=[common], help="pure subact generated by a seed")
    s.add_argument("file")
    s.add_argument("--act", required=True)
    s.add_argument("--seed", required=True)
    s.set_defaults(func=cmd_pure_closure)

    s = sub.add_parser("classify", parents=[common], help="membership in the built-in classes")
    s.add_argument("file")
    s.add_argument("--act", required=True)
    s.add_argument("--bound", type=int, default=None, help="size bound for abs-pure (default |A|+|S|)")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("ideals", parents=[common], help="right ideals of a monoid")
    s.add_argument("file")
    s.add_argument("--monoid", required=True)
    s.add_argument("--principal", action="store_true")
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("cyclic", parents=[common], help="right congruences and cyclic acts")
    s.add_argument("file")
    s.add_argument("--monoid", required=True)
    s.set_defaults(func=cmd_cyclic)

    s = sub.add_parser("preenvelope", parents=[common], help="construct a preenvelope")
    s.add_argument("file")
    s.add_argument("--act", required=True)
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--target-bound", type=int, required=True)
    s.add_argument("--verify-bound", type=int, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--product", action="store_true", help="product construction + pure closure (default)")
    mode.add_argument("--minimize", action="store_true", help="smallest verified target")
    s.set_defaults(func=cmd_preenvelope)

    s = sub.add_parser("verify-preenvelope", parents=[common], help="check the factoring property of a hom")
    s.add_argument("file")
    s.add_argument("--hom", required=True)
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--envelope", action="store_true")
    s.set_defaults(func=cmd_verify_preenvelope)

    s = sub.add_parser("enumerate", parents=[common], help="emit catalogs of small objects")
    esub = s.add_subparsers(dest="what", required=True)
    e = esub.add_parser("monoids", parents=[common])
    e.add_argument("--order", type=int, required=True)
    e = esub.add_parser("acts", parents=[common])
    e.add_argument("--monoid", required=True)
    e.add_argument("--size", type=int, required=True)
    e.add_argument("--file")
    e = esub.add_parser("extensions", parents=[common])
    e.add_argument("--file", required=False)
    e.add_argument("--act", required=True)
    e.add_argument("--subact", required=True)
    e.add_argument("--extra", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    args.json = getattr(args, "json", False)
    args.cap = getattr(args, "cap", DEFAULT_CAP)
    lines = []
    try:
        result = args.func(args, lines.append)
    except ResourceError as e:
        _fail(args, stdout, stderr, "resource", e)
        return EXIT_RESOURCE
    except (ActError, OSError, UnicodeDecodeError, ValueError) as e:
        _fail(args, stdout, stderr, "input", e)
        return EXIT_INPUT
    if args.json:
        stdout.write(json.dumps(result, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        stdout.write("".join(l + "\n" for l in lines))
    return EXIT_OK


def _fail(args, stdout, stderr, kind, err):
    if args.json:
        stdout.write(json.dumps({"error": kind, "message": str(err)}, ensure_ascii=False) + "\n")
    else:
        stderr.write(f"error: {err}\n")


if __name__ == "__main__":
    sys.exit(main())
