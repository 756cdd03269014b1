"""Command line interface: ``dualcox <subcommand> ...``.

For type I2 the ``--rank`` option carries the dihedral parameter m.
Exit status is 1 when a verification fails or stays undecided.
"""
import argparse
import csv
import json
import os
import sys

from . import classify as cl
from . import lattice as lat
from .group import (GroupError, SignedPermutation, coxeter_group, element_from_word,
                    from_signed_permutation)
from .hurwitz import Factorization, default_cap, is_hurwitz_transitive, last_slot_coverage
from .rootsys import RootSystemError
from .verify import SCOPES, THEOREMS, verify


def _ints(text):
    text = text.strip().strip("[]()")
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _group(args):
    return coxeter_group(args.type, args.rank)


def _emit(obj, args, text=None):
    if args.json or text is None:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


def _element(group, args):
    given = [x for x in (args.element, args.word, args.signed) if x]
    if len(given) != 1:
        raise GroupError("give exactly one of --element, --word, --signed")
    if args.element:
        return group.from_simple_images(_ints(args.element))
    if args.word:
        return element_from_word(group, _ints(args.word))
    return from_signed_permutation(group, SignedPermutation.parse(args.signed))


def cmd_roots(args):
    group = _group(args)
    data = group.system.to_json()
    text = f"{group.name}: {group.n_roots} roots, simple ids {data['simple']}"
    _emit(data, args, text)
    return 0


def cmd_orbit(args):
    group = _group(args)
    word = _ints(args.word)
    f = Factorization.of(group, word)
    w = f.product
    if not f.is_reduced():
        raise GroupError(f"word of length {len(word)} is not reduced (reflection length {group.length(w.perm)})")
    tr = is_hurwitz_transitive(w, args.cap)
    out = {
        "product_len": group.length(w.perm),
        "red_count": tr.red_count,
        "orbit_size": tr.orbit_size,
        "transitive": tr.transitive,
        "coverage": None,
    }
    status = 0 if tr.transitive is not None else 1
    if args.coverage:
        cov = last_slot_coverage(f, args.cap)
        out["coverage"] = sorted(cov.covered)
        if cov.indeterminate:
            status = 1
    print(json.dumps(out, sort_keys=True))
    return status


def cmd_classify(args):
    group = _group(args)
    w = _element(group, args)
    rec = cl.classify(w, args.cap).to_json()
    print(json.dumps(rec, indent=2, sort_keys=True))
    return 0 if rec["transitive"] is not None else 1


def cmd_lattice(args):
    group = _group(args)
    roots = _ints(args.roots)
    if args.op == "closure":
        sub = lat.subsystem_closure(group, roots)
        out = {"roots": sorted(sub.roots), "size": len(sub), "rank": sub.rank}
    elif args.op == "index":
        sub = lat.subsystem_closure(group, roots).roots
        sup = lat.subsystem_closure(group, _ints(args.sup)).roots if args.sup else range(group.n_roots)
        idx = lat.lattice_index(group, sorted(sub), sorted(sup))
        out = {"index": None if idx == lat.INFINITE else idx, "infinite": idx == lat.INFINITE}
    else:
        out = {"connection_index": lat.connection_index(group, roots),
               "generates_root_lattice": lat.generates_full_lattice(group, roots)}
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_dn(args):
    res = cl.dn_maximal_parabolic_intersections(args.rank, args.max_witnesses)
    print(json.dumps(res.to_json(), indent=2, sort_keys=True))
    return 0


def default_scope(type_label, rank):
    t = str(type_label).upper()
    if t == "E" and rank >= 7:
        return "sampled"
    if (t, rank) in (("D", 6), ("E", 6), ("H", 4)):
        return "class-reps"
    return "exhaustive"


def write_rows(rows, path):
    keys = sorted({k for r in rows for k in r})
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=keys)
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})


def cmd_verify(args):
    if args.theorem not in ("table", "d4") and args.rank is None:
        raise GroupError(f"theorem {args.theorem} needs --rank")
    needs_type = args.theorem not in ("table", "d4", "7.1")
    if needs_type and not args.type:
        raise GroupError(f"theorem {args.theorem} needs --type")
    scope = args.scope or (default_scope(args.type, args.rank) if needs_type else "exhaustive")
    report = verify(args.theorem, args.type, args.rank, scope, args.cap, args.threads,
                    sample_size=args.samples, seed=args.seed)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        g = report.group or {}
        stem = f"theorem-{args.theorem}"
        if needs_type or args.theorem == "7.1":
            stem += f"-{g.get('type', '')}{g.get('rank', '')}"
        stem = os.path.join(args.out, stem)
        with open(stem + ".json", "w") as fh:
            fh.write(report.dumps(timing=args.timing) + "\n")
        if report.rows:
            write_rows(report.rows, stem + ".csv")
            from .plotting import report_figure
            report_figure(report, stem + ".png")
    if args.json:
        print(report.dumps(timing=args.timing))
    else:
        print(report.summary())
        for f in report.failures[:10]:
            print("  failure:", json.dumps(f, sort_keys=True))
    return 0 if report.clean else 1


def build_parser():
    # global options are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker processes for verify")
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS,
                        help="Hurwitz orbit cap (default: $HURWITZ_CAP or %d)" % default_cap())
    p = argparse.ArgumentParser(prog="dualcox", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def group_args(sp, required=True):
        sp.add_argument("--type", required=required, help="A, B, D, E, F, H or I2")
        sp.add_argument("--rank", type=int, required=required, help="rank (m for I2)")

    sp = sub.add_parser(parents=[common], name="roots", help="dump a root system")
    group_args(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser(parents=[common], name="orbit", help="Hurwitz orbit of a reduced reflection word")
    group_args(sp)
    sp.add_argument("--word", required=True, help="comma-separated positive-root ids")
    sp.add_argument("--coverage", action="store_true", help="also report last-slot coverage")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser(parents=[common], name="classify", help="classify one element")
    group_args(sp)
    sp.add_argument("--element", help="root ids of the images of the simple roots")
    sp.add_argument("--word", help="product of reflections, comma-separated positive-root ids")
    sp.add_argument("--signed", help="signed permutation in one-line form (types B, D)")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser(parents=[common], name="lattice", help="root subsystem and lattice computations")
    group_args(sp)
    sp.add_argument("--roots", required=True, help="comma-separated root ids")
    sp.add_argument("--sup", help="roots generating the ambient subsystem for --op index")
    sp.add_argument("--op", choices=("closure", "index", "cindex"), default="closure")
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser(parents=[common], name="dn-intersections", help="pairwise intersections of maximal parabolics of D_n")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--max-witnesses", type=int, default=None)
    sp.set_defaults(func=cmd_dn)

    sp = sub.add_parser(parents=[common], name="verify", help="batch verification")
    group_args(sp, required=False)
    sp.add_argument("--theorem", required=True, choices=THEOREMS)
    sp.add_argument("--scope", choices=SCOPES, default=None)
    sp.add_argument("--samples", type=int, default=200, help="sample size for --scope sampled")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="directory for JSON, CSV and PNG output")
    sp.add_argument("--timing", action="store_true", help="include elapsed_ms in JSON output")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in (("json", False), ("threads", 1), ("cap", None)):
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return args.func(args)
    except (GroupError, RootSystemError, lat.LatticeError, ValueError) as exc:
        print(f"dualcox: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
