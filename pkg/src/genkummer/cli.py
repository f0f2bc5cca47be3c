"""Command line front-end.

Exit codes: 0 success, 1 verify-paper mismatch, 2 usage or input error.
"""

import argparse
import json
import sys

from . import enumerator as en
from . import lattice as lat
from .groups import CATALOG, GroupError, build_group, group_info

LATTICE_ACTIONS = (
    "signature",
    "discriminant",
    "disc-group",
    "twist",
    "sum",
    "shortvec",
    "isometric",
    "hyperbolic",
    "morrison",
    "consistency",
)

# number of Gram files each action takes (None = one or more)
_ARITY = {"sum": None, "isometric": 2}


class UsageError(Exception):
    pass


def _emit(out, fmt, data, text):
    if fmt == "json":
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


# --- enumerate --------------------------------------------------------------


def format_solution_line(rec):
    return (
        f"{rec['formal_sum']}\trank_sum={rec['rank_sum']}"
        f"\tn_total={rec['n_total']}\tpicard_lower_bound={rec['picard_lower_bound']}"
    )


def parse_solution_line(line):
    """Inverse of ``format_solution_line``."""
    head, *fields = line.split("\t")
    rec = {"formal_sum": head}
    for f in fields:
        key, value = f.split("=")
        rec[key] = int(value)
    rec["counts"] = list(en.SingularityConfiguration.parse(head).counts)
    return rec


def run_enumerate(group, constraints="full", fmt="text", out=None, split_classes=False, workers=1):
    out = out or sys.stdout
    G = build_group(group)
    sols = en.enumerate_configurations(G, constraints, split_classes=split_classes, workers=workers)
    records = [en.solution_record(G, s) for s in sols]
    data = {
        "group": group,
        "constraints": sorted(en._parse_constraints(constraints)),
        "solutions": records,
    }
    _emit(out, fmt, data, "\n".join(format_solution_line(r) for r in records) or "(none)")
    return data


# --- lattice ----------------------------------------------------------------


def _disc_group_text(factors):
    return " x ".join(f"Z/{d}" for d in factors) if factors else "0"


def run_lattice(action, lattices, opts, fmt="text", out=None):
    out = out or sys.stdout
    L = lattices[0]
    if action == "signature":
        inertia = L.inertia()
        _emit(out, fmt, {"inertia": list(inertia)}, str(inertia))
    elif action == "discriminant":
        d, even = lat.discriminant(L), lat.is_even(L)
        _emit(out, fmt, {"discriminant": d, "even": even},
              f"discriminant: {d}\neven: {str(even).lower()}")
    elif action == "disc-group":
        factors = lat.discriminant_group(L)
        _emit(out, fmt, {"invariant_factors": factors}, _disc_group_text(factors))
    elif action == "twist":
        if opts.n is None:
            raise UsageError("twist needs --n")
        T = lat.twist(L, opts.n)
        _emit(out, fmt, T.to_json(), lat.format_gram(T))
    elif action == "sum":
        S = lat.direct_sum(*lattices)
        _emit(out, fmt, S.to_json(), lat.format_gram(S))
    elif action == "shortvec":
        vecs = lat.short_vectors(L, opts.bound)
        _emit(
            out, fmt,
            {"bound": opts.bound, "vectors": [{"vector": list(v), "norm": n} for v, n in vecs]},
            "\n".join(f"{n}\t{list(v)}" for v, n in vecs) or "(none)",
        )
    elif action == "isometric":
        res = lat.is_isometric_definite(lattices[0], lattices[1])
        cert = res.certificate.tolist() if res.isometric else None
        text = "isometric\n" + "\n".join(" ".join(map(str, r)) for r in cert) if cert else "not isometric"
        _emit(out, fmt, {"isometric": res.isometric, "certificate": cert}, text)
    elif action == "hyperbolic":
        split = lat.find_hyperbolic_summand(L, opts.bound)
        if split is None:
            _emit(out, fmt, {"found": False, "search_bound": opts.bound},
                  f"not found within bound {opts.bound}")
        else:
            comp = split.complement
            _emit(
                out, fmt,
                {"found": True, "search_bound": opts.bound, "e": list(split.e),
                 "f": list(split.f), "complement": comp.to_json()},
                f"found e={list(split.e)} f={list(split.f)}\ncomplement:\n" + lat.format_gram(comp),
            )
    elif action == "morrison":
        cls = lat.morrison_classify(L, opts.bound)
        text = cls.describe()
        if not cls.k3_signature:
            text += f"\nwarning: inertia {L.inertia()} has fewer than two positive directions"
        _emit(out, fmt, cls.to_json(), text)
    elif action == "consistency":
        if opts.surface is None or opts.rho is None:
            raise UsageError("consistency needs --surface and --rho")
        ok = lat.transcendental_consistency(L, opts.surface, opts.rho)
        _emit(out, fmt, {"consistent": ok, "surface": opts.surface, "rho": opts.rho},
              str(ok).lower())
    else:
        raise UsageError(f"unknown lattice action {action!r}")


# --- group / verify ---------------------------------------------------------


def format_group_info(info):
    lines = [
        f"group {info['group']} (order {info['order']})",
        "class sizes: " + ", ".join(map(str, info["class_sizes"])),
        "stabilizer classes:",
        "  kind  m   sing_type  conjugates",
    ]
    for s in info["stabilizer_classes"]:
        lines.append(f"  {s['kind']:<5} {s['m']:<3} {s['sing_type']:<10} {s['conjugates']}")
    return "\n".join(lines)


def run_group_info(name, fmt="text", out=None):
    out = out or sys.stdout
    info = group_info(build_group(name))
    _emit(out, fmt, info, format_group_info(info))
    return info


def run_verify_paper(fmt="text", out=None, lefschetz=True, split_classes=False, workers=1):
    out = out or sys.stdout
    constraints = en.FULL if lefschetz else {"euler", "rank"}
    report = en.verify_proposition3(constraints, split_classes=split_classes, workers=workers)
    lines = []
    for row in report["groups"]:
        got = [s["formal_sum"] for s in row["solutions"]]
        status = "match" if row["match"] and row["picard_ok"] else "MISMATCH"
        bounds = sorted({s["picard_lower_bound"] for s in row["solutions"]})
        lines.append(f"{row['group']:<4} {status:<8} {' | '.join(got) or '(none)'}"
                     f"  picard_lower_bound={','.join(map(str, bounds))}")
        if not row["match"]:
            extra = sorted(set(got) - set(row["expected"]))
            missing = sorted(set(row["expected"]) - set(got))
            lines.append(f"     extra: {extra}  missing: {missing}")
    lines.append("all groups match" if report["ok"] else "verification FAILED")
    _emit(out, fmt, report, "\n".join(lines))
    return 0 if report["ok"] else 1


# --- argument parsing -------------------------------------------------------


def build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(
        prog="genkummer",
        description="Singularity configurations of generalized Kummer quotients and lattice tools.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("enumerate", parents=[fmt], help="admissible configurations on A/G")
    pe.add_argument("--group", required=True, choices=CATALOG)
    pe.add_argument("--constraints", default="full", choices=("full", "euler+rank", "euler"))
    pe.add_argument("--split-classes", action="store_true",
                    help="spread each type over all of its subgroup classes")
    pe.add_argument("--workers", type=int, default=1)

    pl = sub.add_parser("lattice", parents=[fmt], help="integral lattice operations")
    pl.add_argument("action", choices=LATTICE_ACTIONS)
    pl.add_argument("files", nargs="+", help="Gram matrix files")
    pl.add_argument("--n", type=int)
    pl.add_argument("--bound", type=int, default=lat.DEFAULT_SEARCH_BOUND)
    pl.add_argument("--surface", choices=("abelian", "k3"))
    pl.add_argument("--rho", type=int)

    pg = sub.add_parser("group", help="catalog group inspection")
    gsub = pg.add_subparsers(dest="group_command", required=True)
    pgi = gsub.add_parser("info", parents=[fmt])
    pgi.add_argument("name", choices=CATALOG)

    pv = sub.add_parser("verify-paper", parents=[fmt],
                        help="reproduce the classification of quotient singularities")
    pv.add_argument("--no-lefschetz", action="store_true", help=argparse.SUPPRESS)
    pv.add_argument("--split-classes", action="store_true", help=argparse.SUPPRESS)
    pv.add_argument("--workers", type=int, default=1)
    return p


def _load(paths):
    out = []
    for path in paths:
        try:
            out.append(lat.read_gram(path))
        except lat.GramFormatError as exc:
            raise UsageError(f"{path}: {exc}") from None
        except OSError as exc:
            raise UsageError(f"{path}: {exc.strerror}") from None
    return out


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "enumerate":
            run_enumerate(args.group, args.constraints, args.format, out,
                          args.split_classes, args.workers)
            return 0
        if args.command == "lattice":
            arity = _ARITY.get(args.action, 1)
            if arity is not None and len(args.files) != arity:
                raise UsageError(f"{args.action} takes {arity} Gram file(s)")
            run_lattice(args.action, _load(args.files), args, args.format, out)
            return 0
        if args.command == "group":
            run_group_info(args.name, args.format, out)
            return 0
        if args.command == "verify-paper":
            return run_verify_paper(args.format, out, not args.no_lefschetz,
                                    args.split_classes, args.workers)
    except UsageError as exc:
        print(f"genkummer: error: {exc}", file=sys.stderr)
        return 2
    except lat.IsometryUndecidable as exc:
        print(f"genkummer: error: IsometryUndecidable: {exc}", file=sys.stderr)
        if args.command == "lattice" and args.action == "isometric":
            report = lat.compare_invariants(*_load(args.files))
            print(json.dumps(report, sort_keys=True), file=sys.stderr)
        return 2
    except (lat.LatticeError, GroupError, ValueError) as exc:
        print(f"genkummer: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
