"""Command-line front end.

Every subcommand emits a deterministic JSON (or CSV) document: field order
is fixed by construction, sets are sorted before emission, and nothing
time- or host-dependent is written.  Exit codes: 0 on success, 1 when a
verification fails or an input is rejected, 2 for usage errors.

`springer verify --all` and `selftest` fan out over a process pool when
LIECHAR_WORKERS is set above 1; results are merged by case key, so the
document does not depend on the worker count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import re
import sys
from fractions import Fraction

from .dl_spectra import (
    character_table_dixon,
    classical_table_oracle,
    dl_jordan_reduction_check,
    nonsingular_characters,
    springer_check,
    tables_match,
)
from .endoscopy import (
    endoscopic_from_kappa,
    enumerate_split_elliptic,
    estimate_diagram_check,
)
from .exact_math import IntMatrix
from .finite_lie import (
    build_finite_group,
    is_strongly_regular,
    tori_and_regularity,
)
from .galois_tori import TwistedTorus, component_group_pi0, sln_kappa_group, tn_pairing
from .padic import (
    DiagQuadForm,
    TruncatedMatrix,
    hasse_invariant,
    hilbert_symbol,
    quasi_log_bijection_check,
    relevant_places,
    topological_jordan,
)
from .root_datum import build_root_datum

_TYPE_RE = re.compile(r"^([A-G])(\d+)$")


def _parse_type(s):
    m = _TYPE_RE.match(s)
    if not m:
        raise ValueError(f"bad type {s!r}; expected e.g. A3, C2, E6")
    return m.group(1), int(m.group(2))


def _parse_fraction_list(s):
    return tuple(Fraction(str(x)) for x in json.loads(s))


def _cyc_str(v):
    """Stable text form of an exact cyclotomic value."""
    red = list(v.reduced())
    if not any(red[1:] if red else []):
        return str(red[0]) if red else "0"
    return f"cyc{v.n}[" + ",".join(str(c) for c in red) + "]"


def _emit(doc, args, rows=None, header=None):
    """Serialize to the chosen format and write to stdout or --out."""
    if args.format == "csv":
        if rows is None:
            print("csv format is not available for this subcommand", file=sys.stderr)
            raise SystemExit(2)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# endoscopy


def _cmd_endoscopy(args):
    series, rank = _parse_type(args.type)
    datum = build_root_datum(series, rank, args.isogeny)
    if args.endo_cmd == "enumerate":
        doc = [t.serialize() for t in enumerate_split_elliptic(datum)]
        _emit(doc, args)
        return 0
    if args.endo_cmd == "from-kappa":
        kappa = _parse_fraction_list(args.kappa)
        t = endoscopic_from_kappa(datum, kappa)
        _emit(t.serialize(), args)
        return 0
    doc = estimate_diagram_check(datum)
    _emit(doc, args)
    return 0


# ---------------------------------------------------------------------------
# twisted tori


def _tn_data(args):
    rows = json.loads(args.frobenius)
    return component_group_pi0(TwistedTorus(len(rows), IntMatrix(rows)))


def _cmd_tori(args):
    if args.tori_cmd == "h1":
        data = _tn_data(args)
        doc = {
            "rank": data.torus.rank,
            "frobenius_order": data.torus.order,
            "h1": data.h1.serialize(),
            "invariant_factors": list(data.invariant_factors),
        }
        _emit(doc, args)
        return 0
    if args.tori_cmd == "pair":
        data = _tn_data(args)
        inv = tuple(json.loads(args.inv))
        kappa = tuple(json.loads(args.kappa))
        val = tn_pairing(data, inv, kappa)
        doc = {
            "inv": list(inv),
            "kappa": list(kappa),
            "value": _cyc_str(val),
            "conductor": val.n,
        }
        _emit(doc, args)
        return 0
    degrees = tuple(json.loads(args.degrees))
    group, witnesses = sln_kappa_group(args.n, args.m, degrees)
    doc = {
        "n": args.n,
        "m": args.m,
        "degrees": list(degrees),
        "group": group.serialize(),
        "witnesses": [
            {"twist": list(t), "class": list(c)} for t, c in witnesses
        ],
    }
    _emit(doc, args)
    return 0


# ---------------------------------------------------------------------------
# springer verify


def _springer_theta_case(task):
    """One (torus, theta) cell of the sweep: every strongly regular point,
    the chosen unipotent classes.  Module-level so a worker pool can map it."""
    kind, q, tag, exps, all_u = task
    g = build_finite_group(kind, q)
    torus = next(t for t in tori_and_regularity(g) if t.tag == tag)
    theta = next(th for th in nonsingular_characters(torus) if th.exps == exps)
    sr = [t for t in torus.lie_points() if is_strongly_regular(g, t)]
    classes = set()
    ok = True
    for t in sr:
        rep = springer_check(g, torus, theta, t, all_unipotent=all_u)
        ok = ok and rep["pass"]
        classes.update(c["unipotent_class"] for c in rep["cases"])
    return {
        "torus": tag,
        "theta": list(exps),
        "strongly_regular_points": len(sr),
        "unipotent_classes": sorted(classes),
        "pass": ok,
    }


def _worker_count():
    try:
        return max(1, int(os.environ.get("LIECHAR_WORKERS", "1")))
    except ValueError:
        return 1


def _cmd_springer(args):
    g = build_finite_group(args.group, args.q)
    tasks = []
    for torus in tori_and_regularity(g):
        for theta in nonsingular_characters(torus):
            tasks.append((args.group, args.q, torus.tag, theta.exps, args.all))
    workers = _worker_count()
    if workers > 1 and len(tasks) > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            cells = pool.map(_springer_theta_case, tasks)
    else:
        cells = [_springer_theta_case(t) for t in tasks]
    cells.sort(key=lambda c: (c["torus"], c["theta"]))
    doc = {
        "group": args.group,
        "q": args.q,
        "all_unipotent": bool(args.all),
        "cells": cells,
        "pass": all(c["pass"] for c in cells),
    }
    _emit(doc, args)
    return 0 if doc["pass"] else 1


# ---------------------------------------------------------------------------
# character tables


def _cmd_chartable(args):
    if args.method == "dixon":
        table = character_table_dixon(build_finite_group(args.group, args.q))
    else:
        table = classical_table_oracle(args.group, args.q)
    cd = table.classes
    order = sorted(
        range(len(table.rows)),
        key=lambda i: (
            table.degrees[i],
            tuple(_cyc_str(v) for v in table.rows[i].values),
        ),
    )
    header = ["degree"] + [
        f"class{ci}_size{cd.sizes[ci]}" for ci in range(cd.count)
    ]
    rows = [
        [str(table.degrees[i])] + [_cyc_str(v) for v in table.rows[i].values]
        for i in order
    ]
    doc = {
        "group": args.group,
        "q": args.q,
        "method": args.method,
        "order": cd.group_order,
        "class_sizes": list(cd.sizes),
        "rows": [
            {"degree": table.degrees[i], "values": [_cyc_str(v) for v in table.rows[i].values]}
            for i in order
        ],
    }
    _emit(doc, args, rows=rows, header=header)
    return 0


# ---------------------------------------------------------------------------
# p-adic commands


def _cmd_tjd(args):
    rows = json.loads(args.matrix)
    try:
        m = TruncatedMatrix(len(rows), args.p, args.k, rows)
        delta, u = topological_jordan(m)
    except (ValueError, ZeroDivisionError) as e:
        _emit({"error": str(e)}, args)
        return 1
    ident = TruncatedMatrix.identity(m.n, m.p, m.k)
    r = 1
    acc = delta
    while acc != ident:
        acc = acc.mul(delta)
        r += 1
    doc = {
        "p": args.p,
        "k": args.k,
        "delta": [list(row) for row in delta.rows],
        "u": [list(row) for row in u.rows],
        "order_r": r,
    }
    _emit(doc, args)
    return 0


def _cmd_hilbert(args):
    place = args.place if args.place == "inf" else int(args.place)
    try:
        sym = hilbert_symbol(Fraction(args.a), Fraction(args.b), place)
    except (ValueError, ZeroDivisionError) as e:
        _emit({"error": str(e)}, args)
        return 1
    doc = {"a": args.a, "b": args.b, "place": args.place, "symbol": sym}
    _emit(doc, args)
    return 0


# ---------------------------------------------------------------------------
# selftest battery


def _check_endoscopy_sp4():
    d = build_root_datum("C", 2, "sc")
    ts = enumerate_split_elliptic(d)
    types = sorted((t.ord_s, t.h_type) for t in ts)
    return len(ts) == 2 and types[0][0] == 1 and types[1] == (2, "A1+A1")


def _check_endoscopy_g2():
    ts = enumerate_split_elliptic(build_root_datum("G", 2, "sc"))
    return sorted(t.ord_s for t in ts) == [1, 2, 3]


def _check_estimate_e6():
    rep = estimate_diagram_check(build_root_datum("E", 6, "sc"))
    large = rep["large_nonspecial_orbits"]
    return (
        len(large) == 1
        and large[0]["ord_s"] == 2
        and rep["center_order"] == 3
    )


def _check_sln_closure():
    for n, m, degs in [(4, 2, (1, 1)), (4, 2, (2,)), (6, 3, (2,)), (6, 2, (1, 1, 1))]:
        sln_kappa_group(n, m, degs)
    return True


def _check_tn_norm_one():
    tor = TwistedTorus(1, IntMatrix([[-1]]))
    return list(component_group_pi0(tor).invariant_factors) == [2]


def _check_tn_pairing_roots(rng):
    size = rng.choice([2, 3, 4])
    perm = list(range(size))
    rng.shuffle(perm)
    rows = [[1 if perm[i] == j else 0 for j in range(size)] for i in range(size)]
    data = component_group_pi0(TwistedTorus(size, IntMatrix(rows)))
    d = data.invariant_factors
    if not d:
        return True
    inv = tuple(rng.randrange(di) for di in d)
    kap = tuple(rng.randrange(di) for di in d)
    val = tn_pairing(data, inv, kap)
    n = val.n
    acc = val
    for _ in range(n - 1):
        acc = acc * val
    return acc == 1


def _check_qlog():
    return quasi_log_bijection_check("SL2", 3, 1)["pass"]


def _check_tjd_random(rng):
    for _ in range(10):
        while True:
            m = TruncatedMatrix(
                2, 3, 3, [[rng.randrange(27) for _ in range(2)] for _ in range(2)]
            )
            if m.is_invertible():
                break
        delta, u = topological_jordan(m)
        if delta.mul(u) != m:
            return False
    return True


def _check_reciprocity(rng):
    for _ in range(50):
        a = Fraction(rng.randrange(-30, 31) or 1, rng.randrange(1, 20))
        b = Fraction(rng.randrange(-30, 31) or 1, rng.randrange(1, 20))
        prod = 1
        for v in relevant_places(a, b):
            prod *= hilbert_symbol(a, b, v)
        if prod != 1:
            return False
    return hasse_invariant(DiagQuadForm([-1, -1]), 2) == -1


def _check_dixon_sl2_3():
    g = build_finite_group("SL2", 3)
    return tables_match(character_table_dixon(g), classical_table_oracle("SL2", 3))


def _check_springer_sl2_3():
    cells = [
        _springer_theta_case(("SL2", 3, torus.tag, theta.exps, True))
        for torus in tori_and_regularity(build_finite_group("SL2", 3))
        for theta in nonsingular_characters(torus)
    ]
    return bool(cells) and all(c["pass"] for c in cells)


def _check_dl_jordan_gl2_3():
    g = build_finite_group("GL2", 3)
    ok = True
    for torus in tori_and_regularity(g):
        for theta in nonsingular_characters(torus):
            for gamma in g.elements[:: max(1, len(g.elements) // 8)]:
                rep = dl_jordan_reduction_check(g, torus, theta, gamma)
                ok = ok and rep["pass"]
    return ok


def _cmd_selftest(args):
    rng = random.Random(args.seed)
    battery = [
        ("endoscopy_sp4", _check_endoscopy_sp4),
        ("endoscopy_g2", _check_endoscopy_g2),
        ("estimate_e6", _check_estimate_e6),
        ("sln_group_closure", _check_sln_closure),
        ("tn_norm_one_torus", _check_tn_norm_one),
        ("tn_pairing_roots", lambda: _check_tn_pairing_roots(rng)),
        ("qlog_sl2_3_1", _check_qlog),
        ("tjd_random", lambda: _check_tjd_random(rng)),
        ("hilbert_reciprocity", lambda: _check_reciprocity(rng)),
        ("dixon_vs_classical_sl2_3", _check_dixon_sl2_3),
        ("springer_sl2_3", _check_springer_sl2_3),
        ("dl_jordan_gl2_3", _check_dl_jordan_gl2_3),
    ]
    checks = []
    for name, fn in battery:
        try:
            ok = bool(fn())
            detail = ""
        except Exception as e:  # a crash is a failure, not an abort
            ok = False
            detail = f"{type(e).__name__}: {e}"
        checks.append({"name": name, "pass": ok, "detail": detail})
    doc = {
        "seed": args.seed,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
    _emit(doc, args)
    return 0 if doc["pass"] else 1


# ---------------------------------------------------------------------------
# parser


def _add_common(p, default_format="json"):
    p.add_argument("--format", choices=["json", "csv"], default=default_format)
    p.add_argument("--out", default=None, help="write the document to a file")


def build_parser():
    ap = argparse.ArgumentParser(prog="liechar")
    sub = ap.add_subparsers(dest="cmd", required=True)

    endo = sub.add_parser("endoscopy", help="split endoscopic data")
    esub = endo.add_subparsers(dest="endo_cmd", required=True)
    for name in ("enumerate", "from-kappa", "estimate"):
        p = esub.add_parser(name)
        p.add_argument("--type", required=True, help="Cartan type, e.g. C2")
        p.add_argument("--isogeny", default="sc", choices=["sc", "ad"])
        if name == "from-kappa":
            p.add_argument("--kappa", required=True, help='JSON list, e.g. \'["1/2", 0]\'')
        _add_common(p)
        p.set_defaults(fn=_cmd_endoscopy)

    tori = sub.add_parser("tori", help="twisted tori and kappa groups")
    tsub = tori.add_subparsers(dest="tori_cmd", required=True)
    p = tsub.add_parser("h1")
    p.add_argument("--frobenius", required=True, help="JSON integer matrix")
    _add_common(p)
    p.set_defaults(fn=_cmd_tori)
    p = tsub.add_parser("pair")
    p.add_argument("--frobenius", required=True)
    p.add_argument("--inv", required=True, help="JSON list of h1 coordinates")
    p.add_argument("--kappa", required=True, help="JSON list of pi0 coordinates")
    _add_common(p)
    p.set_defaults(fn=_cmd_tori)
    p = tsub.add_parser("sln-group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--degrees", required=True, help="JSON list of block degrees")
    _add_common(p)
    p.set_defaults(fn=_cmd_tori)

    spr = sub.add_parser("springer", help="verify the trace identity")
    ssub = spr.add_subparsers(dest="springer_cmd", required=True)
    p = ssub.add_parser("verify")
    p.add_argument("--group", required=True, choices=["SL2", "GL2"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--all", action="store_true", help="every unipotent class")
    _add_common(p)
    p.set_defaults(fn=_cmd_springer)

    p = sub.add_parser("chartable", help="exact character table")
    p.add_argument("--group", required=True, choices=["SL2", "GL2"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", default="dixon", choices=["dixon", "classical"])
    _add_common(p, default_format="csv")
    p.set_defaults(fn=_cmd_chartable)

    p = sub.add_parser("tjd", help="topological Jordan decomposition")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--matrix", required=True, help="JSON integer matrix")
    _add_common(p)
    p.set_defaults(fn=_cmd_tjd)

    p = sub.add_parser("hilbert", help="local Hilbert symbol")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--place", required=True, help="a prime or 'inf'")
    _add_common(p)
    p.set_defaults(fn=_cmd_hilbert)

    p = sub.add_parser("selftest", help="run the invariant battery")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(fn=_cmd_selftest)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
