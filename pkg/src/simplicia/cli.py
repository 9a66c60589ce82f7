"""Command-line entry point.

Exit codes: 0 success, 1 a check answered No, 2 a check could not decide,
64 usage error, 65 unreadable input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path

from . import catalog
from .bistellar import DEFAULT_BUDGET, reduce_to_sphere, valid_moves
from .constructions import (
    GroupAction,
    Partition,
    barycentric_subdivision,
    cyclic_sphere,
    kuhnel_complex,
    kuhnel_partition,
    one_point_suspension,
    quotient,
    real_projective_space,
    stacked_sphere,
    standard_sphere,
    torus,
)
from .core import Complex, ComplexError, Status, emit, link, parse
from .homology import homology
from .invariants import (
    complementarity_check,
    dehn_sommerville_residuals,
    f_vector,
    kuhnel_4d_report,
    lbt_check,
    report,
    surface_vertex_bound,
    ubt_check,
    walkup_3d_bound,
    walkup_4d_bound,
    COMPLEMENTARITY_LIMIT,
)
from .isomorphism import are_isomorphic
from .recognition import (
    classify_surface,
    is_combinatorial_manifold,
    is_normal_pseudomanifold,
    is_pseudomanifold,
    orientable,
)

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> Complex:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from e
    try:
        K = parse(text)
    except (ComplexError, ValueError) as e:
        raise InputError(f"{path}: {e}") from e
    return K if K.name else K.renamed(Path(path).stem)


def _status_code(statuses) -> int:
    statuses = list(statuses)
    if Status.NO in statuses:
        return EXIT_NO
    if Status.UNKNOWN in statuses:
        return EXIT_UNKNOWN
    return EXIT_OK


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Status):
        return str(x)
    if hasattr(x, "numerator") and not isinstance(x, int):
        return str(x)
    return x


def _verdict_dict(v, K: Complex | None = None) -> dict:
    out = {"status": str(v.status)}
    if v.detail:
        out["detail"] = v.detail
    cert = v.certificate
    if cert is not None and not hasattr(cert, "moves"):
        out["certificate"] = cert
    return out


# ---------------------------------------------------------------- commands


def cmd_invariants(a):
    K = _read(a.file)
    return {"invariants": report(K)}, EXIT_OK


def cmd_verify(a):
    K = _read(a.file)
    res: dict = {}
    statuses = []
    if not K.is_pure:
        res["pure"] = False
        return res, EXIT_NO
    pm = is_pseudomanifold(K)
    res["pseudomanifold"] = _verdict_dict(pm)
    statuses.append(pm.status)
    if pm:
        nm = is_normal_pseudomanifold(K)
        res["normal"] = _verdict_dict(nm)
        statuses.append(nm.status)
        ori = orientable(K)
        res["orientable"] = bool(ori)
        man = is_combinatorial_manifold(K, effort=a.budget, seed=a.seed)
        res["manifold"] = _verdict_dict(man)
        statuses.append(man.status)
        if K.dim == 2 and man:
            try:
                res["surface"] = classify_surface(K).tag
            except ComplexError:
                pass
    return res, _status_code(statuses)


def cmd_homology(a):
    K = _read(a.file)
    H = homology(K)
    return {"homology": H.to_dict()}, EXIT_OK


def cmd_link(a):
    K = _read(a.file)
    try:
        s = K.simplex(a.vertices)
        L = link(K, s)
    except (ComplexError, KeyError) as e:
        raise UsageError(str(e)) from e
    return {"link": emit(L, f"lk({''.join(a.vertices)})").rstrip("\n").splitlines()}, EXIT_OK


def cmd_iso(a):
    K, L = _read(a.file1), _read(a.file2)
    v = are_isomorphic(K, L)
    res = {"isomorphic": str(v.status)}
    if v:
        res["mapping"] = {K.token(x): L.token(y) for x, y in sorted(v.certificate.items())}
    else:
        res["reason"] = v.certificate
    return res, _status_code([v.status])


def _int(x, what):
    try:
        return int(x)
    except ValueError as e:
        raise UsageError(f"{what} must be an integer, got {x!r}") from e


def _need(args, k, usage):
    if len(args) != k:
        raise UsageError(f"usage: construct {usage}")


def _parse_perm_file(path: str, K: Complex) -> GroupAction:
    gens = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from e
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        g = {}
        for cyc in re.findall(r"\(([^)]*)\)", line):
            toks = cyc.replace(",", " ").split()
            try:
                ids = [K.vertex_of(t) for t in toks]
            except (ComplexError, KeyError) as e:
                raise InputError(f"{path}: {e}") from e
            for i, v in enumerate(ids):
                g[v] = ids[(i + 1) % len(ids)]
        if not g:
            raise InputError(f"{path}: expected cycles like (1 2)(3 4)")
        gens.append(g)
    return GroupAction(gens)


def _construct(name: str, args: list) -> Complex:
    if name == "sphere":
        _need(args, 1, "sphere d")
        return standard_sphere(_int(args[0], "d"))
    if name == "cyclic":
        _need(args, 2, "cyclic d n")
        return cyclic_sphere(_int(args[0], "d"), _int(args[1], "n"))
    if name == "kuhnel":
        _need(args, 2, "kuhnel d n")
        return kuhnel_complex(_int(args[0], "d"), _int(args[1], "n"))
    if name == "kuhnel-p":
        _need(args, 2, "kuhnel-p d p1,p2,...")
        return kuhnel_partition(_int(args[0], "d"), Partition.parse(args[1]))
    if name == "stacked":
        _need(args, 3, "stacked d n seed")
        return stacked_sphere(_int(args[1], "n"), _int(args[0], "d"), _int(args[2], "seed"))
    if name == "rp":
        _need(args, 1, "rp d")
        return real_projective_space(_int(args[0], "d"))
    if name == "torus":
        _need(args, 1, "torus d")
        return torus(_int(args[0], "d"))
    if name == "barycentric":
        _need(args, 1, "barycentric FILE")
        return barycentric_subdivision(_read(args[0]))
    if name == "suspend":
        _need(args, 2, "suspend FILE u")
        K = _read(args[0])
        return one_point_suspension(K, args[1])
    if name == "quotient":
        _need(args, 2, "quotient FILE PERM-FILE")
        K = _read(args[0])
        return quotient(K, _parse_perm_file(args[1], K))
    raise UsageError(f"unknown construction {name!r}")


def cmd_construct(a):
    try:
        K = _construct(a.name, a.args)
    except (ValueError, ComplexError) as e:
        if isinstance(e, ComplexError) and a.name in ("quotient", "suspend"):
            raise UsageError(str(e)) from e
        raise UsageError(str(e)) from e
    text = emit(K)
    if a.output:
        Path(a.output).write_text(text, encoding="utf-8")
        return {"wrote": a.output, "n": K.n, "f": list(f_vector(K).counts)}, EXIT_OK
    return {"complex": text.rstrip("\n").splitlines(), "n": K.n, "f": list(f_vector(K).counts)}, EXIT_OK


def cmd_catalog(a):
    if a.action == "list":
        return {"entries": {n: catalog.get(n).title for n in catalog.names()}}, EXIT_OK
    if a.action == "emit":
        if not a.name:
            raise UsageError("usage: catalog emit NAME")
        try:
            e = catalog.get(a.name)
        except KeyError as err:
            raise UsageError(str(err)) from err
        text = emit(e.complex, e.name)
        if a.output:
            Path(a.output).write_text(text, encoding="utf-8")
            return {"wrote": a.output}, EXIT_OK
        return {"complex": text.rstrip("\n").splitlines()}, EXIT_OK
    names = [a.name] if a.name else catalog.names()
    out = []
    statuses = []
    for n in names:
        try:
            r = catalog.verify(n, manifold=not a.quick, seed=a.seed)
        except KeyError as err:
            raise UsageError(str(err)) from err
        out.append(r.to_dict())
        if r.failed:
            statuses.append(Status.NO)
        elif any(v is None for v in r.checks.values()):
            statuses.append(Status.UNKNOWN)
    return {"verify": out}, _status_code(statuses)


def cmd_reduce(a):
    K = _read(a.file)
    v = reduce_to_sphere(K, budget=a.budget or DEFAULT_BUDGET, seed=a.seed)
    res = {"status": str(v.status), "detail": v.detail}
    if v:
        res["moves"] = len(v.certificate)
        if a.trace:
            res["trace"] = [json.loads(s) for s in v.certificate.json_lines().splitlines()]
    return res, _status_code([v.status])


def cmd_moves(a):
    K = _read(a.file)
    try:
        ms = valid_moves(K)
    except ComplexError as e:
        return {"error": str(e)}, EXIT_NO
    return {"moves": [{"a": K.tokens(m.a), "b": K.tokens(m.b), "k": m.k,
                       "dim_a": len(m.a) - 1, "dim_b": len(m.b) - 1} for m in ms]}, EXIT_OK


def cmd_enumerate(a):
    from . import enumerate as en

    try:
        if a.kind == "surfaces":
            if a.n is None:
                raise UsageError("usage: enumerate surfaces -n N")
            rep = en.surfaces(a.n, connected=a.connected, allow_gated=a.allow_gated,
                              jobs=a.jobs, order_seed=a.order_seed)
        elif a.kind == "d-plus-3":
            if a.d is None:
                raise UsageError("usage: enumerate d-plus-3 -d D")
            rep = en.pseudomanifolds_d_plus_3(a.d, order_seed=a.order_seed)
        else:
            rep = en.neighbourly_3spheres_8(order_seed=a.order_seed)
    except ValueError as e:
        raise UsageError(str(e)) from e
    res = rep.to_dict()
    if a.emit:
        import hashlib

        d = Path(a.emit)
        d.mkdir(parents=True, exist_ok=True)
        files = []
        for K in rep.complexes:
            text = emit(K)
            h = hashlib.sha1(text.encode()).hexdigest()[:12]
            p = d / f"{h}.cplx"
            p.write_text(text, encoding="utf-8")
            files.append(p.name)
        res["files"] = files
    return res, EXIT_OK


def cmd_bounds(a):
    K = _read(a.file)
    if not K.is_pure:
        raise InputError(f"{a.file}: bounds need a pure complex")
    f = f_vector(K)
    d = f.dim
    res: dict = {"f": list(f.counts)}
    failed = []
    ds = dehn_sommerville_residuals(K)
    res["dehn_sommerville"] = ds.values
    failed += ds.failed
    if d >= 1 and f[0] >= d + 2:
        lb = lbt_check(K)
        res["lbt_slack"] = lb.values["slack"]
        failed += lb.failed
        ub = ubt_check(K)
        res["ubt_slack"] = ub.values["slack"]
        res["ubt_failed"] = ub.failed
    if K.n <= COMPLEMENTARITY_LIMIT:
        res["complementarity"] = complementarity_check(K)
    if d == 2:
        res["surface_vertex_bound"] = surface_vertex_bound(f.chi)
    if d == 3:
        w = walkup_3d_bound(K)
        res["walkup_3d"] = w.values
    if d == 4:
        res["kuhnel_4d"] = kuhnel_4d_report(K).values
        res["walkup_4d"] = walkup_4d_bound(K).values
    res["failed"] = failed
    return res, EXIT_NO if ds.failed else EXIT_OK


# ---------------------------------------------------------------- rendering


def _render_text(payload: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_render_text(v, indent + 1))
        elif isinstance(v, list) and v and all(isinstance(x, str) for x in v):
            lines.append(f"{pad}{k}:")
            lines.extend(f"{pad}  {x}" for x in v)
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            lines.append(f"{pad}{k}:")
            for x in v:
                lines.append(_render_text(x, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="simplicia", description="Combinatorial manifolds: invariants, recognition, catalog.")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None, help="worker cap (default: $SIMPLICIA_JOBS or 1)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("invariants", cmd_invariants, "f/h-vectors, chi, neighbourliness").add_argument("file")
    sp = add("verify", cmd_verify, "pseudomanifold, normal, manifold verdicts")
    sp.add_argument("file")
    sp.add_argument("--budget", type=int, default=None)
    add("homology", cmd_homology, "integral homology").add_argument("file")
    sp = add("link", cmd_link, "link of a face")
    sp.add_argument("file")
    sp.add_argument("vertices", nargs="+")
    sp = add("iso", cmd_iso, "isomorphism test")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp = add("construct", cmd_construct, "build a complex")
    sp.add_argument("name")
    sp.add_argument("args", nargs="*")
    sp.add_argument("-o", "--output")
    sp = add("catalog", cmd_catalog, "list, emit or verify catalog entries")
    sp.add_argument("action", choices=["list", "emit", "verify"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("-o", "--output")
    sp.add_argument("--quick", action="store_true", help="skip manifold recognition in verify")
    sp = add("reduce", cmd_reduce, "flip reduction towards the boundary of a simplex")
    sp.add_argument("file")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--trace", action="store_true")
    add("moves", cmd_moves, "valid bistellar moves").add_argument("file")
    sp = add("enumerate", cmd_enumerate, "exhaustive generation")
    sp.add_argument("kind", choices=["surfaces", "d-plus-3", "neighbourly8"])
    sp.add_argument("-n", type=int)
    sp.add_argument("-d", type=int)
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--allow-gated", action="store_true")
    sp.add_argument("--emit", metavar="DIR")
    sp.add_argument("--order-seed", type=int, default=None)
    add("bounds", cmd_bounds, "Dehn-Sommerville residuals and bound slacks").add_argument("file")
    return p


def run(argv=None, out=None) -> tuple[int, dict]:
    """Execute a command; returns (exit code, report)."""
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    parser = build_parser()
    report_: dict = {"command": argv, "status": None}
    try:
        a = parser.parse_args(argv)
        if not getattr(a, "command", None):
            raise UsageError("missing command")
        if a.jobs is None:
            env = os.environ.get("SIMPLICIA_JOBS")
            a.jobs = int(env) if env and env.isdigit() else None
        results, code = a.func(a)
    except UsageError as e:
        results, code = {"error": str(e)}, EXIT_USAGE
        a = None
    except InputError as e:
        results, code = {"error": str(e)}, EXIT_PARSE
        a = None
    report_["results"] = _jsonable(results)
    report_["status"] = {0: "ok", 1: "no", 2: "unknown", 64: "usage", 65: "parse"}[code]
    report_["exit"] = code
    report_["elapsed"] = round(time.perf_counter() - t0, 3)
    as_json = a.json if a is not None else "--json" in argv
    if as_json:
        out.write(json.dumps(report_, indent=2) + "\n")
    else:
        stream = out if code in (EXIT_OK, EXIT_NO, EXIT_UNKNOWN) else sys.stderr
        stream.write(_render_text(report_["results"]) + "\n")
        if code in (EXIT_USAGE,):
            stream.write(parser.format_usage())
    return code, report_


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
