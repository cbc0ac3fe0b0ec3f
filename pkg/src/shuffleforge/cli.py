"""Thin command-line client for the shuffleforge service.

Every subcommand builds a request and sends it to the FastAPI app, either
in-process (the default) or to a running server given by --server or the
SHUFFLEFORGE_SERVER environment variable.  The JSON report goes to stdout and
is byte-stable for a fixed argv and seed; timings go to stderr.

Exit codes: 0 on success, 1 when a verification verdict is negative, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .suites import DEFAULT_SEED, SUITES

SEED_ENV = "SHUFFLEFORGE_SEED"
SERVER_ENV = "SHUFFLEFORGE_SERVER"


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, DEFAULT_SEED))


def _client(args):
    server = getattr(args, "server", None) or os.environ.get(SERVER_ENV)
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _element_arg(text: str):
    """Generator-spec string, @file with element JSON, or '-' for stdin."""
    if text == "-":
        return json.loads(sys.stdin.read())
    if text.startswith("@"):
        with open(text[1:], "r") as fh:
            return json.load(fh)
    return text


def _emit(args, payload: dict, ok: bool = True) -> int:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


def _post(args, path: str, payload: dict) -> dict:
    with _client(args) as client:
        resp = client.post(path, json=payload)
        if resp.status_code != 200:
            detail = resp.json().get("detail", resp.text)
            print(f"error: {detail}", file=sys.stderr)
            raise SystemExit(1)
        return resp.json()


def _get(args, path: str, params: dict) -> dict:
    with _client(args) as client:
        resp = client.get(path, params=params)
        if resp.status_code != 200:
            detail = resp.json().get("detail", resp.text)
            print(f"error: {detail}", file=sys.stderr)
            raise SystemExit(1)
        return resp.json()


def cmd_gen(args):
    data = _post(args, "/element/generate", {"n": args.n, "spec": args.spec})
    return _emit(args, data)


def cmd_star(args):
    data = _post(
        args,
        "/element/star",
        {"n": args.n, "a": _element_arg(args.a), "b": _element_arg(args.b)},
    )
    return _emit(args, data)


def cmd_commute(args):
    data = _post(
        args,
        "/element/commute",
        {
            "n": args.n,
            "a": _element_arg(args.a),
            "b": _element_arg(args.b),
            "materialize": args.materialize,
        },
    )
    return _emit(args, data, ok=data["zero"])


def cmd_wheel(args):
    data = _post(args, "/element/wheel", {"n": args.n, "element": _element_arg(args.element)})
    return _emit(args, data, ok=data["ok"])


def cmd_membership(args):
    data = _post(
        args,
        "/element/membership",
        {
            "n": args.n,
            "element": _element_arg(args.element),
            "mode": args.mode,
            "seed": args.seed,
        },
    )
    return _emit(args, data, ok=data["ok"])


def cmd_limits(args):
    payload = {
        "n": args.n,
        "element": _element_arg(args.element),
        "op": args.op,
    }
    if args.interval:
        a, b = args.interval.split(",")
        payload["interval"] = (int(a), int(b))
    if args.lvec:
        payload["lvec"] = [int(x) for x in args.lvec.split(",")]
    data = _post(args, "/element/limits", payload)
    return _emit(args, data)


def cmd_gordon(args):
    if args.gordon_cmd == "phi-L":
        data = _post(
            args,
            "/gordon/phi-l",
            {"n": args.n, "element": _element_arg(args.element), "intervals": args.intervals},
        )
    elif args.gordon_cmd == "phi-lambda":
        shape = [int(x) for x in args.shape.split(",")]
        data = _post(
            args,
            "/gordon/phi-lambda",
            {"n": args.n, "element": _element_arg(args.element), "shape": shape},
        )
    elif args.gordon_cmd == "QL":
        data = _post(args, "/gordon/ql", {"n": args.n, "intervals": args.intervals})
    else:
        data = _get(args, "/gordon/partitions", {"n": args.n, "deg": args.deg})
    return _emit(args, data)


def cmd_dims(args):
    data = _get(args, "/dims", {"n": args.n, "k": args.k})
    return _emit(args, data)


def cmd_rank(args):
    data = _post(args, "/rank", {"n": args.n, "k": args.basis, "seed": args.seed})
    return _emit(args, data, ok=data["ok"])


def cmd_serre(args):
    payload = {"n": args.n, "i": args.i, "modes": [int(x) for x in args.modes.split(",")]}
    if args.j is not None:
        payload["j"] = args.j
    data = _post(args, "/serre", payload)
    return _emit(args, data, ok=data["zero"])


def cmd_verify_all(args):
    t0 = time.monotonic()
    payload = {
        "suite": args.suite,
        "seed": args.seed,
        "long": args.long,
    }
    if args.term_limit:
        payload["term_limit"] = args.term_limit
    data = _post(args, "/verify", payload)
    report = data["report"]
    for name, secs in data["timings"].items():
        print(f"{name}: {secs:.3f}s", file=sys.stderr)
    print(f"total: {time.monotonic() - t0:.3f}s", file=sys.stderr)
    return _emit(args, report, ok=report["ok"])


def cmd_serve(args):
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="shuffleforge",
        description="exact shuffle-algebra computations and verification suites",
    )
    p.add_argument("--server", help="base URL of a running service (default: in-process)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_default=3):
        sp.add_argument("--n", type=int, default=n_default, help="number of colors")
        sp.add_argument("--out", help="write the JSON result to a file")

    sp = sub.add_parser("gen", help="build a named element")
    sp.add_argument("spec", help='generator spec, e.g. "F(1;mu1)", "e(0,2)", "K(2)"')
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("star", help="star product of two elements")
    sp.add_argument("a")
    sp.add_argument("b")
    common(sp)
    sp.set_defaults(func=cmd_star)

    sp = sub.add_parser("commute", help="exact commutation verdict")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--materialize", action="store_true", help="also expand the commutator")
    sp.add_argument("--symbolic-s", action="store_true", help="parameters stay symbolic (always on)")
    common(sp)
    sp.set_defaults(func=cmd_commute)

    sp = sub.add_parser("wheel", help="wheel-condition check")
    sp.add_argument("element")
    common(sp)
    sp.set_defaults(func=cmd_wheel)

    sp = sub.add_parser("membership", help="interval-scaling membership test")
    sp.add_argument("element")
    sp.add_argument("--symbolic-s", action="store_true", help="parameters stay symbolic (always on)")
    sp.add_argument(
        "--mode",
        choices=["exact", "fastpath"],
        default="exact",
        help="fastpath adds an advisory random-evaluation pre-check",
    )
    sp.add_argument("--seed", type=int, default=_default_seed())
    common(sp)
    sp.set_defaults(func=cmd_membership)

    sp = sub.add_parser("limits", help="scaling limit of an element")
    sp.add_argument("element")
    sp.add_argument("--op", choices=["inf", "zero"], default="inf")
    sp.add_argument("--interval", help="a,b — use the interval degree vector")
    sp.add_argument("--lvec", help="comma-separated scaling vector")
    common(sp)
    sp.set_defaults(func=cmd_limits)

    sp = sub.add_parser("gordon", help="partition specialization maps")
    gsub = sp.add_subparsers(dest="gordon_cmd", required=True)
    g1 = gsub.add_parser("phi-L", help="interval-partition specialization of the numerator")
    g1.add_argument("element")
    g1.add_argument("--intervals", required=True, help='e.g. "0-1;2-2"')
    common(g1)
    g1.set_defaults(func=cmd_gordon)
    g2 = gsub.add_parser("phi-lambda", help="diagram specialization of the fraction")
    g2.add_argument("element")
    g2.add_argument("--shape", required=True, help='e.g. "2,1"')
    common(g2)
    g2.set_defaults(func=cmd_gordon)
    g3 = gsub.add_parser("QL", help="vanishing-factor product of a partition")
    g3.add_argument("--intervals", required=True)
    common(g3)
    g3.set_defaults(func=cmd_gordon)
    g4 = gsub.add_parser("partitions", help="enumerate partition classes of a degree")
    g4.add_argument("--deg", required=True, help='comma-separated degree vector, e.g. "1,1,1"')
    common(g4)
    g4.set_defaults(func=cmd_gordon)

    sp = sub.add_parser("dims", help="graded dimension of the free polynomial model")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("rank", help="evaluation rank of a product basis")
    sp.add_argument("--basis", type=int, required=True, help="total degree k")
    sp.add_argument("--seed", type=int, default=_default_seed())
    common(sp)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("serre", help="Serre-relation image at given modes")
    sp.add_argument("--i", type=int, default=1)
    sp.add_argument("--j", type=int, default=None)
    sp.add_argument("--modes", default="0,0,0")
    common(sp)
    sp.set_defaults(func=cmd_serre)

    sp = sub.add_parser("verify-all", help="run a named verification suite")
    sp.add_argument("--suite", default="desk", choices=sorted(SUITES))
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--long", action="store_true", help="include the long-running checks")
    sp.add_argument("--term-limit", type=int, default=None)
    sp.add_argument("--n", type=int, default=3, help="accepted for symmetry; suites fix their own n")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify_all)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8723)
    sp.set_defaults(func=cmd_serve)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
