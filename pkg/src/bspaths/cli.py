"""Command-line front end.

Exit codes: 0 success, 1 domain error (or failed checks in ``verify``),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import hereditary, ktheory, lattice, odometer
from .errors import BSError, WrongCase
from .hereditary import EventuallyPeriodicSeq
from .verify import DEFAULT_GRID, parse_grid, render, verify_suite
from .words import BSParams, path, to_form_r


class UsageError(Exception):
    pass


def _params(args) -> BSParams:
    if args.c is None or args.d is None:
        raise UsageError(f"{args.cmd} needs --c and --d")
    return BSParams.of(args.c, args.d, args.negative)


def _digits(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _fmt(seq) -> str:
    return ",".join(map(str, seq))


def cmd_normalize(args):
    x = path(args.word, _params(args))
    return x.to_json(), str(x)


def cmd_formr(args):
    rho = to_form_r(path(args.word, _params(args)))
    return {"lead": rho.lead, "letters": list(rho.letters), "word": str(rho)}, str(rho)


def cmd_meets(args):
    p = _params(args)
    ok = lattice.meets(path(args.w1, p), path(args.w2, p))
    return {"meets": ok}, str(ok).lower()


def cmd_join(args):
    p = _params(args)
    a, b = path(args.w1, p), path(args.w2, p)
    res = lattice.join(a, b)
    if args.depth is None:
        return res.to_json(), "disjoint" if res.disjoint else str(res.value)
    # cross-check against the brute-force search
    found = sorted(lattice.join_oracle(a, b, args.depth), key=lambda x: (x.letters, x.tail))
    out = {**res.to_json(), "oracle": [x.to_json() for x in found]}
    text = ("disjoint" if res.disjoint else str(res.value)) + "  oracle: " + (", ".join(map(str, found)) or "none")
    return out, text


def cmd_qlgen(args):
    p = _params(args)
    t = lattice.GroupElementPair(path(args.w1, p), path(args.w2, p))
    I, n, J = lattice.reduce_group_pair(t)
    out = {"pair": t.to_json(), "reduced": {"I": list(I), "n": n, "J": list(J)}}
    try:
        g = lattice.quasi_lattice_generator(t)
    except WrongCase:
        ws = sorted(lattice.lfe_witness(t), key=lambda x: (x.letters, x.tail))
        out["witnesses"] = [w.to_json() for w in ws]
        return out, "witnesses: " + ", ".join(str(w) for w in ws)
    out["generator"] = g.to_json()
    return out, str(g)


def cmd_exhaustive(args):
    p = _params(args)
    ok = lattice.exhaustive([path(w, p) for w in args.words])
    return {"exhaustive": ok}, str(ok).lower()


def cmd_phi(args):
    p = _params(args)
    j, r = odometer.phi(_digits(args.seq), p)
    out = {"phi": _fmt(j), "r": list(r.entries), "exponents": list(r.exponents(p.c))}
    return out, f"{_fmt(j)}  r={_fmt(r.entries)}"


def cmd_orbit(args):
    p = _params(args)
    out = odometer.b_action(_digits(args.seq), args.n, p)
    return {"result": _fmt(out)}, _fmt(out)


def cmd_member(args):
    p = _params(args) if args.c is not None else None
    try:
        obj = json.loads(args.desc)
    except json.JSONDecodeError as exc:
        raise UsageError(f"descriptor is not valid JSON: {exc}") from None
    D = hereditary.descriptor_from_json(obj, p)
    beta = path(args.word, hereditary.descriptor_params(D))
    ok = hereditary.member(D, beta)
    return {"member": ok, "descriptor": hereditary.descriptor_to_json(D)}, str(ok).lower()


def cmd_classify_sigma(args):
    out = hereditary.classify_sigma(EventuallyPeriodicSeq.parse(args.seq), _params(args))
    return out, out.get("note", f"chain of length {out.get('chain_length')}")


def cmd_chain(args):
    s, m = hereditary.chain_bs2(EventuallyPeriodicSeq.parse(args.seq), _params(args))
    return {"s": s, "m": m}, f"s={s} m={m}"


def cmd_witness(args):
    p = _params(args)
    g = hereditary.separation_witness(path(args.w1, p), path(args.w2, p))
    return g.to_json(), str(g)


def presentation(p: BSParams) -> dict:
    c, d = p.c, p.d
    rel3 = f"S_b^{d} S_a S_b^{c} = S_a" if p.negative else f"S_a S_b^{c} = S_b^{d} S_a"
    rels = [
        "S_a and S_b are isometries",
        "S_b is a unitary",
        rel3,
        f"sum_(i=0)^({d - 1}) S_b^i S_a S_a^* S_b^-i = 1",
    ]
    out = {"generators": ["S_a", "S_b"], "relations": rels}
    if p.negative:
        out["note"] = "relation (2) is redundant"
    return out


def cmd_present(args):
    out = presentation(_params(args))
    lines = [f"({n}) {r}" for n, r in enumerate(out["relations"], 1)]
    if "note" in out:
        lines.append(out["note"])
    return out, "\n".join(lines)


def cmd_ktheory(args):
    k = ktheory.k_groups(_params(args))
    return k.to_json(), f"K0 = {k.K0}\nK1 = {k.K1}\n[1] = {k.identity_class}"


def cmd_verify(args):
    try:
        grid = parse_grid(args.grid)
    except ValueError as exc:
        raise UsageError(f"bad grid: {exc}") from None
    results = verify_suite(grid, args.seed)
    failed = sum(not r.passed for r in results)
    out = {
        "seed": args.seed,
        "results": [
            {"name": r.name, "params": r.label, "passed": r.passed, "detail": r.detail} for r in results
        ],
        "passed": len(results) - failed,
        "total": len(results),
    }
    return out, render(results), (1 if failed else 0)


COMMANDS = {
    "normalize": (cmd_normalize, ["word"]),
    "formr": (cmd_formr, ["word"]),
    "meets": (cmd_meets, ["w1", "w2"]),
    "join": (cmd_join, ["w1", "w2"]),
    "qlgen": (cmd_qlgen, ["w1", "w2"]),
    "exhaustive": (cmd_exhaustive, ["words+"]),
    "phi": (cmd_phi, ["seq"]),
    "orbit": (cmd_orbit, ["seq", "n:int"]),
    "member": (cmd_member, ["desc", "word"]),
    "classify-sigma": (cmd_classify_sigma, ["seq"]),
    "chain": (cmd_chain, ["seq"]),
    "witness": (cmd_witness, ["w1", "w2"]),
    "present": (cmd_present, []),
    "ktheory": (cmd_ktheory, []),
    "verify": (cmd_verify, []),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--c", type=int, help="exponent c in a b^c = b^(+-d) a")
    common.add_argument("--d", type=int, help="exponent d")
    common.add_argument("--negative", action="store_true", help="use a b^c = b^-d a")
    common.add_argument("--output", choices=["json", "text"], default="json")
    common.add_argument("--depth", type=int, default=None, help="search depth where relevant")

    parser = argparse.ArgumentParser(prog="bspaths", description="Baumslag-Solitar path monoid tools")
    sub = parser.add_subparsers(dest="cmd", required=True)
    for name, (_, positionals) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common])
        for argspec in positionals:
            if argspec.endswith("+"):
                sp.add_argument(argspec[:-1], nargs="+")
            elif ":" in argspec:
                nm, _ = argspec.split(":")
                sp.add_argument(nm, type=int)
            else:
                sp.add_argument(argspec)
        if name == "verify":
            sp.add_argument("--grid", default=DEFAULT_GRID, help='e.g. "3,2;1,2;2,2n"')
            sp.add_argument("--seed", type=int, default=0)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.c is not None and args.c < 1 or args.d is not None and args.d < 1:
        print("error: --c and --d must be positive", file=err)
        return 2
    fn, _ = COMMANDS[args.cmd]
    try:
        res = fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except BSError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=err)
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid input: {exc}", file=err)
        return 2
    payload, text, *code = res
    if args.output == "json":
        print(json.dumps(payload, sort_keys=False), file=out)
    else:
        print(text, file=out)
    return code[0] if code else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
