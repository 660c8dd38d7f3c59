"""Command-line front end.

Exit codes: 0 ok, 1 check failure, 2 configuration error, 3 size cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import tempfile
from pathlib import Path

from .algebra import algebra_to_json, diagram_algebra
from .diagrams import Diagram, Flavor, Params, compose, enumerate_diagrams, render, validate_flavor
from .errors import DAWError, FlavorViolation
from .exact.rings import RingSpec
from .groups import FiniteGroup, SemidirectSpec, direct_power
from .homology import TorResult, compare, group_homology, tor
from .suites import BLOCKS, SuiteConfig, run_suite

EDGE_RE = re.compile(r"^([LR]\d+)-([LR]\d+)(?:\[(\d+)\])?$", re.IGNORECASE)


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


class Cache:
    """JSON artifacts keyed by a content hash of the full job config."""

    def __init__(self, root: str | None):
        self.root = Path(root) if root else None

    def path(self, config: dict) -> Path | None:
        if self.root is None:
            return None
        digest = hashlib.sha256(canonical(config).encode()).hexdigest()
        return self.root / f"{config['command']}-{digest[:32]}.json"

    def get(self, config: dict):
        p = self.path(config)
        if p is None or not p.exists():
            return None
        obj = json.loads(p.read_text(encoding="utf-8"))
        return obj["result"] if obj.get("config") == config else None

    def put(self, config: dict, result) -> None:
        p = self.path(config)
        if p is not None:
            write_atomic(p, canonical({"config": config, "result": result}) + "\n")


# ---------------------------------------------------------------------------
# argument parsing


def parse_diagram(text: str, n: int, group: FiniteGroup) -> Diagram:
    """``"L1-R2 L2-R1"``; labels as group indices, ``"L1-R2[1]"``."""
    edges = []
    for tok in text.replace(",", " ").split():
        m = EDGE_RE.match(tok)
        if not m:
            raise DAWError(f"cannot parse edge {tok!r}; use e.g. L1-R2 or L1-R2[1]")
        a, b, lab = m.groups()
        edge = (a.upper(), b.upper()) if lab is None else (a.upper(), b.upper(), int(lab))
        if lab is not None and not 0 <= int(lab) < group.order:
            raise DAWError(f"label {lab} out of range for {group}")
        edges.append(edge)
    return Diagram.from_edges(n, edges, group)


def _common(p: argparse.ArgumentParser, flavor: bool = True) -> None:
    if flavor:
        p.add_argument("--flavor", default="rookbrauer", help="rookbrauer | rook | brauer | motzkin | tl")
    p.add_argument("--n", type=int, help="number of nodes per side")
    p.add_argument("--group", default="trivial", help="trivial, C2, C2xC3 or a JSON group spec")
    p.add_argument("--delta", default="1", help="loop parameter, parsed in the ring")
    p.add_argument("--epsilon", default="1", help="contractible-component parameter")
    p.add_argument("--ring", default="Q", help="Z, Q, F<p> or F<p>^2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cache-dir", default=os.environ.get("DAW_CACHE_DIR"))
    p.add_argument("--out", help="write JSON here instead of a table on stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="daw", description="Exact homology of generalized diagram algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list the basis diagrams of a flavor")
    _common(p)

    p = sub.add_parser("compose", help="compose two diagrams given as edge lists")
    _common(p)
    p.add_argument("x", help='edges of the left factor, e.g. "L1-R2 L2-R1"')
    p.add_argument("y", help="edges of the right factor")

    p = sub.add_parser("algebra", help="algebra operations")
    asub = p.add_subparsers(dest="action", required=True)
    pe = asub.add_parser("export", help="structure constants and augmentation as JSON")
    _common(pe)

    p = sub.add_parser("tor", help="Tor_q(1, 1) through --qmax")
    _common(p)
    p.add_argument("--qmax", type=int, default=3)
    p.add_argument("--mode", choices=("field", "integer"))
    p.add_argument("--method", choices=("auto", "bar", "resolution"), default="auto")
    p.add_argument(
        "--target", choices=("diagram", "group", "power", "semidirect"), default="diagram",
        help="diagram algebra, k[G], k[G^n] or k[G^n ⋊ Σ_n]",
    )

    p = sub.add_parser("compare", help="compare two Tor result JSON files")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run a theorem-verification suite")
    p.add_argument("suite", choices=tuple(BLOCKS))
    _common(p, flavor=False)
    p.add_argument("--qmax", type=int, default=3)
    return parser


def _ring(args) -> RingSpec:
    try:
        return RingSpec.parse(args.ring)
    except ValueError as exc:
        raise DAWError(str(exc)) from exc


def _require_n(args) -> int:
    if args.n is None or args.n < 0:
        raise DAWError("--n is required and must be non-negative")
    return args.n


def _params(args, ring: RingSpec) -> Params:
    return Params.make(ring, args.delta, args.epsilon)


# ---------------------------------------------------------------------------
# commands


def cmd_enumerate(args):
    n, f, g = _require_n(args), Flavor.parse(args.flavor), FiniteGroup.parse(args.group)
    diagrams = enumerate_diagrams(n, f, g)
    result = {"flavor": f.value, "n": n, "group": g.to_json(), "count": len(diagrams), "diagrams": [d.to_json(f) for d in diagrams]}
    lines = [f"{len(diagrams)} {f.value} diagrams, n = {n}, G = {g}"] + [f"  {d}" for d in diagrams]
    return result, "\n".join(lines), 0


def cmd_compose(args):
    n, f, g = _require_n(args), Flavor.parse(args.flavor), FiniteGroup.parse(args.group)
    ring = _ring(args)
    x, y = parse_diagram(args.x, n, g), parse_diagram(args.y, n, g)
    for d in (x, y):
        if not validate_flavor(d, f):
            raise FlavorViolation(f"{d} is not a {f.value} diagram")
    scalar, d = compose(x, y, f, _params(args, ring))
    result = {"scalar": ring.format(scalar), "diagram": d.to_json(f)}
    text = f"{ring.format(scalar)} * {d}\n{render(d)}"
    return result, text, 0


def cmd_algebra_export(args, cache: Cache):
    n, f, g = _require_n(args), Flavor.parse(args.flavor), FiniteGroup.parse(args.group)
    ring = _ring(args)
    params = _params(args, ring)
    config = {"command": "algebra-export", "flavor": f.value, "n": n, "group": g.to_json(), **params.key()}
    result = cache.get(config)
    if result is None:
        alg, chi = diagram_algebra(n, f, g, params)
        result = algebra_to_json(alg, chi)
        cache.put(config, result)
    return result, f"{f.value}_{n} over {ring}: dimension {len(result['basis'])}", 0


def cmd_tor(args, cache: Cache):
    ring = _ring(args)
    g = FiniteGroup.parse(args.group)
    if args.qmax < 0:
        raise DAWError("--qmax must be non-negative")
    config = {"command": "tor", "target": args.target, "group": g.to_json(), "ring": ring.to_json(),
              "qmax": args.qmax, "mode": args.mode, "method": args.method}
    if args.target == "diagram":
        f = Flavor.parse(args.flavor)
        config.update(flavor=f.value, n=_require_n(args), **_params(args, ring).key())
    elif args.target in ("power", "semidirect"):
        config["n"] = _require_n(args)
    result = cache.get(config)
    if result is None:
        if args.target == "diagram":
            alg, chi = diagram_algebra(args.n, f, g, _params(args, ring))
            res = tor(alg, chi, args.qmax, mode=args.mode, method=args.method)
        else:
            spec = g if args.target == "group" else direct_power(g, args.n) if args.target == "power" else SemidirectSpec(g, args.n)
            if args.mode == "integer":
                from .groups import group_algebra

                alg, chi = group_algebra(spec, ring)
                res = tor(alg, chi, args.qmax, mode="integer", method=args.method)
            else:
                res = group_homology(spec, ring, args.qmax, method=args.method)
        result = res.to_json()
        cache.put(config, result)
    res = TorResult.from_json(result)
    lines = [f"Tor over {res.ring} ({res.mode}, {res.method})"]
    for q in range(res.qmax + 1):
        lines.append(f"  q={q}: {res.degree(q)}")
    lines += [f"  note: {s}" for s in res.notes]
    return result, "\n".join(lines), 0


def cmd_compare(args):
    try:
        left = TorResult.from_json(json.loads(Path(args.left).read_text(encoding="utf-8")))
        right = TorResult.from_json(json.loads(Path(args.right).read_text(encoding="utf-8")))
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise DAWError(f"cannot read Tor results: {exc}") from exc
    rep = compare(left, right)
    lines = [f"equal through q = {rep.equal_through}"]
    lines += [f"  q={d['q']}: {d['left']} vs {d['right']}{'' if d['equal'] else '  DIFFER'}" for d in rep.details]
    return rep.to_json(), "\n".join(lines), 0


def cmd_verify(args):
    cfg = SuiteConfig(
        n=args.n,
        group=FiniteGroup.parse(args.group),
        ring=_ring(args),
        delta=args.delta,
        eps=args.epsilon,
        qmax=args.qmax,
        seed=args.seed,
    )
    if cfg.n is None and (args.group, args.ring, args.delta, args.epsilon) != ("trivial", "Q", "1", "1"):
        raise DAWError("size and parameter overrides need --n")
    report = run_suite(args.suite, cfg)
    return report.to_json(), report.table(), 0 if report.status == "pass" else 1


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache = Cache(getattr(args, "cache_dir", None))
    try:
        if args.command == "enumerate":
            result, text, code = cmd_enumerate(args)
        elif args.command == "compose":
            result, text, code = cmd_compose(args)
        elif args.command == "algebra":
            result, text, code = cmd_algebra_export(args, cache)
        elif args.command == "tor":
            result, text, code = cmd_tor(args, cache)
        elif args.command == "compare":
            result, text, code = cmd_compare(args)
        else:
            result, text, code = cmd_verify(args)
    except DAWError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        write_atomic(Path(args.out), canonical(result) + "\n")
    else:
        print(text)
    return code


def main() -> None:
    sys.exit(run())
