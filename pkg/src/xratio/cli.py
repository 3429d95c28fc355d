"""Batch verification jobs: one JSON job in, one JSON report out.

Exit status is 0 when the job passes, 1 when it fails or a module rejects
its input, and 2 when the job itself cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import cocycles as co
from . import hyperbolic as hy
from . import measures as me
from . import mobius as mo
from .circle import canonical_phi, format_point, point
from .fixtures import Lcg64, random_cocycle, random_config, random_crossratio, random_measure, random_mobius
from .formats import (
    FormatError,
    cochain_from_json,
    cochain_to_json,
    config_from_json,
    graph_from_json,
    measure_from_json,
    measure_to_json,
    render,
    table_from_json,
    table_to_json,
)

MAX_WITNESSES = 20


class JobError(Exception):
    """The job file is malformed (exit status 2)."""


class Job:
    def __init__(self, spec: dict, base_dir: Path, seed=None):
        if not isinstance(spec, dict) or "cmd" not in spec:
            raise JobError("job must be a JSON object with a 'cmd' field")
        self.spec = spec
        self.cmd = spec["cmd"]
        self.base_dir = base_dir
        self.seed = seed if seed is not None else spec.get("seed")
        self._rng = None

    def get(self, key, default=None):
        return self.spec.get(key, default)

    def require(self, key):
        if key not in self.spec:
            raise JobError(f"'{self.cmd}' needs the field '{key}'")
        return self.spec[key]

    def rng(self) -> Lcg64:
        if self.seed is None:
            raise JobError("randomized fixtures need a seed (--seed or 'seed' in the job)")
        if self._rng is None:
            self._rng = Lcg64(int(self.seed))
        return self._rng

    def load(self, key):
        """Inline JSON object, or a path (relative to the job file) to one."""
        v = self.require(key)
        if isinstance(v, str):
            path = self.base_dir / v
            try:
                return json.loads(path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise JobError(f"cannot read {key} from {path}: {exc}") from exc
        return v

    def config(self):
        return config_from_json(self.require("config"))


def _witnesses(items):
    return sorted(render(list(x)) if isinstance(x, tuple) else render(x) for x in items)[:MAX_WITNESSES]


def _violations(bad):
    return sorted([v.rule, list(v.instance), str(v.lhs), str(v.rhs)] for v in bad)[:MAX_WITNESSES]


def _table(job: Job) -> co.CrossRatioTable:
    src = job.require("table")
    if src == "canonical":
        return co.CrossRatioTable.canonical(job.config())
    if src == "random":
        config = job.config() if "config" in job.spec else random_config(job.rng(), int(job.get("n", 6)))
        return random_crossratio(job.rng(), config)
    return table_from_json(job.load("table"))


def _cochain(job: Job) -> co.AltCochain2:
    src = job.require("cochain")
    if src == "orientation":
        config = job.config()
        pts = config.points
        return co.AltCochain2.from_function(len(config), lambda a, b, c: canonical_phi(pts[a], pts[b], pts[c]))
    if src == "random":
        return random_cocycle(job.rng(), int(job.require("n")))
    return cochain_from_json(job.load("cochain"))


def _measure(job: Job) -> me.RectMeasure:
    src = job.require("measure")
    if src == "random":
        config = job.config() if "config" in job.spec else random_config(job.rng(), int(job.get("n", 6)))
        return random_measure(job.rng(), config)
    return measure_from_json(job.load("measure"))


def _evaluator(job: Job) -> mo.WordEvaluator:
    gens = job.get("generators")
    if gens is None:
        return mo.WordEvaluator()
    return mo.WordEvaluator(mo.MobiusMap.parse(gens["g"]), mo.MobiusMap.parse(gens["h"]))


# -- subcommands ---------------------------------------------------------------


def cmd_axioms(job):
    t = _table(job)
    bad = co.check_axioms(t)
    return not bad, {"n": t.n, "violations": len(bad)}, _violations(bad), {}


def cmd_omega(job):
    t = _table(job)
    bad = co.check_axioms(t)
    if bad:
        return False, {"axiom_violations": len(bad)}, _violations(bad), {}
    phi = co.cochain_from_crossratio(t, check=False)
    nu_bad = [tr for tr in co.triples(t.n) if len(co.nu_spread(t, *tr)) != 1]
    alt = co.alternation_defects(phi)
    closed = co.cocycle_defects(phi)
    bound = Fraction(3, 2) * co.sup_norm(t)
    ok = not (nu_bad or alt or closed) and phi.sup() <= bound
    counts = {"nu_dependent": len(nu_bad), "alternation": len(alt), "cocycle": len(closed)}
    result = {"cochain": cochain_to_json(phi), "sup": phi.sup(), "bound": bound}
    return ok, counts, _witnesses(nu_bad) + _violations(alt + closed), result


def cmd_inverse(job):
    phi = _cochain(job)
    t = co.crossratio_from_cocycle(phi)
    bad = co.check_axioms(t)
    back = co.cochain_from_crossratio(t, check=False)
    ok = not bad and back == phi
    return ok, {"axiom_violations": len(bad), "round_trip": int(back == phi)}, _violations(bad), {
        "table": table_to_json(t)
    }


def cmd_dim(job):
    n = int(job.require("n"))
    constraints = job.require("constraints")
    try:
        dim = co.space_dimension(n, constraints)
    except co.SizeError:
        raise
    except ValueError as exc:
        raise JobError(str(exc)) from exc
    expected = job.get("expected")
    return expected is None or int(expected) == dim, {}, [], {"dim": dim}


def cmd_psi(job):
    t = _table(job)
    config = t.config if t.config is not None else job.config()
    m = me.psi(t, config)
    bad = me.check_measure(m)
    return not bad, {"violations": len(bad)}, _violations(bad), {"measure": measure_to_json(m), "zero": m.is_zero()}


def cmd_unpsi(job):
    m = _measure(job)
    base = job.get("base") or list(m.config.cyclic_labels[:4])
    t = me.crossratio_from_measure(m, [int(b) for b in base])
    bad = co.check_axioms(t)
    ok = not bad and me.psi(t, check=False) == m
    return ok, {"axiom_violations": len(bad)}, _violations(bad), {"base": base, "table": table_to_json(t)}


def cmd_measure_check(job):
    m = _measure(job)
    bad = me.check_measure(m)
    return not bad, {"violations": len(bad)}, _violations(bad), {}


def _fixed_json(fp: mo.FixedPoints):
    out = {"kind": fp.kind, "exact": fp.exact}
    if fp.exact:
        out["points"] = [format_point(x) for x in fp.points]
        if fp.attracting is not None:
            out["attracting"] = format_point(fp.attracting)
            out["repelling"] = format_point(fp.repelling)
        out["multipliers"] = {format_point(x): str(v) for x, v in fp.multipliers.items()}
    else:
        out["intervals"] = {k: [str(a), str(b)] for k, (a, b) in fp.intervals.items()}
    return out


def cmd_mobius(job):
    result, counts, wit = {}, {}, []
    ok = True
    if "random" in job.spec:
        spec = job.get("random")
        rng = job.rng()
        maps, configs = int(spec.get("maps", 100)), int(spec.get("configs", 100))
        size = int(spec.get("size", 5))
        checked = failed = 0
        for _ in range(maps):
            m = random_mobius(rng)
            for _ in range(configs):
                cfg = random_config(rng, size)
                bad = mo.invariance_check("canonical", m, cfg)
                checked += 1
                if bad:
                    failed += 1
                    wit.append([str(m), cfg.to_json()])
        counts.update({"checked": checked, "failed": failed})
        ok = failed == 0
    if "map" in job.spec:
        m = mo.MobiusMap.parse(job.get("map"))
        kind = mo.classify(m)
        result["map"] = str(m)
        result["class"] = kind
        if kind != "identity":
            fp = mo.fixed_points(m)
            result["fixed_points"] = _fixed_json(fp)
            if kind == "hyperbolic" and fp.exact:
                starts = job.get("starts", [0, 1, -1, 2, "1/2", -3, "inf", 5, "-1/3", 7])
                ns = mo.north_south_check(m, starts)
                result["north_south"] = ns.ok
                ok &= ns.ok
        if "points" in job.spec:
            result["images"] = {format_point(point(x)): format_point(mo.apply(m, point(x))) for x in job.get("points")}
        if "config" in job.spec:
            bad = mo.invariance_check("canonical", m, job.config())
            counts["invariance_violations"] = len(bad)
            wit += _violations(bad)
            ok &= not bad
    return ok, counts, wit, result


def cmd_orbit_cocycle(job):
    ev = _evaluator(job)
    xi = point(job.require("xi"))
    result, counts = {}, {}
    ok = True
    if "words" in job.spec:
        w = job.get("words")
        if len(w) != 3:
            raise JobError("'words' must list three words")
        result["value"] = mo.orbit_cocycle(canonical_phi, xi, *(ev(x) for x in w))
    if "L" in job.spec:
        maps = [ev(w) for w in mo.reduced_words(int(job.get("L")))]
        counts = mo.orbit_cocycle_defects(canonical_phi, xi, maps)
        ok = counts["alternation"] == 0 and counts["closedness"] == 0
    return ok, counts, [], result


def cmd_prism_check(job):
    ev = _evaluator(job)
    xi, eta = point(job.require("xi")), point(job.require("eta"))
    words = list(mo.reduced_words(int(job.get("L", 3))))
    bad = mo.basepoint_change_defects(canonical_phi, xi, eta, [ev(w) for w in words], words)
    return not bad, {"triples": len(words) ** 3, "failures": len(bad)}, _witnesses(bad), {}


def cmd_defect(job):
    q = job.require("q")
    kind = q.get("kind") if isinstance(q, dict) else q
    if kind == "brooks":
        f = mo.brooks(mo.reduce_word(q["word"]))
    elif kind == "exponent_sum":
        f = mo.exponent_sum(q["letter"])
    elif kind == "zero":
        f = lambda w: 0  # noqa: E731
    else:
        raise JobError(f"unknown quasimorphism {q!r}")
    val, wit = mo.defect_scan(f, int(job.require("L")))
    expected = job.get("expected")
    ok = expected is None or Fraction(expected) == val
    return ok, {}, [list(wit)] if wit else [], {"defect": val}


def cmd_delta(job):
    space = graph_from_json(job.load("graph"))
    fp = hy.four_point(space)
    result = {"four_point": fp.delta, "four_point_witness": list(fp.witness) if fp.witness else None}
    if space.n <= hy.MAX_SLIM_VERTICES:
        sl = hy.slim_triangles(space, int(job.get("cap", 10_000)))
        result.update(
            slim=sl.delta,
            slim_witness=render(list(sl.witness)) if sl.witness else None,
            capped_pairs=[list(p) for p in sl.capped_pairs],
        )
    return True, {}, [], result


def cmd_busemann(job):
    space = graph_from_json(job.load("graph"))
    rays = job.require("rays")
    samples = job.get("samples", list(range(space.n)))
    rep = hy.busemann_inequality_report(space, rays, samples)
    counts = {"used": rep.used, "excluded": rep.excluded, "lipschitz_violations": rep.lipschitz_violations}
    result = {
        "empty": rep.empty,
        "lipschitz": rep.lipschitz,
        "lipschitz_witness": render(rep.lipschitz_witness),
        "cocycle": rep.cocycle,
        "cocycle_witness": render(rep.cocycle_witness),
        "along_ray": rep.along_ray,
        "along_ray_witness": render(rep.along_ray_witness),
    }
    return rep.lipschitz_violations == 0, counts, [], result


def cmd_horosphere(job):
    space = graph_from_json(job.load("graph"))
    pts = hy.horosphere_points(space, job.require("rays"), int(job.require("x")), int(job.get("tol", 0)))
    return True, {"size": len(pts)}, [], {"vertices": pts}


COMMANDS = {
    "axioms": cmd_axioms,
    "omega": cmd_omega,
    "inverse": cmd_inverse,
    "dim": cmd_dim,
    "psi": cmd_psi,
    "unpsi": cmd_unpsi,
    "measure-check": cmd_measure_check,
    "mobius": cmd_mobius,
    "orbit-cocycle": cmd_orbit_cocycle,
    "prism-check": cmd_prism_check,
    "defect": cmd_defect,
    "delta": cmd_delta,
    "busemann": cmd_busemann,
    "horosphere": cmd_horosphere,
}


def run(job: Job) -> tuple[dict, int]:
    """Run a job; returns the report and the exit status."""
    fn = COMMANDS.get(job.cmd)
    if fn is None:
        raise JobError(f"unknown command {job.cmd!r}")
    start = time.perf_counter()
    report = {"command": job.cmd, "job": job.spec}
    if job.seed is not None:
        report["seed"] = job.seed
    try:
        ok, counts, witnesses, result = fn(job)
        status = 0 if ok else 1
        report.update({"pass": bool(ok), "counts": counts, "witnesses": witnesses, "result": render(result)})
    except (JobError, FormatError):
        raise
    except (ValueError, KeyError) as exc:
        status = 1
        report.update({"pass": False, "error": f"{type(exc).__name__}: {exc}"})
    report["wall_time"] = f"{time.perf_counter() - start:.6f}"
    return report, status


def dumps(report: dict) -> str:
    return json.dumps(render(report), indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="xratio", description=__doc__.splitlines()[0])
    ap.add_argument("--job", required=True, help="path to the JSON job file ('-' for stdin)")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--seed", type=int, help="seed for randomized fixtures (overrides the job)")
    ap.add_argument("--threads", type=int, default=1, help="accepted for compatibility; jobs run single-threaded")
    args = ap.parse_args(argv)

    try:
        if args.job == "-":
            text, base = sys.stdin.read(), Path.cwd()
        else:
            path = Path(args.job)
            text, base = path.read_text(), path.parent
        job = Job(json.loads(text), base, args.seed)
        report, status = run(job)
    except (OSError, json.JSONDecodeError, JobError, FormatError) as exc:
        report = {"pass": False, "error": f"{type(exc).__name__}: {exc}"}
        status = 2
    out = dumps(report)
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
