"""Acceptance checks, one function per criterion, with wall-clock timings.

Each criterion returns a list of named sub-checks.  A criterion passes when
every sub-check passes and its runtime stays inside the budget.  Checks run
the statements exactly as posed; a statement that cannot hold shows up as a
failing sub-check with the measured numbers in its detail.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import f4
from .mesh import Hammocks, curve_ext_matrix, cuts_violations, ext_table
from .oracles import mesh_hom_dims
from .polygon import PolygonSpec, TreeShape
from .quiver import (
    build_gamma, build_gamma_Dn_triples, check_isomorphism, dn_triples_projection, dynkin_tree,
    gamma_for, is_quiver_morphism, isomorphic_translation_quivers, validate_stable_translation,
    zt_quotient,
)
from .tilting import (
    ClusterModel, census, exchange_graph, find_converse_counterexample, generate_family_F1,
    is_flip_mutation, is_long_paired, noncrossing_shift, noncrossing_split, flip_cases,
    quiver_shape, transport_quivers,
)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float | None = None
    budget: float | None = None


@dataclass
class CriterionResult:
    number: int
    key: str
    title: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0
    budget: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and self.seconds <= self.budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number:2d} {self.key:<12} {self.title} ({self.seconds:.2f}s / {self.budget:g}s)"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def _timed(name: str, budget: float, fn) -> tuple[Check, object]:
    t0 = time.perf_counter()
    value = fn()
    dt = time.perf_counter() - t0
    return Check(name, dt <= budget, f"{dt:.2f}s", dt, budget), value


class Context:
    """Shared, lazily built objects; the E6 model is used by most criteria."""

    def __init__(self, workers: int | None = None):
        self.workers = workers

    @cached_property
    def e6(self):
        return gamma_for(7, 1, 2, 2)

    @cached_property
    def e6_table(self):
        return ext_table(self.e6)

    @cached_property
    def e6_model(self) -> ClusterModel:
        return ClusterModel(self.e6, self.e6_table, workers=self.workers)

    @cached_property
    def e6_graph(self):
        return exchange_graph(self.e6_model)


def structure_matrix() -> list[tuple[str, object]]:
    out = [("E6", gamma_for(7, 1, 2, 2)), ("E7", gamma_for(10, 1, 2, 3)),
           ("E8", gamma_for(16, 1, 2, 4)), ("Gamma^6_{1,1,1}", gamma_for(6, 1, 1, 1))]
    out += [(f"Gamma^{r + 4}_{{{r},0,0}}", gamma_for(r + 4, r, 0, 0)) for r in range(1, 5)]
    out += [(f"Gamma^{n}_{{{n - 3},1,1}}", gamma_for(n, n - 3, 1, 1, relaxed=True)) for n in (4, 5, 6)]
    out += [(f"Gamma_D{n}", build_gamma_Dn_triples(n)) for n in (4, 5)]
    return out


# -- criteria ------------------------------------------------------------------


def crit_structure(ctx: Context) -> list[Check]:
    checks = []
    for name, q in structure_matrix():
        rep = validate_stable_translation(q)
        checks.append(Check(f"{name} is a stable translation quiver", rep.ok, "; ".join(rep.violations[:3])))
    for (m, r, s, t), n in {(7, 1, 2, 2): 42, (10, 1, 2, 3): 70, (16, 1, 2, 4): 128}.items():
        got = len(build_gamma(PolygonSpec(m, TreeShape(r, s, t))))
        checks.append(Check(f"|Gamma^{m}_{{{r},{s},{t}}}| = {n}", got == n, f"got {got}"))
    return checks


def _iso(q1, q2) -> bool:
    phi = isomorphic_translation_quivers(q1, q2)
    return phi is not None and check_isomorphism(q1, q2, phi)


def crit_isomorphism(ctx: Context) -> list[Check]:
    checks = [
        Check("Gamma^7_{1,2,2} ~ ZE6/tau^-7 rho", _iso(ctx.e6, zt_quotient(dynkin_tree("E", 6), 7, twist=True))),
        Check("Gamma^10_{1,2,3} ~ ZE7/tau^-10", _iso(gamma_for(10, 1, 2, 3), zt_quotient(dynkin_tree("E", 7), 10))),
        Check("Gamma^16_{1,2,4} ~ ZE8/tau^-16", _iso(gamma_for(16, 1, 2, 4), zt_quotient(dynkin_tree("E", 8), 16))),
    ]
    for r in range(0, 5):
        q = gamma_for(r + 4, r, 0, 0)
        tree = dynkin_tree("A", r + 1)
        checks.append(Check(f"Gamma^{r + 4}_{{{r},0,0}} ~ ZA{r + 1}/tau^-{r + 4}", _iso(q, zt_quotient(tree, r + 4))))
    for r in range(0, 5):
        q = gamma_for(r + 4, r, 0, 0)
        target = zt_quotient(dynkin_tree("A", r + 1), r + 3)
        ok = _iso(q, target)
        checks.append(Check(f"Gamma^{r + 4}_{{{r},0,0}} ~ ZA{r + 1}/tau^-{r + 3} (as stated)", ok,
                            "" if ok else f"{len(q)} vs {len(target)} vertices"))
    for n in (4, 5):
        big, small, vmap = dn_triples_projection(n)
        checks.append(Check(f"Gamma_D{n} ~ ZD{n}/tau^-{2 * n}",
                            _iso(small, zt_quotient(dynkin_tree("D", n), 2 * n))))
        checks.append(Check(f"triple projection onto Gamma_D{n} is a quiver morphism",
                            is_quiver_morphism(big, small, vmap)))
    return checks


def oracle_quivers() -> list[tuple[str, object]]:
    return [(name, q) for name, q in structure_matrix() if len(q) <= 50 and q.cover is not None]


def crit_oracle(ctx: Context) -> list[Check]:
    checks = []
    for name, q in oracle_quivers():
        hm = Hammocks(q)
        knit = hm.hom_matrix()
        mesh = np.array([mesh_hom_dims(q, x) for x in range(len(q))])
        diff = int(np.count_nonzero(knit != mesh))
        checks.append(Check(f"{name}: knitting = mesh oracle on {len(q)}^2 pairs", diff == 0,
                            f"{diff} mismatches"))
    return checks


def crit_mesh(ctx: Context) -> list[Check]:
    q, tab = ctx.e6, ctx.e6_table
    E = tab.dims
    tau = np.array(q.tau)
    curves = curve_ext_matrix(q)
    bad = cuts_violations(q, tab)
    return [
        Check("Ext table symmetric", bool(np.array_equal(E, E.T))),
        Check("Ext(x, x) = 0", not np.any(np.diag(E))),
        Check("max Ext entry is 3", int(E.max()) == 3, f"max {int(E.max())}"),
        Check("Ext is tau-equivariant", bool(np.array_equal(E[np.ix_(tau, tau)], E))),
        Check("curves reproduce Ext on all 42x42 pairs", bool(np.array_equal(curves, E)),
              f"{int(np.count_nonzero(curves != E))} mismatches"),
        Check("crossing statements hold for the first slice", not bad, "; ".join(bad[:3])),
    ]


def crit_enumeration(ctx: Context) -> list[Check]:
    checks = []
    c, fresh = _timed("E6 enumeration time", 5.0,
                      lambda: ClusterModel(gamma_for(7, 1, 2, 2), workers=ctx.workers).configurations)
    checks.append(c)
    configs = ctx.e6_model.configurations
    checks.append(Check("fresh E6 enumeration matches", fresh == configs))
    checks.append(Check("833 E6 configurations", len(configs) == 833, f"got {len(configs)}"))
    cen = census(configs)
    want = {"long_paired": 350, "short_1": 224, "short_2": 175, "short_0": 84}
    checks.append(Check("census 350 / 224 / 175 / 84", {k: cen.get(k) for k in want} == want, str(cen)))
    f1 = set()
    for i in range(1, 8):
        f1.update(generate_family_F1(ctx.e6_model, f"[{i},{(i + 2) % 7 + 1}]P"))
    long_set = {x for x in configs if any(is_long_paired(d) for d in x)}
    checks.append(Check("F1 generator reproduces the 350", f1 == long_set and len(f1) == 350,
                        f"generated {len(f1)}"))
    c, d4 = _timed("D4 enumeration time", 5.0,
                   lambda: ClusterModel(gamma_for(4, 1, 1, 1, relaxed=True), workers=ctx.workers).configurations)
    checks += [c, Check("D4 model: 50 configurations", len(d4) == 50, f"got {len(d4)}")]
    c, e7 = _timed("E7 enumeration time", 120.0,
                   lambda: ClusterModel(gamma_for(10, 1, 2, 3), workers=ctx.workers).configurations)
    checks += [c, Check("E7: 4160 configurations", len(e7) == 4160, f"got {len(e7)}")]
    c, e8 = _timed("E8 enumeration time", 900.0,
                   lambda: ClusterModel(gamma_for(16, 1, 2, 4), workers=ctx.workers).configurations)
    checks += [c, Check("E8: 25080 configurations", len(e8) == 25080, f"got {len(e8)}")]
    return checks


def crit_mutation(ctx: Context) -> list[Check]:
    model, g = ctx.e6_model, ctx.e6_graph
    # exchange_graph calls complements on every slot, which asserts uniqueness and ext = 1
    ones = all(model.table(a, b) == 1 for _, _, (a, b) in g.edges)
    flips = [is_flip_mutation(model, c, d)[0] for c in model.configurations for d in c]
    cases = flip_cases(model)
    bad = [(str(c), str(d), k) for c, d, k in cases if not is_flip_mutation(model, c, d)[0]]
    return [
        Check("unique complement with ext 1 at every slot", ones and len(g.edges) * 2 == 833 * 6),
        Check("exchange graph has 833 vertices", len(g.vertices) == 833),
        Check("exchange graph is 6-regular", g.degrees() == {6}, str(g.degrees())),
        Check("exchange graph is connected", g.is_connected()),
        Check("some mutation is not a flip", not all(flips), f"{flips.count(False)} non-flips"),
        Check("flip statements hold", not bad and bool(cases), f"{len(cases)} cases, {len(bad)} failures"),
    ]


def crit_geometry(ctx: Context) -> list[Check]:
    model = ctx.e6_model
    configs = model.configurations
    passing = sum(noncrossing_split(c).noncrossing for c in configs)
    shifts = Counter(noncrossing_shift(model, c) for c in configs)
    wit = find_converse_counterexample(model)
    wit_ok = (wit is not None and noncrossing_split(wit).noncrossing
              and any(model.table(a, b) for a, b in combinations(wit.members, 2)))
    return [
        Check("all 833 configurations are non-crossing in the two-heptagon split", passing == len(configs),
              f"{passing}/{len(configs)} non-crossing"),
        Check("converse fails: non-crossing split with a positive Ext pair", wit_ok, str(wit)),
        Check("every configuration has a tau-shift that is non-crossing in the split",
              None not in shifts, f"shifts {dict(sorted(shifts.items(), key=str))}"),
    ]


def crit_f4(ctx: Context) -> list[Check]:
    model = ctx.e6_model
    sym = f4.rho_symmetric_configs(model)
    kinds = Counter(sc.kind for sc in sym)
    moves = f4.all_moves(model, sym)
    g = f4.f4_exchange_graph(model, sym)
    proj = f4.triangulation_projection(sym)
    tt = [mv for mv in moves if mv.label == "T-T"]
    return [
        Check("105 rho-symmetric configurations", len(sym) == 105, f"got {len(sym)}"),
        Check("kinds 84 T / 14 C / 7 L", dict(kinds) == f4.EXPECTED_CENSUS, str(dict(kinds))),
        Check("orbit mutation closes on the symmetric set", all(mv.target.config in g.vertices for mv in moves)),
        Check("F4 exchange graph is 4-regular", g.degrees() == {4}, str(g.degrees())),
        Check("F4 exchange graph is connected", g.is_connected()),
        Check("F4 exchange graph has 210 edges", len(g.edges) == 210, f"got {len(g.edges)}"),
        Check("T-T moves project to heptagon flips", all(mv.pattern_ok for mv in tt)
              and not f4.tt_flip_violations(moves), f"{len(tt)} moves"),
        Check("type T covers the 42 triangulations twice each", len(proj) == 42 and set(proj.values()) == {2}),
    ]


def crit_quiver(ctx: Context) -> list[Check]:
    tr = transport_quivers(ctx.e6_model, ctx.e6_graph)
    base = tr.matrices[tr.base]
    clean = all(not np.any(np.diag(B)) and np.array_equal(B, -B.T) for B in tr.matrices.values())
    return [
        Check("quiver transported to all 833 configurations", len(tr.matrices) == 833),
        Check("transport commutes with mutation on every edge", tr.checked_edges == len(ctx.e6_graph.edges),
              f"{tr.checked_edges} edges"),
        Check("no loops or 2-cycles", clean),
        Check("base quiver is E6-shaped", quiver_shape(base) == ("E", 6), str(quiver_shape(base))),
    ]


def _enumeration_bytes(workers: int) -> tuple[str, str]:
    model = ClusterModel(gamma_for(7, 1, 2, 2), workers=workers)
    configs = json.dumps([c.to_json() for c in model.configurations])
    return configs, exchange_graph(model).to_dot()


def crit_determinism(ctx: Context) -> list[Check]:
    runs = [_enumeration_bytes(w) for w in (1, 1, 2, 4)]
    e7 = [json.dumps([c.to_json() for c in ClusterModel(gamma_for(10, 1, 2, 3), workers=w).configurations])
          for w in (1, 3)]
    return [
        Check("E6 enumeration identical across runs and thread counts", len({r[0] for r in runs}) == 1),
        Check("E6 exchange graph DOT identical across runs and thread counts", len({r[1] for r in runs}) == 1),
        Check("E7 enumeration identical for 1 and 3 workers", e7[0] == e7[1]),
    ]


CRITERIA = [
    (1, "structure", "stable translation quivers and vertex counts", 1.0, crit_structure),
    (2, "isomorphism", "isomorphisms with ZT quotients", 10.0, crit_isomorphism),
    (3, "oracle", "knitting agrees with the mesh oracle", 60.0, crit_oracle),
    (4, "mesh", "Ext table, curves and crossings on E6", 10.0, crit_mesh),
    (5, "enumeration", "cluster configuration counts", 1020.0, crit_enumeration),
    (6, "mutation", "complements, exchange graph and flips", 60.0, crit_mutation),
    (7, "geometry", "two-heptagon non-crossing placement", 5.0, crit_geometry),
    (8, "f4", "rho-symmetric configurations and F4", 5.0, crit_f4),
    (9, "quiver", "exchange quivers by mutation", 60.0, crit_quiver),
    (10, "determinism", "byte-identical outputs", 120.0, crit_determinism),
]


def select(only=None) -> list[tuple]:
    if not only:
        return list(CRITERIA)
    want = {str(w).strip().lower() for w in only}
    picked = [c for c in CRITERIA if str(c[0]) in want or c[1] in want]
    unknown = want - {str(c[0]) for c in picked} - {c[1] for c in picked}
    if unknown:
        raise ValueError(f"unknown criteria {sorted(unknown)}; choose from {[c[1] for c in CRITERIA]}")
    return picked


def run_criterion(number: int, ctx: Context | None = None) -> CriterionResult:
    ctx = ctx or Context()
    num, key, title, budget, fn = next(c for c in CRITERIA if c[0] == number)
    t0 = time.perf_counter()
    checks = fn(ctx)
    return CriterionResult(num, key, title, checks, time.perf_counter() - t0, budget)


def run(only=None, workers: int | None = None) -> list[CriterionResult]:
    ctx = Context(workers)
    # shared E6 objects are built up front so per-criterion timings measure the checks
    ctx.e6_model.configurations
    ctx.e6_graph
    return [run_criterion(num, ctx) for num, *_ in select(only)]


def report(results, verbose: bool = True) -> str:
    lines = []
    for res in results:
        lines.append(res.line())
        if verbose:
            for c in res.checks:
                mark = "ok " if c.ok else "BAD"
                lines.append(f"      {mark} {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
    passed = sum(r.ok for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
