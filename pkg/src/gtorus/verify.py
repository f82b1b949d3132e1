"""One-shot verification runner: every acceptance check, split into named sub-checks."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

import numpy as np

from . import cp5, orbits, strata, topo
from .errors import ConfigError
from .linalg import (
    PAIRS,
    FramedPoint,
    plucker_coordinates,
    random_frame,
    to_chart,
)
from .moment import diag_projection, moment_g42
from .orbits import ProjectiveParam
from .scalars import COMPLEX, REAL, Field, get_field

# where an expected value comes from
REFERENCE = "reference"      # value stated by the source derivation
ORACLE = "oracle"            # independent computation in this package
IDENTITY = "identity"        # structural identity (exact by construction)


@dataclass(frozen=True)
class RunConfig:
    scalar_mode: str = "complex-f64"
    seed: int = 20240601
    tol: float | None = None
    samples: float = 1.0      # multiplier on the default sample counts

    @classmethod
    def from_env(cls, scalar=None, seed=None, tol=None, samples=None) -> RunConfig:
        """Flags win over GT_SCALAR / GT_SEED / GT_TOL, which win over defaults."""
        env = os.environ
        try:
            scalar = scalar or env.get("GT_SCALAR") or cls.scalar_mode
            seed = int(seed if seed is not None else env.get("GT_SEED", cls.seed))
            tol_env = env.get("GT_TOL")
            tol = float(tol if tol is not None else tol_env) if (tol is not None or tol_env) else None
        except ValueError as exc:
            raise ConfigError(f"bad configuration value: {exc}") from None
        cfg = cls(scalar, seed, tol, samples if samples is not None else 1.0)
        cfg.field  # validate
        return cfg

    @property
    def field(self) -> Field:
        try:
            return get_field(self.scalar_mode, self.tol)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @property
    def float_field(self) -> Field:
        """Floating realization used by inherently numerical checks."""
        return REAL if self.field.real else COMPLEX

    def n(self, base: int) -> int:
        return max(1, int(round(base * self.samples)))

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


@dataclass
class CheckResult:
    name: str
    criterion: int | None
    passed: bool
    measured: object
    expected: object
    source: str
    elapsed: float = 0.0
    note: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "criterion": self.criterion,
                "status": "pass" if self.passed else "fail",
                "measured": _jsonable(self.measured), "expected": _jsonable(self.expected),
                "source": self.source, "elapsed": round(self.elapsed, 4), "note": self.note}


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)


@dataclass
class VerificationReport:
    config: RunConfig
    results: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def criterion_status(self) -> dict[int, bool]:
        out: dict[int, bool] = {}
        for r in self.results:
            if r.criterion is not None:
                out[r.criterion] = out.get(r.criterion, True) and r.passed
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {"seed": self.config.seed, "scalar": self.config.scalar_mode,
                "tol": self.config.tol, "passed": self.passed,
                "criteria": {str(k): ("pass" if v else "fail") for k, v in self.criterion_status().items()},
                "checks": [r.to_json() for r in self.results]}

    def summary(self) -> str:
        lines = [f"seed={self.config.seed} scalar={self.config.scalar_mode}"]
        for r in self.results:
            mark = "PASS" if r.passed else "FAIL"
            line = f"{mark}  {r.name}  measured={_short(r.measured)}"
            if not r.passed:
                line += f"  expected={_short(r.expected)} [{r.source}]"
            if r.note:
                line += f"  ({r.note})"
            lines.append(line)
        n_fail = sum(not r.passed for r in self.results)
        lines.append(f"{len(self.results) - n_fail}/{len(self.results)} checks passed")
        return "\n".join(lines)


def _short(v, limit: int = 90) -> str:
    s = str(_jsonable(v))
    return s if len(s) <= limit else s[:limit - 3] + "..."


# individual criteria ------------------------------------------------------------------

def _check(name, criterion, measured, expected, source, passed=None, note=""):
    if passed is None:
        passed = measured == expected
    return CheckResult(name, criterion, bool(passed), measured, expected, source, note=note)


def _realizable_supports() -> set[frozenset]:
    """Supports of Plücker vectors over all frames with entries in {-1, 0, 1}."""
    out = set()
    for e in product((-1, 0, 1), repeat=8):
        rows = [e[0:2], e[2:4], e[4:6], e[6:8]]
        p = [rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
             for i, j in combinations(range(4), 2)]
        if any(p):
            out.add(frozenset(J for J, x in zip(PAIRS, p) if x))
    return out


def crit_census(cfg):
    counts = {3: 0, 2: 0, 1: 0, 0: 0}
    admissible = set()
    for k in range(1, 7):
        for pat in combinations(PAIRS, k):
            try:
                P = strata.classify_pattern(frozenset(pat))
            except strata.NotAdmissible:
                continue
            admissible.add(P.vertices)
            counts[P.dim] += 1
    yield _check("01.census.count", 1, len(admissible), 36, REFERENCE)
    yield _check("01.census.dims", 1, [counts[d] for d in (3, 2, 1, 0)], [7, 11, 12, 6], REFERENCE)
    real = _realizable_supports()
    yield _check("01.census.exhaustive_search", 1, len(real ^ admissible), 0, ORACLE,
                 note="patterns realized by {-1,0,1} frames vs table")


def crit_witnesses(cfg):
    from .scalars import GAUSSIAN

    bad = []
    for rows, verts in strata.REFERENCE_WITNESSES:
        st = strata.stratum_of(FramedPoint.from_rows(rows, GAUSSIAN))
        if st.polytope.vertices != verts or st.pattern.nonzero != verts:
            bad.append(rows)
    yield _check("02.witnesses.reference", 2, len(bad), 0, REFERENCE,
                 note=f"{len(strata.REFERENCE_WITNESSES)} frames")
    bad = [v for v, rows in strata.witness_frames().items()
           if strata.stratum_of(FramedPoint.from_rows(rows, GAUSSIAN)).polytope.vertices != v]
    yield _check("02.witnesses.all_strata", 2, len(bad), 0, IDENTITY, note="36 frames")


def crit_dimensions(cfg):
    table = {}
    for s in strata.all_strata():
        table[s.dim_real] = table.get(s.dim_real, 0) + 1
    for d, n in {8: 1, 6: 6, 4: 11, 2: 12, 0: 6}.items():
        yield _check(f"03.strata.dim{d}", 3, table.get(d, 0), n, REFERENCE)


def crit_lattice(cfg):
    L = strata.strata_lattice()

    def degrees(kind):
        return sorted({L.out_degree(s.name) for s in L.nodes if s.polytope.kind is kind})

    yield _check("04.lattice.vertex", 4, degrees(strata.Kind.VERTEX), [4], REFERENCE)
    yield _check("04.lattice.edge", 4, degrees(strata.Kind.EDGE), [3], REFERENCE)
    yield _check("04.lattice.square", 4, degrees(strata.Kind.SQUARE), [2], REFERENCE)
    yield _check("04.lattice.triangle", 4, degrees(strata.Kind.TRIANGLE), [2], REFERENCE,
                 note="each triangle is a face of three pyramids")
    yield _check("04.lattice.pyramid", 4, degrees(strata.Kind.PYRAMID), [1], REFERENCE)
    yield _check("04.lattice.counts", 4, L.counts_by_dim(), [6, 12, 11, 6, 1], REFERENCE)


def crit_diag(cfg):
    rng = cfg.rng(5)
    f = cfg.float_field
    worst = 0.0
    for _ in range(cfg.n(1000)):
        A = rng.standard_normal((4, 2))
        if not f.real:
            A = A + 1j * rng.standard_normal((4, 2))
        Q, _ = np.linalg.qr(A)
        X = FramedPoint.from_rows([tuple(r) for r in Q.tolist()], f)
        d = diag_projection(X)
        m = moment_g42(plucker_coordinates(X))
        worst = max(worst, max(abs(float(a) - float(b)) for a, b in zip(d, m)))
    yield _check("05.moment.diag_identity", 5, worst, "<= 1e-12", IDENTITY, passed=worst <= 1e-12)


def crit_plucker(cfg):
    rng = cfg.rng(6)
    f = cfg.field
    worst = 0.0
    off = 0
    for _ in range(cfg.n(500)):
        verts = list(strata.admissible_table())[int(rng.integers(0, 36))]
        X = strata.sample_stratum_point(rng, verts, f)
        p = plucker_coordinates(X)
        rel = p.relation()
        if f.exact:
            worst = max(worst, float(abs(rel)))
        else:
            worst = max(worst, abs(rel) / float(p.norm2()))
        off += not cp5.is_on_plucker_quadric(cp5.CP5Point.from_plucker(p))
    bound = 0.0 if f.exact else 1e-12
    yield _check("06.plucker.relation", 6, worst, f"<= {bound}", IDENTITY, passed=worst <= bound)
    yield _check("06.plucker.quadric", 6, off, 0, IDENTITY)


def crit_transition(cfg):
    rng = cfg.rng(7)
    worst_direct = worst_formula = 0.0
    for _ in range(cfg.n(100)):
        while True:
            X = random_frame(rng, cfg.float_field)
            if strata.stratum_of(X).polytope.kind is strata.Kind.OCTAHEDRON:
                break
        a = to_chart(X, "12").a
        w = to_chart(X, "13").a
        c = a[0] * a[3] / (a[1] * a[2])
        d = ProjectiveParam(w[0] * w[3], w[1] * w[2])
        worst_direct = max(worst_direct, d.chordal(ProjectiveParam(c, c - 1)))
        moved = orbits.chart_param_transition(ProjectiveParam(c, 1), "12", "13")
        worst_formula = max(worst_formula, d.chordal(moved))
    yield _check("07.transition.c_over_c_minus_1", 7, worst_direct, "<= 1e-9", REFERENCE,
                 passed=worst_direct <= 1e-9)
    yield _check("07.transition.implementation", 7, worst_formula, "<= 1e-9", ORACLE,
                 passed=worst_formula <= 1e-9)
    anchors = {label: orbits.chart_param_transition(ProjectiveParam(*cd), "12", "13").to_json()
               for label, cd in (("2", (2, 1)), ("0", (0, 1)), ("inf", (1, 0)))}
    yield _check("07.transition.anchors", 7, anchors, {"2": "2", "0": "0", "inf": "1"}, REFERENCE)


def crit_limits(cfg):
    rng = cfg.rng(8)
    out = {}
    ok = True
    for s in strata.all_strata():
        if s.polytope.kind not in (strata.Kind.PYRAMID, strata.Kind.SQUARE):
            continue
        a = tuple(complex(*rng.standard_normal(2)) for _ in range(4))
        rep = orbits.degeneration_limit(s, a)
        out[s.name] = rep.expected.to_json()
        ok &= rep.converged and rep.residual < 1e-6
        yield _check(f"08.limit.{s.name}", 8, round(rep.residual, 12), "< 1e-6", REFERENCE,
                     passed=rep.converged and rep.residual < 1e-6,
                     note=f"limit {rep.expected.to_json()} after {rep.steps} steps")


def crit_closure(cfg):
    rng = cfg.rng(9)
    listing = {frozenset(d.I) for d in orbits.closure_boundary(
        orbits.OrbitDescriptor("Hypersurface", (1, 2), frozenset({1, 2, 3, 4}),
                               ProjectiveParam(2, 1)))}
    expected = {frozenset(s) for s in ({1, 2}, {1, 3}, {2, 4}, {3, 4}, {1}, {2}, {3}, {4}, ())}
    yield _check("09.closure.listing", 9, sorted(map(sorted, listing)),
                 sorted(map(sorted, expected)), REFERENCE, passed=listing == expected)
    bad = 0
    for _ in range(cfg.n(20)):
        a = tuple(complex(*rng.standard_normal(2)) for _ in range(4))
        bad += orbits.closure_boundary_by_subgroups(a) != listing
    yield _check("09.closure.sampled_limits", 9, bad, 0, ORACLE,
                 note="one-parameter-subgroup limits of random orbit points")


def crit_homology(cfg):
    H = [str(h) for h in topo.cellular_homology(topo.build_g42_orbit_space_model())]
    yield _check("10.homology.g42", 10, H, ["Z", "0", "0", "0", "0", "Z"], REFERENCE)
    yield _check("10.homology.g42_cells", 10, topo.build_g42_orbit_space_model().dims(),
                 [0, 2, 3, 5], REFERENCE)
    H = [str(h) for h in topo.cellular_homology(topo.build_real_g42_model())]
    yield _check("10.homology.g42_real_sphere", 10, H, ["Z", "0", "0", "0", "Z"], REFERENCE)
    for name in ("g42r", "cp5", "rp5"):
        yield _check(f"10.homology.{name}_join", 10, topo.homology_matches_join(name), True, ORACLE)


def crit_morse(cfg):
    rng = cfg.rng(11)
    for J in PAIRS:
        g = topo.morse_gradient_check(J).gradient_norm
        yield _check(f"11.morse.origin_gradient.{J[0]}{J[1]}", 11, g, "<= 1e-6", IDENTITY,
                     passed=g <= 1e-6)
    scan = topo.morse_critical_scan(rng, samples_per_chart=cfg.n(10))
    yield _check("11.morse.critical_scan", 11, scan["false_critical"], 0, IDENTITY,
                 note="critical points found only at the six chart origins")
    rep = topo.morse_gradient_check("12")
    yield _check("11.morse.hessian_reference", 11, [round(v, 6) for v in rep.hessian_diag],
                 list(rep.reference_hessian), REFERENCE, passed=rep.reference_match,
                 note="finite differences at the chart-12 origin")
    yield _check("morse.hessian_analytic", None, [round(v, 6) for v in rep.hessian_diag],
                 list(rep.analytic_hessian), ORACLE, passed=rep.analytic_match,
                 note="2 (h(neighbour) - h(origin))")
    vals = [topo.vertex_value(J) for J in PAIRS]
    yield _check("11.morse.critical_values", 11, vals, [3, 5, 9, 6, 10, 12], REFERENCE,
                 passed=vals == [3, 5, 9, 6, 10, 12] and len(set(vals)) == 6)
    worst = np.inf
    for _ in range(cfg.n(100)):
        J = PAIRS[int(rng.integers(0, 6))]
        a = tuple(complex(*rng.standard_normal(2)) for _ in range(4))
        from .linalg import ChartCoords

        worst = min(worst, topo.morse_gradient_check(J, ChartCoords(J, a)).gradient_norm)
    yield _check("11.morse.no_false_critical", 11, worst, "> 1e-6", IDENTITY, passed=worst > 1e-6)


def crit_compat(cfg):
    rng = cfg.rng(12)
    f = cfg.field
    table = list(strata.admissible_table())
    bad = 0
    for _ in range(cfg.n(500)):
        verts = table[int(rng.integers(0, len(table)))]
        X = strata.sample_stratum_point(rng, verts, f)
        st = strata.stratum_of(X)
        z = cp5.CP5Point.from_plucker(plucker_coordinates(X))
        bad += cp5.cp5_stratum(z).vertices != st.polytope.vertices
    yield _check("12.embedding.stratum_compatibility", 12, bad, 0, IDENTITY)


def crit_embedding(cfg):
    rep = cp5.embedding_formula_report(cfg.rng(13), samples=20)
    yield _check("13.embedding.oracle", 13, rep.max_residual, "<= 1e-9", ORACLE,
                 passed=rep.max_residual <= 1e-9)
    yield from crit_embedding_boundary(cfg)
    yield _check("13.embedding.selected_form", 13, rep.selected, "(c : 1 : 1-c)", ORACLE,
                 passed=rep.selected is not None,
                 note="; ".join(f"{k}: {v:.3g}" for k, v in rep.candidate_residuals.items()))


def crit_embedding_boundary(cfg):
    """Boundary strata of G(4,2) land on the images of their boundary parameters."""
    rng = cfg.rng(131)
    for s in strata.all_strata():
        if s.polytope.kind not in (strata.Kind.PYRAMID, strata.Kind.SQUARE):
            continue
        X = strata.sample_stratum_point(rng, s.polytope.vertices, cfg.float_field)
        got = cp5.cp5_param(cp5.CP5Point.from_plucker(plucker_coordinates(X)))
        want = cp5.induced_orbit_space_embedding(orbits.boundary_parameter(s))
        yield _check(f"13.embedding.boundary.{s.name}", 13, got.to_json(), want.to_json(), ORACLE,
                     passed=got.chordal(want) <= 1e-9)


def crit_rank_function(cfg):
    rng = cfg.rng(14)
    f = cfg.field
    table = list(strata.admissible_table())
    bad = 0
    for _ in range(cfg.n(500)):
        v1 = table[int(rng.integers(0, len(table)))]
        v2 = v1 if rng.random() < 0.5 else table[int(rng.integers(0, len(table)))]
        X = strata.sample_stratum_point(rng, v1, f)
        Y = strata.sample_stratum_point(rng, v2, f)
        same_pattern = strata.pattern_of(X) == strata.pattern_of(Y)
        same_profile = strata.rank_profile(X) == strata.rank_profile(Y)
        bad += same_pattern != same_profile
    yield _check("14.definitions.equivalence", 14, bad, 0, IDENTITY)


CRITERIA = {
    1: ("admissible-polytope census", crit_census),
    2: ("witness matrices", crit_witnesses),
    3: ("strata dimension table", crit_dimensions),
    4: ("lattice cover degrees", crit_lattice),
    5: ("moment-map projection identity", crit_diag),
    6: ("Plücker relation and quadric", crit_plucker),
    7: ("chart transition law", crit_transition),
    8: ("boundary-limit parametrization", crit_limits),
    9: ("closure boundary", crit_closure),
    10: ("orbit-space homology", crit_homology),
    11: ("Morse suite", crit_morse),
    12: ("Plücker embedding stratification", crit_compat),
    13: ("embedding formula oracle", crit_embedding),
    14: ("definition equivalence", crit_rank_function),
}


def run_criterion(k: int, cfg: RunConfig) -> list[CheckResult]:
    out = []
    gen = CRITERIA[k][1](cfg)
    while True:
        t0 = time.perf_counter()
        try:
            r = next(gen)
        except StopIteration:
            break
        r.elapsed = time.perf_counter() - t0
        out.append(r)
    return out


def run_verification(cfg: RunConfig | None = None, criteria=None) -> VerificationReport:
    cfg = cfg or RunConfig()
    rep = VerificationReport(cfg)
    for k in criteria or CRITERIA:
        rep.results.extend(run_criterion(k, cfg))
    rep.results.sort(key=lambda r: r.name)
    return rep
