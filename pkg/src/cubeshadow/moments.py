"""Closed-form moment tables and seeded Monte Carlo confrontation.

Every analytic moment is paired with a simulation estimate; the verify
report compares them with a |z| < 4 accept rule.  Monte Carlo is chunked
with one counter-based stream per chunk, so results are bit-identical for
a fixed (seed, samples) regardless of thread count.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import functionals, geometry, hull
from .quad import zeta4_quadrature
from .specfun import catalan_const, gamma_fn, hyp3f2_unit

PI = math.pi
CHUNK = 1 << 16
SPEC_VERSION = "1.0"

MOMENT_NAMES = ("vl", "ar", "mw", "vl2", "ar2", "mw2",
                "vl_ar", "vl_mw", "ar_mw")


class DimensionError(ValueError):
    """Moment tables need cube dimension n >= 3."""


def zeta_n(n: int) -> tuple[float, str]:
    """The constant in E(ar^2) for cube dimension n, with its provenance.

    n = 3 has the hypergeometric closed form; n >= 4 uses the zeta_4
    quadrature value.  Equality for n not in {4, 5} is numerically
    supported but conjectural.
    """
    if n == 3:
        return 3.0 * PI * hyp3f2_unit(-0.5, 0.5, 1.5, 1.0, 2.0), "3*pi*3F2 closed form"
    source = "zeta4 quadrature" if n in (4, 5) else "zeta4 quadrature (conjectured equality)"
    return zeta4_quadrature(), source


@dataclass(frozen=True)
class MomentTable:
    n: int
    e_vl: float
    e_vl2: float
    e_ar: float
    e_ar2: float
    e_mw: float
    e_mw2: float | None
    zeta_used: float
    zeta_source: str
    extremes: dict

    def as_dict(self) -> dict:
        d = {"n": self.n, "e_vl": self.e_vl, "e_vl2": self.e_vl2,
             "e_ar": self.e_ar, "e_ar2": self.e_ar2, "e_mw": self.e_mw,
             "zeta_used": self.zeta_used, "zeta_source": self.zeta_source,
             "extremes": self.extremes}
        if self.e_mw2 is not None:
            d["e_mw2"] = self.e_mw2
        return d


def _gamma_ratio(n: int) -> float:
    return gamma_fn(n / 2.0) / gamma_fn((n + 1) / 2.0)


def extremes_table(n: int) -> dict:
    """Analytic min/max of vl, ar, mw for cube dimension n."""
    if n < 3:
        raise DimensionError(f"need n >= 3, got {n}")
    coeff = functionals.segment_mw_coeff(n - 1)
    return {
        "vl": (1.0, math.sqrt(n)),
        "ar": (2.0 * (n - 1), n * (n - 1) * math.sqrt(2.0 / n)),
        "mw": (coeff * (n - 1), coeff * math.sqrt(n * (n - 1.0))),
    }


def closed_form_table(n: int) -> MomentTable:
    """All closed-form moments of the corank-1 shadow of the n-cube.

    E(mw^2) is present only for n in {3, 4, 5}; no general formula is
    known.
    """
    if n < 3:
        raise DimensionError(f"need n >= 3, got {n}")
    zeta, zeta_source = zeta_n(n)
    e_vl = n / math.sqrt(PI) * _gamma_ratio(n)
    e_vl2 = 1.0 + 2.0 * (n - 1) / PI
    e_ar = math.sqrt(PI) * (n - 1) * n / 2.0 * _gamma_ratio(n)
    e_ar2 = (4.0 * (n - 1) + (n - 2) * (n - 1) * zeta
             + (n - 3) * (n - 2) * (n - 1) / 2.0 * PI)
    if n == 3:
        f1 = hyp3f2_unit(-0.5, 0.5, 1.5, 1.0, 2.0)
        e_mw2 = 2.0 / PI**2 * (4.0 + 3.0 * PI * f1)
    elif n == 4:
        e_mw2 = 3.0 * (0.25 + PI / 8.0 + 1.0 / PI)
    elif n == 5:
        f1 = hyp3f2_unit(-0.5, 0.5, 1.5, 1.0, 2.0)
        f2 = hyp3f2_unit(-0.5, 0.5, 1.5, 1.0, 3.0)
        e_mw2 = (4.0 / (81.0 * PI**4)
                 * (144.0 * PI**2 - 10.0 * gamma_fn(0.25) ** 4
                    + 45.0 * PI**3 * (8.0 * f1 - f2)))
    else:
        e_mw2 = None
    return MomentTable(n=n, e_vl=e_vl, e_vl2=e_vl2, e_ar=e_ar, e_ar2=e_ar2,
                       e_mw=e_vl, e_mw2=e_mw2, zeta_used=zeta,
                       zeta_source=zeta_source, extremes=extremes_table(n))


@dataclass(frozen=True)
class JointMoments:
    e_vl_ar: float
    e_vl_mw: float
    e_ar_mw: float
    corr_vl_ar: float
    corr_vl_mw: float
    corr_ar_mw: float

    def as_dict(self) -> dict:
        return dict(e_vl_ar=self.e_vl_ar, e_vl_mw=self.e_vl_mw,
                    e_ar_mw=self.e_ar_mw, corr_vl_ar=self.corr_vl_ar,
                    corr_vl_mw=self.corr_vl_mw, corr_ar_mw=self.corr_ar_mw)


def joint_moment_table() -> JointMoments:
    """Closed-form joint moments and correlations for the 4-cube."""
    t = closed_form_table(4)
    e_vl_ar = 6.0 * (1.0 + 4.0 / PI)
    e_vl_mw = 9.0 / 4.0 + 2.0 / PI
    e_ar_mw = 3.0 * (5.0 + 2.0 * catalan_const()) / PI + 9.0 * PI / 4.0
    sd_vl = math.sqrt(t.e_vl2 - t.e_vl**2)
    sd_ar = math.sqrt(t.e_ar2 - t.e_ar**2)
    sd_mw = math.sqrt(t.e_mw2 - t.e_mw**2)
    return JointMoments(
        e_vl_ar=e_vl_ar, e_vl_mw=e_vl_mw, e_ar_mw=e_ar_mw,
        corr_vl_ar=(e_vl_ar - t.e_vl * t.e_ar) / (sd_vl * sd_ar),
        corr_vl_mw=(e_vl_mw - t.e_vl * t.e_mw) / (sd_vl * sd_mw),
        corr_ar_mw=(e_ar_mw - t.e_ar * t.e_mw) / (sd_ar * sd_mw),
    )


# ---------------------------------------------------------------------------
# Monte Carlo

@dataclass(frozen=True)
class McResult:
    samples: int
    seed: int
    estimates: dict     # name -> (mean, stderr)
    extremes_observed: dict  # name -> (min, max)


def _shadow_quantities(x: np.ndarray, coeff: float) -> dict:
    """Per-sample vl, ar, mw arrays for a batch of directions x (m, n)."""
    n = x.shape[1]
    vl = np.abs(x).sum(axis=1)
    ar = np.zeros(len(x))
    for j in range(n):
        for k in range(j + 1, n):
            ar += np.hypot(x[:, j], x[:, k])
    ar *= 2.0
    mw = coeff * np.sqrt(np.clip(1.0 - x * x, 0.0, None)).sum(axis=1)
    return {"vl": vl, "ar": ar, "mw": mw}


def _chunk_bounds(samples: int) -> list[tuple[int, int, int]]:
    return [(i, start, min(start + CHUNK, samples))
            for i, start in enumerate(range(0, samples, CHUNK))]


def _accumulate(per_chunk: list[dict], samples: int, seed: int) -> McResult:
    names = list(per_chunk[0]["sums"].keys())
    sums = {q: 0.0 for q in names}
    sumsq = {q: 0.0 for q in names}
    mins: dict = {}
    maxs: dict = {}
    for chunk in per_chunk:  # fixed index order: deterministic reduction
        for q in names:
            sums[q] += chunk["sums"][q]
            sumsq[q] += chunk["sumsq"][q]
        for q, lo in chunk["mins"].items():
            mins[q] = lo if q not in mins else min(mins[q], lo)
        for q, hi in chunk["maxs"].items():
            maxs[q] = hi if q not in maxs else max(maxs[q], hi)
    estimates = {}
    for q in names:
        mean = sums[q] / samples
        var = max(sumsq[q] / samples - mean * mean, 0.0)
        stderr = math.sqrt(var / samples)
        estimates[q] = (mean, stderr)
    extremes = {q: (mins[q], maxs[q]) for q in mins}
    return McResult(samples=samples, seed=seed, estimates=estimates,
                    extremes_observed=extremes)


def _run_chunked(worker, samples: int, seed: int, threads: int) -> McResult:
    bounds = _chunk_bounds(samples)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_chunk = list(pool.map(worker, bounds))
    else:
        per_chunk = [worker(b) for b in bounds]
    return _accumulate(per_chunk, samples, seed)


def mc_estimate(n: int, samples: int, seed: int, threads: int = 1) -> McResult:
    """Monte Carlo moments of vl, ar, mw over uniform directions.

    Estimates all nine first/second/joint moments with standard errors,
    plus observed extremes.  Deterministic for fixed (seed, samples).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    coeff = functionals.segment_mw_coeff(n - 1)

    def worker(bound):
        index, start, stop = bound
        rng = geometry.stream(seed, index)
        x = geometry.sample_unit_vectors(n, stop - start, rng)
        q = _shadow_quantities(x, coeff)
        values = {
            "vl": q["vl"], "ar": q["ar"], "mw": q["mw"],
            "vl2": q["vl"] ** 2, "ar2": q["ar"] ** 2, "mw2": q["mw"] ** 2,
            "vl_ar": q["vl"] * q["ar"], "vl_mw": q["vl"] * q["mw"],
            "ar_mw": q["ar"] * q["mw"],
        }
        return {
            "sums": {k: float(v.sum()) for k, v in values.items()},
            "sumsq": {k: float((v * v).sum()) for k, v in values.items()},
            "mins": {k: float(q[k].min()) for k in ("vl", "ar", "mw")},
            "maxs": {k: float(q[k].max()) for k in ("vl", "ar", "mw")},
        }

    return _run_chunked(worker, samples, seed, threads)


def mc_octagon(samples: int, seed: int, threads: int = 1) -> McResult:
    """Monte Carlo perimeter/area moments of the rank-2 octagon shadow.

    (u, v) is a uniformly random orthonormal pair: u uniform on the
    sphere, v the normalized component of an independent uniform direction
    orthogonal to u.  Area uses the zonogon identity
    sum_{j<k} |u_j v_k - u_k v_j| (cross-checked against the 2D hull
    oracle in the test suite).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")

    def worker(bound):
        index, start, stop = bound
        m = stop - start
        rng = geometry.stream(seed, index)
        u = geometry.sample_unit_vectors(4, m, rng)
        v = rng.standard_normal((m, 4))
        v -= (v * u).sum(axis=1, keepdims=True) * u
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        per = 2.0 * np.sqrt(np.clip(1.0 - u * u - v * v, 0.0, None)).sum(axis=1)
        area = np.zeros(m)
        for j in range(4):
            for k in range(j + 1, 4):
                area += np.abs(u[:, j] * v[:, k] - u[:, k] * v[:, j])
        values = {"perimeter": per, "perimeter2": per**2, "area": area}
        return {
            "sums": {k: float(v.sum()) for k, v in values.items()},
            "sumsq": {k: float((v * v).sum()) for k, v in values.items()},
            "mins": {k: float(values[k].min()) for k in ("perimeter", "area")},
            "maxs": {k: float(values[k].max()) for k in ("perimeter", "area")},
        }

    return _run_chunked(worker, samples, seed, threads)


# ---------------------------------------------------------------------------
# verification report

@dataclass(frozen=True)
class ReportRow:
    name: str
    closed_form: float
    estimate: float
    stderr: float
    z: float

    @property
    def passed(self) -> bool:
        return abs(self.z) < 4.0


@dataclass(frozen=True)
class VerifyReport:
    n: int
    samples: int
    seed: int
    rows: list
    hull_max_deviation: float | None
    hull_pass_rate: float | None
    passed: bool
    extremes_observed: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {
            "spec_version": SPEC_VERSION,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "rows": [{"name": r.name, "closed_form": r.closed_form,
                      "estimate": r.estimate, "stderr": r.stderr, "z": r.z}
                     for r in self.rows],
            "pass": self.passed,
        }
        if self.hull_pass_rate is not None:
            d["hull_pass_rate"] = self.hull_pass_rate
            d["hull_max_deviation"] = self.hull_max_deviation
        if self.extremes_observed:
            d["extremes_observed"] = {k: list(v) for k, v
                                      in self.extremes_observed.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        lines = ["name,closed_form,estimate,stderr,z"]
        for r in self.rows:
            lines.append(f"{r.name},{r.closed_form!r},{r.estimate!r},"
                         f"{r.stderr!r},{r.z!r}")
        return "\n".join(lines) + "\n"


def closed_form_targets(n: int) -> dict:
    """Closed-form value for every MC quantity available at dimension n."""
    table = closed_form_table(n)
    targets = {"vl": table.e_vl, "vl2": table.e_vl2, "ar": table.e_ar,
               "ar2": table.e_ar2, "mw": table.e_mw}
    if table.e_mw2 is not None:
        targets["mw2"] = table.e_mw2
    if n == 4:
        joints = joint_moment_table()
        targets["vl_ar"] = joints.e_vl_ar
        targets["vl_mw"] = joints.e_vl_mw
        targets["ar_mw"] = joints.e_ar_mw
    return targets


def hull_cross_check(samples: int, seed: int) -> tuple[float, float]:
    """Compare hull-derived measures with the closed-form functionals.

    Returns (max absolute deviation over volume/area/mean width,
    fraction of samples with the generic 14/24/12 combinatorics and
    deviation below 1e-9).
    """
    rng = geometry.stream(seed, index=2**32)  # separate from MC chunks
    max_dev = 0.0
    good = 0
    for _ in range(samples):
        u = geometry.sample_unit_vector(4, rng)
        mesh = hull.convex_hull_3d(geometry.project_vertices(geometry.build_frame(u)))
        meas = hull.mesh_measures(mesh)
        dev = max(abs(meas.volume - functionals.shadow_volume(u)),
                  abs(meas.area - functionals.shadow_area(u)),
                  abs(meas.mean_width - functionals.shadow_mean_width(u)))
        max_dev = max(max_dev, dev)
        if (dev < 1e-9 and meas.vertex_count == 14 and meas.edge_count == 24
                and meas.face_count == 12
                and mesh.euler_characteristic == 2):
            good += 1
    return max_dev, good / samples


def verify_report(n: int, samples: int, seed: int, threads: int = 1,
                  hull_samples: int = 1000) -> VerifyReport:
    """Confront every closed-form moment with Monte Carlo; |z| < 4 rule.

    For n = 4 additionally cross-checks hull-derived measures against the
    functionals on `hull_samples` seeded directions.
    """
    mc = mc_estimate(n, samples, seed, threads=threads)
    targets = closed_form_targets(n)
    rows = []
    for name in MOMENT_NAMES:
        if name not in targets:
            continue
        mean, stderr = mc.estimates[name]
        z = (mean - targets[name]) / stderr if stderr > 0 else math.inf
        rows.append(ReportRow(name=name, closed_form=targets[name],
                              estimate=mean, stderr=stderr, z=z))
    hull_dev = hull_rate = None
    if n == 4 and hull_samples > 0:
        hull_dev, hull_rate = hull_cross_check(hull_samples, seed)
    passed = all(r.passed for r in rows) and (hull_rate is None or hull_rate == 1.0)
    return VerifyReport(n=n, samples=samples, seed=seed, rows=rows,
                        hull_max_deviation=hull_dev, hull_pass_rate=hull_rate,
                        passed=passed, extremes_observed=mc.extremes_observed)


def octagon_report(samples: int, seed: int, threads: int = 1,
                   hull_samples: int = 1000) -> VerifyReport:
    """Rank-2 octagon verification: perimeter^2 reference plus hull checks.

    The printed second-moment reference 28.495 is truncated to three
    decimals; the accept band is [28.495, 28.496] widened by 4 stderr.
    """
    mc = mc_octagon(samples, seed, threads=threads)
    mean, stderr = mc.estimates["perimeter2"]
    lo, hi = 28.495, 28.496
    dist = 0.0 if lo <= mean <= hi else min(abs(mean - lo), abs(mean - hi))
    z = dist / stderr if stderr > 0 else math.inf
    rows = [ReportRow(name="perimeter2", closed_form=28.4955,
                      estimate=mean, stderr=stderr, z=z)]
    hull_dev = hull_rate = None
    if hull_samples > 0:
        rng = geometry.stream(seed, index=2**32 + 1)
        max_dev = 0.0
        good = 0
        for _ in range(hull_samples):
            u = geometry.sample_unit_vector(4, rng)
            v = geometry.sample_unit_vector(4, rng)
            v = v - np.dot(v, u) * u
            v /= np.linalg.norm(v)
            e, f = functionals.shadow_plane_basis(u, v)
            pts = geometry.cube_vertices(4) @ np.column_stack([e, f])
            area, per = hull.polygon_measures(hull.convex_hull_2d(pts))
            dev = abs(per - functionals.octagon_perimeter(u, v))
            zono = sum(abs(u[j] * v[k] - u[k] * v[j])
                       for j in range(4) for k in range(j + 1, 4))
            dev = max(dev, abs(area - zono))
            max_dev = max(max_dev, dev)
            if dev < 1e-9:
                good += 1
        hull_dev, hull_rate = max_dev, good / hull_samples
    ext = mc.extremes_observed
    bounds_ok = (ext["perimeter"][0] >= 4.0 - 1e-9
                 and ext["perimeter"][1] <= 4.0 * math.sqrt(2.0) + 1e-9
                 and ext["area"][0] >= 1.0 - 1e-9
                 and ext["area"][1] <= 1.0 + math.sqrt(2.0) + 1e-9)
    passed = (all(r.passed for r in rows) and bounds_ok
              and (hull_rate is None or hull_rate == 1.0))
    return VerifyReport(n=4, samples=samples, seed=seed, rows=rows,
                        hull_max_deviation=hull_dev, hull_pass_rate=hull_rate,
                        passed=passed, extremes_observed=ext)
