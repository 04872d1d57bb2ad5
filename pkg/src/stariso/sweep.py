"""Exhaustive verification sweeps over all free trees at desk scale.

Every enumerated tree yields one record carrying its statistics, per-k
solver results, bound report, family memberships and a list of violations
(empty on success).  Any nonempty violation list means a machine-checked
statement failed on a concrete instance.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool

from .bounds import (
    ORDER_PLUS_LEAVES,
    SUPPORT_BOUND,
    evaluate_bounds,
    regime_table_violations,
)
from .families import (
    min_iso_set_F,
    min_iso_set_Tk,
    recognize_char_orderminusleaves,
    recognize_F,
    recognize_Tk,
    sample_family_F,
    sample_family_Tk,
)
from .graphs import (
    Tree,
    as_tree,
    build_graph,
    canonical_code,
    diameter_path,
    enumerate_free_trees,
    is_star,
)
from .solver import (
    gamma_bruteforce,
    iota_bruteforce,
    iota_tree_dp,
    is_isolating,
    normalize_no_deg2_support,
    normalize_no_leaves,
)

CHECK_SUITES = (
    "oracle",
    "bounds",
    "f-equality",
    "tk-equality",
    "corona-char",
    "normalizers",
    "constructive",
)

MAX_SWEEP_N = 20
MAX_BRUTE_FORCE_N = 16


@dataclass(frozen=True)
class SweepConfig:
    max_n: int
    k_list: tuple[int, ...]
    checks: tuple[str, ...] = ("all",)
    output_path: str | None = None
    jobs: int = 1
    seed: int = 0
    bf_max: int = 12

    def active_checks(self) -> frozenset[str]:
        if "all" in self.checks:
            return frozenset(CHECK_SUITES)
        return frozenset(self.checks)

    def validate(self) -> None:
        if not self.k_list:
            raise ValueError("k_list must be nonempty")
        if any(k < 1 for k in self.k_list):
            raise ValueError(f"k values must be positive: {self.k_list}")
        if not (1 <= self.max_n <= MAX_SWEEP_N):
            raise ValueError(f"max_n must be in 1..{MAX_SWEEP_N}, got {self.max_n}")
        if self.bf_max > MAX_BRUTE_FORCE_N:
            raise ValueError(
                f"brute-force cross-checks capped at n={MAX_BRUTE_FORCE_N}, got {self.bf_max}"
            )
        unknown = self.active_checks() - set(CHECK_SUITES)
        if unknown:
            raise ValueError(f"unknown check suites: {sorted(unknown)}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")


@dataclass
class SweepRecord:
    tree_code: str
    source: str  # enumerated | generated
    n: int
    l: int
    s: int
    diam: int
    family_F: bool
    per_k: dict[int, dict]
    violations: list[str] = field(default_factory=list)

    def to_json_line(self) -> str:
        payload = {
            "tree_code": self.tree_code,
            "source": self.source,
            "n": self.n,
            "l": self.l,
            "s": self.s,
            "diam": self.diam,
            "family_F": self.family_F,
            "k": {str(k): v for k, v in sorted(self.per_k.items())},
            "violations": self.violations,
        }
        return json.dumps(payload, sort_keys=True)


def _strip_to_single_leaves(t: Tree) -> Tree:
    """Delete all but one leaf at every support vertex (the twin-leaf
    inverse)."""
    drop = set()
    for v in sorted(t.support_set):
        leaf_nbrs = sorted(w for w in t.graph.adjacency[v] if w in t.leaf_set)
        drop.update(leaf_nbrs[1:])
    keep = [v for v in range(t.n) if v not in drop]
    sub, _ = t.graph.induced_subgraph(keep)
    return as_tree(sub)


def check_tree(t: Tree, config: SweepConfig, source: str = "enumerated") -> SweepRecord:
    """Run every enabled check suite on one tree and collect violations."""
    checks = config.active_checks()
    g = t.graph
    n, l, s = t.n, t.leaf_order, t.support_count
    diam = diameter_path(t).length if n >= 2 else 0
    violations: list[str] = []
    per_k: dict[int, dict] = {}

    iota_by_k: dict[int, int] = {}
    witness_by_k: dict[int, frozenset[int]] = {}
    ks = sorted(set(config.k_list) | {1})
    for k in ks:
        sol = iota_tree_dp(t, k)
        iota_by_k[k] = sol.size
        witness_by_k[k] = sol.set
    iota1 = iota_by_k[1]

    f_cert = recognize_F(t)

    for k in sorted(set(config.k_list)):
        iota = iota_by_k[k]
        report = evaluate_bounds(t, k)
        entry: dict = {
            "iota": iota,
            "regime": report.regime,
            "bounds": report.to_json_dict()["bounds"],
            "equality": report.to_json_dict()["equality"],
        }

        if "oracle" in checks and n <= config.bf_max:
            bf = iota_bruteforce(g, k)
            if bf.size != iota:
                violations.append(f"k={k}: dp={iota} != brute_force={bf.size}")
            if not is_isolating(g, witness_by_k[k], k):
                violations.append(f"k={k}: dp witness fails verification")
            for root in range(n):
                if iota_tree_dp(t, k, root=root).size != iota:
                    violations.append(f"k={k}: dp optimum differs at root {root}")
                    break

        if "bounds" in checks:
            for name, value in report.bounds.items():
                if Fraction(iota) > value:
                    violations.append(f"k={k}: iota={iota} exceeds {name}={value}")
            violations.extend(f"k={k}: {v}" for v in regime_table_violations(t, k, iota))
            if SUPPORT_BOUND in report.bounds:
                sb = report.bounds[SUPPORT_BOUND]
                opl = report.bounds[ORDER_PLUS_LEAVES]
                if sb > opl:
                    violations.append(f"k={k}: support bound {sb} above (n+l)/4 {opl}")
                if (sb == opl) != (not t.strong_support_set):
                    violations.append(
                        f"k={k}: support bound ties (n+l)/4 iff no strong support failed"
                    )
            if k >= 2 and t.max_degree >= k:
                if n + l < 2 * k + 1:
                    violations.append(f"k={k}: n+l={n + l} below 2k+1")
                if (n + l == 2 * k + 1) != is_star(t, k):
                    violations.append(f"k={k}: n+l=2k+1 boundary is not the k-star")
            if (iota == 0) != (t.max_degree < k):
                violations.append(f"k={k}: iota=0 iff max degree < k failed")
            if iota > iota1:
                violations.append(f"k={k}: iota_k={iota} above iota_1={iota1}")

        if "f-equality" in checks and k == 1:
            eq = Fraction(iota1) == Fraction(n + l, 4)
            member = f_cert is not None
            if eq != (member or n == 2):
                violations.append(
                    f"(n+l)/4 equality is {eq} but family membership is {member}"
                )
            if member:
                root = min(f_cert.a_set | f_cert.x_set)
                built = min_iso_set_F(t, f_cert, root)
                if built.size != iota1 or not is_isolating(g, built.set, 1):
                    violations.append("constructive family set is not a minimum witness")
            if iota1 == 1 and (n >= 3) != (Fraction(1) < Fraction(n + l, 4)):
                violations.append("iota=1 strictness iff n >= 3 failed")
            if 2 <= diam <= 3 and iota1 != 1:
                violations.append(f"diameter {diam} tree needs iota=1, got {iota1}")
            if t.strong_support_set and n >= 3 and Fraction(iota1) == Fraction(n + l, 4):
                violations.append("strong support vertex on an (n+l)/4 equality tree")
            if s >= 2 and n >= 3:
                eq2 = Fraction(iota1) == Fraction(n - l + 2 * s, 4)
                member2 = recognize_F(_strip_to_single_leaves(t)) is not None
                if eq2 != member2:
                    violations.append(
                        f"(n-l+2s)/4 equality is {eq2} but twin-leaf reduction membership is {member2}"
                    )

        tk_cert = None
        if k >= 2:
            tk_cert = recognize_Tk(t, k)
            entry["tk_member"] = tk_cert is not None
        if "tk-equality" in checks and k >= 2:
            eq = Fraction(iota) == Fraction(n + l, 2 * k + 1)
            member = is_star(t, k) or tk_cert is not None
            if eq != member:
                violations.append(
                    f"k={k}: (n+l)/(2k+1) equality is {eq} but membership is {member}"
                )
            if tk_cert is not None:
                built = min_iso_set_Tk(t, tk_cert)
                if built.size != iota or not is_isolating(g, built.set, k):
                    violations.append(f"k={k}: constructive hub set is not a minimum witness")
                if built.size != len(tk_cert.c_set) or n < 2 * k + 4:
                    violations.append(f"k={k}: hub count or order clause failed")
            if eq and n + l > 2 * k + 1 and n < 2 * k + 4:
                violations.append(f"k={k}: equality instance in the forbidden small-order band")
            if eq and not is_star(t, k) and diam < 5:
                violations.append(f"k={k}: non-star equality instance with diameter {diam}")
            if eq and n >= 2:
                path = diameter_path(t, maximize_u1_degree=True)
                if g.degree(path.vertices[1]) != k:
                    violations.append(
                        f"k={k}: equality instance with deg(u1)={g.degree(path.vertices[1])} != k"
                    )
            if n >= 3 and k <= t.max_degree and n <= 2 * k + 1 and iota != 1:
                violations.append(f"k={k}: small-order tree with iota={iota} != 1")

        if "corona-char" in checks and n >= 3:
            corona_cert = recognize_char_orderminusleaves(g, k)
            entry["corona_char_member"] = corona_cert is not None
            eq = Fraction(iota) == Fraction(n - l, 2)
            if k >= 2 and n - l == 2:
                # double-star core: equality holds exactly when a k-star
                # exists at all, regardless of the per-support leaf counts
                if eq != (t.max_degree >= k):
                    violations.append(
                        f"k={k}: double-star (n-l)/2 equality is {eq} with max degree "
                        f"{t.max_degree}"
                    )
            elif eq != (corona_cert is not None):
                violations.append(
                    f"k={k}: (n-l)/2 equality is {eq} but corona membership is "
                    f"{corona_cert is not None}"
                )

        if "normalizers" in checks and n >= 3:
            sol = iota_tree_dp(t, k)
            norm = normalize_no_leaves(g, sol)
            if norm.size != sol.size or not is_isolating(g, norm.set, k):
                violations.append(f"k={k}: leaf normalization broke the witness")
            if norm.set & t.leaf_set:
                violations.append(f"k={k}: leaf normalization left a leaf")
            if k == 1 and n >= 5:
                norm2 = normalize_no_deg2_support(t, norm)
                if norm2.size != sol.size or not is_isolating(g, norm2.set, 1):
                    violations.append("support normalization broke the witness")
                if norm2.set & t.leaf_set:
                    violations.append("support normalization left a leaf")
                if any(v in t.support_set and g.degree(v) == 2 for v in norm2.set):
                    violations.append("support normalization left a degree-2 support")

        per_k[k] = entry

    if "bounds" in checks and 2 <= n <= config.bf_max:
        gamma = gamma_bruteforce(g).size
        if 2 * gamma > n:
            violations.append(f"domination number {gamma} above n/2")

    return SweepRecord(
        tree_code=canonical_code(t).decode("ascii"),
        source=source,
        n=n,
        l=l,
        s=s,
        diam=diam,
        family_F=f_cert is not None,
        per_k=per_k,
        violations=violations,
    )


def _constructive_records(config: SweepConfig) -> list[SweepRecord]:
    """Seeded random family instances pushed through the full per-tree
    checks plus their own round-trip assertions."""
    rng = random.Random(config.seed)
    records = []
    for _ in range(6):
        r = rng.randint(2, 4)
        s = rng.randint(0, 2)
        t, cert = sample_family_F(rng, r, s)
        rec = check_tree(t, config, source="generated")
        if recognize_F(t) is None:
            rec.violations.append(f"generated family member (r={r}, s={s}) not recognized")
        records.append(rec)
    tk_ks = [k for k in config.k_list if k >= 2] or [2]
    for _ in range(6):
        k = rng.choice(tk_ks)
        h = rng.randint(1, 2)
        n0 = rng.randint(2 * h, 5)
        t, cert = sample_family_Tk(rng, k, n0, h)
        rec = check_tree(t, config, source="generated")
        if recognize_Tk(t, k) is None:
            rec.violations.append(
                f"generated hub family member (k={k}, n0={n0}, h={h}) not recognized"
            )
        records.append(rec)
    return records


def _worker(args: tuple[int, list[tuple[int, int]], SweepConfig]) -> SweepRecord:
    n, edges, config = args
    return check_tree(as_tree(build_graph(n, edges)), config)


def run_sweep(config: SweepConfig) -> tuple[list[SweepRecord], int]:
    """Execute the sweep; returns (records sorted by tree code, violation
    count) and writes JSON lines when an output path is configured."""
    config.validate()
    tasks = [
        (n, t.graph.edges(), config)
        for n in range(1, config.max_n + 1)
        for t in enumerate_free_trees(n)
    ]
    if config.jobs > 1:
        with Pool(config.jobs) as pool:
            records = pool.map(_worker, tasks)
    else:
        records = [_worker(task) for task in tasks]
    if "constructive" in config.active_checks():
        records.extend(_constructive_records(config))
    records.sort(key=lambda r: (r.n, r.tree_code, r.source))
    total_violations = sum(len(r.violations) for r in records)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(rec.to_json_line() + "\n")
    return records, total_violations
