#!/usr/bin/env python3
"""Recompute summary.json from ticks.csv for every shipped scenario and
compare with what the CLI wrote."""

import argparse
import csv
import json
import math
import pathlib
import subprocess
import sys

FIXED = 9
TRACK = 6
TRUTH = 5


def parse_float(s):
    return float(s)  # python accepts inf / -inf / nan


def read_ticks(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    n_truth = (len(header) - FIXED) // TRUTH
    ticks = []
    for row in body:
        n_track = (len(row) - FIXED - TRUTH * n_truth) // TRACK
        vals = row
        tracks = []
        i = FIXED
        for _ in range(n_track):
            tracks.append([parse_float(v) for v in vals[i:i + TRACK]])
            i += TRACK
        truth = []
        for _ in range(n_truth):
            truth.append([parse_float(v) for v in vals[i:i + TRUTH]])
            i += TRUTH
        ticks.append({
            "t": float(vals[0]), "x": float(vals[1]), "y": float(vals[2]),
            "v": float(vals[4]), "ms": float(vals[6]), "infeasible": int(vals[7]),
            "sep": parse_float(vals[8]), "tracks": tracks, "truth": truth,
        })
    return ticks


def nearest_rank(values, p):
    if not values:
        return None
    s = sorted(values)
    k = min(max(math.ceil(p / 100.0 * len(s)), 1), len(s))
    return s[k - 1]


def recompute(ticks, ref):
    out = {"ticks": len(ticks), "duration_s": ticks[-1]["t"] if ticks else 0.0}
    pos_sq = vel_sq = 0.0
    n = 0
    for tk in ticks:
        if tk["t"] < ref["burn_in_s"]:
            continue
        for tr in tk["tracks"]:
            best, best_d = None, math.inf
            for g in tk["truth"]:
                d = math.hypot(tr[1] - g[1], tr[2] - g[2])
                if d < best_d:
                    best, best_d = g, d
            if best is None or best_d > ref["truth_match_radius_m"]:
                continue
            pos_sq += best_d ** 2
            vel_sq += (tr[3] - best[3]) ** 2 + (tr[4] - best[4]) ** 2
            n += 1
    out["position_rmse_m"] = math.sqrt(pos_sq / n) if n else None
    out["velocity_rmse_mps"] = math.sqrt(vel_sq / n) if n else None
    out["matched_samples"] = n
    sep = min((tk["sep"] for tk in ticks), default=math.inf)
    out["min_separation_m"] = sep if math.isfinite(sep) else None
    out["collision"] = sep <= 0.0
    ms = [tk["ms"] for tk in ticks]
    out["controller_p50_ms"] = nearest_rank(ms, 50)
    out["controller_p95_ms"] = nearest_rank(ms, 95)
    out["controller_max_ms"] = max(ms) if ms else None
    reached = None
    if ref["goal_x"] is not None:
        for tk in ticks:
            if math.hypot(tk["x"] - ref["goal_x"], tk["y"] - ref["goal_y"]) <= ref["goal_tolerance_m"]:
                reached = tk["t"]
                break
    out["goal_reached"] = reached is not None
    out["time_to_goal_s"] = reached
    out["infeasible_ticks"] = sum(tk["infeasible"] for tk in ticks)
    out["min_cmd_v"] = min((tk["v"] for tk in ticks), default=0.0)
    out["mean_cmd_v"] = sum(tk["v"] for tk in ticks) / len(ticks) if ticks else 0.0
    return out


def close(a, b, tol):
    if a is None or b is None:
        return a is None and b is None
    if isinstance(a, bool) or isinstance(b, bool):
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def check(ticks_path, summary_path):
    ref = json.loads(pathlib.Path(summary_path).read_text())
    got = recompute(read_ticks(ticks_path), ref)
    bad = []
    for key, value in got.items():
        # ticks.csv keeps six decimals, so derived values agree to about 1e-5.
        if not close(value, ref[key], 2e-5):
            bad.append(f"{key}: summary {ref[key]!r} vs recomputed {value!r}")
    return bad


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cli", required=True)
    ap.add_argument("--scenarios", required=True)
    ap.add_argument("--work", required=True)
    args = ap.parse_args()

    failures = 0
    checked = 0
    for cfg in sorted(pathlib.Path(args.scenarios).glob("*.json")):
        out = pathlib.Path(args.work) / cfg.stem
        proc = subprocess.run([args.cli, "run", str(cfg), "--out", str(out)], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            print(f"FAIL {cfg.stem}: cli exited {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        pairs = [(out / "ticks.csv", out / "summary.json")]
        k = 0
        while (out / f"ticks_ego{k}.csv").exists():
            pairs.append((out / f"ticks_ego{k}.csv", out / f"summary_ego{k}.json"))
            k += 1
        for ticks, summary in pairs:
            bad = check(ticks, summary)
            checked += 1
            if bad:
                failures += 1
                print(f"FAIL {cfg.stem}/{summary.name}:")
                for line in bad:
                    print(f"  {line}")
            else:
                print(f"ok   {cfg.stem}/{summary.name}")
    print(f"{checked - failures}/{checked} summaries recomputed from ticks.csv")
    return 1 if failures or checked == 0 else 0


if __name__ == "__main__":
    sys.exit(main())
