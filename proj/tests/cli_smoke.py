#!/usr/bin/env python3
"""Exit codes and artifacts of the motplan CLI."""

import json
import pathlib
import subprocess
import sys
import tempfile


def run(cli, *args):
    return subprocess.run([cli, *args], capture_output=True, text=True)


def main():
    cli, scenarios = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = []

    def expect(name, cond, proc=None):
        if not cond:
            failures.append(name + (f" (exit {proc.returncode}: {proc.stderr.strip()})" if proc else ""))

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        out = tmp / "out"
        p = run(cli, "run", str(scenarios / "scenario_2_crossing.json"), "--out", str(out), "--trace",
                "--associator", "greedy", "--obstacle-cost", "projected", "--seed", "2")
        expect("successful run exits 0", p.returncode == 0, p)
        for f in ("ticks.csv", "summary.json", "trace.csv"):
            expect(f"{f} written", (out / f).exists())
        if (out / "summary.json").exists():
            s = json.loads((out / "summary.json").read_text())
            expect("summary reports goal", s["goal_reached"] is True and s["collision"] is False)
        header = (out / "ticks.csv").read_text().splitlines()[0] if (out / "ticks.csv").exists() else ""
        expect("ticks.csv header", header.startswith(
            "t,ego_x,ego_y,ego_theta,cmd_v,cmd_omega,controller_ms,infeasible,min_sep,agent_id,x,y,vx,vy"))

        p = run(cli, "run", str(scenarios / "scenario_2_crossing.json"), "--out", str(tmp / "ttc"),
                "--obstacle-cost", "ttc", "--no-timing")
        expect("run that misses the goal exits 1", p.returncode == 1, p)

        p = run(cli, "replay", str(out / "ticks.csv"))
        expect("replay exits 0", p.returncode == 0 and "min separation" in p.stdout, p)

        p = run(cli, "run", str(tmp / "missing.json"))
        expect("missing config exits 4", p.returncode == 4, p)

        bad = tmp / "bad.json"
        bad.write_text('{"ego": {"start_pose": [0, 0, 0], "goal": [1, 0]}, "controller": {"n_v": "many"}}')
        p = run(cli, "run", str(bad), "--out", str(tmp / "bad"))
        expect("malformed config exits 3 and names the field",
               p.returncode == 3 and "controller.n_v" in p.stderr, p)

        p = run(cli, "run", str(scenarios / "scenario_2_crossing.json"), "--associator", "auction")
        expect("bad option exits 2", p.returncode == 2, p)

        p = run(cli, "replay", str(bad))
        expect("replay of a non-csv file fails", p.returncode != 0, p)

    for f in failures:
        print("FAIL", f)
    print("cli smoke:", "ok" if not failures else f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
