#!/usr/bin/env python3
"""End-to-end checks of the qalg command line tool."""
import json
import pathlib
import subprocess
import sys

exe, fixtures = sys.argv[1], pathlib.Path(sys.argv[2])
failures = []


def run(*args):
    p = subprocess.run([exe, *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def expect(ok, what):
    if not ok:
        failures.append(what)


code, out, _ = run("report", str(fixtures / "s82.json"), "--json")
r = json.loads(out)
expect(code == 0, "report s82 exit code")
expect(r["algebra"]["dim"] == 11, "dim A")
expect(r["ringel_dual"]["dim"] == 8, "dim R")
expect(r["two_step"]["two_step_dual"]["dim"] == 7, "dim B")
expect(r["two_step"]["A_vs_B_opposite"]["isomorphic"] is False, "A vs B^opp")
expect(json.loads(json.dumps(r)) == r, "round trip")

code, out, _ = run("report", str(fixtures / "s82.json"))
expect(code == 0 and "dim: 11" in out and "dim: 8" in out and "dim: 7" in out, "text report dims")

code, out, _ = run("analyze", "local_kx2", "--json")
r = json.loads(out)
expect(code == 0 and r["classification"]["properly_stratified"] is True, "local algebra PS")
row = r["modules"][0]
expect(row["Delta_is_projective"] is True and row["Nabla_is_injective"] is True, "local Delta=P, Nabla=I")

code, out, _ = run("twostep", "s82", "--json")
expect(code == 0 and '"ringel_dual_properly_stratified": true' in out, "twostep s82 json")

code, out, _ = run("findim", "s825", "--json")
r = json.loads(out)
expect(code == 0 and r["findim"]["findim"] == 2 and r["findim"]["pd_TR"] == 1, "findim s825")
expect(all(r["findim"]["identities"].values()), "findim identities")

for f in sorted(fixtures.glob("*.json")):
    first = run("report", str(f), "--json", "--certificates")
    second = run("report", str(f), "--json", "--certificates")
    expect(first[0] == 0, f"report {f.name} exit {first[0]}")
    expect(first[1] == second[1], f"report {f.name} not deterministic")

code, out, _ = run("twostep", "s82", "--field", "gf:7", "--json")
expect(code == 0 and json.loads(out)["algebra"]["field"] == "GF(7)", "field override")

expect(run("analyze", "no_such_file.json")[0] == 2, "missing file exit code")
expect(run("analyze", "s82", "--field", "gf:4")[0] == 2, "bad field exit code")
expect(run("frobnicate", "s82")[0] == 2, "bad subcommand exit code")
expect(run("ringel", "s82", "--cap", "0")[0] == 2, "bad cap exit code")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
