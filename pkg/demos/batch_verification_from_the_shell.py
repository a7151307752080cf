"""
Batch verification from the shell
=================================

The same machinery drives a small CLI.  This script shells out to it the
way a reproducibility harness would: generate a corpus, run a grid of
checks, and read back the versioned JSON report.
"""

import json
import subprocess
import sys

base = [sys.executable, "-m", "hgineq"]

# Verify the main inequality and the first-order bound over a seeded
# corpus of 6 fields on the Heisenberg group.  Exit status 0 means every
# produced report is satisfied within its error margin.
proc = subprocess.run(
    base + ["verify", "--group", "heis1", "--check", "ckn,hardy",
            "--p", "1.5,2", "--alpha", "0", "--beta", "1",
            "--count", "6", "--seed", "42"],
    capture_output=True, text=True,
)
print(proc.stderr.strip())
doc = json.loads(proc.stdout)
print(f"schema v{doc['schema']}, {len(doc['reports'])} reports, "
      f"{len(doc['meta']['skipped'])} skipped")
for rep in doc["reports"][:4]:
    print(f"  {rep['check_id']:6s} {rep['field_id']:14s} "
          f"lhs={rep['lhs']:.6g}  rhs={rep['rhs']:.6g}  ok={rep['satisfied']}")

# The sphere-measure subcommand exposes the polar-decomposition constant
# directly; --resolution trades time for digits.
proc = subprocess.run(
    base + ["sphere-measure", "--group", "aniso:1,2"],
    capture_output=True, text=True,
)
sigma = json.loads(proc.stdout)
print(f"\naniso:1,2 |sigma| = {sigma['value']:.10f} +/- {sigma['error']:.2e}")

# Constants never need quadrature: this prints the closed-form table,
# flagging parameter points where a defining factor vanishes.
proc = subprocess.run(
    base + ["constants", "--group", "heis1", "--p", "2",
            "--alpha", "1", "--beta", "0.5", "--theta", "0.5", "--k", "2"],
    capture_output=True, text=True,
)
table = json.loads(proc.stdout)["constants"]
for name, entry in sorted(table.items()):
    if entry.get("degenerate"):
        print(f"  {name:15s} degenerate (factor {entry['factor_index']})")
    else:
        print(f"  {name:15s} {entry['value']:.6g}")
