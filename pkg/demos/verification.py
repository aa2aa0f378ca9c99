"""Run the symbolic verification suite on A3 and report the summary.

Pass --all to include D4 and F4 (about half a minute).

    python demos/verification.py [--all]
"""
import sys

from steinberg.verify import run_all

systems = ("A3", "D4", "F4") if "--all" in sys.argv else ("A3",)
report = run_all(systems)
for c in report["checks"]:
    cases = c["configuration"].get("cases", "")
    print(f"{c['status']:4}  {c['check_id']:45} {cases}")
print(report["summary"])
for f in report.get("findings", []):
    print("finding:", f["topic"], f["system"], f.get("result", ""))
