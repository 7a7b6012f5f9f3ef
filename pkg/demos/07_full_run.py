"""Every stage in one call, with the JSON report validated against its
schema.  Equivalent to `diamond7 verify-all --json report.json`."""

import sys

from diamond7.pipeline import run_full_verification, validate_report

report = run_full_verification()
obj = report.to_json()
for st in obj["stages"]:
    print("%-26s %-7s %6.1fs" % (st["name"], st["status"], st["seconds"]))
validate_report(obj)
print("overall:", "PASS" if report.passed else "FAIL")
if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(report.dumps())
