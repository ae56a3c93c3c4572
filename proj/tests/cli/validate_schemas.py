"""Validates every fixture and its report against the JSON schemas."""
import json
import pathlib
import subprocess
import sys

import jsonschema

udfkit, schemas = sys.argv[1], pathlib.Path(sys.argv[2])
job_schema = json.loads((schemas / "udfkit.job-1.schema.json").read_text())
report_schema = json.loads((schemas / "udfkit.report-1.schema.json").read_text())

names = subprocess.run([udfkit, "emit-example"], capture_output=True, text=True, check=True).stdout.split()
for name in names:
    job = json.loads(subprocess.run([udfkit, "emit-example", name], capture_output=True, text=True, check=True).stdout)
    jsonschema.validate(job, job_schema)
    out = subprocess.run([udfkit, "--job", "-", "--format", "json"], input=json.dumps(job), capture_output=True, text=True)
    report = json.loads(out.stdout)
    jsonschema.validate(report, report_schema)
    assert out.returncode == {"pass": 0, "fail": 1, "error": 2}[report["status"]], name
    print("ok", name, report["status"])

bad = subprocess.run([udfkit, "--job", "-", "--format", "json"], input="{", capture_output=True, text=True)
assert bad.returncode == 2
jsonschema.validate(json.loads(bad.stdout), report_schema)
