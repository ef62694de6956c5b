"""
Instance files and the command line
===================================

Native JSON round-trips byte for byte; TSPLIB explicit matrices are read
with decimal weights scaled to integers.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from difftsp.generate import random_instance
from difftsp.io import dump_native, dump_tsplib, parse_native, parse_tsplib

inst = random_instance(5, "onetwo", seed=7)
text = dump_native(inst)
print(text)
print("round trip identical:", dump_native(parse_native(text)) == text)

tsp = dump_tsplib(inst, "LOWER_DIAG_ROW")
print(tsp)
print("same weights:", (parse_tsplib(tsp).weights == inst.weights).all())

DECIMAL = """NAME: halves
TYPE: TSP
DIMENSION: 3
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: FULL_MATRIX
EDGE_WEIGHT_SECTION
0 1.5 2
1.5 0 2.25
2 2.25 0
EOF
"""
scaled = parse_tsplib(DECIMAL)
print("decimal weights scaled by 10 **", scaled.scale, "->", scaled.rows)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "k8.json"
    cli = [sys.executable, "-m", "difftsp"]
    subprocess.run(cli + ["gen", "--n", "8", "--dist", "euclidean:50", "--seed", "1", "--out", str(path)], check=True)
    out = subprocess.run(cli + ["solve", "--in", str(path), "--oracle", "--audit"], capture_output=True, text=True, check=True)
    report = json.loads(out.stdout)
    print("solve:", report["algorithm"], report["apx"], report["oracle"])
    bad = Path(tmp) / "bad.json"
    bad.write_text("{ not json")
    done = subprocess.run(cli + ["solve", "--in", str(bad)], capture_output=True, text=True)
    print("malformed input exit code", done.returncode, "|", done.stderr.strip())
