"""
End-to-end verification of the family
======================================

Build the family, search for the generic perturbation, and check every claim:
h1(O) is 1 on the special fibre and 0 on the sampled general fibres.
"""

# %%
import json

from h1jump.pipeline import FamilyConfig, verify

config = FamilyConfig()
report, lock = verify(config)
print("pass:", report.passed)
print("tau lock:", json.dumps(lock, sort_keys=True))

# %%
# The headline numbers.
d = report.data
print("c = 0:", {k: d["t0"][k] for k in ("h1", "h2")})
for rec in d["samples"]:
    print(f"c = {rec['c']}:", {k: rec[k] for k in ("h1", "h2")}, rec["smooth"])

# %%
# Every individual check, mandatory or not.
for c in d["checks"]:
    print(("ok  " if c["pass"] else "FAIL"), c["name"])

# %%
# Replaying the lock reproduces the report byte for byte.
again, _ = verify(config, lock=lock)
print("identical:", again.to_json() == report.to_json())
