"""Compiled vs pure-Python Weingarten kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Each backend runs in a fresh interpreter so that the integral caches start
empty and ``KMP_SPECTRA_PURE_PYTHON`` selects the fallback at import time.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "torinv n=4 k=3 (all B)": (
        "from kmp_spectra.weingarten import projection_torinv_skk\n"
        "for m in range(1 << 4): projection_torinv_skk(m, 4, 3)\n"
    ),
    "torinv n=5 k=3 (all B)": (
        "from kmp_spectra.weingarten import projection_torinv_skk\n"
        "for m in range(1 << 5): projection_torinv_skk(m, 5, 3)\n"
    ),
    "R_{2,2} n=3 (all B)": (
        "from kmp_spectra.weingarten import projection_rkm\n"
        "for m in range(1 << 3): projection_rkm(m, 3, 2, 2)\n"
    ),
    "R_{3,3} n=2 (all B)": (
        "from kmp_spectra.weingarten import projection_rkm\n"
        "for m in range(1 << 2): projection_rkm(m, 2, 3, 3)\n"
    ),
}

RUNNER = """
import json, time
from kmp_spectra import kernels
t = time.perf_counter()
exec(compile({code!r}, "workload", "exec"))
print(json.dumps({{"backend": kernels.BACKEND, "seconds": time.perf_counter() - t}}))
"""


def run(code: str, pure: bool) -> dict:
    env = dict(os.environ)
    env.pop("KMP_SPECTRA_PURE_PYTHON", None)
    if pure:
        env["KMP_SPECTRA_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", RUNNER.format(code=code)], env=env, check=True,
                         capture_output=True, text=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'workload':28s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, code in WORKLOADS.items():
        comp = [run(code, False) for _ in range(args.repeat)]
        py = [run(code, True) for _ in range(args.repeat)]
        if comp[0]["backend"] != "compiled":
            print(f"{name:28s} extension not built; only the python backend is available")
            continue
        c = min(r["seconds"] for r in comp)
        p = min(r["seconds"] for r in py)
        print(f"{name:28s} {c:10.3f} {p:10.3f} {p / c:7.1f}x")


if __name__ == "__main__":
    main()
