"""Regenerates data/corpus/fixtures.json from the bbcrystal binary."""

import json
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ["sl2", "iso1", "im1", "sl3", "reiso", "reim"]
COUNT_HEIGHT = 5
CERT_HEIGHT = 4


def run(binary, *args):
    out = subprocess.run([binary, *args], check=False, capture_output=True, text=True)
    if out.returncode not in (0, 1):
        sys.exit(f"{' '.join(args)}: {out.stderr}")
    return json.loads(out.stdout)


def fixture(binary, name):
    path = str(ROOT / "data" / "corpus" / f"{name}.json")
    rank = len(json.loads(pathlib.Path(path).read_text())["A"])
    lam = ",".join(["1"] * rank)
    entry = {"lambda": [1] * rank, "count_height": COUNT_HEIGHT, "cert_height": CERT_HEIGHT}
    for kind, extra in (("binf", []), ("blambda", ["--lambda", lam])):
        crystal = run(binary, "crystal", kind, "--datum", path, "--height", str(COUNT_HEIGHT), *extra)
        entry[kind] = {"counts": crystal["counts"]}
        for side in ("check-lower", "check-upper"):
            cert = run(binary, "perfect", side, "--datum", path, "--height", str(CERT_HEIGHT), *extra)
            entry[kind][side] = cert["certificate"]["digest"]
    return entry


def main():
    binary = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "build" / "bbcrystal")
    out = {name: fixture(binary, name) for name in CORPUS}
    (ROOT / "data" / "corpus" / "fixtures.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
