#!/usr/bin/env python3
"""End-to-end checks of the command-line tool."""

import json
import os
import struct
import subprocess
import sys
import tempfile

CLI = sys.argv[1]


def write_bands_ppm(path, w=64, h=64):
    colors = [(255, 0, 0), (0, 255, 0), (0, 0, 255)]
    base = w // 3
    data = bytearray()
    for _ in range(h):
        for x in range(w):
            data.extend(colors[min(2, x // base)])
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (w, h) + bytes(data))


def run(*args, expect=0):
    proc = subprocess.run([CLI] + list(args), capture_output=True, text=True)
    assert proc.returncode == expect, (
        f"{args} -> exit {proc.returncode} (want {expect})\n{proc.stdout}\n{proc.stderr}"
    )
    return proc.stdout


def read_pgm16(path):
    with open(path, "rb") as f:
        data = f.read()
    assert data.startswith(b"P5"), "expected a P5 label map"
    fields = data.split(maxsplit=4)
    w, h, maxval = int(fields[1]), int(fields[2]), int(fields[3])
    assert maxval == 65535
    raw = fields[4]
    return w, h, list(struct.unpack(f">{w * h}H", raw[: w * h * 2]))


def main():
    tmp = tempfile.mkdtemp(prefix="hseg_cli_")
    img = os.path.join(tmp, "bands.ppm")
    write_bands_ppm(img)
    out1 = os.path.join(tmp, "run1")
    out2 = os.path.join(tmp, "run2")

    # segment: labels + render + merge tree, deterministic across runs
    stdout = run("segment", img, "--n-visual", "3", "--out", out1)
    assert "displayed_segments=3" in stdout
    run("segment", img, "--n-visual", "3", "--out", out2)
    for name in ("labels.pgm", "render.ppm", "merge_tree.json"):
        a = open(os.path.join(out1, name), "rb").read()
        b = open(os.path.join(out2, name), "rb").read()
        assert a == b, f"{name} differs between identical runs"

    w, h, labels = read_pgm16(os.path.join(out1, "labels.pgm"))
    assert (w, h) == (64, 64)
    assert sorted(set(labels)) == [0, 1, 2]
    # left band is label 0, and bands split at columns 21 and 42
    row = labels[:64]
    assert row == [0] * 21 + [1] * 21 + [2] * 22

    tree = json.load(open(os.path.join(out1, "merge_tree.json")))
    assert tree["leaf_count"] == 3
    assert len(tree["nodes"]) == 5

    # threshold cut variant
    run("segment", img, "--t-visual", "0.5", "--out", out1)
    # neither or both cut flags -> usage error
    run("segment", img, "--out", out1, expect=2)
    run("segment", img, "--n-visual", "2", "--t-visual", "0.5", "--out", out1, expect=2)

    # boundaries: nonzero exactly on the two seams
    run("boundaries", img, "--out", out1)
    with open(os.path.join(out1, "boundaries.pgm"), "rb") as f:
        data = f.read()
    fields = data.split(maxsplit=4)
    assert fields[0] == b"P5" and int(fields[3]) == 255
    gray = fields[4]
    seam_cols = {20, 21, 41, 42}
    for y in range(64):
        for x in range(64):
            v = gray[y * 64 + x]
            if x in seam_cols:
                assert v > 0, f"seam pixel ({x},{y}) is zero"
            else:
                assert v == 0, f"interior pixel ({x},{y}) is {v}"

    # tree: both hierarchy dumps
    run("tree", img, "--out", out1)
    quad = json.load(open(os.path.join(out1, "quadtree.json")))
    assert quad["nodes"][quad["root"]]["kind"] == "non-chaos"
    json.load(open(os.path.join(out1, "merge_tree.json")))

    # eval: one-line CSV to stdout plus json report
    csv_line = run("eval", img, "--labels", os.path.join(out1, "labels.pgm"), "--out", out1).strip()
    values = [float(v) for v in csv_line.split(",")]
    assert len(values) == 4
    report = json.load(open(os.path.join(out1, "eval.json")))
    assert abs(report["e"] - (report["h_r"] + report["h_l"])) == 0.0
    assert report["regions"] == 3
    assert open(os.path.join(out1, "eval.csv")).read().strip() == csv_line

    # auto-k
    assert run("auto-k", img).strip() == "3"

    # flat image: a single displayed segment labels everything zero, and
    # scoring the image against its own map gives the pure area terms
    flat = os.path.join(tmp, "flat.ppm")
    with open(flat, "wb") as f:
        f.write(b"P6\n4 4\n255\n" + bytes([40, 90, 140]) * 16)
    flat_out = os.path.join(tmp, "flat_out")
    run("segment", flat, "--n-visual", "1", "--out", flat_out)
    w, h, labels = read_pgm16(os.path.join(flat_out, "labels.pgm"))
    assert (w, h) == (4, 4) and set(labels) == {0}
    csv_line = run("eval", flat, "--labels", os.path.join(flat_out, "labels.pgm"),
                   "--out", flat_out).strip()
    q, h_r, h_l, e = (float(v) for v in csv_line.split(","))
    assert abs(q - 1.0 / (1000 * 16) / 256) < 1e-15
    assert h_r == 0.0 and h_l == 0.0 and e == 0.0
    assert run("auto-k", flat).strip() == "3"

    # error paths: missing file -> 1, bad flag -> 2
    run("segment", os.path.join(tmp, "missing.ppm"), "--n-visual", "2", expect=1)
    run("segment", img, "--no-such-flag", expect=2)
    run("nonsense", expect=2)

    print("cli ok")


if __name__ == "__main__":
    main()
