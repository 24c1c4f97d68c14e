#!/usr/bin/env python3
"""Run the default suite: dimension tables, property checks, and
certificates for the shipped presentations. Outputs land in --outdir."""

import argparse
import pathlib
import sys

from nilpow.cli import main as cli_main

SUITE = [
    # (m, nil, certify_degree, table_degree)
    ("2", "2,2", 24, 12),
    ("2", "3,3", 8, 8),
    ("3", "2,2,2", 9, 8),
    ("1", "4", 8, 8),
]


def run(outdir: pathlib.Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for m, nil, cert_d, table_d in SUITE:
        tag = f"m{m}_nil{nil.replace(',', '-')}"
        print(f"== {tag} ==")
        cli_main(
            ["dims", "--generators", m, "--nil", nil, "--max-degree", str(table_d),
             "--levels", "3", "--out", str(outdir / f"dims_{tag}.csv")]
        )
        code = cli_main(
            ["certify", "--i", "1", "--generators", m, "--nil", nil,
             "--max-degree", str(cert_d), "--out", str(outdir / f"cert_{tag}.json")]
        )
        print(f"certify --i 1 (D={cert_d}): exit {code}")
        worst = max(worst, 0 if code == 2 else code)
        code = cli_main(
            ["check", "all", "--generators", m, "--nil", nil,
             "--max-degree", str(table_d), "--trials", "100", "--seed", "0"]
        )
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=pathlib.Path, default=pathlib.Path("out"))
    sys.exit(run(ap.parse_args().outdir))
