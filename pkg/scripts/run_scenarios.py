"""Run named scenarios and write one structured JSON document per scenario.

    python scripts/run_scenarios.py --out-dir reports example-a fermat
"""
import argparse
import json
import pathlib
import sys

from hodgeloci.scenarios import SCENARIOS, ScenarioConfig, run_scenarios


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", default=sorted(SCENARIOS))
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--skip-smooth", action="store_true")
    args = ap.parse_args(argv)
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    config = ScenarioConfig(seed=args.seed, check_smoothness=not args.skip_smooth)
    failed = 0
    for rep in run_scenarios(args.names, config, workers=args.workers):
        (out / f"{rep.name}.json").write_text(json.dumps(rep.as_dict(), indent=2) + "\n")
        print(f"{rep.name:16s} {'ok' if rep.passed else 'FAILED'} {rep.status} {rep.elapsed:.1f}s")
        failed += not rep.passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
