#!/usr/bin/env python3
"""
Batch report script that checks and builds every target of many session files.

Usage:
    python batch_report.py sessions/*.yaml                   # Report on several sessions
    python batch_report.py --file sessions.txt               # Read session paths from file
    python batch_report.py sessions/two.yaml --jobs 4        # Run sessions in parallel

The script will:
1. Create a 'reports' directory
2. For each session, run the same pipeline as `python -m freydlab report` and save JSON
3. Provide summary of successful and failed sessions
"""

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime
from pathlib import Path

from freydlab.codec import dumps, encode_error
from freydlab.config import get_config
from freydlab.errors import FreydLabError
from freydlab.session import load_session
from freydlab.workbench import Workbench

logger = logging.getLogger(__name__)


def create_output_directory(output_dir="reports"):
    """Create output directory if it doesn't exist

    Args:
        output_dir: Directory name to create

    Returns:
        Path object for the directory
    """
    output_path = Path(output_dir)
    output_path.mkdir(parents=True, exist_ok=True)
    return output_path


def report_session(path, output_dir, bounds=None):
    """Check one session and dump its targets

    Args:
        path: Session file
        output_dir: Output directory path
        bounds: Bounds overriding the configured ones

    Returns:
        Dictionary with results
    """
    result = {
        "session": str(path),
        "success": False,
        "json_path": None,
        "targets": 0,
        "error": None,
        "duration": 0,
    }
    start_time = datetime.now()
    json_path = Path(output_dir) / f"{Path(path).stem}.json"

    try:
        session = load_session(str(path), bounds=bounds)
        report = Workbench(session, bounds=bounds, workers=1).report()
        json_path.write_text(dumps(report) + "\n", encoding="utf-8")
        result["json_path"] = json_path
        result["targets"] = len(report["targets"])
        failed = [name for name, dump in report["targets"].items() if "error" in dump]
        if not report["check"]["ok"]:
            result["error"] = "session check failed"
        elif failed:
            result["error"] = f"targets failed: {', '.join(failed)}"
        else:
            result["success"] = True
    except FreydLabError as e:
        json_path.write_text(dumps(encode_error(e)) + "\n", encoding="utf-8")
        result["json_path"] = json_path
        result["error"] = f"{type(e).__name__}: {e}"
    except OSError as e:
        result["error"] = str(e)

    result["duration"] = (datetime.now() - start_time).total_seconds()
    return result


def read_sessions_from_file(filepath):
    """Read session paths from a text file (one per line, '#' starts a comment)"""
    sessions = []
    with open(filepath, "r") as f:
        for line in f:
            path = line.strip()
            if path and not path.startswith("#"):
                sessions.append(path)
    return sessions


def print_summary(results):
    """Print summary of batch report results

    Args:
        results: List of result dictionaries
    """
    print("\n" + "=" * 90)
    print("BATCH REPORT SUMMARY")
    print("=" * 90)

    successful = [r for r in results if r["success"]]
    failed = [r for r in results if not r["success"]]

    print(f"\n✅ Successful: {len(successful)}/{len(results)}")
    print(f"❌ Failed: {len(failed)}/{len(results)}")
    print(f"⏱️  Total time: {sum(r['duration'] for r in results):.1f}s")

    if successful:
        print("\n" + "-" * 90)
        print("SUCCESSFUL SESSIONS:")
        print("-" * 90)
        for r in successful:
            print(f"  ✓ {r['session']:<32} - JSON: {r['json_path'].name}, {r['targets']} target(s) ({r['duration']:.1f}s)")

    if failed:
        print("\n" + "-" * 90)
        print("FAILED SESSIONS:")
        print("-" * 90)
        for r in failed:
            print(f"  ✗ {r['session']:<32} - {r['error']}")

    print("\n" + "=" * 90)


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="Batch reports for many session files.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Report on every sample session
  python batch_report.py sessions/*.yaml

  # Read session paths from file
  python batch_report.py --file sessions.txt

  # Four sessions at a time, with a tighter certificate bound
  python batch_report.py sessions/*.yaml --jobs 4 --bound-cert 3

  # Custom output directory
  python batch_report.py sessions/*.yaml --output-dir my_reports
        """,
    )

    parser.add_argument("sessions", nargs="*", help="Session files to report on")
    parser.add_argument("--file", "-f", help="Read session paths from file (one per line)")
    parser.add_argument("--output-dir", "-o", default="reports", help="Output directory (default: reports)")
    parser.add_argument("--jobs", "-j", type=int, default=1, help="Sessions processed at once (default: 1)")
    parser.add_argument("--bound-cert", type=int, help="Override the certificate depth bound")
    parser.add_argument("--bound-sat", type=int, help="Override the saturation bound")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")

    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    sessions = []
    if args.file:
        try:
            sessions = read_sessions_from_file(args.file)
            print(f"📁 Read {len(sessions)} sessions from {args.file}")
        except Exception as e:
            print(f"Error reading file {args.file}: {e}")
            return 1
    elif args.sessions:
        sessions = list(args.sessions)
    else:
        print("Error: No sessions specified. Use positional arguments or --file.")
        parser.print_help()
        return 1

    try:
        bounds = get_config().bounds(cert=args.bound_cert, sat=args.bound_sat)
    except FreydLabError as e:
        print(f"Error: {e}")
        return 1

    output_dir = create_output_directory(args.output_dir)
    print(f"📂 Output directory: {output_dir.absolute()}")
    print(f"🎯 Processing {len(sessions)} session(s)...")
    print()

    # map keeps input order whatever order the sessions finish in
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as executor:
        results = list(executor.map(lambda p: report_session(p, output_dir, bounds), sessions))

    for i, result in enumerate(results, 1):
        status = f"✅ ({result['duration']:.1f}s)" if result["success"] else f"❌ {result['error']}"
        print(f"[{i}/{len(results)}] {result['session']} {status}")

    print_summary(results)

    failed_count = sum(1 for r in results if not r["success"])
    return 0 if failed_count == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
