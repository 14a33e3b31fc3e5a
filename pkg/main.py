#!/usr/bin/env python3
"""Run kemenyqa from a checkout without installing it."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from kemenyqa.cli import main  # noqa: E402

if __name__ == "__main__":
    try:
        sys.exit(main(sys.argv[1:]))
    except KeyboardInterrupt:
        # stdout carries reports, keep chatter off it
        print("\nAggregation cancelled by user", file=sys.stderr)
        sys.exit(130)
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(1)
