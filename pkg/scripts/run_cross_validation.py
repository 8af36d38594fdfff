#!/usr/bin/env python3
"""
Cross-check the specialised game solvers against the graph solver.

Usage:
    # Default seed and instance count from config/config.yaml
    python scripts/run_cross_validation.py

    # Reproducible smaller run with a CSV of every instance
    python scripts/run_cross_validation.py --seed 11 --instances 100 --csv results/cross_validation.csv
"""

import sys
import os
import argparse
import logging

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.games.cross_validation import CrossValidator
from src.utils.logger import setup_logger


def parse_args():
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description='Cross-validate game solvers on random instances',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__
    )
    parser.add_argument('--seed', type=int, help='Random seed (default from config)')
    parser.add_argument('--instances', type=int, help='Instances per family (default from config)')
    parser.add_argument('--max-word-length', type=int, help='Longest input word in tags')
    parser.add_argument('--csv', type=str, help='Write per-instance results to this CSV file')
    parser.add_argument(
        '--log-level',
        type=str,
        default='INFO',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='Logging level'
    )
    return parser.parse_args()


def main():
    """Main entry point."""
    args = parse_args()
    setup_logger(level=args.log_level)

    validator = CrossValidator(seed=args.seed, instances=args.instances, max_word_length=args.max_word_length)
    try:
        results = validator.run_all()
        validator.print_summary(results)
        if args.csv:
            os.makedirs(os.path.dirname(os.path.abspath(args.csv)), exist_ok=True)
            results.to_csv(args.csv, index=False)
            print(f"✓ Results written to {args.csv}")
        mismatches = CrossValidator.summarize(results)['mismatches'].sum()
        return 1 if mismatches else 0

    except KeyboardInterrupt:
        print("\n\n⚠️  Cross-validation interrupted by user\n")
        return 1
    except Exception as e:
        print(f"\n✗ Error running cross-validation: {e}\n")
        logging.exception("Cross-validation failed")
        return 1


if __name__ == '__main__':
    sys.exit(main())
