"""Allow ``python -m cuspsum`` as an alias for the console script."""

from cuspsum.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
