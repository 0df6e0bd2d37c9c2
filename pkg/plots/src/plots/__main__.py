"""Allow ``python -m plots`` as an alias for the console script."""

from plots.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
