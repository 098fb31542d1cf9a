"""Allow running etgeom as `python -m etgeom`."""

from etgeom.cli import main

raise SystemExit(main())
