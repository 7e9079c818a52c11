from centlab.cli import main

raise SystemExit(main())
