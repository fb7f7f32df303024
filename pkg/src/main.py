#!/usr/bin/env python3
import sys
from multiprocessing import freeze_support

from app import create_app


def main() -> int:
    freeze_support()
    try:
        app = create_app()

        return app.run(sys.argv[1:])

    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return 130
    except Exception as e:
        print(f"Fatal error in the application: {e}", file=sys.stderr)
        raise


if __name__ == "__main__":
    sys.exit(main())
