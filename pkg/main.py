"""
Lattice Realization Engine - Exact first-order realizations of linear partial difference systems.

Main entry point for the command line.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from algebra.groebner import get_cache
from core.config import Config, EngineSettings, load_config
from core.event_bus import get_event_bus
from core.monitor import ResourceMonitor
from stages.manager import StageManager


def build_parser(manager: StageManager) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-engine",
        description="Normalization, regularization and explicit solution of autonomous nD systems over Z^n",
    )
    parser.add_argument("--config", default="config.yaml", help="YAML config file (defaults are used if missing)")
    parser.add_argument("--log-level", help="override logging.level")
    subparsers = parser.add_subparsers(dest="command", required=True)
    manager.register(subparsers)
    return parser


def _config_from_argv(argv: List[str]) -> Config:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default="config.yaml")
    known, _ = pre.parse_known_args(argv)
    if Path(known.config).exists():
        return load_config(known.config)
    return Config.defaults()


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config = _config_from_argv(argv)
        settings = EngineSettings.from_config(config)
    except (ValueError, OSError) as e:
        print(f"Error: invalid configuration: {e}", file=sys.stderr)
        return 2

    get_cache().resize(settings.gb_cache_size)
    event_bus = get_event_bus()
    manager = StageManager(event_bus, settings)
    manager.load_stages(settings.stages)

    parser = build_parser(manager)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    level = (args.log_level or config.get("logging.level", "INFO")).upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    ResourceMonitor().attach(event_bus)

    return manager.run(args)


if __name__ == "__main__":
    sys.exit(main())
