"""
Stage Manager - Dynamic stage loading and dispatch.
"""

import argparse
import importlib
import sys
import time
from typing import Dict, List, Optional

from core.config import EngineSettings
from core.errors import EngineError
from core.event_bus import EventBus
from stages.base import BaseStage
from systems.serialization import dumps


class StageManager:
    """
    Manages stage discovery, loading, and dispatch.

    Usage:
        manager = StageManager(event_bus, settings)
        manager.load_stages(["analyze", "normalize"])
        manager.register(subparsers)
        code = manager.run(args)
    """

    def __init__(self, event_bus: EventBus, settings: EngineSettings):
        self.event_bus = event_bus
        self.settings = settings
        self._stages: Dict[str, BaseStage] = {}

    def load_stage(self, stage_name: str) -> Optional[BaseStage]:
        """Load a single stage module by name."""
        for stage in self._stages.values():
            if stage.__class__.__module__ == f"stages.{stage_name}":
                return stage
        try:
            module = importlib.import_module(f"stages.{stage_name}")
        except ImportError as e:
            print(f"Failed to load stage {stage_name}: {e}", file=sys.stderr)
            return None

        stage_class = None
        for attr_name in dir(module):
            attr = getattr(module, attr_name)
            if isinstance(attr, type) and issubclass(attr, BaseStage) and attr is not BaseStage:
                stage_class = attr
                break
        if stage_class is None:
            print(f"No BaseStage subclass found in {stage_name}", file=sys.stderr)
            return None

        stage = stage_class(self.event_bus, self.settings)
        self._stages[stage.command] = stage
        return stage

    def load_stages(self, stage_names: List[str]) -> None:
        for name in stage_names:
            self.load_stage(name)

    def register(self, subparsers) -> None:
        """Add one sub-command per loaded stage."""
        for command, stage in self._stages.items():
            parser = subparsers.add_parser(command, help=stage.help)
            stage.add_arguments(parser)

    def get_stage(self, command: str) -> Optional[BaseStage]:
        return self._stages.get(command)

    @property
    def loaded_stages(self) -> List[str]:
        return list(self._stages.keys())

    def run(self, args: argparse.Namespace) -> int:
        """Dispatch to the chosen stage; engine errors become exit codes with JSON on stderr."""
        stage = self.get_stage(args.command)
        if stage is None:
            print(f"Unknown command: {args.command}", file=sys.stderr)
            return 2
        start = time.perf_counter()
        self.event_bus.publish("stage.started", {"command": args.command}, source="stage_manager")
        try:
            code = stage.run(args)
        except EngineError as e:
            print(e.message, file=sys.stderr)
            print(dumps(e.to_dict()).rstrip(), file=sys.stderr)
            code = e.exit_code
        self.event_bus.publish("stage.finished", {
            "command": args.command,
            "exit_code": code,
            "elapsed": time.perf_counter() - start,
        }, source="stage_manager")
        return code
