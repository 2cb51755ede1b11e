"""
Base Stage - Common surface of every CLI stage plugin.
"""

import argparse
from abc import ABC, abstractmethod
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from algebra.parser import split_box
from core.config import EngineSettings
from core.errors import ParseError
from core.event_bus import Event, EventBus
from systems.serialization import write_json


class BaseStage(ABC):
    """
    Base class for all stages.

    A stage registers one sub-command: ``add_arguments`` declares its
    flags and ``run`` executes it, returning the process exit code.
    """

    command: str = ""
    help: str = ""

    def __init__(self, event_bus: EventBus, settings: EngineSettings):
        self.event_bus = event_bus
        self.settings = settings
        self.name = self.__class__.__name__

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare the sub-command's arguments."""

    @abstractmethod
    def run(self, args: argparse.Namespace) -> int:
        """Execute the stage; raise EngineError subclasses on failure."""

    def publish(self, event_name: str, data: Dict[str, Any]) -> Event:
        return self.event_bus.publish(event_name, data, source=self.name)

    # ==================== Helpers ====================

    def settings_for(self, args: argparse.Namespace) -> EngineSettings:
        """Settings with command-line overrides applied."""
        overrides = {}
        for flag, key in (("t_bound", "t_bound"), ("cert_bound", "cert_degree_bound"), ("seed", "seed")):
            value = getattr(args, flag, None)
            if value is not None:
                overrides[key] = value
        if getattr(args, "no_verify", False):
            overrides["verify"] = False
        return replace(self.settings, **overrides)

    def rng(self, settings: Optional[EngineSettings] = None) -> np.random.Generator:
        return np.random.default_rng((settings or self.settings).seed)

    @staticmethod
    def parse_box(text: str, dim: int):
        ranges = split_box(text)
        if len(ranges) != dim:
            raise ParseError(f"Box has {len(ranges)} ranges, expected {dim}", line=1, column=1,
                             details={"box": text})
        return tuple(lo for lo, _ in ranges), tuple(hi for _, hi in ranges)

    def emit(self, data: Dict[str, Any], out: Optional[str]) -> None:
        if out:
            write_json(data, out)
            print(f"Wrote {Path(out)}")

    @staticmethod
    def add_common(parser: argparse.ArgumentParser, flags: List[str]) -> None:
        if "out" in flags:
            parser.add_argument("--out", help="output JSON path")
        if "t-bound" in flags:
            parser.add_argument("--t-bound", type=int, help="bounded t-search radius")
        if "cert-bound" in flags:
            parser.add_argument("--cert-bound", type=int, help="certificate combination degree bound")
        if "seed" in flags:
            parser.add_argument("--seed", type=int, help="seed for random choices")
