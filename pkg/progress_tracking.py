"""
PolyBisect Progress Tracking Module
Phase-weighted progress reporting for long-running commands (count suites, cone export).
Updates are logged and kept in a short history so callers can inspect them.
"""
import logging
import time
from typing import Any, Dict, List, Optional

from config import PROGRESS_LOG_STEP, PROGRESS_PHASE_WEIGHTS
from utils import format_duration

logger = logging.getLogger(__name__)


class ProgressTracker:
    """
    Track progress of a run as weighted phases, one of which may be split into units
    (dimensions of a suite, facet pairs of an export).
    """

    def __init__(self, run_id: str, work_units: int = 1, unit_phase: str = "enumerating"):
        self.run_id = run_id
        self.start_time = time.time()
        self.completed = False
        self.error_occurred = False
        self.results: Optional[Dict[str, Any]] = None
        self.unit_phase = unit_phase
        self.work_units = max(1, work_units)
        self.units_done = 0
        self.history: List[Dict[str, Any]] = []
        self._last_logged = -PROGRESS_LOG_STEP

        self.phases = {name: {"weight": weight, "completed": False}
                       for name, weight in PROGRESS_PHASE_WEIGHTS.items()}
        self.total_weight = sum(phase["weight"] for phase in self.phases.values())
        self.current_progress = 0.0

    def start_phase(self, phase_name: str, message: str):
        if phase_name in self.phases:
            self.phases[phase_name]["completed"] = False
        self._recompute()
        self._send_update(phase_name, message, force=True)

    def update(self, phase_name: str, message: str, mark_complete: bool = True):
        if mark_complete and phase_name in self.phases:
            self.phases[phase_name]["completed"] = True
        self._recompute()
        self._send_update(phase_name, message, force=True)

    def advance(self, message: str, units: int = 1):
        """Count finished units of the unit phase."""
        self.units_done = min(self.work_units, self.units_done + units)
        self._recompute()
        self._send_update(self.unit_phase, message)

    def complete(self, results: Optional[Dict[str, Any]] = None):
        self.completed = True
        self.results = results
        self.current_progress = 100.0
        self._send_update("complete", "Run completed", force=True)
        logger.info(f"Run {self.run_id} completed in {format_duration(time.time() - self.start_time)}")

    def set_error(self, error_message: str):
        self.error_occurred = True
        self._send_update("error", error_message, force=True)

    def _recompute(self):
        done = sum(phase["weight"] for phase in self.phases.values() if phase["completed"])
        unit = self.phases.get(self.unit_phase)
        if unit and not unit["completed"]:
            done += unit["weight"] * self.units_done / self.work_units
        self.current_progress = min(95.0, done / self.total_weight * 100)

    def _send_update(self, step: str, message: str, force: bool = False):
        update = {
            "step": step,
            "message": message,
            "percentage": self.current_progress,
            "time_elapsed": time.time() - self.start_time
        }
        self.history.append(update)
        if force or self.current_progress - self._last_logged >= PROGRESS_LOG_STEP:
            self._last_logged = self.current_progress
            log = logger.error if step == "error" else logger.info
            log(f"[{self.run_id}] {self.current_progress:5.1f}% {message}")


def create_progress_tracker(run_id: str, work_units: int = 1,
                            unit_phase: str = "enumerating") -> ProgressTracker:
    """Create a progress tracker for a run."""
    return ProgressTracker(run_id, work_units, unit_phase)
