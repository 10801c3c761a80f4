"""Spectrum of the quantum Rabi model by diagonalization, Moroz's F0, Braak's G and the Birkhoff recurrence."""
from .model import (BaselineLabel, LevelRecord, Method, ModelParams, ParityLabel, SolutionClass,
                    baseline_energy, nearest_baseline)

__all__ = ["BaselineLabel", "LevelRecord", "Method", "ModelParams", "ParityLabel", "SolutionClass",
           "baseline_energy", "nearest_baseline"]
