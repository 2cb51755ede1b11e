"""
Core module for the realization engine.
Contains Event Bus, Config Loader and the error hierarchy.
"""
