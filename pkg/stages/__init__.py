"""
Stages package for the realization engine.
Each module defines one BaseStage subclass, loaded by name from the
``stages`` list in the configuration.
"""
