"""
Managers module
High-level managers for complex operations
"""

from .experiment_manager import GridSpec, EvalReport, run_experiment, rank_scores_frame, score_gains

__all__ = ['GridSpec', 'EvalReport', 'run_experiment', 'rank_scores_frame', 'score_gains']
