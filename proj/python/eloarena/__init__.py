"""Pairwise Elo tournament ranking for binary classification datasets."""

from ._core import (
    API_KEY_ENV_VAR,
    Choice,
    ClassificationReport,
    CurveReport,
    EloConfig,
    Instance,
    JsonlOptions,
    JudgeKind,
    JudgeSpec,
    Label,
    MatchHistory,
    MatchRecord,
    Outcome,
    PromptStyle,
    PromptTemplate,
    Rating,
    RemoteParams,
    RoundMetricsEntry,
    RoundSchedule,
    SchedulerKind,
    ScoredInstance,
    ThresholdMetrics,
    TournamentConfig,
    TournamentState,
    auroc,
    best_f1_threshold,
    classification_report,
    curve_report,
    expected_score,
    extract_choice,
    extract_label,
    init_ratings,
    init_tournament,
    judge_pair,
    load_checkpoint,
    load_cola_tsv,
    load_jsonl,
    pr_curve_and_auprc,
    rating_to_score,
    render_pairwise_prompt,
    render_single_prompt,
    resolve_template,
    resume_tournament,
    roc_curve,
    run_round,
    run_tournament,
    save_checkpoint,
    schedule_graph,
    schedule_random,
    schedule_swiss,
    scored_from_state,
    state_from_json,
    state_to_json,
    update_pair,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
