# app/cli/commands.py
# ---------------------------------------------------------------------
# One handler per CLI command. Handlers return (document, exit code);
# run() renders the document on stdout. All logging goes to stderr.
# ---------------------------------------------------------------------

import logging
import sys
from typing import Callable, Dict, Optional, TextIO, Tuple

from app import config
from app.cli import reader
from app.cli.output import Document
from app.schemas.analysis import EmbeddingParams
from app.schemas.pattern import TiePolicy
from app.schemas.run_config import RunConfig
from app.services import analysis_service, oracle_service, ordinal_service, symmetry_service
from app.utils.errors import EXIT_CLAIM_FAILURE, EXIT_OK, DimensionTooLargeError
from app.utils.formatting import format_values

logger = logging.getLogger(__name__)

Result = Tuple[Document, int]

IRREVERSIBILITY_NOTE = (
    "library-defined statistic: half the L1 distance between the pattern "
    "distribution and its reversed-pattern image"
)

# Worked examples printed by `demo`: a time-symmetric pair of tie-free
# vectors and a time-symmetric pair with one tie.
DEMO_PAIRS = (
    ("tie-free", (9, 3, 7, 1, 5), (5, 1, 7, 3, 9), (TiePolicy.OCCURRENCE_ORDER,)),
    ("equal-values", (3, 1, 7, 1, 5), (5, 1, 7, 1, 3), tuple(TiePolicy)),
)


def _series_meta(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "m": cfg.m,
        "tau": cfg.tau,
        "kind": cfg.kind.value,
        "policy": cfg.policy.value,
        "quantize": cfg.quantize,
    }


def _load_series(cfg: RunConfig, text: str):
    series = reader.read_series(cfg.input, cfg.column, text=text)
    if cfg.quantize is not None:
        series = analysis_service.quantize(series, cfg.quantize)
    return series


def _distribution(cfg: RunConfig):
    text = reader.load_text(cfg.input)
    params = EmbeddingParams(m=cfg.m, tau=cfg.tau)
    series = _load_series(cfg, text)
    return analysis_service.series_distribution(series, params, cfg.kind, cfg.policy), series, params


# --- Series commands ----------------------------------------------------

def cmd_encode(cfg: RunConfig) -> Result:
    text = reader.load_text(cfg.input)
    series = _load_series(cfg, text)
    params = EmbeddingParams(m=cfg.m, tau=cfg.tau)
    windows = analysis_service.embed(series, params)
    patterns = analysis_service.encode_series(series, params, cfg.kind, cfg.policy)
    records = [
        {"window": w.source_index, "values": format_values(w.values), "pattern": p.key}
        for w, p in zip(windows, patterns)
    ]
    meta = {**_series_meta(cfg), "windows": len(records)}
    return Document(meta).add_table("windows", records), EXIT_OK


def _hist_document(meta: dict, d) -> Document:
    records = [{"pattern": key, "count": count, "probability": prob} for key, count, prob in d.records()]
    meta = {**meta, "command": "hist", "total": d.total, "distinct": len(d.counts)}
    return Document(meta).add_table("distribution", records)


def cmd_hist(cfg: RunConfig) -> Result:
    text = reader.load_text(cfg.input)
    if reader.looks_encoded(text):
        enc = reader.read_encoded(text)
        logger.info(f"hist: reading {len(enc.patterns)} patterns from an encode document")
        params = EmbeddingParams(m=enc.m, tau=enc.tau)
        d = analysis_service.distribution(enc.patterns, params=params)
        meta = {"command": "hist", "m": enc.m, "tau": enc.tau, "kind": enc.kind.value,
                "policy": enc.policy.value, "quantize": enc.quantize}
        return _hist_document(meta, d), EXIT_OK

    series = _load_series(cfg, text)
    params = EmbeddingParams(m=cfg.m, tau=cfg.tau)
    d = analysis_service.series_distribution(series, params, cfg.kind, cfg.policy)
    return _hist_document(_series_meta(cfg), d), EXIT_OK


def cmd_entropy(cfg: RunConfig) -> Result:
    d, series, params = _distribution(cfg)
    raw = analysis_service.permutation_entropy(d)
    try:
        size = symmetry_service.catalog_size(d.m, d.kind, d.policy)
        normalized = analysis_service.permutation_entropy(d, normalize=True)
    except DimensionTooLargeError:
        if cfg.normalize:
            raise
        logger.warning(f"no catalog size for {d.kind.value}/{d.policy.label} at m={d.m}; normalized entropy omitted")
        size, normalized = None, None
    ties = analysis_service.tie_statistics(series, params)
    record = {
        "value": normalized if cfg.normalize else raw,
        "raw": raw,
        "normalized": normalized,
        "catalog_size": size,
        "total": d.total,
        "distinct": len(d.counts),
        "neighbour_equal_rate": ties.neighbour_equal_rate,
        "tied_window_rate": ties.tied_window_rate,
    }
    meta = {**_series_meta(cfg), "normalize": cfg.normalize, "log_base": "e"}
    return Document(meta).add_table("entropy", [record]), EXIT_OK


def cmd_irrev(cfg: RunConfig) -> Result:
    d, _, _ = _distribution(cfg)
    if cfg.axis == "time":
        index = analysis_service.irreversibility_index(d)
    else:
        index = analysis_service.amplitude_asymmetry_index(d)
    pairs = [pair.model_dump() for pair in analysis_service.asymmetry_breakdown(d)]
    meta = {**_series_meta(cfg), "axis": cfg.axis, "statistic": IRREVERSIBILITY_NOTE}
    doc = Document(meta)
    doc.add_table("index", [{"axis": cfg.axis, "value": index, "total": d.total, "pairs": len(pairs)}])
    doc.add_table("pairs", pairs)
    return doc, EXIT_OK


# --- Catalog / oracle / demo -------------------------------------------

def cmd_enumerate(cfg: RunConfig) -> Result:
    catalog = symmetry_service.enumerate_patterns(cfg.m, cfg.kind, cfg.policy)
    meta = {"command": "enumerate", "m": cfg.m, "kind": cfg.kind.value, "policy": cfg.policy.value, "size": catalog.size}
    return Document(meta).add_table("patterns", [{"pattern": key} for key in catalog.keys()]), EXIT_OK


def cmd_verify(cfg: RunConfig) -> Result:
    dimensions = [cfg.m] if cfg.m is not None else list(config.VERIFY_DIMENSIONS)
    sizes = [cfg.alphabet] if cfg.alphabet is not None else None
    records = []
    confirmed = True
    for m in dimensions:
        for report in oracle_service.check_all(m, sizes):
            confirmed = confirmed and report.confirmed
            if not report.confirmed:
                logger.error(f"claim {report.claim_id} not confirmed over {report.universe}")
            records.append({
                "claim": report.claim_id,
                "m": report.m,
                "alphabet": report.alphabet_size,
                "checked": report.checked,
                "expected": "violations" if report.expect_violations else "none",
                "verdict": report.verdict,
                "violations": len(report.violations),
                "witnesses": ";".join(str(w) for w in report.violations[:config.MAX_WITNESSES]),
                "confirmed": report.confirmed,
            })
    meta = {"command": "verify", "dimensions": dimensions, "claims": len(oracle_service.CLAIMS), "confirmed": confirmed}
    return Document(meta).add_table("claims", records), EXIT_OK if confirmed else EXIT_CLAIM_FAILURE


def _mirrored(first, second) -> bool:
    return first.indexes == second.indexes[::-1]


def cmd_demo(cfg: RunConfig) -> Result:
    vectors, pairs = [], []
    for example, first, second, policies in DEMO_PAIRS:
        w1, w2 = ordinal_service.window(first), ordinal_service.window(second)
        for policy in policies:
            encoded = []
            for w in (w1, w2):
                p_orp, p_amp = ordinal_service.orp(w, policy), ordinal_service.amp(w, policy)
                encoded.append((p_orp, p_amp))
                vectors.append({
                    "example": example,
                    "vector": format_values(w.values),
                    "policy": policy.value,
                    "orp": p_orp.key,
                    "amp": p_amp.key,
                })
            (orp1, amp1), (orp2, amp2) = encoded
            pairs.append({
                "example": example,
                "policy": policy.value,
                "first": format_values(w1.values),
                "second": format_values(w2.values),
                "orp_mirrored": _mirrored(orp1, orp2),
                "amp_mirrored": _mirrored(amp1, amp2),
            })

    catalog = []
    for m in (2, 3):
        catalog.extend({"m": m, **row.model_dump()} for row in symmetry_service.symmetry_table(m, TiePolicy.SMALLEST_INDEX))

    doc = Document({"command": "demo"})
    doc.add_table("vectors", vectors).add_table("pairs", pairs).add_table("catalog", catalog)
    return doc, EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], Result]] = {
    "encode": cmd_encode,
    "hist": cmd_hist,
    "entropy": cmd_entropy,
    "irrev": cmd_irrev,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "demo": cmd_demo,
}


def run(cfg: RunConfig, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    document, status = COMMANDS[cfg.command](cfg)
    out.write(document.render(cfg.output_format))
    return status
