"""Command line front end.

    cce cluster --input data.csv --format points --sigma 0.5 --output result.json
    cce trace   --input S.csv --format matrix --trace-output trace.csv
    cce verify  --input S.csv --format matrix --k 64

Outputs use 0-based point indices.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import Platform, detect_platforms, skipped_counts, suggest_counts
from .errors import CCEError, ParameterError
from .evolution import EvolutionTrace, filter_noise, run_evolution
from .io import read_matrix_csv, read_points_csv, read_routes
from .similarity import SimilarityMatrix, auto_sigma, from_routes, gaussian_kernel, njw_normalize
from .spectral import verify_theorem

FORMATS = ("points", "matrix", "routes")


@dataclass
class RunConfig:
    input: str
    format: str
    sigma: float | str | None = None
    normalize: str = "none"
    k_max: int = 1000
    epsilon: float = 0.0
    noise_threshold: int = 2
    min_platform: int = 2
    detail: str = "platforms"
    id_column: bool = False
    output: str | None = None
    trace_output: str | None = None

    def validate(self) -> None:
        if self.format not in FORMATS:
            raise ParameterError(f"unknown format {self.format!r}")
        if self.format == "points":
            if self.sigma is None:
                raise ParameterError("--sigma is required for points input")
            if self.sigma != "auto" and not float(self.sigma) > 0:
                raise ParameterError(f"--sigma must be positive, got {self.sigma}")
        elif self.sigma is not None:
            raise ParameterError("--sigma only applies to points input")
        if self.normalize not in ("none", "njw"):
            raise ParameterError(f"unknown normalization {self.normalize!r}")
        if self.k_max < 1:
            raise ParameterError(f"--k-max must be >= 1, got {self.k_max}")
        if self.epsilon < 0:
            raise ParameterError(f"--epsilon must be >= 0, got {self.epsilon}")
        if self.noise_threshold < 0:
            raise ParameterError(f"--noise-threshold must be >= 0, got {self.noise_threshold}")
        if self.min_platform < 1:
            raise ParameterError(f"--min-platform must be >= 1, got {self.min_platform}")
        if self.detail not in ("platforms", "all"):
            raise ParameterError(f"unknown detail level {self.detail!r}")


def load_similarity(config: RunConfig) -> tuple[SimilarityMatrix, float | None]:
    """Build the similarity matrix described by ``config``; also return sigma."""
    sigma = None
    if config.format == "points":
        points, _ = read_points_csv(config.input, id_column=config.id_column)
        sigma = auto_sigma(points) if config.sigma == "auto" else float(config.sigma)
        S = gaussian_kernel(points, sigma)
    elif config.format == "matrix":
        S = read_matrix_csv(config.input)
    else:
        S = from_routes(read_routes(config.input))
    if config.normalize == "njw":
        S = njw_normalize(S)
    return S, sigma


def _snapshot_doc(snap, noise_threshold: int) -> dict:
    filtered, noise = filter_noise(snap, noise_threshold)
    return {
        "k": snap.k,
        "centers": list(snap.centers),
        "labels": [int(x) for x in snap.labels],
        "n_clusters_raw": snap.cluster_count,
        "n_clusters_filtered": filtered.cluster_count,
        "noise": list(noise),
    }


def build_result(
    config: RunConfig, S: SimilarityMatrix, trace: EvolutionTrace, sigma: float | None = None
) -> dict:
    platforms = detect_platforms(trace, config.min_platform, config.noise_threshold)
    if config.detail == "all":
        ks = [s.k for s in trace]
    else:
        ks = sorted({p.k_start for p in platforms} | {trace.k_stop})
    filtered = trace.filtered(config.noise_threshold)
    return {
        "version": __version__,
        "config": {**asdict(config), "sigma_used": sigma},
        "similarity": {
            "order": S.n,
            "labels": list(S.labels),
            "diagonal": [float(x) for x in np.diagonal(S.entries)],
        },
        "trace": {
            "stop_reason": trace.stop_reason.value,
            "k_stop": trace.k_stop,
            "n_clusters_raw": trace.counts,
            "n_clusters_filtered": [s.cluster_count for s in filtered],
        },
        "platforms": [
            {
                "k_start": p.k_start,
                "k_end": p.k_end,
                "count": p.cluster_count,
                "partition_stable": p.partition_stable,
            }
            for p in platforms
        ],
        "suggestions": [
            {"count": c, "length": n} for c, n in suggest_counts(platforms)
        ],
        "skipped": sorted(skipped_counts(trace)),
        "snapshots": [_snapshot_doc(trace.at(k), config.noise_threshold) for k in ks],
    }


def load_result(path) -> dict:
    """Read a result document, restoring ``Platform`` objects under ``platforms``."""
    doc = json.loads(Path(path).read_text())
    doc["platforms"] = [
        Platform(p["k_start"], p["k_end"], p["count"], p["partition_stable"])
        for p in doc["platforms"]
    ]
    return doc


def write_trace_csv(trace: EvolutionTrace, noise_threshold: int, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["k", "n_clusters_raw", "n_clusters_filtered"])
    for snap, filt in zip(trace, trace.filtered(noise_threshold)):
        writer.writerow([snap.k, snap.cluster_count, filt.cluster_count])


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit_trace(trace, config, default_stdout: bool) -> None:
    if config.trace_output is None and not default_stdout:
        return
    if config.trace_output in (None, "-"):
        write_trace_csv(trace, config.noise_threshold, sys.stdout)
    else:
        with open(config.trace_output, "w", newline="") as fh:
            write_trace_csv(trace, config.noise_threshold, fh)


def cmd_cluster(config: RunConfig) -> dict:
    config.validate()
    S, sigma = load_similarity(config)
    trace = run_evolution(S, config.k_max, config.epsilon)
    doc = build_result(config, S, trace, sigma)
    _emit(json.dumps(doc, indent=2) + "\n", config.output)
    _emit_trace(trace, config, default_stdout=False)
    return doc


def cmd_trace(config: RunConfig) -> EvolutionTrace:
    config.validate()
    S, _ = load_similarity(config)
    trace = run_evolution(S, config.k_max, config.epsilon)
    _emit_trace(trace, config, default_stdout=True)
    return trace


def cmd_verify(config: RunConfig, k: int) -> dict:
    config.validate()
    S, sigma = load_similarity(config)
    report = verify_theorem(S, k)
    doc = {
        "version": __version__,
        "config": {**asdict(config), "sigma_used": sigma},
        "k": report.k,
        "status": report.status,
        "converged": report.converged,
        "n_components": report.n_components,
        "max_deviation": report.max_deviation,
        "eigenvalue": report.eigen.eigenvalue,
        "eigenvector": report.eigen.vector.tolist(),
        "eigen_iterations": report.eigen.iterations,
        "eigen_residual": report.eigen.residual,
        "eigen_converged": report.eigen.converged,
        "diag_sqrt_direction": report.direction.tolist(),
        "difference": report.difference.tolist(),
    }
    _emit(json.dumps(doc, indent=2) + "\n", config.output)
    return doc


def _sigma(text: str):
    return text if text == "auto" else float(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="input file")
    common.add_argument("--format", required=True, choices=FORMATS)
    common.add_argument("--sigma", type=_sigma, default=None,
                        help="Gaussian kernel width for points input, or 'auto'")
    common.add_argument("--id-column", action="store_true",
                        help="first column of a points CSV holds identifiers")
    common.add_argument("--normalize", choices=("none", "njw"), default="none")
    common.add_argument("--k-max", type=int, default=1000)
    common.add_argument("--epsilon", type=float, default=0.0)
    common.add_argument("--noise-threshold", type=int, default=2)
    common.add_argument("--min-platform", type=int, default=2)
    common.add_argument("--detail", choices=("platforms", "all"), default="platforms")
    common.add_argument("--output", default=None, help="result document path (default stdout)")
    common.add_argument("--trace-output", default=None, help="cluster-count CSV path")

    parser = argparse.ArgumentParser(prog="cce", description="Connection center evolution clustering")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("cluster", parents=[common], help="run the full pipeline")
    sub.add_parser("trace", parents=[common], help="emit the cluster count for every k")
    verify = sub.add_parser("verify", parents=[common], help="check sqrt(diag(S^k)) against u1")
    verify.add_argument("--k", type=int, default=64)
    return parser


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    k = args.pop("k", None)
    config = RunConfig(**args)
    try:
        if command == "cluster":
            cmd_cluster(config)
        elif command == "trace":
            cmd_trace(config)
        else:
            cmd_verify(config, k)
    except (CCEError, OSError) as exc:
        print(f"cce: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
