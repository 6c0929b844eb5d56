"""Command-line front end.

Exit status: 0 on success, 1 for a mathematical negative (the element lies
in the subgroup, the pipeline ran out of rounds, a certificate failed to
verify), 2 for bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .doubles import complete_precover, double_dot, double_up
from .errors import ElementInSubgroup, Exhausted, LerfError
from .free_cover import FreeCertificate, hall_complete, separate_free, subgroup_graph, verify_free_certificate
from .graphs import fold, to_dot
from .oracle import cross_check, enumerate_homs, separating_hom
from .pipeline import PipelineParams, run_pipeline, verify_certificate
from .textio import Problem, format_certificate, format_graph, parse_certificate, parse_input

COMMANDS = ("fold", "complete", "separate-free", "separate-double", "double-up", "verify", "oracle")
OK, NEGATIVE, BAD_INPUT = 0, 1, 2


class InputError(LerfError):
    pass


@dataclass
class JobSpec:
    command: str
    input: str
    output: Optional[str] = None
    params: PipelineParams = field(default_factory=PipelineParams)
    emit: str = "cert"
    degree: int = 3


@dataclass
class Outcome:
    status: int
    artifacts: dict = field(default_factory=dict)
    message: str = ""


# Problem attribute -> section header
_SECTION = {"spec": "double"}


def _require(problem: Problem, command: str, *names):
    missing = [_SECTION.get(n, n) for n in names if getattr(problem, n) is None]
    if missing:
        raise InputError(f"{command} needs section(s): " + ", ".join(f"[{n}]" for n in missing))


def _graph_input(problem: Problem, command: str):
    if problem.graph is not None:
        return problem.graph
    if problem.subgroup is not None and problem.word_alphabet is not None:
        return subgroup_graph(problem.word_alphabet, problem.subgroup)
    raise InputError(f"{command} needs a [graph] or [subgroup] section")


def _dot(g, spec):
    return double_dot(spec, g) if spec is not None else to_dot(g)


def _graph_artifacts(g, spec, emit) -> dict:
    out = {}
    if emit in ("cert", "both"):
        out["cert"] = format_graph(g, spec)
    if emit in ("dot", "both"):
        out["dot"] = _dot(g, spec)
    return out


def _cert_artifacts(cert, emit) -> dict:
    out = {}
    if emit in ("cert", "both"):
        out["cert"] = format_certificate(cert)
    if emit in ("dot", "both"):
        spec = getattr(cert, "spec", None)
        out["dot"] = _dot(cert.cover, spec)
    return out


def _run_fold(job, problem):
    g = fold(_graph_input(problem, job.command))
    return Outcome(OK, _graph_artifacts(g, problem.spec, job.emit))


def _run_complete(job, problem):
    g = _graph_input(problem, job.command)
    if problem.spec is not None:
        g = complete_precover(problem.spec, g)
    else:
        g = hall_complete(fold(g))
    return Outcome(OK, _graph_artifacts(g, problem.spec, job.emit))


def _run_separate_free(job, problem):
    _require(problem, job.command, "alphabet", "subgroup", "element")
    cert = separate_free(problem.alphabet, problem.subgroup, problem.element)
    return Outcome(OK, _cert_artifacts(cert, job.emit))


def _run_separate_double(job, problem):
    _require(problem, job.command, "spec", "subgroup", "element")
    cert = run_pipeline(problem.spec, problem.subgroup, problem.element, job.params)
    return Outcome(OK, _cert_artifacts(cert, job.emit))


def _run_double_up(job, problem):
    _require(problem, job.command, "spec", "graph")
    g = double_up(problem.spec, problem.graph)
    return Outcome(OK, _graph_artifacts(g, problem.spec, job.emit))


def _run_verify(job, text):
    cert = parse_certificate(text)
    if isinstance(cert, FreeCertificate):
        verdict = verify_free_certificate(cert)
    else:
        verdict = verify_certificate(cert)
    if verdict:
        verdict = cross_check(cert)
    if verdict:
        return Outcome(OK, {"report": "ok\n"})
    return Outcome(NEGATIVE, {"report": f"failed: {verdict.first}\n"})


def _run_oracle(job, problem):
    _require(problem, job.command, "presentation")
    p = problem.presentation
    if problem.subgroup is not None or problem.element is not None:
        _require(problem, job.command, "subgroup", "element")
        hom = separating_hom(p, problem.subgroup, problem.element, job.degree)
        if hom is None:
            text = f"closure: no separating homomorphism up to degree {job.degree}\n"
        else:
            text = f"separated: degree {hom.degree} {hom.format(p.generators)}\n"
        return Outcome(OK, {"report": text})
    lines = [h.format(p.generators) for h in enumerate_homs(p, job.degree)]
    return Outcome(OK, {"report": "".join(line + "\n" for line in lines)})


_HANDLERS = {
    "fold": _run_fold,
    "complete": _run_complete,
    "separate-free": _run_separate_free,
    "separate-double": _run_separate_double,
    "double-up": _run_double_up,
    "oracle": _run_oracle,
}


def run(job: JobSpec) -> Outcome:
    """Run one job and return its status and artifacts; nothing is written here."""
    try:
        with open(job.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        return Outcome(BAD_INPUT, message=f"cannot read {job.input}: {exc.strerror}")
    try:
        if job.command == "verify":
            return _run_verify(job, text)
        return _HANDLERS[job.command](job, parse_input(text))
    except (ElementInSubgroup, Exhausted) as exc:
        return Outcome(NEGATIVE, message=str(exc))
    except LerfError as exc:
        return Outcome(BAD_INPUT, message=str(exc))


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _targets(job: JobSpec, outcome: Outcome, batch: bool) -> list:
    """(destination, text) pairs; a destination of None means stdout."""
    arts = outcome.artifacts
    if not arts:
        return []
    if batch:
        stem = os.path.splitext(os.path.basename(job.input))[0]
        base = os.path.join(job.output or ".", stem)
        ext = {"cert": ".cert", "dot": ".dot", "report": ".txt"}
        return [(base + ext[k], v) for k, v in arts.items()]
    if job.output is None:
        return [(None, v) for v in arts.values()]
    out = []
    for k, v in arts.items():
        if k == "dot" and "cert" in arts:
            out.append((job.output + ".dot", v))
        else:
            out.append((job.output, v))
    return out


def emit(job: JobSpec, outcome: Outcome, batch: bool = False, stdout=None, stderr=None) -> None:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    for dest, text in _targets(job, outcome, batch):
        if dest is None:
            stdout.write(text)
        else:
            _write(dest, text)
    if outcome.message:
        prefix = f"{job.input}: " if batch else ""
        stderr.write(f"{prefix}{outcome.message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lerfkit",
                                 description="Separate subgroups of free groups and their doubles by finite covers.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("inputs", nargs="+", metavar="INPUT", help="problem file (certificate file for verify)")
    ap.add_argument("-o", "--output", help="output file; a directory when several inputs are given")
    ap.add_argument("--emit", choices=("cert", "dot", "both"), default="cert")
    ap.add_argument("--degree", type=int, default=3, help="oracle degree bound (at most 5)")
    ap.add_argument("--cyclic-degree", type=int, default=None,
                    help="initial degree M of the cyclic covers (default 2|V|+1)")
    ap.add_argument("--max-rounds", type=int, default=4)
    ap.add_argument("--escalation", type=int, default=2, help="factor applied to M after a failed round")
    ap.add_argument("--seed", type=int, default=None,
                    help="accepted for harness scripts; every command here is deterministic")
    ap.add_argument("--jobs", type=int, default=1, help="run several inputs concurrently")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        params = PipelineParams(args.cyclic_degree, args.max_rounds, args.escalation)
    except LerfError as exc:
        sys.stderr.write(f"{exc}\n")
        return BAD_INPUT
    jobs = [JobSpec(args.command, path, args.output, params, args.emit, args.degree) for path in args.inputs]
    batch = len(jobs) > 1
    if batch and args.output:
        os.makedirs(args.output, exist_ok=True)
    if batch and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(run, jobs))
    else:
        outcomes = [run(job) for job in jobs]
    for job, outcome in zip(jobs, outcomes):
        emit(job, outcome, batch)
    return max(o.status for o in outcomes)


if __name__ == "__main__":
    sys.exit(main())
