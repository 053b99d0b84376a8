"""Command line front end: ``lieeig COMMAND [PROBLEM] [options]``.

Exit codes: 0 success (including "none found"), 2 not applicable,
3 invalid input, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .decomp import primary_decomposition, triangularize_scalar_family
from .eigensolver import (
    brute_force_oracle,
    check_conditions,
    common_eigenvector,
    corollary_b_audit,
    corollary_d_report,
    eigenvalue_on,
)
from .errors import (
    BracketClosureViolation,
    DoesNotSplit,
    InvarianceViolation,
    LieEigError,
    NotNilpotent,
    ParseError,
    StageFailure,
    ValidationError,
)
from .fileformat import ProblemFile, Report, emit_report, parse_problem, parse_subspace, parse_tower, _load_yaml
from .fields import prime_divisors
from .lie import classify, lie_closure
from .poly import FactorOptions, lemma_c_analyze, monoid_contains

COMMANDS = ("analyze", "eigenvector", "decompose", "triangularize", "lemma-c", "monoid", "oracle")

EXIT_OK, EXIT_NOT_APPLICABLE, EXIT_INVALID, EXIT_INTERNAL = 0, 2, 3, 4

INTERNAL_ERRORS = (StageFailure, InvarianceViolation, BracketClosureViolation)


def parse_tower_flag(text: str):
    """``rq:M``, ``finite:P:D``, ``finite:P:A:D`` or an inline mapping."""
    parts = text.split(":")
    try:
        if parts[0] in ("rq", "rational-quadratic") and len(parts) == 2:
            return parse_tower({"kind": "rational-quadratic", "m": int(parts[1])}, "--tower")
        if parts[0] == "finite" and len(parts) in (3, 4):
            nums = [int(x) for x in parts[1:]]
            p, a, d = (nums[0], 1, nums[1]) if len(nums) == 2 else nums
            return parse_tower({"kind": "finite", "p": p, "a": a, "d": d}, "--tower")
    except ValueError:
        raise ValidationError(f"bad tower {text!r}", "--tower") from None
    obj = _load_yaml(text, "--tower")
    return parse_tower(obj, "--tower")


class Session:
    """One command run; collects report fields while dispatching."""

    def __init__(self, command: str, prob: ProblemFile, opts: FactorOptions, candidates=None):
        self.command = command
        self.prob = prob
        self.opts = opts
        self.candidates = candidates
        self.report = Report(
            command=command,
            status="ok",
            exit_code=EXIT_OK,
            seed=opts.seed,
            degree_bound=opts.degree_bound,
            tower=prob.tower.spec() if prob.tower is not None else None,
        )
        self._g = None

    # helpers -----------------------------------------------------------

    def need_tower(self):
        if self.prob.tower is None:
            raise ValidationError("this command needs a tower (problem file or --tower)", "tower")
        return self.prob.tower

    def algebra(self):
        if self._g is None:
            if not self.prob.generators:
                raise ValidationError("this command needs at least one generator", "generators")
            self._g = lie_closure(self.prob.generators)
            g = self._g
            self.report.algebra = {"n": g.n, "dim": g.dim, "basis": [M.to_data() for M in g.basis]}
        return self._g

    def fail(self, status: str, code: int, stage: str, message: str, **extra):
        self.report.status = status
        self.report.exit_code = code
        self.report.failure = {"stage": stage, "message": message, **extra}

    # commands ----------------------------------------------------------

    def run(self) -> Report:
        handler = getattr(self, "cmd_" + self.command.replace("-", "_"))
        handler()
        return self.report

    def _conditions(self):
        g, tower = self.algebra(), self.need_tower()
        cls = classify(g, self.opts)
        self.report.classification = cls.to_data()
        cond = check_conditions(g, tower, self.opts)
        self.report.conditions = cond.to_data()
        return g, tower, cond

    def cmd_eigenvector(self):
        g, tower, cond = self._conditions()
        if not cond.applicable:
            failed = cond.failed_stages()
            self.fail("not-applicable", EXIT_NOT_APPLICABLE, failed[0], _not_applicable_message(cond), failed=failed)
            return
        res = common_eigenvector(g, tower, self.opts, report=cond)
        self.report.trace = list(res.trace)
        self.report.result = self._eigen_data(g, res.vector, res.eigenvalues)
        self.report.result["component"] = {"dim": res.component_used.dim, "basis": res.component_used.subspace.to_data()}

    def _eigen_data(self, g, v, values):
        F = g.field
        checks = []
        for i, r in values:
            checks.append({"name": f"B{i}", "value": F.to_data(r), "holds": g.basis[i].apply(v) == tuple(r * x for x in v)})
        gen_values = []
        for j, G in enumerate(self.prob.generators):
            r = eigenvalue_on(G, v)
            gen_values.append(F.to_data(r) if r is not None else None)
            checks.append({"name": f"G{j}", "value": F.to_data(r) if r is not None else None, "holds": r is not None})
        return {
            "vector": [F.to_data(x) for x in v],
            "eigenvalues": [F.to_data(r) for _, r in values],
            "generator_eigenvalues": gen_values,
            "checks": checks,
        }

    def cmd_analyze(self):
        g, tower, cond = self._conditions()
        F = g.field
        res = {}
        if cond.nilpotent:
            res["primary_dims"] = [c.dim for c in primary_decomposition(g, self.opts, check_nilpotent=False)]
        if cond.applicable:
            er = common_eigenvector(g, tower, self.opts, report=cond)
            self.report.trace = list(er.trace)
            res["eigenvector"] = [F.to_data(x) for x in er.vector]
        else:
            res["eigenvector"] = None
            res["not_applicable"] = cond.failed_stages()
        oracle = brute_force_oracle(g, self.opts)
        res["oracle"] = _oracle_data(F, oracle)
        cands = self.candidates
        if cands is None:
            cands = self.prob.candidates
        res["corollary_b"] = corollary_b_audit(g, tower, cands, self.opts).to_data()
        if self.prob.decomposition is not None:
            res["corollary_d"] = corollary_d_report(g, tower, self.prob.decomposition, self.opts).to_data(F)
        self.report.result = res

    def cmd_decompose(self):
        g = self.algebra()
        try:
            comps = primary_decomposition(g, self.opts)
        except NotNilpotent as exc:
            self.fail("not-applicable", EXIT_NOT_APPLICABLE, "nilpotency", str(exc))
            return
        self.report.result = {"components": [c.to_data() for c in comps]}

    def cmd_triangularize(self):
        g = self.algebra()
        F = g.field
        try:
            comps = primary_decomposition(g, self.opts)
        except NotNilpotent as exc:
            self.fail("not-applicable", EXIT_NOT_APPLICABLE, "nilpotency", str(exc))
            return
        out = []
        for c in comps:
            if all(p.deg == 1 for p, _ in c.factors):
                tb = triangularize_scalar_family(g.basis, c.subspace, self.opts)
                out.append({"dim": c.dim, **tb.to_data(F)})
            else:
                out.append({"dim": c.dim, "skipped": "eigenvalues outside the base field"})
        self.report.result = {"components": out}

    def cmd_lemma_c(self):
        tower = self.need_tower()
        if self.prob.poly is None:
            raise ValidationError("lemma-c needs a polynomial", "poly")
        try:
            rep = lemma_c_analyze(self.prob.poly, tower, self.opts)
        except DoesNotSplit as exc:
            self.fail("not-applicable", EXIT_NOT_APPLICABLE, "c1", str(exc))
            return
        self.report.result = {"poly": self.prob.poly.to_data(), **rep.to_data(tower), "verdict": rep.verdict}

    def cmd_monoid(self):
        n = self.prob.n
        if n is None:
            raise ValidationError("monoid needs n (problem file or --n)", "n")
        d = self.prob.options.get("d")
        if d is None:
            d = self.need_tower().degree
        self.report.result = {"n": n, "d": d, "generators": prime_divisors(d), "contains": monoid_contains(n, d)}

    def cmd_oracle(self):
        g = self.algebra()
        oracle = brute_force_oracle(g, self.opts)
        self.report.result = {"eigenspaces": _oracle_data(g.field, oracle)}
        if not oracle:
            self.report.status = "none"
            self.report.result["summary"] = "none"


def _not_applicable_message(cond) -> str:
    parts = []
    if not cond.nilpotent:
        parts.append("the algebra is not nilpotent")
    if not cond.c1_holds:
        bad = [i for i, ok in cond.c1 if not ok]
        parts.append(f"characteristic polynomials of basis elements {bad} do not split in k")
    if not cond.c2_holds:
        parts.append(f"dim V = {cond.n} lies in M")
    return "; ".join(parts)


def _oracle_data(F, oracle):
    return [{"eigenvalues": [F.to_data(r) for r in vals], "basis": S.to_data()} for vals, S in oracle]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lieeig", description="Common eigenvectors of nilpotent matrix Lie algebras.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("problem", nargs="?", help="problem file (YAML); '-' reads stdin")
    ap.add_argument("--tower", help="override the tower: rq:M, finite:P:D, finite:P:A:D or a YAML mapping")
    ap.add_argument("--seed", type=int, help="seed for randomized factorization")
    ap.add_argument("--degree-bound", type=int, help="largest degree for rational factor search")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    ap.add_argument("--candidates", help="YAML file with a list of candidate subspaces, or 'default'")
    ap.add_argument("--n", type=int, help="monoid: the integer to test")
    ap.add_argument("--d", type=int, help="monoid: the extension degree (instead of a tower)")
    ap.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identical output)")
    ap.add_argument("-o", "--output", help="write the report here instead of stdout")
    return ap


def _load_problem(args) -> ProblemFile:
    if args.problem is None:
        prob = ProblemFile(tower=None)
    elif args.problem == "-":
        prob = parse_problem(sys.stdin.buffer.read())
    else:
        try:
            data = Path(args.problem).read_bytes()
        except OSError as exc:
            raise ValidationError(f"cannot read problem file: {exc}") from None
        prob = parse_problem(data)
    if args.tower:
        tower = parse_tower_flag(args.tower)
        if prob.tower is not None and prob.tower.base != tower.base:
            raise ValidationError("--tower changes the base field of the problem", "--tower")
        prob.tower = tower
    if args.n is not None:
        prob.n = args.n
    if args.d is not None:
        if args.d < 1:
            raise ValidationError("d must be positive", "--d")
        prob.options["d"] = args.d
    if args.seed is not None:
        prob.options["seed"] = args.seed
    if args.degree_bound is not None:
        prob.options["degree_bound"] = args.degree_bound
    return prob


def _load_candidates(args, prob: ProblemFile):
    if not args.candidates:
        return None
    if args.candidates == "default":
        return None
    try:
        obj = _load_yaml(Path(args.candidates).read_bytes(), "candidates")
    except OSError as exc:
        raise ValidationError(f"cannot read candidates: {exc}") from None
    if not isinstance(obj, list):
        raise ValidationError("candidates file must hold a list of subspaces", "--candidates")
    if not prob.generators or prob.tower is None:
        raise ValidationError("candidates need generators and a tower", "--candidates")
    n = prob.generators[0].nrows
    return [parse_subspace(prob.tower.base, S, n, f"--candidates[{i}]") for i, S in enumerate(obj)]


def run_command(command: str, args) -> Report:
    """Run one command; every failure is folded into the report."""
    start = time.perf_counter()
    seed = args.seed if args.seed is not None else None
    try:
        prob = _load_problem(args)
        opts = FactorOptions(seed=prob.seed, degree_bound=prob.degree_bound)
        session = Session(command, prob, opts, _load_candidates(args, prob))
        try:
            report = session.run()
        except INTERNAL_ERRORS as exc:
            stage = getattr(exc, "stage", "primary" if isinstance(exc, InvarianceViolation) else "engel")
            session.fail("failure", EXIT_INTERNAL, stage, getattr(exc, "detail", str(exc)))
            report = session.report
    except (ParseError, ValidationError) as exc:
        report = _bare_report(command, args, seed)
        report.status, report.exit_code = "invalid", EXIT_INVALID
        report.failure = {"stage": "input", "message": str(exc)}
    except LieEigError as exc:
        # errors raised by the library on bad input (tower, shapes, degree bound)
        report = _bare_report(command, args, seed)
        report.status, report.exit_code = "invalid", EXIT_INVALID
        report.failure = {"stage": "input", "message": f"{type(exc).__name__}: {exc}"}
    if getattr(args, "timing", False):
        report.timing = {"total": time.perf_counter() - start}
    return report


def _bare_report(command, args, seed):
    from .poly import DEFAULT_DEGREE_BOUND, DEFAULT_SEED

    return Report(
        command=command,
        status="invalid",
        exit_code=EXIT_INVALID,
        seed=seed if seed is not None else DEFAULT_SEED,
        degree_bound=args.degree_bound if args.degree_bound is not None else DEFAULT_DEGREE_BOUND,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = run_command(args.command, args)
    data = emit_report(report, args.format)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
