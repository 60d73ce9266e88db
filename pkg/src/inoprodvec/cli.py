"""
Command-line front end.

    inoprodvec count --fixture hakye-2x4 --a 3 --b 1
    inoprodvec classify --input pair.json --domain float
    inoprodvec bounds --m 2 --n 4
    inoprodvec random --m 2 --n 4 --k 2 --l 2 --seed 7 --trials 100

Exit codes: 0 report produced, 2 regime error, 3 indeterminate,
4 parse or validation error.
"""
from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from dataclasses import dataclass
from typing import Any, Awaitable, Callable, Dict, List, Optional, Sequence, Tuple

from .classify_helper import InoClassifyHelper, Regime
from .config_helper import InoConfigHelper, Tolerances
from .fixture_helper import FIXTURE_NAMES, InoFixtureHelper
from .json_helper import InoJsonHelper
from .log_helper import InoLogHelper
from .numeric_helper import EXACT, InoNumericHelper
from .poly_helper import BiPoly, DegenerateSylvesterError, InoPolyHelper
from .solve_helper import InoSolveHelper
from .subspace_helper import InoSubspaceHelper, PairValidationError, RegimeError, SubspacePair, regime_message
from .util_helper import InoUtilHelper, ProdVecError, ino_is_err

logger = logging.getLogger(__name__)

COMMANDS = ("classify", "count", "resultant", "bounds", "segre-check", "fixture", "random")

EXIT_OK = 0
EXIT_REGIME = 2
EXIT_INDETERMINATE = 3
EXIT_INVALID = 4
EXIT_CODES = {"regime": EXIT_REGIME, "indeterminate": EXIT_INDETERMINATE, "validation": EXIT_INVALID, "domain": EXIT_INVALID}


class UsageError(ProdVecError):
    kind = "validation"


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str] = None
    fixture: Optional[str] = None
    a: Optional[str] = None
    b: Optional[str] = None
    m: Optional[int] = None
    n: Optional[int] = None
    k: Optional[int] = None
    l: Optional[int] = None
    seed: Optional[int] = None
    trials: Optional[int] = None
    domain: str = "exact"
    output: str = "json"
    tol_conj: Optional[float] = None
    tol_rank: Optional[float] = None
    config_path: Optional[str] = None
    log_dir: Optional[str] = None
    save: Optional[str] = None
    oracle: bool = False


Report = Dict[str, Any]
Handler = Callable[[RunConfig, Tolerances, InoConfigHelper], Awaitable[Tuple[int, Report]]]


def _require(config: RunConfig, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(config, n) is None]
    if missing:
        raise UsageError(f"❌ {config.command} needs {', '.join(missing)}")


async def _read_input(path: str) -> dict:
    if path == "-":
        res = InoJsonHelper.string_to_dict(sys.stdin.read())
    else:
        res = await InoJsonHelper.read_json_from_file_async(path)
    if ino_is_err(res):
        raise UsageError(f"❌ {res['msg']}")
    if not isinstance(res["data"], dict):
        raise UsageError("❌ input must be a JSON object")
    return res["data"]


async def _load_pair(config: RunConfig, settings: InoConfigHelper) -> SubspacePair:
    field = InoNumericHelper.field_named(config.domain)
    if config.input_path:
        pair = SubspacePair.from_json(await _read_input(config.input_path), EXACT)
    elif config.fixture:
        res = InoFixtureHelper.fixture(config.fixture, a=config.a, b=config.b, k=config.k, l=config.l, n=config.n)
        if ino_is_err(res):
            raise PairValidationError(res["msg"])
        pair = res["pair"]
    elif None not in (config.m, config.n, config.k, config.l):
        seed = InoUtilHelper.resolve_seed(config.seed)
        if seed is None:
            raise UsageError("❌ a random pair needs --seed or PRODVEC_SEED")
        pair = InoFixtureHelper.random_pair(config.m, config.n, config.k, config.l, seed,
                                            settings.get_int("random", "denominator_bits", 16))
    else:
        raise UsageError("❌ give --input, --fixture, or --m/--n/--k/--l with a seed")
    return pair if field.exact else pair.approx()


# -----------------------
# commands
# -----------------------
async def _cmd_classify(config: RunConfig, tol: Tolerances, settings: InoConfigHelper) -> Tuple[int, Report]:
    pair = await _load_pair(config, settings)
    res = InoClassifyHelper.algorithm1_classify(pair, tol)
    report = {"success": res["success"], "msg": res["msg"], **res["report"].to_json()}
    if ino_is_err(res):
        report["error_kind"] = res["error_kind"]
        return EXIT_CODES[res["error_kind"]], report
    return EXIT_OK, report


async def _cmd_count(config: RunConfig, tol: Tolerances, settings: InoConfigHelper) -> Tuple[int, Report]:
    pair = await _load_pair(config, settings)
    res = InoSolveHelper.count_product_vectors_2xn(pair, tol)
    if ino_is_err(res):
        return EXIT_CODES[res["error_kind"]], {"success": False, "msg": res["msg"], "error_kind": res["error_kind"]}
    cert = res["certificate"]
    report = {"success": True, "msg": res["msg"], **cert.to_json()}
    if config.oracle:
        # grid-Newton recount, independent of the resultant
        oracle = InoSolveHelper.brute_force_count_2xn(
            pair,
            settings.get_int("oracle", "grid_density", 48),
            settings.get_int("oracle", "newton_iters", 60),
            tol,
        )
        report["oracle_count"] = oracle
        if cert.count is not None and oracle != cert.count:
            logger.warning(f"oracle found {oracle} product vectors, certificate has {cert.count}")
    return EXIT_OK, report


async def _cmd_resultant(config: RunConfig, tol: Tolerances, settings: InoConfigHelper) -> Tuple[int, Report]:
    field = InoNumericHelper.field_named(config.domain)
    data = await _read_input(config.input_path) if config.input_path else None
    if data is not None and "dz" in data:
        try:
            P = BiPoly.from_json(data, field)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise PairValidationError(f"❌ malformed polynomial: {e}") from e
    else:
        pair = await _load_pair(config, settings)
        if pair.m != 2:
            raise PairValidationError("❌ resultant of a pair needs m = 2")
        P = InoSubspaceHelper.det_poly_2xn(InoSubspaceHelper.build_linear_system(pair))
    Q = InoPolyHelper.conjugate_poly(P)
    try:
        R = InoPolyHelper.resultant_w(P, Q)
    except DegenerateSylvesterError as e:
        raise PairValidationError(str(e)) from e
    return EXIT_OK, {
        "success": True,
        "msg": f"✅ resultant of degree {R.degree}",
        "P": P.to_json(),
        "Q": Q.to_json(),
        "resultant": R.to_json(),
        "degree": R.degree,
        "k2l2_bound": InoClassifyHelper.k2l2_bound(P.dz, P.dw),
    }


async def _cmd_bounds(config: RunConfig, tol: Tolerances, settings: InoConfigHelper) -> Tuple[int, Report]:
    _require(config, "m", "n")
    return EXIT_OK, {
        "success": True,
        "msg": f"✅ bounds for m={config.m}, n={config.n}",
        "m": config.m,
        "n": config.n,
        "milnor": InoClassifyHelper.milnor_bound(config.m, config.n),
        "segre": InoClassifyHelper.segre_degree(config.m, config.n),
        "table": InoClassifyHelper.bounds_table(config.m, config.n),
    }


async def _cmd_segre_check(config: RunConfig, tol: Tolerances, settings: InoConfigHelper) -> Tuple[int, Report]:
    seed = InoUtilHelper.resolve_seed(config.seed) or 0
    trials = config.trials or 20
    sizes = [config.n] if config.n is not None else list(range(2, 9))
    bits = settings.get_int("random", "denominator_bits", 16)

    def _one(n: int, s: int) -> Optional[int]:
        pair = InoFixtureHelper.random_pair(2, n, 0, n, s, bits)
        return InoSolveHelper.certify(pair, tol).count

    results = []
    for n in sizes:
        counts = await asyncio.gather(*(asyncio.to_thread(_one, n, seed + t) for t in range(trials)))
        expected = InoClassifyHelper.segre_degree(2, n)
        results.append({"n": n, "segre_degree": expected, "counts": list(counts),
                        "passed": all(c == expected for c in counts)})
    passed = all(r["passed"] for r in results)
    return EXIT_OK, {
        "success": True,
        "msg": "✅ counts match the Segre degree" if passed else "❌ some counts differ from the Segre degree",
        "seed": seed,
        "trials": trials,
        "passed": passed,
        "results": results,
    }


async def _cmd_fixture(config: RunConfig, tol: Tolerances, settings: InoConfigHelper) -> Tuple[int, Report]:
    _require(config, "fixture")
    pair = await _load_pair(config, settings)
    return EXIT_OK, {"success": True, "msg": f"✅ fixture {config.fixture}", **pair.to_json()}


async def _cmd_random(config: RunConfig, tol: Tolerances, settings: InoConfigHelper) -> Tuple[int, Report]:
    _require(config, "m", "n", "k", "l")
    seed = InoUtilHelper.resolve_seed(config.seed)
    if seed is None:
        raise UsageError("❌ random needs --seed or PRODVEC_SEED")
    bits = settings.get_int("random", "denominator_bits", 16)
    if not config.trials:
        pair = InoFixtureHelper.random_pair(config.m, config.n, config.k, config.l, seed, bits)
        return EXIT_OK, {"success": True, "msg": f"✅ random pair, seed {seed}", "seed": seed, **pair.to_json()}

    regime = InoClassifyHelper.kiem_regime(config.m, config.n, config.k, config.l)
    if regime.regime is not Regime.BOUNDARY:
        raise RegimeError(f"❌ {regime_message(config.m, config.n, config.k, config.l)}")

    def _one(s: int) -> dict:
        pair = InoFixtureHelper.random_pair(config.m, config.n, config.k, config.l, s, bits)
        if config.domain == "float":
            pair = pair.approx()
        res = InoClassifyHelper.algorithm1_classify(pair, tol)
        v = res["report"].verdict
        return {"seed": s, "verdict": v.status if v else None, "reason": v.reason if v else None}

    seeds = [(seed + t) & 0xFFFF_FFFF_FFFF_FFFF for t in range(config.trials)]
    rows = await asyncio.gather(*(asyncio.to_thread(_one, s) for s in seeds))
    in_u = sum(1 for r in rows if r["verdict"] == "InU")
    return EXIT_OK, {
        "success": True,
        "msg": f"✅ {in_u}/{len(rows)} pairs generic",
        "m": config.m, "n": config.n, "k": config.k, "l": config.l,
        "trials": len(rows),
        "in_u_fraction": in_u / len(rows),
        "results": list(rows),
    }


HANDLERS: Dict[str, Handler] = {
    "classify": _cmd_classify,
    "count": _cmd_count,
    "resultant": _cmd_resultant,
    "bounds": _cmd_bounds,
    "segre-check": _cmd_segre_check,
    "fixture": _cmd_fixture,
    "random": _cmd_random,
}


# -----------------------
# rendering
# -----------------------
def render_text(report: Report) -> str:
    lines: List[str] = []
    for key, value in report.items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{key}:")
            for item in value:
                lines.append("  " + " ".join(f"{k}={InoJsonHelper.canonical_dumps(v).strip() if isinstance(v, (dict, list)) else v}"
                                             for k, v in item.items()))
        elif isinstance(value, dict):
            for sub, v in value.items():
                lines.append(f"{key}.{sub}: {v}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


async def run_async(config: RunConfig) -> Tuple[int, str]:
    if config.command not in HANDLERS:
        raise UsageError(f"❌ unknown command {config.command!r}")
    report: Report = {"command": config.command}
    try:
        settings = InoConfigHelper.discover(config.config_path)
        tol = settings.tolerances().override(tol_conj=config.tol_conj, tol_rank=config.tol_rank)
        code, body = await HANDLERS[config.command](config, tol, settings)
        report.update(body)
    except FileNotFoundError as e:
        code = EXIT_INVALID
        report.update({"success": False, "msg": str(e), "error_kind": "validation"})
    except ProdVecError as e:
        kind = InoUtilHelper.error_kind(e)
        code = EXIT_CODES.get(kind, EXIT_INVALID)
        report.update({"success": False, "msg": str(e), "error_kind": kind})

    report["fingerprint"] = InoUtilHelper.hash_string(InoJsonHelper.canonical_dumps(report))
    text = InoJsonHelper.canonical_dumps(report) if config.output == "json" else render_text(report)

    if config.save:
        saved = await InoJsonHelper.save_json_as_json_async(report, config.save)
        if ino_is_err(saved):
            logger.warning(saved["msg"])
    if config.log_dir:
        run_log = await InoLogHelper.create(config.log_dir, "prodvec")
        await run_log.add(
            msg=report.get("msg", ""),
            log_data={
                "success": report.get("success", False),
                "command": config.command,
                "seed": config.seed,
                "verdict": report.get("verdict"),
                "exit_code": code,
                "fingerprint": report["fingerprint"],
            },
            source="inoprodvec.cli",
        )
    return code, text


def run(config: RunConfig) -> Tuple[int, str]:
    """Runs one command; returns (exit code, report text for standard output)."""
    return asyncio.run(run_async(config))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"❌ {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="inoprodvec", description="Count and certify product vectors x⊗y ∈ D with x̄⊗y ∈ E.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", dest="input_path", help="SubspacePair JSON (or BiPoly JSON for resultant); - for stdin")
    p.add_argument("--fixture", help=f"named pair: {', '.join(FIXTURE_NAMES)} or diagonal(k,l,n)")
    p.add_argument("--a", help="hakye-2x4 parameter a (rational)")
    p.add_argument("--b", help="hakye-2x4 parameter b (rational)")
    for dim in ("m", "n", "k", "l"):
        p.add_argument(f"--{dim}", type=int)
    p.add_argument("--seed", type=lambda s: int(s, 0))
    p.add_argument("--trials", type=int)
    p.add_argument("--domain", choices=("exact", "float"), default="exact")
    p.add_argument("--output", choices=("json", "text"), default="json")
    p.add_argument("--tol-conj", type=float)
    p.add_argument("--tol-rank", type=float)
    p.add_argument("--config", dest="config_path")
    p.add_argument("--log-dir")
    p.add_argument("--save", help="also write the JSON report to this file")
    p.add_argument("--oracle", action="store_true", help="count: recount with the grid-Newton oracle ([oracle] settings)")
    p.add_argument("--verbose", action="store_true", help="diagnostics on stderr")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_INVALID
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr,
                            format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    values = vars(args)
    values.pop("verbose")
    code, text = run(RunConfig(**values))
    sys.stdout.write(text)
    return code
