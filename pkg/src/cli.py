"""tm-partitions 명령행 진입점.

    python -m src gen chen-lev --l 1
    python -m src verify thm3 --m-max 64 --format text
    python -m src search periodic:3,7 --n 27
    python -m src table 0,3,5,6 --n 12

종료 코드: 0 성공, 1 검증 실패, 2 사용법/인자 오류, 3 상한 초과.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from dotenv import load_dotenv

from . import __version__
from .config import get_log_level, load_settings, override_caps
from .constructions import chen_lev_pair, dombi_partition, finite_tm_partition, lift_partition
from .core_sets import IntersectionSpec, IntSet, evil_set, odious_set
from .errors import CampaignAssertionError, CapExceededError, InvalidArgumentError
from .genfun import eq4_campaign, eq5_campaign
from .report_cache import DEFAULT_DB_PATH, get_cached_report, put_cached_report
from .report_format import render_report, render_table, to_json
from .repfn import repfn_table
from .types import CampaignReport
from .verifier import (
    check_brute_force_cap,
    check_search_cap,
    check_sweep_cap,
    classify_theorem3,
    classify_theorem6,
    claim34_check,
    corollary1_sweep,
    eq1_check,
    forced_extension,
    lemma1_check,
    oracle_check,
    progression_evidence,
    progression_search,
)


logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent
ENV_PATH = PROJECT_ROOT / ".env"

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_CAP = 3

# 기본 호출이 몇 초 안에 끝나도록 잡은 target 별 기본 범위
_DEFAULT_M_MAX = {
    "thm3": 64,
    "thm6": 40,
    "cor1": 256,
    "claims34": 1 << 16,
    "oracle": 12,
}
_DEFAULT_N = {
    "eq1": 1 << 16,
    "progression": 24,
}


def _int_list(text: str) -> List[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from exc
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _gen(args: argparse.Namespace) -> str:
    if args.kind in ("evil", "odious", "tm-pair", "chen-lev", "lift") and args.l is None:
        raise InvalidArgumentError(f"gen {args.kind} requires --l")

    if args.kind in ("evil", "odious"):
        s = evil_set(args.l) if args.kind == "evil" else odious_set(args.l)
        return json.dumps(s.members()) if args.format == "json" else s.format()

    if args.kind == "dombi":
        if args.n is None:
            raise InvalidArgumentError("gen dombi requires --n")
        pair = dombi_partition(args.n)
    elif args.kind == "tm-pair":
        pair = finite_tm_partition(args.l)
    elif args.kind == "chen-lev":
        pair = chen_lev_pair(args.l)
    else:
        base = chen_lev_pair(args.l)
        pair = lift_partition(
            base.C, base.D, base.intersection.elements[0], base.m, args.blocks
        )

    return to_json(pair.to_dict()) if args.format == "json" else pair.format()


def _verify_params(args: argparse.Namespace) -> Dict[str, Any]:
    m_max = args.m_max if args.m_max is not None else _DEFAULT_M_MAX.get(args.target)
    return {
        "target": args.target,
        "m_max": m_max,
        "oracle_m_max": args.oracle_m_max,
        "n": args.n if args.n is not None else _DEFAULT_N.get(args.target),
        "levels": args.levels,
        "blocks": args.blocks,
        "trials": args.trials,
        "bound": args.bound,
        "seed": args.seed,
        "periods": args.periods,
        "brute_n": args.brute_n,
        "spec_size": args.spec_size,
    }


def _run_campaign(params: Dict[str, Any], workers: Optional[int]) -> CampaignReport:
    campaigns: Dict[str, Callable[[], CampaignReport]] = {
        "thm3": lambda: classify_theorem3(params["m_max"], params["oracle_m_max"], workers=workers),
        "thm6": lambda: classify_theorem6(params["m_max"], params["oracle_m_max"], workers=workers),
        "cor1": lambda: corollary1_sweep(params["m_max"], workers=workers),
        "claims34": lambda: claim34_check(params["m_max"]),
        "oracle": lambda: oracle_check(params["m_max"], params["spec_size"]),
        "eq1": lambda: eq1_check(params["n"]),
        "eq4": lambda: eq4_campaign(params["trials"], params["bound"], params["seed"]),
        "eq5": lambda: eq5_campaign(params["levels"] or [1, 2, 3]),
        "lemma1": lambda: lemma1_check(params["levels"] or [1, 2], params["blocks"]),
        "progression": lambda: progression_evidence(
            params["periods"], params["n"], params["brute_n"]
        ),
    }
    return campaigns[params["target"]]()


def _check_caps(params: Dict[str, Any]) -> None:
    target = params["target"]
    if target in ("thm3", "thm6", "cor1"):
        check_sweep_cap(params["m_max"])
    if target in ("thm3", "thm6"):
        check_brute_force_cap(min(params["oracle_m_max"], params["m_max"]), "oracle_m_max")
    if target == "oracle":
        check_brute_force_cap(params["m_max"], "m_max")
    if target == "progression":
        check_search_cap(params["n"])


def _verify(args: argparse.Namespace) -> CampaignReport:
    params = _verify_params(args)
    settings = load_settings()
    params["caps"] = settings.caps()
    # 캐시된 보고서도 현재 상한을 넘으면 돌려주지 않는다.
    _check_caps(params)
    cache_path = settings.report_cache_db_path or (DEFAULT_DB_PATH if args.cache else None)

    if cache_path:
        cached = get_cached_report(cache_path, args.target, __version__, params)
        if cached is not None:
            return cached

    report = _run_campaign(params, args.workers)
    if cache_path:
        put_cached_report(cache_path, params, report)
    return report


def _with_provenance(payload: Dict[str, Any]) -> Dict[str, Any]:
    return {**payload, "version": __version__, "caps": load_settings().caps()}


def _search(args: argparse.Namespace) -> str:
    spec = IntersectionSpec.parse(args.spec)

    if spec.kind == "finite":
        if args.m is None:
            raise InvalidArgumentError("finite specs need --m")
        outcome = forced_extension(args.m, spec, args.n)
        if args.format == "json":
            return to_json(_with_provenance(dict(outcome.to_dict())))
        lines = [f"status={outcome.status}", f"stage={outcome.stage}"]
        if outcome.pair is not None:
            lines.append(outcome.pair.format())
        if outcome.failure_index is not None:
            lines.append(f"failure_index={outcome.failure_index}")
        return "\n".join(lines)

    if args.n is None:
        raise InvalidArgumentError("periodic specs need --n")
    result = progression_search(spec, args.n)
    if args.format == "json":
        return to_json(_with_provenance(dict(result.to_dict())))
    return "\n".join(
        [
            f"n*={result.n_star}",
            f"N={result.n_max} exhausted={str(result.exhausted).lower()}"
            f" nodes={result.nodes} pruned={result.pruned}",
            result.witness.format(),
        ]
    )


def _add_cap_flags(parser: argparse.ArgumentParser) -> None:
    # 기본값은 PARTITIONS_*_CAP 환경 변수 또는 config 의 기본 상한
    parser.add_argument("--brute-force-cap", type=_positive_int)
    parser.add_argument("--search-cap", type=_positive_int)
    parser.add_argument("--sweep-cap", type=_positive_int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tm-partitions",
        description="Thue-Morse partitions with identical representation functions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="print a construction in canonical form")
    gen.add_argument("kind", choices=["evil", "odious", "dombi", "tm-pair", "chen-lev", "lift"])
    gen.add_argument("--l", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--blocks", type=int, default=4)
    gen.add_argument("--format", choices=["text", "json"], default="text")

    verify = sub.add_parser("verify", help="run a verification campaign")
    verify.add_argument(
        "target",
        choices=["thm3", "thm6", "cor1", "claims34", "eq4", "eq5", "lemma1", "eq1", "oracle", "progression"],
    )
    verify.add_argument("--m-max", type=int)
    verify.add_argument("--oracle-m-max", type=int, default=0)
    verify.add_argument("--n", type=int)
    verify.add_argument("--levels", type=_int_list)
    verify.add_argument("--blocks", type=int, default=32)
    verify.add_argument("--trials", type=int, default=1000)
    verify.add_argument("--bound", type=int, default=256)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--periods", type=_int_list, default=[2, 3, 4, 5])
    verify.add_argument("--brute-n", type=int, default=24)
    verify.add_argument("--spec-size", type=int, default=1)
    verify.add_argument("--workers", type=_positive_int)
    verify.add_argument("--format", choices=["json", "csv", "text"], default="json")
    verify.add_argument("--cache", action="store_true", help="reuse cached reports")
    _add_cap_flags(verify)

    search = sub.add_parser("search", help="forced extension or progression search")
    search.add_argument("spec", help="finite:r1,r2,... or periodic:r,p")
    search.add_argument("--n", type=int, help="horizon (finite) or N (periodic)")
    search.add_argument("--m", type=int)
    search.add_argument("--format", choices=["text", "json"], default="json")
    _add_cap_flags(search)

    table = sub.add_parser("table", help="print R_S(0..N)")
    table.add_argument("set", help="canonical comma-separated members")
    table.add_argument("--n", type=int, required=True)
    table.add_argument("--format", choices=["csv", "json", "text"], default="csv")

    return parser


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "gen":
        print(_gen(args))
        return EXIT_OK
    if args.command == "search":
        print(_search(args))
        return EXIT_OK
    if args.command == "table":
        sys.stdout.write(render_table(repfn_table(IntSet.parse(args.set), args.n), args.format))
        return EXIT_OK

    report = _verify(args)
    sys.stdout.write(render_report(report, args.format))
    if not report["ok"]:
        if args.format == "csv":
            # CSV 에는 rows 만 나가므로 실패 기록은 stderr 에 JSON 으로 남긴다.
            print(to_json(report["failures"]), file=sys.stderr)
        logger.error(
            "Campaign %s failed with %s failure(s)", report["campaign"], len(report["failures"])
        )
        return EXIT_ASSERTION
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    if ENV_PATH.exists():
        load_dotenv(dotenv_path=ENV_PATH, override=False)
    logging.basicConfig(level=get_log_level())

    args = build_parser().parse_args(argv)
    caps = {
        "brute_force_cap": getattr(args, "brute_force_cap", None),
        "search_cap": getattr(args, "search_cap", None),
        "sweep_cap": getattr(args, "sweep_cap", None),
    }

    try:
        with override_caps(**caps):
            return _dispatch(args)
    except CampaignAssertionError as exc:
        logger.error("Assertion failed: %s", exc)
        return EXIT_ASSERTION
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
