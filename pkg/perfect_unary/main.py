import argparse
import logging
import sys
from typing import NoReturn, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from .app.config import get_run_config
from .app.factory import build_command
from .forms.errors import INPUT_ERRORS, LimitExceededError
from .utility import config_path, get_absolute_path, get_version

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s - %(lineno)d - %(funcName)s - %(pathname)s",
    handlers=[logging.StreamHandler()],
)
logger = logging.getLogger(__name__)

COMMAND_HELP = {
    "field-info": "Print degree, discriminant, integral basis, regulator, successive minima and embeddings.",
    "bounds": "Evaluate every closed-form class-count bound for the field.",
    "enumerate": "Enumerate perfect unary forms up to homothety and units, then run the property suites.",
    "sweep-quadratic": "Verify every real quadratic field Q(sqrt d), d squarefree in [2, dmax], into a CSV table.",
    "verify": "Enumerate and run the property suites together with the brute-force and constant oracles.",
}


def _field_options() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--field", dest="field_path", type=get_absolute_path, help="Field description JSON file.")
    source.add_argument("--quadratic", type=int, help="Squarefree d >= 2; the field is Q(sqrt d).")
    parser.add_argument("--dmax", type=int, help="Largest d of a quadratic sweep.")
    parser.add_argument("--precision-bits", type=int, help="Starting working precision (64..4096).")
    parser.add_argument("--exponent-variant", choices=["stated", "proof"], help="Exponent of the displayed bound.")
    parser.add_argument("--eta-variant", choices=["abstract", "theorem"], help="Regulator exponent inside eta.")
    parser.add_argument(
        "--assume-unit-reducible",
        action="store_true",
        default=None,
        help="Treat the field as unit reducible (eta = theta = 0).",
    )
    parser.add_argument("--max-classes", type=int, help="Stop the enumeration after this many classes.")
    parser.add_argument("--timeout", type=float, help="Stop the enumeration after this many seconds.")
    parser.add_argument("--output", type=get_absolute_path, help="Report path; stdout when omitted.")
    parser.add_argument("--format", choices=["json", "csv"], help="Report format.")
    parser.add_argument("--seed", type=int, help="Seed of the sampled property checks.")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="perfect-unary: perfect unary forms over totally real fields")
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        help="Show the version of the app",
        version=f"%(prog)s {get_version()}",
    )
    parser.add_argument(
        "-d",
        "--debug",
        action="store_true",
        help="Enable debug mode to print more information.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    options = _field_options()
    for name, text in COMMAND_HELP.items():
        subparsers.add_parser(name, parents=[options], help=text, description=text)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    env_var_path = config_path()
    if env_var_path.is_file():
        load_dotenv(dotenv_path=env_var_path)
    else:
        logger.debug("No .perfect_unary_config file found in home directory, using environment and defaults")
    if args.debug:
        logging.getLogger("perfect_unary").setLevel(logging.DEBUG)

    overrides = {key: value for key, value in vars(args).items() if key not in ("command", "debug")}
    try:
        config = get_run_config(overrides)
        return build_command(args.command, config).run()
    except LimitExceededError as err:
        logger.error(err)
        return 3
    except (*INPUT_ERRORS, ValidationError) as err:
        logger.error(err)
        return 2
    except Exception as err:  # noqa: BLE001
        logging.exception(err)
        return 1


def main() -> NoReturn:
    sys.exit(run())


if __name__ == "__main__":
    main()
